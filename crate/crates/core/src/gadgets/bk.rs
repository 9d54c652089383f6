//! `B_k`: vertices `b(i, j)` for `i, j` in `1..=k`, with `b(i, j)` adjacent
//! to `b(i', j')` iff `i != i'` and `j != j'`. The row coloring `b(i, j) -> i`
//! and the column coloring `b(i, j) -> j` are both proper; any walk between
//! them passes through a coloring with `2k - 1` colors.

use std::collections::BTreeMap;

use crate::error::CoreError;
use crate::graph::{Color, Coloring, Graph, Instance, RecolorSequence, RecolorStep, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BkInstance {
    pub k: usize,
    pub graph: Graph,
    /// Row coloring `b(i, j) -> i`.
    pub alpha: Coloring,
    /// Column coloring `b(i, j) -> j`.
    pub beta: Coloring,
}

impl BkInstance {
    /// Vertex id of `b(i, j)`, both indices 1-based.
    pub fn vertex(&self, i: usize, j: usize) -> Vertex {
        bk_vertex(self.k, i, j)
    }

    /// `(i, j)` of a vertex id.
    pub fn indices(&self, v: Vertex) -> (usize, usize) {
        (v / self.k + 1, v % self.k + 1)
    }

    /// The vertices of row `i`.
    pub fn row(&self, i: usize) -> Vec<Vertex> {
        (1..=self.k).map(|j| self.vertex(i, j)).collect()
    }

    /// The plain recoloring instance over `colors` colors with budget `ell`.
    pub fn to_instance(&self, colors: u32, ell: usize) -> Result<Instance, CoreError> {
        let roles: BTreeMap<Vertex, String> = (0..self.graph.n())
            .map(|v| {
                let (i, j) = self.indices(v);
                (v, format!("b:{i}:{j}"))
            })
            .collect();
        Ok(Instance::new(
            self.graph.clone(),
            colors,
            None,
            ell,
            self.alpha.clone(),
            self.beta.clone(),
        )?
        .with_roles(roles))
    }
}

fn bk_vertex(k: usize, i: usize, j: usize) -> Vertex {
    debug_assert!((1..=k).contains(&i) && (1..=k).contains(&j));
    (i - 1) * k + (j - 1)
}

pub fn build_bk(k: usize) -> Result<BkInstance, CoreError> {
    if k == 0 {
        return Err(CoreError::domain("B_k needs k >= 1"));
    }
    let mut edges = Vec::with_capacity(k * k * (k - 1) * (k - 1) / 2);
    for i in 1..=k {
        for j in 1..=k {
            for i2 in i + 1..=k {
                for j2 in (1..=k).filter(|&j2| j2 != j) {
                    edges.push((bk_vertex(k, i, j), bk_vertex(k, i2, j2)));
                }
            }
        }
    }
    let graph = Graph::new(k * k, edges)?;
    let alpha = (0..k * k).map(|v| (v / k + 1) as Color).collect::<Vec<_>>();
    let beta = (0..k * k).map(|v| (v % k + 1) as Color).collect::<Vec<_>>();
    Ok(BkInstance {
        k,
        graph,
        alpha: alpha.into(),
        beta: beta.into(),
    })
}

/// Recolors `B_k` from the row coloring (row `i` gets `base[i-1]`) to the
/// column coloring (column `j` gets `base[j-1]`) with `k - 1` extra colors.
///
/// Every `b(i, j)` with `j < k` is first parked on `spare[j-1]`; then column
/// `k` and afterwards columns `1..k` move to their base color. Steps that
/// would not change a color are skipped, giving `2k^2 - k - 1` steps.
pub fn bk_sequence(
    k: usize,
    base: &[Color],
    spare: &[Color],
) -> Result<RecolorSequence, CoreError> {
    if k == 0 {
        return Err(CoreError::domain("B_k needs k >= 1"));
    }
    if base.len() != k || spare.len() != k - 1 {
        return Err(CoreError::domain(format!(
            "need {k} base and {} spare colors, got {} and {}",
            k - 1,
            base.len(),
            spare.len()
        )));
    }
    let mut all: Vec<Color> = base.iter().chain(spare).copied().collect();
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err(CoreError::domain(
            "base and spare colors must be pairwise distinct",
        ));
    }
    if all.first() == Some(&0) {
        return Err(CoreError::domain("colors start at 1"));
    }
    let mut current: Vec<Color> = (0..k * k).map(|v| base[v / k]).collect();
    let mut seq = RecolorSequence::new();
    let mut push = |v: Vertex, c: Color, current: &mut Vec<Color>| {
        if current[v] != c {
            current[v] = c;
            seq.push(RecolorStep::new(v, c));
        }
    };
    for i in 1..=k {
        for j in 1..k {
            push(bk_vertex(k, i, j), spare[j - 1], &mut current);
        }
    }
    for i in 1..=k {
        push(bk_vertex(k, i, k), base[k - 1], &mut current);
    }
    for j in 1..k {
        for i in 1..=k {
            push(bk_vertex(k, i, j), base[j - 1], &mut current);
        }
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{verify_sequence, ColorLists};
    use crate::oracle::distinct_colors;

    #[test]
    fn small_cases() {
        let b1 = build_bk(1).unwrap();
        assert_eq!(b1.graph.n(), 1);
        assert_eq!(b1.graph.m(), 0);
        assert_eq!(b1.alpha, b1.beta);
        let b2 = build_bk(2).unwrap();
        assert_eq!(b2.graph.edges(), &[(0, 3), (1, 2)]);
        assert_eq!(b2.alpha.as_slice(), &[1, 1, 2, 2]);
        assert_eq!(b2.beta.as_slice(), &[1, 2, 1, 2]);
        assert!(build_bk(0).is_err());
    }

    #[test]
    fn b3_counts_match_brute_force() {
        let b3 = build_bk(3).unwrap();
        let mut brute = 0;
        for u in 0..9 {
            for v in u + 1..9 {
                let (i, j) = b3.indices(u);
                let (i2, j2) = b3.indices(v);
                let adjacent = i != i2 && j != j2;
                assert_eq!(b3.graph.has_edge(u, v), adjacent);
                brute += usize::from(adjacent);
            }
        }
        assert_eq!(brute, 18);
        assert_eq!(b3.graph.m(), 18);
        assert!((0..9).all(|v| b3.graph.degree(v) == 4));
    }

    #[test]
    fn sequence_lengths() {
        assert!(bk_sequence(1, &[1], &[]).unwrap().is_empty());
        for (k, want) in [(2, 5), (3, 14)] {
            let base: Vec<Color> = (1..=k as Color).collect();
            let spare: Vec<Color> = (k as Color + 1..2 * k as Color).collect();
            let seq = bk_sequence(k, &base, &spare).unwrap();
            assert_eq!(seq.len(), want);
            let b = build_bk(k).unwrap();
            let lists = ColorLists::full(k * k, 2 * k as u32 - 1).unwrap();
            assert!(
                verify_sequence(&b.graph, &lists, &b.alpha, &b.beta, 2 * k * k, &seq)
                    .unwrap()
                    .is_valid()
            );
            let trace = seq.trace(&b.alpha).unwrap();
            assert_eq!(distinct_colors(&trace[k * (k - 1)]), 2 * k - 1);
            assert!(trace.iter().all(|c| distinct_colors(c) < 2 * k));
        }
    }

    #[test]
    fn sequence_rejects_bad_palettes() {
        assert!(bk_sequence(2, &[1, 2], &[2]).is_err());
        assert!(bk_sequence(2, &[1, 2], &[]).is_err());
        assert!(bk_sequence(0, &[], &[]).is_err());
    }
}
