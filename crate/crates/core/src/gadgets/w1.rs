//! Reduction from independent set to bounded-length recoloring.
//!
//! The reduced graph holds a copy of the source graph (`g_i` colored `i`), a
//! copy of `B_t` fully joined to it (row coloring over `n+1..=n+t`) and
//! `n + t + 1` color-guard sets: independent sets `C_i` of size `2t + 2t^2`
//! colored `i`. A guard set is too large to recolor within the budget, so
//! its color is unavailable to all its neighbors.

use std::collections::BTreeMap;

use crate::error::CoreError;
use crate::gadgets::bk::{bk_sequence, build_bk};
use crate::graph::{
    Color, ColorLists, Coloring, Graph, Instance, RecolorSequence, RecolorStep, Vertex,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W1Instance {
    pub instance: Instance,
    pub source_n: usize,
    pub t: usize,
    /// `g_1..g_n`.
    pub source_vertices: Vec<Vertex>,
    /// `b(i, j)` at index `(i-1) t + (j-1)`.
    pub bk_vertices: Vec<Vertex>,
    /// `C_1..C_{n+t+1}`.
    pub guards: Vec<Vec<Vertex>>,
}

impl W1Instance {
    /// The free color `n + t + 1`.
    pub fn free_color(&self) -> Color {
        (self.source_n + self.t + 1) as Color
    }

    pub fn guard_size(&self) -> usize {
        guard_size(self.t)
    }
}

fn guard_size(t: usize) -> usize {
    2 * t + 2 * t * t
}

/// Builds the instance with `k = n + t + 1` and budget `2t + 2t^2`.
pub fn w1_reduce(source: &Graph, t: usize) -> Result<W1Instance, CoreError> {
    if t == 0 {
        return Err(CoreError::domain("t must be at least 1"));
    }
    let n = source.n();
    let k = n + t + 1;
    if k > crate::MAX_COLORS as usize {
        return Err(CoreError::UnsupportedColorCount(k as u32));
    }
    let size = guard_size(t);
    let source_vertices: Vec<Vertex> = (0..n).collect();
    let bk_vertices: Vec<Vertex> = (n..n + t * t).collect();
    let guard_base = n + t * t;
    let guards: Vec<Vec<Vertex>> = (0..k)
        .map(|i| (guard_base + i * size..guard_base + (i + 1) * size).collect())
        .collect();
    let total = guard_base + k * size;

    let bk = build_bk(t)?;
    let mut edges: Vec<(Vertex, Vertex)> = source.edges().to_vec();
    edges.extend(
        bk.graph
            .edges()
            .iter()
            .map(|&(p, q)| (bk_vertices[p], bk_vertices[q])),
    );
    for &g in &source_vertices {
        edges.extend(bk_vertices.iter().map(|&b| (g, b)));
    }
    for (i, &g) in source_vertices.iter().enumerate() {
        for (j, guard) in guards.iter().enumerate() {
            if j != i && j != k - 1 {
                edges.extend(guard.iter().map(|&c| (g, c)));
            }
        }
    }
    for &b in &bk_vertices {
        edges.extend(guards[k - 1].iter().map(|&c| (b, c)));
    }
    let graph = Graph::new(total, edges)?;

    let mut alpha = vec![0 as Color; total];
    let mut roles = BTreeMap::new();
    for (i, &g) in source_vertices.iter().enumerate() {
        alpha[g] = i as Color + 1;
        roles.insert(g, format!("g:{}", i + 1));
    }
    for (i, guard) in guards.iter().enumerate() {
        for &c in guard {
            alpha[c] = i as Color + 1;
            roles.insert(c, format!("guard:{}", i + 1));
        }
    }
    let mut beta = alpha.clone();
    for (idx, &b) in bk_vertices.iter().enumerate() {
        let (i, j) = (idx / t + 1, idx % t + 1);
        alpha[b] = (n + i) as Color;
        beta[b] = (n + j) as Color;
        roles.insert(b, format!("b:{i}:{j}"));
    }
    let instance = Instance::new(
        graph,
        k as u32,
        None,
        size,
        Coloring::new(alpha),
        Coloring::new(beta),
    )?
    .with_roles(roles);
    Ok(W1Instance {
        instance,
        source_n: n,
        t,
        source_vertices,
        bk_vertices,
        guards,
    })
}

/// A sequence of at most `2(t-1) + 2t^2` steps from `alpha` to `beta`, given
/// an independent set `set` of exactly `t - 1` source vertices (0-based).
///
/// The chosen `g_i` park on the free color, `B_t` is recolored using their
/// colors as spares, and the `g_i` return.
pub fn w1_witness(w1: &W1Instance, set: &[Vertex]) -> Result<RecolorSequence, CoreError> {
    let t = w1.t;
    if set.len() != t - 1 {
        return Err(CoreError::domain(format!(
            "independent set must have exactly {} vertices, got {}",
            t - 1,
            set.len()
        )));
    }
    let mut chosen = set.to_vec();
    chosen.sort_unstable();
    if chosen.windows(2).any(|w| w[0] == w[1]) {
        return Err(CoreError::domain("independent set has repeated vertices"));
    }
    if let Some(&v) = chosen.iter().find(|&&v| v >= w1.source_n) {
        return Err(CoreError::VertexOutOfRange {
            vertex: v,
            n: w1.source_n,
        });
    }
    let source = w1.instance.graph();
    for (i, &u) in chosen.iter().enumerate() {
        if let Some(&v) = chosen[i + 1..]
            .iter()
            .find(|&&v| source.has_edge(w1.source_vertices[u], w1.source_vertices[v]))
        {
            return Err(CoreError::domain(format!(
                "vertices {} and {} are adjacent",
                u + 1,
                v + 1
            )));
        }
    }
    let n = w1.source_n as Color;
    let base: Vec<Color> = (1..=t as Color).map(|i| n + i).collect();
    let spare: Vec<Color> = chosen.iter().map(|&v| v as Color + 1).collect();
    let mut seq = RecolorSequence::new();
    for &v in &chosen {
        seq.push(RecolorStep::new(w1.source_vertices[v], w1.free_color()));
    }
    seq.extend(&bk_sequence(t, &base, &spare)?.relabel(&w1.bk_vertices));
    for &v in &chosen {
        seq.push(RecolorStep::new(w1.source_vertices[v], v as Color + 1));
    }
    Ok(seq)
}

/// Whether every coloring along `seq` (from `alpha`) keeps each `g_i` on
/// `i` or the free color and keeps `B_t` off the free color.
///
/// Overlong sequences, steps outside the palette and no-op steps are errors.
/// The guard condition is checked before properness at every step, so a
/// guard violation is reported as `false` even when the same step also
/// creates a conflict; a conflict alone is an error.
pub fn colorguard_check(w1: &W1Instance, seq: &RecolorSequence) -> Result<bool, CoreError> {
    let inst = &w1.instance;
    if seq.len() > inst.ell() {
        return Err(CoreError::domain(format!(
            "sequence has {} steps, budget is {}",
            seq.len(),
            inst.ell()
        )));
    }
    let free = w1.free_color();
    let lists: ColorLists = inst.lists().into_owned();
    let graph = inst.graph();
    let mut current = inst.alpha().as_slice().to_vec();
    let is_source: Vec<Option<Color>> = {
        let mut v = vec![None; graph.n()];
        for (i, &g) in w1.source_vertices.iter().enumerate() {
            v[g] = Some(i as Color + 1);
        }
        v
    };
    let mut is_bk = vec![false; graph.n()];
    for &b in &w1.bk_vertices {
        is_bk[b] = true;
    }
    for (idx, step) in seq.iter().enumerate() {
        if step.vertex >= graph.n() {
            return Err(CoreError::VertexOutOfRange {
                vertex: step.vertex,
                n: graph.n(),
            });
        }
        if !lists.get(step.vertex).contains(step.color) {
            return Err(CoreError::ColorOutOfRange {
                color: step.color,
                k: inst.k(),
            });
        }
        if current[step.vertex] == step.color {
            return Err(CoreError::NoOpStep {
                vertex: step.vertex,
                color: step.color,
            });
        }
        current[step.vertex] = step.color;
        if let Some(own) = is_source[step.vertex] {
            if step.color != own && step.color != free {
                return Ok(false);
            }
        }
        if is_bk[step.vertex] && step.color == free {
            return Ok(false);
        }
        if let Some(&w) = graph
            .neighbors(step.vertex)
            .iter()
            .find(|&&w| current[w] == step.color)
        {
            return Err(CoreError::domain(format!(
                "step {} makes edge {}-{} monochromatic",
                idx,
                step.vertex + 1,
                w + 1
            )));
        }
    }
    Ok(true)
}
