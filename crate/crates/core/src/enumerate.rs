//! Exhaustive enumeration of small graphs and colorings, for cross-checking
//! solvers against each other.

use crate::graph::{check_coloring, Color, ColorLists, Coloring, Graph};

/// All labeled simple graphs on `n` vertices, in order of their edge bitmask
/// over the pairs `(0,1), (0,2), ..., (n-2,n-1)`.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    assert!(pairs.len() < 32, "too many graphs on {n} vertices");
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p);
            Graph::new(n, edges).expect("distinct pairs")
        })
        .collect()
}

/// Every assignment `1..=k` on `n` vertices, lexicographic with vertex 0
/// most significant.
pub fn all_assignments(n: usize, k: u32) -> impl Iterator<Item = Vec<Color>> {
    let total = (k as u64)
        .checked_pow(n as u32)
        .expect("too many assignments");
    (0..total).map(move |mut idx| {
        let mut colors = vec![0; n];
        for slot in colors.iter_mut().rev() {
            *slot = (idx % u64::from(k)) as Color + 1;
            idx /= u64::from(k);
        }
        colors
    })
}

/// All proper list colorings, lexicographic.
pub fn proper_colorings(graph: &Graph, lists: &ColorLists) -> Vec<Coloring> {
    all_assignments(graph.n(), lists.k())
        .filter(|c| {
            check_coloring(graph, lists, c)
                .expect("lengths match")
                .is_empty()
        })
        .map(Coloring::new)
        .collect()
}
