//! Replaces color lists by adjacency to a clique of fixed anchor vertices.

use std::collections::BTreeMap;

use crate::error::CoreError;
use crate::graph::{Color, ColorSet, Coloring, Graph, Instance, Vertex};

/// Turns a list instance whose lists lie in `1..=4` into a plain `k`-color
/// instance (`k >= 4`) at the same distance.
///
/// Adds anchors `x_1, ..., x_k` forming a clique, each `x_i` fixed to color
/// `i` in both colorings, and joins every original vertex `v` to `x_i` for
/// each `i` outside `L(v)`. For `k = 4` this is the usual `K_4` anchor; for
/// larger `k` the extra anchors also block the colors `5..=k`, which the
/// lists never allowed. Lists are dropped; the budget is unchanged.
pub fn list_to_plain(inst: &Instance, k: u32) -> Result<Instance, CoreError> {
    if k < 4 {
        return Err(CoreError::domain(format!(
            "target palette must have k >= 4, got {k}"
        )));
    }
    let lists = inst.lists();
    let four = ColorSet::full(4);
    if let Some(v) = (0..lists.len()).find(|&v| !lists.get(v).is_subset(four)) {
        return Err(CoreError::domain(format!(
            "list of vertex {} is {:?}, not within 1..=4",
            v + 1,
            lists.get(v)
        )));
    }
    let n = inst.graph().n();
    let anchor = |i: Color| -> Vertex { n + (i as usize - 1) };
    let mut edges: Vec<(Vertex, Vertex)> = inst.graph().edges().to_vec();
    for i in 1..=k {
        for j in i + 1..=k {
            edges.push((anchor(i), anchor(j)));
        }
    }
    for v in 0..n {
        let allowed = lists.get(v);
        for i in (1..=k).filter(|&i| !allowed.contains(i)) {
            edges.push((v, anchor(i)));
        }
    }
    let graph = Graph::new(n + k as usize, edges)?;
    let extend = |c: &Coloring| -> Coloring {
        let mut colors = c.as_slice().to_vec();
        colors.extend(1..=k);
        Coloring::new(colors)
    };
    let mut roles: BTreeMap<Vertex, String> = inst.roles().clone();
    for i in 1..=k {
        roles.insert(anchor(i), format!("anchor:{i}"));
    }
    Ok(Instance::new(
        graph,
        k,
        None,
        inst.ell(),
        extend(inst.alpha()),
        extend(inst.beta()),
    )?
    .with_roles(roles))
}
