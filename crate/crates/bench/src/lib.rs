//! Fixed instances shared by the solver benchmarks.

use recolor_core::gadgets::build_bk;
use recolor_core::{Coloring, Graph, Instance};

/// `(name, instance)` pairs, all YES instances at their budget.
pub fn fixtures() -> Vec<(&'static str, Instance)> {
    let b2 = build_bk(2).unwrap().to_instance(3, 3).unwrap();
    let c5 = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
    let c5 = Instance::new(
        c5,
        4,
        None,
        6,
        Coloring::new(vec![1, 2, 1, 2, 3]),
        Coloring::new(vec![2, 1, 2, 1, 3]),
    )
    .unwrap();
    let p6 = Instance::new(
        Graph::path(6),
        3,
        None,
        9,
        Coloring::new(vec![1, 2, 1, 2, 1, 2]),
        Coloring::new(vec![2, 1, 2, 1, 2, 1]),
    )
    .unwrap();
    vec![("b2", b2), ("c5", c5), ("p6", p6)]
}
