//! Exact solvers and gadget constructions for bounded-length graph recoloring.
//!
//! Given a graph, two proper (list-)colorings `alpha` and `beta` and a budget
//! `ell`, decide whether `alpha` can be turned into `beta` by at most `ell`
//! single-vertex recolorings that keep the coloring proper at every step.
//!
//! Three independent decision procedures are provided:
//!
//! * [`oracle`]: breadth-first search over the color graph, the ground truth;
//! * [`xp`]: depth-bounded branching over single recolorings;
//! * [`fpt`]: used-color-list guessing followed by list-restricted branching.
//!
//! The [`gadgets`] module builds the reduction instances and their witness
//! sequences, and [`format`] reads and writes the line-oriented text formats.

pub mod enumerate;
pub mod format;
pub mod fpt;
pub mod gadgets;
pub mod graph;
pub mod oracle;
pub mod xp;

mod error;

pub use error::{CoreError, SearchError};
pub use graph::{
    check_coloring, diff_set, used_color_lists, verify_sequence, Color, ColorLists, ColorSet,
    Coloring, Graph, Instance, InvalidReason, RecolorSequence, RecolorStep, UsedColorLists,
    Verdict, Vertex, Violation, MAX_COLORS,
};
