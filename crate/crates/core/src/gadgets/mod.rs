//! Constructions from the hardness reductions, with their witness sequences.
//!
//! * [`bk`]: the complement of `K_k x K_k` with its row and column colorings;
//! * [`forbidding`]: list-colored paths acting as a single forbidden pair;
//! * [`list_to_plain`]: drops color lists by anchoring to a clique;
//! * [`np`]: the 3-colorability reduction to list recoloring;
//! * [`w1`]: the independent-set reduction with color-guard sets.

pub mod bk;
pub mod forbidding;
pub mod list_to_plain;
pub mod np;
pub mod w1;

pub use bk::{bk_sequence, build_bk, BkInstance};
pub use forbidding::{build_forbidding_path, shift_path, ForbiddingPath};
pub use list_to_plain::list_to_plain;
pub use np::{gadget_abstraction_check, np_reduce, np_witness, NpInstance};
pub use w1::{colorguard_check, w1_reduce, w1_witness, W1Instance};
