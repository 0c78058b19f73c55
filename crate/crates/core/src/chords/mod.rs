//! Connected subsets of prescribed measure with zero integral.

mod evidence;
mod solve;

pub use evidence::{chord_membership_evidence, grid_search, EvidenceMethod, EvidenceReport, GridOutcome};
pub use solve::{
    arc_on_semi_simple, euler_chord_solve, graph_chord_solve, lift_to_circle, walk_window, ChordSolution,
};
