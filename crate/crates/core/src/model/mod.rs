//! Graded tensor models: stranded-graph invariants, propagators, the Wick
//! expansion into two-colored graphs, amplitudes and the perturbative
//! partition function.

pub mod amplitude;
pub mod enumerate;
pub mod expansion;
pub mod graph;
pub mod propagator;
pub mod wick;

pub use amplitude::Amplitude;
pub use enumerate::{enumerate_invariants, SlotSymmetry, DEFAULT_ENUMERATION_CAP};
pub use expansion::{perturbative_expansion, ExpansionTerm, Interaction, ModelSpec};
pub use graph::{Node, StrandedGraph};
pub use propagator::{Propagator, PropagatorTerm};
pub use wick::{
    check_wick_size, count_faces, default_reference, duality_check, face_formula_amplitude, gaussian_expectation, graph_amplitude,
    invariant_sign_normal_form, promote, wick_expand, DualityReport, ExpectationOptions, FaceCounts,
    InvariantNormalForm, TwoColoredGraph, MAX_WICK_GRAPHS,
};
