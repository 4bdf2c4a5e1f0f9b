//! Sheaves of ideals as finite digraphs of global generators.

mod count;
mod extract;
mod model;
mod sheaf;
mod zz;

pub use count::{
    count_digraph_space, count_finite_digraph_space, DigraphSpaceCount, SELECTION_BOUND,
};
pub use extract::{
    basis_with_intersections, extract_digraph, round_trip, termination_certificate, DigraphOracle,
    ExtractOptions, Extraction, PiecewiseOracle, QuasiCoherentOracle, RoundTripEntry, SheafOracle,
    TableOracle, TerminationCertificate,
};
pub use model::{
    validate_digraph, DigraphNode, IdealDigraph, InvariantCheck, ValidationReport, DECREASING,
    FUNCTIONAL, GLOBAL, INCREASING, MAX_NODES, STRUCTURAL,
};
pub use sheaf::{
    clear_denominators, evaluate_sheaf, is_quasi_coherent, section_membership,
    section_membership_fraction, Fraction, FractionNode,
};
pub use zz::{extract_zz_digraph, ZZDigraph, ZZNode, ZZSheafData};
