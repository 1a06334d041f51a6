//! Disorientability analysis for simplicial complexes.
//!
//! A complex is *disorientable* when its top-dimensional simplices can be
//! oriented so that any two of them sharing a codimension-one face induce the
//! same orientation on that face. This is the higher-dimensional counterpart
//! of graph bipartiteness: a graph is disorientable exactly when it is
//! bipartite, with every edge pointing from one part to the other.
//!
//! The crate decides the property by two-coloring the signed down-dual graph
//! and produces machine-checkable certificates in both directions: a sign
//! assignment when the complex is disorientable, an offending dual cycle when
//! it is not. Offending cycles are exactly the simple cycles of odd length and
//! the twisted cycles of even length; cycles whose edges all stem from one
//! branching face never obstruct. Non-disorientable complexes can be repaired
//! by stellar edge subdivision, and the combinatorics can be cross-checked
//! against Hodge-Laplacian spectra.

pub mod complex;
pub mod decide;
pub mod doc;
pub mod dual;
pub mod generate;
pub mod report;
pub mod spectral;
pub mod split;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

pub use complex::{
    faces, induced_orientation, permutation_sign, BranchingReport, OrientedSimplex, Sign, Simplex,
    SimplicialComplex,
};
pub use decide::{
    brute_force_disorientable, check_disorientable, check_disorientable_oriented,
    cycle_parity_verdict, disorientable_by_cycle_parity, disorientation_is_valid,
    is_bipartite_combinatorial, two_coloring, BipartiteCheck, Disorientation, Obstruction, Outcome,
    Verdict, DEFAULT_BRUTE_FORCE_CAP,
};
pub use dual::{
    down_dual, fundamental_cycles, is_d_connected, line_graph, signed_down_dual,
    signed_down_dual_oriented, up_dual, CycleClassification, DualEdge, DualGraph, SignedDualGraph,
};
pub use spectral::{
    betti_numbers, boundary_matrix, hodge_laplacian, is_bipartite_spectral,
    normalized_graph_laplacian, spectral_bipartition, spectrum, BoundaryMatrix, LaplacianKind,
    LaplacianMatrix, PartitionSide, SpectrumResult, DEFAULT_MATRIX_CAP, ZERO_EIGENVALUE_TOL,
};
pub use split::{
    default_split_iterations, find_conflict, make_disorientable, subdivide_edge,
    verify_topology_preserved, SplitLog, SplitStep,
};
