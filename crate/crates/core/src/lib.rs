//! Coverings of uniform hypergraphs and their spectral invariants.
//!
//! A k-fold covering of a connected m-uniform hypergraph is encoded by a
//! permutation voltage assignment on its incidence graph; the derived
//! hypergraph lives on V x [k]. This crate builds those covers, decides
//! their connectedness and balance, computes the stabilizing and cyclic
//! indices exactly via Smith normal forms over Z_m, evaluates the covering
//! stabilizing-index formula through the twisted incidence matrix, and checks
//! the spectral lift identities of the adjacency tensor numerically.
//!
//! Modules:
//! - [`hypergraph`]: uniform hypergraphs, incidence graphs/matrices,
//!   connectivity, covering-projection checks
//! - [`matrix`] / [`snf`]: exact integer matrices, Smith normal form,
//!   invariant divisors and linear solving over Z_m
//! - [`perm`] / [`voltage`]: permutations, voltage assignments, derived
//!   covers, switching, balance, connectedness criteria
//! - [`invariants`]: stabilizing index, cyclic index with coloring
//!   certificates, signed hypergraphs, the twisted incidence matrix and the
//!   covering formula
//! - [`spectral`]: implicit adjacency tensors, power iteration, eigenpair
//!   residuals, covering lifts
//! - [`io`]: the text formats shared with the command-line tool

pub mod hypergraph;
pub mod invariants;
pub mod io;
pub mod matrix;
pub mod perm;
pub mod snf;
pub mod spectral;
pub mod voltage;

pub use hypergraph::{
    is_covering_projection, BNode, Connectivity, CoveringCheck, Hypergraph, HypergraphError,
    IncidenceGraph, SignedHypergraph, VertexMap,
};
pub use invariants::{
    covering_stabilizing_index, cyclic_index, invariant_report, rho2_matrix,
    signed_hypergraph, signed_incidence_matrix, stabilizing_index, transition_matrix,
    twisted_incidence, verify_block_decomposition, verify_coloring, voltage_layer_matrices,
    ColoringCertificate, CyclicIndex, InvariantError, InvariantReport, StabilizingIndex,
};
pub use matrix::IntMatrix;
pub use perm::{Perm, PermError};
pub use snf::{
    enumerate_kernel_zm, integer_snf, kernel_count_zm, solve_linear_zm, zm_invariant_divisors,
    LinalgError, SnfResult, ZmDivisors, DEFAULT_ENUMERATION_BUDGET,
};
pub use spectral::{
    eigen_residual, lift_tau, signed_lift, spectral_radius, tensor_apply,
    verify_lift_identities, LiftCheck, PowerIteration, SpectralError, TensorView,
    DEFAULT_MAX_ITER, DEFAULT_TOL, LIFT_TOLERANCE,
};
pub use voltage::{
    connected_by_orbit, connected_direct, connected_two_fold, derive, is_balanced, switch,
    tree_gauge, walk_voltage, DerivedCover, TreeGauge, VoltageAssignment, VoltageError,
};
