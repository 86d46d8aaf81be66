//! Small-graph toolkit for 2-vertex-fault hamiltonicity of graphs meeting
//! Ore's degree-sum condition.
//!
//! * [`graph`]: dense graphs on at most 64 vertices, join/union/link/delete
//!   operators and graph6 interchange.
//! * [`invariants`]: degrees, σ₂, vertex connectivity with cut
//!   certificates, independence number.
//! * [`hamiltonicity`]: exact hamiltonian-cycle search and k-fault checks.
//! * [`families`]: constructors for the exceptional graph families.
//! * [`recognizers`]: canonical forms, join decompositions and family
//!   membership.
//! * [`verification`]: isomorph-free enumeration, per-graph classification
//!   and whole-theorem reports.

pub mod canon;
pub mod error;
pub mod families;
pub mod graph;
pub mod hamiltonicity;
pub mod invariants;
pub mod recognizers;
pub mod verification;

pub use error::{Error, Result};
pub use families::{build_family, family_atlas, FamilyId, FamilySpec};
pub use graph::{
    delete, disjoint_union, join, link, parse_graph6, Edge, EdgeList, Graph, Primitive,
};
pub use hamiltonicity::{
    find_hamiltonian_cycle, is_k_edge_fault_hamiltonian, is_k_vertex_fault_hamiltonian, HamCycle,
};
pub use invariants::{degree_sequence, independence_number, sigma2, vertex_connectivity, Sigma2};
pub use recognizers::{are_isomorphic, canonical_form, CanonicalLabel};
pub use verification::{classify_graph, verify_theorem, Classification, Theorem};
