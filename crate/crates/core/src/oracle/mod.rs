//! Independent dense-state route: full state vectors built straight from the
//! singlet-plus-projection definition, the parent Hamiltonian with its
//! boundary terms, exact reduced density matrices and correlators, and a
//! seeded alternating maximization over block product states.
//!
//! Nothing here reuses the transfer-operator shortcuts from [`crate::mps`]
//! and [`crate::entanglement`]; agreement between the two routes is what the
//! integration tests check.

pub mod hamiltonian;
pub mod maximize;
pub mod state;

pub use hamiltonian::{
    build_hamiltonian, candidate_energy, ground_state_report, verify_ground_state,
    CandidateEnergy, GroundStateReport,
};
pub use maximize::{
    exact_geometric_entanglement, product_overlap_dense, product_overlap_mps, BlockProductAnsatz,
    ExactGeomEnt,
};
pub use state::{
    build_vbs_state, exact_correlator, reduced_density_matrix, vbs_mps_amplitudes, DenseState,
};
