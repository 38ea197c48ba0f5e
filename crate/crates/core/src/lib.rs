//! Analytical and exact-diagonalization toolkit for the spin-1
//! valence-bond-solid chain: matrix-product construction, transfer-matrix
//! spectral analysis, closed-form geometric entanglement per block, block
//! entropies, spin correlators, and an independent dense-state oracle.

pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod mps;
pub mod oracle;
pub mod spin;
pub mod tensor;

pub use error::{AkltError, Result};

/// Boundary condition of the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Open,
    Periodic,
}

impl Boundary {
    pub fn label(self) -> &'static str {
        match self {
            Boundary::Open => "obc",
            Boundary::Periodic => "pbc",
        }
    }
}

impl std::str::FromStr for Boundary {
    type Err = AkltError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "obc" | "open" => Ok(Boundary::Open),
            "pbc" | "periodic" => Ok(Boundary::Periodic),
            other => Err(AkltError::Argument(format!(
                "unknown boundary condition `{other}`; expected obc or pbc"
            ))),
        }
    }
}

/// Largest matrix dimension accepted by the dense eigensolvers.
pub const MAX_DENSE_DIM: u64 = 10_000;

/// Largest amplitude count accepted by the dense state constructors.
pub const MAX_STATE_AMPLITUDES: u64 = 10_000_000;

/// Absolute convergence tolerance for alternating product-state maximization.
pub const ALS_TOL: f64 = 1e-12;

/// Sweep cap for alternating product-state maximization.
pub const ALS_MAX_SWEEPS: usize = 10_000;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_labels_round_trip() {
        for (text, bc) in [("obc", Boundary::Open), ("pbc", Boundary::Periodic)] {
            assert_eq!(text.parse::<Boundary>().unwrap(), bc);
            assert_eq!(bc.label(), text);
        }
        assert_eq!("open".parse::<Boundary>().unwrap(), Boundary::Open);
        assert_eq!("periodic".parse::<Boundary>().unwrap(), Boundary::Periodic);
        assert!("ring".parse::<Boundary>().is_err());
    }
}
