//! Exact computations for Spin(9)-structures on R^16 and for G-structures
//! admitting connections with totally skew-symmetric torsion.

pub mod clifford;
pub mod forms;
pub mod gstructure;
pub mod homogeneous;
pub mod io;
pub mod linalg;
pub mod rep;
pub mod scalar;
pub mod torsion;
pub mod verify;

pub use scalar::{Field, GaussRational, Rational};

/// Seed for every randomized routine: `SPIN9KIT_SEED` if set, else a fixed default.
pub fn seed() -> u64 {
    static SEED: std::sync::OnceLock<u64> = std::sync::OnceLock::new();
    *SEED.get_or_init(|| {
        std::env::var("SPIN9KIT_SEED")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(0x5eed_0009)
    })
}
