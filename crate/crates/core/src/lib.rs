//! Discrete-time topological quantum walks on finite one-dimensional lattices.
//!
//! The crate is organised around four layers:
//!
//! - [`coin`], [`geometry`], [`field`], [`state`] and [`walk`] hold the walk
//!   itself: per-site U(2) coins, periodic-ring embeddings of cycles, wires and
//!   truncated lines, and the exact one-step evolution `U = S C`.
//! - [`spectral`] builds the dense one-step unitary and extracts quasienergies,
//!   eigenvectors and localization metrics.
//! - [`analytic`] constructs closed-form eigenstates (interface states, gap and
//!   band states of a finite wire), symmetry operators and gap-energy formulas.
//! - [`experiments`] scripts the parameterised reproductions built on top.

pub mod analytic;
pub mod coin;
pub mod error;
pub mod experiments;
pub mod field;
pub mod geometry;
pub mod roots;
pub mod spectral;
pub mod state;
pub mod walk;

pub use coin::{coin_matrix, CoinParams, Mat2, TopologicalPhase};
pub use error::{Error, Result};
pub use field::{CoinField, Scenario};
pub use geometry::{Geometry, GeometryKind};
pub use num_complex::Complex64;
pub use state::WalkerState;
pub use walk::{apply_coin, apply_step, evolve, evolve_observed, Evolution, EvolveOptions};

/// Library version, recorded in serialized outputs.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Folds an angle into the first Floquet zone `(-π, π]`.
pub fn fold_angle(angle: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    let mut a = angle.rem_euclid(TAU);
    if a > PI {
        a -= TAU;
    }
    // rem_euclid can land on TAU itself for tiny negative inputs
    if a <= -PI {
        a += TAU;
    }
    a
}

/// Circular distance between two quasienergies.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    fold_angle(a - b).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn fold_stays_in_zone() {
        assert_eq!(fold_angle(PI), PI);
        assert_eq!(fold_angle(-PI), PI);
        assert!((fold_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((fold_angle(-1e-18)).abs() < 1e-17);
        assert!((angle_distance(PI - 1e-3, -PI + 1e-3) - 2e-3).abs() < 1e-12);
    }
}
