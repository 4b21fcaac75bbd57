//! Per-site U(2) coin operators.

use crate::error::{Error, Result};
use crate::fold_angle;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// 2×2 complex matrix stored row-major.
pub type Mat2 = [[Complex64; 2]; 2];

/// The four coin angles (δ, ζ, σ, θ), all in radians.
///
/// θ is normalized into `(-π, π]` on construction; the sign of θ labels the
/// topological phase of a homogeneous walk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoinParams {
    pub delta: f64,
    pub zeta: f64,
    pub sigma: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TopologicalPhase {
    Positive,
    Negative,
    /// θ ∈ {0, π}: the bulk gap closes.
    Gapless,
}

impl CoinParams {
    pub fn new(delta: f64, zeta: f64, sigma: f64, theta: f64) -> Result<Self> {
        for (name, v) in [("delta", delta), ("zeta", zeta), ("sigma", sigma), ("theta", theta)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("coin angle {name} = {v} is not finite")));
            }
        }
        Ok(Self { delta, zeta, sigma, theta: fold_angle(theta) })
    }

    /// Real rotation coin `e^{-iθσ_y}` (δ = ζ = σ = 0).
    pub fn rotation(theta: f64) -> Result<Self> {
        Self::new(0.0, 0.0, 0.0, theta)
    }

    /// Same phases, different θ.
    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        Self::new(self.delta, self.zeta, self.sigma, theta)
    }

    pub fn phase(&self) -> TopologicalPhase {
        if self.theta == 0.0 || self.theta == PI {
            TopologicalPhase::Gapless
        } else if self.theta > 0.0 {
            TopologicalPhase::Positive
        } else {
            TopologicalPhase::Negative
        }
    }

    /// Whether the coin totally reflects (|θ| = π/2).
    pub fn is_reflecting(&self) -> bool {
        (self.theta.abs() - PI / 2.0).abs() < 1e-12
    }

    pub fn matrix(&self) -> Mat2 {
        coin_matrix(self)
    }
}

/// `e^{-iδ} [[e^{iζ}cosθ, e^{i(ζ+σ)}sinθ], [-e^{-i(ζ+σ)}sinθ, e^{-iζ}cosθ]]`.
pub fn coin_matrix(p: &CoinParams) -> Mat2 {
    let (s, c) = p.theta.sin_cos();
    let global = Complex64::from_polar(1.0, -p.delta);
    let z = Complex64::from_polar(1.0, p.zeta);
    let zs = Complex64::from_polar(1.0, p.zeta + p.sigma);
    [
        [global * z * c, global * zs * s],
        [-global * zs.conj() * s, global * z.conj() * c],
    ]
}

pub(crate) fn mat2_apply(m: &Mat2, v: [Complex64; 2]) -> [Complex64; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-15
    }

    #[test]
    fn identity_coin() {
        let m = coin_matrix(&CoinParams::rotation(0.0).unwrap());
        assert!(close(m[0][0], 1.0.into()) && close(m[1][1], 1.0.into()));
        assert!(close(m[0][1], 0.0.into()) && close(m[1][0], 0.0.into()));
    }

    #[test]
    fn reflecting_coin() {
        let p = CoinParams::rotation(PI / 2.0).unwrap();
        assert!(p.is_reflecting());
        let m = p.matrix();
        assert!(close(m[0][0], 0.0.into()));
        assert!(close(m[0][1], 1.0.into()));
        assert!(close(m[1][0], (-1.0).into()));
        assert!(close(m[1][1], 0.0.into()));
    }

    #[test]
    fn hadamard_like_signs() {
        let m = CoinParams::rotation(PI / 4.0).unwrap().matrix();
        let expect = [[1.0, 1.0], [-1.0, 1.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((m[i][j] - Complex64::new(expect[i][j] * FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn theta_is_normalized_and_labelled() {
        let p = CoinParams::rotation(3.0 * PI / 2.0).unwrap();
        assert!((p.theta + PI / 2.0).abs() < 1e-15);
        assert_eq!(p.phase(), TopologicalPhase::Negative);
        assert_eq!(CoinParams::rotation(-PI).unwrap().phase(), TopologicalPhase::Gapless);
        assert_eq!(CoinParams::rotation(0.1).unwrap().phase(), TopologicalPhase::Positive);
        assert!(CoinParams::new(f64::NAN, 0.0, 0.0, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn coin_is_unitary(d in -7.0..7.0f64, z in -7.0..7.0f64, s in -7.0..7.0f64, t in -7.0..7.0f64) {
            let m = CoinParams::new(d, z, s, t).unwrap().matrix();
            // columns orthonormal
            for i in 0..2 {
                for j in 0..2 {
                    let dot = m[0][i].conj() * m[0][j] + m[1][i].conj() * m[1][j];
                    let want = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((dot - Complex64::new(want, 0.0)).norm() < 1e-14);
                }
            }
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            prop_assert!((det.norm() - 1.0).abs() < 1e-14);
        }
    }
}
