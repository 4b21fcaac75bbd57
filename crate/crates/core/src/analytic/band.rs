use super::gap::{build_wire_state, check_bulk_theta, WireParity};
use crate::error::{Error, Result};
use crate::roots::{find_root, scan_brackets, Tolerance};
use crate::state::WalkerState;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, PI};

/// Positive-ω extended eigenstate of a clean wire (`cos ω < cos θ` regime).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticBandSolution {
    pub theta: f64,
    pub half_length: usize,
    pub parity: WireParity,
    pub omega: f64,
    /// Real momentum, `cos k = cos ω / cos θ`.
    pub k: f64,
    pub mu: i8,
    /// `sin ω · sin χ = sin θ`.
    pub chi: f64,
    /// Phase of `a_{L+1}` relative to `e^{iπ/4}`.
    pub psi: f64,
}

impl AnalyticBandSolution {
    pub fn size(&self) -> usize {
        self.parity.size(self.half_length)
    }

    pub fn zeta_size(&self) -> u8 {
        self.parity.zeta_size()
    }

    /// `sin(arg a_{L+1} + ω/2)`, zero at an exact solution.
    pub fn quantization_residual(&self) -> f64 {
        let a = amplitude(self.k, self.chi, self.mu, self.parity.z(self.half_length));
        (a.arg() + self.omega / 2.0).sin()
    }
}

fn phase_offset(mu: i8) -> f64 {
    f64::from(1 + mu) * FRAC_PI_4
}

/// `e^{iπ/4} Σ± √(1 ± cos χ) e^{±i(k·s + φ)}` at shifted coordinate `s`.
fn amplitude(k: f64, chi: f64, mu: i8, s: f64) -> Complex64 {
    let arg = k * s + phase_offset(mu);
    let c = chi.cos();
    Complex64::from_polar(1.0, FRAC_PI_4)
        * ((1.0 + c).sqrt() * Complex64::from_polar(1.0, arg) + (1.0 - c).max(0.0).sqrt() * Complex64::from_polar(1.0, -arg))
}

fn omega_of_k(k: f64, theta: f64) -> f64 {
    (k.cos() * theta.cos()).acos()
}

fn chi_of_omega(omega: f64, theta: f64) -> f64 {
    (theta.sin() / omega.sin()).min(1.0).asin()
}

/// `Im(a_{L+1} e^{iω/2})` as a function of momentum.
fn condition(k: f64, theta: f64, mu: i8, z: f64) -> f64 {
    let omega = omega_of_k(k, theta);
    (amplitude(k, chi_of_omega(omega, theta), mu, z) * Complex64::from_polar(1.0, omega / 2.0)).im
}

/// Expected number of positive-ω band roots: `2L` for odd wires, `2L − 1` for even.
pub fn expected_band_roots(half_length: usize, parity: WireParity) -> usize {
    match parity {
        WireParity::Odd => 2 * half_length,
        WireParity::Even => 2 * half_length - 1,
    }
}

/// All positive-ω band roots for both parities μ = ±1, sorted by ω.
///
/// Momentum `k ∈ (0, π)` is scanned in `8·D` cells; the end points, where the
/// condition vanishes trivially at the band edges, are excluded.
pub fn solve_band(theta: f64, half_length: usize, parity: WireParity) -> Result<Vec<AnalyticBandSolution>> {
    check_bulk_theta(theta)?;
    if half_length < 1 {
        return Err(Error::InvalidParameter("half-length L must be at least 1".into()));
    }
    let size = parity.size(half_length);
    let z = parity.z(half_length);
    let cells = 8 * size;
    let h = PI / cells as f64;
    let mut out = Vec::new();
    for mu in [1i8, -1] {
        let f = |k: f64| condition(k, theta, mu, z);
        for (lo, hi) in scan_brackets(f, h, PI - h, cells - 2) {
            let k = find_root(f, lo, hi, Tolerance { abs: 1e-16, rel: 1e-16, max_iter: 300 })?;
            let omega = omega_of_k(k, theta);
            if (omega.cos() - theta.cos()).abs() < 1e-12 {
                return Err(Error::Marginal);
            }
            let chi = chi_of_omega(omega, theta);
            let psi = (amplitude(k, chi, mu, z) * Complex64::from_polar(1.0, -FRAC_PI_4)).arg();
            out.push(AnalyticBandSolution { theta, half_length, parity, omega, k, mu, chi, psi });
        }
    }
    let expected = expected_band_roots(half_length, parity);
    if out.len() != expected {
        return Err(Error::RootCountMismatch { expected, found: out.len() });
    }
    out.sort_by(|a, b| a.omega.total_cmp(&b.omega));
    Ok(out)
}

/// Eigenvector of a band solution, dressed for coin phases ζ, σ.
pub fn band_eigenvector(sol: &AnalyticBandSolution, zeta: f64, sigma: f64) -> Result<WalkerState> {
    let shift = f64::from(sol.zeta_size()) / 2.0;
    build_wire_state(sol.size(), |x| amplitude(sol.k, sol.chi, sol.mu, x as f64 - shift), zeta, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::CoinParams;
    use crate::field::CoinField;
    use crate::spectral::spectrum;
    use crate::walk::{apply_coin, apply_step};
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn roots_match_diagonalization() {
        let theta = PI / 10.0;
        for size in [21usize, 22, 9, 12] {
            let (parity, l) = WireParity::split(size).unwrap();
            let sols = solve_band(theta, l, parity).unwrap();
            let field = CoinField::wire(size, CoinParams::rotation(theta).unwrap(), -FRAC_PI_2, -FRAC_PI_2).unwrap();
            let spec = spectrum(&field).unwrap();
            for s in &sols {
                assert!(s.omega > theta && s.omega < PI - theta);
                let near = spec.pairs[spec.nearest(s.omega).unwrap()].omega;
                assert!((near - s.omega).abs() < 1e-9, "size {size}: {} vs {near}", s.omega);
                assert!(s.quantization_residual().abs() < 1e-10);
                assert!((s.k.cos() - s.omega.cos() / theta.cos()).abs() < 1e-12);
                assert!((s.omega.sin() * s.chi.sin() - theta.sin()).abs() < 1e-12);
                let v = band_eigenvector(s, 0.0, 0.0).unwrap();
                let uv = apply_step(&apply_coin(&v, &field).unwrap());
                let expect = v.clone().scale(Complex64::from_polar(1.0, -s.omega));
                assert!(uv.distance(&expect).unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn tangent_form_holds_at_roots() {
        let theta = PI / 6.0;
        let sols = solve_band(theta, 6, WireParity::Odd).unwrap();
        for s in sols {
            let z = WireParity::Odd.z(6);
            let lhs = (s.omega / 2.0 + FRAC_PI_4).tan()
                * ((s.omega.sin() + theta.sin()) / (s.omega.sin() - theta.sin())).sqrt();
            let rhs = -(s.k * z + phase_offset(s.mu)).tan();
            assert!(((lhs - rhs) / (1.0 + lhs.abs())).abs() < 1e-8, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn counts_by_parity() {
        assert_eq!(solve_band(0.4, 5, WireParity::Odd).unwrap().len(), 10);
        assert_eq!(solve_band(0.4, 5, WireParity::Even).unwrap().len(), 9);
    }
}
