use super::k0;
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::roots::{find_root, Tolerance};
use crate::state::WalkerState;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

/// Odd (`D = 2L+3`) or even (`D = 2L+2`) wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WireParity {
    Odd,
    Even,
}

impl WireParity {
    /// 1 for odd wires, 2 for even wires.
    pub fn zeta_size(self) -> u8 {
        match self {
            WireParity::Odd => 1,
            WireParity::Even => 2,
        }
    }

    pub fn from_zeta_size(z: u8) -> Result<Self> {
        match z {
            1 => Ok(WireParity::Odd),
            2 => Ok(WireParity::Even),
            _ => Err(Error::InvalidParameter(format!("zeta_size must be 1 or 2, got {z}"))),
        }
    }

    /// Parity and half-length `L` of a wire with `size` sites.
    pub fn split(size: usize) -> Result<(Self, usize)> {
        if size < 4 {
            return Err(Error::InvalidParameter(format!("wire of {size} sites has no interior half-length")));
        }
        Ok(if size % 2 == 1 { (WireParity::Odd, (size - 3) / 2) } else { (WireParity::Even, (size - 2) / 2) })
    }

    pub fn size(self, half_length: usize) -> usize {
        match self {
            WireParity::Odd => 2 * half_length + 3,
            WireParity::Even => 2 * half_length + 2,
        }
    }

    /// `Z_ζ = L + 1 − ζ/2`.
    pub fn z(self, half_length: usize) -> f64 {
        half_length as f64 + 1.0 - f64::from(self.zeta_size()) / 2.0
    }
}

/// Positive-ω bi-localized gap state of a clean wire with bulk θ and
/// reflecting ends at −π/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticGapSolution {
    pub theta: f64,
    pub half_length: usize,
    pub parity: WireParity,
    pub omega: f64,
    /// `cosh k = cos ω / cos θ`.
    pub k: f64,
    pub k0: f64,
    /// `sin χ = sin ω / sin θ`, χ ∈ (0, π/2).
    pub chi: f64,
    /// `χ/2 + π/4`.
    pub phi: f64,
    /// Defined for odd wires only.
    pub phi0: Option<f64>,
    pub mu: i8,
    pub z: i8,
}

impl AnalyticGapSolution {
    pub fn size(&self) -> usize {
        self.parity.size(self.half_length)
    }

    pub fn zeta_size(&self) -> u8 {
        self.parity.zeta_size()
    }
}

pub(crate) fn check_bulk_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(Error::InvalidParameter(format!("bulk theta must lie in (0, pi/2), got {theta}")));
    }
    Ok(())
}

fn gap_condition(omega: f64, theta: f64, z: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let k = (omega.cos() / c).acosh();
    let chi = (omega.sin() / s).min(1.0).asin();
    let phi = chi / 2.0 + FRAC_PI_4;
    let gamma = omega / 2.0 - FRAC_PI_4;
    let e = (-2.0 * k * z).exp();
    // tan γ + tan φ·tanh(kZ) = 0 multiplied through by cos γ·cos φ
    ((omega + chi) / 2.0).sin() - gamma.cos() * phi.sin() * 2.0 * e / (1.0 + e)
}

/// `tan(ω/2 − π/4) + tan(χ/2 + π/4)·tanh(k Z_ζ)` at a solution.
pub fn gap_quantization_residual(sol: &AnalyticGapSolution) -> f64 {
    let z = sol.parity.z(sol.half_length);
    (sol.omega / 2.0 - FRAC_PI_4).tan() + sol.phi.tan() * (sol.k * z).tanh()
}

/// Solves the gap quantization condition for the positive-ω root.
///
/// The search runs in `u = ln ω` so that roots many orders of magnitude below θ
/// are resolved to full relative precision.
pub fn solve_gap(theta: f64, half_length: usize, parity: WireParity) -> Result<AnalyticGapSolution> {
    check_bulk_theta(theta)?;
    if half_length < 1 {
        return Err(Error::InvalidParameter("half-length L must be at least 1".into()));
    }
    let z = parity.z(half_length);
    let f = |u: f64| gap_condition(u.exp(), theta, z);
    let lo = -700.0;
    // ω = θ is a spurious root where the gap closes
    let hi = (theta * (1.0 - 1e-12)).ln();
    let no_root = || Error::NoGapRoot { theta, half_length };
    if f(lo) >= 0.0 || f(hi) <= 0.0 {
        return Err(no_root());
    }
    let u = find_root(f, lo, hi, Tolerance { abs: 1e-15, rel: 1e-16, max_iter: 500 }).map_err(|_| no_root())?;
    let omega = u.exp();
    let (s, c) = theta.sin_cos();
    if (omega.cos() - c).abs() < 1e-12 {
        return Err(Error::Marginal);
    }
    let k = (omega.cos() / c).acosh();
    let chi = (omega.sin() / s).asin();
    let k0 = k0(theta);
    let phi0 = (parity == WireParity::Odd)
        .then(|| c / (1.0 + s).powi(2) * (-2.0 * k0 * half_length as f64).exp());
    Ok(AnalyticGapSolution {
        theta,
        half_length,
        parity,
        omega,
        k,
        k0,
        chi,
        phi: chi / 2.0 + FRAC_PI_4,
        phi0,
        mu: 1,
        z: -1,
    })
}

/// `ω₀ = 2 tan θ · ((1 + sin θ)/cos θ)^{ζ−3} · e^{−2k₀L}`.
pub fn approx_gap_energy(theta: f64, half_length: usize, parity: WireParity) -> f64 {
    let ratio = (1.0 + theta.sin()) / theta.cos();
    2.0 * theta.tan() * ratio.powi(i32::from(parity.zeta_size()) - 3) * (-2.0 * k0(theta) * half_length as f64).exp()
}

/// Eigenvector of the gap solution on the wire, dressed for coin phases ζ, σ.
///
/// The boundary amplitudes `a` at the left end and `b` at the right end are
/// zero by construction.
pub fn gap_eigenvector(sol: &AnalyticGapSolution, zeta: f64, sigma: f64) -> Result<WalkerState> {
    let shift = f64::from(sol.zeta_size()) / 2.0;
    let amplitude = |x: i64| {
        let arg = Complex64::new(sol.k * (x as f64 - shift), sol.phi);
        Complex64::from_polar(1.0, -FRAC_PI_4) * (arg.exp() + (-arg).exp())
    };
    build_wire_state(sol.size(), amplitude, zeta, sigma)
}

/// Shared constructor: `b_x = a*_{x+1}`, boundary zeros, phase dressing.
pub(crate) fn build_wire_state<F: Fn(i64) -> Complex64>(size: usize, a: F, zeta: f64, sigma: f64) -> Result<WalkerState> {
    let geometry = Geometry::wire(size)?;
    let (x_min, x_max) = (geometry.x_min(), geometry.x_max());
    let sigma_phase = Complex64::from_polar(1.0, -sigma);
    let amps = geometry
        .coordinates()
        .map(|x| {
            let ax = if x == x_min { Complex64::default() } else { a(x) };
            let bx = if x == x_max { Complex64::default() } else { a(x + 1).conj() };
            let dress = Complex64::from_polar(1.0, zeta * x as f64);
            [dress * ax, dress * sigma_phase * bx]
        })
        .collect();
    WalkerState::unnormalized(geometry, amps)?.normalize()
}

/// Predicted Rabi splitting of a clean wire.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RabiGapPrediction {
    /// `2·ω_exact` from the gap quantization condition.
    pub delta_omega: f64,
    /// `2π / Δω`.
    pub period: f64,
    /// The closed form `2 sin 2θ/(1+sin θ)² · ((1+sin θ)/cos θ)^{−2D}`, for comparison.
    pub closed_form_in_d: f64,
    /// `2·ω₀`, the unified approximation in `L`.
    pub approx_in_l: f64,
}

pub fn rabi_gap_prediction(theta: f64, size: usize) -> Result<RabiGapPrediction> {
    let (parity, l) = WireParity::split(size)?;
    let sol = solve_gap(theta, l, parity)?;
    let delta_omega = 2.0 * sol.omega;
    let s = theta.sin();
    let closed = 2.0 * (2.0 * theta).sin() / (1.0 + s).powi(2) * (-2.0 * size as f64 * k0(theta)).exp();
    Ok(RabiGapPrediction {
        delta_omega,
        period: TAU / delta_omega,
        closed_form_in_d: closed,
        approx_in_l: 2.0 * approx_gap_energy(theta, l, parity),
    })
}
