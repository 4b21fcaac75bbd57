use crate::error::{Error, Result};
use crate::fold_angle;
use crate::geometry::Geometry;
use crate::state::WalkerState;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

/// Parameters of a sharp interface between θ_- < 0 (x < 0) and θ_+ > 0 (x >= 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceStateSpec {
    pub theta_minus: f64,
    pub theta_plus: f64,
    pub delta: f64,
    pub zeta: f64,
    pub sigma: f64,
    /// Either 0 or π.
    pub eta: f64,
}

impl InterfaceStateSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.theta_minus < 0.0 && self.theta_minus > -FRAC_PI_2) {
            return Err(Error::InvalidParameter(format!(
                "theta_minus must lie in (-pi/2, 0), got {}",
                self.theta_minus
            )));
        }
        if !(self.theta_plus > 0.0 && self.theta_plus < FRAC_PI_2) {
            return Err(Error::InvalidParameter(format!("theta_plus must lie in (0, pi/2), got {}", self.theta_plus)));
        }
        if self.eta != 0.0 && self.eta != PI {
            return Err(Error::InvalidParameter(format!("eta must be 0 or pi, got {}", self.eta)));
        }
        for v in [self.delta, self.zeta, self.sigma] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter("coin phases must be finite".into()));
            }
        }
        Ok(())
    }

    pub fn with_eta(&self, eta: f64) -> Self {
        Self { eta, ..*self }
    }
}

/// A normalized interface-localized eigenstate.
#[derive(Debug, Clone)]
pub struct InterfaceState {
    pub state: WalkerState,
    /// Decay length on the x >= 0 side.
    pub xi_plus: f64,
    /// Decay length on the x < 0 side (reported positive).
    pub xi_minus: f64,
    /// `1/sin θ_+ − 1/sin θ_-`.
    pub n: f64,
    /// `δ + η` folded into `(−π, π]`.
    pub omega: f64,
    /// Distance from the origin to the nearest geometry edge.
    pub truncation_radius: usize,
}

/// `ξ(θ) = 1/ln(cos θ/(1 − sin θ))`; negative for θ < 0.
pub fn localization_length(theta: f64) -> f64 {
    1.0 / (theta.cos() / (1.0 - theta.sin())).ln()
}

/// Builds the interface state on a truncated line of half-width `radius`.
pub fn interface_state(spec: &InterfaceStateSpec, radius: usize) -> Result<InterfaceState> {
    interface_state_on(spec, Geometry::truncated_line(0, radius)?)
}

/// Builds the interface state on any geometry containing `x ∈ [−r, r]` with
/// `r ≥ 20·max ξ`.
pub fn interface_state_on(spec: &InterfaceStateSpec, geometry: Geometry) -> Result<InterfaceState> {
    spec.validate()?;
    let xi_p = localization_length(spec.theta_plus);
    let xi_m = localization_length(spec.theta_minus);
    let radius = (-geometry.x_min()).min(geometry.x_max());
    let needed = 20.0 * xi_p.max(-xi_m);
    if (radius as f64) < needed {
        return Err(Error::InvalidParameter(format!(
            "truncation radius {radius} is below 20 localization lengths ({needed:.1})"
        )));
    }
    let sigma_phase = Complex64::from_polar(1.0, -spec.sigma);
    let amps = geometry
        .coordinates()
        .map(|x| {
            let xi = if x >= 0 { xi_p } else { xi_m };
            let xf = x as f64;
            let a = Complex64::from_polar((-xf / xi).exp(), (spec.zeta + spec.eta) * xf);
            let b = -(-1.0 / xi).exp() * sigma_phase * a;
            [a, b]
        })
        .collect();
    let state = WalkerState::unnormalized(geometry, amps)?.normalize()?;
    Ok(InterfaceState {
        state,
        xi_plus: xi_p,
        xi_minus: -xi_m,
        n: 1.0 / spec.theta_plus.sin() - 1.0 / spec.theta_minus.sin(),
        omega: fold_angle(spec.delta + spec.eta),
        truncation_radius: radius as usize,
    })
}

/// Asymptotic trapped profile `e^{−2|x|·|θ_side|}`.
pub fn tail_probability(theta_minus: f64, theta_plus: f64, x: f64) -> f64 {
    let theta = if x < 0.0 { theta_minus } else { theta_plus };
    (-2.0 * x.abs() * theta.abs()).exp()
}

/// Split of an initial state onto the two interface states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decomposition {
    /// Both overlaps coincide: `Ψ = c Ψ_0 + c Ψ_π + √(1−2|c|²) Ψ_band`.
    Symmetric { c: Complex64, band_weight: f64 },
    General { c_zero: Complex64, c_pi: Complex64, band_weight: f64 },
}

impl Decomposition {
    /// Total weight on the two localized states.
    pub fn trapped_weight(&self) -> f64 {
        match *self {
            Decomposition::Symmetric { c, .. } => 2.0 * c.norm_sqr(),
            Decomposition::General { c_zero, c_pi, .. } => c_zero.norm_sqr() + c_pi.norm_sqr(),
        }
    }
}

/// Overlaps of `state` with the η = 0 and η = π interface states.
pub fn decompose_initial(state: &WalkerState, eta0: &WalkerState, eta_pi: &WalkerState) -> Result<Decomposition> {
    let c0 = eta0.overlap(state)?;
    let cp = eta_pi.overlap(state)?;
    Ok(if (c0 - cp).norm() < 1e-10 {
        Decomposition::Symmetric { c: c0, band_weight: 1.0 - 2.0 * c0.norm_sqr() }
    } else {
        Decomposition::General { c_zero: c0, c_pi: cp, band_weight: 1.0 - c0.norm_sqr() - cp.norm_sqr() }
    })
}
