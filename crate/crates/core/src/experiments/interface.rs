use super::{central_probability, default_initial_coin};
use crate::analytic::{
    decompose_initial, interface_state_on, localization_length, tail_probability, Decomposition, InterfaceStateSpec,
};
use crate::coin::CoinParams;
use crate::error::{Error, Result};
use crate::field::CoinField;
use crate::geometry::Geometry;
use crate::spectral::linear_regression;
use crate::state::WalkerState;
use crate::walk::{evolve, EvolveOptions};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

/// Walk across a sharp interface at the origin, started at `x = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceConfig {
    pub theta_minus: f64,
    pub theta_plus: f64,
    pub delta: f64,
    pub zeta: f64,
    pub sigma: f64,
    pub steps: usize,
    pub initial_coin: [Complex64; 2],
    /// Half-width of the central window; defaults to `3·max ξ`.
    pub window_radius: Option<i64>,
}

impl Default for InterfaceConfig {
    fn default() -> Self {
        Self {
            theta_minus: -FRAC_PI_4,
            theta_plus: FRAC_PI_4,
            delta: 0.0,
            zeta: 0.0,
            sigma: PI / 6.0,
            steps: 150,
            initial_coin: default_initial_coin(),
            window_radius: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct InterfaceRun {
    pub coordinates: Vec<i64>,
    /// `distributions[t][i]` for `t = 0..=steps`.
    pub distributions: Vec<Vec<f64>>,
    pub final_distribution: Vec<(i64, f64)>,
    /// Final distribution restricted to the populated sublattice.
    pub populated_sites: Vec<(i64, f64)>,
    /// `e^{−2|x||θ_side|}` on the populated sites.
    pub tail_overlay: Vec<(i64, f64)>,
    pub window_radius: i64,
    /// Probability inside `|x| ≤ window_radius` at each step.
    pub central_probability: Vec<f64>,
    /// Positive decay lengths `(ξ_-, ξ_+)`.
    pub xi: (f64, f64),
    /// Overlaps with the two interface states, when they exist.
    pub decomposition: Option<Decomposition>,
    /// Largest `|norm − 1|` over the run.
    pub max_norm_error: f64,
}

impl InterfaceRun {
    /// Central-window probability for an arbitrary radius.
    pub fn central_series(&self, radius: i64) -> Vec<f64> {
        self.distributions.iter().map(|p| central_probability(&self.coordinates, p, radius)).collect()
    }
}

fn check_theta(name: &str, theta: f64) -> Result<()> {
    if !(theta.abs() > 0.0 && theta.abs() < FRAC_PI_2) {
        return Err(Error::InvalidParameter(format!("{name} must satisfy 0 < |theta| < pi/2, got {theta}")));
    }
    Ok(())
}

pub fn run_interface_evolution(cfg: &InterfaceConfig) -> Result<InterfaceRun> {
    check_theta("theta_minus", cfg.theta_minus)?;
    check_theta("theta_plus", cfg.theta_plus)?;
    let xi_m = localization_length(cfg.theta_minus).abs();
    let xi_p = localization_length(cfg.theta_plus).abs();
    let xi_max = xi_m.max(xi_p);
    // wide enough to hold the interface states to 40 decay lengths; the light
    // cone makes the dynamics independent of the extra sites
    let size = Geometry::min_truncated_size(cfg.steps, 0).max(2 * (40.0 * xi_max).ceil() as usize + 2);
    let geometry = Geometry::truncated_line_with_size(cfg.steps, 0, size)?;
    let minus = CoinParams::new(cfg.delta, cfg.zeta, cfg.sigma, cfg.theta_minus)?;
    let plus = CoinParams::new(cfg.delta, cfg.zeta, cfg.sigma, cfg.theta_plus)?;
    let field = if cfg.theta_minus == cfg.theta_plus {
        CoinField::homogeneous(geometry, plus)?
    } else {
        CoinField::interface(geometry, minus, plus)?
    };
    let initial = WalkerState::localized(geometry, 0, cfg.initial_coin)?;

    let decomposition = if cfg.theta_minus < 0.0 && cfg.theta_plus > 0.0 {
        let spec = InterfaceStateSpec {
            theta_minus: cfg.theta_minus,
            theta_plus: cfg.theta_plus,
            delta: cfg.delta,
            zeta: cfg.zeta,
            sigma: cfg.sigma,
            eta: 0.0,
        };
        let s0 = interface_state_on(&spec, geometry)?.state;
        let sp = interface_state_on(&spec.with_eta(PI), geometry)?.state;
        Some(decompose_initial(&initial, &s0, &sp)?)
    } else {
        None
    };

    let evo = evolve(&initial, &field, cfg.steps, EvolveOptions { record_distributions: true, snapshot_every: None })?;
    let coordinates: Vec<i64> = geometry.coordinates().collect();
    let window_radius = cfg.window_radius.unwrap_or((3.0 * xi_max).floor() as i64);
    let central = evo.distributions.iter().map(|p| central_probability(&coordinates, p, window_radius)).collect();
    let max_norm_error = evo.distributions.iter().map(|p| (p.iter().sum::<f64>() - 1.0).abs()).fold(0.0, f64::max);
    let final_distribution = evo.final_state.position_distribution();
    let parity = (cfg.steps % 2) as i64;
    let populated_sites: Vec<(i64, f64)> =
        final_distribution.iter().copied().filter(|(x, _)| x.rem_euclid(2) == parity).collect();
    let tail_overlay = populated_sites
        .iter()
        .map(|&(x, _)| (x, tail_probability(cfg.theta_minus, cfg.theta_plus, x as f64)))
        .collect();
    Ok(InterfaceRun {
        coordinates,
        distributions: evo.distributions,
        final_distribution,
        populated_sites,
        tail_overlay,
        window_radius,
        central_probability: central,
        xi: (xi_m, xi_p),
        decomposition,
        max_norm_error,
    })
}

/// Log-slopes of a distribution on each side of the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailSlopes {
    /// Slope of `ln p` against `|x|` for x < 0.
    pub left: f64,
    pub right: f64,
}

/// Fits `ln p` against `|x|` on each side over `lo ≤ |x| ≤ hi`, ignoring empty sites.
pub fn fit_tail_slopes(distribution: &[(i64, f64)], lo: i64, hi: i64) -> Result<TailSlopes> {
    let side = |sign: i64| -> Result<f64> {
        let pts: Vec<(f64, f64)> = distribution
            .iter()
            .filter(|(x, p)| x.signum() == sign && (lo..=hi).contains(&x.abs()) && *p > 0.0)
            .map(|&(x, p)| (x.abs() as f64, p.ln()))
            .collect();
        if pts.len() < 3 {
            return Err(Error::TooFewSites(pts.len()));
        }
        Ok(linear_regression(&pts).0)
    };
    Ok(TailSlopes { left: side(-1)?, right: side(1)? })
}
