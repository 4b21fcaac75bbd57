use super::rabi::{rabi_on_field, RabiAnalysis, RabiConfig};
use crate::coin::CoinParams;
use crate::error::{Error, Result};
use crate::field::CoinField;
use crate::state::WalkerState;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};

/// Initial state of a disordered Rabi run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialMode {
    /// `Ψ_L` of the clean wire at the reference θ.
    CleanPsiL,
    /// `|x_min + 1⟩ ⊗ (1, 0)`.
    EdgeSite,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DisorderConfig {
    pub size: usize,
    /// Bulk θ_x are drawn uniformly from this open interval.
    pub theta_range: (f64, f64),
    pub end_theta: f64,
    /// θ of the clean wire supplying `Ψ_L` in [`InitialMode::CleanPsiL`].
    pub clean_theta: f64,
    pub initial: InitialMode,
    /// Realization `i` is seeded with `base_seed + i`.
    pub base_seed: u64,
    pub realizations: usize,
    /// Evolution length; by default 1.25 periods of each realization's pair.
    pub steps: Option<usize>,
    pub window: f64,
    pub ipr_threshold: Option<f64>,
}

impl Default for DisorderConfig {
    fn default() -> Self {
        Self {
            size: 21,
            theta_range: (0.0, PI / 5.0),
            end_theta: -FRAC_PI_2,
            clean_theta: PI / 10.0,
            initial: InitialMode::CleanPsiL,
            base_seed: 0,
            realizations: 50,
            steps: None,
            window: 0.3,
            ipr_threshold: None,
        }
    }
}

/// One disorder realization; a missing gap pair is recorded, not raised.
#[derive(Debug, Clone)]
pub struct DisorderOutcome {
    pub seed: u64,
    pub thetas: Vec<f64>,
    pub analysis: std::result::Result<RabiAnalysis, Error>,
}

impl DisorderOutcome {
    pub fn confinement(&self) -> Option<f64> {
        self.analysis.as_ref().ok().map(|a| a.confinement)
    }

    pub fn spectral_period(&self) -> Option<f64> {
        self.analysis.as_ref().ok().map(|a| a.spectral_period())
    }
}

impl DisorderConfig {
    /// The wire of realization `seed`.
    pub fn field(&self, seed: u64) -> Result<CoinField> {
        CoinField::random_bulk_wire(self.size, CoinParams::rotation(0.0)?, self.theta_range, self.end_theta, seed)
    }

    /// Initial state for `field` according to [`DisorderConfig::initial`].
    pub fn initial_state(&self, field: &CoinField) -> Result<WalkerState> {
        match self.initial {
            InitialMode::CleanPsiL => {
                let clean = RabiConfig {
                    size: self.size,
                    theta: self.clean_theta,
                    end_theta: self.end_theta,
                    ..RabiConfig::default()
                };
                Ok(rabi_on_field(&clean.field()?, Some(0), None, self.window, self.ipr_threshold)?.psi_l)
            }
            InitialMode::EdgeSite => {
                let g = field.geometry();
                WalkerState::localized(*g, g.x_min() + 1, [Complex64::new(1.0, 0.0), Complex64::default()])
            }
        }
    }
}

/// Rabi analysis of a single seeded realization.
pub fn run_disorder_rabi(cfg: &DisorderConfig, seed: u64) -> Result<DisorderOutcome> {
    let field = cfg.field(seed)?;
    let thetas = field.coins()[1..cfg.size - 1].iter().map(|c| c.theta).collect();
    let initial = cfg.initial_state(&field)?;
    let analysis = rabi_on_field(&field, cfg.steps, Some(&initial), cfg.window, cfg.ipr_threshold);
    if let Err(e) = &analysis {
        if e.is_input_error() {
            return Err(e.clone());
        }
    }
    Ok(DisorderOutcome { seed, thetas, analysis })
}

/// All realizations, in parallel, ordered by seed.
pub fn run_disorder_batch(cfg: &DisorderConfig) -> Result<Vec<DisorderOutcome>> {
    (0..cfg.realizations as u64).into_par_iter().map(|i| run_disorder_rabi(cfg, cfg.base_seed + i)).collect()
}
