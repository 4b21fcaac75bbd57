use super::default_initial_coin;
use crate::coin::CoinParams;
use crate::error::Result;
use crate::field::CoinField;
use crate::geometry::Geometry;
use crate::spectral::{pair_splitting, sweep_parameter, SweepRow, SweepScenario};
use crate::state::WalkerState;
use crate::walk::{evolve, EvolveOptions};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

/// Ring with two segments of opposite (or equal) topological phase.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleSpectrumConfig {
    pub size: usize,
    /// Number of sites carrying θ_A.
    pub segment: usize,
    pub theta_b: f64,
    pub delta: f64,
    pub zeta: f64,
    pub sigma: f64,
    pub theta_a_grid: Vec<f64>,
}

impl Default for CycleSpectrumConfig {
    fn default() -> Self {
        Self {
            size: 42,
            segment: 21,
            theta_b: FRAC_PI_4,
            delta: -FRAC_PI_2,
            zeta: -FRAC_PI_2,
            sigma: 0.0,
            theta_a_grid: (0..100).map(|i| -FRAC_PI_2 + FRAC_PI_2 * 2.0 * i as f64 / 99.0).collect(),
        }
    }
}

impl CycleSpectrumConfig {
    pub fn scenario(&self) -> Result<SweepScenario> {
        Ok(SweepScenario::CycleTwoSegment {
            size: self.size,
            segment: self.segment,
            coin_b: CoinParams::new(self.delta, self.zeta, self.sigma, self.theta_b)?,
        })
    }
}

/// Spectrum of the two-segment ring at every θ_A.
pub fn run_cycle_spectrum(cfg: &CycleSpectrumConfig) -> Result<Vec<SweepRow>> {
    sweep_parameter(&cfg.scenario()?, &cfg.theta_a_grid)
}

impl SweepRow {
    /// Splittings of the near-degenerate pairs around `δ ± π/2`, the larger first.
    pub fn boundary_pair_splitting(&self, delta: f64) -> f64 {
        let up = pair_splitting(&self.omegas, delta + FRAC_PI_2);
        let down = pair_splitting(&self.omegas, delta - FRAC_PI_2);
        up.max(down)
    }
}

/// Single-site defect at the origin of an otherwise homogeneous line.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectScanConfig {
    pub theta_b: f64,
    pub theta_a: Vec<f64>,
    pub delta: f64,
    pub zeta: f64,
    pub sigma: f64,
    pub steps: usize,
    pub initial_coin: [Complex64; 2],
}

impl Default for DefectScanConfig {
    fn default() -> Self {
        Self {
            theta_b: FRAC_PI_4,
            theta_a: vec![-std::f64::consts::FRAC_PI_3, std::f64::consts::FRAC_PI_3],
            delta: 0.0,
            zeta: 0.0,
            sigma: 0.0,
            steps: 150,
            initial_coin: default_initial_coin(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DefectRun {
    pub theta_a: f64,
    pub distribution: Vec<(i64, f64)>,
}

impl DefectRun {
    pub fn p(&self, x: i64) -> f64 {
        self.distribution.iter().find(|(y, _)| *y == x).map(|(_, p)| *p).unwrap_or(0.0)
    }
}

/// Final distributions for every defect θ_A, in parallel.
pub fn run_defect_scan(cfg: &DefectScanConfig) -> Result<Vec<DefectRun>> {
    let geometry = Geometry::truncated_line(cfg.steps, 0)?;
    let bulk = CoinParams::new(cfg.delta, cfg.zeta, cfg.sigma, cfg.theta_b)?;
    let initial = WalkerState::localized(geometry, 0, cfg.initial_coin)?;
    cfg.theta_a
        .par_iter()
        .map(|&theta_a| {
            let field = CoinField::defect(geometry, bulk, bulk.with_theta(theta_a)?)?;
            let out = evolve(&initial, &field, cfg.steps, EvolveOptions::default())?;
            Ok(DefectRun { theta_a, distribution: out.final_state.position_distribution() })
        })
        .collect()
}
