use crate::coin::CoinParams;
use crate::error::Result;
use crate::field::CoinField;
use crate::state::WalkerState;
use crate::walk::{evolve, EvolveOptions};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

/// Finite wire between reflecting coins, started next to the left end.
#[derive(Debug, Clone, PartialEq)]
pub struct WireConfig {
    pub size: usize,
    pub theta: f64,
    pub left_end: f64,
    pub right_end: f64,
    pub delta: f64,
    pub zeta: f64,
    pub sigma: f64,
    pub steps: usize,
    /// Coin state at `x_min + 1`.
    pub initial_coin: [Complex64; 2],
}

impl Default for WireConfig {
    fn default() -> Self {
        Self {
            size: 21,
            theta: PI / 10.0,
            left_end: FRAC_PI_2,
            right_end: FRAC_PI_2,
            delta: 0.0,
            zeta: 0.0,
            sigma: 0.0,
            steps: 200,
            initial_coin: [Complex64::new(1.0, 0.0), Complex64::default()],
        }
    }
}

#[derive(Debug, Clone)]
pub struct WireRun {
    pub coordinates: Vec<i64>,
    pub distributions: Vec<Vec<f64>>,
    /// Probability on the three sites next to the left end, per step.
    pub left_edge_weight: Vec<f64>,
    /// Time at which the left-edge weight first climbs back to half of its
    /// revival peak after the packet has crossed the wire.
    pub return_time: Option<f64>,
}

impl WireRun {
    /// Mean left-edge weight over the second half of the run.
    pub fn late_edge_weight(&self) -> f64 {
        let tail = &self.left_edge_weight[self.left_edge_weight.len() / 2..];
        tail.iter().sum::<f64>() / tail.len() as f64
    }
}

pub fn run_wire_dynamics(cfg: &WireConfig) -> Result<WireRun> {
    let bulk = CoinParams::new(cfg.delta, cfg.zeta, cfg.sigma, cfg.theta)?;
    let field = CoinField::wire(cfg.size, bulk, cfg.left_end, cfg.right_end)?;
    let g = *field.geometry();
    let initial = WalkerState::localized(g, g.x_min() + 1, cfg.initial_coin)?;
    let evo = evolve(&initial, &field, cfg.steps, EvolveOptions { record_distributions: true, snapshot_every: None })?;
    let left_edge_weight: Vec<f64> = evo.distributions.iter().map(|p| p[1..4.min(p.len())].iter().sum()).collect();
    let return_time = {
        let lo = cfg.size;
        let hi = (4 * cfg.size).min(left_edge_weight.len().saturating_sub(1));
        (lo + 1 < hi)
            .then(|| {
                let peak = left_edge_weight[lo..=hi].iter().copied().fold(0.0, f64::max);
                let level = 0.5 * peak;
                (lo..=hi).find(|&t| left_edge_weight[t] >= level).map(|t| {
                    let (a, b) = (left_edge_weight[t - 1], left_edge_weight[t]);
                    if b > a { t as f64 - (b - level) / (b - a) } else { t as f64 }
                })
            })
            .flatten()
    };
    Ok(WireRun { coordinates: g.coordinates().collect(), distributions: evo.distributions, left_edge_weight, return_time })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ping_pong_period() {
        let run = run_wire_dynamics(&WireConfig::default()).unwrap();
        let t = run.return_time.unwrap();
        let expect = 2.0 * (21.0 - 2.0);
        assert!((t / expect - 1.0).abs() < 0.1, "return at {t}, expected about {expect}");
    }

    #[test]
    fn opposite_phase_end_traps_population() {
        let steps = 400;
        let same = run_wire_dynamics(&WireConfig { steps, ..WireConfig::default() }).unwrap();
        let trap = run_wire_dynamics(&WireConfig { steps, left_end: -FRAC_PI_2, ..WireConfig::default() }).unwrap();
        assert!(trap.late_edge_weight() > 2.0 * same.late_edge_weight());
    }
}
