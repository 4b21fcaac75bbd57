//! Parameterized reproductions of the walk scenarios, with the analysis each needs.

mod cycle;
mod disorder;
mod interface;
mod rabi;
mod scaling;
mod wire;

pub use cycle::{run_cycle_spectrum, run_defect_scan, CycleSpectrumConfig, DefectRun, DefectScanConfig};
pub use disorder::{run_disorder_batch, run_disorder_rabi, DisorderConfig, DisorderOutcome, InitialMode};
pub use interface::{fit_tail_slopes, run_interface_evolution, InterfaceConfig, InterfaceRun, TailSlopes};
pub use rabi::{rabi_on_field, run_rabi_transport, RabiAnalysis, RabiConfig};
pub use scaling::{run_gap_scaling, GapScalingRow};
pub use wire::{run_wire_dynamics, WireConfig, WireRun};

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

/// The standard initial coin state `(1, i)/√2`.
pub fn default_initial_coin() -> [Complex64; 2] {
    [Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(0.0, FRAC_1_SQRT_2)]
}

/// Pearson correlation between `series[..n−lag]` and `series[lag..]`.
pub fn lag_autocorrelation(series: &[f64], lag: usize) -> f64 {
    if series.len() <= lag + 1 {
        return f64::NAN;
    }
    let a = &series[..series.len() - lag];
    let b = &series[lag..];
    let n = a.len() as f64;
    let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
    let cov: f64 = a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = a.iter().map(|x| (x - ma).powi(2)).sum();
    let vb: f64 = b.iter().map(|y| (y - mb).powi(2)).sum();
    cov / (va * vb).sqrt()
}

/// Vertex offset of the parabola through three equally spaced samples,
/// relative to the middle one, in `[−0.5, 0.5]` for a true extremum.
pub fn parabolic_offset(left: f64, mid: f64, right: f64) -> f64 {
    let denom = left - 2.0 * mid + right;
    if denom == 0.0 {
        0.0
    } else {
        0.5 * (left - right) / denom
    }
}

/// Sum of `p` over sites with `|x| ≤ radius`.
pub fn central_probability(coordinates: &[i64], p: &[f64], radius: i64) -> f64 {
    coordinates.iter().zip(p).filter(|(x, _)| x.abs() <= radius).map(|(_, p)| p).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn autocorrelation_of_period_two() {
        let s: Vec<f64> = (0..100).map(|t| if t % 2 == 0 { 1.0 } else { 0.2 }).collect();
        assert!((lag_autocorrelation(&s, 2) - 1.0).abs() < 1e-12);
        assert!((lag_autocorrelation(&s, 1) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn parabola_vertex() {
        let f = |x: f64| -(x - 0.3).powi(2);
        assert!((parabolic_offset(f(-1.0), f(0.0), f(1.0)) - 0.3).abs() < 1e-12);
    }

    #[test]
    fn window_sum() {
        assert_eq!(central_probability(&[-2, -1, 0, 1, 2], &[0.1, 0.2, 0.3, 0.2, 0.2], 1), 0.7);
    }
}
