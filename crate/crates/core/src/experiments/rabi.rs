use super::parabolic_offset;
use crate::angle_distance;
use crate::coin::CoinParams;
use crate::error::{Error, Result};
use crate::field::CoinField;
use crate::spectral::{gap_state_filter, gauge_fix, spectrum};
use crate::state::WalkerState;
use crate::walk::evolve_observed;
use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI, TAU};

/// Clean wire with ends in the opposite topological phase to the bulk.
#[derive(Debug, Clone, PartialEq)]
pub struct RabiConfig {
    pub size: usize,
    pub theta: f64,
    pub end_theta: f64,
    pub delta: f64,
    pub zeta: f64,
    pub sigma: f64,
    /// Evolution length; by default 1.25 periods of the gap pair.
    pub steps: Option<usize>,
    /// Half-width of the quasienergy window around δ searched for the pair.
    pub window: f64,
    /// IPR threshold for gap states; defaults to `2/D`.
    pub ipr_threshold: Option<f64>,
}

impl Default for RabiConfig {
    fn default() -> Self {
        Self {
            size: 21,
            theta: PI / 10.0,
            end_theta: -FRAC_PI_2,
            delta: 0.0,
            zeta: 0.0,
            sigma: 0.0,
            steps: None,
            window: 0.3,
            ipr_threshold: None,
        }
    }
}

impl RabiConfig {
    pub fn field(&self) -> Result<CoinField> {
        let bulk = CoinParams::new(self.delta, self.zeta, self.sigma, self.theta)?;
        CoinField::wire(self.size, bulk, self.end_theta, self.end_theta)
    }
}

/// Two-level dynamics between the left- and right-localized combinations of
/// the gap pair.
#[derive(Debug, Clone)]
pub struct RabiAnalysis {
    pub psi_l: WalkerState,
    pub psi_r: WalkerState,
    /// Upper and lower member of the gap pair.
    pub omega_pair: (f64, f64),
    pub delta_omega: f64,
    /// `|⟨Ψ_L|Ψ(t)⟩|²` for `t = 0..=steps`.
    pub p_l: Vec<f64>,
    pub p_r: Vec<f64>,
    /// `min_t (p_L + p_R)`.
    pub confinement: f64,
    /// `max_t |p_L + p_R − min/max|` spread of the two-level weight.
    pub confinement_spread: f64,
    /// First return of `p_L` to its maximum, parabolically refined.
    pub period_estimate: Option<f64>,
    /// Twice the first minimum of `p_L`, parabolically refined.
    pub half_period_estimate: Option<f64>,
    /// Largest probability on the central site(s) over the run.
    pub center_max: f64,
    /// Largest ratio of central to end-adjacent probability over the run.
    pub center_to_end_max: f64,
    /// `|⟨Ψ_L|Ψ_R⟩|`.
    pub orthogonality: f64,
}

impl RabiAnalysis {
    /// `2π / Δω`.
    pub fn spectral_period(&self) -> f64 {
        TAU / self.delta_omega
    }
}

/// Runs the clean Rabi-transport experiment.
pub fn run_rabi_transport(cfg: &RabiConfig) -> Result<RabiAnalysis> {
    rabi_on_field(&cfg.field()?, cfg.steps, None, cfg.window, cfg.ipr_threshold)
}

/// Rabi analysis on any wire field. The initial state defaults to the
/// field's own `Ψ_L`.
pub fn rabi_on_field(
    field: &CoinField,
    steps: Option<usize>,
    initial: Option<&WalkerState>,
    window: f64,
    ipr_threshold: Option<f64>,
) -> Result<RabiAnalysis> {
    let g = *field.geometry();
    let center = field.uniform_phases().map(|p| p.0).unwrap_or(field.coins()[1].delta);
    let spec = spectrum(field)?;
    let mut candidates = gap_state_filter(&spec, (center - window, center + window), ipr_threshold);
    candidates.sort_by(|a, b| angle_distance(a.omega, center).total_cmp(&angle_distance(b.omega, center)));
    if candidates.len() < 2 {
        return Err(Error::GapPairNotFound);
    }
    let (hi, lo) = if candidates[0].omega >= candidates[1].omega {
        (candidates[0], candidates[1])
    } else {
        (candidates[1], candidates[0])
    };
    let delta_omega = hi.omega - lo.omega;
    if delta_omega <= 0.0 {
        return Err(Error::GapPairNotFound);
    }
    let v_plus = gauge_fix(&hi.vector);
    let v_minus = gauge_fix(&lo.vector);

    // relative phase chosen so that Ψ_L carries the weight of the left half
    let half = g.size() / 2;
    let m: Complex64 = v_plus.amplitudes()[..half]
        .iter()
        .zip(&v_minus.amplitudes()[..half])
        .map(|(p, q)| p[0].conj() * q[0] + p[1].conj() * q[1])
        .sum();
    let rel = if m.norm() > 1e-300 { -Complex64::i() * m.conj() / m.norm() } else { Complex64::new(1.0, 0.0) };
    let v_minus = v_minus.scale(rel);
    let (ep, em) = (Complex64::from_polar(FRAC_1_SQRT_2, -FRAC_PI_4), Complex64::from_polar(FRAC_1_SQRT_2, FRAC_PI_4));
    let psi_l = v_plus.clone().scale(ep).add_scaled(em, &v_minus)?.normalize()?;
    let psi_r = v_plus.scale(ep).add_scaled(-em, &v_minus)?.normalize()?;
    let orthogonality = psi_l.overlap(&psi_r)?.norm();

    let steps = steps.unwrap_or_else(|| ((1.25 * TAU / delta_omega).ceil() as usize).min(1_000_000));
    let start = initial.cloned().unwrap_or_else(|| psi_l.clone());
    let centers: Vec<usize> = [0i64, 1]
        .iter()
        .filter(|&&x| x == 0 || g.size() % 2 == 0)
        .filter_map(|&x| g.index_of(x))
        .collect();
    let ends = [1, g.size() - 2];
    let (l_amps, r_amps) = (psi_l.amplitudes().to_vec(), psi_r.amplitudes().to_vec());
    let mut p_l = Vec::with_capacity(steps + 1);
    let mut p_r = Vec::with_capacity(steps + 1);
    let mut center_max = 0.0f64;
    let mut center_to_end_max = 0.0f64;
    evolve_observed(&start, field, steps, |_, amps| {
        let ov = |basis: &[[Complex64; 2]]| -> f64 {
            basis
                .iter()
                .zip(amps)
                .map(|(p, q)| p[0].conj() * q[0] + p[1].conj() * q[1])
                .sum::<Complex64>()
                .norm_sqr()
        };
        p_l.push(ov(&l_amps));
        p_r.push(ov(&r_amps));
        let prob = |i: usize| amps[i][0].norm_sqr() + amps[i][1].norm_sqr();
        let c = centers.iter().map(|&i| prob(i)).fold(0.0, f64::max);
        let e = prob(ends[0]) + prob(ends[1]);
        center_max = center_max.max(c);
        center_to_end_max = center_to_end_max.max(c / e);
    })?;

    let sums: Vec<f64> = p_l.iter().zip(&p_r).map(|(a, b)| a + b).collect();
    let confinement = sums.iter().copied().fold(f64::INFINITY, f64::min);
    let confinement_spread = sums.iter().copied().fold(f64::NEG_INFINITY, f64::max) - confinement;
    let (half_period_estimate, period_estimate) = estimate_period(&p_l);
    Ok(RabiAnalysis {
        psi_l,
        psi_r,
        omega_pair: (hi.omega, lo.omega),
        delta_omega,
        p_l,
        p_r,
        confinement,
        confinement_spread,
        period_estimate,
        half_period_estimate,
        center_max,
        center_to_end_max,
        orthogonality,
    })
}

/// First minimum and the following maximum of an oscillating series.
fn estimate_period(p: &[f64]) -> (Option<f64>, Option<f64>) {
    let n = p.len();
    if n < 3 {
        return (None, None);
    }
    let (lo, hi) = (p.iter().copied().fold(f64::INFINITY, f64::min), p.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    let mid = 0.5 * (lo + hi);
    let is_min = |t: usize| p[t] <= p[t - 1] && p[t] < p[t + 1] && p[t] < mid;
    let is_max = |t: usize| p[t] >= p[t - 1] && p[t] > p[t + 1] && p[t] > mid;
    let Some(t_min) = (1..n - 1).find(|&t| is_min(t)) else {
        return (None, None);
    };
    let refined_min = t_min as f64 + parabolic_offset(p[t_min - 1], p[t_min], p[t_min + 1]);
    let period = (t_min + 1..n - 1)
        .find(|&t| is_max(t))
        .map(|t| t as f64 + parabolic_offset(p[t - 1], p[t], p[t + 1]));
    (Some(2.0 * refined_min), period)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn period_of_cosine() {
        let p: Vec<f64> = (0..300).map(|t| (0.5 + 0.5 * (TAU * t as f64 / 123.4).cos()).max(0.0)).collect();
        let (half, full) = estimate_period(&p);
        assert!((full.unwrap() - 123.4).abs() < 0.05);
        assert!((half.unwrap() - 123.4).abs() < 0.05);
    }

    #[test]
    fn small_wire_transport() {
        let cfg = RabiConfig { size: 11, theta: PI / 5.0, ..RabiConfig::default() };
        let r = run_rabi_transport(&cfg).unwrap();
        assert!(r.orthogonality < 1e-12);
        assert!(r.confinement > 1.0 - 1e-9);
        assert!((r.period_estimate.unwrap() / r.spectral_period() - 1.0).abs() < 0.01);
        let left: f64 = r.psi_l.probabilities()[..5].iter().sum();
        assert!(left > 0.9);
        assert!(r.p_l.iter().chain(&r.p_r).all(|p| (0.0..=1.0 + 1e-12).contains(p)));
    }

    #[test]
    fn same_phase_ends_have_no_pair() {
        let cfg = RabiConfig { end_theta: FRAC_PI_2, ..RabiConfig::default() };
        assert!(matches!(run_rabi_transport(&cfg), Err(Error::GapPairNotFound)));
    }
}
