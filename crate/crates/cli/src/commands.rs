//! One function per subcommand: run the experiment, write its files.

use crate::output::{write_csv, write_json, Cell, Summary, Versioning};
use crate::settings::*;
use crate::CliError;
use qwalk::analytic::{
    analytic_spectrum, decompose_initial, interface_state_on, k0, localization_length, match_spectra,
    rabi_gap_prediction, tail_probability, Decomposition, InterfaceStateSpec, StateKind, WireParity,
};
use qwalk::experiments::{
    lag_autocorrelation, run_disorder_batch, run_disorder_rabi, run_gap_scaling, run_rabi_transport,
    central_probability, DisorderConfig, InitialMode, RabiAnalysis, RabiConfig,
};
use qwalk::spectral::{build_unitary, linear_regression, spectrum as diagonalize_field, sweep_parameter, SweepScenario};
use qwalk::{evolve, CoinField, CoinParams, Complex64, EvolveOptions, Geometry, WalkerState};
use serde::Serialize;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use std::path::Path;

fn finish<C: Serialize, D: Serialize>(
    dir: &Path,
    command: &str,
    config: &C,
    derived: D,
    mut outputs: Vec<String>,
) -> Result<(), CliError> {
    outputs.push("summary.json".into());
    let summary = Summary { command, status: "ok", config, derived, outputs, version: Versioning::current() };
    write_json(dir, "summary.json", &summary)?;
    Ok(())
}

fn trajectory_rows<'a>(geometry: &'a Geometry, distributions: &'a [Vec<f64>]) -> impl Iterator<Item = Vec<Cell>> + 'a {
    distributions.iter().enumerate().flat_map(move |(t, p)| {
        p.iter().enumerate().map(move |(i, &p)| vec![t.into(), geometry.coordinate(i).into(), p.into()])
    })
}

fn parse_coin(v: &[f64]) -> Result<[Complex64; 2], CliError> {
    if v.len() != 4 {
        return Err(CliError::Config(format!("initial_coin needs 4 numbers re_a,im_a,re_b,im_b, got {}", v.len())));
    }
    Ok([Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3])])
}

fn complex_pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Serialize, Default)]
struct SimulateDerived {
    sites: usize,
    x_min: i64,
    x_max: i64,
    initial_site: i64,
    max_norm_error: f64,
    final_central_probability: Option<f64>,
    window_radius: Option<i64>,
    central_lag2_autocorrelation: Option<f64>,
    xi_minus: Option<f64>,
    xi_plus: Option<f64>,
    normalization_n: Option<f64>,
    c_zero: Option<[f64; 2]>,
    c_pi: Option<[f64; 2]>,
    trapped_weight: Option<f64>,
    band_weight: Option<f64>,
}

pub fn simulate(s: &SimulateSettings, dir: &Path) -> Result<(), CliError> {
    let bulk = CoinParams::new(s.delta, s.zeta, s.sigma, s.theta)?;
    let with_theta = |theta: f64| CoinParams::new(s.delta, s.zeta, s.sigma, theta);
    let site = s.initial_site.unwrap_or(0);
    let support = site.unsigned_abs() as usize;
    let mut derived = SimulateDerived::default();
    let (field, site, coin) = match s.scenario {
        SimScenario::Interface | SimScenario::Homogeneous => {
            let (tm, tp) = match s.scenario {
                SimScenario::Interface => (s.theta_minus, s.theta_plus),
                _ => (s.theta, s.theta),
            };
            let xi = |t: f64| localization_length(t).abs();
            let gapped = |t: f64| t.abs() > 0.0 && t.abs() < FRAC_PI_2;
            let mut size = Geometry::min_truncated_size(s.steps, support);
            if s.scenario == SimScenario::Interface {
                if !(gapped(tm) && gapped(tp)) {
                    return Err(CliError::Config("interface thetas must satisfy 0 < |theta| < pi/2".into()));
                }
                derived.xi_minus = Some(xi(tm));
                derived.xi_plus = Some(xi(tp));
                size = size.max(2 * (40.0 * xi(tm).max(xi(tp))).ceil() as usize + 2);
            }
            let g = Geometry::truncated_line_with_size(s.steps, support, size)?;
            let field = if tm == tp {
                CoinField::homogeneous(g, with_theta(tp)?)?
            } else {
                CoinField::interface(g, with_theta(tm)?, with_theta(tp)?)?
            };
            let coin = [Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(0.0, FRAC_1_SQRT_2)];
            (field, site, coin)
        }
        SimScenario::Defect => {
            let g = Geometry::truncated_line(s.steps, support)?;
            let coin = [Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(0.0, FRAC_1_SQRT_2)];
            (CoinField::defect(g, bulk, with_theta(s.theta_a)?)?, site, coin)
        }
        SimScenario::Wire => {
            let field = CoinField::wire(s.size.unwrap_or(21), bulk, s.left_end, s.right_end)?;
            let site = s.initial_site.unwrap_or(field.geometry().x_min() + 1);
            (field, site, [Complex64::new(1.0, 0.0), Complex64::default()])
        }
        SimScenario::CycleTwoSegment => {
            let field = CoinField::cycle_two_segment(s.size.unwrap_or(42), s.segment, with_theta(s.theta_a)?, bulk)?;
            let coin = [Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(0.0, FRAC_1_SQRT_2)];
            (field, site, coin)
        }
    };
    let coin = match &s.initial_coin {
        Some(v) => parse_coin(v)?,
        None => coin,
    };
    let g = *field.geometry();
    let initial = WalkerState::localized(g, site, coin)?;
    let evo = evolve(
        &initial,
        &field,
        s.steps,
        EvolveOptions { record_distributions: true, snapshot_every: s.snapshot_every },
    )?;
    let coordinates: Vec<i64> = g.coordinates().collect();
    derived.sites = g.size();
    derived.x_min = g.x_min();
    derived.x_max = g.x_max();
    derived.initial_site = site;
    derived.max_norm_error =
        evo.distributions.iter().map(|p| (p.iter().sum::<f64>() - 1.0).abs()).fold(0.0, f64::max);

    let (tm, tp) = match s.scenario {
        SimScenario::Interface => (s.theta_minus, s.theta_plus),
        _ => (s.theta, s.theta),
    };
    let overlay = matches!(s.scenario, SimScenario::Interface | SimScenario::Homogeneous);
    if s.scenario == SimScenario::Interface {
        let radius = s.window_radius.unwrap_or((3.0 * derived.xi_minus.unwrap().max(derived.xi_plus.unwrap())).floor() as i64);
        let central: Vec<f64> = evo.distributions.iter().map(|p| central_probability(&coordinates, p, radius)).collect();
        derived.window_radius = Some(radius);
        derived.final_central_probability = central.last().copied();
        let start = (s.steps / 3).min(central.len());
        let ac = lag_autocorrelation(&central[start..], 2);
        derived.central_lag2_autocorrelation = ac.is_finite().then_some(ac);
        if tm < 0.0 && tp > 0.0 {
            let spec =
                InterfaceStateSpec { theta_minus: tm, theta_plus: tp, delta: s.delta, zeta: s.zeta, sigma: s.sigma, eta: 0.0 };
            let zero = interface_state_on(&spec, g)?;
            let pi = interface_state_on(&spec.with_eta(PI), g)?;
            derived.normalization_n = Some(zero.n);
            let d = decompose_initial(&initial, &zero.state, &pi.state)?;
            derived.trapped_weight = Some(d.trapped_weight());
            let (c0, cp, band) = match d {
                Decomposition::Symmetric { c, band_weight } => (c, c, band_weight),
                Decomposition::General { c_zero, c_pi, band_weight } => (c_zero, c_pi, band_weight),
            };
            derived.c_zero = Some(complex_pair(c0));
            derived.c_pi = Some(complex_pair(cp));
            derived.band_weight = Some(band);
        }
    }

    let mut outputs = vec![];
    write_csv(dir, "trajectory.csv", &["t", "x", "p"], trajectory_rows(&g, &evo.distributions))?;
    outputs.push("trajectory.csv".to_string());
    let last = evo.distributions.last().expect("t = 0 is always recorded");
    if overlay {
        let parity = (site + s.steps as i64).rem_euclid(2);
        let rows = coordinates.iter().zip(last).map(|(&x, &p)| {
            let tail = if x.rem_euclid(2) == parity { tail_probability(tm, tp, x as f64) } else { 0.0 };
            vec![x.into(), p.into(), tail.into()]
        });
        write_csv(dir, "final_distribution.csv", &["x", "p", "tail"], rows)?;
    } else {
        let rows = coordinates.iter().zip(last).map(|(&x, &p)| vec![x.into(), p.into()]);
        write_csv(dir, "final_distribution.csv", &["x", "p"], rows)?;
    }
    outputs.push("final_distribution.csv".to_string());
    if !evo.snapshots.is_empty() {
        let rows = evo.snapshots.iter().flat_map(|(t, st)| {
            st.amplitudes().iter().enumerate().map(move |(i, c)| {
                vec![
                    (*t).into(),
                    g.coordinate(i).into(),
                    c[0].re.into(),
                    c[0].im.into(),
                    c[1].re.into(),
                    c[1].im.into(),
                ]
            })
        });
        write_csv(dir, "snapshots.csv", &["t", "x", "re_a", "im_a", "re_b", "im_b"], rows)?;
        outputs.push("snapshots.csv".to_string());
    }
    finish(dir, "simulate", s, derived, outputs)
}

#[derive(Serialize, Default)]
struct SpectrumDerived {
    states: usize,
    points: Option<usize>,
    min_boundary_splitting: Option<f64>,
    max_boundary_splitting: Option<f64>,
    max_residual: Option<f64>,
    max_ipr: Option<f64>,
}

pub fn spectrum(s: &SpectrumSettings, dir: &Path) -> Result<(), CliError> {
    let coin_b = CoinParams::new(s.delta, s.zeta, s.sigma, s.theta)?;
    let mut derived = SpectrumDerived { states: 2 * s.size, ..SpectrumDerived::default() };
    let outputs = match s.scenario {
        SpectrumScenario::CycleTwoSegment | SpectrumScenario::Defect => {
            if s.theta_a_points == 0 {
                return Err(CliError::Config("theta_a_points must be positive".into()));
            }
            let n = s.theta_a_points;
            let grid: Vec<f64> = (0..n)
                .map(|i| if n == 1 { s.theta_a_min } else { s.theta_a_min + (s.theta_a_max - s.theta_a_min) * i as f64 / (n - 1) as f64 })
                .collect();
            let scenario = match s.scenario {
                SpectrumScenario::Defect => SweepScenario::Defect { size: s.size, coin_b },
                _ => SweepScenario::CycleTwoSegment { size: s.size, segment: s.segment, coin_b },
            };
            let rows = sweep_parameter(&scenario, &grid)?;
            derived.points = Some(rows.len());
            if s.scenario == SpectrumScenario::CycleTwoSegment {
                let splits: Vec<f64> = rows.iter().map(|r| r.boundary_pair_splitting(s.delta)).collect();
                derived.min_boundary_splitting = splits.iter().copied().reduce(f64::min);
                derived.max_boundary_splitting = splits.iter().copied().reduce(f64::max);
            }
            derived.max_ipr = rows.iter().flat_map(|r| r.iprs.iter().copied()).reduce(f64::max);
            let cells = rows.iter().flat_map(|r| {
                r.omegas.iter().zip(&r.iprs).enumerate().map(move |(j, (&w, &ipr))| {
                    vec![r.theta_a.into(), j.into(), w.into(), ipr.into()]
                })
            });
            write_csv(dir, "sweep.csv", &["theta_A", "index", "omega", "ipr"], cells)?;
            vec!["sweep.csv".to_string()]
        }
        SpectrumScenario::Wire => {
            let field = CoinField::wire(s.size, coin_b, s.end_theta, s.end_theta)?;
            let res = diagonalize_field(&field)?;
            derived.max_residual = Some(res.max_residual());
            derived.max_ipr = res.iprs().into_iter().reduce(f64::max);
            let cells = res.pairs.iter().enumerate().map(|(j, p)| {
                let xi = p.xi.map(Cell::from).unwrap_or(Cell::Text(String::new()));
                vec![j.into(), p.omega.into(), p.ipr.into(), p.residual.into(), xi]
            });
            write_csv(dir, "spectrum.csv", &["index", "omega", "ipr", "residual", "xi"], cells)?;
            vec!["spectrum.csv".to_string()]
        }
    };
    finish(dir, "spectrum", s, derived, outputs)
}

#[derive(Serialize)]
struct RabiDerived {
    omega_plus: f64,
    omega_minus: f64,
    delta_omega: f64,
    period: f64,
    period_estimate: Option<f64>,
    half_period_estimate: Option<f64>,
    confinement: f64,
    confinement_spread: f64,
    center_max: f64,
    center_to_end_max: f64,
    orthogonality: f64,
    steps: usize,
    analytic_delta_omega: Option<f64>,
    analytic_period: Option<f64>,
    closed_form_delta_omega: Option<f64>,
    approx_delta_omega: Option<f64>,
}

impl RabiDerived {
    fn new(r: &RabiAnalysis) -> Self {
        Self {
            omega_plus: r.omega_pair.0,
            omega_minus: r.omega_pair.1,
            delta_omega: r.delta_omega,
            period: r.spectral_period(),
            period_estimate: r.period_estimate,
            half_period_estimate: r.half_period_estimate,
            confinement: r.confinement,
            confinement_spread: r.confinement_spread,
            center_max: r.center_max,
            center_to_end_max: r.center_to_end_max,
            orthogonality: r.orthogonality,
            steps: r.p_l.len() - 1,
            analytic_delta_omega: None,
            analytic_period: None,
            closed_form_delta_omega: None,
            approx_delta_omega: None,
        }
    }
}

fn write_rabi_series(dir: &Path, r: &RabiAnalysis) -> Result<(), CliError> {
    let rows = r.p_l.iter().zip(&r.p_r).enumerate().map(|(t, (&l, &rr))| vec![t.into(), l.into(), rr.into()]);
    write_csv(dir, "rabi.csv", &["t", "p_L", "p_R"], rows)?;
    Ok(())
}

fn write_trajectory(dir: &Path, field: &CoinField, start: &WalkerState, steps: usize) -> Result<(), CliError> {
    let evo = evolve(start, field, steps, EvolveOptions { record_distributions: true, snapshot_every: None })?;
    write_csv(dir, "trajectory.csv", &["t", "x", "p"], trajectory_rows(field.geometry(), &evo.distributions))?;
    Ok(())
}

pub fn rabi(s: &RabiSettings, dir: &Path) -> Result<(), CliError> {
    let cfg = RabiConfig {
        size: s.size,
        theta: s.theta,
        end_theta: s.end_theta,
        delta: s.delta,
        zeta: s.zeta,
        sigma: s.sigma,
        steps: s.steps,
        window: s.window,
        ipr_threshold: s.ipr_threshold,
    };
    let r = run_rabi_transport(&cfg)?;
    let mut derived = RabiDerived::new(&r);
    if s.end_theta == -FRAC_PI_2 {
        if let Ok(pred) = rabi_gap_prediction(s.theta, s.size) {
            derived.analytic_delta_omega = Some(pred.delta_omega);
            derived.analytic_period = Some(pred.period);
            derived.closed_form_delta_omega = Some(pred.closed_form_in_d);
            derived.approx_delta_omega = Some(pred.approx_in_l);
        }
    }
    write_rabi_series(dir, &r)?;
    let g = *r.psi_l.geometry();
    let (pl, pr) = (r.psi_l.probabilities(), r.psi_r.probabilities());
    let rows = (0..g.size()).map(|i| vec![g.coordinate(i).into(), pl[i].into(), pr[i].into()]);
    write_csv(dir, "psi.csv", &["x", "p_L", "p_R"], rows)?;
    write_trajectory(dir, &cfg.field()?, &r.psi_l, derived.steps)?;
    let outputs = ["rabi.csv", "psi.csv", "trajectory.csv"].map(String::from).to_vec();
    finish(dir, "rabi", s, derived, outputs)
}

#[derive(Serialize)]
struct ScalingFit {
    theta: f64,
    slope: f64,
    expected_slope: f64,
    relative_error: f64,
}

#[derive(Serialize)]
struct GapScalingDerived {
    rows: usize,
    fits: Vec<ScalingFit>,
    max_numeric_deviation: Option<f64>,
}

pub fn gap_scaling(s: &GapScalingSettings, dir: &Path) -> Result<(), CliError> {
    if s.l_min < 1 || s.l_max < s.l_min {
        return Err(CliError::Config(format!("need 1 <= l_min <= l_max, got {}..{}", s.l_min, s.l_max)));
    }
    let parity = match s.parity {
        Parity::Odd => WireParity::Odd,
        Parity::Even => WireParity::Even,
    };
    let ls: Vec<usize> = (s.l_min..=s.l_max).collect();
    let rows = run_gap_scaling(&s.thetas, &ls, parity, s.diagonalize)?;
    let fits = s
        .thetas
        .iter()
        .filter_map(|&theta| {
            let pts: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.theta == theta)
                .map(|r| (r.half_length as f64, r.omega_exact.ln()))
                .collect();
            (pts.len() >= 2).then(|| {
                let slope = linear_regression(&pts).0;
                let expected_slope = -2.0 * k0(theta);
                ScalingFit { theta, slope, expected_slope, relative_error: (slope / expected_slope - 1.0).abs() }
            })
        })
        .collect();
    let max_numeric_deviation = rows
        .iter()
        .filter_map(|r| r.omega_numeric.map(|n| (n - r.omega_exact).abs()))
        .reduce(f64::max);
    let cells = rows.iter().map(|r| {
        let numeric = r.omega_numeric.map(Cell::from).unwrap_or(Cell::Text(String::new()));
        vec![
            r.theta.into(),
            r.half_length.into(),
            parity.size(r.half_length).into(),
            r.omega_exact.into(),
            r.omega_approx.into(),
            numeric,
        ]
    });
    write_csv(dir, "gap_scaling.csv", &["theta", "L", "D", "omega_exact", "omega0", "omega_numeric"], cells)?;
    let derived = GapScalingDerived { rows: rows.len(), fits, max_numeric_deviation };
    finish(dir, "gap-scaling", s, derived, vec!["gap_scaling.csv".into()])
}

#[derive(Serialize)]
struct AnalyticCheckDerived {
    analytic_states: usize,
    numeric_states: usize,
    gap_states: usize,
    band_states: usize,
    seam_states: usize,
    max_deviation: f64,
    max_residual: f64,
    passed: bool,
}

pub fn analytic_check(s: &AnalyticCheckSettings, dir: &Path) -> Result<(), CliError> {
    let bulk = CoinParams::new(s.delta, s.zeta, s.sigma, s.theta)?;
    let field = CoinField::wire(s.size, bulk, -FRAC_PI_2, -FRAC_PI_2)?;
    let analytic = analytic_spectrum(&field)?;
    let numeric = diagonalize_field(&field)?;
    let u = build_unitary(&field);
    let omegas: Vec<f64> = analytic.iter().map(|p| p.omega).collect();
    let numeric_omegas = numeric.quasienergies();
    let max_deviation = match_spectra(&omegas, &numeric_omegas)?;
    let mut residuals = Vec::with_capacity(analytic.len());
    for p in &analytic {
        let image = u.apply(&p.vector)?;
        let target = p.vector.clone().scale(Complex64::from_polar(1.0, -p.omega));
        residuals.push(image.distance(&target)?);
    }
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    let count = |k: StateKind| analytic.iter().filter(|p| p.kind == k).count();
    let label = |k: StateKind| match k {
        StateKind::Gap => "gap",
        StateKind::Band => "band",
        StateKind::Seam => "seam",
    };
    let cells = analytic.iter().zip(&residuals).enumerate().map(|(j, (p, &res))| {
        let nearest = numeric.nearest(p.omega).map(|i| numeric.pairs[i].omega).unwrap_or(f64::NAN);
        vec![j.into(), label(p.kind).into(), p.omega.into(), nearest.into(), res.into()]
    });
    write_csv(dir, "analytic_check.csv", &["index", "kind", "omega_analytic", "omega_numeric", "residual"], cells)?;
    let passed = analytic.len() == numeric.len() && max_deviation < s.tolerance && max_residual < s.tolerance;
    let derived = AnalyticCheckDerived {
        analytic_states: analytic.len(),
        numeric_states: numeric.len(),
        gap_states: count(StateKind::Gap),
        band_states: count(StateKind::Band),
        seam_states: count(StateKind::Seam),
        max_deviation,
        max_residual,
        passed,
    };
    finish(dir, "analytic-check", s, derived, vec!["analytic_check.csv".into()])?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Numerical(format!(
            "analytic and numeric spectra differ: deviation {max_deviation:e}, residual {max_residual:e}, tolerance {:e}",
            s.tolerance
        )))
    }
}

#[derive(Serialize)]
struct Failure {
    seed: u64,
    error: String,
}

#[derive(Serialize)]
struct DisorderDerived {
    realizations: usize,
    gap_pairs_found: usize,
    confined: usize,
    confined_fraction: f64,
    min_confinement: Option<f64>,
    period_min: Option<f64>,
    period_max: Option<f64>,
    period_mean: Option<f64>,
    period_std: Option<f64>,
    trace_seed: u64,
    trace_written: bool,
    failures: Vec<Failure>,
}

pub fn disorder(s: &DisorderSettings, dir: &Path) -> Result<(), CliError> {
    let cfg = DisorderConfig {
        size: s.size,
        theta_range: (s.theta_min, s.theta_max),
        end_theta: s.end_theta,
        clean_theta: s.clean_theta,
        initial: match s.initial {
            Initial::PsiL => InitialMode::CleanPsiL,
            Initial::EdgeSite => InitialMode::EdgeSite,
        },
        base_seed: s.seed,
        realizations: s.realizations,
        steps: s.steps,
        window: s.window,
        ipr_threshold: None,
    };
    let outcomes = run_disorder_batch(&cfg)?;
    let found: Vec<&RabiAnalysis> = outcomes.iter().filter_map(|o| o.analysis.as_ref().ok()).collect();
    let periods: Vec<f64> = found.iter().map(|a| a.spectral_period()).collect();
    let confined = found.iter().filter(|a| a.confinement > 0.8).count();
    let mean = (!periods.is_empty()).then(|| periods.iter().sum::<f64>() / periods.len() as f64);
    let std = mean.map(|m| (periods.iter().map(|p| (p - m).powi(2)).sum::<f64>() / periods.len() as f64).sqrt());
    let cells = outcomes.iter().map(|o| match &o.analysis {
        Ok(a) => vec![
            o.seed.into(),
            true.into(),
            a.confinement.into(),
            a.delta_omega.into(),
            a.spectral_period().into(),
            a.period_estimate.map(Cell::from).unwrap_or(Cell::Text(String::new())),
        ],
        Err(_) => vec![o.seed.into(), false.into(), "".into(), "".into(), "".into(), "".into()],
    });
    write_csv(dir, "disorder.csv", &["seed", "gap_pair_found", "confinement", "delta_omega", "period", "period_estimate"], cells)?;
    let thetas = outcomes.iter().flat_map(|o| {
        o.thetas.iter().enumerate().map(move |(i, &t)| vec![o.seed.into(), (i + 1).into(), t.into()])
    });
    write_csv(dir, "disorder_thetas.csv", &["seed", "index", "theta"], thetas)?;
    let mut outputs = vec!["disorder.csv".to_string(), "disorder_thetas.csv".to_string()];

    let trace_seed = s.trace_seed.unwrap_or(s.seed);
    let trace = run_disorder_rabi(&cfg, trace_seed)?;
    let trace_written = if let Ok(a) = &trace.analysis {
        write_rabi_series(dir, a)?;
        let field = cfg.field(trace_seed)?;
        write_trajectory(dir, &field, &cfg.initial_state(&field)?, a.p_l.len() - 1)?;
        outputs.push("rabi.csv".into());
        outputs.push("trajectory.csv".into());
        true
    } else {
        false
    };
    let derived = DisorderDerived {
        realizations: outcomes.len(),
        gap_pairs_found: found.len(),
        confined,
        confined_fraction: if outcomes.is_empty() { 0.0 } else { confined as f64 / outcomes.len() as f64 },
        min_confinement: found.iter().map(|a| a.confinement).reduce(f64::min),
        period_min: periods.iter().copied().reduce(f64::min),
        period_max: periods.iter().copied().reduce(f64::max),
        period_mean: mean,
        period_std: std,
        trace_seed,
        trace_written,
        failures: outcomes
            .iter()
            .filter_map(|o| o.analysis.as_ref().err().map(|e| Failure { seed: o.seed, error: e.to_string() }))
            .collect(),
    };
    finish(dir, "disorder", s, derived, outputs)
}
