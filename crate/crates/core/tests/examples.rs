//! Worked examples for the public operations, checked against values
//! computed here from first principles.

use qwalk::analytic::{
    approx_gap_energy, decompose_initial, gap_eigenvector, gap_quartet, interface_state, rabi_gap_prediction,
    solve_gap, symmetry_apply, tail_probability, Decomposition, InterfaceStateSpec, Symmetry, WireParity,
};
use qwalk::experiments::{run_interface_evolution, InterfaceConfig};
use qwalk::spectral::{build_unitary, gap_state_filter, localization_length_fit, localization_length_fit_in, spectrum};
use qwalk::{evolve, fold_angle, CoinField, CoinParams, Complex64, EvolveOptions, Geometry, WalkerState};
use rand::{Rng, SeedableRng};
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

type C = Complex64;

fn k0(theta: f64) -> f64 {
    ((1.0 + theta.sin()) / theta.cos()).ln()
}

fn xi(theta: f64) -> f64 {
    1.0 / (theta.abs().cos() / (1.0 - theta.abs().sin())).ln()
}

fn clean_wire(size: usize, theta: f64) -> CoinField {
    CoinField::wire(size, CoinParams::rotation(theta).unwrap(), -FRAC_PI_2, -FRAC_PI_2).unwrap()
}

fn fig2_coin() -> [C; 2] {
    [C::new(FRAC_1_SQRT_2, 0.0), C::new(0.0, FRAC_1_SQRT_2)]
}

#[test]
fn two_site_ring_with_identity_coins_is_a_pure_shift() {
    let g = Geometry::cycle(2).unwrap();
    let u = build_unitary(&CoinField::homogeneous(g, CoinParams::rotation(0.0).unwrap()).unwrap());
    // a at site i moves to i+1, b at site i to i−1; on two sites both land on the other site
    for (row, col) in [(2, 0), (0, 2), (3, 1), (1, 3)] {
        assert_eq!(u.get(row, col), C::new(1.0, 0.0));
    }
    let ones: f64 = (0..4).flat_map(|r| (0..4).map(move |c| (r, c))).map(|(r, c)| u.get(r, c).norm()).sum();
    assert_eq!(ones, 4.0);
}

#[test]
fn unitary_matches_coin_formula_on_random_field() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let g = Geometry::cycle(9).unwrap();
    let coins: Vec<CoinParams> = (0..9)
        .map(|_| CoinParams::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)).unwrap())
        .collect();
    let field = CoinField::new(g, coins.clone(), qwalk::Scenario::Custom).unwrap();
    let u = build_unitary(&field);
    assert!(u.unitarity_defect() < 1e-13);
    for (i, p) in coins.iter().enumerate() {
        let e = |phi: f64| C::from_polar(1.0, phi);
        let (s, c) = p.theta.sin_cos();
        let m = [
            [e(p.zeta - p.delta) * c, e(p.zeta + p.sigma - p.delta) * s],
            [-e(-(p.zeta + p.sigma) - p.delta) * s, e(-p.zeta - p.delta) * c],
        ];
        for col in 0..2 {
            assert!((u.get(2 * ((i + 1) % 9), 2 * i + col) - m[0][col]).norm() < 1e-15);
            assert!((u.get(2 * ((i + 8) % 9) + 1, 2 * i + col) - m[1][col]).norm() < 1e-15);
        }
    }
}

#[test]
fn interface_state_length_and_normalization() {
    let spec = InterfaceStateSpec { theta_minus: -FRAC_PI_4, theta_plus: FRAC_PI_4, delta: 0.0, zeta: 0.0, sigma: PI / 6.0, eta: 0.0 };
    let st = interface_state(&spec, 100).unwrap();
    assert!((st.xi_plus - 1.1346).abs() < 1e-4);
    assert!((st.xi_plus - xi(FRAC_PI_4)).abs() < 1e-12);
    assert!((st.n - 2.0 * 2f64.sqrt()).abs() < 1e-12);
    assert_eq!(st.omega, 0.0);
    let pi_state = interface_state(&spec.with_eta(PI), 100).unwrap();
    assert!((fold_angle(pi_state.omega) - PI).abs() < 1e-15);
    let fit = localization_length_fit(&st.state, 0).unwrap();
    assert!((fit.xi / 1.1346 - 1.0).abs() < 0.05);
}

#[test]
fn small_theta_length_approaches_inverse_theta() {
    let t = PI / 40.0;
    let spec = InterfaceStateSpec { theta_minus: -t, theta_plus: t, delta: 0.0, zeta: 0.0, sigma: 0.0, eta: 0.0 };
    let st = interface_state(&spec, 600).unwrap();
    let fit = localization_length_fit(&st.state, 0).unwrap();
    assert!((fit.xi * t - 1.0).abs() < 0.10, "xi = {}", fit.xi);
}

#[test]
fn band_eigenvector_is_not_exponential() {
    let theta = FRAC_PI_4;
    let ring = CoinField::homogeneous(Geometry::cycle(40).unwrap(), CoinParams::rotation(theta).unwrap()).unwrap();
    let res = spectrum(&ring).unwrap();
    // k = 0 band edge, cos ω = cos θ cos k
    let band = res.pairs.iter().min_by(|a, b| (a.omega - theta).abs().total_cmp(&(b.omega - theta).abs())).unwrap();
    assert!((band.omega - theta).abs() < 1e-9);
    let fit = localization_length_fit(&band.vector, 0).unwrap();
    assert!(!fit.is_exponential(), "slope {}", fit.slope);
}

#[test]
fn gap_eigenvector_decay_matches_interface_length() {
    let theta = FRAC_PI_4;
    let res = spectrum(&clean_wire(41, theta)).unwrap();
    let gap = &res.pairs[res.nearest(0.0).unwrap()];
    let x0 = gap.vector.geometry().x_min() + 1;
    let fit = localization_length_fit_in(&gap.vector, x0, 1, 12).unwrap();
    assert!((fit.xi / xi(theta) - 1.0).abs() < 0.10, "{} vs {}", fit.xi, xi(theta));
}

#[test]
fn tail_probability_values() {
    assert_eq!(tail_probability(-0.3, 0.2, 0.0), 1.0);
    assert!((tail_probability(-PI / 40.0, PI / 40.0, 20.0) - (-PI).exp()).abs() < 1e-15);
    assert!(((-PI).exp() - 0.0432).abs() < 1e-4);
}

#[test]
fn decomposition_of_an_interface_state_uses_general_branch() {
    let spec = InterfaceStateSpec { theta_minus: -FRAC_PI_4, theta_plus: FRAC_PI_4, delta: 0.0, zeta: 0.0, sigma: PI / 6.0, eta: 0.0 };
    let zero = interface_state(&spec, 60).unwrap().state;
    let pi = interface_state(&spec.with_eta(PI), 60).unwrap().state;
    match decompose_initial(&zero, &zero, &pi).unwrap() {
        Decomposition::General { c_zero, c_pi, .. } => {
            assert!((c_zero.norm() - 1.0).abs() < 1e-12);
            assert!(c_pi.norm() < 1e-12);
        }
        d => panic!("expected general branch, got {d:?}"),
    }
}

#[test]
fn trapped_fraction_matches_late_central_probability() {
    let run = run_interface_evolution(&InterfaceConfig::default()).unwrap();
    let trapped = run.decomposition.unwrap().trapped_weight();
    let late = &run.central_probability[100..=150];
    let mean = late.iter().sum::<f64>() / late.len() as f64;
    assert!((mean / trapped - 1.0).abs() < 0.02, "{mean} vs {trapped}");
}

#[test]
fn fig2_parity_and_homogeneous_contrast() {
    let run = run_interface_evolution(&InterfaceConfig::default()).unwrap();
    assert!(run.final_distribution.iter().filter(|(x, _)| x.rem_euclid(2) == 1).all(|(_, p)| *p == 0.0));
    let homo = run_interface_evolution(&InterfaceConfig { theta_minus: FRAC_PI_4, ..InterfaceConfig::default() }).unwrap();
    let p0 = homo.final_distribution.iter().find(|(x, _)| *x == 0).unwrap().1;
    assert!(p0 < 1e-3, "homogeneous p(0) at t = 150 is {p0:e}");
}

#[test]
fn gap_root_near_approximation() {
    let theta = PI / 10.0;
    let sol = solve_gap(theta, 9, WireParity::Odd).unwrap();
    let w0 = (2.0 * theta).sin() / (1.0 + theta.sin()).powi(2) * (-2.0 * k0(theta) * 9.0).exp();
    assert!((w0 - 1.091e-3).abs() < 1e-6);
    assert!((sol.omega / w0 - 1.0).abs() < 0.10);
    assert!((approx_gap_energy(theta, 9, WireParity::Odd) / w0 - 1.0).abs() < 1e-13);
    assert!((sol.k.cosh() - sol.omega.cos() / theta.cos()).abs() < 1e-12);
    assert!((k0(theta) - 0.3195).abs() < 1e-4);
}

#[test]
fn gap_ratio_tends_to_exponential() {
    let theta = PI / 6.0;
    let a = solve_gap(theta, 13, WireParity::Odd).unwrap().omega;
    let b = solve_gap(theta, 14, WireParity::Odd).unwrap().omega;
    assert!((b / a / (-2.0 * k0(theta)).exp() - 1.0).abs() < 1e-3);
}

#[test]
fn gap_eigenvector_boundaries_and_parity() {
    let sol = solve_gap(PI / 10.0, 9, WireParity::Odd).unwrap();
    let v = gap_eigenvector(&sol, 0.0, 0.0).unwrap();
    let amps = v.amplitudes();
    assert_eq!(amps[0][0], C::default());
    assert_eq!(amps[amps.len() - 1][1], C::default());
    let field = clean_wire(21, PI / 10.0);
    let u = build_unitary(&field);
    let uv = u.apply(&v).unwrap();
    assert!(uv.distance(&v.clone().scale(C::from_polar(1.0, -sol.omega))).unwrap() < 1e-10);
    // Π v = μ v with z·μ = −1
    let pv = symmetry_apply(Symmetry::Pi, &v, 0.0, 0.0);
    let mu = f64::from(sol.mu);
    assert_eq!(sol.mu as i32 * sol.z as i32, -1);
    assert!(pv.distance(&v.clone().scale(C::new(mu, 0.0))).unwrap() < 1e-10);
}

#[test]
fn gap_eigenvector_is_bilocalized() {
    let sol = solve_gap(PI / 10.0, 9, WireParity::Odd).unwrap();
    let p = gap_eigenvector(&sol, 0.0, 0.0).unwrap().probabilities();
    let max = p.iter().copied().fold(0.0, f64::max);
    let centre = p[p.len() / 2];
    let argmax = p.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    assert!(argmax < 3 || argmax > p.len() - 4);
    assert!(centre < 1e-4 * max, "centre/max = {:e}", centre / max);
}

#[test]
fn quartet_is_orthogonal_with_equal_profiles() {
    let (zeta, sigma) = (0.3, 0.5);
    let field = CoinField::wire(21, CoinParams::new(0.0, zeta, sigma, PI / 10.0).unwrap(), -FRAC_PI_2, -FRAC_PI_2).unwrap();
    let sol = solve_gap(PI / 10.0, 9, WireParity::Odd).unwrap();
    let q = gap_quartet(&gap_eigenvector(&sol, zeta, sigma).unwrap(), sol.omega, &field).unwrap();
    let w = sol.omega;
    for ((e, _), x) in q.iter().zip([w, -w, w - PI, PI - w]) {
        assert!((e - x).abs() < 1e-12);
    }
    let p0 = q[0].1.probabilities();
    for i in 0..4 {
        let pi = q[i].1.probabilities();
        assert!(p0.iter().zip(&pi).all(|(a, b)| (a - b).abs() < 1e-14));
        for j in 0..i {
            assert!(q[i].1.overlap(&q[j].1).unwrap().norm() < 1e-12);
        }
    }
}

#[test]
fn gap_filter_on_rabi_wire() {
    let res = spectrum(&clean_wire(21, PI / 10.0)).unwrap();
    let all = gap_state_filter(&res, (-PI, PI), None);
    let w = solve_gap(PI / 10.0, 9, WireParity::Odd).unwrap().omega;
    assert_eq!(all.len(), 4);
    for x in [w, -w, w - PI, PI - w] {
        assert!(all.iter().any(|p| (fold_angle(p.omega - x)).abs() < 1e-9));
    }
    assert_eq!(gap_state_filter(&res, (-0.3, 0.3), None).len(), 2);
    let ring = spectrum(&CoinField::homogeneous(Geometry::cycle(40).unwrap(), CoinParams::rotation(FRAC_PI_4).unwrap()).unwrap()).unwrap();
    assert!(gap_state_filter(&ring, (-0.5, 0.5), None).is_empty());
}

#[test]
fn two_boundary_cycle_has_states_near_quarter_turns() {
    let coin_b = CoinParams::new(-FRAC_PI_2, -FRAC_PI_2, 0.0, FRAC_PI_4).unwrap();
    let field = CoinField::cycle_two_segment(42, 21, coin_b.with_theta(-FRAC_PI_2).unwrap(), coin_b).unwrap();
    let res = spectrum(&field).unwrap();
    for centre in [FRAC_PI_2, -FRAC_PI_2] {
        let lo = fold_angle(centre - 0.2);
        let hi = fold_angle(centre + 0.2);
        assert_eq!(gap_state_filter(&res, (lo, hi), None).len(), 2, "window around {centre}");
    }
}

#[test]
fn spectrum_has_quartet_symmetry() {
    for field in [
        clean_wire(21, PI / 10.0),
        CoinField::wire(20, CoinParams::new(0.4, 0.3, 0.5, 0.7).unwrap(), -FRAC_PI_2, -FRAC_PI_2).unwrap(),
    ] {
        let delta = field.uniform_phases().unwrap().0;
        let w = spectrum(&field).unwrap().quasienergies();
        let close = |x: f64| w.iter().any(|y| fold_angle(y - x).abs() < 1e-9);
        assert!(w.iter().all(|&x| close(2.0 * delta - x) && close(x - PI)));
    }
}

#[test]
fn rabi_prediction_values() {
    let p = rabi_gap_prediction(PI / 10.0, 21).unwrap();
    assert!((p.delta_omega - 2.18e-3).abs() < 0.01e-3);
    assert!((p.period - 2.9e3).abs() < 0.05e3);
    let q = rabi_gap_prediction(PI / 10.0, 23).unwrap();
    assert!((q.delta_omega / p.delta_omega / (-2.0 * k0(PI / 10.0)).exp() - 1.0).abs() < 0.02);
    let field = clean_wire(21, PI / 10.0);
    let w = spectrum(&field).unwrap().quasienergies();
    let mut small: Vec<f64> = w.into_iter().filter(|x| x.abs() < 0.1).collect();
    small.sort_by(f64::total_cmp);
    assert!(((small[1] - small[0]) - p.delta_omega).abs() < 1e-12);
}

#[test]
fn evolution_of_zero_steps_is_identity() {
    let g = Geometry::truncated_line(10, 0).unwrap();
    let field = CoinField::homogeneous(g, CoinParams::rotation(0.4).unwrap()).unwrap();
    let s = WalkerState::localized(g, 0, fig2_coin()).unwrap();
    let out = evolve(&s, &field, 0, EvolveOptions::default()).unwrap();
    assert_eq!(out.final_state.amplitudes(), s.amplitudes());
}
