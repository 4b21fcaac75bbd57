use super::band::solve_band;
use super::gap::{gap_eigenvector, solve_gap, WireParity};
use super::symmetry::{gap_quartet, symmetry_apply, Symmetry};
use super::band_eigenvector;
use crate::angle_distance;
use crate::error::{Error, Result};
use crate::field::CoinField;
use crate::fold_angle;
use crate::state::WalkerState;
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Gap,
    Band,
    /// Two-site states living on the ring seam between the reflecting ends.
    Seam,
}

#[derive(Debug, Clone)]
pub struct AnalyticEigenpair {
    pub omega: f64,
    pub vector: WalkerState,
    pub kind: StateKind,
}

/// The two eigenstates supported on `(x_min, a)` and `(x_max, b)` of a wire.
///
/// These components only couple to each other, with eigenvalues
/// `λ² = C_{x_min}[1][0] · C_{x_max}[0][1]`.
pub fn seam_states(field: &CoinField) -> Result<[(f64, WalkerState); 2]> {
    let g = *field.geometry();
    if !g.is_wire() {
        return Err(Error::UnsupportedField("seam states exist only on wires".into()));
    }
    let first = field.coins()[0].matrix();
    let last = field.coins()[g.size() - 1].matrix();
    let (c10, c01) = (first[1][0], last[0][1]);
    let root = (c10 * c01).sqrt();
    let make = |lambda: Complex64| -> Result<(f64, WalkerState)> {
        let mut amps = vec![[Complex64::default(); 2]; g.size()];
        amps[0][0] = Complex64::new(1.0, 0.0);
        amps[g.size() - 1][1] = lambda / c01;
        let v = WalkerState::unnormalized(g, amps)?.normalize()?;
        Ok((fold_angle(-lambda.arg()), v))
    };
    Ok([make(root)?, make(-root)?])
}

/// Complete closed-form spectrum of a clean wire: uniform coin phases, bulk
/// θ ∈ (0, π/2) and both end coins at θ = −π/2.
///
/// Gap states come as a quartet, band roots as `δ ± ω`, plus the seam pair.
pub fn analytic_spectrum(field: &CoinField) -> Result<Vec<AnalyticEigenpair>> {
    let g = *field.geometry();
    if !g.is_wire() {
        return Err(Error::UnsupportedField("analytic spectrum needs a wire".into()));
    }
    let (delta, zeta, sigma) = field
        .uniform_phases()
        .ok_or_else(|| Error::UnsupportedField("analytic spectrum needs uniform coin phases".into()))?;
    let coins = field.coins();
    let theta = coins[1].theta;
    let clean = coins[1..g.size() - 1].iter().all(|c| c.theta == theta);
    let ends = [coins[0].theta, coins[g.size() - 1].theta].iter().all(|t| (t + FRAC_PI_2).abs() < 1e-12);
    if !clean || !ends {
        return Err(Error::UnsupportedField(
            "analytic spectrum needs a homogeneous bulk and -pi/2 end coins".into(),
        ));
    }
    let (parity, l) = WireParity::split(g.size())?;

    let mut out = Vec::with_capacity(g.dim());
    let gap = solve_gap(theta, l, parity)?;
    let v = gap_eigenvector(&gap, zeta, sigma)?;
    for (omega, vector) in gap_quartet(&v, fold_angle(gap.omega + delta), field)? {
        out.push(AnalyticEigenpair { omega, vector, kind: StateKind::Gap });
    }
    for sol in solve_band(theta, l, parity)? {
        let v = band_eigenvector(&sol, zeta, sigma)?;
        let partner = symmetry_apply(Symmetry::OmegaPrime, &v, zeta, sigma);
        out.push(AnalyticEigenpair { omega: fold_angle(delta + sol.omega), vector: v, kind: StateKind::Band });
        out.push(AnalyticEigenpair { omega: fold_angle(delta - sol.omega), vector: partner, kind: StateKind::Band });
    }
    for (omega, vector) in seam_states(field)? {
        out.push(AnalyticEigenpair { omega, vector, kind: StateKind::Seam });
    }
    if out.len() != g.dim() {
        return Err(Error::RootCountMismatch { expected: g.dim(), found: out.len() });
    }
    out.sort_by(|a, b| a.omega.total_cmp(&b.omega));
    Ok(out)
}

/// Greedy one-to-one matching of two quasienergy lists by circular distance;
/// returns the largest matched deviation.
pub fn match_spectra(analytic: &[f64], numeric: &[f64]) -> Result<f64> {
    if analytic.len() != numeric.len() {
        return Err(Error::RootCountMismatch { expected: numeric.len(), found: analytic.len() });
    }
    let mut used = vec![false; numeric.len()];
    let mut worst = 0.0f64;
    for &w in analytic {
        let (j, d) = numeric
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, &v)| (j, angle_distance(w, v)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("lists have equal length");
        used[j] = true;
        worst = worst.max(d);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::CoinParams;
    use crate::spectral::spectrum;
    use crate::walk::{apply_coin, apply_step};
    use std::f64::consts::PI;

    fn residual(field: &CoinField, p: &AnalyticEigenpair) -> f64 {
        let uv = apply_step(&apply_coin(&p.vector, field).unwrap());
        uv.distance(&p.vector.clone().scale(Complex64::from_polar(1.0, -p.omega))).unwrap()
    }

    #[test]
    fn seam_energies_for_reflecting_ends() {
        let delta = 0.3;
        let f = CoinField::wire(9, CoinParams::new(delta, 0.1, 0.2, 0.4).unwrap(), -FRAC_PI_2, -FRAC_PI_2).unwrap();
        let mut w: Vec<f64> = seam_states(&f).unwrap().iter().map(|p| p.0).collect();
        w.sort_by(f64::total_cmp);
        assert!((w[0] - (delta - FRAC_PI_2)).abs() < 1e-14);
        assert!((w[1] - (delta + FRAC_PI_2)).abs() < 1e-14);
    }

    #[test]
    fn complete_and_exact_for_both_parities_and_phases() {
        for (size, coin) in [
            (21, CoinParams::rotation(PI / 10.0).unwrap()),
            (22, CoinParams::rotation(PI / 10.0).unwrap()),
            (15, CoinParams::new(0.2, 0.3, 0.5, PI / 5.0).unwrap()),
            (14, CoinParams::new(-0.4, 0.7, 1.1, PI / 3.0).unwrap()),
        ] {
            let f = CoinField::wire(size, coin, -FRAC_PI_2, -FRAC_PI_2).unwrap();
            let cat = analytic_spectrum(&f).unwrap();
            assert_eq!(cat.len(), 2 * size);
            for p in &cat {
                assert!(residual(&f, p) < 1e-9, "size {size} {:?} ω={}", p.kind, p.omega);
            }
            let numeric = spectrum(&f).unwrap().quasienergies();
            let analytic: Vec<f64> = cat.iter().map(|p| p.omega).collect();
            assert!(match_spectra(&analytic, &numeric).unwrap() < 1e-9);
        }
    }

    #[test]
    fn rejects_unsupported_fields() {
        let f = CoinField::wire(9, CoinParams::rotation(0.3).unwrap(), FRAC_PI_2, FRAC_PI_2).unwrap();
        assert!(matches!(analytic_spectrum(&f), Err(Error::UnsupportedField(_))));
        let f = CoinField::homogeneous(crate::Geometry::cycle(9).unwrap(), CoinParams::rotation(0.3).unwrap()).unwrap();
        assert!(analytic_spectrum(&f).is_err());
    }

    #[test]
    fn matching_counts_must_agree() {
        assert!(match_spectra(&[0.0], &[0.0, 1.0]).is_err());
        assert!((match_spectra(&[PI - 1e-3, 0.5], &[0.5, -PI + 1e-3]).unwrap() - 2e-3).abs() < 1e-12);
    }
}
