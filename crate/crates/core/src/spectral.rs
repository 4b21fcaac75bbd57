//! Dense one-step unitary, its eigendecomposition and localization metrics.

use crate::coin::CoinParams;
use crate::error::{Error, Result};
use crate::field::CoinField;
use crate::geometry::Geometry;
use crate::state::WalkerState;
use crate::{angle_distance, fold_angle};
use faer::Mat;
use num_complex::Complex64;
use rayon::prelude::*;

/// Eigenvalues closer than this (in ω) are treated as one degenerate cluster.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Dense matrix of `U = S·C` in the basis `2·i + c`.
#[derive(Debug, Clone)]
pub struct Unitary {
    matrix: Mat<Complex64>,
    geometry: Geometry,
}

impl Unitary {
    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    pub fn matrix(&self) -> &Mat<Complex64> {
        &self.matrix
    }

    /// Wraps an arbitrary square matrix acting on `geometry`.
    pub fn from_matrix(matrix: Mat<Complex64>, geometry: Geometry) -> Result<Self> {
        if matrix.nrows() != geometry.dim() || matrix.ncols() != geometry.dim() {
            return Err(Error::GeometryMismatch(format!(
                "{}x{} matrix for dimension {}",
                matrix.nrows(),
                matrix.ncols(),
                geometry.dim()
            )));
        }
        Ok(Self { matrix, geometry })
    }

    /// `U v` for a flat vector.
    pub fn apply_flat(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.matrix[(i, j)] * v[j]).sum()).collect()
    }

    pub fn apply(&self, state: &WalkerState) -> Result<WalkerState> {
        if state.geometry() != &self.geometry {
            return Err(Error::GeometryMismatch("state and unitary differ in geometry".into()));
        }
        let out = self.apply_flat(&state.flat());
        WalkerState::unnormalized(self.geometry, out.chunks_exact(2).map(|c| [c[0], c[1]]).collect())
    }

    /// `max |U†U − I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let s: Complex64 = (0..n).map(|k| self.matrix[(k, i)].conj() * self.matrix[(k, j)]).sum();
                let e = if i == j { s - 1.0 } else { s };
                worst = worst.max(e.norm());
            }
        }
        worst
    }

    /// Sparse row view: non-zero `(col, value)` entries per row.
    fn rows(&self) -> Vec<Vec<(usize, Complex64)>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).filter_map(|j| {
                let z = self.matrix[(i, j)];
                (z != Complex64::default()).then_some((j, z))
            }).collect())
            .collect()
    }
}

/// Builds the full `2D × 2D` unitary of one walk step.
pub fn build_unitary(field: &CoinField) -> Unitary {
    let geometry = *field.geometry();
    let d = geometry.size();
    let mut m = Mat::<Complex64>::zeros(2 * d, 2 * d);
    for (i, coin) in field.matrices().iter().enumerate() {
        let right = (i + 1) % d;
        let left = (i + d - 1) % d;
        for col in 0..2 {
            m[(2 * right, 2 * i + col)] += coin[0][col];
            m[(2 * left + 1, 2 * i + col)] += coin[1][col];
        }
    }
    Unitary { matrix: m, geometry }
}

/// Result of a localization-length fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalizationFit {
    /// Least-squares slope of `ln p_x` against `|x − center|`.
    pub slope: f64,
    /// Amplitude decay length, `−2 / slope`.
    pub xi: f64,
    pub sites_used: usize,
}

impl LocalizationFit {
    /// Slope magnitude below 1e-3 per site means the state is extended.
    pub fn is_exponential(&self) -> bool {
        self.slope.abs() >= 1e-3
    }
}

/// Fits `p_x ∝ e^{−2|x−center|/ξ}`, skipping the two sites nearest `center`
/// and sites with `p_x ≤ 1e-12`.
pub fn localization_length_fit(v: &WalkerState, center: i64) -> Result<LocalizationFit> {
    localization_length_fit_in(v, center, 2, i64::MAX)
}

/// As [`localization_length_fit`] restricted to `min_dist ≤ |x − center| ≤ max_dist`.
pub fn localization_length_fit_in(v: &WalkerState, center: i64, min_dist: i64, max_dist: i64) -> Result<LocalizationFit> {
    let norm = v.norm_sqr();
    let pts: Vec<(f64, f64)> = v
        .position_distribution()
        .into_iter()
        .filter_map(|(x, p)| {
            let d = (x - center).abs();
            let p = p / norm;
            (d >= min_dist && d <= max_dist && p > 1e-12).then(|| (d as f64, p.ln()))
        })
        .collect();
    if pts.len() < 4 {
        return Err(Error::TooFewSites(pts.len()));
    }
    let slope = linear_regression(&pts).0;
    Ok(LocalizationFit { slope, xi: -2.0 / slope, sites_used: pts.len() })
}

/// Ordinary least squares `y = slope·x + intercept`.
pub fn linear_regression(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// One eigenpair with its diagnostics.
#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub omega: f64,
    pub vector: WalkerState,
    pub residual: f64,
    pub ipr: f64,
    /// Decay length around the probability maximum, if a fit was possible.
    pub xi: Option<f64>,
}

/// Full spectrum of a one-step unitary, sorted by ascending ω then descending IPR.
#[derive(Debug, Clone)]
pub struct SpectralResult {
    pub geometry: Geometry,
    pub pairs: Vec<Eigenpair>,
}

impl SpectralResult {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn quasienergies(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.omega).collect()
    }

    pub fn residuals(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.residual).collect()
    }

    pub fn iprs(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.ipr).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.pairs.iter().map(|p| p.residual).fold(0.0, f64::max)
    }

    /// Index of the quasienergy closest (circularly) to `omega`.
    pub fn nearest(&self, omega: f64) -> Option<usize> {
        (0..self.len()).min_by(|&i, &j| {
            angle_distance(self.pairs[i].omega, omega).total_cmp(&angle_distance(self.pairs[j].omega, omega))
        })
    }
}

/// Eigendecomposition of `U` with ω = −arg λ folded into `(−π, π]`.
///
/// Near-degenerate clusters (|Δω| < 1e-9) are re-orthonormalized by a
/// Rayleigh–Ritz step inside the cluster.
pub fn diagonalize(u: &Unitary) -> Result<SpectralResult> {
    let n = u.dim();
    let evd = u.matrix.eigen().map_err(|_| Error::NoConvergence)?;
    let s = evd.S().column_vector();
    let vecs = evd.U();

    let mut raw: Vec<(f64, Vec<Complex64>)> = (0..n)
        .map(|j| {
            let omega = fold_angle(-s[j].arg());
            let col: Vec<Complex64> = (0..n).map(|i| vecs[(i, j)]).collect();
            (omega, normalized(col))
        })
        .collect();
    raw.sort_by(|a, b| a.0.total_cmp(&b.0));

    let rows = u.rows();
    let apply = |v: &[Complex64]| -> Vec<Complex64> {
        rows.iter().map(|r| r.iter().map(|&(j, z)| z * v[j]).sum()).collect()
    };

    let mut pairs: Vec<(f64, Vec<Complex64>)> = Vec::with_capacity(n);
    for cluster in clusters(&raw) {
        if cluster.len() == 1 {
            pairs.push(raw[cluster[0]].clone());
            continue;
        }
        pairs.extend(rayleigh_ritz(cluster.iter().map(|&i| raw[i].1.clone()).collect(), &apply)?);
    }

    let geometry = u.geometry;
    let mut out: Vec<Eigenpair> = pairs
        .into_iter()
        .map(|(omega, v)| {
            let uv = apply(&v);
            let lambda = Complex64::from_polar(1.0, -omega);
            let residual = uv.iter().zip(&v).map(|(a, b)| (a - lambda * b).norm_sqr()).sum::<f64>().sqrt();
            let vector = WalkerState::from_flat(geometry, &v)?;
            let ipr = vector.ipr();
            let peak = argmax_site(&vector);
            let xi = localization_length_fit(&vector, peak).ok().filter(|f| f.is_exponential()).map(|f| f.xi);
            Ok(Eigenpair { omega, vector, residual, ipr, xi })
        })
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| a.omega.total_cmp(&b.omega).then(b.ipr.total_cmp(&a.ipr)));
    Ok(SpectralResult { geometry, pairs: out })
}

/// Builds and diagonalizes the unitary of `field`.
pub fn spectrum(field: &CoinField) -> Result<SpectralResult> {
    diagonalize(&build_unitary(field))
}

fn normalized(mut v: Vec<Complex64>) -> Vec<Complex64> {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= n;
    }
    v
}

fn argmax_site(v: &WalkerState) -> i64 {
    v.position_distribution()
        .into_iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(x, _)| x)
        .unwrap_or(0)
}

/// Groups indices of the ω-sorted list into circular clusters.
fn clusters(sorted: &[(f64, Vec<Complex64>)]) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..sorted.len() {
        match groups.last_mut() {
            Some(g) if angle_distance(sorted[*g.last().unwrap()].0, sorted[i].0) < DEGENERACY_TOL => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    if groups.len() > 1 {
        let first = sorted[groups[0][0]].0;
        let last = sorted[*groups.last().unwrap().last().unwrap()].0;
        if angle_distance(first, last) < DEGENERACY_TOL {
            let tail = groups.pop().unwrap();
            groups[0].extend(tail);
        }
    }
    groups
}

/// Modified Gram–Schmidt, applied twice for stability.
fn orthonormalize(mut vs: Vec<Vec<Complex64>>) -> Vec<Vec<Complex64>> {
    for _ in 0..2 {
        for i in 0..vs.len() {
            for j in 0..i {
                let (head, tail) = vs.split_at_mut(i);
                let proj: Complex64 = head[j].iter().zip(tail[0].iter()).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                    *x -= proj * y;
                }
            }
            let v = std::mem::take(&mut vs[i]);
            vs[i] = normalized(v);
        }
    }
    vs
}

fn rayleigh_ritz<F: Fn(&[Complex64]) -> Vec<Complex64>>(
    basis: Vec<Vec<Complex64>>,
    apply: &F,
) -> Result<Vec<(f64, Vec<Complex64>)>> {
    let q = orthonormalize(basis);
    let k = q.len();
    let uq: Vec<Vec<Complex64>> = q.iter().map(|v| apply(v)).collect();
    let m = Mat::<Complex64>::from_fn(k, k, |i, j| q[i].iter().zip(&uq[j]).map(|(a, b)| a.conj() * b).sum());
    let evd = m.eigen().map_err(|_| Error::NoConvergence)?;
    let s = evd.S().column_vector();
    let w = evd.U();
    let rotated: Vec<Vec<Complex64>> = (0..k)
        .map(|c| {
            let mut v = vec![Complex64::default(); q[0].len()];
            for (r, qr) in q.iter().enumerate() {
                let coef = w[(r, c)];
                for (x, y) in v.iter_mut().zip(qr) {
                    *x += coef * y;
                }
            }
            v
        })
        .collect();
    let rotated = orthonormalize(rotated);
    Ok((0..k).map(|c| (fold_angle(-s[c].arg()), rotated[c].clone())).collect())
}

/// Eigenpairs with ω in `window` and IPR above `ipr_threshold`.
///
/// A window with `lo > hi` wraps through π. The default threshold is `2/D`.
/// On wires, the two states living on the closing seam are never returned.
pub fn gap_state_filter(result: &SpectralResult, window: (f64, f64), ipr_threshold: Option<f64>) -> Vec<&Eigenpair> {
    let threshold = ipr_threshold.unwrap_or(2.0 / result.geometry.size() as f64);
    let (lo, hi) = window;
    let inside = |w: f64| if lo <= hi { lo <= w && w <= hi } else { w >= lo || w <= hi };
    let seam = |p: &Eigenpair| {
        let g = p.vector.geometry();
        if !g.is_wire() {
            return false;
        }
        let amps = p.vector.amplitudes();
        amps[0][0].norm_sqr() + amps[amps.len() - 1][1].norm_sqr() > 0.5
    };
    result.pairs.iter().filter(|p| inside(p.omega) && p.ipr > threshold && !seam(p)).collect()
}

/// Rotates the global phase so the `a` amplitude at the leftmost interior
/// site with non-negligible weight is real and positive.
pub fn gauge_fix(v: &WalkerState) -> WalkerState {
    let amps = v.amplitudes();
    let start = usize::from(v.geometry().is_wire());
    let max_a = amps.iter().map(|p| p[0].norm()).fold(0.0, f64::max);
    let pivot = amps[start..]
        .iter()
        .find(|p| p[0].norm() > 1e-6 * max_a)
        .map(|p| p[0])
        .unwrap_or(Complex64::new(1.0, 0.0));
    v.clone().scale(pivot.conj() / pivot.norm())
}

/// Parameterized scenarios for [`sweep_parameter`]; the swept θ_A replaces the
/// θ of `coin_b`'s phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepScenario {
    /// Ring of `size` sites with `segment` sites of coin A.
    CycleTwoSegment { size: usize, segment: usize, coin_b: CoinParams },
    /// Ring with a single coin-A site at the origin.
    Defect { size: usize, coin_b: CoinParams },
}

impl SweepScenario {
    pub fn field(&self, theta_a: f64) -> Result<CoinField> {
        match *self {
            SweepScenario::CycleTwoSegment { size, segment, coin_b } => {
                CoinField::cycle_two_segment(size, segment, coin_b.with_theta(theta_a)?, coin_b)
            }
            SweepScenario::Defect { size, coin_b } => {
                CoinField::defect(Geometry::cycle(size)?, coin_b, coin_b.with_theta(theta_a)?)
            }
        }
    }
}

/// One row of a parameter sweep.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub theta_a: f64,
    pub omegas: Vec<f64>,
    pub iprs: Vec<f64>,
}

/// Diagonalizes the scenario at every grid point, in parallel.
pub fn sweep_parameter(scenario: &SweepScenario, grid: &[f64]) -> Result<Vec<SweepRow>> {
    grid.par_iter()
        .map(|&theta_a| {
            let r = spectrum(&scenario.field(theta_a)?)?;
            Ok(SweepRow { theta_a, omegas: r.quasienergies(), iprs: r.iprs() })
        })
        .collect()
}

/// Smallest circular gap between two distinct quasienergies nearest `target`
/// (the splitting of a near-degenerate pair centred there).
pub fn pair_splitting(omegas: &[f64], target: f64) -> f64 {
    let mut near: Vec<f64> = omegas.to_vec();
    near.sort_by(|a, b| angle_distance(*a, target).total_cmp(&angle_distance(*b, target)));
    if near.len() < 2 {
        return f64::NAN;
    }
    angle_distance(near[0], near[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::{apply_coin, apply_step};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn pure_shift_is_permutation() {
        let g = Geometry::cycle(2).unwrap();
        let f = CoinField::homogeneous(g, CoinParams::rotation(0.0).unwrap()).unwrap();
        let u = build_unitary(&f);
        for j in 0..4 {
            let col: Vec<Complex64> = (0..4).map(|i| u.get(i, j)).collect();
            assert_eq!(col.iter().filter(|z| **z == Complex64::new(1.0, 0.0)).count(), 1);
            assert_eq!(col.iter().filter(|z| **z == Complex64::default()).count(), 3);
        }
    }

    #[test]
    fn matrix_agrees_with_walk() {
        let g = Geometry::cycle(9).unwrap();
        let f = CoinField::homogeneous(g, CoinParams::new(0.3, -0.2, 1.1, 0.7).unwrap()).unwrap();
        let u = build_unitary(&f);
        assert!(u.unitarity_defect() < 1e-13);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let s = WalkerState::random(g, &mut rng);
            let walked = apply_step(&apply_coin(&s, &f).unwrap());
            assert!(u.apply(&s).unwrap().distance(&walked).unwrap() < 1e-13);
        }
    }

    #[test]
    fn homogeneous_ring_band_edges() {
        let theta = PI / 4.0;
        let f = CoinField::homogeneous(Geometry::cycle(42).unwrap(), CoinParams::rotation(theta).unwrap()).unwrap();
        let r = spectrum(&f).unwrap();
        assert_eq!(r.len(), 84);
        assert!(r.max_residual() < 1e-10);
        let edge = theta.cos().acos();
        for w in r.quasienergies() {
            assert!(w.abs() >= edge - 1e-9 && w.abs() <= PI - edge + 1e-9, "ω = {w} inside a gap");
        }
        // k = 0 is an allowed momentum on the ring, so the edge itself is attained
        assert!(r.quasienergies().iter().any(|w| (w.abs() - edge).abs() < 1e-9));
        assert!(gap_state_filter(&r, (-0.5, 0.5), None).is_empty());
    }

    #[test]
    fn degenerate_clusters_are_orthonormal() {
        let f = CoinField::homogeneous(Geometry::cycle(12).unwrap(), CoinParams::rotation(0.4).unwrap()).unwrap();
        let r = spectrum(&f).unwrap();
        for i in 0..r.len() {
            for j in 0..r.len() {
                let o = r.pairs[i].vector.overlap(&r.pairs[j].vector).unwrap();
                let e = if i == j { (o - 1.0).norm() } else { o.norm() };
                assert!(e < 1e-10, "overlap ({i},{j}) = {o}");
            }
        }
    }

    #[test]
    fn sorted_by_omega() {
        let f = CoinField::wire(11, CoinParams::rotation(PI / 10.0).unwrap(), -PI / 2.0, -PI / 2.0).unwrap();
        let w = spectrum(&f).unwrap().quasienergies();
        assert!(w.windows(2).all(|p| p[0] <= p[1]));
    }

    #[test]
    fn wrapping_window() {
        let f = CoinField::wire(21, CoinParams::rotation(PI / 10.0).unwrap(), -PI / 2.0, -PI / 2.0).unwrap();
        let r = spectrum(&f).unwrap();
        assert_eq!(gap_state_filter(&r, (-0.3, 0.3), None).len(), 2);
        assert_eq!(gap_state_filter(&r, (PI - 0.3, -PI + 0.3), None).len(), 2);
    }

    #[test]
    fn fit_recovers_exponential() {
        let g = Geometry::cycle(61).unwrap();
        let xi = 3.0;
        let amps = g.coordinates().map(|x| [Complex64::new((-((x - 30) as f64).abs() / xi).exp(), 0.0), Complex64::default()]).collect();
        let s = WalkerState::unnormalized(g, amps).unwrap().normalize().unwrap();
        let fit = localization_length_fit(&s, 30).unwrap();
        assert!((fit.xi - xi).abs() < 1e-10);
        assert!(fit.is_exponential());
        let flat = WalkerState::unnormalized(g, vec![[Complex64::new(1.0, 0.0), Complex64::default()]; 61]).unwrap();
        assert!(!localization_length_fit(&flat, 30).unwrap().is_exponential());
        let tiny = WalkerState::localized(g, 0, [Complex64::new(1.0, 0.0), Complex64::default()]).unwrap();
        assert!(matches!(localization_length_fit(&tiny, 0), Err(Error::TooFewSites(_))));
    }

    #[test]
    fn gauge_fix_makes_pivot_positive() {
        let g = Geometry::wire(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = WalkerState::random(g, &mut rng);
        let fixed = gauge_fix(&s);
        let a = fixed.amplitudes()[1][0];
        assert!(a.im.abs() < 1e-15 && a.re > 0.0);
        assert!((fixed.overlap(&s).unwrap().norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sweep_at_equal_thetas_matches_homogeneous() {
        let coin_b = CoinParams::new(-PI / 2.0, -PI / 2.0, 0.0, PI / 4.0).unwrap();
        let sc = SweepScenario::CycleTwoSegment { size: 12, segment: 5, coin_b };
        let rows = sweep_parameter(&sc, &[PI / 4.0]).unwrap();
        let homo = spectrum(&CoinField::homogeneous(Geometry::cycle(12).unwrap(), coin_b).unwrap()).unwrap();
        for (a, b) in rows[0].omegas.iter().zip(homo.quasienergies()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn splitting_of_pair() {
        let w = [-1.0, 0.5 - 1e-7, 0.5 + 1e-7, 2.0];
        assert!((pair_splitting(&w, 0.5) - 2e-7).abs() < 1e-15);
    }
}
