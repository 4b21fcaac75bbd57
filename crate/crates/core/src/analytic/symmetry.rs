use crate::error::{Error, Result};
use crate::field::CoinField;
use crate::fold_angle;
use crate::geometry::Geometry;
use crate::state::WalkerState;
use crate::walk::{apply_coin, apply_step};
use faer::Mat;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Symmetry operators of the walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    /// Complex conjugation (particle-hole).
    Omega,
    /// Conjugation followed by the phase dressing `e^{2iζx}·diag(1, e^{−2iσ})`.
    OmegaPrime,
    /// `(−1)^x` on site x (sublattice).
    Lambda,
    /// Reflection about the geometry centre combined with σ_y (parity).
    Pi,
    /// `S·(I ⊗ σ_x)` (chiral).
    Gamma,
}

impl Symmetry {
    pub fn is_antiunitary(self) -> bool {
        matches!(self, Symmetry::Omega | Symmetry::OmegaPrime)
    }
}

/// Applies a symmetry operator; `(zeta, sigma)` are used only by Ω′.
pub fn symmetry_apply(which: Symmetry, state: &WalkerState, zeta: f64, sigma: f64) -> WalkerState {
    let g = *state.geometry();
    let amps = state.amplitudes();
    let i = Complex64::i();
    let out: Vec<[Complex64; 2]> = match which {
        Symmetry::Omega => amps.iter().map(|p| [p[0].conj(), p[1].conj()]).collect(),
        Symmetry::OmegaPrime => g
            .coordinates()
            .zip(amps)
            .map(|(x, p)| {
                let d = Complex64::from_polar(1.0, 2.0 * zeta * x as f64);
                [d * p[0].conj(), d * Complex64::from_polar(1.0, -2.0 * sigma) * p[1].conj()]
            })
            .collect(),
        Symmetry::Lambda => g
            .coordinates()
            .zip(amps)
            .map(|(x, p)| if x.rem_euclid(2) == 0 { *p } else { [-p[0], -p[1]] })
            .collect(),
        Symmetry::Pi => (0..amps.len())
            .map(|j| {
                let p = amps[amps.len() - 1 - j];
                [-i * p[1], i * p[0]]
            })
            .collect(),
        Symmetry::Gamma => {
            let swapped = state.with_amplitudes(amps.iter().map(|p| [p[1], p[0]]).collect());
            return apply_step(&swapped);
        }
    };
    state.with_amplitudes(out)
}

/// Matrix of a unitary symmetry in the `2·i + c` basis.
pub fn symmetry_matrix(which: Symmetry, geometry: &Geometry) -> Result<Mat<Complex64>> {
    if which.is_antiunitary() {
        return Err(Error::InvalidParameter(format!("{which:?} is antiunitary and has no matrix form")));
    }
    let n = geometry.dim();
    let mut m = Mat::<Complex64>::zeros(n, n);
    for col in 0..n {
        let mut flat = vec![Complex64::default(); n];
        flat[col] = Complex64::new(1.0, 0.0);
        let e = WalkerState::unnormalized(*geometry, flat.chunks_exact(2).map(|c| [c[0], c[1]]).collect())?;
        for (row, z) in symmetry_apply(which, &e, 0.0, 0.0).flat().into_iter().enumerate() {
            m[(row, col)] = z;
        }
    }
    Ok(m)
}

/// Basis indices of the physical wire subspace: everything except the two
/// seam components `(x_min, a)` and `(x_max, b)`. All indices for other geometries.
pub fn physical_indices(geometry: &Geometry) -> Vec<usize> {
    let n = geometry.dim();
    if geometry.is_wire() {
        (0..n).filter(|&k| k != 0 && k != n - 1).collect()
    } else {
        (0..n).collect()
    }
}

/// Parity requires a reflection-symmetric field of real-phase coins (ζ = σ = 0).
pub fn check_parity_symmetric(field: &CoinField) -> Result<()> {
    let coins = field.coins();
    let n = coins.len();
    for j in 0..n {
        let (a, b) = (coins[j], coins[n - 1 - j]);
        if a.theta != b.theta || a.delta != b.delta {
            return Err(Error::UnsupportedField("coin field is not reflection symmetric".into()));
        }
        if a.zeta != 0.0 || a.sigma != 0.0 {
            return Err(Error::UnsupportedField("parity needs zeta = sigma = 0".into()));
        }
    }
    Ok(())
}

fn eigen_residual(v: &WalkerState, field: &CoinField, omega: f64) -> Result<f64> {
    let uv = apply_step(&apply_coin(v, field)?);
    uv.distance(&v.clone().scale(Complex64::from_polar(1.0, -omega)))
}

/// The four symmetry-related eigenstates of an eigenpair `(ω, v)`.
///
/// With coin phases (δ, ζ, σ) uniform across the field, the energies are
/// `ω`, `2δ − ω`, `ω − π` and `2δ − ω + π`, all folded into `(−π, π]`.
pub fn gap_quartet(v: &WalkerState, omega: f64, field: &CoinField) -> Result<[(f64, WalkerState); 4]> {
    let (delta, zeta, sigma) = field
        .uniform_phases()
        .ok_or_else(|| Error::UnsupportedField("quartet needs uniform coin phases".into()))?;
    let r = eigen_residual(v, field, omega)?;
    if r >= 1e-10 {
        return Err(Error::NotAnEigenvector(r));
    }
    let conj = symmetry_apply(Symmetry::OmegaPrime, v, zeta, sigma);
    let members = [
        (fold_angle(omega), v.clone()),
        (fold_angle(2.0 * delta - omega), conj.clone()),
        (fold_angle(omega - PI), symmetry_apply(Symmetry::Lambda, v, 0.0, 0.0)),
        (fold_angle(2.0 * delta - omega + PI), symmetry_apply(Symmetry::Lambda, &conj, 0.0, 0.0)),
    ];
    for (w, m) in &members {
        let r = eigen_residual(m, field, *w)?;
        if r >= 1e-10 {
            return Err(Error::NotAnEigenvector(r));
        }
    }
    Ok(members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{gap_eigenvector, solve_gap, WireParity};
    use crate::coin::CoinParams;
    use crate::spectral::build_unitary;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn involutions() {
        for size in [21, 22] {
            let g = Geometry::wire(size).unwrap();
            let s = WalkerState::random(g, &mut ChaCha8Rng::seed_from_u64(size as u64));
            for which in [Symmetry::Omega, Symmetry::Lambda, Symmetry::Pi, Symmetry::Gamma] {
                let twice = symmetry_apply(which, &symmetry_apply(which, &s, 0.0, 0.0), 0.0, 0.0);
                assert!(twice.distance(&s).unwrap() < 1e-13, "{which:?}");
            }
        }
    }

    #[test]
    fn antiunitary_has_no_matrix() {
        let g = Geometry::wire(5).unwrap();
        assert!(symmetry_matrix(Symmetry::Omega, &g).is_err());
        assert!(symmetry_matrix(Symmetry::Lambda, &g).is_ok());
    }

    #[test]
    fn physical_subspace_excludes_seam() {
        let g = Geometry::wire(5).unwrap();
        assert_eq!(physical_indices(&g), vec![1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(physical_indices(&Geometry::cycle(3).unwrap()).len(), 6);
    }

    #[test]
    fn parity_preconditions() {
        let f = CoinField::wire(9, CoinParams::rotation(0.3).unwrap(), -FRAC_PI_2, -FRAC_PI_2).unwrap();
        assert!(check_parity_symmetric(&f).is_ok());
        let f = CoinField::wire(9, CoinParams::new(0.0, 0.3, 0.0, 0.3).unwrap(), -FRAC_PI_2, -FRAC_PI_2).unwrap();
        assert!(check_parity_symmetric(&f).is_err());
        let f = CoinField::wire(9, CoinParams::rotation(0.3).unwrap(), -FRAC_PI_2, FRAC_PI_2).unwrap();
        assert!(check_parity_symmetric(&f).is_err());
    }

    #[test]
    fn gap_state_has_even_parity() {
        let sol = solve_gap(PI / 10.0, 9, WireParity::Odd).unwrap();
        let v = gap_eigenvector(&sol, 0.0, 0.0).unwrap();
        let pv = symmetry_apply(Symmetry::Pi, &v, 0.0, 0.0);
        assert!(pv.distance(&v).unwrap() < 1e-12);
        assert_eq!(i32::from(sol.z) * i32::from(sol.mu), -1);
    }

    #[test]
    fn quartet_with_general_phases() {
        let (delta, zeta, sigma) = (0.2, 0.3, 0.5);
        let coin = CoinParams::new(delta, zeta, sigma, PI / 10.0).unwrap();
        let field = CoinField::wire(21, coin, -FRAC_PI_2, -FRAC_PI_2).unwrap();
        let sol = solve_gap(PI / 10.0, 9, WireParity::Odd).unwrap();
        let v = gap_eigenvector(&sol, zeta, sigma).unwrap();
        let q = gap_quartet(&v, sol.omega + delta, &field).unwrap();
        for a in 0..4 {
            for b in 0..a {
                assert!(q[a].1.overlap(&q[b].1).unwrap().norm() < 1e-10);
            }
            let pa = q[a].1.probabilities();
            for (x, y) in pa.iter().zip(q[0].1.probabilities()) {
                assert!((x - y).abs() < 1e-14);
            }
        }
        let wrong = gap_quartet(&v, sol.omega, &field);
        assert!(matches!(wrong, Err(Error::NotAnEigenvector(_))));
    }

    #[test]
    fn lambda_anticommutes_on_even_ring() {
        let f = CoinField::wire(22, CoinParams::rotation(0.3).unwrap(), -FRAC_PI_2, -FRAC_PI_2).unwrap();
        let u = build_unitary(&f);
        let l = symmetry_matrix(Symmetry::Lambda, f.geometry()).unwrap();
        let n = u.dim();
        for r in 0..n {
            for c in 0..n {
                let flipped = l[(r, r)] * u.get(r, c) * l[(c, c)];
                assert!((flipped + u.get(r, c)).norm() < 1e-15);
            }
        }
    }
}
