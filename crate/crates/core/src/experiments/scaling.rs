use crate::analytic::{approx_gap_energy, solve_gap, WireParity};
use crate::coin::CoinParams;
use crate::error::Result;
use crate::field::CoinField;
use crate::spectral::spectrum;
use rayon::prelude::*;
use std::f64::consts::FRAC_PI_2;

/// One point of the gap-energy scaling table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapScalingRow {
    pub theta: f64,
    pub half_length: usize,
    pub omega_exact: f64,
    pub omega_approx: f64,
    /// Smallest |ω| of the diagonalized wire, when requested.
    pub omega_numeric: Option<f64>,
}

/// Exact and approximate gap energies over a θ × L grid.
pub fn run_gap_scaling(
    thetas: &[f64],
    half_lengths: &[usize],
    parity: WireParity,
    with_diagonalization: bool,
) -> Result<Vec<GapScalingRow>> {
    let grid: Vec<(f64, usize)> = thetas.iter().flat_map(|&t| half_lengths.iter().map(move |&l| (t, l))).collect();
    grid.par_iter()
        .map(|&(theta, l)| {
            let sol = solve_gap(theta, l, parity)?;
            let omega_numeric = if with_diagonalization {
                let field =
                    CoinField::wire(parity.size(l), CoinParams::rotation(theta)?, -FRAC_PI_2, -FRAC_PI_2)?;
                Some(spectrum(&field)?.quasienergies().iter().map(|w| w.abs()).fold(f64::INFINITY, f64::min))
            } else {
                None
            };
            Ok(GapScalingRow {
                theta,
                half_length: l,
                omega_exact: sol.omega,
                omega_approx: approx_gap_energy(theta, l, parity),
                omega_numeric,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn table_matches_diagonalization() {
        let rows = run_gap_scaling(&[PI / 6.0, PI / 4.0], &[3, 4, 5], WireParity::Odd, true).unwrap();
        assert_eq!(rows.len(), 6);
        for r in rows {
            assert!((r.omega_exact - r.omega_numeric.unwrap()).abs() < 1e-9 * r.omega_exact.max(1e-3));
        }
    }
}
