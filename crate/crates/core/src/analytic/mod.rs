//! Closed-form eigenstates, symmetry operators and gap-energy formulas.

mod band;
mod catalog;
mod gap;
mod interface;
mod symmetry;

pub use band::{band_eigenvector, solve_band, AnalyticBandSolution};
pub use catalog::{analytic_spectrum, match_spectra, seam_states, AnalyticEigenpair, StateKind};
pub use gap::{
    approx_gap_energy, gap_eigenvector, gap_quantization_residual, rabi_gap_prediction, solve_gap, AnalyticGapSolution,
    RabiGapPrediction, WireParity,
};
pub use interface::{
    decompose_initial, interface_state, interface_state_on, localization_length, tail_probability, Decomposition,
    InterfaceState, InterfaceStateSpec,
};
pub use symmetry::{
    check_parity_symmetric, gap_quartet, physical_indices, symmetry_apply, symmetry_matrix, Symmetry,
};

/// `k₀ = ln((1 + sin θ)/cos θ)`, the asymptotic decay rate of gap states.
pub fn k0(theta: f64) -> f64 {
    ((1.0 + theta.sin()) / theta.cos()).ln()
}
