//! Exact one-step evolution `U = S·C` on the ring.

use crate::coin::mat2_apply;
use crate::error::{Error, Result};
use crate::field::CoinField;
use crate::geometry::GeometryKind;
use crate::state::WalkerState;
use num_complex::Complex64;

/// Largest amplitude allowed to cross the seam of a wire in one step.
pub const SEAM_TOLERANCE: f64 = 1e-13;

/// Applies the site-local coins.
pub fn apply_coin(state: &WalkerState, field: &CoinField) -> Result<WalkerState> {
    if state.geometry() != field.geometry() {
        return Err(Error::GeometryMismatch(format!(
            "state on {:?}, field on {:?}",
            state.geometry(),
            field.geometry()
        )));
    }
    let amps = state.amplitudes().iter().zip(field.matrices()).map(|(p, m)| mat2_apply(m, *p)).collect();
    Ok(state.with_amplitudes(amps))
}

/// Cyclic conditional shift: `a` moves right, `b` moves left.
pub fn apply_step(state: &WalkerState) -> WalkerState {
    let amps = state.amplitudes();
    let n = amps.len();
    let mut shifted = vec![[Complex64::default(); 2]; n];
    for i in 0..n {
        shifted[(i + 1) % n][0] = amps[i][0];
        shifted[(i + n - 1) % n][1] = amps[i][1];
    }
    state.with_amplitudes(shifted)
}

/// Options for [`evolve`].
#[derive(Debug, Clone, Copy, Default)]
pub struct EvolveOptions {
    /// Record the position distribution after every step (including t = 0).
    pub record_distributions: bool,
    /// Keep full states every `n` steps (including t = 0).
    pub snapshot_every: Option<usize>,
}

/// Output of [`evolve`].
#[derive(Debug, Clone)]
pub struct Evolution {
    pub final_state: WalkerState,
    /// `distributions[t][i]` is the probability at site index `i` after `t` steps.
    pub distributions: Vec<Vec<f64>>,
    pub snapshots: Vec<(usize, WalkerState)>,
}

/// Applies `U = S·C` `steps` times.
///
/// On a wire, each step checks that no amplitude crosses between the two end
/// sites; on a truncated line, `steps` may not exceed the recorded horizon.
pub fn evolve(state: &WalkerState, field: &CoinField, steps: usize, opts: EvolveOptions) -> Result<Evolution> {
    let mut distributions = Vec::new();
    let mut snapshots = Vec::new();
    let final_state = evolve_observed(state, field, steps, |t, amps| {
        if opts.record_distributions {
            distributions.push(amps.iter().map(|p| p[0].norm_sqr() + p[1].norm_sqr()).collect());
        }
        if let Some(k) = opts.snapshot_every {
            if k > 0 && t % k == 0 {
                snapshots.push((t, state.with_amplitudes(amps.to_vec())));
            }
        }
    })?;
    Ok(Evolution { final_state, distributions, snapshots })
}

/// As [`evolve`], calling `observe(t, amplitudes)` for `t = 0..=steps`.
pub fn evolve_observed<F>(state: &WalkerState, field: &CoinField, steps: usize, mut observe: F) -> Result<WalkerState>
where
    F: FnMut(usize, &[[Complex64; 2]]),
{
    if state.geometry() != field.geometry() {
        return Err(Error::GeometryMismatch(format!(
            "state on {:?}, field on {:?}",
            state.geometry(),
            field.geometry()
        )));
    }
    let geometry = *field.geometry();
    if let GeometryKind::TruncatedLine { horizon } = geometry.kind() {
        if steps > horizon {
            return Err(Error::HorizonExceeded { requested: steps, horizon });
        }
    }
    let is_wire = geometry.is_wire();
    let n = geometry.size();
    let seam = |v: &[[Complex64; 2]]| v[0][0].norm().max(v[n - 1][1].norm());
    if is_wire && seam(state.amplitudes()) > SEAM_TOLERANCE {
        return Err(Error::SeamLeak { step: 0, amplitude: seam(state.amplitudes()) });
    }

    let mats = field.matrices();
    let mut cur: Vec<[Complex64; 2]> = state.amplitudes().to_vec();
    let mut next = vec![[Complex64::default(); 2]; n];
    observe(0, &cur);
    for t in 1..=steps {
        for i in 0..n {
            let c = mat2_apply(&mats[i], cur[i]);
            next[(i + 1) % n][0] = c[0];
            next[(i + n - 1) % n][1] = c[1];
        }
        if is_wire {
            // amplitude that wrapped around the ring between the end sites
            let leak = seam(&next);
            if leak > SEAM_TOLERANCE {
                return Err(Error::SeamLeak { step: t, amplitude: leak });
            }
        }
        std::mem::swap(&mut cur, &mut next);
        observe(t, &cur);
    }
    Ok(state.with_amplitudes(cur))
}
