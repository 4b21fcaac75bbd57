//! Per-site coin assignments for every walk scenario.

use crate::coin::{CoinParams, Mat2};
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Which constructor produced a field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Scenario {
    Homogeneous,
    /// θ_- for x < 0 and θ_+ for x >= 0.
    Interface,
    /// Sites `0..segment` carry coin A, the rest coin B.
    CycleTwoSegment { segment: usize },
    /// A single site at x = 0 differs from the bulk.
    Defect,
    /// Homogeneous bulk between two totally reflecting end coins.
    Wire,
    /// Wire whose bulk θ_x are drawn independently and uniformly.
    RandomBulkWire { seed: u64 },
    Custom,
}

/// Immutable per-site coin field bound to a geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinField {
    geometry: Geometry,
    coins: Vec<CoinParams>,
    matrices: Vec<Mat2>,
    scenario: Scenario,
}

impl CoinField {
    pub fn new(geometry: Geometry, coins: Vec<CoinParams>, scenario: Scenario) -> Result<Self> {
        if coins.len() != geometry.size() {
            return Err(Error::InvalidParameter(format!(
                "coin field has {} coins for {} sites",
                coins.len(),
                geometry.size()
            )));
        }
        if geometry.is_wire() {
            let (first, last) = (coins[0], coins[coins.len() - 1]);
            if !first.is_reflecting() || !last.is_reflecting() {
                return Err(Error::InvalidParameter(format!(
                    "wire end coins must satisfy |theta| = pi/2, got {} and {}",
                    first.theta, last.theta
                )));
            }
        }
        let matrices = coins.iter().map(CoinParams::matrix).collect();
        Ok(Self { geometry, coins, matrices, scenario })
    }

    pub fn homogeneous(geometry: Geometry, coin: CoinParams) -> Result<Self> {
        Self::new(geometry, vec![coin; geometry.size()], Scenario::Homogeneous)
    }

    /// Sharp interface at the origin: `minus` on x < 0, `plus` on x >= 0.
    pub fn interface(geometry: Geometry, minus: CoinParams, plus: CoinParams) -> Result<Self> {
        let coins = geometry.coordinates().map(|x| if x < 0 { minus } else { plus }).collect();
        Self::new(geometry, coins, Scenario::Interface)
    }

    /// Ring of `size` sites whose first `segment` sites use `coin_a`.
    pub fn cycle_two_segment(size: usize, segment: usize, coin_a: CoinParams, coin_b: CoinParams) -> Result<Self> {
        if segment == 0 || segment >= size {
            return Err(Error::InvalidParameter(format!(
                "segment length {segment} must lie in 1..{size}"
            )));
        }
        let geometry = Geometry::cycle(size)?;
        let coins = (0..size).map(|i| if i < segment { coin_a } else { coin_b }).collect();
        Self::new(geometry, coins, Scenario::CycleTwoSegment { segment })
    }

    /// Single-site defect at x = 0.
    pub fn defect(geometry: Geometry, bulk: CoinParams, defect: CoinParams) -> Result<Self> {
        if geometry.index_of(0).is_none() {
            return Err(Error::InvalidParameter("geometry does not contain x = 0".into()));
        }
        let coins = geometry.coordinates().map(|x| if x == 0 { defect } else { bulk }).collect();
        Self::new(geometry, coins, Scenario::Defect)
    }

    /// Finite wire: homogeneous bulk, reflecting coins with the given θ at the two ends.
    pub fn wire(size: usize, bulk: CoinParams, left_end_theta: f64, right_end_theta: f64) -> Result<Self> {
        let geometry = Geometry::wire(size)?;
        let mut coins = vec![bulk; size];
        coins[0] = bulk.with_theta(left_end_theta)?;
        coins[size - 1] = bulk.with_theta(right_end_theta)?;
        Self::new(geometry, coins, Scenario::Wire)
    }

    /// Wire with bulk θ_x drawn uniformly from `theta_range` using a seeded
    /// ChaCha8 stream; phases come from `base`. A degenerate range gives the
    /// clean wire.
    pub fn random_bulk_wire(
        size: usize,
        base: CoinParams,
        theta_range: (f64, f64),
        end_theta: f64,
        seed: u64,
    ) -> Result<Self> {
        let (lo, hi) = theta_range;
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::InvalidParameter(format!("invalid theta range ({lo}, {hi})")));
        }
        if lo.signum() != hi.signum() && lo != 0.0 && hi != 0.0 {
            return Err(Error::InvalidParameter(
                "bulk theta range must lie within one topological phase".into(),
            ));
        }
        let geometry = Geometry::wire(size)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut coins = Vec::with_capacity(size);
        let dist = (hi > lo).then(|| Uniform::new(lo, hi));
        for i in 0..size {
            let theta = if i == 0 || i == size - 1 {
                end_theta
            } else {
                match &dist {
                    Some(d) => d.sample(&mut rng),
                    None => lo,
                }
            };
            coins.push(base.with_theta(theta)?);
        }
        Self::new(geometry, coins, Scenario::RandomBulkWire { seed })
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn coins(&self) -> &[CoinParams] {
        &self.coins
    }

    pub fn coin_at(&self, x: i64) -> Option<&CoinParams> {
        self.geometry.index_of(x).map(|i| &self.coins[i])
    }

    pub(crate) fn matrices(&self) -> &[Mat2] {
        &self.matrices
    }

    pub fn scenario(&self) -> Scenario {
        self.scenario
    }

    /// Common (δ, ζ, σ) when the phases are site-independent.
    pub fn uniform_phases(&self) -> Option<(f64, f64, f64)> {
        let c0 = self.coins[0];
        self.coins
            .iter()
            .all(|c| c.delta == c0.delta && c.zeta == c0.zeta && c.sigma == c0.sigma)
            .then_some((c0.delta, c0.zeta, c0.sigma))
    }

    /// All coins real (δ = ζ = σ = 0).
    pub fn is_real(&self) -> bool {
        self.uniform_phases() == Some((0.0, 0.0, 0.0))
    }
}
