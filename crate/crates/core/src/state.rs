//! Walker wavefunctions: one `(a_x, b_x)` amplitude pair per site.

use crate::error::{Error, Result};
use crate::geometry::Geometry;
use num_complex::Complex64;
use rand::Rng;

const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct WalkerState {
    geometry: Geometry,
    amplitudes: Vec<[Complex64; 2]>,
    normalized: bool,
}

impl WalkerState {
    /// Normalized state; fails if the norm deviates from 1 by more than 1e-12.
    pub fn new(geometry: Geometry, amplitudes: Vec<[Complex64; 2]>) -> Result<Self> {
        let s = Self::unnormalized(geometry, amplitudes)?;
        let n = s.norm_sqr();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n));
        }
        Ok(Self { normalized: true, ..s })
    }

    /// Arbitrary amplitudes, flagged as not normalized.
    pub fn unnormalized(geometry: Geometry, amplitudes: Vec<[Complex64; 2]>) -> Result<Self> {
        if amplitudes.len() != geometry.size() {
            return Err(Error::GeometryMismatch(format!(
                "{} amplitude pairs for {} sites",
                amplitudes.len(),
                geometry.size()
            )));
        }
        Ok(Self { geometry, amplitudes, normalized: false })
    }

    pub fn zeros(geometry: Geometry) -> Self {
        Self { geometry, amplitudes: vec![[Complex64::default(); 2]; geometry.size()], normalized: false }
    }

    /// `|x⟩ ⊗ (a, b)` normalized.
    pub fn localized(geometry: Geometry, x: i64, coin: [Complex64; 2]) -> Result<Self> {
        let i = geometry
            .index_of(x)
            .ok_or_else(|| Error::InvalidParameter(format!("site x = {x} outside geometry")))?;
        let n = (coin[0].norm_sqr() + coin[1].norm_sqr()).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidParameter("coin state has zero or non-finite norm".into()));
        }
        let mut s = Self::zeros(geometry);
        s.amplitudes[i] = [coin[0] / n, coin[1] / n];
        s.normalized = true;
        Ok(s)
    }

    /// From a flat vector indexed `2·i + c`, renormalized.
    pub fn from_flat(geometry: Geometry, flat: &[Complex64]) -> Result<Self> {
        if flat.len() != geometry.dim() {
            return Err(Error::GeometryMismatch(format!(
                "flat vector of length {} for dimension {}",
                flat.len(),
                geometry.dim()
            )));
        }
        let amps = flat.chunks_exact(2).map(|c| [c[0], c[1]]).collect();
        Self::unnormalized(geometry, amps)?.normalize()
    }

    /// Haar-like random normalized state (Gaussian components).
    pub fn random<R: Rng>(geometry: Geometry, rng: &mut R) -> Self {
        let mut gauss = || {
            let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            let v: f64 = rng.gen();
            let r = (-2.0 * u.ln()).sqrt();
            Complex64::from_polar(r, std::f64::consts::TAU * v)
        };
        let amps = (0..geometry.size()).map(|_| [gauss(), gauss()]).collect();
        Self::unnormalized(geometry, amps).and_then(Self::normalize).expect("random state has positive norm")
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn amplitudes(&self) -> &[[Complex64; 2]] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [[Complex64; 2]] {
        self.normalized = false;
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<[Complex64; 2]> {
        self.amplitudes
    }

    /// Replaces the amplitudes after a norm-preserving map, keeping the flag.
    pub(crate) fn with_amplitudes(&self, amplitudes: Vec<[Complex64; 2]>) -> Self {
        debug_assert_eq!(amplitudes.len(), self.amplitudes.len());
        Self { geometry: self.geometry, amplitudes, normalized: self.normalized }
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Amplitude pair at lattice coordinate `x`.
    pub fn at(&self, x: i64) -> Option<[Complex64; 2]> {
        self.geometry.index_of(x).map(|i| self.amplitudes[i])
    }

    pub fn flat(&self) -> Vec<Complex64> {
        self.amplitudes.iter().flat_map(|p| [p[0], p[1]]).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|p| p[0].norm_sqr() + p[1].norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalize(mut self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidParameter(format!("cannot normalize state of norm {n}")));
        }
        for p in &mut self.amplitudes {
            p[0] /= n;
            p[1] /= n;
        }
        self.normalized = true;
        Ok(self)
    }

    /// Multiplies every amplitude by `z`.
    pub fn scale(mut self, z: Complex64) -> Self {
        for p in &mut self.amplitudes {
            p[0] *= z;
            p[1] *= z;
        }
        self.normalized = self.normalized && (z.norm() - 1.0).abs() < NORM_TOL;
        self
    }

    /// `self + z·other`, unnormalized.
    pub fn add_scaled(&self, z: Complex64, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let amps = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(p, q)| [p[0] + z * q[0], p[1] + z * q[1]])
            .collect();
        Self::unnormalized(self.geometry, amps)
    }

    /// Site probabilities `p_i = |a|² + |b|²` in site order.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|p| p[0].norm_sqr() + p[1].norm_sqr()).collect()
    }

    /// `(x, p_x)` for every site.
    pub fn position_distribution(&self) -> Vec<(i64, f64)> {
        self.geometry.coordinates().zip(self.probabilities()).collect()
    }

    /// `⟨self|other⟩`.
    pub fn overlap(&self, other: &Self) -> Result<Complex64> {
        self.check_same(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(p, q)| p[0].conj() * q[0] + p[1].conj() * q[1])
            .sum())
    }

    /// Euclidean distance `‖self − other‖`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.check_same(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(p, q)| (p[0] - q[0]).norm_sqr() + (p[1] - q[1]).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Inverse participation ratio `Σ p_x²` of the normalized distribution.
    pub fn ipr(&self) -> f64 {
        let n = self.norm_sqr();
        self.probabilities().iter().map(|p| (p / n).powi(2)).sum()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.geometry != other.geometry {
            return Err(Error::GeometryMismatch(format!("{:?} vs {:?}", self.geometry, other.geometry)));
        }
        Ok(())
    }
}
