//! Lattice geometries, all embedded on a periodic ring.
//!
//! Site index `i ∈ 0..size` maps to lattice coordinate `x = i + origin_offset`.
//! A wire is a ring whose two end sites carry totally reflecting coins, and a
//! truncated line is a ring large enough that nothing reaches the seam within
//! its evolution horizon.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeometryKind {
    Cycle,
    Wire,
    /// Stand-in for the infinite line; exact for at most `horizon` steps.
    TruncatedLine { horizon: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Geometry {
    kind: GeometryKind,
    size: usize,
    origin_offset: i64,
}

impl Geometry {
    /// Ring of `size` sites labelled `x = 0..size`.
    pub fn cycle(size: usize) -> Result<Self> {
        check_size(size)?;
        Ok(Self { kind: GeometryKind::Cycle, size, origin_offset: 0 })
    }

    /// Finite wire of `size` sites centred on the origin.
    ///
    /// Odd `size = 2L+3` spans `x ∈ [-L-1, L+1]`; even `size = 2L+2` spans
    /// `x ∈ [-L, L+1]`.
    pub fn wire(size: usize) -> Result<Self> {
        if size < 3 {
            return Err(Error::InvalidParameter(format!("wire needs at least 3 sites, got {size}")));
        }
        Ok(Self { kind: GeometryKind::Wire, size, origin_offset: -(((size - 1) / 2) as i64) })
    }

    /// Ring standing in for the infinite line, exact for `horizon` steps of an
    /// initial state supported on `|x| <= support_radius`.
    pub fn truncated_line(horizon: usize, support_radius: usize) -> Result<Self> {
        Self::truncated_line_with_size(horizon, support_radius, Self::min_truncated_size(horizon, support_radius))
    }

    /// As [`Geometry::truncated_line`] with an explicit (larger) ring size.
    pub fn truncated_line_with_size(horizon: usize, support_radius: usize, size: usize) -> Result<Self> {
        let min = Self::min_truncated_size(horizon, support_radius);
        if size < min {
            return Err(Error::InvalidParameter(format!(
                "truncated line with horizon {horizon} and support radius {support_radius} needs at least {min} sites, got {size}"
            )));
        }
        Ok(Self {
            kind: GeometryKind::TruncatedLine { horizon },
            size,
            origin_offset: -(((size - 1) / 2) as i64),
        })
    }

    /// `2·horizon + 1 + (2·support_radius + 1)`.
    pub fn min_truncated_size(horizon: usize, support_radius: usize) -> usize {
        2 * horizon + 2 * support_radius + 2
    }

    pub fn kind(&self) -> GeometryKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn origin_offset(&self) -> i64 {
        self.origin_offset
    }

    /// Dimension of the full walker Hilbert space (two coin states per site).
    pub fn dim(&self) -> usize {
        2 * self.size
    }

    pub fn x_min(&self) -> i64 {
        self.origin_offset
    }

    pub fn x_max(&self) -> i64 {
        self.origin_offset + self.size as i64 - 1
    }

    pub fn coordinate(&self, index: usize) -> i64 {
        index as i64 + self.origin_offset
    }

    pub fn index_of(&self, x: i64) -> Option<usize> {
        let i = x - self.origin_offset;
        (0..self.size as i64).contains(&i).then_some(i as usize)
    }

    pub fn coordinates(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.size).map(|i| self.coordinate(i))
    }

    pub fn horizon(&self) -> Option<usize> {
        match self.kind {
            GeometryKind::TruncatedLine { horizon } => Some(horizon),
            _ => None,
        }
    }

    pub fn is_wire(&self) -> bool {
        self.kind == GeometryKind::Wire
    }
}

fn check_size(size: usize) -> Result<()> {
    if size < 2 {
        return Err(Error::InvalidParameter(format!("geometry needs at least 2 sites, got {size}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_coordinates() {
        let odd = Geometry::wire(21).unwrap();
        assert_eq!((odd.x_min(), odd.x_max()), (-10, 10));
        let even = Geometry::wire(22).unwrap();
        assert_eq!((even.x_min(), even.x_max()), (-10, 11));
        assert_eq!(even.index_of(-10), Some(0));
        assert_eq!(even.index_of(12), None);
    }

    #[test]
    fn truncated_line_covers_light_cone() {
        let g = Geometry::truncated_line(150, 0).unwrap();
        assert_eq!(g.size(), 302);
        assert!(g.x_min() <= -150 && g.x_max() >= 150);
        assert_eq!(g.horizon(), Some(150));
        assert!(Geometry::truncated_line_with_size(150, 0, 300).is_err());
    }

    #[test]
    fn rejects_tiny_geometries() {
        assert!(Geometry::cycle(1).is_err());
        assert!(Geometry::wire(2).is_err());
    }
}
