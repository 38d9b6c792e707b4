//! Exact spin bookkeeping in twice-values.
//!
//! A spin `j` is held as the integer `2j` and a magnetic number `m` as `2m`,
//! so half-integer spins never pass through floating point until a matrix
//! element is actually evaluated.

use std::fmt;

use crate::error::{Error, Result};

/// Spin quantum number `j`, stored as `twice_j = 2j >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinJ {
    twice_j: u32,
}

impl SpinJ {
    pub fn new(twice_j: u32) -> Result<Self> {
        if twice_j == 0 {
            return Err(Error::TrivialSpin);
        }
        Ok(Self { twice_j })
    }

    pub fn twice_j(self) -> u32 {
        self.twice_j
    }

    pub fn j(self) -> f64 {
        f64::from(self.twice_j) / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.twice_j.is_multiple_of(2)
    }

    /// Dimension of one particle's space, `2j + 1`.
    pub fn dim(self) -> usize {
        self.twice_j as usize + 1
    }

    /// Dimension of the two-particle product space, `(2j + 1)^2`.
    pub fn product_dim(self) -> usize {
        self.dim() * self.dim()
    }

    /// All magnetic indices in ascending order, `-j, -j + 1, ..., j`.
    pub fn magnetic_indices(self) -> impl Iterator<Item = MagneticIndex> + Clone {
        let tj = self.twice_j as i32;
        (-tj..=tj).step_by(2).map(move |twice_m| MagneticIndex {
            twice_j: self.twice_j,
            twice_m,
        })
    }

    /// Strictly positive `twice_m` values in ascending order.
    pub fn positive_twice_ms(self) -> impl Iterator<Item = u32> + Clone {
        let first = if self.is_integer() { 2 } else { 1 };
        (first..=self.twice_j).step_by(2)
    }

    pub fn positive_count(self) -> usize {
        (self.twice_j as usize).div_ceil(2)
    }

    /// Human-readable `j`: "1/2", "1", "3/2", ...
    pub fn j_display(self) -> String {
        if self.is_integer() {
            (self.twice_j / 2).to_string()
        } else {
            format!("{}/2", self.twice_j)
        }
    }
}

impl fmt::Display for SpinJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "j={}", self.j_display())
    }
}

/// Magnetic quantum number `m` of a given spin, stored as `twice_m = 2m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MagneticIndex {
    twice_j: u32,
    twice_m: i32,
}

impl MagneticIndex {
    pub fn new(spin: SpinJ, twice_m: i32) -> Result<Self> {
        let tj = spin.twice_j as i32;
        if twice_m.abs() > tj || (twice_m - tj) % 2 != 0 {
            return Err(Error::InvalidMagneticIndex {
                twice_j: spin.twice_j,
                twice_m,
            });
        }
        Ok(Self {
            twice_j: spin.twice_j,
            twice_m,
        })
    }

    /// Rebuilds an index from a row position in `0..=twice_j`.
    pub fn from_row(spin: SpinJ, row: usize) -> Result<Self> {
        if row > spin.twice_j as usize {
            return Err(Error::DimensionMismatch {
                expected: spin.dim(),
                found: row + 1,
            });
        }
        Ok(Self {
            twice_j: spin.twice_j,
            twice_m: 2 * row as i32 - spin.twice_j as i32,
        })
    }

    pub fn twice_m(self) -> i32 {
        self.twice_m
    }

    pub fn m(self) -> f64 {
        f64::from(self.twice_m) / 2.0
    }

    pub fn negated(self) -> Self {
        Self {
            twice_j: self.twice_j,
            twice_m: -self.twice_m,
        }
    }

    /// Position in the ascending-m basis: `(twice_m + twice_j) / 2`.
    pub fn row(self) -> usize {
        ((self.twice_m + self.twice_j as i32) / 2) as usize
    }

    /// `(-1)^(j - m)`; the exponent is always an integer.
    pub fn singlet_sign(self) -> f64 {
        if ((self.twice_j as i32 - self.twice_m) / 2) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}
