//! Exact arithmetic over small prime fields GF(p).
//!
//! Scalars are plain `u8` residues in `[0, p)`. They are validated where they
//! enter the library (matrix and polynomial constructors, parsers) and the
//! arithmetic below assumes reduced inputs.
//!
//! Vectors of the algebras handled here have at most [`MAX_DIM`] coordinates
//! and are stored as fixed arrays ([`Coords`]). An element of GF(p)^n is also
//! identified with its integer index `Σ x_i p^i`, with `x_0` the least
//! significant digit.

mod echelon;
mod matrix;
pub mod naive;
mod poly;

pub use echelon::Echelon;
pub use matrix::Matrix;
pub use poly::{monic_irreducibles, Poly};

use crate::error::{Error, Result};

/// Largest supported dimension.
pub const MAX_DIM: usize = 6;
pub const MIN_DIM: usize = 2;

/// Coordinates of a vector in GF(p)^n; entries past `n` are zero.
pub type Coords = [u8; MAX_DIM];

/// A prime field GF(p) for p in {2, 3, 5}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u8,
}

impl PrimeField {
    pub fn new(p: u8) -> Result<Self> {
        match p {
            2 | 3 | 5 => Ok(Self { p }),
            _ => Err(Error::UnsupportedPrime(p)),
        }
    }

    #[inline]
    pub fn p(self) -> u8 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(a != 0 && a < self.p);
        // a^(p-2)
        let mut r = 1;
        for _ in 0..self.p - 2 {
            r = self.mul(r, a);
        }
        r
    }

    pub fn check(self, value: u64) -> Result<u8> {
        if value < self.p as u64 {
            Ok(value as u8)
        } else {
            Err(Error::EntryOutOfRange { value, p: self.p })
        }
    }
}

pub fn check_dim(n: usize) -> Result<()> {
    if (MIN_DIM..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(n))
    }
}

/// `p^n` as a `usize`.
#[inline]
pub fn order(p: u8, n: usize) -> usize {
    (p as usize).pow(n as u32)
}

#[inline]
pub fn coords_of(p: u8, n: usize, mut index: usize) -> Coords {
    let mut c = [0u8; MAX_DIM];
    for slot in c.iter_mut().take(n) {
        *slot = (index % p as usize) as u8;
        index /= p as usize;
    }
    c
}

#[inline]
pub fn index_of(p: u8, n: usize, c: &Coords) -> usize {
    c[..n]
        .iter()
        .rev()
        .fold(0usize, |acc, &d| acc * p as usize + d as usize)
}

/// Unit vector `e_i` (0-based).
pub fn unit(i: usize) -> Coords {
    let mut c = [0u8; MAX_DIM];
    c[i] = 1;
    c
}

pub fn add_coords(f: PrimeField, n: usize, a: &Coords, b: &Coords) -> Coords {
    let mut c = [0u8; MAX_DIM];
    for i in 0..n {
        c[i] = f.add(a[i], b[i]);
    }
    c
}

pub fn scale_coords(f: PrimeField, n: usize, s: u8, a: &Coords) -> Coords {
    let mut c = [0u8; MAX_DIM];
    for i in 0..n {
        c[i] = f.mul(s, a[i]);
    }
    c
}

/// Index of the first nonzero coordinate, if any.
pub fn leading_index(n: usize, a: &Coords) -> Option<usize> {
    a[..n].iter().position(|&x| x != 0)
}

/// Representatives of the projective points of GF(p)^n: the nonzero vectors
/// whose first nonzero coordinate is 1, in increasing index order.
pub fn projective_points(p: u8, n: usize) -> Vec<Coords> {
    (1..order(p, n))
        .map(|i| coords_of(p, n, i))
        .filter(|c| c[leading_index(n, c).unwrap()] == 1)
        .collect()
}

/// Scales `a` so that its first nonzero coordinate becomes 1; returns the
/// normalized vector and the scalar `s` with `a = s * normalized`.
pub fn projective_normalize(f: PrimeField, n: usize, a: &Coords) -> Option<(Coords, u8)> {
    let lead = leading_index(n, a)?;
    let s = a[lead];
    Some((scale_coords(f, n, f.inv(s), a), s))
}
