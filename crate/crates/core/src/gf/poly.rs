use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use super::{check_dim, Matrix, PrimeField};
use crate::error::{Error, Result};

/// Polynomial over GF(p), coefficients lowest degree first, no trailing
/// zeros (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    p: u8,
    coeffs: Vec<u8>,
}

impl Poly {
    pub fn new(field: PrimeField, coeffs: &[u8]) -> Result<Self> {
        for &c in coeffs {
            field.check(c as u64)?;
        }
        Ok(Self::from_coeffs_unchecked(field.p(), coeffs.to_vec()))
    }

    pub(crate) fn from_coeffs_unchecked(p: u8, mut coeffs: Vec<u8>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    /// The monic polynomial of degree `d` whose lower coefficients are the
    /// base-p digits of `code` (digit k = coefficient of x^k).
    pub fn monic_from_code(field: PrimeField, d: usize, mut code: usize) -> Self {
        let p = field.p() as usize;
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push((code % p) as u8);
            code /= p;
        }
        coeffs.push(1);
        Self::from_coeffs_unchecked(field.p(), coeffs)
    }

    /// Inverse of [`Poly::monic_from_code`]; `None` unless monic.
    pub fn monic_code(&self) -> Option<usize> {
        if !self.is_monic() {
            return None;
        }
        let d = self.coeffs.len() - 1;
        Some(
            self.coeffs[..d]
                .iter()
                .rev()
                .fold(0, |acc, &c| acc * self.p as usize + c as usize),
        )
    }

    pub fn zero(field: PrimeField) -> Self {
        Self::from_coeffs_unchecked(field.p(), vec![])
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("validated at construction")
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero past the degree).
    pub fn coeff(&self, k: usize) -> u8 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field();
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len)
            .map(|k| f.add(self.coeff(k), other.coeff(k)))
            .collect();
        Self::from_coeffs_unchecked(self.p, c)
    }

    pub fn neg(&self) -> Self {
        let f = self.field();
        Self::from_coeffs_unchecked(self.p, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::from_coeffs_unchecked(self.p, vec![]);
        }
        let f = self.field();
        let mut c = vec![0u8; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Self::from_coeffs_unchecked(self.p, c)
    }

    pub fn eval(&self, x: u8) -> u8 {
        let f = self.field();
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Evaluates the polynomial at a square matrix (Horner).
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.dim();
        let id = Matrix::identity(m.field(), n).expect("matrix dimension already valid");
        self.coeffs
            .iter()
            .rev()
            .fold(Matrix::zero(m.field(), n).expect("valid"), |acc, &c| {
                acc.mul(m).add(&id.scale(c))
            })
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let f = self.field();
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(divisor.coeffs[dd]);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::from_coeffs_unchecked(self.p, vec![]), self.clone());
        }
        let mut quot = vec![0u8; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = f.mul(rem[k], lead_inv);
            if q == 0 {
                continue;
            }
            quot[k - dd] = q;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] = f.sub(rem[k - dd + j], f.mul(q, d));
            }
        }
        (
            Self::from_coeffs_unchecked(self.p, quot),
            Self::from_coeffs_unchecked(self.p, rem),
        )
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// True iff the polynomial has positive degree and no monic factor of
    /// degree strictly between 0 and its own degree.
    ///
    /// Trial division by the tabulated monic irreducibles of degree up to
    /// half the degree.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else {
            return false;
        };
        if d == 0 {
            return false;
        }
        (1..=d / 2).all(|k| {
            monic_irreducibles(self.field(), k)
                .iter()
                .all(|g| !g.divides(self))
        })
    }

    /// True iff the polynomial has a root in GF(p).
    pub fn has_root(&self) -> bool {
        (0..self.p).any(|x| self.eval(x) == 0)
    }

    /// Companion matrix: ones on the subdiagonal, last column `-f_0..-f_{n-1}`.
    pub fn companion(&self) -> Result<Matrix> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let n = self.degree().unwrap();
        check_dim(n).map_err(|_| Error::Degree(n))?;
        let f = self.field();
        let mut m = Matrix::zero(f, n)?;
        for r in 1..n {
            m.set(r, r - 1, 1);
        }
        for r in 0..n {
            m.set(r, n - 1, f.neg(self.coeffs[r]));
        }
        Ok(m)
    }
}

/// The monic irreducible polynomials of degree `d` over GF(p), in code order.
///
/// Degrees up to 3 (enough for trial division of anything of degree ≤ 7) are
/// tabulated once per process.
pub fn monic_irreducibles(field: PrimeField, d: usize) -> Vec<Poly> {
    static TABLE: OnceLock<HashMap<(u8, usize), Vec<Poly>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = HashMap::new();
        for p in [2u8, 3, 5] {
            let f = PrimeField::new(p).unwrap();
            for deg in 1..=3 {
                let found: Vec<Poly> = (0..(p as usize).pow(deg as u32))
                    .map(|code| Poly::monic_from_code(f, deg, code))
                    .filter(|g| {
                        (1..=deg / 2).all(|k| {
                            t.get(&(p, k))
                                .map(|v: &Vec<Poly>| v.iter().all(|h| !h.divides(g)))
                                .unwrap_or(true)
                        })
                    })
                    .collect();
                t.insert((p, deg), found);
            }
        }
        t
    });
    match table.get(&(field.p(), d)) {
        Some(v) => v.clone(),
        None => (0..(field.p() as usize).pow(d as u32))
            .map(|code| Poly::monic_from_code(field, d, code))
            .filter(Poly::is_irreducible)
            .collect(),
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if c == 1 && k > 0 {
                String::new()
            } else {
                c.to_string()
            };
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{coeff}x")?,
                _ => write!(f, "{coeff}x^{k}")?,
            }
        }
        Ok(())
    }
}
