//! Unpacked reference matrices: one `u8` per entry, textbook elimination.
//!
//! Used as the general-p fallback behind [`Matrix`](super::Matrix) and as the
//! comparison baseline for the packed fast paths.

use super::{PrimeField, MAX_DIM};

pub type Dense = [[u8; MAX_DIM]; MAX_DIM];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    pub field: PrimeField,
    pub n: usize,
    pub a: Dense,
}

impl DenseMatrix {
    pub fn new(field: PrimeField, n: usize, a: Dense) -> Self {
        Self { field, n, a }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut a = [[0u8; MAX_DIM]; MAX_DIM];
        for (i, row) in a.iter_mut().enumerate().take(n) {
            row[i] = 1;
        }
        Self { field, n, a }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = self.field;
        let mut a = [[0u8; MAX_DIM]; MAX_DIM];
        for i in 0..self.n {
            for j in 0..self.n {
                let mut s = 0u8;
                for k in 0..self.n {
                    s = f.add(s, f.mul(self.a[i][k], other.a[k][j]));
                }
                a[i][j] = s;
            }
        }
        Self { a, ..*self }
    }

    /// Row reduction to echelon form; returns (rank, determinant).
    fn eliminate(&self) -> (usize, u8) {
        let f = self.field;
        let n = self.n;
        let mut m = self.a;
        let mut det = 1u8;
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| m[r][col] != 0) else {
                det = 0;
                continue;
            };
            if piv != rank {
                m.swap(piv, rank);
                det = f.neg(det);
            }
            let pv = m[rank][col];
            det = f.mul(det, pv);
            let inv = f.inv(pv);
            for r in rank + 1..n {
                let factor = f.mul(m[r][col], inv);
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    let t = f.mul(factor, m[rank][c]);
                    m[r][c] = f.sub(m[r][c], t);
                }
            }
            rank += 1;
        }
        (rank, if rank == n { det } else { 0 })
    }

    pub fn det(&self) -> u8 {
        self.eliminate().1
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Option<Self> {
        let f = self.field;
        let n = self.n;
        let mut m = self.a;
        let mut inv = Self::identity(f, n).a;
        for col in 0..n {
            let piv = (col..n).find(|&r| m[r][col] != 0)?;
            m.swap(piv, col);
            inv.swap(piv, col);
            let s = f.inv(m[col][col]);
            for c in 0..n {
                m[col][c] = f.mul(m[col][c], s);
                inv[col][c] = f.mul(inv[col][c], s);
            }
            for r in 0..n {
                if r == col || m[r][col] == 0 {
                    continue;
                }
                let factor = m[r][col];
                for c in 0..n {
                    let t = f.mul(factor, m[col][c]);
                    m[r][c] = f.sub(m[r][c], t);
                    let t = f.mul(factor, inv[col][c]);
                    inv[r][c] = f.sub(inv[r][c], t);
                }
            }
        }
        Some(Self { a: inv, ..*self })
    }
}
