use std::fmt;

use super::codec::{decode_matrix, encode_matrix, MatrixCode};
use super::Cube;
use crate::error::{Error, Result};
use crate::gf::{check_dim, coords_of, order, Coords, Matrix, PrimeField};

/// The matrices `[A_1, ..., A_n]` of left multiplication by the canonical
/// basis vectors: `x * y = Σ x_i A_i y`.
///
/// Construction only checks shapes; [`StandardBasis::validate`] checks the
/// three defining conditions (identity first, first columns `e_i`, every
/// nonzero combination invertible).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardBasis {
    matrices: Vec<Matrix>,
}

/// Which defining conditions of a standard basis fail.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ViolationReport {
    pub first_is_identity: bool,
    /// 1-based indices `i` whose matrix does not have first column `e_i`.
    pub first_column_failures: Vec<usize>,
    /// First singular combination `Σ λ_i A_i`, scanning the normalized
    /// projective points in index order.
    pub singular: Option<Coords>,
}

impl ViolationReport {
    pub fn is_ok(&self) -> bool {
        self.first_is_identity && self.first_column_failures.is_empty() && self.singular.is_none()
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.first_is_identity {
            parts.push("A_1 is not the identity".to_string());
        }
        for i in &self.first_column_failures {
            parts.push(format!("first column of A_{i} is not e_{i}"));
        }
        if let Some(l) = &self.singular {
            let lam: Vec<String> = l.iter().map(|x| x.to_string()).collect();
            parts.push(format!(
                "combination with coefficients ({}) is singular",
                lam.join(",")
            ));
        }
        if parts.is_empty() {
            write!(f, "ok")
        } else {
            write!(f, "{}", parts.join("; "))
        }
    }
}

/// All linear combinations `Σ λ_i M_i`, indexed by `index_of(λ)`.
pub fn linear_combinations(field: PrimeField, mats: &[Matrix]) -> Vec<Matrix> {
    let p = field.p() as usize;
    let k = mats.len();
    let n = mats[0].dim();
    let total = p.pow(k as u32);
    let mut out = Vec::with_capacity(total);
    out.push(Matrix::zero(field, n).expect("dimension already checked"));
    for idx in 1..total {
        // lowest nonzero digit t: idx - p^t differs only in that digit
        let mut t = 0;
        let mut rest = idx;
        while rest % p == 0 {
            rest /= p;
            t += 1;
        }
        let prev = out[idx - p.pow(t as u32)];
        out.push(prev.add(&mats[t]));
    }
    out
}

impl StandardBasis {
    pub fn new(matrices: Vec<Matrix>) -> Result<Self> {
        let n = matrices.len();
        check_dim(n)?;
        let p = matrices[0].p();
        if matrices.iter().any(|m| m.dim() != n || m.p() != p) {
            return Err(Error::Shape(format!(
                "a standard basis needs {n} matrices of size {n}x{n} over one field"
            )));
        }
        Ok(Self { matrices })
    }

    /// `A_1 = I`, `A_i = decode(code_{i-2}, position i)`.
    pub fn from_codes(field: PrimeField, n: usize, codes: &[u128]) -> Result<Self> {
        check_dim(n)?;
        if codes.len() != n - 1 {
            return Err(Error::Shape(format!(
                "{} codes given, expected {}",
                codes.len(),
                n - 1
            )));
        }
        let mut matrices = vec![Matrix::identity(field, n)?];
        for (k, &v) in codes.iter().enumerate() {
            matrices.push(decode_matrix(MatrixCode::new(v, k + 2), field, n)?);
        }
        Self::new(matrices)
    }

    /// Codes of `A_2..A_n`.
    pub fn codes(&self) -> Result<Vec<MatrixCode>> {
        self.matrices[1..]
            .iter()
            .enumerate()
            .map(|(k, m)| encode_matrix(m, k + 2))
            .collect()
    }

    pub fn field(&self) -> PrimeField {
        self.matrices[0].field()
    }

    pub fn dim(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn combination(&self, lambda: &Coords) -> Matrix {
        let f = self.field();
        self.matrices
            .iter()
            .zip(lambda)
            .fold(Matrix::zero(f, self.dim()).unwrap(), |acc, (m, &l)| {
                acc.add(&m.scale(l))
            })
    }

    /// Checks the three defining conditions. Condition 2 is tested on the
    /// `(p^n - 1)/(p - 1)` projective representatives only: scalar multiples
    /// of a singular matrix are singular.
    pub fn validate(&self) -> std::result::Result<(), ViolationReport> {
        let f = self.field();
        let n = self.dim();
        let mut report = ViolationReport {
            first_is_identity: self.matrices[0] == Matrix::identity(f, n).unwrap(),
            ..Default::default()
        };
        for (i, m) in self.matrices.iter().enumerate() {
            let col = m.column(0);
            if (0..n).any(|r| col[r] != u8::from(r == i)) {
                report.first_column_failures.push(i + 1);
            }
        }
        let combos = linear_combinations(f, &self.matrices);
        let p = f.p() as usize;
        for (idx, m) in combos.iter().enumerate().skip(1) {
            // leading (lowest-index) nonzero coordinate equal to 1
            let mut rest = idx;
            while rest % p == 0 {
                rest /= p;
            }
            if rest % p != 1 {
                continue;
            }
            if !m.is_invertible() {
                report.singular = Some(coords_of(f.p(), n, idx));
                break;
            }
        }
        if report.is_ok() {
            Ok(())
        } else {
            Err(report)
        }
    }

    /// Cube with `C[i][j][k]` = coefficient of `e_k` in `e_i * e_j`
    /// = entry `(k, j)` of `A_i`.
    pub fn to_cube(&self) -> Cube {
        let n = self.dim();
        let mut cube = Cube::zero(self.field(), n).expect("dimension already checked");
        for (i, a) in self.matrices.iter().enumerate() {
            for j in 0..n {
                for k in 0..n {
                    cube.set(i, j, k, a.get(k, j));
                }
            }
        }
        cube
    }

    /// Left multiplication matrices of the basis vectors of `cube`. The
    /// result is a standard basis iff `e_1` is a two-sided identity and the
    /// cube has no zero divisors.
    pub fn from_cube(cube: &Cube) -> Self {
        let matrices = (0..cube.dim()).map(|i| cube.left_basis_matrix(i)).collect();
        Self { matrices }
    }

    /// Number of elements, `p^n`.
    pub fn order(&self) -> usize {
        order(self.field().p(), self.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane_one() -> StandardBasis {
        StandardBasis::from_codes(
            PrimeField::new(3).unwrap(),
            5,
            &[129317742, 43151760, 25524498, 2715668620],
        )
        .unwrap()
    }

    #[test]
    fn plane_one_validates() {
        assert_eq!(plane_one().validate(), Ok(()));
    }

    #[test]
    fn duplicate_matrix_is_reported() {
        let b = plane_one();
        let mut mats = b.matrices().to_vec();
        mats[2] = mats[1];
        let report = StandardBasis::new(mats).unwrap().validate().unwrap_err();
        assert_eq!(report.singular.unwrap()[..5], [0, 1, 2, 0, 0]);
        assert_eq!(report.first_column_failures, vec![3]);
        assert!(report.first_is_identity);
    }

    #[test]
    fn first_column_violation() {
        let b = plane_one();
        let mut mats = b.matrices().to_vec();
        mats[3].set(0, 0, 1);
        let report = StandardBasis::new(mats).unwrap().validate().unwrap_err();
        assert_eq!(report.first_column_failures, vec![4]);
        let mut mats = b.matrices().to_vec();
        mats[0].set(1, 0, 2);
        let report = StandardBasis::new(mats).unwrap().validate().unwrap_err();
        assert!(!report.first_is_identity);
        assert_eq!(report.first_column_failures, vec![1]);
    }

    #[test]
    fn cube_round_trip() {
        let b = plane_one();
        assert_eq!(StandardBasis::from_cube(&b.to_cube()), b);
    }

    #[test]
    fn combinations_by_index() {
        let b = plane_one();
        let f = b.field();
        let all = linear_combinations(f, b.matrices());
        assert_eq!(all.len(), 243);
        for idx in [0, 1, 5, 77, 242] {
            assert_eq!(all[idx], b.combination(&coords_of(3, 5, idx)));
        }
    }
}
