//! 3-cubes (structure-constant tensors), standard bases, the S₃ action on
//! cubes, isotopies and the passage from presemifields to semifields.
//!
//! Indices are 0-based throughout: `C[i][j][k]` is the coefficient of `e_k`
//! in `e_i * e_j`.

mod basis;
pub mod codec;

pub use basis::{linear_combinations, StandardBasis, ViolationReport};
pub use codec::{decode_matrix, encode_matrix, format_record, parse_record, MatrixCode};

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{check_dim, leading_index, projective_points, unit, Coords, Matrix, PrimeField};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    p: u8,
    n: usize,
    data: Vec<u8>,
}

impl Cube {
    pub fn zero(field: PrimeField, n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self {
            p: field.p(),
            n,
            data: vec![0; n * n * n],
        })
    }

    /// Builds a cube from `n³` entries in `[i][j][k]` order.
    pub fn from_entries(field: PrimeField, n: usize, entries: &[u8]) -> Result<Self> {
        check_dim(n)?;
        if entries.len() != n * n * n {
            return Err(Error::Shape(format!(
                "{} entries, expected {}",
                entries.len(),
                n * n * n
            )));
        }
        for &e in entries {
            field.check(e as u64)?;
        }
        Ok(Self {
            p: field.p(),
            n,
            data: entries.to_vec(),
        })
    }

    /// Cube of the algebra whose left multiplication by `e_i` is `mats[i]`.
    pub fn from_left_matrices(mats: &[Matrix]) -> Self {
        let n = mats.len();
        let mut c = Self {
            p: mats[0].p(),
            n,
            data: vec![0; n * n * n],
        };
        for (i, a) in mats.iter().enumerate() {
            for j in 0..n {
                for k in 0..n {
                    c.set(i, j, k, a.get(k, j));
                }
            }
        }
        c
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("validated at construction")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u8 {
        self.data[(i * self.n + j) * self.n + k]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: u8) {
        self.data[(i * self.n + j) * self.n + k] = v;
    }

    /// Matrix of `y ↦ e_i * y`.
    pub fn left_basis_matrix(&self, i: usize) -> Matrix {
        let mut m = Matrix::zero(self.field(), self.n).unwrap();
        for j in 0..self.n {
            for k in 0..self.n {
                m.set(k, j, self.get(i, j, k));
            }
        }
        m
    }

    /// Matrix of `x ↦ x * e_j`.
    pub fn right_basis_matrix(&self, j: usize) -> Matrix {
        let mut m = Matrix::zero(self.field(), self.n).unwrap();
        for i in 0..self.n {
            for k in 0..self.n {
                m.set(k, i, self.get(i, j, k));
            }
        }
        m
    }

    pub fn left_basis_matrices(&self) -> Vec<Matrix> {
        (0..self.n).map(|i| self.left_basis_matrix(i)).collect()
    }

    pub fn left_matrix(&self, a: &Coords) -> Matrix {
        combine(self.field(), &self.left_basis_matrices(), a)
    }

    pub fn right_matrix(&self, b: &Coords) -> Matrix {
        let rights: Vec<Matrix> = (0..self.n).map(|j| self.right_basis_matrix(j)).collect();
        combine(self.field(), &rights, b)
    }

    pub fn multiply(&self, a: &Coords, b: &Coords) -> Coords {
        let f = self.field();
        let mut out = [0u8; crate::gf::MAX_DIM];
        for i in 0..self.n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                let s = f.mul(a[i], b[j]);
                if s == 0 {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate().take(self.n) {
                    *o = f.add(*o, f.mul(s, self.get(i, j, k)));
                }
            }
        }
        out
    }

    /// True iff `e_1` is a two-sided identity.
    pub fn has_unit_first(&self) -> bool {
        (0..self.n).all(|j| {
            (0..self.n).all(|k| {
                let d = u8::from(j == k);
                self.get(0, j, k) == d && self.get(j, 0, k) == d
            })
        })
    }

    /// No zero divisors: every `L_a`, `a ≠ 0`, is invertible. For a finite
    /// algebra this also makes every `R_b` bijective.
    pub fn is_presemifield(&self) -> bool {
        let lefts = self.left_basis_matrices();
        let f = self.field();
        projective_points(self.p, self.n)
            .iter()
            .all(|a| combine(f, &lefts, a).is_invertible())
    }
}

impl fmt::Debug for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cube[GF({})^{}]{:?}", self.p, self.n, self.data)
    }
}

/// `Σ a_i mats[i]`.
pub fn combine(field: PrimeField, mats: &[Matrix], a: &Coords) -> Matrix {
    let n = mats[0].dim();
    let mut acc = Matrix::zero(field, n).unwrap();
    for (m, &x) in mats.iter().zip(a) {
        match x {
            0 => {}
            1 => acc = acc.add(m),
            _ => acc = acc.add(&m.scale(x)),
        }
    }
    acc
}

/// A permutation of the three cube axes, as 0-based images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm3(pub [u8; 3]);

impl Perm3 {
    pub const IDENTITY: Perm3 = Perm3([0, 1, 2]);

    /// All six permutations, in lexicographic order of their image lists.
    pub fn all() -> [Perm3; 6] {
        [
            Perm3([0, 1, 2]),
            Perm3([0, 2, 1]),
            Perm3([1, 0, 2]),
            Perm3([1, 2, 0]),
            Perm3([2, 0, 1]),
            Perm3([2, 1, 0]),
        ]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm3) -> Perm3 {
        Perm3([
            self.0[other.0[0] as usize],
            self.0[other.0[1] as usize],
            self.0[other.0[2] as usize],
        ])
    }
}

impl fmt::Display for Perm3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}{}{}]", self.0[0] + 1, self.0[1] + 1, self.0[2] + 1)
    }
}

/// `result[i_1][i_2][i_3] = C[i_σ(1)][i_σ(2)][i_σ(3)]`. Satisfies
/// `T_σ ∘ T_τ = T_{σ∘τ}`.
pub fn sigma_transform(cube: &Cube, sigma: Perm3) -> Cube {
    let n = cube.n;
    let mut out = Cube {
        p: cube.p,
        n,
        data: vec![0; n * n * n],
    };
    let mut idx = [0usize; 3];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                idx[0] = a;
                idx[1] = b;
                idx[2] = c;
                let v = cube.get(
                    idx[sigma.0[0] as usize],
                    idx[sigma.0[1] as usize],
                    idx[sigma.0[2] as usize],
                );
                out.set(a, b, c, v);
            }
        }
    }
    out
}

/// A triple `(F, G, H)` of invertible linear maps with `H(ab) = F(a)G(b)`
/// between the source and target algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Isotopy {
    pub f: Matrix,
    pub g: Matrix,
    pub h: Matrix,
}

impl Isotopy {
    pub fn new(f: Matrix, g: Matrix, h: Matrix) -> Result<Self> {
        if !(f.is_invertible() && g.is_invertible() && h.is_invertible()) {
            return Err(Error::Singular);
        }
        Ok(Self { f, g, h })
    }

    pub fn identity(field: PrimeField, n: usize) -> Result<Self> {
        let i = Matrix::identity(field, n)?;
        Ok(Self { f: i, g: i, h: i })
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Isotopy) -> Isotopy {
        Isotopy {
            f: self.f.mul(&other.f),
            g: self.g.mul(&other.g),
            h: self.h.mul(&other.h),
        }
    }

    pub fn inverse(&self) -> Result<Isotopy> {
        Ok(Isotopy {
            f: self.f.inverse()?,
            g: self.g.inverse()?,
            h: self.h.inverse()?,
        })
    }

    pub fn is_identity(&self) -> bool {
        let i = Matrix::identity(self.f.field(), self.f.dim()).unwrap();
        self.f == i && self.g == i && self.h == i
    }

    /// Checks `H(a*b) = F(a)∘G(b)` on all basis pairs (enough by bilinearity).
    pub fn maps(&self, source: &Cube, target: &Cube) -> bool {
        let n = source.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = self.h.mul_vec(&source.multiply(&unit(i), &unit(j)));
                let rhs = target.multiply(&self.f.column(i), &self.g.column(j));
                lhs[..n] == rhs[..n]
            })
        })
    }
}

/// Cube of `a∘b = H(F⁻¹(a) * G⁻¹(b))`, the image of `cube` under the isotopy.
pub fn apply_isotopy(cube: &Cube, t: &Isotopy) -> Result<Cube> {
    let inv = t.inverse()?;
    Ok(transform_cube(cube, &inv.f, &inv.g, &t.h))
}

/// Left basis matrices of `a∘b = H(F'(a) * G'(b))` given `F' = f_inv`,
/// `G' = g_inv`: `L'_{e_i} = H · L_{F' e_i} · G'`.
pub(crate) fn transform_left_matrices(
    lefts: &[Matrix],
    f_inv: &Matrix,
    g_inv: &Matrix,
    h: &Matrix,
) -> Vec<Matrix> {
    let field = f_inv.field();
    (0..lefts.len())
        .map(|i| h.mul(&combine(field, lefts, &f_inv.column(i)).mul(g_inv)))
        .collect()
}

fn transform_cube(cube: &Cube, f_inv: &Matrix, g_inv: &Matrix, h: &Matrix) -> Cube {
    Cube::from_left_matrices(&transform_left_matrices(
        &cube.left_basis_matrices(),
        f_inv,
        g_inv,
        h,
    ))
}

/// Basis change whose first column is `u` and whose other columns are the
/// unit vectors except `e_k`, `k` the first nonzero coordinate of `u`.
pub fn unit_basis_change(field: PrimeField, n: usize, u: &Coords) -> Result<Matrix> {
    let k = leading_index(n, u).ok_or(Error::ZeroElement)?;
    let mut cols = vec![*u];
    cols.extend((0..n).filter(|&j| j != k).map(unit));
    Matrix::from_columns(field, n, &cols)
}

/// The isotope `a∘b = R_y⁻¹(a) * L_x⁻¹(b)` of a presemifield, rewritten in a
/// basis whose first vector is its identity `x*y`. Returns the new left
/// basis matrices and the isotopy from the input to the result.
pub(crate) fn principal_isotope_matrices(
    lefts: &[Matrix],
    rights_of_y: &Matrix,
    left_of_x: &Matrix,
    xy: &Coords,
) -> Result<(Vec<Matrix>, Isotopy)> {
    let field = left_of_x.field();
    let n = lefts.len();
    let p = unit_basis_change(field, n, xy)?;
    let p_inv = p.inverse()?;
    let ry_inv = rights_of_y.inverse()?;
    let lx_inv = left_of_x.inverse()?;
    let mats = transform_left_matrices(lefts, &ry_inv.mul(&p), &lx_inv.mul(&p), &p_inv);
    let witness = Isotopy {
        f: p_inv.mul(rights_of_y),
        g: p_inv.mul(left_of_x),
        h: p_inv,
    };
    Ok((mats, witness))
}

/// Kaplansky's construction: with `e` the nonzero element of smallest index
/// (that is, `e_1`), `x∘y = R_e⁻¹(x) * L_e⁻¹(y)` has identity `e*e`;
/// rebasing so that `e*e` is the first basis vector gives a standard basis.
/// Returns the basis and an isotopy from `cube` to it.
pub fn semifieldize(cube: &Cube) -> Result<(StandardBasis, Isotopy)> {
    if !cube.is_presemifield() {
        return Err(Error::NotPresemifield);
    }
    let n = cube.dim();
    let e = unit(0);
    let ee = cube.multiply(&e, &e);
    let (mats, iso) = principal_isotope_matrices(
        &cube.left_basis_matrices(),
        &cube.right_matrix(&e),
        &cube.left_matrix(&e),
        &ee,
    )?;
    let basis = StandardBasis::new(mats)?;
    debug_assert_eq!(basis.dim(), n);
    Ok((basis, iso))
}
