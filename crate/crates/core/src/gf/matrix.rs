use std::fmt;

use super::naive::{Dense, DenseMatrix};
use super::{check_dim, Coords, Poly, PrimeField, MAX_DIM};
use crate::error::{Error, Result};

/// Low bit of every byte lane.
const LSB: u64 = 0x0101_0101_0101_0101;

/// Dense n×n matrix over GF(p), n ≤ 6, stored as bit planes.
///
/// Entry `(r, c)` lives at bit `8r + c` of each plane; plane `b` holds bit `b`
/// of the entry's binary value. GF(2) uses one plane, GF(3) two (`1 = (1,0)`,
/// `2 = (0,1)`), GF(5) three. One byte lane per row lets row operations run on
/// all rows at once for p = 2 and p = 3; p = 5 goes through [`DenseMatrix`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    p: u8,
    n: u8,
    planes: [u64; 3],
}

#[inline]
fn add3(al: u64, ah: u64, bl: u64, bh: u64) -> (u64, u64) {
    let t = (al | bh) ^ (ah | bl);
    ((ah | bh) ^ t, (al | bl) ^ t)
}

#[inline]
fn byte(x: u64, r: usize) -> u64 {
    (x >> (8 * r)) & 0xFF
}

#[inline]
fn swap_rows(x: u64, a: usize, b: usize) -> u64 {
    let ra = byte(x, a);
    let rb = byte(x, b);
    let cleared = x & !((0xFF << (8 * a)) | (0xFF << (8 * b)));
    cleared | (ra << (8 * b)) | (rb << (8 * a))
}

/// Mask of lanes `>= from`.
#[inline]
fn lanes_from(from: usize) -> u64 {
    if from >= 8 {
        0
    } else {
        !((1u64 << (8 * from)) - 1)
    }
}

impl Matrix {
    #[inline]
    fn raw(p: u8, n: usize, planes: [u64; 3]) -> Self {
        Self {
            p,
            n: n as u8,
            planes,
        }
    }

    pub fn zero(field: PrimeField, n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self::raw(field.p(), n, [0; 3]))
    }

    pub fn identity(field: PrimeField, n: usize) -> Result<Self> {
        check_dim(n)?;
        let mut lo = 0u64;
        for i in 0..n {
            lo |= 1 << (8 * i + i);
        }
        Ok(Self::raw(field.p(), n, [lo, 0, 0]))
    }

    /// Builds a matrix from row slices, validating shape and entries.
    pub fn from_rows<R: AsRef<[u8]>>(field: PrimeField, rows: &[R]) -> Result<Self> {
        let n = rows.len();
        check_dim(n)?;
        let mut m = Self::raw(field.p(), n, [0; 3]);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "row {r} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, field.check(v as u64)?);
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose columns are the given coordinate vectors.
    pub fn from_columns(field: PrimeField, n: usize, cols: &[Coords]) -> Result<Self> {
        check_dim(n)?;
        if cols.len() != n {
            return Err(Error::Shape(format!(
                "{} columns, expected {n}",
                cols.len()
            )));
        }
        let mut m = Self::raw(field.p(), n, [0; 3]);
        for (c, col) in cols.iter().enumerate() {
            for r in 0..n {
                m.set(r, c, field.check(col[r] as u64)?);
            }
        }
        Ok(m)
    }

    pub fn from_dense(d: &DenseMatrix) -> Self {
        let mut m = Self::raw(d.field.p(), d.n, [0; 3]);
        for r in 0..d.n {
            for c in 0..d.n {
                m.set(r, c, d.a[r][c]);
            }
        }
        m
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut a: Dense = [[0; MAX_DIM]; MAX_DIM];
        for (r, row) in a.iter_mut().enumerate().take(self.dim()) {
            for (c, e) in row.iter_mut().enumerate().take(self.dim()) {
                *e = self.get(r, c);
            }
        }
        DenseMatrix::new(self.field(), self.dim(), a)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("validated at construction")
    }

    #[inline]
    pub fn p(&self) -> u8 {
        self.p
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        let bit = 8 * r + c;
        ((self.planes[0] >> bit) & 1
            | ((self.planes[1] >> bit) & 1) << 1
            | ((self.planes[2] >> bit) & 1) << 2) as u8
    }

    /// Sets an entry; `v` must already be reduced mod p.
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!(v < self.p);
        let bit = 8 * r + c;
        for (b, plane) in self.planes.iter_mut().enumerate() {
            *plane = (*plane & !(1 << bit)) | (((v as u64 >> b) & 1) << bit);
        }
    }

    pub fn row(&self, r: usize) -> Coords {
        let mut out = [0; MAX_DIM];
        for (c, e) in out.iter_mut().enumerate().take(self.dim()) {
            *e = self.get(r, c);
        }
        out
    }

    pub fn column(&self, c: usize) -> Coords {
        let mut out = [0; MAX_DIM];
        for (r, e) in out.iter_mut().enumerate().take(self.dim()) {
            *e = self.get(r, c);
        }
        out
    }

    pub fn set_column(&mut self, c: usize, col: &Coords) {
        for r in 0..self.dim() {
            self.set(r, c, col[r]);
        }
    }

    fn same_shape(&self, other: &Self) {
        assert!(
            self.p == other.p && self.n == other.n,
            "matrix shape mismatch: GF({})^{} vs GF({})^{}",
            self.p,
            self.n,
            other.p,
            other.n
        );
    }

    fn map_dense(&self, other: &Self, f: impl Fn(PrimeField, u8, u8) -> u8) -> Self {
        let field = self.field();
        let mut m = Self::raw(self.p, self.dim(), [0; 3]);
        for r in 0..self.dim() {
            for c in 0..self.dim() {
                m.set(r, c, f(field, self.get(r, c), other.get(r, c)));
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_shape(other);
        let [al, ah, _] = self.planes;
        let [bl, bh, _] = other.planes;
        match self.p {
            2 => Self::raw(2, self.dim(), [al ^ bl, 0, 0]),
            3 => {
                let (l, h) = add3(al, ah, bl, bh);
                Self::raw(3, self.dim(), [l, h, 0])
            }
            _ => self.map_dense(other, |f, a, b| f.add(a, b)),
        }
    }

    pub fn neg(&self) -> Self {
        match self.p {
            2 => *self,
            3 => Self::raw(3, self.dim(), [self.planes[1], self.planes[0], 0]),
            _ => self.map_dense(self, |f, a, _| f.neg(a)),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: u8) -> Self {
        match (self.p, s % self.p) {
            (_, 0) => Self::raw(self.p, self.dim(), [0; 3]),
            (_, 1) => *self,
            (3, _) => self.neg(),
            _ => self.map_dense(self, |f, a, _| f.mul(s, a)),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::raw(self.p, self.dim(), [0; 3]);
        for r in 0..self.dim() {
            for c in 0..self.dim() {
                m.set(c, r, self.get(r, c));
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_shape(other);
        let n = self.dim();
        match self.p {
            2 => {
                let a = self.planes[0];
                let mut acc = 0u64;
                for j in 0..n {
                    let mask = ((a >> j) & LSB) * 0xFF;
                    acc ^= mask & (byte(other.planes[0], j) * LSB);
                }
                Self::raw(2, n, [acc, 0, 0])
            }
            3 => {
                let [al, ah, _] = self.planes;
                let (mut cl, mut ch) = (0u64, 0u64);
                for j in 0..n {
                    let m1 = ((al >> j) & LSB) * 0xFF;
                    let m2 = ((ah >> j) & LSB) * 0xFF;
                    if m1 | m2 == 0 {
                        continue;
                    }
                    let rl = byte(other.planes[0], j) * LSB;
                    let rh = byte(other.planes[1], j) * LSB;
                    let xl = (m1 & rl) | (m2 & rh);
                    let xh = (m1 & rh) | (m2 & rl);
                    (cl, ch) = add3(cl, ch, xl, xh);
                }
                Self::raw(3, n, [cl, ch, 0])
            }
            _ => Self::from_dense(&self.to_dense().mul(&other.to_dense())),
        }
    }

    /// Matrix-vector product `M v`.
    pub fn mul_vec(&self, v: &Coords) -> Coords {
        let n = self.dim();
        let mut out = [0u8; MAX_DIM];
        match self.p {
            2 => {
                let mut acc = 0u64;
                for (c, &x) in v.iter().enumerate().take(n) {
                    if x != 0 {
                        acc ^= (self.planes[0] >> c) & LSB;
                    }
                }
                for (r, o) in out.iter_mut().enumerate().take(n) {
                    *o = byte(acc, r) as u8;
                }
            }
            3 => {
                let (mut al, mut ah) = (0u64, 0u64);
                for (c, &x) in v.iter().enumerate().take(n) {
                    let (cl, ch) = ((self.planes[0] >> c) & LSB, (self.planes[1] >> c) & LSB);
                    match x {
                        0 => {}
                        1 => (al, ah) = add3(al, ah, cl, ch),
                        _ => (al, ah) = add3(al, ah, ch, cl),
                    }
                }
                for (r, o) in out.iter_mut().enumerate().take(n) {
                    *o = (byte(al, r) | byte(ah, r) << 1) as u8;
                }
            }
            _ => {
                let f = self.field();
                for (r, o) in out.iter_mut().enumerate().take(n) {
                    let mut s = 0;
                    for (c, &x) in v.iter().enumerate().take(n) {
                        s = f.add(s, f.mul(self.get(r, c), x));
                    }
                    *o = s;
                }
            }
        }
        out
    }

    /// Determinant over GF(p).
    pub fn det(&self) -> u8 {
        match self.p {
            2 => u8::from(self.rank2() == self.dim()),
            3 => self.det3(),
            _ => self.to_dense().det(),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.det() != 0
    }

    pub fn rank(&self) -> usize {
        match self.p {
            2 => self.rank2(),
            3 => self.rank3(),
            _ => self.to_dense().rank(),
        }
    }

    fn rank2(&self) -> usize {
        let n = self.dim();
        let mut x = self.planes[0];
        let mut rank = 0;
        for k in 0..n {
            let cand = (x >> k) & LSB & lanes_from(rank);
            if cand == 0 {
                continue;
            }
            let r = cand.trailing_zeros() as usize / 8;
            if r != rank {
                x = swap_rows(x, r, rank);
            }
            let below = ((x >> k) & LSB & lanes_from(rank + 1)) * 0xFF;
            x ^= below & (byte(x, rank) * LSB);
            rank += 1;
        }
        rank
    }

    fn det3(&self) -> u8 {
        let n = self.dim();
        let [mut lo, mut hi, _] = self.planes;
        let mut det = 1u8;
        for k in 0..n {
            let cand = ((lo | hi) >> k) & LSB & lanes_from(k);
            if cand == 0 {
                return 0;
            }
            let r = cand.trailing_zeros() as usize / 8;
            if r != k {
                lo = swap_rows(lo, r, k);
                hi = swap_rows(hi, r, k);
                det = 3 - det;
            }
            let (mut pl, mut ph) = (byte(lo, k), byte(hi, k));
            if (ph >> k) & 1 == 1 {
                // pivot 2: det *= 2 and normalize the pivot row by 2 = -1
                det = 3 - det;
                std::mem::swap(&mut pl, &mut ph);
            }
            let below = lanes_from(k + 1);
            let m1 = ((lo >> k) & LSB & below) * 0xFF;
            let m2 = ((hi >> k) & LSB & below) * 0xFF;
            if m1 | m2 == 0 {
                continue;
            }
            // row_i -= e_i * pivot_row: e_i = 1 adds -P, e_i = 2 adds P
            let (bl, bh) = (pl * LSB, ph * LSB);
            let xl = (m1 & bh) | (m2 & bl);
            let xh = (m1 & bl) | (m2 & bh);
            (lo, hi) = add3(lo, hi, xl, xh);
        }
        det
    }

    fn rank3(&self) -> usize {
        let n = self.dim();
        let [mut lo, mut hi, _] = self.planes;
        let mut rank = 0;
        for k in 0..n {
            let cand = ((lo | hi) >> k) & LSB & lanes_from(rank);
            if cand == 0 {
                continue;
            }
            let r = cand.trailing_zeros() as usize / 8;
            if r != rank {
                lo = swap_rows(lo, r, rank);
                hi = swap_rows(hi, r, rank);
            }
            let (mut pl, mut ph) = (byte(lo, rank), byte(hi, rank));
            if (ph >> k) & 1 == 1 {
                std::mem::swap(&mut pl, &mut ph);
            }
            let below = lanes_from(rank + 1);
            let m1 = ((lo >> k) & LSB & below) * 0xFF;
            let m2 = ((hi >> k) & LSB & below) * 0xFF;
            let (bl, bh) = (pl * LSB, ph * LSB);
            let xl = (m1 & bh) | (m2 & bl);
            let xh = (m1 & bl) | (m2 & bh);
            (lo, hi) = add3(lo, hi, xl, xh);
            rank += 1;
        }
        rank
    }

    pub fn inverse(&self) -> Result<Self> {
        self.to_dense()
            .inverse()
            .map(|d| Self::from_dense(&d))
            .ok_or(Error::Singular)
    }

    /// Coefficients of `det(xI - M)`, lowest degree first; index `n` holds
    /// the leading 1.
    ///
    /// Laplace expansion along the last row of each leading minor, with the
    /// minors on rows `0..k` memoized by their column subset. No division is
    /// involved.
    pub fn char_poly_coeffs(&self) -> [u8; MAX_DIM + 1] {
        let n = self.dim();
        let p = self.p as i32;
        let a = self.to_dense().a;
        let mut minors = [[0i32; MAX_DIM + 1]; 1 << MAX_DIM];
        minors[0][0] = 1;
        for mask in 1usize..(1 << n) {
            let k = mask.count_ones() as usize;
            let row = k - 1;
            let mut acc = [0i32; MAX_DIM + 1];
            let mut t = 0;
            for c in 0..n {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let sub = &minors[mask & !(1 << c)];
                let negative = (t + row) % 2 == 1;
                let m = a[row][c] as i32;
                // entry of xI - M is (x if row == c) - m
                for d in 0..k {
                    let v = sub[d];
                    if v == 0 {
                        continue;
                    }
                    let constant = -m * v;
                    let (lin, cst) = if negative {
                        (-v, -constant)
                    } else {
                        (v, constant)
                    };
                    acc[d] += cst;
                    if row == c {
                        acc[d + 1] += lin;
                    }
                }
                t += 1;
            }
            let slot = &mut minors[mask];
            for d in 0..=k {
                slot[d] = acc[d].rem_euclid(p);
            }
        }
        let full = &minors[(1 << n) - 1];
        let mut out = [0u8; MAX_DIM + 1];
        for d in 0..=n {
            out[d] = full[d] as u8;
        }
        out
    }

    pub fn char_poly(&self) -> Poly {
        let c = self.char_poly_coeffs();
        Poly::from_coeffs_unchecked(self.p, c[..=self.dim()].to_vec())
    }

    /// Block diagonal `diag(a, b)`.
    pub fn block_diag(a: &Self, b: &Self) -> Result<Self> {
        if a.p != b.p {
            return Err(Error::Shape("block characteristics differ".into()));
        }
        let n = a.dim() + b.dim();
        check_dim(n)?;
        let mut m = Self::raw(a.p, n, [0; 3]);
        for r in 0..a.dim() {
            for c in 0..a.dim() {
                m.set(r, c, a.get(r, c));
            }
        }
        for r in 0..b.dim() {
            for c in 0..b.dim() {
                m.set(a.dim() + r, a.dim() + c, b.get(r, c));
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[GF({})]", self.p)?;
        f.debug_list()
            .entries((0..self.dim()).map(|r| self.row(r)[..self.dim()].to_vec()))
            .finish()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim() {
            let row: Vec<String> = (0..self.dim())
                .map(|c| self.get(r, c).to_string())
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    fn arb_matrix(p: u8, n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(0..p, n * n).prop_map(move |v| {
            let rows: Vec<Vec<u8>> = v.chunks(n).map(|c| c.to_vec()).collect();
            Matrix::from_rows(PrimeField::new(p).unwrap(), &rows).unwrap()
        })
    }

    #[test]
    fn identity_det() {
        for n in 2..=6 {
            for p in [2, 3, 5] {
                let i = Matrix::identity(PrimeField::new(p).unwrap(), n).unwrap();
                assert_eq!(i.det(), 1);
                assert_eq!(i.rank(), n);
                assert_eq!(i.inverse().unwrap(), i);
            }
        }
    }

    #[test]
    fn equal_rows_are_singular() {
        let m = Matrix::from_rows(
            f3(),
            &[
                [1, 2, 0, 1, 1],
                [0, 1, 1, 2, 0],
                [1, 2, 0, 1, 1],
                [2, 2, 2, 0, 1],
                [0, 0, 1, 1, 1],
            ],
        )
        .unwrap();
        assert_eq!(m.det(), 0);
        assert!(m.inverse().is_err());
        assert_eq!(m.rank(), 4);
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(Matrix::from_rows(f3(), &[[0, 3], [1, 1]]).is_err());
        assert!(Matrix::from_rows(f3(), &[vec![0, 1, 2], vec![1, 1]]).is_err());
        assert!(Matrix::from_rows(f3(), &[[1]]).is_err());
    }

    #[test]
    fn char_poly_of_identity_is_x_minus_one_to_the_fifth() {
        // (x - 1)^5 = (x^3 - 1)(x^2 + x + 1) = x^5 + x^4 + x^3 + 2x^2 + 2x + 2 mod 3
        let i = Matrix::identity(f3(), 5).unwrap();
        assert_eq!(i.char_poly_coeffs()[..6], [2, 2, 2, 1, 1, 1]);
    }

    proptest! {
        #[test]
        fn packed_matches_dense(m in arb_matrix(3, 5), k in arb_matrix(3, 5)) {
            let (dm, dk) = (m.to_dense(), k.to_dense());
            prop_assert_eq!(m.det(), dm.det());
            prop_assert_eq!(m.rank(), dm.rank());
            prop_assert_eq!(m.mul(&k), Matrix::from_dense(&dm.mul(&dk)));
        }

        #[test]
        fn packed_matches_dense_gf2(m in arb_matrix(2, 6), k in arb_matrix(2, 6)) {
            let (dm, dk) = (m.to_dense(), k.to_dense());
            prop_assert_eq!(m.det(), dm.det());
            prop_assert_eq!(m.rank(), dm.rank());
            prop_assert_eq!(m.mul(&k), Matrix::from_dense(&dm.mul(&dk)));
        }

        #[test]
        fn inverse_multiplies_back(m in arb_matrix(3, 5)) {
            match m.inverse() {
                Ok(inv) => {
                    prop_assert_ne!(m.det(), 0);
                    prop_assert_eq!(m.mul(&inv), Matrix::identity(f3(), 5).unwrap());
                }
                Err(_) => prop_assert_eq!(m.det(), 0),
            }
        }

        #[test]
        fn mul_vec_matches_column_combination(m in arb_matrix(3, 5), v in proptest::collection::vec(0u8..3, 5)) {
            let f = f3();
            let mut x = [0u8; MAX_DIM];
            x[..5].copy_from_slice(&v);
            let mut expect = [0u8; MAX_DIM];
            for c in 0..5 {
                for r in 0..5 {
                    expect[r] = f.add(expect[r], f.mul(m.get(r, c), x[c]));
                }
            }
            prop_assert_eq!(m.mul_vec(&x), expect);
        }

        #[test]
        fn add_sub_neg(m in arb_matrix(3, 4), k in arb_matrix(3, 4)) {
            prop_assert_eq!(m.add(&k).sub(&k), m);
            prop_assert_eq!(m.add(&m.neg()), Matrix::zero(f3(), 4).unwrap());
            prop_assert_eq!(m.scale(2), m.neg());
        }
    }
}
