use crate::algebra::{char_codes, Algebra, Element, Semifield};
use crate::cube::{self, linear_combinations, unit_basis_change, Isotopy, StandardBasis};
use crate::error::Result;
use crate::gf::{coords_of, index_of, order, projective_points, Coords, Matrix, PrimeField};

/// Multiplication and characteristic-polynomial tables of a semifield in
/// standard form, the working representation for isomorphism tests.
#[derive(Clone, Debug)]
pub struct Tables {
    field: PrimeField,
    n: usize,
    basis: Vec<Matrix>,
    lefts: Vec<Matrix>,
    lcode: Vec<u16>,
    rcode: Vec<u16>,
}

impl Algebra for Tables {
    fn field(&self) -> PrimeField {
        self.field
    }

    fn dim(&self) -> usize {
        self.n
    }

    fn mul(&self, a: &Coords, b: &Coords) -> Coords {
        self.lefts[self.index(a)].mul_vec(b)
    }
}

impl Tables {
    pub fn of(d: &Semifield) -> Self {
        let t = d.char_table();
        Self::from_parts(d.basis().matrices().to_vec(), t.left, t.right)
    }

    fn from_parts(basis: Vec<Matrix>, lcode: Vec<u16>, rcode: Vec<u16>) -> Self {
        let field = basis[0].field();
        let n = basis.len();
        Self {
            lefts: linear_combinations(field, &basis),
            field,
            n,
            basis,
            lcode,
            rcode,
        }
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn standard_basis(&self) -> StandardBasis {
        StandardBasis::new(self.basis.clone()).expect("shape checked at construction")
    }

    pub fn order(&self) -> usize {
        self.lefts.len()
    }

    #[inline]
    pub fn index(&self, c: &Coords) -> Element {
        index_of(self.field.p(), self.n, c)
    }

    #[inline]
    pub fn coords(&self, a: Element) -> Coords {
        coords_of(self.field.p(), self.n, a)
    }

    #[inline]
    pub fn left(&self, a: Element) -> &Matrix {
        &self.lefts[a]
    }

    /// Code of the characteristic polynomial of `L_a`.
    pub fn lcode(&self, a: Element) -> u16 {
        self.lcode[a]
    }

    /// Isomorphism-invariant label of an element: its left and right
    /// characteristic polynomials.
    #[inline]
    pub fn key(&self, a: Element) -> u32 {
        self.lcode[a] as u32 * self.order() as u32 + self.rcode[a] as u32
    }

    /// Sorted element keys: an isomorphism invariant of the semifield.
    pub fn fingerprint(&self) -> Vec<u32> {
        let mut v: Vec<u32> = (1..self.order()).map(|a| self.key(a)).collect();
        v.sort_unstable();
        v
    }
}

/// A principal isotope `D_{x,y}` in standard form, with the isotopy from
/// `D` to it.
#[derive(Clone, Debug)]
pub struct Isotope {
    pub x: Element,
    pub y: Element,
    pub tables: Tables,
    pub witness: Isotopy,
}

/// Images of every element under a linear map, as element indices.
pub fn image_table(m: &Matrix) -> Vec<Element> {
    let field = m.field();
    let p = field.p() as usize;
    let n = m.dim();
    let total = order(field.p(), n);
    let cols: Vec<Coords> = (0..n).map(|c| m.column(c)).collect();
    let mut img = vec![[0u8; crate::gf::MAX_DIM]; total];
    let mut out = vec![0; total];
    for idx in 1..total {
        let mut t = 0;
        let mut rest = idx;
        while rest % p == 0 {
            rest /= p;
            t += 1;
        }
        let prev = img[idx - p.pow(t as u32)];
        let mut v = prev;
        for r in 0..n {
            v[r] = field.add(v[r], cols[t][r]);
        }
        img[idx] = v;
        out[idx] = index_of(field.p(), n, &v);
    }
    out
}

/// Precomputed data for building the principal isotopes `D_{x,y}` of one
/// semifield over projective representatives `x`, `y`.
///
/// In `D_{x,y}` the left multiplication by `a` is conjugate to
/// `L_c L_x⁻¹` with `c = R_y⁻¹ P a`, and the right multiplication by `b` to
/// `R_c' R_y⁻¹` with `c' = L_x⁻¹ P b`, so both characteristic-polynomial
/// tables come from `left_codes[x]` and `right_codes[y]` by relabeling.
pub struct IsotopeScanner<'a> {
    d: &'a Semifield,
    points: Vec<Element>,
    left_inv: Vec<Matrix>,
    right_inv: Vec<Matrix>,
    left_codes: Vec<Vec<u16>>,
    right_codes: Vec<Vec<u16>>,
}

impl<'a> IsotopeScanner<'a> {
    pub fn new(d: &'a Semifield) -> Self {
        let f = d.field();
        let n = d.dim();
        let points: Vec<Element> = projective_points(f.p(), n)
            .iter()
            .map(|c| index_of(f.p(), n, c))
            .collect();
        let left_inv: Vec<Matrix> = points
            .iter()
            .map(|&x| {
                d.left(x)
                    .inverse()
                    .expect("semifield multiplications are invertible")
            })
            .collect();
        let right_inv: Vec<Matrix> = points
            .iter()
            .map(|&y| {
                d.right(y)
                    .inverse()
                    .expect("semifield multiplications are invertible")
            })
            .collect();
        let codes = |inv: &Matrix, of: &dyn Fn(Element) -> Matrix| -> Vec<u16> {
            let mats: Vec<Matrix> = (0..d.order()).map(|c| of(c).mul(inv)).collect();
            char_codes(f, n, &mats)
        };
        let left_codes = left_inv
            .iter()
            .map(|li| codes(li, &|c| *d.left(c)))
            .collect();
        let right_codes = right_inv
            .iter()
            .map(|ri| codes(ri, &|c| *d.right(c)))
            .collect();
        Self {
            d,
            points,
            left_inv,
            right_inv,
            left_codes,
            right_codes,
        }
    }

    pub fn semifield(&self) -> &Semifield {
        self.d
    }

    /// Projective representatives, in index order.
    pub fn points(&self) -> &[Element] {
        &self.points
    }

    pub fn pair_count(&self) -> usize {
        self.points.len() * self.points.len()
    }

    /// Pair number `k` in lexicographic `(x, y)` order, as point positions.
    pub fn pair(&self, k: usize) -> (usize, usize) {
        (k / self.points.len(), k % self.points.len())
    }

    /// `D_{x,y}` for `x = points[i]`, `y = points[j]`.
    pub fn isotope(&self, i: usize, j: usize) -> Result<Isotope> {
        let d = self.d;
        let (x, y) = (self.points[i], self.points[j]);
        let xy = d.left(x).mul_vec(&d.coords(y));
        let (mats, witness) =
            cube::principal_isotope_matrices(d.basis().matrices(), d.right(y), d.left(x), &xy)?;
        let p = unit_basis_change(d.field(), d.dim(), &xy)?;
        let via_right = image_table(&self.right_inv[j].mul(&p));
        let via_left = image_table(&self.left_inv[i].mul(&p));
        let lcode = via_right.iter().map(|&c| self.left_codes[i][c]).collect();
        let rcode = via_left.iter().map(|&c| self.right_codes[j][c]).collect();
        Ok(Isotope {
            x,
            y,
            tables: Tables::from_parts(mats, lcode, rcode),
            witness,
        })
    }

    pub fn fingerprint(&self, i: usize, j: usize) -> Result<Vec<u32>> {
        Ok(self.isotope(i, j)?.tables.fingerprint())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::PLANES;

    #[test]
    fn isotope_tables_match_direct_computation() {
        let d = PLANES[7].semifield();
        let scan = IsotopeScanner::new(&d);
        for (i, j) in [(0, 0), (3, 17), (120, 5), (64, 64)] {
            let iso = scan.isotope(i, j).unwrap();
            let (e, w) = d.principal_isotope(iso.x, iso.y).unwrap();
            assert_eq!(e.basis().matrices(), iso.tables.basis());
            assert_eq!(w, iso.witness);
            let direct = Tables::of(&e);
            assert_eq!(direct.lcode, iso.tables.lcode);
            assert_eq!(direct.rcode, iso.tables.rcode);
        }
    }

    #[test]
    fn image_table_matches_mul_vec() {
        let d = PLANES[1].semifield();
        let m = *d.left(77);
        let img = image_table(&m);
        for a in 0..243 {
            assert_eq!(img[a], d.index(&m.mul_vec(&d.coords(a))));
        }
    }
}
