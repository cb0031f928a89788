//! Semifields with identity `e_1`: multiplication, nuclei, principal
//! isotopes and generating sets.
//!
//! Elements are addressed by their index `Σ x_i p^i` (see [`crate::gf`]);
//! the identity `e_1` is element 1.

use std::fmt;

use crate::cube::{self, linear_combinations, Cube, Isotopy, StandardBasis};
use crate::error::{Error, Result};
use crate::gf::{coords_of, index_of, order, unit, Coords, Echelon, Matrix, PrimeField};

pub type Element = usize;

/// Anything with a bilinear product on GF(p)^n.
pub trait Algebra {
    fn field(&self) -> PrimeField;
    fn dim(&self) -> usize;
    fn mul(&self, a: &Coords, b: &Coords) -> Coords;
}

/// Monic characteristic-polynomial codes (see [`crate::gf::Poly::monic_code`])
/// of `L_a` and `R_a` for every element `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharTable {
    pub left: Vec<u16>,
    pub right: Vec<u16>,
}

/// Code of the characteristic polynomial of `s·M` from that of `M`:
/// coefficient `k` picks up `s^(n-k)`.
fn scaled_code(field: PrimeField, n: usize, code: u16, s: u8) -> u16 {
    let p = field.p() as u16;
    let mut rest = code;
    let mut out = 0u16;
    let mut place = 1u16;
    for k in 0..n {
        let c = (rest % p) as u8;
        rest /= p;
        let mut pw = 1u8;
        for _ in 0..n - k {
            pw = field.mul(pw, s);
        }
        out += field.mul(c, pw) as u16 * place;
        place *= p;
    }
    out
}

fn code_of(field: PrimeField, m: &Matrix) -> u16 {
    let c = m.char_poly_coeffs();
    let p = field.p() as u16;
    c[..m.dim()]
        .iter()
        .rev()
        .fold(0u16, |acc, &x| acc * p + x as u16)
}

/// Characteristic-polynomial codes for every matrix of `all` (indexed by
/// element), computing only projective representatives directly.
pub fn char_codes(field: PrimeField, n: usize, all: &[Matrix]) -> Vec<u16> {
    let p = field.p();
    let mut codes = vec![0u16; all.len()];
    let lead = |idx: usize| -> u8 {
        let mut r = idx;
        while r % p as usize == 0 {
            r /= p as usize;
        }
        (r % p as usize) as u8
    };
    for (idx, m) in all.iter().enumerate().skip(1) {
        if lead(idx) == 1 {
            codes[idx] = code_of(field, m);
        }
    }
    for idx in 1..all.len() {
        let s = lead(idx);
        if s != 1 {
            let c = coords_of(p, n, idx);
            let rep = index_of(p, n, &crate::gf::scale_coords(field, n, field.inv(s), &c));
            codes[idx] = scaled_code(field, n, codes[rep], s);
        }
    }
    codes
}

impl CharTable {
    pub fn from_left_matrices(lefts: &[Matrix]) -> Self {
        let field = lefts[0].field();
        let n = lefts.len();
        let cube = Cube::from_left_matrices(lefts);
        let rights: Vec<Matrix> = (0..n).map(|j| cube.right_basis_matrix(j)).collect();
        Self {
            left: char_codes(field, n, &linear_combinations(field, lefts)),
            right: char_codes(field, n, &linear_combinations(field, &rights)),
        }
    }
}

/// Orders of the center and nuclei, `(|Z|, |N|, |N_l|, |N_m|, |N_r|)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NucleiProfile {
    pub center: u64,
    pub nucleus: u64,
    pub left: u64,
    pub middle: u64,
    pub right: u64,
}

impl NucleiProfile {
    /// `(|N_l|, |N_m|, |N_r|)`. Isotopies carry each one-sided nucleus onto
    /// the corresponding one; the center and the nucleus are only
    /// isomorphism invariants.
    pub fn one_sided(&self) -> (u64, u64, u64) {
        (self.left, self.middle, self.right)
    }
}

impl fmt::Display for NucleiProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{})",
            self.center, self.nucleus, self.left, self.middle, self.right
        )
    }
}

/// How one element of a spanning sequence is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Word {
    One,
    Gen(usize),
    /// Product of two earlier elements of the sequence.
    Mul(usize, usize),
}

/// Generators together with a spanning sequence built from them by products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    pub elements: Vec<Element>,
    /// `words[k]` describes the k-th vector of a linear basis of the algebra.
    pub words: Vec<Word>,
}

/// Multiplicative closure of `{1} ∪ gens`, as a spanning sequence of the
/// subspace it spans (at most `n` vectors).
pub fn closure<A: Algebra + ?Sized>(alg: &A, gens: &[Coords]) -> (Vec<Coords>, Vec<Word>) {
    let n = alg.dim();
    let mut ech = Echelon::new(alg.field(), n);
    let mut seq = Vec::with_capacity(n);
    let mut words = Vec::with_capacity(n);
    ech.insert(&unit(0));
    seq.push(unit(0));
    words.push(Word::One);
    for (g, v) in gens.iter().enumerate() {
        if ech.insert(v) {
            seq.push(*v);
            words.push(Word::Gen(g));
        }
    }
    let mut k = 0;
    while k < seq.len() && seq.len() < n {
        for u in 0..=k {
            for (a, b) in [(u, k), (k, u)] {
                if seq.len() == n {
                    break;
                }
                let prod = alg.mul(&seq[a], &seq[b]);
                if ech.insert(&prod) {
                    seq.push(prod);
                    words.push(Word::Mul(a, b));
                }
            }
        }
        k += 1;
    }
    (seq, words)
}

/// Greedy generating set: the first single generator in index order if one
/// exists, otherwise repeatedly the element enlarging the closure most.
pub fn generators<A: Algebra + ?Sized>(alg: &A) -> Generators {
    let f = alg.field();
    let n = alg.dim();
    let total = order(f.p(), n);
    let mut chosen: Vec<Coords> = Vec::new();
    let mut elements = Vec::new();
    loop {
        let base = closure(alg, &chosen);
        if base.0.len() == n {
            return Generators {
                elements,
                words: base.1,
            };
        }
        let mut best: Option<(usize, Element)> = None;
        for idx in 1..total {
            let c = coords_of(f.p(), n, idx);
            let mut trial = chosen.clone();
            trial.push(c);
            let dim = closure(alg, &trial).0.len();
            if dim == n {
                best = Some((dim, idx));
                break;
            }
            if best.map_or(true, |(d, _)| dim > d) {
                best = Some((dim, idx));
            }
        }
        let (_, idx) = best.expect("a nonzero element always enlarges a proper closure");
        chosen.push(coords_of(f.p(), n, idx));
        elements.push(idx);
    }
}

/// A semifield in standard form: identity `e_1`, with `L_a` and `R_a`
/// cached for every element.
#[derive(Clone)]
pub struct Semifield {
    basis: StandardBasis,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl fmt::Debug for Semifield {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Semifield")
            .field("basis", &self.basis)
            .finish()
    }
}

impl Algebra for Semifield {
    fn field(&self) -> PrimeField {
        self.basis.field()
    }

    fn dim(&self) -> usize {
        self.basis.dim()
    }

    fn mul(&self, a: &Coords, b: &Coords) -> Coords {
        self.left[index_of(self.field().p(), self.dim(), a)].mul_vec(b)
    }
}

impl Semifield {
    pub fn from_basis(basis: StandardBasis) -> Result<Self> {
        basis
            .validate()
            .map_err(|report| Error::NotSemifield(report.to_string()))?;
        Ok(Self::from_basis_unchecked(basis))
    }

    pub(crate) fn from_basis_unchecked(basis: StandardBasis) -> Self {
        let field = basis.field();
        let cube = basis.to_cube();
        let rights: Vec<Matrix> = (0..basis.dim())
            .map(|j| cube.right_basis_matrix(j))
            .collect();
        Self {
            left: linear_combinations(field, basis.matrices()),
            right: linear_combinations(field, &rights),
            basis,
        }
    }

    /// A cube with identity `e_1` and no zero divisors.
    pub fn from_cube(cube: &Cube) -> Result<Self> {
        if !cube.has_unit_first() {
            return Err(Error::NotSemifield(
                "e_1 is not a two-sided identity".into(),
            ));
        }
        Self::from_basis(StandardBasis::from_cube(cube))
    }

    pub fn basis(&self) -> &StandardBasis {
        &self.basis
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn cube(&self) -> Cube {
        self.basis.to_cube()
    }

    pub fn order(&self) -> usize {
        self.left.len()
    }

    pub fn coords(&self, a: Element) -> Coords {
        coords_of(self.field().p(), self.dim(), a)
    }

    pub fn index(&self, c: &Coords) -> Element {
        index_of(self.field().p(), self.dim(), c)
    }

    pub fn identity(&self) -> Element {
        1
    }

    pub fn left(&self, a: Element) -> &Matrix {
        &self.left[a]
    }

    pub fn right(&self, a: Element) -> &Matrix {
        &self.right[a]
    }

    pub fn multiply(&self, a: Element, b: Element) -> Element {
        self.index(&self.left[a].mul_vec(&self.coords(b)))
    }

    pub fn char_table(&self) -> CharTable {
        let field = self.field();
        let n = self.dim();
        CharTable {
            left: char_codes(field, n, &self.left),
            right: char_codes(field, n, &self.right),
        }
    }

    /// `f(a, x, y)` must hold for all basis vectors `x`, `y`; by
    /// bilinearity this covers all elements.
    fn holds_on_basis(&self, a: &Coords, f: impl Fn(&Coords, &Coords, &Coords) -> bool) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| f(a, &unit(i), &unit(j))))
    }

    fn in_left_nucleus(&self, a: &Coords) -> bool {
        self.holds_on_basis(a, |a, x, y| {
            self.mul(&self.mul(a, x), y) == self.mul(a, &self.mul(x, y))
        })
    }

    fn in_middle_nucleus(&self, a: &Coords) -> bool {
        self.holds_on_basis(a, |a, x, y| {
            self.mul(&self.mul(x, a), y) == self.mul(x, &self.mul(a, y))
        })
    }

    fn in_right_nucleus(&self, a: &Coords) -> bool {
        self.holds_on_basis(a, |a, x, y| {
            self.mul(&self.mul(x, y), a) == self.mul(x, &self.mul(y, a))
        })
    }

    fn commutes_with_all(&self, a: &Coords) -> bool {
        (0..self.dim()).all(|i| self.mul(a, &unit(i)) == self.mul(&unit(i), a))
    }

    /// Exhaustive scan over all elements; each membership test stops at the
    /// first failing basis pair.
    pub fn nuclei(&self) -> NucleiProfile {
        let mut prof = NucleiProfile {
            center: 0,
            nucleus: 0,
            left: 0,
            middle: 0,
            right: 0,
        };
        for idx in 0..self.order() {
            let a = self.coords(idx);
            let l = self.in_left_nucleus(&a);
            let m = self.in_middle_nucleus(&a);
            let r = self.in_right_nucleus(&a);
            prof.left += l as u64;
            prof.middle += m as u64;
            prof.right += r as u64;
            if l && m && r {
                prof.nucleus += 1;
                if self.commutes_with_all(&a) {
                    prof.center += 1;
                }
            }
        }
        prof
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.mul(&unit(i), &unit(j)) == self.mul(&unit(j), &unit(i))))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| self.in_left_nucleus(&unit(i)))
    }

    /// The principal isotope `a∘b = R_y⁻¹(a) * L_x⁻¹(b)`, whose identity is
    /// `x*y`, rebased so that its identity is `e_1`. Also returns the
    /// isotopy from `self` to the result.
    pub fn principal_isotope(&self, x: Element, y: Element) -> Result<(Semifield, Isotopy)> {
        if x == 0 || y == 0 || x >= self.order() || y >= self.order() {
            return Err(Error::ZeroElement);
        }
        let xy = self.left[x].mul_vec(&self.coords(y));
        let (mats, iso) = cube::principal_isotope_matrices(
            self.basis.matrices(),
            &self.right[y],
            &self.left[x],
            &xy,
        )?;
        Ok((
            Semifield::from_basis_unchecked(StandardBasis::new(mats)?),
            iso,
        ))
    }

    pub fn generators(&self) -> Generators {
        generators(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Poly;

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    fn plane(codes: &[u128]) -> Semifield {
        Semifield::from_basis(StandardBasis::from_codes(f3(), 5, codes).unwrap()).unwrap()
    }

    /// GF(3^5) as the algebra of polynomials in the companion matrix:
    /// basis 1, t, ..., t^4 with left multiplication by t^i = C^i.
    fn field_from_companion(f: &Poly) -> Semifield {
        let c = f.companion().unwrap();
        let n = c.dim();
        let mut mats = vec![Matrix::identity(c.field(), n).unwrap()];
        for i in 1..n {
            mats.push(mats[i - 1].mul(&c));
        }
        Semifield::from_basis(StandardBasis::new(mats).unwrap()).unwrap()
    }

    #[test]
    fn identity_and_zero() {
        let d = plane(&[129317636, 14673002, 1139489406, 3073918154]);
        for b in 0..243 {
            assert_eq!(d.multiply(1, b), b);
            assert_eq!(d.multiply(b, 1), b);
            assert_eq!(d.multiply(b, 0), 0);
        }
    }

    #[test]
    fn multiply_matches_cube() {
        let d = plane(&[129317781, 52757047, 20739470, 3274303432]);
        let c = d.cube();
        for i in 0..5 {
            for j in 0..5 {
                let prod = d.mul(&unit(i), &unit(j));
                for k in 0..5 {
                    assert_eq!(prod[k], c.get(i, j, k));
                }
            }
        }
    }

    #[test]
    fn companion_field_is_a_field() {
        let d = field_from_companion(&Poly::new(f3(), &[2, 2, 0, 0, 0, 1]).unwrap());
        assert!(d.is_commutative());
        assert!(d.is_associative());
        let nuc = d.nuclei();
        assert_eq!(
            nuc,
            NucleiProfile {
                center: 243,
                nucleus: 243,
                left: 243,
                middle: 243,
                right: 243
            }
        );
        let g = d.generators();
        assert_eq!(g.elements.len(), 1);
    }

    #[test]
    fn prime_field_generates_itself_only() {
        let d = plane(&[129317636, 14673002, 1139489406, 3073918154]);
        let (seq, _) = closure(&d, &[]);
        assert_eq!(seq.len(), 1);
        let (seq, _) = closure(&d, &[coords_of(3, 5, 2)]);
        assert_eq!(seq.len(), 1);
    }

    #[test]
    fn principal_isotope_basics() {
        let d = plane(&[129317636, 14673002, 1139489406, 3073918154]);
        let (same, iso) = d.principal_isotope(1, 1).unwrap();
        assert_eq!(same.basis(), d.basis());
        assert!(iso.is_identity());
        assert!(d.principal_isotope(0, 5).is_err());
        for (x, y) in [(4, 17), (100, 3), (242, 242)] {
            let (e, iso) = d.principal_isotope(x, y).unwrap();
            assert_eq!(e.basis().validate(), Ok(()));
            assert!(iso.maps(&d.cube(), &e.cube()));
            // the identity of the unnormalized isotope is x*y
            assert_eq!(iso.h.mul_vec(&d.coords(d.multiply(x, y))), unit(0));
        }
    }

    #[test]
    fn char_table_matches_direct_char_polys() {
        let d = plane(&[129317638, 44994959, 28587138, 1226007534]);
        let t = d.char_table();
        for a in [1usize, 2, 5, 6, 100, 200, 242] {
            assert_eq!(
                t.left[a] as usize,
                d.left(a).char_poly().monic_code().unwrap()
            );
            assert_eq!(
                t.right[a] as usize,
                d.right(a).char_poly().monic_code().unwrap()
            );
        }
        assert_eq!(CharTable::from_left_matrices(d.basis().matrices()), t);
    }

    #[test]
    fn rejects_invalid_bases() {
        let b = StandardBasis::from_codes(f3(), 5, &[0, 0, 0, 0]).unwrap();
        assert!(Semifield::from_basis(b).is_err());
    }
}
