use super::forms::{a2_candidates, A2Form};
use crate::algebra::{Element, Semifield};
use crate::classify::IsotopeScanner;
use crate::cube::{apply_isotopy, transform_left_matrices, Isotopy, StandardBasis};
use crate::error::{Error, Result};
use crate::gf::{projective_points, unit, Coords, Matrix, Poly, PrimeField};

/// Evidence for a canonicalization: the element `b` (or `c`) whose left
/// multiplication became `A_2`, and the isotopy from the input to the
/// output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalizationCertificate {
    /// Index of the element, in the input or in the principal isotope.
    pub element: Element,
    /// `(x, y)` of the principal isotope the element lives in; `None` for
    /// the input itself.
    pub isotope: Option<(Element, Element)>,
    /// Characteristic polynomial of `L_element`, `x^5 + ρ_2 x^3 + ρ_4 x + ρ_5`.
    pub char_poly: Poly,
    /// Cubic factor annihilating the identity, in the reducible case.
    pub minimal: Option<Poly>,
    /// Columns are the new basis vectors in the coordinates of the algebra
    /// the element lives in.
    pub basis: Matrix,
    pub isotopy: Isotopy,
    /// Position of the output's `A_2` in [`a2_candidates`]`(3, 5)`.
    pub form_index: usize,
}

/// Whether the coefficients of `x^4` and `x^2` vanish.
fn has_canonical_shape(cp: &Poly) -> bool {
    cp.coeff(4) == 0 && cp.coeff(2) == 0
}

/// Columns `v, L v, L² v, ...` truncated to `k` vectors.
fn krylov(l: &Matrix, v: Coords, k: usize) -> Vec<Coords> {
    let mut out = vec![v];
    while out.len() < k {
        let next = l.mul_vec(out.last().unwrap());
        out.push(next);
    }
    out
}

/// The first nonzero vector of `ker m`, scanning indices in order.
fn first_kernel_vector(m: &Matrix) -> Option<Coords> {
    let f = m.field();
    let n = m.dim();
    projective_points(f.p(), n)
        .into_iter()
        .find(|v| m.mul_vec(v)[..n].iter().all(|&x| x == 0))
}

/// Rewrites the algebra with left matrices `lefts` in the basis `q`,
/// returning the new matrices and the isomorphism onto them.
fn rebase(lefts: &[Matrix], q: &Matrix) -> Result<(Vec<Matrix>, Isotopy)> {
    let q_inv = q.inverse()?;
    let mats = transform_left_matrices(lefts, q, q, &q_inv);
    Ok((
        mats,
        Isotopy {
            f: q_inv,
            g: q_inv,
            h: q_inv,
        },
    ))
}

/// An isotope of `d` whose `A_2` is one of the six forms of
/// [`a2_candidates`]`(3, 5)`.
///
/// The 121 projective elements are scanned for a characteristic polynomial
/// `x^5 + ρ_2 x^3 + ρ_4 x + ρ_5`; the first irreducible one gives the basis
/// `{1, b, b², b*b², b*(b*b²)}` of `d` itself. When every such polynomial
/// is reducible, principal isotopes are scanned in pair order for an element
/// `c` with `g(L_c) 1 = 0`, `g` the cubic factor, and the basis is
/// `{1, c, c², d, c*d}` with `d` spanning `ker h(L_c)` for the quadratic
/// factor `h`.
pub fn canonicalize(d: &Semifield) -> Result<(StandardBasis, CanonicalizationCertificate)> {
    let f = d.field();
    let n = d.dim();
    if (f.p(), n) != (3, 5) {
        return Err(Error::Shape(format!(
            "canonicalization needs order 3^5, got {}^{}",
            f.p(),
            n
        )));
    }
    let forms = a2_candidates(3, 5)?;
    let mut shaped = Vec::new();
    for c in projective_points(f.p(), n) {
        let b = d.index(&c);
        let cp = d.left(b).char_poly();
        if has_canonical_shape(&cp) {
            shaped.push((b, cp));
        }
    }
    if let Some((b, cp)) = shaped.iter().find(|(_, cp)| cp.is_irreducible()) {
        let q = Matrix::from_columns(f, n, &krylov(d.left(*b), unit(0), n))?;
        let (mats, isotopy) = rebase(d.basis().matrices(), &q)?;
        return finish(d, &forms, mats, |form_index| CanonicalizationCertificate {
            element: *b,
            isotope: None,
            char_poly: cp.clone(),
            minimal: None,
            basis: q,
            isotopy,
            form_index,
        });
    }

    let factored: Vec<(u16, Poly, Poly)> = forms
        .iter()
        .filter(|form| !form.char_poly.is_irreducible())
        .map(|form| {
            let (g, h) = cubic_and_quadratic(f, &form.char_poly);
            (form.char_poly.monic_code().unwrap() as u16, g, h)
        })
        .collect();
    let scanner = IsotopeScanner::new(d);
    for k in 0..scanner.pair_count() {
        let (i, j) = scanner.pair(k);
        let iso = scanner.isotope(i, j)?;
        let t = &iso.tables;
        for c in 1..t.order() {
            let code = t.lcode(c);
            let Some((_, g, h)) = factored.iter().find(|(fc, _, _)| *fc == code) else {
                continue;
            };
            let lc = t.left(c);
            if g.eval_matrix(lc).mul_vec(&unit(0))[..n]
                .iter()
                .any(|&x| x != 0)
            {
                continue;
            }
            let dv = first_kernel_vector(&h.eval_matrix(lc))
                .ok_or_else(|| Error::Internal("quadratic factor has trivial kernel".into()))?;
            let mut cols = krylov(lc, unit(0), 3);
            cols.extend(krylov(lc, dv, 2));
            let q = Matrix::from_columns(f, n, &cols)?;
            let (mats, rebased) = rebase(t.basis(), &q)?;
            return finish(d, &forms, mats, |form_index| CanonicalizationCertificate {
                element: c,
                isotope: Some((iso.x, iso.y)),
                char_poly: Poly::monic_from_code(f, n, code as usize),
                minimal: Some(g.clone()),
                basis: q,
                isotopy: rebased.compose(&iso.witness),
                form_index,
            });
        }
    }
    let evidence: Vec<String> = shaped.iter().map(|(b, cp)| format!("{b}: {cp}")).collect();
    Err(Error::Internal(format!(
        "no canonical element found; shaped elements of the input: [{}]",
        evidence.join(", ")
    )))
}

/// Splits a block-form quintic into its monic cubic and quadratic factors.
fn cubic_and_quadratic(f: PrimeField, cp: &Poly) -> (Poly, Poly) {
    for code in 0..9 {
        let h = Poly::monic_from_code(f, 2, code);
        if h.is_irreducible() && h.divides(cp) {
            let (g, _) = cp.div_rem(&h);
            return (g, h);
        }
    }
    unreachable!("block forms are products of an irreducible quadratic and cubic")
}

/// Checks the output against the candidate list and the certificate
/// isotopy against the input.
fn finish(
    d: &Semifield,
    forms: &[A2Form],
    mats: Vec<Matrix>,
    certificate: impl FnOnce(usize) -> CanonicalizationCertificate,
) -> Result<(StandardBasis, CanonicalizationCertificate)> {
    let form_index = forms
        .iter()
        .position(|form| form.matrix == mats[1])
        .ok_or_else(|| Error::Internal(format!("A_2 is not a canonical form:\n{}", mats[1])))?;
    let basis = StandardBasis::new(mats)?;
    basis
        .validate()
        .map_err(|r| Error::Internal(format!("canonical basis does not validate: {r}")))?;
    let cert = certificate(form_index);
    if apply_isotopy(&d.cube(), &cert.isotopy)? != basis.to_cube() {
        return Err(Error::Internal(
            "certificate isotopy does not reproduce the output".into(),
        ));
    }
    Ok((basis, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{is_isotopic, Tables};
    use crate::fixtures::PLANES;

    #[test]
    fn field_takes_an_irreducible_form() {
        let d = PLANES[0].semifield();
        let (basis, cert) = canonicalize(&d).unwrap();
        assert!(cert.isotope.is_none());
        assert!(cert.char_poly.is_irreducible());
        assert!(cert.form_index < 4);
        assert_eq!(basis.matrices()[1].char_poly(), cert.char_poly);
    }

    #[test]
    fn output_is_isotopic_and_stable() {
        let d = PLANES[6].semifield();
        let (basis, cert) = canonicalize(&d).unwrap();
        let e = Semifield::from_basis(basis).unwrap();
        assert!(cert.isotopy.maps(&d.cube(), &e.cube()));
        assert!(is_isotopic(&d, &e).unwrap().is_some());
        let (_, again) = canonicalize(&e).unwrap();
        assert!(again.form_index < 6);
    }

    #[test]
    fn block_form_factors() {
        let f = PrimeField::new(3).unwrap();
        let forms = a2_candidates(3, 5).unwrap();
        for form in &forms[4..] {
            let (g, h) = cubic_and_quadratic(f, &form.char_poly);
            assert_eq!((g.degree(), h.degree()), (Some(3), Some(2)));
            assert_eq!(g.mul(&h), form.char_poly);
        }
    }

    #[test]
    fn wrong_order_is_rejected() {
        let f = PrimeField::new(2).unwrap();
        let i = Matrix::identity(f, 2).unwrap();
        let a2 = Poly::new(f, &[1, 1, 1]).unwrap().companion().unwrap();
        let d = Semifield::from_basis(StandardBasis::new(vec![i, a2]).unwrap()).unwrap();
        assert!(canonicalize(&d).is_err());
    }

    #[test]
    fn shape_test() {
        let f = PrimeField::new(3).unwrap();
        assert!(has_canonical_shape(
            &Poly::new(f, &[1, 1, 0, 1, 0, 1]).unwrap()
        ));
        assert!(!has_canonical_shape(
            &Poly::new(f, &[1, 1, 1, 1, 0, 1]).unwrap()
        ));
    }

    #[test]
    fn lcode_matches_char_poly() {
        let d = PLANES[2].semifield();
        let t = Tables::of(&d);
        assert_eq!(
            Poly::monic_from_code(d.field(), 5, t.lcode(1) as usize),
            d.left(1).char_poly()
        );
    }
}
