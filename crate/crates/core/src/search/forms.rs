use std::fmt;

use crate::error::Result;
use crate::gf::{Matrix, Poly, PrimeField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum A2Family {
    IrreducibleQuintic,
    BlockDiagonal,
    GenericRootFree,
}

impl fmt::Display for A2Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            A2Family::IrreducibleQuintic => "irreducible-quintic",
            A2Family::BlockDiagonal => "block-diagonal",
            A2Family::GenericRootFree => "generic-root-free",
        })
    }
}

/// A candidate for the second standard-basis matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A2Form {
    pub matrix: Matrix,
    pub char_poly: Poly,
    pub family: A2Family,
}

fn poly(f: PrimeField, c: &[u8]) -> Poly {
    Poly::new(f, c).expect("coefficients are reduced")
}

/// Order 243: the companion matrices of the four irreducible quintics
/// `x^5 + a2 x^3 + a4 x + a5`, then the two block forms for the reducible
/// ones.
fn forms_243() -> Result<Vec<A2Form>> {
    let f = PrimeField::new(3)?;
    let mut out = Vec::with_capacity(6);
    for c in [
        [1, 1, 0, 1, 0, 1],
        [1, 2, 0, 0, 0, 1],
        [2, 1, 0, 1, 0, 1],
        [2, 2, 0, 0, 0, 1],
    ] {
        let cp = poly(f, &c);
        out.push(A2Form {
            matrix: cp.companion()?,
            char_poly: cp,
            family: A2Family::IrreducibleQuintic,
        });
    }
    // (x^3+x^2+x+2)(x^2+2x+2) and (x^3+2x^2+x+1)(x^2+x+2)
    for (cubic, quad) in [([2, 1, 1, 1], [2, 2, 1]), ([1, 1, 2, 1], [2, 1, 1])] {
        let (g, h) = (poly(f, &cubic), poly(f, &quad));
        out.push(A2Form {
            matrix: Matrix::block_diag(&g.companion()?, &h.companion()?)?,
            char_poly: g.mul(&h),
            family: A2Family::BlockDiagonal,
        });
    }
    Ok(out)
}

/// Candidate forms of `A_2`. At order 243 these are the six forms obtained
/// by canonicalization; otherwise one companion matrix per monic degree-`n`
/// polynomial without roots in GF(p), in code order.
///
/// `L_b - λI = L_{b-λ}` is invertible for non-scalar `b`, so the
/// characteristic polynomial of `A_2` never has a root. For `n ≤ 3` a
/// root-free polynomial has no proper factor that could bound the cyclic
/// subspace of `1`, so `{1, b, b*b}` is a basis and `A_2` is exactly the
/// companion matrix: the generic family is complete there.
pub fn a2_candidates(p: u8, n: usize) -> Result<Vec<A2Form>> {
    if (p, n) == (3, 5) {
        return forms_243();
    }
    let f = PrimeField::new(p)?;
    crate::gf::check_dim(n)?;
    let total = (p as usize).pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let cp = Poly::monic_from_code(f, n, code);
        if !cp.has_root() {
            out.push(A2Form {
                matrix: cp.companion()?,
                char_poly: cp,
                family: A2Family::GenericRootFree,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_forms_at_243() {
        let forms = a2_candidates(3, 5).unwrap();
        assert_eq!(forms.len(), 6);
        let irreducible = forms
            .iter()
            .filter(|f| f.char_poly.is_irreducible())
            .count();
        assert_eq!(irreducible, 4);
        assert_eq!(forms[4].char_poly.to_string(), "x^5 + 2x^3 + 1");
        assert_eq!(forms[5].char_poly.to_string(), "x^5 + 2x^3 + 2");
        for form in &forms {
            assert_eq!(form.matrix.char_poly(), form.char_poly);
            assert_eq!(form.matrix.column(0)[..5], [0, 1, 0, 0, 0]);
            assert!(!form.char_poly.has_root());
            let c = form.char_poly.coeffs();
            assert_eq!((c[4], c[2]), (0, 0));
        }
    }

    #[test]
    fn two_forms_over_gf2_cubed() {
        // of the 8 monic cubics over GF(2), x^3+x+1 and x^3+x^2+1 have no root
        let forms = a2_candidates(2, 3).unwrap();
        let names: Vec<String> = forms.iter().map(|f| f.char_poly.to_string()).collect();
        assert_eq!(names, ["x^3 + x + 1", "x^3 + x^2 + 1"]);
    }

    #[test]
    fn generic_counts() {
        // root-free monic cubics over GF(3) are the 8 irreducible ones
        assert_eq!(a2_candidates(3, 3).unwrap().len(), 8);
        assert_eq!(a2_candidates(5, 2).unwrap().len(), 10);
        assert!(a2_candidates(3, 7).is_err());
    }
}
