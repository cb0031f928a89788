use std::collections::HashMap;

use super::tables::Tables;
use crate::algebra::{closure, Algebra, Element, Word};
use crate::gf::{unit, Coords, Matrix};

/// Generators of a semifield chosen to make isomorphism search cheap: each
/// generator's key class (elements sharing its characteristic polynomials)
/// is as small as possible.
#[derive(Clone, Debug)]
pub struct IsoPlan {
    pub generators: Vec<Element>,
    words: Vec<Word>,
    /// Keys of the spanning sequence in the source.
    keys: Vec<u32>,
    seq_inv: Matrix,
}

impl IsoPlan {
    pub fn new(t: &Tables) -> Self {
        let n = t.dim();
        let mut class_size: HashMap<u32, usize> = HashMap::new();
        for a in 1..t.order() {
            *class_size.entry(t.key(a)).or_default() += 1;
        }
        let mut by_rarity: Vec<Element> = (2..t.order()).collect();
        by_rarity.sort_by_key(|&a| (class_size[&t.key(a)], a));

        let single = by_rarity
            .iter()
            .copied()
            .find(|&a| closure(t, &[t.coords(a)]).0.len() == n);
        let generators = match single {
            Some(a) => vec![a],
            None => {
                let mut gens: Vec<Element> = Vec::new();
                let mut dim = 1;
                while dim < n {
                    let mut coords: Vec<Coords> = gens.iter().map(|&g| t.coords(g)).collect();
                    coords.push([0; crate::gf::MAX_DIM]);
                    let next = by_rarity
                        .iter()
                        .copied()
                        .find(|&a| {
                            *coords.last_mut().unwrap() = t.coords(a);
                            closure(t, &coords).0.len() > dim
                        })
                        .expect("the whole space is spanned by the elements");
                    gens.push(next);
                    coords.pop();
                    coords.push(t.coords(next));
                    dim = closure(t, &coords).0.len();
                }
                gens
            }
        };
        let gen_coords: Vec<Coords> = generators.iter().map(|&g| t.coords(g)).collect();
        let (seq, words) = closure(t, &gen_coords);
        let keys = seq.iter().map(|v| t.key(t.index(v))).collect();
        let s = Matrix::from_columns(t.field(), n, &seq).expect("dimension checked");
        Self {
            generators,
            words,
            keys,
            seq_inv: s.inverse().expect("spanning sequence is a basis"),
        }
    }
}

/// Checks `φ(e_i * e_j) = φ(e_i) ∘ φ(e_j)` on all basis pairs.
pub fn is_homomorphism(phi: &Matrix, src: &Tables, dst: &Tables) -> bool {
    let n = src.dim();
    let images: Vec<Coords> = (0..n).map(|i| phi.column(i)).collect();
    (0..n).all(|i| {
        let li = dst.left(dst.index(&images[i]));
        (0..n).all(|j| {
            let lhs = phi.mul_vec(&src.mul(&unit(i), &unit(j)));
            let rhs = li.mul_vec(&images[j]);
            lhs[..n] == rhs[..n]
        })
    })
}

/// Linear bijections `φ` with `φ(a*b) = φ(a)∘φ(b)` from `src` to `dst`, up
/// to `limit` of them, in the order of their generator images.
pub fn isomorphisms_with(
    src: &Tables,
    plan: &IsoPlan,
    dst: &Tables,
    limit: Option<usize>,
) -> Vec<Matrix> {
    let n = src.dim();
    let mut out = Vec::new();
    let candidates: Vec<Vec<Element>> = plan
        .generators
        .iter()
        .map(|&g| {
            let key = src.key(g);
            (1..dst.order()).filter(|&b| dst.key(b) == key).collect()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return out;
    }
    let mut choice = vec![0usize; candidates.len()];
    let mut seq = vec![[0u8; crate::gf::MAX_DIM]; n];
    'outer: loop {
        let mut ok = true;
        for (k, w) in plan.words.iter().enumerate() {
            let v = match *w {
                Word::One => unit(0),
                Word::Gen(g) => dst.coords(candidates[g][choice[g]]),
                Word::Mul(a, b) => dst.mul(&seq[a], &seq[b]),
            };
            if dst.key(dst.index(&v)) != plan.keys[k] {
                ok = false;
                break;
            }
            seq[k] = v;
        }
        if ok {
            let t = Matrix::from_columns(src.field(), n, &seq).expect("dimension checked");
            if t.is_invertible() {
                let phi = t.mul(&plan.seq_inv);
                if is_homomorphism(&phi, src, dst) {
                    out.push(phi);
                    if limit.is_some_and(|l| out.len() >= l) {
                        break 'outer;
                    }
                }
            }
        }
        // odometer over candidate tuples
        let mut g = candidates.len();
        loop {
            if g == 0 {
                break 'outer;
            }
            g -= 1;
            choice[g] += 1;
            if choice[g] < candidates[g].len() {
                break;
            }
            choice[g] = 0;
        }
    }
    out
}

pub fn isomorphisms(src: &Tables, dst: &Tables) -> Vec<Matrix> {
    isomorphisms_with(src, &IsoPlan::new(src), dst, None)
}

pub fn is_isomorphic(src: &Tables, dst: &Tables) -> bool {
    !isomorphisms_with(src, &IsoPlan::new(src), dst, Some(1)).is_empty()
}

pub fn aut_order(t: &Tables) -> u64 {
    isomorphisms(t, t).len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Semifield;
    use crate::fixtures::PLANES;
    use crate::gf::PrimeField;

    fn tables(k: usize) -> Tables {
        Tables::of(&PLANES[k].semifield())
    }

    /// All unit-preserving maps determined by the image of one generator,
    /// tried without any key filter.
    fn brute_force_auts(t: &Tables, g: Element) -> usize {
        let n = t.dim();
        let (seq, words) = closure(t, &[t.coords(g)]);
        assert_eq!(seq.len(), n);
        let s = Matrix::from_columns(t.field(), n, &seq)
            .unwrap()
            .inverse()
            .unwrap();
        let mut count = 0;
        for b in 2..t.order() {
            let mut img = vec![[0u8; 6]; n];
            for (k, w) in words.iter().enumerate() {
                img[k] = match *w {
                    Word::One => unit(0),
                    Word::Gen(_) => t.coords(b),
                    Word::Mul(x, y) => t.mul(&img[x], &img[y]),
                };
            }
            let m = Matrix::from_columns(t.field(), n, &img).unwrap();
            if m.is_invertible() && is_homomorphism(&m.mul(&s), t, t) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn field_has_five_automorphisms() {
        let t = tables(0);
        let auts = isomorphisms(&t, &t);
        assert_eq!(auts.len(), 5);
        assert_eq!(brute_force_auts(&t, 3), 5);
        // Frobenius: x -> x^3
        let frob: Vec<Coords> = (0..5)
            .map(|i| {
                let e = unit(i);
                t.mul(&e, &t.mul(&e, &e))
            })
            .collect();
        let frob = Matrix::from_columns(PrimeField::new(3).unwrap(), 5, &frob).unwrap();
        assert!(auts.contains(&frob));
        assert!(auts.contains(&Matrix::identity(PrimeField::new(3).unwrap(), 5).unwrap()));
    }

    #[test]
    fn automorphism_counts_agree_with_brute_force() {
        for k in [1, 3, 7] {
            let t = tables(k);
            let g = IsoPlan::new(&t).generators[0];
            assert_eq!(
                aut_order(&t) as usize,
                brute_force_auts(&t, g),
                "{}",
                PLANES[k].label
            );
        }
    }

    #[test]
    fn distinct_planes_are_not_isomorphic() {
        assert!(!is_isomorphic(&tables(7), &tables(8)));
        assert!(!is_isomorphic(&tables(3), &tables(4)));
        assert!(is_isomorphic(&tables(8), &tables(8)));
    }

    #[test]
    fn isomorphic_copy_under_basis_change() {
        // conjugate plane IV by a basis change fixing e_1
        let d = PLANES[3].semifield();
        let f = d.field();
        let cols = [
            unit(0),
            [1, 1, 0, 0, 0, 0],
            [0, 2, 1, 0, 0, 0],
            [2, 0, 0, 1, 1, 0],
            [0, 0, 1, 0, 1, 0],
        ];
        let q = Matrix::from_columns(f, 5, &cols).unwrap();
        let q_inv = q.inverse().unwrap();
        let mats = crate::cube::transform_left_matrices(d.basis().matrices(), &q_inv, &q_inv, &q);
        let e = Semifield::from_basis(crate::cube::StandardBasis::new(mats).unwrap()).unwrap();
        let src = Tables::of(&d);
        let dst = Tables::of(&e);
        let isos = isomorphisms(&src, &dst);
        assert_eq!(isos.len() as u64, aut_order(&src));
        assert!(isos.contains(&q));
        assert_eq!(src.fingerprint(), dst.fingerprint());
    }
}
