//! Brute-force reference for small semifields, sharing no code with the
//! library beyond plain integers: algebras are products on `GF(p)^n` given
//! by the table of `e_i * e_j`, with `e_0` the identity.

use std::collections::BTreeSet;

pub type Vector = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub p: u8,
    pub n: usize,
    /// `basis[i][j] = e_i * e_j`.
    pub basis: Vec<Vec<Vector>>,
}

/// Nonzero vectors whose first nonzero coordinate is 1.
pub fn points(all: &[Vector]) -> Vec<Vector> {
    all.iter()
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .cloned()
        .collect()
}

pub fn vectors(p: u8, n: usize) -> Vec<Vector> {
    let total = (p as usize).pow(n as u32);
    (0..total)
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let d = (k % p as usize) as u8;
                    k /= p as usize;
                    d
                })
                .collect()
        })
        .collect()
}

impl Table {
    pub fn mul(&self, a: &[u8], b: &[u8]) -> Vector {
        let p = self.p as u32;
        let mut out = vec![0u32; self.n];
        for i in 0..self.n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                if b[j] == 0 {
                    continue;
                }
                let s = a[i] as u32 * b[j] as u32;
                for (o, &c) in out.iter_mut().zip(&self.basis[i][j]) {
                    *o += s * c as u32;
                }
            }
        }
        out.into_iter().map(|x| (x % p) as u8).collect()
    }

    /// No zero divisors: `a*b = 0` forces `a = 0` or `b = 0`. Scalars do
    /// not matter, so `points` may hold one vector per line.
    pub fn is_division(&self, points: &[Vector]) -> bool {
        points.iter().all(|a| {
            points
                .iter()
                .all(|b| self.mul(a, b).iter().any(|&x| x != 0))
        })
    }

    /// Every unital table of order `p^n`: `e_0` is a two-sided identity and
    /// the products `e_i * e_j`, `i, j ≥ 1`, range over all vectors.
    pub fn all_unital(p: u8, n: usize) -> impl Iterator<Item = Table> {
        let vs = vectors(p, n);
        let free = (n - 1) * (n - 1);
        let count = vs.len().pow(free as u32);
        let unit = move |i: usize| -> Vector { (0..n).map(|k| u8::from(k == i)).collect() };
        (0..count).map(move |mut code| {
            let mut basis = vec![vec![Vec::new(); n]; n];
            for i in 0..n {
                basis[0][i] = unit(i);
                basis[i][0] = unit(i);
            }
            for i in 1..n {
                for j in 1..n {
                    basis[i][j] = vs[code % vs.len()].clone();
                    code /= vs.len();
                }
            }
            Table { p, n, basis }
        })
    }

    /// Sizes of the left, middle and right nuclei.
    pub fn nuclei(&self, all: &[Vector]) -> (usize, usize, usize) {
        let assoc = |a: &Vector, b: &Vector, c: &Vector| {
            self.mul(&self.mul(a, b), c) == self.mul(a, &self.mul(b, c))
        };
        let count = |pos: usize| {
            all.iter()
                .filter(|x| {
                    all.iter().all(|y| {
                        all.iter().all(|z| match pos {
                            0 => assoc(x, y, z),
                            1 => assoc(y, x, z),
                            _ => assoc(y, z, x),
                        })
                    })
                })
                .count()
        };
        (count(0), count(1), count(2))
    }
}

/// Column-major `n × n` matrices as functions on vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Map {
    pub p: u8,
    pub cols: Vec<Vector>,
}

impl Map {
    pub fn apply(&self, v: &[u8]) -> Vector {
        let n = self.cols.len();
        let mut out = vec![0u32; n];
        for (c, &x) in self.cols.iter().zip(v) {
            for (o, &y) in out.iter_mut().zip(c) {
                *o += x as u32 * y as u32;
            }
        }
        out.into_iter().map(|x| (x % self.p as u32) as u8).collect()
    }

    /// The bijections of `GF(p)^n`, found by listing column tuples whose
    /// images cover the space.
    pub fn all_invertible(p: u8, n: usize) -> Vec<Map> {
        let vs = vectors(p, n);
        let mut out = Vec::new();
        let mut cols = Vec::with_capacity(n);
        fn rec(p: u8, n: usize, vs: &[Vector], cols: &mut Vec<Vector>, out: &mut Vec<Map>) {
            if cols.len() == n {
                let m = Map {
                    p,
                    cols: cols.clone(),
                };
                let image: BTreeSet<Vector> = vs.iter().map(|v| m.apply(v)).collect();
                if image.len() == vs.len() {
                    out.push(m);
                }
                return;
            }
            for v in vs.iter().skip(1) {
                cols.push(v.clone());
                rec(p, n, vs, cols, out);
                cols.pop();
            }
        }
        rec(p, n, &vs, &mut cols, &mut out);
        out
    }

    /// Inverse by table lookup over all vectors.
    pub fn inverse(&self, all: &[Vector]) -> Map {
        let n = self.cols.len();
        let cols = (0..n)
            .map(|i| {
                let e: Vector = (0..n).map(|k| u8::from(k == i)).collect();
                all.iter().find(|v| self.apply(v) == e).unwrap().clone()
            })
            .collect();
        Map { p: self.p, cols }
    }
}

/// Whether some `(F, G, H)` has `H(a*b) = F(a)∘G(b)` from `s` to `t`.
///
/// Putting `b = 1` gives `H = R_{g}F` with `g = G(1)`, and `a = 1` gives
/// `G = L_{F(1)}⁻¹ H`, so `F` and `g` determine the triple.
pub fn isotopic(s: &Table, t: &Table, gl: &[Map], all: &[Vector]) -> bool {
    let n = s.n;
    let unit = |i: usize| -> Vector { (0..n).map(|k| u8::from(k == i)).collect() };
    let left_of = |a: &Vector| Map {
        p: t.p,
        cols: (0..n).map(|j| t.mul(a, &unit(j))).collect(),
    };
    for f in gl {
        let f1 = f.apply(&unit(0));
        let lf1_inv = left_of(&f1).inverse(all);
        for g in all.iter().skip(1) {
            let h_cols: Vec<Vector> = (0..n).map(|i| t.mul(&f.apply(&unit(i)), g)).collect();
            let h = Map {
                p: t.p,
                cols: h_cols,
            };
            let g_map = Map {
                p: t.p,
                cols: h.cols.iter().map(|c| lf1_inv.apply(c)).collect(),
            };
            let ok = (0..n).all(|i| {
                (0..n).all(|j| {
                    h.apply(&s.basis[i][j]) == t.mul(&f.apply(&unit(i)), &g_map.apply(&unit(j)))
                })
            });
            if ok {
                return true;
            }
        }
    }
    false
}

/// Table of a library standard basis given as `A_i` columns: `e_i * e_j` is
/// column `j` of `A_i`.
pub fn from_columns(p: u8, n: usize, cols: impl Fn(usize, usize) -> Vector) -> Table {
    Table {
        p,
        n,
        basis: (0..n)
            .map(|i| (0..n).map(|j| cols(i, j)).collect())
            .collect(),
    }
}
