use std::collections::{BTreeMap, HashSet};
use std::fmt;

use petgraph::unionfind::UnionFind;

use super::scan::PrincipalScan;
use super::tables::image_table;
use crate::algebra::{Algebra, Semifield};
use crate::cube::Isotopy;
use crate::error::{Error, Result};
use crate::gf::unit;

pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct AutotopismGroup {
    pub order: u64,
    /// `None` when the order exceeds the materialization cap.
    pub elements: Option<Vec<Isotopy>>,
}

/// `H(a*b) = F(a)*G(b)` on all basis pairs.
pub fn is_autotopism(d: &Semifield, t: &Isotopy) -> bool {
    let n = d.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let lhs = t.h.mul_vec(&d.mul(&unit(i), &unit(j)));
            let rhs = d.mul(&t.f.column(i), &t.g.column(j));
            lhs[..n] == rhs[..n]
        })
    })
}

/// All autotopisms, from the isomorphisms `φ : D → D_{x,y}` with
/// witness `W : D → D_{x,y}`: `(F,G,H) = W⁻¹ ∘ (φ,φ,φ)`, then scaled to
/// `(λF, μG, λμH)` for the non-projective pairs.
pub fn autotopism_group(scan: &PrincipalScan, cap: u64) -> Result<AutotopismGroup> {
    let d = scan.semifield();
    let f = d.field();
    let selves = scan.self_isotopes()?;
    let order = selves
        .iter()
        .map(|s| s.isomorphisms.len() as u64)
        .sum::<u64>()
        * scan.scalar_factor();
    if order > cap {
        return Ok(AutotopismGroup {
            order,
            elements: None,
        });
    }
    let mut elements = Vec::with_capacity(order as usize);
    for s in &selves {
        let w_inv = s.witness.inverse()?;
        for phi in &s.isomorphisms {
            let base = w_inv.compose(&Isotopy {
                f: *phi,
                g: *phi,
                h: *phi,
            });
            for lambda in 1..f.p() {
                for mu in 1..f.p() {
                    elements.push(Isotopy {
                        f: base.f.scale(lambda),
                        g: base.g.scale(mu),
                        h: base.h.scale(f.mul(lambda, mu)),
                    });
                }
            }
        }
    }
    if let Some(bad) = elements.iter().position(|t| !is_autotopism(d, t)) {
        return Err(Error::Internal(format!(
            "autotopism {bad} fails the defining identity"
        )));
    }
    let set: HashSet<&Isotopy> = elements.iter().collect();
    if set.len() != elements.len() {
        return Err(Error::Internal("duplicate autotopisms".into()));
    }
    // closure on a deterministic sample of products
    let m = elements.len();
    let step = (m / 64).max(1);
    for a in (0..m).step_by(step) {
        for b in (0..m).step_by(step) {
            if !set.contains(&elements[a].compose(&elements[b])) {
                return Err(Error::Internal(
                    "autotopisms not closed under composition".into(),
                ));
            }
        }
    }
    Ok(AutotopismGroup {
        order,
        elements: Some(elements),
    })
}

/// Orbit lengths on one side of the fundamental triangle: `length → count`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitStructure(pub BTreeMap<u64, u64>);

impl OrbitStructure {
    pub fn points(&self) -> u64 {
        self.0.iter().map(|(l, c)| l * c).sum()
    }

    pub fn fixed_points(&self) -> u64 {
        self.0.get(&1).copied().unwrap_or(0)
    }
}

impl fmt::Display for OrbitStructure {
    /// `a[b]+...`: `a` orbits of length `b`, in increasing length.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(l, c)| format!("{c}[{l}]")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl std::str::FromStr for OrbitStructure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for part in s.split('+') {
            let bad = || Error::Parse(format!("orbit term {part:?}"));
            let (count, rest) = part.trim().split_once('[').ok_or_else(bad)?;
            let len = rest.strip_suffix(']').ok_or_else(bad)?;
            let count: u64 = count.parse().map_err(|_| bad())?;
            let len: u64 = len.parse().map_err(|_| bad())?;
            *map.entry(len).or_insert(0) += count;
        }
        Ok(Self(map))
    }
}

/// Orbits on the sides `(L_x, L_∞, L_y)`: `G`, `F` and `H` acting on the
/// elements, plus the fixed vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriangleOrbits {
    pub sides: [OrbitStructure; 3],
}

impl fmt::Display for TriangleOrbits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{}", self.sides[0], self.sides[1], self.sides[2])
    }
}

fn orbits_of<'a>(
    total: usize,
    maps: impl Iterator<Item = &'a crate::gf::Matrix>,
) -> OrbitStructure {
    let mut uf = UnionFind::<usize>::new(total);
    for m in maps {
        for (a, b) in image_table(m).into_iter().enumerate() {
            uf.union(a, b);
        }
    }
    let mut sizes: BTreeMap<usize, u64> = BTreeMap::new();
    for label in uf.into_labeling() {
        *sizes.entry(label).or_insert(0) += 1;
    }
    let mut out = BTreeMap::new();
    for len in sizes.into_values() {
        *out.entry(len).or_insert(0) += 1;
    }
    // the vertex
    *out.entry(1).or_insert(0) += 1;
    OrbitStructure(out)
}

pub fn triangle_orbits(d: &Semifield, group: &AutotopismGroup) -> Result<TriangleOrbits> {
    let elements = group.elements.as_ref().ok_or_else(|| {
        Error::Internal(format!(
            "autotopism group of order {} not materialized",
            group.order
        ))
    })?;
    let total = d.order();
    Ok(TriangleOrbits {
        sides: [
            orbits_of(total, elements.iter().map(|t| &t.g)),
            orbits_of(total, elements.iter().map(|t| &t.f)),
            orbits_of(total, elements.iter().map(|t| &t.h)),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::PLANES;

    #[test]
    fn plane_eight_group() {
        let d = PLANES[7].semifield();
        let scan = PrincipalScan::new(&d).unwrap();
        let g = autotopism_group(&scan, DEFAULT_CAP).unwrap();
        let el = g.elements.as_ref().unwrap();
        assert_eq!(el.len(), 4);
        let id = Isotopy::identity(d.field(), 5).unwrap();
        assert!(el.contains(&id));
        for t in el {
            assert!(t.compose(t).is_identity());
        }
        let orbits = triangle_orbits(&d, &g).unwrap();
        for side in &orbits.sides {
            assert_eq!(side.to_string(), "2[1]+121[2]");
            assert_eq!(side.points(), 244);
        }
    }

    #[test]
    fn cap_gives_order_only() {
        let d = PLANES[7].semifield();
        let scan = PrincipalScan::new(&d).unwrap();
        let g = autotopism_group(&scan, 3).unwrap();
        assert_eq!(g.order, 4);
        assert!(g.elements.is_none());
        assert!(triangle_orbits(&d, &g).is_err());
    }

    #[test]
    fn orbit_notation_round_trip() {
        let s: OrbitStructure = "2[1]+1[22]+2[110]".parse().unwrap();
        assert_eq!(s.points(), 244);
        assert_eq!(s.to_string(), "2[1]+1[22]+2[110]");
        assert!("2[1]+x".parse::<OrbitStructure>().is_err());
    }
}
