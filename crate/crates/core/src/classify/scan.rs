use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;

use super::iso::{isomorphisms_with, IsoPlan};
use super::tables::{IsotopeScanner, Tables};
use crate::algebra::{Element, Semifield};
use crate::cube::Isotopy;
use crate::error::Result;
use crate::gf::Matrix;

/// Fingerprints of all principal isotopes `D_{x,y}` over projective
/// representatives `x`, `y`, in lexicographic pair order.
///
/// `D_{λx,μy}` is isomorphic to `D_{x,y}` through multiplication by `λμ`,
/// so counts over all of `(D\0)²` are the projective counts times
/// `(p-1)²`.
pub struct PrincipalScan<'a> {
    pub scanner: IsotopeScanner<'a>,
    pub fingerprints: Vec<Vec<u32>>,
}

impl<'a> PrincipalScan<'a> {
    pub fn new(d: &'a Semifield) -> Result<Self> {
        let scanner = IsotopeScanner::new(d);
        let fingerprints = (0..scanner.pair_count())
            .into_par_iter()
            .map(|k| {
                let (i, j) = scanner.pair(k);
                scanner.fingerprint(i, j)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            scanner,
            fingerprints,
        })
    }

    pub fn semifield(&self) -> &Semifield {
        self.scanner.semifield()
    }

    /// `(p-1)²`: number of pairs `(λx, μy)` per projective pair.
    pub fn scalar_factor(&self) -> u64 {
        let q = self.semifield().field().p() as u64 - 1;
        q * q
    }

    /// Sorted fingerprints: an isotopy invariant (isotopic semifields have
    /// the same principal isotopes, each with multiplicity `|At|/|Aut|`).
    pub fn invariant(&self) -> Vec<u64> {
        use std::hash::{Hash, Hasher};
        let mut v: Vec<u64> = self
            .fingerprints
            .iter()
            .map(|f| {
                let mut h = std::collections::hash_map::DefaultHasher::new();
                f.hash(&mut h);
                h.finish()
            })
            .collect();
        v.sort_unstable();
        v
    }

    /// Pairs whose isotope is isomorphic to `D`, with all isomorphisms
    /// `D → D_{x,y}` and the isotopy `D → D_{x,y}`.
    pub fn self_isotopes(&self) -> Result<Vec<SelfIsotope>> {
        let d = self.semifield();
        let base = Tables::of(d);
        let plan = IsoPlan::new(&base);
        let target = base.fingerprint();
        let hits: Vec<usize> = (0..self.fingerprints.len())
            .filter(|&k| self.fingerprints[k] == target)
            .collect();
        let found = hits
            .par_iter()
            .map(|&k| {
                let (i, j) = self.scanner.pair(k);
                let iso = self.scanner.isotope(i, j)?;
                let maps = isomorphisms_with(&base, &plan, &iso.tables, None);
                Ok(SelfIsotope {
                    x: iso.x,
                    y: iso.y,
                    witness: iso.witness,
                    isomorphisms: maps,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(found
            .into_iter()
            .filter(|s| !s.isomorphisms.is_empty())
            .collect())
    }
}

#[derive(Clone, Debug)]
pub struct SelfIsotope {
    pub x: Element,
    pub y: Element,
    pub witness: Isotopy,
    pub isomorphisms: Vec<Matrix>,
}

/// `|At(D)|` decomposed as `|Aut(D)| · #{(x,y) : D_{x,y} ≅ D}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AtCount {
    pub order: u64,
    pub aut_order: u64,
    /// Pairs over all of `(D\0)²`.
    pub isomorphic_pairs: u64,
}

/// Counts autotopisms through the isomorphisms `D → D_{x,y}`: each
/// autotopism `(F,G,H)` corresponds to exactly one `(x, y, φ)` with
/// `x = F(1)`, `y = G(1)`.
pub fn at_count(scan: &PrincipalScan) -> Result<AtCount> {
    let selves = scan.self_isotopes()?;
    let per_pair: u64 = selves.iter().map(|s| s.isomorphisms.len() as u64).sum();
    let pairs = selves.len() as u64 * scan.scalar_factor();
    let order = per_pair * scan.scalar_factor();
    let base = Tables::of(scan.semifield());
    let aut = super::iso::aut_order(&base);
    Ok(AtCount {
        order,
        aut_order: aut,
        isomorphic_pairs: pairs,
    })
}

pub fn at_order(d: &Semifield) -> Result<u64> {
    Ok(at_count(&PrincipalScan::new(d)?)?.order)
}

/// Isomorphism classes of principal isotopes: `(|Aut|, number of classes)`
/// together with the exact sum of `classes/|Aut|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub classes: BTreeMap<u64, u64>,
    /// Per class, in discovery order: `(|Aut|, pairs in (D\0)²)`.
    pub class_sizes: Vec<(u64, u64)>,
    /// Representative projective pair `(x, y)` of each class.
    pub representatives: Vec<(Element, Element)>,
}

impl Census {
    pub fn class_count(&self) -> u64 {
        self.classes.values().sum()
    }

    pub fn sa_sum(&self) -> Ratio<u64> {
        self.classes
            .iter()
            .map(|(&a, &c)| Ratio::new(c, a))
            .fold(Ratio::from_integer(0), |x, y| x + y)
    }
}

impl fmt::Display for Census {
    /// `c/a+...` in increasing `|Aut|`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .classes
            .iter()
            .map(|(a, c)| format!("{c}/{a}"))
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Partitions the principal isotopes into isomorphism classes: pairs are
/// bucketed by fingerprint, then each pair is compared with the class
/// representatives of its bucket in lexicographic pair order.
pub fn census(scan: &PrincipalScan) -> Result<Census> {
    let mut bucket_of: HashMap<&[u32], usize> = HashMap::new();
    let mut buckets: Vec<Vec<usize>> = Vec::new();
    for (k, fp) in scan.fingerprints.iter().enumerate() {
        let b = *bucket_of.entry(fp.as_slice()).or_insert_with(|| {
            buckets.push(Vec::new());
            buckets.len() - 1
        });
        buckets[b].push(k);
    }
    let per_bucket = buckets
        .par_iter()
        .map(|members| split_bucket(scan, members))
        .collect::<Result<Vec<_>>>()?;
    let mut classes = BTreeMap::new();
    let mut class_sizes = Vec::new();
    let mut representatives = Vec::new();
    for bucket in per_bucket {
        for (aut, size, rep) in bucket {
            *classes.entry(aut).or_insert(0) += 1;
            class_sizes.push((aut, size * scan.scalar_factor()));
            representatives.push(rep);
        }
    }
    Ok(Census {
        classes,
        class_sizes,
        representatives,
    })
}

/// `(|Aut|, projective pairs, representative)` per class in one bucket.
fn split_bucket(
    scan: &PrincipalScan,
    members: &[usize],
) -> Result<Vec<(u64, u64, (Element, Element))>> {
    struct Class {
        tables: Tables,
        plan: IsoPlan,
        size: u64,
        rep: (Element, Element),
    }
    let mut classes: Vec<Class> = Vec::new();
    for &k in members {
        let (i, j) = scan.scanner.pair(k);
        let iso = scan.scanner.isotope(i, j)?;
        let hit = classes
            .iter_mut()
            .find(|c| !isomorphisms_with(&c.tables, &c.plan, &iso.tables, Some(1)).is_empty());
        match hit {
            Some(c) => c.size += 1,
            None => {
                let plan = IsoPlan::new(&iso.tables);
                classes.push(Class {
                    rep: (iso.x, iso.y),
                    tables: iso.tables,
                    plan,
                    size: 1,
                })
            }
        }
    }
    Ok(classes
        .iter()
        .map(|c| {
            let aut = isomorphisms_with(&c.tables, &c.plan, &c.tables, None).len() as u64;
            (aut, c.size, c.rep)
        })
        .collect())
}
