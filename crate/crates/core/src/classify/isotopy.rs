use petgraph::unionfind::UnionFind;

use super::iso::{isomorphisms_with, IsoPlan};
use super::record::{PlaneRecord, Stages};
use super::scan::PrincipalScan;
use super::tables::{IsotopeScanner, Tables};
use crate::algebra::Semifield;
use crate::cube::{apply_isotopy, semifieldize, sigma_transform, Isotopy, Perm3, StandardBasis};
use crate::error::{Error, Result};

/// An isotopy `D1 → D2` if one exists, found as an isomorphism from a
/// principal isotope of `D1` onto `D2`. The witness is re-checked with
/// [`apply_isotopy`] before it is returned.
pub fn is_isotopic(d1: &Semifield, d2: &Semifield) -> Result<Option<Isotopy>> {
    if d1.field() != d2.field()
        || d1.dim() != d2.dim()
        || d1.nuclei().one_sided() != d2.nuclei().one_sided()
    {
        return Ok(None);
    }
    let scanner = IsotopeScanner::new(d1);
    let target = Tables::of(d2);
    let fp = target.fingerprint();
    let hits = (0..scanner.pair_count()).filter(|&k| {
        let (i, j) = scanner.pair(k);
        scanner.fingerprint(i, j).is_ok_and(|f| f == fp)
    });
    find_isotopy(&scanner, hits, &target, d2)
}

/// Tries the pairs `candidates` (fingerprint matches) in order.
fn find_isotopy(
    scanner: &IsotopeScanner,
    candidates: impl Iterator<Item = usize>,
    target: &Tables,
    d2: &Semifield,
) -> Result<Option<Isotopy>> {
    for k in candidates {
        let (i, j) = scanner.pair(k);
        let iso = scanner.isotope(i, j)?;
        let plan = IsoPlan::new(&iso.tables);
        if let Some(phi) = isomorphisms_with(&iso.tables, &plan, target, Some(1)).pop() {
            let w = Isotopy {
                f: phi,
                g: phi,
                h: phi,
            }
            .compose(&iso.witness);
            if apply_isotopy(&scanner.semifield().cube(), &w)? != d2.cube() {
                return Err(Error::Internal(
                    "isotopy witness does not reproduce the target".into(),
                ));
            }
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Isotopy invariants used to avoid most exact isotopy tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotopyInvariant {
    /// `(|N_l|, |N_m|, |N_r|)`.
    pub nuclei: (u64, u64, u64),
    pub principal: Vec<u64>,
}

impl IsotopyInvariant {
    pub fn of(d: &Semifield) -> Result<Self> {
        Ok(Self::from_scan(&PrincipalScan::new(d)?))
    }

    pub fn from_scan(scan: &PrincipalScan) -> Self {
        Self {
            nuclei: scan.semifield().nuclei().one_sided(),
            principal: scan.invariant(),
        }
    }
}

/// The semifield obtained from `cube(D)^σ` by semifieldization.
pub fn s3_transform(d: &Semifield, sigma: Perm3) -> Result<Semifield> {
    let (basis, _) = semifieldize(&sigma_transform(&d.cube(), sigma))?;
    Semifield::from_basis(basis)
}

/// Isotopy classes met by a stream of semifields, deduplicated on arrival.
#[derive(Default)]
pub struct IsotopyClasses {
    reps: Vec<(Semifield, IsotopyInvariant)>,
}

impl IsotopyClasses {
    pub fn new() -> Self {
        Self::default()
    }

    /// Class index of `d`, registering a new class if needed.
    pub fn insert(&mut self, d: Semifield) -> Result<usize> {
        let scan = PrincipalScan::new(&d)?;
        let inv = IsotopyInvariant::from_scan(&scan);
        for (k, (rep, rinv)) in self.reps.iter().enumerate() {
            if *rinv != inv {
                continue;
            }
            let target = Tables::of(rep);
            let fp = target.fingerprint();
            let hits = (0..scan.fingerprints.len()).filter(|&k| scan.fingerprints[k] == fp);
            if find_isotopy(&scan.scanner, hits, &target, rep)?.is_some() {
                return Ok(k);
            }
        }
        drop(scan);
        self.reps.push((d, inv));
        Ok(self.reps.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &Semifield> {
        self.reps.iter().map(|(d, _)| d)
    }
}

/// Isotopy class of each σ-transform, classes numbered from 0 in order of
/// first appearance over [`Perm3::all`].
pub fn s3_orbit(d: &Semifield) -> Result<Vec<(Perm3, usize)>> {
    let mut classes = IsotopyClasses::new();
    Perm3::all()
        .into_iter()
        .map(|s| Ok((s, classes.insert(s3_transform(d, s)?)?)))
        .collect()
}

/// Result of classifying a list of standard bases.
pub struct Classification {
    /// One record per isotopy class among the inputs.
    pub records: Vec<PlaneRecord>,
    pub s3_classes: usize,
    /// Isotopy classes of the S₃-expansion of the inputs.
    pub isotopy_classes: usize,
    /// Sum of census class counts over the expansion, when censuses were
    /// computed.
    pub isomorphism_classes: Option<u64>,
}

/// Groups `bases` into isotopy classes and S₃-classes.
///
/// Every input is expanded under S₃ and the expansion is deduplicated by
/// isotopy; two inputs are S₃-equivalent iff their expansions share a class.
/// Each class is represented by its input with the smallest code tuple.
/// `expansion_census` additionally runs a census on every isotopy class of
/// the expansion.
pub fn classify_collection(
    bases: &[StandardBasis],
    labels: &[String],
    stages: &Stages,
    expansion_census: bool,
) -> Result<Classification> {
    let algebras = bases
        .iter()
        .map(|b| Semifield::from_basis(b.clone()))
        .collect::<Result<Vec<_>>>()?;
    let mut classes = IsotopyClasses::new();
    let mut input_class = Vec::with_capacity(algebras.len());
    let mut expansion_classes: Vec<Vec<usize>> = Vec::with_capacity(algebras.len());
    for d in &algebras {
        let mut orbit = Vec::new();
        for s in Perm3::all() {
            orbit.push(classes.insert(s3_transform(d, s)?)?);
        }
        // Perm3::all() starts with the identity, which returns `d` itself
        input_class.push(orbit[0]);
        orbit.sort_unstable();
        orbit.dedup();
        expansion_classes.push(orbit);
    }

    let mut uf = UnionFind::<usize>::new(algebras.len());
    for a in 0..algebras.len() {
        for b in 0..a {
            if expansion_classes[a]
                .iter()
                .any(|c| expansion_classes[b].contains(c))
            {
                uf.union(a, b);
            }
        }
    }
    let mut s3_id: Vec<Option<usize>> = vec![None; algebras.len()];
    let mut s3_count = 0;
    let roots: Vec<usize> = (0..algebras.len()).map(|a| uf.find(a)).collect();
    for a in 0..algebras.len() {
        if s3_id[roots[a]].is_none() {
            s3_id[roots[a]] = Some(s3_count);
            s3_count += 1;
        }
    }

    // representative input per isotopy class: smallest code tuple
    let mut chosen: Vec<(usize, usize)> = Vec::new(); // (class, input)
    for (a, &c) in input_class.iter().enumerate() {
        match chosen.iter_mut().find(|(k, _)| *k == c) {
            Some(entry) => {
                if bases[a].codes()? < bases[entry.1].codes()? {
                    entry.1 = a;
                }
            }
            None => chosen.push((c, a)),
        }
    }
    let mut records = Vec::with_capacity(chosen.len());
    for (class, a) in chosen {
        let label = labels
            .get(a)
            .cloned()
            .unwrap_or_else(|| (a + 1).to_string());
        let mut rec = PlaneRecord::compute(&label, &algebras[a], stages)?;
        rec.s3_class = s3_id[roots[a]];
        rec.isotopy_class = Some(class);
        rec.s3_orbit_size = Some(expansion_classes[a].len());
        records.push(rec);
    }

    let isomorphism_classes = if expansion_census {
        let mut total = 0;
        for d in classes.representatives() {
            let scan = PrincipalScan::new(d)?;
            total += super::scan::census(&scan)?.class_count();
        }
        Some(total)
    } else {
        None
    };
    Ok(Classification {
        records,
        s3_classes: s3_count,
        isotopy_classes: classes.len(),
        isomorphism_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::PLANES;

    #[test]
    fn isotopic_to_principal_isotope() {
        let d = PLANES[5].semifield();
        let (e, _) = d.principal_isotope(57, 190).unwrap();
        let w = is_isotopic(&d, &e).unwrap().unwrap();
        assert!(w.maps(&d.cube(), &e.cube()));
        assert!(is_isotopic(&e, &d).unwrap().is_some());
        assert!(is_isotopic(&d, &d).unwrap().is_some());
    }

    #[test]
    fn distinct_planes_are_not_isotopic() {
        assert!(is_isotopic(&PLANES[0].semifield(), &PLANES[7].semifield())
            .unwrap()
            .is_none());
        assert!(is_isotopic(&PLANES[7].semifield(), &PLANES[8].semifield())
            .unwrap()
            .is_none());
    }

    #[test]
    fn field_is_s3_invariant() {
        let orbit = s3_orbit(&PLANES[0].semifield()).unwrap();
        assert!(orbit.iter().all(|&(_, c)| c == 0));
    }
}
