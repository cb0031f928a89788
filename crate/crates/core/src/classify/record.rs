use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::Ratio;

use super::autotopy::{
    autotopism_group, triangle_orbits, OrbitStructure, TriangleOrbits, DEFAULT_CAP,
};
use super::scan::{at_count, census, PrincipalScan};
use crate::algebra::{NucleiProfile, Semifield};
use crate::cube::{format_record, parse_record, StandardBasis};
use crate::error::{Error, Result};

/// Which expensive invariants to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stages {
    pub at: bool,
    pub orbits: bool,
    pub census: bool,
    pub cap: u64,
}

impl Default for Stages {
    fn default() -> Self {
        Self {
            at: true,
            orbits: true,
            census: true,
            cap: DEFAULT_CAP,
        }
    }
}

impl Stages {
    pub fn none() -> Self {
        Self {
            at: false,
            orbits: false,
            census: false,
            cap: DEFAULT_CAP,
        }
    }
}

/// Invariants of one semifield plane, serialized as `key=value` lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneRecord {
    pub label: String,
    pub basis: StandardBasis,
    pub nuclei: NucleiProfile,
    pub at_order: Option<u64>,
    pub orbits: Option<TriangleOrbits>,
    /// `|Aut| → number of isomorphism classes` of principal isotopes.
    pub census: Option<BTreeMap<u64, u64>>,
    pub s3_class: Option<usize>,
    pub isotopy_class: Option<usize>,
    /// Number of isotopy classes in the S₃-orbit.
    pub s3_orbit_size: Option<usize>,
}

pub fn sa_sum(census: &BTreeMap<u64, u64>) -> Ratio<u64> {
    census
        .iter()
        .map(|(&a, &c)| Ratio::new(c, a))
        .fold(Ratio::from_integer(0), |x, y| x + y)
}

pub fn format_census(census: &BTreeMap<u64, u64>) -> String {
    let parts: Vec<String> = census.iter().map(|(a, c)| format!("{c}/{a}")).collect();
    parts.join("+")
}

pub fn parse_census(s: &str) -> Result<BTreeMap<u64, u64>> {
    let mut map = BTreeMap::new();
    for part in s.split('+') {
        let bad = || Error::Parse(format!("census term {part:?}"));
        let (c, a) = part.trim().split_once('/').ok_or_else(bad)?;
        let c: u64 = c.parse().map_err(|_| bad())?;
        let a: u64 = a.parse().map_err(|_| bad())?;
        *map.entry(a).or_insert(0) += c;
    }
    Ok(map)
}

impl PlaneRecord {
    pub fn compute(label: &str, d: &Semifield, stages: &Stages) -> Result<Self> {
        let mut rec = Self {
            label: label.to_string(),
            basis: d.basis().clone(),
            nuclei: d.nuclei(),
            at_order: None,
            orbits: None,
            census: None,
            s3_class: None,
            isotopy_class: None,
            s3_orbit_size: None,
        };
        if !(stages.at || stages.orbits || stages.census) {
            return Ok(rec);
        }
        let scan = PrincipalScan::new(d)?;
        if stages.orbits {
            let group = autotopism_group(&scan, stages.cap)?;
            rec.at_order = Some(group.order);
            if group.elements.is_some() {
                rec.orbits = Some(triangle_orbits(d, &group)?);
            }
        } else if stages.at {
            rec.at_order = Some(at_count(&scan)?.order);
        }
        if stages.census {
            rec.census = Some(census(&scan)?.classes);
        }
        Ok(rec)
    }

    pub fn to_text(&self) -> Result<String> {
        let mut s = String::new();
        let _ = writeln!(s, "plane={}", self.label);
        let _ = writeln!(s, "basis={}", format_record(&self.basis)?);
        let _ = writeln!(s, "zn={}", self.nuclei);
        if let Some(at) = self.at_order {
            let _ = writeln!(s, "at={at}");
        }
        if let Some(o) = &self.orbits {
            let _ = writeln!(s, "orbits={o}");
        }
        if let Some(c) = &self.census {
            let _ = writeln!(s, "census={}", format_census(c));
            let _ = writeln!(s, "sa_sum={}", sa_sum(c));
        }
        if let Some(k) = self.s3_class {
            let _ = writeln!(s, "s3_class={k}");
        }
        if let Some(k) = self.isotopy_class {
            let _ = writeln!(s, "isotopy_class={k}");
        }
        if let Some(k) = self.s3_orbit_size {
            let _ = writeln!(s, "s3_orbit={k}");
        }
        Ok(s)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
        for line in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {line:?}")))?;
            fields.insert(k, v);
        }
        let get = |k: &str| fields.get(k).copied();
        let need = |k: &str| get(k).ok_or_else(|| Error::Parse(format!("missing {k}")));
        let num = |k: &str| -> Result<Option<u64>> {
            get(k)
                .map(|v| {
                    v.parse()
                        .map_err(|_| Error::Parse(format!("{k} is not a number: {v:?}")))
                })
                .transpose()
        };
        let zn: Vec<u64> = need("zn")?
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|x| {
                x.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad zn entry {x:?}")))
            })
            .collect::<Result<_>>()?;
        let [center, nucleus, left, middle, right] = zn[..] else {
            return Err(Error::Parse("zn needs five entries".into()));
        };
        let orbits = get("orbits")
            .map(|v| -> Result<TriangleOrbits> {
                let sides: Vec<OrbitStructure> =
                    v.split(';').map(str::parse).collect::<Result<_>>()?;
                let sides: [OrbitStructure; 3] = sides
                    .try_into()
                    .map_err(|_| Error::Parse("orbits need three sides".into()))?;
                Ok(TriangleOrbits { sides })
            })
            .transpose()?;
        Ok(Self {
            label: need("plane")?.to_string(),
            basis: parse_record(need("basis")?)?,
            nuclei: NucleiProfile {
                center,
                nucleus,
                left,
                middle,
                right,
            },
            at_order: num("at")?,
            orbits,
            census: get("census").map(parse_census).transpose()?,
            s3_class: num("s3_class")?.map(|v| v as usize),
            isotopy_class: num("isotopy_class")?.map(|v| v as usize),
            s3_orbit_size: num("s3_orbit")?.map(|v| v as usize),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::PLANES;

    #[test]
    fn census_notation() {
        let c = parse_census("24/1+1/5").unwrap();
        assert_eq!(c, BTreeMap::from([(1, 24), (5, 1)]));
        assert_eq!(format_census(&c), "24/1+1/5");
        assert_eq!(sa_sum(&c), Ratio::new(121, 5));
        assert!(parse_census("24").is_err());
    }

    #[test]
    fn record_round_trip() {
        let d = PLANES[8].semifield();
        let mut rec = PlaneRecord::compute("IX", &d, &Stages::default()).unwrap();
        rec.s3_class = Some(8);
        let text = rec.to_text().unwrap();
        assert!(text.contains("at=4\n"));
        assert!(text.contains("orbits=2[1]+121[2];2[1]+121[2];2[1]+121[2]\n"));
        assert!(text.contains("census=14641/1\n"));
        assert_eq!(PlaneRecord::from_text(&text).unwrap(), rec);
        assert!(PlaneRecord::from_text("plane=X\n").is_err());
    }
}
