//! Reproduction of the published order-243 data from the embedded fixtures.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::Ratio;
use semiforge::algebra::Semifield;
use semiforge::classify::{
    autotopism_group, autotopism_structure, census, classify_collection, format_census,
    triangle_orbits, PrincipalScan, Stages,
};
use semiforge::fixtures::{PublishedPlane, ISOMORPHISM_CLASSES, ISOTOPY_CLASSES, S3_CLASSES};
use semiforge::Result;

/// `(p^n - 1)^2` at order 243.
pub const PAIRS: u64 = 242 * 242;

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub stages: Stages,
    /// Group-structure checks, which need the autotopism group.
    pub structure: bool,
    /// The headline counts over the S₃-expansion.
    pub full: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            stages: Stages::default(),
            structure: true,
            full: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub subject: String,
    pub name: &'static str,
    pub expected: String,
    pub actual: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// One line per check, `subject check expected=... actual=... PASS|FAIL`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let verdict = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(
                s,
                "{} {} expected={} actual={} {verdict}",
                c.subject, c.name, c.expected, c.actual
            );
        }
        s
    }

    fn push(
        &mut self,
        subject: &str,
        name: &'static str,
        expected: impl ToString,
        actual: impl ToString,
    ) {
        self.checks.push(Check {
            subject: subject.to_string(),
            name,
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }
}

fn format_orders(orders: &BTreeMap<usize, usize>) -> String {
    let parts: Vec<String> = orders.iter().map(|(o, c)| format!("{o}:{c}")).collect();
    parts.join(",")
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Element orders of `Z_{m_1} × ... × Z_{m_k}`, by listing every element.
pub fn cyclic_product_orders(moduli: &[usize]) -> BTreeMap<usize, usize> {
    let total: usize = moduli.iter().product();
    let mut out = BTreeMap::new();
    for mut idx in 0..total {
        let mut order = 1;
        for &m in moduli {
            let a = idx % m;
            idx /= m;
            let o = m / gcd(a, m);
            order = order / gcd(order, o) * o;
        }
        *out.entry(order).or_insert(0) += 1;
    }
    out
}

/// Cyclic factors of an annotation such as `Z2xZ10`; `None` for anything
/// that is not a plain product of cyclic groups.
fn cyclic_factors(annotation: &str) -> Option<Vec<usize>> {
    if annotation.is_empty() {
        return None;
    }
    annotation
        .split('x')
        .map(|f| f.strip_prefix('Z')?.parse().ok())
        .collect()
}

fn check_plane(plane: &PublishedPlane, opts: &VerifyOptions, report: &mut Report) -> Result<()> {
    let label = plane.label;
    let basis = plane.basis();
    let valid = match basis.validate() {
        Ok(()) => "ok".to_string(),
        Err(violation) => violation.to_string().replace(' ', "_"),
    };
    report.push(label, "valid", "ok", &valid);
    if valid != "ok" {
        return Ok(());
    }
    let d = Semifield::from_basis(basis)?;
    report.push(label, "zn", plane.nuclei, d.nuclei());
    let stages = &opts.stages;
    if !(stages.at || stages.orbits || stages.census || opts.structure) {
        return Ok(());
    }
    let scan = PrincipalScan::new(&d)?;
    let mut at = None;
    if stages.at || stages.orbits || opts.structure {
        let group = autotopism_group(&scan, stages.cap)?;
        at = Some(group.order);
        if stages.at {
            report.push(label, "at", plane.at_order, group.order);
        }
        if stages.orbits {
            let actual = match &group.elements {
                Some(_) => triangle_orbits(&d, &group)?.to_string(),
                None => "over-cap".into(),
            };
            let expected = [plane.orbits; 3].join(";");
            report.push(label, "orbits", expected, actual);
        }
        if opts.structure {
            check_structure(plane, &d, &group, report)?;
        }
    }
    if stages.census {
        let c = census(&scan)?;
        let expected: BTreeMap<u64, u64> = plane.census.iter().copied().collect();
        report.push(
            label,
            "census",
            format_census(&expected),
            format_census(&c.classes),
        );
        let at = at.unwrap_or(plane.at_order);
        let product = c.sa_sum() * Ratio::from_integer(at);
        report.push(label, "sa_sum*at", PAIRS, product);
    }
    Ok(())
}

fn check_structure(
    plane: &PublishedPlane,
    d: &Semifield,
    group: &semiforge::classify::AutotopismGroup,
    report: &mut Report,
) -> Result<()> {
    let label = plane.label;
    let structure = autotopism_structure(d, group)?;
    if let Some(moduli) = cyclic_factors(plane.structure) {
        let expected = format!(
            "abelian orders={}",
            format_orders(&cyclic_product_orders(&moduli))
        );
        let actual = match &structure {
            Some(s) => format!(
                "{} orders={}",
                if s.abelian { "abelian" } else { "nonabelian" },
                format_orders(&s.element_orders)
            ),
            None => "too-large".into(),
        };
        report.push(label, "structure", expected, actual);
    } else if plane.structure == "solvable" {
        let actual = match &structure {
            Some(s) if s.solvable() => "solvable".to_string(),
            Some(s) => format!("derived-series={:?}", s.derived_series),
            None => "too-large".into(),
        };
        report.push(label, "structure", "solvable", actual);
    }
    Ok(())
}

/// Checks every plane of `planes` against its published invariants, and
/// with `full` the headline counts over the whole list.
pub fn verify_planes(planes: &[PublishedPlane], opts: &VerifyOptions) -> Result<Report> {
    let mut report = Report::default();
    for plane in planes {
        check_plane(plane, opts, &mut report)?;
    }
    if opts.full && report.passed() {
        let bases: Vec<_> = planes.iter().map(PublishedPlane::basis).collect();
        let labels: Vec<String> = planes.iter().map(|p| p.label.to_string()).collect();
        let c = classify_collection(&bases, &labels, &Stages::none(), true)?;
        report.push("all", "s3_classes", S3_CLASSES, c.s3_classes);
        report.push("all", "isotopy_classes", ISOTOPY_CLASSES, c.isotopy_classes);
        let isom = c.isomorphism_classes.map_or("-".into(), |k| k.to_string());
        report.push("all", "isomorphism_classes", ISOMORPHISM_CLASSES, isom);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use semiforge::fixtures::PLANES;

    #[test]
    fn product_orders() {
        assert_eq!(
            cyclic_product_orders(&[2, 2]),
            BTreeMap::from([(1, 1), (2, 3)])
        );
        let z2z10 = cyclic_product_orders(&[2, 10]);
        assert_eq!(z2z10.values().sum::<usize>(), 20);
        assert_eq!(z2z10[&10], 12);
    }

    #[test]
    fn annotations() {
        assert_eq!(cyclic_factors("Z2xZ10"), Some(vec![2, 10]));
        assert_eq!(cyclic_factors("Z2xZ2x(Z5:Z11)"), None);
        assert_eq!(cyclic_factors("solvable"), None);
        assert_eq!(cyclic_factors(""), None);
    }

    #[test]
    fn flipped_digit_is_reported() {
        let bad = PublishedPlane {
            codes: [
                PLANES[7].codes[0],
                PLANES[7].codes[1] + 1,
                PLANES[7].codes[2],
                PLANES[7].codes[3],
            ],
            ..PLANES[7]
        };
        let opts = VerifyOptions {
            stages: Stages::default(),
            structure: true,
            full: false,
        };
        let report = verify_planes(&[bad], &opts).unwrap();
        assert!(!report.passed());
        assert!(report.to_text().contains("FAIL"));
    }

    #[test]
    fn plane_ix_passes() {
        let report = verify_planes(&PLANES[8..], &VerifyOptions::default()).unwrap();
        assert!(report.passed(), "{}", report.to_text());
        assert_eq!(report.checks.len(), 7);
    }
}
