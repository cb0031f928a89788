//! The nine semifields of order 243 up to S₃-equivalence, with their
//! published invariants.

use crate::algebra::{NucleiProfile, Semifield};
use crate::cube::StandardBasis;
use crate::gf::PrimeField;

pub struct PublishedPlane {
    pub label: &'static str,
    /// Codes of `A_2..A_5` over GF(3).
    pub codes: [u128; 4],
    pub nuclei: NucleiProfile,
    pub at_order: u64,
    /// Orbit structure on each of the three sides of the fundamental
    /// triangle; all three sides agree for every plane listed.
    pub orbits: &'static str,
    /// `(|Aut|, number of classes)`, increasing in `|Aut|`.
    pub census: &'static [(u64, u64)],
    pub structure: &'static str,
}

const ALL: NucleiProfile = NucleiProfile {
    center: 243,
    nucleus: 243,
    left: 243,
    middle: 243,
    right: 243,
};

const PRIME: NucleiProfile = NucleiProfile {
    center: 3,
    nucleus: 3,
    left: 3,
    middle: 3,
    right: 3,
};

pub const PLANES: [PublishedPlane; 9] = [
    PublishedPlane {
        label: "I",
        codes: [129317742, 43151760, 25524498, 2715668620],
        nuclei: ALL,
        at_order: 292820,
        orbits: "2[1]+1[242]",
        census: &[(5, 1)],
        structure: "",
    },
    PublishedPlane {
        label: "II",
        codes: [129317638, 44994959, 28587138, 1226007534],
        nuclei: PRIME,
        at_order: 2420,
        orbits: "2[1]+1[242]",
        census: &[(1, 24), (5, 1)],
        structure: "solvable",
    },
    PublishedPlane {
        label: "III",
        codes: [129317781, 52757047, 20739470, 3274303432],
        nuclei: PRIME,
        at_order: 2420,
        orbits: "2[1]+1[242]",
        census: &[(1, 24), (5, 1)],
        structure: "solvable",
    },
    PublishedPlane {
        label: "IV",
        codes: [129317742, 43393513, 26923067, 2713804376],
        nuclei: PRIME,
        at_order: 20,
        orbits: "2[1]+1[2]+24[10]",
        census: &[(1, 2928), (5, 1)],
        structure: "Z2xZ10",
    },
    PublishedPlane {
        label: "V",
        codes: [129317742, 43215002, 26537147, 2719346408],
        nuclei: PRIME,
        at_order: 20,
        orbits: "2[1]+1[2]+24[10]",
        census: &[(1, 2928), (5, 1)],
        structure: "Z2xZ10",
    },
    PublishedPlane {
        label: "VI",
        codes: [129317742, 43185096, 19259172, 2718371119],
        nuclei: PRIME,
        at_order: 20,
        orbits: "2[1]+1[2]+24[10]",
        census: &[(1, 2928), (5, 1)],
        structure: "Z2xZ10",
    },
    PublishedPlane {
        label: "VII",
        codes: [129317742, 43215002, 26558192, 2719382129],
        nuclei: PRIME,
        at_order: 220,
        orbits: "2[1]+1[22]+2[110]",
        census: &[(1, 266), (5, 1)],
        structure: "Z2xZ2x(Z5:Z11)",
    },
    PublishedPlane {
        label: "VIII",
        codes: [129317636, 14673002, 1139489406, 3073918154],
        nuclei: PRIME,
        at_order: 4,
        orbits: "2[1]+121[2]",
        census: &[(1, 14641)],
        structure: "Z2xZ2",
    },
    PublishedPlane {
        label: "IX",
        codes: [129317636, 18089998, 3416237282, 1030364558],
        nuclei: PRIME,
        at_order: 4,
        orbits: "2[1]+121[2]",
        census: &[(1, 14641)],
        structure: "Z2xZ2",
    },
];

/// Headline counts for order 243: S₃-classes, isotopy classes and
/// isomorphism classes of semifields.
pub const S3_CLASSES: usize = 9;
pub const ISOTOPY_CLASSES: usize = 23;
pub const ISOMORPHISM_CLASSES: u64 = 85877;

impl PublishedPlane {
    pub fn basis(&self) -> StandardBasis {
        StandardBasis::from_codes(PrimeField::new(3).unwrap(), 5, &self.codes)
            .expect("fixture codes are in range")
    }

    pub fn semifield(&self) -> Semifield {
        Semifield::from_basis(self.basis()).expect("fixture bases are valid")
    }

    /// The record line `3 5 A2 A3 A4 A5`.
    pub fn record(&self) -> String {
        let c = &self.codes;
        format!("3 5 {} {} {} {}", c[0], c[1], c[2], c[3])
    }

    pub fn by_label(label: &str) -> Option<&'static PublishedPlane> {
        PLANES.iter().find(|p| p.label.eq_ignore_ascii_case(label))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_matches_at_order() {
        // Σ count·|At|/|Aut| = 242² for every plane
        for plane in &PLANES {
            let total: u64 = plane
                .census
                .iter()
                .map(|&(a, c)| c * plane.at_order / a)
                .sum();
            assert_eq!(total, 242 * 242, "{}", plane.label);
        }
    }

    #[test]
    fn nuclei_of_all_planes() {
        for plane in &PLANES {
            assert_eq!(plane.semifield().nuclei(), plane.nuclei, "{}", plane.label);
        }
    }

    #[test]
    fn field_iff_full_nuclei() {
        for plane in &PLANES {
            let d = plane.semifield();
            let full = d.nuclei().center == 243;
            assert_eq!(
                d.is_commutative() && d.is_associative(),
                full,
                "{}",
                plane.label
            );
        }
    }

    #[test]
    fn records_parse() {
        for plane in &PLANES {
            let b = crate::cube::parse_record(&plane.record()).unwrap();
            assert_eq!(b, plane.basis());
        }
    }
}
