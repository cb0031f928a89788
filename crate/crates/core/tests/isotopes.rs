use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semiforge::classify::is_autotopism;
use semiforge::cube::apply_isotopy;
use semiforge::fixtures::PLANES;

#[test]
fn one_sided_nuclei_survive_random_isotopes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let plane = &PLANES[rng.gen_range(0..PLANES.len())];
        let d = plane.semifield();
        let (x, y) = (rng.gen_range(1..243), rng.gen_range(1..243));
        let (e, w) = d.principal_isotope(x, y).unwrap();
        assert_eq!(
            e.nuclei().one_sided(),
            d.nuclei().one_sided(),
            "{} ({x},{y})",
            plane.label
        );
        assert_eq!(apply_isotopy(&d.cube(), &w).unwrap(), e.cube());
    }
}

#[test]
fn every_principal_isotope_of_plane_viii_is_a_semifield() {
    let d = PLANES[7].semifield();
    for x in 1..243 {
        for y in 1..243 {
            let (e, w) = d.principal_isotope(x, y).unwrap();
            e.basis().validate().unwrap();
            assert!(w.maps(&d.cube(), &e.cube()));
        }
    }
}

#[test]
fn identity_is_an_autotopism() {
    let d = PLANES[3].semifield();
    let id = semiforge::cube::Isotopy::identity(d.field(), 5).unwrap();
    assert!(is_autotopism(&d, &id));
}
