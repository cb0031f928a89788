use semiforge::fixtures::PLANES;
use semiforge::search::{canonicalize, enumerate_standard_bases, ShardPlan};

fn all_bases(plan: &ShardPlan) -> Vec<String> {
    let mut out = Vec::new();
    for shard in plan.shards() {
        enumerate_standard_bases(plan, &shard, &mut |b| {
            out.push(semiforge::cube::format_record(&b).unwrap())
        })
        .unwrap();
    }
    out
}

#[test]
fn shard_plans_agree_on_the_emitted_set() {
    let coarse = all_bases(&ShardPlan::new(2, 4, 0).unwrap());
    let fine = all_bases(&ShardPlan::new(2, 4, 3).unwrap());
    assert_eq!(coarse, fine);
    assert!(!coarse.is_empty());
}

#[test]
fn canonical_output_canonicalizes_again() {
    for plane in &PLANES {
        let (basis, _) = canonicalize(&plane.semifield()).unwrap();
        let e = semiforge::algebra::Semifield::from_basis(basis).unwrap();
        let (_, cert) = canonicalize(&e).unwrap();
        assert!(cert.form_index < 6, "{}", plane.label);
    }
}
