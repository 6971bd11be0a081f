mod support;

use std::collections::BTreeMap;

use hardy_core::hardy::{distinctness_diagnostic, field_membership_report};
use hardy_core::{
    hardy_probability, intersection_identity_check, parse_set, Atom, AtomQuadruple, HardyModel,
    HfSet, Probability,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::oracle::{expand, Naive};

fn model(depth: usize) -> HardyModel {
    HardyModel::build(AtomQuadruple::standard(), depth).unwrap()
}

fn from_naive(n: &Naive) -> HfSet {
    match n {
        Naive::Atom(l) => HfSet::atom(l).unwrap(),
        Naive::Set(_) => parse_set(&n.render()).unwrap(),
    }
}

fn ratio((n, d): (u64, u64)) -> Probability {
    Probability::new(n, d)
}

#[test]
fn omega_matches_brute_force_expansion() {
    for depth in 1..=8 {
        let m = model(depth);
        let oracle = expand(["x1", "x2", "x3", "x4"], depth);
        let ours: Vec<String> = m.triple().omega().iter().map(ToString::to_string).collect();
        // The oracle renders in its own order; reparse to compare values.
        let mut theirs: Vec<HfSet> = oracle.omega.iter().map(from_naive).collect();
        theirs.sort();
        let theirs: Vec<String> = theirs.iter().map(ToString::to_string).collect();
        assert_eq!(ours, theirs, "depth {depth}");
        assert_eq!(
            m.wings_disjoint(),
            oracle.wing_overlap == 0,
            "depth {depth}"
        );
    }
}

#[test]
fn probability_matches_brute_force_expansion() {
    for depth in 1..=8 {
        let ours = hardy_probability(&model(depth)).unwrap().probability;
        let theirs = ratio(expand(["x1", "x2", "x3", "x4"], depth).probability());
        assert_eq!(ours, theirs, "depth {depth}");
    }
}

// Frozen from the brute-force oracle above.
#[test]
fn depth_law_values() {
    let expected: BTreeMap<usize, (usize, Probability)> = [
        (1, (4, Probability::new(0, 1))),
        (2, (8, Probability::new(1, 8))),
        (3, (16, Probability::new(1, 16))),
        (4, (20, Probability::new(0, 1))),
        (5, (24, Probability::new(0, 1))),
        (6, (28, Probability::new(0, 1))),
        (7, (32, Probability::new(0, 1))),
        (8, (36, Probability::new(0, 1))),
    ]
    .into();
    for (depth, (omega, p)) in expected {
        let r = hardy_probability(&model(depth)).unwrap();
        assert_eq!((r.omega_size, r.probability), (omega, p), "depth {depth}");
    }
}

#[test]
fn only_depth_three_gives_one_sixteenth() {
    let hits: Vec<usize> = (1..=8)
        .filter(|&k| hardy_probability(&model(k)).unwrap().probability == Probability::new(1, 16))
        .collect();
    assert_eq!(hits, [3]);
}

#[test]
fn wings_overlap_below_depth_three() {
    let m = model(2);
    assert_eq!(m.wing_intersection().to_string(), "{{x1},{x2},{x3},{x4}}");
    assert!(!m.hidden_disjoint());
    assert!(model(1).hidden_a() == model(1).hidden_b());
    assert!(model(3).hidden_disjoint());
}

#[test]
fn depth_two_and_four_joint_sets() {
    let r = hardy_probability(&model(2)).unwrap();
    assert_eq!(r.joint_set.to_string(), "{x1}");
    let r = hardy_probability(&model(4)).unwrap();
    assert!(r.joint_set.is_empty_set());
    assert!(!intersection_identity_check(&model(4)));
}

#[test]
fn field_membership_with_probe() {
    let m = model(3);
    assert!(field_membership_report(&m).iter().all(|r| r.in_field));
    assert!(!hardy_core::hardy::in_field(
        &m,
        &parse_set("{x5}").unwrap()
    ));
    assert!(hardy_core::hardy::in_field(
        &m,
        &parse_set("{{{x1}},{x4,{x4}}}").unwrap()
    ));
}

#[test]
fn diagnostic_agrees_with_oracle_on_collisions() {
    for labels in hardy_core::hardy::collision_patterns() {
        let names: [&str; 4] = std::array::from_fn(|i| labels[i].label());
        let oracle = expand(names, 3);
        let r = distinctness_diagnostic(labels.clone(), 3);
        assert_eq!(r.wings_disjoint, oracle.wing_overlap == 0, "{names:?}");
        assert_eq!(r.omega_size, oracle.omega.len(), "{names:?}");
    }
}

#[test]
fn random_quadruples_all_give_one_sixteenth() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let q = AtomQuadruple::random(&mut rng);
        let m = HardyModel::build(q.clone(), 3).unwrap();
        assert_eq!(m.omega_size(), 16);
        assert!(m.wings_disjoint());
        assert!(m.hidden_within_wings() && m.hidden_disjoint());
        let r = hardy_probability(&m).unwrap();
        assert_eq!(r.probability, Probability::new(1, 16), "{:?}", q.labels());
    }
}

fn relabel(s: &HfSet, map: &BTreeMap<String, String>) -> HfSet {
    match s {
        HfSet::Atom(a) => HfSet::atom(&map[a.label()]).unwrap(),
        HfSet::Set(c) => HfSet::set_of(c.iter().map(|x| relabel(x, map))),
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    /// Renaming atoms maps Ω onto Ω and leaves every probability alone.
    #[test]
    fn label_permutation_covariance(
        labels in prop::collection::btree_set("[a-z][a-z0-9]{0,4}", 8),
        depth in 2usize..=5,
    ) {
        let labels: Vec<String> = labels.into_iter().collect();
        let quad = |ls: &[String]| AtomQuadruple::new(std::array::from_fn(|i| Atom::new(&ls[i]).unwrap())).unwrap();
        let m1 = HardyModel::build(quad(&labels[..4]), depth).unwrap();
        let m2 = HardyModel::build(quad(&labels[4..]), depth).unwrap();
        let map: BTreeMap<String, String> =
            labels[..4].iter().cloned().zip(labels[4..].iter().cloned()).collect();

        let image: Vec<HfSet> = {
            let mut v: Vec<HfSet> = m1.triple().omega().iter().map(|s| relabel(s, &map)).collect();
            v.sort();
            v
        };
        prop_assert_eq!(&image[..], m2.triple().omega());
        let r1 = hardy_probability(&m1).unwrap();
        let r2 = hardy_probability(&m2).unwrap();
        prop_assert_eq!(r1.probability, r2.probability);
        prop_assert_eq!(relabel(&r1.joint_set, &map), r2.joint_set);
        prop_assert_eq!(m1.wings_disjoint(), m2.wings_disjoint());
    }
}
