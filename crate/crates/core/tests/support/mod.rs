#![allow(dead_code)]

pub mod oracle;

use hardy_core::HfSet;
use proptest::prelude::*;

const ATOMS: [&str; 4] = ["a", "b", "c", "x1"];

pub fn atom() -> impl Strategy<Value = HfSet> {
    prop::sample::select(&ATOMS[..]).prop_map(|l| HfSet::atom(l).unwrap())
}

/// Atoms or sets of rank at most 4, at most 5 children per node.
pub fn element() -> impl Strategy<Value = HfSet> {
    let leaf = prop_oneof![atom(), Just(HfSet::empty())];
    leaf.prop_recursive(4, 64, 5, |inner| {
        prop::collection::vec(inner, 0..=5).prop_map(HfSet::set_of)
    })
}

/// A set-node of rank at most 5 and breadth at most 5.
pub fn hfset() -> impl Strategy<Value = HfSet> {
    prop::collection::vec(element(), 0..=5).prop_map(HfSet::set_of)
}
