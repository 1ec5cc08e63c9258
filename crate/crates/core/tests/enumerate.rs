use std::collections::BTreeSet;
use std::time::Instant;

use mindex::enumerate::counterterm_set;
use mindex::{builtin_spec, MultiIndex};

mod common;

use common::*;

fn agrees_with_brute_force(name: &str, max_len: u32) {
    let s = builtin_spec(name).unwrap();
    let t = Instant::now();
    let brute = brute_force_counterterms(&s, max_len, 4);
    let found: BTreeSet<MultiIndex> = counterterm_set(&s).unwrap().into_iter().filter(|b| b.length() <= max_len).collect();
    assert_eq!(found, brute, "{name} in {:?}", t.elapsed());
}

#[test]
fn gkpz_enumeration_is_exhaustive() {
    agrees_with_brute_force("gkpz", 6);
}

#[test]
fn she_enumeration_is_exhaustive() {
    agrees_with_brute_force("she_mult_1d", 6);
}

#[test]
fn phi4_enumeration_is_exhaustive() {
    agrees_with_brute_force("phi4_3", 6);
}
