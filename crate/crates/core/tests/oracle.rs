mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::oracle::{indecomposables, pair_keys};
use sttilt::catalog::{catalog, names};
use sttilt::mutation::{enumerate, EnumOptions};

fn small_catalog() -> Vec<String> {
    names().into_iter().filter(|n| catalog(n).unwrap().dim() <= 6).collect()
}

#[test]
fn small_catalog_is_what_we_expect() {
    let got: BTreeSet<String> = small_catalog().into_iter().collect();
    let want: BTreeSet<String> =
        ["A_1", "A_2", "Lambda_1", "Lambda_2", "Example26"].iter().map(|s| s.to_string()).collect();
    assert_eq!(got, want);
}

#[test]
fn brute_force_pairs_match_mutation_enumeration() {
    for name in small_catalog() {
        let a = Arc::new(catalog(&name).unwrap());
        let brute = pair_keys(&a);
        let distinct: BTreeSet<_> = brute.iter().cloned().collect();
        assert_eq!(distinct.len(), brute.len(), "{name}: two pairs share a key");
        let g = enumerate(&a, EnumOptions::default()).unwrap();
        assert!(g.is_complete());
        let mutated: BTreeSet<_> = g.nodes.iter().map(|n| n.key.clone()).collect();
        assert_eq!(distinct, mutated, "{name}");
    }
}

#[test]
fn brute_force_indecomposables_agree_with_decomposition() {
    for name in ["Example26", "A_2", "Lambda_1"] {
        let a = Arc::new(catalog(name).unwrap());
        for m in indecomposables(&a, 3) {
            assert!(m.is_indecomposable().unwrap(), "{name}");
            assert_eq!(m.is_tau_rigid(), m.is_tau_rigid_direct(), "{name}");
        }
    }
}
