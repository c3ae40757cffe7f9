mod common;

use std::collections::BTreeSet;

use common::golden::{edge_set, golden, PRINTED, S2_10_EDGES, S2_11_EDGES, S2_21_EDGES};

use proptest::prelude::*;
use sttilt::quiver_screens::{contains_infinite_subquiver, Pattern};
use sttilt::schur::*;

fn part(s: &str) -> Partition {
    Partition::parse(s).unwrap()
}


fn computed_edges(p: usize, r: usize) -> BTreeSet<(String, String)> {
    let e = s2r_edges(p, r).unwrap();
    let refs: Vec<(&str, &str)> = e.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    edge_set(&refs)
}

#[test]
fn p_core_examples() {
    assert_eq!(p_core(&part("6,5"), 2), part("2,1"));
    assert_eq!(p_core(&part("2,1"), 2), part("2,1"));
    assert_eq!(p_core(&part("11"), 2), part("1"));
    assert_eq!(p_core(&part("4,4"), 2), part(""));
    assert_eq!(p_core(&part("3,3"), 3), part(""));
    assert_eq!(p_core(&part("5,1"), 3), part(""));
    assert_eq!(p_core(&part("3,1,1"), 2), part("1"));
}

#[test]
fn p_core_agrees_with_abacus_closed_form() {
    for r in 0..=14 {
        for lam in partitions(r) {
            for p in [2, 3, 5] {
                assert_eq!(p_core(&lam, p), p_core_abacus(&lam, p), "{lam} p={p}");
                // Removing hooks lowers the size by a multiple of p.
                assert_eq!((r - p_core(&lam, p).size()) % p, 0);
            }
        }
    }
}

fn partitions(r: usize) -> Vec<Partition> {
    fn go(r: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if r == 0 {
            out.push(Partition::new(cur.clone()));
            return;
        }
        for x in (1..=r.min(max)).rev() {
            cur.push(x);
            go(r - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(r, r, &mut Vec::new(), &mut out);
    out
}

#[test]
fn henke_function_examples() {
    for s in 0..64 {
        assert_eq!(henke_f(s, s, 2), 1);
        assert_eq!(henke_f(s, s, 3), 1);
        assert_eq!(henke_h(s, 0, 2), u8::from(s % 2 == 0), "s={s}");
    }
    assert_eq!(henke_g(0, 0, 2), 1);
}


#[test]
fn young_characters_match_printed_lists() {
    for &(r, lam, expected) in PRINTED {
        let k = part(lam).parts().get(1).copied().unwrap_or(0);
        let got = young_character(2, r, k).unwrap();
        let want: Vec<Partition> = expected.iter().map(|s| part(s)).collect();
        assert_eq!(got, want, "ch Y^({lam}) for r = {r}");
    }
}

#[test]
fn young_character_of_a_row_is_itself() {
    for p in [2, 3, 5, 7] {
        for r in 1..30 {
            assert_eq!(young_character(p, r, 0).unwrap(), vec![Partition::two_part(r, 0)]);
        }
    }
}

#[test]
fn young_character_contains_its_own_label() {
    for p in [2, 3, 5] {
        for r in 1..40 {
            for k in 0..=r / 2 {
                let ch = young_character(p, r, k).unwrap();
                assert!(ch.contains(&Partition::two_part(r, k)));
                // Other constituents dominate: smaller second part.
                assert!(ch.iter().all(|mu| mu.parts().get(1).copied().unwrap_or(0) <= k));
            }
        }
    }
}

#[test]
fn eh_arrow_examples() {
    assert_eq!(eh_arrow(2, 10, 2), 1);
    assert_eq!(eh_arrow(2, 10, 6), 0);
    // Opposite parity never meets at p = 2.
    for s in 0..40 {
        for t in 0..40 {
            if (s + t) % 2 == 1 {
                assert_eq!(eh_arrow(2, s, t), 0);
            }
        }
    }
}

#[test]
fn s2_10_quiver_matches_display() {
    let want = edge_set(S2_10_EDGES);
    assert_eq!(computed_edges(2, 10), want);
    let w = contains_infinite_subquiver(&s2r_quiver(2, 10).unwrap()).unwrap();
    assert_eq!(w.pattern, Pattern::Q1);
    let got: BTreeSet<&str> = w.labels.iter().map(|s| s.as_str()).collect();
    assert_eq!(got, ["6,4", "10", "5,5", "9,1"].into_iter().collect());
}

#[test]
fn s2_21_quiver_matches_display() {
    let want = edge_set(S2_21_EDGES);
    assert_eq!(computed_edges(2, 21), want);
    let w = contains_infinite_subquiver(&s2r_quiver(2, 21).unwrap()).unwrap();
    assert_eq!(w.pattern, Pattern::Q1);
}

#[test]
fn s2_11_quiver_matches_blocks() {
    let want = edge_set(S2_11_EDGES);
    assert_eq!(computed_edges(2, 11), want);
    assert!(contains_infinite_subquiver(&s2r_quiver(2, 11).unwrap()).is_none());
}

#[test]
fn s2_12_over_three_matches_display() {
    let want = edge_set(&[("11,1", "8,4"), ("11,1", "12"), ("12", "6,6"), ("9,3", "8,4"), ("8,4", "6,6")]);
    assert_eq!(computed_edges(3, 12), want);
    assert!(contains_infinite_subquiver(&s2r_quiver(3, 12).unwrap()).is_some());
}

#[test]
fn s2r_components_refine_cores() {
    for p in [2, 3, 5] {
        for r in 1..=30 {
            let q = s2r_quiver(p, r).unwrap();
            for comp in q.components() {
                let cores: BTreeSet<Partition> =
                    comp.iter().map(|&v| p_core(&Partition::parse(&q.vertices()[v]).unwrap(), p)).collect();
                assert_eq!(cores.len(), 1, "p={p} r={r}");
            }
        }
    }
}

#[test]
fn classify_examples() {
    assert_eq!(classify(2, 2, 6).unwrap().verdict, Verdict::WildFinite);
    assert_eq!(classify(2, 2, 8).unwrap().verdict, Verdict::Open);
    assert_eq!(classify(3, 2, 12).unwrap().verdict, Verdict::WildInfinite);
    assert_eq!(classify(5, 2, 27).unwrap().verdict, Verdict::Open);
    assert_eq!(classify(7, 2, 10).unwrap().verdict, Verdict::Finite);
    assert_eq!(classify(0, 4, 9).unwrap().verdict, Verdict::Semisimple);
    assert!(classify(4, 2, 2).is_err());
}


#[test]
fn classification_tables() {
    for (p, n, letters) in golden() {
        for (i, want) in letters.iter().enumerate() {
            let r = i + 1;
            let got = classify(p, n, r).unwrap().verdict.letter();
            assert_eq!(got, *want, "p={p} n={n} r={r}");
        }
    }
    // Columns past r = 23 at p = 5, n = 2.
    let tail: Vec<&str> = (24..=31).map(|r| classify(5, 2, r).unwrap().verdict.letter()).collect();
    assert_eq!(tail, ["F", "W?", "W?", "W?", "W?", "W?", "W-", "W-"]);
}

proptest! {
    #[test]
    fn eh_arrow_is_symmetric_and_binary(p in prop::sample::select(vec![2usize, 3, 5, 7]), s in 0usize..200, t in 0usize..200) {
        let a = eh_arrow(p, s, t);
        prop_assert!(a <= 1);
        prop_assert_eq!(a, eh_arrow(p, t, s));
    }

    #[test]
    fn classify_is_monotone(p in prop::sample::select(vec![2usize, 3, 5, 7]), n in 1usize..8, r in 1usize..40, dn in 0usize..4) {
        let base = classify(p, n, r).unwrap().verdict;
        if base == Verdict::WildInfinite {
            let bigger_n = classify(p, n + dn, r).unwrap().verdict;
            let bigger_r = classify(p, n, n + r).unwrap().verdict;
            prop_assert_eq!(bigger_n, Verdict::WildInfinite);
            prop_assert_eq!(bigger_r, Verdict::WildInfinite);
        }
    }
}

#[test]
fn s2_15_components_match_the_shipped_blocks() {
    let q = s2r_quiver(2, 15).unwrap();
    let mut sizes: Vec<usize> = q.components().iter().map(Vec::len).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 1, 2, 4]);
    let a = sttilt::catalog::catalog("S(2,15)_p2").unwrap();
    let mut blocks: Vec<usize> = a.block_decompose().unwrap().iter().map(|b| b.num_vertices()).collect();
    blocks.sort_unstable();
    assert_eq!(blocks, sizes);
}
