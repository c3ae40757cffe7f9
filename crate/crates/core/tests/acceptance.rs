//! Acceptance harness: one PASS/FAIL line per criterion, nonzero exit
//! status if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use common::golden::{edge_set, golden, PRINTED, S2_10_EDGES, S2_11_EDGES, S2_21_EDGES};
use common::oracle::pair_keys;
use sttilt::catalog::{catalog, catalog_with_char, names};
use sttilt::mutation::{enumerate, hasse_isomorphic_reversed, EnumOptions, HasseGraph, Status};
use sttilt::quiver_screens::{contains_infinite_subquiver, Pattern};
use sttilt::schur::{classify, s2r_edges, s2r_quiver, young_character, Partition, Verdict};

type Outcome = Result<String, String>;
type Criterion = fn(&mut Runs) -> Outcome;

/// Enumerations are shared between criteria.
#[derive(Default)]
struct Runs {
    graphs: BTreeMap<(String, u32), (usize, HasseGraph)>,
}

impl Runs {
    fn get(&mut self, name: &str, p: Option<u32>) -> &(usize, HasseGraph) {
        let a = catalog_with_char(name, p).unwrap_or_else(|e| panic!("{name}: {e}"));
        let key = (name.to_string(), a.characteristic());
        self.graphs.entry(key).or_insert_with(|| {
            let n = a.num_vertices();
            let g = enumerate(&Arc::new(a), EnumOptions::default()).unwrap_or_else(|e| panic!("{name}: {e}"));
            (n, g)
        })
    }

    fn total(&mut self, name: &str, p: Option<u32>) -> usize {
        let (_, g) = self.get(name, p);
        assert!(g.is_complete(), "{name}: enumeration hit the budget");
        g.len()
    }

    fn strata(&mut self, name: &str, p: Option<u32>) -> Vec<usize> {
        let (n, g) = self.get(name, p);
        g.strata_counts(*n).unwrap_or_else(|e| panic!("{name}: {e}"))
    }
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1(runs: &mut Runs) -> Outcome {
    let (_, g) = runs.get("Example26", None);
    check(g.status == Status::Complete && g.len() == 6, format!("{} pairs, status {:?}", g.len(), g.status))?;
    check(g.edges.len() == 6, format!("{} edges", g.edges.len()))?;
    let (sources, sinks) = (g.sources(), g.sinks());
    check(sources.len() == 1 && sinks.len() == 1, "source/sink not unique")?;
    let deg = g.in_out_degrees();
    check(deg[sources[0]] == (0, 2) && deg[sinks[0]] == (2, 0), "source/sink degrees")?;
    check(
        deg.iter().enumerate().all(|(i, d)| i == sources[0] || i == sinks[0] || *d == (1, 1)),
        "middle nodes are not on two chains",
    )?;
    let shapes: BTreeSet<(Vec<Vec<usize>>, Vec<usize>)> = g
        .nodes
        .iter()
        .map(|n| {
            let mut d = n.dims.clone();
            d.sort();
            (d, n.proj.clone())
        })
        .collect();
    let want: BTreeSet<(Vec<Vec<usize>>, Vec<usize>)> = [
        (vec![vec![1, 1], vec![1, 1]], vec![]),
        (vec![vec![1, 0], vec![1, 1]], vec![]),
        (vec![vec![0, 1], vec![1, 1]], vec![]),
        (vec![vec![1, 0]], vec![1]),
        (vec![vec![0, 1]], vec![0]),
        (vec![], vec![0, 1]),
    ]
    .into_iter()
    .collect();
    check(shapes == want, "node modules differ from P1+P2, P1+S1, S2+P2, S1, S2, 0")?;
    Ok("6 pairs on two chains of length 3 between (A,0) and (0,A)".into())
}

fn c2(runs: &mut Runs) -> Outcome {
    let want = [2, 6, 20, 70, 252];
    let got: Vec<usize> = (1..=5).map(|m| runs.total(&format!("A_{m}"), None)).collect();
    check(got == want, format!("got {got:?}"))?;
    Ok(format!("{got:?}"))
}

fn c3(runs: &mut Runs) -> Outcome {
    let want = [("D3", 28), ("D4", 114), ("R4", 88), ("H4", 96)];
    let mut out = Vec::new();
    for (name, n) in want {
        let got = runs.total(name, None);
        check(got == n, format!("{name}: {got} != {n}"))?;
        out.push(format!("{name}={got}"));
    }
    Ok(out.join(" "))
}

fn c4(runs: &mut Runs) -> Outcome {
    let want: [(&str, Vec<usize>); 5] = [
        ("D4~", vec![1, 4, 12, 36, 61]),
        ("H4~", vec![1, 4, 12, 32, 47]),
        ("K4", vec![1, 4, 12, 36, 83]),
        ("U4", vec![1, 4, 12, 36, 83]),
        ("P4", vec![1, 4, 12, 40, 135]),
    ];
    for (name, s) in &want {
        let got = runs.strata(name, None);
        check(&got == s, format!("{name}: {got:?} != {s:?}"))?;
    }
    let total = runs.total("P4", None);
    check(total == 192, format!("P4 total {total}"))?;
    Ok("all five strata vectors match; P4 total 192".into())
}

fn c5(runs: &mut Runs) -> Outcome {
    let a4 = runs.strata("D4~", None)[4];
    check(a4 == 61, format!("a_4 = {a4}"))?;
    Ok("a_4(D4~) = 61".into())
}

fn c6(runs: &mut Runs) -> Outcome {
    let s = runs.strata("M4", None);
    check(s[..4] == [1, 4, 12, 40], format!("a_0..a_3 = {:?}", &s[..4]))?;
    Ok(format!("a_0..a_3 = (1,4,12,40); a_4 = {} (no reference value)", s[4]))
}

fn c7(_: &mut Runs) -> Outcome {
    let a = Arc::new(catalog("L5").map_err(|e| e.to_string())?);
    for budget in [500, 1000] {
        let g = enumerate(&a, EnumOptions { budget, jobs: None }).map_err(|e| e.to_string())?;
        check(g.len() >= 500, format!("budget {budget}: only {} pairs", g.len()))?;
        check(g.status == Status::BudgetExceeded, format!("budget {budget}: status {:?}", g.status))?;
    }
    Ok("L5 reaches 500 and 1000 pairs; status budget-exceeded".into())
}

fn c8(runs: &mut Runs) -> Outcome {
    let mut out = Vec::new();
    for base in ["D3", "R4", "D4", "H4"] {
        let quotient = format!("{base}~");
        let (a, b) = (runs.strata(base, None), runs.strata(&quotient, None));
        check(a == b, format!("{base}: {a:?} vs {quotient}: {b:?}"))?;
        out.push(format!("{base}={}", a.iter().sum::<usize>()));
    }
    Ok(format!("equal strata for each pair ({})", out.join(" ")))
}

fn c9(_: &mut Runs) -> Outcome {
    for name in ["D3", "H4"] {
        let a = catalog(name).map_err(|e| e.to_string())?;
        let ok = hasse_isomorphic_reversed(&a, 100_000).map_err(|e| e.to_string())?;
        check(ok, format!("{name}: no anti-isomorphism"))?;
    }
    Ok("Hasse(A^op) is the reversed Hasse(A) for D3 and H4".into())
}

fn c10(runs: &mut Runs) -> Outcome {
    let mut checked = 0;
    for ((name, p), (n, g)) in &runs.graphs {
        if !g.is_complete() {
            continue;
        }
        check(g.is_regular(*n), format!("{name} over F_{p} is not regular"))?;
        check(g.sources().len() == 1 && g.sinks().len() == 1, format!("{name}: source/sink"))?;
        checked += 1;
    }
    for name in ["D3", "H4"] {
        let op = Arc::new(catalog(name).and_then(|a| a.opposite()).map_err(|e| e.to_string())?);
        let g = enumerate(&op, EnumOptions::default()).map_err(|e| e.to_string())?;
        check(g.is_regular(op.num_vertices()), format!("{name}^op is not regular"))?;
        checked += 1;
    }
    Ok(format!("{checked} complete graphs regular with unique source and sink"))
}

fn c11(_: &mut Runs) -> Outcome {
    for (r, want) in [(10, S2_10_EDGES), (21, S2_21_EDGES), (11, S2_11_EDGES)] {
        let e = s2r_edges(2, r).map_err(|e| e.to_string())?;
        let refs: Vec<(&str, &str)> = e.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        check(edge_set(&refs) == edge_set(want), format!("S(2,{r}) edge set differs"))?;
    }
    for r in [10, 21] {
        let w = contains_infinite_subquiver(&s2r_quiver(2, r).map_err(|e| e.to_string())?);
        check(w.map(|w| w.pattern) == Some(Pattern::Q1), format!("S(2,{r}): no Q1 witness"))?;
    }
    let w = contains_infinite_subquiver(&s2r_quiver(2, 11).map_err(|e| e.to_string())?);
    check(w.is_none(), "S(2,11) has a witness")?;
    Ok("edge sets for r = 10, 21, 11 match; Q1 for 10 and 21, none for 11".into())
}

fn c12(_: &mut Runs) -> Outcome {
    let mut rs = BTreeSet::new();
    for &(r, lam, expected) in PRINTED {
        let lam = Partition::parse(lam).map_err(|e| e.to_string())?;
        let k = lam.parts().get(1).copied().unwrap_or(0);
        let got: Vec<String> =
            young_character(2, r, k).map_err(|e| e.to_string())?.iter().map(|x| x.to_string()).collect();
        check(got == expected, format!("ch Y({lam}) at r = {r}: {got:?}"))?;
        rs.insert(r);
    }
    // No list is printed for r = 15; the characters must still split the
    // quiver into components matching the shipped K4 + A_2 + F + F.
    let q = s2r_quiver(2, 15).map_err(|e| e.to_string())?;
    let mut sizes: Vec<usize> = q.components().iter().map(Vec::len).collect();
    sizes.sort_unstable();
    let shipped = catalog("S(2,15)_p2").and_then(|a| a.block_decompose()).map_err(|e| e.to_string())?;
    let mut want: Vec<usize> = shipped.iter().map(|b| b.num_vertices()).collect();
    want.sort_unstable();
    check(sizes == want, format!("r = 15 component sizes {sizes:?} vs {want:?}"))?;
    Ok(format!("{} lists for r in {:?} match; r = 15 components {:?}", PRINTED.len(), rs, sizes))
}

fn c13(_: &mut Runs) -> Outcome {
    let mut cells = 0;
    for (p, n, letters) in golden() {
        for (i, want) in letters.iter().enumerate() {
            let got = classify(p, n, i + 1).map_err(|e| e.to_string())?.verdict.letter();
            check(got == *want, format!("p={p} n={n} r={}: {got} != {want}", i + 1))?;
            cells += 1;
        }
    }
    for (n, r) in [(2, 8), (2, 17), (2, 19), (3, 4), (5, 5), (6, 5)] {
        check(classify(2, n, r).unwrap().verdict == Verdict::Open, format!("({n},{r}) should be open"))?;
    }
    for (n, r) in [(2, 6), (2, 13), (2, 15), (3, 5), (4, 5)] {
        check(classify(2, n, r).unwrap().verdict == Verdict::WildFinite, format!("({n},{r}) should be W+"))?;
    }
    Ok(format!("{cells} cells match"))
}

fn c14(runs: &mut Runs) -> Outcome {
    let d4 = catalog("D4").map_err(|e| e.to_string())?;
    let p4 = catalog("P4").map_err(|e| e.to_string())?;
    let order: Vec<usize> = ["1", "3", "4", "2"].iter().map(|l| d4.quiver().vertex_index(l).unwrap()).collect();
    let c = d4.cartan_matrix();
    let cd: Vec<Vec<usize>> = order.iter().map(|&i| order.iter().map(|&j| c[i][j]).collect()).collect();
    check(cd == vec![vec![1, 1, 0, 1], vec![1, 3, 1, 2], vec![0, 1, 2, 0], vec![1, 2, 0, 2]], format!("D4 {cd:?}"))?;
    let cp = p4.cartan_matrix();
    check(cp == vec![vec![2, 2, 1, 1], vec![2, 4, 2, 2], vec![1, 2, 2, 1], vec![1, 2, 1, 2]], format!("P4 {cp:?}"))?;
    check((0..4).all(|i| (0..4).all(|j| cd[i][j] <= cp[i][j])), "D4 Cartan not entrywise below P4")?;
    let (sd, sp) = (runs.strata("D4", None), runs.strata("P4", None));
    check((2..=4).all(|s| sd[s] <= sp[s]), format!("a_s(D4) {sd:?} vs a_s(P4) {sp:?}"))?;
    Ok(format!("Cartan matrices match; a_2..a_4: D4 {:?} <= P4 {:?}", &sd[2..], &sp[2..]))
}

fn c15(runs: &mut Runs) -> Outcome {
    let mut names: Vec<String> = (1..=5).map(|m| format!("A_{m}")).collect();
    names.extend(["D3", "D4", "R4", "H4", "D4~", "H4~", "K4", "U4", "P4"].map(String::from));
    for name in &names {
        let base = runs.strata(name, Some(2));
        for p in [3, 5] {
            let other = runs.strata(name, Some(p));
            check(other == base, format!("{name}: F_2 {base:?} vs F_{p} {other:?}"))?;
        }
    }
    Ok(format!("{} algebras agree over F_2, F_3, F_5", names.len()))
}

fn c16(_: &mut Runs) -> Outcome {
    let mut done = Vec::new();
    for name in names() {
        let a = Arc::new(catalog(&name).map_err(|e| e.to_string())?);
        if a.dim() > 6 {
            continue;
        }
        let brute = pair_keys(&a);
        let brute_set: BTreeSet<_> = brute.iter().cloned().collect();
        check(brute_set.len() == brute.len(), format!("{name}: repeated key among brute-force pairs"))?;
        let g = enumerate(&a, EnumOptions::default()).map_err(|e| e.to_string())?;
        let mutated: BTreeSet<_> = g.nodes.iter().map(|n| n.key.clone()).collect();
        check(brute_set == mutated, format!("{name}: {} brute-force vs {} mutation", brute_set.len(), mutated.len()))?;
        done.push(format!("{name}={}", mutated.len()));
    }
    check(!done.is_empty(), "no algebra of dimension <= 6")?;
    Ok(done.join(" "))
}

fn main() {
    let criteria: [(&str, Criterion); 16] = [
        ("Example26 Hasse quiver", c1),
        ("A_m counts", c2),
        ("tame block counts", c3),
        ("strata", c4),
        ("a_4(D4~)", c5),
        ("M4 partial strata", c6),
        ("L5 lower bound", c7),
        ("central quotient invariance", c8),
        ("opposite anti-isomorphism", c9),
        ("Hasse regularity", c10),
        ("S(2,r) quivers", c11),
        ("Young characters", c12),
        ("classification grid", c13),
        ("Cartan comparison", c14),
        ("field independence", c15),
        ("brute-force oracle", c16),
    ];
    let mut runs = Runs::default();
    let mut failed = 0;
    std::panic::set_hook(Box::new(|_| {}));
    for (i, (label, f)) in criteria.iter().enumerate() {
        let res = catch_unwind(AssertUnwindSafe(|| f(&mut runs)))
            .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        match res {
            Ok(detail) => println!("PASS {:>2} {label}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {label}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
