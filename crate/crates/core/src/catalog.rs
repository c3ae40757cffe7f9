//! Named algebras and quiver shapes shipped with the crate.
//!
//! Presented algebras live in `data/algebras/*.json`. Central quotients
//! and direct-sum composites are described in `data/derived.json` and
//! assembled on demand. The families `A_m` and `Lambda_m` are generated
//! from their parameter. Quiver shapes without relations (used only by
//! the finiteness screens) live in `data/quivers/*.json`.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::quiver_algebra::{build_algebra, AlgebraFile, BoundAlgebra, Quiver, RelationElem};

const ALGEBRA_FILES: &[(&str, &str)] = &[
    ("D3", include_str!("../data/algebras/D3.json")),
    ("D4", include_str!("../data/algebras/D4.json")),
    ("R4", include_str!("../data/algebras/R4.json")),
    ("H4", include_str!("../data/algebras/H4.json")),
    ("K4", include_str!("../data/algebras/K4.json")),
    ("U4", include_str!("../data/algebras/U4.json")),
    ("N5", include_str!("../data/algebras/N5.json")),
    ("L5", include_str!("../data/algebras/L5.json")),
    ("M4", include_str!("../data/algebras/M4.json")),
    ("P4", include_str!("../data/algebras/P4.json")),
    ("Example26", include_str!("../data/algebras/Example26.json")),
];

const QUIVER_FILES: &[(&str, &str)] = &[
    ("s2_10_p2", include_str!("../data/quivers/s2_10_p2.json")),
    ("s3_6_p2", include_str!("../data/quivers/s3_6_p2.json")),
    ("s3_7_p2", include_str!("../data/quivers/s3_7_p2.json")),
    ("s3_8_p2", include_str!("../data/quivers/s3_8_p2.json")),
    ("s4_4_p2", include_str!("../data/quivers/s4_4_p2.json")),
    ("s2_12_p3", include_str!("../data/quivers/s2_12_p3.json")),
    ("s3_6_p3", include_str!("../data/quivers/s3_6_p3.json")),
    ("s3_10_p3", include_str!("../data/quivers/s3_10_p3.json")),
    ("s4_7_p3", include_str!("../data/quivers/s4_7_p3.json")),
    ("s4_8_p3", include_str!("../data/quivers/s4_8_p3.json")),
    ("s3_2p_p5", include_str!("../data/quivers/s3_2p_p5.json")),
];

const DERIVED: &str = include_str!("../data/derived.json");

#[derive(Deserialize)]
struct Derived {
    quotients: Vec<QuotientSpec>,
    sums: Vec<SumSpec>,
}

#[derive(Deserialize)]
struct QuotientSpec {
    name: String,
    of: String,
    generators: Vec<String>,
}

#[derive(Deserialize)]
struct SumSpec {
    name: String,
    #[serde(rename = "char")]
    p: u32,
    parts: Vec<(String, Option<Vec<String>>)>,
}

fn derived() -> Derived {
    serde_json::from_str(DERIVED).expect("shipped derived.json is well formed")
}

/// Every fixed catalog name (the families `A_m` and `Lambda_m` accept
/// any `m >= 1` and are listed here for m = 1..5).
pub fn names() -> Vec<String> {
    let mut v: Vec<String> = ALGEBRA_FILES.iter().map(|(n, _)| n.to_string()).collect();
    let d = derived();
    v.extend(d.quotients.into_iter().map(|q| q.name));
    v.extend(d.sums.into_iter().map(|s| s.name));
    for m in 1..=5 {
        v.push(format!("A_{m}"));
        v.push(format!("Lambda_{m}"));
    }
    v
}

/// Names of the shipped quiver shapes.
pub fn quiver_names() -> Vec<&'static str> {
    QUIVER_FILES.iter().map(|(n, _)| *n).collect()
}

/// Looks up a catalog algebra in its default characteristic.
pub fn catalog(name: &str) -> Result<BoundAlgebra> {
    catalog_with_char(name, None)
}

/// Looks up a catalog algebra, optionally overriding the characteristic.
/// A trailing `^op` selects the opposite algebra.
pub fn catalog_with_char(name: &str, p: Option<u32>) -> Result<BoundAlgebra> {
    if let Some(base) = name.strip_suffix("^op") {
        return catalog_with_char(base, p)?.opposite();
    }
    if let Some((_, text)) = ALGEBRA_FILES.iter().find(|(n, _)| *n == name) {
        let file: AlgebraFile = serde_json::from_str(text)?;
        return file.build(p);
    }
    if let Some(m) = name.strip_prefix("A_").and_then(|s| s.parse::<usize>().ok()) {
        return schur_block_family(m, p.unwrap_or(2));
    }
    if let Some(m) = name.strip_prefix("Lambda_").and_then(|s| s.parse::<usize>().ok()) {
        return brauer_line(m, p.unwrap_or(2));
    }
    let d = derived();
    if let Some(qs) = d.quotients.iter().find(|q| q.name == name) {
        let base = catalog_with_char(&qs.of, p)?;
        let gens = qs.generators.iter().map(|g| base.parse_elem(g)).collect::<Result<Vec<_>>>()?;
        return Ok(base.quotient_by_ideal(&gens)?.with_name(name));
    }
    if let Some(ss) = d.sums.iter().find(|s| s.name == name) {
        let p = p.unwrap_or(ss.p);
        let parts = ss
            .parts
            .iter()
            .map(|(n, labels)| Ok((catalog_with_char(n, Some(p))?, labels.clone())))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<(&BoundAlgebra, Option<Vec<String>>)> = parts.iter().map(|(a, l)| (a, l.clone())).collect();
        return BoundAlgebra::direct_sum(name, &refs);
    }
    Err(Error::UnknownAlgebra(name.to_string()))
}

/// A shipped quiver shape by name.
pub fn quiver_shape(name: &str) -> Result<Quiver> {
    let (_, text) = QUIVER_FILES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownAlgebra(name.to_string()))?;
    let file: AlgebraFile = serde_json::from_str(text)?;
    file.quiver()
}

/// The double quiver 1 ⇄ 2 ⇄ ... ⇄ m with arrows `a{i}: i -> i+1`
/// and `b{i}: i+1 -> i`.
fn line_quiver(m: usize) -> Result<Quiver> {
    let vertices: Vec<String> = (1..=m).map(|i| i.to_string()).collect();
    let mut arrows = Vec::new();
    for i in 1..m {
        arrows.push((format!("a{i}"), i.to_string(), (i + 1).to_string()));
        arrows.push((format!("b{i}"), (i + 1).to_string(), i.to_string()));
    }
    Quiver::new(&vertices, &arrows)
}

/// Mesh-type relations shared by `A_m` and `Lambda_m`:
/// `a_i a_{i+1}`, `b_{i+1} b_i` and `b_i a_i - a_{i+1} b_{i+1}`.
fn line_relations(q: &Quiver, m: usize) -> Result<Vec<RelationElem>> {
    let mut rels = Vec::new();
    for i in 1..m.saturating_sub(1) {
        let (ai, aj, bi, bj) = (format!("a{i}"), format!("a{}", i + 1), format!("b{i}"), format!("b{}", i + 1));
        rels.push(RelationElem::from_words(q, &[(1, vec![ai.clone(), aj.clone()])])?);
        rels.push(RelationElem::from_words(q, &[(1, vec![bj.clone(), bi.clone()])])?);
        rels.push(RelationElem::from_words(q, &[(1, vec![bi, ai]), (-1, vec![aj, bj])])?);
    }
    Ok(rels)
}

/// The representation-finite Schur block `A_m`.
fn schur_block_family(m: usize, p: u32) -> Result<BoundAlgebra> {
    if m == 0 {
        return Err(Error::UnknownAlgebra("A_0".into()));
    }
    let q = line_quiver(m)?;
    let mut rels = line_relations(&q, m)?;
    if m >= 2 {
        rels.push(RelationElem::from_words(&q, &[(1, vec!["a1", "b1"])])?);
    }
    build_algebra(&format!("A_{m}"), q, rels, p, 4)
}

/// The Brauer tree algebra of a line with `m` edges and no exceptional
/// vertex. `Lambda_1` is the dual numbers `F[x]/(x^2)`.
fn brauer_line(m: usize, p: u32) -> Result<BoundAlgebra> {
    let name = format!("Lambda_{m}");
    match m {
        0 => Err(Error::UnknownAlgebra(name)),
        1 => {
            let q = Quiver::new(&["1"], &[("x", "1", "1")])?;
            let rels = vec![RelationElem::from_words(&q, &[(1, vec!["x", "x"])])?];
            build_algebra(&name, q, rels, p, 4)
        }
        _ => {
            let q = line_quiver(m)?;
            let mut rels = line_relations(&q, m)?;
            if m == 2 {
                rels.push(RelationElem::from_words(&q, &[(1, vec!["a1", "b1", "a1"])])?);
                rels.push(RelationElem::from_words(&q, &[(1, vec!["b1", "a1", "b1"])])?);
            }
            build_algebra(&name, q, rels, p, 6)
        }
    }
}
