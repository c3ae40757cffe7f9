#![allow(dead_code)]

pub mod golden;
pub mod oracle;

use std::sync::Arc;

use sttilt::catalog::catalog;
use sttilt::field_linalg::Matrix;
use sttilt::modules_rep::Representation;
use sttilt::mutation::{left_mutations, SttPair};
use sttilt::quiver_algebra::BoundAlgebra;

pub fn alg(name: &str) -> Arc<BoundAlgebra> {
    Arc::new(catalog(name).unwrap())
}

/// Builds a module from `(arrow label, rows)` entries; missing arrows act by zero.
pub fn rep(a: &Arc<BoundAlgebra>, dims: &[usize], maps: &[(&str, Vec<Vec<i64>>)]) -> Representation {
    let p = a.characteristic();
    let gens = a
        .generators()
        .iter()
        .map(|&g| {
            let b = &a.basis()[g];
            let (r, c) = (dims[b.source], dims[b.target]);
            match maps.iter().find(|(l, _)| *l == b.label) {
                Some((_, rows)) => Matrix::from_rows(p, rows),
                None => Matrix::zeros(p, r, c),
            }
        })
        .collect();
    Representation::from_matrices(a.clone(), dims.to_vec(), gens).unwrap()
}

/// Plain sequential closure under left mutation, keeping the pair
/// objects: `(pairs, edges as (from, to))`.
pub fn mutation_closure(a: &Arc<BoundAlgebra>) -> (Vec<SttPair>, Vec<(usize, usize)>) {
    let mut pairs = vec![SttPair::regular(a)];
    let mut edges = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        for (_, next) in left_mutations(&pairs[i]).unwrap() {
            let j = match pairs.iter().position(|q| q.key == next.key) {
                Some(j) => j,
                None => {
                    pairs.push(next);
                    pairs.len() - 1
                }
            };
            edges.push((i, j));
        }
        i += 1;
    }
    (pairs, edges)
}
