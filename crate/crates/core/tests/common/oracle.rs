//! Brute-force support τ-tilting pairs straight from the definition, for
//! very small algebras over small fields.
//!
//! Every representation up to a total-dimension bound is generated by
//! running through all matrix tuples and keeping those that satisfy the
//! relations. Indecomposability, isomorphism and τ-rigidity are decided
//! by exhausting the relevant Hom spaces computed with `hom_direct`
//! (the plain commutation system) and the literal translate `tau`.

use std::sync::Arc;

use sttilt::field_linalg::Matrix;
use sttilt::modules_rep::{ModuleMap, Representation};
use sttilt::quiver_algebra::BoundAlgebra;

/// All linear combinations of `basis` with coefficients in F_p.
fn all_combinations(p: u32, basis: &[ModuleMap], src: &[usize], tgt: &[usize]) -> Vec<ModuleMap> {
    let mut out = vec![ModuleMap::zero(p, src, tgt)];
    for b in basis {
        out = out.into_iter().flat_map(|m| (0..p).map(move |c| m.add(&b.scale(c)))).collect();
    }
    out
}

fn is_nilpotent(m: &Matrix) -> bool {
    m.pow(m.rows().max(1) as u64).is_zero()
}

/// `End(M)` is local: every endomorphism is invertible or nilpotent.
pub fn is_indecomposable(m: &Representation) -> bool {
    let p = m.characteristic();
    let d = m.dim_vector();
    let n = m.total_dim();
    all_combinations(p, &m.hom_direct(m).basis, d, d).iter().all(|f| {
        let full = f.to_full();
        full.rank() == n || is_nilpotent(&full)
    })
}

/// Some map `M -> N` is bijective.
pub fn isomorphic(m: &Representation, n: &Representation) -> bool {
    if m.dim_vector() != n.dim_vector() {
        return false;
    }
    let p = m.characteristic();
    all_combinations(p, &m.hom_direct(n).basis, m.dim_vector(), n.dim_vector())
        .iter()
        .any(|f| f.to_full().rank() == m.total_dim())
}

fn dim_vectors(n: usize, max_total: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                let used: usize = v.iter().sum();
                (0..=max_total - used).map(move |k| [v.clone(), vec![k]].concat())
            })
            .collect();
    }
    out.retain(|v| v.iter().sum::<usize>() > 0);
    out
}

/// Every representation with dimension vector `dims`.
fn representations_with(a: &Arc<BoundAlgebra>, dims: &[usize]) -> Vec<Representation> {
    let p = a.characteristic();
    let shapes: Vec<(usize, usize)> =
        a.generators().iter().map(|&g| (dims[a.basis()[g].source], dims[a.basis()[g].target])).collect();
    let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let total = (p as u64).pow(entries as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut k = code;
        let gens: Vec<Matrix> = shapes
            .iter()
            .map(|&(r, c)| {
                let data = (0..r * c)
                    .map(|_| {
                        let v = (k % p as u64) as u32;
                        k /= p as u64;
                        v
                    })
                    .collect();
                Matrix::from_data(p, r, c, data)
            })
            .collect();
        if let Ok(m) = Representation::from_matrices(a.clone(), dims.to_vec(), gens) {
            out.push(m);
        }
    }
    out
}

/// Indecomposable modules of total dimension at most `max_total`, one
/// per isomorphism class.
pub fn indecomposables(a: &Arc<BoundAlgebra>, max_total: usize) -> Vec<Representation> {
    let mut out: Vec<Representation> = Vec::new();
    for dims in dim_vectors(a.num_vertices(), max_total) {
        for m in representations_with(a, &dims) {
            if is_indecomposable(&m) && !out.iter().any(|x| isomorphic(x, &m)) {
                out.push(m);
            }
        }
    }
    out
}

/// Keys of all support τ-tilting pairs found by the definition: choose
/// pairwise compatible τ-rigid indecomposables `X` and a vertex set `P`
/// with `Hom(P, X) = 0` and `|X| + |P| = n`.
pub fn pair_keys(a: &Arc<BoundAlgebra>) -> Vec<Vec<Vec<i64>>> {
    let n = a.num_vertices();
    let bound = a.cartan_matrix().iter().map(|r| r.iter().sum::<usize>()).max().unwrap_or(1) + 1;
    let rigid: Vec<Representation> = indecomposables(a, bound)
        .into_iter()
        .filter(|m| m.hom_direct(&m.tau()).dim() == 0)
        .collect();
    let taus: Vec<Representation> = rigid.iter().map(|m| m.tau()).collect();
    let k = rigid.len();
    let compatible: Vec<Vec<bool>> =
        (0..k).map(|i| (0..k).map(|j| rigid[i].hom_direct(&taus[j]).dim() == 0).collect()).collect();
    let mut keys = Vec::new();
    for mask in 0u64..(1u64 << k) {
        let chosen: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        if chosen.len() > n || !chosen.iter().all(|&i| chosen.iter().all(|&j| compatible[i][j])) {
            continue;
        }
        for pmask in 0u64..(1u64 << n) {
            let proj: Vec<usize> = (0..n).filter(|&v| pmask >> v & 1 == 1).collect();
            if proj.len() + chosen.len() != n {
                continue;
            }
            if chosen.iter().any(|&i| proj.iter().any(|&v| rigid[i].dim_vector()[v] != 0)) {
                continue;
            }
            let mut key: Vec<Vec<i64>> = chosen.iter().map(|&i| rigid[i].g_vector()).collect();
            for &v in &proj {
                let mut e = vec![0i64; n];
                e[v] = -1;
                key.push(e);
            }
            key.sort();
            keys.push(key);
        }
    }
    keys
}
