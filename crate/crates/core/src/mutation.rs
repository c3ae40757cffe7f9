//! Support τ-tilting pairs, left mutation and Hasse-quiver enumeration.
//!
//! Pairs are identified by their g-key: the sorted g-vectors of the module
//! summands together with `-e_i` for each projective in the second
//! component. Enumeration is a breadth-first search from `(A, 0)` using
//! left mutations only.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field_linalg::{Matrix, Subspace};
use crate::modules_rep::{GVector, HomSpace, ModuleMap, Representation};
use crate::quiver_algebra::BoundAlgebra;

/// Canonical key of a pair: sorted list of signed g-vectors.
pub type GKey = Vec<GVector>;

pub const DEFAULT_BUDGET: usize = 100_000;

/// A basic support τ-tilting pair `(M, P)`.
#[derive(Clone, Debug)]
pub struct SttPair {
    /// Indecomposable summands of `M`, sorted by g-vector.
    pub summands: Vec<Representation>,
    /// Vertices `i` with `P_i` in the projective part, sorted.
    pub proj: Vec<usize>,
    pub key: GKey,
}

impl SttPair {
    fn new(mut summands: Vec<Representation>, mut proj: Vec<usize>, n: usize) -> SttPair {
        summands.sort_by_cached_key(|m| m.g_vector());
        proj.sort_unstable();
        let mut key: GKey = summands.iter().map(|m| m.g_vector()).collect();
        for &i in &proj {
            let mut e = vec![0i64; n];
            e[i] = -1;
            key.push(e);
        }
        key.sort();
        SttPair { summands, proj, key }
    }

    /// The pair `(A, 0)`.
    pub fn regular(alg: &Arc<BoundAlgebra>) -> SttPair {
        let n = alg.num_vertices();
        let summands = (0..n).map(|i| Representation::projective(alg.clone(), i)).collect();
        SttPair::new(summands, Vec::new(), n)
    }

    /// The pair `(0, A)`.
    pub fn zero(alg: &Arc<BoundAlgebra>) -> SttPair {
        let n = alg.num_vertices();
        SttPair::new(Vec::new(), (0..n).collect(), n)
    }

    /// `|M|`.
    pub fn support_rank(&self) -> usize {
        self.summands.len()
    }

    pub fn dim_vectors(&self) -> Vec<Vec<usize>> {
        self.summands.iter().map(|m| m.dim_vector().to_vec()).collect()
    }

    /// Checks the defining conditions: `M` τ-rigid, `Hom(P, M) = 0` and
    /// `|M| + |P| = |A|`, plus basicness through distinct g-vectors.
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.summands.len() + self.proj.len() != n {
            return Err(Error::NotLeftMutable("|M| + |P| differs from |A|".into()));
        }
        for a in &self.summands {
            for b in &self.summands {
                if !a.hom_to_tau_vanishes(b) {
                    return Err(Error::NotLeftMutable("module part is not τ-rigid".into()));
                }
            }
            if self.proj.iter().any(|&i| a.dim_vector()[i] != 0) {
                return Err(Error::NotLeftMutable("Hom(P, M) is nonzero".into()));
            }
        }
        let distinct: BTreeSet<&GVector> = self.key.iter().collect();
        if distinct.len() != self.key.len() {
            return Err(Error::NotLeftMutable("repeated g-vector".into()));
        }
        Ok(())
    }
}

/// `(N, Q) ≤ (M, P)`: `Hom(N, τM) = 0` and `P ⊆ Q`.
pub fn leq(lower: &SttPair, upper: &SttPair) -> bool {
    upper.proj.iter().all(|i| lower.proj.binary_search(i).is_ok())
        && upper.summands.iter().all(|m| lower.summands.iter().all(|n| m.hom_to_tau_vanishes(n)))
}

/// Whether `x` is a quotient of a sum of copies of the `gens`.
pub fn in_fac(x: &Representation, gens: &[Representation]) -> bool {
    let p = x.characteristic();
    let mut spaces: Vec<Subspace> = x.dim_vector().iter().map(|&d| Subspace::zero(p, d)).collect();
    for g in gens {
        for h in &g.hom(x).basis {
            for (v, b) in h.blocks.iter().enumerate() {
                for r in 0..b.rows() {
                    spaces[v].insert(b.row(r));
                }
            }
        }
    }
    spaces.iter().zip(x.dim_vector()).all(|(s, &d)| s.dim() == d)
}

/// Basis of the radical of `End(m)` for an indecomposable `m` whose
/// endomorphism ring is local with residue field F_p.
fn radical_of_end(m: &Representation, end: &HomSpace) -> Vec<ModuleMap> {
    let p = m.characteristic();
    let id = ModuleMap::identity(p, m.dim_vector());
    let mut out = Vec::new();
    let mut span = Subspace::zero(p, id.flatten().len());
    for x in &end.basis {
        let full = x.to_full();
        let lam = (0..p)
            .find(|&c| {
                let shifted = full.sub(&Matrix::identity(p, full.rows()).scale(c));
                shifted.rank() < full.rows()
            })
            .unwrap_or(0);
        let r = x.add(&id.scale((p - lam) % p));
        if span.insert(&r.flatten()) {
            out.push(r);
        }
    }
    out
}

/// A minimal left `add(targets)`-approximation `f: X -> N'`.
#[derive(Clone, Debug)]
pub struct Approximation {
    /// Copies of each target in `N'`.
    pub multiplicities: Vec<usize>,
    pub codomain: Representation,
    pub map: ModuleMap,
    pub cokernel: Representation,
}

/// Minimal left approximation of `x` by the pairwise non-isomorphic
/// indecomposables `targets`.
///
/// `N_i` occurs in `N'` once for each basis vector of
/// `Hom(X, N_i) / Σ_j Hom(X, N_j)·rad(N_j, N_i)`; those maps assembled
/// side by side give a left-minimal approximation.
pub fn min_left_approx(x: &Representation, targets: &[Representation]) -> Approximation {
    let alg = x.algebra().clone();
    let p = x.characteristic();
    let homs: Vec<HomSpace> = targets.iter().map(|t| x.hom(t)).collect();
    let rads: Vec<Vec<ModuleMap>> = targets.iter().map(|t| radical_of_end(t, &t.hom(t))).collect();
    let mut chosen: Vec<(usize, ModuleMap)> = Vec::new();
    let mut multiplicities = vec![0; targets.len()];
    for (i, ti) in targets.iter().enumerate() {
        if homs[i].dim() == 0 {
            continue;
        }
        let width = homs[i].basis[0].flatten().len();
        let mut span = Subspace::zero(p, width);
        for (j, tj) in targets.iter().enumerate() {
            if homs[j].dim() == 0 {
                continue;
            }
            let radical: Vec<ModuleMap> = if i == j { rads[i].clone() } else { tj.hom(ti).basis };
            for h in &homs[j].basis {
                for psi in &radical {
                    span.insert(&h.then(psi).flatten());
                }
            }
        }
        for h in &homs[i].basis {
            if span.insert(&h.flatten()) {
                multiplicities[i] += 1;
                chosen.push((i, h.clone()));
            }
        }
    }
    let parts: Vec<&Representation> = chosen.iter().map(|(i, _)| &targets[*i]).collect();
    let codomain = Representation::direct_sum(alg, &parts);
    let blocks = x
        .dim_vector()
        .iter()
        .enumerate()
        .map(|(v, &d)| {
            let mut m = Matrix::zeros(p, d, codomain.dim_vector()[v]);
            let mut c = 0;
            for (_, h) in &chosen {
                m.set_block(0, c, &h.blocks[v]);
                c += h.blocks[v].cols();
            }
            m
        })
        .collect();
    let map = ModuleMap { blocks };
    let cokernel = codomain.cokernel_of(&map).expect("image of a module map is a submodule");
    Approximation { multiplicities, codomain, map, cokernel }
}

/// Left mutation of `t` at its `k`-th module summand.
pub fn left_mutate(t: &SttPair, k: usize) -> Result<SttPair> {
    let x = t.summands.get(k).ok_or_else(|| Error::NotLeftMutable(format!("no summand {k}")))?;
    let n = x.dim_vector().len();
    let rest: Vec<Representation> =
        t.summands.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, m)| m.clone()).collect();
    if in_fac(x, &rest) {
        return Err(Error::NotLeftMutable(format!("summand {k} lies in Fac of the others")));
    }
    let approx = min_left_approx(x, &rest);
    let rest_keys: BTreeSet<GVector> = rest.iter().map(|m| m.g_vector()).collect();
    let mut fresh: Vec<Representation> = approx
        .cokernel
        .decompose()?
        .into_iter()
        .filter(|y| !rest_keys.contains(&y.g_vector()))
        .collect();
    if fresh.len() > 1 {
        return Err(Error::NotLeftMutable(format!(
            "cokernel of the approximation has {} new summands",
            fresh.len()
        )));
    }
    let mut proj = t.proj.clone();
    let mut summands = rest.clone();
    match fresh.pop() {
        Some(y) => summands.push(y),
        None => {
            let unsupported: Vec<usize> = (0..n)
                .filter(|v| !proj.contains(v) && rest.iter().all(|m| m.dim_vector()[*v] == 0))
                .collect();
            if unsupported.len() != 1 {
                return Err(Error::NotLeftMutable(format!(
                    "support drop is ambiguous ({} candidate vertices)",
                    unsupported.len()
                )));
            }
            proj.push(unsupported[0]);
        }
    }
    Ok(SttPair::new(summands, proj, n))
}

/// Every left mutation of `t`, as `(summand index, result)`.
pub fn left_mutations(t: &SttPair) -> Result<Vec<(usize, SttPair)>> {
    let mut out = Vec::new();
    for k in 0..t.summands.len() {
        match left_mutate(t, k) {
            Ok(s) => out.push((k, s)),
            Err(Error::NotLeftMutable(msg)) if msg.contains("lies in Fac") => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Complete,
    BudgetExceeded,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HasseNode {
    pub key: GKey,
    pub rank: usize,
    pub dims: Vec<Vec<usize>>,
    pub proj: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct HasseEdge {
    pub from: usize,
    pub to: usize,
    pub pos: usize,
}

/// The Hasse quiver of the support τ-tilting poset, or the part of it
/// reached within the budget. Nodes are sorted by rank (descending) and
/// then key; edges point from the larger pair to the smaller one.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HasseGraph {
    pub algebra: String,
    #[serde(rename = "char")]
    pub p: u32,
    pub status: Status,
    pub nodes: Vec<HasseNode>,
    pub edges: Vec<HasseEdge>,
}

#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub budget: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { budget: DEFAULT_BUDGET, jobs: None }
    }
}

/// Enumerates support τ-tilting pairs by left mutation from `(A, 0)`.
pub fn enumerate(alg: &Arc<BoundAlgebra>, opts: EnumOptions) -> Result<HasseGraph> {
    match opts.jobs {
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
            pool.install(|| enumerate_inner(alg, opts.budget))
        }
        None => enumerate_inner(alg, opts.budget),
    }
}

fn enumerate_inner(alg: &Arc<BoundAlgebra>, budget: usize) -> Result<HasseGraph> {
    let budget = budget.max(1);
    let mut pairs: Vec<SttPair> = vec![SttPair::regular(alg)];
    let mut index: HashMap<GKey, usize> = HashMap::new();
    index.insert(pairs[0].key.clone(), 0);
    let mut edges: Vec<HasseEdge> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    let mut status = Status::Complete;
    const CHUNK: usize = 64;
    'outer: while !queue.is_empty() {
        let batch: Vec<usize> = (0..CHUNK.min(queue.len())).filter_map(|_| queue.pop_front()).collect();
        let results: Vec<Result<Vec<(usize, SttPair)>>> =
            batch.par_iter().map(|&id| left_mutations(&pairs[id])).collect();
        for (&id, res) in batch.iter().zip(results) {
            for (pos, succ) in res? {
                let to = match index.get(&succ.key) {
                    Some(&j) => {
                        let mut a = pairs[j].dim_vectors();
                        let mut b = succ.dim_vectors();
                        a.sort();
                        b.sort();
                        assert_eq!(a, b, "equal g-keys with different dimension vectors");
                        j
                    }
                    None => {
                        if pairs.len() >= budget {
                            status = Status::BudgetExceeded;
                            break 'outer;
                        }
                        let j = pairs.len();
                        index.insert(succ.key.clone(), j);
                        pairs.push(succ);
                        queue.push_back(j);
                        j
                    }
                };
                edges.push(HasseEdge { from: id, to, pos });
            }
        }
    }
    Ok(finish_graph(alg, &pairs, edges, status))
}

fn finish_graph(alg: &BoundAlgebra, pairs: &[SttPair], edges: Vec<HasseEdge>, status: Status) -> HasseGraph {
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by(|&a, &b| {
        pairs[b].support_rank().cmp(&pairs[a].support_rank()).then_with(|| pairs[a].key.cmp(&pairs[b].key))
    });
    let mut new_id = vec![0; pairs.len()];
    for (k, &old) in order.iter().enumerate() {
        new_id[old] = k;
    }
    let nodes = order
        .iter()
        .map(|&i| {
            let t = &pairs[i];
            HasseNode { key: t.key.clone(), rank: t.support_rank(), dims: t.dim_vectors(), proj: t.proj.clone() }
        })
        .collect();
    let mut edges: Vec<HasseEdge> =
        edges.into_iter().map(|e| HasseEdge { from: new_id[e.from], to: new_id[e.to], pos: e.pos }).collect();
    edges.sort();
    HasseGraph { algebra: alg.name().to_string(), p: alg.characteristic(), status, nodes, edges }
}

impl HasseGraph {
    pub fn is_complete(&self) -> bool {
        self.status == Status::Complete
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `a_s` = number of pairs with `|M| = s`, for `s = 0..=|A|`.
    pub fn strata_counts(&self, n: usize) -> Result<Vec<usize>> {
        if !self.is_complete() {
            return Err(Error::IncompleteGraph);
        }
        let mut a = vec![0; n + 1];
        for node in &self.nodes {
            a[node.rank] += 1;
        }
        Ok(a)
    }

    pub fn in_out_degrees(&self) -> Vec<(usize, usize)> {
        let mut d = vec![(0, 0); self.nodes.len()];
        for e in &self.edges {
            d[e.from].1 += 1;
            d[e.to].0 += 1;
        }
        d
    }

    pub fn sources(&self) -> Vec<usize> {
        self.in_out_degrees().iter().enumerate().filter(|(_, d)| d.0 == 0).map(|(i, _)| i).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        self.in_out_degrees().iter().enumerate().filter(|(_, d)| d.1 == 0).map(|(i, _)| i).collect()
    }

    /// Every node has `|A|` incident edges, and `(A,0)`, `(0,A)` are the
    /// only source and sink.
    pub fn is_regular(&self, n: usize) -> bool {
        let degs = self.in_out_degrees();
        let src = self.sources();
        let snk = self.sinks();
        degs.iter().all(|d| d.0 + d.1 == n)
            && src.len() == 1
            && snk.len() == 1
            && self.nodes[src[0]].rank == n
            && self.nodes[snk[0]].rank == 0
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph \"{}\" {{\n", self.algebra.replace('"', "'"));
        for (i, node) in self.nodes.iter().enumerate() {
            s.push_str(&format!("  n{i} [label=\"{} | rank {}\"];\n", key_string(&node.key), node.rank));
        }
        let max_rank = self.nodes.iter().map(|n| n.rank).max().unwrap_or(0);
        for r in 0..=max_rank {
            let ids: Vec<String> =
                self.nodes.iter().enumerate().filter(|(_, n)| n.rank == r).map(|(i, _)| format!("n{i}")).collect();
            if !ids.is_empty() {
                s.push_str(&format!("  {{ rank=same; {}; }}\n", ids.join("; ")));
            }
        }
        for e in &self.edges {
            s.push_str(&format!("  n{} -> n{} [label=\"{}\"];\n", e.from, e.to, e.pos));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "algebra {} over F_{}: {} pairs ({})\n",
            self.algebra,
            self.p,
            self.nodes.len(),
            match self.status {
                Status::Complete => "complete",
                Status::BudgetExceeded => "budget exceeded",
            }
        );
        for (i, node) in self.nodes.iter().enumerate() {
            s.push_str(&format!("{i:>5}  rank {}  {}\n", node.rank, key_string(&node.key)));
        }
        s
    }
}

pub fn key_string(key: &GKey) -> String {
    let parts: Vec<String> = key
        .iter()
        .map(|g| format!("({})", g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    parts.join(" ")
}

/// `a_s` computed vertex-set by vertex-set: pairs with `|M| = s` and
/// support `S` are the τ-tilting modules of `A / <1 - e_S>`. Returns
/// `a_0..a_{max_s}`; `None` entries mark a subset whose enumeration hit
/// the budget.
pub fn strata_by_restriction(alg: &BoundAlgebra, max_s: usize, budget: usize) -> Result<Vec<Option<usize>>> {
    let n = alg.num_vertices();
    let mut out = Vec::new();
    for s in 0..=max_s.min(n) {
        if s == 0 {
            out.push(Some(1));
            continue;
        }
        let mut total = Some(0usize);
        for subset in subsets(n, s) {
            let sub = Arc::new(alg.restrict_to_vertices(&subset)?);
            let g = enumerate(&sub, EnumOptions { budget, jobs: None })?;
            if !g.is_complete() {
                total = None;
                break;
            }
            let count = g.nodes.iter().filter(|x| x.rank == s).count();
            total = total.map(|t| t + count);
        }
        out.push(total);
    }
    Ok(out)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Whether `h` and the edge-reversal of `g` are isomorphic digraphs.
pub fn reversed_isomorphic(g: &HasseGraph, h: &HasseGraph) -> bool {
    let g_rev: Vec<(usize, usize)> = g.edges.iter().map(|e| (e.to, e.from)).collect();
    let h_edges: Vec<(usize, usize)> = h.edges.iter().map(|e| (e.from, e.to)).collect();
    if g.nodes.len() != h.nodes.len() || g_rev.len() != h_edges.len() {
        return false;
    }
    // Fast path: the duality negates g-vectors.
    let h_index: HashMap<GKey, usize> = h.nodes.iter().enumerate().map(|(i, x)| (x.key.clone(), i)).collect();
    let candidate: Option<Vec<usize>> = g
        .nodes
        .iter()
        .map(|x| {
            let mut neg: GKey = x.key.iter().map(|v| v.iter().map(|c| -c).collect()).collect();
            neg.sort();
            h_index.get(&neg).copied()
        })
        .collect();
    if let Some(map) = candidate {
        if is_edge_bijection(&map, &g_rev, &h_edges) {
            return true;
        }
    }
    digraph_isomorphic(g.nodes.len(), &g_rev, &h_edges)
}

fn is_edge_bijection(map: &[usize], a: &[(usize, usize)], b: &[(usize, usize)]) -> bool {
    let distinct: BTreeSet<usize> = map.iter().copied().collect();
    if distinct.len() != map.len() {
        return false;
    }
    let mut mapped: Vec<(usize, usize)> = a.iter().map(|&(x, y)| (map[x], map[y])).collect();
    let mut bb = b.to_vec();
    mapped.sort();
    bb.sort();
    mapped == bb
}

/// Digraph isomorphism by colour refinement followed by backtracking.
pub fn digraph_isomorphic(n: usize, a: &[(usize, usize)], b: &[(usize, usize)]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let ca = refine(n, a);
    let cb = refine(n, b);
    let mut ha: Vec<u64> = ca.clone();
    let mut hb: Vec<u64> = cb.clone();
    ha.sort();
    hb.sort();
    if ha != hb {
        return false;
    }
    let adj = |edges: &[(usize, usize)]| {
        let mut out = vec![BTreeSet::new(); n];
        let mut inn = vec![BTreeSet::new(); n];
        for &(x, y) in edges {
            out[x].insert(y);
            inn[y].insert(x);
        }
        (out, inn)
    };
    let (aout, ain) = adj(a);
    let (bout, bin) = adj(b);
    let mut order: Vec<usize> = (0..n).collect();
    // Visit rare colours first.
    let mut freq: BTreeMap<u64, usize> = BTreeMap::new();
    for &c in &ca {
        *freq.entry(c).or_default() += 1;
    }
    order.sort_by_key(|&v| (freq[&ca[v]], v));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn bt(
        k: usize,
        order: &[usize],
        ca: &[u64],
        cb: &[u64],
        aout: &[BTreeSet<usize>],
        ain: &[BTreeSet<usize>],
        bout: &[BTreeSet<usize>],
        bin: &[BTreeSet<usize>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        for w in 0..cb.len() {
            if used[w] || cb[w] != ca[v] {
                continue;
            }
            let ok = aout[v].iter().all(|&x| map[x] == usize::MAX || bout[w].contains(&map[x]))
                && ain[v].iter().all(|&x| map[x] == usize::MAX || bin[w].contains(&map[x]))
                && bout[w].iter().filter(|&&y| used[y]).count()
                    == aout[v].iter().filter(|&&x| map[x] != usize::MAX).count()
                && bin[w].iter().filter(|&&y| used[y]).count()
                    == ain[v].iter().filter(|&&x| map[x] != usize::MAX).count();
            if !ok {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if bt(k + 1, order, ca, cb, aout, ain, bout, bin, map, used) {
                return true;
            }
            map[v] = usize::MAX;
            used[w] = false;
        }
        false
    }
    bt(0, &order, &ca, &cb, &aout, &ain, &bout, &bin, &mut map, &mut used)
}

/// Colour refinement run for a fixed number of rounds, so colours are
/// comparable across graphs (each colour hashes its full history).
fn refine(n: usize, edges: &[(usize, usize)]) -> Vec<u64> {
    use std::collections::hash_map::DefaultHasher;
    use std::hash::{Hash, Hasher};
    let mut out = vec![Vec::new(); n];
    let mut inn = vec![Vec::new(); n];
    for &(x, y) in edges {
        out[x].push(y);
        inn[y].push(x);
    }
    let mut col: Vec<u64> = (0..n)
        .map(|v| {
            let mut h = DefaultHasher::new();
            (out[v].len(), inn[v].len()).hash(&mut h);
            h.finish()
        })
        .collect();
    for _ in 0..n.min(32) {
        let next: Vec<u64> = (0..n)
            .map(|v| {
                let mut o: Vec<u64> = out[v].iter().map(|&x| col[x]).collect();
                let mut i: Vec<u64> = inn[v].iter().map(|&x| col[x]).collect();
                o.sort_unstable();
                i.sort_unstable();
                let mut h = DefaultHasher::new();
                (col[v], o, i).hash(&mut h);
                h.finish()
            })
            .collect();
        col = next;
    }
    col
}

/// Enumerates `A` and `A^op` and compares the Hasse quivers up to edge
/// reversal.
pub fn hasse_isomorphic_reversed(alg: &BoundAlgebra, budget: usize) -> Result<bool> {
    let a = Arc::new(alg.clone());
    let op = Arc::new(alg.opposite()?);
    let g = enumerate(&a, EnumOptions { budget, jobs: None })?;
    let h = enumerate(&op, EnumOptions { budget, jobs: None })?;
    if !g.is_complete() || !h.is_complete() {
        return Err(Error::IncompleteGraph);
    }
    Ok(reversed_isomorphic(&g, &h))
}
