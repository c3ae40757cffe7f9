//! Finiteness screens that look only at the quiver.
//!
//! Two tests are offered. The separated-quiver test decides τ-tilting
//! finiteness of `A / rad² A`: it is finite exactly when every connected
//! component of the separated quiver is a simply-laced Dynkin diagram.
//! The pattern search looks for one of the known τ-tilting infinite
//! shapes (`Q1`, `Q2`, `Q3`, or a double arrow) as a subquiver.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::quiver_algebra::Quiver;

/// Bipartite graph on `{i} ⊔ {i'}` with an edge `i -- j'` for each arrow
/// `i -> j`. Vertex `i` has index `i`, vertex `j'` has index `n + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatedQuiver {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SeparatedQuiver {
    pub fn of(q: &Quiver) -> SeparatedQuiver {
        let n = q.num_vertices();
        let edges = q.arrows().iter().map(|a| (a.source, n + a.target)).collect();
        SeparatedQuiver { n, edges }
    }

    /// Connected components, each as a sorted vertex list.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let total = 2 * self.n;
        let mut adj = vec![Vec::new(); total];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; total];
        let mut out = Vec::new();
        for s in 0..total {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Simply-laced Dynkin types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Dynkin {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl fmt::Display for Dynkin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dynkin::A(n) => write!(f, "A{n}"),
            Dynkin::D(n) => write!(f, "D{n}"),
            Dynkin::E6 => write!(f, "E6"),
            Dynkin::E7 => write!(f, "E7"),
            Dynkin::E8 => write!(f, "E8"),
        }
    }
}

/// Classifies a connected simple graph given by its vertex count and
/// edge list (vertices `0..n`). Multi-edges and loops are never Dynkin.
pub fn dynkin_type(n: usize, edges: &[(usize, usize)]) -> Option<Dynkin> {
    let mut set = BTreeSet::new();
    for &(a, b) in edges {
        if a == b || !set.insert((a.min(b), a.max(b))) {
            return None;
        }
    }
    if n == 0 || edges.len() + 1 != n {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    // A tree with n-1 edges is connected iff a walk reaches every vertex.
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => Some(Dynkin::A(n)),
        [c] if adj[*c].len() == 3 => {
            let mut arms: Vec<usize> = adj[*c]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    while adj[cur].len() == 2 {
                        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Some(Dynkin::D(n)),
                [1, 2, 2] => Some(Dynkin::E6),
                [1, 2, 3] => Some(Dynkin::E7),
                [1, 2, 4] => Some(Dynkin::E8),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Dynkin types of the separated-quiver components (isolated vertices
/// count as `A1`), or `None` when some component is not Dynkin.
pub fn separated_dynkin_types(q: &Quiver) -> Option<Vec<Dynkin>> {
    let sep = SeparatedQuiver::of(q);
    let mut out = Vec::new();
    for comp in sep.components() {
        let local: BTreeMap<usize, usize> = comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<(usize, usize)> = sep
            .edges
            .iter()
            .filter(|(a, _)| local.contains_key(a))
            .map(|(a, b)| (local[a], local[b]))
            .collect();
        out.push(dynkin_type(comp.len(), &edges)?);
    }
    Some(out)
}

/// Whether `A / rad² A` is τ-tilting finite for any algebra with quiver `q`.
pub fn rad_square_zero_finite(q: &Quiver) -> bool {
    separated_dynkin_types(q).is_some()
}

/// Known τ-tilting infinite shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Pattern {
    /// A double arrow `u ⇉ v` (the Kronecker quiver), or two loops.
    Kronecker,
    /// Doubled 4-cycle.
    Q1,
    /// A vertex doubly joined to four others.
    Q2,
    /// Doubled H: two joined vertices, each doubly joined to two more.
    Q3,
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Pattern::Kronecker => "Kronecker",
            Pattern::Q1 => "Q1",
            Pattern::Q2 => "Q2",
            Pattern::Q3 => "Q3",
        };
        f.write_str(s)
    }
}

/// A matched pattern with the quiver vertices it uses, in pattern order.
///
/// * `Q1`: the cycle `v0 ⇄ v1 ⇄ v2 ⇄ v3 ⇄ v0`.
/// * `Q2`: centre first, then the four neighbours.
/// * `Q3`: the two centres, then the two neighbours of each.
/// * `Kronecker`: source then target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub pattern: Pattern,
    pub vertices: Vec<usize>,
    pub labels: Vec<String>,
}

/// Undirected graph of pairs joined by arrows in both directions.
fn double_graph(q: &Quiver) -> Vec<BTreeSet<usize>> {
    let n = q.num_vertices();
    let arrows: BTreeSet<(usize, usize)> = q.arrows().iter().map(|a| (a.source, a.target)).collect();
    let mut adj = vec![BTreeSet::new(); n];
    for &(a, b) in &arrows {
        if a != b && arrows.contains(&(b, a)) {
            adj[a].insert(b);
        }
    }
    adj
}

fn find_q3(adj: &[BTreeSet<usize>]) -> Option<Vec<usize>> {
    for u in 0..adj.len() {
        for &v in adj[u].iter().filter(|&&v| v > u) {
            let nu: Vec<usize> = adj[u].iter().copied().filter(|&x| x != v).collect();
            let nv: Vec<usize> = adj[v].iter().copied().filter(|&x| x != u).collect();
            for (i, &a) in nu.iter().enumerate() {
                for &b in &nu[i + 1..] {
                    for (j, &c) in nv.iter().enumerate() {
                        for &d in &nv[j + 1..] {
                            let set: BTreeSet<usize> = [u, v, a, b, c, d].into_iter().collect();
                            if set.len() == 6 {
                                return Some(vec![u, v, a, b, c, d]);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

fn find_q2(adj: &[BTreeSet<usize>]) -> Option<Vec<usize>> {
    (0..adj.len()).find(|&c| adj[c].len() >= 4).map(|c| {
        let mut w = vec![c];
        w.extend(adj[c].iter().take(4));
        w
    })
}

fn find_q1(adj: &[BTreeSet<usize>]) -> Option<Vec<usize>> {
    for a in 0..adj.len() {
        for &b in adj[a].iter().filter(|&&b| b > a) {
            for &c in adj[b].iter().filter(|&&c| c != a && c > a) {
                for &d in adj[c].iter().filter(|&&d| d != b && d != a && d > a) {
                    if adj[d].contains(&a) {
                        return Some(vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

fn find_kronecker(q: &Quiver) -> Option<Vec<usize>> {
    let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for a in q.arrows() {
        *count.entry((a.source, a.target)).or_default() += 1;
    }
    count.into_iter().find(|&(_, c)| c >= 2).map(|((s, t), _)| vec![s, t])
}

/// Searches for the shapes `Q3`, `Q2`, `Q1`, Kronecker in that order and
/// returns the first match. Matching is as a (not necessarily induced)
/// subquiver.
pub fn contains_infinite_subquiver(q: &Quiver) -> Option<Witness> {
    let adj = double_graph(q);
    let found = find_q3(&adj)
        .map(|w| (Pattern::Q3, w))
        .or_else(|| find_q2(&adj).map(|w| (Pattern::Q2, w)))
        .or_else(|| find_q1(&adj).map(|w| (Pattern::Q1, w)))
        .or_else(|| find_kronecker(q).map(|w| (Pattern::Kronecker, w)))?;
    let labels = found.1.iter().map(|&v| q.vertices()[v].clone()).collect();
    Some(Witness { pattern: found.0, vertices: found.1, labels })
}

/// Every pattern present in `q`, one witness each.
pub fn all_infinite_subquivers(q: &Quiver) -> Vec<Witness> {
    let adj = double_graph(q);
    let mut out = Vec::new();
    let mut push = |pattern: Pattern, w: Option<Vec<usize>>| {
        if let Some(vertices) = w {
            let labels = vertices.iter().map(|&v| q.vertices()[v].clone()).collect();
            out.push(Witness { pattern, vertices, labels });
        }
    };
    push(Pattern::Q3, find_q3(&adj));
    push(Pattern::Q2, find_q2(&adj));
    push(Pattern::Q1, find_q1(&adj));
    push(Pattern::Kronecker, find_kronecker(q));
    out
}

/// Summary of both screens for one quiver.
#[derive(Clone, Debug, Serialize)]
pub struct ScreenReport {
    pub rad_square_zero_finite: bool,
    pub separated_types: Option<Vec<String>>,
    pub witness: Option<Witness>,
}

pub fn screen(q: &Quiver) -> ScreenReport {
    let types = separated_dynkin_types(q);
    ScreenReport {
        rad_square_zero_finite: types.is_some(),
        separated_types: types.map(|t| t.iter().map(|d| d.to_string()).collect()),
        witness: contains_infinite_subquiver(q),
    }
}
