//! Quivers, relations and exact bases of bound quiver algebras `FQ/I`.
//!
//! Paths compose left to right: in the word `a1 a2` the arrow `a1` is
//! traversed first, so `a1 a2` is nonzero only when `target(a1) =
//! source(a2)`. Modules are right modules, and an arrow `a: i -> j` acts
//! as a linear map `M_i -> M_j`.
//!
//! Every algebra is stored through structure constants on a basis of
//! cosets of paths. Downstream code reads only the basis, the
//! multiplication table, the vertex idempotents and the generators
//! (arrows of the presenting quiver, or Gabriel arrows for algebras that
//! only carry structure constants).

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field_linalg::{add_mod, check_prime, mul_mod, neg_mod, reduce_i64, Matrix, Subspace};

/// Length cap used when none is given.
pub const DEFAULT_CAP: usize = 12;

/// Sparse vector over a basis: `(index, nonzero coefficient)`, sorted by
/// index.
pub type SparseVec = Vec<(usize, u32)>;

/// Dense element of an algebra, indexed by basis position.
pub type AlgElem = Vec<u32>;

/// A linear combination of arrow words, `(coefficient, arrows)`.
type WordCombination = Vec<(u32, Vec<usize>)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from vertex labels and `(name, from, to)` triples
    /// given by label.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let find = |l: &str| {
            vertices.iter().position(|v| v == l).ok_or_else(|| Error::UnknownVertex(l.to_string()))
        };
        let mut out = Vec::with_capacity(arrows.len());
        for (n, s, t) in arrows {
            out.push(Arrow { name: n.as_ref().to_string(), source: find(s.as_ref())?, target: find(t.as_ref())? });
        }
        Quiver::from_arrows(vertices, out)
    }

    pub fn from_arrows(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::RelationType(format!("duplicate vertex label `{v}`")));
            }
        }
        let mut names = BTreeSet::new();
        for a in &arrows {
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::RelationType(format!("arrow `{}` has an undeclared endpoint", a.name)));
            }
            if !names.insert(a.name.as_str()) {
                return Err(Error::RelationType(format!("duplicate arrow name `{}`", a.name)));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Quiver with one arrow in each direction for every listed edge.
    /// Arrows are named `x{k}: u -> v` and `y{k}: v -> u`.
    pub fn doubled<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut arrows = Vec::new();
        for (k, (u, v)) in edges.iter().enumerate() {
            arrows.push((format!("x{}", k + 1), u.as_ref().to_string(), v.as_ref().to_string()));
            arrows.push((format!("y{}", k + 1), v.as_ref().to_string(), u.as_ref().to_string()));
        }
        let verts: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        Quiver::new(&verts, &arrows)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Same vertices, every arrow reversed, names kept.
    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
            .collect();
        Quiver { vertices: self.vertices.clone(), arrows }
    }

    /// Connected components of the underlying graph, each sorted, ordered
    /// by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut adj = vec![Vec::new(); n];
        for a in &self.arrows {
            adj[a.source].push(a.target);
            adj[a.target].push(a.source);
        }
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut q = VecDeque::from([start]);
            while let Some(v) = q.pop_front() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        q.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

/// A path: a source vertex and a sequence of arrow indices. The empty
/// sequence is the lazy path at the source.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn lazy(v: usize) -> Self {
        Path { source: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_lazy(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.source, |&a| q.arrows[a].target)
    }

    /// Builds a path from arrow names; fails when consecutive arrows do
    /// not compose.
    pub fn from_names<S: AsRef<str>>(q: &Quiver, names: &[S]) -> Result<Path> {
        let Some(first) = names.first() else {
            return Err(Error::RelationType("empty arrow word".into()));
        };
        let idx = |n: &str| q.arrow_index(n).ok_or_else(|| Error::RelationType(format!("unknown arrow `{n}`")));
        let a0 = idx(first.as_ref())?;
        let mut arrows = vec![a0];
        let mut cur = q.arrows[a0].target;
        for n in &names[1..] {
            let a = idx(n.as_ref())?;
            if q.arrows[a].source != cur {
                return Err(Error::RelationType(format!(
                    "arrows do not compose: `{}` does not start where the previous arrow ends",
                    n.as_ref()
                )));
            }
            cur = q.arrows[a].target;
            arrows.push(a);
        }
        Ok(Path { source: q.arrows[a0].source, arrows })
    }

    pub fn is_valid(&self, q: &Quiver) -> bool {
        let mut cur = self.source;
        for &a in &self.arrows {
            if a >= q.arrows.len() || q.arrows[a].source != cur {
                return false;
            }
            cur = q.arrows[a].target;
        }
        self.source < q.num_vertices()
    }

    pub fn concat(&self, o: &Path) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&o.arrows);
        Path { source: self.source, arrows }
    }

    pub fn reversed(&self, q: &Quiver) -> Path {
        Path { source: self.target(q), arrows: self.arrows.iter().rev().copied().collect() }
    }

    pub fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", q.vertices[self.source])
        } else {
            self.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join(" ")
        }
    }

    fn order_key(&self) -> (usize, usize, &[usize]) {
        (self.arrows.len(), self.source, &self.arrows)
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Basis order: length, then source, then arrow indices lexicographically.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: i64,
    pub path: Path,
}

/// A linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationElem {
    pub terms: Vec<Term>,
}

impl RelationElem {
    /// Validates uniform endpoints, nonzero coefficients, at least one term.
    pub fn new(q: &Quiver, terms: Vec<Term>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::RelationType("relation without terms".into()));
        }
        let s = terms[0].path.source;
        let t = terms[0].path.target(q);
        for term in &terms {
            if !term.path.is_valid(q) {
                return Err(Error::RelationType("relation term is not a path".into()));
            }
            if term.coeff == 0 {
                return Err(Error::RelationType("zero coefficient in relation".into()));
            }
            if term.path.source != s || term.path.target(q) != t {
                return Err(Error::RelationType("relation terms have different endpoints".into()));
            }
        }
        Ok(RelationElem { terms })
    }

    /// Convenience: `[(coeff, ["a1","b1"]), ...]`.
    pub fn from_words<S: AsRef<str>>(q: &Quiver, words: &[(i64, Vec<S>)]) -> Result<Self> {
        let terms = words
            .iter()
            .map(|(c, w)| Ok(Term { coeff: *c, path: Path::from_names(q, w)? }))
            .collect::<Result<Vec<_>>>()?;
        RelationElem::new(q, terms)
    }

    pub fn source(&self) -> usize {
        self.terms[0].path.source
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.terms[0].path.target(q)
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|t| t.path.len()).min().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let l = self.terms[0].path.len();
        self.terms.iter().all(|t| t.path.len() == l)
    }

    pub fn reversed(&self, q: &Quiver) -> RelationElem {
        RelationElem {
            terms: self.terms.iter().map(|t| Term { coeff: t.coeff, path: t.path.reversed(q) }).collect(),
        }
    }

    pub fn display(&self, q: &Quiver) -> String {
        let mut s = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let (sign, c) = if t.coeff < 0 { ("-", -t.coeff) } else { ("+", t.coeff) };
            if i > 0 {
                s.push_str(&format!(" {sign} "));
            } else if sign == "-" {
                s.push('-');
            }
            if c != 1 {
                s.push_str(&format!("{c}*"));
            }
            s.push_str(&t.path.label(q));
        }
        s
    }
}

/// One basis element: the coset of a path (or a vertex idempotent).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub source: usize,
    pub target: usize,
    pub degree: usize,
    pub label: String,
    /// The representing path in the presenting quiver, when there is one.
    pub path: Option<Path>,
}

impl BasisElem {
    pub fn is_lazy(&self) -> bool {
        self.degree == 0
    }
}

/// A finite-dimensional basic algebra given by a quiver with relations,
/// or by structure constants on a path-coset basis.
#[derive(Clone, Debug)]
pub struct BoundAlgebra {
    name: String,
    p: u32,
    quiver: Quiver,
    relations: Vec<RelationElem>,
    presented: bool,
    cap: usize,
    basis: Vec<BasisElem>,
    mult: Vec<SparseVec>,
    idempotents: Vec<usize>,
    generators: Vec<usize>,
    exprs: Vec<WordCombination>,
}

impl PartialEq for BoundAlgebra {
    /// Equality of structure constants together with the generator and
    /// vertex data; names are ignored.
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p
            && self.quiver == o.quiver
            && self.basis == o.basis
            && self.mult == o.mult
            && self.idempotents == o.idempotents
            && self.generators == o.generators
    }
}

impl fmt::Display for BoundAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over F_{} (dim {}, {} vertices)", self.name, self.p, self.dim(), self.num_vertices())
    }
}

/// Builds `FQ/I` for the ideal generated by `rels`, using paths of length
/// at most `cap` as basis candidates.
pub fn build_algebra(name: &str, q: Quiver, rels: Vec<RelationElem>, p: u32, cap: usize) -> Result<BoundAlgebra> {
    check_prime(p)?;
    let rels = normalize_relations(&q, rels, p)?;
    let (paths, mult) = if rels.iter().all(|r| r.is_homogeneous()) {
        graded_basis(&q, &rels, p, cap)?
    } else {
        truncated_basis(&q, &rels, p, cap)?
    };
    let alg = finalize_presented(name, q, rels, p, cap, paths, mult);
    alg.verify()?;
    Ok(alg)
}

/// Same as [`build_algebra`] but always through the truncated path space,
/// regardless of homogeneity. Exposed so the two constructions can be
/// compared.
pub fn build_algebra_truncated(
    name: &str,
    q: Quiver,
    rels: Vec<RelationElem>,
    p: u32,
    cap: usize,
) -> Result<BoundAlgebra> {
    check_prime(p)?;
    let rels = normalize_relations(&q, rels, p)?;
    let (paths, mult) = truncated_basis(&q, &rels, p, cap)?;
    let alg = finalize_presented(name, q, rels, p, cap, paths, mult);
    alg.verify()?;
    Ok(alg)
}

/// Reduces coefficients mod p, merges repeated paths, drops vanished
/// terms and relations, and rejects terms of length below 2.
fn normalize_relations(q: &Quiver, rels: Vec<RelationElem>, p: u32) -> Result<Vec<RelationElem>> {
    let mut out = Vec::new();
    for r in rels {
        let r = RelationElem::new(q, r.terms)?;
        let mut acc: Vec<(Path, u32)> = Vec::new();
        for t in &r.terms {
            if t.path.len() < 2 {
                return Err(Error::RelationType(format!(
                    "relation {} has a term of length {}; relations must lie in the square of the arrow ideal",
                    r.display(q),
                    t.path.len()
                )));
            }
            let c = reduce_i64(t.coeff, p);
            match acc.iter_mut().find(|(pp, _)| *pp == t.path) {
                Some((_, v)) => *v = add_mod(*v, c, p),
                None => acc.push((t.path.clone(), c)),
            }
        }
        let terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(path, c)| Term { coeff: signed(c, p), path })
            .collect();
        if !terms.is_empty() {
            out.push(RelationElem { terms });
        }
    }
    Ok(out)
}

fn signed(c: u32, p: u32) -> i64 {
    crate::field_linalg::lift_signed(c, p)
}

/// Graded construction for homogeneous ideals. `A_d` is spanned by the
/// products `b·a` with `b` in the degree `d-1` basis and `a` an arrow;
/// the relations in degree `d` are the normal forms of `u·r` for basis
/// elements `u` of degree `d - |r|`.
fn graded_basis(q: &Quiver, rels: &[RelationElem], p: u32, cap: usize) -> Result<(Vec<Path>, Vec<SparseVec>)> {
    let n = q.num_vertices();
    let mut paths: Vec<Path> = (0..n).map(Path::lazy).collect();
    let mut degree_start = vec![0usize, n];
    // right[x][a] = normal form of x·a (global indices)
    let mut right: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); q.arrows.len()]; n];
    let tgt: Vec<usize> = (0..n).collect();
    let mut targets = tgt;
    let mut d = 1;
    loop {
        let prev = degree_start[d - 1]..degree_start[d];
        let mut cands: Vec<(usize, usize)> = Vec::new();
        for x in prev.clone() {
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source == targets[x] {
                    cands.push((x, ai));
                }
            }
        }
        let cand_paths: Vec<Path> = cands
            .iter()
            .map(|&(x, a)| {
                let mut pth = paths[x].clone();
                pth.arrows.push(a);
                pth
            })
            .collect();
        let mut order: Vec<usize> = (0..cands.len()).collect();
        order.sort_by(|&i, &j| cand_paths[i].cmp(&cand_paths[j]));
        let nc = cands.len();
        // position of each candidate in path order
        let mut pos = vec![0usize; nc];
        for (k, &i) in order.iter().enumerate() {
            pos[i] = k;
        }
        let cand_index: HashMap<(usize, usize), usize> = cands.iter().enumerate().map(|(i, &c)| (c, pos[i])).collect();
        // Columns are reversed path order so the pivot of each relation is
        // its largest candidate.
        let col = |k: usize| nc - 1 - k;
        let mut space = Subspace::zero(p, nc);
        for r in rels {
            let l = r.terms[0].path.len();
            if l > d {
                continue;
            }
            let lo = degree_start[d - l];
            let hi = degree_start[d - l + 1];
            for u in lo..hi {
                if targets[u] != r.source() {
                    continue;
                }
                let mut v = vec![0u32; nc];
                for t in &r.terms {
                    let (last, init) = t.path.arrows.split_last().unwrap();
                    let mut cur: SparseVec = vec![(u, 1)];
                    for &a in init {
                        cur = right_mult_sparse(&cur, a, &right, p);
                    }
                    let c = reduce_i64(t.coeff, p);
                    for (x, cx) in cur {
                        let k = cand_index[&(x, *last)];
                        v[col(k)] = add_mod(v[col(k)], mul_mod(c, cx, p), p);
                    }
                }
                space.insert(&v);
            }
        }
        let free: Vec<usize> = space.free_columns().into_iter().map(|c| nc - 1 - c).rev().collect();
        // free is now increasing in path order
        let start = paths.len();
        let mut new_index = vec![usize::MAX; nc];
        for (j, &k) in free.iter().enumerate() {
            new_index[k] = start + j;
            let i = order[k];
            paths.push(cand_paths[i].clone());
            targets.push(q.arrows[cands[i].1].target);
        }
        for _ in start..paths.len() {
            right.push(vec![Vec::new(); q.arrows.len()]);
        }
        for (i, &(x, a)) in cands.iter().enumerate() {
            let k = pos[i];
            let mut unit = vec![0u32; nc];
            unit[col(k)] = 1;
            let red = space.reduce(&unit);
            let mut sv: SparseVec = Vec::new();
            for (c, &val) in red.iter().enumerate() {
                if val != 0 {
                    sv.push((new_index[nc - 1 - c], val));
                }
            }
            sv.sort_unstable();
            right[x][a] = sv;
        }
        degree_start.push(paths.len());
        if free.is_empty() {
            break;
        }
        if d == cap + 1 {
            return Err(Error::NotAdmissible { cap });
        }
        d += 1;
    }
    let dim = paths.len();
    let mut mult = vec![Vec::new(); dim * dim];
    for x in 0..dim {
        for y in 0..dim {
            if targets[x] != paths[y].source {
                continue;
            }
            let mut cur: SparseVec = vec![(x, 1)];
            for &a in &paths[y].arrows {
                cur = right_mult_sparse(&cur, a, &right, p);
                if cur.is_empty() {
                    break;
                }
            }
            mult[x * dim + y] = cur;
        }
    }
    Ok((paths, mult))
}

fn right_mult_sparse(v: &SparseVec, a: usize, right: &[Vec<SparseVec>], p: u32) -> SparseVec {
    let mut acc: HashMap<usize, u32> = HashMap::new();
    for &(x, c) in v {
        for &(y, cy) in &right[x][a] {
            let e = acc.entry(y).or_insert(0);
            *e = add_mod(*e, mul_mod(c, cy, p), p);
        }
    }
    let mut out: SparseVec = acc.into_iter().filter(|&(_, c)| c != 0).collect();
    out.sort_unstable();
    out
}

/// Construction in the truncated path space `FQ / J^(cap+2)`, valid for
/// any ideal that is admissible. The ideal is spanned by `u·r·v`; the
/// witness that every path of length `cap+1` lies in it shows the
/// truncation loses nothing.
fn truncated_basis(q: &Quiver, rels: &[RelationElem], p: u32, cap: usize) -> Result<(Vec<Path>, Vec<SparseVec>)> {
    let n = q.num_vertices();
    let c = cap + 1;
    // All paths of length <= c, by length.
    let mut all: Vec<Path> = (0..n).map(Path::lazy).collect();
    let mut frontier: Vec<Path> = all.clone();
    for _ in 0..c {
        let mut next = Vec::new();
        for pth in &frontier {
            let t = pth.target(q);
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source == t {
                    let mut np = pth.clone();
                    np.arrows.push(ai);
                    next.push(np);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort();
    // Block layout.
    let mut blocks: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, pth) in all.iter().enumerate() {
        blocks.entry((pth.source, pth.target(q))).or_default().push(i);
    }
    let mut where_: HashMap<Path, ((usize, usize), usize)> = HashMap::new();
    for (key, idx) in &blocks {
        for (k, &i) in idx.iter().enumerate() {
            where_.insert(all[i].clone(), (*key, k));
        }
    }
    let mut spaces: HashMap<(usize, usize), Subspace> =
        blocks.iter().map(|(k, v)| (*k, Subspace::zero(p, v.len()))).collect();
    let ends_at = |v: usize| all.iter().filter(move |pp| pp.target(q) == v);
    let starts_at = |v: usize| all.iter().filter(move |pp| pp.source == v);
    for r in rels {
        let m = r.min_len();
        let (rs, rt) = (r.source(), r.target(q));
        for u in ends_at(rs) {
            if u.len() + m > c {
                continue;
            }
            for v in starts_at(rt) {
                if u.len() + v.len() + m > c {
                    continue;
                }
                let key = (u.source, v.target(q));
                let nb = blocks[&key].len();
                let mut vec = vec![0u32; nb];
                let mut any = false;
                for t in &r.terms {
                    if u.len() + t.path.len() + v.len() > c {
                        continue;
                    }
                    let w = u.concat(&t.path).concat(v);
                    let (_, k) = where_[&w];
                    let col = nb - 1 - k;
                    vec[col] = add_mod(vec[col], reduce_i64(t.coeff, p), p);
                    any = true;
                }
                if any {
                    spaces.get_mut(&key).unwrap().insert(&vec);
                }
            }
        }
    }
    // Admissibility witness.
    for pth in all.iter().filter(|pp| pp.len() == c) {
        let (key, k) = &where_[pth];
        let nb = blocks[key].len();
        let mut unit = vec![0u32; nb];
        unit[nb - 1 - k] = 1;
        if !spaces[key].contains(&unit) {
            return Err(Error::NotAdmissible { cap });
        }
    }
    // Basis: free columns, globally in path order.
    let mut basis: Vec<Path> = Vec::new();
    for (key, idx) in &blocks {
        let nb = idx.len();
        for col in spaces[key].free_columns() {
            basis.push(all[idx[nb - 1 - col]].clone());
        }
    }
    basis.sort();
    let index: HashMap<Path, usize> = basis.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
    let dim = basis.len();
    let mut mult = vec![Vec::new(); dim * dim];
    for x in 0..dim {
        let tx = basis[x].target(q);
        for y in 0..dim {
            if basis[y].source != tx || basis[x].len() + basis[y].len() > c {
                continue;
            }
            let w = basis[x].concat(&basis[y]);
            let (key, k) = &where_[&w];
            let idx = &blocks[key];
            let nb = idx.len();
            let mut unit = vec![0u32; nb];
            unit[nb - 1 - k] = 1;
            let red = spaces[key].reduce(&unit);
            let mut sv: SparseVec = Vec::new();
            for (col, &val) in red.iter().enumerate() {
                if val != 0 {
                    sv.push((index[&all[idx[nb - 1 - col]]], val));
                }
            }
            sv.sort_unstable();
            mult[x * dim + y] = sv;
        }
    }
    Ok((basis, mult))
}

fn finalize_presented(
    name: &str,
    q: Quiver,
    rels: Vec<RelationElem>,
    p: u32,
    cap: usize,
    paths: Vec<Path>,
    mult: Vec<SparseVec>,
) -> BoundAlgebra {
    let n = q.num_vertices();
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let idempotents: Vec<usize> = (0..n).map(|v| index[&Path::lazy(v)]).collect();
    let generators: Vec<usize> = (0..q.arrows.len())
        .map(|a| index[&Path { source: q.arrows[a].source, arrows: vec![a] }])
        .collect();
    let basis: Vec<BasisElem> = paths
        .iter()
        .map(|pth| BasisElem {
            source: pth.source,
            target: pth.target(&q),
            degree: pth.len(),
            label: pth.label(&q),
            path: Some(pth.clone()),
        })
        .collect();
    let exprs = paths.iter().map(|pth| vec![(1u32, pth.arrows.clone())]).collect();
    BoundAlgebra {
        name: name.to_string(),
        p,
        quiver: q,
        relations: rels,
        presented: true,
        cap,
        basis,
        mult,
        idempotents,
        generators,
        exprs,
    }
}

impl BoundAlgebra {
    /// Algebra given only by structure constants on a basis whose
    /// elements each lie in some `e_i A e_j`, with the vertex idempotents
    /// among them (degree 0). Generators are chosen among the basis
    /// elements as a complement of `rad^2` in `rad`.
    pub fn from_structure(
        name: &str,
        p: u32,
        vertices: Vec<String>,
        basis: Vec<BasisElem>,
        mult: Vec<SparseVec>,
        cap: usize,
    ) -> Result<BoundAlgebra> {
        check_prime(p)?;
        let dim = basis.len();
        assert_eq!(mult.len(), dim * dim);
        let n = vertices.len();
        let mut idempotents = vec![usize::MAX; n];
        for (i, b) in basis.iter().enumerate() {
            if b.is_lazy() {
                idempotents[b.source] = i;
            }
        }
        if idempotents.contains(&usize::MAX) {
            return Err(Error::RelationType("structure algebra is missing a vertex idempotent".into()));
        }
        // rad^2 with columns reversed so that pivots are the latest basis
        // elements and generators come out as the earliest ones.
        let col = |i: usize| dim - 1 - i;
        let mut rad2 = Subspace::zero(p, dim);
        for x in 0..dim {
            if basis[x].is_lazy() {
                continue;
            }
            for y in 0..dim {
                if basis[y].is_lazy() {
                    continue;
                }
                let prod = &mult[x * dim + y];
                if prod.is_empty() {
                    continue;
                }
                let mut v = vec![0u32; dim];
                for &(k, c) in prod {
                    v[col(k)] = c;
                }
                rad2.insert(&v);
            }
        }
        let mut is_pivot = vec![false; dim];
        for &c in rad2.pivots() {
            is_pivot[dim - 1 - c] = true;
        }
        let generators: Vec<usize> = (0..dim).filter(|&i| !basis[i].is_lazy() && !is_pivot[i]).collect();
        let arrows: Vec<Arrow> = generators
            .iter()
            .map(|&g| Arrow { name: basis[g].label.clone(), source: basis[g].source, target: basis[g].target })
            .collect();
        let quiver = Quiver::from_arrows(vertices, arrows)?;
        let mut alg = BoundAlgebra {
            name: name.to_string(),
            p,
            quiver,
            relations: Vec::new(),
            presented: false,
            cap,
            basis,
            mult,
            idempotents,
            generators,
            exprs: Vec::new(),
        };
        alg.exprs = alg.express_in_generators()?;
        alg.verify()?;
        Ok(alg)
    }

    /// Writes every basis element as a combination of generator words,
    /// extending only words whose values are new, degree by degree.
    fn express_in_generators(&self) -> Result<Vec<WordCombination>> {
        let dim = self.dim();
        let p = self.p;
        let mut words: Vec<(Vec<usize>, AlgElem)> = Vec::new();
        let mut span = Subspace::zero(p, dim);
        for &e in &self.idempotents {
            let mut v = vec![0u32; dim];
            v[e] = 1;
            span.insert(&v);
        }
        let mut layer: Vec<(Vec<usize>, AlgElem)> = Vec::new();
        for (gi, &g) in self.generators.iter().enumerate() {
            let mut v = vec![0u32; dim];
            v[g] = 1;
            if span.insert(&v) {
                layer.push((vec![gi], v));
            }
        }
        while !layer.is_empty() {
            words.extend(layer.iter().cloned());
            let mut next = Vec::new();
            for (w, v) in &layer {
                for (gi, &g) in self.generators.iter().enumerate() {
                    let prod = self.mul_by_basis(v, g);
                    if prod.iter().all(|&x| x == 0) {
                        continue;
                    }
                    if span.insert(&prod) {
                        let mut w2 = w.clone();
                        w2.push(gi);
                        next.push((w2, prod));
                    }
                }
            }
            layer = next;
        }
        if span.dim() != dim {
            return Err(Error::RelationType("generators do not generate the algebra".into()));
        }
        // Solve for each basis element in terms of the collected words.
        let mut exprs = vec![Vec::new(); dim];
        for (v, &e) in self.idempotents.iter().enumerate() {
            let _ = v;
            exprs[e] = vec![(1u32, Vec::new())];
        }
        let non_lazy: Vec<usize> = (0..dim).filter(|&i| !self.basis[i].is_lazy()).collect();
        if !non_lazy.is_empty() {
            let m = Matrix::from_residue_rows(p, dim, &words.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>());
            // x * m = unit(b): solve m^T x^T = unit^T
            let mt = m.transpose();
            let mut rhs = Matrix::zeros(p, dim, non_lazy.len());
            for (j, &b) in non_lazy.iter().enumerate() {
                rhs.set(b, j, 1);
            }
            let sol = mt.solve(&rhs)?;
            for (j, &b) in non_lazy.iter().enumerate() {
                let mut e = Vec::new();
                for (k, (w, _)) in words.iter().enumerate() {
                    let c = sol.particular.get(k, j);
                    if c != 0 {
                        e.push((c, w.clone()));
                    }
                }
                exprs[b] = e;
            }
        }
        Ok(exprs)
    }

    /// Checks unit and idempotent identities and associativity (on all
    /// triples up to dimension 64, on a deterministic sample above).
    pub fn verify(&self) -> Result<()> {
        let dim = self.dim();
        let n = self.num_vertices();
        for i in 0..n {
            for j in 0..n {
                let prod = &self.mult[self.idempotents[i] * dim + self.idempotents[j]];
                let expect: SparseVec = if i == j { vec![(self.idempotents[i], 1)] } else { Vec::new() };
                if *prod != expect {
                    return Err(Error::RelationType("vertex idempotents are not orthogonal".into()));
                }
            }
        }
        for b in 0..dim {
            let (s, t) = (self.basis[b].source, self.basis[b].target);
            if self.mult[self.idempotents[s] * dim + b] != vec![(b, 1)]
                || self.mult[b * dim + self.idempotents[t]] != vec![(b, 1)]
            {
                return Err(Error::RelationType("idempotents do not act as identities".into()));
            }
        }
        let triples: Box<dyn Iterator<Item = (usize, usize, usize)>> = if dim <= 64 {
            Box::new((0..dim).flat_map(move |x| (0..dim).flat_map(move |y| (0..dim).map(move |z| (x, y, z)))))
        } else {
            let total = (dim * dim * dim) as u64;
            let step = (total / 200_000).max(1);
            Box::new((0..total).step_by(step as usize).map(move |k| {
                let k = k as usize;
                (k / (dim * dim), (k / dim) % dim, k % dim)
            }))
        };
        for (x, y, z) in triples {
            let xy = self.sparse_mul_right(&self.mult[x * dim + y], z);
            let yz = self.sparse_mul_left(x, &self.mult[y * dim + z]);
            if xy != yz {
                return Err(Error::RelationType(format!(
                    "associativity fails on ({}, {}, {})",
                    self.basis[x].label, self.basis[y].label, self.basis[z].label
                )));
            }
        }
        Ok(())
    }

    fn sparse_mul_right(&self, v: &SparseVec, z: usize) -> SparseVec {
        let dim = self.dim();
        let mut acc = vec![0u32; dim];
        for &(k, c) in v {
            for &(m, d) in &self.mult[k * dim + z] {
                acc[m] = add_mod(acc[m], mul_mod(c, d, self.p), self.p);
            }
        }
        to_sparse(&acc)
    }

    fn sparse_mul_left(&self, x: usize, v: &SparseVec) -> SparseVec {
        let dim = self.dim();
        let mut acc = vec![0u32; dim];
        for &(k, c) in v {
            for &(m, d) in &self.mult[x * dim + k] {
                acc[m] = add_mod(acc[m], mul_mod(c, d, self.p), self.p);
            }
        }
        to_sparse(&acc)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[RelationElem] {
        &self.relations
    }

    pub fn is_presented(&self) -> bool {
        self.presented
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn vertices(&self) -> &[String] {
        self.quiver.vertices()
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    /// Basis index of each generator (quiver arrow).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Each basis element as `Σ coeff · word`, words in generator indices;
    /// the empty word stands for the idempotent at the element's source.
    pub fn exprs(&self) -> &[Vec<(u32, Vec<usize>)>] {
        &self.exprs
    }

    /// Product of two basis elements.
    pub fn mul_basis(&self, x: usize, y: usize) -> &SparseVec {
        &self.mult[x * self.dim() + y]
    }

    pub fn zero(&self) -> AlgElem {
        vec![0; self.dim()]
    }

    pub fn unit(&self) -> AlgElem {
        let mut v = self.zero();
        for &e in &self.idempotents {
            v[e] = 1;
        }
        v
    }

    pub fn basis_elem(&self, b: usize) -> AlgElem {
        let mut v = self.zero();
        v[b] = 1;
        v
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> AlgElem {
        let dim = self.dim();
        let p = self.p;
        let mut acc = vec![0u32; dim];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = mul_mod(a, b, p);
                for &(k, c) in &self.mult[i * dim + j] {
                    acc[k] = add_mod(acc[k], mul_mod(ab, c, p), p);
                }
            }
        }
        acc
    }

    /// `x · b` for a basis element `b`.
    pub fn mul_by_basis(&self, x: &[u32], b: usize) -> AlgElem {
        let dim = self.dim();
        let p = self.p;
        let mut acc = vec![0u32; dim];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for &(k, c) in &self.mult[i * dim + b] {
                acc[k] = add_mod(acc[k], mul_mod(a, c, p), p);
            }
        }
        acc
    }

    pub fn add(&self, x: &[u32], y: &[u32]) -> AlgElem {
        x.iter().zip(y).map(|(&a, &b)| add_mod(a, b, self.p)).collect()
    }

    pub fn sub(&self, x: &[u32], y: &[u32]) -> AlgElem {
        x.iter().zip(y).map(|(&a, &b)| add_mod(a, neg_mod(b, self.p), self.p)).collect()
    }

    /// The image of a path of the presenting quiver (or of a generator
    /// word for structure algebras).
    pub fn path_elem(&self, path: &Path) -> AlgElem {
        let mut v = self.basis_elem(self.idempotents[path.source]);
        for &a in &path.arrows {
            v = self.mul_by_basis(&v, self.generators[a]);
        }
        v
    }

    /// Element from `(coeff, arrow names)` terms. An empty name list is
    /// not accepted; use [`BoundAlgebra::vertex_elem`] for idempotents.
    pub fn elem_from_words<S: AsRef<str>>(&self, words: &[(i64, Vec<S>)]) -> Result<AlgElem> {
        let mut acc = self.zero();
        for (c, w) in words {
            let pth = Path::from_names(&self.quiver, w)?;
            let v = self.path_elem(&pth);
            let c = reduce_i64(*c, self.p);
            for (a, b) in acc.iter_mut().zip(v) {
                *a = add_mod(*a, mul_mod(c, b, self.p), self.p);
            }
        }
        Ok(acc)
    }

    pub fn vertex_elem(&self, label: &str) -> Result<AlgElem> {
        let v = self.quiver.vertex_index(label).ok_or_else(|| Error::UnknownVertex(label.to_string()))?;
        Ok(self.basis_elem(self.idempotents[v]))
    }

    /// Parses `"b2 a2 + b3 a3 - 2*a1 b1"`; `e<label>` as a whole term is
    /// the idempotent at that vertex.
    pub fn parse_elem(&self, s: &str) -> Result<AlgElem> {
        let mut acc = self.zero();
        let cleaned = s.replace('-', " - ").replace('+', " + ");
        let mut sign = 1i64;
        let mut current: Vec<String> = Vec::new();
        let mut terms: Vec<(i64, Vec<String>)> = Vec::new();
        let flush = |sign: i64, current: &mut Vec<String>, terms: &mut Vec<(i64, Vec<String>)>| {
            if !current.is_empty() {
                terms.push((sign, std::mem::take(current)));
            }
        };
        for tok in cleaned.split_whitespace() {
            match tok {
                "+" => {
                    flush(sign, &mut current, &mut terms);
                    sign = 1;
                }
                "-" => {
                    flush(sign, &mut current, &mut terms);
                    sign = -1;
                }
                t => current.push(t.to_string()),
            }
        }
        flush(sign, &mut current, &mut terms);
        if terms.is_empty() {
            return Err(Error::Parse(format!("empty element `{s}`")));
        }
        for (sign, toks) in terms {
            let mut coeff = sign;
            let mut names: Vec<String> = Vec::new();
            for (i, t) in toks.iter().enumerate() {
                let t = if i == 0 {
                    if let Some((c, rest)) = t.split_once('*') {
                        coeff *= c.parse::<i64>().map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))?;
                        rest
                    } else {
                        t.as_str()
                    }
                } else {
                    t.as_str()
                };
                if !t.is_empty() {
                    names.push(t.to_string());
                }
            }
            let v = if names.len() == 1 && self.quiver.arrow_index(&names[0]).is_none() {
                let label = names[0].strip_prefix('e').unwrap_or(&names[0]);
                self.vertex_elem(label)?
            } else {
                let pth = Path::from_names(&self.quiver, &names)?;
                self.path_elem(&pth)
            };
            let c = reduce_i64(coeff, self.p);
            for (a, b) in acc.iter_mut().zip(v) {
                *a = add_mod(*a, mul_mod(c, b, self.p), self.p);
            }
        }
        Ok(acc)
    }

    pub fn elem_to_string(&self, x: &[u32]) -> String {
        let parts: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let c = signed(c, self.p);
                if c == 1 {
                    self.basis[i].label.clone()
                } else if c == -1 {
                    format!("-{}", self.basis[i].label)
                } else {
                    format!("{c}*{}", self.basis[i].label)
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }

    /// `c_ij` = number of basis elements from vertex `i` to vertex `j`.
    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut c = vec![vec![0usize; n]; n];
        for b in &self.basis {
            c[b.source][b.target] += 1;
        }
        c
    }

    /// Basis of the center, and a basis of the center intersected with
    /// the radical (elements with zero idempotent coefficients).
    pub fn center_basis(&self) -> (Vec<AlgElem>, Vec<AlgElem>) {
        let dim = self.dim();
        let p = self.p;
        // Rows: for each test element g, the linear map z -> z g - g z.
        let tests: Vec<usize> = self.idempotents.iter().chain(self.generators.iter()).copied().collect();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for &g in &tests {
            // column z = basis index, row k = coefficient of basis k
            let mut block = vec![vec![0u32; dim]; dim];
            for z in 0..dim {
                for &(k, c) in &self.mult[z * dim + g] {
                    block[k][z] = add_mod(block[k][z], c, p);
                }
                for &(k, c) in &self.mult[g * dim + z] {
                    block[k][z] = add_mod(block[k][z], neg_mod(c, p), p);
                }
            }
            rows.extend(block);
        }
        let m = Matrix::from_residue_rows(p, dim, &rows);
        let center = Subspace::from_vectors(p, dim, m.nullspace());
        let mut rows_rad = rows.clone();
        for &e in &self.idempotents {
            let mut r = vec![0u32; dim];
            r[e] = 1;
            rows_rad.push(r);
        }
        let m2 = Matrix::from_residue_rows(p, dim, &rows_rad);
        let rad_center = Subspace::from_vectors(p, dim, m2.nullspace());
        (center.basis().to_vec(), rad_center.basis().to_vec())
    }

    /// True when `x` commutes with every element.
    pub fn is_central(&self, x: &[u32]) -> bool {
        (0..self.dim()).all(|b| {
            let e = self.basis_elem(b);
            self.mul(x, &e) == self.mul(&e, x)
        })
    }

    /// Opposite algebra. Presented algebras are rebuilt from the reversed
    /// quiver and reversed relation words, so `opposite` is an
    /// involution on the nose.
    pub fn opposite(&self) -> Result<BoundAlgebra> {
        let name = format!("{}^op", self.name);
        if self.presented {
            let qop = self.quiver.opposite();
            let rels = self.relations.iter().map(|r| r.reversed(&self.quiver)).collect();
            return build_algebra(&name, qop, rels, self.p, self.cap);
        }
        let dim = self.dim();
        let basis: Vec<BasisElem> = self
            .basis
            .iter()
            .map(|b| BasisElem {
                source: b.target,
                target: b.source,
                degree: b.degree,
                label: b.label.split(' ').rev().collect::<Vec<_>>().join(" "),
                path: None,
            })
            .collect();
        let mut mult = vec![Vec::new(); dim * dim];
        for x in 0..dim {
            for y in 0..dim {
                mult[x * dim + y] = self.mult[y * dim + x].clone();
            }
        }
        BoundAlgebra::from_structure(&name, self.p, self.vertices().to_vec(), basis, mult, self.cap)
    }

    /// `eAe` for `e` the sum of the idempotents at `keep`.
    pub fn idempotent_truncation(&self, keep: &[usize]) -> Result<BoundAlgebra> {
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.is_empty() {
            return Err(Error::QuotientZero);
        }
        if keep.len() == self.num_vertices() {
            return Ok(self.clone());
        }
        let newv: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let kept: Vec<usize> =
            (0..self.dim()).filter(|&b| newv.contains_key(&self.basis[b].source) && newv.contains_key(&self.basis[b].target)).collect();
        self.restrict_basis(&format!("{}[e]", self.name), &keep, &kept)
    }

    /// Structure algebra on a subset of basis elements closed under the
    /// product (as happens for `eAe`).
    fn restrict_basis(&self, name: &str, keep_vertices: &[usize], kept: &[usize]) -> Result<BoundAlgebra> {
        let dim = self.dim();
        let newv: HashMap<usize, usize> = keep_vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let newb: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let basis: Vec<BasisElem> = kept
            .iter()
            .map(|&b| {
                let e = &self.basis[b];
                BasisElem {
                    source: newv[&e.source],
                    target: newv[&e.target],
                    degree: e.degree,
                    label: e.label.clone(),
                    path: None,
                }
            })
            .collect();
        let k = kept.len();
        let mut mult = vec![Vec::new(); k * k];
        for (i, &x) in kept.iter().enumerate() {
            for (j, &y) in kept.iter().enumerate() {
                let mut sv: SparseVec = Vec::new();
                for &(z, c) in &self.mult[x * dim + y] {
                    let nz = newb.get(&z).ok_or_else(|| {
                        Error::RelationType("restricted basis is not closed under multiplication".into())
                    })?;
                    sv.push((*nz, c));
                }
                sv.sort_unstable();
                mult[i * k + j] = sv;
            }
        }
        let vertices = keep_vertices.iter().map(|&v| self.vertices()[v].clone()).collect();
        BoundAlgebra::from_structure(name, self.p, vertices, basis, mult, self.cap)
    }

    /// `A / AeA` with `e` the idempotents outside `keep`: the algebra of
    /// the full subquiver on `keep` with the induced relations.
    pub fn restrict_to_vertices(&self, keep: &[usize]) -> Result<BoundAlgebra> {
        let gens: Vec<AlgElem> = (0..self.num_vertices())
            .filter(|v| !keep.contains(v))
            .map(|v| self.basis_elem(self.idempotents[v]))
            .collect();
        if gens.is_empty() {
            return Ok(self.clone());
        }
        self.quotient_by_ideal(&gens)
    }

    /// Quotient by the two-sided ideal generated by `gens`.
    ///
    /// For presented algebras each generator is split into its
    /// `e_i g e_j` components, which become new relations. A component
    /// with a nonzero idempotent coefficient puts that idempotent in the
    /// ideal, so the vertex is removed; a component equal to a multiple
    /// of a single arrow removes the arrow.
    pub fn quotient_by_ideal(&self, gens: &[AlgElem]) -> Result<BoundAlgebra> {
        let name = format!("{}/I", self.name);
        if !self.presented {
            return self.structure_quotient(&name, gens);
        }
        let q = &self.quiver;
        let p = self.p;
        let mut dead_vertices = BTreeSet::new();
        let mut dead_arrows = BTreeSet::new();
        let mut new_rels: Vec<RelationElem> = self.relations.clone();
        for g in gens {
            let mut comps: HashMap<(usize, usize), Vec<(usize, u32)>> = HashMap::new();
            for (b, &c) in g.iter().enumerate() {
                if c != 0 {
                    comps.entry((self.basis[b].source, self.basis[b].target)).or_default().push((b, c));
                }
            }
            let mut keys: Vec<_> = comps.keys().copied().collect();
            keys.sort_unstable();
            for key in keys {
                let comp = &comps[&key];
                if comp.iter().any(|&(b, _)| self.basis[b].is_lazy()) {
                    dead_vertices.insert(key.0);
                    continue;
                }
                let short: Vec<_> = comp.iter().filter(|&&(b, _)| self.basis[b].degree == 1).collect();
                if !short.is_empty() {
                    if comp.len() == 1 {
                        let b = comp[0].0;
                        let a = self.basis[b].path.as_ref().unwrap().arrows[0];
                        dead_arrows.insert(a);
                        continue;
                    }
                    return Err(Error::Unsupported(
                        "quotient generator identifies an arrow with a longer combination".into(),
                    ));
                }
                let terms = comp
                    .iter()
                    .map(|&(b, c)| Term { coeff: signed(c, p), path: self.basis[b].path.clone().unwrap() })
                    .collect();
                new_rels.push(RelationElem { terms });
            }
        }
        for (ai, a) in q.arrows.iter().enumerate() {
            if dead_vertices.contains(&a.source) || dead_vertices.contains(&a.target) {
                dead_arrows.insert(ai);
            }
        }
        if dead_vertices.len() == q.num_vertices() {
            return Err(Error::QuotientZero);
        }
        let keep_v: Vec<usize> = (0..q.num_vertices()).filter(|v| !dead_vertices.contains(v)).collect();
        let keep_a: Vec<usize> = (0..q.arrows.len()).filter(|a| !dead_arrows.contains(a)).collect();
        let vmap: HashMap<usize, usize> = keep_v.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let amap: HashMap<usize, usize> = keep_a.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let nq = Quiver {
            vertices: keep_v.iter().map(|&v| q.vertices[v].clone()).collect(),
            arrows: keep_a
                .iter()
                .map(|&a| Arrow { name: q.arrows[a].name.clone(), source: vmap[&q.arrows[a].source], target: vmap[&q.arrows[a].target] })
                .collect(),
        };
        let mut rels = Vec::new();
        for r in new_rels {
            let terms: Vec<Term> = r
                .terms
                .into_iter()
                .filter(|t| t.path.arrows.iter().all(|a| amap.contains_key(a)))
                .map(|t| Term {
                    coeff: t.coeff,
                    path: Path { source: vmap[&t.path.source], arrows: t.path.arrows.iter().map(|a| amap[a]).collect() },
                })
                .collect();
            if !terms.is_empty() {
                rels.push(RelationElem { terms });
            }
        }
        build_algebra(&name, nq, rels, p, self.cap)
    }

    fn structure_quotient(&self, name: &str, gens: &[AlgElem]) -> Result<BoundAlgebra> {
        let dim = self.dim();
        let p = self.p;
        let col = |i: usize| dim - 1 - i;
        let to_cols = |v: &[u32]| {
            let mut w = vec![0u32; dim];
            for (i, &c) in v.iter().enumerate() {
                w[col(i)] = c;
            }
            w
        };
        let from_cols = |w: &[u32]| {
            let mut v = vec![0u32; dim];
            for (c, &x) in w.iter().enumerate() {
                v[dim - 1 - c] = x;
            }
            v
        };
        let mut ideal = Subspace::zero(p, dim);
        let mut queue: VecDeque<AlgElem> = VecDeque::new();
        for g in gens {
            if ideal.insert(&to_cols(g)) {
                queue.push_back(g.clone());
            }
        }
        while let Some(v) = queue.pop_front() {
            for b in 0..dim {
                let e = self.basis_elem(b);
                for w in [self.mul(&v, &e), self.mul(&e, &v)] {
                    if ideal.insert(&to_cols(&w)) {
                        queue.push_back(w);
                    }
                }
            }
        }
        let kept: Vec<usize> = {
            let mut k: Vec<usize> = ideal.free_columns().into_iter().map(|c| dim - 1 - c).collect();
            k.sort_unstable();
            k
        };
        let keep_v: Vec<usize> =
            (0..self.num_vertices()).filter(|&v| kept.contains(&self.idempotents[v])).collect();
        if keep_v.is_empty() {
            return Err(Error::QuotientZero);
        }
        let vmap: HashMap<usize, usize> = keep_v.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let bmap: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let basis: Vec<BasisElem> = kept
            .iter()
            .map(|&b| {
                let e = &self.basis[b];
                BasisElem { source: vmap[&e.source], target: vmap[&e.target], degree: e.degree, label: e.label.clone(), path: None }
            })
            .collect();
        let k = kept.len();
        let mut mult = vec![Vec::new(); k * k];
        for (i, &x) in kept.iter().enumerate() {
            for (j, &y) in kept.iter().enumerate() {
                let prod = self.mul(&self.basis_elem(x), &self.basis_elem(y));
                let red = from_cols(&ideal.reduce(&to_cols(&prod)));
                mult[i * k + j] = red.iter().enumerate().filter(|(_, &c)| c != 0).map(|(z, &c)| (bmap[&z], c)).collect();
            }
        }
        let vertices = keep_v.iter().map(|&v| self.vertices()[v].clone()).collect();
        BoundAlgebra::from_structure(name, p, vertices, basis, mult, self.cap)
    }

    /// Blocks: one algebra per connected component of the quiver, in
    /// order of smallest vertex.
    pub fn block_decompose(&self) -> Result<Vec<BoundAlgebra>> {
        let comps = self.quiver.components();
        if comps.len() == 1 {
            return Ok(vec![self.clone()]);
        }
        comps
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let b = if self.presented { self.restrict_to_vertices(c)? } else { self.idempotent_truncation(c)? };
                Ok(b.with_name(&format!("{}#{}", self.name, k + 1)))
            })
            .collect()
    }

    /// Disjoint union of presented algebras. Vertex labels may be
    /// replaced per component; arrow names get a `_k` suffix (1-based
    /// component index) when more than one component is present.
    pub fn direct_sum(name: &str, parts: &[(&BoundAlgebra, Option<Vec<String>>)]) -> Result<BoundAlgebra> {
        let p = parts.first().ok_or(Error::QuotientZero)?.0.p;
        let mut vertices = Vec::new();
        let mut arrows = Vec::new();
        let mut rels = Vec::new();
        let mut cap = 1;
        let many = parts.len() > 1;
        for (k, (a, labels)) in parts.iter().enumerate() {
            if !a.presented {
                return Err(Error::Unsupported("direct sums need presented summands".into()));
            }
            if a.p != p {
                return Err(Error::RelationType("summands over different characteristics".into()));
            }
            let voff = vertices.len();
            let aoff = arrows.len();
            match labels {
                Some(l) => {
                    if l.len() != a.num_vertices() {
                        return Err(Error::RelationType(format!("label count mismatch for {}", a.name)));
                    }
                    vertices.extend(l.iter().cloned());
                }
                None => vertices.extend(a.vertices().iter().map(|v| if many { format!("{v}_{}", k + 1) } else { v.clone() })),
            }
            for ar in a.quiver.arrows() {
                let nm = if many { format!("{}_{}", ar.name, k + 1) } else { ar.name.clone() };
                arrows.push(Arrow { name: nm, source: ar.source + voff, target: ar.target + voff });
            }
            for r in &a.relations {
                rels.push(RelationElem {
                    terms: r
                        .terms
                        .iter()
                        .map(|t| Term {
                            coeff: t.coeff,
                            path: Path { source: t.path.source + voff, arrows: t.path.arrows.iter().map(|x| x + aoff).collect() },
                        })
                        .collect(),
                });
            }
            cap = cap.max(a.cap);
        }
        let q = Quiver::from_arrows(vertices, arrows)?;
        build_algebra(name, q, rels, p, cap)
    }

    /// The same presentation over another prime.
    pub fn with_characteristic(&self, p: u32) -> Result<BoundAlgebra> {
        if !self.presented {
            return Err(Error::Unsupported("changing the characteristic needs a presentation".into()));
        }
        build_algebra(&self.name, self.quiver.clone(), self.relations.clone(), p, self.cap)
    }

    /// Human-readable multi-line description.
    pub fn describe(&self) -> String {
        let mut s = format!("{self}\n");
        s.push_str(&format!("vertices: {}\n", self.vertices().join(", ")));
        for a in self.quiver.arrows() {
            s.push_str(&format!(
                "arrow {}: {} -> {}\n",
                a.name, self.quiver.vertices[a.source], self.quiver.vertices[a.target]
            ));
        }
        for r in &self.relations {
            s.push_str(&format!("relation {}\n", r.display(&self.quiver)));
        }
        s
    }

    pub fn to_json(&self) -> Result<String> {
        if !self.presented {
            return Err(Error::Unsupported("only presented algebras serialize to the algebra format".into()));
        }
        let file = AlgebraFile {
            name: self.name.clone(),
            p: Some(self.p),
            cap: Some(self.cap),
            vertices: self.vertices().to_vec(),
            arrows: self
                .quiver
                .arrows
                .iter()
                .map(|a| ArrowSpec {
                    name: a.name.clone(),
                    from: self.quiver.vertices[a.source].clone(),
                    to: self.quiver.vertices[a.target].clone(),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|t| TermSpec {
                            coeff: t.coeff,
                            path: t.path.arrows.iter().map(|&a| self.quiver.arrows[a].name.clone()).collect(),
                        })
                        .collect()
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }
}

fn to_sparse(v: &[u32]) -> SparseVec {
    v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermSpec {
    pub coeff: i64,
    pub path: Vec<String>,
}

/// On-disk algebra description.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    #[serde(rename = "char", default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
}

impl AlgebraFile {
    pub fn quiver(&self) -> Result<Quiver> {
        let arrows: Vec<(String, String, String)> =
            self.arrows.iter().map(|a| (a.name.clone(), a.from.clone(), a.to.clone())).collect();
        Quiver::new(&self.vertices, &arrows)
    }

    /// Builds the algebra; `p` overrides the file's characteristic
    /// (default 2).
    pub fn build(&self, p: Option<u32>) -> Result<BoundAlgebra> {
        let q = self.quiver()?;
        let mut rels = Vec::new();
        for r in &self.relations {
            let words: Vec<(i64, Vec<String>)> = r.iter().map(|t| (t.coeff, t.path.clone())).collect();
            rels.push(RelationElem::from_words(&q, &words)?);
        }
        let p = p.or(self.p).unwrap_or(2);
        build_algebra(&self.name, q, rels, p, self.cap.unwrap_or(DEFAULT_CAP))
    }
}

/// Parses an algebra from its JSON description.
pub fn algebra_from_json(text: &str, p: Option<u32>) -> Result<BoundAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    file.build(p)
}
