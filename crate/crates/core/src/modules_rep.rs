//! Right modules over a bound algebra, stored as quiver representations.
//!
//! A module `M` has a space `M_v` per vertex (row vectors) and one matrix
//! per generator of the algebra (the arrows, for presented algebras); a
//! generator `g: v -> w` acts as `x ↦ x·M(g)` from `M_v` to `M_w`. Basis
//! elements act through their expressions as generator words.
//!
//! Most Hom computations go through a minimal projective presentation
//! `P1 -> P0 -> M -> 0`, cached on the module. With `P0 = ⊕ e_{j_s} A`
//! generated by top elements `m_s` and `P1 = ⊕ e_{k_t} A` mapping
//! `e_{k_t} ↦ Σ_s x_{t,s}`, one has
//! `Hom(M, N) = ker(⊕_s N_{j_s} -> ⊕_t N_{k_t})`, the map being the block
//! matrix of actions `N(x_{t,s})`.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field_linalg::{add_mod, mul_mod, poly_eval, sub_mod, Matrix, Subspace};
use crate::quiver_algebra::{AlgElem, BoundAlgebra};

/// A linear map between modules, one block per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub blocks: Vec<Matrix>,
}

impl ModuleMap {
    pub fn zero(p: u32, src: &[usize], tgt: &[usize]) -> Self {
        ModuleMap { blocks: src.iter().zip(tgt).map(|(&a, &b)| Matrix::zeros(p, a, b)).collect() }
    }

    pub fn identity(p: u32, dims: &[usize]) -> Self {
        ModuleMap { blocks: dims.iter().map(|&d| Matrix::identity(p, d)).collect() }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ModuleMap) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().zip(&next.blocks).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, o: &ModuleMap) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: u32) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    /// Concatenation of all block entries, used as coordinates.
    pub fn flatten(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
    }

    /// The block-diagonal matrix on the total spaces.
    pub fn to_full(&self) -> Matrix {
        let p = self.blocks.first().map(|b| b.characteristic()).unwrap_or(2);
        let rows: usize = self.blocks.iter().map(|b| b.rows()).sum();
        let cols: usize = self.blocks.iter().map(|b| b.cols()).sum();
        let mut m = Matrix::zeros(p, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in &self.blocks {
            m.set_block(r, c, b);
            r += b.rows();
            c += b.cols();
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank()).sum()
    }
}

/// A basis of `Hom_A(M, N)`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<ModuleMap>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// A minimal projective presentation `⊕_t P_{p1[t]} -> ⊕_s P_{p0[s]}`.
/// `map[t][s]` lies in `e_{p0[s]} A e_{p1[t]}`: the generator of the
/// `t`-th summand of `P1` goes to `Σ_s map[t][s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub p0: Vec<usize>,
    pub p1: Vec<usize>,
    pub map: Vec<Vec<AlgElem>>,
}

/// Signed projective multiplicities of a minimal presentation.
pub type GVector = Vec<i64>;

/// Coordinates of `⊕_s e_{j_s} A` at every vertex.
#[derive(Clone, Debug)]
struct Layout {
    /// `rows[v]` lists `(s, b)` with `b` a basis element from `j_s` to `v`.
    rows: Vec<Vec<(usize, usize)>>,
    /// `pos[s]` maps a basis element to its row at its target vertex.
    pos: Vec<BTreeMap<usize, usize>>,
}

impl Layout {
    fn new(alg: &BoundAlgebra, tops: &[usize]) -> Layout {
        let n = alg.num_vertices();
        let mut rows = vec![Vec::new(); n];
        let mut pos = vec![BTreeMap::new(); tops.len()];
        for (s, &j) in tops.iter().enumerate() {
            for (b, e) in alg.basis().iter().enumerate() {
                if e.source == j {
                    pos[s].insert(b, rows[e.target].len());
                    rows[e.target].push((s, b));
                }
            }
        }
        Layout { rows, pos }
    }

    fn dim(&self, v: usize) -> usize {
        self.rows[v].len()
    }
}

#[derive(Debug)]
struct PresData {
    layout: Layout,
    /// Per vertex, a section of `(P0)_v -> M_v` (rows: basis of `M_v`).
    section: Vec<Matrix>,
    pres: Presentation,
}

/// A finite-dimensional right module.
#[derive(Clone)]
pub struct Representation {
    alg: Arc<BoundAlgebra>,
    dims: Vec<usize>,
    gens: Arc<Vec<Matrix>>,
    actions: Arc<OnceLock<Vec<Matrix>>>,
    pres: Arc<OnceLock<PresData>>,
}

impl std::fmt::Debug for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Representation(dims {:?} over {})", self.dims, self.alg.name())
    }
}

impl Representation {
    fn new_unchecked(alg: Arc<BoundAlgebra>, dims: Vec<usize>, gens: Vec<Matrix>) -> Self {
        Representation {
            alg,
            dims,
            gens: Arc::new(gens),
            actions: Arc::new(OnceLock::new()),
            pres: Arc::new(OnceLock::new()),
        }
    }

    /// Builds a module from one matrix per generator and checks that the
    /// relations hold.
    pub fn from_matrices(alg: Arc<BoundAlgebra>, dims: Vec<usize>, gens: Vec<Matrix>) -> Result<Self> {
        if dims.len() != alg.num_vertices() || gens.len() != alg.generators().len() {
            return Err(Error::RelationType("representation shape does not match the algebra".into()));
        }
        for (gi, &g) in alg.generators().iter().enumerate() {
            let b = &alg.basis()[g];
            let m = &gens[gi];
            if m.rows() != dims[b.source] || m.cols() != dims[b.target] || m.characteristic() != alg.characteristic() {
                return Err(Error::RelationType(format!("matrix for generator {} has the wrong shape", b.label)));
            }
        }
        let r = Self::new_unchecked(alg, dims, gens);
        if !r.satisfies_relations() {
            return Err(Error::RelationType("matrices do not satisfy the relations".into()));
        }
        Ok(r)
    }

    pub fn zero(alg: Arc<BoundAlgebra>) -> Self {
        let dims = vec![0; alg.num_vertices()];
        let p = alg.characteristic();
        let gens = alg.generators().iter().map(|_| Matrix::zeros(p, 0, 0)).collect();
        Self::new_unchecked(alg, dims, gens)
    }

    /// The simple module at vertex `i`.
    pub fn simple(alg: Arc<BoundAlgebra>, i: usize) -> Self {
        let mut dims = vec![0; alg.num_vertices()];
        dims[i] = 1;
        let p = alg.characteristic();
        let gens = alg
            .generators()
            .iter()
            .map(|&g| {
                let b = &alg.basis()[g];
                Matrix::zeros(p, dims[b.source], dims[b.target])
            })
            .collect();
        Self::new_unchecked(alg, dims, gens)
    }

    /// The indecomposable projective `P_i = e_i A`: at vertex `v` it has
    /// the basis elements from `i` to `v`, and a generator acts by right
    /// multiplication.
    pub fn projective(alg: Arc<BoundAlgebra>, i: usize) -> Self {
        let layout = Layout::new(&alg, &[i]);
        Self::from_layout(alg, &layout)
    }

    /// `⊕_i P_i`, the regular module.
    pub fn regular(alg: Arc<BoundAlgebra>) -> Self {
        let tops: Vec<usize> = (0..alg.num_vertices()).collect();
        let layout = Layout::new(&alg, &tops);
        Self::from_layout(alg, &layout)
    }

    fn from_layout(alg: Arc<BoundAlgebra>, layout: &Layout) -> Self {
        let p = alg.characteristic();
        let n = alg.num_vertices();
        let dims: Vec<usize> = (0..n).map(|v| layout.dim(v)).collect();
        let gens = alg
            .generators()
            .iter()
            .map(|&g| {
                let gb = &alg.basis()[g];
                let (u, w) = (gb.source, gb.target);
                let mut m = Matrix::zeros(p, dims[u], dims[w]);
                for (r, &(s, b)) in layout.rows[u].iter().enumerate() {
                    for &(z, c) in alg.mul_basis(b, g) {
                        let col = layout.pos[s][&z];
                        m.set(r, col, c);
                    }
                }
                m
            })
            .collect();
        Self::new_unchecked(alg, dims, gens)
    }

    /// The indecomposable injective `D(A e_i) = ν(P_i)`.
    pub fn injective(alg: Arc<BoundAlgebra>, i: usize) -> Self {
        nakayama_projective(&alg, i)
    }

    pub fn algebra(&self) -> &Arc<BoundAlgebra> {
        &self.alg
    }

    pub fn characteristic(&self) -> u32 {
        self.alg.characteristic()
    }

    pub fn dim_vector(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// The matrix of the `gi`-th generator.
    pub fn generator_matrix(&self, gi: usize) -> &Matrix {
        &self.gens[gi]
    }

    /// Matrices of the action of every basis element of the algebra.
    pub fn actions(&self) -> &[Matrix] {
        self.actions.get_or_init(|| self.compute_actions())
    }

    fn compute_actions(&self) -> Vec<Matrix> {
        let alg = &self.alg;
        let p = alg.characteristic();
        alg.basis()
            .iter()
            .enumerate()
            .map(|(b, e)| {
                let mut acc = Matrix::zeros(p, self.dims[e.source], self.dims[e.target]);
                for (c, word) in &alg.exprs()[b] {
                    if word.is_empty() {
                        acc.axpy(*c, &Matrix::identity(p, self.dims[e.source]));
                        continue;
                    }
                    let mut m = self.gens[word[0]].clone();
                    for &gi in &word[1..] {
                        m = m.mul(&self.gens[gi]);
                    }
                    acc.axpy(*c, &m);
                }
                acc
            })
            .collect()
    }

    /// Action of an element lying in `e_i A e_j`, as a map `M_i -> M_j`.
    pub fn act_elem(&self, x: &[u32], i: usize, j: usize) -> Matrix {
        let acts = self.actions();
        let mut m = Matrix::zeros(self.characteristic(), self.dims[i], self.dims[j]);
        for (b, &c) in x.iter().enumerate() {
            if c != 0 {
                let e = &self.alg.basis()[b];
                debug_assert!(e.source == i && e.target == j);
                m.axpy(c, &acts[b]);
            }
        }
        m
    }

    /// Checks that basis actions multiply according to the structure
    /// constants of the algebra.
    pub fn satisfies_relations(&self) -> bool {
        let alg = &self.alg;
        let dim = alg.dim();
        let acts = self.actions();
        for x in 0..dim {
            for y in 0..dim {
                let (ex, ey) = (&alg.basis()[x], &alg.basis()[y]);
                if ex.target != ey.source {
                    continue;
                }
                let lhs = acts[x].mul(&acts[y]);
                let mut rhs = Matrix::zeros(self.characteristic(), self.dims[ex.source], self.dims[ey.target]);
                for &(z, c) in alg.mul_basis(x, y) {
                    rhs.axpy(c, &acts[z]);
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Direct sum of modules over the same algebra.
    pub fn direct_sum(alg: Arc<BoundAlgebra>, parts: &[&Representation]) -> Representation {
        let n = alg.num_vertices();
        let p = alg.characteristic();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
        let gens = alg
            .generators()
            .iter()
            .enumerate()
            .map(|(gi, &g)| {
                let gb = &alg.basis()[g];
                let mut m = Matrix::zeros(p, dims[gb.source], dims[gb.target]);
                let (mut r, mut c) = (0, 0);
                for part in parts {
                    m.set_block(r, c, &part.gens[gi]);
                    r += part.dims[gb.source];
                    c += part.dims[gb.target];
                }
                m
            })
            .collect();
        Self::new_unchecked(alg, dims, gens)
    }

    /// The submodule spanned at each vertex by `spaces[v]` (assumed
    /// closed under the action), in its reduced basis.
    pub fn submodule(&self, spaces: &[Subspace]) -> Result<Representation> {
        let p = self.characteristic();
        let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
        let mut gens = Vec::with_capacity(self.gens.len());
        for (gi, &g) in self.alg.generators().iter().enumerate() {
            let gb = &self.alg.basis()[g];
            let (u, w) = (gb.source, gb.target);
            let mut m = Matrix::zeros(p, dims[u], dims[w]);
            for (r, row) in spaces[u].basis().iter().enumerate() {
                let img = self.gens[gi].vec_mul(row);
                let coords = spaces[w]
                    .coordinates(&img)
                    .ok_or_else(|| Error::RelationType("subspace is not a submodule".into()))?;
                for (c, x) in coords.into_iter().enumerate() {
                    m.set(r, c, x);
                }
            }
            gens.push(m);
        }
        Ok(Self::new_unchecked(self.alg.clone(), dims, gens))
    }

    /// The quotient by the submodule given by `spaces`, together with the
    /// projection map.
    pub fn quotient(&self, spaces: &[Subspace]) -> Result<(Representation, ModuleMap)> {
        let p = self.characteristic();
        let free: Vec<Vec<usize>> = spaces.iter().map(|s| s.free_columns()).collect();
        let dims: Vec<usize> = free.iter().map(|f| f.len()).collect();
        let project = |v: usize, x: &[u32]| -> Vec<u32> {
            let r = spaces[v].reduce(x);
            free[v].iter().map(|&c| r[c]).collect()
        };
        let mut gens = Vec::with_capacity(self.gens.len());
        for (gi, &g) in self.alg.generators().iter().enumerate() {
            let gb = &self.alg.basis()[g];
            let (u, w) = (gb.source, gb.target);
            // Invariance check: images of the subspace stay inside.
            for row in spaces[u].basis() {
                if !spaces[w].contains(&self.gens[gi].vec_mul(row)) {
                    return Err(Error::RelationType("subspace is not a submodule".into()));
                }
            }
            let mut m = Matrix::zeros(p, dims[u], dims[w]);
            for (r, &c) in free[u].iter().enumerate() {
                let img = project(w, self.gens[gi].row(c));
                for (k, x) in img.into_iter().enumerate() {
                    m.set(r, k, x);
                }
            }
            gens.push(m);
        }
        let blocks = (0..self.dims.len())
            .map(|v| {
                let mut m = Matrix::zeros(p, self.dims[v], dims[v]);
                for r in 0..self.dims[v] {
                    let mut e = vec![0u32; self.dims[v]];
                    e[r] = 1;
                    for (k, x) in project(v, &e).into_iter().enumerate() {
                        m.set(r, k, x);
                    }
                }
                m
            })
            .collect();
        Ok((Self::new_unchecked(self.alg.clone(), dims, gens), ModuleMap { blocks }))
    }

    /// Image of a map into this module, as per-vertex subspaces.
    pub fn image_of(&self, f: &ModuleMap) -> Vec<Subspace> {
        f.blocks.iter().map(Subspace::from_matrix_rows).collect()
    }

    /// Cokernel of a map into this module.
    pub fn cokernel_of(&self, f: &ModuleMap) -> Result<Representation> {
        Ok(self.quotient(&self.image_of(f))?.0)
    }

    /// `rad M_v`: the sum of images of generators ending at `v`.
    fn radical_spaces(&self) -> Vec<Subspace> {
        let p = self.characteristic();
        let mut spaces: Vec<Subspace> = self.dims.iter().map(|&d| Subspace::zero(p, d)).collect();
        for (gi, &g) in self.alg.generators().iter().enumerate() {
            let t = self.alg.basis()[g].target;
            for r in 0..self.gens[gi].rows() {
                spaces[t].insert(self.gens[gi].row(r));
            }
        }
        spaces
    }

    /// The radical as a submodule and the top as simple multiplicities.
    pub fn radical_and_top(&self) -> (Representation, Vec<usize>) {
        let spaces = self.radical_spaces();
        let top = spaces.iter().zip(&self.dims).map(|(s, &d)| d - s.dim()).collect();
        let rad = self.submodule(&spaces).expect("the radical is a submodule");
        (rad, top)
    }

    fn pres_data(&self) -> &PresData {
        self.pres.get_or_init(|| self.compute_presentation())
    }

    fn compute_presentation(&self) -> PresData {
        let alg = &self.alg;
        let p = self.characteristic();
        let n = alg.num_vertices();
        let acts = self.actions();
        // Top generators: extend a basis of rad M_v by standard vectors.
        let mut rad = self.radical_spaces();
        let mut tops: Vec<(usize, Vec<u32>)> = Vec::new();
        for v in 0..n {
            for k in 0..self.dims[v] {
                let mut e = vec![0u32; self.dims[v]];
                e[k] = 1;
                if rad[v].insert(&e) {
                    tops.push((v, e));
                }
            }
        }
        let top_vertices: Vec<usize> = tops.iter().map(|t| t.0).collect();
        let layout = Layout::new(alg, &top_vertices);
        // pi_v: (P0)_v -> M_v, row (s, b) = m_s · b.
        let pis: Vec<Matrix> = (0..n)
            .map(|v| {
                let mut m = Matrix::zeros(p, layout.dim(v), self.dims[v]);
                for (r, &(s, b)) in layout.rows[v].iter().enumerate() {
                    let img = acts[b].vec_mul(&tops[s].1);
                    for (c, x) in img.into_iter().enumerate() {
                        m.set(r, c, x);
                    }
                }
                m
            })
            .collect();
        let section: Vec<Matrix> = (0..n)
            .map(|v| {
                let pit = pis[v].transpose();
                let sol = pit
                    .solve(&Matrix::identity(p, self.dims[v]))
                    .expect("top generators generate the module");
                sol.particular.transpose()
            })
            .collect();
        // Omega = ker pi, and its top generators.
        let omega: Vec<Subspace> =
            (0..n).map(|v| Subspace::from_vectors(p, layout.dim(v), pis[v].left_nullspace())).collect();
        let p0 = Representation::from_layout(alg.clone(), &layout);
        let mut rad_omega: Vec<Subspace> = (0..n).map(|v| Subspace::zero(p, layout.dim(v))).collect();
        for (gi, &g) in alg.generators().iter().enumerate() {
            let gb = &alg.basis()[g];
            for row in omega[gb.source].basis() {
                rad_omega[gb.target].insert(&p0.gens[gi].vec_mul(row));
            }
        }
        let mut p1 = Vec::new();
        let mut map = Vec::new();
        for v in 0..n {
            for row in omega[v].basis() {
                if rad_omega[v].insert(row) {
                    p1.push(v);
                    let mut parts = vec![vec![0u32; alg.dim()]; tops.len()];
                    for (r, &(s, b)) in layout.rows[v].iter().enumerate() {
                        parts[s][b] = row[r];
                    }
                    map.push(parts);
                }
            }
        }
        PresData { layout, section, pres: Presentation { p0: top_vertices, p1, map } }
    }

    /// The minimal projective presentation.
    pub fn minimal_presentation(&self) -> &Presentation {
        &self.pres_data().pres
    }

    /// `[P0] - [P1]` as a vector indexed by vertices.
    pub fn g_vector(&self) -> GVector {
        let pres = self.minimal_presentation();
        let mut g = vec![0i64; self.dims.len()];
        for &j in &pres.p0 {
            g[j] += 1;
        }
        for &k in &pres.p1 {
            g[k] -= 1;
        }
        g
    }

    /// The map `Hom(P0, N) -> Hom(P1, N)` induced by the presentation of
    /// `self`, with `Hom(P_j, N) = N_j`; rows index `⊕_s N_{j_s}`.
    pub fn presentation_map(&self, n: &Representation) -> Matrix {
        let pres = self.minimal_presentation();
        let p = self.characteristic();
        let row_off = offsets(pres.p0.iter().map(|&j| n.dims[j]));
        let col_off = offsets(pres.p1.iter().map(|&k| n.dims[k]));
        let mut m = Matrix::zeros(p, *row_off.last().unwrap(), *col_off.last().unwrap());
        for (t, &k) in pres.p1.iter().enumerate() {
            for (s, &j) in pres.p0.iter().enumerate() {
                let x = &pres.map[t][s];
                if x.iter().all(|&c| c == 0) {
                    continue;
                }
                m.set_block(row_off[s], col_off[t], &n.act_elem(x, j, k));
            }
        }
        m
    }

    /// `Hom_A(self, n)` through the presentation of `self`.
    pub fn hom(&self, n: &Representation) -> HomSpace {
        let data = self.pres_data();
        let pres = &data.pres;
        let nv = self.dims.len();
        let big = self.presentation_map(n);
        let sols = if big.cols() == 0 {
            (0..big.rows())
                .map(|i| {
                    let mut e = vec![0u32; big.rows()];
                    e[i] = 1;
                    e
                })
                .collect()
        } else {
            big.left_nullspace()
        };
        let row_off = offsets(pres.p0.iter().map(|&j| n.dims[j]));
        let acts = n.actions();
        let p = self.characteristic();
        let basis = sols
            .into_iter()
            .map(|phi| {
                let blocks = (0..nv)
                    .map(|v| {
                        // T_v: (P0)_v -> N_v, row (s, b) = n_s · b.
                        let mut t = Matrix::zeros(p, data.layout.dim(v), n.dims[v]);
                        for (r, &(s, b)) in data.layout.rows[v].iter().enumerate() {
                            let ns = &phi[row_off[s]..row_off[s + 1]];
                            let img = acts[b].vec_mul(ns);
                            for (c, x) in img.into_iter().enumerate() {
                                t.set(r, c, x);
                            }
                        }
                        data.section[v].mul(&t)
                    })
                    .collect();
                ModuleMap { blocks }
            })
            .collect();
        HomSpace { basis }
    }

    /// `Hom_A(self, n)` by solving the intertwining equations directly;
    /// independent of the presentation machinery.
    pub fn hom_direct(&self, n: &Representation) -> HomSpace {
        let p = self.characteristic();
        let nv = self.dims.len();
        let var_off = offsets((0..nv).map(|v| self.dims[v] * n.dims[v]));
        let nvars = *var_off.last().unwrap();
        let mut eqs: Vec<Vec<u32>> = Vec::new();
        for (gi, &g) in self.alg.generators().iter().enumerate() {
            let gb = &self.alg.basis()[g];
            let (u, w) = (gb.source, gb.target);
            let (mg, ng) = (&self.gens[gi], &n.gens[gi]);
            // M(g) f_w - f_u N(g) = 0, entry (i, j) with i < m_u, j < n_w.
            for i in 0..self.dims[u] {
                for j in 0..n.dims[w] {
                    let mut eq = vec![0u32; nvars];
                    for k in 0..self.dims[w] {
                        let c = mg.get(i, k);
                        if c != 0 {
                            let idx = var_off[w] + k * n.dims[w] + j;
                            eq[idx] = add_mod(eq[idx], c, p);
                        }
                    }
                    for l in 0..n.dims[u] {
                        let c = ng.get(l, j);
                        if c != 0 {
                            let idx = var_off[u] + i * n.dims[u] + l;
                            eq[idx] = sub_mod(eq[idx], c, p);
                        }
                    }
                    if eq.iter().any(|&x| x != 0) {
                        eqs.push(eq);
                    }
                }
            }
        }
        let kernel: Vec<Vec<u32>> = if eqs.is_empty() {
            (0..nvars)
                .map(|i| {
                    let mut e = vec![0u32; nvars];
                    e[i] = 1;
                    e
                })
                .collect()
        } else {
            Matrix::from_residue_rows(p, nvars, &eqs).nullspace()
        };
        let basis = kernel
            .into_iter()
            .map(|x| ModuleMap {
                blocks: (0..nv)
                    .map(|v| Matrix::from_data(p, self.dims[v], n.dims[v], x[var_off[v]..var_off[v + 1]].to_vec()))
                    .collect(),
            })
            .collect();
        HomSpace { basis }
    }

    /// The Auslander–Reiten translate, as the kernel of `νP1 -> νP0`.
    pub fn tau(&self) -> Representation {
        let alg = &self.alg;
        let p = self.characteristic();
        let pres = self.minimal_presentation();
        if pres.p1.is_empty() {
            return Representation::zero(alg.clone());
        }
        let nu1_parts: Vec<Representation> = pres.p1.iter().map(|&k| nakayama_projective(alg, k)).collect();
        let refs: Vec<&Representation> = nu1_parts.iter().collect();
        let nu1 = Representation::direct_sum(alg.clone(), &refs);
        let nv = alg.num_vertices();
        let dual_rows = |j: usize, v: usize| -> Vec<usize> {
            (0..alg.dim()).filter(|&u| alg.basis()[u].target == j && alg.basis()[u].source == v).collect()
        };
        let kernels: Vec<Subspace> = (0..nv)
            .map(|v| {
                let rows1: Vec<Vec<usize>> = pres.p1.iter().map(|&k| dual_rows(k, v)).collect();
                let cols0: Vec<Vec<usize>> = pres.p0.iter().map(|&j| dual_rows(j, v)).collect();
                let r_off = offsets(rows1.iter().map(|r| r.len()));
                let c_off = offsets(cols0.iter().map(|c| c.len()));
                let mut m = Matrix::zeros(p, *r_off.last().unwrap(), *c_off.last().unwrap());
                for t in 0..pres.p1.len() {
                    for s in 0..pres.p0.len() {
                        let x = &pres.map[t][s];
                        if x.iter().all(|&c| c == 0) {
                            continue;
                        }
                        for (zi, &z) in cols0[s].iter().enumerate() {
                            let zx = alg.mul(&alg.basis_elem(z), x);
                            for (ui, &u) in rows1[t].iter().enumerate() {
                                if zx[u] != 0 {
                                    m.set(r_off[t] + ui, c_off[s] + zi, zx[u]);
                                }
                            }
                        }
                    }
                }
                
                if m.cols() == 0 {
                    Subspace::full(p, m.rows())
                } else {
                    Subspace::from_vectors(p, m.rows(), m.left_nullspace())
                }
            })
            .collect();
        nu1.submodule(&kernels).expect("kernel of a module map is a submodule")
    }

    /// τ-rigidity via surjectivity of `Hom(P0, M) -> Hom(P1, M)`.
    pub fn is_tau_rigid(&self) -> bool {
        let m = self.presentation_map(self);
        m.rank() == m.cols()
    }

    /// τ-rigidity from the definition: `Hom(M, τM) = 0`.
    pub fn is_tau_rigid_direct(&self) -> bool {
        let t = self.tau();
        t.is_zero() || self.hom_direct(&t).dim() == 0
    }

    /// Whether `Hom(n, τ self) = 0`, tested on the presentation of `self`.
    pub fn hom_to_tau_vanishes(&self, n: &Representation) -> bool {
        let m = self.presentation_map(n);
        m.rank() == m.cols()
    }

    /// Krull–Schmidt decomposition into indecomposable summands.
    ///
    /// Endomorphisms are split with Fitting's lemma at an eigenvalue in
    /// F_p. A module is accepted as indecomposable once the span of
    /// `x - λ(x)` over an End basis is a nilpotent ideal of codimension
    /// one; if no splitting endomorphism and no such certificate exist,
    /// the endomorphism ring does not split over F_p and an error is
    /// returned.
    pub fn decompose(&self) -> Result<Vec<Representation>> {
        let mut out = Vec::new();
        self.decompose_into(&mut out)?;
        Ok(out)
    }

    fn decompose_into(&self, out: &mut Vec<Representation>) -> Result<()> {
        if self.is_zero() {
            return Ok(());
        }
        let end = self.hom(self);
        if end.dim() == 1 {
            out.push(self.clone());
            return Ok(());
        }
        let p = self.characteristic();
        let d = self.total_dim();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_7a11);
        let mut eigen = Vec::with_capacity(end.dim());
        let tries = end.dim() + 48;
        for attempt in 0..tries {
            let x = if attempt < end.dim() {
                end.basis[attempt].clone()
            } else {
                let mut acc = ModuleMap::zero(p, &self.dims, &self.dims);
                for b in &end.basis {
                    acc = acc.add(&b.scale(rng.gen_range(0..p)));
                }
                acc
            };
            let roots = charpoly_roots(&x.to_full());
            for &lam in &roots {
                if let Some((k, i)) = self.fitting_split(&x, lam, d) {
                    k.decompose_into(out)?;
                    i.decompose_into(out)?;
                    return Ok(());
                }
            }
            if attempt < end.dim() {
                if roots.len() != 1 {
                    return Err(Error::NonSplitBrick(format!(
                        "endomorphism without eigenvalue in F_{p} on a module with dimension vector {:?}",
                        self.dims
                    )));
                }
                eigen.push(roots[0]);
            }
            if attempt + 1 == end.dim() && local_certificate(&end, &eigen, &self.dims) {
                out.push(self.clone());
                return Ok(());
            }
        }
        Err(Error::NonSplitBrick(format!("no splitting found for dimension vector {:?}", self.dims)))
    }

    /// `M = ker (x-λ)^d ⊕ im (x-λ)^d` when both parts are nonzero.
    fn fitting_split(&self, x: &ModuleMap, lam: u32, d: usize) -> Option<(Representation, Representation)> {
        let p = self.characteristic();
        let shifted = x.add(&ModuleMap::identity(p, &self.dims).scale(p - lam % p));
        let y = ModuleMap { blocks: shifted.blocks.iter().map(|b| b.pow(d as u64)).collect() };
        let rank = y.rank();
        if rank == 0 || rank == d {
            return None;
        }
        let kers: Vec<Subspace> = y
            .blocks
            .iter()
            .map(|b| Subspace::from_vectors(p, b.rows(), if b.cols() == 0 { identity_rows(b.rows()) } else { b.left_nullspace() }))
            .collect();
        let ims = self.image_of(&y);
        let k = self.submodule(&kers).ok()?;
        let i = self.submodule(&ims).ok()?;
        Some((k, i))
    }

    /// Whether `End(M)` is local with residue field F_p.
    pub fn is_indecomposable(&self) -> Result<bool> {
        Ok(self.decompose()?.len() == 1)
    }

    /// Debug dump: dimensions plus generator matrices.
    pub fn to_json(&self) -> Result<String> {
        let dump = RepresentationFile {
            algebra: self.alg.name().to_string(),
            p: self.characteristic(),
            dims: self.dims.clone(),
            maps: self
                .alg
                .generators()
                .iter()
                .enumerate()
                .map(|(gi, &g)| GeneratorMatrix {
                    arrow: self.alg.basis()[g].label.clone(),
                    matrix: self.gens[gi].row_vecs(),
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&dump)?)
    }

    /// Parses a dump produced by [`Representation::to_json`].
    pub fn from_json(alg: Arc<BoundAlgebra>, text: &str) -> Result<Representation> {
        let f: RepresentationFile = serde_json::from_str(text)?;
        let p = alg.characteristic();
        let mut gens = Vec::new();
        for (gi, &g) in alg.generators().iter().enumerate() {
            let b = &alg.basis()[g];
            let gm = f
                .maps
                .iter()
                .find(|m| m.arrow == b.label)
                .or_else(|| f.maps.get(gi))
                .ok_or_else(|| Error::Parse(format!("missing matrix for {}", b.label)))?;
            let rows = f.dims.get(b.source).copied().unwrap_or(0);
            let cols = f.dims.get(b.target).copied().unwrap_or(0);
            let data: Vec<u32> = gm.matrix.iter().flatten().map(|&x| x % p).collect();
            if data.len() != rows * cols {
                return Err(Error::Parse(format!("matrix for {} has the wrong size", b.label)));
            }
            gens.push(Matrix::from_data(p, rows, cols, data));
        }
        Representation::from_matrices(alg, f.dims, gens)
    }
}

#[derive(Serialize, Deserialize)]
struct GeneratorMatrix {
    arrow: String,
    matrix: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct RepresentationFile {
    algebra: String,
    #[serde(rename = "char")]
    p: u32,
    dims: Vec<usize>,
    maps: Vec<GeneratorMatrix>,
}

fn offsets<I: IntoIterator<Item = usize>>(sizes: I) -> Vec<usize> {
    let mut v = vec![0];
    for s in sizes {
        v.push(v.last().unwrap() + s);
    }
    v
}

fn identity_rows(n: usize) -> Vec<Vec<u32>> {
    (0..n)
        .map(|i| {
            let mut e = vec![0u32; n];
            e[i] = 1;
            e
        })
        .collect()
}

/// `D(A e_j)` with dual basis `u*` for `u` ending at `j`, placed at the
/// source of `u`; a generator `g` sends `u*` to `Σ_w coef_u(g w) w*`.
fn nakayama_projective(alg: &Arc<BoundAlgebra>, j: usize) -> Representation {
    let p = alg.characteristic();
    let nv = alg.num_vertices();
    let at: Vec<Vec<usize>> = (0..nv)
        .map(|v| (0..alg.dim()).filter(|&u| alg.basis()[u].target == j && alg.basis()[u].source == v).collect())
        .collect();
    let dims: Vec<usize> = at.iter().map(|a| a.len()).collect();
    let gens = alg
        .generators()
        .iter()
        .map(|&g| {
            let gb = &alg.basis()[g];
            let (v, w) = (gb.source, gb.target);
            let mut m = Matrix::zeros(p, dims[v], dims[w]);
            for (c, &wb) in at[w].iter().enumerate() {
                for &(u, coef) in alg.mul_basis(g, wb) {
                    if let Some(r) = at[v].iter().position(|&x| x == u) {
                        m.set(r, c, coef);
                    }
                }
            }
            m
        })
        .collect();
    Representation::new_unchecked(alg.clone(), dims, gens)
}

/// Distinct roots in F_p of the characteristic polynomial.
fn charpoly_roots(m: &Matrix) -> Vec<u32> {
    let p = m.characteristic();
    let cp = m.charpoly();
    (0..p).filter(|&x| poly_eval(&cp, x, p) == 0).collect()
}

/// `R = span{x_k - λ_k}` is closed under products and nilpotent.
fn local_certificate(end: &HomSpace, eigen: &[u32], dims: &[usize]) -> bool {
    let Some(first) = end.basis.first() else { return false };
    let p = first.blocks.first().map(|b| b.characteristic()).unwrap_or(2);
    let id = ModuleMap::identity(p, dims);
    let rad: Vec<ModuleMap> =
        end.basis.iter().zip(eigen).map(|(x, &l)| x.add(&id.scale((p - l % p) % p))).collect();
    let width = rad.first().map(|m| m.flatten().len()).unwrap_or(0);
    let span = Subspace::from_vectors(p, width, rad.iter().map(|m| m.flatten()));
    if span.dim() + 1 != end.dim() {
        return false;
    }
    for a in &rad {
        for b in &rad {
            if !span.contains(&a.then(b).flatten()) {
                return false;
            }
        }
    }
    // Powers R^k shrink to zero.
    let mut power: Vec<ModuleMap> = rad.clone();
    for _ in 0..=dims.iter().sum::<usize>() {
        let mut next = Subspace::zero(p, width);
        let mut maps = Vec::new();
        for a in &power {
            for b in &rad {
                let c = a.then(b);
                if next.insert(&c.flatten()) {
                    maps.push(c);
                }
            }
        }
        if maps.is_empty() {
            return true;
        }
        power = maps;
    }
    false
}

/// Whether two modules are isomorphic, by comparing indecomposable
/// summands: indecomposables `X, Y` are isomorphic exactly when some
/// composite `X -> Y -> X` of basis maps is not nilpotent.
pub fn is_isomorphic(m: &Representation, n: &Representation) -> Result<bool> {
    if m.dims != n.dims {
        return Ok(false);
    }
    let ms = m.decompose()?;
    let mut ns = n.decompose()?;
    for x in &ms {
        let Some(pos) = ns.iter().position(|y| indecomposables_isomorphic(x, y)) else {
            return Ok(false);
        };
        ns.swap_remove(pos);
    }
    Ok(ns.is_empty())
}

/// Isomorphism test for two indecomposable modules.
pub fn indecomposables_isomorphic(x: &Representation, y: &Representation) -> bool {
    if x.dims != y.dims {
        return false;
    }
    let f = x.hom(y);
    let g = y.hom(x);
    let d = x.total_dim();
    for a in &f.basis {
        for b in &g.basis {
            let c = a.then(b);
            let full = c.to_full();
            if !full.pow(d as u64).is_zero() {
                return true;
            }
        }
    }
    false
}

/// A vector in `M_v` scaled to a canonical form (first nonzero entry 1).
pub fn normalize(v: &mut [u32], p: u32) {
    if let Some(&f) = v.iter().find(|&&x| x != 0) {
        let inv = crate::field_linalg::inv_mod(f, p);
        for x in v.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
    }
}
