//! Prime-field arithmetic and dense linear algebra.
//!
//! Every matrix carries its characteristic `p`. Entries are stored as
//! residues in `[0, p)`. Elimination always picks the first nonzero entry
//! of a column as pivot, so results are reproducible bit for bit.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// True when `p` is a prime that fits the arithmetic used here.
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Checks that `p` is usable as a characteristic.
pub fn check_prime(p: u32) -> Result<()> {
    if is_prime(p) && p < (1 << 31) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

#[inline]
pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % p as u64) as u32
}

#[inline]
pub fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// Multiplicative inverse by the extended Euclidean algorithm.
/// Panics on zero, which is always a logic error upstream.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(!a.is_multiple_of(p), "inverse of zero in F_{p}");
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u32
}

/// Reduces an arbitrary integer into `[0, p)`.
pub fn reduce_i64(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

/// Symmetric lift of a residue to an integer in `(-p/2, p/2]`.
pub fn lift_signed(v: u32, p: u32) -> i64 {
    if v as u64 * 2 > p as u64 {
        v as i64 - p as i64
    } else {
        v as i64
    }
}

/// A single element of F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    value: u32,
    p: u32,
}

impl FieldElem {
    pub fn new(value: i64, p: u32) -> Self {
        FieldElem { value: reduce_i64(value, p), p }
    }

    pub fn zero(p: u32) -> Self {
        FieldElem { value: 0, p }
    }

    pub fn one(p: u32) -> Self {
        FieldElem { value: 1 % p, p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        (self.value != 0).then(|| FieldElem { value: inv_mod(self.value, self.p), p: self.p })
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = FieldElem::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        FieldElem { value: add_mod(self.value, o.value, self.p), p: self.p }
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        FieldElem { value: sub_mod(self.value, o.value, self.p), p: self.p }
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        FieldElem { value: mul_mod(self.value, o.value, self.p), p: self.p }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> Self {
        FieldElem { value: neg_mod(self.value, self.p), p: self.p }
    }
}

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix F_{} {}x{}", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Solution set of `a * x = b`: one particular solution plus a basis of
/// the kernel of `a` (each kernel vector is a column vector of length
/// `a.cols()`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Matrix,
    pub nullspace: Vec<Vec<u32>>,
}

impl Matrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Matrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Matrix::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing mod `p`.
    /// All rows must have equal length.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Matrix::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.data[i * cols + j] = reduce_i64(v, p);
            }
        }
        m
    }

    /// Builds a matrix from residue rows (entries must already be `< p`).
    pub fn from_residue_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&v| v % p));
        }
        Matrix { p, rows: rows.len(), cols, data }
    }

    pub fn from_data(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { p, rows, cols, data }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    #[inline]
    pub fn add_at(&mut self, r: usize, c: usize, v: u32) {
        let i = r * self.cols + c;
        self.data[i] = add_mod(self.data[i], v, self.p);
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        assert_eq!(self.p, o.p);
        let p = self.p as u64;
        let mut out = vec![0u64; self.rows * o.cols];
        for i in 0..self.rows {
            let orow = &mut out[i * o.cols..(i + 1) * o.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &o.data[k * o.cols..(k + 1) * o.cols];
                for (acc, &b) in orow.iter_mut().zip(brow) {
                    *acc = (*acc + a * b as u64) % p;
                }
            }
        }
        Matrix { p: self.p, rows: self.rows, cols: o.cols, data: out.into_iter().map(|v| v as u32).collect() }
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let p = self.p as u64;
        let mut out = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (acc, &b) in out.iter_mut().zip(self.row(k)) {
                *acc = (*acc + a as u64 * b as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| add_mod(a, b, self.p)).collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| sub_mod(a, b, self.p)).collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let data = self.data.iter().map(|&a| mul_mod(a, c, self.p)).collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    /// `self += c * o`.
    pub fn axpy(&mut self, c: u32, o: &Matrix) {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        if c == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&o.data) {
            *a = add_mod(*a, mul_mod(c, b, self.p), self.p);
        }
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows);
        let cols = self.cols + o.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(o.row(r));
        }
        Matrix { p: self.p, rows: self.rows, cols, data }
    }

    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Matrix { p: self.p, rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Copies the block `rows r0..r1`, `cols c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        let mut m = Matrix::zeros(self.p, r1 - r0, c1 - c0);
        for r in r0..r1 {
            m.row_mut(r - r0).copy_from_slice(&self.row(r)[c0..c1]);
        }
        m
    }

    /// Writes `b` into `self` with top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for r in 0..b.rows {
            let cols = self.cols;
            self.data[(r0 + r) * cols + c0..(r0 + r) * cols + c0 + b.cols].copy_from_slice(b.row(r));
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Matrix { p: self.p, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.p, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                m.data[r * idx.len() + j] = self.get(r, c);
            }
        }
        m
    }

    /// Reduced row echelon form, pivot columns and rank.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    /// In-place reduction; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = inv_mod(self.data[r * cols + c], p);
            if inv != 1 {
                for j in c..cols {
                    let i = r * cols + j;
                    self.data[i] = mul_mod(self.data[i], inv, p);
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.data[i * cols + c];
                if f == 0 {
                    continue;
                }
                let nf = (p - f) as u64;
                for j in c..cols {
                    let src = self.data[r * cols + j];
                    if src != 0 {
                        let d = &mut self.data[i * cols + j];
                        *d = ((*d as u64 + nf * src as u64) % p as u64) as u32;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : self * x = 0}` as vectors of length `cols`.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let Rref { matrix, pivots, .. } = self.rref();
        kernel_from_rref(&matrix, &pivots)
    }

    /// Basis of `{y : y * self = 0}` as vectors of length `rows`.
    pub fn left_nullspace(&self) -> Vec<Vec<u32>> {
        self.transpose().nullspace()
    }

    /// Solves `self * x = b` for a matrix `x` with `b.cols()` columns.
    pub fn solve(&self, b: &Matrix) -> Result<Solution> {
        solve(self, b)
    }

    /// Characteristic polynomial `det(tI - self)`, coefficients from the
    /// constant term upwards (monic, length `n + 1`).
    pub fn charpoly(&self) -> Vec<u32> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let p = self.p;
        let mut h = self.clone();
        // Reduce to upper Hessenberg form by similarity transforms.
        for c in 0..n.saturating_sub(2) {
            let Some(piv) = (c + 1..n).find(|&i| h.get(i, c) != 0) else {
                continue;
            };
            if piv != c + 1 {
                for j in 0..n {
                    h.data.swap(piv * n + j, (c + 1) * n + j);
                }
                for i in 0..n {
                    h.data.swap(i * n + piv, i * n + c + 1);
                }
            }
            let inv = inv_mod(h.get(c + 1, c), p);
            for i in c + 2..n {
                let f = mul_mod(h.get(i, c), inv, p);
                if f == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = sub_mod(h.get(i, j), mul_mod(f, h.get(c + 1, j), p), p);
                    h.set(i, j, v);
                }
                for j in 0..n {
                    let v = add_mod(h.get(j, c + 1), mul_mod(f, h.get(j, i), p), p);
                    h.set(j, c + 1, v);
                }
            }
        }
        // Recurrence on leading principal minors of tI - H.
        let mut polys: Vec<Vec<u32>> = vec![vec![1]];
        for k in 0..n {
            // p_{k+1} = (t - h_kk) p_k - sum_{i<k} h_ik * prod_{j=i+1..k} h_{j,j-1} * p_i
            let mut next = vec![0u32; k + 2];
            for (d, &c) in polys[k].iter().enumerate() {
                next[d + 1] = add_mod(next[d + 1], c, p);
                next[d] = sub_mod(next[d], mul_mod(h.get(k, k), c, p), p);
            }
            let mut prod = 1u32;
            for i in (0..k).rev() {
                prod = mul_mod(prod, h.get(i + 1, i), p);
                if prod == 0 {
                    break;
                }
                let coef = mul_mod(h.get(i, k), prod, p);
                if coef == 0 {
                    continue;
                }
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = sub_mod(next[d], mul_mod(coef, c, p), p);
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }
}

/// Evaluates a polynomial given by ascending coefficients.
pub fn poly_eval(coeffs: &[u32], x: u32, p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
}

fn kernel_from_rref(m: &Matrix, pivots: &[usize]) -> Vec<Vec<u32>> {
    let p = m.p;
    let mut is_pivot = vec![false; m.cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; m.cols];
        v[free] = 1 % p;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = neg_mod(m.get(r, free), p);
        }
        basis.push(v);
    }
    basis
}

/// Reduced row echelon form with pivots and rank.
pub fn rref(m: &Matrix) -> Rref {
    m.rref()
}

/// Solves `a * x = b`. Fails with [`Error::Inconsistent`] when some
/// column of `b` is outside the column space of `a`.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Solution> {
    assert_eq!(a.rows, b.rows, "solve: row mismatch");
    let p = a.p;
    let aug = a.hstack(b);
    let Rref { matrix, pivots, .. } = aug.rref();
    if pivots.iter().any(|&c| c >= a.cols) {
        return Err(Error::Inconsistent);
    }
    let mut particular = Matrix::zeros(p, a.cols, b.cols);
    for (r, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            particular.set(pc, j, matrix.get(r, a.cols + j));
        }
    }
    let left = matrix.block(0, matrix.rows, 0, a.cols);
    let nullspace = kernel_from_rref(&left, &pivots);
    Ok(Solution { particular, nullspace })
}

/// Basis (in reduced echelon form) of the intersection of row spaces.
/// Each input is a list of vectors of a common ambient length `n`.
pub fn intersect(p: u32, n: usize, spaces: &[Vec<Vec<u32>>]) -> Vec<Vec<u32>> {
    let Some(first) = spaces.first() else {
        return Subspace::full(p, n).basis().to_vec();
    };
    let mut cur = Subspace::from_vectors(p, n, first.iter().cloned());
    for s in &spaces[1..] {
        let other = Subspace::from_vectors(p, n, s.iter().cloned());
        cur = cur.intersect(&other);
    }
    cur.basis().to_vec()
}

/// A subspace of F_p^n held as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    p: u32,
    n: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, n: usize) -> Self {
        Subspace { p, n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(p: u32, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { p, n, rows, pivots: (0..n).collect() }
    }

    pub fn from_vectors<I: IntoIterator<Item = Vec<u32>>>(p: u32, n: usize, vs: I) -> Self {
        let rows: Vec<Vec<u32>> = vs.into_iter().collect();
        if rows.is_empty() {
            return Subspace::zero(p, n);
        }
        let m = Matrix::from_residue_rows(p, n, &rows);
        let Rref { matrix, pivots, rank } = m.rref();
        let rows = (0..rank).map(|r| matrix.row(r).to_vec()).collect();
        Subspace { p, n, rows, pivots }
    }

    pub fn from_matrix_rows(m: &Matrix) -> Self {
        let Rref { matrix, pivots, rank } = m.rref();
        let rows = (0..rank).map(|r| matrix.row(r).to_vec()).collect();
        Subspace { p: m.p, n: m.cols, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_residue_rows(self.p, self.n, &self.rows)
    }

    /// Canonical representative of `v` modulo the subspace: the pivot
    /// coordinates are cleared.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = w[pc];
            if f == 0 {
                continue;
            }
            let nf = p - f;
            for (x, &y) in w.iter_mut().zip(row) {
                if y != 0 {
                    *x = add_mod(*x, mul_mod(nf, y, p), p);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let p = self.p;
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[pc], p);
        for x in w.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for row in self.rows.iter_mut() {
            let f = row[pc];
            if f == 0 {
                continue;
            }
            let nf = p - f;
            for (x, &y) in row.iter_mut().zip(&w) {
                if y != 0 {
                    *x = add_mod(*x, mul_mod(nf, y, p), p);
                }
            }
        }
        let pos = self.pivots.partition_point(|&c| c < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, w);
        true
    }

    /// Coordinates not used as pivots; the quotient `F^n / U` is
    /// identified with these coordinates.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.n];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.n).filter(|&c| !is_pivot[c]).collect()
    }

    /// Coordinates of `v` in the reduced basis, if `v` lies in the space.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let coords: Vec<u32> = self.pivots.iter().map(|&pc| v[pc]).collect();
        let mut recon = vec![0u32; self.n];
        for (c, row) in coords.iter().zip(&self.rows) {
            if *c == 0 {
                continue;
            }
            for (x, &y) in recon.iter_mut().zip(row) {
                *x = add_mod(*x, mul_mod(*c, y, self.p), self.p);
            }
        }
        (recon == v).then_some(coords)
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &o.rows {
            s.insert(r);
        }
        s
    }

    pub fn intersect(&self, o: &Subspace) -> Subspace {
        assert_eq!(self.n, o.n);
        if self.dim() == 0 || o.dim() == 0 {
            return Subspace::zero(self.p, self.n);
        }
        // (a, b) with a*U + b*W = 0 gives a*U in the intersection.
        let stacked = self.basis_matrix().vstack(&o.basis_matrix());
        let rel = stacked.left_nullspace();
        let u = self.basis_matrix();
        let vecs = rel.into_iter().map(|c| u.vec_mul(&c[..self.dim()]));
        Subspace::from_vectors(self.p, self.n, vecs)
    }
}
