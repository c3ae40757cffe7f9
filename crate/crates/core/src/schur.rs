//! Combinatorics of Schur algebras `S(n, r)`: partitions and p-cores,
//! characters of two-part Young modules, the arrow recursion for the
//! quiver of `S(2, r)`, and the τ-tilting classification grid.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field_linalg::is_prime;
use crate::quiver_algebra::Quiver;

pub use crate::catalog::{catalog, catalog_with_char, names as catalog_names};

/// A partition, stored without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts the parts into weakly decreasing order and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Partition {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn two_part(r: usize, k: usize) -> Partition {
        Partition::new(vec![r - k, k])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Membership in Ω(n, r): at most `n` nonzero parts.
    pub fn has_at_most_parts(&self, n: usize) -> bool {
        self.0.len() <= n
    }

    /// Parses `"6,5"`; an empty string is the empty partition.
    pub fn parse(s: &str) -> Result<Partition> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition(Vec::new()));
        }
        let parts = s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("partition `{s}` is not weakly decreasing")));
        }
        Ok(Partition::new(parts))
    }

    /// First-column beta numbers `λ_i + (m - i)` for `m` parts.
    fn beta(&self, m: usize) -> Vec<usize> {
        (0..m).map(|i| self.0.get(i).copied().unwrap_or(0) + (m - 1 - i)).collect()
    }

    fn from_beta(mut beta: Vec<usize>) -> Partition {
        beta.sort_unstable_by(|a, b| b.cmp(a));
        let m = beta.len();
        Partition::new((0..m).map(|i| beta[i] - (m - 1 - i)).collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

/// Removes rim p-hooks until none is left.
///
/// Beads are moved one position up their runner of the p-abacus, always
/// taking the largest movable bead; the answer is cross-checked against
/// the closed form that pushes every runner's beads to the top.
pub fn p_core(lam: &Partition, p: usize) -> Partition {
    assert!(p >= 2, "p-cores need p >= 2");
    let m = lam.len();
    let mut beta = lam.beta(m);
    loop {
        let mut candidates: Vec<usize> = beta.iter().copied().filter(|&b| b >= p && !beta.contains(&(b - p))).collect();
        candidates.sort_unstable();
        let Some(&b) = candidates.last() else { break };
        let pos = beta.iter().position(|&x| x == b).unwrap();
        beta[pos] = b - p;
    }
    let core = Partition::from_beta(beta);
    debug_assert_eq!(core, p_core_abacus(lam, p));
    core
}

/// The same core from the abacus directly: on each runner, the beads
/// slide to the lowest free positions.
pub fn p_core_abacus(lam: &Partition, p: usize) -> Partition {
    let m = lam.len();
    let beta = lam.beta(m);
    let mut per_runner = vec![0usize; p];
    for b in beta {
        per_runner[b % p] += 1;
    }
    let mut moved = Vec::with_capacity(m);
    for (runner, &count) in per_runner.iter().enumerate() {
        for level in 0..count {
            moved.push(runner + level * p);
        }
    }
    Partition::from_beta(moved)
}

fn digits(mut x: usize, p: usize) -> Vec<usize> {
    let mut d = Vec::new();
    while x > 0 {
        d.push(x % p);
        x /= p;
    }
    d
}

fn binom(m: usize, k: usize) -> usize {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (m - i) / (i + 1);
    }
    acc
}

/// `f(s, t) = Π_k C(p-1-s_k, p-1-t_k)` over the base-p digits.
pub fn henke_f(s: usize, t: usize, p: usize) -> usize {
    let (ds, dt) = (digits(s, p), digits(t, p));
    let len = ds.len().max(dt.len());
    (0..len)
        .map(|k| {
            let a = p - 1 - ds.get(k).copied().unwrap_or(0);
            let b = p - 1 - dt.get(k).copied().unwrap_or(0);
            binom(a, b)
        })
        .product()
}

/// `g(s, t) = 1` iff `f(2t, s+t) = 1`.
pub fn henke_g(s: usize, t: usize, p: usize) -> u8 {
    u8::from(henke_f(2 * t, s + t, p) == 1)
}

/// `h(s, t) = 1` iff `f(2t+1, s+t+1) = 1`.
pub fn henke_h(s: usize, t: usize, p: usize) -> u8 {
    u8::from(henke_f(2 * t + 1, s + t + 1, p) == 1)
}

/// Ordinary character of the Young module `Y^{(r-k,k)}` as the list of
/// `χ^{(r-i,i)}` constituents, in increasing `i`.
pub fn young_character(p: usize, r: usize, k: usize) -> Result<Vec<Partition>> {
    if 2 * k > r {
        return Err(Error::Unsupported(format!("k = {k} exceeds r/2 for r = {r}")));
    }
    let half = r / 2;
    let coef = |i: usize| {
        if r.is_multiple_of(2) {
            henke_g(half - i, half - k, p)
        } else {
            henke_h(half - i, half - k, p)
        }
    };
    Ok((0..=half).filter(|&i| coef(i) == 1).map(|i| Partition::two_part(r, i)).collect())
}

/// Number of arrows `v^s -> v^t` in the quiver of `S(2, r)`, where
/// `v^s` is the Young module `Y^λ` with `λ_1 - λ_2 = s`.
pub fn eh_arrow(p: usize, s: usize, t: usize) -> u8 {
    if s == t {
        return 0;
    }
    let (s, t) = if s > t { (s, t) } else { (t, s) };
    let (s0, s1, t0, t1) = (s % p, s / p, t % p, t / p);
    if p == 2 {
        if (s0 == 1 && t0 == 1) || (s0 == 0 && t0 == 0 && s1 % 2 == t1 % 2) {
            eh_arrow(p, s1, t1)
        } else if s0 == 0 && t0 == 0 && t1 + 1 == s1 && s1 % 2 != 0 {
            1
        } else {
            0
        }
    } else if s0 == t0 {
        eh_arrow(p, s1, t1)
    } else if s0 + t0 == p - 2 && t1 + 1 == s1 && s1 % p != 0 {
        1
    } else {
        0
    }
}

/// Quiver of `S(2, r)`: a vertex per two-part partition of `r` (labelled
/// `"r-k,k"`, or `"r"` for `k = 0`, ordered by `k`), with arrows
/// `x{e}: λ -> μ` and `y{e}: μ -> λ` whenever `eh_arrow` is 1.
pub fn s2r_quiver(p: usize, r: usize) -> Result<Quiver> {
    if r == 0 {
        return Err(Error::Unsupported("r must be positive".into()));
    }
    let parts: Vec<Partition> = (0..=r / 2).map(|k| Partition::two_part(r, k)).collect();
    let labels: Vec<String> = parts.iter().map(|x| x.to_string()).collect();
    let mut edges = Vec::new();
    for a in 0..parts.len() {
        for b in a + 1..parts.len() {
            if eh_arrow(p, r - 2 * a, r - 2 * b) == 1 {
                edges.push((labels[a].clone(), labels[b].clone()));
            }
        }
    }
    Quiver::doubled(&labels, &edges)
}

/// Undirected edge list of `s2r_quiver` as label pairs.
pub fn s2r_edges(p: usize, r: usize) -> Result<Vec<(String, String)>> {
    let q = s2r_quiver(p, r)?;
    Ok(q.arrows()
        .iter()
        .filter(|a| a.name.starts_with('x'))
        .map(|a| (q.vertices()[a.source].clone(), q.vertices()[a.target].clone()))
        .collect())
}

/// Representation type together with τ-tilting finiteness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Semisimple,
    /// Representation-finite, not semisimple.
    Finite,
    Tame,
    /// Wild and τ-tilting finite.
    WildFinite,
    /// Wild and τ-tilting infinite.
    WildInfinite,
    /// Wild; τ-tilting finiteness undecided.
    Open,
}

impl Verdict {
    /// Table letter: S, F, T, W+ (τ-finite wild), W- (τ-infinite), W? (open).
    pub fn letter(self) -> &'static str {
        match self {
            Verdict::Semisimple => "S",
            Verdict::Finite => "F",
            Verdict::Tame => "T",
            Verdict::WildFinite => "W+",
            Verdict::WildInfinite => "W-",
            Verdict::Open => "W?",
        }
    }

    pub fn from_letter(s: &str) -> Option<Verdict> {
        Some(match s {
            "S" => Verdict::Semisimple,
            "F" => Verdict::Finite,
            "T" => Verdict::Tame,
            "W+" => Verdict::WildFinite,
            "W-" => Verdict::WildInfinite,
            "W?" => Verdict::Open,
            _ => return None,
        })
    }

    /// `Some(true)` for τ-tilting finite, `None` when undecided.
    pub fn tau_tilting_finite(self) -> Option<bool> {
        match self {
            Verdict::WildInfinite => Some(false),
            Verdict::Open => None,
            _ => Some(true),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Semisimple => "semisimple",
            Verdict::Finite => "representation-finite",
            Verdict::Tame => "tame",
            Verdict::WildFinite => "wild, tau-tilting finite",
            Verdict::WildInfinite => "wild, tau-tilting infinite",
            Verdict::Open => "wild, tau-tilting finiteness open",
        };
        f.write_str(s)
    }
}

/// A verdict and the rule that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub rule: String,
    /// `(n, r)` actually looked up after the `n > r` reduction.
    pub reduced: (usize, usize),
}

/// Classifies `S(n, r)` over a field of characteristic `p` (0 or prime).
pub fn classify(p: usize, n: usize, r: usize) -> Result<Classification> {
    if n == 0 || r == 0 {
        return Err(Error::Unsupported("n and r must be positive".into()));
    }
    if p != 0 && !is_prime(p as u32) {
        return Err(Error::NotPrime(p as u32));
    }
    let (n, r) = if n > r { (r, r) } else { (n, r) };
    let out = |verdict, rule: &str| Ok(Classification { verdict, rule: rule.to_string(), reduced: (n, r) });
    if n == 1 {
        return out(Verdict::Semisimple, "n = 1: S(1,r) is the ground field");
    }
    if p == 0 || p > r || (p == 2 && n == 2 && r == 3) {
        return out(Verdict::Semisimple, "semisimple: p = 0, p > r, or (p,n,r) = (2,2,3)");
    }
    if (p == 2 && n == 2 && (r == 5 || r == 7)) || (n == 2 && r < p * p) || (n >= 3 && r < 2 * p) {
        return out(Verdict::Finite, "representation-finite: (2,2,5|7), n = 2 with r < p^2, or n >= 3 with r < 2p");
    }
    if (p == 2 && n == 2 && matches!(r, 4 | 9 | 11))
        || (p == 3 && n == 2 && matches!(r, 9..=11))
        || (p == 3 && n == 3 && matches!(r, 7 | 8))
    {
        return out(Verdict::Tame, "tame: p = 2, n = 2, r in {4,9,11}; p = 3, n = 2, r in {9,10,11}; p = 3, n = 3, r in {7,8}");
    }
    if p == 2 && ((n == 2 && matches!(r, 6 | 13 | 15)) || (n == 3 && r == 5) || (n == 4 && r == 5)) {
        return out(Verdict::WildFinite, "wild, tau-tilting finite: p = 2 with (n,r) in {(2,6),(2,13),(2,15),(3,5),(4,5)}");
    }
    if p == 2 && ((n == 2 && matches!(r, 8 | 17 | 19)) || (n == 3 && r == 4) || (n >= 5 && r == 5)) {
        return out(Verdict::Open, "open: p = 2 with n = 2, r in {8,17,19}; n = 3, r = 4; n >= 5, r = 5");
    }
    if p >= 5 && n == 2 && (p * p..p * p + p).contains(&r) {
        return out(Verdict::Open, "open: p >= 5, n = 2, p^2 <= r <= p^2 + p - 1");
    }
    out(Verdict::WildInfinite, "wild, tau-tilting infinite: no finiteness rule applies")
}

/// Verdict letters for `n = 2..=nmax`, `r = 1..=rmax`.
pub fn table(p: usize, nmax: usize, rmax: usize) -> Result<Vec<Vec<Verdict>>> {
    (2..=nmax).map(|n| (1..=rmax).map(|r| classify(p, n, r).map(|c| c.verdict)).collect()).collect()
}

/// Text rendering of [`table`].
pub fn table_text(p: usize, nmax: usize, rmax: usize) -> Result<String> {
    let rows = table(p, nmax, rmax)?;
    let mut s = format!("p = {p}\n n\\r");
    for r in 1..=rmax {
        s.push_str(&format!("{r:>4}"));
    }
    s.push('\n');
    for (i, row) in rows.iter().enumerate() {
        s.push_str(&format!("{:>4}", i + 2));
        for v in row {
            s.push_str(&format!("{:>4}", v.letter()));
        }
        s.push('\n');
    }
    Ok(s)
}

/// Name of the shipped basic algebra of `S(n, r)` in characteristic `p`,
/// when the catalog has one.
pub fn schur_catalog_name(p: usize, n: usize, r: usize) -> Option<String> {
    let name = format!("S({n},{r})_p{p}");
    crate::catalog::names().into_iter().find(|x| *x == name)
}
