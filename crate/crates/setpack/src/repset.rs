//! Max `r`-representative families via a prime-field uniform-matroid
//! embedding.
//!
//! A family of weighted triples `(X, payload, W)` with `|X| = s` is
//! *max r-represented* by a subfamily `Â` when for every blocker set `Y` of
//! at most `r` elements: if some family member avoids `Y`, then some member
//! of `Â` avoids `Y` with at least the same weight. [`represent`] computes
//! such a subfamily of size at most `C(s+r, s)`.
//!
//! The construction embeds each `X` as the vector of all `s×s` minors of its
//! columns in a `(s+r)×|U|` Vandermonde matrix over the smallest prime field
//! with `max(|U|, 2)` elements, then greedily keeps a maximum-weight linearly
//! independent subset of these vectors by incremental Gaussian elimination.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

/// One weighted set in a family handed to the engine.
///
/// `elements` is sorted strictly ascending; its length must equal the `s` of
/// the enclosing query. The payload travels through untouched; [`represent`]
/// returns a subset of the input triples, identity preserved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triple<P> {
    pub elements: Vec<u32>,
    pub payload: P,
    pub weight: i64,
}

impl<P> Triple<P> {
    pub fn new(elements: Vec<u32>, payload: P, weight: i64) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Triple { elements, payload, weight }
    }
}

/// Context of one representation computation.
///
/// `s + r > universe_size` is allowed; families over such queries are simply
/// small or empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepQuery {
    pub universe_size: u32,
    pub s: usize,
    pub r: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepError {
    /// A triple's element count does not match the query's `s`.
    Arity { position: usize, expected: usize, found: usize },
}

impl fmt::Display for RepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepError::Arity { position, expected, found } => write!(
                f,
                "triple {} has {} elements, query requires {}",
                position, found, expected
            ),
        }
    }
}

/// Exact binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        // acc * (n-k+i) is always divisible by i at this point.
        match acc.checked_mul((n - k + i) as u128) {
            Some(v) => acc = v / i as u128,
            None => return u128::MAX,
        }
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn smallest_prime_at_least(n: u64) -> u64 {
    let mut c = n.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Arithmetic in the prime field Z/p.
#[derive(Debug, Clone, Copy)]
struct Fp {
    p: u64,
}

impl Fp {
    fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }
}

/// Appends all `s`-subsets of `0..k` in colexicographic order, flattened.
fn colex_subsets(k: usize, s: usize) -> Vec<u16> {
    debug_assert!(s <= k);
    let mut out = Vec::new();
    if s == 0 {
        return out;
    }
    let mut c: Vec<usize> = (0..s).collect();
    loop {
        out.extend(c.iter().map(|&v| v as u16));
        // Advance the smallest index that has room, resetting those below.
        let mut j = 0;
        while j < s {
            let limit = if j + 1 < s { c[j + 1] } else { k };
            if c[j] + 1 < limit {
                break;
            }
            j += 1;
        }
        if j == s {
            return out;
        }
        c[j] += 1;
        for (t, slot) in c.iter_mut().enumerate().take(j) {
            *slot = t;
        }
    }
}

/// The prime-field Vandermonde representation of the rank-`(s+r)` uniform
/// matroid over a universe of dense ids, together with the row-echelon store
/// of kept minor vectors.
///
/// Row `i` of the matrix assigns column `u` the value `u^i`; any `min(s+r, t)`
/// columns are linearly independent because the column ids are pairwise
/// distinct field elements.
pub struct FieldMatrixContext {
    field: Fp,
    k: usize,
    s: usize,
    dim: usize,
    /// `dim` row subsets of size `s`, colexicographic, flattened.
    row_sets: Vec<u16>,
    /// Reduced kept vectors, indexed by pivot coordinate.
    basis: Vec<Option<Vec<u64>>>,
    kept: usize,
}

impl FieldMatrixContext {
    pub fn new(universe_size: u32, s: usize, r: usize) -> Self {
        let prime = smallest_prime_at_least((universe_size as u64).max(2));
        let k = s + r;
        let dim_wide = binomial(k as u64, s as u64);
        let dim = usize::try_from(dim_wide).expect("representation dimension exceeds usize");
        FieldMatrixContext {
            field: Fp { p: prime },
            k,
            s,
            dim,
            row_sets: colex_subsets(k, s),
            basis: vec![None; dim],
            kept: 0,
        }
    }

    pub fn prime(&self) -> u64 {
        self.field.p
    }

    /// `C(s+r, s)`, the length of every minor vector and the size cap of the
    /// kept family.
    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn kept(&self) -> usize {
        self.kept
    }

    /// The vector of all `s×s` minors of the columns `x` (sorted ascending),
    /// one coordinate per row subset in colexicographic order.
    ///
    /// Never the zero vector: any `s` distinct columns have full rank.
    pub fn minor_vector(&self, x: &[u32]) -> Result<Vec<u64>, RepError> {
        if x.len() != self.s {
            return Err(RepError::Arity { position: 0, expected: self.s, found: x.len() });
        }
        let f = self.field;
        if self.s == 0 {
            // The empty determinant.
            return Ok(vec![1]);
        }
        // powers[c * k + i] = x[c]^i
        let mut powers = vec![0u64; self.s * self.k];
        for (c, &id) in x.iter().enumerate() {
            let node = id as u64 % f.p;
            let mut acc = 1u64;
            for i in 0..self.k {
                powers[c * self.k + i] = acc;
                acc = f.mul(acc, node);
            }
        }
        let s = self.s;
        let mut out = Vec::with_capacity(self.dim);
        let mut mat = vec![0u64; s * s];
        for rows in self.row_sets.chunks_exact(s) {
            for (ri, &row) in rows.iter().enumerate() {
                for c in 0..s {
                    mat[ri * s + c] = powers[c * self.k + row as usize];
                }
            }
            out.push(det_in_place(f, &mut mat, s));
        }
        Ok(out)
    }

    /// Reduces `v` against the kept basis; keeps it (and reports `true`) iff
    /// it is linearly independent of the vectors kept so far.
    fn try_insert(&mut self, mut v: Vec<u64>) -> bool {
        let f = self.field;
        for idx in 0..self.dim {
            if v[idx] == 0 {
                continue;
            }
            match &self.basis[idx] {
                Some(row) => {
                    let factor = v[idx];
                    for (vi, ri) in v.iter_mut().zip(row.iter()) {
                        *vi = f.sub(*vi, f.mul(factor, *ri));
                    }
                }
                None => {
                    let scale = f.inv(v[idx]);
                    for vi in v.iter_mut() {
                        *vi = f.mul(*vi, scale);
                    }
                    self.basis[idx] = Some(v);
                    self.kept += 1;
                    return true;
                }
            }
        }
        false
    }
}

/// Determinant of the leading `s×s` block of `mat` (row-major), destroying it.
fn det_in_place(f: Fp, mat: &mut [u64], s: usize) -> u64 {
    let mut det = 1u64;
    for col in 0..s {
        let pivot = match (col..s).find(|&r| mat[r * s + col] != 0) {
            Some(p) => p,
            None => return 0,
        };
        if pivot != col {
            for c in 0..s {
                mat.swap(pivot * s + c, col * s + c);
            }
            det = f.sub(0, det);
        }
        let pv = mat[col * s + col];
        det = f.mul(det, pv);
        let inv = f.inv(pv);
        for r in col + 1..s {
            let factor = f.mul(mat[r * s + col], inv);
            if factor == 0 {
                continue;
            }
            for c in col..s {
                let sub = f.mul(factor, mat[col * s + c]);
                mat[r * s + c] = f.sub(mat[r * s + c], sub);
            }
        }
    }
    det
}

/// Computes a max `r`-representative subfamily of `family` with at most
/// `C(s+r, s)` members.
///
/// Triples are processed in order of weight descending (original position
/// ascending on ties) and kept while their minor vectors remain linearly
/// independent; discarded triples are therefore spanned by kept triples of
/// at least their weight. The kept triples are returned in their original
/// family order.
///
/// ```
/// use setpack::repset::{represent, RepQuery, Triple};
///
/// // Singletons over {0, 1, 2}; any blocker of size <= 1 must stay served.
/// let family = vec![
///     Triple::new(vec![0], "a", 3),
///     Triple::new(vec![1], "b", 2),
///     Triple::new(vec![2], "c", 1),
/// ];
/// let query = RepQuery { universe_size: 3, s: 1, r: 1 };
/// let kept = represent(&query, family).unwrap();
/// // C(2, 1) = 2 survivors: the two heaviest singletons serve every blocker.
/// let names: Vec<&str> = kept.iter().map(|t| t.payload).collect();
/// assert_eq!(names, ["a", "b"]);
/// ```
pub fn represent<P>(query: &RepQuery, family: Vec<Triple<P>>) -> Result<Vec<Triple<P>>, RepError> {
    if family.is_empty() {
        return Ok(family);
    }
    for (position, t) in family.iter().enumerate() {
        if t.elements.len() != query.s {
            return Err(RepError::Arity {
                position,
                expected: query.s,
                found: t.elements.len(),
            });
        }
    }
    let mut ctx = FieldMatrixContext::new(query.universe_size, query.s, query.r);
    let mut order: Vec<usize> = (0..family.len()).collect();
    order.sort_unstable_by_key(|&i| (Reverse(family[i].weight), i));
    let mut keep = vec![false; family.len()];
    for &i in &order {
        if ctx.kept() == ctx.dimension() {
            break;
        }
        let v = ctx.minor_vector(&family[i].elements)?;
        if ctx.try_insert(v) {
            keep[i] = true;
        }
    }
    Ok(family
        .into_iter()
        .enumerate()
        .filter_map(|(i, t)| if keep[i] { Some(t) } else { None })
        .collect())
}
