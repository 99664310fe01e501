//! Exact linear algebra on sparse vectors.
//!
//! [`Echelon`] keeps an echelon basis for vectors indexed by arbitrary ordered
//! keys. [`rank`] and [`nullspace`] work on index-based sparse matrices with
//! fraction-free integer elimination, and [`dense`] holds a plain rational
//! Gaussian elimination used to cross-check them on small inputs.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::coeff::Q;

/// Sparse rational vector keyed by `K`.
pub type KeyVec<K> = BTreeMap<K, Q>;

pub fn axpy<K: Ord + Clone>(y: &mut KeyVec<K>, a: &Q, x: &KeyVec<K>) {
    for (k, v) in x {
        match y.entry(k.clone()) {
            Entry::Vacant(e) => {
                e.insert(a * v);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += a * v;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

/// Row echelon basis of a growing subspace; pivots are the smallest keys.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, KeyVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, mut v: KeyVec<K>) -> KeyVec<K> {
        let mut done: Vec<(K, Q)> = Vec::new();
        while let Some((k, c)) = v.pop_first() {
            match self.rows.get(&k) {
                Some(row) => {
                    // row has leading coefficient 1 at k
                    let mut rest = row.clone();
                    rest.remove(&k);
                    axpy(&mut v, &-c, &rest);
                }
                None => done.push((k, c)),
            }
        }
        done.into_iter().collect()
    }

    pub fn contains(&self, v: KeyVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Add `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: KeyVec<K>) -> bool {
        let r = self.reduce(v);
        let Some((k, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = c.recip();
        let r: KeyVec<K> = r.into_iter().map(|(k, v)| (k, v * &inv)).collect();
        self.rows.insert(k, r);
        true
    }
}

/// Sparse vector over indices `0..n`, sorted by index.
pub type SparseVec = Vec<(usize, Q)>;

/// A matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(nrows: usize, cols: Vec<SparseVec>) -> Self {
        SparseMatrix { nrows, cols }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn rank(&self) -> usize {
        rank(&self.cols)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// `self * v` for a sparse column vector `v`.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (j, c) in v {
            axpy(&mut acc, c, &self.cols[*j].iter().cloned().collect());
        }
        acc.into_iter().collect()
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        SparseMatrix { nrows: self.nrows, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut m = vec![vec![Q::zero(); self.cols.len()]; self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c {
                m[*i][j] = v.clone();
            }
        }
        m
    }
}

/// Clear denominators and divide by the content, giving a primitive
/// integer vector with positive leading entry.
fn primitive(v: &SparseVec) -> Vec<(usize, BigInt)> {
    let mut l = BigInt::one();
    for (_, c) in v {
        l = l.lcm(c.denom());
    }
    let mut out: Vec<(usize, BigInt)> = v.iter().map(|(i, c)| (*i, c.numer() * (&l / c.denom()))).collect();
    normalize(&mut out);
    out
}

fn normalize(v: &mut [(usize, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, c) in v.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    let neg = v.first().is_some_and(|(_, c)| c.is_negative());
    if !g.is_zero() && !g.is_one() {
        for (_, c) in v.iter_mut() {
            *c /= &g;
        }
    }
    if neg {
        for (_, c) in v.iter_mut() {
            *c = -&*c;
        }
    }
}

/// `a * v - b * p` for sorted sparse integer vectors, dropping zeros.
fn combine(a: &BigInt, v: &[(usize, BigInt)], b: &BigInt, p: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let take_v = j >= p.len() || (i < v.len() && v[i].0 < p[j].0);
        let take_p = i >= v.len() || (j < p.len() && p[j].0 < v[i].0);
        if take_v {
            out.push((v[i].0, a * &v[i].1));
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(b * &p[j].1)));
            j += 1;
        } else {
            let c = a * &v[i].1 - b * &p[j].1;
            if !c.is_zero() {
                out.push((v[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Integer echelon form: pivot rows keyed by leading index, each primitive.
struct IntEchelon {
    pivots: BTreeMap<usize, Vec<(usize, BigInt)>>,
}

impl IntEchelon {
    fn new() -> Self {
        IntEchelon { pivots: BTreeMap::new() }
    }

    /// Fraction-free reduction of `v`; returns the reduced primitive vector.
    fn reduce(&self, mut v: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
        while let Some((lead, c)) = v.first().cloned() {
            let Some(p) = self.pivots.get(&lead) else { break };
            let pc = &p[0].1;
            let g = c.gcd(pc);
            v = combine(&(pc / &g), &v, &(&c / &g), p);
            normalize(&mut v);
        }
        v
    }

    fn insert(&mut self, v: Vec<(usize, BigInt)>) -> bool {
        let v = self.reduce(v);
        match v.first() {
            Some(&(lead, _)) => {
                self.pivots.insert(lead, v);
                true
            }
            None => false,
        }
    }
}

/// Rank of the span of the given sparse vectors, by fraction-free elimination.
pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut order: Vec<&SparseVec> = vectors.iter().filter(|v| !v.is_empty()).collect();
    // sparse vectors first keeps fill-in down
    order.sort_by_key(|v| v.len());
    let mut e = IntEchelon::new();
    for v in order {
        e.insert(primitive(v));
    }
    e.pivots.len()
}

/// Basis of `{x : M x = 0}` for `M` given by rows over `ncols` unknowns.
/// Each basis vector has a 1 at its free index and 0 at the other free
/// indices, so a kernel vector `v` equals `sum_j v[free_j] * basis_j`.
pub fn nullspace(rows: &[SparseVec], ncols: usize) -> (Vec<SparseVec>, Vec<usize>) {
    let mut e = IntEchelon::new();
    let mut order: Vec<&SparseVec> = rows.iter().filter(|v| !v.is_empty()).collect();
    order.sort_by_key(|v| v.len());
    for v in order {
        e.insert(primitive(v));
    }
    // back substitution into reduced echelon form over Q, last pivot first
    let mut reduced: BTreeMap<usize, KeyVec<usize>> = BTreeMap::new();
    for (&lead, row) in e.pivots.iter().rev() {
        let inv = Q::from_integer(row[0].1.clone()).recip();
        let mut r: KeyVec<usize> = row.iter().map(|(i, c)| (*i, Q::from_integer(c.clone()) * &inv)).collect();
        let later: Vec<(usize, Q)> = r
            .iter()
            .filter(|(i, _)| **i != lead && reduced.contains_key(i))
            .map(|(i, c)| (*i, c.clone()))
            .collect();
        for (i, c) in later {
            let other = reduced[&i].clone();
            axpy(&mut r, &-c, &other);
        }
        reduced.insert(lead, r);
    }
    let free: Vec<usize> = (0..ncols).filter(|j| !reduced.contains_key(j)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v: BTreeMap<usize, Q> = BTreeMap::new();
        v.insert(f, Q::one());
        for (&lead, row) in &reduced {
            if let Some(c) = row.get(&f) {
                v.insert(lead, -c.clone());
            }
        }
        basis.push(v.into_iter().collect());
    }
    (basis, free)
}

pub mod dense {
    //! Plain Gaussian elimination over the rationals.

    use num_traits::Zero;

    use crate::coeff::Q;

    pub fn rank(mut m: Vec<Vec<Q>>) -> usize {
        let nrows = m.len();
        let ncols = m.first().map_or(0, |r| r.len());
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            let pivot = m[r][c].clone();
            for i in 0..nrows {
                if i != r && !m[i][c].is_zero() {
                    let f = &m[i][c] / &pivot;
                    for k in c..ncols {
                        let t = &f * &m[r][k];
                        m[i][k] -= t;
                    }
                }
            }
            r += 1;
            if r == nrows {
                break;
            }
        }
        r
    }
}
