//! Finite weight slices of a weight-graded commutative dg algebra.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::repfun::{CommutativeDga, Mono, Poly, Ring};

/// A basis of a graded piece, with one pivot monomial per element: element
/// `i` has coefficient 1 at `pivots[i]` and 0 at every other pivot, so
/// coordinates of anything in the span are read off at the pivots.
#[derive(Clone, Debug)]
pub struct SliceBasis {
    pub elements: Vec<Poly>,
    pub pivots: Vec<Mono>,
    index: HashMap<Mono, usize>,
}

impl SliceBasis {
    pub fn monomials(ms: Vec<Mono>) -> Self {
        let one = crate::coeff::q(1);
        let elements = ms.iter().map(|m| Poly::term(m.clone(), one.clone())).collect();
        SliceBasis::new(elements, ms)
    }

    pub fn new(elements: Vec<Poly>, pivots: Vec<Mono>) -> Self {
        let index = pivots.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        SliceBasis { elements, pivots, index }
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// Coordinates of `p`, assuming `p` lies in the span.
    pub fn coords(&self, p: &Poly) -> SparseVec {
        let mut v: Vec<(usize, crate::Q)> =
            p.terms().iter().filter_map(|(m, c)| self.index.get(m).map(|&i| (i, c.clone()))).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    pub fn element(&self, v: &SparseVec) -> Poly {
        let mut out = Poly::zero();
        for (i, c) in v {
            out.add_scaled(&self.elements[*i], c);
        }
        out
    }

    /// Whether `p` equals the combination given by its pivot coordinates.
    pub fn spans(&self, p: &Poly) -> bool {
        &self.element(&self.coords(p)) == p
    }
}

/// The weight `w` part of a complex: a basis per homological degree and
/// `d_k: C_k -> C_{k-1}` as a column matrix over the basis of `C_k`.
#[derive(Clone, Debug)]
pub struct ChainComplexSlice {
    pub ring: Arc<Ring>,
    pub weight: i32,
    pub bases: BTreeMap<i32, SliceBasis>,
    pub diffs: BTreeMap<i32, SparseMatrix>,
}

impl ChainComplexSlice {
    pub fn dim(&self, k: i32) -> usize {
        self.bases.get(&k).map_or(0, |b| b.dim())
    }

    pub fn rank(&self, k: i32) -> usize {
        self.diffs.get(&k).map_or(0, |m| m.rank())
    }

    /// Assemble `d` on the given bases, checking that every image lands in
    /// the span of the basis one degree down.
    pub fn assemble(dga: &CommutativeDga, weight: i32, bases: BTreeMap<i32, SliceBasis>) -> Result<Self> {
        let mut diffs = BTreeMap::new();
        for (&k, basis) in &bases {
            let empty = SliceBasis::new(Vec::new(), Vec::new());
            let target = bases.get(&(k - 1)).unwrap_or(&empty);
            let cols: Vec<Result<SparseVec>> = basis
                .elements
                .par_iter()
                .map(|b| {
                    let db = dga.d(b);
                    if !target.spans(&db) {
                        return Err(Error::CheckFailed(format!(
                            "d({}) leaves the slice basis in degree {}",
                            dga.fmt(b),
                            k - 1
                        )));
                    }
                    Ok(target.coords(&db))
                })
                .collect();
            let cols = cols.into_iter().collect::<Result<Vec<_>>>()?;
            diffs.insert(k, SparseMatrix::new(target.dim(), cols));
        }
        Ok(ChainComplexSlice { ring: dga.ring.clone(), weight, bases, diffs })
    }

    /// Betti numbers `dim C_k - rank d_k - rank d_{k+1}` per degree.
    pub fn betti(&self) -> BTreeMap<i32, usize> {
        let ks: Vec<i32> = self.bases.keys().copied().collect();
        let ranks: BTreeMap<i32, usize> = ks.par_iter().map(|&k| (k, self.rank(k))).collect();
        ks.iter()
            .map(|&k| {
                let r = ranks[&k] + ranks.get(&(k + 1)).copied().unwrap_or(0);
                (k, self.dim(k) - r)
            })
            .collect()
    }

    /// `d_{k-1} d_k = 0` in every degree.
    pub fn squares_to_zero(&self) -> bool {
        self.diffs.iter().all(|(k, m)| match self.diffs.get(&(k - 1)) {
            Some(prev) => prev.mul(m).is_zero(),
            None => true,
        })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.bases.iter().map(|(k, b)| if k.rem_euclid(2) == 0 { b.dim() as i64 } else { -(b.dim() as i64) }).sum()
    }

    /// Cycles of degree `k` as coordinate vectors.
    pub fn cycles(&self, k: i32) -> Vec<SparseVec> {
        let Some(m) = self.diffs.get(&k) else { return Vec::new() };
        let rows = transpose(m);
        crate::linalg::nullspace(&rows, m.ncols()).0
    }

    /// Boundaries in degree `k`, as the columns of `d_{k+1}`.
    pub fn boundaries(&self, k: i32) -> Vec<SparseVec> {
        self.diffs.get(&(k + 1)).map_or(Vec::new(), |m| m.cols.clone())
    }

    /// Human-readable listing of the bases.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (k, b) in &self.bases {
            let _ = writeln!(s, "weight {} degree {} dim {}", self.weight, k, b.dim());
            for e in &b.elements {
                let _ = writeln!(s, "  {}", self.ring.fmt(e));
            }
        }
        s
    }
}

/// Rows of a column-stored matrix.
pub fn transpose(m: &SparseMatrix) -> Vec<SparseVec> {
    let mut rows = vec![Vec::new(); m.nrows];
    for (j, c) in m.cols.iter().enumerate() {
        for (i, v) in c {
            rows[*i].push((j, v.clone()));
        }
    }
    rows
}

/// Check that `d` preserves weight on every generator.
pub fn check_weight_homogeneous(dga: &CommutativeDga) -> Result<()> {
    let ring = &dga.ring;
    for (v, dv) in dga.differential.iter().enumerate() {
        let var = ring.var(v as u32);
        if dv.is_zero() {
            continue;
        }
        if ring.weight(dv) != Some(var.weight) || ring.degree(dv) != Some(var.degree - 1) {
            return Err(Error::NotHomogeneous(format!("d({}) = {}", var.name, ring.fmt(dv))));
        }
    }
    Ok(())
}

/// All monomials of weight `w`, with `d` assembled between degrees.
pub fn weight_slice(dga: &CommutativeDga, w: i32) -> Result<ChainComplexSlice> {
    check_weight_homogeneous(dga)?;
    let bases =
        dga.ring.monomials_of_weight(w)?.into_iter().map(|(k, ms)| (k, SliceBasis::monomials(ms))).collect();
    ChainComplexSlice::assemble(dga, w, bases)
}

/// Dimensions of homology indexed by `(weight, degree)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    #[serde(with = "pairs")]
    pub entries: BTreeMap<(i32, i32), usize>,
}

mod pairs {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Row {
        weight: i32,
        degree: i32,
        dim: usize,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<(i32, i32), usize>, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Row> = m.iter().map(|(&(weight, degree), &dim)| Row { weight, degree, dim }).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<(i32, i32), usize>, D::Error> {
        let rows = Vec::<Row>::deserialize(d)?;
        Ok(rows.into_iter().map(|r| ((r.weight, r.degree), r.dim)).collect())
    }
}

impl BettiTable {
    pub fn get(&self, w: i32, k: i32) -> usize {
        self.entries.get(&(w, k)).copied().unwrap_or(0)
    }

    pub fn insert_slice(&mut self, w: i32, betti: &BTreeMap<i32, usize>) {
        for (&k, &d) in betti {
            self.entries.insert((w, k), d);
        }
    }

    pub fn weights(&self) -> Vec<i32> {
        let mut ws: Vec<i32> = self.entries.keys().map(|(w, _)| *w).collect();
        ws.dedup();
        ws
    }

    pub fn degrees(&self) -> Vec<i32> {
        let mut ks: Vec<i32> = self.entries.keys().map(|(_, k)| *k).collect();
        ks.sort();
        ks.dedup();
        ks
    }

    /// Rows `weight,degree,dim`, zero entries included.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("weight,degree,dim\n");
        for ((w, k), d) in &self.entries {
            let _ = writeln!(s, "{w},{k},{d}");
        }
        s
    }

    /// Grid with weights as rows and degrees as columns.
    pub fn to_text(&self) -> String {
        let ks = self.degrees();
        let mut s = String::from("w\\k");
        for k in &ks {
            let _ = write!(s, "\t{k}");
        }
        s.push('\n');
        for w in self.weights() {
            let _ = write!(s, "{w}");
            for k in &ks {
                let _ = write!(s, "\t{}", self.get(w, *k));
            }
            s.push('\n');
        }
        s
    }
}

/// Betti table of the full complex for weights `0..=max_w`.
pub fn betti_table(dga: &CommutativeDga, max_w: i32) -> Result<BettiTable> {
    let slices: Vec<Result<(i32, BTreeMap<i32, usize>)>> =
        (0..=max_w).into_par_iter().map(|w| Ok((w, weight_slice(dga, w)?.betti()))).collect();
    let mut t = BettiTable::default();
    for r in slices {
        let (w, b) = r?;
        t.insert_slice(w, &b);
    }
    Ok(t)
}
