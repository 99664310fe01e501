//! The representation functor: matrices of variables for each arrow.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::poisson::PoissonTable;
use super::poly::{Mono, Poly, Ring, Var, VarId};
use crate::complexes::DgaPresentation;
use crate::dbracket::{is_double_poisson, BracketTable};
use crate::error::{Error, Result};
use crate::ncalg::{ArrowId, NcElement, PathAlgebra, Token, Word};

/// Dimensions `n_i` per vertex, with block offsets into `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionVector {
    dims: Vec<usize>,
}

impl DimensionVector {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidDimension(format!("{dims:?} must be positive")));
        }
        Ok(DimensionVector { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn offset(&self, v: usize) -> usize {
        self.dims[..v].iter().sum()
    }

    pub fn block(&self, v: usize) -> std::ops::Range<usize> {
        let o = self.offset(v);
        o..o + self.dims[v]
    }
}

/// An `n × n` matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub n: usize,
    pub entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(n: usize) -> Self {
        PolyMatrix { n, entries: vec![Poly::zero(); n * n] }
    }

    pub fn get(&self, r: usize, s: usize) -> &Poly {
        &self.entries[r * self.n + s]
    }

    pub fn get_mut(&mut self, r: usize, s: usize) -> &mut Poly {
        &mut self.entries[r * self.n + s]
    }

    /// `(AB)_rs = sum_u A_ru B_us`, keeping factors in order.
    pub fn mul(&self, ring: &Ring, other: &PolyMatrix) -> PolyMatrix {
        let n = self.n;
        let mut out = PolyMatrix::zero(n);
        for r in 0..n {
            for u in 0..n {
                let a = self.get(r, u);
                if a.is_zero() {
                    continue;
                }
                for s in 0..n {
                    let b = other.get(u, s);
                    if !b.is_zero() {
                        let p = ring.mul(a, b);
                        out.get_mut(r, s).add_assign(&p);
                    }
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &PolyMatrix, c: &crate::Q) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            a.add_scaled(b, c);
        }
    }

    pub fn trace(&self) -> Poly {
        let mut t = Poly::zero();
        for r in 0..self.n {
            t.add_assign(self.get(r, r));
        }
        t
    }
}

/// Where a variable comes from: entry `(row, col)` of the matrix of an arrow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntrySource {
    pub arrow: ArrowId,
    pub row: usize,
    pub col: usize,
}

/// The commutative dg algebra of matrix entries, with the induced
/// differential and (if the source carries a double Poisson bracket) the
/// induced Poisson bracket.
#[derive(Clone, Debug)]
pub struct CommutativeDga {
    pub ring: Arc<Ring>,
    pub alg: Arc<PathAlgebra>,
    pub dims: DimensionVector,
    pub sources: Vec<EntrySource>,
    index: HashMap<(ArrowId, usize, usize), VarId>,
    /// Differential on each variable.
    pub differential: Vec<Poly>,
    pub poisson: Option<PoissonTable>,
}

fn entry_name(arrow: &str, r: usize, s: usize, n: usize) -> String {
    if n < 10 {
        format!("{arrow}_{}{}", r + 1, s + 1)
    } else {
        format!("{arrow}_{},{}", r + 1, s + 1)
    }
}

impl CommutativeDga {
    /// The ring of entries of `alg` at dimension vector `dims`, with zero
    /// differential and no bracket.
    pub fn entries_of(alg: &Arc<PathAlgebra>, dims: &DimensionVector) -> Result<Self> {
        let q = alg.quiver();
        if dims.dims().len() != q.num_vertices() {
            return Err(Error::InvalidDimension(format!(
                "{} entries for {} vertices",
                dims.dims().len(),
                q.num_vertices()
            )));
        }
        let n = dims.total();
        if q.has_invertible() && n > 1 {
            return Err(Error::Unsupported(
                "invertible generators are only represented at total dimension 1".into(),
            ));
        }
        let mut vars = Vec::new();
        let mut sources = Vec::new();
        let mut index = HashMap::new();
        for (i, a) in q.arrows().iter().enumerate() {
            for r in dims.block(a.target) {
                for s in dims.block(a.source) {
                    index.insert((i, r, s), vars.len() as VarId);
                    sources.push(EntrySource { arrow: i, row: r, col: s });
                    vars.push(Var {
                        name: entry_name(&a.name, r, s, n),
                        degree: a.degree,
                        weight: a.weight,
                        invertible: a.invertible,
                    });
                }
            }
        }
        let nv = vars.len();
        Ok(CommutativeDga {
            ring: Arc::new(Ring::new(vars)),
            alg: alg.clone(),
            dims: dims.clone(),
            sources,
            index,
            differential: vec![Poly::zero(); nv],
            poisson: None,
        })
    }

    pub fn var_of(&self, arrow: ArrowId, r: usize, s: usize) -> Option<VarId> {
        self.index.get(&(arrow, r, s)).copied()
    }

    pub fn n(&self) -> usize {
        self.dims.total()
    }

    fn token_matrix(&self, t: Token) -> PolyMatrix {
        let q = self.alg.quiver();
        let a = q.arrow(t.arrow);
        let mut m = PolyMatrix::zero(self.n());
        for r in self.dims.block(a.target) {
            for s in self.dims.block(a.source) {
                let v = self.index[&(t.arrow, r, s)];
                let e = if t.inverse { -1 } else { 1 };
                *m.get_mut(r, s) = Poly::term(Mono(vec![(v, e)]), crate::Q::from_integer(1.into()));
            }
        }
        m
    }

    /// Matrix of a word: block identity for idempotents, products of arrow matrices otherwise.
    pub fn rep_word(&self, w: &Word) -> PolyMatrix {
        if w.is_empty() {
            let mut m = PolyMatrix::zero(self.n());
            for r in self.dims.block(w.source()) {
                *m.get_mut(r, r) = Poly::one();
            }
            return m;
        }
        let mut it = w.tokens().iter();
        let mut acc = self.token_matrix(*it.next().expect("nonempty"));
        for t in it {
            acc = acc.mul(&self.ring, &self.token_matrix(*t));
        }
        acc
    }

    pub fn rep_element(&self, e: &NcElement) -> Result<PolyMatrix> {
        if !e.alg().same(&self.alg) {
            return Err(Error::MixedContexts);
        }
        let mut out = PolyMatrix::zero(self.n());
        for (w, c) in e.terms() {
            out.add_scaled(&self.rep_word(w), c);
        }
        Ok(out)
    }

    pub fn trace(&self, e: &NcElement) -> Result<Poly> {
        Ok(self.rep_element(e)?.trace())
    }

    pub fn d(&self, f: &Poly) -> Poly {
        self.ring.derive(&self.differential, f)
    }

    /// Poisson bracket of two polynomials.
    pub fn bracket(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        let p = self.poisson.as_ref().ok_or_else(|| Error::Unsupported("no Poisson bracket".into()))?;
        Ok(p.bracket(&self.ring, f, g))
    }

    pub fn fmt(&self, p: &Poly) -> String {
        self.ring.fmt(p)
    }
}

/// Representation functor on a dg presentation: entries of the arrow
/// matrices, with `d(a_rs) = (d a)_rs`. If the presentation carries a double
/// Poisson bracket, the induced bracket `{a_rs, b_uv} = <<a,b>>'_us <<a,b>>''_rv`
/// is attached.
pub fn rep_algebra(p: &DgaPresentation, dims: &DimensionVector) -> Result<CommutativeDga> {
    let mut dga = CommutativeDga::entries_of(&p.alg, dims)?;
    let q = p.alg.quiver();
    for i in 0..q.arrows().len() {
        let m = dga.rep_element(p.differential.image(i))?;
        for (v, src) in dga.sources.clone().iter().enumerate() {
            if src.arrow == i {
                dga.differential[v] = m.get(src.row, src.col).clone();
            }
        }
    }
    if let Some(t) = &p.table {
        dga.poisson = Some(induced_poisson(t, &dga)?);
    }
    Ok(dga)
}

/// The Poisson bracket on entries induced by a double Poisson table.
pub fn induced_poisson(t: &BracketTable, dga: &CommutativeDga) -> Result<PoissonTable> {
    if !t.alg().same(&dga.alg) {
        return Err(Error::MixedContexts);
    }
    if !is_double_poisson(t)? {
        return Err(Error::CheckFailed("the bracket table is not double Poisson".into()));
    }
    let q = dga.alg.quiver();
    let mut table = PoissonTable::new(dga.ring.num_vars());
    for a in 0..q.arrows().len() {
        for b in 0..q.arrows().len() {
            let val = t.arrow_value(a, b)?;
            if val.is_zero() {
                continue;
            }
            let mats: Vec<(PolyMatrix, PolyMatrix, crate::Q)> = val
                .terms()
                .iter()
                .map(|(ws, c)| (dga.rep_word(&ws[0]), dga.rep_word(&ws[1]), c.clone()))
                .collect();
            for (x, sx) in dga.sources.iter().enumerate().filter(|(_, s)| s.arrow == a) {
                for (y, sy) in dga.sources.iter().enumerate().filter(|(_, s)| s.arrow == b) {
                    let (r, s, u, v) = (sx.row, sx.col, sy.row, sy.col);
                    let mut acc = Poly::zero();
                    for (mu, mv, c) in &mats {
                        let prod = dga.ring.mul(mu.get(u, s), mv.get(r, v));
                        acc.add_scaled(&prod, c);
                    }
                    table.set(x as VarId, y as VarId, acc);
                }
            }
        }
    }
    Ok(table)
}
