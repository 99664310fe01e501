//! Invariant subcomplexes: the joint kernel of the `gl` action, and
//! symmetric-group invariants by averaging.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::slice::{ChainComplexSlice, SliceBasis};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, Echelon, KeyVec, SparseVec};
use crate::repfun::{CommutativeDga, GlDerivation, Mono, Poly, Ring, Var, VarId};

/// Basis of the joint kernel of `derivs` on the span of `basis`. Each kernel
/// element is normalized to 1 at its own pivot monomial.
pub fn joint_kernel(dga: &CommutativeDga, derivs: &[GlDerivation], basis: &SliceBasis) -> Result<SliceBasis> {
    let n = basis.dim();
    // rows of the stacked action matrix, indexed by (derivation, output monomial)
    let images: Vec<Vec<Poly>> =
        basis.elements.par_iter().map(|b| derivs.iter().map(|g| g.apply(dga, b)).collect()).collect();
    let mut rows: BTreeMap<(usize, Mono), SparseVec> = BTreeMap::new();
    for (j, per) in images.iter().enumerate() {
        for (gi, img) in per.iter().enumerate() {
            for (m, c) in img.terms() {
                rows.entry((gi, m.clone())).or_default().push((j, c.clone()));
            }
        }
    }
    let rows: Vec<SparseVec> = rows.into_values().collect();
    let (kernel, free) = nullspace(&rows, n);
    let elements: Vec<Poly> = kernel.iter().map(|v| basis.element(v)).collect();
    let pivots: Vec<Mono> = free.iter().map(|&j| basis.pivots[j].clone()).collect();
    Ok(SliceBasis::new(elements, pivots))
}

/// The subcomplex of `gl`-invariants of a monomial slice. Fails if `d`
/// does not preserve invariants, i.e. the derivations do not commute with `d`.
pub fn invariant_subcomplex(
    dga: &CommutativeDga,
    slice: &ChainComplexSlice,
    derivs: &[GlDerivation],
) -> Result<ChainComplexSlice> {
    let mut bases = BTreeMap::new();
    for (&k, b) in &slice.bases {
        bases.insert(k, joint_kernel(dga, derivs, b)?);
    }
    ChainComplexSlice::assemble(dga, slice.weight, bases).map_err(|e| match e {
        Error::CheckFailed(m) => Error::InvalidDifferential(format!("the gl action does not commute with d: {m}")),
        e => e,
    })
}

/// The ring `k[x_i, y_i, ϑ_i]` for `i = 1..n`: `x, y` even of weight 1 and
/// `ϑ` odd of degree 1 and weight 2. Variables are ordered by name, then index.
pub fn diagonal_ring(names: &[(&str, i32, i32)], n: usize) -> Ring {
    let mut vars = Vec::new();
    for (name, degree, weight) in names {
        for i in 1..=n {
            vars.push(Var { name: format!("{name}_{i}"), degree: *degree, weight: *weight, invertible: false });
        }
    }
    Ring::new(vars)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out.sort();
    out
}

/// Sum over `S_n` of the permuted polynomial, where `S_n` permutes the index
/// of every family of `n` consecutive variables.
pub fn symmetrize(ring: &Ring, n: usize, f: &Poly) -> Poly {
    let families = ring.num_vars() / n;
    let mut out = Poly::zero();
    for p in permutations(n) {
        let images: Vec<Poly> = (0..ring.num_vars())
            .map(|v| {
                let (fam, i) = (v / n, v % n);
                debug_assert!(fam < families);
                ring.gen((fam * n + p[i]) as VarId)
            })
            .collect();
        out.add_assign(&ring.substitute(ring, &images, f));
    }
    out
}

/// Basis of the `S_n`-invariants of weight `w`, grouped by degree.
pub fn multisym_invariants(ring: &Ring, n: usize, w: i32) -> Result<BTreeMap<i32, Vec<Poly>>> {
    if n == 0 || !ring.num_vars().is_multiple_of(n) {
        return Err(Error::InvalidDimension(format!("{} variables do not split into families of {n}", ring.num_vars())));
    }
    let mut out = BTreeMap::new();
    for (k, ms) in ring.monomials_of_weight(w)? {
        let mut ech: Echelon<Mono> = Echelon::new();
        let mut basis = Vec::new();
        for m in ms {
            let s = symmetrize(ring, n, &Poly::term(m, crate::coeff::q(1)));
            let v: KeyVec<Mono> = s.terms().clone();
            if !v.is_empty() && ech.insert(v) {
                basis.push(s);
            }
        }
        out.insert(k, basis);
    }
    Ok(out)
}
