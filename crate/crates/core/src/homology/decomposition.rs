//! Invariant Koszul homology, BRST homology and the product formula relating them.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::invariants::invariant_subcomplex;
use super::lie::{lie_cohomology, LieCohomologyProfile};
use super::slice::{weight_slice, BettiTable, ChainComplexSlice};
use crate::complexes::{brst, shafarevich, DgaPresentation};
use crate::dbracket::{BracketTable, MomentMap};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::repfun::{gl_derivations, rep_algebra, CommutativeDga, DimensionVector, Poly};
use crate::report::{CheckReport, Status};

/// The Koszul and BRST presentations of a Hamiltonian algebra together
/// with their representation algebras at one dimension vector.
pub struct ReducedComplexes {
    pub koszul_presentation: DgaPresentation,
    pub brst_presentation: DgaPresentation,
    pub koszul: CommutativeDga,
    pub brst: CommutativeDga,
    pub construction: CheckReport,
}

pub fn reduced_complexes(table: &BracketTable, mm: &MomentMap, dims: &DimensionVector) -> Result<ReducedComplexes> {
    let sh = shafarevich(mm)?;
    let (b, construction) = brst(table, mm)?;
    let koszul = rep_algebra(&sh, dims)?;
    let brst = rep_algebra(&b, dims)?;
    Ok(ReducedComplexes { koszul_presentation: sh, brst_presentation: b, koszul, brst, construction })
}

/// The `gl`-invariant part of each weight slice `0..=max_w`.
pub fn invariant_slices(dga: &CommutativeDga, max_w: i32) -> Result<Vec<ChainComplexSlice>> {
    let gl = gl_derivations(dga);
    (0..=max_w)
        .into_par_iter()
        .map(|w| invariant_subcomplex(dga, &weight_slice(dga, w)?, &gl))
        .collect()
}

pub fn table_of(slices: &[ChainComplexSlice]) -> BettiTable {
    let mut t = BettiTable::default();
    for s in slices {
        t.insert_slice(s.weight, &s.betti());
    }
    t
}

/// Whether the cycle `p` of degree `k` is not a boundary.
pub fn is_nonzero_class(slice: &ChainComplexSlice, k: i32, p: &Poly) -> Result<bool> {
    let basis = slice.bases.get(&k).ok_or_else(|| Error::InvalidDimension(format!("no degree {k} in slice")))?;
    if !basis.spans(p) {
        return Err(Error::CheckFailed("element is not in the slice".into()));
    }
    let v = basis.coords(p);
    if !slice.diffs[&k].apply(&v).is_empty() {
        return Err(Error::CheckFailed("element is not a cycle".into()));
    }
    let mut bs = slice.boundaries(k);
    let r = rank(&bs);
    bs.push(v);
    Ok(rank(&bs) > r)
}

pub struct Decomposition {
    pub report: CheckReport,
    /// Koszul invariant homology in positive degrees, reported for comparison.
    pub higher: CheckReport,
    pub brst: BettiTable,
    pub koszul_invariant: BettiTable,
    pub lie: LieCohomologyProfile,
}

/// Compare `dim_w H_k(B)` with `sum_i dim_w H_i(K)^GL * dim H^{k-i}(gl)` for
/// all weights up to `max_w`. Ghosts have weight 0, so weights line up.
pub fn verify_decomposition(
    table: &BracketTable,
    mm: &MomentMap,
    dims: &DimensionVector,
    max_w: i32,
) -> Result<Decomposition> {
    let rc = reduced_complexes(table, mm, dims)?;
    let inv = invariant_slices(&rc.koszul, max_w)?;
    let kinv = table_of(&inv);
    let b = {
        let slices: Vec<Result<ChainComplexSlice>> =
            (0..=max_w).into_par_iter().map(|w| weight_slice(&rc.brst, w)).collect();
        let slices = slices.into_iter().collect::<Result<Vec<_>>>()?;
        table_of(&slices)
    };
    let lie = lie_cohomology(dims.dims());

    let mut report = CheckReport::new(&format!("BRST homology = invariant Koszul homology ⊗ gl cohomology, n = {:?}", dims.dims()));
    let mut ks: Vec<i32> = b.degrees();
    ks.extend(kinv.degrees());
    ks.sort();
    ks.dedup();
    for w in 0..=max_w {
        for &k in &ks {
            let lhs = b.get(w, k);
            let rhs: usize = lie.degrees.iter().map(|(&j, &d)| d * kinv.get(w, k - j)).sum();
            report.case(lhs == rhs, || format!("weight {w} degree {k}: BRST {lhs}, product {rhs}"));
        }
    }
    report.note(format!("weights 0..={max_w}, {} (weight, degree) pairs", report.cases));

    let mut higher = CheckReport::new("invariant Koszul homology in positive degrees");
    higher.status = Status::Finding;
    for ((w, k), d) in &kinv.entries {
        if *k >= 1 && *d > 0 {
            higher.note(format!("H_{k} at weight {w}: dim {d}"));
        }
    }
    if let Some(theta) = &rc.koszul_presentation.theta {
        let alg = &rc.koszul_presentation.alg;
        let mut sum = alg.zero();
        for &t in theta {
            sum = &sum + &alg.arrow(t);
        }
        let tr = rc.koszul.trace(&sum)?;
        if !rc.koszul.d(&tr).is_zero() {
            higher.note("tr ϑ is not a cycle".into());
        } else if let Some(w) = rc.koszul.ring.weight(&tr) {
            if let Some(s) = inv.iter().find(|s| s.weight == w) {
                let nz = is_nonzero_class(s, 1, &tr)?;
                higher.note(format!("tr ϑ at weight {w} is {} class in degree 1", if nz { "a nonzero" } else { "a zero" }));
            }
        }
    }
    Ok(Decomposition { report, higher, brst: b, koszul_invariant: kinv, lie })
}

/// Koszul homology (all of it, not only invariants) for weights `0..=max_w`.
pub fn koszul_betti(dga: &CommutativeDga, max_w: i32) -> Result<BettiTable> {
    super::slice::betti_table(dga, max_w)
}

/// Per-slice Euler characteristic agrees on chains and homology.
pub fn euler_consistent(slice: &ChainComplexSlice) -> bool {
    let b: BTreeMap<i32, usize> = slice.betti();
    let h: i64 = b.iter().map(|(k, d)| if k.rem_euclid(2) == 0 { *d as i64 } else { -(*d as i64) }).sum();
    h == slice.euler_characteristic()
}
