//! Shafarevich, Chevalley-Eilenberg and BRST presentations.

use std::collections::BTreeMap;

use crate::dbracket::{charge_differential, BracketTable, MomentMap};
use crate::error::{Error, Result};
use crate::ncalg::{Derivation, LoopFamily, NcElement, PathAlgebra};
use crate::report::CheckReport;

use super::presentation::DgaPresentation;

pub const THETA: &str = "theta";
pub const ETA: &str = "eta";

/// Weight given to the adjoined `ϑ_i`: the common weight of the moment map
/// components, so that `dϑ_i = δ_i` preserves weight; 2 if they disagree.
fn theta_weight(mm: &MomentMap) -> i32 {
    let ws: Vec<i32> = mm.components.iter().filter_map(|d| d.weight()).collect();
    match ws.first() {
        Some(&w) if ws.iter().all(|&v| v == w) && w >= 0 => w,
        _ => 2,
    }
}

/// Adjoin a degree 1 loop `ϑ_i` at each vertex with `dϑ_i = δ_i`; the arrows
/// of `A` have zero differential.
pub fn shafarevich(mm: &MomentMap) -> Result<DgaPresentation> {
    let base = mm.components[0].alg().clone();
    let fam = LoopFamily::new(THETA, 1, theta_weight(mm));
    let q = base.quiver().adjoin_loops(&fam)?;
    let alg = PathAlgebra::new(q);
    let mut images = BTreeMap::new();
    let mut theta = Vec::new();
    for (i, v) in base.quiver().vertices().iter().enumerate() {
        let id = alg.quiver().arrow_index(&fam.name_at(v))?;
        images.insert(id, mm.components[i].transport(&alg)?);
        theta.push(id);
    }
    let mut p = DgaPresentation::new(Derivation::new(&alg, -1, images)?)?;
    p.theta = Some(theta);
    Ok(p)
}

/// Adjoin a degree -1 loop `η_i` at each vertex with
/// `d a = d_old a - [sum_i η_i, a]` on old arrows and `dη_i = -η_i²`.
pub fn chevalley_eilenberg(p: &DgaPresentation) -> Result<DgaPresentation> {
    let fam = LoopFamily::new(ETA, -1, 0);
    let oq = p.alg.quiver();
    let q = oq.adjoin_loops(&fam)?;
    let alg = PathAlgebra::new(q);
    let mut eta = Vec::new();
    let mut eta_sum = alg.zero();
    for v in oq.vertices() {
        let id = alg.quiver().arrow_index(&fam.name_at(v))?;
        eta.push(id);
        eta_sum = &eta_sum + &alg.arrow(id);
    }
    let mut images = BTreeMap::new();
    for (i, a) in oq.arrows().iter().enumerate() {
        let id = alg.quiver().arrow_index(&a.name)?;
        let old = p.differential.image(i).transport(&alg)?;
        let g = alg.arrow(id);
        images.insert(id, &old - &eta_sum.commutator(&g)?);
    }
    for &id in &eta {
        let e = alg.arrow(id);
        images.insert(id, -&(&e * &e));
    }
    let mut out = DgaPresentation::new(Derivation::new(&alg, -1, images)?)?;
    out.theta = match &p.theta {
        Some(ts) => Some(ts.iter().map(|&t| alg.quiver().arrow_index(&oq.arrow(t).name)).collect::<Result<_>>()?),
        None => None,
    };
    out.eta = Some(eta);
    if let Some(t) = &p.table {
        out.table = Some(t.transport(&alg)?);
    }
    Ok(out)
}

/// `γ = sum_i η_i δ_i - sum_i η_i² ϑ_i` in the algebra of `p`.
pub fn brst_charge(p: &DgaPresentation, mm: &MomentMap) -> Result<NcElement> {
    let alg = &p.alg;
    let theta = p.theta.as_ref().ok_or_else(|| Error::Unsupported("no ϑ loops".into()))?;
    let eta = p.eta.as_ref().ok_or_else(|| Error::Unsupported("no η loops".into()))?;
    let mut g = alg.zero();
    for (i, d) in mm.components.iter().enumerate() {
        let e = alg.arrow(eta[i]);
        let th = alg.arrow(theta[i]);
        g = &g + &(&e * &d.transport(alg)?);
        g = &g - &(&(&e * &e) * &th);
    }
    Ok(g)
}

/// The BRST algebra `CE(Sh(A))` with the free product bracket of `tbl` and
/// `<<ϑ_i, η_i>> = e_i ⊗ e_i`, and its charge. Fails if `{γ, -}` differs
/// from the Chevalley-Eilenberg differential on some arrow.
pub fn brst(tbl: &BracketTable, mm: &MomentMap) -> Result<(DgaPresentation, CheckReport)> {
    if !mm.components[0].alg().same(tbl.alg()) {
        return Err(Error::MixedContexts);
    }
    let sh = shafarevich(mm)?;
    let mut b = chevalley_eilenberg(&sh)?;
    let theta = b.theta.clone().expect("set by shafarevich");
    let eta = b.eta.clone().expect("set by chevalley_eilenberg");
    let pairs: Vec<_> = theta.iter().copied().zip(eta.iter().copied()).collect();
    let pairing = BracketTable::pairing(&b.alg, &pairs)?;
    let table = BracketTable::free_product(&b.alg, &[tbl, &pairing])?;
    let gamma = brst_charge(&b, mm)?;
    let (dg, mut report) = charge_differential(&table, &gamma)?;
    let q = b.alg.quiver();
    for (i, a) in q.arrows().iter().enumerate() {
        let want = b.differential.image(i);
        let got = dg.image(i);
        report.case(got == want, || format!("{{γ, {}}} = {got}, differential gives {want}", a.name));
    }
    if !report.passed() {
        return Err(Error::CheckFailed(report.witness.clone().unwrap_or_default()));
    }
    b.table = Some(table);
    b.charge = Some(gamma);
    Ok((b, report))
}
