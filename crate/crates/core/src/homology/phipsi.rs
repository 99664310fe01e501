//! The maps `φ = {tr η, -}` and `ψ = tr ϑ · (-)` on the representation
//! complexes and the splitting of invariant Koszul homology they induce.

use std::collections::{BTreeMap, HashMap};

use super::decomposition::{invariant_slices, reduced_complexes, table_of};
use super::slice::{weight_slice, BettiTable, ChainComplexSlice};
use crate::coeff::q;
use crate::dbracket::{BracketTable, MomentMap};
use crate::error::{Error, Result};
use crate::linalg::{rank, SparseVec};
use crate::ncalg::{ArrowId, NcElement, PathAlgebra};
use crate::repfun::{CommutativeDga, DimensionVector, Poly};
use crate::report::CheckReport;

/// `φ` as an odd derivation (its values on variables) and `ψ` as the
/// element multiplied on the left, on one representation algebra.
pub struct PhiPsi {
    pub n: usize,
    pub phi_images: Vec<Poly>,
    pub psi: Poly,
}

fn loop_sum(alg: &std::sync::Arc<PathAlgebra>, ids: &[ArrowId]) -> NcElement {
    let mut s = alg.zero();
    for &i in ids {
        s = &s + &alg.arrow(i);
    }
    s
}

impl PhiPsi {
    /// Compute `φ` on the variables of `target` through the bracket of the
    /// BRST algebra `b`, matching variables by name. `target` may be `b`
    /// itself or the Koszul algebra, whose variables are a subset.
    pub fn new(b: &CommutativeDga, eta: &[ArrowId], target: &CommutativeDga, theta: &[ArrowId]) -> Result<Self> {
        let tr_eta = b.trace(&loop_sum(&b.alg, eta))?;
        let by_name: HashMap<&str, u32> =
            target.ring.vars().iter().enumerate().map(|(i, v)| (v.name.as_str(), i as u32)).collect();
        // ring map from b to target: shared names go across, the rest vanish
        let to_target: Vec<Poly> = b
            .ring
            .vars()
            .iter()
            .map(|v| by_name.get(v.name.as_str()).map_or(Poly::zero(), |&i| target.ring.gen(i)))
            .collect();
        let mut phi_images = Vec::with_capacity(target.ring.num_vars());
        for v in target.ring.vars() {
            let bv = b.ring.index_of(&v.name).ok_or_else(|| Error::Unknown(v.name.clone()))?;
            let img = b.bracket(&tr_eta, &b.ring.gen(bv))?;
            let mapped = b.ring.substitute(&target.ring, &to_target, &img);
            // anything involving variables missing from target would be lost
            let back = target.ring.substitute(&b.ring, &back_map(target, b), &mapped);
            if back != img {
                return Err(Error::Unsupported(format!("φ({}) leaves the target algebra", v.name)));
            }
            phi_images.push(mapped);
        }
        let psi = target.trace(&loop_sum(&target.alg, theta))?;
        Ok(PhiPsi { n: target.n(), phi_images, psi })
    }

    pub fn phi(&self, dga: &CommutativeDga, f: &Poly) -> Poly {
        dga.ring.derive(&self.phi_images, f)
    }

    pub fn psi(&self, dga: &CommutativeDga, f: &Poly) -> Poly {
        dga.ring.mul(&self.psi, f)
    }
}

fn back_map(target: &CommutativeDga, b: &CommutativeDga) -> Vec<Poly> {
    target.ring.vars().iter().map(|v| b.ring.gen(b.ring.index_of(&v.name).expect("shared variable"))).collect()
}

/// Matrix identities of `φ` and `ψ` checked column by column on every basis
/// monomial of the slices.
pub fn check_identities(dga: &CommutativeDga, maps: &PhiPsi, slices: &[ChainComplexSlice], label: &str) -> Vec<CheckReport> {
    let n = q(maps.n as i64);
    let mut anti = CheckReport::new(&format!("{label}: φψ + ψφ = n"));
    let mut phi2 = CheckReport::new(&format!("{label}: φ² = 0"));
    let mut psi2 = CheckReport::new(&format!("{label}: ψ² = 0"));
    let mut phid = CheckReport::new(&format!("{label}: φd + dφ = 0"));
    let mut psid = CheckReport::new(&format!("{label}: ψd + dψ = 0"));
    for s in slices {
        for (k, basis) in &s.bases {
            for m in &basis.elements {
                let at = || format!("weight {} degree {k}: {}", s.weight, dga.fmt(m));
                let (pm, sm) = (maps.phi(dga, m), maps.psi(dga, m));
                let lhs = maps.phi(dga, &sm).add(&maps.psi(dga, &pm));
                anti.case(lhs == m.scale(&n), at);
                phi2.case(maps.phi(dga, &pm).is_zero(), at);
                psi2.case(maps.psi(dga, &sm).is_zero(), at);
                let dm = dga.d(m);
                phid.case(maps.phi(dga, &dm).add(&dga.d(&pm)).is_zero(), at);
                psid.case(maps.psi(dga, &dm).add(&dga.d(&sm)).is_zero(), at);
            }
        }
    }
    vec![anti, phi2, psi2, phid, psid]
}

/// Rank of the map induced on homology by `f: slice_a (degree ka) -> slice_b (degree kb)`.
fn induced_rank(
    dga: &CommutativeDga,
    src: &ChainComplexSlice,
    ka: i32,
    dst: &ChainComplexSlice,
    kb: i32,
    f: impl Fn(&Poly) -> Poly,
) -> Result<usize> {
    let Some(sb) = src.bases.get(&ka) else { return Ok(0) };
    let Some(db) = dst.bases.get(&kb) else { return Ok(0) };
    let mut vs: Vec<SparseVec> = dst.boundaries(kb);
    let base = rank(&vs);
    for z in src.cycles(ka) {
        let img = f(&sb.element(&z));
        if !db.spans(&img) {
            return Err(Error::CheckFailed(format!("image {} is not invariant", dga.fmt(&img))));
        }
        vs.push(db.coords(&img));
    }
    Ok(rank(&vs) - base)
}

pub struct PhiPsiResult {
    pub reports: Vec<CheckReport>,
    /// `dim ker φ` on invariant Koszul homology by `(weight, degree)`.
    pub kernel_phi: BettiTable,
    /// `dim im ψ` on invariant Koszul homology by `(weight, degree)`.
    pub image_psi: BettiTable,
    pub koszul_invariant: BettiTable,
}

/// Build `φ, ψ` on the BRST and Koszul representation algebras, check their
/// relations on every slice of weight at most `max_w`, and check that
/// `H = ker φ ⊕ im ψ` on invariant Koszul homology.
pub fn phi_psi(table: &BracketTable, mm: &MomentMap, dims: &DimensionVector, max_w: i32) -> Result<PhiPsiResult> {
    let rc = reduced_complexes(table, mm, dims)?;
    let eta = rc.brst_presentation.eta.clone().ok_or_else(|| Error::Unsupported("no ghosts".into()))?;
    let theta_b = rc.brst_presentation.theta.clone().ok_or_else(|| Error::Unsupported("no ϑ".into()))?;
    let theta_k = rc.koszul_presentation.theta.clone().ok_or_else(|| Error::Unsupported("no ϑ".into()))?;
    // ψ is a chain map only when the moment map is traceless
    let delta = mm.total().transport(&rc.koszul.alg)?;
    if !rc.koszul.trace(&delta)?.is_zero() {
        return Err(Error::Unsupported("φ and ψ need a moment map with vanishing trace".into()));
    }
    let on_b = PhiPsi::new(&rc.brst, &eta, &rc.brst, &theta_b)?;
    let on_k = PhiPsi::new(&rc.brst, &eta, &rc.koszul, &theta_k)?;

    let mut reports = Vec::new();
    let mut unit = CheckReport::new("ψ(1) = tr ϑ and φ(tr ϑ) = n");
    let one = Poly::one();
    let psi1 = on_k.psi(&rc.koszul, &one);
    unit.case(psi1 == on_k.psi, || "ψ(1)".into());
    let n = q(on_k.n as i64);
    unit.case(on_k.phi(&rc.koszul, &psi1) == Poly::constant(n.clone()), || {
        format!("φ(tr ϑ) = {}", rc.koszul.fmt(&on_k.phi(&rc.koszul, &psi1)))
    });
    reports.push(unit);

    let b_slices = (0..=max_w).map(|w| weight_slice(&rc.brst, w)).collect::<Result<Vec<_>>>()?;
    reports.extend(check_identities(&rc.brst, &on_b, &b_slices, "BRST"));
    let k_slices = (0..=max_w).map(|w| weight_slice(&rc.koszul, w)).collect::<Result<Vec<_>>>()?;
    reports.extend(check_identities(&rc.koszul, &on_k, &k_slices, "Koszul"));

    let inv = invariant_slices(&rc.koszul, max_w)?;
    let kinv = table_of(&inv);
    let by_w: BTreeMap<i32, &ChainComplexSlice> = inv.iter().map(|s| (s.weight, s)).collect();
    // φ lowers weight by the weight of tr ϑ and ψ raises it by the same amount
    let shift = rc.koszul.ring.weight(&on_k.psi).ok_or_else(|| Error::NotHomogeneous("tr ϑ".into()))?;
    let mut split = CheckReport::new("invariant Koszul homology splits as ker φ ⊕ im ψ");
    let mut kernel_phi = BettiTable::default();
    let mut image_psi = BettiTable::default();
    for (&(w, k), &h) in &kinv.entries {
        let s = by_w[&w];
        let r_phi = match by_w.get(&(w - shift)) {
            Some(t) => induced_rank(&rc.koszul, s, k, t, k - 1, |f| on_k.phi(&rc.koszul, f))?,
            None => 0,
        };
        let r_psi = match by_w.get(&(w - shift)) {
            Some(t) => induced_rank(&rc.koszul, t, k - 1, s, k, |f| on_k.psi(&rc.koszul, f))?,
            None => 0,
        };
        let ker = h - r_phi;
        kernel_phi.entries.insert((w, k), ker);
        image_psi.entries.insert((w, k), r_psi);
        split.case(h == ker + r_psi, || format!("weight {w} degree {k}: H {h}, ker φ {ker}, im ψ {r_psi}"));
    }
    reports.push(split);
    Ok(PhiPsiResult { reports, kernel_phi, image_psi, koszul_invariant: kinv })
}
