//! Consistency checks of the constructed complexes.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::FromPrimitive;

use super::constructions::{brst_charge, THETA};
use super::presentation::{words_up_to, DgaPresentation};
use crate::coeff::Q;
use crate::dbracket::{commutator_membership, MomentMap};
use crate::error::{Error, Result};
use crate::ncalg::{AlgebraMap, Arrow, Derivation, PathAlgebra, Quiver};
use crate::report::CheckReport;

/// `d² = 0` on all words of length at most `max_len`.
pub fn check_d_squared(p: &DgaPresentation, max_len: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new("d² = 0");
    let q = p.alg.quiver();
    for w in words_up_to(&p.alg, max_len) {
        let e = p.alg.word(w.clone());
        let dd = p.d(&p.d(&e)?)?;
        r.case(dd.is_zero(), || format!("d² {} = {dd}", w.label(q)));
    }
    Ok(r)
}

/// Compare the differential of a BRST presentation with
/// `dx = -[η, x]`, `dϑ_i = δ_i - [η_i, ϑ_i]`, `dη_i = -η_i²`, and check that
/// `{γ, γ}` is a sum of commutators.
pub fn check_brst_formulas(b: &DgaPresentation, mm: &MomentMap) -> Result<CheckReport> {
    let alg = &b.alg;
    let q = alg.quiver();
    let theta = b.theta.as_ref().ok_or_else(|| Error::Unsupported("no ϑ loops".into()))?;
    let eta = b.eta.as_ref().ok_or_else(|| Error::Unsupported("no η loops".into()))?;
    let table = b.table.as_ref().ok_or_else(|| Error::Unsupported("no bracket".into()))?;
    let gamma = brst_charge(b, mm)?;
    let mut r = CheckReport::new("BRST differential");
    let gg = table.single(&gamma, &gamma)?;
    let member = commutator_membership(&gg, gg.weight().unwrap_or(0).max(0))?;
    r.case(member, || format!("{{γ, γ}} = {gg} is not a sum of commutators"));
    let eta_sum = eta.iter().fold(alg.zero(), |acc, &i| &acc + &alg.arrow(i));
    for (i, a) in q.arrows().iter().enumerate() {
        let g = alg.arrow(i);
        let want = if eta.contains(&i) {
            -&(&g * &g)
        } else if let Some(v) = theta.iter().position(|&t| t == i) {
            let e = alg.arrow(eta[v]);
            &mm.components[v].transport(alg)? - &e.commutator(&g)?
        } else {
            -&eta_sum.commutator(&g)?
        };
        let got = table.single(&gamma, &g)?;
        r.case(got == want, || format!("{{γ, {}}} = {got}, expected {want}", a.name));
    }
    Ok(r)
}

/// Check that `η_i ↦ 0` is a map of dg algebras from the BRST presentation
/// `b` to the Shafarevich presentation `sh`, on arrows and on words of length
/// at most `max_len`.
pub fn eta_zero_map(b: &DgaPresentation, sh: &DgaPresentation, max_len: usize) -> Result<CheckReport> {
    let eta = b.eta.as_ref().ok_or_else(|| Error::Unsupported("no η loops".into()))?;
    let ev = AlgebraMap::by_name_killing(&b.alg, &sh.alg, eta)?;
    let q = b.alg.quiver();
    let mut r = CheckReport::new("η = 0 is a dg map");
    for w in words_up_to(&b.alg, max_len) {
        let e = b.alg.word(w.clone());
        let lhs = ev.apply(&b.d(&e)?)?;
        let rhs = sh.d(&ev.apply(&e)?)?;
        r.case(lhs == rhs, || format!("on {}: {lhs} vs {rhs}", w.label(q)));
    }
    Ok(r)
}

/// On the free algebra generated by degree 0 loops `t_i` and degree 1 loops
/// `ϑ_i` (one of each per vertex, `1 <= i <= num_vertices`) with `dϑ_i = t_i`,
/// the degree +1 derivation `h(t_i) = ϑ_i`, `h(ϑ_i) = 0` satisfies
/// `dh + hd = length · id` on words; checked on all words of length at most `max_len`.
pub fn contraction_check(max_len: usize, num_vertices: usize) -> Result<CheckReport> {
    if num_vertices == 0 {
        return Err(Error::InvalidQuiver("no vertices".into()));
    }
    let verts: Vec<String> = (1..=num_vertices).map(|i| i.to_string()).collect();
    let mut arrows = Vec::new();
    for (i, v) in verts.iter().enumerate() {
        for (prefix, degree) in [("t", 0), (THETA, 1)] {
            arrows.push(Arrow {
                name: format!("{prefix}_{v}"),
                source: i,
                target: i,
                degree,
                weight: 1,
                invertible: false,
            });
        }
    }
    let alg: Arc<PathAlgebra> = PathAlgebra::new(Quiver::new(verts.clone(), arrows)?);
    let q = alg.quiver();
    let mut dimg = BTreeMap::new();
    let mut himg = BTreeMap::new();
    for v in &verts {
        let t = q.arrow_index(&format!("t_{v}"))?;
        let th = q.arrow_index(&format!("{THETA}_{v}"))?;
        dimg.insert(th, alg.arrow(t));
        himg.insert(t, alg.arrow(th));
    }
    let d = Derivation::new(&alg, -1, dimg)?;
    let h = Derivation::new(&alg, 1, himg)?;
    let mut r = CheckReport::new("contraction dh + hd = length");
    for w in words_up_to(&alg, max_len) {
        let e = alg.word(w.clone());
        let lhs = &d.apply(&h.apply(&e)?)? + &h.apply(&d.apply(&e)?)?;
        let rhs = e.scale(&Q::from_usize(w.len()).expect("small"));
        r.case(lhs == rhs, || format!("on {}: {lhs}", w.label(q)));
    }
    Ok(r)
}

