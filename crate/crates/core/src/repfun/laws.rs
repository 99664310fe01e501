//! Checks that the representation functor respects products, traces,
//! brackets, the charge and the gauge action.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dga::CommutativeDga;
use super::gl::gl_derivations;
use super::poly::{Poly, VarId};
use crate::coeff::sign;
use crate::complexes::DgaPresentation;
use crate::dbracket::verify::random_word;
use crate::error::Result;
use crate::report::CheckReport;

/// Trace bracket pairs, functoriality pairs and Jacobi triples sampled when
/// exhaustive enumeration would be too large.
#[derive(Clone, Copy, Debug)]
pub struct LawSampling {
    pub seed: u64,
    pub trace_pairs: usize,
    pub product_pairs: usize,
    pub max_word_len: usize,
    pub max_jacobi_triples: usize,
}

impl Default for LawSampling {
    fn default() -> Self {
        LawSampling { seed: 2024, trace_pairs: 50, product_pairs: 30, max_word_len: 3, max_jacobi_triples: 6000 }
    }
}

/// Jacobi identity `{a,{b,c}} = {{a,b},c} + (-1)^{|a||b|} {b,{a,c}}` on the given triple.
pub fn jacobi_defect(dga: &CommutativeDga, a: &Poly, b: &Poly, c: &Poly) -> Result<Poly> {
    let ring = &dga.ring;
    let s = sign(ring.degree(a).unwrap_or(0) as i64 * ring.degree(b).unwrap_or(0) as i64);
    let lhs = dga.bracket(a, &dga.bracket(b, c)?)?;
    let r1 = dga.bracket(&dga.bracket(a, b)?, c)?;
    let r2 = dga.bracket(b, &dga.bracket(a, c)?)?;
    let mut d = lhs.sub(&r1);
    d.add_scaled(&r2, &-s);
    Ok(d)
}

pub fn check_rep_laws(p: &DgaPresentation, dga: &CommutativeDga, cfg: &LawSampling) -> Result<Vec<CheckReport>> {
    let alg = &p.alg;
    let ring = &dga.ring;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut reports = Vec::new();

    let mut prod = CheckReport::new("rep is multiplicative");
    for _ in 0..cfg.product_pairs {
        let (Some(u), Some(v)) = (random_word(alg, &mut rng, cfg.max_word_len), random_word(alg, &mut rng, cfg.max_word_len))
        else {
            break;
        };
        let uv = match alg.mul_words(&u, &v) {
            Some(w) => dga.rep_word(&w),
            None => super::dga::PolyMatrix::zero(dga.n()),
        };
        let want = dga.rep_word(&u).mul(ring, &dga.rep_word(&v));
        let q = alg.quiver();
        prod.case(uv == want, || format!("rep({} · {})", u.label(q), v.label(q)));
    }
    reports.push(prod);

    let gl = gl_derivations(dga);
    let mut eq = CheckReport::new("differential is gauge invariant");
    for (v, dv) in dga.differential.iter().enumerate() {
        let x = ring.gen(v as VarId);
        for g in &gl {
            let lhs = g.apply(dga, dv);
            let rhs = dga.d(&g.apply(dga, &x));
            eq.case(lhs == rhs, || format!("[D_{}{}, d] on {}", g.p + 1, g.q + 1, ring.var(v as VarId).name));
        }
    }
    reports.push(eq);

    let mut inv = CheckReport::new("traces are gauge invariant");
    for _ in 0..cfg.product_pairs {
        let Some(w) = random_word(alg, &mut rng, cfg.max_word_len + 1) else { break };
        if !w.is_cycle() {
            continue;
        }
        let t = dga.rep_word(&w).trace();
        for g in &gl {
            let d = g.apply(dga, &t);
            inv.case(d.is_zero(), || format!("D_{}{} tr({})", g.p + 1, g.q + 1, w.label(alg.quiver())));
        }
    }
    reports.push(inv);

    let Some(table) = &p.table else {
        return Ok(reports);
    };
    if dga.poisson.is_none() {
        return Ok(reports);
    }
    let nv = ring.num_vars();
    let gens: Vec<Poly> = (0..nv).map(|v| ring.gen(v as VarId)).collect();

    let mut anti = CheckReport::new("induced bracket is antisymmetric");
    for a in 0..nv {
        for b in 0..nv {
            let ab = dga.bracket(&gens[a], &gens[b])?;
            let ba = dga.bracket(&gens[b], &gens[a])?;
            let s = sign(ring.var(a as VarId).degree as i64 * ring.var(b as VarId).degree as i64);
            let mut d = ab;
            d.add_scaled(&ba, &s);
            anti.case(d.is_zero(), || format!("({}, {})", ring.var(a as VarId).name, ring.var(b as VarId).name));
        }
    }
    reports.push(anti);

    let mut jac = CheckReport::new("induced bracket satisfies Jacobi");
    let total = nv * nv * nv;
    let triples: Vec<(usize, usize, usize)> = if total <= cfg.max_jacobi_triples {
        (0..total).map(|k| (k / (nv * nv), (k / nv) % nv, k % nv)).collect()
    } else {
        jac.note(format!("{} of {total} triples sampled", cfg.max_jacobi_triples));
        (0..cfg.max_jacobi_triples).map(|_| (rng.gen_range(0..nv), rng.gen_range(0..nv), rng.gen_range(0..nv))).collect()
    };
    for (a, b, c) in triples {
        let d = jacobi_defect(dga, &gens[a], &gens[b], &gens[c])?;
        jac.case(d.is_zero(), || {
            format!(
                "({}, {}, {}): {}",
                ring.var(a as VarId).name,
                ring.var(b as VarId).name,
                ring.var(c as VarId).name,
                ring.fmt(&d)
            )
        });
    }
    reports.push(jac);

    let mut tr = CheckReport::new("trace of bracket is bracket of traces");
    let q = alg.quiver();
    for _ in 0..cfg.trace_pairs {
        let (Some(u), Some(v)) = (random_word(alg, &mut rng, cfg.max_word_len), random_word(alg, &mut rng, cfg.max_word_len))
        else {
            break;
        };
        let (eu, ev) = (alg.word(u.clone()), alg.word(v.clone()));
        let lhs = dga.trace(&table.single(&eu, &ev)?)?;
        let rhs = dga.bracket(&dga.trace(&eu)?, &dga.trace(&ev)?)?;
        tr.case(lhs == rhs, || format!("({}, {})", u.label(q), v.label(q)));
    }
    reports.push(tr);

    if let Some(gamma) = &p.charge {
        let mut ch = CheckReport::new("d = {tr γ, -} on entries");
        let tg = dga.trace(gamma)?;
        for (v, g) in gens.iter().enumerate() {
            let got = dga.bracket(&tg, g)?;
            let want = &dga.differential[v];
            ch.case(&got == want, || {
                format!("{}: {} vs {}", ring.var(v as VarId).name, ring.fmt(&got), ring.fmt(want))
            });
        }
        reports.push(ch);
    }
    Ok(reports)
}

/// `{c, v} = 0` for every listed element `c` and every variable `v`.
pub fn check_casimirs(dga: &CommutativeDga, elements: &[(String, Poly)]) -> Result<CheckReport> {
    let mut r = CheckReport::new("traces of powers are Casimirs");
    for (label, c) in elements {
        for v in 0..dga.ring.num_vars() {
            let b = dga.bracket(c, &dga.ring.gen(v as VarId))?;
            r.case(b.is_zero(), || format!("{{{label}, {}}} = {}", dga.ring.var(v as VarId).name, dga.fmt(&b)));
        }
    }
    Ok(r)
}
