//! Restriction of invariant Koszul homology to diagonal matrices, compared
//! with multisymmetric functions.

use std::collections::BTreeMap;

use super::decomposition::{invariant_slices, table_of};
use super::invariants::multisym_invariants;
use super::slice::BettiTable;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, KeyVec};
use crate::repfun::{CommutativeDga, Mono, Poly, Ring, Var};
use crate::report::{CheckReport, Status};

/// The ring of diagonal entries, one family of `n` variables per arrow, and
/// the restriction map sending off-diagonal entries to 0.
pub fn diagonal_restriction(k: &CommutativeDga) -> Result<(Ring, Vec<Poly>)> {
    let q = k.alg.quiver();
    if q.num_vertices() != 1 {
        return Err(Error::Unsupported("diagonal restriction needs a one-vertex quiver".into()));
    }
    let n = k.n();
    let mut vars = Vec::new();
    for a in q.arrows() {
        for i in 1..=n {
            vars.push(Var { name: format!("{}_{i}", a.name), degree: a.degree, weight: a.weight, invertible: false });
        }
    }
    let ring = Ring::new(vars);
    let images = k
        .sources
        .iter()
        .map(|s| if s.row == s.col { ring.gen((s.arrow * n + s.row) as u32) } else { Poly::zero() })
        .collect();
    Ok((ring, images))
}

pub struct DiagonalResult {
    pub report: CheckReport,
    pub source: BettiTable,
    pub target: BettiTable,
    /// Rank of the map induced on homology.
    pub induced: BettiTable,
}

/// Compare invariant Koszul homology with its diagonal restriction to
/// `S_n`-invariants, weight by weight. Disagreements are findings.
pub fn diagonal_check(k: &CommutativeDga, max_w: i32) -> Result<DiagonalResult> {
    let n = k.n();
    let (ring, images) = diagonal_restriction(k)?;
    let restrict = |f: &Poly| k.ring.substitute(&ring, &images, f);
    // the restricted differential, and the check that restriction is a chain map
    let d_diag: Vec<Poly> = (0..ring.num_vars())
        .map(|v| {
            let (a, i) = (v / n, v % n);
            let kv = k.var_of(a, i, i).expect("diagonal entry");
            restrict(&k.differential[kv as usize])
        })
        .collect();
    let mut report = CheckReport::new(&format!("diagonal restriction is a quasi-isomorphism, n = {n}"));
    for (v, dv) in k.differential.iter().enumerate() {
        let lhs = restrict(dv);
        let rhs = ring.derive(&d_diag, &images[v]);
        if lhs != rhs {
            return Err(Error::CheckFailed(format!("restriction does not commute with d at {}", k.ring.var(v as u32).name)));
        }
    }
    if d_diag.iter().any(|p| !p.is_zero()) {
        return Err(Error::Unsupported("diagonal restriction with a nonzero restricted differential".into()));
    }

    let inv = invariant_slices(k, max_w)?;
    let source = table_of(&inv);
    let mut target = BettiTable::default();
    let mut induced = BettiTable::default();
    for s in &inv {
        let w = s.weight;
        let sym: BTreeMap<i32, Vec<Poly>> = multisym_invariants(&ring, n, w)?;
        let mut ks: Vec<i32> = s.bases.keys().copied().collect();
        ks.extend(sym.keys().copied());
        ks.sort();
        ks.dedup();
        let hs = s.betti();
        for k_deg in ks {
            let t = sym.get(&k_deg).map_or(0, |v| v.len());
            let mut ech: Echelon<Mono> = Echelon::new();
            if let Some(basis) = s.bases.get(&k_deg) {
                for z in s.cycles(k_deg) {
                    let img = restrict(&basis.element(&z));
                    ech.insert(KeyVec::from_iter(img.terms().iter().map(|(m, c)| (m.clone(), c.clone()))));
                }
            }
            let h = hs.get(&k_deg).copied().unwrap_or(0);
            let r = ech.rank();
            target.entries.insert((w, k_deg), t);
            induced.entries.insert((w, k_deg), r);
            report.case(h == t && r == t, || format!("weight {w} degree {k_deg}: invariant homology {h}, multisymmetric {t}, induced rank {r}"));
        }
    }
    // a conjecture: disagreement is reported, never a failure
    report.status = Status::Finding;
    if report.failures == 0 {
        report.note(format!("quasi-isomorphism at all {} (weight, degree) pairs up to weight {max_w}", report.cases));
    } else {
        report.note(format!("{} of {} (weight, degree) pairs disagree", report.failures, report.cases));
    }
    Ok(DiagonalResult { report, source, target, induced })
}
