//! Commutator subspace membership and differentials `{γ, -}` of charges.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Zero};

use super::table::BracketTable;
use crate::coeff::{sign, Q};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, KeyVec};
use crate::ncalg::{Derivation, NcElement, PathAlgebra, Word};
use crate::report::CheckReport;

fn to_keyvec(e: &NcElement) -> KeyVec<Word> {
    e.terms().clone()
}

/// All ways of writing `w = u v` (including the trivial splits through
/// idempotents), closed under passing to `v u`.
fn rotation_closure(alg: &PathAlgebra, w: &Word) -> BTreeSet<Word> {
    let q = alg.quiver();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(x) = queue.pop_front() {
        if !seen.insert(x.clone()) {
            continue;
        }
        for k in 1..x.len() {
            let (u, v) = (x.sub(q, 0, k), x.sub(q, k, x.len()));
            if let Some(r) = alg.mul_words(&v, &u) {
                queue.push_back(r);
            }
        }
    }
    seen
}

/// Decide whether `a` lies in the span of graded commutators `[u, v]` of
/// words, by solving the linear system over all commutators that can produce
/// a word in the support of `a`. The element must be weight-homogeneous of
/// weight at most `weight_bound`.
pub fn commutator_membership(a: &NcElement, weight_bound: i32) -> Result<bool> {
    if a.is_zero() {
        return Ok(true);
    }
    let w = a.weight().ok_or_else(|| Error::NotHomogeneous(format!("{a} is not weight-homogeneous")))?;
    if w > weight_bound {
        return Err(Error::Unsupported(format!("weight {w} exceeds the bound {weight_bound}")));
    }
    let alg = a.alg().clone();
    let q = alg.quiver();
    let mut words = BTreeSet::new();
    for x in a.terms().keys() {
        words.extend(rotation_closure(&alg, x));
    }
    let mut span: Echelon<Word> = Echelon::new();
    for x in &words {
        if !x.is_cycle() {
            // [x, e_s] = x for a path from s to t != s
            let c = alg.word(x.clone()).commutator(&alg.idempotent(x.source()))?;
            span.insert(to_keyvec(&c));
            continue;
        }
        for k in 1..x.len() {
            let (u, v) = (alg.word(x.sub(q, 0, k)), alg.word(x.sub(q, k, x.len())));
            span.insert(to_keyvec(&u.commutator(&v)?));
        }
    }
    Ok(span.contains(to_keyvec(a)))
}

/// Image of `a` in `A / [A, A]`, computed independently of
/// [`commutator_membership`]: non-closed paths vanish and closed paths are
/// cyclically reduced and replaced by their least rotation, with the Koszul
/// sign of the rotation.
pub fn cyclic_normal_form(a: &NcElement) -> BTreeMap<Word, Q> {
    let alg = a.alg();
    let q = alg.quiver();
    let mut out: BTreeMap<Word, Q> = BTreeMap::new();
    for (w, c) in a.terms() {
        if !w.is_cycle() {
            continue;
        }
        // strip x ... x^-1 from the ends
        let mut w = w.clone();
        while w.len() >= 2 {
            let (f, l) = (w.tokens()[0], w.tokens()[w.len() - 1]);
            if f.arrow == l.arrow && f.inverse != l.inverse {
                w = w.sub(q, 1, w.len() - 1);
            } else {
                break;
            }
        }
        let n = w.len();
        let mut best = (w.clone(), Q::one());
        let mut cur = w.clone();
        let mut s = Q::one();
        let mut zero = false;
        for _ in 0..n {
            // g r ≡ (-1)^{|g||r|} r g
            let (g, r) = cur.split_first(q).expect("nonempty");
            s *= sign((g.degree(q) * r.degree(q)) as i64);
            cur = alg.mul_words(&r, &g).expect("closed path");
            if cur == w && s != Q::one() {
                zero = true;
                break;
            }
            if cur < best.0 {
                best = (cur.clone(), s.clone());
            }
        }
        if zero {
            continue;
        }
        let e = out.entry(best.0).or_insert_with(Q::zero);
        *e += c * &best.1;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// The differential `d = {γ, -}` of a charge `γ` of degree -1.
///
/// Fails if `γ` is not homogeneous of degree -1, if `{γ, γ}` is not in the
/// commutator subspace, or if `d² ≠ 0` on some generator.
pub fn charge_differential(t: &BracketTable, gamma: &NcElement) -> Result<(Derivation, CheckReport)> {
    let alg = t.alg().clone();
    if gamma.degree() != Some(-1) {
        return Err(Error::NotHomogeneous(format!("charge {gamma} must have degree -1")));
    }
    let mut r = CheckReport::new("charge");
    let gg = t.single(gamma, gamma)?;
    let bound = gg.weight().unwrap_or(0).max(0);
    let member = commutator_membership(&gg, bound)?;
    r.case(member, || format!("{{γ, γ}} = {gg} is not a sum of commutators"));
    let mut images = BTreeMap::new();
    for i in 0..alg.quiver().arrows().len() {
        images.insert(i, t.single(gamma, &alg.arrow(i))?);
    }
    let d = Derivation::new(&alg, -1, images)?;
    for i in 0..alg.quiver().arrows().len() {
        let dd = d.apply(&d.apply(&alg.arrow(i))?)?;
        r.case(dd.is_zero(), || format!("d² {} = {dd}", alg.quiver().arrow(i).name));
    }
    if !r.passed() {
        return Err(Error::CheckFailed(r.witness.clone().unwrap_or_default()));
    }
    Ok((d, r))
}

pub fn arrow_images(d: &Derivation, alg: &PathAlgebra) -> Vec<(String, NcElement)> {
    alg.quiver().arrows().iter().enumerate().map(|(i, a)| (a.name.clone(), d.image(i).clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::{Arrow, LoopFamily, Quiver};
    use std::sync::Arc;

    fn alg() -> Arc<PathAlgebra> {
        let q = Quiver::loops("1", &["x", "y"]).unwrap().adjoin_loops(&LoopFamily::new("eta", -1, 0)).unwrap();
        PathAlgebra::new(q)
    }

    #[test]
    fn membership_agrees_with_normal_form() {
        let a = alg();
        for s in ["x y - y x", "x y", "eta_1 eta_1", "x eta_1 y - eta_1 y x", "x eta_1 y + eta_1 y x", "x x y - x y x"] {
            let e = a.parse(s).unwrap();
            let w = e.weight().unwrap();
            assert_eq!(commutator_membership(&e, w).unwrap(), cyclic_normal_form(&e).is_empty(), "{s}");
        }
        assert!(commutator_membership(&a.parse("eta_1 eta_1").unwrap(), 0).unwrap());
        assert!(!commutator_membership(&a.parse("x y").unwrap(), 2).unwrap());
        assert!(commutator_membership(&a.parse("x y").unwrap(), 1).is_err());
    }

    #[test]
    fn open_paths_are_commutators() {
        let arrow = |n: &str, s, t| Arrow { name: n.into(), source: s, target: t, degree: 0, weight: 1, invertible: false };
        let q = Quiver::new(vec!["1".into(), "2".into()], vec![arrow("a", 0, 1)]).unwrap();
        let a = PathAlgebra::new(q);
        assert!(commutator_membership(&a.gen("a").unwrap(), 1).unwrap());
        assert!(!commutator_membership(&a.idempotent(0), 0).unwrap());
    }

    #[test]
    fn conjugates_by_inverses() {
        let q = Quiver::loops("1", &["x", "y"]).unwrap().localize(&["x"]).unwrap();
        let a = PathAlgebra::new(q);
        let e = a.parse("x y x^-1 - y").unwrap();
        assert!(commutator_membership(&e, 1).unwrap());
        assert!(cyclic_normal_form(&e).is_empty());
    }
}
