//! Graded-commutative (super) polynomial rings over the rationals.
//!
//! Odd variables anticommute and square to zero. Even variables may carry
//! negative exponents when marked invertible.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::{fmt_term, Q};

pub type VarId = u32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Var {
    pub name: String,
    pub degree: i32,
    pub weight: i32,
    pub invertible: bool,
}

impl Var {
    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }
}

/// A monomial as sorted `(variable, exponent)` pairs with nonzero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(pub Vec<(VarId, i32)>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Mono(vec![(v, 1)])
    }

    pub fn exponent(&self, v: VarId) -> i32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |(_, e)| *e)
    }

    pub fn total_exponent(&self) -> i32 {
        self.0.iter().map(|(_, e)| e.abs()).sum()
    }
}

/// A polynomial: map from monomials to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Q) -> Self {
        Poly::term(Mono::one(), c)
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn term(m: Mono, c: Q) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Q> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Mono, Q> {
        self.terms
    }

    pub fn from_terms(terms: BTreeMap<Mono, Q>) -> Self {
        let mut p = Poly { terms };
        p.terms.retain(|_, c| !c.is_zero());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, s: &Q) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * s);
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        p.add_assign(other);
        p
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        p.sub_assign(other);
        p
    }

    pub fn scale(&self, s: &Q) -> Poly {
        let mut p = Poly::zero();
        p.add_scaled(self, s);
        p
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Q::one())
    }
}

/// The variables of a super-polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ring {
    vars: Vec<Var>,
}

impl Ring {
    pub fn new(vars: Vec<Var>) -> Self {
        Ring { vars }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn var(&self, v: VarId) -> &Var {
        &self.vars[v as usize]
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<VarId> {
        self.vars.iter().position(|v| v.name == name).map(|i| i as VarId)
    }

    fn odd(&self, v: VarId) -> bool {
        self.vars[v as usize].is_odd()
    }

    pub fn gen(&self, v: VarId) -> Poly {
        Poly::term(Mono::var(v), Q::one())
    }

    pub fn mono_degree(&self, m: &Mono) -> i32 {
        m.0.iter().map(|(v, e)| self.var(*v).degree * e).sum()
    }

    pub fn mono_weight(&self, m: &Mono) -> i32 {
        m.0.iter().map(|(v, e)| self.var(*v).weight * e).sum()
    }

    pub fn mono_parity(&self, m: &Mono) -> i64 {
        m.0.iter().filter(|(v, _)| self.odd(*v)).count() as i64
    }

    /// Degree if nonzero and homogeneous.
    pub fn degree(&self, p: &Poly) -> Option<i32> {
        let mut it = p.terms.keys().map(|m| self.mono_degree(m));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn weight(&self, p: &Poly) -> Option<i32> {
        let mut it = p.terms.keys().map(|m| self.mono_weight(m));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// `a * b` as a signed monomial, or `None` if an odd variable repeats.
    pub fn mul_mono(&self, a: &Mono, b: &Mono) -> Option<(Mono, bool)> {
        let mut out = Vec::with_capacity(a.0.len() + b.0.len());
        let mut neg = false;
        // number of odd variables of `a` not yet emitted
        let mut odd_a_left = a.0.iter().filter(|(v, _)| self.odd(*v)).count();
        let (mut i, mut j) = (0, 0);
        while i < a.0.len() || j < b.0.len() {
            let take_a = j >= b.0.len() || (i < a.0.len() && a.0[i].0 < b.0[j].0);
            let take_b = i >= a.0.len() || (j < b.0.len() && b.0[j].0 < a.0[i].0);
            if take_a {
                if self.odd(a.0[i].0) {
                    odd_a_left -= 1;
                }
                out.push(a.0[i]);
                i += 1;
            } else if take_b {
                // b's variable moves left past the remaining odd variables of a
                if self.odd(b.0[j].0) && odd_a_left % 2 == 1 {
                    neg = !neg;
                }
                out.push(b.0[j]);
                j += 1;
            } else {
                let v = a.0[i].0;
                if self.odd(v) {
                    return None;
                }
                let e = a.0[i].1 + b.0[j].1;
                if e != 0 {
                    out.push((v, e));
                }
                i += 1;
                j += 1;
            }
        }
        Some((Mono(out), neg))
    }

    pub fn mul_poly_mono(&self, p: &Poly, m: &Mono, c: &Q) -> Poly {
        let mut out = Poly::zero();
        for (a, ca) in &p.terms {
            if let Some((r, neg)) = self.mul_mono(a, m) {
                let v = ca * c;
                out.add_term(r, if neg { -v } else { v });
            }
        }
        out
    }

    pub fn mul_mono_poly(&self, m: &Mono, c: &Q, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (b, cb) in &p.terms {
            if let Some((r, neg)) = self.mul_mono(m, b) {
                let v = c * cb;
                out.add_term(r, if neg { -v } else { v });
            }
        }
        out
    }

    pub fn mul(&self, f: &Poly, g: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, ca) in &f.terms {
            for (b, cb) in &g.terms {
                if let Some((r, neg)) = self.mul_mono(a, b) {
                    let v = ca * cb;
                    out.add_term(r, if neg { -v } else { v });
                }
            }
        }
        out
    }

    pub fn pow(&self, f: &Poly, n: u32) -> Poly {
        (0..n).fold(Poly::one(), |acc, _| self.mul(&acc, f))
    }

    /// Left derivative `∂/∂v` of a monomial: `m = v · rest` up to sign.
    pub fn left_derivative(&self, m: &Mono, v: VarId) -> Option<(Mono, Q)> {
        let pos = m.0.iter().position(|(w, _)| *w == v)?;
        let e = m.0[pos].1;
        let mut rest = m.0.clone();
        if self.odd(v) {
            let before = m.0[..pos].iter().filter(|(w, _)| self.odd(*w)).count();
            rest.remove(pos);
            let c = if before % 2 == 1 { -Q::one() } else { Q::one() };
            Some((Mono(rest), c))
        } else {
            if e == 1 {
                rest.remove(pos);
            } else {
                rest[pos].1 = e - 1;
            }
            Some((Mono(rest), Q::from_integer(e.into())))
        }
    }

    /// Right derivative: `m = rest · v` up to sign.
    pub fn right_derivative(&self, m: &Mono, v: VarId) -> Option<(Mono, Q)> {
        let pos = m.0.iter().position(|(w, _)| *w == v)?;
        if self.odd(v) {
            let after = m.0[pos + 1..].iter().filter(|(w, _)| self.odd(*w)).count();
            let mut rest = m.0.clone();
            rest.remove(pos);
            let c = if after % 2 == 1 { -Q::one() } else { Q::one() };
            Some((Mono(rest), c))
        } else {
            self.left_derivative(m, v)
        }
    }

    /// Apply the derivation with the given values on variables:
    /// `D(f) = sum_v D(v) · ∂f/∂v` with left derivatives. This is the unique
    /// super-derivation of degree `p` when every `D(v)` has degree `|v| + p`.
    pub fn derive(&self, images: &[Poly], f: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &f.terms {
            for (v, _) in &m.0 {
                let img = &images[*v as usize];
                if img.is_zero() {
                    continue;
                }
                let (rest, k) = self.left_derivative(m, *v).expect("variable present");
                out.add_assign(&self.mul_poly_mono(img, &rest, &(c * k)));
            }
        }
        out
    }

    /// Substitute `v -> images[v]` (an algebra map into `target`). Variables
    /// with negative exponents must map to single monomials.
    pub fn substitute(&self, target: &Ring, images: &[Poly], f: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &f.terms {
            let mut acc = Poly::constant(c.clone());
            for (v, e) in &m.0 {
                let img = &images[*v as usize];
                let factor = if *e >= 0 {
                    target.pow(img, *e as u32)
                } else {
                    let (im, ic) = img.terms.iter().next().expect("invertible image");
                    assert_eq!(img.len(), 1, "inverse of a non-monomial");
                    let inv = Mono(im.0.iter().map(|(w, x)| (*w, -x)).collect());
                    target.pow(&Poly::term(inv, ic.recip()), (-e) as u32)
                };
                acc = target.mul(&acc, &factor);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        out
    }

    pub fn fmt_mono(&self, m: &Mono) -> String {
        m.0.iter()
            .map(|(v, e)| {
                let n = &self.var(*v).name;
                if *e == 1 {
                    n.clone()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn fmt(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        p.terms
            .iter()
            .enumerate()
            .map(|(i, (m, c))| fmt_term(c, &self.fmt_mono(m), i == 0))
            .collect()
    }

    pub fn display<'a>(&'a self, p: &'a Poly) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Ring, &'a Poly);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.fmt(self.1))
            }
        }
        D(self, p)
    }

    /// All monomials of the given weight, grouped by homological degree.
    /// Requires nonnegative weights, with weight-0 variables odd.
    pub fn monomials_of_weight(&self, w: i32) -> crate::Result<BTreeMap<i32, Vec<Mono>>> {
        for v in &self.vars {
            if v.weight < 0 || v.invertible {
                return Err(crate::Error::Unsupported(format!(
                    "weight slices need polynomial variables of nonnegative weight ({})",
                    v.name
                )));
            }
            if v.weight == 0 && !v.is_odd() {
                return Err(crate::Error::Unsupported(format!(
                    "even variable {} of weight 0 makes weight slices infinite",
                    v.name
                )));
            }
        }
        let mut out: BTreeMap<i32, Vec<Mono>> = BTreeMap::new();
        let mut cur = Vec::new();
        self.enumerate(0, w, &mut cur, &mut out);
        for list in out.values_mut() {
            // graded lex: lower total degree first, then larger exponent vectors first
            let dense = |m: &Mono| {
                let mut e = vec![0; self.vars.len()];
                for (v, x) in &m.0 {
                    e[*v as usize] = *x;
                }
                e
            };
            list.sort_by_cached_key(|m| (m.total_exponent(), std::cmp::Reverse(dense(m))));
        }
        Ok(out)
    }

    fn enumerate(&self, v: usize, left: i32, cur: &mut Vec<(VarId, i32)>, out: &mut BTreeMap<i32, Vec<Mono>>) {
        if v == self.vars.len() {
            if left == 0 {
                let m = Mono(cur.clone());
                out.entry(self.mono_degree(&m)).or_default().push(m);
            }
            return;
        }
        let var = &self.vars[v];
        let max_e = if var.is_odd() {
            1
        } else if var.weight == 0 {
            0
        } else {
            left / var.weight
        };
        for e in 0..=max_e {
            let used = e * var.weight;
            if used > left {
                break;
            }
            if e > 0 {
                cur.push((v as VarId, e));
            }
            self.enumerate(v + 1, left - used, cur, out);
            if e > 0 {
                cur.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::q;

    fn ring() -> Ring {
        let v = |n: &str, d, w| Var { name: n.into(), degree: d, weight: w, invertible: false };
        Ring::new(vec![v("x", 0, 1), v("a", 1, 1), v("b", 1, 1), v("c", -1, 0)])
    }

    #[test]
    fn odd_variables_anticommute() {
        let r = ring();
        let (a, b) = (r.gen(1), r.gen(2));
        assert_eq!(r.mul(&a, &b), r.mul(&b, &a).neg());
        assert!(r.mul(&a, &a).is_zero());
        let x = r.gen(0);
        assert_eq!(r.mul(&x, &a), r.mul(&a, &x));
    }

    #[test]
    fn derivatives() {
        let r = ring();
        let ab = r.mul(&r.gen(1), &r.gen(2));
        let m = ab.terms().keys().next().unwrap();
        assert_eq!(r.left_derivative(m, 2).unwrap(), (Mono::var(1), q(-1)));
        assert_eq!(r.right_derivative(m, 2).unwrap(), (Mono::var(1), q(1)));
    }

    #[test]
    fn odd_derivation() {
        let r = ring();
        // d a = x, everything else 0
        let mut imgs = vec![Poly::zero(); 4];
        imgs[1] = r.gen(0);
        let ba = r.mul(&r.gen(2), &r.gen(1));
        // d(b a) = -b d(a) = -b x
        assert_eq!(r.derive(&imgs, &ba), r.mul(&r.gen(2), &r.gen(0)).neg());
    }

    #[test]
    fn weight_enumeration() {
        let r = ring();
        let m = r.monomials_of_weight(2).unwrap();
        // x^2, x a, x b, a b, each optionally times c
        let total: usize = m.values().map(Vec::len).sum();
        assert_eq!(total, 8);
        // degree 0: x^2, x a c, x b c
        assert_eq!(m[&0].len(), 3);
    }
}
