//! Tensor powers `A^{⊗n}` over the ground field and the graded permutation action.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::algebra::{NcElement, PathAlgebra};
use super::word::Word;
use crate::coeff::{fmt_term, sign, Q};
use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}`, stored as `images[i] = σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n).collect() }
    }

    /// The cycle `c[0] -> c[1] -> ... -> c[0]` on `n` points.
    pub fn cycle(n: usize, c: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for (k, &i) in c.iter().enumerate() {
            if i >= n {
                return Err(Error::InvalidPermutation(format!("cycle {c:?} on {n} points")));
            }
            images[i] = c[(k + 1) % c.len()];
        }
        Perm::new(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }
}

/// An element of `A^{⊗n}` as a combination of word tuples.
#[derive(Clone)]
pub struct TensorElement {
    alg: Arc<PathAlgebra>,
    arity: usize,
    terms: BTreeMap<Vec<Word>, Q>,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same(&other.alg) && self.arity == other.arity && self.terms == other.terms
    }
}

impl TensorElement {
    pub fn zero(alg: &Arc<PathAlgebra>, arity: usize) -> Self {
        TensorElement { alg: alg.clone(), arity, terms: BTreeMap::new() }
    }

    pub fn from_words(alg: &Arc<PathAlgebra>, words: Vec<Word>, c: Q) -> Self {
        let mut t = TensorElement::zero(alg, words.len());
        t.add_term(words, c);
        t
    }

    /// Tensor product of elements, expanded multilinearly.
    pub fn product(factors: &[&NcElement]) -> Result<Self> {
        let alg = factors
            .first()
            .ok_or(Error::Arity { expected: 1, got: 0 })?
            .alg()
            .clone();
        let mut acc: Vec<(Vec<Word>, Q)> = vec![(Vec::new(), Q::one())];
        for f in factors {
            if !f.alg().same(&alg) {
                return Err(Error::MixedContexts);
            }
            let mut next = Vec::new();
            for (ws, c) in &acc {
                for (w, d) in f.terms() {
                    let mut ws2 = ws.clone();
                    ws2.push(w.clone());
                    next.push((ws2, c * d));
                }
            }
            acc = next;
        }
        let mut t = TensorElement::zero(&alg, factors.len());
        for (ws, c) in acc {
            t.add_term(ws, c);
        }
        Ok(t)
    }

    pub fn alg(&self) -> &Arc<PathAlgebra> {
        &self.alg
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Word>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, words: Vec<Word>, c: Q) {
        debug_assert_eq!(words.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(words) {
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

    pub fn add_assign(&mut self, other: &TensorElement) {
        assert!(self.alg.same(&other.alg) && self.arity == other.arity);
        for (ws, c) in &other.terms {
            self.add_term(ws.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElement, s: &Q) {
        assert!(self.alg.same(&other.alg) && self.arity == other.arity);
        for (ws, c) in &other.terms {
            self.add_term(ws.clone(), c * s);
        }
    }

    pub fn try_add(&self, other: &TensorElement) -> Result<TensorElement> {
        if !self.alg.same(&other.alg) {
            return Err(Error::MixedContexts);
        }
        if self.arity != other.arity {
            return Err(Error::Arity { expected: self.arity, got: other.arity });
        }
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    pub fn scale(&self, s: &Q) -> TensorElement {
        let mut out = TensorElement::zero(&self.alg, self.arity);
        if !s.is_zero() {
            for (ws, c) in &self.terms {
                out.terms.insert(ws.clone(), c * s);
            }
        }
        out
    }

    /// Degree if nonzero and homogeneous.
    pub fn degree(&self) -> Option<i32> {
        let q = self.alg.quiver();
        let mut it = self.terms.keys().map(|ws| ws.iter().map(|w| w.degree(q)).sum::<i32>());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// The graded permutation `τ_σ(a_1 ⊗ .. ⊗ a_n) = ± a_{σ⁻¹(1)} ⊗ .. ⊗ a_{σ⁻¹(n)}`
    /// with the Koszul sign of the transpositions of odd factors.
    pub fn permute(&self, sigma: &Perm) -> Result<TensorElement> {
        if sigma.len() != self.arity {
            return Err(Error::Arity { expected: self.arity, got: sigma.len() });
        }
        let q = self.alg.quiver();
        let inv = sigma.inverse();
        let mut out = TensorElement::zero(&self.alg, self.arity);
        for (ws, c) in &self.terms {
            let degs: Vec<i64> = ws.iter().map(|w| w.degree(q) as i64).collect();
            let mut s = 0i64;
            for i in 0..self.arity {
                for j in i + 1..self.arity {
                    let (a, b) = (inv.apply(i), inv.apply(j));
                    if a > b {
                        s += degs[a] * degs[b];
                    }
                }
            }
            let nw = (0..self.arity).map(|i| ws[inv.apply(i)].clone()).collect();
            out.add_term(nw, c * sign(s));
        }
        Ok(out)
    }

    /// `(-)°`, the graded flip on `A ⊗ A`.
    pub fn flip(&self) -> TensorElement {
        self.permute(&Perm::cycle(self.arity, &[0, 1]).expect("arity >= 2"))
            .expect("arity checked")
    }

    /// Multiply the factors at positions `i` and `i + 1`.
    pub fn multiply_adjacent(&self, i: usize) -> Result<TensorElement> {
        if i + 1 >= self.arity {
            return Err(Error::Arity { expected: i + 2, got: self.arity });
        }
        let mut out = TensorElement::zero(&self.alg, self.arity - 1);
        for (ws, c) in &self.terms {
            if let Some(p) = self.alg.mul_words(&ws[i], &ws[i + 1]) {
                let mut nw = ws[..i].to_vec();
                nw.push(p);
                nw.extend_from_slice(&ws[i + 2..]);
                out.add_term(nw, c.clone());
            }
        }
        Ok(out)
    }

    /// Multiplication `A ⊗ A -> A`.
    pub fn multiply(&self) -> Result<NcElement> {
        if self.arity != 2 {
            return Err(Error::Arity { expected: 2, got: self.arity });
        }
        let mut out = self.alg.zero();
        for (ws, c) in &self.terms {
            if let Some(p) = self.alg.mul_words(&ws[0], &ws[1]) {
                out.add_term(p, c.clone());
            }
        }
        Ok(out)
    }

    /// Apply a linear map to the factor at position `i`.
    pub fn map_factor<F>(&self, i: usize, mut f: F) -> Result<TensorElement>
    where
        F: FnMut(&Word) -> Result<NcElement>,
    {
        let mut out = TensorElement::zero(&self.alg, self.arity);
        for (ws, c) in &self.terms {
            for (w, d) in f(&ws[i])?.terms() {
                let mut nw = ws.clone();
                nw[i] = w.clone();
                out.add_term(nw, c * d);
            }
        }
        Ok(out)
    }

    /// Append an element as a new last factor.
    pub fn tensor_right(&self, e: &NcElement) -> TensorElement {
        let mut out = TensorElement::zero(&self.alg, self.arity + 1);
        for (ws, c) in &self.terms {
            for (w, d) in e.terms() {
                let mut nw = ws.clone();
                nw.push(w.clone());
                out.add_term(nw, c * d);
            }
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let q = self.alg.quiver();
        for (i, (ws, c)) in self.terms.iter().enumerate() {
            let body = ws.iter().map(|w| w.label(q)).collect::<Vec<_>>().join(" ⊗ ");
            let body = if ws.iter().all(|w| w.len() <= 1) { body } else { format!("({body})") };
            write!(f, "{}", fmt_term(c, &body, i == 0))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement({self})")
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        self.try_add(rhs).expect("incompatible tensors")
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        self.try_add(&-rhs).expect("incompatible tensors")
    }
}

impl Neg for &TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        self.scale(&-Q::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::quiver::{Arrow, Quiver};

    /// Loops `a`, `b`, `c` of degrees 1, -1, 0.
    fn graded() -> Arc<PathAlgebra> {
        let arrow = |name: &str, degree| Arrow {
            name: name.into(),
            source: 0,
            target: 0,
            degree,
            weight: 1,
            invertible: false,
        };
        PathAlgebra::new(
            Quiver::new(vec!["1".into()], vec![arrow("a", 1), arrow("b", -1), arrow("c", 0)]).unwrap(),
        )
    }

    /// Sign by decomposing σ into adjacent transpositions (bubble sort of the
    /// output order), independent of the inversion-count formula.
    fn swap_sign(degs: &[i64], sigma: &Perm) -> i64 {
        let inv = sigma.inverse();
        let mut order: Vec<usize> = (0..degs.len()).collect();
        let target: Vec<usize> = (0..degs.len()).map(|i| inv.apply(i)).collect();
        let mut s = 0;
        for i in 0..order.len() {
            let pos = order.iter().position(|&x| x == target[i]).unwrap();
            for k in (i..pos).rev() {
                s += degs[order[k]] * degs[order[k + 1]];
                order.swap(k, k + 1);
            }
        }
        s
    }

    #[test]
    fn cycle_sign_matches_swap_enumeration() {
        let alg = graded();
        let gens: Vec<NcElement> = ["a", "b", "c"].iter().map(|n| alg.gen(n).unwrap()).collect();
        let t = TensorElement::product(&[&gens[0], &gens[1], &gens[2]]).unwrap();
        let s123 = Perm::cycle(3, &[0, 1, 2]).unwrap();
        let got = t.permute(&s123).unwrap();
        let expect_sign = sign(swap_sign(&[1, -1, 0], &s123));
        let expect = TensorElement::product(&[&gens[2], &gens[0], &gens[1]]).unwrap().scale(&expect_sign);
        assert_eq!(got, expect);
        // moving c (even) to the front costs nothing, so the sign is +1
        assert_eq!(expect_sign, Q::one());
    }

    #[test]
    fn flip_of_odd_pair() {
        let alg = graded();
        let a = alg.gen("a").unwrap();
        let b = alg.gen("b").unwrap();
        let t = TensorElement::product(&[&a, &b]).unwrap();
        assert_eq!(t.flip(), TensorElement::product(&[&b, &a]).unwrap().scale(&-Q::one()));
    }

    #[test]
    fn rejects_bad_permutations() {
        assert!(Perm::new(vec![0, 0]).is_err());
        let alg = graded();
        let a = alg.gen("a").unwrap();
        let t = TensorElement::product(&[&a, &a]).unwrap();
        assert!(t.permute(&Perm::identity(3)).is_err());
    }

    #[test]
    fn all_signs_match_swap_oracle() {
        let alg = graded();
        let names = ["a", "b", "c", "a"];
        let gens: Vec<NcElement> = names.iter().map(|n| alg.gen(n).unwrap()).collect();
        let degs = [1i64, -1, 0, 1];
        let t = TensorElement::product(&gens.iter().collect::<Vec<_>>()).unwrap();
        for p in permutations(4) {
            let sigma = Perm::new(p).unwrap();
            let inv = sigma.inverse();
            let got = t.permute(&sigma).unwrap();
            let factors: Vec<&NcElement> = (0..4).map(|i| &gens[inv.apply(i)]).collect();
            let expect = TensorElement::product(&factors).unwrap().scale(&sign(swap_sign(&degs, &sigma)));
            assert_eq!(got, expect);
        }
    }

    pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for k in 0..n {
                let mut q = p.clone();
                q.insert(k, n - 1);
                out.push(q);
            }
        }
        out
    }
}
