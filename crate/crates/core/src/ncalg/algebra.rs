//! The graded path algebra `kQ` (optionally localized) and its elements.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::quiver::{ArrowId, Quiver, VertexId};
use super::word::{Token, Word};
use crate::coeff::{fmt_term, looks_like_number, parse_q, sign, Q};
use crate::error::{Error, Result};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Context object for elements: a quiver together with a unique identity.
#[derive(Debug)]
pub struct PathAlgebra {
    id: u64,
    quiver: Quiver,
}

impl PartialEq for PathAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl PathAlgebra {
    pub fn new(quiver: Quiver) -> Arc<Self> {
        Arc::new(PathAlgebra { id: NEXT_ID.fetch_add(1, Ordering::Relaxed), quiver })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn same(&self, other: &PathAlgebra) -> bool {
        self.id == other.id
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn zero(self: &Arc<Self>) -> NcElement {
        NcElement { alg: self.clone(), terms: BTreeMap::new() }
    }

    pub fn word(self: &Arc<Self>, w: Word) -> NcElement {
        self.word_c(w, Q::one())
    }

    pub fn word_c(self: &Arc<Self>, w: Word, c: Q) -> NcElement {
        let mut e = self.zero();
        if !c.is_zero() {
            e.terms.insert(w, c);
        }
        e
    }

    pub fn idempotent(self: &Arc<Self>, v: VertexId) -> NcElement {
        self.word(Word::idempotent(v))
    }

    /// The unit `sum_i e_i`.
    pub fn one(self: &Arc<Self>) -> NcElement {
        let mut e = self.zero();
        for v in 0..self.num_vertices() {
            e.terms.insert(Word::idempotent(v), Q::one());
        }
        e
    }

    pub fn arrow(self: &Arc<Self>, id: ArrowId) -> NcElement {
        self.word(Word::token(&self.quiver, Token::new(id)))
    }

    pub fn gen(self: &Arc<Self>, name: &str) -> Result<NcElement> {
        Ok(self.arrow(self.quiver.arrow_index(name)?))
    }

    /// Formal inverse of an invertible arrow.
    pub fn inverse(self: &Arc<Self>, name: &str) -> Result<NcElement> {
        let id = self.quiver.arrow_index(name)?;
        if !self.quiver.arrow(id).invertible {
            return Err(Error::Unsupported(format!("{name:?} is not invertible")));
        }
        Ok(self.word(Word::token(&self.quiver, Token::inv(id))))
    }

    pub fn token_word(&self, t: Token) -> Word {
        Word::token(&self.quiver, t)
    }

    pub fn mul_words(&self, a: &Word, b: &Word) -> Option<Word> {
        a.mul(&self.quiver, b)
    }

    fn parse_token(&self, s: &str) -> Result<Word> {
        let q = &self.quiver;
        if s == "e" {
            if q.num_vertices() == 1 {
                return Ok(Word::idempotent(0));
            }
            return Err(Error::Parse("bare `e` needs a single-vertex quiver".into()));
        }
        if let Some(v) = s.strip_prefix("e_") {
            return Ok(Word::idempotent(q.vertex_index(v)?));
        }
        if let Some(n) = s.strip_suffix("^-1") {
            let id = q.arrow_index(n)?;
            if !q.arrow(id).invertible {
                return Err(Error::Parse(format!("{n:?} is not invertible")));
            }
            return Ok(Word::token(q, Token::inv(id)));
        }
        Ok(Word::token(q, Token::new(q.arrow_index(s)?)))
    }

    /// Parse a word written as space separated tokens (`"x x* x"`, `"x^-1 y"`, `"e_1"`).
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let mut parts = s.split_whitespace().rev();
        let first = parts.next().ok_or_else(|| Error::Parse("empty word".into()))?;
        let mut w = self.parse_token(first)?;
        for p in parts {
            let t = self.parse_token(p)?;
            w = t
                .mul(&self.quiver, &w)
                .ok_or_else(|| Error::NotComposable(format!("{s:?}")))?;
        }
        Ok(w)
    }

    /// Parse a linear combination such as `"x x* - x* x"` or `"2 x - 1/2 e_1"`.
    /// Signs between terms must be separated by spaces; a bare number is a
    /// multiple of the unit.
    pub fn parse(self: &Arc<Self>, s: &str) -> Result<NcElement> {
        let mut out = self.zero();
        let mut coeff = Q::one();
        let mut has_coeff = false;
        let mut tokens: Vec<&str> = Vec::new();
        let mut flush = |coeff: &Q, has_coeff: bool, tokens: &mut Vec<&str>| -> Result<()> {
            if !tokens.is_empty() {
                let w = self.parse_word(&tokens.join(" "))?;
                out.add_term(w, coeff.clone());
            } else if has_coeff {
                out = &out + &self.one().scale(coeff);
            }
            tokens.clear();
            Ok(())
        };
        for part in s.split_whitespace() {
            match part {
                "+" | "-" => {
                    flush(&coeff, has_coeff, &mut tokens)?;
                    coeff = if part == "-" { -Q::one() } else { Q::one() };
                    has_coeff = false;
                }
                p if looks_like_number(p) && tokens.is_empty() => {
                    coeff *= parse_q(p)?;
                    has_coeff = true;
                }
                p => tokens.push(p),
            }
        }
        flush(&coeff, has_coeff, &mut tokens)?;
        Ok(out)
    }
}

/// An element of the path algebra: a finite linear combination of words.
#[derive(Clone)]
pub struct NcElement {
    alg: Arc<PathAlgebra>,
    terms: BTreeMap<Word, Q>,
}

impl PartialEq for NcElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same(&other.alg) && self.terms == other.terms
    }
}

impl NcElement {
    pub fn alg(&self) -> &Arc<PathAlgebra> {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<Word, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    fn check(&self, other: &NcElement) -> Result<()> {
        if self.alg.same(&other.alg) {
            Ok(())
        } else {
            Err(Error::MixedContexts)
        }
    }

    pub fn try_add(&self, other: &NcElement) -> Result<NcElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &NcElement) -> Result<NcElement> {
        self.check(other)?;
        let mut out = self.alg.zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(w) = self.alg.mul_words(a, b) {
                    out.add_term(w, ca * cb);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> NcElement {
        let mut out = self.alg.zero();
        if !c.is_zero() {
            for (w, v) in &self.terms {
                out.terms.insert(w.clone(), v * c);
            }
        }
        out
    }

    /// Degree if the element is nonzero and homogeneous.
    pub fn degree(&self) -> Option<i32> {
        let q = self.alg.quiver();
        let mut it = self.terms.keys().map(|w| w.degree(q));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn weight(&self) -> Option<i32> {
        let q = self.alg.quiver();
        let mut it = self.terms.keys().map(|w| w.weight(q));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Graded commutator `[a, b] = ab - (-1)^{|a||b|} ba`, extended bilinearly.
    pub fn commutator(&self, other: &NcElement) -> Result<NcElement> {
        self.check(other)?;
        let q = self.alg.quiver();
        let mut out = self.alg.zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = ca * cb;
                if let Some(w) = self.alg.mul_words(a, b) {
                    out.add_term(w, c.clone());
                }
                if let Some(w) = self.alg.mul_words(b, a) {
                    let s = sign((a.degree(q) * b.degree(q)) as i64);
                    out.add_term(w, -(c * s));
                }
            }
        }
        Ok(out)
    }

    /// `e_i * self * e_j` restricted to paths from `j` to `i`.
    pub fn corner(&self, i: VertexId, j: VertexId) -> NcElement {
        let mut out = self.alg.zero();
        for (w, c) in &self.terms {
            if w.target() == i && w.source() == j {
                out.terms.insert(w.clone(), c.clone());
            }
        }
        out
    }

    /// Re-express the element in another algebra whose quiver contains arrows
    /// and vertices with the same names.
    pub fn transport(&self, target: &Arc<PathAlgebra>) -> Result<NcElement> {
        let q = self.alg.quiver();
        let tq = target.quiver();
        let mut out = target.zero();
        for (w, c) in &self.terms {
            let nw = if w.is_empty() {
                Word::idempotent(tq.vertex_index(&q.vertices()[w.source()])?)
            } else {
                let toks = w
                    .tokens()
                    .iter()
                    .map(|t| {
                        let id = tq.arrow_index(&q.arrow(t.arrow).name)?;
                        Ok(Token { arrow: id, inverse: t.inverse })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Word::from_tokens(tq, &toks).ok_or_else(|| Error::NotComposable(w.label(q)))?
            };
            out.add_term(nw, c.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for NcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let q = self.alg.quiver();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            write!(f, "{}", fmt_term(c, &w.label(q), i == 0))?;
        }
        Ok(())
    }
}

impl fmt::Debug for NcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcElement({self})")
    }
}

// Operator forms panic on mixed contexts; use the `try_*` methods to get an error.
impl Add for &NcElement {
    type Output = NcElement;
    fn add(self, rhs: &NcElement) -> NcElement {
        self.try_add(rhs).expect("adding elements of different algebras")
    }
}

impl Sub for &NcElement {
    type Output = NcElement;
    fn sub(self, rhs: &NcElement) -> NcElement {
        self.try_add(&-rhs).expect("subtracting elements of different algebras")
    }
}

impl Neg for &NcElement {
    type Output = NcElement;
    fn neg(self) -> NcElement {
        self.scale(&-Q::one())
    }
}

impl Mul for &NcElement {
    type Output = NcElement;
    fn mul(self, rhs: &NcElement) -> NcElement {
        self.try_mul(rhs).expect("multiplying elements of different algebras")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::q;

    fn jordan() -> Arc<PathAlgebra> {
        PathAlgebra::new(Quiver::loops("1", &["x"]).unwrap().double().unwrap())
    }

    #[test]
    fn parse_and_print() {
        let a = jordan();
        let d = a.parse("x x* - x* x").unwrap();
        assert_eq!(d.to_string(), "x x* - x* x");
        let e = a.parse("2 x - 1/2 e_1 + x").unwrap();
        assert_eq!(e, &a.gen("x").unwrap().scale(&q(3)) - &a.one().scale(&crate::coeff::q_frac(1, 2)));
        assert!(a.parse("x y").is_err());
    }

    #[test]
    fn idempotents_multiply() {
        let a = jordan();
        let e = a.idempotent(0);
        assert_eq!(&e * &e, e);
        let x = a.gen("x").unwrap();
        assert_eq!(&e * &x, x);
        assert_eq!(&x * &a.one(), x);
    }

    #[test]
    fn mixed_contexts_are_rejected() {
        let a = jordan();
        let b = jordan();
        let x = a.gen("x").unwrap();
        let y = b.gen("x").unwrap();
        assert_eq!(x.try_mul(&y), Err(Error::MixedContexts));
        assert_ne!(x, y);
        assert_eq!(x.transport(&b).unwrap(), y);
    }

    #[test]
    fn commutator_of_odd_elements() {
        let q1 = Quiver::loops("1", &["x"])
            .unwrap()
            .adjoin_loops(&super::super::quiver::LoopFamily::new("eta", -1, 0))
            .unwrap();
        let a = PathAlgebra::new(q1);
        let eta = a.gen("eta_1").unwrap();
        let c = eta.commutator(&eta).unwrap();
        assert_eq!(c, (&eta * &eta).scale(&q(2)));
        assert_eq!(c.degree(), Some(-2));
    }
}
