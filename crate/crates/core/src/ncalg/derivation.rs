//! Super-derivations and algebra maps determined by their values on arrows.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use super::algebra::{NcElement, PathAlgebra};
use super::quiver::ArrowId;
use super::tensor::TensorElement;
use super::word::{Token, Word};
use crate::coeff::sign;
use crate::error::{Error, Result};

/// A super-derivation `D` of degree `p`:
/// `D(ab) = D(a) b + (-1)^{p|a|} a D(b)`, `D(e_i) = 0`.
#[derive(Clone, Debug)]
pub struct Derivation {
    alg: Arc<PathAlgebra>,
    degree: i32,
    images: Vec<NcElement>,
}

impl Derivation {
    /// Arrows missing from `images` are sent to zero. Every image must be
    /// homogeneous of degree `|g| + p` and lie in `e_{t(g)} A e_{s(g)}`.
    pub fn new(alg: &Arc<PathAlgebra>, degree: i32, images: BTreeMap<ArrowId, NcElement>) -> Result<Self> {
        let q = alg.quiver();
        let mut v = vec![alg.zero(); q.arrows().len()];
        for (id, img) in images {
            if id >= v.len() {
                return Err(Error::InvalidDifferential(format!("no arrow with index {id}")));
            }
            if !img.alg().same(alg) {
                return Err(Error::MixedContexts);
            }
            let a = q.arrow(id);
            if !img.is_zero() {
                if img.degree() != Some(a.degree + degree) {
                    return Err(Error::InvalidDifferential(format!(
                        "image of {} has degree {:?}, expected {}",
                        a.name,
                        img.degree(),
                        a.degree + degree
                    )));
                }
                if img.corner(a.target, a.source) != img {
                    return Err(Error::InvalidDifferential(format!(
                        "image of {} is not a path from {} to {}",
                        a.name,
                        q.vertices()[a.source],
                        q.vertices()[a.target]
                    )));
                }
            }
            v[id] = img;
        }
        Ok(Derivation { alg: alg.clone(), degree, images: v })
    }

    pub fn from_names(alg: &Arc<PathAlgebra>, degree: i32, images: &[(&str, &str)]) -> Result<Self> {
        let mut m = BTreeMap::new();
        for (g, img) in images {
            m.insert(alg.quiver().arrow_index(g)?, alg.parse(img)?);
        }
        Derivation::new(alg, degree, m)
    }

    pub fn zero(alg: &Arc<PathAlgebra>, degree: i32) -> Self {
        Derivation { alg: alg.clone(), degree, images: vec![alg.zero(); alg.quiver().arrows().len()] }
    }

    pub fn alg(&self) -> &Arc<PathAlgebra> {
        &self.alg
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn image(&self, id: ArrowId) -> &NcElement {
        &self.images[id]
    }

    pub fn images(&self) -> &[NcElement] {
        &self.images
    }

    fn apply_token(&self, t: Token) -> NcElement {
        let img = &self.images[t.arrow];
        if !t.inverse {
            return img.clone();
        }
        // D(x^-1) = -x^-1 D(x) x^-1 for x of degree 0
        let xi = self.alg.word(self.alg.token_word(t));
        -&(&(&xi * img) * &xi)
    }

    pub fn apply_word(&self, w: &Word) -> NcElement {
        let q = self.alg.quiver();
        let mut out = self.alg.zero();
        let mut prefix_degree = 0i64;
        for (i, t) in w.tokens().iter().enumerate() {
            let dt = self.apply_token(*t);
            if !dt.is_zero() {
                let pre = self.alg.word(w.sub(q, 0, i));
                let post = self.alg.word(w.sub(q, i + 1, w.len()));
                let term = &(&pre * &dt) * &post;
                out = &out + &term.scale(&sign(self.degree as i64 * prefix_degree));
            }
            prefix_degree += t.degree(q) as i64;
        }
        out
    }

    pub fn apply(&self, e: &NcElement) -> Result<NcElement> {
        if !e.alg().same(&self.alg) {
            return Err(Error::MixedContexts);
        }
        let mut out = self.alg.zero();
        for (w, c) in e.terms() {
            out = &out + &self.apply_word(w).scale(c);
        }
        Ok(out)
    }

    /// Extension to tensors: `D(u ⊗ v) = Du ⊗ v + (-1)^{p|u|} u ⊗ Dv`.
    pub fn apply_tensor(&self, t: &TensorElement) -> Result<TensorElement> {
        let q = self.alg.quiver();
        let mut out = TensorElement::zero(&self.alg, t.arity());
        for (ws, c) in t.terms() {
            let mut before = 0i64;
            for i in 0..ws.len() {
                let d = self.apply_word(&ws[i]);
                let s = c * sign(self.degree as i64 * before);
                for (w, dc) in d.terms() {
                    let mut nw = ws.clone();
                    nw[i] = w.clone();
                    out.add_term(nw, &s * dc);
                }
                before += ws[i].degree(q) as i64;
            }
        }
        Ok(out)
    }

    /// Graded commutator `[D, E] = DE - (-1)^{pq} ED` evaluated on an element.
    pub fn commutator_on(&self, other: &Derivation, e: &NcElement) -> Result<NcElement> {
        let de = self.apply(&other.apply(e)?)?;
        let ed = other.apply(&self.apply(e)?)?;
        let s = sign((self.degree * other.degree) as i64);
        Ok(&de - &ed.scale(&s))
    }
}

/// A degree-preserving algebra map given on arrows, sending idempotents to
/// idempotents with the same label.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    source: Arc<PathAlgebra>,
    target: Arc<PathAlgebra>,
    vertex_map: Vec<usize>,
    images: Vec<NcElement>,
}

impl AlgebraMap {
    pub fn new(
        source: &Arc<PathAlgebra>,
        target: &Arc<PathAlgebra>,
        images: BTreeMap<ArrowId, NcElement>,
    ) -> Result<Self> {
        let sq = source.quiver();
        let tq = target.quiver();
        let vertex_map = sq
            .vertices()
            .iter()
            .map(|v| tq.vertex_index(v))
            .collect::<Result<Vec<_>>>()?;
        let mut v = Vec::with_capacity(sq.arrows().len());
        for id in 0..sq.arrows().len() {
            let img = images
                .get(&id)
                .cloned()
                .ok_or_else(|| Error::Unknown(format!("no image for {}", sq.arrow(id).name)))?;
            if !img.alg().same(target) {
                return Err(Error::MixedContexts);
            }
            v.push(img);
        }
        Ok(AlgebraMap { source: source.clone(), target: target.clone(), vertex_map, images: v })
    }

    /// The map sending each arrow to the same-named arrow of `target`, except
    /// the listed arrows which are sent to zero.
    pub fn by_name_killing(source: &Arc<PathAlgebra>, target: &Arc<PathAlgebra>, killed: &[ArrowId]) -> Result<Self> {
        let mut m = BTreeMap::new();
        for (id, a) in source.quiver().arrows().iter().enumerate() {
            let img = if killed.contains(&id) { target.zero() } else { target.gen(&a.name)? };
            m.insert(id, img);
        }
        AlgebraMap::new(source, target, m)
    }

    pub fn apply_word(&self, w: &Word) -> Result<NcElement> {
        if w.is_empty() {
            return Ok(self.target.idempotent(self.vertex_map[w.source()]));
        }
        let mut acc = self.target.idempotent(self.vertex_map[w.target()]);
        for t in w.tokens() {
            let img = if t.inverse {
                let im = &self.images[t.arrow];
                let single = im.terms().len() == 1
                    && im.terms().iter().all(|(w, c)| w.len() == 1 && c.is_one() && !w.tokens()[0].inverse);
                if !single {
                    return Err(Error::Unsupported("image of an inverted arrow is not an arrow".into()));
                }
                let (w, _) = im.terms().iter().next().expect("one term");
                let tok = Token::inv(w.tokens()[0].arrow);
                if !self.target.quiver().arrow(tok.arrow).invertible {
                    return Err(Error::Unsupported("image of an inverted arrow is not invertible".into()));
                }
                self.target.word(self.target.token_word(tok))
            } else {
                self.images[t.arrow].clone()
            };
            acc = &acc * &img;
        }
        Ok(acc)
    }

    pub fn apply(&self, e: &NcElement) -> Result<NcElement> {
        if !e.alg().same(&self.source) {
            return Err(Error::MixedContexts);
        }
        let mut out = self.target.zero();
        for (w, c) in e.terms() {
            out = &out + &self.apply_word(w)?.scale(c);
        }
        Ok(out)
    }

    pub fn target(&self) -> &Arc<PathAlgebra> {
        &self.target
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::quiver::{LoopFamily, Quiver};

    #[test]
    fn odd_derivation_leibniz_sign() {
        let q = Quiver::loops("1", &["t"]).unwrap().adjoin_loops(&LoopFamily::new("th", 1, 1)).unwrap();
        let a = PathAlgebra::new(q);
        let d = Derivation::from_names(&a, -1, &[("th_1", "t")]).unwrap();
        let w = a.parse("th_1 th_1").unwrap();
        assert_eq!(d.apply(&w).unwrap(), a.parse("t th_1 - th_1 t").unwrap());
        let w = a.parse("t th_1").unwrap();
        assert_eq!(d.apply(&w).unwrap(), a.parse("t t").unwrap());
    }

    #[test]
    fn rejects_wrong_degree() {
        let a = PathAlgebra::new(Quiver::loops("1", &["x"]).unwrap());
        assert!(Derivation::from_names(&a, -1, &[("x", "x")]).is_err());
    }

    #[test]
    fn inverse_tokens() {
        let q = Quiver::loops("1", &["x", "y"]).unwrap().localize(&["x"]).unwrap();
        let a = PathAlgebra::new(q);
        let d = Derivation::from_names(&a, 0, &[("x", "x y")]).unwrap();
        let xi = a.inverse("x").unwrap();
        // D(x x^-1) = 0
        let lhs = &(&d.apply(&a.gen("x").unwrap()).unwrap() * &xi) + &(&a.gen("x").unwrap() * &d.apply(&xi).unwrap());
        assert!(lhs.is_zero());
        assert_eq!(d.apply(&xi).unwrap(), a.parse("- y x^-1").unwrap());
    }

    #[test]
    fn killing_map() {
        let q = Quiver::loops("1", &["x"]).unwrap().adjoin_loops(&LoopFamily::new("eta", -1, 0)).unwrap();
        let big = PathAlgebra::new(q);
        let small = PathAlgebra::new(Quiver::loops("1", &["x"]).unwrap());
        let eta = big.quiver().arrow_index("eta_1").unwrap();
        let ev = AlgebraMap::by_name_killing(&big, &small, &[eta]).unwrap();
        let w = big.parse("x eta_1 x + x x").unwrap();
        assert_eq!(ev.apply(&w).unwrap(), small.parse("x x").unwrap());
        assert!(AlgebraMap::by_name_killing(&big, &small, &[]).is_err());
    }
}
