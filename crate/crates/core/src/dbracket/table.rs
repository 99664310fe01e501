//! Double brackets given by their values on pairs of arrows.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use crate::coeff::{sign, Q};
use crate::error::{Error, Result};
use crate::ncalg::{ArrowId, NcElement, PathAlgebra, TensorElement, Token, Word};

/// Values of a double bracket on ordered pairs of arrows.
///
/// Every arrow belongs to at most one free factor. A pair with no stored
/// value is obtained from the reversed pair by cyclic antisymmetry, or is
/// zero when the two arrows lie in different factors.
#[derive(Clone, Debug)]
pub struct BracketTable {
    alg: Arc<PathAlgebra>,
    entries: BTreeMap<(ArrowId, ArrowId), TensorElement>,
    factor: Vec<Option<usize>>,
}

impl BracketTable {
    pub fn new(
        alg: &Arc<PathAlgebra>,
        entries: BTreeMap<(ArrowId, ArrowId), TensorElement>,
        factor: Vec<Option<usize>>,
    ) -> Result<Self> {
        let q = alg.quiver();
        if factor.len() != q.arrows().len() {
            return Err(Error::InvalidTable("factor list does not match the arrows".into()));
        }
        for (&(g, h), v) in &entries {
            let (ga, ha) = (q.arrow(g), q.arrow(h));
            if !v.alg().same(alg) {
                return Err(Error::MixedContexts);
            }
            if v.arity() != 2 {
                return Err(Error::Arity { expected: 2, got: v.arity() });
            }
            if factor[g].is_none() || factor[h].is_none() {
                return Err(Error::InvalidTable(format!(
                    "entry ({}, {}) uses an arrow outside every factor",
                    ga.name, ha.name
                )));
            }
            if factor[g] != factor[h] && !v.is_zero() {
                return Err(Error::InvalidTable(format!(
                    "({}, {}) lie in different free factors but have a nonzero value",
                    ga.name, ha.name
                )));
            }
            if !v.is_zero() && v.degree() != Some(ga.degree + ha.degree) {
                return Err(Error::InvalidTable(format!(
                    "value of ({}, {}) is not homogeneous of degree {}",
                    ga.name,
                    ha.name,
                    ga.degree + ha.degree
                )));
            }
            // <<g, h>> lies in e_{t(h)} A e_{s(g)} ⊗ e_{t(g)} A e_{s(h)}
            for ws in v.terms().keys() {
                let ok = ws[0].target() == ha.target
                    && ws[0].source() == ga.source
                    && ws[1].target() == ga.target
                    && ws[1].source() == ha.source;
                if !ok {
                    return Err(Error::InvalidTable(format!(
                        "value of ({}, {}) is not compatible with the vertex idempotents",
                        ga.name, ha.name
                    )));
                }
            }
        }
        let t = BracketTable { alg: alg.clone(), entries, factor };
        for &(g, h) in t.entries.keys() {
            if let Some(rev) = t.entries.get(&(h, g)) {
                let derived = t.antisymmetric_partner(g, h, rev);
                if &derived != t.entries.get(&(g, h)).expect("present") {
                    return Err(Error::InvalidTable(format!(
                        "values of ({0}, {1}) and ({1}, {0}) violate cyclic antisymmetry",
                        q.arrow(g).name,
                        q.arrow(h).name
                    )));
                }
            }
        }
        Ok(t)
    }

    /// A single-factor table from named entries. Pairs not listed in either
    /// order are an error when looked up.
    pub fn from_named(alg: &Arc<PathAlgebra>, entries: Vec<(&str, &str, TensorElement)>) -> Result<Self> {
        let q = alg.quiver();
        let mut m = BTreeMap::new();
        for (g, h, v) in entries {
            m.insert((q.arrow_index(g)?, q.arrow_index(h)?), v);
        }
        BracketTable::new(alg, m, vec![Some(0); q.arrows().len()])
    }

    /// `<<a, b>> = e_{t(b)} ⊗ e_{t(a)}` for each listed pair, zero on all other
    /// pairs of the listed arrows. Arrows outside the pairs are left out of the
    /// table.
    pub fn pairing(alg: &Arc<PathAlgebra>, pairs: &[(ArrowId, ArrowId)]) -> Result<Self> {
        let q = alg.quiver();
        let mut factor = vec![None; q.arrows().len()];
        for &(a, b) in pairs {
            factor[a] = Some(0);
            factor[b] = Some(0);
        }
        let members: Vec<ArrowId> = (0..factor.len()).filter(|&i| factor[i].is_some()).collect();
        let mut m = BTreeMap::new();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i..] {
                m.insert((a, b), TensorElement::zero(alg, 2));
            }
        }
        for &(a, b) in pairs {
            let (aa, ba) = (q.arrow(a), q.arrow(b));
            if aa.source != ba.target || aa.target != ba.source {
                return Err(Error::InvalidTable(format!("{} and {} are not reverse arrows", aa.name, ba.name)));
            }
            if aa.degree + ba.degree != 0 {
                return Err(Error::InvalidTable(format!("{} and {} have degrees not summing to 0", aa.name, ba.name)));
            }
            let v = TensorElement::from_words(alg, vec![Word::idempotent(ba.target), Word::idempotent(aa.target)], Q::one());
            m.remove(&(b, a));
            m.insert((a, b), v);
        }
        BracketTable::new(alg, m, factor)
    }

    /// The standard bracket on a doubled quiver: `<<x, x*>> = e_{s(x)} ⊗ e_{t(x)}`.
    pub fn cotangent(alg: &Arc<PathAlgebra>) -> Result<Self> {
        let pairs = alg.quiver().dual_pairs()?;
        let t = BracketTable::pairing(alg, &pairs)?;
        if t.factor.iter().any(Option::is_none) {
            return Err(Error::InvalidTable("cotangent bracket needs a doubled quiver".into()));
        }
        Ok(t)
    }

    /// The bracket on a quiver of degree-0 loops `t_i`:
    /// `<<t_i, t_j>> = δ_ij (t_i ⊗ e_i - e_i ⊗ t_i)`, and `<<t_i, t'_i>> = 0` for
    /// distinct loops.
    pub fn gauge(alg: &Arc<PathAlgebra>) -> Result<Self> {
        let q = alg.quiver();
        let mut m = BTreeMap::new();
        let mut seen = vec![false; q.num_vertices()];
        for (i, a) in q.arrows().iter().enumerate() {
            if a.source != a.target || a.degree != 0 {
                return Err(Error::InvalidTable(format!("gauge bracket needs degree 0 loops, {} is not", a.name)));
            }
            if std::mem::replace(&mut seen[a.source], true) {
                return Err(Error::InvalidTable("gauge bracket needs one loop per vertex".into()));
            }
            for j in i..q.arrows().len() {
                m.insert((i, j), TensorElement::zero(alg, 2));
            }
            let v = a.source;
            let t = Word::token(q, Token::new(i));
            let e = Word::idempotent(v);
            let mut val = TensorElement::from_words(alg, vec![t.clone(), e.clone()], Q::one());
            val.add_term(vec![e, t], -Q::one());
            m.insert((i, i), val);
        }
        BracketTable::new(alg, m, vec![Some(0); q.arrows().len()])
    }

    /// Combine tables on sub-quivers into the free product bracket on `alg`:
    /// brackets between arrows from different tables vanish.
    pub fn free_product(alg: &Arc<PathAlgebra>, tables: &[&BracketTable]) -> Result<Self> {
        let q = alg.quiver();
        let mut factor = vec![None; q.arrows().len()];
        let mut m = BTreeMap::new();
        let mut offset = 0;
        for t in tables {
            let tq = t.alg.quiver();
            let remap = |i: ArrowId| q.arrow_index(&tq.arrow(i).name);
            let nf = t.factor.iter().flatten().max().map_or(0, |x| x + 1);
            for (i, f) in t.factor.iter().enumerate() {
                if let Some(f) = f {
                    let j = remap(i)?;
                    if factor[j].is_some() {
                        return Err(Error::InvalidTable(format!("{} appears in two factors", q.arrow(j).name)));
                    }
                    factor[j] = Some(offset + f);
                }
            }
            for (&(g, h), v) in &t.entries {
                m.insert((remap(g)?, remap(h)?), transport_tensor(v, alg)?);
            }
            offset += nf;
        }
        BracketTable::new(alg, m, factor)
    }

    pub fn transport(&self, alg: &Arc<PathAlgebra>) -> Result<Self> {
        BracketTable::free_product(alg, &[self])
    }

    pub fn alg(&self) -> &Arc<PathAlgebra> {
        &self.alg
    }

    pub fn entries(&self) -> &BTreeMap<(ArrowId, ArrowId), TensorElement> {
        &self.entries
    }

    pub fn factor_of(&self, a: ArrowId) -> Option<usize> {
        self.factor[a]
    }

    fn antisymmetric_partner(&self, g: ArrowId, h: ArrowId, rev: &TensorElement) -> TensorElement {
        let q = self.alg.quiver();
        let s = sign((q.arrow(g).degree * q.arrow(h).degree) as i64);
        rev.flip().scale(&-s)
    }

    /// `<<g, h>>` for arrows `g`, `h`.
    pub fn arrow_value(&self, g: ArrowId, h: ArrowId) -> Result<TensorElement> {
        if let Some(v) = self.entries.get(&(g, h)) {
            return Ok(v.clone());
        }
        if let Some(rev) = self.entries.get(&(h, g)) {
            return Ok(self.antisymmetric_partner(g, h, rev));
        }
        match (self.factor[g], self.factor[h]) {
            (Some(a), Some(b)) if a != b => Ok(TensorElement::zero(&self.alg, 2)),
            _ => {
                let q = self.alg.quiver();
                Err(Error::MissingEntry(q.arrow(g).name.clone(), q.arrow(h).name.clone()))
            }
        }
    }

    /// `<<g, h>>` for arrows or inverse arrows, using
    /// `<<a, x^-1>> = -x^-1 · <<a, x>> · x^-1` and
    /// `<<x^-1, c>> = -x^-1 * <<x, c>> * x^-1`.
    pub fn token_value(&self, g: Token, h: Token) -> Result<TensorElement> {
        if h.inverse {
            let xi = self.alg.token_word(h);
            let inner = self.token_value(g, Token::new(h.arrow))?;
            return Ok(outer_right(&outer_left(&xi, &inner), &xi).scale(&-Q::one()));
        }
        if g.inverse {
            let xi = self.alg.token_word(g);
            let inner = self.token_value(Token::new(g.arrow), h)?;
            return Ok(inner_right(&inner_left(&xi, &inner), &xi).scale(&-Q::one()));
        }
        self.arrow_value(g.arrow, h.arrow)
    }

    /// Double bracket of two words.
    pub fn bracket_words(&self, u: &Word, v: &Word) -> Result<TensorElement> {
        let q = self.alg.quiver();
        if u.is_empty() || v.is_empty() {
            return Ok(TensorElement::zero(&self.alg, 2));
        }
        if v.len() > 1 {
            // <<u, g r>> = <<u, g>> r + (-1)^{|u||g|} g <<u, r>>
            let (g, r) = v.split_first(q).expect("nonempty");
            let a = outer_right(&self.bracket_words(u, &g)?, &r);
            let b = outer_left(&g, &self.bracket_words(u, &r)?);
            let s = sign((u.degree(q) * g.degree(q)) as i64);
            let mut out = a;
            out.add_scaled(&b, &s);
            return Ok(out);
        }
        if u.len() > 1 {
            // <<f h, v>> = f * <<h, v>> + (-1)^{|h||v|} <<f, v>> * h
            let (f, h) = u.split_last(q).expect("nonempty");
            let a = inner_left(&f, &self.bracket_words(&h, v)?);
            let b = inner_right(&self.bracket_words(&f, v)?, &h);
            let s = sign((h.degree(q) * v.degree(q)) as i64);
            let mut out = a;
            out.add_scaled(&b, &s);
            return Ok(out);
        }
        self.token_value(u.tokens()[0], v.tokens()[0])
    }

    pub fn bracket(&self, a: &NcElement, b: &NcElement) -> Result<TensorElement> {
        if !a.alg().same(&self.alg) || !b.alg().same(&self.alg) {
            return Err(Error::MixedContexts);
        }
        let mut out = TensorElement::zero(&self.alg, 2);
        for (u, cu) in a.terms() {
            for (v, cv) in b.terms() {
                out.add_scaled(&self.bracket_words(u, v)?, &(cu * cv));
            }
        }
        Ok(out)
    }

    /// `<<a, u_1 ⊗ u_2 ⊗ ..>>_L = <<a, u_1>> ⊗ u_2 ⊗ ..`.
    pub fn bracket_left(&self, a: &NcElement, t: &TensorElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero(&self.alg, t.arity() + 1);
        for (ws, c) in t.terms() {
            let first = self.alg.word(ws[0].clone());
            let b = self.bracket(a, &first)?;
            for (bw, bc) in b.terms() {
                let mut nw = bw.clone();
                nw.extend_from_slice(&ws[1..]);
                out.add_term(nw, c * bc);
            }
        }
        Ok(out)
    }

    fn triple_words(&self, a: &Word, b: &Word, c: &Word) -> Result<TensorElement> {
        let q = self.alg.quiver();
        let (da, db, dc) = (a.degree(q) as i64, b.degree(q) as i64, c.degree(q) as i64);
        let (ea, eb, ec) = (self.alg.word(a.clone()), self.alg.word(b.clone()), self.alg.word(c.clone()));
        let t1 = self.bracket_left(&ea, &self.bracket(&eb, &ec)?)?;
        let t2 = self
            .bracket_left(&eb, &self.bracket(&ec, &ea)?)?
            .permute(&crate::ncalg::Perm::cycle(3, &[0, 1, 2])?)?;
        let t3 = self
            .bracket_left(&ec, &self.bracket(&ea, &eb)?)?
            .permute(&crate::ncalg::Perm::cycle(3, &[0, 2, 1])?)?;
        let mut out = t1;
        out.add_scaled(&t2, &sign(da * (db + dc)));
        out.add_scaled(&t3, &sign(dc * (da + db)));
        Ok(out)
    }

    /// The triple bracket
    /// `<<a,<<b,c>>>>_L + ± τ_(123) <<b,<<c,a>>>>_L + ± τ_(132) <<c,<<a,b>>>>_L`.
    pub fn triple(&self, a: &NcElement, b: &NcElement, c: &NcElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero(&self.alg, 3);
        for (u, cu) in a.terms() {
            for (v, cv) in b.terms() {
                for (w, cw) in c.terms() {
                    out.add_scaled(&self.triple_words(u, v, w)?, &(cu * cv * cw));
                }
            }
        }
        Ok(out)
    }

    /// The associated single bracket `{a, b} = m <<a, b>>`.
    pub fn single(&self, a: &NcElement, b: &NcElement) -> Result<NcElement> {
        self.bracket(a, b)?.multiply()
    }

    /// `{a, -}` applied to every factor of a tensor with the Koszul sign.
    pub fn single_on_tensor(&self, a: &NcElement, t: &TensorElement) -> Result<TensorElement> {
        let q = self.alg.quiver();
        let da = a.degree().unwrap_or(0) as i64;
        if a.degree().is_none() && !a.is_zero() {
            return Err(Error::NotHomogeneous(a.to_string()));
        }
        let mut out = TensorElement::zero(&self.alg, t.arity());
        for (ws, c) in t.terms() {
            let mut before = 0i64;
            for i in 0..ws.len() {
                let s = c * sign(da * before);
                let val = self.single(a, &self.alg.word(ws[i].clone()))?;
                for (w, vc) in val.terms() {
                    let mut nw = ws.clone();
                    nw[i] = w.clone();
                    out.add_term(nw, &s * vc);
                }
                before += ws[i].degree(q) as i64;
            }
        }
        Ok(out)
    }
}

fn transport_tensor(t: &TensorElement, alg: &Arc<PathAlgebra>) -> Result<TensorElement> {
    let mut out = TensorElement::zero(alg, t.arity());
    for (ws, c) in t.terms() {
        let mut acc = TensorElement::from_words(alg, vec![], c.clone());
        for w in ws {
            let e = t.alg().word(w.clone()).transport(alg)?;
            acc = acc.tensor_right(&e);
        }
        out.add_assign(&acc);
    }
    Ok(out)
}

/// Outer action `b · (u ⊗ v) = bu ⊗ v`.
pub fn outer_left(b: &Word, t: &TensorElement) -> TensorElement {
    let alg = t.alg();
    let mut out = TensorElement::zero(alg, 2);
    for (ws, c) in t.terms() {
        if let Some(p) = alg.mul_words(b, &ws[0]) {
            out.add_term(vec![p, ws[1].clone()], c.clone());
        }
    }
    out
}

/// Outer action `(u ⊗ v) · c = u ⊗ vc`.
pub fn outer_right(t: &TensorElement, c: &Word) -> TensorElement {
    let alg = t.alg();
    let mut out = TensorElement::zero(alg, 2);
    for (ws, k) in t.terms() {
        if let Some(p) = alg.mul_words(&ws[1], c) {
            out.add_term(vec![ws[0].clone(), p], k.clone());
        }
    }
    out
}

/// Inner action `a * (u ⊗ v) = (-1)^{|a||u|} u ⊗ av`.
pub fn inner_left(a: &Word, t: &TensorElement) -> TensorElement {
    let alg = t.alg();
    let q = alg.quiver();
    let da = a.degree(q) as i64;
    let mut out = TensorElement::zero(alg, 2);
    for (ws, c) in t.terms() {
        if let Some(p) = alg.mul_words(a, &ws[1]) {
            out.add_term(vec![ws[0].clone(), p], c * sign(da * ws[0].degree(q) as i64));
        }
    }
    out
}

/// Inner action `(u ⊗ v) * b = (-1)^{|b||v|} ub ⊗ v`.
pub fn inner_right(t: &TensorElement, b: &Word) -> TensorElement {
    let alg = t.alg();
    let q = alg.quiver();
    let db = b.degree(q) as i64;
    let mut out = TensorElement::zero(alg, 2);
    for (ws, c) in t.terms() {
        if let Some(p) = alg.mul_words(&ws[0], b) {
            out.add_term(vec![p, ws[1].clone()], c * sign(db * ws[1].degree(q) as i64));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::Quiver;

    fn jordan() -> (Arc<PathAlgebra>, BracketTable) {
        let a = PathAlgebra::new(Quiver::loops("1", &["x"]).unwrap().double().unwrap());
        let t = BracketTable::cotangent(&a).unwrap();
        (a, t)
    }

    fn t2(a: &Arc<PathAlgebra>, l: &str, r: &str) -> TensorElement {
        TensorElement::product(&[&a.parse(l).unwrap(), &a.parse(r).unwrap()]).unwrap()
    }

    #[test]
    fn cotangent_values() {
        let (a, t) = jordan();
        let x = a.gen("x").unwrap();
        let xs = a.gen("x*").unwrap();
        assert_eq!(t.bracket(&x, &xs).unwrap(), t2(&a, "e", "e"));
        assert_eq!(t.bracket(&xs, &x).unwrap(), t2(&a, "e", "e").scale(&-Q::one()));
        assert!(t.bracket(&x, &x).unwrap().is_zero());
        assert!(t.bracket(&a.one(), &x).unwrap().is_zero());
    }

    /// <<[x, x*], x>> expanded by hand with the two Leibniz rules:
    /// <<x x*, x>> = x * <<x*, x>> = -(e ⊗ x) and <<x* x, x>> = <<x*, x>> * x = -(x ⊗ e).
    #[test]
    fn commutator_bracket_by_hand() {
        let (a, t) = jordan();
        let d = a.parse("x x* - x* x").unwrap();
        let x = a.gen("x").unwrap();
        let expect = &t2(&a, "x", "e") - &t2(&a, "e", "x");
        assert_eq!(t.bracket(&d, &x).unwrap(), expect);
    }

    #[test]
    fn missing_entries_error() {
        let a = PathAlgebra::new(Quiver::loops("1", &["x", "y"]).unwrap());
        let t = BracketTable::from_named(&a, vec![("x", "y", t2(&a, "e", "e"))]).unwrap();
        let x = a.gen("x").unwrap();
        assert!(matches!(t.bracket(&x, &x), Err(Error::MissingEntry(_, _))));
        assert_eq!(t.bracket(&a.gen("y").unwrap(), &x).unwrap(), t2(&a, "e", "e").scale(&-Q::one()));
    }

    #[test]
    fn rejects_inconsistent_tables() {
        let a = PathAlgebra::new(Quiver::loops("1", &["x", "y"]).unwrap());
        let bad = BracketTable::from_named(&a, vec![("x", "y", t2(&a, "e", "e")), ("y", "x", t2(&a, "e", "e"))]);
        assert!(matches!(bad, Err(Error::InvalidTable(_))));
        let arrow = |n: &str, s, t| crate::ncalg::Arrow { name: n.into(), source: s, target: t, degree: 0, weight: 1, invertible: false };
        let q = Quiver::new(vec!["1".into(), "2".into()], vec![arrow("a", 0, 1), arrow("b", 1, 0)]).unwrap();
        let a = PathAlgebra::new(q);
        let good = t2(&a, "e_1", "e_2");
        assert!(BracketTable::from_named(&a, vec![("a", "b", good)]).is_ok());
        let bad = BracketTable::from_named(&a, vec![("a", "b", t2(&a, "e_1", "e_1"))]);
        assert!(matches!(bad, Err(Error::InvalidTable(_))));
    }

    #[test]
    fn laurent_inverse_values() {
        let a = PathAlgebra::new(Quiver::loops("1", &["x", "y"]).unwrap().localize(&["x"]).unwrap());
        let t = BracketTable::from_named(
            &a,
            vec![
                ("x", "x", TensorElement::zero(&a, 2)),
                ("x", "y", t2(&a, "e", "e")),
                ("y", "y", TensorElement::zero(&a, 2)),
            ],
        )
        .unwrap();
        let xi = a.inverse("x").unwrap();
        let y = a.gen("y").unwrap();
        // <<x^-1, y>> = -x^-1 * (e ⊗ e) * x^-1 = -(x^-1 ⊗ x^-1)
        assert_eq!(t.bracket(&xi, &y).unwrap(), t2(&a, "x^-1", "x^-1").scale(&-Q::one()));
        // x x^-1 = e has zero bracket with everything
        let xxi = &a.gen("x").unwrap() * &xi;
        assert!(t.bracket(&xxi, &y).unwrap().is_zero());
    }
}
