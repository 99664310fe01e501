//! Poisson brackets on super-polynomial rings given on pairs of variables.

use std::collections::HashMap;

use super::poly::{Mono, Poly, Ring, VarId};
use crate::coeff::sign;

#[derive(Clone, Debug, Default)]
pub struct PoissonTable {
    num_vars: usize,
    values: HashMap<(VarId, VarId), Poly>,
    /// For each variable, the variables it has a nonzero bracket with.
    partners: Vec<Vec<VarId>>,
}

impl PoissonTable {
    pub fn new(num_vars: usize) -> Self {
        PoissonTable { num_vars, values: HashMap::new(), partners: vec![Vec::new(); num_vars] }
    }

    pub fn set(&mut self, a: VarId, b: VarId, v: Poly) {
        let list = &mut self.partners[a as usize];
        list.retain(|&x| x != b);
        if v.is_zero() {
            self.values.remove(&(a, b));
        } else {
            list.push(b);
            list.sort_unstable();
            self.values.insert((a, b), v);
        }
    }

    pub fn get(&self, a: VarId, b: VarId) -> Poly {
        self.values.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// `{f, g} = sum_{i,j} (f ∂⃖_i) {v_i, v_j} (∂⃗_j g)`, the graded biderivation
    /// extension of the values on variables.
    pub fn bracket(&self, ring: &Ring, f: &Poly, g: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (mf, cf) in f.terms() {
            for (vi, _) in &mf.0 {
                if self.partners[*vi as usize].is_empty() {
                    continue;
                }
                let (fi, ci) = ring.right_derivative(mf, *vi).expect("present");
                for (mg, cg) in g.terms() {
                    for (vj, _) in &mg.0 {
                        let Some(val) = self.values.get(&(*vi, *vj)) else { continue };
                        let (gj, cj) = ring.left_derivative(mg, *vj).expect("present");
                        let left = ring.mul_mono_poly(&fi, &(cf * &ci), val);
                        out.add_assign(&ring.mul_poly_mono(&left, &gj, &(cg * &cj)));
                    }
                }
            }
        }
        out
    }

    /// The same bracket computed by splitting monomials and applying the
    /// Leibniz rules one factor at a time. Slower; used to cross-check.
    pub fn bracket_by_leibniz(&self, ring: &Ring, f: &Poly, g: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (mf, cf) in f.terms() {
            for (mg, cg) in g.terms() {
                let b = self.bracket_monos(ring, mf, mg);
                out.add_scaled(&b, &(cf * cg));
            }
        }
        out
    }

    fn split_first(m: &Mono) -> (Mono, Mono) {
        let (v, e) = m.0[0];
        let mut rest = m.0.clone();
        if e == 1 {
            rest.remove(0);
        } else {
            rest[0].1 = e - 1;
        }
        (Mono::var(v), Mono(rest))
    }

    fn bracket_monos(&self, ring: &Ring, a: &Mono, b: &Mono) -> Poly {
        if a.0.is_empty() || b.0.is_empty() {
            return Poly::zero();
        }
        let one = crate::Q::from_integer(1.into());
        if a.0.iter().chain(&b.0).any(|(_, e)| *e < 0) {
            // Laurent monomials: fall back to derivatives
            return self.bracket(ring, &Poly::term(a.clone(), one.clone()), &Poly::term(b.clone(), one));
        }
        if b.0.len() > 1 || b.0[0].1 != 1 {
            // {a, g h} = {a, g} h + (-1)^{|a||g|} g {a, h}
            let (g, h) = Self::split_first(b);
            let first = ring.mul_poly_mono(&self.bracket_monos(ring, a, &g), &h, &one);
            let s = sign(ring.mono_degree(a) as i64 * ring.mono_degree(&g) as i64);
            let second = ring.mul_mono_poly(&g, &s, &self.bracket_monos(ring, a, &h));
            return first.add(&second);
        }
        if a.0.len() > 1 || a.0[0].1 != 1 {
            // {f g, c} = f {g, c} + (-1)^{|g||c|} {f, c} g, with a = f g
            let (f, g) = Self::split_first(a);
            let first = ring.mul_mono_poly(&f, &one, &self.bracket_monos(ring, &g, b));
            let s = sign(ring.mono_degree(&g) as i64 * ring.mono_degree(b) as i64);
            let second = ring.mul_poly_mono(&self.bracket_monos(ring, &f, b), &g, &s);
            return first.add(&second);
        }
        self.get(a.0[0].0, b.0[0].0)
    }
}
