//! Moment maps: elements `δ_i ∈ e_i A e_i` with `<<δ_i, a>> = a e_i ⊗ e_i - e_i ⊗ e_i a`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use num_traits::One;

use super::table::BracketTable;
use super::verify::{generator_tokens, random_word};
use crate::coeff::Q;
use crate::error::{Error, Result};
use crate::ncalg::{NcElement, PathAlgebra, TensorElement, Word};
use crate::report::CheckReport;
use std::sync::Arc;

/// One moment map component per vertex.
#[derive(Clone, Debug)]
pub struct MomentMap {
    pub components: Vec<NcElement>,
}

impl MomentMap {
    pub fn new(alg: &Arc<PathAlgebra>, components: Vec<NcElement>) -> Result<Self> {
        if components.len() != alg.num_vertices() {
            return Err(Error::Arity { expected: alg.num_vertices(), got: components.len() });
        }
        for (i, d) in components.iter().enumerate() {
            if !d.alg().same(alg) {
                return Err(Error::MixedContexts);
            }
            if d.corner(i, i) != *d {
                return Err(Error::CheckFailed(format!("moment component {i} is not in e_i A e_i")));
            }
        }
        Ok(MomentMap { components })
    }

    /// `δ_i = e_i (sum_x [x, x*]) e_i` on a doubled quiver.
    pub fn cotangent(alg: &Arc<PathAlgebra>) -> Result<Self> {
        let mut total = alg.zero();
        for (x, xs) in alg.quiver().dual_pairs()? {
            total = &total + &alg.arrow(x).commutator(&alg.arrow(xs))?;
        }
        let comps = (0..alg.num_vertices()).map(|i| total.corner(i, i)).collect();
        MomentMap::new(alg, comps)
    }

    /// `δ_i = t_i` for a quiver with one degree-0 loop per vertex.
    pub fn gauge(alg: &Arc<PathAlgebra>) -> Result<Self> {
        let q = alg.quiver();
        let mut comps = vec![alg.zero(); q.num_vertices()];
        for (i, a) in q.arrows().iter().enumerate() {
            comps[a.source] = alg.arrow(i);
        }
        MomentMap::new(alg, comps)
    }

    pub fn total(&self) -> NcElement {
        let mut it = self.components.iter();
        let first = it.next().expect("at least one vertex").clone();
        it.fold(first, |acc, d| &acc + d)
    }

    pub fn transport(&self, alg: &Arc<PathAlgebra>) -> Result<Self> {
        let comps = self.components.iter().map(|d| d.transport(alg)).collect::<Result<Vec<_>>>()?;
        MomentMap::new(alg, comps)
    }
}

/// `w e_i ⊗ e_i - e_i ⊗ e_i w`.
pub fn hamiltonian_target(alg: &Arc<PathAlgebra>, i: usize, w: &Word) -> TensorElement {
    let e = Word::idempotent(i);
    let mut out = TensorElement::zero(alg, 2);
    if w.source() == i {
        out.add_term(vec![w.clone(), e.clone()], Q::one());
    }
    if w.target() == i {
        out.add_term(vec![e, w.clone()], -Q::one());
    }
    out
}

/// Check `<<δ_i, g>> = g e_i ⊗ e_i - e_i ⊗ e_i g` for every vertex and every
/// generator, plus seeded random words up to length 3.
pub fn check_hamiltonian(t: &BracketTable, mm: &MomentMap, seed: u64) -> Result<CheckReport> {
    let alg = t.alg().clone();
    let q = alg.quiver();
    let mut words: Vec<Word> = generator_tokens(&alg).into_iter().map(|g| alg.token_word(g)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10 {
        if let Some(w) = random_word(&alg, &mut rng, 3) {
            words.push(w);
        }
    }
    let mut r = CheckReport::new("moment map");
    for (i, d) in mm.components.iter().enumerate() {
        for w in &words {
            let got = t.bracket(d, &alg.word(w.clone()))?;
            let want = hamiltonian_target(&alg, i, w);
            r.case(got == want, || {
                format!("vertex {}, generator {}: got {got}, expected {want}", q.vertices()[i], w.label(q))
            });
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::Quiver;

    #[test]
    fn jordan_moment_map() {
        let a = PathAlgebra::new(Quiver::loops("1", &["x"]).unwrap().double().unwrap());
        let t = BracketTable::cotangent(&a).unwrap();
        let mm = MomentMap::cotangent(&a).unwrap();
        assert_eq!(mm.components[0], a.parse("x x* - x* x").unwrap());
        assert!(check_hamiltonian(&t, &mm, 1).unwrap().passed());
    }

    #[test]
    fn wrong_moment_map_names_a_witness() {
        let a = PathAlgebra::new(Quiver::loops("1", &["x"]).unwrap().double().unwrap());
        let t = BracketTable::cotangent(&a).unwrap();
        let mm = MomentMap::new(&a, vec![a.gen("x").unwrap()]).unwrap();
        let r = check_hamiltonian(&t, &mm, 1).unwrap();
        assert!(!r.passed());
        assert!(r.witness.unwrap().contains("generator x"));
    }
}
