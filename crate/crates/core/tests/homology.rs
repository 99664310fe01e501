use std::collections::BTreeMap;

use ncpoisson::complexes::{brst, shafarevich};
use ncpoisson::dbracket::{BracketTable, MomentMap};
use ncpoisson::homology::invariants::diagonal_ring;
use ncpoisson::homology::{
    betti_table, diagonal_check, invariant_subcomplex, is_nonzero_class, multisym_invariants, phi_psi,
    verify_decomposition, weight_slice,
};
use ncpoisson::linalg::dense;
use ncpoisson::ncalg::{PathAlgebra, Quiver};
use ncpoisson::repfun::{gl_derivations, rep_algebra, CommutativeDga, DimensionVector, Poly};
use ncpoisson::report::Status;

fn jordan() -> (BracketTable, MomentMap) {
    let a = PathAlgebra::new(Quiver::loops("1", &["x"]).unwrap().double().unwrap());
    (BracketTable::cotangent(&a).unwrap(), MomentMap::cotangent(&a).unwrap())
}

fn dims(v: &[usize]) -> DimensionVector {
    DimensionVector::new(v.to_vec()).unwrap()
}

fn koszul(n: usize) -> CommutativeDga {
    let (_, mm) = jordan();
    rep_algebra(&shafarevich(&mm).unwrap(), &dims(&[n])).unwrap()
}

fn brst_rep(n: usize) -> CommutativeDga {
    let (t, mm) = jordan();
    rep_algebra(&brst(&t, &mm).unwrap().0, &dims(&[n])).unwrap()
}

fn names(k: &CommutativeDga, ps: &[Poly]) -> Vec<String> {
    ps.iter().map(|p| k.fmt(p)).collect()
}

#[test]
fn jordan_n1_weight_two_slice() {
    let k = koszul(1);
    let s = weight_slice(&k, 2).unwrap();
    assert_eq!(names(&k, &s.bases[&0].elements), ["x_11^2", "x_11 x*_11", "x*_11^2"]);
    assert_eq!(names(&k, &s.bases[&1].elements), ["theta_1_11"]);
    assert!(s.diffs.values().all(|m| m.is_zero()));
    assert_eq!(s.betti(), BTreeMap::from([(0, 3), (1, 1)]));
}

#[test]
fn empty_slice() {
    let s = weight_slice(&koszul(2), -1).unwrap();
    assert!(s.bases.is_empty());
    assert!(s.betti().is_empty());
}

#[test]
fn ghost_slice_is_exterior_algebra() {
    let b = brst_rep(2);
    let s = weight_slice(&b, 0).unwrap();
    for k in 0..=4 {
        let binom = [1, 4, 6, 4, 1][k as usize];
        assert_eq!(s.dim(-k), binom);
    }
    assert!(s.squares_to_zero());
    let eta = |r: usize, c: usize| b.ring.gen(b.ring.index_of(&format!("eta_1_{r}{c}")).unwrap());
    // d η = -η² entrywise
    let mut want = b.ring.mul(&eta(1, 1), &eta(1, 2)).add(&b.ring.mul(&eta(1, 2), &eta(2, 2)));
    want = want.neg();
    assert_eq!(b.d(&eta(1, 2)), want);
}

#[test]
fn slices_are_complexes_with_dense_agreement() {
    for dga in [koszul(2), brst_rep(2)] {
        for w in 0..=3 {
            let s = weight_slice(&dga, w).unwrap();
            assert!(s.squares_to_zero());
            assert!(ncpoisson::homology::decomposition::euler_consistent(&s));
            for (k, m) in &s.diffs {
                if m.ncols() <= 200 && m.nrows <= 200 {
                    assert_eq!(m.rank(), dense::rank(m.to_dense()), "weight {w} degree {k}");
                }
            }
        }
    }
}

/// `dim_w` of the span of `m · [x, x*]_rs` over monomials `m` in the
/// entries of `x, x*`, computed without slices or matrices.
fn relation_span(k: &CommutativeDga, w: i32) -> usize {
    let delta = k.rep_element(&k.alg.parse("x x* - x* x").unwrap()).unwrap();
    let even: Vec<u32> = (0..k.ring.num_vars() as u32).filter(|&v| k.ring.var(v).degree == 0).collect();
    let mut ech = ncpoisson::linalg::Echelon::new();
    let mut monos = vec![Poly::one()];
    for _ in 0..w - 2 {
        let mut next = Vec::new();
        for m in &monos {
            for &v in &even {
                next.push(k.ring.mul(m, &k.ring.gen(v)));
            }
        }
        monos = next;
    }
    for m in &monos {
        for r in 0..k.n() {
            for c in 0..k.n() {
                ech.insert(k.ring.mul(m, delta.get(r, c)).terms().clone());
            }
        }
    }
    ech.rank()
}

#[test]
fn koszul_n2_betti_table() {
    let k = koszul(2);
    let t = betti_table(&k, 4).unwrap();
    let frozen = [((0, 0), 1), ((1, 0), 8), ((2, 0), 33), ((2, 1), 1), ((3, 0), 98), ((3, 1), 10), ((4, 0), 238), ((4, 1), 46), ((4, 2), 0)];
    assert_eq!(t.entries, BTreeMap::from(frozen));
    for w in 2..=4 {
        let s = weight_slice(&k, w).unwrap();
        assert_eq!(t.get(w, 0), s.dim(0) - relation_span(&k, w));
        // dense oracle on every differential of the slice
        let mut b = BTreeMap::new();
        for &d in s.bases.keys() {
            let r = |j: i32| s.diffs.get(&j).map_or(0, |m| dense::rank(m.to_dense()));
            b.insert(d, s.dim(d) - r(d) - r(d + 1));
        }
        assert_eq!(b, s.betti());
    }
}

#[test]
fn trace_invariants() {
    let k = koszul(2);
    let gl = gl_derivations(&k);
    let s1 = invariant_subcomplex(&k, &weight_slice(&k, 1).unwrap(), &gl).unwrap();
    let b = &s1.bases[&0];
    assert_eq!(b.dim(), 2);
    let tr = |s: &str| k.trace(&k.alg.parse(s).unwrap()).unwrap();
    assert!(b.spans(&tr("x")) && b.spans(&tr("x*")));
    let s2 = invariant_subcomplex(&k, &weight_slice(&k, 2).unwrap(), &gl).unwrap();
    assert!(s2.bases[&1].spans(&tr("theta_1")));
    assert!(is_nonzero_class(&s2, 1, &tr("theta_1")).unwrap());

    // GL_1 acts trivially
    let k1 = koszul(1);
    let full = weight_slice(&k1, 3).unwrap();
    let inv = invariant_subcomplex(&k1, &full, &gl_derivations(&k1)).unwrap();
    for (d, b) in &full.bases {
        assert_eq!(inv.bases[d].dim(), b.dim());
    }
}

#[test]
fn multisymmetric_examples() {
    let ring = diagonal_ring(&[("x", 0, 1), ("y", 0, 1), ("theta", 1, 2)], 2);
    let w0 = multisym_invariants(&ring, 2, 0).unwrap();
    assert_eq!(w0[&0].len(), 1);
    let w1 = multisym_invariants(&ring, 2, 1).unwrap();
    assert_eq!(w1[&0].len(), 2);
    let g = |s: &str| ring.gen(ring.index_of(s).unwrap());
    let span = |ps: &[Poly], p: &Poly| {
        let mut e = ncpoisson::linalg::Echelon::new();
        for x in ps {
            e.insert(x.terms().clone());
        }
        e.contains(p.terms().clone())
    };
    assert!(span(&w1[&0], &g("x_1").add(&g("x_2"))));
    assert!(span(&w1[&0], &g("y_1").add(&g("y_2"))));
    let w2 = multisym_invariants(&ring, 2, 2).unwrap();
    assert!(span(&w2[&1], &g("theta_1").add(&g("theta_2"))));
    // odd variables pick up signs: theta_1 theta_2 is antisymmetric under the swap
    let w4 = multisym_invariants(&ring, 2, 4).unwrap();
    assert!(!span(w4.get(&2).map_or(&[][..], |v| v), &ring.mul(&g("theta_1"), &g("theta_2"))));
}

#[test]
fn decomposition_jordan() {
    let (t, mm) = jordan();
    for (n, w) in [(1, 6), (2, 4)] {
        let d = verify_decomposition(&t, &mm, &dims(&[n]), w).unwrap();
        assert!(d.report.passed(), "{}", d.report);
    }
    // n = 1: Koszul homology is w + 1 in degree 0 and w - 1 in degree 1
    let d = verify_decomposition(&t, &mm, &dims(&[1]), 6).unwrap();
    for w in 0..=6 {
        assert_eq!(d.koszul_invariant.get(w, 0), w as usize + 1);
        assert_eq!(d.koszul_invariant.get(w, 1), (w as usize).saturating_sub(1));
    }
}

#[test]
fn decomposition_genus_two() {
    let a = PathAlgebra::new(Quiver::loops("1", &["x", "y"]).unwrap().double().unwrap());
    let (t, mm) = (BracketTable::cotangent(&a).unwrap(), MomentMap::cotangent(&a).unwrap());
    let d = verify_decomposition(&t, &mm, &dims(&[2]), 3).unwrap();
    assert!(d.report.passed(), "{}", d.report);
    assert_eq!(d.higher.status, Status::Finding);
    assert!(d.koszul_invariant.get(2, 1) >= 1);
}

#[test]
fn phi_psi_jordan() {
    let (t, mm) = jordan();
    let r = phi_psi(&t, &mm, &dims(&[2]), 4).unwrap();
    for rep in &r.reports {
        assert!(rep.passed(), "{rep}");
    }
}

#[test]
fn diagonal_jordan() {
    for n in [1, 2] {
        let r = diagonal_check(&koszul(n), 4).unwrap();
        assert_eq!(r.report.status, Status::Finding);
        if n == 1 {
            assert_eq!(r.report.failures, 0);
        }
    }
}

mod slice_properties {
    use super::*;
    use ncpoisson::homology::decomposition::euler_consistent;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn slices_are_complexes(loops in 1usize..3, n in 1usize..3, w in 0i32..4, with_ghosts: bool) {
            let names: Vec<String> = (1..=loops).map(|i| format!("x{i}")).collect();
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let a = PathAlgebra::new(Quiver::loops("1", &refs).unwrap().double().unwrap());
            let (t, mm) = (BracketTable::cotangent(&a).unwrap(), MomentMap::cotangent(&a).unwrap());
            let p = if with_ghosts { brst(&t, &mm).unwrap().0 } else { shafarevich(&mm).unwrap() };
            let dga = rep_algebra(&p, &dims(&[n])).unwrap();
            let s = weight_slice(&dga, w).unwrap();
            prop_assert!(s.squares_to_zero());
            prop_assert!(euler_consistent(&s));
            let inv = invariant_subcomplex(&dga, &s, &gl_derivations(&dga)).unwrap();
            prop_assert!(inv.squares_to_zero());
            for (k, b) in &inv.bases {
                prop_assert!(b.dim() <= s.dim(*k));
            }
        }
    }
}
