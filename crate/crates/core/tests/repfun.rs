use std::sync::Arc;

use ncpoisson::complexes::{brst, DgaPresentation};
use ncpoisson::dbracket::{BracketTable, MomentMap};
use ncpoisson::ncalg::{Arrow, PathAlgebra, Quiver};
use ncpoisson::repfun::{check_rep_laws, gl_derivations, rep_algebra, DimensionVector, LawSampling, Poly};
use ncpoisson::coeff::q;
use proptest::prelude::*;

fn jordan_brst() -> DgaPresentation {
    let a = PathAlgebra::new(Quiver::loops("1", &["x"]).unwrap().double().unwrap());
    let t = BracketTable::cotangent(&a).unwrap();
    let mm = MomentMap::cotangent(&a).unwrap();
    brst(&t, &mm).unwrap().0
}

fn star_brst() -> DgaPresentation {
    let arrow = Arrow { name: "a".into(), source: 1, target: 0, degree: 0, weight: 1, invertible: false };
    let q = Quiver::new(vec!["0".into(), "1".into()], vec![arrow]).unwrap();
    let a = PathAlgebra::new(q.double().unwrap());
    brst(&BracketTable::cotangent(&a).unwrap(), &MomentMap::cotangent(&a).unwrap()).unwrap().0
}

fn gauge_trivial(n: usize) -> (Arc<PathAlgebra>, ncpoisson::repfun::CommutativeDga) {
    let a = PathAlgebra::new(Quiver::loops("1", &["t"]).unwrap());
    let mut p = DgaPresentation::trivial(&a);
    p.table = Some(BracketTable::gauge(&a).unwrap());
    let dga = rep_algebra(&p, &DimensionVector::new(vec![n]).unwrap()).unwrap();
    (a, dga)
}

fn assert_laws(p: &DgaPresentation, dims: Vec<usize>) {
    let dga = rep_algebra(p, &DimensionVector::new(dims).unwrap()).unwrap();
    for r in check_rep_laws(p, &dga, &LawSampling::default()).unwrap() {
        assert!(r.passed(), "{r}");
        assert!(r.cases > 0, "{r}");
    }
}

#[test]
fn jordan_brst_rep_laws() {
    let p = jordan_brst();
    assert_laws(&p, vec![1]);
    assert_laws(&p, vec![2]);
}

#[test]
fn star_brst_rep_laws() {
    let p = star_brst();
    assert_laws(&p, vec![1, 1]);
    assert_laws(&p, vec![1, 2]);
}

#[test]
fn jordan_rep_differential() {
    let p = jordan_brst();
    let dga = rep_algebra(&p, &DimensionVector::new(vec![1]).unwrap()).unwrap();
    let r = &dga.ring;
    let v = |s: &str| r.gen(r.index_of(s).unwrap());
    // at n = 1 the commutators vanish and d(theta) = 0
    assert!(dga.d(&v("x_11")).is_zero());
    assert!(dga.d(&v("theta_1_11")).is_zero());
    // eta is odd, so eta^2 = 0
    assert!(dga.d(&v("eta_1_11")).is_zero());
}

#[test]
fn gauge_bracket_is_matrix_commutator() {
    let (a, dga) = gauge_trivial(2);
    let r = &dga.ring;
    let ti = a.quiver().arrow_index("t").unwrap();
    let t = |i: usize, j: usize| r.gen(dga.var_of(ti, i, j).unwrap());
    let delta = |i: usize, j: usize| if i == j { q(1) } else { q(0) };
    for rr in 0..2 {
        for s in 0..2 {
            for u in 0..2 {
                for v in 0..2 {
                    let got = dga.bracket(&t(rr, s), &t(u, v)).unwrap();
                    let mut want = t(u, s).scale(&delta(rr, v));
                    want.sub_assign(&t(rr, v).scale(&delta(u, s)));
                    assert_eq!(got, want, "{{t_{rr}{s}, t_{u}{v}}}");
                }
            }
        }
    }
    // traces of powers are Casimirs
    let tr2 = dga.trace(&a.parse("t t").unwrap()).unwrap();
    let tr3 = dga.trace(&a.parse("t t t").unwrap()).unwrap();
    assert!(dga.bracket(&tr2, &tr3).unwrap().is_zero());
    for i in 0..2 {
        for j in 0..2 {
            assert!(dga.bracket(&tr2, &t(i, j)).unwrap().is_zero());
        }
    }
}

#[test]
fn gl_action_on_gauge_entries() {
    let (a, dga) = gauge_trivial(2);
    let gl = gl_derivations(&dga);
    assert_eq!(gl.len(), 4);
    let ti = a.quiver().arrow_index("t").unwrap();
    let t = |i: usize, j: usize| dga.ring.gen(dga.var_of(ti, i, j).unwrap());
    // on the adjoint representation D_pq is the bracket with t_qp, up to sign
    for g in &gl {
        for i in 0..2 {
            for j in 0..2 {
                let want = dga.bracket(&t(g.q, g.p), &t(i, j)).unwrap();
                assert_eq!(g.apply(&dga, &t(i, j)), want.neg());
            }
        }
    }
}

#[test]
fn laurent_rep_is_scalar_only() {
    let mut q = Quiver::loops("1", &["x"]).unwrap();
    q = q.localize(&["x"]).unwrap();
    let a = PathAlgebra::new(q);
    let p = DgaPresentation::trivial(&a);
    assert!(rep_algebra(&p, &DimensionVector::new(vec![2]).unwrap()).is_err());
    let dga = rep_algebra(&p, &DimensionVector::new(vec![1]).unwrap()).unwrap();
    let w = a.parse("x x^-1").unwrap();
    assert_eq!(dga.trace(&w).unwrap(), Poly::one());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn leibniz_route_matches_derivatives(
        e1 in prop::collection::vec((0usize..8, 1u32..3, -3i64..4), 1..4),
        e2 in prop::collection::vec((0usize..8, 1u32..3, -3i64..4), 1..4),
    ) {
        let p = jordan_brst();
        let dga = rep_algebra(&p, &DimensionVector::new(vec![2]).unwrap()).unwrap();
        let r = &dga.ring;
        let nv = r.num_vars();
        let build = |spec: &[(usize, u32, i64)]| {
            let mut f = Poly::zero();
            for &(v, e, c) in spec {
                let g = r.pow(&r.gen((v % nv) as u32), e);
                f.add_scaled(&g, &q(c));
            }
            f
        };
        let (f, g) = (build(&e1), build(&e2));
        let pt = dga.poisson.as_ref().unwrap();
        prop_assert_eq!(pt.bracket(r, &f, &g), pt.bracket_by_leibniz(r, &f, &g));
    }
}
