use std::sync::Arc;

use ncpoisson::complexes::{
    brst, check_brst_formulas, check_d_squared, contraction_check, eta_zero_map, shafarevich, DgaPresentation,
};
use ncpoisson::dbracket::{BracketTable, MomentMap};
use ncpoisson::ncalg::{Arrow, Derivation, PathAlgebra, Quiver};

fn cotangent(q: Quiver) -> (BracketTable, MomentMap) {
    let a = PathAlgebra::new(q.double().unwrap());
    (BracketTable::cotangent(&a).unwrap(), MomentMap::cotangent(&a).unwrap())
}

fn star2() -> Quiver {
    let arrow = |n: &str, s, t| Arrow { name: n.into(), source: s, target: t, degree: 0, weight: 1, invertible: false };
    Quiver::new(vec!["0".into(), "1".into()], vec![arrow("a", 1, 0)]).unwrap()
}

#[test]
fn brst_for_cotangent_quivers() {
    for q in [Quiver::loops("1", &["x"]).unwrap(), Quiver::loops("1", &["x1", "x2"]).unwrap(), star2()] {
        let (t, mm) = cotangent(q);
        let (b, rep) = brst(&t, &mm).unwrap();
        assert!(rep.passed(), "{rep}");
        assert!(check_brst_formulas(&b, &mm).unwrap().passed());
        assert!(check_d_squared(&b, 3).unwrap().passed());
        let sh = shafarevich(&mm).unwrap();
        assert!(eta_zero_map(&b, &sh, 3).unwrap().passed());
        assert!(b.weight_homogeneous());
    }
}

#[test]
fn jordan_brst_differential() {
    let (t, mm) = cotangent(Quiver::loops("1", &["x"]).unwrap());
    let (b, _) = brst(&t, &mm).unwrap();
    let a = &b.alg;
    let d = |s: &str| b.d(&a.parse(s).unwrap()).unwrap();
    assert_eq!(d("x"), a.parse("- eta_1 x + x eta_1").unwrap());
    assert_eq!(d("theta_1"), a.parse("x x* - x* x - eta_1 theta_1 - theta_1 eta_1").unwrap());
    assert_eq!(d("eta_1"), a.parse("- eta_1 eta_1").unwrap());
    assert_eq!(b.charge.as_ref().unwrap(), &a.parse("eta_1 x x* - eta_1 x* x - eta_1 eta_1 theta_1").unwrap());
}

#[test]
fn gauge_brst() {
    let q = Quiver::loops("1", &["t"]).unwrap();
    let a = PathAlgebra::new(q);
    let t = BracketTable::gauge(&a).unwrap();
    let mm = MomentMap::gauge(&a).unwrap();
    let (b, rep) = brst(&t, &mm).unwrap();
    assert!(rep.passed());
    // theta takes the weight of t so that d preserves weight
    let th = b.alg.quiver().arrow_index("theta_1").unwrap();
    assert_eq!(b.alg.quiver().arrow(th).weight, 1);
    assert!(b.weight_homogeneous());
}

#[test]
fn mutated_differential_is_detected() {
    let (t, mm) = cotangent(Quiver::loops("1", &["x"]).unwrap());
    let (b, _) = brst(&t, &mm).unwrap();
    let sh = shafarevich(&mm).unwrap();
    let a: &Arc<PathAlgebra> = &b.alg;
    let mut images = std::collections::BTreeMap::new();
    for (i, _) in a.quiver().arrows().iter().enumerate() {
        images.insert(i, b.differential.image(i).clone());
    }
    let th = a.quiver().arrow_index("theta_1").unwrap();
    images.insert(th, &images[&th] + &a.parse("x x").unwrap());
    let bad = DgaPresentation {
        differential: Derivation::new(a, -1, images).unwrap(),
        ..b.clone()
    };
    let r = eta_zero_map(&bad, &sh, 1).unwrap();
    assert!(!r.passed());
    assert!(r.witness.unwrap().contains("theta_1"));
}

#[test]
fn contraction_homotopy() {
    for n in 1..=2 {
        let r = contraction_check(4, n).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn invalid_differential_rejected() {
    let a = PathAlgebra::new(Quiver::loops("1", &["x"]).unwrap().double().unwrap());
    assert!(Derivation::from_names(&a, -1, &[("x", "x*")]).is_err());
}
