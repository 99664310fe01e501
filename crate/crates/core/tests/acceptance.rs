//! Acceptance suite: one PASS/FAIL line per criterion, with its runtime bound.

use std::sync::Arc;
use std::time::{Duration, Instant};

use ncpoisson::coeff::q;
use ncpoisson::complexes::{brst, check_brst_formulas, check_d_squared, contraction_check, shafarevich, DgaPresentation};
use ncpoisson::dbracket::{check_hamiltonian, is_double_poisson, verify_axioms, BracketTable, MomentMap};
use ncpoisson::homology::{diagonal_check, phi_psi, verify_decomposition};
use ncpoisson::ncalg::{Arrow, PathAlgebra, Quiver, TensorElement};
use ncpoisson::repfun::{check_rep_laws, rep_algebra, DimensionVector, LawSampling};
use ncpoisson::report::CheckReport;

type Outcome = Result<(bool, String), String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn doubled(q: Quiver) -> Arc<PathAlgebra> {
    PathAlgebra::new(q.double().unwrap())
}

fn quivers() -> Vec<(&'static str, Arc<PathAlgebra>)> {
    let star = Quiver::new(
        vec!["0".into(), "1".into()],
        vec![Arrow { name: "a".into(), source: 1, target: 0, degree: 0, weight: 1, invertible: false }],
    )
    .unwrap();
    vec![
        ("Jordan", doubled(Quiver::loops("1", &["x"]).unwrap())),
        ("genus 2", doubled(Quiver::loops("1", &["x", "y"]).unwrap())),
        ("star", doubled(star)),
    ]
}

fn dims(v: &[usize]) -> DimensionVector {
    DimensionVector::new(v.to_vec()).unwrap()
}

/// Fold reports into (all passed, first failure).
fn summarize<'a>(reports: impl IntoIterator<Item = &'a CheckReport>) -> (bool, String) {
    let mut cases = 0;
    for r in reports {
        cases += r.cases;
        if !r.passed() {
            return (false, format!("{r}"));
        }
    }
    (true, format!("{cases} cases"))
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn bracket_axioms() -> Outcome {
    let mut all = Vec::new();
    for (name, a) in quivers() {
        let t = e(BracketTable::cotangent(&a))?;
        if !e(is_double_poisson(&t))? {
            return Ok((false, format!("{name}: triple bracket nonzero on generators")));
        }
        let r = e(verify_axioms(&t, 3, None, 11))?;
        all.extend(r.all().into_iter().cloned());
    }
    Ok(summarize(&all))
}

fn commutator_table(inv: &[&str]) -> Result<(BracketTable, MomentMap), String> {
    let a = PathAlgebra::new(e(e(Quiver::loops("1", &["x", "y"]))?.localize(inv))?);
    let ee = e(TensorElement::product(&[&a.one(), &a.one()]))?;
    let t = e(BracketTable::from_named(
        &a,
        vec![("x", "x", TensorElement::zero(&a, 2)), ("x", "y", ee), ("y", "y", TensorElement::zero(&a, 2))],
    ))?;
    let mm = e(MomentMap::new(&a, vec![e(a.parse("x y - y x"))?]))?;
    Ok((t, mm))
}

fn hamiltonian() -> Outcome {
    let mut all = Vec::new();
    for (_, a) in quivers() {
        let t = e(BracketTable::cotangent(&a))?;
        all.push(e(check_hamiltonian(&t, &e(MomentMap::cotangent(&a))?, 3))?);
    }
    for inv in [vec!["x"], vec!["x", "y"]] {
        let (t, mm) = commutator_table(&inv)?;
        all.push(e(check_hamiltonian(&t, &mm, 3))?);
    }
    Ok(summarize(&all))
}

fn brst_charge() -> Outcome {
    let mut all = Vec::new();
    for (_, a) in quivers() {
        let t = e(BracketTable::cotangent(&a))?;
        let mm = e(MomentMap::cotangent(&a))?;
        let (b, construction) = e(brst(&t, &mm))?;
        all.push(construction);
        all.push(e(check_brst_formulas(&b, &mm))?);
        all.push(e(check_d_squared(&b, 4))?);
    }
    Ok(summarize(&all))
}

fn contraction() -> Outcome {
    let all = [e(contraction_check(4, 1))?, e(contraction_check(4, 2))?];
    Ok(summarize(&all))
}

fn jordan_brst() -> Result<(BracketTable, MomentMap, DgaPresentation), String> {
    let a = doubled(Quiver::loops("1", &["x"]).unwrap());
    let t = e(BracketTable::cotangent(&a))?;
    let mm = e(MomentMap::cotangent(&a))?;
    let b = e(brst(&t, &mm))?.0;
    Ok((t, mm, b))
}

fn rep_laws() -> Outcome {
    let (_, _, b) = jordan_brst()?;
    let mut all = Vec::new();
    for n in [1, 2] {
        let dga = e(rep_algebra(&b, &dims(&[n])))?;
        let cfg = LawSampling { seed: 5, trace_pairs: 50, ..LawSampling::default() };
        all.extend(e(check_rep_laws(&b, &dga, &cfg))?);
    }
    let names = ["rep is multiplicative", "trace of bracket is bracket of traces", "induced bracket satisfies Jacobi", "d = {tr γ, -} on entries"];
    for n in names {
        if !all.iter().any(|r| r.name == n && r.cases > 0) {
            return Ok((false, format!("missing check {n}")));
        }
    }
    Ok(summarize(&all))
}

fn gauge_sanity() -> Outcome {
    let a = PathAlgebra::new(e(Quiver::loops("1", &["t"]))?);
    let mut p = DgaPresentation::trivial(&a);
    p.table = Some(e(BracketTable::gauge(&a))?);
    let dga = e(rep_algebra(&p, &dims(&[2])))?;
    let t = |i: usize, j: usize| dga.ring.gen(dga.var_of(0, i, j).unwrap());
    let delta = |i: usize, j: usize| q((i == j) as i64);
    let mut cases = 0;
    for r in 0..2 {
        for s in 0..2 {
            for u in 0..2 {
                for v in 0..2 {
                    let got = e(dga.bracket(&t(r, s), &t(u, v)))?;
                    let want = t(u, s).scale(&delta(r, v)).sub(&t(r, v).scale(&delta(u, s)));
                    if got != want {
                        return Ok((false, format!("{{t_{r}{s}, t_{u}{v}}} = {}", dga.fmt(&got))));
                    }
                    cases += 1;
                }
            }
        }
    }
    let tr2 = e(dga.trace(&e(a.parse("t t"))?))?;
    let tr3 = e(dga.trace(&e(a.parse("t t t"))?))?;
    let c = e(dga.bracket(&tr2, &tr3))?;
    Ok((c.is_zero(), format!("{cases} structure constants, {{tr t², tr t³}} = {}", dga.fmt(&c))))
}

fn decomposition() -> Outcome {
    let (t, mm, _) = jordan_brst()?;
    let g2 = doubled(Quiver::loops("1", &["x", "y"]).unwrap());
    let (t2, mm2) = (e(BracketTable::cotangent(&g2))?, e(MomentMap::cotangent(&g2))?);
    let mut all = Vec::new();
    let mut higher = Vec::new();
    for (t, mm, n, w) in [(&t, &mm, 1, 6), (&t, &mm, 2, 4), (&t2, &mm2, 2, 3)] {
        let d = e(verify_decomposition(t, mm, &dims(&[n]), w))?;
        all.push(d.report);
        higher.push(d.higher.details.join("; "));
    }
    let (ok, msg) = summarize(&all);
    Ok((ok, format!("{msg}; genus 2: {}", higher[2])))
}

fn jordan_closed_form() -> Outcome {
    let (t, mm, _) = jordan_brst()?;
    let d = e(verify_decomposition(&t, &mm, &dims(&[1]), 6))?;
    let k = &d.koszul_invariant;
    for w in 0..=6 {
        let want = [(0, w as usize + 1), (1, (w as usize).saturating_sub(1))];
        for (deg, dim) in want {
            if k.get(w, deg) != dim {
                return Ok((false, format!("H_{deg}(K_1) at weight {w}: {} vs {dim}", k.get(w, deg))));
            }
        }
        for deg in -2..=2 {
            let want = k.get(w, deg) + k.get(w, deg + 1);
            if d.brst.get(w, deg) != want {
                return Ok((false, format!("H_{deg}(B_1) at weight {w}: {} vs {want}", d.brst.get(w, deg))));
            }
        }
    }
    Ok((true, "weights 0..=6".into()))
}

fn phi_psi_suite() -> Outcome {
    let (t, mm, _) = jordan_brst()?;
    let r = e(phi_psi(&t, &mm, &dims(&[2]), 4))?;
    Ok(summarize(&r.reports))
}

fn diagonal() -> Outcome {
    let (_, mm, _) = jordan_brst()?;
    let sh = e(shafarevich(&mm))?;
    let k1 = e(rep_algebra(&sh, &dims(&[1])))?;
    let r1 = e(diagonal_check(&k1, 6))?;
    let k2 = e(rep_algebra(&sh, &dims(&[2])))?;
    let r2 = e(diagonal_check(&k2, 4))?;
    let finding = if r2.report.failures == 0 {
        format!("n=2 FINDING: Betti tables and induced map agree at all {} (weight, degree) pairs, w <= 4", r2.report.cases)
    } else {
        format!("n=2 FINDING: disagreement, {}", r2.report.witness.clone().unwrap_or_default())
    };
    Ok((r1.report.failures == 0 && r1.report.cases > 0, format!("n=1 quasi-isomorphism at {} pairs; {finding}", r1.report.cases)))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1 bracket axioms", Some(Duration::from_secs(1)), bracket_axioms),
        ("2 Hamiltonian identity", Some(Duration::from_secs(1)), hamiltonian),
        ("3 BRST charge", Some(Duration::from_secs(5)), brst_charge),
        ("4 Shafarevich contraction", Some(Duration::from_secs(1)), contraction),
        ("5 representation laws", Some(Duration::from_secs(30)), rep_laws),
        ("6 gauge bracket sanity", None, gauge_sanity),
        ("7 decomposition theorem", Some(Duration::from_secs(600)), decomposition),
        ("8 n=1 Jordan closed form", None, jordan_closed_form),
        ("9 φ/ψ suite", None, phi_psi_suite),
        ("10 diagonal restriction", None, diagonal),
    ];
    let mut failed = 0;
    for (name, bound, f) in criteria {
        let start = Instant::now();
        let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let (mut ok, msg) = match out {
            Ok(x) => x,
            Err(m) => (false, format!("error: {m}")),
        };
        let timing = match bound {
            Some(b) => {
                ok &= took < b;
                format!("{:.2} s, bound {} s", took.as_secs_f64(), b.as_secs())
            }
            None => format!("{:.2} s", took.as_secs_f64()),
        };
        if !ok {
            failed += 1;
        }
        println!("{} criterion {name} ({timing}): {msg}", if ok { "PASS" } else { "FAIL" });
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
