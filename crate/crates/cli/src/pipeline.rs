//! Runs the checks of a scenario in dependency order.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use ncpoisson::complexes::{
    brst, check_brst_formulas, check_d_squared, contraction_check, eta_zero_map, shafarevich, DgaPresentation,
    PresentationRecord,
};
use ncpoisson::dbracket::{check_hamiltonian, verify_axioms};
use ncpoisson::homology::decomposition::{euler_consistent, invariant_slices, table_of};
use ncpoisson::homology::{diagonal_check, phi_psi, reduced_complexes, verify_decomposition, weight_slice, BettiTable};
use ncpoisson::linalg::dense;
use ncpoisson::repfun::{check_casimirs, check_rep_laws, rep_algebra, LawSampling};
use ncpoisson::report::{CheckReport, Status};
use serde::{Deserialize, Serialize};

use crate::scenario::{BracketSpec, Built, Scenario, StandardBracket};

/// Pipeline stages in dependency order. The first four form a chain; the
/// homology stages each depend on all of them but not on each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Axioms,
    Hamiltonian,
    Brst,
    Rep,
    Homology,
    Decomposition,
    PhiPsi,
    Diagonal,
}

impl Stage {
    pub const ALL: [Stage; 8] = [
        Stage::Axioms,
        Stage::Hamiltonian,
        Stage::Brst,
        Stage::Rep,
        Stage::Homology,
        Stage::Decomposition,
        Stage::PhiPsi,
        Stage::Diagonal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Axioms => "axioms",
            Stage::Hamiltonian => "hamiltonian",
            Stage::Brst => "brst",
            Stage::Rep => "rep-laws",
            Stage::Homology => "homology",
            Stage::Decomposition => "decomposition",
            Stage::PhiPsi => "phi-psi",
            Stage::Diagonal => "diagonal",
        }
    }

    pub fn parse(s: &str) -> Result<Stage, String> {
        Stage::ALL.into_iter().find(|st| st.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Stage::ALL.iter().map(|s| s.name()).collect();
            format!("checks: unknown check {s:?}; expected one of {}", names.join(", "))
        })
    }

    fn is_chain(self) -> bool {
        self <= Stage::Rep
    }

    /// The requested stages plus everything they depend on, in order.
    pub fn closure(requested: &[Stage]) -> Vec<Stage> {
        let Some(&top) = requested.iter().max() else { return Vec::new() };
        let chain_end = if top.is_chain() { top } else { Stage::Rep };
        Stage::ALL.into_iter().filter(|s| *s <= chain_end || requested.contains(s)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedTable {
    pub label: String,
    pub table: BettiTable,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: u128,
    pub stages_ms: BTreeMap<String, u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: Scenario,
    pub stages: Vec<String>,
    pub checks: Vec<CheckReport>,
    pub tables: Vec<NamedTable>,
    pub presentation: Option<PresentationRecord>,
    pub timing: Timing,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }
}

pub struct Options {
    pub seed: u64,
    pub dump_bases: Option<PathBuf>,
}

fn error_report(name: &str, e: impl std::fmt::Display) -> CheckReport {
    let mut r = CheckReport::new(name);
    r.fail(format!("error: {e}"));
    r
}

struct Run<'a> {
    built: &'a Built,
    scenario: &'a Scenario,
    opts: &'a Options,
    brst: Option<DgaPresentation>,
    checks: Vec<CheckReport>,
    tables: Vec<NamedTable>,
    presentation: Option<PresentationRecord>,
}

impl Run<'_> {
    fn table(&mut self, label: String, table: BettiTable) {
        self.tables.push(NamedTable { label, table });
    }

    fn stage(&mut self, s: Stage) -> ncpoisson::Result<()> {
        let b = self.built;
        let seed = self.opts.seed;
        let max_w = self.scenario.max_weight;
        match s {
            Stage::Axioms => {
                let r = verify_axioms(&b.table, 3, None, seed)?;
                self.checks.extend(r.all().into_iter().cloned());
            }
            Stage::Hamiltonian => {
                let r = check_hamiltonian(&b.table, &b.moment, seed)?;
                self.checks.push(r);
            }
            Stage::Brst => {
                let (p, construction) = brst(&b.table, &b.moment)?;
                self.checks.push(construction);
                self.checks.push(check_brst_formulas(&p, &b.moment)?);
                self.checks.push(check_d_squared(&p, 4)?);
                let sh = shafarevich(&b.moment)?;
                self.checks.push(eta_zero_map(&p, &sh, 3)?);
                self.checks.push(contraction_check(4, b.alg.quiver().num_vertices().min(2))?);
                self.presentation = Some(p.record());
                self.brst = Some(p);
            }
            Stage::Rep => {
                let p = self.brst.as_ref().expect("brst stage ran");
                let dga = rep_algebra(p, &b.dims)?;
                let cfg = LawSampling { seed, ..LawSampling::default() };
                self.checks.extend(check_rep_laws(p, &dga, &cfg)?);
                if self.scenario.bracket == BracketSpec::Standard(StandardBracket::Gauge) {
                    let mut cs = Vec::new();
                    for a in b.alg.quiver().arrows() {
                        for k in 1..=3 {
                            let word = vec![a.name.as_str(); k].join(" ");
                            cs.push((format!("tr {}^{k}", a.name), dga.trace(&p.alg.parse(&word)?)?));
                        }
                    }
                    self.checks.push(check_casimirs(&dga, &cs)?);
                }
            }
            Stage::Homology => self.homology(max_w)?,
            Stage::Decomposition => {
                let d = verify_decomposition(&b.table, &b.moment, &b.dims, max_w)?;
                self.checks.push(d.report);
                self.checks.push(d.higher);
                self.table("BRST homology".into(), d.brst);
                self.table("invariant Koszul homology".into(), d.koszul_invariant);
                let mut lie = BettiTable::default();
                for (k, n) in &d.lie.degrees {
                    lie.entries.insert((0, *k), *n);
                }
                self.table("gl cohomology".into(), lie);
            }
            Stage::PhiPsi => {
                let r = phi_psi(&b.table, &b.moment, &b.dims, max_w)?;
                self.checks.extend(r.reports);
                self.table("ker φ on invariant Koszul homology".into(), r.kernel_phi);
                self.table("im ψ on invariant Koszul homology".into(), r.image_psi);
            }
            Stage::Diagonal => {
                if b.alg.quiver().num_vertices() != 1 {
                    self.checks.push(CheckReport::skipped("diagonal restriction", "needs a one-vertex quiver"));
                    return Ok(());
                }
                let rc = reduced_complexes(&b.table, &b.moment, &b.dims)?;
                let r = diagonal_check(&rc.koszul, max_w)?;
                self.checks.push(r.report);
                self.table("diagonal: invariant Koszul homology".into(), r.source);
                self.table("diagonal: multisymmetric invariants".into(), r.target);
                self.table("diagonal: induced rank".into(), r.induced);
            }
        }
        Ok(())
    }

    fn homology(&mut self, max_w: i32) -> ncpoisson::Result<()> {
        let b = self.built;
        let rc = reduced_complexes(&b.table, &b.moment, &b.dims)?;
        let mut slices = BTreeMap::new();
        for (label, dga) in [("Koszul", &rc.koszul), ("BRST", &rc.brst)] {
            let mut sq = CheckReport::new(&format!("{label} slices: d² = 0 and Euler characteristic"));
            let mut oracle = CheckReport::new(&format!("{label} slices: ranks agree with dense elimination"));
            let mut list = Vec::new();
            for w in 0..=max_w {
                let s = weight_slice(dga, w)?;
                sq.case(s.squares_to_zero() && euler_consistent(&s), || format!("weight {w}"));
                for (k, m) in &s.diffs {
                    if m.ncols() <= 200 && m.nrows <= 200 {
                        oracle.case(m.rank() == dense::rank(m.to_dense()), || format!("weight {w} degree {k}"));
                    }
                }
                list.push(s);
            }
            self.checks.push(sq);
            self.checks.push(oracle);
            self.table(format!("{label} homology"), table_of(&list));
            slices.insert(label, list);
        }
        let inv = invariant_slices(&rc.koszul, max_w)?;
        self.table("invariant Koszul homology".into(), table_of(&inv));
        if let Some(dir) = &self.opts.dump_bases {
            std::fs::create_dir_all(dir).map_err(|e| ncpoisson::Error::Io(format!("{}: {e}", dir.display())))?;
            let write = |name: String, text: String| {
                std::fs::write(dir.join(&name), text).map_err(|e| ncpoisson::Error::Io(format!("{name}: {e}")))
            };
            for (label, list) in &slices {
                for s in list {
                    write(format!("{}_w{}.txt", label.to_lowercase(), s.weight), s.dump())?;
                }
            }
            for s in &inv {
                write(format!("koszul_invariant_w{}.txt", s.weight), s.dump())?;
            }
        }
        Ok(())
    }
}

/// Run the given stages (with prerequisites). Once a chain stage fails, every
/// later stage is reported as skipped rather than silently dropped.
pub fn run(scenario: &Scenario, requested: &[Stage], opts: &Options) -> Result<Report, String> {
    let start = Instant::now();
    let built = scenario.build()?;
    let stages = Stage::closure(requested);
    if built.alg.quiver().has_invertible() && built.dims.total() > 1 && stages.iter().any(|s| *s >= Stage::Rep) {
        return Err(format!(
            "rejected: invertible generators are only represented at total dimension 1 (got {:?})",
            built.dims.dims()
        ));
    }
    let mut run = Run {
        built: &built,
        scenario,
        opts,
        brst: None,
        checks: Vec::new(),
        tables: Vec::new(),
        presentation: None,
    };
    let mut timing = Timing::default();
    let mut blocked: Option<Stage> = None;
    for &s in &stages {
        if let Some(b) = blocked {
            run.checks.push(CheckReport::skipped(s.name(), &format!("prerequisite {} failed", b.name())));
            continue;
        }
        let t = Instant::now();
        let before = run.checks.len();
        match run.stage(s) {
            Ok(()) => {}
            // documented restrictions are reported, not failed
            Err(ncpoisson::Error::Unsupported(m)) => run.checks.push(CheckReport::skipped(s.name(), &m)),
            Err(e) => run.checks.push(error_report(s.name(), e)),
        }
        timing.stages_ms.insert(s.name().into(), t.elapsed().as_millis());
        let failed = run.checks[before..].iter().any(|c| c.status == Status::Fail);
        if failed && s.is_chain() {
            blocked = Some(s);
        }
    }
    timing.total_ms = start.elapsed().as_millis();
    Ok(Report {
        scenario: scenario.clone(),
        stages: stages.iter().map(|s| s.name().to_string()).collect(),
        checks: run.checks,
        tables: run.tables,
        presentation: run.presentation,
        timing,
    })
}
