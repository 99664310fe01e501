//! Scenario files and the shipped presets.

use std::collections::BTreeMap;
use std::sync::Arc;

use ncpoisson::coeff::parse_q;
use ncpoisson::dbracket::{BracketTable, MomentMap};
use ncpoisson::ncalg::{Arrow, PathAlgebra, Quiver, TensorElement};
use ncpoisson::repfun::DimensionVector;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub name: String,
    pub quiver: QuiverSpec,
    pub bracket: BracketSpec,
    pub hamiltonian: HamiltonianSpec,
    /// One entry per vertex; empty means 1 everywhere.
    #[serde(default)]
    pub dimension: Vec<usize>,
    #[serde(default = "default_max_weight")]
    pub max_weight: i32,
    #[serde(default)]
    pub checks: Vec<String>,
}

fn default_max_weight() -> i32 {
    4
}

fn default_weight() -> i32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub degree: i32,
    #[serde(default = "default_weight")]
    pub weight: i32,
    #[serde(default)]
    pub invertible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BracketSpec {
    /// `cotangent` doubles the quiver; `gauge` uses it as given.
    Standard(StandardBracket),
    Entries(Vec<EntrySpec>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StandardBracket {
    Cotangent,
    Gauge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    pub lhs: String,
    pub rhs: String,
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub left_word: String,
    pub right_word: String,
    pub coeff: Coeff,
}

/// An integer, or a rational written as a string such as `"-1/2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HamiltonianSpec {
    /// `e_i (sum [x, x*]) e_i` at every vertex.
    DefaultCotangent,
    /// Vertex name to an element such as `"x y - y x"`.
    PerVertex(BTreeMap<String, String>),
}

/// Everything the pipeline needs, built from a scenario.
pub struct Built {
    pub alg: Arc<PathAlgebra>,
    pub table: BracketTable,
    pub moment: MomentMap,
    pub dims: DimensionVector,
}

fn at<T>(field: &str, r: ncpoisson::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("{field}: {e}"))
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, String> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| format!("scenario parse error: {e}"))?;
        if s.max_weight < 0 {
            return Err("max_weight: must be nonnegative".into());
        }
        Ok(s)
    }

    pub fn quiver(&self) -> Result<Quiver, String> {
        let vs = &self.quiver.vertices;
        let vertex = |field: String, name: &str| {
            vs.iter().position(|v| v == name).ok_or_else(|| format!("{field}: unknown vertex {name:?}"))
        };
        let mut arrows = Vec::new();
        for (i, a) in self.quiver.arrows.iter().enumerate() {
            arrows.push(Arrow {
                name: a.name.clone(),
                source: vertex(format!("quiver.arrows[{i}].source"), &a.source)?,
                target: vertex(format!("quiver.arrows[{i}].target"), &a.target)?,
                degree: a.degree,
                weight: a.weight,
                invertible: a.invertible,
            });
        }
        at("quiver", Quiver::new(vs.clone(), arrows))
    }

    pub fn build(&self) -> Result<Built, String> {
        let base = self.quiver()?;
        let (alg, table) = match &self.bracket {
            BracketSpec::Standard(StandardBracket::Cotangent) => {
                let alg = PathAlgebra::new(at("bracket.standard", base.double())?);
                let t = at("bracket.standard", BracketTable::cotangent(&alg))?;
                (alg, t)
            }
            BracketSpec::Standard(StandardBracket::Gauge) => {
                let alg = PathAlgebra::new(base);
                let t = at("bracket.standard", BracketTable::gauge(&alg))?;
                (alg, t)
            }
            BracketSpec::Entries(entries) => {
                let alg = PathAlgebra::new(base);
                let mut named = Vec::new();
                for (i, e) in entries.iter().enumerate() {
                    let mut v = TensorElement::zero(&alg, 2);
                    for (j, t) in e.terms.iter().enumerate() {
                        let f = format!("bracket.entries[{i}].terms[{j}]");
                        let l = at(&format!("{f}.left_word"), alg.parse_word(&t.left_word))?;
                        let r = at(&format!("{f}.right_word"), alg.parse_word(&t.right_word))?;
                        let c = match &t.coeff {
                            Coeff::Int(n) => ncpoisson::coeff::q(*n),
                            Coeff::Text(s) => at(&format!("{f}.coeff"), parse_q(s))?,
                        };
                        v.add_term(vec![l, r], c);
                    }
                    named.push((e.lhs.as_str(), e.rhs.as_str(), v));
                }
                let t = at("bracket.entries", BracketTable::from_named(&alg, named))?;
                (alg, t)
            }
        };
        let moment = match &self.hamiltonian {
            HamiltonianSpec::DefaultCotangent => at("hamiltonian", MomentMap::cotangent(&alg))?,
            HamiltonianSpec::PerVertex(map) => {
                for k in map.keys() {
                    if !alg.quiver().vertices().contains(k) {
                        return Err(format!("hamiltonian.per_vertex: unknown vertex {k:?}"));
                    }
                }
                let mut comps = Vec::new();
                for v in alg.quiver().vertices() {
                    let f = format!("hamiltonian.per_vertex.{v}");
                    let s = map.get(v).ok_or_else(|| format!("{f}: missing"))?;
                    comps.push(at(&f, alg.parse(s))?);
                }
                at("hamiltonian", MomentMap::new(&alg, comps))?
            }
        };
        let nv = alg.quiver().num_vertices();
        let dims = if self.dimension.is_empty() { vec![1; nv] } else { self.dimension.clone() };
        if dims.len() != nv {
            return Err(format!("dimension: {} entries for {nv} vertices", dims.len()));
        }
        let dims = at("dimension", DimensionVector::new(dims))?;
        Ok(Built { alg, table, moment, dims })
    }
}

pub const PRESETS: [&str; 6] = ["jordan", "genus-g", "gauge", "laurent", "group-group", "star"];

fn arrow(name: &str, source: &str, target: &str) -> ArrowSpec {
    ArrowSpec { name: name.into(), source: source.into(), target: target.into(), degree: 0, weight: 1, invertible: false }
}

fn cotangent(name: &str, vertices: &[&str], arrows: Vec<ArrowSpec>, dimension: Vec<usize>) -> Scenario {
    Scenario {
        name: name.into(),
        quiver: QuiverSpec { vertices: vertices.iter().map(|v| v.to_string()).collect(), arrows },
        bracket: BracketSpec::Standard(StandardBracket::Cotangent),
        hamiltonian: HamiltonianSpec::DefaultCotangent,
        dimension,
        max_weight: 4,
        checks: Vec::new(),
    }
}

/// The bracket `<<x, y>> = e ⊗ e` on two loops with moment map `[x, y]`.
fn commutator_scenario(name: &str, invertible: &[&str]) -> Scenario {
    let mut arrows = vec![arrow("x", "1", "1"), arrow("y", "1", "1")];
    for a in &mut arrows {
        a.invertible = invertible.contains(&a.name.as_str());
    }
    let term = |l: &str, r: &str| TermSpec { left_word: l.into(), right_word: r.into(), coeff: Coeff::Int(1) };
    Scenario {
        name: name.into(),
        quiver: QuiverSpec { vertices: vec!["1".into()], arrows },
        bracket: BracketSpec::Entries(vec![
            EntrySpec { lhs: "x".into(), rhs: "x".into(), terms: vec![] },
            EntrySpec { lhs: "x".into(), rhs: "y".into(), terms: vec![term("e", "e")] },
            EntrySpec { lhs: "y".into(), rhs: "y".into(), terms: vec![] },
        ]),
        hamiltonian: HamiltonianSpec::PerVertex(BTreeMap::from([("1".into(), "x y - y x".into())])),
        dimension: vec![1],
        max_weight: 4,
        checks: Vec::new(),
    }
}

/// A shipped scenario by name. `genus` is used by `genus-g`.
pub fn preset(name: &str, genus: usize) -> Result<Scenario, String> {
    Ok(match name {
        "jordan" => cotangent("jordan", &["1"], vec![arrow("x", "1", "1")], vec![2]),
        "genus-g" => {
            if genus == 0 {
                return Err("genus-g: genus must be positive".into());
            }
            let arrows = (1..=genus).map(|a| arrow(&format!("x{a}"), "1", "1")).collect();
            let mut s = cotangent(&format!("genus-{genus}"), &["1"], arrows, vec![2]);
            s.max_weight = 3;
            s
        }
        "gauge" => Scenario {
            name: "gauge".into(),
            quiver: QuiverSpec { vertices: vec!["1".into()], arrows: vec![arrow("t", "1", "1")] },
            bracket: BracketSpec::Standard(StandardBracket::Gauge),
            hamiltonian: HamiltonianSpec::PerVertex(BTreeMap::from([("1".into(), "t".into())])),
            dimension: vec![2],
            max_weight: 3,
            checks: Vec::new(),
        },
        "laurent" => commutator_scenario("laurent", &["x"]),
        "group-group" => commutator_scenario("group-group", &["x", "y"]),
        "star" => cotangent("star", &["0", "1"], vec![arrow("a", "1", "0")], vec![1, 1]),
        _ => return Err(format!("unknown preset {name:?}; expected one of {}", PRESETS.join(", "))),
    })
}
