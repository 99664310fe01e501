//! Semi-free dg algebras presented by a quiver and a differential on arrows.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dbracket::BracketTable;
use crate::error::{Error, Result};
use crate::ncalg::{ArrowId, Derivation, NcElement, PathAlgebra, Word};

/// A path algebra with a degree -1 differential, optionally carrying a
/// double bracket, a charge and the positions of the adjoined loops.
#[derive(Clone, Debug)]
pub struct DgaPresentation {
    pub alg: Arc<PathAlgebra>,
    pub differential: Derivation,
    pub table: Option<BracketTable>,
    pub charge: Option<NcElement>,
    /// Degree 1 loops `ϑ_i`, one per vertex, if present.
    pub theta: Option<Vec<ArrowId>>,
    /// Degree -1 loops `η_i`, one per vertex, if present.
    pub eta: Option<Vec<ArrowId>>,
}

impl DgaPresentation {
    /// Validates that the differential has degree -1 and squares to zero on arrows.
    pub fn new(differential: Derivation) -> Result<Self> {
        let alg = differential.alg().clone();
        if differential.degree() != -1 {
            return Err(Error::InvalidDifferential(format!("degree {} instead of -1", differential.degree())));
        }
        for (i, a) in alg.quiver().arrows().iter().enumerate() {
            let dd = differential.apply(&differential.apply(&alg.arrow(i))?)?;
            if !dd.is_zero() {
                return Err(Error::InvalidDifferential(format!("d² {} = {dd}", a.name)));
            }
        }
        Ok(DgaPresentation { alg, differential, table: None, charge: None, theta: None, eta: None })
    }

    /// The algebra with zero differential.
    pub fn trivial(alg: &Arc<PathAlgebra>) -> Self {
        DgaPresentation {
            alg: alg.clone(),
            differential: Derivation::zero(alg, -1),
            table: None,
            charge: None,
            theta: None,
            eta: None,
        }
    }

    pub fn d(&self, e: &NcElement) -> Result<NcElement> {
        self.differential.apply(e)
    }

    /// Whether `d` preserves weight on every arrow.
    pub fn weight_homogeneous(&self) -> bool {
        let q = self.alg.quiver();
        q.arrows().iter().enumerate().all(|(i, a)| {
            let img = self.differential.image(i);
            img.is_zero() || img.weight() == Some(a.weight)
        })
    }

    /// All words of length at most `max_len` (idempotents included).
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        words_up_to(&self.alg, max_len)
    }

    pub fn record(&self) -> PresentationRecord {
        let q = self.alg.quiver();
        PresentationRecord {
            vertices: q.vertices().to_vec(),
            generators: q
                .arrows()
                .iter()
                .enumerate()
                .map(|(i, a)| GeneratorRecord {
                    name: a.name.clone(),
                    source: q.vertices()[a.source].clone(),
                    target: q.vertices()[a.target].clone(),
                    degree: a.degree,
                    weight: a.weight,
                    invertible: a.invertible,
                    differential: self.differential.image(i).to_string(),
                })
                .collect(),
            charge: self.charge.as_ref().map(|c| c.to_string()),
            weight_homogeneous: self.weight_homogeneous(),
        }
    }
}

/// All composable words with at most `max_len` arrows, shortest first.
pub fn words_up_to(alg: &Arc<PathAlgebra>, max_len: usize) -> Vec<Word> {
    let q = alg.quiver();
    let toks = crate::dbracket::verify::generator_tokens(alg);
    let mut layer: Vec<Word> = (0..q.num_vertices()).map(Word::idempotent).collect();
    let mut out = layer.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &t in &toks {
                if w.is_empty() && t.source(q) != w.source() {
                    continue;
                }
                if let Some(nw) = Word::token(q, t).mul(q, w) {
                    if nw.len() == w.len() + 1 {
                        next.push(nw);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Serializable form of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationRecord {
    pub vertices: Vec<String>,
    pub generators: Vec<GeneratorRecord>,
    pub charge: Option<String>,
    pub weight_homogeneous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub name: String,
    pub source: String,
    pub target: String,
    pub degree: i32,
    pub weight: i32,
    pub invertible: bool,
    pub differential: String,
}
