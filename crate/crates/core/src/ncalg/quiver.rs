//! Quivers with graded, weighted arrows.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
    pub degree: i32,
    pub weight: i32,
    pub invertible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// A family of loops added at every vertex, named `{prefix}_{vertex}`.
#[derive(Clone, Debug)]
pub struct LoopFamily {
    pub prefix: String,
    pub degree: i32,
    pub weight: i32,
}

impl LoopFamily {
    pub fn new(prefix: &str, degree: i32, weight: i32) -> Self {
        LoopFamily { prefix: prefix.to_string(), degree, weight }
    }

    pub fn name_at(&self, vertex: &str) -> String {
        format!("{}_{}", self.prefix, vertex)
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name.chars().any(|c| c.is_whitespace() || c == '^')
        && !crate::coeff::looks_like_number(name)
        && name != "+"
        && name != "-"
        && name != "e"
        && !name.starts_with("e_")
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidQuiver("no vertices".into()));
        }
        let mut seen = HashSet::new();
        for v in &vertices {
            if v.is_empty() || v.chars().any(char::is_whitespace) {
                return Err(Error::InvalidQuiver(format!("bad vertex label {v:?}")));
            }
            if !seen.insert(v.clone()) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {v:?}")));
            }
        }
        let mut q = Quiver { vertices, arrows: Vec::new() };
        for a in arrows {
            q.push_arrow(a)?;
        }
        Ok(q)
    }

    /// Single vertex `v` with the given loops, all of degree 0 and weight 1.
    pub fn loops(vertex: &str, names: &[&str]) -> Result<Self> {
        let arrows = names
            .iter()
            .map(|n| Arrow {
                name: n.to_string(),
                source: 0,
                target: 0,
                degree: 0,
                weight: 1,
                invertible: false,
            })
            .collect();
        Quiver::new(vec![vertex.to_string()], arrows)
    }

    pub fn push_arrow(&mut self, a: Arrow) -> Result<ArrowId> {
        if !valid_name(&a.name) {
            return Err(Error::InvalidQuiver(format!("bad arrow name {:?}", a.name)));
        }
        if self.arrows.iter().any(|b| b.name == a.name) {
            return Err(Error::InvalidQuiver(format!("duplicate arrow {:?}", a.name)));
        }
        if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
            return Err(Error::InvalidQuiver(format!("arrow {:?} has unknown endpoint", a.name)));
        }
        if a.weight < 0 {
            return Err(Error::InvalidQuiver(format!("arrow {:?} has negative weight", a.name)));
        }
        if a.invertible && a.degree != 0 {
            return Err(Error::InvalidQuiver(format!(
                "arrow {:?} is invertible but has degree {}",
                a.name, a.degree
            )));
        }
        self.arrows.push(a);
        Ok(self.arrows.len() - 1)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Result<VertexId> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::Unknown(label.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<ArrowId> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::Unknown(name.to_string()))
    }

    pub fn name_map(&self) -> HashMap<String, ArrowId> {
        self.arrows.iter().enumerate().map(|(i, a)| (a.name.clone(), i)).collect()
    }

    /// Add a reversed arrow `x*` for every arrow `x`.
    pub fn double(&self) -> Result<Quiver> {
        if let Some(a) = self.arrows.iter().find(|a| a.name.ends_with('*')) {
            return Err(Error::InvalidQuiver(format!(
                "cannot double a quiver that already has starred arrow {:?}",
                a.name
            )));
        }
        let mut q = self.clone();
        for a in &self.arrows {
            q.push_arrow(Arrow {
                name: format!("{}*", a.name),
                source: a.target,
                target: a.source,
                degree: -a.degree,
                weight: a.weight,
                invertible: false,
            })?;
        }
        Ok(q)
    }

    /// Pairs `(x, x*)` of a doubled quiver, or an error if some arrow has no partner.
    pub fn dual_pairs(&self) -> Result<Vec<(ArrowId, ArrowId)>> {
        let names = self.name_map();
        let mut pairs = Vec::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if let Some(base) = a.name.strip_suffix('*') {
                let j = *names.get(base).ok_or_else(|| {
                    Error::InvalidQuiver(format!("{:?} has no unstarred partner", a.name))
                })?;
                let b = &self.arrows[j];
                if b.source != a.target || b.target != a.source {
                    return Err(Error::InvalidQuiver(format!(
                        "{:?} and {:?} are not reverse to each other",
                        b.name, a.name
                    )));
                }
            } else {
                let j = *names.get(&format!("{}*", a.name)).ok_or_else(|| {
                    Error::InvalidQuiver(format!("{:?} has no starred partner", a.name))
                })?;
                pairs.push((i, j));
            }
        }
        Ok(pairs)
    }

    /// Add one loop of the family at every vertex.
    pub fn adjoin_loops(&self, family: &LoopFamily) -> Result<Quiver> {
        let mut q = self.clone();
        for (v, label) in self.vertices.iter().enumerate() {
            q.push_arrow(Arrow {
                name: family.name_at(label),
                source: v,
                target: v,
                degree: family.degree,
                weight: family.weight,
                invertible: false,
            })?;
        }
        Ok(q)
    }

    /// Mark the named arrows as invertible.
    pub fn localize(&self, names: &[&str]) -> Result<Quiver> {
        let mut q = self.clone();
        for n in names {
            let i = q.arrow_index(n)?;
            if q.arrows[i].degree != 0 {
                return Err(Error::InvalidQuiver(format!("cannot invert {n:?} of nonzero degree")));
            }
            q.arrows[i].invertible = true;
        }
        Ok(q)
    }

    pub fn has_invertible(&self) -> bool {
        self.arrows.iter().any(|a| a.invertible)
    }
}
