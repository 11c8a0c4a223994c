use std::fmt;

use serde_json::{json, Value};

use crate::algebra::field::{dot, Field};
use crate::graph::Graph;

/// A vector per vertex. Valid when every vector is non-self-orthogonal and
/// adjacent vertices receive orthogonal vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthRep<F: Field> {
    pub field: F,
    pub d: usize,
    pub vectors: Vec<Vec<F::Elem>>,
}

/// The first constraint a representation breaks, scanning vertices and then
/// edges in index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    MissingVertex(usize),
    WrongDimension { vertex: usize, found: usize },
    SelfOrthogonal(usize),
    NotOrthogonal(usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingVertex(v) => write!(f, "vertex {v} has no vector"),
            Violation::WrongDimension { vertex, found } => {
                write!(f, "vertex {vertex} has a vector of length {found}")
            }
            Violation::SelfOrthogonal(v) => write!(f, "vector of vertex {v} is self-orthogonal"),
            Violation::NotOrthogonal(u, v) => write!(f, "edge {{{u}, {v}}} is not orthogonal"),
        }
    }
}

impl<F: Field> OrthRep<F> {
    pub fn new(field: F, d: usize, vectors: Vec<Vec<F::Elem>>) -> Self {
        OrthRep { field, d, vectors }
    }

    /// The same representation with `extra` zero coordinates appended.
    pub fn padded(&self, extra: usize) -> Self {
        let vectors = self
            .vectors
            .iter()
            .map(|v| {
                let mut v = v.clone();
                v.extend(std::iter::repeat_n(self.field.zero(), extra));
                v
            })
            .collect();
        OrthRep { field: self.field.clone(), d: self.d + extra, vectors }
    }

    /// Restriction to the listed vertices, in that order.
    pub fn restrict(&self, vertices: &[usize]) -> Self {
        OrthRep {
            field: self.field.clone(),
            d: self.d,
            vectors: vertices.iter().map(|&v| self.vectors[v].clone()).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let vectors: Vec<Value> = self
            .vectors
            .iter()
            .map(|v| Value::Array(v.iter().map(|a| self.field.elem_json(a)).collect()))
            .collect();
        json!({ "field": self.field.spec().to_string(), "d": self.d, "vectors": vectors })
    }
}

pub fn verify_orthrep<F: Field>(g: &Graph, rep: &OrthRep<F>) -> Result<(), Violation> {
    if rep.vectors.len() < g.n() {
        return Err(Violation::MissingVertex(rep.vectors.len()));
    }
    for (v, x) in rep.vectors.iter().take(g.n()).enumerate() {
        if x.len() != rep.d {
            return Err(Violation::WrongDimension { vertex: v, found: x.len() });
        }
        if rep.field.is_zero(&dot(&rep.field, x, x)) {
            return Err(Violation::SelfOrthogonal(v));
        }
    }
    for (u, v) in g.edges() {
        if !rep.field.is_zero(&dot(&rep.field, &rep.vectors[u], &rep.vectors[v])) {
            return Err(Violation::NotOrthogonal(u, v));
        }
    }
    Ok(())
}
