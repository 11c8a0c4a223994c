//! Transformations from graph coloring to orthogonality dimension that keep
//! the modulator linear in the input modulator.
//!
//! The building block is the complement of the cycle `C_2d`. In any
//! `d`-dimensional representation of it, the vectors of two cycle-adjacent
//! vertices `x0`, `x1` are orthogonal or proportional, and both options are
//! realized by a `d`-coloring. Gluing a copy onto `(z_i, v)` for a clique
//! `z_1..z_d` forces the vector of `v` to be proportional to one of the `z_i`,
//! which reads off a color.

use serde_json::{json, Value};

use crate::algebra::field::{dot, proportional, Field, PrimeField};
use crate::algebra::subspace::Subspace;
use crate::error::{Error, Result};
use crate::graph::{normalize_set, Family, FamilyWitness, Graph};
use crate::solver::search::VectorTable;
use crate::solver::{decide_subchoose, verify_orthrep, OrthRep, SearchLimits, SubChooseInstance};

/// The complement of `C_2d`, with `x0 = 0` and `x1 = 1` adjacent on the cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetHandle {
    pub graph: Graph,
    pub x0: usize,
    pub x1: usize,
    pub d: usize,
}

pub fn gadget_graph(d: usize) -> Result<GadgetHandle> {
    if d < 3 {
        return Err(Error::InvalidParameter(format!("gadget needs d >= 3, got {d}")));
    }
    Ok(GadgetHandle { graph: Graph::cycle(2 * d)?.complement(), x0: 0, x1: 1, d })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetMode {
    /// `x0` and `x1` share a color.
    Same,
    /// `x0` and `x1` get different colors.
    Distinct,
}

/// A proper `d`-coloring of the gadget: `Same` gives color `i` to `x_{2i}` and
/// `x_{2i+1}`; `Distinct` gives it to `x_{2i-1}` and `x_{2i}` (indices mod 2d).
pub fn gadget_coloring(d: usize, mode: GadgetMode) -> Vec<usize> {
    let len = 2 * d;
    let mut colors = vec![0; len];
    for i in 0..d {
        let (a, b) = match mode {
            GadgetMode::Same => (2 * i, 2 * i + 1),
            GadgetMode::Distinct => ((2 * i + len - 1) % len, 2 * i),
        };
        colors[a] = i;
        colors[b] = i;
    }
    colors
}

/// Result of checking the orthogonal-or-proportional property of a gadget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetCheck {
    pub d: usize,
    /// Pairs of vector classes (for `x0`, `x1`) that are neither orthogonal nor
    /// proportional, each of which was tested for an extension.
    pub pairs_checked: usize,
    /// First class pair that extends to a full representation, if any.
    pub counterexample: Option<(Vec<u32>, Vec<u32>)>,
}

impl GadgetCheck {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Exhausts the representations of the gadget over `GF(p)^d`: for every pair
/// of projective classes at `(x0, x1)` that is neither orthogonal nor
/// proportional, searches for an extension to the remaining vertices.
pub fn verify_gadget_property(d: usize, field: PrimeField, limits: &SearchLimits) -> Result<GadgetCheck> {
    let gadget = gadget_graph(d)?;
    let classes = VectorTable::new(field, d, limits.enumeration_cap)?.vectors().to_vec();
    let mut pairs_checked = 0;
    for a in &classes {
        for b in &classes {
            if dot(&field, a, b) == 0 || proportional(&field, a, b) {
                continue;
            }
            pairs_checked += 1;
            let mut lists = vec![Subspace::full(field, d); gadget.graph.n()];
            lists[gadget.x0] = Subspace::span(field, d, std::slice::from_ref(a))?;
            lists[gadget.x1] = Subspace::span(field, d, std::slice::from_ref(b))?;
            let inst = SubChooseInstance::new(gadget.graph.clone(), d, field, lists)?;
            if decide_subchoose(&inst, limits)?.is_some() {
                return Ok(GadgetCheck { d, pairs_checked, counterexample: Some((a.clone(), b.clone())) });
            }
        }
    }
    Ok(GadgetCheck { d, pairs_checked, counterexample: None })
}

/// Placement of one gadget copy: gadget vertex `j` is `vertices[j]` in the
/// output graph, with `vertices[0] = z_i` and `vertices[1] = v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetEmbedding {
    pub color: usize,
    pub vertex: usize,
    pub vertices: Vec<usize>,
}

/// Output of a coloring-to-orthogonality-dimension transformation. Vertices
/// `0..original_n` are the input vertices, unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub graph: Graph,
    /// The new modulator `X'`, sorted.
    pub modulator: Vec<usize>,
    pub d: usize,
    pub original_n: usize,
    /// The input modulator, sorted.
    pub x: Vec<usize>,
    /// The clique vertices `z_0..z_{d-1}`.
    pub z: Vec<usize>,
    pub gadgets: Vec<GadgetEmbedding>,
    /// For the path transformation: the outside vertices in path order.
    pub path: Option<Vec<usize>>,
}

/// `k + d + d k (2d - 2)`.
pub fn modulator_size(k: usize, d: usize) -> usize {
    k + d + d * k * (2 * d - 2)
}

impl ReductionOutput {
    /// Sidecar description; vertex numbers are 1-based like graph files.
    pub fn to_json(&self) -> Value {
        let one = |v: &[usize]| v.iter().map(|&x| x + 1).collect::<Vec<_>>();
        json!({
            "d": self.d,
            "original_n": self.original_n,
            "x": one(&self.x),
            "z": one(&self.z),
            "modulator": one(&self.modulator),
            "gadgets": self.gadgets.iter().map(|e| json!({
                "color": e.color,
                "vertex": e.vertex + 1,
                "vertices": one(&e.vertices),
            })).collect::<Vec<_>>(),
            "path": self.path.as_ref().map(|p| one(p)),
        })
    }
}

fn build(g: &Graph, x: Vec<usize>, d: usize, path: Option<Vec<usize>>) -> Result<ReductionOutput> {
    let gadget = gadget_graph(d)?;
    let mut out = g.clone();
    let z: Vec<usize> = (0..d).map(|_| out.add_vertex()).collect();
    for (a, &u) in z.iter().enumerate() {
        for &v in &z[a + 1..] {
            out.add_edge(u, v)?;
        }
    }
    let mut modulator = x.clone();
    modulator.extend(&z);
    let mut gadgets = Vec::with_capacity(d * x.len());
    for (i, &zi) in z.iter().enumerate() {
        for &v in &x {
            let mut vertices = vec![zi, v];
            for _ in 2..2 * d {
                let w = out.add_vertex();
                vertices.push(w);
                modulator.push(w);
            }
            for (a, b) in gadget.graph.edges() {
                out.add_edge(vertices[a], vertices[b])?;
            }
            gadgets.push(GadgetEmbedding { color: i, vertex: v, vertices });
        }
    }
    Ok(ReductionOutput { graph: out, modulator: normalize_set(modulator), d, original_n: g.n(), x, z, gadgets, path })
}

/// Given a vertex cover `x`, builds `G'` with `chi(G) <= d` iff
/// `od_F(G') <= d` over every field, and modulator `X'` a vertex cover of
/// size `k + d + d k (2d - 2)`.
pub fn col_to_od_vc(g: &Graph, x: &[usize], d: usize) -> Result<ReductionOutput> {
    g.vertex_mask(x)?;
    if !g.is_vertex_cover(x) {
        return Err(Error::NotVertexCover);
    }
    build(g, normalize_set(x.to_vec()), d, None)
}

/// The same construction with `d = 3` for a modulator whose removal leaves a
/// path; `G' \ X'` is that same path.
pub fn col_to_od_path(g: &Graph, x: &[usize]) -> Result<ReductionOutput> {
    let x = normalize_set(x.to_vec());
    let (rest, map) = g.remove_vertices(&x)?;
    let Some(FamilyWitness::Path(order)) = rest.recognize_family(Family::Path) else {
        return Err(Error::FamilyMismatch(Family::Path.to_string()));
    };
    let path = order.iter().map(|&i| map[i]).collect();
    build(g, x, 3, Some(path))
}

/// Reads a proper `d`-coloring of the input graph off a representation of
/// `G'`. Modulator vertices take the color of the clique vertex their vector
/// is proportional to. Outside vertices take the smallest color missing
/// among their neighbors or, along a path, the smallest color `i` with a
/// nonzero coefficient on `u_{z_i}` that differs from the previous vertex.
pub fn extract_coloring_from_orthrep<F: Field>(out: &ReductionOutput, rep: &OrthRep<F>) -> Result<Vec<usize>> {
    verify_orthrep(&out.graph, rep).map_err(|v| Error::InvalidRepresentation(v.to_string()))?;
    if rep.d != out.d {
        return Err(Error::DimensionMismatch { expected: out.d, found: rep.d });
    }
    let f = &rep.field;
    let zv: Vec<&Vec<F::Elem>> = out.z.iter().map(|&z| &rep.vectors[z]).collect();
    let mut colors = vec![usize::MAX; out.original_n];
    for &v in &out.x {
        colors[v] = zv
            .iter()
            .position(|z| proportional(f, &rep.vectors[v], z))
            .ok_or_else(|| Error::Internal(format!("vector of modulator vertex {v} matches no clique vector")))?;
    }
    match &out.path {
        None => {
            let rest: Vec<usize> = (0..out.original_n).filter(|&v| colors[v] == usize::MAX).collect();
            for v in rest {
                let used: Vec<usize> = out.graph.neighbors(v).iter().filter(|&&w| w < out.original_n).map(|&w| colors[w]).collect();
                colors[v] = (0..out.d)
                    .find(|c| !used.contains(c))
                    .ok_or_else(|| Error::Internal(format!("no free color for vertex {v}")))?;
            }
        }
        Some(path) => {
            let mut prev = usize::MAX;
            for &v in path {
                // coefficient on u_{z_i} in the orthogonal basis u_{z_0}, .., u_{z_{d-1}}
                let c = (0..out.d)
                    .find(|&i| i != prev && !f.is_zero(&dot(f, &rep.vectors[v], zv[i])))
                    .ok_or_else(|| Error::Internal(format!("no admissible color for path vertex {v}")))?;
                colors[v] = c;
                prev = c;
            }
        }
    }
    Ok(colors)
}
