//! Small NO-certificates for list-restricted orthogonal representations.
//!
//! A certificate is a set of vertices whose induced sub-instance (same lists)
//! is already unsatisfiable. The extractors below shrink a NO instance on a
//! union of split graphs, or of complements of chordal graphs, to such a set
//! of size bounded in terms of `d` and the field alone.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::algebra::field::{dot, PrimeField};
use crate::algebra::subspace::{enumerate_all_subspaces, gaussian_binomial, is_anisotropic, unit_vector, Subspace};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kernels::binomial;
use crate::solver::{decide_subchoose, SearchLimits, SubChooseInstance};

/// A vertex set of an instance, the sub-instance it induces, and the size
/// bound the extractor promises.
#[derive(Clone, Debug, PartialEq)]
pub struct SubInstanceWitness {
    /// Sorted vertices of the original instance.
    pub vertices: Vec<usize>,
    pub instance: SubChooseInstance,
    pub bound: u128,
}

impl SubInstanceWitness {
    fn new(inst: &SubChooseInstance, vertices: Vec<usize>, bound: u128) -> Result<Self> {
        let vertices: Vec<usize> = vertices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        Ok(SubInstanceWitness { instance: inst.induced(&vertices)?, vertices, bound })
    }

    /// Vertex numbers are 1-based like instance files.
    pub fn to_json(&self, verified: bool) -> Value {
        let subspaces: Vec<Value> = self
            .instance
            .lists
            .iter()
            .map(|l| json!(l.basis()))
            .collect();
        json!({
            "vertices": self.vertices.iter().map(|v| v + 1).collect::<Vec<_>>(),
            "subspaces": subspaces,
            "bound": u64::try_from(self.bound).unwrap_or(u64::MAX),
            "verified": verified,
        })
    }
}

/// `d + 2^d [d, floor(d/2)]_q`.
pub fn split_bound(d: usize, q: u64) -> u128 {
    (d as u128).saturating_add((1u128 << d.min(100)).saturating_mul(gaussian_binomial(d, d / 2, q)))
}

/// `d + 2^d C(d, floor(d/2))`.
pub fn anisotropic_split_bound(d: usize) -> u128 {
    (d as u128).saturating_add((1u128 << d.min(100)).saturating_mul(binomial(d, d / 2)))
}

/// `(q^d)!`, saturating.
pub fn cochordal_bound(d: usize, q: u64) -> u128 {
    let t = (q as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    let mut acc: u128 = 1;
    let mut i: u128 = 2;
    while i <= t && acc != u128::MAX {
        acc = acc.saturating_mul(i);
        i += 1;
    }
    acc
}

fn require_no(inst: &SubChooseInstance, limits: &SearchLimits) -> Result<()> {
    if decide_subchoose(inst, limits)?.is_some() {
        return Err(Error::YesInstance);
    }
    Ok(())
}

/// The smallest-indexed connected component whose sub-instance is NO.
fn no_component(inst: &SubChooseInstance, limits: &SearchLimits) -> Result<Vec<usize>> {
    for comp in inst.graph.connected_components() {
        if decide_subchoose(&inst.induced(&comp)?, limits)?.is_none() {
            return Ok(comp);
        }
    }
    Err(Error::Internal("NO instance without a NO component".into()))
}

/// Split partition of the component, in original vertex numbers.
fn split_parts(g: &Graph, comp: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let (h, map) = g.induced_subgraph(comp)?;
    let (c, i) = h.split_partition().ok_or_else(|| Error::FamilyMismatch("union-split".into()))?;
    Ok((c.iter().map(|&v| map[v]).collect(), i.iter().map(|&v| map[v]).collect()))
}

fn check_split_components(inst: &SubChooseInstance) -> Result<()> {
    for comp in inst.graph.connected_components() {
        split_parts(&inst.graph, &comp)?;
    }
    Ok(())
}

/// Repeatedly deletes the smallest independent-side vertex `w` for which
/// `removable(w, twins)` holds, where `twins` are the other remaining
/// independent-side vertices with the same neighborhood.
fn prune_independent(
    g: &Graph,
    independent: &[usize],
    mut removable: impl FnMut(usize, &[usize]) -> Result<bool>,
) -> Result<Vec<usize>> {
    let mut alive: Vec<usize> = independent.to_vec();
    'outer: loop {
        for (pos, &w) in alive.iter().enumerate() {
            let twins: Vec<usize> = alive.iter().copied().filter(|&v| v != w && g.neighbors(v) == g.neighbors(w)).collect();
            if removable(w, &twins)? {
                alive.remove(pos);
                continue 'outer;
            }
        }
        return Ok(alive);
    }
}

/// Certificate for a NO instance whose graph is a disjoint union of split
/// graphs. On a NO component with clique side larger than `d`, any `d + 1`
/// clique vertices suffice. Otherwise independent-side twins `v_1, v_2` with
/// `L(v_1)` inside `L(v_2)` lose `v_2` until no such pair remains.
pub fn split_no_certificate(inst: &SubChooseInstance, limits: &SearchLimits) -> Result<SubInstanceWitness> {
    check_split_components(inst)?;
    require_no(inst, limits)?;
    let bound = split_bound(inst.d, inst.field.p() as u64);
    let comp = no_component(inst, limits)?;
    let (clique, independent) = split_parts(&inst.graph, &comp)?;
    if clique.len() > inst.d {
        let mut c = clique;
        c.sort_unstable();
        c.truncate(inst.d + 1);
        return SubInstanceWitness::new(inst, c, bound);
    }
    let mut independent = independent;
    independent.sort_unstable();
    let kept = prune_independent(&inst.graph, &independent, |w, twins| {
        Ok(twins.iter().any(|&v| inst.lists[v].is_subspace_of(&inst.lists[w])))
    })?;
    SubInstanceWitness::new(inst, clique.into_iter().chain(kept).collect(), bound)
}

/// Certificate for split unions over a field and dimension where `F^d` has
/// no nonzero self-orthogonal vector. An independent-side vertex `w` is
/// dropped when every subspace `Q` meeting the lists of all of its twins
/// also meets `L(w)`.
pub fn split_no_certificate_anisotropic(inst: &SubChooseInstance, limits: &SearchLimits) -> Result<SubInstanceWitness> {
    if !is_anisotropic(inst.field, inst.d, limits.enumeration_cap)? {
        return Err(Error::InvalidParameter(format!(
            "GF({})^{} has nonzero self-orthogonal vectors",
            inst.field.p(),
            inst.d
        )));
    }
    check_split_components(inst)?;
    require_no(inst, limits)?;
    let bound = anisotropic_split_bound(inst.d);
    let comp = no_component(inst, limits)?;
    let (clique, independent) = split_parts(&inst.graph, &comp)?;
    if clique.len() > inst.d {
        let mut c = clique;
        c.sort_unstable();
        c.truncate(inst.d + 1);
        return SubInstanceWitness::new(inst, c, bound);
    }
    let all_q = enumerate_all_subspaces(inst.field, inst.d, limits.enumeration_cap)?;
    let meets = |q: &Subspace<PrimeField>, l: &Subspace<PrimeField>| q.intersection(l).dim() > 0;
    let mut independent = independent;
    independent.sort_unstable();
    let kept = prune_independent(&inst.graph, &independent, |w, twins| {
        Ok(all_q
            .iter()
            .filter(|q| twins.iter().all(|&v| meets(q, &inst.lists[v])))
            .all(|q| meets(q, &inst.lists[w])))
    })?;
    SubInstanceWitness::new(inst, clique.into_iter().chain(kept).collect(), bound)
}

/// The instance obtained by fixing vector `u` at vertex `v`: `v` and every
/// non-neighbor `v'` with `u` in `L(v')` are deleted, and neighbors of `v`
/// have their lists cut down to `u^perp`. When the non-neighbors of `v` are
/// independent, the original instance has a solution giving `u` to `v` iff
/// this one is YES. Returns the instance and its vertices in the input.
pub fn fix_vertex(inst: &SubChooseInstance, v: usize, u: &[u32]) -> Result<(SubChooseInstance, Vec<usize>)> {
    let g = &inst.graph;
    let keep: Vec<usize> = (0..inst.n())
        .filter(|&w| w != v && (g.has_edge(v, w) || !inst.lists[w].contains(u)))
        .collect();
    let mut sub = inst.induced(&keep)?;
    for (i, &w) in keep.iter().enumerate() {
        if g.has_edge(v, w) {
            sub.lists[i] = inst.lists[w].intersect_perp(u);
        }
    }
    Ok((sub, keep))
}

/// Certificate for a NO instance whose components are complements of chordal
/// graphs. A vertex whose list holds only self-orthogonal vectors is a
/// certificate on its own. Otherwise a vertex `v` with independent
/// non-neighbors in a NO component is marked, and the procedure recurses on
/// [`fix_vertex`] for every non-self-orthogonal class `u` in `L(v)`; the
/// certificate is the union of all marks.
pub fn cochordal_no_certificate(inst: &SubChooseInstance, limits: &SearchLimits) -> Result<SubInstanceWitness> {
    for comp in inst.graph.connected_components() {
        let (h, _) = inst.graph.induced_subgraph(&comp)?;
        if !h.complement().is_chordal() {
            return Err(Error::FamilyMismatch("union-cochordal".into()));
        }
    }
    require_no(inst, limits)?;
    let mut marked = BTreeSet::new();
    let mut calls = 0u64;
    let identity: Vec<usize> = (0..inst.n()).collect();
    mark_cochordal(inst, &identity, limits, &mut marked, &mut calls)?;
    let bound = cochordal_bound(inst.d, inst.field.p() as u64);
    SubInstanceWitness::new(inst, marked.into_iter().collect(), bound)
}

fn mark_cochordal(
    inst: &SubChooseInstance,
    names: &[usize],
    limits: &SearchLimits,
    marked: &mut BTreeSet<usize>,
    calls: &mut u64,
) -> Result<()> {
    *calls += 1;
    if *calls > limits.node_budget {
        return Err(Error::CapExceeded(format!("certificate recursion exceeded {} calls", limits.node_budget)));
    }
    if let Some(v) = (0..inst.n()).find(|&v| inst.lists[v].all_self_orthogonal()) {
        marked.insert(names[v]);
        return Ok(());
    }
    let comp = no_component(inst, limits)?;
    let sub = inst.induced(&comp)?;
    let sub_names: Vec<usize> = comp.iter().map(|&i| names[i]).collect();
    let v = sub
        .graph
        .find_cosimplicial_vertex()
        .ok_or_else(|| Error::FamilyMismatch("union-cochordal".into()))?;
    marked.insert(sub_names[v]);
    let f = sub.field;
    for u in sub.lists[v].projective_points() {
        if dot(&f, &u, &u) == 0 {
            continue;
        }
        let (next, keep) = fix_vertex(&sub, v, &u)?;
        let next_names: Vec<usize> = keep.iter().map(|&i| sub_names[i]).collect();
        mark_cochordal(&next, &next_names, limits, marked, calls)?;
    }
    Ok(())
}

/// Clique `c_0..c_{d-1}` with lists `F^d`, and one independent vertex per
/// `floor(d/2)`-subset `S` of `0..d` (lexicographic), adjacent to the `c_i`
/// with `i` in `S` and with list `span(e_0..e_{floor(d/2)-1})`. A NO instance
/// in which deleting any vertex gives a YES instance.
pub fn build_irreducible_split_instance(d: usize, field: PrimeField) -> Result<SubChooseInstance> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("need d >= 2, got {d}")));
    }
    let half = d / 2;
    let subsets = crate::algebra::subspace::combinations(d, half);
    let mut g = Graph::complete(d);
    let w = Subspace::span(field, d, &(0..half).map(|i| unit_vector(&field, d, i)).collect::<Vec<_>>())?;
    let mut lists = vec![Subspace::full(field, d); d];
    for s in &subsets {
        let v = g.add_vertex();
        for &i in s {
            g.add_edge(v, i)?;
        }
        lists.push(w.clone());
    }
    SubChooseInstance::new(g, d, field, lists)
}

/// Outcome of checking a certificate against its instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertificateCheck {
    pub sub_instance: bool,
    pub no_instance: bool,
    pub within_bound: bool,
}

impl CertificateCheck {
    pub fn valid(&self) -> bool {
        self.sub_instance && self.no_instance && self.within_bound
    }
}

/// Checks that the witness is the sub-instance its vertices induce, that it
/// has no solution, and that it respects its bound. Search caps surface as
/// errors, never as a failed check.
pub fn verify_certificate(inst: &SubChooseInstance, witness: &SubInstanceWitness, limits: &SearchLimits) -> Result<CertificateCheck> {
    let sorted = witness.vertices.windows(2).all(|w| w[0] < w[1]);
    let in_range = witness.vertices.iter().all(|&v| v < inst.n());
    let sub_instance = sorted && in_range && inst.induced(&witness.vertices)? == witness.instance;
    let no_instance = decide_subchoose(&witness.instance, limits)?.is_none();
    let within_bound = witness.vertices.len() as u128 <= witness.bound;
    Ok(CertificateCheck { sub_instance, no_instance, within_bound })
}
