//! Backtracking search for orthogonal representations over prime fields.
//!
//! Vectors are drawn from projective representatives of the non-self-orthogonal
//! classes; every constraint is invariant under nonzero scaling, so this loses
//! no solutions. Each vertex carries a bitset domain over those classes. The
//! search picks a vertex with the fewest remaining classes, forward-checks its
//! unassigned neighbors, and handles connected components independently.

use crate::algebra::field::{dot, PrimeField};
use crate::algebra::subspace::{exists_nonselforth_in_complement, unit_vector, Subspace, DEFAULT_ENUMERATION_CAP};
use crate::algebra::enumerate_nonselforth_vectors;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solver::orthrep::OrthRep;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Resource limits shared by the exhaustive procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum number of search-tree nodes (tentative assignments).
    pub node_budget: u64,
    /// Maximum size of any explicitly enumerated vector or subspace family.
    pub enumeration_cap: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { node_budget: DEFAULT_NODE_BUDGET, enumeration_cap: DEFAULT_ENUMERATION_CAP }
    }
}

impl SearchLimits {
    pub fn with_budget(node_budget: u64) -> Self {
        SearchLimits { node_budget, ..Default::default() }
    }
}

type Bits = Vec<u64>;

fn set_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn count(bits: &[u64]) -> u32 {
    bits.iter().map(|w| w.count_ones()).sum()
}

fn ones(bits: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (wi, &w) in bits.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            out.push(wi * 64 + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
    out
}

/// Projective non-self-orthogonal classes of `GF(p)^d` with their
/// orthogonality relation.
pub(crate) struct VectorTable {
    field: PrimeField,
    d: usize,
    vectors: Vec<Vec<u32>>,
    orth: Vec<Bits>,
    words: usize,
}

impl VectorTable {
    pub(crate) fn new(field: PrimeField, d: usize, cap: u64) -> Result<Self> {
        let vectors = enumerate_nonselforth_vectors(field, d, cap)?;
        let c = vectors.len();
        if (c as u128) * (c as u128) > cap as u128 * 64 {
            return Err(Error::CapExceeded(format!("{c} vector classes are too many to tabulate")));
        }
        let words = c.div_ceil(64).max(1);
        let mut orth = vec![vec![0u64; words]; c];
        for i in 0..c {
            for j in i + 1..c {
                if dot(&field, &vectors[i], &vectors[j]) == 0 {
                    set_bit(&mut orth[i], j);
                    set_bit(&mut orth[j], i);
                }
            }
        }
        Ok(VectorTable { field, d, vectors, orth, words })
    }

    fn full_domain(&self) -> Bits {
        let mut b = vec![0u64; self.words];
        for i in 0..self.vectors.len() {
            set_bit(&mut b, i);
        }
        b
    }

    fn domain_in(&self, sub: &Subspace<PrimeField>) -> Bits {
        let mut b = vec![0u64; self.words];
        for (i, v) in self.vectors.iter().enumerate() {
            if sub.contains(v) {
                set_bit(&mut b, i);
            }
        }
        b
    }

    pub(crate) fn len(&self) -> usize {
        self.vectors.len()
    }

    pub(crate) fn vectors(&self) -> &[Vec<u32>] {
        &self.vectors
    }
}

const NONE: usize = usize::MAX;

struct Engine<'a> {
    g: &'a Graph,
    table: &'a VectorTable,
    dom: Vec<Bits>,
    assign: Vec<usize>,
    /// For vertices decided outside the search: how many neighbors are still
    /// unassigned, or `NONE` for searched vertices.
    pending: Vec<usize>,
    outside_vec: Vec<Option<Vec<u32>>>,
    nodes: u64,
    budget: u64,
}

impl<'a> Engine<'a> {
    fn new(g: &'a Graph, table: &'a VectorTable, dom: Vec<Bits>, budget: u64) -> Self {
        let n = g.n();
        Engine {
            g,
            table,
            dom,
            assign: vec![NONE; n],
            pending: vec![NONE; n],
            outside_vec: vec![None; n],
            nodes: 0,
            budget,
        }
    }

    fn check_outside(&mut self, w: usize) -> Result<bool> {
        let nbr: Vec<Vec<u32>> = self.g.neighbors(w).iter().map(|&u| self.table.vectors[self.assign[u]].clone()).collect();
        let found = exists_nonselforth_in_complement(&self.table.field, self.table.d, &nbr)?;
        let ok = found.is_some();
        self.outside_vec[w] = found;
        Ok(ok)
    }

    fn dfs(&mut self, free: &mut Vec<usize>) -> Result<bool> {
        if free.is_empty() {
            return Ok(true);
        }
        let mut pos = 0;
        let mut best = u32::MAX;
        for (i, &v) in free.iter().enumerate() {
            let c = count(&self.dom[v]);
            if c < best {
                best = c;
                pos = i;
            }
        }
        let v = free.swap_remove(pos);
        for c in ones(&self.dom[v]) {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::CapExceeded(format!("search exceeded {} nodes", self.budget)));
            }
            let mut trail: Vec<(usize, Bits)> = Vec::new();
            let mut ok = true;
            for &w in self.g.neighbors(v) {
                if self.assign[w] != NONE || self.pending[w] != NONE {
                    continue;
                }
                let narrowed: Bits = self.dom[w].iter().zip(&self.table.orth[c]).map(|(a, b)| a & b).collect();
                if narrowed != self.dom[w] {
                    let empty = narrowed.iter().all(|&x| x == 0);
                    trail.push((w, std::mem::replace(&mut self.dom[w], narrowed)));
                    if empty {
                        ok = false;
                        break;
                    }
                }
            }
            self.assign[v] = c;
            let mut touched = Vec::new();
            if ok {
                for &w in self.g.neighbors(v) {
                    if self.pending[w] != NONE {
                        self.pending[w] -= 1;
                        touched.push(w);
                        if self.pending[w] == 0 && !self.check_outside(w)? {
                            ok = false;
                            break;
                        }
                    }
                }
            }
            if ok && self.dfs(free)? {
                return Ok(true);
            }
            for w in touched {
                self.pending[w] += 1;
            }
            self.assign[v] = NONE;
            for (w, old) in trail.into_iter().rev() {
                self.dom[w] = old;
            }
        }
        free.push(v);
        let last = free.len() - 1;
        free.swap(pos, last);
        Ok(false)
    }

    /// Searches the vertices in `searched`; every other vertex must get its
    /// vector from the complement of its neighbors' vectors.
    fn run(&mut self, searched: &[bool]) -> Result<bool> {
        for v in 0..self.g.n() {
            if !searched[v] {
                if self.g.neighbors(v).iter().any(|&u| !searched[u]) {
                    return Err(Error::NotVertexCover);
                }
                self.pending[v] = self.g.degree(v);
                if self.pending[v] == 0 && !self.check_outside(v)? {
                    return Ok(false);
                }
            }
        }
        if (0..self.g.n()).any(|v| searched[v] && self.dom[v].iter().all(|&x| x == 0)) {
            return Ok(false);
        }
        for comp in self.g.connected_components() {
            let mut free: Vec<usize> = comp.into_iter().filter(|&v| searched[v]).collect();
            if !self.dfs(&mut free)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn witness(&self) -> OrthRep<PrimeField> {
        let vectors = (0..self.g.n())
            .map(|v| match self.assign[v] {
                NONE => self.outside_vec[v].clone().expect("outside vertex resolved"),
                c => self.table.vectors[c].clone(),
            })
            .collect();
        OrthRep::new(self.table.field, self.table.d, vectors)
    }
}

/// Decides `od_F(g) <= d` over a prime field, returning a witness on YES.
pub fn decide_od(g: &Graph, d: usize, field: PrimeField, limits: &SearchLimits) -> Result<Option<OrthRep<PrimeField>>> {
    let table = VectorTable::new(field, d, limits.enumeration_cap)?;
    let dom = vec![table.full_domain(); g.n()];
    let mut engine = Engine::new(g, &table, dom, limits.node_budget);
    Ok(engine.run(&vec![true; g.n()])?.then(|| engine.witness()))
}

/// Decides `od_F(g) <= d` given a vertex cover `x`: if `d > |x|` the answer is
/// YES outright; otherwise assignments to `x` are enumerated and each vertex
/// outside `x` is checked for a non-self-orthogonal vector orthogonal to all
/// of its neighbors.
pub fn fpt_decide_vc(
    g: &Graph,
    x: &[usize],
    d: usize,
    field: PrimeField,
    limits: &SearchLimits,
) -> Result<Option<OrthRep<PrimeField>>> {
    if !g.is_vertex_cover(x) {
        return Err(Error::NotVertexCover);
    }
    let searched = g.vertex_mask(x)?;
    let cover: Vec<usize> = (0..g.n()).filter(|&v| searched[v]).collect();
    if d > cover.len() {
        // color the cover injectively and everything else with one extra color
        let mut coloring = vec![cover.len(); g.n()];
        for (i, &v) in cover.iter().enumerate() {
            coloring[v] = i;
        }
        let vectors = coloring.iter().map(|&c| unit_vector(&field, d, c)).collect();
        return Ok(Some(OrthRep::new(field, d, vectors)));
    }
    let table = VectorTable::new(field, d, limits.enumeration_cap)?;
    let dom = vec![table.full_domain(); g.n()];
    let mut engine = Engine::new(g, &table, dom, limits.node_budget);
    Ok(engine.run(&searched)?.then(|| engine.witness()))
}

/// A graph with a prescribed subspace `L(v)` of `F^d` for every vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct SubChooseInstance {
    pub graph: Graph,
    pub d: usize,
    pub field: PrimeField,
    pub lists: Vec<Subspace<PrimeField>>,
}

impl SubChooseInstance {
    pub fn new(graph: Graph, d: usize, field: PrimeField, lists: Vec<Subspace<PrimeField>>) -> Result<Self> {
        if lists.len() != graph.n() {
            return Err(Error::DimensionMismatch { expected: graph.n(), found: lists.len() });
        }
        if let Some(bad) = lists.iter().find(|l| l.ambient_dim() != d || l.field() != &field) {
            return Err(Error::DimensionMismatch { expected: d, found: bad.ambient_dim() });
        }
        Ok(SubChooseInstance { graph, d, field, lists })
    }

    /// Every list is the whole space.
    pub fn full(graph: Graph, d: usize, field: PrimeField) -> Self {
        let lists = vec![Subspace::full(field, d); graph.n()];
        SubChooseInstance { graph, d, field, lists }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// The sub-instance induced by `vertices`, which become `0..len` in order.
    pub fn induced(&self, vertices: &[usize]) -> Result<SubChooseInstance> {
        let (graph, _) = self.graph.induced_subgraph(vertices)?;
        let lists = vertices.iter().map(|&v| self.lists[v].clone()).collect();
        Ok(SubChooseInstance { graph, d: self.d, field: self.field, lists })
    }

    /// Whether `rep` is a representation of the graph with `u_v` in `L(v)`.
    pub fn accepts(&self, rep: &OrthRep<PrimeField>) -> bool {
        crate::solver::orthrep::verify_orthrep(&self.graph, rep).is_ok()
            && rep.vectors.iter().zip(&self.lists).all(|(x, l)| l.contains(x))
    }
}

/// Decides whether the graph has a `d`-dimensional representation with every
/// vector inside its vertex's list.
pub fn decide_subchoose(inst: &SubChooseInstance, limits: &SearchLimits) -> Result<Option<OrthRep<PrimeField>>> {
    let table = VectorTable::new(inst.field, inst.d, limits.enumeration_cap)?;
    let dom = inst.lists.iter().map(|l| table.domain_in(l)).collect();
    let mut engine = Engine::new(&inst.graph, &table, dom, limits.node_budget);
    Ok(engine.run(&vec![true; inst.n()])?.then(|| engine.witness()))
}

/// Number of projective non-self-orthogonal classes in `GF(p)^d`.
pub fn class_count(field: PrimeField, d: usize, limits: &SearchLimits) -> Result<usize> {
    Ok(VectorTable::new(field, d, limits.enumeration_cap)?.len())
}
