//! Kernelization for the orthogonality-dimension problem parameterized by a
//! modulator.
//!
//! Every kernel keeps the modulator `X` (sorted, renumbered `0..k`) and
//! replaces the rest of the graph by a bounded number of representatives.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::algebra::field::PrimeField;
use crate::algebra::poly::{det_substituted_poly, poly_rank_basis, MultilinearPoly};
use crate::error::{Error, Result};
use crate::graph::{normalize_set, Family, Graph};
use crate::solver::{decide_od, SearchLimits};

/// `C(n, k)`, saturating.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// `k + sum_{i=m}^{d} C(k, i)`.
pub fn k_graph_bound(k: usize, m: usize, d: usize) -> u128 {
    (m..=d).fold(k as u128, |acc, i| acc.saturating_add(binomial(k, i)))
}

/// `k + C(k d, d - 1)`.
pub fn real_kernel_bound(k: usize, d: usize) -> u128 {
    (k as u128).saturating_add(binomial(k * d, d.saturating_sub(1)))
}

/// `k + sum_{t=1}^{g} t * 2^C(t,2) * (sum_{i<=d} C(k,i))^t`: one marked tuple
/// per labeled pattern and per tuple of neighborhood sets.
pub fn hereditary_bound(k: usize, d: usize, g: usize) -> u128 {
    let sets = (0..=d).fold(0u128, |acc, i| acc.saturating_add(binomial(k, i)));
    (1..=g).fold(k as u128, |acc, t| {
        let patterns = 1u128 << (t * (t - 1) / 2);
        let tuples = (0..t).fold(1u128, |a, _| a.saturating_mul(sets));
        acc.saturating_add((t as u128).saturating_mul(patterns).saturating_mul(tuples))
    })
}

/// Which kernel produced an output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelAlgorithm {
    General,
    Real,
    Hereditary,
}

impl std::fmt::Display for KernelAlgorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            KernelAlgorithm::General => "general",
            KernelAlgorithm::Real => "real",
            KernelAlgorithm::Hereditary => "hereditary",
        })
    }
}

impl std::str::FromStr for KernelAlgorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(KernelAlgorithm::General),
            "real" => Ok(KernelAlgorithm::Real),
            "hereditary" => Ok(KernelAlgorithm::Hereditary),
            _ => Err(Error::InvalidParameter(format!("unknown kernel `{s}`"))),
        }
    }
}

/// Sizes before and after kernelization together with the proven bound.
/// Serializes with keys in alphabetical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub algorithm: KernelAlgorithm,
    pub n_in: usize,
    pub m_in: usize,
    pub k: usize,
    pub d: usize,
    pub n_out: usize,
    pub m_out: usize,
    pub bound: u64,
    pub within_bound: bool,
}

impl KernelReport {
    fn new(algorithm: KernelAlgorithm, input: &Graph, k: usize, d: usize, output: &Graph, bound: u128) -> Self {
        KernelReport {
            algorithm,
            n_in: input.n(),
            m_in: input.m(),
            k,
            d,
            n_out: output.n(),
            m_out: output.m(),
            bound: u64::try_from(bound).unwrap_or(u64::MAX),
            within_bound: output.n() as u128 <= bound,
        }
    }

    /// JSON object with sorted keys.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// A kernel: the reduced graph, its modulator (always `0..k`), the input
/// vertex each output vertex stands for, and the size report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelOutput {
    pub graph: Graph,
    pub modulator: Vec<usize>,
    pub origin: Vec<usize>,
    pub report: KernelReport,
}

/// The graph `KG(G, X, m, d)`: `G[X]` plus one vertex `v_S` adjacent to exactly
/// `S` for every `S` within `X` of size `m..=d` contained in the neighborhood
/// of some vertex outside `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KGraphResult {
    pub graph: Graph,
    /// Sorted `X`; output vertex `i < k` is `x[i]`.
    pub x: Vec<usize>,
    /// For each added vertex `k + j`: its set `S` as positions in `x`.
    pub subsets: Vec<Vec<usize>>,
    /// For each added vertex: the smallest outside vertex whose neighborhood
    /// contains `S`.
    pub witness: Vec<usize>,
    pub m: usize,
    pub d: usize,
}

impl KGraphResult {
    pub fn k(&self) -> usize {
        self.x.len()
    }

    /// Input vertex represented by each output vertex.
    pub fn origin(&self) -> Vec<usize> {
        self.x.iter().chain(&self.witness).copied().collect()
    }
}

fn subsets_in_range(items: &[usize], lo: usize, hi: usize, out: &mut Vec<Vec<usize>>) {
    fn rec(items: &[usize], start: usize, lo: usize, hi: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() >= lo {
            out.push(cur.clone());
        }
        if cur.len() == hi {
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, i + 1, lo, hi, cur, out);
            cur.pop();
        }
    }
    rec(items, 0, lo, hi, &mut Vec::new(), out);
}

fn check_cover(g: &Graph, x: &[usize]) -> Result<Vec<usize>> {
    g.vertex_mask(x)?;
    if !g.is_vertex_cover(x) {
        return Err(Error::NotVertexCover);
    }
    Ok(normalize_set(x.to_vec()))
}

/// Positions (in sorted `x`) of the neighbors of `v` inside `x`.
fn x_positions(g: &Graph, v: usize, pos: &[usize]) -> Vec<usize> {
    g.neighbors(v).iter().filter_map(|&w| (pos[w] != usize::MAX).then_some(pos[w])).collect()
}

fn positions(n: usize, x: &[usize]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in x.iter().enumerate() {
        pos[v] = i;
    }
    pos
}

pub fn build_k_graph(g: &Graph, x: &[usize], m: usize, d: usize) -> Result<KGraphResult> {
    if m < 1 || m > d {
        return Err(Error::InvalidParameter(format!("need 1 <= m <= d, got m = {m}, d = {d}")));
    }
    let x = check_cover(g, x)?;
    let pos = positions(g.n(), &x);
    // keyed by (size, set) so iteration is by size, then lexicographic
    let mut found: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    for w in (0..g.n()).filter(|&w| pos[w] == usize::MAX) {
        let mut sets = Vec::new();
        subsets_in_range(&x_positions(g, w, &pos), m, d, &mut sets);
        for s in sets {
            found.entry((s.len(), s)).or_insert(w);
        }
    }
    let (mut graph, _) = g.induced_subgraph(&x)?;
    let mut subsets = Vec::with_capacity(found.len());
    let mut witness = Vec::with_capacity(found.len());
    for ((_, s), w) in found {
        let v = graph.add_vertex();
        for &i in &s {
            graph.add_edge(v, i)?;
        }
        subsets.push(s);
        witness.push(w);
    }
    Ok(KGraphResult { graph, x, subsets, witness, m, d })
}

/// The kernel `KG(G, X, 1, d)`; decision-equivalent over every field.
pub fn kernel_general(g: &Graph, x: &[usize], d: usize) -> Result<KernelOutput> {
    let kg = build_k_graph(g, x, 1, d)?;
    let k = kg.k();
    let report = KernelReport::new(KernelAlgorithm::General, g, k, d, &kg.graph, k_graph_bound(k, 1, d));
    Ok(KernelOutput { origin: kg.origin(), modulator: (0..k).collect(), graph: kg.graph, report })
}

/// Full record of the real-field kernel: the phase-one K-graph, the polynomial
/// of each added vertex, and the indices (into `kgraph.subsets`) of the basis
/// that was kept.
#[derive(Clone, Debug)]
pub struct RealKernel {
    pub output: KernelOutput,
    pub kgraph: KGraphResult,
    pub polys: Vec<MultilinearPoly>,
    pub basis: Vec<usize>,
}

/// Polynomial of a `d`-set `S` of modulator positions: the determinant of the
/// `d x d` matrix whose columns are the vectors of `S` in sorted order, with
/// the first coordinate of every vector fixed to 1. Coordinate `i` of the
/// vertex at position `p` is variable `p d + i`.
pub fn subset_polynomial(s: &[usize], k: usize, d: usize) -> Result<MultilinearPoly> {
    if s.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: s.len() });
    }
    let det = det_substituted_poly(d)?;
    let mut map = vec![0; d * d];
    for r in 1..d {
        for (c, &p) in s.iter().enumerate() {
            map[r * d + c] = p * d + r;
        }
    }
    det.rename(&map, k * d)
}

/// Real-field kernel: `KG(G, X, d, d)` followed by keeping only the added
/// vertices whose polynomials form a basis of the span of all of them.
pub fn kernel_real_detailed(g: &Graph, x: &[usize], d: usize) -> Result<RealKernel> {
    if d < 3 {
        return Err(Error::InvalidParameter(format!("real kernel needs d >= 3, got {d}")));
    }
    let kg = build_k_graph(g, x, d, d)?;
    let k = kg.k();
    let polys = kg.subsets.iter().map(|s| subset_polynomial(s, k, d)).collect::<Result<Vec<_>>>()?;
    let basis = poly_rank_basis(&polys)?;
    let keep: Vec<usize> = (0..k).chain(basis.iter().map(|&j| k + j)).collect();
    let (graph, _) = kg.graph.induced_subgraph(&keep)?;
    let full_origin = kg.origin();
    let origin = keep.iter().map(|&v| full_origin[v]).collect();
    let report = KernelReport::new(KernelAlgorithm::Real, g, k, d, &graph, real_kernel_bound(k, d));
    Ok(RealKernel {
        output: KernelOutput { graph, modulator: (0..k).collect(), origin, report },
        kgraph: kg,
        polys,
        basis,
    })
}

pub fn kernel_real(g: &Graph, x: &[usize], d: usize) -> Result<KernelOutput> {
    Ok(kernel_real_detailed(g, x, d)?.output)
}

pub const DEFAULT_PATTERN_CAP: usize = 3;

/// Marking kernel for modulators to a hereditary family.
///
/// For every ordered tuple `(v_1..v_t)` of distinct vertices outside `X`
/// with `t <= g_of_d`, every labeled pattern they induce, and every tuple of
/// sets `S_i` of at most `d` modulator vertices with `S_i` inside `N(v_i)`,
/// the lexicographically first matching vertex tuple is marked. The output
/// is `G[X + marked]`.
pub fn kernel_hereditary(g: &Graph, x: &[usize], d: usize, family: Family, g_of_d: usize, cap: usize) -> Result<KernelOutput> {
    if family == Family::Path {
        return Err(Error::InvalidParameter("paths are not closed under induced subgraphs".into()));
    }
    if g_of_d > cap {
        return Err(Error::CapExceeded(format!("pattern size {g_of_d} above cap {cap}")));
    }
    let x = normalize_set(x.to_vec());
    if x.len() > 64 {
        return Err(Error::CapExceeded("modulators above 64 vertices".into()));
    }
    let (rest, _) = g.remove_vertices(&x)?;
    if !rest.in_family(family) {
        return Err(Error::FamilyMismatch(family.to_string()));
    }
    let pos = positions(g.n(), &x);
    let outside: Vec<usize> = (0..g.n()).filter(|&v| pos[v] == usize::MAX).collect();
    // neighborhood sets of each outside vertex as bitmasks over positions
    let sets: Vec<Vec<u64>> = outside
        .iter()
        .map(|&v| {
            let mut all = Vec::new();
            subsets_in_range(&x_positions(g, v, &pos), 0, d, &mut all);
            all.iter().map(|s| s.iter().fold(0u64, |m, &i| m | 1 << i)).collect()
        })
        .collect();
    let mut marked = vec![false; outside.len()];
    let mut seen: HashSet<(u64, Vec<u64>)> = HashSet::new();
    for t in 1..=g_of_d.min(outside.len()) {
        let mut tuple = Vec::with_capacity(t);
        mark_tuples(g, &outside, &sets, t, &mut tuple, &mut seen, &mut marked);
    }
    let keep: Vec<usize> = x
        .iter()
        .copied()
        .chain(outside.iter().zip(&marked).filter(|(_, &m)| m).map(|(&v, _)| v))
        .collect();
    let (graph, origin) = g.induced_subgraph(&keep)?;
    let k = x.len();
    let report = KernelReport::new(KernelAlgorithm::Hereditary, g, k, d, &graph, hereditary_bound(k, d, g_of_d));
    Ok(KernelOutput { graph, modulator: (0..k).collect(), origin, report })
}

fn mark_tuples(
    g: &Graph,
    outside: &[usize],
    sets: &[Vec<u64>],
    t: usize,
    tuple: &mut Vec<usize>,
    seen: &mut HashSet<(u64, Vec<u64>)>,
    marked: &mut [bool],
) {
    if tuple.len() == t {
        // labeled pattern: bit per pair (i, j), i < j, in lexicographic order
        let mut pattern = 0u64;
        let mut bit = 0;
        for i in 0..t {
            for j in i + 1..t {
                if g.has_edge(outside[tuple[i]], outside[tuple[j]]) {
                    pattern |= 1 << bit;
                }
                bit += 1;
            }
        }
        let mut choice = vec![0u64; t];
        let mut hit = false;
        set_tuples(tuple, sets, 0, &mut choice, pattern, seen, &mut hit);
        if hit {
            for &i in tuple.iter() {
                marked[i] = true;
            }
        }
        return;
    }
    for i in 0..outside.len() {
        if !tuple.contains(&i) {
            tuple.push(i);
            mark_tuples(g, outside, sets, t, tuple, seen, marked);
            tuple.pop();
        }
    }
}

fn set_tuples(
    tuple: &[usize],
    sets: &[Vec<u64>],
    i: usize,
    choice: &mut Vec<u64>,
    pattern: u64,
    seen: &mut HashSet<(u64, Vec<u64>)>,
    hit: &mut bool,
) {
    if i == tuple.len() {
        if seen.insert((pattern, choice.clone())) {
            *hit = true;
        }
        return;
    }
    for &s in &sets[tuple[i]] {
        choice[i] = s;
        set_tuples(tuple, sets, i + 1, choice, pattern, seen, hit);
    }
}

/// Outcome of comparing the decisions on an input and its kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Agree(bool),
    Disagree { input: bool, kernel: bool },
    /// A search hit its cap; nothing is claimed.
    Inconclusive(String),
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        matches!(self, Equivalence::Agree(_))
    }
}

/// Runs `decide_od` on `g` and on `kernel` and compares.
pub fn compare_decisions(g: &Graph, kernel: &Graph, d: usize, field: PrimeField, limits: &SearchLimits) -> Equivalence {
    let run = |h: &Graph| decide_od(h, d, field, limits).map(|r| r.is_some());
    match (run(g), run(kernel)) {
        (Ok(a), Ok(b)) if a == b => Equivalence::Agree(a),
        (Ok(a), Ok(b)) => Equivalence::Disagree { input: a, kernel: b },
        (Err(e), _) | (_, Err(e)) => Equivalence::Inconclusive(e.to_string()),
    }
}

/// Kernelizes `g` with the chosen algorithm (the hereditary kernel uses the
/// empty family and patterns of size 1) and compares decisions.
pub fn verify_kernel_equivalence(
    g: &Graph,
    x: &[usize],
    d: usize,
    field: PrimeField,
    algorithm: KernelAlgorithm,
    limits: &SearchLimits,
) -> Result<Equivalence> {
    let out = match algorithm {
        KernelAlgorithm::General => kernel_general(g, x, d)?,
        KernelAlgorithm::Real => kernel_real(g, x, d)?,
        KernelAlgorithm::Hereditary => kernel_hereditary(g, x, d, Family::Empty, 1, DEFAULT_PATTERN_CAP)?,
    };
    Ok(compare_decisions(g, &out.graph, d, field, limits))
}
