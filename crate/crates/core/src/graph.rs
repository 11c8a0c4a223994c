//! Simple undirected graphs on dense `0..n` vertex indices, together with the
//! combinatorial primitives the kernels and reductions are built from.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph. Neighbor lists are kept sorted.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], labels: None }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            g.adj[u] = (0..n).filter(|&v| v != u).collect();
        }
        g
    }

    /// Path on `n` vertices in index order.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.insert_edge_unchecked(i - 1, i);
        }
        g
    }

    /// Cycle on `m >= 3` vertices with edges `{i, i+1 mod m}`.
    pub fn cycle(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidParameter(format!("cycle length {m} < 3")));
        }
        let mut g = Graph::path(m);
        g.insert_edge_unchecked(0, m - 1);
        Ok(g)
    }

    /// Complete bipartite graph with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.insert_edge_unchecked(u, v);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: labels.len() });
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Appends a fresh isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        if let Some(labels) = &mut self.labels {
            labels.push(format!("v{}", labels.len()));
        }
        self.adj.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.insert_edge_unchecked(u, v);
        Ok(())
    }

    /// Adds `{u, v}` unless it is already present. Loops are rejected.
    pub fn ensure_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if self.has_edge(u, v) {
            return Ok(());
        }
        self.add_edge(u, v)
    }

    fn insert_edge_unchecked(&mut self, u: usize, v: usize) {
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        Ok(())
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::new(n);
        for u in 0..n {
            g.adj[u] = (0..n).filter(|&v| v != u && !self.has_edge(u, v)).collect();
        }
        g.labels = self.labels.clone();
        g
    }

    /// Subgraph induced by `s`. Vertex `i` of the result is `s[i]` of `self`;
    /// the returned map is exactly that list.
    pub fn induced_subgraph(&self, s: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in s.iter().enumerate() {
            self.check_vertex(v)?;
            if pos[v] != usize::MAX {
                return Err(Error::InvalidParameter(format!("vertex {v} listed twice")));
            }
            pos[v] = i;
        }
        let mut g = Graph::new(s.len());
        for (i, &v) in s.iter().enumerate() {
            let mut ns: Vec<usize> = self.adj[v]
                .iter()
                .filter_map(|&w| (pos[w] != usize::MAX).then_some(pos[w]))
                .collect();
            ns.sort_unstable();
            g.adj[i] = ns;
        }
        if let Some(labels) = &self.labels {
            g.labels = Some(s.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok((g, s.to_vec()))
    }

    /// `G \ X`: the subgraph induced by the vertices outside `x`, with the map
    /// back to original indices.
    pub fn remove_vertices(&self, x: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let drop = self.vertex_mask(x)?;
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !drop[v]).collect();
        self.induced_subgraph(&keep)
    }

    pub fn vertex_mask(&self, s: &[usize]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.n()];
        for &v in s {
            self.check_vertex(v)?;
            mask[v] = true;
        }
        Ok(mask)
    }

    pub fn is_clique(&self, s: &[usize]) -> bool {
        s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_independent(&self, s: &[usize]) -> bool {
        s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn is_vertex_cover(&self, x: &[usize]) -> bool {
        let Ok(mask) = self.vertex_mask(x) else {
            return false;
        };
        self.edges().all(|(u, v)| mask[u] || mask[v])
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Proper 2-coloring if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<usize>> {
        let n = self.n();
        let mut color = vec![usize::MAX; n];
        for s in 0..n {
            if color[s] != usize::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if color[w] == usize::MAX {
                        color[w] = 1 - color[u];
                        stack.push(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// A minimum vertex cover if one of size at most `budget` exists.
    ///
    /// Iterative deepening over a bounded search tree that branches on the
    /// endpoints of an uncovered edge; degree-one vertices are resolved by
    /// taking their neighbor.
    pub fn min_vertex_cover(&self, budget: usize) -> Option<Vec<usize>> {
        for k in 0..=budget.min(self.n()) {
            let mut removed = vec![false; self.n()];
            let mut cover = Vec::new();
            if self.cover_branch(k, &mut removed, &mut cover) {
                cover.sort_unstable();
                return Some(cover);
            }
        }
        None
    }

    fn cover_branch(&self, k: usize, removed: &mut [bool], cover: &mut Vec<usize>) -> bool {
        let live_deg = |v: usize, removed: &[bool]| self.adj[v].iter().filter(|&&w| !removed[w]).count();
        let mut edge = None;
        let mut pendant = None;
        for u in 0..self.n() {
            if removed[u] {
                continue;
            }
            let d = live_deg(u, removed);
            if d == 1 {
                let w = *self.adj[u].iter().find(|&&w| !removed[w]).unwrap();
                pendant = Some(w);
                break;
            }
            if d > 0 && edge.is_none() {
                let w = *self.adj[u].iter().find(|&&w| !removed[w]).unwrap();
                edge = Some((u, w));
            }
        }
        let choices: Vec<usize> = match (pendant, edge) {
            (Some(w), _) => vec![w],
            (None, Some((u, w))) => vec![u, w],
            (None, None) => return true,
        };
        if k == 0 {
            return false;
        }
        for c in choices {
            removed[c] = true;
            cover.push(c);
            if self.cover_branch(k - 1, removed, cover) {
                return true;
            }
            cover.pop();
            removed[c] = false;
        }
        false
    }

    /// Perfect elimination ordering if the graph is chordal, via maximum
    /// cardinality search followed by a direct check.
    pub fn perfect_elimination_order(&self) -> Option<Vec<usize>> {
        let n = self.n();
        let mut weight = vec![0usize; n];
        let mut numbered = vec![false; n];
        let mut visit = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !numbered[v])
                .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
                .unwrap();
            numbered[v] = true;
            visit.push(v);
            for &w in &self.adj[v] {
                if !numbered[w] {
                    weight[w] += 1;
                }
            }
        }
        visit.reverse();
        self.is_perfect_elimination_order(&visit).then_some(visit)
    }

    /// Each vertex's neighbors that come later in `order` form a clique.
    pub fn is_perfect_elimination_order(&self, order: &[usize]) -> bool {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        order.iter().enumerate().all(|(i, &v)| {
            let later: Vec<usize> = self.adj[v].iter().copied().filter(|&w| pos[w] > i).collect();
            self.is_clique(&later)
        })
    }

    pub fn is_chordal(&self) -> bool {
        self.perfect_elimination_order().is_some()
    }

    /// A vertex whose non-neighbors form an independent set, smallest index first.
    pub fn find_cosimplicial_vertex(&self) -> Option<usize> {
        (0..self.n()).find(|&v| {
            let non: Vec<usize> = (0..self.n()).filter(|&w| w != v && !self.has_edge(v, w)).collect();
            self.is_independent(&non)
        })
    }

    /// Split partition `(clique, independent)`, if one exists.
    ///
    /// Orders vertices by non-increasing degree and takes the largest prefix
    /// `C` with `deg(v_i) >= i - 1`; the graph is split iff that prefix is a
    /// clique and the rest is independent.
    pub fn split_partition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.degree(b).cmp(&self.degree(a)).then(a.cmp(&b)));
        let prefix = order
            .iter()
            .enumerate()
            .take_while(|&(i, &v)| self.degree(v) >= i)
            .count();
        let mut clique: Vec<usize> = order[..prefix].to_vec();
        let mut indep: Vec<usize> = order[prefix..].to_vec();
        clique.sort_unstable();
        indep.sort_unstable();
        (self.is_clique(&clique) && self.is_independent(&indep)).then_some((clique, indep))
    }

    /// The vertex order along the path if the graph is a path (the graph on
    /// zero vertices counts as the empty path).
    pub fn path_order(&self) -> Option<Vec<usize>> {
        let n = self.n();
        if n == 0 {
            return Some(Vec::new());
        }
        if self.m() != n - 1 || self.adj.iter().any(|ns| ns.len() > 2) {
            return None;
        }
        let start = (0..n).find(|&v| self.degree(v) <= 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = self.adj[cur].iter().find(|&&w| w != prev) {
            prev = cur;
            cur = next;
            order.push(cur);
        }
        (order.len() == n).then_some(order)
    }

    /// Membership test for a graph family, with a witness on success.
    pub fn recognize_family(&self, family: Family) -> Option<FamilyWitness> {
        match family {
            Family::Empty => (self.m() == 0).then_some(FamilyWitness::Empty),
            Family::Path => self.path_order().map(FamilyWitness::Path),
            Family::Split => self
                .split_partition()
                .map(|(clique, independent)| FamilyWitness::Split { clique, independent }),
            Family::Cochordal => self.complement().perfect_elimination_order().map(FamilyWitness::Cochordal),
            Family::UnionSplit => {
                let mut parts = Vec::new();
                for comp in self.connected_components() {
                    let (sub, map) = self.induced_subgraph(&comp).ok()?;
                    let (c, i) = sub.split_partition()?;
                    parts.push((
                        c.into_iter().map(|v| map[v]).collect(),
                        i.into_iter().map(|v| map[v]).collect(),
                    ));
                }
                Some(FamilyWitness::UnionSplit(parts))
            }
            Family::UnionCochordal => {
                let mut orders = Vec::new();
                for comp in self.connected_components() {
                    let (sub, map) = self.induced_subgraph(&comp).ok()?;
                    let peo = sub.complement().perfect_elimination_order()?;
                    orders.push(peo.into_iter().map(|v| map[v]).collect());
                }
                Some(FamilyWitness::UnionCochordal(orders))
            }
        }
    }

    pub fn in_family(&self, family: Family) -> bool {
        self.recognize_family(family).is_some()
    }

    /// Clique number by exhaustive search (desk scale).
    pub fn clique_number(&self) -> usize {
        fn grow(g: &Graph, cand: &[usize], size: usize, best: &mut usize) {
            if size + cand.len() <= *best {
                return;
            }
            if cand.is_empty() {
                *best = size;
                return;
            }
            for (i, &v) in cand.iter().enumerate() {
                let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
                grow(g, &next, size + 1, best);
            }
        }
        let mut best = 0;
        let all: Vec<usize> = (0..self.n()).collect();
        grow(self, &all, 0, &mut best);
        best
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut g = self.clone();
        g.labels = None;
        g.adj.extend(other.adj.iter().map(|ns| ns.iter().map(|&w| w + shift).collect()));
        g
    }
}

/// Hereditary families a modulator may reduce the graph to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Empty,
    Path,
    Split,
    Cochordal,
    UnionSplit,
    UnionCochordal,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Empty => "empty",
            Family::Path => "path",
            Family::Split => "split",
            Family::Cochordal => "cochordal",
            Family::UnionSplit => "union-split",
            Family::UnionCochordal => "union-cochordal",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "empty" => Family::Empty,
            "path" => Family::Path,
            "split" => Family::Split,
            "cochordal" => Family::Cochordal,
            "union-split" | "usplit" => Family::UnionSplit,
            "union-cochordal" | "ucochordal" => Family::UnionCochordal,
            other => return Err(Error::InvalidParameter(format!("unknown family `{other}`"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyWitness {
    Empty,
    /// Vertices in path order.
    Path(Vec<usize>),
    Split { clique: Vec<usize>, independent: Vec<usize> },
    /// Perfect elimination order of the complement.
    Cochordal(Vec<usize>),
    /// `(clique, independent)` per connected component.
    UnionSplit(Vec<(Vec<usize>, Vec<usize>)>),
    /// Complement elimination order per connected component.
    UnionCochordal(Vec<Vec<usize>>),
}

/// A graph with a modulator `X` such that `G \ X` lies in `family`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulatorInstance {
    pub graph: Graph,
    pub modulator: Vec<usize>,
    pub family: Family,
}

impl ModulatorInstance {
    pub fn new(graph: Graph, modulator: Vec<usize>, family: Family) -> Result<Self> {
        let inst = ModulatorInstance { graph, modulator: normalize_set(modulator), family };
        if !inst.is_valid()? {
            return Err(Error::FamilyMismatch(family.to_string()));
        }
        Ok(inst)
    }

    pub fn is_valid(&self) -> Result<bool> {
        let (rest, _) = self.graph.remove_vertices(&self.modulator)?;
        Ok(rest.in_family(self.family))
    }
}

/// Sorted, deduplicated copy of a vertex set.
pub fn normalize_set(mut s: Vec<usize>) -> Vec<usize> {
    s.sort_unstable();
    s.dedup();
    s
}

/// Sorted neighborhood restricted to a vertex mask.
pub fn masked_neighbors(g: &Graph, v: usize, mask: &[bool]) -> Vec<usize> {
    g.neighbors(v).iter().copied().filter(|&w| mask[w]).collect()
}
