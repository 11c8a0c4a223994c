#![allow(dead_code)]

use orthodim::Graph;
use proptest::prelude::*;

/// Graph on `n` vertices whose edges are the set bits of `mask` over the
/// pairs `(u, v)`, `u < v`, in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = pair_count(n);
        let top = if pairs == 0 { 1 } else { 1u64 << pairs };
        (Just(n), 0..top).prop_map(|(n, mask)| graph_from_mask(n, mask))
    })
}

/// Every vector of `GF(p)^d` with `<x, x> != 0`, unnormalized.
pub fn nonselforth_vectors(p: u32, d: usize) -> Vec<Vec<u32>> {
    let total = (p as usize).pow(d as u32);
    (0..total)
        .map(|mut i| {
            let mut v = vec![0; d];
            for x in v.iter_mut() {
                *x = (i % p as usize) as u32;
                i /= p as usize;
            }
            v
        })
        .filter(|v| v.iter().map(|x| x * x).sum::<u32>() % p != 0)
        .collect()
}

pub fn orth(p: u32, x: &[u32], y: &[u32]) -> bool {
    x.iter().zip(y).map(|(a, b)| a * b).sum::<u32>() % p == 0
}

/// Plain assignment-by-assignment search over all (unnormalized)
/// non-self-orthogonal vectors, checking edges back to earlier vertices.
pub fn brute_od(g: &Graph, d: usize, p: u32) -> bool {
    brute_lists(g, p, &vec![nonselforth_vectors(p, d); g.n()])
}

pub fn brute_lists(g: &Graph, p: u32, lists: &[Vec<Vec<u32>>]) -> bool {
    fn rec(g: &Graph, p: u32, lists: &[Vec<Vec<u32>>], chosen: &mut Vec<Vec<u32>>) -> bool {
        let v = chosen.len();
        if v == g.n() {
            return true;
        }
        for x in &lists[v] {
            if g.neighbors(v).iter().filter(|&&w| w < v).all(|&w| orth(p, x, &chosen[w])) {
                chosen.push(x.clone());
                if rec(g, p, lists, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    rec(g, p, lists, &mut Vec::new())
}

/// Smallest `q` admitting a proper coloring, by trying every map.
pub fn brute_chromatic(g: &Graph) -> usize {
    let n = g.n();
    for q in 0..=n {
        let total = (q as u64).pow(n as u32);
        if (0..total).any(|mut i| {
            let mut c = vec![0; n];
            for x in c.iter_mut() {
                *x = i % q as u64;
                i /= q as u64;
            }
            g.edges().all(|(u, v)| c[u] != c[v])
        }) {
            return q;
        }
    }
    n
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative (the minimum edge mask) per isomorphism class of
/// graphs on exactly `n` vertices.
pub fn isomorphism_classes(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
    let perms = permutations(n);
    let images: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect())
        .collect();
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for mask in 0..1u64 << pairs.len() {
        let canon = images
            .iter()
            .map(|img| img.iter().enumerate().filter(|&(b, _)| mask >> b & 1 == 1).fold(0u64, |m, (_, &t)| m | 1 << t))
            .min()
            .unwrap();
        if seen.insert(canon) {
            reps.push(graph_from_mask(n, canon));
        }
    }
    reps
}

/// The non-self-orthogonal elements of every list, for `brute_lists`.
pub fn list_elements(inst: &orthodim::solver::SubChooseInstance) -> Vec<Vec<Vec<u32>>> {
    let p = inst.field.p();
    inst.lists
        .iter()
        .map(|l| l.elements().into_iter().filter(|x| !orth(p, x, x)).collect())
        .collect()
}

/// Graphs where clique number equals chromatic number, so the real
/// orthogonality dimension is known exactly.
pub fn known_real_family() -> Vec<Graph> {
    let mut out: Vec<Graph> = (1..=6).map(Graph::complete).collect();
    out.push(Graph::complete_bipartite(2, 3));
    out.push(Graph::complete_bipartite(3, 3));
    out.push(Graph::path(6));
    out.push(Graph::cycle(6).unwrap());
    out.push(Graph::cycle(5).unwrap());
    out.push(Graph::cycle(7).unwrap());
    out.push(Graph::complete(4).disjoint_union(&Graph::cycle(5).unwrap()));
    out.push(Graph::complete(3).disjoint_union(&Graph::complete_bipartite(2, 2)));
    out.push(Graph::complete(5).disjoint_union(&Graph::cycle(7).unwrap()));
    out
}

pub fn known_od_real(g: &Graph) -> Option<usize> {
    let odd_cycle = g.connected_components().iter().any(|c| {
        let (h, _) = g.induced_subgraph(c).unwrap();
        h.n() % 2 == 1 && h.n() >= 5 && h.m() == h.n() && (0..h.n()).all(|v| h.degree(v) == 2)
    });
    let w = g.clique_number();
    let chi = orthodim::solver::chromatic_number(g);
    // odd cycles have od over the reals equal to 3 although omega is 2
    if w == chi {
        Some(w)
    } else if odd_cycle && chi == 3 && w <= 3 {
        Some(3)
    } else {
        None
    }
}

/// Rank over the rationals of the coefficient vectors.
pub fn dense_rank(polys: &[orthodim::algebra::MultilinearPoly]) -> usize {
    let rows: Vec<Vec<num_rational::BigRational>> = orthodim::algebra::poly::coefficient_matrix(polys);
    orthodim::algebra::rank(&orthodim::algebra::Rationals, &rows)
}
