//! Seeded random instances with a planted modulator.
//!
//! All randomness comes from a ChaCha8 generator seeded with a single `u64`;
//! suites derive one seed per trial with [`trial_seed`], so every trial can be
//! replayed on its own.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{PrimeField, Subspace};
use crate::error::{Error, Result};
use crate::graph::{normalize_set, Family, Graph, ModulatorInstance};
use crate::solver::SubChooseInstance;

/// SplitMix64 step applied to `base + index`: independent-looking seeds for
/// consecutive trials.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenConfig {
    pub n: usize,
    pub k: usize,
    pub family: Family,
    /// Probability of each edge incident to the modulator, and of each
    /// optional edge inside the family part.
    pub density: f64,
    pub seed: u64,
}

impl GenConfig {
    pub fn new(n: usize, k: usize, family: Family, density: f64, seed: u64) -> Self {
        GenConfig { n, k, family, density, seed }
    }
}

/// A random graph on `n` vertices with a modulator `X` of size `k` such that
/// `G \ X` lies in the family. Vertex labels are shuffled so that `X` is a
/// random subset.
pub fn gen_random(cfg: &GenConfig) -> Result<ModulatorInstance> {
    if cfg.k > cfg.n {
        return Err(Error::InvalidParameter(format!("k = {} exceeds n = {}", cfg.k, cfg.n)));
    }
    if !(0.0..=1.0).contains(&cfg.density) {
        return Err(Error::InvalidParameter(format!("density {} outside [0, 1]", cfg.density)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut perm: Vec<usize> = (0..cfg.n).collect();
    perm.shuffle(&mut rng);
    let (x, rest) = perm.split_at(cfg.k);
    let mut g = Graph::new(cfg.n);
    for (i, &u) in x.iter().enumerate() {
        for &v in x[i + 1..].iter().chain(rest) {
            if rng.gen_bool(cfg.density) {
                g.add_edge(u, v)?;
            }
        }
    }
    let part = family_graph(cfg.family, rest.len(), cfg.density, &mut rng);
    for (a, b) in part.edges() {
        g.add_edge(rest[a], rest[b])?;
    }
    ModulatorInstance::new(g, normalize_set(x.to_vec()), cfg.family)
}

/// A random member of `family` on vertices `0..n`.
pub fn family_graph(family: Family, n: usize, density: f64, rng: &mut ChaCha8Rng) -> Graph {
    match family {
        Family::Empty => Graph::new(n),
        Family::Path => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            let mut g = Graph::new(n);
            for w in order.windows(2) {
                g.add_edge(w[0], w[1]).expect("path edges are distinct");
            }
            g
        }
        Family::Split => split_graph(n, density, rng),
        Family::Cochordal => chordal_graph(n, density, rng).complement(),
        Family::UnionSplit | Family::UnionCochordal => {
            let parts = if n == 0 { 0 } else { rng.gen_range(1..=n.min(3)) };
            let mut sizes = vec![0; parts];
            for _ in 0..n {
                let i = rng.gen_range(0..parts);
                sizes[i] += 1;
            }
            sizes.into_iter().fold(Graph::new(0), |acc, s| {
                let piece = if family == Family::UnionSplit {
                    split_graph(s, density, rng)
                } else {
                    chordal_graph(s, density, rng).complement()
                };
                acc.disjoint_union(&piece)
            })
        }
    }
}

fn split_graph(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Graph {
    let c = if n == 0 { 0 } else { rng.gen_range(0..=n) };
    let mut g = Graph::new(n);
    for u in 0..c {
        for v in u + 1..n {
            if v < c || rng.gen_bool(density) {
                g.add_edge(u, v).expect("split edges are distinct");
            }
        }
    }
    g
}

/// Each new vertex joins a random clique around a random earlier vertex, so
/// the reverse insertion order is a perfect elimination order.
fn chordal_graph(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        if !rng.gen_bool(density.max(0.05)) {
            continue;
        }
        let anchor = rng.gen_range(0..v);
        let mut clique = vec![anchor];
        let mut cand: Vec<usize> = g.neighbors(anchor).iter().copied().filter(|&w| w < v).collect();
        cand.shuffle(rng);
        for w in cand {
            if rng.gen_bool(density) && clique.iter().all(|&c| g.has_edge(c, w)) {
                clique.push(w);
            }
        }
        for c in clique {
            g.add_edge(v, c).expect("clique edges are new");
        }
    }
    g
}

/// Erdos-Renyi graph `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    g
}

/// A list instance on a random `family` graph. Each list is spanned by one
/// or two random vectors, so NO instances are common in low dimension.
pub fn random_list_instance(family: Family, n: usize, d: usize, field: PrimeField, seed: u64) -> Result<SubChooseInstance> {
    if d == 0 {
        return Err(Error::InvalidParameter("need d >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = family_graph(family, n, 0.5, &mut rng);
    let p = field.p();
    let lists = (0..n)
        .map(|_| {
            let rows: Vec<Vec<u32>> = (0..rng.gen_range(1..=d.min(2)))
                .map(|_| (0..d).map(|_| rng.gen_range(0..p)).collect())
                .collect();
            Subspace::span(field, d, &rows)
        })
        .collect::<Result<Vec<_>>>()?;
    SubChooseInstance::new(g, d, field, lists)
}
