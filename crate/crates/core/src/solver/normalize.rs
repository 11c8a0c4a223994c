//! Floating-point utilities for real orthogonal representations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest tolerated cosine between vectors of adjacent input vertices.
pub const INPUT_TOLERANCE: f64 = 1e-8;

const MAX_ATTEMPTS: usize = 1000;

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

/// Maximum `|cos|` over the edges of `g`; 0 for edgeless graphs.
pub fn real_residual(g: &Graph, vectors: &[Vec<f64>]) -> f64 {
    g.edges()
        .map(|(u, v)| dot(&vectors[u], &vectors[v]).abs() / (norm(&vectors[u]) * norm(&vectors[v])))
        .fold(0.0, f64::max)
}

fn check_input(g: &Graph, vectors: &[Vec<f64>]) -> Result<usize> {
    if vectors.len() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), found: vectors.len() });
    }
    let d = vectors.first().map_or(0, Vec::len);
    for (v, x) in vectors.iter().enumerate() {
        if x.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: x.len() });
        }
        if !(norm(x) > 0.0) || x.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidRepresentation(format!("vector of vertex {v} is zero or not finite")));
        }
    }
    let r = real_residual(g, vectors);
    if r > INPUT_TOLERANCE {
        return Err(Error::InvalidRepresentation(format!("orthogonality residual {r:e} exceeds {INPUT_TOLERANCE:e}")));
    }
    Ok(d)
}

/// Orthonormal `d x d` matrix whose first row is `a / |a|`, completed by
/// Gram-Schmidt against the standard basis.
fn orthonormal_with_first_row(a: &[f64]) -> Vec<Vec<f64>> {
    let d = a.len();
    let mut rows: Vec<Vec<f64>> = vec![a.iter().map(|x| x / norm(a)).collect()];
    for i in 0..d {
        if rows.len() == d {
            break;
        }
        let mut e = vec![0.0; d];
        e[i] = 1.0;
        // two passes keep the completion numerically orthogonal
        for _ in 0..2 {
            for r in &rows {
                let c = dot(&e, r);
                e.iter_mut().zip(r).for_each(|(x, y)| *x -= c * y);
            }
        }
        let len = norm(&e);
        if len > 1e-6 {
            rows.push(e.iter().map(|x| x / len).collect());
        }
    }
    rows
}

/// Rewrites a real orthogonal representation so that every vector has first
/// coordinate exactly 1.
///
/// A vector `a` with entries in `1..=2n` is sampled until `<a, u_v> != 0` for
/// every vertex; an orthonormal map sending `a / |a|` to `e_1` is applied and
/// each image is rescaled by its first entry. Orthogonality is preserved up to
/// rounding.
pub fn normalize_first_entry(g: &Graph, vectors: &[Vec<f64>], seed: u64) -> Result<Vec<Vec<f64>>> {
    let d = check_input(g, vectors)?;
    if g.n() == 0 {
        return Ok(Vec::new());
    }
    let top = 2 * g.n() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let a: Vec<f64> = (0..d).map(|_| rng.gen_range(1..=top) as f64).collect();
        let na = norm(&a);
        if vectors.iter().any(|u| dot(&a, u).abs() <= 1e-9 * na * norm(u)) {
            continue;
        }
        let m = orthonormal_with_first_row(&a);
        let out = vectors
            .iter()
            .map(|u| {
                let y: Vec<f64> = m.iter().map(|row| dot(row, u)).collect();
                let s = y[0];
                y.iter().map(|x| x / s).collect()
            })
            .collect();
        return Ok(out);
    }
    Err(Error::Internal(format!("no admissible direction found in {MAX_ATTEMPTS} samples")))
}

/// A random real orthogonal representation of `g` built from a proper
/// coloring with colors `0..d`: color `c` maps to a randomly scaled `c`-th
/// vector of a random orthonormal basis.
pub fn random_real_representation(g: &Graph, coloring: &[usize], d: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    crate::solver::coloring::check_coloring(g, coloring, d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis: Vec<Vec<f64>> = Vec::new();
    while basis.len() < d {
        let mut e: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for _ in 0..2 {
            for r in &basis {
                let c = dot(&e, r);
                e.iter_mut().zip(r).for_each(|(x, y)| *x -= c * y);
            }
        }
        let len = norm(&e);
        if len > 1e-3 {
            basis.push(e.iter().map(|x| x / len).collect());
        }
    }
    Ok(coloring
        .iter()
        .map(|&c| {
            let s: f64 = rng.gen_range(0.5..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            basis[c].iter().map(|x| x * s).collect()
        })
        .collect())
}
