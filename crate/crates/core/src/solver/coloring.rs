use crate::algebra::field::Field;
use crate::algebra::subspace::unit_vector;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solver::orthrep::OrthRep;

const NONE: usize = usize::MAX;

/// Searches for a proper coloring with colors `0..q`.
///
/// Vertices are colored in order of saturation (number of distinct colors
/// among neighbors), and a vertex may only open one new color beyond those in
/// use, which removes color-permutation symmetry.
pub fn decide_coloring(g: &Graph, q: usize) -> Option<Vec<usize>> {
    let mut colors = vec![NONE; g.n()];
    color_rec(g, q, &mut colors, 0, g.n()).then_some(colors)
}

fn color_rec(g: &Graph, q: usize, colors: &mut [usize], used: usize, left: usize) -> bool {
    if left == 0 {
        return true;
    }
    let mut pick = NONE;
    let mut key = (0usize, 0usize);
    for v in 0..g.n() {
        if colors[v] != NONE {
            continue;
        }
        let mut seen: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).filter(|&c| c != NONE).collect();
        seen.sort_unstable();
        seen.dedup();
        let k = (seen.len(), g.degree(v));
        if pick == NONE || k > key {
            pick = v;
            key = k;
        }
    }
    let v = pick;
    for c in 0..q.min(used + 1) {
        if g.neighbors(v).iter().any(|&w| colors[w] == c) {
            continue;
        }
        colors[v] = c;
        if color_rec(g, q, colors, used.max(c + 1), left - 1) {
            return true;
        }
    }
    colors[v] = NONE;
    false
}

pub fn chromatic_number(g: &Graph) -> usize {
    (0..=g.n()).find(|&q| decide_coloring(g, q).is_some()).unwrap_or(g.n())
}

/// Checks that `coloring` is a proper coloring of `g` with colors below `q`.
pub fn check_coloring(g: &Graph, coloring: &[usize], q: usize) -> Result<()> {
    if coloring.len() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), found: coloring.len() });
    }
    if let Some(&c) = coloring.iter().find(|&&c| c >= q) {
        return Err(Error::InvalidParameter(format!("color {c} outside 0..{q}")));
    }
    match g.edges().find(|&(u, v)| coloring[u] == coloring[v]) {
        Some((u, v)) => Err(Error::ImproperColoring(u, v)),
        None => Ok(()),
    }
}

/// Sends each vertex of color `c` to the standard basis vector `e_c` of `F^q`.
pub fn coloring_to_orthrep<F: Field>(field: F, g: &Graph, coloring: &[usize], q: usize) -> Result<OrthRep<F>> {
    check_coloring(g, coloring, q)?;
    let vectors = coloring.iter().map(|&c| unit_vector(&field, q, c)).collect();
    Ok(OrthRep::new(field, q, vectors))
}
