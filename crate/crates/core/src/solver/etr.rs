use std::fmt::Write;

use crate::graph::Graph;

/// Polynomial system over the reals whose solutions are exactly the
/// `d`-dimensional real orthogonal representations of `g`.
///
/// Variable `x_v_i` is coordinate `i` of vertex `v`, both 0-based. Each line
/// is a sum of the listed monomials, constrained to be nonzero (`NEQ0`, one
/// per vertex, in vertex order) or zero (`EQ0`, one per edge, in edge order).
pub fn emit_etr_system(g: &Graph, d: usize) -> String {
    let mut out = String::new();
    writeln!(out, "ETR vars={} d={}", g.n() * d, d).unwrap();
    for v in 0..g.n() {
        out.push_str("NEQ0");
        for i in 0..d {
            write!(out, " 1*x_{v}_{i}*x_{v}_{i}").unwrap();
        }
        out.push('\n');
    }
    for (u, v) in g.edges() {
        out.push_str("EQ0");
        for i in 0..d {
            write!(out, " 1*x_{u}_{i}*x_{v}_{i}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Counts of (variables, nonzero constraints, zero constraints) in an
/// emitted system.
pub fn etr_counts(system: &str) -> Option<(usize, usize, usize)> {
    let mut lines = system.lines();
    let header = lines.next()?;
    let vars = header.split_whitespace().find_map(|t| t.strip_prefix("vars="))?.parse().ok()?;
    let (mut neq, mut eq) = (0, 0);
    for line in lines {
        match line.split_whitespace().next() {
            Some("NEQ0") => neq += 1,
            Some("EQ0") => eq += 1,
            _ => return None,
        }
    }
    Some((vars, neq, eq))
}
