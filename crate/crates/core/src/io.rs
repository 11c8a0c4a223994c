//! Extended DIMACS instance files.
//!
//! ```text
//! c comment
//! p edge <n> <m>
//! d <dimension>
//! f <field>            gf<p> or rational
//! e <u> <v>            1-based endpoints
//! x <v>                modulator vertex, 1-based
//! l <v> <dim> <entries...>   basis of L(v): dim rows of d entries, row-major
//! ```
//!
//! Vertices are 1-based in files and 0-based in memory. Serialization writes
//! the canonical form: header, `d`, `f`, sorted edges, sorted modulator,
//! lists by vertex; comments are dropped.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::algebra::field::{Field, FieldSpec, PrimeField};
use crate::algebra::subspace::Subspace;
use crate::error::{Error, Result};
use crate::graph::{normalize_set, Graph};
use crate::solver::SubChooseInstance;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub graph: Graph,
    pub modulator: Option<Vec<usize>>,
    pub d: Option<usize>,
    pub field: Option<FieldSpec>,
    /// Basis rows of `L(v)` as written; vertices without a line have the
    /// whole space.
    pub lists: BTreeMap<usize, Vec<Vec<i64>>>,
}

impl InstanceFile {
    pub fn from_graph(graph: Graph) -> Self {
        InstanceFile { graph, modulator: None, d: None, field: None, lists: BTreeMap::new() }
    }

    /// The SubChoose instance over a prime field; `d` and the field come from
    /// the file unless overridden.
    pub fn subchoose(&self, d: Option<usize>, field: Option<FieldSpec>) -> Result<SubChooseInstance> {
        let d = d.or(self.d).ok_or_else(|| Error::InvalidParameter("dimension not given".into()))?;
        let field: PrimeField = field
            .or(self.field)
            .ok_or_else(|| Error::InvalidParameter("field not given".into()))?
            .prime_field()?;
        let mut lists = vec![Subspace::full(field, d); self.graph.n()];
        for (&v, rows) in &self.lists {
            let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&a| field.from_i64(a)).collect()).collect();
            lists[v] = Subspace::span(field, d, &rows)?;
        }
        SubChooseInstance::new(self.graph.clone(), d, field, lists)
    }

    /// Records every non-full list of `inst`.
    pub fn set_lists(&mut self, inst: &SubChooseInstance) {
        self.d = Some(inst.d);
        self.field = Some(crate::algebra::Field::spec(&inst.field));
        self.lists = inst
            .lists
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.is_full())
            .map(|(v, l)| (v, l.basis().iter().map(|r| r.iter().map(|&a| a as i64).collect()).collect()))
            .collect();
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| perr(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| perr(line, format!("bad {what}")))
}

fn vertex(tok: Option<&str>, line: usize, n: usize) -> Result<usize> {
    let v: usize = num(tok, line, "vertex")?;
    if v == 0 || v > n {
        return Err(perr(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

pub fn parse_instance(text: &str) -> Result<InstanceFile> {
    let mut file: Option<InstanceFile> = None;
    let mut declared_m = 0;
    let mut modulator = Vec::new();
    let mut saw_x = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        if kind == "c" {
            continue;
        }
        if kind == "p" {
            if file.is_some() {
                return Err(perr(line, "second problem line"));
            }
            if toks.next() != Some("edge") {
                return Err(perr(line, "expected `p edge <n> <m>`"));
            }
            let n: usize = num(toks.next(), line, "vertex count")?;
            declared_m = num(toks.next(), line, "edge count")?;
            file = Some(InstanceFile::from_graph(Graph::new(n)));
        } else {
            let f = file.as_mut().ok_or_else(|| perr(line, "line before `p edge`"))?;
            let n = f.graph.n();
            match kind {
                "e" => {
                    let u = vertex(toks.next(), line, n)?;
                    let v = vertex(toks.next(), line, n)?;
                    f.graph.add_edge(u, v).map_err(|e| perr(line, e.to_string()))?;
                }
                "x" => {
                    saw_x = true;
                    modulator.push(vertex(toks.next(), line, n)?);
                }
                "d" => f.d = Some(num(toks.next(), line, "dimension")?),
                "f" => {
                    let s: String = num(toks.next(), line, "field")?;
                    f.field = Some(s.parse().map_err(|e: Error| perr(line, e.to_string()))?);
                }
                "l" => {
                    let v = vertex(toks.next(), line, n)?;
                    let dim: usize = num(toks.next(), line, "list dimension")?;
                    let entries = toks.by_ref().map(|t| t.parse::<i64>().map_err(|_| perr(line, "bad entry"))).collect::<Result<Vec<_>>>()?;
                    let d = f.d.ok_or_else(|| perr(line, "`l` line before `d` line"))?;
                    if entries.len() != dim * d {
                        return Err(perr(line, format!("expected {} entries, found {}", dim * d, entries.len())));
                    }
                    if f.lists.insert(v, entries.chunks(d.max(1)).take(dim).map(<[i64]>::to_vec).collect()).is_some() {
                        return Err(perr(line, format!("second list for vertex {}", v + 1)));
                    }
                }
                other => return Err(perr(line, format!("unknown line type `{other}`"))),
            }
            if toks.next().is_some() && kind != "l" {
                return Err(perr(line, "trailing tokens"));
            }
        }
    }
    let mut f = file.ok_or_else(|| perr(0, "no `p edge` line"))?;
    if f.graph.m() != declared_m {
        return Err(perr(0, format!("header declares {declared_m} edges, found {}", f.graph.m())));
    }
    if saw_x {
        f.modulator = Some(normalize_set(modulator));
    }
    Ok(f)
}

pub fn serialize_instance(f: &InstanceFile) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", f.graph.n(), f.graph.m()).unwrap();
    if let Some(d) = f.d {
        writeln!(out, "d {d}").unwrap();
    }
    if let Some(field) = f.field {
        writeln!(out, "f {field}").unwrap();
    }
    for (u, v) in f.graph.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    for &v in f.modulator.iter().flatten() {
        writeln!(out, "x {}", v + 1).unwrap();
    }
    for (v, rows) in &f.lists {
        write!(out, "l {} {}", v + 1, rows.len()).unwrap();
        for a in rows.iter().flatten() {
            write!(out, " {a}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Plain canonical graph file.
pub fn serialize_graph(g: &Graph) -> String {
    serialize_instance(&InstanceFile::from_graph(g.clone()))
}
