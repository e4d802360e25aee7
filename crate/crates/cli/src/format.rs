//! The VGRAPH text format.
//!
//! ```text
//! # comment
//! p vgraph <n> <m>
//! v <id> <weight> [<lo> <hi>]
//! e <u> <v>
//! param <p|k|l> <value>
//! ```
//!
//! Ids are 1-based. Either every vertex line carries an interval or none
//! does.

use std::collections::HashMap;
use std::fmt::Write as _;

use vulnkit::interval::IntervalModel;
use vulnkit::{Weight, WeightedGraph};

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    File(String),
}

fn at(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Line {
        line,
        message: message.into(),
    }
}

/// Parameter defaults carried by `param` lines.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FileParams {
    pub p: Option<Weight>,
    pub k: Option<Weight>,
    pub l: Option<Weight>,
}

impl FileParams {
    fn slot(&mut self, name: &str) -> Option<&mut Option<Weight>> {
        match name {
            "p" => Some(&mut self.p),
            "k" => Some(&mut self.k),
            "l" => Some(&mut self.l),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: WeightedGraph,
    pub model: Option<IntervalModel>,
    pub params: FileParams,
}

impl Instance {
    pub fn new(graph: WeightedGraph) -> Self {
        Instance {
            graph,
            model: None,
            params: FileParams::default(),
        }
    }
}

fn number<T: std::str::FromStr>(line: usize, what: &str, tok: Option<&str>) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| at(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| at(line, format!("invalid {what} '{tok}'")))
}

fn vertex_id(line: usize, tok: Option<&str>, n: usize) -> Result<usize, ParseError> {
    let id: usize = number(line, "vertex id", tok)?;
    if id == 0 || id > n {
        return Err(at(line, format!("vertex id {id} outside 1..={n}")));
    }
    Ok(id - 1)
}

pub fn parse(text: &str) -> Result<Instance, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut weights: Vec<Option<Weight>> = Vec::new();
    let mut intervals: Vec<Option<(i64, i64)>> = Vec::new();
    let mut with_intervals: Option<bool> = None;
    let mut edges = Vec::new();
    let mut edge_lines = HashMap::new();
    let mut params = FileParams::default();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut toks = content.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        if kind != "p" && header.is_none() {
            return Err(at(line, "expected header 'p vgraph <n> <m>' first"));
        }
        match kind {
            "p" => {
                if header.is_some() {
                    return Err(at(line, "duplicate header"));
                }
                if toks.next() != Some("vgraph") {
                    return Err(at(line, "header must read 'p vgraph <n> <m>'"));
                }
                let n: usize = number(line, "vertex count", toks.next())?;
                let m: usize = number(line, "edge count", toks.next())?;
                header = Some((n, m));
                weights = vec![None; n];
                intervals = vec![None; n];
            }
            "v" => {
                let n = weights.len();
                let v = vertex_id(line, toks.next(), n)?;
                if weights[v].is_some() {
                    return Err(at(line, format!("vertex {} declared twice", v + 1)));
                }
                weights[v] = Some(number(line, "weight", toks.next())?);
                let lo = toks.next();
                let has = lo.is_some();
                if *with_intervals.get_or_insert(has) != has {
                    return Err(at(line, "intervals must be given for all vertices or none"));
                }
                if has {
                    let lo: i64 = number(line, "interval start", lo)?;
                    let hi: i64 = number(line, "interval end", toks.next())?;
                    if lo > hi {
                        return Err(at(line, format!("empty interval [{lo}, {hi}]")));
                    }
                    intervals[v] = Some((lo, hi));
                }
            }
            "e" => {
                let n = weights.len();
                let u = vertex_id(line, toks.next(), n)?;
                let v = vertex_id(line, toks.next(), n)?;
                if u == v {
                    return Err(at(line, format!("self-loop at vertex {}", u + 1)));
                }
                if edge_lines.insert((u.min(v), u.max(v)), line).is_some() {
                    return Err(at(line, format!("duplicate edge {} {}", u + 1, v + 1)));
                }
                edges.push((u, v));
            }
            "param" => {
                let name = toks.next().ok_or_else(|| at(line, "missing parameter name"))?;
                let value: Weight = number(line, "parameter value", toks.next())?;
                let slot = params
                    .slot(name)
                    .ok_or_else(|| at(line, format!("unknown parameter '{name}' (expected p, k or l)")))?;
                if slot.replace(value).is_some() {
                    return Err(at(line, format!("parameter '{name}' given twice")));
                }
            }
            other => return Err(at(line, format!("unknown line type '{other}'"))),
        }
        if let Some(extra) = toks.next() {
            return Err(at(line, format!("unexpected token '{extra}'")));
        }
    }

    let (_, m) = header.ok_or_else(|| ParseError::File("missing header 'p vgraph <n> <m>'".into()))?;
    if edges.len() != m {
        return Err(ParseError::File(format!(
            "header announces {m} edges, found {}",
            edges.len()
        )));
    }
    let weights = weights
        .into_iter()
        .enumerate()
        .map(|(v, w)| w.ok_or_else(|| ParseError::File(format!("vertex {} has no 'v' line", v + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    let graph = WeightedGraph::new(weights, edges).map_err(|e| ParseError::File(e.to_string()))?;

    let model = match with_intervals {
        Some(true) => {
            let model = IntervalModel::new(intervals.into_iter().map(|i| i.expect("checked above")).collect())
                .map_err(|e| ParseError::File(e.to_string()))?;
            check_model(&graph, &model, &edge_lines)?;
            Some(model)
        }
        _ => None,
    };
    Ok(Instance {
        graph,
        model,
        params,
    })
}

/// Reports the first disagreement between the intervals and the edge list,
/// pointing at the offending edge line when there is one.
fn check_model(
    g: &WeightedGraph,
    model: &IntervalModel,
    edge_lines: &HashMap<(usize, usize), usize>,
) -> Result<(), ParseError> {
    let mut bad: Vec<(usize, usize, usize)> = g
        .edges()
        .filter(|&(u, v)| !model.interval(u).intersects(&model.interval(v)))
        .map(|(u, v)| (edge_lines[&(u, v)], u, v))
        .collect();
    bad.sort_unstable();
    if let Some(&(line, u, v)) = bad.first() {
        return Err(at(line, format!("edge {} {} joins disjoint intervals", u + 1, v + 1)));
    }
    for (u, v) in model.intersecting_pairs() {
        if !edge_lines.contains_key(&(u, v)) {
            return Err(ParseError::File(format!(
                "intervals of vertices {} and {} intersect but the edge is missing",
                u + 1,
                v + 1
            )));
        }
    }
    Ok(())
}

/// Writes `instance` as VGRAPH, preceded by `comments` as `#` lines.
pub fn emit(instance: &Instance, comments: &[String]) -> String {
    let g = &instance.graph;
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "p vgraph {} {}", g.len(), g.edge_count());
    for v in 0..g.len() {
        match &instance.model {
            Some(model) => {
                let i = model.interval(v);
                let _ = writeln!(out, "v {} {} {} {}", v + 1, g.weight(v), i.lo, i.hi);
            }
            None => {
                let _ = writeln!(out, "v {} {}", v + 1, g.weight(v));
            }
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    let FileParams { p, k, l } = instance.params;
    for (name, value) in [("p", p), ("k", k), ("l", l)] {
        if let Some(value) = value {
            let _ = writeln!(out, "param {name} {value}");
        }
    }
    out
}
