// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Line-oriented instance format and the command runner behind the binary.
//!
//! ```text
//! # comment
//! graph 3
//! edge 0 0 1 R
//! edge 1 1 2 B
//! terminal 0
//! terminal 2
//! weight 0 3/2
//! phi 1 0
//! ```
//!
//! Exit codes: 0 for a trail or feasible answer, 1 for a certificate or
//! infeasible answer, 2 for errors.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use clap::{Parser, Subcommand};
use num::{BigInt, BigRational, Zero};

use crate::certificates::{verify_alt_trail, verify_tutte, Clause, Violation};
use crate::cones::{decompose_with, CutCheck, Membership};
use crate::error::{Error, Result};
use crate::graph::{classify_walk, ColoredMultigraph, EdgeId, EdgeVector, RawEdge, VertexId, Walk};
use crate::matching::max_matching;
use crate::reachability::{classify_vertices, solve, SolveOutcome, TutteCertificate, VertexClass};
use crate::structures::{find_cat, find_cat_through_edge, giles_seymour};

/// A parsed instance file. Graph semantics are checked by [`Self::graph`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InstanceFile {
    pub vertex_count: usize,
    pub edges: Vec<RawEdge>,
    pub terminals: Vec<VertexId>,
    pub weights: BTreeMap<EdgeId, BigRational>,
    pub phi: BTreeMap<VertexId, EdgeId>,
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("invalid {what} '{token}'")))
}

fn rational(line: usize, token: &str) -> Result<BigRational> {
    let (p, q) = match token.split_once('/') {
        Some((p, q)) => (p, q),
        None => (token, "1"),
    };
    let p: BigInt = number(line, p, "numerator")?;
    let q: BigInt = number(line, q, "denominator")?;
    if q.is_zero() {
        return Err(syntax(line, "zero denominator"));
    }
    Ok(BigRational::new(p, q))
}

fn content(raw: &str) -> &str {
    raw.split_once('#').map_or(raw, |(before, _)| before)
}

/// Parses the instance grammar; unknown directives and malformed lines are
/// rejected with their 1-based line number.
pub fn parse(text: &str) -> Result<InstanceFile> {
    let mut inst = InstanceFile::default();
    let mut seen_graph = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens: Vec<&str> = content(raw).split_whitespace().collect();
        let Some((&directive, args)) = tokens.split_first() else {
            continue;
        };
        let arity = match directive {
            "graph" | "terminal" => 1,
            "weight" | "phi" => 2,
            "edge" => 4,
            other => return Err(syntax(line, format!("unknown directive '{other}'"))),
        };
        if args.len() != arity {
            return Err(syntax(
                line,
                format!("'{directive}' takes {arity} arguments, got {}", args.len()),
            ));
        }
        match directive {
            "graph" => {
                if std::mem::replace(&mut seen_graph, true) {
                    return Err(syntax(line, "duplicate 'graph' line"));
                }
                inst.vertex_count = number(line, args[0], "vertex count")?;
            }
            "edge" => inst.edges.push(RawEdge::new(
                number(line, args[0], "edge id")?,
                number(line, args[1], "vertex")?,
                number(line, args[2], "vertex")?,
                args[3],
            )),
            "terminal" => inst.terminals.push(number(line, args[0], "vertex")?),
            "weight" => {
                let e = number(line, args[0], "edge id")?;
                if inst.weights.insert(e, rational(line, args[1])?).is_some() {
                    return Err(syntax(line, format!("duplicate weight for edge {e}")));
                }
            }
            _ => {
                let v = number(line, args[0], "vertex")?;
                if inst.phi.insert(v, number(line, args[1], "edge id")?).is_some() {
                    return Err(syntax(line, format!("duplicate phi for vertex {v}")));
                }
            }
        }
    }
    if !seen_graph {
        return Err(syntax(text.lines().count().max(1), "missing 'graph' line"));
    }
    Ok(inst)
}

impl InstanceFile {
    pub fn from_graph(g: &ColoredMultigraph) -> Self {
        InstanceFile {
            vertex_count: g.vertex_count(),
            edges: g.to_raw(),
            ..Default::default()
        }
    }

    pub fn graph(&self) -> Result<ColoredMultigraph> {
        Ok(ColoredMultigraph::from_raw(self.vertex_count, &self.edges)?)
    }

    /// Listed weights, zero for unlisted edges.
    pub fn weight_vector(&self, g: &ColoredMultigraph) -> Result<EdgeVector> {
        let mut w = vec![BigRational::zero(); g.edge_count()];
        for (&e, x) in &self.weights {
            *w.get_mut(e).ok_or(Error::UnknownEdge(e))? = x.clone();
        }
        EdgeVector::from_weights(w)
    }

    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for InstanceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph {}", self.vertex_count)?;
        for e in &self.edges {
            writeln!(f, "edge {} {} {} {}", e.id, e.u, e.v, e.color)?;
        }
        for t in &self.terminals {
            writeln!(f, "terminal {t}")?;
        }
        for (e, w) in &self.weights {
            writeln!(f, "weight {e} {w}")?;
        }
        for (v, e) in &self.phi {
            writeln!(f, "phi {v} {e}")?;
        }
        Ok(())
    }
}

fn walk_line(keyword: &str, w: &Walk) -> String {
    format!("{keyword} {w}")
}

/// `trail v e v ... v`.
pub fn format_trail(w: &Walk) -> String {
    walk_line("trail", w)
}

/// `tutte v:color ...` in vertex order.
pub fn format_certificate(g: &ColoredMultigraph, cert: &TutteCertificate) -> String {
    let mut out = String::from("tutte");
    for (v, &c) in &cert.coloring {
        let _ = write!(out, " {v}:{}", g.color_name(c));
    }
    out
}

fn first_content_line(text: &str) -> Option<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, content(raw).split_whitespace().collect::<Vec<_>>()))
        .find(|(_, tokens)| !tokens.is_empty())
}

pub fn parse_trail(text: &str) -> Result<Walk> {
    let (line, tokens) = first_content_line(text).ok_or_else(|| syntax(1, "empty trail file"))?;
    if tokens[0] != "trail" || tokens.len() % 2 != 0 {
        return Err(syntax(line, "expected 'trail v e v ... v'"));
    }
    let ids = tokens[1..]
        .iter()
        .map(|t| number::<usize>(line, t, "id"))
        .collect::<Result<Vec<_>>>()?;
    let vertices = ids.iter().step_by(2).copied().collect();
    let edges = ids.iter().skip(1).step_by(2).copied().collect();
    Ok(Walk::new(vertices, edges))
}

pub fn parse_certificate(g: &ColoredMultigraph, terminals: &[VertexId], text: &str) -> Result<TutteCertificate> {
    let (line, tokens) = first_content_line(text).ok_or_else(|| syntax(1, "empty certificate file"))?;
    if tokens[0] != "tutte" {
        return Err(syntax(line, "expected 'tutte v:color ...'"));
    }
    let mut coloring = BTreeMap::new();
    for t in &tokens[1..] {
        let (v, c) = t
            .split_once(':')
            .ok_or_else(|| syntax(line, format!("expected v:color, got '{t}'")))?;
        let v: VertexId = number(line, v, "vertex")?;
        if v >= g.vertex_count() {
            return Err(Error::VertexOutOfRange(v));
        }
        let c = g
            .color_by_name(c)
            .ok_or_else(|| syntax(line, format!("unknown color '{c}'")))?;
        if coloring.insert(v, c).is_some() {
            return Err(syntax(line, format!("vertex {v} listed twice")));
        }
    }
    Ok(TutteCertificate::new(g, terminals, coloring))
}

#[derive(Debug, Parser)]
#[command(name = "alttrail", version, about = "Alternating trails in edge-colored multigraphs")]
pub struct Cli {
    /// Check cut conditions by exhaustive cut enumeration instead of min cuts.
    #[arg(long, global = true)]
    pub oracle: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Instance arguments are file paths; `-` reads standard input.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Alternating trail between two terminals, or a Tutte set.
    Reach { instance: String },
    /// Vertex classes when no terminals are connected.
    Classify { instance: String },
    /// A closed alternating trail in a bridgeless bichromatic graph.
    Cat { instance: String },
    /// A closed alternating trail through the given edge.
    CatEdge { edge: EdgeId, instance: String },
    /// A cycle containing phi(w) for each of its vertices w.
    CycleCover { instance: String },
    /// Closed alternating trail decomposition of the weight vector.
    Decompose { instance: String },
    /// Maximum matching (colors ignored).
    Match { instance: String },
    /// Re-check a `tutte` certificate file against the instance.
    VerifyTutte { certificate: String, instance: String },
    /// Re-check a `trail` file against the instance.
    VerifyTrail { trail: String, instance: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Report {
    fn answer(code: i32, stdout: String) -> Self {
        Report {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

fn class_name(g: &ColoredMultigraph, class: &VertexClass) -> String {
    match class {
        VertexClass::Terminal => "terminal".into(),
        VertexClass::Unreachable => "unreachable".into(),
        VertexClass::Inner(c) => format!("inner {}", g.color_name(*c)),
        VertexClass::Blossom => "blossom".into(),
        VertexClass::Unclassified => "unclassified".into(),
    }
}

fn verdict(v: std::result::Result<(), Violation>) -> Report {
    match v {
        Ok(()) => Report::answer(0, "ok\n".into()),
        Err(v) => Report::answer(1, format!("{v}\n")),
    }
}

fn run_command(cli: &Cli, read: &dyn Fn(&str) -> std::io::Result<String>) -> Result<Report> {
    let load = |path: &str| -> Result<String> {
        read(path).map_err(|e| Error::Precondition(format!("cannot read {path}: {e}")))
    };
    let instance = match &cli.command {
        Command::Reach { instance }
        | Command::Classify { instance }
        | Command::Cat { instance }
        | Command::CatEdge { instance, .. }
        | Command::CycleCover { instance }
        | Command::Decompose { instance }
        | Command::Match { instance }
        | Command::VerifyTutte { instance, .. }
        | Command::VerifyTrail { instance, .. } => instance,
    };
    let inst = parse(&load(instance)?)?;
    let g = inst.graph()?;
    let terminals = &inst.terminals;
    Ok(match &cli.command {
        Command::Reach { .. } => match solve(&g, terminals)? {
            SolveOutcome::Trail(t) => Report::answer(0, format_trail(&t) + "\n"),
            SolveOutcome::Certificate(c) => Report::answer(1, format_certificate(&g, &c) + "\n"),
        },
        Command::Classify { .. } => match classify_vertices(&g, terminals) {
            Err(Error::TerminalsConnected) => {
                let SolveOutcome::Trail(t) = solve(&g, terminals)? else {
                    return Err(Error::Internal("classification and solver disagree".into()));
                };
                Report::answer(0, format_trail(&t) + "\n")
            }
            Err(e) => return Err(e),
            Ok(classes) => {
                let mut out = String::new();
                for (v, class) in &classes {
                    let _ = writeln!(out, "vertex {v} {}", class_name(&g, class));
                }
                Report::answer(1, out)
            }
        },
        Command::Cat { .. } => Report::answer(0, format_trail(&find_cat(&g)?) + "\n"),
        Command::CatEdge { edge, .. } => match find_cat_through_edge(&g, *edge)? {
            Some(t) => Report::answer(0, format_trail(&t) + "\n"),
            None => Report::answer(1, "none\n".into()),
        },
        Command::CycleCover { .. } => Report::answer(0, walk_line("cycle", &giles_seymour(&g, &inst.phi)?) + "\n"),
        Command::Decompose { .. } => {
            let q = inst.weight_vector(&g)?;
            let check = if cli.oracle {
                CutCheck::Exhaustive
            } else {
                CutCheck::MinCut
            };
            match decompose_with(&g, &q, check)? {
                Membership::Decomposed(d) => {
                    let mut out = String::new();
                    for (cat, coeff) in &d.terms {
                        let ids: Vec<String> = cat.edges.iter().map(ToString::to_string).collect();
                        let _ = writeln!(out, "{coeff} : {}", ids.join(" "));
                    }
                    Report::answer(0, out)
                }
                Membership::Violated(v) => Report::answer(1, format!("violation {v}\n")),
            }
        }
        Command::Match { .. } => {
            let m = max_matching(&g)?;
            let mut out = format!("size {}\nmatching", m.len());
            for e in m.edges() {
                let _ = write!(out, " {e}");
            }
            Report::answer(0, out + "\n")
        }
        Command::VerifyTutte { certificate, .. } => {
            let cert = parse_certificate(&g, terminals, &load(certificate)?)?;
            verdict(verify_tutte(&g, terminals, &cert))
        }
        Command::VerifyTrail { trail, .. } => {
            let w = parse_trail(&load(trail)?)?;
            if !w.is_empty() && w.is_closed() {
                let ok = classify_walk(&g, &w).map(|c| c.is_cat).unwrap_or(false);
                verdict(if ok {
                    Ok(())
                } else {
                    Err(Violation {
                        clause: Clause::TrailNotAlternating,
                        vertices: vec![],
                        edges: w.edges.clone(),
                    })
                })
            } else {
                verdict(verify_alt_trail(&g, terminals, &w))
            }
        }
    })
}

/// Runs a parsed command line; `read` maps a path (or `-`) to its text.
pub fn execute(cli: &Cli, read: &dyn Fn(&str) -> std::io::Result<String>) -> Report {
    run_command(cli, read).unwrap_or_else(|e| Report {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    })
}
