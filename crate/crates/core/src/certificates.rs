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

//! Checkers for Tutte sets and alternating trails, and exhaustive
//! enumeration oracles for small graphs.
//!
//! The enumerators are exponential in the number of edges. They exist to
//! cross-check the solver and refuse nothing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::graph::{classify_walk, Color, ColoredMultigraph, EdgeId, VertexId, Walk};
use crate::reachability::{TutteCertificate, VertexClass};

/// A component of `G - A` with its terminal (if any) and the mismatched
/// edges having an endpoint in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentEvidence {
    pub vertices: Vec<VertexId>,
    pub terminal: Option<VertexId>,
    pub mismatched: Vec<EdgeId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clause {
    TerminalInA,
    MultiTerminalComponent,
    MismatchedAtTerminalComponent,
    TwoMismatchedAtFreeComponent,
    MismatchedInsideA,
    TrailNotAlternating,
    TrailEndpoints,
    TrailEdgeReuse,
}

impl Clause {
    pub fn name(self) -> &'static str {
        match self {
            Clause::TerminalInA => "terminal-in-A",
            Clause::MultiTerminalComponent => "multi-terminal-component",
            Clause::MismatchedAtTerminalComponent => "mismatched-at-terminal-component",
            Clause::TwoMismatchedAtFreeComponent => "two-mismatched-at-free-component",
            Clause::MismatchedInsideA => "mismatched-inside-A",
            Clause::TrailNotAlternating => "trail-not-alternating",
            Clause::TrailEndpoints => "trail-endpoints",
            Clause::TrailEdgeReuse => "trail-edge-reuse",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub clause: Clause,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "violation {}", self.clause.name())?;
        if !self.vertices.is_empty() {
            write!(f, " vertices")?;
            for v in &self.vertices {
                write!(f, " {v}")?;
            }
        }
        if !self.edges.is_empty() {
            write!(f, " edges")?;
            for e in &self.edges {
                write!(f, " {e}")?;
            }
        }
        Ok(())
    }
}

fn violation(clause: Clause, vertices: Vec<VertexId>, edges: Vec<EdgeId>) -> Violation {
    Violation {
        clause,
        vertices,
        edges,
    }
}

/// Whether `e` is mismatched with respect to the colored set `A`.
pub fn is_mismatched(g: &ColoredMultigraph, coloring: &BTreeMap<VertexId, Color>, e: EdgeId) -> bool {
    let edge = g.edge(e);
    let c = g.color(e);
    match (coloring.get(&edge.u), coloring.get(&edge.v)) {
        (Some(&a), Some(&b)) => c != a && c != b,
        (Some(&a), None) | (None, Some(&a)) => c != a,
        (None, None) => false,
    }
}

/// Components of `G - A` with terminals and incident mismatched edges.
/// Terminals inside `A` are ignored here (that is a separate clause).
pub fn tutte_evidence(
    g: &ColoredMultigraph,
    terminals: &[VertexId],
    coloring: &BTreeMap<VertexId, Color>,
) -> Vec<ComponentEvidence> {
    let removed: BTreeSet<VertexId> = coloring.keys().copied().collect();
    let terminal_set: BTreeSet<VertexId> = terminals.iter().copied().collect();
    g.components(&removed)
        .into_iter()
        .map(|vertices| {
            let inside: BTreeSet<VertexId> = vertices.iter().copied().collect();
            let terminal = vertices.iter().copied().find(|v| terminal_set.contains(v));
            let mismatched: BTreeSet<EdgeId> = vertices
                .iter()
                .flat_map(|&v| g.incident(v).iter().copied())
                .filter(|&e| is_mismatched(g, coloring, e))
                .collect();
            debug_assert!(mismatched.iter().all(|&e| {
                let edge = g.edge(e);
                inside.contains(&edge.u) || inside.contains(&edge.v)
            }));
            ComponentEvidence {
                vertices,
                terminal,
                mismatched: mismatched.into_iter().collect(),
            }
        })
        .collect()
}

/// Checks that `cert.coloring` describes a Tutte set for `terminals`. The
/// certificate's stored evidence is ignored and recomputed.
pub fn verify_tutte(g: &ColoredMultigraph, terminals: &[VertexId], cert: &TutteCertificate) -> Result<(), Violation> {
    verify_tutte_coloring(g, terminals, &cert.coloring)
}

pub fn verify_tutte_coloring(
    g: &ColoredMultigraph,
    terminals: &[VertexId],
    coloring: &BTreeMap<VertexId, Color>,
) -> Result<(), Violation> {
    if let Some(&s) = terminals.iter().find(|s| coloring.contains_key(s)) {
        return Err(violation(Clause::TerminalInA, vec![s], vec![]));
    }
    let terminal_set: BTreeSet<VertexId> = terminals.iter().copied().collect();
    for comp in tutte_evidence(g, terminals, coloring) {
        let held: Vec<VertexId> = comp
            .vertices
            .iter()
            .copied()
            .filter(|v| terminal_set.contains(v))
            .collect();
        if held.len() > 1 {
            return Err(violation(Clause::MultiTerminalComponent, held, vec![]));
        }
        if comp.terminal.is_some() && !comp.mismatched.is_empty() {
            return Err(violation(
                Clause::MismatchedAtTerminalComponent,
                comp.vertices,
                comp.mismatched,
            ));
        }
        if comp.terminal.is_none() && comp.mismatched.len() > 1 {
            return Err(violation(
                Clause::TwoMismatchedAtFreeComponent,
                comp.vertices,
                comp.mismatched,
            ));
        }
    }
    for e in 0..g.edge_count() {
        let edge = g.edge(e);
        if coloring.contains_key(&edge.u) && coloring.contains_key(&edge.v) && is_mismatched(g, coloring, e) {
            return Err(violation(Clause::MismatchedInsideA, vec![edge.u, edge.v], vec![e]));
        }
    }
    Ok(())
}

/// Checks that `w` is an alternating trail between two distinct terminals.
pub fn verify_alt_trail(g: &ColoredMultigraph, terminals: &[VertexId], w: &Walk) -> Result<(), Violation> {
    let class = classify_walk(g, w).map_err(|_| violation(Clause::TrailNotAlternating, vec![], w.edges.clone()))?;
    if !class.is_trail {
        let mut seen = BTreeSet::new();
        let repeated = w
            .edges
            .iter()
            .copied()
            .find(|&e| !seen.insert(e))
            .expect("some edge repeats");
        return Err(violation(Clause::TrailEdgeReuse, vec![], vec![repeated]));
    }
    let terminal_set: BTreeSet<VertexId> = terminals.iter().copied().collect();
    let (s, t) = (w.start(), w.end());
    if s == t || !terminal_set.contains(&s) || !terminal_set.contains(&t) {
        return Err(violation(Clause::TrailEndpoints, vec![s, t], vec![]));
    }
    if !class.is_alternating {
        let j = w
            .edges
            .windows(2)
            .position(|p| g.color(p[0]) == g.color(p[1]))
            .expect("open walk fails only internally");
        return Err(violation(
            Clause::TrailNotAlternating,
            vec![w.vertices[j + 1]],
            vec![w.edges[j], w.edges[j + 1]],
        ));
    }
    Ok(())
}

/// Depth-first enumeration of every positive-length alternating trail from
/// `start`, visiting each through `visit`. Returning `false` stops the
/// search.
pub fn for_each_alt_trail(g: &ColoredMultigraph, start: VertexId, mut visit: impl FnMut(&Walk) -> bool) {
    let mut used = vec![false; g.edge_count()];
    let mut walk = Walk::trivial(start);
    extend(g, &mut used, &mut walk, &mut visit);
}

fn extend(g: &ColoredMultigraph, used: &mut [bool], walk: &mut Walk, visit: &mut impl FnMut(&Walk) -> bool) -> bool {
    let x = walk.end();
    let last = walk.last_edge().map(|e| g.color(e));
    for &e in g.incident(x) {
        if used[e] || Some(g.color(e)) == last {
            continue;
        }
        used[e] = true;
        walk.push(e, g.edge(e).other(x));
        let go_on = visit(walk) && extend(g, used, walk, visit);
        walk.edges.pop();
        walk.vertices.pop();
        used[e] = false;
        if !go_on {
            return false;
        }
    }
    true
}

/// Some alternating trail between distinct terminals, or `None`.
pub fn brute_reach(g: &ColoredMultigraph, terminals: &[VertexId]) -> Option<Walk> {
    let terminal_set: BTreeSet<VertexId> = terminals.iter().copied().collect();
    for &s in &terminal_set {
        let mut found = None;
        for_each_alt_trail(g, s, |w| {
            if w.end() != s && terminal_set.contains(&w.end()) {
                found = Some(w.clone());
                false
            } else {
                true
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Evaluates N(S), I(S, c), T(S) directly from all alternating trails
/// leaving the terminals.
pub fn brute_classify(g: &ColoredMultigraph, terminals: &[VertexId]) -> BTreeMap<VertexId, VertexClass> {
    let terminal_set: BTreeSet<VertexId> = terminals.iter().copied().collect();
    let n = g.vertex_count();
    // last-edge colors per (terminal, vertex)
    let mut per_terminal: Vec<Vec<BTreeSet<Color>>> = Vec::new();
    for &s in &terminal_set {
        let mut seen = vec![BTreeSet::new(); n];
        for_each_alt_trail(g, s, |w| {
            seen[w.end()].insert(g.color(w.last_edge().unwrap()));
            true
        });
        per_terminal.push(seen);
    }
    (0..n)
        .map(|v| {
            let class = if terminal_set.contains(&v) {
                VertexClass::Terminal
            } else {
                let all: BTreeSet<Color> = per_terminal.iter().flat_map(|seen| seen[v].iter().copied()).collect();
                if all.is_empty() {
                    VertexClass::Unreachable
                } else if per_terminal.iter().any(|seen| seen[v].len() >= 2) {
                    VertexClass::Blossom
                } else if all.len() == 1 {
                    VertexClass::Inner(*all.iter().next().unwrap())
                } else {
                    VertexClass::Unclassified
                }
            };
            (v, class)
        })
        .collect()
}

/// Every closed alternating trail of `g`, each listed once per edge set
/// traversal class: rotations and reversals are collapsed by keeping the
/// lexicographically least edge sequence.
pub fn brute_cats(g: &ColoredMultigraph) -> Vec<Walk> {
    let mut found = BTreeSet::new();
    for start in 0..g.vertex_count() {
        for_each_alt_trail(g, start, |w| {
            if w.len() >= 2 && w.is_closed() && g.color(w.edges[0]) != g.color(*w.edges.last().unwrap()) {
                found.insert(canonical_closed(w));
            }
            true
        });
    }
    found.into_iter().collect()
}

/// The least rotation/reversal of a closed walk by edge sequence.
pub fn canonical_closed(w: &Walk) -> Walk {
    let m = w.len();
    let mut best: Option<Walk> = None;
    for cand in [w.clone(), w.reversed()] {
        for k in 0..m.max(1) {
            let r = cand.rotated(k);
            if best
                .as_ref()
                .is_none_or(|b| (&r.edges, &r.vertices) < (&b.edges, &b.vertices))
            {
                best = Some(r);
            }
        }
    }
    best.expect("at least one rotation")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, &str)]) -> ColoredMultigraph {
        ColoredMultigraph::from_edges(n, edges).unwrap()
    }

    fn colored(g: &ColoredMultigraph, items: &[(VertexId, &str)]) -> BTreeMap<VertexId, Color> {
        items.iter().map(|&(v, c)| (v, g.color_by_name(c).unwrap())).collect()
    }

    #[test]
    fn tutte_examples() {
        let mut g = graph(3, &[(0, 1, "R"), (1, 2, "R")]);
        g.intern("B");
        assert!(verify_tutte_coloring(&g, &[0, 2], &colored(&g, &[(1, "R")])).is_ok());
        let err = verify_tutte_coloring(&g, &[0, 2], &colored(&g, &[(1, "B")])).unwrap_err();
        assert_eq!(err.clause, Clause::MismatchedAtTerminalComponent);
        assert_eq!(err.vertices, vec![0]);
        assert_eq!(err.edges, vec![0]);
        let err = verify_tutte_coloring(&g, &[0, 2], &colored(&g, &[(0, "R")])).unwrap_err();
        assert_eq!(err.clause, Clause::TerminalInA);
    }

    #[test]
    fn tutte_component_clauses() {
        let g = graph(3, &[(0, 1, "R"), (1, 2, "R")]);
        let err = verify_tutte_coloring(&g, &[0, 2], &BTreeMap::new()).unwrap_err();
        assert_eq!(err.clause, Clause::MultiTerminalComponent);

        // free component {2,3} hit by two mismatched edges from A = {1}
        let g = graph(4, &[(0, 1, "R"), (1, 2, "B"), (1, 3, "B"), (2, 3, "R")]);
        let err = verify_tutte_coloring(&g, &[0], &colored(&g, &[(1, "R")])).unwrap_err();
        assert_eq!(err.clause, Clause::TwoMismatchedAtFreeComponent);

        let g = graph(3, &[(0, 1, "R"), (1, 2, "G"), (0, 2, "B")]);
        let err = verify_tutte_coloring(&g, &[0], &colored(&g, &[(1, "R"), (2, "B")])).unwrap_err();
        assert_eq!(err.clause, Clause::MismatchedInsideA);
        assert_eq!(err.edges, vec![1]);
        assert!(verify_tutte_coloring(&g, &[0], &colored(&g, &[(1, "R"), (2, "G")])).is_err());
        let g = graph(3, &[(0, 1, "R"), (1, 2, "G"), (0, 2, "G")]);
        assert!(verify_tutte_coloring(&g, &[0], &colored(&g, &[(1, "R"), (2, "G")])).is_ok());
    }

    #[test]
    fn trail_examples() {
        let g = graph(3, &[(0, 1, "R"), (1, 2, "B")]);
        let ok = Walk::new(vec![0, 1, 2], vec![0, 1]);
        assert!(verify_alt_trail(&g, &[0, 2], &ok).is_ok());
        let reuse = Walk::new(vec![0, 1, 0, 1, 2], vec![0, 0, 0, 1]);
        assert_eq!(
            verify_alt_trail(&g, &[0, 2], &reuse).unwrap_err().clause,
            Clause::TrailEdgeReuse
        );
        let g2 = graph(2, &[(0, 1, "R"), (0, 1, "B")]);
        let closed = Walk::new(vec![0, 1, 0], vec![0, 1]);
        assert_eq!(
            verify_alt_trail(&g2, &[0, 1], &closed).unwrap_err().clause,
            Clause::TrailEndpoints
        );
        let g3 = graph(3, &[(0, 1, "R"), (1, 2, "R")]);
        assert_eq!(
            verify_alt_trail(&g3, &[0, 2], &ok).unwrap_err().clause,
            Clause::TrailNotAlternating
        );
    }

    #[test]
    fn brute_reach_examples() {
        let g = graph(2, &[]);
        assert!(brute_reach(&g, &[0, 1]).is_none());
        let g = graph(2, &[(0, 1, "R")]);
        assert_eq!(brute_reach(&g, &[0, 1]).unwrap().len(), 1);
        let g = graph(3, &[(0, 1, "R"), (1, 2, "R")]);
        assert!(brute_reach(&g, &[0, 2]).is_none());
    }

    #[test]
    fn brute_classify_examples() {
        let g = graph(4, &[(0, 1, "R"), (1, 2, "R")]);
        let classes = brute_classify(&g, &[0, 2]);
        assert_eq!(classes[&1], VertexClass::Inner(g.color_by_name("R").unwrap()));
        assert_eq!(classes[&3], VertexClass::Unreachable);
        // blossom u=1, a=2, b=3 from s=0
        let g = graph(4, &[(0, 1, "B"), (1, 2, "R"), (2, 3, "B"), (3, 1, "R")]);
        let classes = brute_classify(&g, &[0]);
        for v in 1..4 {
            assert_eq!(classes[&v], VertexClass::Blossom);
        }
    }

    #[test]
    fn brute_cats_on_parallel_pair() {
        let g = graph(2, &[(0, 1, "R"), (0, 1, "B"), (0, 1, "R")]);
        let cats = brute_cats(&g);
        assert_eq!(cats.len(), 2);
    }
}
