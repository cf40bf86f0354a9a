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

//! Maximum matching through alternating reachability.
//!
//! With matched edges red and the rest blue, an alternating trail between two
//! exposed vertices is an augmenting path: each interior visit uses a red
//! edge, so no vertex repeats.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{classify_walk, Color, ColoredMultigraph, EdgeId, VertexId, Walk};
use crate::reachability::{solve, SolveOutcome};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Matching {
    edges: BTreeSet<EdgeId>,
}

impl Matching {
    pub fn new(g: &ColoredMultigraph, edges: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let m = Matching {
            edges: edges.into_iter().collect(),
        };
        m.check(g)?;
        Ok(m)
    }

    fn check(&self, g: &ColoredMultigraph) -> Result<()> {
        let mut covered = vec![false; g.vertex_count()];
        for &e in &self.edges {
            if e >= g.edge_count() {
                return Err(Error::UnknownEdge(e));
            }
            let edge = g.edge(e);
            for v in [edge.u, edge.v] {
                if std::mem::replace(&mut covered[v], true) {
                    return Err(Error::NotAMatching(v));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn edges(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    pub fn exposed(&self, g: &ColoredMultigraph) -> Vec<VertexId> {
        let mut covered = vec![false; g.vertex_count()];
        for &e in &self.edges {
            covered[g.edge(e).u] = true;
            covered[g.edge(e).v] = true;
        }
        (0..g.vertex_count()).filter(|&v| !covered[v]).collect()
    }

    /// Symmetric difference with the edges of `path`.
    pub fn augment(&mut self, path: &Walk) {
        for &e in &path.edges {
            if !self.edges.remove(&e) {
                self.edges.insert(e);
            }
        }
    }
}

fn check_simple(g: &ColoredMultigraph) -> Result<()> {
    let mut seen: BTreeMap<(VertexId, VertexId), EdgeId> = BTreeMap::new();
    for (id, edge) in g.edges().iter().enumerate() {
        let key = (edge.u.min(edge.v), edge.u.max(edge.v));
        if let Some(&first) = seen.get(&key) {
            return Err(Error::NotSimple(first, id));
        }
        seen.insert(key, id);
    }
    Ok(())
}

/// `g` recolored with matched edges `R` and all others `B`.
pub fn matching_coloring(g: &ColoredMultigraph, m: &Matching) -> Result<ColoredMultigraph> {
    m.check(g)?;
    let palette = ["R".to_string(), "B".to_string()];
    let edges: Vec<_> = (0..g.edge_count())
        .map(|e| {
            let edge = g.edge(e);
            (edge.u, edge.v, if m.contains(e) { Color(0) } else { Color(1) })
        })
        .collect();
    Ok(ColoredMultigraph::with_palette(g.vertex_count(), &palette, &edges))
}

/// An `m`-augmenting path, or `None` when `m` is maximum. Colors of `g`
/// are ignored.
pub fn augmenting_path(g: &ColoredMultigraph, m: &Matching) -> Result<Option<Walk>> {
    check_simple(g)?;
    let colored = matching_coloring(g, m)?;
    let exposed = m.exposed(g);
    if exposed.len() < 2 {
        return Ok(None);
    }
    match solve(&colored, &exposed)? {
        SolveOutcome::Certificate(_) => Ok(None),
        SolveOutcome::Trail(path) => {
            if !classify_walk(&colored, &path)?.is_path {
                return Err(Error::Internal(format!("augmenting trail {path} repeats a vertex")));
            }
            Ok(Some(path))
        }
    }
}

/// Maximum matching by repeated augmentation from the empty matching.
pub fn max_matching(g: &ColoredMultigraph) -> Result<Matching> {
    max_matching_with(g, false)
}

/// As [`max_matching`], optionally seeded with a greedy matching taken in
/// ascending edge order.
pub fn max_matching_with(g: &ColoredMultigraph, greedy_start: bool) -> Result<Matching> {
    check_simple(g)?;
    let mut m = Matching::default();
    if greedy_start {
        let mut covered = vec![false; g.vertex_count()];
        for (id, edge) in g.edges().iter().enumerate() {
            if !covered[edge.u] && !covered[edge.v] {
                covered[edge.u] = true;
                covered[edge.v] = true;
                m.edges.insert(id);
            }
        }
    }
    while let Some(path) = augmenting_path(g, &m)? {
        m.augment(&path);
    }
    Ok(m)
}

/// Exhaustive search over all matchings.
pub fn brute_max_matching(g: &ColoredMultigraph) -> Matching {
    fn go(g: &ColoredMultigraph, v: VertexId, used: &mut Vec<bool>, cur: &mut Vec<EdgeId>, best: &mut Vec<EdgeId>) {
        // vertices before v are settled; each further edge uses two of the rest
        if v < g.vertex_count() && cur.len() + (g.vertex_count() - v) / 2 <= best.len() {
            return;
        }
        if v == g.vertex_count() {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
            return;
        }
        if used[v] {
            return go(g, v + 1, used, cur, best);
        }
        for &e in g.incident(v) {
            let w = g.edge(e).other(v);
            if w > v && !used[w] {
                used[v] = true;
                used[w] = true;
                cur.push(e);
                go(g, v + 1, used, cur, best);
                cur.pop();
                used[v] = false;
                used[w] = false;
            }
        }
        go(g, v + 1, used, cur, best);
    }
    let mut best = Vec::new();
    go(g, 0, &mut vec![false; g.vertex_count()], &mut Vec::new(), &mut best);
    Matching {
        edges: best.into_iter().collect(),
    }
}
