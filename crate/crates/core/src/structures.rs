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

//! Closed alternating trails via reductions to terminal reachability.
//!
//! A CAT through `e = {s, t}` exists iff, after deleting `e` and hanging new
//! pendant vertices `s'`, `t'` off `s` and `t` by edges of color `C(e)`, the
//! solver connects `s'` and `t'`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{classify_walk, Color, ColoredMultigraph, EdgeId, VertexId, Walk};
use crate::reachability::{solve, SolveOutcome};

/// An auxiliary graph with the map back to the graph it was derived from.
#[derive(Debug, Clone)]
pub struct ReductionMap {
    pub host: ColoredMultigraph,
    /// Original edge for every auxiliary edge; `None` for added edges.
    pub back_edges: Vec<Option<EdgeId>>,
    /// Original vertex for every auxiliary vertex; `None` for added ones.
    pub back_vertices: Vec<Option<VertexId>>,
    pub added_vertices: Vec<VertexId>,
    pub added_edges: Vec<EdgeId>,
}

impl ReductionMap {
    /// Maps an auxiliary walk that avoids added edges back to the original.
    pub fn pull_back(&self, w: &Walk) -> Option<Walk> {
        let vertices = w
            .vertices
            .iter()
            .map(|&v| self.back_vertices[v])
            .collect::<Option<Vec<_>>>()?;
        let edges = w
            .edges
            .iter()
            .map(|&e| self.back_edges[e])
            .collect::<Option<Vec<_>>>()?;
        Some(Walk::new(vertices, edges))
    }
}

/// The auxiliary graph for a CAT through `e`: `e` removed, pendant edges
/// `s'-s` and `t'-t` of color `C(e)` added with `s' = n`, `t' = n + 1`.
pub fn edge_probe_reduction(g: &ColoredMultigraph, e: EdgeId) -> Result<ReductionMap> {
    if e >= g.edge_count() {
        return Err(Error::UnknownEdge(e));
    }
    let n = g.vertex_count();
    let probe = *g.edge(e);
    let mut edges = Vec::with_capacity(g.edge_count() + 1);
    let mut back_edges = Vec::with_capacity(g.edge_count() + 1);
    for (id, edge) in g.edges().iter().enumerate() {
        if id != e {
            edges.push((edge.u, edge.v, edge.color));
            back_edges.push(Some(id));
        }
    }
    let (s_new, t_new) = (n, n + 1);
    edges.push((s_new, probe.u, probe.color));
    edges.push((t_new, probe.v, probe.color));
    back_edges.push(None);
    back_edges.push(None);
    let m = edges.len();
    let mut back_vertices: Vec<Option<VertexId>> = (0..n).map(Some).collect();
    back_vertices.extend([None, None]);
    Ok(ReductionMap {
        host: ColoredMultigraph::with_palette(n + 2, g.palette(), &edges),
        back_edges,
        back_vertices,
        added_vertices: vec![s_new, t_new],
        added_edges: vec![m - 2, m - 1],
    })
}

/// A closed alternating trail containing `e`, or `None` if there is none.
pub fn find_cat_through_edge(g: &ColoredMultigraph, e: EdgeId) -> Result<Option<Walk>> {
    let red = edge_probe_reduction(g, e)?;
    let n = g.vertex_count();
    let trail = match solve(&red.host, &[n, n + 1])? {
        SolveOutcome::Trail(t) => t,
        SolveOutcome::Certificate(_) => return Ok(None),
    };
    let s = g.edge(e).u;
    // orient from s' to t', then drop the two pendant edges
    let trail = if trail.start() == n { trail } else { trail.reversed() };
    let inner = Walk::new(
        trail.vertices[1..trail.vertices.len() - 1].to_vec(),
        trail.edges[1..trail.edges.len() - 1].to_vec(),
    );
    let mut cat = red
        .pull_back(&inner)
        .ok_or_else(|| Error::Internal("reachability trail reused a pendant edge".into()))?;
    debug_assert_eq!(cat.start(), s);
    cat.push(e, s);
    let class = classify_walk(g, &cat)?;
    if !class.is_cat {
        return Err(Error::Internal(format!("probe of edge {e} produced a non-CAT {cat}")));
    }
    Ok(Some(cat))
}

/// Checks that `g` is bridgeless and every vertex sees two edge colors.
pub fn check_cat_hypothesis(g: &ColoredMultigraph) -> Result<()> {
    if let Some(&b) = g.bridges().iter().next() {
        return Err(Error::Bridge(b));
    }
    for v in 0..g.vertex_count() {
        let mut colors = g.incident(v).iter().map(|&e| g.color(e));
        let first = colors.next();
        if first.is_none() || colors.all(|c| Some(c) == first) {
            return Err(Error::Monochromatic(v));
        }
    }
    Ok(())
}

/// A closed alternating trail in a bridgeless graph where every vertex sees
/// two colors. Edges are probed in ascending id order.
pub fn find_cat(g: &ColoredMultigraph) -> Result<Walk> {
    check_cat_hypothesis(g)?;
    for e in 0..g.edge_count() {
        if let Some(cat) = find_cat_through_edge(g, e)? {
            return Ok(cat);
        }
    }
    Err(Error::Internal("no CAT found although the hypotheses hold".into()))
}

/// The two-colored subdivision used for the cycle finder.
#[derive(Debug, Clone)]
pub struct SubdivisionReduction {
    /// The auxiliary graph; colors `R` (red) and `B` (blue).
    pub host: ColoredMultigraph,
    /// Parent edge of every auxiliary edge.
    pub parent: Vec<EdgeId>,
    /// Original vertex for auxiliary vertices; `None` for subdivision ones.
    pub back_vertices: Vec<Option<VertexId>>,
    /// `(original edge, new vertex)` for every subdivided edge.
    pub subdivided: Vec<(EdgeId, VertexId)>,
    pub red: Color,
    pub blue: Color,
}

#[derive(Debug, Clone)]
pub struct CycleCover {
    pub cycle: Walk,
    pub reduction: SubdivisionReduction,
    /// The CAT found in the auxiliary graph before mapping back.
    pub aux_cat: Walk,
}

/// Validates `phi` and builds the subdivided two-colored graph. Isolated
/// vertices carry no `phi` and are left out of the auxiliary graph.
pub fn subdivision_reduction(g: &ColoredMultigraph, phi: &BTreeMap<VertexId, EdgeId>) -> Result<SubdivisionReduction> {
    let n = g.vertex_count();
    for (&v, &e) in phi {
        if v >= n {
            return Err(Error::VertexOutOfRange(v));
        }
        if e >= g.edge_count() {
            return Err(Error::UnknownEdge(e));
        }
        let edge = g.edge(e);
        if edge.u != v && edge.v != v {
            return Err(Error::PhiNotIncident { vertex: v, edge: e });
        }
    }
    if let Some(v) = (0..n).find(|&v| g.degree(v) > 0 && !phi.contains_key(&v)) {
        return Err(Error::PhiMissing(v));
    }

    // auxiliary vertex ids: non-isolated originals first (in order), then one per subdivided edge
    let kept: Vec<VertexId> = (0..n).filter(|&v| g.degree(v) > 0).collect();
    let mut local = vec![usize::MAX; n];
    for (i, &v) in kept.iter().enumerate() {
        local[v] = i;
    }
    let palette = vec!["R".to_string(), "B".to_string()];
    let (red, blue) = (Color(0), Color(1));
    let mut back_vertices: Vec<Option<VertexId>> = kept.iter().map(|&v| Some(v)).collect();
    let mut edges = Vec::new();
    let mut parent = Vec::new();
    let mut subdivided = Vec::new();
    for (id, edge) in g.edges().iter().enumerate() {
        let at_u = phi.get(&edge.u) == Some(&id);
        let at_v = phi.get(&edge.v) == Some(&id);
        match (at_u, at_v) {
            (false, false) => {
                edges.push((local[edge.u], local[edge.v], blue));
                parent.push(id);
            }
            (true, true) => {
                edges.push((local[edge.u], local[edge.v], red));
                parent.push(id);
            }
            (true, false) | (false, true) => {
                let (own, other) = if at_u { (edge.u, edge.v) } else { (edge.v, edge.u) };
                let mid = back_vertices.len();
                back_vertices.push(None);
                subdivided.push((id, mid));
                edges.push((local[own], mid, red));
                edges.push((local[other], mid, blue));
                parent.extend([id, id]);
            }
        }
    }
    Ok(SubdivisionReduction {
        host: ColoredMultigraph::with_palette(back_vertices.len(), &palette, &edges),
        parent,
        back_vertices,
        subdivided,
        red,
        blue,
    })
}

/// A cycle `C` of a bridgeless graph such that `phi(w)` is an edge of `C`
/// for every vertex `w` on `C`. Edge colors of `g` are ignored.
pub fn giles_seymour(g: &ColoredMultigraph, phi: &BTreeMap<VertexId, EdgeId>) -> Result<Walk> {
    giles_seymour_traced(g, phi).map(|cover| cover.cycle)
}

pub fn giles_seymour_traced(g: &ColoredMultigraph, phi: &BTreeMap<VertexId, EdgeId>) -> Result<CycleCover> {
    if g.edge_count() == 0 {
        return Err(Error::Precondition("graph has no edges, hence no cycle".into()));
    }
    if let Some(&b) = g.bridges().iter().next() {
        return Err(Error::Bridge(b));
    }
    let reduction = subdivision_reduction(g, phi)?;
    let aux_cat = find_cat(&reduction.host)?;
    if !classify_walk(&reduction.host, &aux_cat)?.is_cycle {
        return Err(Error::Internal("auxiliary CAT repeats a vertex".into()));
    }
    // start at an original vertex so subdivided halves stay adjacent
    let k = aux_cat.vertices[..aux_cat.len()]
        .iter()
        .position(|&v| reduction.back_vertices[v].is_some())
        .ok_or_else(|| Error::Internal("auxiliary cycle has no original vertex".into()))?;
    let rotated = aux_cat.rotated(k);
    let mut cycle = Walk::trivial(reduction.back_vertices[rotated.start()].unwrap());
    for (&e, &v) in rotated.edges.iter().zip(&rotated.vertices[1..]) {
        if let Some(orig) = reduction.back_vertices[v] {
            cycle.push(reduction.parent[e], orig);
        }
    }
    Ok(CycleCover {
        cycle,
        reduction,
        aux_cat,
    })
}
