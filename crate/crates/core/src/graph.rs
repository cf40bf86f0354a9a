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

//! Edge-colored multigraphs, walks and characteristic vectors.
//!
//! Vertices are `0..vertex_count`, edges are identified by dense ids
//! `0..edge_count`. Parallel edges are allowed, loops are not. Colors are
//! opaque string tokens interned into a per-graph palette.

use std::collections::BTreeSet;
use std::fmt;

use num::{BigRational, Signed, Zero};

use crate::error::{Error, GraphViolation};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Index of a color in the palette of its host graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub color: Color,
}

impl Edge {
    /// The endpoint opposite `x`. `x` must be an endpoint.
    #[inline]
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    #[inline]
    pub fn joins(&self, a: VertexId, b: VertexId) -> bool {
        (self.u == a && self.v == b) || (self.u == b && self.v == a)
    }
}

/// An edge as it appears in an input file, before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawEdge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub color: String,
}

impl RawEdge {
    pub fn new(id: EdgeId, u: VertexId, v: VertexId, color: impl Into<String>) -> Self {
        RawEdge {
            id,
            u,
            v,
            color: color.into(),
        }
    }
}

/// Checks the structural invariants of a raw edge list: no loops, unique
/// ids, ids dense in `0..m`, endpoints in range. Reports the first offending
/// edge in input order.
pub fn validate_graph(vertex_count: usize, edges: &[RawEdge]) -> Result<(), GraphViolation> {
    let m = edges.len();
    let mut seen = vec![false; m];
    for edge in edges {
        for x in [edge.u, edge.v] {
            if x >= vertex_count {
                return Err(GraphViolation::VertexOutOfRange {
                    edge: edge.id,
                    vertex: x,
                });
            }
        }
        if edge.u == edge.v {
            return Err(GraphViolation::Loop {
                edge: edge.id,
                vertex: edge.u,
            });
        }
        if edge.id >= m {
            return Err(GraphViolation::NonDenseId { edge: edge.id });
        }
        if seen[edge.id] {
            return Err(GraphViolation::DuplicateId { edge: edge.id });
        }
        seen[edge.id] = true;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredMultigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    palette: Vec<String>,
    incidence: Vec<Vec<EdgeId>>,
}

impl ColoredMultigraph {
    /// Builds a graph from raw edges (any order, ids must be dense).
    pub fn from_raw(vertex_count: usize, raw: &[RawEdge]) -> Result<Self, GraphViolation> {
        validate_graph(vertex_count, raw)?;
        let mut sorted: Vec<&RawEdge> = raw.iter().collect();
        sorted.sort_by_key(|e| e.id);
        let mut g = ColoredMultigraph {
            vertex_count,
            edges: Vec::with_capacity(raw.len()),
            palette: Vec::new(),
            incidence: vec![Vec::new(); vertex_count],
        };
        for e in sorted {
            g.push_edge(e.u, e.v, &e.color);
        }
        Ok(g)
    }

    /// Builds a graph whose edge ids follow the slice order.
    pub fn from_edges<S: AsRef<str>>(
        vertex_count: usize,
        edges: &[(VertexId, VertexId, S)],
    ) -> Result<Self, GraphViolation> {
        let raw: Vec<RawEdge> = edges
            .iter()
            .enumerate()
            .map(|(id, (u, v, c))| RawEdge::new(id, *u, *v, c.as_ref()))
            .collect();
        Self::from_raw(vertex_count, &raw)
    }

    /// Same as [`from_edges`](Self::from_edges) but keeps a given palette
    /// order, so color indices are stable across derived graphs.
    pub(crate) fn with_palette(vertex_count: usize, palette: &[String], edges: &[(VertexId, VertexId, Color)]) -> Self {
        let mut g = ColoredMultigraph {
            vertex_count,
            edges: Vec::with_capacity(edges.len()),
            palette: palette.to_vec(),
            incidence: vec![Vec::new(); vertex_count],
        };
        for &(u, v, color) in edges {
            debug_assert!(u != v && u < vertex_count && v < vertex_count);
            let id = g.edges.len();
            g.edges.push(Edge { u, v, color });
            g.incidence[u].push(id);
            g.incidence[v].push(id);
        }
        g
    }

    fn push_edge(&mut self, u: VertexId, v: VertexId, color: &str) -> EdgeId {
        let color = self.intern(color);
        let id = self.edges.len();
        self.edges.push(Edge { u, v, color });
        self.incidence[u].push(id);
        self.incidence[v].push(id);
        id
    }

    pub(crate) fn intern(&mut self, name: &str) -> Color {
        match self.palette.iter().position(|c| c == name) {
            Some(i) => Color(i as u32),
            None => {
                self.palette.push(name.to_string());
                Color((self.palette.len() - 1) as u32)
            }
        }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edge ids incident to `v`, ascending.
    #[inline]
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    #[inline]
    pub fn color(&self, e: EdgeId) -> Color {
        self.edges[e].color
    }

    pub fn palette(&self) -> &[String] {
        &self.palette
    }

    pub fn color_name(&self, c: Color) -> &str {
        &self.palette[c.0 as usize]
    }

    pub fn color_by_name(&self, name: &str) -> Option<Color> {
        self.palette.iter().position(|c| c == name).map(|i| Color(i as u32))
    }

    /// Colors actually used by some edge.
    pub fn used_colors(&self) -> BTreeSet<Color> {
        self.edges.iter().map(|e| e.color).collect()
    }

    pub fn to_raw(&self) -> Vec<RawEdge> {
        self.edges
            .iter()
            .enumerate()
            .map(|(id, e)| RawEdge::new(id, e.u, e.v, self.color_name(e.color)))
            .collect()
    }

    /// Connected components of the subgraph induced on `V - removed`, each
    /// sorted, listed in order of their smallest vertex.
    pub fn components(&self, removed: &BTreeSet<VertexId>) -> Vec<Vec<VertexId>> {
        let mut mask = vec![false; self.vertex_count];
        for &v in removed {
            if v < self.vertex_count {
                mask[v] = true;
            }
        }
        self.components_masked(&mask, None)
    }

    /// Components with vertices in `removed` and the edge `skip` deleted.
    pub(crate) fn components_masked(&self, removed: &[bool], skip: Option<EdgeId>) -> Vec<Vec<VertexId>> {
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut out = Vec::new();
        for start in 0..self.vertex_count {
            if removed[start] || label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut comp = vec![start];
            label[start] = id;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &e in &self.incidence[x] {
                    if Some(e) == skip {
                        continue;
                    }
                    let y = self.edges[e].other(x);
                    if !removed[y] && label[y] == usize::MAX {
                        label[y] = id;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Per-vertex component index (over the whole graph).
    pub fn component_labels(&self) -> Vec<usize> {
        let comps = self.components_masked(&vec![false; self.vertex_count], None);
        let mut label = vec![0; self.vertex_count];
        for (i, comp) in comps.iter().enumerate() {
            for &v in comp {
                label[v] = i;
            }
        }
        label
    }

    /// Edges whose removal increases the number of components. Lowpoint DFS
    /// keyed on edge ids, so a parallel pair never yields a bridge.
    pub fn bridges(&self) -> BTreeSet<EdgeId> {
        let n = self.vertex_count;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut bridges = BTreeSet::new();
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, edge used to enter it, next incidence index)
            let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(top) = stack.last_mut() {
                let (x, via, idx) = *top;
                if idx < self.incidence[x].len() {
                    top.2 += 1;
                    let e = self.incidence[x][idx];
                    if Some(e) == via {
                        continue;
                    }
                    let y = self.edges[e].other(x);
                    if disc[y] == usize::MAX {
                        disc[y] = timer;
                        low[y] = timer;
                        timer += 1;
                        stack.push((y, Some(e), 0));
                    } else {
                        low[x] = low[x].min(disc[y]);
                    }
                } else {
                    stack.pop();
                    if let (Some(e), Some(parent)) = (via, stack.last()) {
                        let p = parent.0;
                        low[p] = low[p].min(low[x]);
                        if low[x] > disc[p] {
                            bridges.insert(e);
                        }
                    }
                }
            }
        }
        bridges
    }

    /// The subgraph induced on `vertices` (given in the order that defines
    /// the new ids). Returns the graph and, per new edge, its original id.
    pub fn induced(&self, vertices: &[VertexId]) -> (ColoredMultigraph, Vec<EdgeId>) {
        let mut local = vec![usize::MAX; self.vertex_count];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        let mut back = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if local[e.u] != usize::MAX && local[e.v] != usize::MAX {
                edges.push((local[e.u], local[e.v], e.color));
                back.push(id);
            }
        }
        (
            ColoredMultigraph::with_palette(vertices.len(), &self.palette, &edges),
            back,
        )
    }

    /// The subgraph keeping only the listed edges (all vertices retained).
    pub fn edge_subgraph(&self, keep: &[EdgeId]) -> ColoredMultigraph {
        let edges: Vec<_> = keep
            .iter()
            .map(|&e| (self.edges[e].u, self.edges[e].v, self.edges[e].color))
            .collect();
        ColoredMultigraph::with_palette(self.vertex_count, &self.palette, &edges)
    }
}

/// A walk `v_0, e_1, v_1, ..., e_m, v_m`, meaningful relative to one host
/// graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Walk {
    /// The zero-length walk at `v`.
    pub fn trivial(v: VertexId) -> Self {
        Walk {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }

    pub fn new(vertices: Vec<VertexId>, edges: Vec<EdgeId>) -> Self {
        debug_assert_eq!(vertices.len(), edges.len() + 1);
        Walk { vertices, edges }
    }

    /// Builds a walk from its start vertex and edge sequence.
    pub fn from_edges(g: &ColoredMultigraph, start: VertexId, edges: &[EdgeId]) -> Result<Self, Error> {
        let mut w = Walk::trivial(start);
        for &e in edges {
            if e >= g.edge_count() {
                return Err(Error::UnknownEdge(e));
            }
            let cur = w.end();
            let edge = g.edge(e);
            if edge.u != cur && edge.v != cur {
                return Err(Error::InconsistentWalk { position: w.len() });
            }
            w.push(e, edge.other(cur));
        }
        Ok(w)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    #[inline]
    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    #[inline]
    pub fn end(&self) -> VertexId {
        *self.vertices.last().expect("walk has a vertex")
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }

    pub fn first_edge(&self) -> Option<EdgeId> {
        self.edges.first().copied()
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    pub fn push(&mut self, e: EdgeId, to: VertexId) {
        self.edges.push(e);
        self.vertices.push(to);
    }

    pub fn reversed(&self) -> Walk {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut edges = self.edges.clone();
        edges.reverse();
        Walk { vertices, edges }
    }

    /// `self * other`; the end of `self` must be the start of `other`.
    pub fn concat(&self, other: &Walk) -> Walk {
        assert_eq!(self.end(), other.start(), "walks do not meet");
        let mut out = self.clone();
        out.vertices.extend_from_slice(&other.vertices[1..]);
        out.edges.extend_from_slice(&other.edges);
        out
    }

    /// Whether consecutive edges join the stated vertices in `g`.
    pub fn is_consistent(&self, g: &ColoredMultigraph) -> bool {
        self.first_inconsistency(g).is_none()
    }

    fn first_inconsistency(&self, g: &ColoredMultigraph) -> Option<usize> {
        if self.vertices.len() != self.edges.len() + 1 {
            return Some(self.edges.len());
        }
        if self.vertices.iter().any(|&v| v >= g.vertex_count()) {
            return Some(0);
        }
        self.edges.iter().enumerate().find_map(|(j, &e)| {
            let ok = e < g.edge_count() && g.edge(e).joins(self.vertices[j], self.vertices[j + 1]);
            (!ok).then_some(j)
        })
    }

    /// Colors of the edges in order.
    pub fn colors(&self, g: &ColoredMultigraph) -> Vec<Color> {
        self.edges.iter().map(|&e| g.color(e)).collect()
    }

    /// Rotation of a closed walk to start at edge position `k`.
    pub fn rotated(&self, k: usize) -> Walk {
        debug_assert!(self.is_closed());
        let m = self.len();
        if m == 0 {
            return self.clone();
        }
        let k = k % m;
        let mut edges = Vec::with_capacity(m);
        let mut vertices = Vec::with_capacity(m + 1);
        for i in 0..m {
            vertices.push(self.vertices[(k + i) % m]);
            edges.push(self.edges[(k + i) % m]);
        }
        vertices.push(vertices[0]);
        Walk { vertices, edges }
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vertices[0])?;
        for (e, v) in self.edges.iter().zip(&self.vertices[1..]) {
            write!(f, " {} {}", e, v)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WalkClass {
    pub is_trail: bool,
    pub is_closed: bool,
    pub is_path: bool,
    pub is_cycle: bool,
    pub is_internally_alternating: bool,
    pub is_alternating: bool,
    pub is_cat: bool,
}

/// Classifies a walk. The zero-length walk is a closed trail, a path and
/// alternating, but never a closed alternating trail.
pub fn classify_walk(g: &ColoredMultigraph, w: &Walk) -> Result<WalkClass, Error> {
    if let Some(position) = w.first_inconsistency(g) {
        return Err(Error::InconsistentWalk { position });
    }
    let m = w.len();
    let is_closed = w.is_closed();
    let is_trail = {
        let mut used = BTreeSet::new();
        w.edges.iter().all(|&e| used.insert(e))
    };
    let distinct_vertices = {
        let mut seen = BTreeSet::new();
        w.vertices.iter().all(|&v| seen.insert(v))
    };
    let is_path = distinct_vertices;
    // closed, positive length, repeats only the endpoint
    let is_cycle = m >= 1 && is_closed && is_trail && {
        let mut seen = BTreeSet::new();
        w.vertices[..m].iter().all(|&v| seen.insert(v))
    };
    let is_internally_alternating = w.edges.windows(2).all(|pair| g.color(pair[0]) != g.color(pair[1]));
    let closing_ok = !is_closed || m == 0 || g.color(w.edges[0]) != g.color(w.edges[m - 1]);
    let is_alternating = is_internally_alternating && closing_ok;
    let is_cat = is_trail && is_closed && is_alternating && m >= 2;
    Ok(WalkClass {
        is_trail,
        is_closed,
        is_path,
        is_cycle,
        is_internally_alternating,
        is_alternating,
        is_cat,
    })
}

/// Exact nonnegative rational weights indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeVector {
    weights: Vec<BigRational>,
}

impl EdgeVector {
    pub fn zeros(edge_count: usize) -> Self {
        EdgeVector {
            weights: vec![BigRational::zero(); edge_count],
        }
    }

    /// Fails with the first negative entry.
    pub fn from_weights(weights: Vec<BigRational>) -> Result<Self, Error> {
        if let Some(e) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::NegativeWeight(e));
        }
        Ok(EdgeVector { weights })
    }

    pub fn from_integers(weights: &[i64]) -> Result<Self, Error> {
        Self::from_weights(weights.iter().map(|&w| BigRational::from_integer(w.into())).collect())
    }

    /// Used internally where signs are tracked separately (e.g. `q - t*chi`).
    pub(crate) fn from_weights_unchecked(weights: Vec<BigRational>) -> Self {
        EdgeVector { weights }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    #[inline]
    pub fn get(&self, e: EdgeId) -> &BigRational {
        &self.weights[e]
    }

    pub fn set(&mut self, e: EdgeId, w: BigRational) {
        self.weights[e] = w;
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(Zero::is_zero)
    }

    /// `self += coeff * other`.
    pub fn add_scaled(&mut self, coeff: &BigRational, other: &EdgeVector) {
        for (a, b) in self.weights.iter_mut().zip(&other.weights) {
            if !b.is_zero() {
                *a += coeff * b;
            }
        }
    }

    pub fn support(&self) -> Vec<EdgeId> {
        (0..self.weights.len())
            .filter(|&e| !self.weights[e].is_zero())
            .collect()
    }
}

/// Characteristic vector: each edge weighted by its number of occurrences.
pub fn chi(g: &ColoredMultigraph, w: &Walk) -> EdgeVector {
    let mut x = EdgeVector::zeros(g.edge_count());
    for &e in &w.edges {
        let next = x.get(e) + BigRational::from_integer(1.into());
        x.set(e, next);
    }
    x
}
