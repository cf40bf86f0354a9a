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

//! Alternating reachability between terminals.
//!
//! The solver keeps a colored blossom forest: a partition of the in-forest
//! vertices into blocks (singleton *inner* vertices, and *blossom* blocks),
//! and a rooted forest over the blocks with one tree per terminal. It grows,
//! shrinks and fuses until either an edge links two trees (a breakthrough,
//! which yields an alternating trail between distinct terminals) or no
//! operation applies, in which case the inner vertices colored by their
//! predecessor edges form a Tutte set.
//!
//! Each blossom block stores explicit witness trails for its members, so the
//! trails between a vertex and an ancestor can be assembled by walking up the
//! forest and splicing those witnesses together.

use std::collections::{BTreeMap, BTreeSet};

use crate::certificates::{tutte_evidence, ComponentEvidence};
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredMultigraph, EdgeId, VertexId, Walk};

pub type BlockId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    OutOfForest,
    /// Singleton non-root block; the color is that of its predecessor edge.
    Inner(Color),
    Blossom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    Grow(EdgeId),
    Shrink(EdgeId),
    Fuse(EdgeId),
    Breakthrough(EdgeId),
    Maximal,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub grows: usize,
    pub shrinks: usize,
    pub fuses: usize,
}

impl OpCounts {
    pub fn total(&self) -> usize {
        self.grows + self.shrinks + self.fuses
    }
}

/// A set of nonterminals with a color per vertex. The evidence lists every
/// component of `G - A` with its terminal and incident mismatched edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TutteCertificate {
    pub coloring: BTreeMap<VertexId, Color>,
    pub evidence: Vec<ComponentEvidence>,
}

impl TutteCertificate {
    pub fn new(g: &ColoredMultigraph, terminals: &[VertexId], coloring: BTreeMap<VertexId, Color>) -> Self {
        let evidence = tutte_evidence(g, terminals, &coloring);
        TutteCertificate { coloring, evidence }
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.coloring.keys().copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Trail(Walk),
    Certificate(TutteCertificate),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum VertexClass {
    Terminal,
    /// N(S): no alternating trail from a terminal reaches the vertex.
    Unreachable,
    /// I(S, c): reachable, and every reaching trail ends with color `c`.
    Inner(Color),
    /// T(S): two trails from one terminal end with different colors.
    Blossom,
    /// Only produced by the brute-force evaluator when the three classes do
    /// not cover the vertex (possible only if terminals are connected).
    Unclassified,
}

#[derive(Debug, Clone)]
struct Block {
    members: Vec<VertexId>,
    /// Parent block and the predecessor edge leading to it.
    parent: Option<(BlockId, EdgeId)>,
    /// The terminal of a root block.
    terminal: Option<VertexId>,
    base: VertexId,
    alive: bool,
    /// Closed internally alternating trail at the base (non-root blossoms).
    closed: Option<Walk>,
    /// Two member-to-base trails for every non-base member of a blossom.
    pairs: BTreeMap<VertexId, (Walk, Walk)>,
}

impl Block {
    fn is_inner(&self) -> bool {
        self.terminal.is_none() && self.members.len() == 1
    }
}

#[derive(Debug, Clone)]
pub struct BlossomForest<'g> {
    g: &'g ColoredMultigraph,
    terminals: Vec<VertexId>,
    block_of: Vec<Option<BlockId>>,
    blocks: Vec<Block>,
    in_forest: Vec<bool>,
    ops: OpCounts,
}

impl<'g> BlossomForest<'g> {
    /// The trivial forest: every terminal is a singleton root, no edges.
    pub fn new(g: &'g ColoredMultigraph, terminals: &[VertexId]) -> Result<Self> {
        let terminals = normalize_terminals(g, terminals)?;
        let mut block_of = vec![None; g.vertex_count()];
        let blocks = terminals
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                block_of[s] = Some(i);
                Block {
                    members: vec![s],
                    parent: None,
                    terminal: Some(s),
                    base: s,
                    alive: true,
                    closed: None,
                    pairs: BTreeMap::new(),
                }
            })
            .collect();
        Ok(BlossomForest {
            g,
            terminals,
            block_of,
            blocks,
            in_forest: vec![false; g.edge_count()],
            ops: OpCounts::default(),
        })
    }

    pub fn graph(&self) -> &'g ColoredMultigraph {
        self.g
    }

    pub fn terminals(&self) -> &[VertexId] {
        &self.terminals
    }

    pub fn ops(&self) -> OpCounts {
        self.ops
    }

    pub fn block_of(&self, v: VertexId) -> Option<BlockId> {
        self.block_of[v]
    }

    pub fn is_in_forest(&self, v: VertexId) -> bool {
        self.block_of[v].is_some()
    }

    /// Whether `e` is an edge of the forest F.
    pub fn is_forest_edge(&self, e: EdgeId) -> bool {
        self.in_forest[e]
    }

    /// Live blocks, in creation order.
    pub fn blocks(&self) -> impl Iterator<Item = BlockId> + '_ {
        (0..self.blocks.len()).filter(move |&b| self.blocks[b].alive)
    }

    pub fn members(&self, b: BlockId) -> &[VertexId] {
        &self.blocks[b].members
    }

    pub fn parent(&self, b: BlockId) -> Option<(BlockId, EdgeId)> {
        self.blocks[b].parent
    }

    pub fn base(&self, b: BlockId) -> VertexId {
        self.blocks[b].base
    }

    pub fn block_terminal(&self, b: BlockId) -> Option<VertexId> {
        self.blocks[b].terminal
    }

    pub fn vertex_kind(&self, v: VertexId) -> VertexKind {
        match self.block_of[v] {
            None => VertexKind::OutOfForest,
            Some(b) if self.blocks[b].is_inner() => {
                VertexKind::Inner(self.pred_color(b).expect("inner block has a parent"))
            }
            Some(_) => VertexKind::Blossom,
        }
    }

    fn pred_color(&self, b: BlockId) -> Option<Color> {
        self.blocks[b].parent.map(|(_, e)| self.g.color(e))
    }

    fn is_inner_block(&self, b: BlockId) -> bool {
        self.blocks[b].is_inner()
    }

    /// The color restriction an edge must satisfy at an in-forest endpoint.
    fn endpoint_allows(&self, x: VertexId, e: EdgeId) -> bool {
        let b = self.block_of[x].expect("endpoint in forest");
        !self.is_inner_block(b) || self.pred_color(b) != Some(self.g.color(e))
    }

    /// Ancestor chain of a block, starting with the block itself.
    fn ancestors(&self, b: BlockId) -> Vec<BlockId> {
        let mut chain = vec![b];
        let mut cur = b;
        while let Some((p, _)) = self.blocks[cur].parent {
            chain.push(p);
            cur = p;
        }
        chain
    }

    fn root(&self, b: BlockId) -> BlockId {
        *self.ancestors(b).last().expect("nonempty chain")
    }

    /// The first applicable action, scanning edges by ascending id.
    pub fn find_action(&self) -> Action {
        for e in 0..self.g.edge_count() {
            if let Some(action) = self.action_for(e) {
                return action;
            }
        }
        Action::Maximal
    }

    fn action_for(&self, e: EdgeId) -> Option<Action> {
        let edge = self.g.edge(e);
        let (bu, bv) = (self.block_of[edge.u], self.block_of[edge.v]);
        match (bu, bv) {
            (None, None) => None,
            (Some(_), None) => self.endpoint_allows(edge.u, e).then_some(Action::Grow(e)),
            (None, Some(_)) => self.endpoint_allows(edge.v, e).then_some(Action::Grow(e)),
            (Some(a), Some(b)) => {
                if self.in_forest[e] {
                    (!self.is_inner_block(a) && !self.is_inner_block(b)).then_some(Action::Fuse(e))
                } else if a == b || !(self.endpoint_allows(edge.u, e) && self.endpoint_allows(edge.v, e)) {
                    None
                } else if self.root(a) != self.root(b) {
                    Some(Action::Breakthrough(e))
                } else {
                    Some(Action::Shrink(e))
                }
            }
        }
    }

    pub fn grow(&mut self, e: EdgeId) -> Result<()> {
        self.check_edge(e)?;
        let edge = *self.g.edge(e);
        let (u, v) = match (self.block_of[edge.u], self.block_of[edge.v]) {
            (Some(_), None) => (edge.u, edge.v),
            (None, Some(_)) => (edge.v, edge.u),
            _ => return Err(pre("grow needs exactly one endpoint in the forest")),
        };
        if !self.endpoint_allows(u, e) {
            return Err(pre("grow edge repeats the predecessor color of an inner vertex"));
        }
        let parent = self.block_of[u].expect("checked");
        let id = self.blocks.len();
        self.blocks.push(Block {
            members: vec![v],
            parent: Some((parent, e)),
            terminal: None,
            base: v,
            alive: true,
            closed: None,
            pairs: BTreeMap::new(),
        });
        self.block_of[v] = Some(id);
        self.in_forest[e] = true;
        self.ops.grows += 1;
        Ok(())
    }

    pub fn shrink(&mut self, e: EdgeId) -> Result<()> {
        self.check_edge(e)?;
        let edge = *self.g.edge(e);
        let (u, v) = (edge.u, edge.v);
        let (bu, bv) = match (self.block_of[u], self.block_of[v]) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(pre("shrink needs both endpoints in the forest")),
        };
        if self.in_forest[e] {
            return Err(pre("shrink edge is already a forest edge"));
        }
        if bu == bv {
            return Err(pre("shrink edge lies inside one block"));
        }
        if self.root(bu) != self.root(bv) {
            return Err(pre("shrink edge joins different trees (a breakthrough)"));
        }
        if !(self.endpoint_allows(u, e) && self.endpoint_allows(v, e)) {
            return Err(pre("shrink edge repeats the predecessor color of an inner endpoint"));
        }

        let up = self.ancestors(bu);
        let vp = self.ancestors(bv);
        let vset: BTreeSet<BlockId> = vp.iter().copied().collect();
        let iu = up.iter().position(|b| vset.contains(b)).expect("same tree");
        let top = up[iu];
        let iv = vp.iter().position(|&b| b == top).expect("common ancestor");
        let u_side: Vec<BlockId> = up[..iu].to_vec();
        let v_side: Vec<BlockId> = vp[..iv].to_vec();

        let base = self.blocks[top].base;
        let outer = self.pred_color(top);
        let mut merged: Vec<BlockId> = vec![top];
        merged.extend(&u_side);
        merged.extend(&v_side);

        // Witnesses for the merged block, computed on the current forest.
        let mut pairs = BTreeMap::new();
        for &b in &merged {
            for &w in &self.blocks[b].members {
                if w == base {
                    continue;
                }
                let pair = if !self.is_inner_block(b) {
                    self.pl(w, base)?
                } else {
                    let first = self.pl(w, base)?.0;
                    let (near, far) = if u_side.contains(&b) { (u, v) } else { (v, u) };
                    let other = self.cycle_trail(w, near, e, far, base, |t| {
                        t.edges[0] != first.edges[0]
                            && self.g.color(t.edges[0]) != self.g.color(first.edges[0])
                            && Some(self.g.color(*t.edges.last().unwrap())) != outer
                    })?;
                    (first, other)
                };
                pairs.insert(w, pair);
            }
        }
        // A blossom on top keeps its closed trail: splicing through `e` can
        // reuse its edges, and the old witness still qualifies.
        let closed = if self.blocks[top].terminal.is_some() {
            None
        } else if !self.is_inner_block(top) {
            self.blocks[top].closed.clone()
        } else {
            let c = outer.expect("non-root block has a parent");
            Some(self.cycle_trail(base, u, e, v, base, |t| {
                self.g.color(t.edges[0]) != c && self.g.color(*t.edges.last().unwrap()) != c
            })?)
        };

        let dropped: Vec<EdgeId> = u_side
            .iter()
            .chain(&v_side)
            .map(|&b| self.blocks[b].parent.expect("below the top").1)
            .collect();
        for f in dropped {
            self.in_forest[f] = false;
        }
        self.merge_blocks(&merged, top, closed, pairs);
        self.ops.shrinks += 1;
        Ok(())
    }

    pub fn fuse(&mut self, e: EdgeId) -> Result<()> {
        self.check_edge(e)?;
        if !self.in_forest[e] {
            return Err(pre("fuse edge is not a forest edge"));
        }
        let edge = *self.g.edge(e);
        let (bu, bv) = (
            self.block_of[edge.u].expect("forest edge endpoints are in the forest"),
            self.block_of[edge.v].expect("forest edge endpoints are in the forest"),
        );
        if self.is_inner_block(bu) || self.is_inner_block(bv) {
            return Err(pre("fuse needs two blossom endpoints"));
        }
        let (child, parent) = if self.blocks[bu].parent == Some((bv, e)) {
            (bu, bv)
        } else {
            (bv, bu)
        };
        debug_assert_eq!(self.blocks[child].parent, Some((parent, e)));
        let base = self.blocks[parent].base;
        let mut pairs = self.blocks[parent].pairs.clone();
        for &w in &self.blocks[child].members {
            pairs.insert(w, self.pl(w, base)?);
        }
        let closed = self.blocks[parent].closed.clone();
        self.in_forest[e] = false;
        self.merge_blocks(&[parent, child], parent, closed, pairs);
        self.ops.fuses += 1;
        Ok(())
    }

    /// Replaces `merged` by one block that inherits parent, terminal and base
    /// of `top`.
    fn merge_blocks(
        &mut self,
        merged: &[BlockId],
        top: BlockId,
        closed: Option<Walk>,
        pairs: BTreeMap<VertexId, (Walk, Walk)>,
    ) {
        let id = self.blocks.len();
        let mut members: Vec<VertexId> = merged
            .iter()
            .flat_map(|&b| self.blocks[b].members.iter().copied())
            .collect();
        members.sort_unstable();
        for &w in &members {
            self.block_of[w] = Some(id);
        }
        let block = Block {
            members,
            parent: self.blocks[top].parent,
            terminal: self.blocks[top].terminal,
            base: self.blocks[top].base,
            alive: true,
            closed,
            pairs,
        };
        for &b in merged {
            let old = &mut self.blocks[b];
            old.alive = false;
            old.pairs.clear();
            old.closed = None;
        }
        let dead: BTreeSet<BlockId> = merged.iter().copied().collect();
        for other in &mut self.blocks {
            if let Some((p, f)) = other.parent {
                if other.alive && dead.contains(&p) {
                    other.parent = Some((id, f));
                }
            }
        }
        self.blocks.push(block);
    }

    /// `T_p(near, w)^R * (near, e, far) * T_q(far, base)` for the first
    /// `(p, q)` that is an alternating trail accepted by `accept`.
    fn cycle_trail(
        &self,
        w: VertexId,
        near: VertexId,
        e: EdgeId,
        far: VertexId,
        base: VertexId,
        accept: impl Fn(&Walk) -> bool,
    ) -> Result<Walk> {
        let (a1, a2) = self.pl(near, w)?;
        let (b1, b2) = self.pl(far, base)?;
        for a in [&a1, &a2] {
            for b in [&b1, &b2] {
                if let Some(t) = splice(self.g, &a.reversed(), e, b) {
                    if accept(&t) {
                        return Ok(t);
                    }
                }
            }
        }
        Err(Error::Internal(format!(
            "no alternating combination through edge {e} for vertex {w}"
        )))
    }

    /// The two internally alternating trails from `u` to an ancestor-side
    /// vertex `v` (inner, or the base of its block), per the recursion on the
    /// forest distance between their blocks.
    pub fn extract_trails(&self, u: VertexId, v: VertexId) -> Result<(Walk, Walk)> {
        let n = self.g.vertex_count();
        if u >= n || v >= n {
            return Err(Error::VertexOutOfRange(u.max(v)));
        }
        let (bu, bv) = match (self.block_of[u], self.block_of[v]) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(pre("both vertices must be in the forest")),
        };
        if !self.ancestors(bu).contains(&bv) {
            return Err(pre("[u] is not a descendant of [v]"));
        }
        if !self.is_inner_block(bv) && self.blocks[bv].base != v {
            return Err(pre("v must be inner or the base of its block"));
        }
        self.pl(u, v)
    }

    fn pl(&self, u: VertexId, v: VertexId) -> Result<(Walk, Walk)> {
        let bu = self.block_of[u].expect("in forest");
        let bv = self.block_of[v].expect("in forest");
        let block = &self.blocks[bu];
        if bu == bv {
            if block.is_inner() {
                return Ok((Walk::trivial(u), Walk::trivial(u)));
            }
            if u != v {
                return block
                    .pairs
                    .get(&u)
                    .cloned()
                    .ok_or_else(|| Error::Internal(format!("missing witness pair for {u}")));
            }
            if block.terminal == Some(u) {
                return Ok((Walk::trivial(u), Walk::trivial(u)));
            }
            let closed = block
                .closed
                .clone()
                .ok_or_else(|| Error::Internal(format!("missing closed witness for {u}")))?;
            return Ok((Walk::trivial(u), closed));
        }

        let (_, e) = block.parent.expect("strict descendant has a parent");
        let x = if self.block_of[self.g.edge(e).u] == Some(bu) {
            self.g.edge(e).u
        } else {
            self.g.edge(e).v
        };
        let y = self.g.edge(e).other(x);
        let (t1, t2) = self.pl(y, v)?;
        // Ties go to the extension whose last edge avoids the predecessor
        // color of a blossom [v]; a zero-length tail may otherwise end on it.
        let avoid = if self.is_inner_block(bv) {
            None
        } else {
            self.pred_color(bv)
        };
        let extend = |head: &Walk| -> Result<Walk> {
            let mut found: Vec<Walk> = [&t1, &t2]
                .into_iter()
                .filter_map(|tail| splice(self.g, head, e, tail))
                .collect();
            if let Some(i) = found
                .iter()
                .position(|t| t.last_edge().map(|f| self.g.color(f)) != avoid)
            {
                return Ok(found.swap_remove(i));
            }
            found
                .into_iter()
                .next()
                .ok_or_else(|| Error::Internal(format!("no alternating extension of {head} across {e}")))
        };
        if block.is_inner() {
            let t = extend(&Walk::trivial(u))?;
            Ok((t.clone(), t))
        } else if u != x {
            let (w1, w2) = block
                .pairs
                .get(&u)
                .ok_or_else(|| Error::Internal(format!("missing witness pair for {u}")))?;
            Ok((extend(w1)?, extend(w2)?))
        } else {
            let closed = block
                .closed
                .as_ref()
                .ok_or_else(|| Error::Internal(format!("missing closed witness for {u}")))?;
            Ok((extend(&Walk::trivial(u))?, extend(closed)?))
        }
    }

    /// The alternating trail between distinct terminals through a
    /// breakthrough edge.
    pub fn breakthrough_trail(&self, e: EdgeId) -> Result<Walk> {
        if self.action_for(e) != Some(Action::Breakthrough(e)) {
            return Err(pre("edge is not a breakthrough"));
        }
        let edge = *self.g.edge(e);
        let (u, v) = (edge.u, edge.v);
        let s = self.blocks[self.root(self.block_of[u].unwrap())].base;
        let t = self.blocks[self.root(self.block_of[v].unwrap())].base;
        let (a1, a2) = self.pl(u, s)?;
        let (b1, b2) = self.pl(v, t)?;
        for a in [&a1, &a2] {
            for b in [&b1, &b2] {
                if let Some(trail) = splice(self.g, &a.reversed(), e, b) {
                    return Ok(trail);
                }
            }
        }
        Err(Error::Internal(format!(
            "breakthrough at {e} has no alternating assembly"
        )))
    }

    /// Inner vertices colored by their predecessor edges.
    pub fn tutte_certificate(&self) -> TutteCertificate {
        let coloring = (0..self.g.vertex_count())
            .filter_map(|v| match self.vertex_kind(v) {
                VertexKind::Inner(c) => Some((v, c)),
                _ => None,
            })
            .collect();
        TutteCertificate::new(self.g, &self.terminals, coloring)
    }

    pub fn apply(&mut self, action: Action) -> Result<()> {
        match action {
            Action::Grow(e) => self.grow(e),
            Action::Shrink(e) => self.shrink(e),
            Action::Fuse(e) => self.fuse(e),
            Action::Breakthrough(_) | Action::Maximal => Err(pre("not a forest operation")),
        }
    }

    /// Applies actions until a breakthrough or maximality.
    pub fn run(&mut self) -> Result<SolveOutcome> {
        loop {
            match self.find_action() {
                Action::Breakthrough(e) => return Ok(SolveOutcome::Trail(self.breakthrough_trail(e)?)),
                Action::Maximal => return Ok(SolveOutcome::Certificate(self.tutte_certificate())),
                op => self.apply(op)?,
            }
        }
    }

    fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e >= self.g.edge_count() {
            Err(Error::UnknownEdge(e))
        } else {
            Ok(())
        }
    }

    /// Checks the colored-blossom-forest conditions, including every stored
    /// witness trail. Meant for tests; returns a description of the first
    /// failure.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let g = self.g;
        let live: Vec<BlockId> = self.blocks().collect();
        let mut covered = BTreeSet::new();
        for &b in &live {
            for &w in &self.blocks[b].members {
                if self.block_of[w] != Some(b) {
                    return Err(format!("vertex {w} not mapped to block {b}"));
                }
                if !covered.insert(w) {
                    return Err(format!("vertex {w} in two blocks"));
                }
            }
        }
        if covered.len() != self.block_of.iter().filter(|b| b.is_some()).count() {
            return Err("block_of covers vertices outside live blocks".into());
        }
        let roots: Vec<BlockId> = live
            .iter()
            .copied()
            .filter(|&b| self.blocks[b].parent.is_none())
            .collect();
        if roots.len() != self.terminals.len() {
            return Err(format!("{} roots for {} terminals", roots.len(), self.terminals.len()));
        }
        for &s in &self.terminals {
            let b = self.block_of[s].ok_or(format!("terminal {s} left the forest"))?;
            if self.blocks[b].terminal != Some(s) || self.blocks[b].base != s {
                return Err(format!("terminal {s} is not the base of a root block"));
            }
        }
        let forest_edges: BTreeSet<EdgeId> = (0..g.edge_count()).filter(|&e| self.in_forest[e]).collect();
        let pred_edges: BTreeSet<EdgeId> = live
            .iter()
            .filter_map(|&b| self.blocks[b].parent.map(|p| p.1))
            .collect();
        if forest_edges != pred_edges {
            return Err("forest edges differ from predecessor edges".into());
        }
        for &b in &live {
            let block = &self.blocks[b];
            let inside: BTreeSet<VertexId> = block.members.iter().copied().collect();
            if let Some((p, e)) = block.parent {
                if !self.blocks[p].alive {
                    return Err(format!("block {b} has dead parent"));
                }
                let edge = g.edge(e);
                let (x, y) = if inside.contains(&edge.u) {
                    (edge.u, edge.v)
                } else {
                    (edge.v, edge.u)
                };
                if !inside.contains(&x) || self.block_of[y] != Some(p) {
                    return Err(format!("predecessor edge {e} of block {b} misplaced"));
                }
                if block.base != x {
                    return Err(format!("base of block {b} is not the predecessor endpoint"));
                }
            }
            if self.ancestors(b).len() > live.len() {
                return Err("forest has a cycle".into());
            }
            if block.is_inner() {
                let c = self.pred_color(b);
                for &child in &live {
                    if let Some((p, e)) = self.blocks[child].parent {
                        if p == b && Some(g.color(e)) == c {
                            return Err(format!("inner block {b} has child edge {e} of its own color"));
                        }
                    }
                }
                continue;
            }
            let c = self.pred_color(b);
            let within = |t: &Walk| t.vertices.iter().all(|v| inside.contains(v));
            for &w in &block.members {
                if w == block.base {
                    if let Some(c) = c {
                        let t = block
                            .closed
                            .as_ref()
                            .ok_or(format!("block {b} lacks a closed witness"))?;
                        let class = crate::graph::classify_walk(g, t).map_err(|e| e.to_string())?;
                        if !(within(t) && class.is_trail && class.is_closed && class.is_internally_alternating)
                            || t.is_empty()
                            || t.start() != w
                        {
                            return Err(format!("closed witness of block {b} is malformed"));
                        }
                        if g.color(t.edges[0]) == c || g.color(*t.edges.last().unwrap()) == c {
                            return Err(format!("closed witness of block {b} touches color {c:?}"));
                        }
                    }
                    continue;
                }
                let (t1, t2) = block
                    .pairs
                    .get(&w)
                    .ok_or(format!("block {b} lacks witnesses for {w}"))?;
                for t in [t1, t2] {
                    let class = crate::graph::classify_walk(g, t).map_err(|e| e.to_string())?;
                    if !(within(t) && class.is_trail && class.is_alternating) || t.start() != w || t.end() != block.base
                    {
                        return Err(format!("witness of {w} in block {b} is malformed"));
                    }
                    if t.is_empty() || c.is_some_and(|c| g.color(*t.edges.last().unwrap()) == c) {
                        return Err(format!("witness of {w} in block {b} ends with the predecessor color"));
                    }
                }
                if g.color(t1.edges[0]) == g.color(t2.edges[0]) {
                    return Err(format!("witnesses of {w} in block {b} start with one color"));
                }
            }
        }
        Ok(())
    }
}

/// `head * (x, e, y) * tail` if it is an alternating (open) trail; `head`
/// must end at an endpoint of `e` and `tail` start at the other.
fn splice(g: &ColoredMultigraph, head: &Walk, e: EdgeId, tail: &Walk) -> Option<Walk> {
    let edge = g.edge(e);
    let x = head.end();
    if !edge.joins(x, tail.start()) {
        return None;
    }
    let c = g.color(e);
    if head.last_edge().is_some_and(|f| g.color(f) == c) || tail.first_edge().is_some_and(|f| g.color(f) == c) {
        return None;
    }
    let mut used = BTreeSet::new();
    if !head
        .edges
        .iter()
        .chain(std::iter::once(&e))
        .chain(&tail.edges)
        .all(|&f| used.insert(f))
    {
        return None;
    }
    let mut out = head.clone();
    out.push(e, tail.start());
    Some(out.concat(tail))
}

fn pre(msg: &str) -> Error {
    Error::Precondition(msg.to_string())
}

pub(crate) fn normalize_terminals(g: &ColoredMultigraph, terminals: &[VertexId]) -> Result<Vec<VertexId>> {
    if terminals.is_empty() {
        return Err(Error::NoTerminals);
    }
    if let Some(&v) = terminals.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(Error::VertexOutOfRange(v));
    }
    let set: BTreeSet<VertexId> = terminals.iter().copied().collect();
    Ok(set.into_iter().collect())
}

/// Either an alternating trail between two distinct terminals or a Tutte
/// certificate.
pub fn solve(g: &ColoredMultigraph, terminals: &[VertexId]) -> Result<SolveOutcome> {
    solve_counted(g, terminals).map(|(outcome, _)| outcome)
}

/// [`solve`] together with the number of forest operations performed.
pub fn solve_counted(g: &ColoredMultigraph, terminals: &[VertexId]) -> Result<(SolveOutcome, OpCounts)> {
    let mut forest = BlossomForest::new(g, terminals)?;
    let outcome = forest.run()?;
    Ok((outcome, forest.ops()))
}

/// Splits every vertex into terminal, N(S), I(S, c) or T(S) from a maximal
/// forest. Fails if distinct terminals are connected.
pub fn classify_vertices(g: &ColoredMultigraph, terminals: &[VertexId]) -> Result<BTreeMap<VertexId, VertexClass>> {
    let mut forest = BlossomForest::new(g, terminals)?;
    if let SolveOutcome::Trail(_) = forest.run()? {
        return Err(Error::TerminalsConnected);
    }
    let terminal_set: BTreeSet<VertexId> = forest.terminals().iter().copied().collect();
    Ok((0..g.vertex_count())
        .map(|v| {
            let class = if terminal_set.contains(&v) {
                VertexClass::Terminal
            } else {
                match forest.vertex_kind(v) {
                    VertexKind::OutOfForest => VertexClass::Unreachable,
                    VertexKind::Inner(c) => VertexClass::Inner(c),
                    VertexKind::Blossom => VertexClass::Blossom,
                }
            };
            (v, class)
        })
        .collect())
}
