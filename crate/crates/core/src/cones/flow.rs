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

//! Exact augmenting-path max flow on an undirected weighted multigraph.

use std::collections::VecDeque;

use num::{BigInt, Signed, Zero};

use super::{ConeViolation, CutPair};
use crate::graph::{ColoredMultigraph, EdgeId, EdgeVector, VertexId};

struct Network<'a> {
    g: &'a ColoredMultigraph,
    cap: &'a [BigInt],
    /// Net flow on each edge in the `u -> v` direction.
    flow: Vec<BigInt>,
}

impl<'a> Network<'a> {
    fn new(g: &'a ColoredMultigraph, cap: &'a [BigInt]) -> Self {
        Network {
            g,
            cap,
            flow: vec![BigInt::zero(); g.edge_count()],
        }
    }

    /// Remaining capacity from `x` across edge `e`.
    fn residual(&self, e: EdgeId, x: VertexId) -> BigInt {
        let c = &self.cap[e];
        if self.g.edge(e).u == x {
            c - &self.flow[e]
        } else {
            c + &self.flow[e]
        }
    }

    /// BFS over positive residual edges; parent edge per reached vertex.
    fn search(&self, s: VertexId) -> Vec<Option<Option<EdgeId>>> {
        let mut parent = vec![None; self.g.vertex_count()];
        parent[s] = Some(None);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &e in self.g.incident(x) {
                let y = self.g.edge(e).other(x);
                if parent[y].is_none() && self.residual(e, x).is_positive() {
                    parent[y] = Some(Some(e));
                    queue.push_back(y);
                }
            }
        }
        parent
    }

    /// Pushes flow from `s` to `t` until it reaches `target` or no path is
    /// left; returns the flow value.
    fn run(&mut self, s: VertexId, t: VertexId, target: &BigInt) -> BigInt {
        let mut value = BigInt::zero();
        while &value < target {
            let parent = self.search(s);
            if parent[t].is_none() {
                break;
            }
            let mut path = Vec::new();
            let mut y = t;
            while let Some(Some(e)) = parent[y] {
                let x = self.g.edge(e).other(y);
                path.push((e, x));
                y = x;
            }
            let mut push = target - &value;
            for &(e, x) in &path {
                let r = self.residual(e, x);
                if r < push {
                    push = r;
                }
            }
            for &(e, x) in &path {
                if self.g.edge(e).u == x {
                    self.flow[e] += &push;
                } else {
                    self.flow[e] -= &push;
                }
            }
            value += push;
        }
        value
    }
}

/// First edge (ascending id) whose minimum endpoint-separating cut weighs
/// less than twice its own weight, with that cut as evidence. `scaled` is
/// `x` times a positive integer.
pub(super) fn first_violation(g: &ColoredMultigraph, x: &EdgeVector, scaled: &[BigInt]) -> Option<ConeViolation> {
    for e in 0..g.edge_count() {
        let w = &scaled[e];
        if w.is_zero() {
            continue;
        }
        let edge = g.edge(e);
        let target = w + w;
        let mut net = Network::new(g, scaled);
        if net.run(edge.u, edge.v, &target) >= target {
            continue;
        }
        let side_x: Vec<VertexId> = net
            .search(edge.u)
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_some())
            .map(|(v, _)| v)
            .collect();
        let pair = CutPair { side_x, e };
        let (lhs, rhs) = pair.sides(g, x);
        debug_assert!(lhs > rhs);
        return Some(ConeViolation::Cut { pair, lhs, rhs });
    }
    None
}
