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

//! Splitting along a tight cut and stitching the two decompositions back.
//!
//! For a tight pair `(D, e)` with `e = u1-u2`, `u1` in `X`, the graph
//! `G_X(e)` replaces `X` by two vertices `u1, u1'`: crossing edges colored
//! unlike `e` attach to `u1`, those colored like `e` attach to `u1'`, and a
//! new edge `f1 = u1-u1'` of the opposite color carries their total weight.
//! `G_{V-X}(e)` is built the same way from the other side.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use super::{two_colors, CatDecomposition, CutPair};
use crate::error::{Error, Result};
use crate::graph::{classify_walk, ColoredMultigraph, EdgeId, EdgeVector, VertexId, Walk};
use crate::structures::ReductionMap;

/// One half of a split: the graph with one side collapsed to two vertices.
#[derive(Debug, Clone)]
pub struct SplitSide {
    /// Host graph with back maps; the collapsed pair is the last two vertices.
    pub map: ReductionMap,
    pub weights: EdgeVector,
    /// Local id of the split edge `e`.
    pub e: EdgeId,
    /// Local id of the added edge.
    pub f: EdgeId,
    /// Local endpoint of `e` standing in for the collapsed side.
    pub anchor: VertexId,
    /// The added vertex.
    pub twin: VertexId,
    /// Local endpoint of `e` on the kept side.
    pub kept_end: VertexId,
    /// Per local edge: whether it lies in `D`.
    pub in_cut: Vec<bool>,
}

#[derive(Debug, Clone)]
pub struct Split {
    pub pair: CutPair,
    /// `D`, ascending.
    pub crossing: Vec<EdgeId>,
    /// `G_X(e)`: `X` collapsed, `V - X` kept.
    pub g_x: SplitSide,
    /// `G_{V-X}(e)`: `V - X` collapsed, `X` kept.
    pub g_rest: SplitSide,
}

fn is_integral_positive(w: &BigRational) -> bool {
    w.is_integer() && w.is_positive()
}

fn collapse(g: &ColoredMultigraph, p: &EdgeVector, collapsed: &[bool], e: EdgeId) -> Result<SplitSide> {
    let probe = *g.edge(e);
    let (colors_a, colors_b) = two_colors(g)?;
    let opposite = if probe.color == colors_a { colors_b } else { colors_a };
    let (anchor_orig, kept_orig) = if collapsed[probe.u] {
        (probe.u, probe.v)
    } else {
        (probe.v, probe.u)
    };

    let kept: Vec<VertexId> = (0..g.vertex_count()).filter(|&v| !collapsed[v]).collect();
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in kept.iter().enumerate() {
        local[v] = i;
    }
    let (anchor, twin) = (kept.len(), kept.len() + 1);
    let mut back_vertices: Vec<Option<VertexId>> = kept.iter().map(|&v| Some(v)).collect();
    back_vertices.extend([Some(anchor_orig), None]);

    let mut edges = Vec::new();
    let mut back_edges = Vec::new();
    let mut weights = Vec::new();
    let mut in_cut = Vec::new();
    let mut same_color_total = BigRational::zero();
    let mut local_e = 0;
    for (id, edge) in g.edges().iter().enumerate() {
        match (collapsed[edge.u], collapsed[edge.v]) {
            (true, true) => continue,
            (false, false) => {
                edges.push((local[edge.u], local[edge.v], edge.color));
                in_cut.push(false);
            }
            _ => {
                let outer = if collapsed[edge.u] { edge.v } else { edge.u };
                let inner = if id == e || edge.color != probe.color {
                    anchor
                } else {
                    twin
                };
                if id == e {
                    local_e = edges.len();
                } else if edge.color == probe.color {
                    same_color_total += p.get(id);
                }
                edges.push((local[outer], inner, edge.color));
                in_cut.push(true);
            }
        }
        back_edges.push(Some(id));
        weights.push(p.get(id).clone());
    }
    let f = edges.len();
    edges.push((anchor, twin, opposite));
    back_edges.push(None);
    weights.push(same_color_total);
    in_cut.push(false);

    Ok(SplitSide {
        map: ReductionMap {
            host: ColoredMultigraph::with_palette(kept.len() + 2, g.palette(), &edges),
            back_edges,
            back_vertices,
            added_vertices: vec![twin],
            added_edges: vec![f],
        },
        weights: EdgeVector::from_weights_unchecked(weights),
        e: local_e,
        f,
        anchor,
        twin,
        kept_end: local[kept_orig],
        in_cut,
    })
}

/// Builds `G_X(e)` and `G_{V-X}(e)` with their weights for a tight pair
/// whose sides both have at least three vertices.
pub fn split_at(g: &ColoredMultigraph, p: &EdgeVector, pair: &CutPair) -> Result<Split> {
    two_colors(g)?;
    if p.len() != g.edge_count() {
        return Err(Error::WeightLength {
            expected: g.edge_count(),
            found: p.len(),
        });
    }
    let pair = CutPair::new(g, pair.side_x.clone(), pair.e)?;
    if let Some(bad) = (0..p.len()).find(|&f| !is_integral_positive(p.get(f))) {
        return Err(Error::Precondition(format!(
            "weight of edge {bad} is not a positive integer"
        )));
    }
    let n = g.vertex_count();
    if pair.side_x.len() < 3 || n - pair.side_x.len() < 3 {
        return Err(Error::Precondition(
            "both cut sides need at least three vertices".into(),
        ));
    }
    if !pair.is_tight(g, p) {
        return Err(Error::Precondition(format!("pair ({pair}) is not tight")));
    }
    let inside = pair.membership(n);
    let outside: Vec<bool> = inside.iter().map(|b| !b).collect();
    Ok(Split {
        crossing: pair.crossing(g),
        g_x: collapse(g, p, &inside, pair.e)?,
        g_rest: collapse(g, p, &outside, pair.e)?,
        pair,
    })
}

/// Rotates (and possibly reverses) a CAT so it starts by traversing `e`
/// out of `from`.
fn orient(w: &Walk, e: EdgeId, from: VertexId) -> Option<Walk> {
    let k = w.edges.iter().position(|&f| f == e)?;
    if w.vertices[k] == from {
        return Some(w.rotated(k));
    }
    let r = w.reversed();
    let k = r.edges.iter().position(|&f| f == e)?;
    (r.vertices[k] == from).then(|| r.rotated(k))
}

/// Crossing term of one side: the original `h` and the original edge ids
/// of the part of the CAT that stays inside the kept side.
fn crossing_part(side: &SplitSide, cat: &Walk, kept_first: bool) -> Result<Option<(EdgeId, Vec<EdgeId>)>> {
    let crossing: Vec<usize> = (0..cat.len()).filter(|&i| side.in_cut[cat.edges[i]]).collect();
    if crossing.is_empty() {
        return Ok(None);
    }
    if crossing.len() != 2 {
        return Err(Error::Internal(format!(
            "CAT {cat} meets the tight cut in {} edges",
            crossing.len()
        )));
    }
    // G_X(e) terms run u2 -> u1 -> ... -> h -> tail; G_{V-X}(e) terms u2 -> u1 -> middle -> h -> ...
    let from = if kept_first { side.anchor } else { side.kept_end };
    let w = orient(cat, side.e, from).ok_or_else(|| Error::Internal(format!("CAT {cat} misses the split edge")))?;
    let h_pos = (1..w.len())
        .find(|&i| side.in_cut[w.edges[i]])
        .ok_or_else(|| Error::Internal("crossing edge vanished".into()))?;
    let part = if kept_first {
        &w.edges[1..h_pos]
    } else {
        &w.edges[h_pos + 1..]
    };
    let back =
        |f: EdgeId| side.map.back_edges[f].ok_or_else(|| Error::Internal("kept part uses the added edge".into()));
    let h = back(w.edges[h_pos])?;
    let part = part.iter().map(|&f| back(f)).collect::<Result<Vec<_>>>()?;
    Ok(Some((h, part)))
}

type Runs = BTreeMap<EdgeId, BTreeMap<Vec<EdgeId>, BigInt>>;

/// Recombines decompositions of `G_X(e)` and `G_{V-X}(e)` into one of `G`.
/// Crossing terms are matched per `h` by pairing both lists in
/// lexicographic order of their edge sequences, with integer multiplicities
/// after scaling by the common denominator of all coefficients.
pub fn stitch(
    g: &ColoredMultigraph,
    split: &Split,
    dec_x: &CatDecomposition,
    dec_rest: &CatDecomposition,
) -> Result<CatDecomposition> {
    let scale = dec_x
        .terms
        .iter()
        .chain(&dec_rest.terms)
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let scale_q = BigRational::from_integer(scale.clone());
    let mut out = CatDecomposition::default();
    // tails from G_X(e) (inside V - X), middles from G_{V-X}(e) (inside X)
    let mut tails: Runs = BTreeMap::new();
    let mut middles: Runs = BTreeMap::new();
    for (side, dec, kept_first, runs) in [
        (&split.g_x, dec_x, false, &mut tails),
        (&split.g_rest, dec_rest, true, &mut middles),
    ] {
        for (cat, coeff) in &dec.terms {
            match crossing_part(side, cat, kept_first)? {
                None => {
                    let w = side
                        .map
                        .pull_back(cat)
                        .ok_or_else(|| Error::Internal(format!("one-sided CAT {cat} uses the added edge")))?;
                    out.terms.push((w, coeff.clone()));
                }
                Some((h, part)) => {
                    *runs.entry(h).or_default().entry(part).or_insert_with(BigInt::zero) +=
                        (coeff * &scale_q).to_integer();
                }
            }
        }
    }

    let e = split.pair.e;
    let start = split.g_rest.map.back_vertices[split.g_rest.anchor].unwrap();
    let empty = BTreeMap::new();
    let hs: std::collections::BTreeSet<EdgeId> = tails.keys().chain(middles.keys()).copied().collect();
    for h in hs {
        let left: Vec<(&Vec<EdgeId>, &BigInt)> = tails.get(&h).unwrap_or(&empty).iter().collect();
        let right: Vec<(&Vec<EdgeId>, &BigInt)> = middles.get(&h).unwrap_or(&empty).iter().collect();
        let (mut i, mut j) = (0, 0);
        let mut left_rem = left.first().map(|r| r.1.clone());
        let mut right_rem = right.first().map(|r| r.1.clone());
        while let (Some(a), Some(b)) = (left_rem.clone(), right_rem.clone()) {
            let take = a.clone().min(b.clone());
            let mut edges = vec![e];
            edges.extend(right[j].0);
            edges.push(h);
            edges.extend(left[i].0);
            let w = Walk::from_edges(g, start, &edges)?;
            if !classify_walk(g, &w)?.is_cat {
                return Err(Error::Internal(format!("stitched walk {w} is not a CAT")));
            }
            out.terms.push((w, BigRational::new(take.clone(), scale.clone())));
            left_rem = Some(a - &take);
            right_rem = Some(b - &take);
            if left_rem.as_ref().is_some_and(Zero::is_zero) {
                i += 1;
                left_rem = left.get(i).map(|r| r.1.clone());
            }
            if right_rem.as_ref().is_some_and(Zero::is_zero) {
                j += 1;
                right_rem = right.get(j).map(|r| r.1.clone());
            }
        }
        if left_rem.is_some() || right_rem.is_some() {
            return Err(Error::Internal(format!("crossing multiplicities differ at edge {h}")));
        }
    }
    Ok(out)
}
