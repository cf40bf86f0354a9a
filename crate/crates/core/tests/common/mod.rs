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

//! Exhaustive and random graph corpora shared by the integration tests.
//!
//! Exhaustive corpora list every edge-colored multigraph within the given
//! bounds once up to vertex relabeling and color renaming.

#![allow(dead_code)]

use std::collections::BTreeSet;

use alttrail::certificates::canonical_closed;
use alttrail::{ColoredMultigraph, EdgeVector, VertexId, Walk};
use num::{BigInt, BigRational, One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const PALETTE: [&str; 3] = ["R", "B", "G"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn graph(n: usize, edges: &[(usize, usize, &str)]) -> ColoredMultigraph {
    ColoredMultigraph::from_edges(n, edges).unwrap()
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Pair index of each pair under a vertex permutation.
fn pair_maps(n: usize, perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let ps = pairs(n);
    let index = |a: usize, b: usize| ps.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
    perms
        .iter()
        .map(|p| ps.iter().map(|&(a, b)| index(p[a], p[b])).collect())
        .collect()
}

/// A canonical uncolored multigraph: per-pair multiplicities plus the pair
/// permutations that fix it.
pub struct Shape {
    pub n: usize,
    pub mult: Vec<u8>,
    pub automorphisms: Vec<Vec<usize>>,
}

/// Multigraphs on exactly `n` vertices with at most `max_edges` edges and
/// at most `max_mult` parallel edges per pair, one per isomorphism class.
pub fn shapes(n: usize, max_edges: usize, max_mult: u8) -> Vec<Shape> {
    let p = pairs(n).len();
    let maps = pair_maps(n, &permutations(n));
    let mut out = Vec::new();
    let mut mult = vec![0u8; p];
    loop {
        if mult.iter().map(|&m| m as usize).sum::<usize>() <= max_edges {
            let mut minimal = true;
            let mut autos = Vec::new();
            for map in &maps {
                let mut image = vec![0u8; p];
                for (i, &m) in mult.iter().enumerate() {
                    image[map[i]] = m;
                }
                match image.cmp(&mult) {
                    std::cmp::Ordering::Less => {
                        minimal = false;
                        break;
                    }
                    std::cmp::Ordering::Equal => autos.push(map.clone()),
                    _ => {}
                }
            }
            if minimal {
                out.push(Shape {
                    n,
                    mult: mult.clone(),
                    automorphisms: autos,
                });
            }
        }
        // odometer increment
        let mut i = 0;
        while i < p && mult[i] == max_mult {
            mult[i] = 0;
            i += 1;
        }
        if i == p {
            break;
        }
        mult[i] += 1;
    }
    out
}

/// Every coloring of every shape with at most `colors` colors, up to shape
/// automorphisms and color renaming.
pub fn colored_graphs(max_n: usize, max_edges: usize, max_mult: u8, colors: usize) -> Vec<ColoredMultigraph> {
    let color_perms = permutations(colors);
    let mut out = Vec::new();
    for n in 1..=max_n {
        for shape in shapes(n, max_edges, max_mult) {
            let ps = pairs(n);
            let slots: Vec<usize> = shape
                .mult
                .iter()
                .enumerate()
                .flat_map(|(i, &m)| std::iter::repeat_n(i, m as usize))
                .collect();
            let m = slots.len();
            let mut coloring = vec![0usize; m];
            loop {
                let sorted_parallel = (1..m).all(|k| slots[k] != slots[k - 1] || coloring[k - 1] <= coloring[k]);
                if sorted_parallel {
                    let key = |map: &Vec<usize>, perm: &Vec<usize>| {
                        let mut k: Vec<(usize, usize)> =
                            slots.iter().zip(&coloring).map(|(&s, &c)| (map[s], perm[c])).collect();
                        k.sort_unstable();
                        k
                    };
                    let own: Vec<(usize, usize)> = slots.iter().copied().zip(coloring.iter().copied()).collect();
                    let minimal = shape
                        .automorphisms
                        .iter()
                        .all(|map| color_perms.iter().all(|perm| key(map, perm) >= own));
                    if minimal {
                        let edges: Vec<(usize, usize, &str)> = slots
                            .iter()
                            .zip(&coloring)
                            .map(|(&s, &c)| (ps[s].0, ps[s].1, PALETTE[c]))
                            .collect();
                        out.push(graph(n, &edges));
                    }
                }
                let mut i = 0;
                while i < m && coloring[i] + 1 == colors {
                    coloring[i] = 0;
                    i += 1;
                }
                if i == m {
                    break;
                }
                coloring[i] += 1;
            }
        }
    }
    out
}

/// Reachability corpus: at most 5 vertices, 7 edges, 3 colors and two
/// parallel edges per pair.
pub fn reach_corpus() -> Vec<ColoredMultigraph> {
    colored_graphs(5, 7, 2, 3)
}

/// Two-colored corpus: at most 5 vertices, 8 edges, two parallel edges.
pub fn two_colored_corpus() -> Vec<ColoredMultigraph> {
    colored_graphs(5, 8, 2, 2)
}

/// All nonempty vertex subsets of size at most `k`, in lexicographic order.
pub fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        if (mask.count_ones() as usize) <= k {
            out.push((0..n).filter(|&v| mask >> v & 1 == 1).collect());
        }
    }
    out.sort();
    out
}

pub fn random_graph(rng: &mut impl Rng, n: usize, m: usize, colors: usize) -> ColoredMultigraph {
    let mut edges = Vec::with_capacity(m);
    if n >= 2 {
        for _ in 0..m {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            edges.push((u, v, PALETTE[rng.gen_range(0..colors)]));
        }
    }
    graph(n, &edges)
}

pub fn random_simple_graph(rng: &mut impl Rng, n: usize, density: f64) -> ColoredMultigraph {
    let edges: Vec<(usize, usize, &str)> = pairs(n)
        .into_iter()
        .filter(|_| rng.gen_bool(density))
        .map(|(u, v)| (u, v, "x"))
        .collect();
    graph(n, &edges)
}

pub fn petersen() -> ColoredMultigraph {
    let edges = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 0),
        (0, 5),
        (1, 6),
        (2, 7),
        (3, 8),
        (4, 9),
        (5, 7),
        (7, 9),
        (9, 6),
        (6, 8),
        (8, 5),
    ];
    let edges: Vec<_> = edges.iter().map(|&(u, v)| (u, v, "x")).collect();
    graph(10, &edges)
}

pub fn is_simple(g: &ColoredMultigraph) -> bool {
    let mut seen = BTreeSet::new();
    g.edges().iter().all(|e| seen.insert((e.u.min(e.v), e.u.max(e.v))))
}

pub fn bichromatic_everywhere(g: &ColoredMultigraph) -> bool {
    (0..g.vertex_count()).all(|v| {
        let colors: BTreeSet<_> = g.incident(v).iter().map(|&e| g.color(e)).collect();
        colors.len() >= 2
    })
}

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn random_ratio(rng: &mut impl Rng) -> BigRational {
    ratio(rng.gen_range(1..=9), rng.gen_range(1..=6))
}

/// Random positive rational combination of a nonempty random subset of
/// `walks`.
pub fn random_combination(rng: &mut impl Rng, g: &ColoredMultigraph, walks: &[Walk]) -> EdgeVector {
    let mut x = EdgeVector::zeros(g.edge_count());
    if walks.is_empty() {
        return x;
    }
    let k = rng.gen_range(1..=walks.len().min(4));
    for w in walks.choose_multiple(rng, k) {
        x.add_scaled(&random_ratio(rng), &alttrail::chi(g, w));
    }
    x
}

/// Closed alternating walks (edges may repeat) of length at most `max_len`,
/// deduplicated up to rotation and reversal, capped at `cap`.
pub fn closed_alternating_walks(g: &ColoredMultigraph, max_len: usize, cap: usize) -> Vec<Walk> {
    let mut found = BTreeSet::new();
    for start in 0..g.vertex_count() {
        let mut w = Walk::trivial(start);
        walk_dfs(g, &mut w, max_len, cap, &mut found);
        if found.len() >= cap {
            break;
        }
    }
    found.into_iter().collect()
}

fn walk_dfs(g: &ColoredMultigraph, w: &mut Walk, max_len: usize, cap: usize, found: &mut BTreeSet<Walk>) {
    if found.len() >= cap {
        return;
    }
    if w.len() >= 2 && w.is_closed() && g.color(w.edges[0]) != g.color(*w.edges.last().unwrap()) {
        found.insert(canonical_closed(w));
    }
    if w.len() == max_len {
        return;
    }
    let x = w.end();
    let last = w.last_edge().map(|e| g.color(e));
    for &e in g.incident(x) {
        if Some(g.color(e)) == last {
            continue;
        }
        w.push(e, g.edge(e).other(x));
        walk_dfs(g, w, max_len, cap, found);
        w.vertices.pop();
        w.edges.pop();
    }
}

pub fn scale(x: &EdgeVector, c: &BigRational) -> EdgeVector {
    let mut out = EdgeVector::zeros(x.len());
    out.add_scaled(c, x);
    out
}

pub fn one() -> BigRational {
    BigRational::one()
}

pub fn zero() -> BigRational {
    BigRational::zero()
}

/// Proptest strategy: colored multigraphs with `1..=max_n` vertices, up to
/// `max_m` edges and `colors` colors.
pub fn arb_graph(
    max_n: usize,
    max_m: usize,
    colors: usize,
) -> impl proptest::strategy::Strategy<Value = ColoredMultigraph> {
    use proptest::prelude::*;
    (2..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n - 1, 0..colors), 0..=max_m).prop_map(move |raw| {
            let edges: Vec<(usize, usize, &str)> = raw
                .into_iter()
                .map(|(u, v, c)| (u, if v >= u { v + 1 } else { v }, PALETTE[c]))
                .collect();
            graph(n, &edges)
        })
    })
}
