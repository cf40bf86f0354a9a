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

mod common;

use std::collections::BTreeMap;

use alttrail::certificates::{
    brute_cats, brute_classify, brute_reach, verify_alt_trail, verify_tutte, verify_tutte_coloring, Clause,
};
use alttrail::{classify_walk, solve, Color, SolveOutcome, TutteCertificate, VertexClass, Walk};
use common::{arb_graph, graph};
use proptest::prelude::*;

#[test]
fn tutte_set_on_monochromatic_path() {
    let g = graph(3, &[(0, 1, "R"), (1, 2, "R")]);
    let r = g.color_by_name("R").unwrap();
    let ok = TutteCertificate::new(&g, &[0, 2], BTreeMap::from([(1, r)]));
    assert!(verify_tutte(&g, &[0, 2], &ok).is_ok());

    // B is not used by the graph, so intern it through a bigger palette
    let g = graph(3, &[(0, 1, "R"), (1, 2, "R"), (0, 2, "B")]);
    let b = g.color_by_name("B").unwrap();
    let bad = verify_tutte_coloring(&g, &[0, 2], &BTreeMap::from([(1, b)])).unwrap_err();
    assert_eq!(bad.clause, Clause::MultiTerminalComponent);

    let g = graph(4, &[(0, 1, "R"), (1, 2, "R"), (2, 3, "B")]);
    let b = g.color_by_name("B").unwrap();
    let bad = verify_tutte_coloring(&g, &[0, 3], &BTreeMap::from([(1, b)])).unwrap_err();
    assert_eq!(bad.clause, Clause::MismatchedAtTerminalComponent);
    assert_eq!(bad.edges, vec![0]);
}

#[test]
fn tutte_set_rejects_terminals_and_inner_mismatch() {
    let g = graph(4, &[(0, 1, "R"), (1, 2, "B"), (2, 3, "R")]);
    let r = g.color_by_name("R").unwrap();
    let bad = verify_tutte_coloring(&g, &[0, 3], &BTreeMap::from([(0, r)])).unwrap_err();
    assert_eq!(bad.clause, Clause::TerminalInA);
    let bad = verify_tutte_coloring(&g, &[0, 3], &BTreeMap::from([(1, r), (2, r)])).unwrap_err();
    assert_eq!(bad.clause, Clause::MismatchedInsideA);
    assert_eq!(bad.edges, vec![1]);
}

#[test]
fn free_component_with_two_mismatches() {
    // A = {a}, colored R; the free component {x} meets a by two B edges
    let g = graph(3, &[(0, 1, "R"), (1, 2, "B"), (1, 2, "B")]);
    let r = g.color_by_name("R").unwrap();
    let bad = verify_tutte_coloring(&g, &[0], &BTreeMap::from([(1, r)])).unwrap_err();
    assert_eq!(bad.clause, Clause::TwoMismatchedAtFreeComponent);
    assert_eq!(bad.vertices, vec![2]);
}

#[test]
fn trail_checker_clauses() {
    let g = graph(3, &[(0, 1, "R"), (1, 2, "B"), (1, 2, "R")]);
    let good = Walk::new(vec![0, 1, 2], vec![0, 1]);
    assert!(verify_alt_trail(&g, &[0, 2], &good).is_ok());
    let reuse = Walk::new(vec![0, 1, 2, 1, 2], vec![0, 1, 2, 1]);
    assert_eq!(
        verify_alt_trail(&g, &[0, 2], &reuse).unwrap_err().clause,
        Clause::TrailEdgeReuse
    );
    let closed = Walk::new(vec![1, 2, 1], vec![1, 2]);
    assert_eq!(
        verify_alt_trail(&g, &[1], &closed).unwrap_err().clause,
        Clause::TrailEndpoints
    );
    let same = Walk::new(vec![0, 1, 2], vec![0, 2]);
    assert_eq!(
        verify_alt_trail(&g, &[0, 2], &same).unwrap_err().clause,
        Clause::TrailNotAlternating
    );
}

#[test]
fn brute_force_examples() {
    let g = graph(2, &[]);
    assert!(brute_reach(&g, &[0, 1]).is_none());
    let g = graph(2, &[(0, 1, "R")]);
    assert_eq!(brute_reach(&g, &[0, 1]).unwrap().len(), 1);
    let g = graph(3, &[(0, 1, "R"), (1, 2, "R")]);
    assert!(brute_reach(&g, &[0, 2]).is_none());
    let classes = brute_classify(&g, &[0, 2]);
    assert_eq!(classes[&1], VertexClass::Inner(g.color_by_name("R").unwrap()));

    let g = graph(4, &[(0, 1, "R"), (1, 2, "R"), (3, 3 - 1, "B")]);
    assert_eq!(brute_classify(&g, &[0])[&3], VertexClass::Unreachable);
}

#[test]
fn brute_cats_on_figure_eight() {
    let g = graph(
        5,
        &[
            (0, 1, "R"),
            (1, 2, "B"),
            (2, 0, "R"),
            (0, 3, "B"),
            (3, 4, "R"),
            (4, 0, "B"),
        ],
    );
    // one edge set, traversed with the second loop in either direction
    let cats = brute_cats(&g);
    assert_eq!(cats.len(), 2);
    for w in &cats {
        assert_eq!(w.len(), 6);
        assert!(classify_walk(&g, w).unwrap().is_cat);
    }
    assert_ne!(cats[0].edges, cats[1].edges);
}

fn coloring_for(n: usize, colors: usize) -> impl Strategy<Value = BTreeMap<usize, Color>> {
    proptest::collection::btree_map(0..n, (0..colors as u32).prop_map(Color), 0..=n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    /// An accepted Tutte set rules out every connecting trail.
    #[test]
    fn accepted_tutte_sets_obstruct(
        (g, s, coloring) in arb_graph(6, 8, 2).prop_flat_map(|g| {
            let n = g.vertex_count();
            let k = g.palette().len().max(1);
            (Just(g), proptest::collection::btree_set(0..n, 2..=n.min(3)), coloring_for(n, k))
        })
    ) {
        let s: Vec<usize> = s.into_iter().collect();
        if verify_tutte_coloring(&g, &s, &coloring).is_ok() {
            prop_assert!(brute_reach(&g, &s).is_none());
        }
    }

    /// When no trail exists the solver's certificate is accepted.
    #[test]
    fn unreachable_instances_have_certificates(
        (g, s) in arb_graph(6, 9, 3).prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), proptest::collection::btree_set(0..n, 1..=n.min(3)))
        })
    ) {
        let s: Vec<usize> = s.into_iter().collect();
        if brute_reach(&g, &s).is_none() {
            match solve(&g, &s).unwrap() {
                SolveOutcome::Certificate(c) => prop_assert!(verify_tutte(&g, &s, &c).is_ok()),
                SolveOutcome::Trail(t) => prop_assert!(false, "solver found {} but the oracle did not", t),
            }
        }
    }
}
