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

use std::collections::{BTreeMap, BTreeSet};

use alttrail::certificates::brute_cats;
use alttrail::structures::{check_cat_hypothesis, edge_probe_reduction, giles_seymour_traced};
use alttrail::{classify_walk, find_cat, find_cat_through_edge, giles_seymour, ColoredMultigraph, Error, Walk};
use common::{arb_graph, graph};
use proptest::prelude::*;

fn figure_eight() -> ColoredMultigraph {
    graph(
        5,
        &[
            (0, 1, "R"),
            (1, 2, "B"),
            (2, 0, "R"),
            (0, 3, "B"),
            (3, 4, "R"),
            (4, 0, "B"),
        ],
    )
}

fn is_cat(g: &ColoredMultigraph, w: &Walk) -> bool {
    classify_walk(g, w).unwrap().is_cat
}

#[test]
fn cats_in_small_graphs() {
    let g = graph(2, &[(0, 1, "R"), (0, 1, "B")]);
    let w = find_cat(&g).unwrap();
    assert!(is_cat(&g, &w) && w.len() == 2);

    let g = graph(4, &[(0, 1, "R"), (1, 2, "B"), (2, 3, "R"), (3, 0, "B")]);
    let w = find_cat(&g).unwrap();
    assert!(is_cat(&g, &w) && w.len() == 4);

    let g = figure_eight();
    let w = find_cat(&g).unwrap();
    assert!(is_cat(&g, &w) && w.len() == 6);
    assert_eq!(w.vertices.iter().filter(|&&v| v == 0).count(), 3);
}

#[test]
fn cat_hypothesis_is_checked() {
    let g = graph(2, &[(0, 1, "R")]);
    assert_eq!(find_cat(&g).unwrap_err(), Error::Bridge(0));
    let g = graph(3, &[(0, 1, "R"), (1, 2, "R"), (2, 0, "R")]);
    assert!(matches!(find_cat(&g).unwrap_err(), Error::Monochromatic(_)));
    let g = graph(3, &[(0, 1, "R"), (0, 1, "B")]);
    assert_eq!(check_cat_hypothesis(&g).unwrap_err(), Error::Monochromatic(2));
}

#[test]
fn cats_through_given_edges() {
    let g = graph(2, &[(0, 1, "R"), (0, 1, "B")]);
    let w = find_cat_through_edge(&g, 0).unwrap().unwrap();
    assert!(w.edges.contains(&0) && w.len() == 2);

    let g = graph(3, &[(0, 1, "R"), (1, 2, "R"), (2, 0, "R")]);
    for e in 0..3 {
        assert_eq!(find_cat_through_edge(&g, e).unwrap(), None);
    }
    assert_eq!(find_cat_through_edge(&g, 3).unwrap_err(), Error::UnknownEdge(3));

    let g = figure_eight();
    let w = find_cat_through_edge(&g, 0).unwrap().unwrap();
    assert!(is_cat(&g, &w) && w.len() == 6);
}

#[test]
fn probe_reduction_shape() {
    let g = figure_eight();
    let red = edge_probe_reduction(&g, 2).unwrap();
    assert_eq!(red.host.vertex_count(), 7);
    assert_eq!(red.host.edge_count(), 7);
    assert_eq!(red.added_vertices, vec![5, 6]);
    for &f in &red.added_edges {
        assert_eq!(red.back_edges[f], None);
        assert_eq!(red.host.color_name(red.host.color(f)), "R");
    }
    assert!(red.back_edges.iter().flatten().all(|&e| e != 2));
}

fn assert_cover(g: &ColoredMultigraph, phi: &BTreeMap<usize, usize>, cycle: &Walk) {
    let class = classify_walk(g, cycle).unwrap();
    assert!(class.is_cycle, "{cycle} is not a cycle");
    for &v in &cycle.vertices {
        assert!(cycle.edges.contains(&phi[&v]), "phi({v}) missing from {cycle}");
    }
}

#[test]
fn cycle_finder_examples() {
    let g = graph(3, &[(0, 1, "x"), (1, 2, "x"), (2, 0, "x")]);
    let phi = BTreeMap::from([(0, 0), (1, 1), (2, 2)]);
    let c = giles_seymour(&g, &phi).unwrap();
    assert_eq!(c.len(), 3);
    assert_cover(&g, &phi, &c);

    // theta: 0 and 1 joined by paths 0-2-1, 0-3-1 and 0-4-1
    let g = graph(
        5,
        &[
            (0, 2, "x"),
            (2, 1, "x"),
            (0, 3, "x"),
            (3, 1, "x"),
            (0, 4, "x"),
            (4, 1, "x"),
        ],
    );
    let phi = BTreeMap::from([(0, 0), (1, 3), (2, 1), (3, 2), (4, 4)]);
    let c = giles_seymour(&g, &phi).unwrap();
    assert_cover(&g, &phi, &c);
    let edges: BTreeSet<usize> = c.edges.iter().copied().collect();
    assert_eq!(edges, BTreeSet::from([0, 1, 2, 3]));

    let g = graph(3, &[(0, 1, "x"), (1, 2, "x")]);
    let phi = BTreeMap::from([(0, 0), (1, 0), (2, 1)]);
    assert!(matches!(giles_seymour(&g, &phi).unwrap_err(), Error::Bridge(_)));

    let g = graph(3, &[(0, 1, "x"), (1, 2, "x"), (2, 0, "x")]);
    let bad = BTreeMap::from([(0, 1), (1, 1), (2, 2)]);
    assert_eq!(
        giles_seymour(&g, &bad).unwrap_err(),
        Error::PhiNotIncident { vertex: 0, edge: 1 }
    );
    let missing = BTreeMap::from([(0, 0), (1, 1)]);
    assert_eq!(giles_seymour(&g, &missing).unwrap_err(), Error::PhiMissing(2));
}

fn bridgeless_with_phi() -> impl Strategy<Value = (ColoredMultigraph, BTreeMap<usize, usize>)> {
    arb_graph(6, 9, 1)
        .prop_filter("bridgeless with edges", |g| {
            g.edge_count() > 0 && g.bridges().is_empty()
        })
        .prop_flat_map(|g| {
            let picks: Vec<_> = (0..g.vertex_count()).map(|v| 0..g.degree(v).max(1)).collect();
            (Just(g), picks)
        })
        .prop_map(|(g, picks)| {
            let phi = (0..g.vertex_count())
                .filter(|&v| g.degree(v) > 0)
                .map(|v| (v, g.incident(v)[picks[v]]))
                .collect();
            (g, phi)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn cat_through_edge_matches_enumeration(g in arb_graph(5, 8, 3)) {
        let cats = brute_cats(&g);
        for e in 0..g.edge_count() {
            let expected = cats.iter().any(|w| w.edges.contains(&e));
            match find_cat_through_edge(&g, e).unwrap() {
                Some(w) => prop_assert!(expected && is_cat(&g, &w) && w.edges.contains(&e)),
                None => prop_assert!(!expected, "edge {} lies on a CAT", e),
            }
        }
    }

    #[test]
    fn cat_exists_under_hypothesis(g in arb_graph(6, 9, 3)) {
        if check_cat_hypothesis(&g).is_ok() {
            let w = find_cat(&g).unwrap();
            prop_assert!(is_cat(&g, &w));
        }
    }

    #[test]
    fn cycle_covers_its_assigned_edges((g, phi) in bridgeless_with_phi()) {
        let cover = giles_seymour_traced(&g, &phi).unwrap();
        assert_cover(&g, &phi, &cover.cycle);
        let red = &cover.reduction;
        let host = &red.host;
        prop_assert!(host.bridges().is_empty());
        for v in 0..host.vertex_count() {
            let reds = host.incident(v).iter().filter(|&&e| host.color(e) == red.red).count();
            let blues = host.incident(v).iter().filter(|&&e| host.color(e) == red.blue).count();
            prop_assert!(reds == 1 && blues >= 1, "vertex {} has {} red and {} blue edges", v, reds, blues);
        }
        let aux = classify_walk(host, &cover.aux_cat).unwrap();
        prop_assert!(aux.is_cat && aux.is_cycle && cover.aux_cat.len().is_multiple_of(2));
    }
}
