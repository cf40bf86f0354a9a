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

//! Weight vectors on two-colored graphs.
//!
//! A vector is *balanced* when every vertex sees equal red and blue weight,
//! and *cut-admissible* when `x(e) <= x(D - e)` for every cut `D` and every
//! `e` in `D`. Balanced cut-admissible vectors are exactly the nonnegative
//! combinations of closed alternating trails; [`decompose`] produces such a
//! combination or a violated constraint.

mod cuts;
mod decompose;
mod flow;
mod split;

use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredMultigraph, EdgeId, EdgeVector, VertexId, Walk};

pub use cuts::{for_each_cut, tight_pairs, TightPair, CUT_ENUMERATION_LIMIT};
pub use decompose::{decompose, decompose_with, max_step, CutCheck, Membership};
pub use split::{split_at, stitch, Split, SplitSide};

/// A cut given by one of its sides, together with one crossing edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CutPair {
    /// Sorted, nonempty, proper.
    pub side_x: Vec<VertexId>,
    pub e: EdgeId,
}

impl CutPair {
    pub fn new(g: &ColoredMultigraph, mut side_x: Vec<VertexId>, e: EdgeId) -> Result<Self> {
        side_x.sort_unstable();
        side_x.dedup();
        if let Some(&v) = side_x.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(Error::VertexOutOfRange(v));
        }
        if side_x.is_empty() || side_x.len() == g.vertex_count() {
            return Err(Error::Precondition("cut side must be a nonempty proper subset".into()));
        }
        if e >= g.edge_count() {
            return Err(Error::UnknownEdge(e));
        }
        let pair = CutPair { side_x, e };
        if !pair.crosses(g, e) {
            return Err(Error::Precondition(format!("edge {e} does not cross the cut")));
        }
        Ok(pair)
    }

    pub fn membership(&self, n: usize) -> Vec<bool> {
        let mut inside = vec![false; n];
        for &v in &self.side_x {
            inside[v] = true;
        }
        inside
    }

    fn crosses(&self, g: &ColoredMultigraph, f: EdgeId) -> bool {
        let edge = g.edge(f);
        self.side_x.binary_search(&edge.u).is_ok() != self.side_x.binary_search(&edge.v).is_ok()
    }

    /// The full cut `D`, ascending.
    pub fn crossing(&self, g: &ColoredMultigraph) -> Vec<EdgeId> {
        (0..g.edge_count()).filter(|&f| self.crosses(g, f)).collect()
    }

    /// `(x(e), x(D - e))`.
    pub fn sides(&self, g: &ColoredMultigraph, x: &EdgeVector) -> (BigRational, BigRational) {
        let mut rest = BigRational::zero();
        for f in self.crossing(g) {
            if f != self.e {
                rest += x.get(f);
            }
        }
        (x.get(self.e).clone(), rest)
    }

    pub fn is_tight(&self, g: &ColoredMultigraph, x: &EdgeVector) -> bool {
        let (lhs, rhs) = self.sides(g, x);
        lhs == rhs
    }
}

impl fmt::Display for CutPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X {{")?;
        for (i, v) in self.side_x.iter().enumerate() {
            write!(f, "{}{}", if i == 0 { "" } else { " " }, v)?;
        }
        write!(f, "}} e {}", self.e)
    }
}

/// A violated cone constraint. Balance totals are reported for the two
/// colors in palette order ("red" is the one with the smaller index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeViolation {
    Balance {
        vertex: VertexId,
        red: BigRational,
        blue: BigRational,
    },
    Cut {
        pair: CutPair,
        lhs: BigRational,
        rhs: BigRational,
    },
    Negative(EdgeId),
}

impl ConeViolation {
    /// Re-evaluates the named constraint; true iff it is still violated with
    /// the recorded values.
    pub fn reverify(&self, g: &ColoredMultigraph, x: &EdgeVector) -> bool {
        if x.len() != g.edge_count() {
            return false;
        }
        match self {
            ConeViolation::Balance { vertex, red, blue } => {
                let Ok(colors) = two_colors(g) else {
                    return false;
                };
                if *vertex >= g.vertex_count() {
                    return false;
                }
                let (r, b) = vertex_totals(g, x, *vertex, colors);
                r != b && r == *red && b == *blue
            }
            ConeViolation::Cut { pair, lhs, rhs } => {
                if CutPair::new(g, pair.side_x.clone(), pair.e).is_err() {
                    return false;
                }
                let (l, r) = pair.sides(g, x);
                l > r && l == *lhs && r == *rhs
            }
            ConeViolation::Negative(e) => *e < x.len() && x.get(*e).is_negative(),
        }
    }
}

impl fmt::Display for ConeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeViolation::Balance { vertex, red, blue } => {
                write!(f, "balance vertex {vertex} totals {red} {blue}")
            }
            ConeViolation::Cut { pair, lhs, rhs } => write!(f, "cut {pair} lhs {lhs} rhs {rhs}"),
            ConeViolation::Negative(e) => write!(f, "negative edge {e}"),
        }
    }
}

/// Nonnegative combination of closed alternating trails.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CatDecomposition {
    pub terms: Vec<(Walk, BigRational)>,
}

impl CatDecomposition {
    pub fn sum(&self, edge_count: usize) -> EdgeVector {
        let mut weights = vec![BigRational::zero(); edge_count];
        for (cat, coeff) in &self.terms {
            for &e in &cat.edges {
                weights[e] += coeff;
            }
        }
        EdgeVector::from_weights_unchecked(weights)
    }

    /// Checks every term is a CAT with positive coefficient and that the
    /// terms sum to `q` exactly.
    pub fn verify(&self, g: &ColoredMultigraph, q: &EdgeVector) -> std::result::Result<(), String> {
        for (cat, coeff) in &self.terms {
            if !coeff.is_positive() {
                return Err(format!("coefficient {coeff} is not positive"));
            }
            match crate::graph::classify_walk(g, cat) {
                Ok(class) if class.is_cat => {}
                _ => return Err(format!("term {cat} is not a CAT")),
            }
        }
        if self.sum(g.edge_count()) != *q {
            return Err("terms do not sum to the input vector".into());
        }
        Ok(())
    }
}

/// The two colors of a graph using at most two, in palette order. With a
/// single color in use, the second slot holds the next palette index.
pub(crate) fn two_colors(g: &ColoredMultigraph) -> Result<(Color, Color)> {
    let used: Vec<Color> = g.used_colors().into_iter().collect();
    match used.len() {
        0 => Ok((Color(0), Color(1))),
        1 => {
            let other = (0..).map(Color).find(|&c| c != used[0]).unwrap();
            Ok(if other < used[0] {
                (other, used[0])
            } else {
                (used[0], other)
            })
        }
        2 => Ok((used[0], used[1])),
        k => Err(Error::NotTwoColored(k)),
    }
}

fn vertex_totals(
    g: &ColoredMultigraph,
    x: &EdgeVector,
    v: VertexId,
    (red, _): (Color, Color),
) -> (BigRational, BigRational) {
    let mut r = BigRational::zero();
    let mut b = BigRational::zero();
    for &e in g.incident(v) {
        if g.color(e) == red {
            r += x.get(e);
        } else {
            b += x.get(e);
        }
    }
    (r, b)
}

fn check_length(g: &ColoredMultigraph, x: &EdgeVector) -> Result<()> {
    if x.len() != g.edge_count() {
        return Err(Error::WeightLength {
            expected: g.edge_count(),
            found: x.len(),
        });
    }
    Ok(())
}

/// `None` if `x` is nonnegative and balanced at every vertex.
pub fn check_balance(g: &ColoredMultigraph, x: &EdgeVector) -> Result<Option<ConeViolation>> {
    let colors = two_colors(g)?;
    check_length(g, x)?;
    if let Some(e) = x.weights().iter().position(|w| w.is_negative()) {
        return Ok(Some(ConeViolation::Negative(e)));
    }
    for v in 0..g.vertex_count() {
        let (red, blue) = vertex_totals(g, x, v, colors);
        if red != blue {
            return Ok(Some(ConeViolation::Balance { vertex: v, red, blue }));
        }
    }
    Ok(None)
}

fn check_nonnegative(g: &ColoredMultigraph, x: &EdgeVector) -> Result<()> {
    check_length(g, x)?;
    match x.weights().iter().position(|w| w.is_negative()) {
        Some(e) => Err(Error::NegativeWeight(e)),
        None => Ok(()),
    }
}

/// Cut condition via one minimum `u-v` cut per edge `e = u-v`: admissible
/// iff each such cut weighs at least `2 x(e)`.
pub fn check_cut_admissible(g: &ColoredMultigraph, x: &EdgeVector) -> Result<Option<ConeViolation>> {
    check_nonnegative(g, x)?;
    Ok(flow::first_violation(g, x, &integral(x)))
}

/// Cut condition by enumerating every cut of every component.
pub fn check_cut_admissible_exhaustive(g: &ColoredMultigraph, x: &EdgeVector) -> Result<Option<ConeViolation>> {
    check_nonnegative(g, x)?;
    let w = integral(x);
    let mut found = None;
    for_each_cut(g, |side_x, crossing| {
        let total: BigInt = crossing.iter().map(|&f| &w[f]).sum();
        for &e in crossing {
            if &w[e] + &w[e] > total {
                let pair = CutPair {
                    side_x: side_x.to_vec(),
                    e,
                };
                let (lhs, rhs) = pair.sides(g, x);
                found = Some(ConeViolation::Cut { pair, lhs, rhs });
                return false;
            }
        }
        true
    })?;
    Ok(found)
}

/// `x` scaled by the lcm of its denominators. Cut comparisons are
/// invariant under positive scaling, and integers skip gcd normalization.
fn integral(x: &EdgeVector) -> Vec<BigInt> {
    let scale = x.weights().iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    x.weights().iter().map(|w| w.numer() * (&scale / w.denom())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, &str)]) -> ColoredMultigraph {
        ColoredMultigraph::from_edges(n, edges).unwrap()
    }

    fn ints(w: &[i64]) -> EdgeVector {
        EdgeVector::from_integers(w).unwrap()
    }

    fn square() -> ColoredMultigraph {
        graph(4, &[(0, 1, "R"), (1, 2, "B"), (2, 3, "R"), (3, 0, "B")])
    }

    #[test]
    fn balance_examples() {
        let pair = graph(2, &[(0, 1, "R"), (0, 1, "B")]);
        assert_eq!(check_balance(&pair, &ints(&[1, 1])).unwrap(), None);
        let single = graph(2, &[(0, 1, "R")]);
        let x = ints(&[1]);
        let v = check_balance(&single, &x).unwrap().unwrap();
        assert!(matches!(v, ConeViolation::Balance { vertex: 0, .. }));
        assert!(v.reverify(&single, &x));
        let mut rest = 0;
        for u in 0..2 {
            let (r, b) = vertex_totals(&single, &x, u, two_colors(&single).unwrap());
            rest += (r != b) as usize;
        }
        assert_eq!(rest, 2);
        assert_eq!(check_balance(&square(), &ints(&[1, 1, 1, 1])).unwrap(), None);
        let three = graph(2, &[(0, 1, "R"), (0, 1, "B"), (0, 1, "G")]);
        assert_eq!(check_balance(&three, &ints(&[1, 1, 1])), Err(Error::NotTwoColored(3)));
        assert!(matches!(
            check_balance(&pair, &ints(&[1])),
            Err(Error::WeightLength { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn cut_examples() {
        let bridge = graph(2, &[(0, 1, "R")]);
        for v in [
            check_cut_admissible(&bridge, &ints(&[1])).unwrap(),
            check_cut_admissible_exhaustive(&bridge, &ints(&[1])).unwrap(),
        ] {
            let v = v.unwrap();
            assert!(v.reverify(&bridge, &ints(&[1])));
            let ConeViolation::Cut { pair, lhs, rhs } = v else {
                panic!()
            };
            assert_eq!(pair.e, 0);
            assert_eq!(lhs, BigRational::from_integer(1.into()));
            assert!(rhs.is_zero());
        }
        let tri = graph(3, &[(0, 1, "R"), (1, 2, "B"), (2, 0, "R")]);
        assert_eq!(check_cut_admissible(&tri, &ints(&[1, 1, 1])).unwrap(), None);
        assert_eq!(check_cut_admissible_exhaustive(&tri, &ints(&[1, 1, 1])).unwrap(), None);

        let x = ints(&[3, 1, 1, 1]);
        for v in [
            check_cut_admissible(&square(), &x).unwrap().unwrap(),
            check_cut_admissible_exhaustive(&square(), &x).unwrap().unwrap(),
        ] {
            assert!(v.reverify(&square(), &x));
            let ConeViolation::Cut { pair, .. } = &v else { panic!() };
            assert_eq!(pair.e, 0);
            assert_eq!(pair.crossing(&square()).len(), 2);
        }
        let bad = EdgeVector::from_weights_unchecked(vec![BigRational::from_integer((-1).into())]);
        assert_eq!(check_cut_admissible(&bridge, &bad), Err(Error::NegativeWeight(0)));
    }

    #[test]
    fn cut_pair_validation() {
        let g = square();
        assert!(CutPair::new(&g, vec![1], 0).is_ok());
        assert!(CutPair::new(&g, vec![1], 2).is_err());
        assert!(CutPair::new(&g, vec![], 0).is_err());
        assert!(CutPair::new(&g, vec![0, 1, 2, 3], 0).is_err());
        assert_eq!(CutPair::new(&g, vec![9], 0), Err(Error::VertexOutOfRange(9)));
        let pair = CutPair::new(&g, vec![2, 1], 0).unwrap();
        assert_eq!(pair.side_x, vec![1, 2]);
        assert_eq!(pair.to_string(), "X {1 2} e 0");
    }
}
