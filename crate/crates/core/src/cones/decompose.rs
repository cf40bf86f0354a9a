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

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use super::{
    check_balance, check_cut_admissible, check_cut_admissible_exhaustive, for_each_cut, split_at, stitch,
    CatDecomposition, ConeViolation, CutPair, CUT_ENUMERATION_LIMIT,
};
use crate::error::{Error, Result};
use crate::graph::{chi, ColoredMultigraph, EdgeId, EdgeVector, VertexId, Walk};
use crate::structures::find_cat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Decomposed(CatDecomposition),
    Violated(ConeViolation),
}

/// How the up-front cut condition is checked.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum CutCheck {
    #[default]
    MinCut,
    Exhaustive,
}

/// Exact decomposition of `q` into closed alternating trails, or the
/// balance or cut constraint it violates.
pub fn decompose(g: &ColoredMultigraph, q: &EdgeVector) -> Result<Membership> {
    decompose_with(g, q, CutCheck::MinCut)
}

pub fn decompose_with(g: &ColoredMultigraph, q: &EdgeVector, check: CutCheck) -> Result<Membership> {
    if let Some(v) = check_balance(g, q)? {
        return Ok(Membership::Violated(v));
    }
    let cut = match check {
        CutCheck::MinCut => check_cut_admissible(g, q)?,
        CutCheck::Exhaustive => check_cut_admissible_exhaustive(g, q)?,
    };
    if let Some(v) = cut {
        return Ok(Membership::Violated(v));
    }
    let dec = decompose_support(g, q)?;
    dec.verify(g, q).map_err(Error::Internal)?;
    Ok(Membership::Decomposed(dec))
}

/// Drops zero edges and decomposes each nontrivial component separately.
fn decompose_support(g: &ColoredMultigraph, q: &EdgeVector) -> Result<CatDecomposition> {
    let support = q.support();
    let sub = g.edge_subgraph(&support);
    let mut out = CatDecomposition::default();
    for comp in sub.components(&Default::default()) {
        if comp.len() < 2 {
            continue;
        }
        if comp.len() > CUT_ENUMERATION_LIMIT {
            return Err(Error::TooLarge {
                limit: CUT_ENUMERATION_LIMIT,
                found: comp.len(),
            });
        }
        let (h, back) = sub.induced(&comp);
        let qh = EdgeVector::from_weights_unchecked(back.iter().map(|&f| q.get(support[f]).clone()).collect());
        for (w, coeff) in decompose_connected(&h, qh)?.terms {
            let vertices = w.vertices.iter().map(|&v| comp[v]).collect();
            let edges = w.edges.iter().map(|&f| support[back[f]]).collect();
            out.terms.push((Walk::new(vertices, edges), coeff));
        }
    }
    Ok(out)
}

fn all_cuts(g: &ColoredMultigraph) -> Result<Vec<(Vec<VertexId>, Vec<EdgeId>)>> {
    let mut cuts = Vec::new();
    for_each_cut(g, |side, crossing| {
        cuts.push((side.to_vec(), crossing.to_vec()));
        true
    })?;
    Ok(cuts)
}

fn is_tight(q: &EdgeVector, total: &BigRational, e: EdgeId) -> bool {
    &(q.get(e) + q.get(e)) == total
}

fn cut_totals(cuts: &[(Vec<VertexId>, Vec<EdgeId>)], x: &EdgeVector) -> Vec<BigRational> {
    cuts.iter().map(|(_, d)| d.iter().map(|&f| x.get(f)).sum()).collect()
}

fn tight_count(cuts: &[(Vec<VertexId>, Vec<EdgeId>)], totals: &[BigRational], q: &EdgeVector) -> usize {
    cuts.iter()
        .zip(totals)
        .map(|((_, d), total)| d.iter().filter(|&&e| is_tight(q, total, e)).count())
        .sum()
}

/// Largest `t` keeping `q - t chi(T)` nonnegative and cut-admissible over
/// the given cuts (assuming `q` itself satisfies them). `totals` and
/// `slopes` hold `q(D)` and `chi(D)` per cut.
fn step_bound(
    cuts: &[(Vec<VertexId>, Vec<EdgeId>)],
    totals: &[BigRational],
    slopes: &[BigRational],
    q: &EdgeVector,
    count: &EdgeVector,
) -> Option<BigRational> {
    let mut best: Option<BigRational> = None;
    let mut offer = |t: BigRational| {
        if best.as_ref().is_none_or(|b| &t < b) {
            best = Some(t);
        }
    };
    for e in count.support() {
        offer(q.get(e) / count.get(e));
    }
    for (((_, crossing), q_total), c_total) in cuts.iter().zip(totals).zip(slopes) {
        if c_total.is_zero() {
            continue;
        }
        for &e in crossing {
            // slope of x(D - e) - x(e) in t, negated
            let slope = c_total - count.get(e) - count.get(e);
            if slope.is_positive() {
                offer((q_total - q.get(e) - q.get(e)) / slope);
            }
        }
    }
    best
}

/// The largest step `t` along a closed trail `cat` such that `q - t chi(cat)`
/// stays nonnegative and cut-admissible; cuts are enumerated exhaustively.
pub fn max_step(g: &ColoredMultigraph, q: &EdgeVector, cat: &Walk) -> Result<BigRational> {
    if q.len() != g.edge_count() {
        return Err(Error::WeightLength {
            expected: g.edge_count(),
            found: q.len(),
        });
    }
    let cuts = all_cuts(g)?;
    let count = chi(g, cat);
    step_bound(&cuts, &cut_totals(&cuts, q), &cut_totals(&cuts, &count), q, &count)
        .ok_or_else(|| Error::Precondition("empty walk".into()))
}

/// `q` positive, balanced and cut-admissible on a connected graph.
fn decompose_connected(g: &ColoredMultigraph, mut q: EdgeVector) -> Result<CatDecomposition> {
    let n = g.vertex_count();
    let cuts = all_cuts(g)?;
    let budget = cuts.iter().map(|(_, d)| d.len()).sum::<usize>() + 1;
    let mut out = CatDecomposition::default();
    let mut totals = cut_totals(&cuts, &q);
    let mut tight_before = tight_count(&cuts, &totals, &q);
    for _ in 0..=budget {
        if q.weights().iter().any(Zero::is_zero) {
            out.terms.extend(decompose_support(g, &q)?.terms);
            return Ok(out);
        }
        let wide = cuts.iter().zip(&totals).find_map(|((side, crossing), total)| {
            if side.len() < 3 || n - side.len() < 3 {
                return None;
            }
            let e = crossing.iter().copied().find(|&e| is_tight(&q, total, e))?;
            Some(CutPair {
                side_x: side.clone(),
                e,
            })
        });
        if let Some(pair) = wide {
            let scale = q.weights().iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
            let scale = BigRational::from_integer(scale);
            let p = EdgeVector::from_weights_unchecked(q.weights().iter().map(|w| w * &scale).collect());
            let split = split_at(g, &p, &pair)?;
            let dec_x = decompose_support(&split.g_x.map.host, &split.g_x.weights)?;
            let dec_rest = decompose_support(&split.g_rest.map.host, &split.g_rest.weights)?;
            let joined = stitch(g, &split, &dec_x, &dec_rest)?;
            out.terms.extend(joined.terms.into_iter().map(|(w, c)| (w, c / &scale)));
            return Ok(out);
        }

        let cat = find_cat(g)
            .map_err(|err| Error::Internal(format!("no CAT in a positive balanced admissible support: {err}")))?;
        let count = chi(g, &cat);
        let slopes = cut_totals(&cuts, &count);
        let t0 = step_bound(&cuts, &totals, &slopes, &q, &count).unwrap_or_else(BigRational::zero);
        if !t0.is_positive() {
            return Err(Error::Internal(format!("step along {cat} is not positive")));
        }
        let mut next = q.clone();
        next.add_scaled(&-t0.clone(), &count);
        let next_totals: Vec<BigRational> = totals.iter().zip(&slopes).map(|(a, c)| a - &t0 * c).collect();
        let tight_after = tight_count(&cuts, &next_totals, &next);
        if next.weights().iter().any(Signed::is_negative)
            || (!next.weights().iter().any(Zero::is_zero) && tight_after <= tight_before)
        {
            return Err(Error::Internal(format!("step {t0} along {cat} is not maximal")));
        }
        out.terms.push((cat, t0));
        q = next;
        totals = next_totals;
        tight_before = tight_after;
    }
    Err(Error::Internal(
        "decomposition did not terminate within its pair budget".into(),
    ))
}
