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

use num::BigRational;

use super::{check_cut_admissible_exhaustive, CutPair};
use crate::error::{Error, Result};
use crate::graph::{ColoredMultigraph, EdgeId, EdgeVector, VertexId};

/// Largest component (in vertices) whose cuts are enumerated.
pub const CUT_ENUMERATION_LIMIT: usize = 16;

/// Calls `visit(side_x, crossing)` for every nonempty cut of every
/// component. `side_x` never contains the component's smallest vertex, so
/// each cut is seen once; masks are visited in ascending order. Stops early
/// when `visit` returns false.
pub fn for_each_cut<F>(g: &ColoredMultigraph, mut visit: F) -> Result<()>
where
    F: FnMut(&[VertexId], &[EdgeId]) -> bool,
{
    let comps = g.components(&Default::default());
    if let Some(big) = comps.iter().find(|c| c.len() > CUT_ENUMERATION_LIMIT) {
        return Err(Error::TooLarge {
            limit: CUT_ENUMERATION_LIMIT,
            found: big.len(),
        });
    }
    let mut local = vec![0usize; g.vertex_count()];
    let mut side = Vec::new();
    let mut crossing = Vec::new();
    for comp in comps.iter().filter(|c| c.len() > 1) {
        for (i, &v) in comp.iter().enumerate() {
            local[v] = i;
        }
        let mut edges: Vec<EdgeId> = comp.iter().flat_map(|&v| g.incident(v).iter().copied()).collect();
        edges.sort_unstable();
        edges.dedup();
        let ends: Vec<(usize, usize)> = edges
            .iter()
            .map(|&e| (local[g.edge(e).u], local[g.edge(e).v]))
            .collect();
        for mask in 1u32..(1u32 << (comp.len() - 1)) {
            let full = mask << 1;
            side.clear();
            side.extend((1..comp.len()).filter(|&i| full >> i & 1 == 1).map(|i| comp[i]));
            crossing.clear();
            for (&e, &(a, b)) in edges.iter().zip(&ends) {
                if (full >> a & 1) != (full >> b & 1) {
                    crossing.push(e);
                }
            }
            if !visit(&side, &crossing) {
                return Ok(());
            }
        }
    }
    Ok(())
}

/// A tight pair with the sizes of both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightPair {
    pub pair: CutPair,
    pub x_size: usize,
    pub complement_size: usize,
}

impl TightPair {
    pub fn min_side(&self) -> usize {
        self.x_size.min(self.complement_size)
    }
}

/// Every `(D, e)` with `x(e) = x(D - e)`, in enumeration order.
pub fn tight_pairs(g: &ColoredMultigraph, x: &EdgeVector) -> Result<Vec<TightPair>> {
    if let Some(v) = check_cut_admissible_exhaustive(g, x)? {
        return Err(Error::Precondition(format!("vector is not cut-admissible: {v}")));
    }
    let n = g.vertex_count();
    let mut out = Vec::new();
    for_each_cut(g, |side_x, crossing| {
        let total: BigRational = crossing.iter().map(|&f| x.get(f)).sum();
        for &e in crossing {
            if (x.get(e) + x.get(e)) == total {
                out.push(TightPair {
                    pair: CutPair {
                        side_x: side_x.to_vec(),
                        e,
                    },
                    x_size: side_x.len(),
                    complement_size: n - side_x.len(),
                });
            }
        }
        true
    })?;
    Ok(out)
}
