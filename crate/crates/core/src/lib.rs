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

//! Alternating trails in edge-colored multigraphs.
//!
//! - [`reachability`]: blossom-forest search for an alternating trail between
//!   distinct terminals, or a Tutte set proving none exists.
//! - [`structures`]: closed alternating trails in bridgeless graphs and a
//!   cycle finder for vertex-to-edge assignments.
//! - [`cones`]: balance and cut conditions for two-colored weight vectors
//!   and their exact decomposition into closed alternating trails.
//! - [`matching`]: maximum matching by alternating reachability.
//! - [`certificates`]: independent checkers and brute-force oracles.
//! - [`cli`]: the line-oriented instance format and command runner.

pub mod certificates;
pub mod cli;
pub mod cones;
pub mod error;
pub mod graph;
pub mod matching;
pub mod reachability;
pub mod structures;

pub use cones::{decompose, CatDecomposition, ConeViolation, CutPair, Membership};
pub use error::{Error, GraphViolation, Result};
pub use graph::{
    chi, classify_walk, validate_graph, Color, ColoredMultigraph, EdgeId, EdgeVector, VertexId, Walk, WalkClass,
};
pub use matching::{max_matching, Matching};
pub use reachability::{classify_vertices, solve, BlossomForest, SolveOutcome, TutteCertificate, VertexClass};
pub use structures::{find_cat, find_cat_through_edge, giles_seymour};
