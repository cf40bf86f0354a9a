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

use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphViolation {
    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: EdgeId, vertex: VertexId },
    #[error("edge id {edge} appears more than once")]
    DuplicateId { edge: EdgeId },
    #[error("edge id {edge} is outside 0..edge_count")]
    NonDenseId { edge: EdgeId },
    #[error("edge {edge} has endpoint {vertex} out of range")]
    VertexOutOfRange { edge: EdgeId, vertex: VertexId },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphViolation),
    #[error("walk is inconsistent with the graph at edge position {position}")]
    InconsistentWalk { position: usize },
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(VertexId),
    #[error("terminal set is empty")]
    NoTerminals,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("an alternating trail connects distinct terminals")]
    TerminalsConnected,
    #[error("edge {0} is a bridge")]
    Bridge(EdgeId),
    #[error("vertex {0} does not see two different edge colors")]
    Monochromatic(VertexId),
    #[error("phi({vertex}) = {edge} is not incident to {vertex}")]
    PhiNotIncident { vertex: VertexId, edge: EdgeId },
    #[error("phi is missing for vertex {0}")]
    PhiMissing(VertexId),
    #[error("graph must use exactly two colors, found {0}")]
    NotTwoColored(usize),
    #[error("edge {0} has negative weight")]
    NegativeWeight(EdgeId),
    #[error("weight vector has {found} entries, graph has {expected} edges")]
    WeightLength { expected: usize, found: usize },
    #[error("edge set is not a matching (vertex {0} is covered twice)")]
    NotAMatching(VertexId),
    #[error("graph has parallel edges {0} and {1}")]
    NotSimple(EdgeId, EdgeId),
    #[error("cut enumeration limited to {limit} vertices, got {found}")]
    TooLarge { limit: usize, found: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
