use thiserror::Error;

use crate::hypergraph::Incidence;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("invalid vertex name `{0}`")]
    InvalidVertexName(String),
    #[error("edge {0} is empty")]
    EmptyEdge(usize),
    #[error("edge {second} duplicates edge {first}")]
    DuplicateEdge { first: usize, second: usize },
    #[error("vertex `{vertex}` appears twice in edge {edge}")]
    RepeatedVertex { vertex: String, edge: usize },
    #[error("({vertex}, e{edge}) is not an incidence")]
    InvalidIncidence { vertex: String, edge: usize },
    #[error("hypergraph has no edges")]
    NoEdges,
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("edge ({0}, {1}) is not in the graph")]
    UnknownEdge(String, String),
    #[error("hypergraph is not linear (t = {0})")]
    NotLinear(usize),
    #[error("hypergraph is not alpha-acyclic")]
    NotAlphaAcyclic,
    #[error("graph contains a cycle")]
    Cyclic,
    #[error("graph is not biregular")]
    NotBiregular,
    #[error("graph contains a copy of K_{{2,{}}}", .0 + 1)]
    NotK2tFree(usize),
    #[error("coloring is not proper ({0} violating pairs)")]
    ImproperColoring(usize),
    #[error("coloring misses {} incidences", .0.len())]
    PartialColoring(Vec<Incidence>),
    #[error("coloring has {got} entries, expected {expected}")]
    ColoringSize { expected: usize, got: usize },
    #[error("color {color} outside palette 1..={palette}")]
    ColorOutOfRange { color: usize, palette: usize },
    #[error("order is not a permutation of the incidences: {0}")]
    InvalidOrder(String),
    #[error("{what} is {value}, over the cap {cap}")]
    CapExceeded { what: &'static str, value: u128, cap: u128 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("generation failed after {tries} tries ({details})")]
    GenerationFailed { tries: u64, details: String },
}

impl Error {
    /// Resource-limit failures, as opposed to bad input or failed checks.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::GenerationFailed { .. })
    }
}
