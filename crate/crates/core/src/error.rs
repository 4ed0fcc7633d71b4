use thiserror::Error;

use crate::graph::{Color, EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("cannot contract loop {0}")]
    ContractLoop(EdgeId),
    #[error("duplicate edge id {0}")]
    DuplicateEdgeId(EdgeId),
    #[error("more than one pointed edge")]
    TwoPointedEdges,
    #[error("edge {0}: the pointed color is reserved for the pointed edge")]
    PointedColor(EdgeId),
    #[error("color {0} is used by both regular and zero edges")]
    ColorClash(Color),
    #[error("edge {0} is not a regular edge")]
    NotRegular(EdgeId),
    #[error("edges to recolor do not share one color")]
    MixedColors,
    #[error("vertex {0} is not a cutpoint")]
    NotACutpoint(VertexId),
    #[error("reattach vertices do not lie on the two sides of the split")]
    BadReattachChoice,
    #[error("2-sum along loop {0}")]
    LoopTwoSum(EdgeId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("monomial carries more than one z-symbol")]
    NotLinearInZ,
    #[error("no image given for {0}")]
    MissingKey(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TutteError {
    #[error("improper labeling: {0}")]
    ImproperLabeling(String),
    #[error("invalid contracting set: {0}")]
    InvalidContractingSet(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointedError {
    #[error("graph has no pointed edge")]
    NoPointedEdge,
    #[error("pointed edge {0} is a loop or a bridge")]
    PointedIsLoopOrBridge(EdgeId),
    #[error("pointed graph is not connected")]
    Disconnected,
    #[error(transparent)]
    Tutte(#[from] TutteError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("invalid tensor instance: {0}")]
    InstanceInvalid(String),
    #[error("copy of {0} has a contracting set of the wrong type")]
    TypeMismatch(EdgeId),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error(transparent)]
    Pointed(#[from] PointedError),
    #[error(transparent)]
    Tutte(#[from] TutteError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("line {line}: duplicate edge id {id}")]
    DuplicateEdgeId { line: usize, id: EdgeId },
    #[error("line {line}: edge {id} is a second pointed edge")]
    TwoPointedEdges { line: usize, id: EdgeId },
    #[error("line {line}, column {col}: an edge cannot be both pointed and zero")]
    PointedZeroConflict { line: usize, col: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}
