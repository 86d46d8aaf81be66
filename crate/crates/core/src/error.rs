use thiserror::Error;

use crate::families::FamilyId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph6: empty input")]
    Graph6Empty,
    #[error("graph6: malformed size header: {0}")]
    Graph6Header(String),
    #[error("graph6: invalid byte {byte:#04x} at offset {offset}")]
    Graph6Byte { byte: u8, offset: usize },
    #[error("graph6: payload has {got} bytes, expected {expected}")]
    Graph6Truncated { expected: usize, got: usize },
    #[error("graph6: payload has {got} bytes, expected {expected} (trailing data)")]
    Graph6Trailing { expected: usize, got: usize },
    #[error("graph order {n} outside supported range {min}..={max}")]
    OrderOutOfRange { n: usize, min: usize, max: usize },
    #[error("vertex {v} out of range for graph of order {n}")]
    NoSuchVertex { v: usize, n: usize },
    #[error("edge ({0}, {1}) not present")]
    NoSuchEdge(usize, usize),
    #[error("self loop ({0}, {0}) is not allowed")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("cross edge ({0}, {1}) does not join the two blocks")]
    CrossEdgeInsideBlock(usize, usize),
    #[error("{family}: order {n} violates parity or bound ({rule})")]
    FamilyBound {
        family: FamilyId,
        n: usize,
        rule: &'static str,
    },
    #[error("{family}: H constraint violated ({detail})")]
    FamilyH { family: FamilyId, detail: String },
    #[error("{family}: invalid deleted or cross edges ({detail})")]
    FamilyEdges { family: FamilyId, detail: String },
    #[error("{family}: built graph fails global check ({detail})")]
    FamilyPostCheck { family: FamilyId, detail: String },
    #[error("{family}: missing parameter `{name}`")]
    FamilyParam { family: FamilyId, name: &'static str },
    #[error("invalid family spec: {0}")]
    FamilySpec(String),
    #[error("unsupported order {n} for {what}")]
    Unsupported { n: usize, what: &'static str },
}
