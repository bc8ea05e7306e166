use alloc::string::String;
use core::fmt;

use crate::graph::VertexId;

/// What went wrong while reading the graph DSL.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownVertex(VertexId),
    DuplicateVertex(VertexId),
    SelfLoop(VertexId),
    Disconnected,
    NonPositiveArea(VertexId),
    MixedAreas,
}

/// Which precondition of the trichotomy construction failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precondition {
    NegativeDefinite,
    /// A connected block of the form is negative definite, so no vector can be
    /// positive together with its image on that block.
    NegativeDefiniteComponent,
    NoPositiveImage,
    NegativeOffDiagonal,
    NotExactOnBoundary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    Parse { line: usize, column: usize, kind: ParseErrorKind },
    InvalidGraph(String),
    VertexNotFound(VertexId),
    EdgeNotFound(VertexId, VertexId),
    DimensionMismatch { expected: usize, found: usize },
    NonPositiveArea(VertexId),
    WeightOutOfRange,
    NotBlowDownable(VertexId),
    NotATree,
    NonzeroGenus(VertexId),
    PreconditionFailed(Precondition),
    InvalidFraction { n: i64, lambda: i64 },
    InvalidParameters(String),
    NotN3,
    InfinitePi1,
    NegativeDefinite,
    NoConjugateDefined,
    NotInFamily,
    DegenerateIntersectionForm,
    Tables(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => f.write_str(msg),
            ParseErrorKind::UnknownVertex(id) => write!(f, "edge mentions undeclared vertex `{id}`"),
            ParseErrorKind::DuplicateVertex(id) => write!(f, "vertex `{id}` declared twice"),
            ParseErrorKind::SelfLoop(id) => write!(f, "self-loop at vertex `{id}`"),
            ParseErrorKind::Disconnected => f.write_str("graph is not connected"),
            ParseErrorKind::NonPositiveArea(id) => write!(f, "area of `{id}` must be positive"),
            ParseErrorKind::MixedAreas => f.write_str("either every vertex carries an area or none does"),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { line, column, kind } => write!(f, "{line}:{column}: {kind}"),
            Error::InvalidGraph(msg) => write!(f, "invalid graph: {msg}"),
            Error::VertexNotFound(id) => write!(f, "no vertex `{id}`"),
            Error::EdgeNotFound(u, v) => write!(f, "no edge between `{u}` and `{v}`"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NonPositiveArea(id) => write!(f, "area of `{id}` must be positive"),
            Error::WeightOutOfRange => f.write_str("blow-up weight out of range"),
            Error::NotBlowDownable(id) => write!(f, "vertex `{id}` cannot be blown down"),
            Error::NotATree => f.write_str("graph is not a tree"),
            Error::NonzeroGenus(id) => write!(f, "vertex `{id}` has nonzero genus"),
            Error::PreconditionFailed(p) => write!(f, "precondition failed: {p:?}"),
            Error::InvalidFraction { n, lambda } => {
                write!(f, "invalid fraction {n}/{lambda}: need 0 < lambda < n, gcd 1")
            }
            Error::InvalidParameters(msg) => write!(f, "invalid parameters: {msg}"),
            Error::NotN3 => f.write_str("graph is not of type (N3)"),
            Error::InfinitePi1 => f.write_str("boundary fundamental group is infinite"),
            Error::NegativeDefinite => f.write_str("intersection form is negative definite"),
            Error::NoConjugateDefined => f.write_str("no conjugate defined for this type"),
            Error::NotInFamily => f.write_str("graph is not in the dihedral family"),
            Error::DegenerateIntersectionForm => f.write_str("intersection form is degenerate"),
            Error::Tables(msg) => write!(f, "realizability tables: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
