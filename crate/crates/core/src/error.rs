use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown handle {0:?}")]
    UnknownHandle(String),
    #[error("invalid handle structure: {0}")]
    InvalidHandles(String),
    #[error("structure is not a Mom-n: {0}")]
    NotMom(String),
    #[error("invalid dipyramid spec: {0}")]
    InvalidSpec(String),
    #[error("{0}")]
    Domain(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("pairing has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("pairing entry {index} maps to {value}, outside 0..{len}")]
    OutOfRange { index: usize, value: usize, len: usize },
    #[error("pairing is not an involution: {index} -> {image} -> {back}")]
    NotInvolution { index: usize, image: usize, back: usize },
    #[error("pairing has fixed points at {0:?}")]
    FixedPoints(Vec<usize>),
    #[error("complex does not pass the topological filter")]
    Unfiltered,
    #[error("survivor invariant violated: {0}")]
    Invariant(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("sink rejected output: {0}")]
    Sink(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
