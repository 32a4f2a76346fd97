use thiserror::Error;

/// Everything that can go wrong while building or transforming arc systems.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("intersection counts sum to {sum}, which is odd")]
    Parity { sum: u64 },

    #[error("window {disk} is empty but its twist parameter is {q}")]
    ZeroWindowTwist { disk: usize, q: i64 },

    #[error("window {disk} has {size} intersections; a twice-punctured disk needs an even count")]
    OddWindow { disk: usize, size: u32 },

    #[error("tracing the diagram produced a closed component")]
    ClosedComponent,

    #[error("tracing produced a bad component: {0}")]
    ComponentCount(String),

    #[error("position {position} of window {disk} is not an adjacent equal pair")]
    NotAViolation { disk: usize, position: usize },

    #[error("arc {arc} does not meet any window")]
    NoWindowIntersection { arc: u8 },

    #[error("system is not normal")]
    NotNormal,

    #[error("system is not minimal with respect to the first disk")]
    NotMinimal,

    #[error("invalid coordinate: {0}")]
    InvalidCoordinate(String),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    /// A structural property the classification relies on was violated.
    #[error("tripwire: {0}")]
    Tripwire(String),

    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
