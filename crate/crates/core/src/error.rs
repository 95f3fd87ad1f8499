use thiserror::Error;

/// Errors produced while constructing or verifying codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field order {0}; expected one of 2, 3, 4, 5, 7, 8, 9")]
    UnsupportedOrder(u32),

    #[error("digit {digit} is not an element of GF({q})")]
    DigitOutOfRange { digit: u8, q: u8 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("vectors belong to different fields (GF({left}) vs GF({right}))")]
    FieldMismatch { left: u8, right: u8 },

    #[error("the zero vector does not define a projective point")]
    ZeroPoint,

    #[error("invalid Hamming code parameters: {0}")]
    InvalidParameters(String),

    #[error("point index {index} out of range 1..={n}")]
    PointOutOfRange { index: usize, n: usize },

    #[error("points must be distinct")]
    RepeatedPoint,

    #[error("points {0}, {1}, {2} are collinear and do not span a plane")]
    CollinearPoints(usize, usize, usize),

    #[error("enumeration needs {required} items, cap is {cap}")]
    CapExceeded { required: u128, cap: u64 },

    #[error("vector is not a codeword of the Hamming code")]
    NotACodeword,

    #[error("vector does not lie in the required subspace")]
    NotInSubspace,

    #[error("invalid column choice: {0}")]
    InvalidChoice(String),

    #[error("lambda vector {index} is degenerate: its column combination is zero")]
    DegenerateLambda { index: usize },

    #[error("lambda vector {index} lifts to anchor {anchor}, which is one of the chosen columns")]
    AnchorInChoice { index: usize, anchor: usize },

    #[error("representative of entry {index} lies in its own component R_{anchor}")]
    RepresentativeInComponent { index: usize, anchor: usize },

    #[error("lambda code rejected: {0}")]
    InvalidLambda(String),

    #[error("family is not admissible: components {0} and {1} intersect")]
    NotAdmissible(usize, usize),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
