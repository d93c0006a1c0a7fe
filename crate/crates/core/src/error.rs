use alloc::string::String;
use core::fmt;

/// Errors reported by the exact engines.
///
/// All of these indicate misuse of an interface (mismatched shapes, out-of-range
/// indices, values outside a supported window), never a numerical failure:
/// arithmetic itself is exact and total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The arity of a tensor or multiderivation does not match the argument count.
    ArityMismatch { expected: usize, got: usize },
    /// A basis index is out of range for the declared dimension.
    IndexOutOfRange { index: usize, dim: usize },
    /// Two elements live over different generator sets.
    GeneratorSetMismatch,
    /// A degree constraint was violated (e.g. a non-homogeneous assignment).
    DegreeMismatch { expected: i64, got: i64 },
    /// Dimensions of interacting objects disagree.
    DimensionMismatch(String),
    /// Structural shapes disagree (source/target spaces, component layout).
    ShapeMismatch(String),
    /// The adjoint action of a gauge parameter did not terminate within the cap.
    NonNilpotent { cap: u32 },
    /// A degree window is too small for the requested component.
    WindowTooSmall { degree: i64 },
    /// The grading of an input is outside what the operation supports.
    UnsupportedGrading(String),
    /// A linear solve that the theory guarantees solvable had no solution.
    NotSolvable(String),
    /// A precondition documented on the operation failed.
    Precondition(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ArityMismatch { expected, got } => {
                write!(f, "arity mismatch: expected {expected}, got {got}")
            }
            Error::IndexOutOfRange { index, dim } => {
                write!(f, "index {index} out of range for dimension {dim}")
            }
            Error::GeneratorSetMismatch => write!(f, "mismatched generator sets"),
            Error::DegreeMismatch { expected, got } => {
                write!(f, "degree mismatch: expected {expected}, got {got}")
            }
            Error::DimensionMismatch(s) => write!(f, "dimension mismatch: {s}"),
            Error::ShapeMismatch(s) => write!(f, "shape mismatch: {s}"),
            Error::NonNilpotent { cap } => {
                write!(f, "adjoint action not nilpotent within {cap} steps")
            }
            Error::WindowTooSmall { degree } => {
                write!(f, "degree window too small: degree {degree} not covered")
            }
            Error::UnsupportedGrading(s) => write!(f, "unsupported grading: {s}"),
            Error::NotSolvable(s) => write!(f, "linear solve failed: {s}"),
            Error::Precondition(s) => write!(f, "precondition failed: {s}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
