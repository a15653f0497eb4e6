use core::fmt;

/// Errors shared across the toolkit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// The certified error bound of an input is too wide to decide the
    /// question being asked (a quotient, a rounding, a sign). The caller
    /// should recompute the inputs at higher precision and retry.
    InsufficientPrecision,
    /// A denominator (typically sin t) is not provably nonzero at the
    /// working precision.
    NearSingularity,
    /// The requested formula only applies to arguments in a specific
    /// residue class (e.g. the one-series Lerch form needs s ≡ 3 mod 4).
    WrongResidueClass { s: u32 },
    /// Exact division by zero.
    DivisionByZero,
    /// Logarithm or square root of a value that is not provably positive.
    NotProvablyPositive,
    /// An argument is outside the supported domain.
    InvalidArgument(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InsufficientPrecision => {
                write!(f, "working precision is insufficient to certify the result")
            }
            Self::NearSingularity => {
                write!(f, "denominator is not provably nonzero at this precision")
            }
            Self::WrongResidueClass { s } => {
                write!(
                    f,
                    "argument s = {s} is in the wrong residue class for this formula"
                )
            }
            Self::DivisionByZero => write!(f, "division by zero"),
            Self::NotProvablyPositive => {
                write!(f, "argument is not provably positive")
            }
            Self::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
