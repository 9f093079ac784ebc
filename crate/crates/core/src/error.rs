use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An integer result does not fit in 64 bits (or an accumulator overflowed).
    Overflow(&'static str),
    /// An enumeration or atom grid is larger than the configured budget.
    Budget {
        needed: u64,
        budget: u64,
    },
    /// `n` was required to divide `l`.
    NotDivisor {
        n: u64,
        l: u64,
    },
    OutOfRange {
        what: &'static str,
        value: u64,
        bound: u64,
    },
    /// No admissible index remained (e.g. no member of `D` divides `l`).
    EmptyDomain,
    NotAChain,
    /// The value is not a multiple of 2^-64 (or too large) for the exact accumulator.
    Inexact(f64),
    Precondition(&'static str),
    NoConvergence(&'static str),
    /// Two objects live at incompatible resolutions or in different spaces.
    Mismatch(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Overflow(what) => write!(f, "integer overflow: {what}"),
            Error::Budget { needed, budget } => {
                write!(f, "size {needed} exceeds budget {budget}")
            }
            Error::NotDivisor { n, l } => write!(f, "{n} does not divide {l}"),
            Error::OutOfRange { what, value, bound } => {
                write!(f, "{what} = {value} out of range (bound {bound})")
            }
            Error::EmptyDomain => f.write_str("no admissible index divides the resolution"),
            Error::NotAChain => f.write_str("index set is not a divisibility chain"),
            Error::Inexact(x) => write!(f, "value {x} is not exactly representable"),
            Error::Precondition(what) => write!(f, "precondition failed: {what}"),
            Error::NoConvergence(what) => write!(f, "no convergence: {what}"),
            Error::Mismatch(what) => write!(f, "mismatch: {what}"),
        }
    }
}

impl core::error::Error for Error {}
