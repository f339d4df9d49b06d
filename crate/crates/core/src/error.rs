use core::fmt;

/// Errors raised by the core.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// `p`, `q` or `p + q` is outside the supported range.
    InvalidSignature { p: usize, q: usize },
    /// Two operands live in different algebras.
    SignatureMismatch,
    /// A coefficient slice has the wrong length for the algebra.
    DimensionMismatch { expected: usize, found: usize },
    /// An input contained NaN or an infinity.
    NonFinite,
    /// The operation needs a paravector and got higher grades.
    NotParavector,
    /// Attempted to invert (or normalize) zero.
    ZeroDivisor,
    /// A direction was requested at a point with `x_q = 0`.
    OnRealAxis,
    /// A kernel was evaluated on its singular set.
    Singular,
    /// The point is not where the operation needs it to be.
    OutsideDomain(&'static str),
    /// A geometric or numerical parameter is out of range.
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidSignature { p, q } => {
                write!(f, "unsupported signature p={p}, q={q} (need p >= 1, q >= 2, p + q <= 12)")
            }
            Error::SignatureMismatch => f.write_str("operands belong to different algebras"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "expected {expected} coefficients, found {found}")
            }
            Error::NonFinite => f.write_str("non-finite value"),
            Error::NotParavector => f.write_str("element is not a paravector"),
            Error::ZeroDivisor => f.write_str("division by zero"),
            Error::OnRealAxis => f.write_str("point has x_q = 0, direction undefined"),
            Error::Singular => f.write_str("kernel evaluated on its singular set"),
            Error::OutsideDomain(what) => write!(f, "point outside domain: {what}"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
