use core::fmt;

/// Failure modes shared by the library operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division by a null biquaternion (`q q̄ = 0`).
    SingularOperand,
    /// Frame vectors are not orthonormal.
    InvalidFrame,
    /// Rotation or boost axis is not a unit vector.
    InvalidAxis,
    /// Momentum does not satisfy the mass-shell condition.
    OffShell,
    /// An operation needs a nonzero mass.
    DegenerateMass,
    /// Zero or several candidate gradient conventions passed selection.
    NoConsistentConvention(usize),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SingularOperand => write!(f, "singular operand"),
            Error::InvalidFrame => write!(f, "frame vectors must be orthogonal unit vectors"),
            Error::InvalidAxis => write!(f, "axis must be a unit vector"),
            Error::OffShell => write!(f, "momentum is off the mass shell"),
            Error::DegenerateMass => write!(f, "mass must be nonzero"),
            Error::NoConsistentConvention(n) => {
                write!(f, "{n} gradient conventions passed selection, expected exactly one")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
