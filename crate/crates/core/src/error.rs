use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the toolkit can report.
///
/// Input problems (bad curve, bad text, bad field) are distinguished from
/// certification failures, which indicate that an exact check did not hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalars from different field contexts were combined")]
    ContextMismatch,

    #[error("{0} is not an odd prime")]
    NotPrime(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("division by zero")]
    DivisionByZero,

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("curve is not smooth: f has a repeated factor")]
    NotSmooth,

    #[error("f must have degree exactly 6, found {0}")]
    WrongDegree(i64),

    #[error("characteristic {0} is not allowed (need 0 or a prime p > 7)")]
    BadCharacteristic(u64),

    #[error("square root of {0} does not exist in the field")]
    SqrtNotInField(String),

    #[error("sampling exhausted after {0} draws")]
    Exhausted(usize),

    #[error("point lies on the curve, where the classifying map is undefined")]
    BaseLocus,

    #[error("all quadrics vanish at a point off the curve")]
    IndeterminateImage,

    #[error("projection from the origin is undefined at the origin")]
    OriginProjection,

    #[error("divisor parameter is zero")]
    ZeroParameter,

    #[error("the fiber over the origin is the cone, not a conic")]
    OriginFiber,

    #[error("quartic interpolation is ambiguous (nullity {0}); use more samples")]
    AmbiguousQuartic(usize),

    #[error("no quartic vanishes on the samples")]
    NoQuartic,

    #[error("a cubic vanishes on all samples")]
    CubicVanishes,

    #[error("Weierstrass locus is not split over the field ({0} of 6 roots rational)")]
    SkippedUnsplit(usize),

    #[error("twist {0} is outside the supported range")]
    OutOfRange(i64),

    #[error("certification failed: {0}")]
    CertificationFailure(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors caused by bad user input rather than a failed check.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::CertificationFailure(_)
                | Error::IndeterminateImage
                | Error::NoQuartic
                | Error::CubicVanishes
                | Error::AmbiguousQuartic(_)
        )
    }
}

pub(crate) fn cert_fail(msg: impl Into<String>) -> Error {
    Error::CertificationFailure(msg.into())
}
