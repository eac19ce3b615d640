use thiserror::Error as ThisError;

/// Every failure the library can report.
///
/// [`Error::name`] gives a stable identifier that the command-line front end
/// prints on a domain error.
#[derive(Debug, Clone, PartialEq, ThisError)]
pub enum Error {
    #[error("level r = {0} is invalid: r must be an integer >= 2")]
    InvalidLevel(i64),
    #[error("tolerance must be finite and nonnegative")]
    InvalidTolerance,
    #[error("color {0} lies in the singular set Z \\ rZ")]
    InadmissibleColor(String),
    #[error("x - y = {0} is not an integer in 0..=r-1")]
    NonIntegralDifference(String),
    #[error("binomial denominator {{{0}}} vanishes")]
    DivergentBinomial(u32),
    #[error("{0}")]
    RangeError(String),
    #[error("operation requires odd r, got r = {0}")]
    EvenLevel(u32),
    #[error("Kirby color degree {0} is integral")]
    IntegralDegree(String),
    #[error("edge color {0} does not occur on both sides of the edge sum")]
    ColorMismatch(String),
    #[error("normalization theta^f d(alpha) is not usable at alpha = {0}")]
    SingularNormalization(String),
    #[error("linking matrix is singular, the set of classes is infinite")]
    InfiniteFamily,
    #[error("class {0} is integral on a surgery component")]
    NotComputable(String),
    #[error("surgery invariants are undefined at r = {0} because Delta_- vanishes when 4 | r")]
    EvenLevelMod4(u32),
    #[error("surgery framing must be nonzero")]
    ZeroFraming,
    #[error("knot is not symmetric under X -> 1/X (deviation {0:e})")]
    AsymmetricKnot(f64),
    #[error("f + 2n + 1 = 0 does not present a closed manifold with a usable normalization")]
    DegenerateFraming,
    #[error("{0}")]
    InvalidClass(String),
    #[error("{0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable variant name.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidLevel(_) => "InvalidLevel",
            Error::InvalidTolerance => "InvalidTolerance",
            Error::InadmissibleColor(_) => "InadmissibleColor",
            Error::NonIntegralDifference(_) => "NonIntegralDifference",
            Error::DivergentBinomial(_) => "DivergentBinomial",
            Error::RangeError(_) => "RangeError",
            Error::EvenLevel(_) => "EvenLevel",
            Error::IntegralDegree(_) => "IntegralDegree",
            Error::ColorMismatch(_) => "ColorMismatch",
            Error::SingularNormalization(_) => "SingularNormalization",
            Error::InfiniteFamily => "InfiniteFamily",
            Error::NotComputable(_) => "NotComputable",
            Error::EvenLevelMod4(_) => "EvenLevelMod4",
            Error::ZeroFraming => "ZeroFraming",
            Error::AsymmetricKnot(_) => "AsymmetricKnot",
            Error::DegenerateFraming => "DegenerateFraming",
            Error::InvalidClass(_) => "InvalidClass",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
