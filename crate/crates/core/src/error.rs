use thiserror::Error;

/// Failure modes of the exact-arithmetic and calculus layers.
///
/// Every variant carries enough context to be reported verbatim; the CLI
/// maps the variant name to a machine-readable code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("descriptor mismatch: {0}")]
    DescriptorMismatch(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("exact division impossible")]
    NotDivisible,
    #[error("ring is not an integral domain")]
    NotADomain,
    #[error("ideal membership needs an explicit certificate here")]
    CertificateRequired,
    #[error("certificate does not verify: {0}")]
    CertificateInvalid(String),
    #[error("units not enumerable over this ring")]
    NotEnumerable,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("alternating matrix has odd size")]
    OddSize,
    #[error("generator index out of range or on the diagonal: {0}")]
    BadIndex(String),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("matrix or word is not congruent to the identity modulo the ideal")]
    NotRelative,
    #[error("matrix fails the required group membership: {0}")]
    NotSpecial(String),
    #[error("row is not unimodular")]
    NotUnimodular,
    #[error("row too short to clear the final unit")]
    NeedsDimensionThree,
    #[error("vectors do not pair to zero")]
    NotIsotropicPair,
    #[error("quotient ring not computable from this ideal")]
    QuotientNotComputable,
    #[error("no witness of the required shape found")]
    WitnessNotFound,
    #[error("search budget exhausted after {0} candidates")]
    ExhaustedBudget(u64),
    #[error("denominators are not comaximal")]
    NotComaximal,
    #[error("inputs do not agree on the overlap: {0}")]
    Incompatible(String),
    #[error("element is not a unit congruent to one modulo the ideal")]
    NotInKernelC,
    #[error("pfaffian is not a unit")]
    PfaffianNotUnit,
    #[error("hypothesis violated: {0}")]
    HypothesisFailed(String),
    #[error("operand sizes are inconsistent: {0}")]
    SizeMismatch(String),
    #[error("unsupported over this ring: {0}")]
    Unsupported(String),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    SyntaxError { line: usize, col: usize, msg: String },
    #[error("type error at line {line}, column {col}: {msg}")]
    TypeError { line: usize, col: usize, msg: String },
    #[error("no binding named '{0}'")]
    UnknownBinding(String),
}

impl Error {
    /// Stable machine-readable code used by reports and the C ABI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DescriptorMismatch(_) => "DescriptorMismatch",
            Error::NotAUnit => "NotAUnit",
            Error::NotDivisible => "NotDivisible",
            Error::NotADomain => "NotADomain",
            Error::CertificateRequired => "CertificateRequired",
            Error::CertificateInvalid(_) => "CertificateInvalid",
            Error::NotEnumerable => "NotEnumerable",
            Error::NotSquare => "NotSquare",
            Error::NotAlternating => "NotAlternating",
            Error::OddSize => "OddSize",
            Error::BadIndex(_) => "BadIndex",
            Error::NotInvertible => "NotInvertible",
            Error::NotRelative => "NotRelative",
            Error::NotSpecial(_) => "NotSpecial",
            Error::NotUnimodular => "NotUnimodular",
            Error::NeedsDimensionThree => "NeedsDimensionThree",
            Error::NotIsotropicPair => "NotIsotropicPair",
            Error::QuotientNotComputable => "QuotientNotComputable",
            Error::WitnessNotFound => "WitnessNotFound",
            Error::ExhaustedBudget(_) => "ExhaustedBudget",
            Error::NotComaximal => "NotComaximal",
            Error::Incompatible(_) => "Incompatible",
            Error::NotInKernelC => "NotInKernelC",
            Error::PfaffianNotUnit => "PfaffianNotUnit",
            Error::HypothesisFailed(_) => "HypothesisFailed",
            Error::SizeMismatch(_) => "SizeMismatch",
            Error::Unsupported(_) => "Unsupported",
            Error::SyntaxError { .. } => "SyntaxError",
            Error::TypeError { .. } => "TypeError",
            Error::UnknownBinding(_) => "UnknownBinding",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
