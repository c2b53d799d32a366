use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("kronecker symbol is undefined for modulus 0")]
    KroneckerZeroModulus,

    #[error("group element does not match the group family")]
    ShapeMismatch,

    #[error("forms have different discriminants: {0} vs {1}")]
    DiscriminantMismatch(i64, i64),

    #[error("prime {0} does not split in the field (inert or ramified)")]
    NonSplitPrime(u64),

    #[error("discriminant cap exceeded: |{0}| > {1}")]
    CapExceeded(i64, i64),

    #[error("prime sampling exhausted at bound {bound} (modulus {modulus})")]
    SamplingExhausted { modulus: u64, bound: u64 },

    #[error("ramification data invalid: {0}")]
    RamInvalid(String),

    #[error("target class is not realizable for this group")]
    TargetNotRealizable,

    #[error("witness search exhausted its budget")]
    SearchExhausted,

    #[error("unsupported group family: {0}")]
    UnsupportedFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;
