use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("invalid abelian type: {0}")]
    InvalidType(String),
    #[error("relation lattice has rank deficit: presented group is infinite")]
    InfiniteGroup,
    #[error("elementary divisor {divisor} is not a power of {p}")]
    NotPGroup { p: u64, divisor: u64 },
    #[error("negative multiplicity {value} for M_{size}(Q(z{conductor})): inconsistent data")]
    NegativeMultiplicity {
        size: u64,
        conductor: u64,
        value: i128,
    },
    #[error("inconsistent layer data: {0}")]
    InvalidLayers(String),
    #[error("invalid two-generator tuple: {0}")]
    InvalidTuple(String),
    #[error("tuple is not in tau_n5")]
    NotTau5,
    #[error("prime {p} too small: the family needs p > {bound}")]
    PrimeTooSmall { p: u64, bound: u64 },
    #[error("nilpotency class {0} not in {{2, 3}}")]
    BadClass(u32),
    #[error("invalid family parameters: {0}")]
    InvalidParameters(String),
    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group or quotient is not abelian")]
    NotAbelian,
    #[error("group order {order} exceeds the oracle bound {bound}")]
    BoundExceeded { order: u64, bound: u64 },
    #[error("character table lift failed: {0}")]
    LiftFailure(String),
    #[error("character count {characters} differs from class count {classes}")]
    SectionMismatch { characters: usize, classes: usize },
    #[error("central-type criteria disagree on character {0}")]
    CriterionMismatch(usize),
    #[error("not an odd-order p-group")]
    NotOddPGroup,
    #[error("character field is not cyclotomic (orbit {orbit}, conductor {conductor})")]
    NonCyclotomicField { orbit: usize, conductor: u64 },
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("element is not central")]
    NotCentral,
    #[error("idempotent has non-rational coefficients")]
    NonRationalCoefficients,
}
