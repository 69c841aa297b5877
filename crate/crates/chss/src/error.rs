use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomials are over different fields (p = {0} vs p = {1})")]
    ModulusMismatch(u64, u64),
    #[error("coefficient {value} is not reduced modulo {p}")]
    CoefficientOutOfRange { value: u64, p: u64 },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("extended gcd of two zero polynomials")]
    GcdOfZeros,
    #[error("modulus is the zero polynomial")]
    ZeroModulus,
    #[error("polynomial must be nonconstant")]
    ConstantPolynomial,
    #[error("polynomials are not coprime")]
    NotCoprime,
    #[error("no monic irreducible of degree {degree} left outside the exclusion set")]
    Exhausted { degree: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty congruence system")]
    EmptySystem,
    #[error("moduli {0} and {1} are not coprime")]
    NotPairwiseCoprime(usize, usize),
    #[error("residue {0} is not reduced modulo its modulus")]
    ResidueNotReduced(usize),

    #[error("malformed config: {0}")]
    MalformedConfig(String),
    #[error("config violates admissibility conditions: {0}")]
    InvalidConfig(String),
    #[error("participant {id} out of range 1..={n}")]
    ParticipantOutOfRange { id: usize, n: usize },
    #[error("level {level} out of range 1..={m}")]
    LevelOutOfRange { level: usize, m: usize },
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("unknown hash family {0:?}")]
    UnknownHashFamily(String),
    #[error("hash family mismatch: bulletin uses {bulletin:?}, got {given:?}")]
    HashFamilyMismatch { bulletin: String, given: String },
    #[error("polynomial of degree {degree} does not fit width {width}")]
    WidthExceeded { degree: usize, width: usize },

    #[error("secret has degree {degree}, must be below d0 = {d0}")]
    SecretTooLarge { degree: usize, d0: usize },
    #[error("share of participant {id} is malformed: {reason}")]
    BadShare { id: usize, reason: String },
    #[error("duplicate share for participant {0}")]
    DuplicateShare(usize),
    #[error("no bulletin entry for level {level}, participant {id}")]
    MissingBulletinEntry { level: usize, id: usize },
    #[error("participant {id} (level {participant_level}) cannot contribute at level {level}")]
    LevelMismatch {
        id: usize,
        participant_level: usize,
        level: usize,
    },
    #[error("level {level}: have {have}, need {need}")]
    InsufficientShares { level: usize, have: usize, need: usize },
    #[error("not authorized: level {level}: have {have}, need {need}")]
    NotAuthorized { level: usize, have: usize, need: usize },
    #[error("shares are inconsistent at level {level}")]
    InconsistentShares { level: usize },
    #[error("share of participant {id} is bound to a different bulletin")]
    BindingMismatch { id: usize },

    #[error("adversary view is not a worst-case unauthorized set: {0}")]
    InvalidView(String),
    #[error("candidate grouping inconsistency: {0}")]
    GroupingInconsistency(String),
    #[error("empty candidate set")]
    EmptyCandidates,

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}
