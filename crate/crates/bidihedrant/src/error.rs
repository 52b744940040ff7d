use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("malformed cycles: point {0} appears more than once")]
    RepeatedPoint(usize),
    #[error("images do not form a bijection")]
    NotBijective,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("empty generator list (pass an explicit identity for the trivial group)")]
    EmptyGenerators,
    #[error("element is not a member of the group")]
    NotAMember,
    #[error("not a subgroup")]
    NotASubgroup,
    #[error("enumeration cap exceeded: group order {order} > cap {cap}")]
    CapacityExceeded { order: u128, cap: u128 },
    #[error("action is not transitive")]
    Intransitive,
    #[error("partition is not invariant under the group")]
    NotInvariant,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree budget exceeded: {0} points")]
    DegreeBudget(u64),
    #[error("matrix is singular")]
    Singular,
    #[error("no symmetric conjugator found")]
    NoSymmetricConjugator,
    #[error("subgroup is not core-free")]
    NotCoreFree,
    #[error("g^-1 not in KgK: coset adjacency would not be symmetric")]
    AsymmetricOrbital,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("normal subgroup is transitive; quotient undefined")]
    TransitiveNormalSubgroup,
    #[error("graph too large for this analysis: {n} vertices (cap {cap})")]
    GraphTooLarge { n: usize, cap: usize },
    #[error("unknown family or operation: {0}")]
    Unknown(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
