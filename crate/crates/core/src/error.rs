use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series precision must be at least 1")]
    ZeroPrecision,
    #[error("linear combination needs at least one term")]
    EmptyCombination,
    #[error("cannot invert a series with zero constant term")]
    ZeroConstantTerm,
    #[error("coefficient q^{index} requested but series is only known mod q^{prec}")]
    PrecisionExceeded { index: usize, prec: usize },
    #[error("prefactor power {0} is negative; result would not be a power series")]
    NegativePrefactor(i64),
    #[error("Eisenstein series of weight {0} is not supported (use 2, 4, 6, 8 or 10)")]
    UnsupportedWeight(u32),
    #[error("weight {0} is not a valid quasi-modular weight (must be even)")]
    OddWeight(u32),
    #[error("monomial E2^{}E4^{}E6^{} does not have weight {weight}", .exponents.0, .exponents.1, .exponents.2)]
    WeightMismatch { weight: u32, exponents: (u32, u32, u32) },
    #[error("series is not in the span of weight-{weight} monomials (residual at q^{index})")]
    NotInRing { weight: u32, index: usize },
    #[error("precision {got} is too low, need at least {required}")]
    InsufficientPrecision { required: usize, got: usize },
    #[error("unknown lattice `{0}`")]
    UnknownLattice(String),
    #[error("invalid Gram matrix: {0}")]
    InvalidGram(String),
    #[error("lattice is not positive definite")]
    NotPositiveDefinite,
    #[error("lattice is not even; theta series would have half-integral exponents")]
    OddLattice,
    #[error("norm bound {0} must be a nonnegative even integer")]
    OddNormBound(i64),
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("unknown root system `{0}`")]
    UnknownRootSystem(String),
    #[error("root system is not irreducible")]
    NotIrreducible,
    #[error("root generation did not close within {0} steps")]
    RootGenerationDiverged(usize),
    #[error("divisor classes live on different surfaces")]
    ContextMismatch,
    #[error("exceptional index {index} out of range for {b} blow-ups")]
    ExceptionalIndex { index: usize, b: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("curve count r_X({0}) is not an integer")]
    NonIntegralCount(usize),
    #[error("malformed input: {0}")]
    Parse(String),
}
