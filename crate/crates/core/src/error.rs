use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by bound computations and the field oracle.
///
/// Counting arithmetic is done in 64-bit integers with explicit checks;
/// overflow is always reported, never wrapped.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent vector has length {exponents}, set-size vector has length {set_sizes}; both must have the same nonzero length")]
    DimensionMismatch { exponents: usize, set_sizes: usize },

    #[error("multiplicity target must lie in 1..={max}, got {got}")]
    InvalidMultiplicity { got: u32, max: u32 },

    #[error("every set size must be at least 1")]
    EmptySet,

    #[error("count arithmetic overflowed the 64-bit range")]
    Overflow,

    #[error("all exponents are zero; nothing to strip")]
    AllExponentsZero,

    #[error("the two-variable closed form applies only to two variables, got {0}")]
    NotTwoVariables(usize),

    #[error("condition A is defined only for two or more variables, got {0}")]
    ConditionANeedsTwoVariables(usize),

    #[error("condition A does not hold for this query")]
    ConditionAViolated,

    #[error("exponent {exponent} exceeds set size {set_size} at variable {variable}")]
    ExponentExceedsSetSize {
        variable: usize,
        exponent: u32,
        set_size: u32,
    },

    #[error("multiplicity level k={k} must lie in 1..={r}")]
    InvalidLevel { k: u32, r: u32 },

    #[error("assignment for variable {variable} places {roots} roots but the set only has {set_size} elements")]
    TooManyRoots {
        variable: usize,
        roots: u64,
        set_size: u64,
    },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("the zero polynomial has no leading monomial")]
    ZeroPolynomial,

    #[error("expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("operands live over different fields ({left} vs {right})")]
    FieldMismatch { left: u64, right: u64 },

    #[error("set {variable} needs {needed} distinct field elements, got {got}")]
    NotEnoughElements {
        variable: usize,
        needed: usize,
        got: usize,
    },

    #[error("set {variable} contains a repeated element")]
    RepeatedElement { variable: usize },

    #[error("leading monomial must lie inside the support cap")]
    LeadingMonomialOutsideCap,

    #[error("total degree d={d} must be smaller than q*r={qr}")]
    DegreeOutOfRange { d: u64, qr: u64 },

    #[error("the dimension-count comparison needs a field size of at least 2, got {0}")]
    FieldTooSmall(u64),

    #[error("parameter {name}={got} exceeds the supported limit {max}")]
    ParameterTooLarge {
        name: &'static str,
        got: u64,
        max: u64,
    },
}
