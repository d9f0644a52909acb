use thiserror::Error;

/// Errors shared by the discrete and continuous engines.
///
/// Refutations (a tiling that fails at a witness point, a frequency pair
/// that is not orthogonal) are ordinary return values, not errors; only
/// contract violations end up here.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty set has no spectral theory here")]
    EmptySubset,

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("subset size {size} out of range 1..={order}")]
    SizeOutOfRange { size: u64, order: u64 },

    #[error("frequency {frequency} outside the dual group of order {order}")]
    FrequencyOutOfRange { frequency: u64, order: u64 },

    #[error("scan budget exceeded at subset size {size}: C({order},{size}) = {combinations} > {budget}")]
    BudgetExceeded {
        order: u64,
        size: u64,
        combinations: u128,
        budget: u128,
    },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("rational overflow while accumulating weights")]
    WeightOverflow,

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("use area")]
    OriginFrequency,

    #[error("singular basis matrix")]
    SingularBasis,

    #[error("degenerate pair: the two points coincide")]
    DegeneratePair,

    #[error("input set is not pairwise disk-orthogonal: |p{0} - p{1}| = {2} is not a zero radius")]
    NonOrthogonalSet(usize, usize, f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
