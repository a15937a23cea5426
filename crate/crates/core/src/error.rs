use thiserror::Error;

/// Error type shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A contraction map that does not satisfy the family invariants.
    #[error("invalid map: {0}")]
    InvalidMap(String),

    /// A system that cannot be constructed at all (as opposed to one that
    /// merely fails validation flags).
    #[error("invalid system: {0}")]
    InvalidSystem(String),

    /// A weight vector that is not a probability vector in (0,1)^k.
    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    /// Staircase refinement would need images to be disjoint.
    #[error("staircase refusal: open images overlap")]
    OverlappingImages,

    /// Adaptive refinement hit the configured cell cap.
    #[error("staircase refinement exceeded the cap of {cap} cells")]
    CellCapExceeded { cap: usize },

    /// A closed form was requested outside its hypotheses.
    #[error(transparent)]
    Hypothesis(#[from] HypothesisViolation),

    #[error("operation requires affine maps")]
    NonAffine,

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

/// The specific precondition a closed-form evaluator found violated.
///
/// These are data, not just failures: reports record which hypothesis broke
/// so that "does not apply" cases stay distinguishable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypothesisViolation {
    #[error("maps are not ordered left to right")]
    Ordering,
    #[error("open images are not pairwise disjoint")]
    DisjointImages,
    #[error("partial sums of weight differences change sign")]
    WeightDominance,
    #[error("system contains a decreasing map")]
    Positivity,
    #[error("strategy requires both measures to share one system")]
    SameSystemRequired,
    #[error("strategy requires the reflected two-map family (x/r, 1-x/r)")]
    ReflectedFamilyRequired,
    #[error("paired-system formula requires exactly two maps")]
    PairArity,
    #[error("paired systems must agree at the image left endpoints")]
    PairBaseMismatch,
    #[error("second system must lie pointwise at or below the first")]
    PairDomination,
    #[error("first weight of the dominated system must be at least as large")]
    PairWeightOrder,
    #[error("weights must be (1/(2k+1), 2k/(2k+1)) with the second vector reversed")]
    ReflectedWeightForm,
    #[error("signed-cost formula requires contraction ratio r >= 2k+1")]
    ReflectedContraction,
    #[error("systems are not a positive/reflected pair with a common ratio")]
    MirrorPairSystems,
    #[error("mirror-pair formula requires identical weight vectors")]
    MirrorPairWeights,
    #[error("plateau construction is proven only for weights 1/(2m+1)")]
    PlateauWeightFamily,
    #[error("power-law envelope requires min(p, 1-p) * r >= 1")]
    EnvelopeHypothesis,
}

pub type Result<T> = std::result::Result<T, Error>;
