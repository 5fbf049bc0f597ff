use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // exact arithmetic
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("elements belong to different extensions")]
    MixedExtensions,
    #[error("division by the zero element")]
    DivisionByZeroElement,
    #[error("denominator vanishes at the substituted value")]
    PoleAtValue,
    #[error("function has a pole at the origin")]
    PoleAtOrigin,
    #[error("series division: valuation {valuation} exceeds truncation order {order}")]
    DivisionValuationExceedsOrder { valuation: usize, order: usize },
    #[error("quadratic extension degenerates: discriminant is a square")]
    ExtensionDegenerate,

    // model validation
    #[error("step ({0},{1}) is not a small step")]
    NotSmallSteps(i64, i64),
    #[error("degenerate step set: three consecutive zero weights in the cyclic order")]
    Degenerate,
    #[error("nonzero drift ({0}, {1})")]
    NonzeroDrift(String, String),
    #[error("negative weight on step ({0},{1})")]
    NegativeWeight(i64, i64),
    #[error("(y-1)^2 does not divide the discriminant")]
    DoubleRootMissing,
    #[error("group order exceeds cap {0}; infinite group suspected")]
    InfiniteGroupSuspected(usize),
    #[error("signed orbit sum does not vanish")]
    NonzeroOrbitSum,
    #[error("function has a pole on the orbit")]
    PoleOnOrbit,
    #[error("no conformal data for model {0}")]
    NoConformalData(String),
    #[error("conformal invariance check failed: {0}")]
    InvarianceCheckFailed(String),
    #[error("pole order of omega at 1 is {found}, expected {expected}")]
    PoleOrderMismatch { expected: u32, found: u32 },

    // discrete construction
    #[error("numerator is not divisible by the kernel")]
    KernelDivisionFailed,
    #[error("pole order {found} exceeds the bound {bound}")]
    PoleOrderExceeded { bound: u32, found: u32 },
    #[error("residual extension component: {0}")]
    ResidualExtensionComponent(String),
    #[error("Laplacian of the lifted function does not return its predecessor")]
    LaplacianMismatch,
    #[error("function has a pole on an axis")]
    AxisPole,
    #[error("model is not the simple walk")]
    NotSimpleWalk,
    #[error("function is not harmonic")]
    NotHarmonic,
    #[error("function is not polyharmonic of order {0}")]
    NotPolyharmonicOfOrder(u32),
    #[error("pi/theta is not an integer")]
    NonIntegerExponent,

    // grids
    #[error("window too small")]
    WindowTooSmall,

    // continuous side
    #[error("numerator is not divisible by gamma")]
    GammaDivisionFailed,
    #[error("complex residue in a coefficient that must be real")]
    ComplexResidue,
    #[error("decoupling ansatz is unsolvable")]
    AnsatzUnsolvable,
    #[error("denominator is not a monomial")]
    NonMonomialDenominator,
    #[error("degenerate covariance")]
    DegenerateCovariance,

    // limits
    #[error("valuation gap {found}, expected {expected}")]
    ExponentMismatch { expected: i64, found: i64 },
    #[error("limit is not proportional to the continuous transform")]
    NotProportional,
    #[error("no root assignment matches the expansion")]
    BranchAmbiguity,

    // counting
    #[error("count table too short: need at least {0} terms")]
    InsufficientLength(usize),
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),

    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown model {0:?}")]
    UnknownModel(String),
}
