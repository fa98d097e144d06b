use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parts {0:?} are not weakly decreasing")]
    InvalidPartition(Vec<usize>),

    #[error("partition has {length} rows but at most {d} are allowed")]
    TooManyRows { length: usize, d: usize },

    #[error("alpha must be a positive number, got {0}")]
    InvalidAlpha(String),

    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },

    #[error("size guard exceeded: |P_{n}({d})| = {size} exceeds the limit {limit}")]
    SizeGuard {
        n: usize,
        d: usize,
        size: String,
        limit: u64,
    },

    #[error("N = {0} is odd; fixed-point-free involutions need an even size")]
    OddSize(usize),

    #[error("tableaux have different shapes {0} and {1}")]
    ShapeMismatch(String, String),

    #[error("not a standard tableau: {0}")]
    InvalidTableau(String),

    #[error("not a permutation of 1..N: {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("d = {d} is not supported here (supported: {supported})")]
    UnsupportedDimension { d: usize, supported: &'static str },

    #[error("marginal index {i} is outside 1..={d}")]
    MarginalIndex { i: usize, d: usize },

    #[error("point is not strictly decreasing: {0:?}")]
    NotStrictlyOrdered(Vec<f64>),

    #[error("{0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
