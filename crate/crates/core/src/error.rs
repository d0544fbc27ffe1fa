use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("invalid quadrature grid: {0}")]
    InvalidGrid(String),

    /// The evaluation point lies on an interior atom, where `U_μ` is infinite.
    #[error("potential is singular at ({re}, {im})")]
    SingularPoint { re: f64, im: f64 },

    #[error("point ({re}, {im}) is not in the open unit disc")]
    OutsideDisc { re: f64, im: f64 },

    #[error("polynomial degree ({deg1}, {deg2}) exceeds Gram orders ({order1}, {order2})")]
    DegreeOutOfRange {
        deg1: usize,
        deg2: usize,
        order1: usize,
        order2: usize,
    },

    #[error("Gram matrix is inconsistent: {0}")]
    InconsistentGram(String),

    #[error("Gram matrix is ill-conditioned (condition estimate {condition:e})")]
    IllConditioned { condition: f64 },

    #[error("slice at lambda does not vanish (max |coefficient| {max_abs:e})")]
    SliceNotZero { max_abs: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
