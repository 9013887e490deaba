use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("quadrature order {order} outside 1..={max}")]
    QuadratureOrder { order: usize, max: usize },

    #[error(
        "quadrature order {order} cannot resolve basis index {max_index} (need order >= {needed})"
    )]
    UnderResolved {
        order: usize,
        max_index: usize,
        needed: usize,
    },

    #[error("function returned non-finite value {value} at x = {x}")]
    NonFiniteEval { x: f64, value: f64 },

    #[error("|z| = {modulus} is outside the open unit disc")]
    OutsideDisc { modulus: f64 },

    #[error("abscissa p = {p} at index {index} must exceed 1/2")]
    AbscissaTooSmall { index: usize, p: f64 },

    #[error("abscissa p = {p} at index {index} duplicates index {first}")]
    DuplicateAbscissa { index: usize, first: usize, p: f64 },

    #[error("node alpha = {alpha} at index {index} lies outside the band |alpha| <= {sigma}")]
    OutOfBand {
        index: usize,
        alpha: f64,
        sigma: f64,
    },

    #[error("value at index {index} is not finite")]
    NonFiniteValue { index: usize },

    #[error("length mismatch: {points} points but {values} values")]
    LengthMismatch { points: usize, values: usize },

    #[error("sigma = {0} must lie in (0, 1/3)")]
    SigmaRange(f64),

    #[error("theta = {theta} must lie in (0, theta0 = {theta0})")]
    ThetaRange { theta: f64, theta0: f64 },

    #[error("truncation fraction theta = {0} must lie in (0, 1)")]
    TruncationFraction(f64),

    #[error("rho0 = {0} must be at least 1")]
    ShiftRange(f64),

    #[error("noise level eps = {0} must be positive")]
    NoiseLevel(f64),

    #[error("interpolation order m = {m} needs at least {m} samples, have {available}")]
    NotEnoughSamples { m: usize, available: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("nodes {first} and {second} coincide (values {value})")]
    DuplicateNode {
        first: usize,
        second: usize,
        value: f64,
    },

    #[error("index {index} out of range for {len} nodes")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("grid size {0} is below the minimum of 256")]
    GridTooCoarse(usize),

    #[error("radius R = {radius} must exceed max |alpha| = {max_node}")]
    RadiusTooSmall { radius: f64, max_node: f64 },

    #[error("coefficient {index} is not finite")]
    NonFiniteCoefficient { index: usize },

    #[error("sample file, record {record}: {message}")]
    SampleFormat { record: usize, message: String },

    #[error("i/o: {0}")]
    Io(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
