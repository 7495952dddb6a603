use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("denominator vanishes at the requested point")]
    DenominatorVanishes,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("zero form has no pullback")]
    ZeroForm,
    #[error("orbit point {0} is undefined at this specialization")]
    UndefinedOrbitPoint(usize),
    #[error("bad index list: {0}")]
    BadIndexList(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("{what} = {value} exceeds the bound {bound}")]
    BoundExceeded { what: &'static str, value: usize, bound: usize },
    #[error("relation {index} does not vanish; residue {residue}")]
    RelationFailed { index: usize, residue: String },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("no affine chart contains the point")]
    NoChart,
    #[error("ambient line bundle has higher cohomology: {0}")]
    AmbientCohomology(String),
    #[error("curve {0} is not transverse to the fiber")]
    NotTransverse(usize),
    #[error("cokernel reaches the u-window boundary {0}")]
    WindowTooSmall(i64),
    #[error("overlap {word} does not resolve; difference {difference}")]
    UnresolvableOverlap { word: String, difference: String },
    #[error("reduction exceeded {0} steps")]
    NonTerminating(usize),
    #[error("unsupported parameter range: {0}")]
    RangeUnsupported(String),
    #[error("specialization rejected: {0}")]
    Guard(String),
    #[error("pullback cancelled a common factor: {0}")]
    NonStable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
