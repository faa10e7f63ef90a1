use thiserror::Error;

/// Errors raised when constructing kernel values.
///
/// Intersection kernels themselves never fail; every check happens when a
/// point, direction, quadric or ray cache is built.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite component in {0}")]
    NonFinite(&'static str),
    #[error("point at infinity (w = 0)")]
    PointAtInfinity,
    #[error("zero direction")]
    ZeroDirection,
    #[error("degenerate line")]
    DegenerateLine,
    #[error("non-positive {name}: {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("zero quadric")]
    ZeroQuadric,
    #[error("ray cache is not Euclidean (w_A = 1, s_w = 0 required)")]
    NotEuclidean,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
