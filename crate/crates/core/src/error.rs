//! Shared error type for the geometry layer.

use crate::tensor::TensorError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("point {point:?} lies outside the chart bounds")]
    OutOfChart { point: Vec<f64> },
    #[error("finite-difference stencil leaves the chart on axis {axis} at {coord}")]
    StencilOutOfChart { axis: usize, coord: f64 },
    #[error("jet order {0} unsupported (maximum is 2)")]
    OrderUnsupported(u8),
    #[error("metric is singular at the evaluated point")]
    SingularMetric,
    #[error("metric is not positive-definite at the evaluated point")]
    MetricNotPositiveDefinite,
    #[error("metric is not symmetric at the evaluated point (residual {0:.3e})")]
    MetricNotSymmetric(f64),
    #[error("jet of the required order is unavailable")]
    JetUnavailable,
    #[error("check requires dimension >= {required}, manifold has {got}")]
    DimensionTooSmall { required: usize, got: usize },
    #[error("plane is degenerate (Gram determinant below threshold)")]
    DegeneratePlane,
}
