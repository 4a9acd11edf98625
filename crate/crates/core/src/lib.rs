//! Numerical differential geometry for semi-symmetric non-metric connections.
//!
//! The crate builds, on chart-defined Riemannian manifolds, the connection
//! pair Gamma^k_ij = {k,ij} +/- (d^k_i phi_j + g_ij phi^k) together with
//! Levi-Civita, computes their torsion, metric incompatibility and curvature,
//! and verifies the identities these objects satisfy (curvature
//! decompositions, the shared Weyl relation, cyclic-sum consequences of a
//! closed one-form, the torsion-corrected second Bianchi identity, the Schur
//! constancy argument, the constant-curvature equivalences and the conformal
//! transformation laws) as residual checks over sampled points.
//!
//! Derivatives come either from analytic jets carried by the catalog fields
//! or from central-difference stencils, which double as an independent oracle
//! for the analytic path.

pub mod catalog;
pub mod conformal;
pub mod connection;
pub mod curvature;
pub mod error;
pub mod exec;
pub mod fields;
pub mod manifold;
pub mod suite;
pub mod tensor;

pub use catalog::{ManifoldParams, PhiMode, SigmaMode};
pub use conformal::ConformalFactor;
pub use connection::{ConnectionCoeffs, ConnectionKind};
pub use curvature::{CurvatureBundle, PlaneSpec, SchurOptions};
pub use error::GeomError;
pub use exec::Parallelism;
pub use fields::{Jet, JetMode, TensorField};
pub use manifold::{ChartManifold, PointGeometry, SamplePlan};
pub use suite::{
    list_checks, run_suite, CheckRecord, ConfigError, ManifoldConfig, SuiteConfig,
    VerificationReport,
};
pub use tensor::{Slot, Tensor, TensorError};
