//! Line–quadric and line–sphere intersection kernels.
//!
//! Two routes to the same discriminant are provided:
//!
//! * [`classical`] forms `a = sᵀQs`, `b = sᵀQx_A`, `c = x_AᵀQx_A` and
//!   evaluates `D = b² − ac`.
//! * [`separated`] precomputes the antisymmetric line matrix
//!   `R = x_A ⊗ s − s ⊗ x_A` once per ray and evaluates
//!   `D = sᵀQᵀRQx_A`, with a sphere fast path built on the cached
//!   `σ × ξ_A`.
//!
//! All values are plain `Copy` data and every kernel is a pure function,
//! so a ray cache can be shared freely across threads.

pub mod classical;
pub mod error;
pub mod geometry;
pub mod quadric;
pub mod separated;

pub use classical::{
    coefficients, detect_classical, intersect_classical, solve, IntersectionResult,
    QuadraticCoeffs,
};
pub use error::{Error, Result};
pub use geometry::{HomogeneousDirection, HomogeneousPoint, Mat3, Mat4, Vec3};
pub use quadric::{evaluate, transform, QuadricKind, QuadricMatrix};
pub use separated::{
    discriminant_separated, intersect_separated, r_from_point_dir, r_from_subdeterminants,
    r_from_two_points, sphere_discriminant, sphere_discriminant_projective, MMatrix, RMatrix,
    RayCache,
};
