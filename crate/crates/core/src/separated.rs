//! Separated discriminant: `D = sᵀQᵀ R Q x_A` with the per-line
//! antisymmetric matrix `R = x_A ⊗ s − s ⊗ x_A`.
//!
//! `R` depends only on the line and `Q` only on the surface, so a ray can
//! build `R` once and test it against any number of quadrics with two
//! matrix-vector products and one antisymmetric bilinear form. For spheres
//! the same identity collapses to
//!
//! ```text
//! D = r²·(σ·σ) − |σ × δ_A|²,   σ × δ_A = (σ × ξ_A) − (σ × c)
//! ```
//!
//! where `σ × ξ_A` and `σ·σ` are cached per ray.

use crate::classical::{self, CoeffScales, IntersectionResult, QuadraticCoeffs, EPS_TANGENT};
use crate::error::{Error, Result};
use crate::geometry::{cross, cross_matrix, dot4, HomogeneousDirection, HomogeneousPoint, Mat3, Mat4, Vec3};
use crate::quadric::QuadricMatrix;

/// Relative size under which all six line coordinates count as zero.
const DEGENERATE_LINE_EPS: f64 = 8.0 * f64::EPSILON;

/// An antisymmetric 4×4 matrix with null diagonal, stored as its six
/// upper-triangle entries (Plücker-style line coordinates).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RMatrix {
    r12: f64,
    r13: f64,
    r14: f64,
    r23: f64,
    r24: f64,
    r34: f64,
}

impl RMatrix {
    /// Upper-triangle entries in the order `r₁₂ r₁₃ r₁₄ r₂₃ r₂₄ r₃₄`.
    pub fn entries(&self) -> [f64; 6] {
        [self.r12, self.r13, self.r14, self.r23, self.r24, self.r34]
    }

    /// Entry `(i, j)`, zero-based.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let v = |i, j| match (i, j) {
            (0, 1) => self.r12,
            (0, 2) => self.r13,
            (0, 3) => self.r14,
            (1, 2) => self.r23,
            (1, 3) => self.r24,
            (2, 3) => self.r34,
            _ => panic!("R index out of range: ({i}, {j})"),
        };
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => 0.0,
            std::cmp::Ordering::Less => v(i, j),
            std::cmp::Ordering::Greater => -v(j, i),
        }
    }

    pub fn to_mat4(&self) -> Mat4 {
        let mut rows = [[0.0; 4]; 4];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.get(i, j);
            }
        }
        Mat4::raw(rows)
    }

    /// The upper-left 3×3 block `B`.
    pub fn b_block(&self) -> Mat3 {
        let mut rows = [[0.0; 3]; 3];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.get(i, j);
            }
        }
        Mat3::new(rows).expect("finite")
    }

    /// `(r₁₄, r₂₄, r₃₄)`; equals `−σ` for a Euclidean ray.
    pub fn last_column(&self) -> Vec3 {
        Vec3::raw(self.r14, self.r24, self.r34)
    }

    /// `uᵀ R v = Σ_{i<j} r_ij (u_i v_j − u_j v_i)`.
    #[inline]
    pub fn form(&self, u: [f64; 4], v: [f64; 4]) -> f64 {
        self.r12 * (u[0] * v[1] - u[1] * v[0])
            + self.r13 * (u[0] * v[2] - u[2] * v[0])
            + self.r14 * (u[0] * v[3] - u[3] * v[0])
            + self.r23 * (u[1] * v[2] - u[2] * v[1])
            + self.r24 * (u[1] * v[3] - u[3] * v[1])
            + self.r34 * (u[2] * v[3] - u[3] * v[2])
    }

    fn is_negligible(&self, scale: f64) -> bool {
        let tol = DEGENERATE_LINE_EPS * scale;
        self.entries().iter().all(|r| r.abs() <= tol)
    }

    fn negated(&self) -> RMatrix {
        RMatrix {
            r12: -self.r12,
            r13: -self.r13,
            r14: -self.r14,
            r23: -self.r23,
            r24: -self.r24,
            r34: -self.r34,
        }
    }
}

fn norm4(v: [f64; 4]) -> f64 {
    dot4(v, v).sqrt()
}

#[inline]
fn outer_difference(x: [f64; 4], s: [f64; 4]) -> RMatrix {
    let r = |i: usize, j: usize| x[i] * s[j] - s[i] * x[j];
    RMatrix {
        r12: r(0, 1),
        r13: r(0, 2),
        r14: r(0, 3),
        r23: r(1, 2),
        r24: r(1, 3),
        r34: r(2, 3),
    }
}

/// `R = x_A ⊗ s − s ⊗ x_A`, i.e. `r_ij = x_i s_j − s_i x_j`.
pub fn r_from_point_dir(x_a: HomogeneousPoint, s: HomogeneousDirection) -> RMatrix {
    outer_difference(x_a.to_array(), s.to_array())
}

/// `R` for the line through `x_A` and `x_B`, using `s = x_B − x_A`.
pub fn r_from_two_points(x_a: HomogeneousPoint, x_b: HomogeneousPoint) -> Result<RMatrix> {
    r_from_subdeterminants(&MMatrix::from_points(x_a, x_b))
}

/// The 2×4 matrix whose rows are two homogeneous points of a line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MMatrix {
    rows: [[f64; 4]; 2],
}

impl MMatrix {
    pub fn new(row_a: [f64; 4], row_b: [f64; 4]) -> Result<Self> {
        if !row_a.iter().chain(row_b.iter()).all(|v| v.is_finite()) {
            return Err(Error::NonFinite("MMatrix"));
        }
        Ok(Self { rows: [row_a, row_b] })
    }

    pub fn from_points(a: HomogeneousPoint, b: HomogeneousPoint) -> Self {
        Self { rows: [a.to_array(), b.to_array()] }
    }

    pub fn rows(&self) -> [[f64; 4]; 2] {
        self.rows
    }
}

/// `R` from the 2×2 minors of `M`: `r_ij = det[[a_i, a_j], [b_i, b_j]]`.
///
/// The minors are taken after the determinant-preserving row operation
/// `b ← b − a`, so each entry is evaluated as `a_i (b−a)_j − (b−a)_i a_j`,
/// the same expression [`r_from_point_dir`] uses with `s = x_B − x_A`.
pub fn r_from_subdeterminants(m: &MMatrix) -> Result<RMatrix> {
    let [a, b] = m.rows;
    let d = [b[0] - a[0], b[1] - a[1], b[2] - a[2], b[3] - a[3]];
    let r = outer_difference(a, d);
    if r.is_negligible(norm4(a) * norm4(d)) {
        return Err(Error::DegenerateLine);
    }
    Ok(r)
}

/// Everything about a ray that does not depend on the surface it is
/// tested against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayCache {
    x_a: HomogeneousPoint,
    s: HomogeneousDirection,
    sigma: Vec3,
    xi: Vec3,
    w_a: f64,
    s_w: f64,
    /// `σ × ξ_A`
    n: Vec3,
    /// `σ · σ`
    sigma_sq: f64,
    r: RMatrix,
}

impl RayCache {
    pub fn new(x_a: HomogeneousPoint, s: HomogeneousDirection) -> Result<Self> {
        let sigma = s.xyz();
        if sigma == Vec3::ZERO {
            return Err(Error::DegenerateLine);
        }
        let r = r_from_point_dir(x_a, s);
        if r.is_negligible(norm4(x_a.to_array()) * norm4(s.to_array())) {
            return Err(Error::DegenerateLine);
        }
        let xi = x_a.xyz();
        Ok(Self {
            x_a,
            s,
            sigma,
            xi,
            w_a: x_a.w(),
            s_w: s.w(),
            n: cross(sigma, xi),
            sigma_sq: sigma.dot(sigma),
            r,
        })
    }

    /// Cache for the Euclidean ray `origin + t·dir`.
    pub fn euclidean(origin: Vec3, dir: Vec3) -> Result<Self> {
        Self::new(HomogeneousPoint::from_euclidean(origin), HomogeneousDirection::from_euclidean(dir)?)
    }

    pub fn point(&self) -> HomogeneousPoint {
        self.x_a
    }

    pub fn direction(&self) -> HomogeneousDirection {
        self.s
    }

    /// `σ`
    pub fn sigma(&self) -> Vec3 {
        self.sigma
    }

    /// `ξ_A`
    pub fn xi(&self) -> Vec3 {
        self.xi
    }

    pub fn w_a(&self) -> f64 {
        self.w_a
    }

    pub fn s_w(&self) -> f64 {
        self.s_w
    }

    /// The per-ray cross product `σ × ξ_A`.
    pub fn moment(&self) -> Vec3 {
        self.n
    }

    pub fn sigma_sq(&self) -> f64 {
        self.sigma_sq
    }

    pub fn r(&self) -> &RMatrix {
        &self.r
    }

    /// `w_A = 1` and `s_w = 0`.
    pub fn is_euclidean(&self) -> bool {
        self.w_a == 1.0 && self.s_w == 0.0
    }

    /// The same line with `R` negated; only for mutation checks of the
    /// oracle harness.
    #[doc(hidden)]
    pub fn with_flipped_r(mut self) -> Self {
        self.r = self.r.negated();
        self
    }
}

/// `D = sᵀQᵀRQx_A`, evaluated as `u = Q·s`, `v = Q·x_A`, then `uᵀRv`.
#[inline]
pub fn discriminant_separated(q: &QuadricMatrix, cache: &RayCache) -> f64 {
    let u = q.mul_vec(cache.s.to_array());
    let v = q.mul_vec(cache.x_a.to_array());
    cache.r.form(u, v)
}

/// Detection only: true when `D ≥ 0`.
#[inline]
pub fn detect_separated(q: &QuadricMatrix, cache: &RayCache) -> bool {
    discriminant_separated(q, cache) >= 0.0
}

/// Full intersection with a separated discriminant.
///
/// A clear miss returns before any root work. Otherwise the classical
/// coefficients are formed and classified exactly as
/// [`classical::intersect_classical`] does, using the separated `D`.
pub fn intersect_separated(q: &QuadricMatrix, cache: &RayCache) -> IntersectionResult {
    let s = cache.s.to_array();
    let x = cache.x_a.to_array();
    let u = q.mul_vec(s);
    let v = q.mul_vec(x);
    let d = cache.r.form(u, v);
    // u and v already hold a, b, c up to rounding; enough to size the band
    let rough = QuadraticCoeffs::new(dot4(s, u), dot4(s, v), dot4(x, v));
    let scales = CoeffScales::for_line(q, cache.x_a, cache.s);
    let linear = rough.a.abs() <= classical::EPS_LINEAR * scales.a;
    if !linear && d < -EPS_TANGENT * rough.discriminant_scale() {
        return IntersectionResult::Miss { d };
    }
    let coeffs = classical::coefficients(q, cache.x_a, cache.s);
    classical::solve_with_discriminant(coeffs, d, scales)
}

fn check_radius(r: f64) -> Result<f64> {
    if r.is_finite() && r > 0.0 {
        Ok(r)
    } else {
        Err(Error::NonPositive { name: "radius", value: r })
    }
}

/// Sphere fast path for a Euclidean ray cache:
/// `D = r²(σ·σ) − |m|²` with `m = (σ × ξ_A) − (σ × c) = σ × δ_A`.
///
/// Per sphere this is one cross product, one subtraction, and two dot
/// products.
#[inline]
pub fn sphere_discriminant(center: Vec3, r: f64, cache: &RayCache) -> Result<f64> {
    let r = check_radius(r)?;
    if !cache.is_euclidean() {
        return Err(Error::NotEuclidean);
    }
    Ok(sphere_discriminant_unchecked(center, r * r, cache))
}

/// [`sphere_discriminant`] without the argument checks; `r_sq` is `r²`.
#[inline(always)]
pub fn sphere_discriminant_unchecked(center: Vec3, r_sq: f64, cache: &RayCache) -> f64 {
    let m = cache.n - cross(cache.sigma, center);
    r_sq * cache.sigma_sq - m.dot(m)
}

/// Quadratic coefficients of a homogeneous line against the sphere
/// `|X − c|² = r²`, formed without dividing by any `w`:
///
/// ```text
/// σ' = σ − s_w c,   δ = ξ_A − w_A c
/// a' = σ'·σ' − r² s_w²,  b' = σ'·δ − r² s_w w_A,  c' = δ·δ − r² w_A²
/// ```
///
/// These equal the classical coefficients for `TᵀQ₀T` applied to the
/// homogeneous `x_A` and `s`.
pub fn sphere_coefficients_projective(
    center: Vec3,
    r: f64,
    x_a: HomogeneousPoint,
    s: HomogeneousDirection,
) -> Result<QuadraticCoeffs> {
    let r = check_radius(r)?;
    let (w_a, s_w) = (x_a.w(), s.w());
    if w_a == 0.0 {
        return Err(Error::PointAtInfinity);
    }
    let r_sq = r * r;
    // multiplications and subtractions only; no division on this path
    let sigma_p = s.xyz() - center * s_w;
    let delta = x_a.xyz() - center * w_a;
    Ok(QuadraticCoeffs {
        a: sigma_p.dot(sigma_p) - r_sq * s_w * s_w,
        b: sigma_p.dot(delta) - r_sq * s_w * w_a,
        c: delta.dot(delta) - r_sq * w_a * w_a,
    })
}

/// Division-free sphere discriminant for projective lines.
///
/// With `ℓ = s_w ξ_A − w_A σ` (the last column of `R`) and
/// `n = σ × ξ_A` (its `B` block), the discriminant is
///
/// ```text
/// D' = r²|ℓ|² − |n + ℓ × c|²
/// ```
///
/// which equals `b'² − a'c'` from [`sphere_coefficients_projective`] and
/// `w_A²·D` of the normalized Euclidean ray when `s_w = 0`. For
/// `w_A = 1, s_w = 0` it performs the same operations as
/// [`sphere_discriminant`]. Its sign matches the Euclidean classification
/// for any `w_A ≠ 0` and any `s_w`.
pub fn sphere_discriminant_projective(
    center: Vec3,
    r: f64,
    x_a: HomogeneousPoint,
    s: HomogeneousDirection,
) -> Result<f64> {
    let r = check_radius(r)?;
    if x_a.w() == 0.0 {
        return Err(Error::PointAtInfinity);
    }
    // audit: products, sums and differences only; no division on this path
    let sigma = s.xyz();
    let xi = x_a.xyz();
    let ell = xi * s.w() - sigma * x_a.w();
    let m = cross(sigma, xi) + cross(ell, center);
    Ok(r * r * ell.dot(ell) - m.dot(m))
}

/// The `B` block of a Euclidean ray's `R` as the cross-product matrix
/// of `σ × ξ_A`.
pub fn b_block_from_moment(cache: &RayCache) -> Mat3 {
    cross_matrix(cache.n)
}
