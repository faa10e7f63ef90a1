//! Euclidean and homogeneous vectors, small dense matrices, and the
//! cross-product machinery used by the line matrix.
//!
//! All matrices are stored row-major: `m[i][j]` is row `i`, column `j`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

fn all_finite(values: &[f64]) -> bool {
    values.iter().all(|v| v.is_finite())
}

/// A Euclidean 3-vector with finite components.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    x: f64,
    y: f64,
    z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !all_finite(&[x, y, z]) {
            return Err(Error::NonFinite("Vec3"));
        }
        Ok(Self { x, y, z })
    }

    /// Builds a vector without validation. Arithmetic on finite values
    /// stays in this representation.
    pub(crate) const fn raw(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn from_array(a: [f64; 3]) -> Result<Self> {
        Self::new(a[0], a[1], a[2])
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.x
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.y
    }

    #[inline]
    pub fn z(&self) -> f64 {
        self.z
    }

    #[inline]
    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn cross(self, other: Vec3) -> Vec3 {
        cross(self, other)
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Unit vector in the same direction, or `ZeroDirection` for the null vector.
    pub fn normalized(self) -> Result<Vec3> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroDirection);
        }
        Ok(self * (1.0 / n))
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    #[inline]
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::raw(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    #[inline]
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::raw(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    #[inline]
    fn neg(self) -> Vec3 {
        Vec3::raw(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, k: f64) -> Vec3 {
        Vec3::raw(self.x * k, self.y * k, self.z * k)
    }
}

/// Right-handed cross product `u × v`.
#[inline]
pub fn cross(u: Vec3, v: Vec3) -> Vec3 {
    Vec3::raw(
        u.y * v.z - u.z * v.y,
        u.z * v.x - u.x * v.z,
        u.x * v.y - u.y * v.x,
    )
}

/// The antisymmetric matrix `K` with `K·v = w × v`.
pub fn cross_matrix(w: Vec3) -> Mat3 {
    // upper triangle, mirrored with negation below the diagonal
    let k01 = -w.z;
    let k02 = w.y;
    let k12 = -w.x;
    Mat3 {
        m: [[0.0, k01, k02], [-k01, 0.0, k12], [-k02, -k12, 0.0]],
    }
}

/// A 3×3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3 {
    m: [[f64; 3]; 3],
}

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3 {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    pub fn new(rows: [[f64; 3]; 3]) -> Result<Self> {
        if !rows.iter().all(|r| all_finite(r)) {
            return Err(Error::NonFinite("Mat3"));
        }
        Ok(Self { m: rows })
    }

    /// Builds a matrix from 9 row-major entries.
    pub fn from_row_major(e: [f64; 9]) -> Result<Self> {
        Self::new([[e[0], e[1], e[2]], [e[3], e[4], e[5]], [e[6], e[7], e[8]]])
    }

    #[inline]
    pub fn rows(&self) -> [[f64; 3]; 3] {
        self.m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[i][j]
    }

    pub fn to_row_major(&self) -> [f64; 9] {
        let m = &self.m;
        [
            m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2],
        ]
    }

    #[inline]
    pub fn mul_vec(&self, v: Vec3) -> Vec3 {
        let m = &self.m;
        Vec3::raw(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    pub fn transpose(&self) -> Mat3 {
        let mut t = [[0.0; 3]; 3];
        for (i, row) in self.m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t[j][i] = *v;
            }
        }
        Mat3 { m: t }
    }

    pub fn compose(&self, other: &Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        Mat3 { m: out }
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// True when `MᵀM = I` entrywise within `tol` and `det M > 0`.
    pub fn is_rotation(&self, tol: f64) -> bool {
        let mtm = self.transpose().compose(self);
        let orthonormal = (0..3).all(|i| {
            (0..3).all(|j| {
                let expect = if i == j { 1.0 } else { 0.0 };
                (mtm.m[i][j] - expect).abs() <= tol
            })
        });
        orthonormal && self.determinant() > 0.0
    }
}

/// A 4×4 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4 {
    m: [[f64; 4]; 4],
}

impl Mat4 {
    pub const IDENTITY: Mat4 = Mat4 {
        m: [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
    };

    pub fn new(rows: [[f64; 4]; 4]) -> Result<Self> {
        if !rows.iter().all(|r| all_finite(r)) {
            return Err(Error::NonFinite("Mat4"));
        }
        Ok(Self { m: rows })
    }

    pub(crate) const fn raw(rows: [[f64; 4]; 4]) -> Self {
        Self { m: rows }
    }

    #[inline]
    pub fn rows(&self) -> [[f64; 4]; 4] {
        self.m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[i][j]
    }

    /// Embeds a 3×3 linear map with no translation.
    pub fn from_linear(l: &Mat3) -> Mat4 {
        let r = l.rows();
        Mat4::raw([
            [r[0][0], r[0][1], r[0][2], 0.0],
            [r[1][0], r[1][1], r[1][2], 0.0],
            [r[2][0], r[2][1], r[2][2], 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ])
    }

    /// World-to-local map of a rigid frame whose axes are the columns of
    /// `rotation` and whose origin sits at `origin`: `x ↦ Rᵀ(x − origin)`.
    pub fn rigid_world_to_local(rotation: &Mat3, origin: Vec3) -> Mat4 {
        Mat4::from_linear(&rotation.transpose()).compose(&translation(origin))
    }

    pub fn compose(&self, other: &Mat4) -> Mat4 {
        compose(self, other)
    }

    pub fn transpose(&self) -> Mat4 {
        transpose(self)
    }

    pub fn mul_vec(&self, v: [f64; 4]) -> [f64; 4] {
        mat_vec(self, v)
    }

    /// Inverse of a rigid transform `[L | t; 0 | 1]` with orthonormal `L`:
    /// `[Lᵀ | −Lᵀt; 0 | 1]`.
    pub fn rigid_inverse(&self) -> Mat4 {
        let m = &self.m;
        let mut out = [[0.0; 4]; 4];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = m[j][i];
            }
            out[i][3] = -(m[0][i] * m[0][3] + m[1][i] * m[1][3] + m[2][i] * m[2][3]);
        }
        out[3][3] = 1.0;
        Mat4::raw(out)
    }
}

/// The homogeneous translation moving `c` to the origin: identity with
/// fourth column `(−c, 1)`.
pub fn translation(c: Vec3) -> Mat4 {
    Mat4::raw([
        [1.0, 0.0, 0.0, -c.x],
        [0.0, 1.0, 0.0, -c.y],
        [0.0, 0.0, 1.0, -c.z],
        [0.0, 0.0, 0.0, 1.0],
    ])
}

/// Matrix product `a·b`.
pub fn compose(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut acc = 0.0;
            for k in 0..4 {
                acc += a.m[i][k] * b.m[k][j];
            }
            *cell = acc;
        }
    }
    Mat4::raw(out)
}

pub fn transpose(a: &Mat4) -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for (i, row) in a.m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            out[j][i] = *v;
        }
    }
    Mat4::raw(out)
}

pub fn mat_vec(a: &Mat4, v: [f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (o, row) in out.iter_mut().zip(a.m.iter()) {
        let mut acc = 0.0;
        for (r, x) in row.iter().zip(v.iter()) {
            acc += r * x;
        }
        *o = acc;
    }
    out
}

#[inline]
pub(crate) fn dot4(a: [f64; 4], b: [f64; 4]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

/// A proper projective point `[x, y, z, w]` with `w ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousPoint {
    x: f64,
    y: f64,
    z: f64,
    w: f64,
}

impl HomogeneousPoint {
    pub fn new(x: f64, y: f64, z: f64, w: f64) -> Result<Self> {
        if !all_finite(&[x, y, z, w]) {
            return Err(Error::NonFinite("HomogeneousPoint"));
        }
        if w == 0.0 {
            return Err(Error::PointAtInfinity);
        }
        Ok(Self { x, y, z, w })
    }

    pub fn from_array(a: [f64; 4]) -> Result<Self> {
        Self::new(a[0], a[1], a[2], a[3])
    }

    /// `[ξ; 1]`.
    pub fn from_euclidean(p: Vec3) -> Self {
        Self { x: p.x, y: p.y, z: p.z, w: 1.0 }
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.x, self.y, self.z, self.w]
    }

    /// The Euclidean part `ξ = (x, y, z)` without dividing by `w`.
    #[inline]
    pub fn xyz(self) -> Vec3 {
        Vec3::raw(self.x, self.y, self.z)
    }

    #[inline]
    pub fn w(self) -> f64 {
        self.w
    }

    /// The same projective point with every component multiplied by `k ≠ 0`.
    pub fn scaled(self, k: f64) -> Result<Self> {
        Self::new(self.x * k, self.y * k, self.z * k, self.w * k)
    }

    pub fn to_euclidean(self) -> Result<Vec3> {
        to_euclidean(self)
    }
}

/// `(x/w, y/w, z/w)`.
pub fn to_euclidean(p: HomogeneousPoint) -> Result<Vec3> {
    if p.w == 0.0 {
        return Err(Error::PointAtInfinity);
    }
    Vec3::new(p.x / p.w, p.y / p.w, p.z / p.w)
}

/// A line direction `[s_x, s_y, s_z, s_w]`; `s_w = 0` for Euclidean directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousDirection {
    sx: f64,
    sy: f64,
    sz: f64,
    sw: f64,
}

impl HomogeneousDirection {
    pub fn new(sx: f64, sy: f64, sz: f64, sw: f64) -> Result<Self> {
        if !all_finite(&[sx, sy, sz, sw]) {
            return Err(Error::NonFinite("HomogeneousDirection"));
        }
        if sx == 0.0 && sy == 0.0 && sz == 0.0 && sw == 0.0 {
            return Err(Error::ZeroDirection);
        }
        Ok(Self { sx, sy, sz, sw })
    }

    pub fn from_array(a: [f64; 4]) -> Result<Self> {
        Self::new(a[0], a[1], a[2], a[3])
    }

    /// `[σ; 0]`.
    pub fn from_euclidean(d: Vec3) -> Result<Self> {
        Self::new(d.x, d.y, d.z, 0.0)
    }

    /// `x_B − x_A`, componentwise including `w`.
    pub fn between(a: HomogeneousPoint, b: HomogeneousPoint) -> Result<Self> {
        Self::new(b.x - a.x, b.y - a.y, b.z - a.z, b.w - a.w)
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.sx, self.sy, self.sz, self.sw]
    }

    /// The Euclidean part `σ`.
    #[inline]
    pub fn xyz(self) -> Vec3 {
        Vec3::raw(self.sx, self.sy, self.sz)
    }

    #[inline]
    pub fn w(self) -> f64 {
        self.sw
    }

    pub fn scaled(self, k: f64) -> Result<Self> {
        Self::new(self.sx * k, self.sy * k, self.sz * k, self.sw * k)
    }

    pub fn reversed(self) -> Self {
        Self { sx: -self.sx, sy: -self.sy, sz: -self.sz, sw: -self.sw }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v(x: f64, y: f64, z: f64) -> Vec3 {
        Vec3::new(x, y, z).unwrap()
    }

    #[test]
    fn cross_basis_and_parallel() {
        assert_eq!(cross(v(1., 0., 0.), v(0., 1., 0.)), v(0., 0., 1.));
        assert_eq!(cross(v(2., 3., 4.), v(2., 3., 4.)), v(0., 0., 0.));
        assert_eq!(cross(v(-1., 0., 0.), v(2., 1., 0.)), v(0., 0., -1.));
        assert_eq!(cross_matrix(v(-1., 0., 0.)).mul_vec(v(2., 1., 0.)), v(0., 0., -1.));
    }

    #[test]
    fn cross_matrix_pattern() {
        assert_eq!(cross_matrix(Vec3::ZERO).rows(), [[0.0; 3]; 3]);
        assert_eq!(
            cross_matrix(v(1., 2., 3.)).rows(),
            [[0., -3., 2.], [3., 0., -1.], [-2., 1., 0.]]
        );
    }

    #[test]
    fn cross_matrix_matches_cross_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let w = v(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let u = v(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            // component formula written out independently
            let expect = [
                w.y() * u.z() - w.z() * u.y(),
                w.z() * u.x() - w.x() * u.z(),
                w.x() * u.y() - w.y() * u.x(),
            ];
            assert_eq!(cross(w, u).to_array(), expect);
            assert_eq!(cross_matrix(w).mul_vec(u).to_array(), expect);
        }
    }

    #[test]
    fn translation_moves_center_to_origin() {
        assert_eq!(translation(Vec3::ZERO), Mat4::IDENTITY);
        let t = translation(v(1., 2., 3.));
        assert_eq!(t.mul_vec([1., 2., 3., 1.]), [0., 0., 0., 1.]);
        let t = translation(v(5., 0., 0.));
        assert_eq!(t.mul_vec([1., 0., 0., 0.]), [1., 0., 0., 0.]);
    }

    #[test]
    fn matrix_plumbing() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut rows = [[0.0; 4]; 4];
        for r in rows.iter_mut() {
            for c in r.iter_mut() {
                *c = rng.gen_range(-3.0..3.0);
            }
        }
        let a = Mat4::new(rows).unwrap();
        assert_eq!(compose(&Mat4::IDENTITY, &a), a);
        assert_eq!(transpose(&transpose(&a)), a);
        let x = [rng.gen(), rng.gen(), rng.gen(), rng.gen::<f64>()];
        let mut naive = [0.0; 4];
        for i in 0..4 {
            for j in 0..4 {
                naive[i] += rows[i][j] * x[j];
            }
        }
        assert_eq!(mat_vec(&a, x), naive);
    }

    #[test]
    fn euclidean_from_homogeneous() {
        let p = |x, y, z, w| HomogeneousPoint::new(x, y, z, w).unwrap();
        assert_eq!(to_euclidean(p(2., 4., 6., 2.)).unwrap(), v(1., 2., 3.));
        assert_eq!(to_euclidean(p(1., 2., 3., 1.)).unwrap(), v(1., 2., 3.));
        assert_eq!(to_euclidean(p(-3., 0., 0., -1.)).unwrap(), v(3., 0., 0.));
    }

    #[test]
    fn constructors_reject_bad_input() {
        assert!(matches!(Vec3::new(f64::NAN, 0., 0.), Err(Error::NonFinite(_))));
        assert!(matches!(Vec3::new(0., f64::INFINITY, 0.), Err(Error::NonFinite(_))));
        assert_eq!(HomogeneousPoint::new(1., 2., 3., 0.), Err(Error::PointAtInfinity));
        assert_eq!(HomogeneousDirection::new(0., 0., 0., 0.), Err(Error::ZeroDirection));
        assert!(HomogeneousDirection::new(0., 0., 0., 1.).is_ok());
        assert!(Mat4::new([[f64::NAN; 4]; 4]).is_err());
    }

    #[test]
    fn rigid_inverse_undoes_transform() {
        let c = 0.6_f64;
        let s = 0.8_f64;
        let rot = Mat3::new([[c, -s, 0.], [s, c, 0.], [0., 0., 1.]]).unwrap();
        assert!(rot.is_rotation(1e-12));
        let t = Mat4::rigid_world_to_local(&rot, v(1., -2., 3.));
        let id = t.compose(&t.rigid_inverse());
        for i in 0..4 {
            for j in 0..4 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((id.get(i, j) - e).abs() < 1e-15);
            }
        }
    }

    fn finite() -> impl Strategy<Value = f64> {
        -1e3..1e3f64
    }

    proptest! {
        #[test]
        fn cross_is_orthogonal(a in prop::array::uniform3(finite()), b in prop::array::uniform3(finite())) {
            let u = Vec3::from_array(a).unwrap();
            let w = Vec3::from_array(b).unwrap();
            let c = cross(u, w);
            let bound = 1e-12 * u.norm() * w.norm() * c.norm().max(1.0);
            prop_assert!(c.dot(u).abs() <= bound);
            prop_assert!(c.dot(w).abs() <= bound);
        }

        #[test]
        fn cross_matrix_is_antisymmetric(a in prop::array::uniform3(finite())) {
            let k = cross_matrix(Vec3::from_array(a).unwrap());
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert_eq!(k.get(i, j), -k.get(j, i));
                }
            }
        }

        #[test]
        fn translation_inverse_is_exact(a in prop::array::uniform3(finite())) {
            let c = Vec3::from_array(a).unwrap();
            prop_assert_eq!(compose(&translation(c), &translation(-c)), Mat4::IDENTITY);
        }

        #[test]
        fn euclidean_is_scale_invariant(a in prop::array::uniform3(finite()), w in 0.1..10.0f64, e in -20i32..20, lam in 0.01..100.0f64) {
            let p = HomogeneousPoint::new(a[0], a[1], a[2], w).unwrap();
            let base = to_euclidean(p).unwrap();
            let pow2 = to_euclidean(p.scaled(2f64.powi(e)).unwrap()).unwrap();
            prop_assert_eq!(base, pow2);
            let other = to_euclidean(p.scaled(lam).unwrap()).unwrap();
            for (x, y) in base.to_array().iter().zip(other.to_array()) {
                prop_assert!((x - y).abs() <= 1e-14 * x.abs());
            }
        }
    }
}
