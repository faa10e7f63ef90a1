//! Line–quadric intersection from the quadratic coefficients.
//!
//! Substituting `x(t) = x_A + t·s` into `xᵀQx = 0` gives
//! `a·t² + 2b·t + c = 0` with `a = sᵀQs`, `b = sᵀQx_A`, `c = x_AᵀQx_A`
//! and discriminant `D = b² − ac`. This module is the baseline the
//! separated formulation is checked against.

use crate::geometry::{HomogeneousDirection, HomogeneousPoint};
use crate::quadric::QuadricMatrix;

/// Relative threshold below which `a` is treated as zero and the
/// equation as linear.
pub const EPS_LINEAR: f64 = 1e-12;

/// Relative threshold on `|D|` for the tangent classification.
pub const EPS_TANGENT: f64 = 1e-10;

/// Coefficients of `a·t² + 2b·t + c = 0` (half-b convention).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl QuadraticCoeffs {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    /// `b² − ac`.
    #[inline]
    pub fn discriminant(&self) -> f64 {
        self.b * self.b - self.a * self.c
    }

    /// Magnitude of the two products whose difference is `D`.
    #[inline]
    pub fn discriminant_scale(&self) -> f64 {
        (self.b * self.b).max((self.a * self.c).abs())
    }

    pub fn max_abs(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs())
    }
}

/// Outcome of intersecting a line with a quadric.
///
/// Parameters are along the full line; no `t ≥ 0` filtering is applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntersectionResult {
    Miss { d: f64 },
    Tangent { t: f64, d: f64 },
    /// Two distinct roots, `t1 ≤ t2`.
    Two { t1: f64, t2: f64, d: f64 },
    /// `a ≈ 0`: the equation degenerates to `2b·t + c = 0`.
    LinearHit { t: f64 },
    /// `a ≈ 0` and `b ≈ 0`.
    Degenerate,
}

impl IntersectionResult {
    /// The reported discriminant, when the quadratic case applies.
    pub fn discriminant(&self) -> Option<f64> {
        match *self {
            IntersectionResult::Miss { d }
            | IntersectionResult::Tangent { d, .. }
            | IntersectionResult::Two { d, .. } => Some(d),
            _ => None,
        }
    }

    /// Line parameters of the intersection points, ascending.
    pub fn roots(&self) -> Vec<f64> {
        match *self {
            IntersectionResult::Tangent { t, .. } | IntersectionResult::LinearHit { t } => vec![t],
            IntersectionResult::Two { t1, t2, .. } => vec![t1, t2],
            IntersectionResult::Miss { .. } | IntersectionResult::Degenerate => Vec::new(),
        }
    }

    /// Smallest root strictly greater than `t_min`.
    pub fn nearest_after(&self, t_min: f64) -> Option<f64> {
        self.roots().into_iter().find(|t| *t > t_min)
    }

    pub fn is_hit(&self) -> bool {
        !matches!(self, IntersectionResult::Miss { .. } | IntersectionResult::Degenerate)
    }

    /// Variant name, for reports.
    pub fn label(&self) -> &'static str {
        match self {
            IntersectionResult::Miss { .. } => "miss",
            IntersectionResult::Tangent { .. } => "tangent",
            IntersectionResult::Two { .. } => "two",
            IntersectionResult::LinearHit { .. } => "linear",
            IntersectionResult::Degenerate => "degenerate",
        }
    }
}

/// Magnitudes that `a` and `b` are compared against when deciding the
/// linear degeneration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffScales {
    pub a: f64,
    pub b: f64,
}

impl CoeffScales {
    /// `‖Q‖·‖s‖²` and `‖Q‖·‖s‖·‖x_A‖`.
    pub fn for_line(q: &QuadricMatrix, x_a: HomogeneousPoint, s: HomogeneousDirection) -> Self {
        let qn = q.max_abs();
        let sn = norm4(s.to_array());
        let xn = norm4(x_a.to_array());
        Self { a: qn * sn * sn, b: qn * sn * xn }
    }

    fn from_coeffs(c: &QuadraticCoeffs) -> Self {
        let m = c.max_abs();
        Self { a: m, b: m }
    }
}

fn norm4(v: [f64; 4]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `a = sᵀQs`, `b = sᵀQx_A`, `c = x_AᵀQx_A`, each through the
/// 10-coefficient expansion.
pub fn coefficients(
    q: &QuadricMatrix,
    x_a: HomogeneousPoint,
    s: HomogeneousDirection,
) -> QuadraticCoeffs {
    let x = x_a.to_array();
    let s = s.to_array();
    QuadraticCoeffs {
        a: q.quadratic_form(s),
        b: q.bilinear(s, x),
        c: q.quadratic_form(x),
    }
}

/// Classifies and solves `a·t² + 2b·t + c = 0`, scaling the degeneracy
/// thresholds by the coefficients themselves.
pub fn solve(coeffs: QuadraticCoeffs) -> IntersectionResult {
    solve_scaled(coeffs, CoeffScales::from_coeffs(&coeffs))
}

pub fn solve_scaled(coeffs: QuadraticCoeffs, scales: CoeffScales) -> IntersectionResult {
    solve_with_discriminant(coeffs, coeffs.discriminant(), scales)
}

/// Shared classification: `d` is the discriminant to trust, which the
/// separated path computes by its own route.
pub(crate) fn solve_with_discriminant(
    coeffs: QuadraticCoeffs,
    d: f64,
    scales: CoeffScales,
) -> IntersectionResult {
    let QuadraticCoeffs { a, b, c } = coeffs;
    if a.abs() <= EPS_LINEAR * scales.a {
        if b.abs() > EPS_LINEAR * scales.b {
            probe::count();
            return IntersectionResult::LinearHit { t: -c / (2.0 * b) };
        }
        return IntersectionResult::Degenerate;
    }
    let band = EPS_TANGENT * coeffs.discriminant_scale();
    if d < -band {
        return IntersectionResult::Miss { d };
    }
    probe::count();
    if d <= band {
        return IntersectionResult::Tangent { t: -b / a, d };
    }
    // q = −(b + sign(b)·√D) keeps the larger root free of cancellation
    let q = -(b + b.signum() * d.sqrt());
    let (r1, r2) = (q / a, c / q);
    let (t1, t2) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
    IntersectionResult::Two { t1, t2, d }
}

/// Intersects the line `x_A + t·s` with `Q` through the quadratic
/// coefficients.
pub fn intersect_classical(
    q: &QuadricMatrix,
    x_a: HomogeneousPoint,
    s: HomogeneousDirection,
) -> IntersectionResult {
    solve_scaled(coefficients(q, x_a, s), CoeffScales::for_line(q, x_a, s))
}

/// Detection only: true when `b² − ac ≥ 0`.
#[inline]
pub fn detect_classical(q: &QuadricMatrix, x_a: HomogeneousPoint, s: HomogeneousDirection) -> bool {
    coefficients(q, x_a, s).discriminant() >= 0.0
}

/// Thread-local count of root extractions, compiled in with the
/// `op-count` feature (and in tests).
pub mod probe {
    #[cfg(any(test, feature = "op-count"))]
    thread_local! {
        static ROOT_EXTRACTIONS: std::cell::Cell<u64> = const { std::cell::Cell::new(0) };
    }

    #[inline(always)]
    pub(crate) fn count() {
        #[cfg(any(test, feature = "op-count"))]
        ROOT_EXTRACTIONS.with(|c| c.set(c.get() + 1));
    }

    /// Root extractions performed on this thread since the last reset.
    #[cfg(any(test, feature = "op-count"))]
    pub fn root_extractions() -> u64 {
        ROOT_EXTRACTIONS.with(|c| c.get())
    }

    #[cfg(any(test, feature = "op-count"))]
    pub fn reset() {
        ROOT_EXTRACTIONS.with(|c| c.set(0));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadric::{ellipsoid, evaluate, hyperbolic_paraboloid, sphere};
    use proptest::prelude::*;

    fn pt(x: f64, y: f64, z: f64) -> HomogeneousPoint {
        HomogeneousPoint::new(x, y, z, 1.0).unwrap()
    }

    fn dir(x: f64, y: f64, z: f64) -> HomogeneousDirection {
        HomogeneousDirection::new(x, y, z, 0.0).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        let unit = sphere(1.0).unwrap();
        assert_eq!(
            coefficients(&unit, pt(2., 0., 0.), dir(-1., 0., 0.)),
            QuadraticCoeffs::new(1.0, -2.0, 3.0)
        );
        assert_eq!(coefficients(&unit, pt(0., 1., 0.), dir(0.3, 0.1, 2.0)).c, 0.0);
        let e = ellipsoid(2.0, 1.0, 1.0).unwrap();
        assert_eq!(
            coefficients(&e, pt(3., 0., 0.), dir(-1., 0., 0.)),
            QuadraticCoeffs::new(0.25, -0.75, 1.25)
        );
    }

    #[test]
    fn solve_examples() {
        assert_eq!(
            solve(QuadraticCoeffs::new(1., -2., 3.)),
            IntersectionResult::Two { t1: 1.0, t2: 3.0, d: 1.0 }
        );
        assert_eq!(
            solve(QuadraticCoeffs::new(1., -2., 4.)),
            IntersectionResult::Tangent { t: 2.0, d: 0.0 }
        );
        assert_eq!(solve(QuadraticCoeffs::new(1., 0., 1.)), IntersectionResult::Miss { d: -1.0 });
        assert_eq!(solve(QuadraticCoeffs::new(0., 1., -4.)), IntersectionResult::LinearHit { t: 2.0 });
        assert_eq!(solve(QuadraticCoeffs::new(0., 0., 1.)), IntersectionResult::Degenerate);
    }

    #[test]
    fn literal_root_formula_agrees_at_benign_inputs() {
        for &(a, b, c) in &[(1.0, -2.0, 3.0), (2.0, 0.5, -3.0), (0.7, -4.0, 1.5), (3.0, 1.0, -0.25)] {
            let d: f64 = b * b - a * c;
            let lit1 = (-b - d.sqrt()) / a;
            let lit2 = (-b + d.sqrt()) / a;
            let (lo, hi) = if lit1 <= lit2 { (lit1, lit2) } else { (lit2, lit1) };
            match solve(QuadraticCoeffs::new(a, b, c)) {
                IntersectionResult::Two { t1, t2, .. } => {
                    assert!((t1 - lo).abs() <= 1e-14 * lo.abs().max(1.0));
                    assert!((t2 - hi).abs() <= 1e-14 * hi.abs().max(1.0));
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn small_root_survives_cancellation() {
        // roots 1e-9 and 2e8 ; the literal formula loses the small one
        let (r1, r2) = (1e-9_f64, 2e8_f64);
        let coeffs = QuadraticCoeffs::new(1.0, -(r1 + r2) / 2.0, r1 * r2);
        match solve(coeffs) {
            IntersectionResult::Two { t1, t2, .. } => {
                assert!((t1 - r1).abs() <= 1e-15 * 1e-9 * 10.0);
                assert!((t2 - r2).abs() <= 1e-15 * r2 * 10.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sphere_line_examples() {
        let unit = sphere(1.0).unwrap();
        assert_eq!(
            intersect_classical(&unit, pt(2., 0., 0.), dir(-1., 0., 0.)),
            IntersectionResult::Two { t1: 1.0, t2: 3.0, d: 1.0 }
        );
        assert_eq!(
            intersect_classical(&unit, pt(2., 1., 0.), dir(-1., 0., 0.)),
            IntersectionResult::Tangent { t: 2.0, d: 0.0 }
        );
        assert_eq!(
            intersect_classical(&unit, pt(2., 2., 0.), dir(-1., 0., 0.)),
            IntersectionResult::Miss { d: -3.0 }
        );
    }

    #[test]
    fn paraboloid_axis_is_linear() {
        let hp = hyperbolic_paraboloid(1.0, 2.0).unwrap();
        let x = pt(0.5, 0.25, 3.0);
        let res = intersect_classical(&hp, x, dir(0., 0., 1.));
        let IntersectionResult::LinearHit { t } = res else { panic!("{res:?}") };
        // z = (x²/a² − y²/b²)/2 on the surface
        let expect_z = 0.5 * (0.25 - 0.0625 / 4.0);
        assert!((3.0 + t - expect_z).abs() < 1e-15);
    }

    #[test]
    fn probe_counts_only_root_work() {
        probe::reset();
        let _ = solve(QuadraticCoeffs::new(1., 0., 1.));
        assert_eq!(probe::root_extractions(), 0);
        let _ = solve(QuadraticCoeffs::new(1., -2., 3.));
        assert_eq!(probe::root_extractions(), 1);
    }

    fn coeff() -> impl Strategy<Value = f64> {
        -2.0..2.0f64
    }

    fn line() -> impl Strategy<Value = ([f64; 3], [f64; 3])> {
        (prop::array::uniform3(-10.0..10.0f64), prop::array::uniform3(-10.0..10.0f64))
    }

    proptest! {
        #[test]
        fn roots_are_ordered_and_satisfy_the_surface(c in prop::array::uniform10(coeff()), (o, d) in line()) {
            let q = QuadricMatrix::from_coefficients(c).unwrap();
            prop_assume!(d.iter().any(|v| *v != 0.0));
            let x = pt(o[0], o[1], o[2]);
            let s = dir(d[0], d[1], d[2]);
            let res = intersect_classical(&q, x, s);
            let k = coefficients(&q, x, s);
            if let IntersectionResult::Two { t1, t2, .. } = res {
                prop_assert!(t1 <= t2);
            }
            for t in res.roots() {
                let p = [o[0] + t * d[0], o[1] + t * d[1], o[2] + t * d[2], 1.0];
                let r = evaluate(&q, HomogeneousPoint::from_array(p).unwrap());
                prop_assert!(r.abs() <= 1e-8 * k.max_abs() * (t * t).max(1.0), "residual {r}");
            }
        }

        #[test]
        fn reversing_the_direction_negates_roots(c in prop::array::uniform10(coeff()), (o, d) in line()) {
            prop_assume!(d.iter().any(|v| *v != 0.0));
            let q = QuadricMatrix::from_coefficients(c).unwrap();
            let x = pt(o[0], o[1], o[2]);
            let s = dir(d[0], d[1], d[2]);
            let fwd = intersect_classical(&q, x, s);
            let back = intersect_classical(&q, x, s.reversed());
            prop_assert_eq!(fwd.label(), back.label());
            let mut neg: Vec<f64> = back.roots().iter().map(|t| -t).collect();
            neg.sort_by(f64::total_cmp);
            for (a, b) in fwd.roots().iter().zip(neg) {
                prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
            }
            if let (Some(d1), Some(d2)) = (fwd.discriminant(), back.discriminant()) {
                prop_assert!((d1 - d2).abs() <= 1e-12 * d1.abs().max(1.0));
            }
        }

        #[test]
        fn homogeneous_scaling_preserves_points(
            c in prop::array::uniform10(coeff()),
            (o, d) in line(),
            lam in 0.01..100.0f64,
        ) {
            prop_assume!(d.iter().any(|v| *v != 0.0));
            let q = QuadricMatrix::from_coefficients(c).unwrap();
            let x = pt(o[0], o[1], o[2]);
            let s = dir(d[0], d[1], d[2]);
            let xs = x.scaled(lam).unwrap();
            let base = intersect_classical(&q, x, s);
            let scaled = intersect_classical(&q, xs, s);
            let k = coefficients(&q, x, s);
            // a pair sitting inside the tangency band may flip; outside it the label is invariant
            if k.discriminant().abs() > 1e-6 * k.discriminant_scale() {
                prop_assert_eq!(base.label(), scaled.label());
                for (t, ts) in base.roots().iter().zip(scaled.roots()) {
                    for i in 0..3 {
                        let p = o[i] + t * d[i];
                        let ps = (lam * o[i] + ts * d[i]) / lam;
                        prop_assert!((p - ps).abs() <= 1e-10 * p.abs().max(1.0), "{p} vs {ps}");
                    }
                }
            }
        }
    }
}
