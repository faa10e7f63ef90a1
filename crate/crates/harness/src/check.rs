//! Randomized cross-check of the separated route against the classical one.
//!
//! Each case draws ten quadric coefficients from `uniform(-2, 2)`, then a
//! point and a direction of four components each from `uniform(-10, 10)`,
//! from a [`XorShift64Star`] seeded with `seed`. Draws that do not form a
//! valid line are discarded and redrawn.
//!
//! A case fails when the two discriminants differ by more than
//! `1e-9·max(1, |D|, b², |ac|)`, when the classifications differ outside the
//! tangency band, or when corresponding roots differ by more than the
//! discriminant tolerance allows after propagation through `√D / a`.

use std::fmt;

use quadray_core::classical::{coefficients, intersect_classical, IntersectionResult, EPS_TANGENT};
use quadray_core::separated::{discriminant_separated, intersect_separated, RayCache};
use quadray_core::{HomogeneousDirection, HomogeneousPoint, QuadricMatrix};

use crate::rng::XorShift64Star;

pub const RELATIVE_TOLERANCE: f64 = 1e-9;

/// How many failures a report lists.
pub const LISTED_FAILURES: usize = 10;

#[derive(Debug, Clone, Copy, Default)]
pub struct CheckOptions {
    /// Negates R in every ray cache. Exists to show the check can fail.
    pub flip_r_sign: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub case: usize,
    pub classical: f64,
    pub separated: f64,
    pub relative_error: f64,
    pub what: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "case {}: {} (classical D = {:e}, separated D = {:e}, relative error {:e})",
            self.case, self.what, self.classical, self.separated, self.relative_error
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct CheckReport {
    pub comparisons: usize,
    pub failure_count: usize,
    /// The first [`LISTED_FAILURES`] failures.
    pub failures: Vec<Failure>,
    pub max_relative_error: f64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "comparisons: {}\nfailures: {}\nmax relative error: {:e}",
            self.comparisons, self.failure_count, self.max_relative_error
        )?;
        for failure in &self.failures {
            writeln!(f, "  {failure}")?;
        }
        Ok(())
    }
}

fn draw_case(rng: &mut XorShift64Star) -> (QuadricMatrix, RayCache) {
    loop {
        let mut c = [0.0; 10];
        for v in &mut c {
            *v = rng.uniform(-2.0, 2.0);
        }
        let mut x = [0.0; 4];
        for v in &mut x {
            *v = rng.uniform(-10.0, 10.0);
        }
        let mut s = [0.0; 4];
        for v in &mut s {
            *v = rng.uniform(-10.0, 10.0);
        }
        let Ok(q) = QuadricMatrix::from_coefficients(c) else { continue };
        let Ok(x) = HomogeneousPoint::from_array(x) else { continue };
        let Ok(s) = HomogeneousDirection::from_array(s) else { continue };
        if let Ok(cache) = RayCache::new(x, s) {
            return (q, cache);
        }
    }
}

fn compare_results(
    cls: IntersectionResult,
    sep: IntersectionResult,
    a: f64,
    d: f64,
    d_tol: f64,
    in_band: bool,
) -> Option<String> {
    use IntersectionResult::*;
    if cls.label() != sep.label() {
        return (!in_band).then(|| format!("classified {} vs {}", cls.label(), sep.label()));
    }
    let root_tol = |t: f64| {
        let spread = if d > 0.0 { d_tol / (a.abs() * d.sqrt()) } else { 0.0 };
        RELATIVE_TOLERANCE * t.abs().max(1.0) + spread
    };
    match (cls, sep) {
        (Two { t1, t2, .. }, Two { t1: u1, t2: u2, .. }) => {
            let bad = (t1 - u1).abs() > root_tol(t1) || (t2 - u2).abs() > root_tol(t2);
            bad.then(|| format!("roots ({t1}, {t2}) vs ({u1}, {u2})"))
        }
        (Tangent { t, .. }, Tangent { t: u, .. }) | (LinearHit { t }, LinearHit { t: u }) => {
            ((t - u).abs() > root_tol(t)).then(|| format!("root {t} vs {u}"))
        }
        _ => None,
    }
}

/// Runs `cases` randomized comparisons.
pub fn oracle_check(seed: u64, cases: usize, options: CheckOptions) -> CheckReport {
    let mut rng = XorShift64Star::new(seed);
    let mut report = CheckReport::default();
    for case in 0..cases {
        let (q, cache) = draw_case(&mut rng);
        let cache = if options.flip_r_sign { cache.with_flipped_r() } else { cache };
        let k = coefficients(&q, cache.point(), cache.direction());
        let d_cls = k.discriminant();
        let d_sep = discriminant_separated(&q, &cache);
        let scale = 1f64.max(d_cls.abs()).max(k.discriminant_scale());
        let rel = (d_sep - d_cls).abs() / scale;
        report.comparisons += 1;
        report.max_relative_error = report.max_relative_error.max(rel);

        let what = if rel > RELATIVE_TOLERANCE {
            Some("discriminants differ".to_string())
        } else {
            let cls = intersect_classical(&q, cache.point(), cache.direction());
            let sep = intersect_separated(&q, &cache);
            let in_band = d_cls.abs() <= (EPS_TANGENT + RELATIVE_TOLERANCE) * scale;
            compare_results(cls, sep, k.a, d_cls, RELATIVE_TOLERANCE * scale, in_band)
        };
        if let Some(what) = what {
            report.failure_count += 1;
            if report.failures.len() < LISTED_FAILURES {
                report.failures.push(Failure {
                    case,
                    classical: d_cls,
                    separated: d_sep,
                    relative_error: rel,
                    what,
                });
            }
        }
    }
    report
}
