//! Deterministic random scenes.
//!
//! Objects are drawn in order from one [`XorShift64Star`] stream seeded
//! with the scene seed. Per object:
//!
//! 1. `u = next_f64()`; sphere when `u < sphere_fraction`, else ellipsoid
//! 2. center: three `uniform(-10, 10)` draws (x, y, z)
//! 3. sphere: `r = uniform(0.1, 2)`; ellipsoid: `a, b, c = uniform(0.1, 2)`
//!
//! The camera is fixed at [`default_camera`].

use quadray_core::quadric::QuadricKind;
use quadray_core::Vec3;
use thiserror::Error;

use crate::rng::XorShift64Star;
use crate::scene::{Camera, Scene, SceneObject};

pub const CENTER_RANGE: (f64, f64) = (-10.0, 10.0);
pub const SIZE_RANGE: (f64, f64) = (0.1, 2.0);

/// `camera 0 0 35 0 0 0 0 1 0 45 256 256`
pub fn default_camera() -> Camera {
    let v = |x, y, z| Vec3::new(x, y, z).expect("finite");
    Camera {
        origin: v(0.0, 0.0, 35.0),
        look_at: v(0.0, 0.0, 0.0),
        up: v(0.0, 1.0, 0.0),
        fov_deg: 45.0,
        width: 256,
        height: 256,
    }
}

/// Share of spheres among generated objects; the rest are ellipsoids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KindMix {
    pub sphere_fraction: f64,
}

impl Default for KindMix {
    fn default() -> Self {
        Self { sphere_fraction: 0.5 }
    }
}

impl KindMix {
    pub const SPHERES_ONLY: KindMix = KindMix { sphere_fraction: 1.0 };
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("object count must be at least 1")]
    NoObjects,
    #[error("sphere fraction must be within [0, 1]: {0}")]
    BadMix(f64),
}

pub fn generate_scene(seed: u64, n_objects: usize, mix: KindMix) -> Result<Scene, GenerateError> {
    if n_objects == 0 {
        return Err(GenerateError::NoObjects);
    }
    if !(0.0..=1.0).contains(&mix.sphere_fraction) {
        return Err(GenerateError::BadMix(mix.sphere_fraction));
    }
    let mut rng = XorShift64Star::new(seed);
    let (lo, hi) = CENTER_RANGE;
    let (smin, smax) = SIZE_RANGE;
    let objects = (0..n_objects)
        .map(|_| {
            let is_sphere = rng.next_f64() < mix.sphere_fraction;
            let cx = rng.uniform(lo, hi);
            let cy = rng.uniform(lo, hi);
            let cz = rng.uniform(lo, hi);
            let center = Vec3::new(cx, cy, cz).expect("finite");
            let kind = if is_sphere {
                QuadricKind::Sphere { r: rng.uniform(smin, smax) }
            } else {
                let a = rng.uniform(smin, smax);
                let b = rng.uniform(smin, smax);
                let c = rng.uniform(smin, smax);
                QuadricKind::Ellipsoid { a, b, c }
            };
            SceneObject::new(kind, center)
        })
        .collect();
    Ok(Scene { camera: default_camera(), objects })
}
