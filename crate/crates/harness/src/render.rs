//! Detection images: one primary ray per pixel, nearest positive hit,
//! grayscale by depth, written as binary PGM.
//!
//! Shading: a pixel with no hit is 0. Otherwise, with `d` the distance to
//! the nearest hit along the unit ray and `[d_min, d_max]` the range over
//! all hit pixels of the image, the value is
//! `255 − round(200·(d − d_min)/(d_max − d_min))` (255 when the range is
//! empty), so every hit pixel lies in `[55, 255]` and nearer is brighter.

use quadray_core::classical::{intersect_classical, IntersectionResult};
use quadray_core::quadric::QuadricMatrix;
use quadray_core::separated::{intersect_separated, sphere_discriminant_unchecked, RayCache};
use quadray_core::{HomogeneousDirection, HomogeneousPoint, Vec3};
use rayon::prelude::*;

use crate::scene::{Camera, Scene};
use crate::{with_workers, Method};

/// A single-channel 8-bit image, rows top to bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    pub width: u32,
    pub height: u32,
    pub pixels: Vec<u8>,
}

impl GrayImage {
    pub fn get(&self, x: u32, y: u32) -> u8 {
        self.pixels[(y * self.width + x) as usize]
    }

    /// Binary PGM: `P5\n<w> <h>\n255\n` followed by the raw bytes.
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }
}

/// Pinhole camera ray generator through pixel centers.
#[derive(Debug, Clone, Copy)]
pub struct PrimaryRays {
    origin: Vec3,
    forward: Vec3,
    right: Vec3,
    up: Vec3,
    half_h: f64,
    half_w: f64,
    width: u32,
    height: u32,
}

impl PrimaryRays {
    pub fn new(cam: &Camera) -> Self {
        let forward = (cam.look_at - cam.origin).normalized().expect("validated camera");
        let right = forward.cross(cam.up).normalized().expect("validated camera");
        let up = right.cross(forward);
        let half_h = (cam.fov_deg.to_radians() * 0.5).tan();
        let half_w = half_h * cam.width as f64 / cam.height as f64;
        Self { origin: cam.origin, forward, right, up, half_h, half_w, width: cam.width, height: cam.height }
    }

    pub fn origin(&self) -> Vec3 {
        self.origin
    }

    /// Unit direction through the center of pixel `(x, y)`, `y = 0` at the top.
    pub fn direction(&self, x: u32, y: u32) -> Vec3 {
        let u = (2.0 * (x as f64 + 0.5) / self.width as f64 - 1.0) * self.half_w;
        let v = (1.0 - 2.0 * (y as f64 + 0.5) / self.height as f64) * self.half_h;
        (self.forward + self.right * u + self.up * v).normalized().expect("non-zero")
    }
}

#[derive(Debug, Clone, Copy)]
struct Prepared {
    q: QuadricMatrix,
    /// `(center, r²)` for spheres.
    sphere: Option<(Vec3, f64)>,
}

fn prepare(scene: &Scene) -> Vec<Prepared> {
    scene
        .objects
        .iter()
        .map(|o| Prepared { q: o.world_quadric(), sphere: o.as_sphere().map(|(c, r)| (c, r * r)) })
        .collect()
}

fn nearest(results: impl Iterator<Item = IntersectionResult>) -> Option<f64> {
    results.filter_map(|r| r.nearest_after(0.0)).min_by(f64::total_cmp)
}

fn trace(objects: &[Prepared], origin: Vec3, dir: Vec3, method: Method) -> Option<f64> {
    match method {
        Method::Classical => {
            let x = HomogeneousPoint::from_euclidean(origin);
            let s = HomogeneousDirection::from_euclidean(dir).expect("unit direction");
            nearest(objects.iter().map(|o| intersect_classical(&o.q, x, s)))
        }
        Method::Separated => {
            let cache = RayCache::euclidean(origin, dir).expect("unit direction");
            nearest(objects.iter().filter_map(|o| {
                if let Some((c, r_sq)) = o.sphere {
                    if sphere_discriminant_unchecked(c, r_sq, &cache) < 0.0 {
                        return None;
                    }
                }
                Some(intersect_separated(&o.q, &cache))
            }))
        }
    }
}

/// Distance to the nearest positive hit for every pixel, row-major.
pub fn depth_map(scene: &Scene, method: Method, workers: usize) -> Vec<Option<f64>> {
    let objects = prepare(scene);
    let rays = PrimaryRays::new(&scene.camera);
    let (w, h) = (scene.camera.width, scene.camera.height);
    with_workers(workers, || {
        (0..h)
            .into_par_iter()
            .flat_map_iter(|y| {
                let objects = &objects;
                (0..w).map(move |x| trace(objects, rays.origin(), rays.direction(x, y), method))
            })
            .collect()
    })
}

pub fn shade(depths: &[Option<f64>], width: u32, height: u32) -> GrayImage {
    let (lo, hi) = depths
        .iter()
        .flatten()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), d| (lo.min(*d), hi.max(*d)));
    let pixels = depths
        .iter()
        .map(|d| match d {
            None => 0,
            Some(_) if hi <= lo => 255,
            Some(d) => 255 - (200.0 * (d - lo) / (hi - lo)).round() as u8,
        })
        .collect();
    GrayImage { width, height, pixels }
}

pub fn render_detection(scene: &Scene, method: Method, workers: usize) -> GrayImage {
    let depths = depth_map(scene, method, workers);
    shade(&depths, scene.camera.width, scene.camera.height)
}

/// Smallest `|b² − ac| / max(b², |ac|)` over the scene's objects along the
/// ray through pixel `(x, y)`; pixels whose margin falls inside the
/// tangency band may legitimately differ between methods.
pub fn tangency_margin(scene: &Scene, x: u32, y: u32) -> f64 {
    let rays = PrimaryRays::new(&scene.camera);
    let xa = HomogeneousPoint::from_euclidean(rays.origin());
    let s = HomogeneousDirection::from_euclidean(rays.direction(x, y)).expect("unit");
    scene
        .objects
        .iter()
        .map(|o| {
            let k = quadray_core::coefficients(&o.world_quadric(), xa, s);
            k.discriminant().abs() / k.discriminant_scale().max(f64::MIN_POSITIVE)
        })
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::parse_scene;

    #[test]
    fn pgm_header() {
        let img = GrayImage { width: 2, height: 1, pixels: vec![0, 255] };
        assert_eq!(img.to_pgm(), b"P5\n2 1\n255\n\x00\xff".to_vec());
    }

    #[test]
    fn center_ray_looks_forward() {
        let scene = parse_scene("camera 0 0 5 0 0 0 0 1 0 60 3 3\nsphere 0 0 0 1").unwrap();
        let rays = PrimaryRays::new(&scene.camera);
        assert_eq!(rays.direction(1, 1).to_array(), [0.0, 0.0, -1.0]);
        // top row points up, left column points left
        assert!(rays.direction(1, 0).y() > 0.0);
        assert!(rays.direction(0, 1).x() < 0.0);
    }

    #[test]
    fn looking_away_is_black() {
        let scene = parse_scene("camera 0 0 5 0 0 10 0 1 0 60 32 32\nsphere 0 0 0 1\nellipsoid 3 0 -2 1 2 1").unwrap();
        for m in [Method::Classical, Method::Separated] {
            assert!(render_detection(&scene, m, 1).pixels.iter().all(|p| *p == 0));
        }
    }

    #[test]
    fn nearer_is_brighter() {
        let scene = parse_scene("camera 0 0 10 0 0 0 0 1 0 40 41 41\nsphere -2 0 3 1\nsphere 2 0 -3 1").unwrap();
        let img = render_detection(&scene, Method::Separated, 2);
        let near = (0..41).map(|x| img.get(x, 20)).take(20).max().unwrap();
        let far = (21..41).map(|x| img.get(x, 20)).max().unwrap();
        assert!(near > far && far >= 55, "{near} {far}");
    }
}
