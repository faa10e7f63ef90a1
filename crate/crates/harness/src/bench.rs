//! Detection-only benchmark of the classical and separated kernels.
//!
//! Rays come from a [`XorShift64Star`] stream seeded with
//! `seed ^ RAY_SEED_SALT`: per ray, an origin of three `uniform(-20, 20)`
//! draws and a target of three `uniform(-10, 10)` draws; the direction is
//! `target − origin` (redrawn in the measure-zero case it vanishes).
//!
//! Every ray is tested against every object. A test is a hit when its
//! discriminant is `≥ 0`. The checksum is the wrapping sum of
//! `ray_index·objects + object_index + 1` over hits, so it is independent
//! of worker count and equal between methods whenever their hits are.
//!
//! Timing is the median over repetitions of a monotonic clock around the
//! detection loop. The separated method's per-ray cache construction is
//! timed separately and reported as `precompute_ns_total`.

use std::hint::black_box;
use std::io::{self, Write};
use std::time::Instant;

use quadray_core::classical::detect_classical;
use quadray_core::quadric::QuadricMatrix;
use quadray_core::separated::{detect_separated, sphere_discriminant_unchecked, RayCache};
use quadray_core::{HomogeneousDirection, HomogeneousPoint, Vec3};
use rayon::prelude::*;

use crate::rng::XorShift64Star;
use crate::scene::Scene;
use crate::{with_workers, Method};

pub const RAY_SEED_SALT: u64 = 0xD1B5_4A32_D192_ED03;

pub const CSV_HEADER: &str =
    "method,objects,rays,detections,hits,precompute_ns_total,detect_ns_total,detect_ns_per_test,checksum";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchStats {
    pub method: Method,
    pub objects: usize,
    pub rays: usize,
    pub detections: u64,
    pub hits: u64,
    pub precompute_ns_total: u64,
    pub detect_ns_total: u64,
    pub checksum: u64,
}

impl BenchStats {
    pub fn detect_ns_per_test(&self) -> f64 {
        if self.detections == 0 {
            0.0
        } else {
            self.detect_ns_total as f64 / self.detections as f64
        }
    }

    pub fn precompute_ns_per_ray(&self) -> f64 {
        self.precompute_ns_total as f64 / self.rays.max(1) as f64
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.4},{}",
            self.method,
            self.objects,
            self.rays,
            self.detections,
            self.hits,
            self.precompute_ns_total,
            self.detect_ns_total,
            self.detect_ns_per_test(),
            self.checksum
        )
    }
}

pub fn write_csv<W: Write>(mut out: W, stats: &[BenchStats]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for s in stats {
        writeln!(out, "{}", s.csv_row())?;
    }
    Ok(())
}

/// The benchmark's deterministic Euclidean rays.
pub fn generate_rays(seed: u64, count: usize) -> Vec<(Vec3, Vec3)> {
    let mut rng = XorShift64Star::new(seed ^ RAY_SEED_SALT);
    let mut rays = Vec::with_capacity(count);
    while rays.len() < count {
        let o = [rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)];
        let t = [rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)];
        let origin = Vec3::from_array(o).expect("finite");
        let dir = Vec3::from_array(t).expect("finite") - origin;
        if dir != Vec3::ZERO {
            rays.push((origin, dir));
        }
    }
    rays
}

#[derive(Clone, Copy)]
enum Target {
    Sphere { center: Vec3, r_sq: f64 },
    Quadric(QuadricMatrix),
}

#[inline]
fn hit_key(ray: usize, objects: usize, object: usize) -> u64 {
    (ray as u64).wrapping_mul(objects as u64).wrapping_add(object as u64 + 1)
}

#[derive(Default, Clone, Copy)]
struct Tally {
    hits: u64,
    checksum: u64,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally { hits: self.hits + o.hits, checksum: self.checksum.wrapping_add(o.checksum) }
    }
}

fn run_classical(quadrics: &[QuadricMatrix], rays: &[(HomogeneousPoint, HomogeneousDirection)]) -> Tally {
    let n = quadrics.len();
    rays.par_iter()
        .enumerate()
        .map(|(i, &(x, s))| {
            let mut t = Tally::default();
            for (j, q) in quadrics.iter().enumerate() {
                if detect_classical(black_box(q), x, s) {
                    t.hits += 1;
                    t.checksum = t.checksum.wrapping_add(hit_key(i, n, j));
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn run_separated(targets: &[Target], caches: &[RayCache]) -> Tally {
    let n = targets.len();
    caches
        .par_iter()
        .enumerate()
        .map(|(i, cache)| {
            let mut t = Tally::default();
            for (j, target) in targets.iter().enumerate() {
                let hit = match black_box(target) {
                    Target::Sphere { center, r_sq } => {
                        sphere_discriminant_unchecked(*center, *r_sq, cache) >= 0.0
                    }
                    Target::Quadric(q) => detect_separated(q, cache),
                };
                if hit {
                    t.hits += 1;
                    t.checksum = t.checksum.wrapping_add(hit_key(i, n, j));
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn median(mut v: Vec<u64>) -> u64 {
    v.sort_unstable();
    v[v.len() / 2]
}

/// Runs `repetitions` timed passes of `rays` seeded rays against every
/// object of `scene` with one method.
pub fn benchmark(
    scene: &Scene,
    rays: usize,
    method: Method,
    repetitions: usize,
    seed: u64,
    workers: usize,
) -> BenchStats {
    assert!(rays >= 1, "at least one ray");
    let reps = repetitions.max(1);
    let ray_list = generate_rays(seed, rays);
    let objects = scene.objects.len();
    let quadrics: Vec<QuadricMatrix> = scene.objects.iter().map(|o| o.world_quadric()).collect();

    let mut pre_times = Vec::with_capacity(reps);
    let mut det_times = Vec::with_capacity(reps);
    let mut tally = Tally::default();
    with_workers(workers, || match method {
        Method::Classical => {
            let homogeneous: Vec<_> = ray_list
                .iter()
                .map(|&(o, d)| {
                    (HomogeneousPoint::from_euclidean(o), HomogeneousDirection::from_euclidean(d).expect("non-zero"))
                })
                .collect();
            for _ in 0..reps {
                let start = Instant::now();
                tally = black_box(run_classical(&quadrics, &homogeneous));
                det_times.push(start.elapsed().as_nanos() as u64);
                pre_times.push(0);
            }
        }
        Method::Separated => {
            let targets: Vec<Target> = scene
                .objects
                .iter()
                .zip(&quadrics)
                .map(|(o, q)| match o.as_sphere() {
                    Some((center, r)) => Target::Sphere { center, r_sq: r * r },
                    None => Target::Quadric(*q),
                })
                .collect();
            for _ in 0..reps {
                let start = Instant::now();
                let caches: Vec<RayCache> = ray_list
                    .par_iter()
                    .map(|&(o, d)| RayCache::euclidean(o, d).expect("non-degenerate ray"))
                    .collect();
                let caches = black_box(caches);
                pre_times.push(start.elapsed().as_nanos() as u64);
                let start = Instant::now();
                tally = black_box(run_separated(&targets, &caches));
                det_times.push(start.elapsed().as_nanos() as u64);
            }
        }
    });

    BenchStats {
        method,
        objects,
        rays,
        detections: (rays as u64) * (objects as u64),
        hits: tally.hits,
        precompute_ns_total: median(pre_times),
        detect_ns_total: median(det_times),
        checksum: tally.checksum,
    }
}
