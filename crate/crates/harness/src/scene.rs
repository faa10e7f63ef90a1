//! Line-oriented scene format.
//!
//! ```text
//! # comment
//! camera ox oy oz  lx ly lz  ux uy uz  fov_deg width height
//! sphere       cx cy cz r
//! ellipsoid    cx cy cz a b c
//! hyperboloid1 cx cy cz a b c
//! hparaboloid  cx cy cz a b
//! quadric      a11 a22 a33 a44 a12 a13 a23 a14 a24 a34
//! xform        r11 r12 r13 r21 r22 r23 r31 r32 r33
//! ```
//!
//! `xform` applies to the object on the line above it. Its rows form the
//! rotation taking the object's fundamental frame into world axes; the
//! object's center is then the translation. `quadric` coefficients are
//! given in the world frame (an `xform` after one rotates it about the
//! origin).

use std::fmt;

use quadray_core::geometry::translation;
use quadray_core::quadric::{transform, QuadricKind, QuadricMatrix};
use quadray_core::{Mat3, Mat4, Vec3};
use thiserror::Error;

/// Tolerance on `RᵀR = I` for `xform` rotations.
pub const ROTATION_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing camera")]
    MissingCamera,
    #[error("scene has no objects")]
    NoObjects,
}

impl ParseError {
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::Line { line, .. } => Some(*line),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Camera {
    pub origin: Vec3,
    pub look_at: Vec3,
    pub up: Vec3,
    pub fov_deg: f64,
    pub width: u32,
    pub height: u32,
}

impl Camera {
    fn validate(&self) -> Result<(), String> {
        if self.width < 1 || self.height < 1 {
            return Err("image size must be at least 1x1".into());
        }
        if !(self.fov_deg > 0.0 && self.fov_deg < 180.0) {
            return Err(format!("field of view must be in (0, 180): {}", self.fov_deg));
        }
        let forward = self.look_at - self.origin;
        if forward == Vec3::ZERO {
            return Err("camera origin equals look-at".into());
        }
        if forward.cross(self.up).norm_squared() == 0.0 {
            return Err("camera up is parallel to the view direction".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SceneObject {
    pub kind: QuadricKind,
    /// Translation of the fundamental frame; zero for `quadric`.
    pub center: Vec3,
    /// Fundamental-frame axes in world coordinates (columns).
    pub rotation: Option<Mat3>,
}

impl SceneObject {
    pub fn new(kind: QuadricKind, center: Vec3) -> Self {
        Self { kind, center, rotation: None }
    }

    /// The world-to-fundamental-frame transform `T`.
    pub fn world_to_local(&self) -> Mat4 {
        match &self.rotation {
            Some(r) => Mat4::rigid_world_to_local(r, self.center),
            None => translation(self.center),
        }
    }

    /// `TᵀQ₀T` in world coordinates.
    pub fn world_quadric(&self) -> QuadricMatrix {
        let q0 = self.kind.q0().expect("validated at construction");
        if self.rotation.is_none() && self.center == Vec3::ZERO {
            return q0;
        }
        transform(&q0, &self.world_to_local())
    }

    /// `(center, r)` when the sphere fast path applies.
    pub fn as_sphere(&self) -> Option<(Vec3, f64)> {
        match self.kind {
            QuadricKind::Sphere { r } => Some((self.center, r)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub camera: Camera,
    pub objects: Vec<SceneObject>,
}

fn numbers(tokens: &[&str], expected: usize, directive: &str) -> Result<Vec<f64>, String> {
    if tokens.len() != expected {
        return Err(format!(
            "{directive} expects {expected} numbers, found {}",
            tokens.len()
        ));
    }
    tokens
        .iter()
        .map(|t| {
            let v: f64 = t.parse().map_err(|_| format!("malformed number {t:?}"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("non-finite number {t:?}"))
            }
        })
        .collect()
}

fn vec3(v: &[f64]) -> Vec3 {
    Vec3::new(v[0], v[1], v[2]).expect("finite by parse")
}

fn positive(values: &[f64], what: &str) -> Result<(), String> {
    if values.iter().all(|v| *v > 0.0) {
        Ok(())
    } else {
        Err(format!("non-positive {what}"))
    }
}

fn parse_dimension(token: &str) -> Result<u32, String> {
    token
        .parse::<u32>()
        .map_err(|_| format!("malformed image dimension {token:?}"))
}

fn parse_camera(tokens: &[&str]) -> Result<Camera, String> {
    if tokens.len() != 12 {
        return Err(format!("camera expects 12 numbers, found {}", tokens.len()));
    }
    let v = numbers(&tokens[..10], 10, "camera")?;
    let cam = Camera {
        origin: vec3(&v[0..3]),
        look_at: vec3(&v[3..6]),
        up: vec3(&v[6..9]),
        fov_deg: v[9],
        width: parse_dimension(tokens[10])?,
        height: parse_dimension(tokens[11])?,
    };
    cam.validate()?;
    Ok(cam)
}

fn parse_object(directive: &str, tokens: &[&str]) -> Result<Option<SceneObject>, String> {
    let obj = match directive {
        "sphere" => {
            let v = numbers(tokens, 4, directive)?;
            positive(&v[3..], "radius")?;
            SceneObject::new(QuadricKind::Sphere { r: v[3] }, vec3(&v))
        }
        "ellipsoid" | "hyperboloid1" => {
            let v = numbers(tokens, 6, directive)?;
            positive(&v[3..], "semi-axis")?;
            let (a, b, c) = (v[3], v[4], v[5]);
            let kind = if directive == "ellipsoid" {
                QuadricKind::Ellipsoid { a, b, c }
            } else {
                QuadricKind::OneSheetHyperboloid { a, b, c }
            };
            SceneObject::new(kind, vec3(&v))
        }
        "hparaboloid" => {
            let v = numbers(tokens, 5, directive)?;
            positive(&v[3..], "semi-axis")?;
            SceneObject::new(QuadricKind::HyperbolicParaboloid { a: v[3], b: v[4] }, vec3(&v))
        }
        "quadric" => {
            let v = numbers(tokens, 10, directive)?;
            let mut c = [0.0; 10];
            c.copy_from_slice(&v);
            let q = QuadricMatrix::from_coefficients(c).map_err(|e| e.to_string())?;
            SceneObject::new(QuadricKind::General(q), Vec3::ZERO)
        }
        _ => return Ok(None),
    };
    Ok(Some(obj))
}

fn parse_rotation(tokens: &[&str]) -> Result<Mat3, String> {
    let v = numbers(tokens, 9, "xform")?;
    let mut e = [0.0; 9];
    e.copy_from_slice(&v);
    let r = Mat3::from_row_major(e).map_err(|e| e.to_string())?;
    if !r.is_rotation(ROTATION_TOLERANCE) {
        return Err("xform is not a proper rotation".into());
    }
    Ok(r)
}

/// Parses and validates a scene.
pub fn parse_scene(text: &str) -> Result<Scene, ParseError> {
    let mut camera = None;
    let mut objects: Vec<SceneObject> = Vec::new();
    let mut last_line_was_object = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| ParseError::Line { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let directive = tokens.next().expect("non-empty line");
        let rest: Vec<&str> = tokens.collect();
        match directive {
            "camera" => {
                if camera.is_some() {
                    return Err(err("duplicate camera".into()));
                }
                camera = Some(parse_camera(&rest).map_err(err)?);
                last_line_was_object = false;
            }
            "xform" => {
                if !last_line_was_object {
                    return Err(err("xform must follow an object line".into()));
                }
                let rot = parse_rotation(&rest).map_err(err)?;
                objects.last_mut().expect("object present").rotation = Some(rot);
                last_line_was_object = false;
            }
            _ => match parse_object(directive, &rest).map_err(err)? {
                Some(obj) => {
                    objects.push(obj);
                    last_line_was_object = true;
                }
                None => return Err(err(format!("unknown directive {directive:?}"))),
            },
        }
    }
    let camera = camera.ok_or(ParseError::MissingCamera)?;
    if objects.is_empty() {
        return Err(ParseError::NoObjects);
    }
    Ok(Scene { camera, objects })
}

impl fmt::Display for Scene {
    /// The canonical text form; parsing it reproduces an identical scene.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.camera;
        let [ox, oy, oz] = c.origin.to_array();
        let [lx, ly, lz] = c.look_at.to_array();
        let [ux, uy, uz] = c.up.to_array();
        writeln!(
            f,
            "camera {ox} {oy} {oz} {lx} {ly} {lz} {ux} {uy} {uz} {} {} {}",
            c.fov_deg, c.width, c.height
        )?;
        for obj in &self.objects {
            let [cx, cy, cz] = obj.center.to_array();
            match obj.kind {
                QuadricKind::Sphere { r } => writeln!(f, "sphere {cx} {cy} {cz} {r}")?,
                QuadricKind::Ellipsoid { a, b, c } => {
                    writeln!(f, "ellipsoid {cx} {cy} {cz} {a} {b} {c}")?
                }
                QuadricKind::OneSheetHyperboloid { a, b, c } => {
                    writeln!(f, "hyperboloid1 {cx} {cy} {cz} {a} {b} {c}")?
                }
                QuadricKind::HyperbolicParaboloid { a, b } => {
                    writeln!(f, "hparaboloid {cx} {cy} {cz} {a} {b}")?
                }
                QuadricKind::General(q) => writeln!(f, "quadric {q}")?,
            }
            if let Some(r) = &obj.rotation {
                let e = r.to_row_major();
                let parts: Vec<String> = e.iter().map(|v| v.to_string()).collect();
                writeln!(f, "xform {}", parts.join(" "))?;
            }
        }
        Ok(())
    }
}
