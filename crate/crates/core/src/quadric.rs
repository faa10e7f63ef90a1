//! Symmetric quadric matrices, the fundamental-position catalog, and the
//! rigid change of frame `Q = TᵀQ₀T`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::{HomogeneousPoint, Mat4};

/// Index pairs `(i, j)` of the stored coefficients, in storage order
/// `a₁₁ a₂₂ a₃₃ a₄₄ a₁₂ a₁₃ a₂₃ a₁₄ a₂₄ a₃₄` (zero-based).
pub const COEFFICIENT_ORDER: [(usize, usize); 10] = [
    (0, 0),
    (1, 1),
    (2, 2),
    (3, 3),
    (0, 1),
    (0, 2),
    (1, 2),
    (0, 3),
    (1, 3),
    (2, 3),
];

/// A symmetric 4×4 matrix stored as its 10 independent coefficients.
///
/// The implicit surface is `xᵀQx = 0`. Because only one copy of each
/// off-diagonal entry exists, every materialized form is exactly symmetric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadricMatrix {
    a11: f64,
    a22: f64,
    a33: f64,
    a44: f64,
    a12: f64,
    a13: f64,
    a23: f64,
    a14: f64,
    a24: f64,
    a34: f64,
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value })
    }
}

impl QuadricMatrix {
    /// Builds a quadric from coefficients in [`COEFFICIENT_ORDER`].
    pub fn from_coefficients(c: [f64; 10]) -> Result<Self> {
        if !c.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("QuadricMatrix"));
        }
        if c.iter().all(|v| *v == 0.0) {
            return Err(Error::ZeroQuadric);
        }
        Ok(Self {
            a11: c[0],
            a22: c[1],
            a33: c[2],
            a44: c[3],
            a12: c[4],
            a13: c[5],
            a23: c[6],
            a14: c[7],
            a24: c[8],
            a34: c[9],
        })
    }

    pub fn coefficients(&self) -> [f64; 10] {
        [
            self.a11, self.a22, self.a33, self.a44, self.a12, self.a13, self.a23, self.a14,
            self.a24, self.a34,
        ]
    }

    /// Entry `(i, j)` of the symmetric matrix (zero-based).
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        match (i, j) {
            (0, 0) => self.a11,
            (1, 1) => self.a22,
            (2, 2) => self.a33,
            (3, 3) => self.a44,
            (0, 1) => self.a12,
            (0, 2) => self.a13,
            (1, 2) => self.a23,
            (0, 3) => self.a14,
            (1, 3) => self.a24,
            (2, 3) => self.a34,
            _ => panic!("quadric index out of range: ({i}, {j})"),
        }
    }

    /// The full 4×4 matrix.
    pub fn to_mat4(&self) -> Mat4 {
        let mut rows = [[0.0; 4]; 4];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.get(i, j);
            }
        }
        Mat4::raw(rows)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coefficients().iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `Q·v`.
    #[inline]
    pub fn mul_vec(&self, v: [f64; 4]) -> [f64; 4] {
        let [x, y, z, w] = v;
        [
            self.a11 * x + self.a12 * y + self.a13 * z + self.a14 * w,
            self.a12 * x + self.a22 * y + self.a23 * z + self.a24 * w,
            self.a13 * x + self.a23 * y + self.a33 * z + self.a34 * w,
            self.a14 * x + self.a24 * y + self.a34 * z + self.a44 * w,
        ]
    }

    /// `uᵀQv` through the 10-coefficient expansion.
    #[inline]
    pub fn bilinear(&self, u: [f64; 4], v: [f64; 4]) -> f64 {
        self.a11 * u[0] * v[0]
            + self.a22 * u[1] * v[1]
            + self.a33 * u[2] * v[2]
            + self.a44 * u[3] * v[3]
            + self.a12 * (u[0] * v[1] + u[1] * v[0])
            + self.a13 * (u[0] * v[2] + u[2] * v[0])
            + self.a23 * (u[1] * v[2] + u[2] * v[1])
            + self.a14 * (u[0] * v[3] + u[3] * v[0])
            + self.a24 * (u[1] * v[3] + u[3] * v[1])
            + self.a34 * (u[2] * v[3] + u[3] * v[2])
    }

    /// `xᵀQx` as the expanded implicit polynomial with doubled cross terms.
    #[inline]
    pub fn quadratic_form(&self, v: [f64; 4]) -> f64 {
        let [x, y, z, w] = v;
        self.a11 * x * x
            + self.a22 * y * y
            + self.a33 * z * z
            + self.a44 * w * w
            + 2.0 * (self.a12 * x * y + self.a13 * x * z + self.a23 * y * z)
            + 2.0 * (self.a14 * x * w + self.a24 * y * w + self.a34 * z * w)
    }

    /// Sum of the magnitudes of the terms of `xᵀQx`; the natural scale for
    /// judging how close `evaluate` is to zero.
    pub fn form_magnitude(&self, v: [f64; 4]) -> f64 {
        let mut m = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                m += (self.get(i, j) * v[i] * v[j]).abs();
            }
        }
        m
    }
}

/// `xᵀQx`; zero on the surface.
pub fn evaluate(q: &QuadricMatrix, x: HomogeneousPoint) -> f64 {
    q.quadratic_form(x.to_array())
}

/// `x² + y² + z² − r² = 0`.
pub fn sphere(r: f64) -> Result<QuadricMatrix> {
    let r = positive("radius", r)?;
    QuadricMatrix::from_coefficients([1.0, 1.0, 1.0, -r * r, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
}

/// `x²/a² + y²/b² + z²/c² − 1 = 0`.
pub fn ellipsoid(a: f64, b: f64, c: f64) -> Result<QuadricMatrix> {
    let (a, b, c) = (positive("a", a)?, positive("b", b)?, positive("c", c)?);
    QuadricMatrix::from_coefficients([
        1.0 / (a * a),
        1.0 / (b * b),
        1.0 / (c * c),
        -1.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ])
}

/// `x²/a² + y²/b² − z²/c² − 1 = 0`.
pub fn one_sheet_hyperboloid(a: f64, b: f64, c: f64) -> Result<QuadricMatrix> {
    let (a, b, c) = (positive("a", a)?, positive("b", b)?, positive("c", c)?);
    QuadricMatrix::from_coefficients([
        1.0 / (a * a),
        1.0 / (b * b),
        -1.0 / (c * c),
        -1.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ])
}

/// `x²/a² − y²/b² − 2z = 0`. The only catalog entry with an off-diagonal
/// term: `a₃₄ = a₄₃ = −1`.
pub fn hyperbolic_paraboloid(a: f64, b: f64) -> Result<QuadricMatrix> {
    let (a, b) = (positive("a", a)?, positive("b", b)?);
    QuadricMatrix::from_coefficients([
        1.0 / (a * a),
        -1.0 / (b * b),
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        -1.0,
    ])
}

/// A catalog tag for a quadric in fundamental position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadricKind {
    Sphere { r: f64 },
    Ellipsoid { a: f64, b: f64, c: f64 },
    OneSheetHyperboloid { a: f64, b: f64, c: f64 },
    HyperbolicParaboloid { a: f64, b: f64 },
    /// Raw coefficients, never classified.
    General(QuadricMatrix),
}

impl QuadricKind {
    /// The fundamental-position matrix `Q₀`.
    pub fn q0(&self) -> Result<QuadricMatrix> {
        match *self {
            QuadricKind::Sphere { r } => sphere(r),
            QuadricKind::Ellipsoid { a, b, c } => ellipsoid(a, b, c),
            QuadricKind::OneSheetHyperboloid { a, b, c } => one_sheet_hyperboloid(a, b, c),
            QuadricKind::HyperbolicParaboloid { a, b } => hyperbolic_paraboloid(a, b),
            QuadricKind::General(q) => Ok(q),
        }
    }
}

/// `TᵀQ₀T`, re-symmetrized by averaging the `(i, j)` and `(j, i)` products.
///
/// `T` maps world points into the quadric's fundamental frame.
pub fn transform(q0: &QuadricMatrix, t: &Mat4) -> QuadricMatrix {
    let q = q0.to_mat4();
    let full = t.transpose().compose(&q).compose(t);
    let mut c = [0.0; 10];
    for (slot, &(i, j)) in c.iter_mut().zip(COEFFICIENT_ORDER.iter()) {
        *slot = if i == j {
            full.get(i, i)
        } else {
            0.5 * (full.get(i, j) + full.get(j, i))
        };
    }
    // a rigid T is invertible, so a nonzero Q₀ cannot collapse to zero
    QuadricMatrix::from_coefficients(c).unwrap_or(*q0)
}

impl fmt::Display for QuadricMatrix {
    /// Ten whitespace-separated coefficients in storage order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coefficients();
        for (k, v) in c.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Failure to read the 10-number text form of a quadric.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuadricParseError {
    #[error("expected 10 coefficients, found {0}")]
    Arity(usize),
    #[error("malformed number {0:?}")]
    Number(String),
    #[error(transparent)]
    Invalid(#[from] Error),
}

impl FromStr for QuadricMatrix {
    type Err = QuadricParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let fields: Vec<&str> = s.split_whitespace().collect();
        if fields.len() != 10 {
            return Err(QuadricParseError::Arity(fields.len()));
        }
        let mut c = [0.0; 10];
        for (slot, tok) in c.iter_mut().zip(fields) {
            *slot = tok
                .parse()
                .map_err(|_| QuadricParseError::Number(tok.to_string()))?;
        }
        Ok(QuadricMatrix::from_coefficients(c)?)
    }
}
