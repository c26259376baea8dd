use qd::Quad;
use serde::Serialize;

use super::group::Cubic;
use super::numeric::{self, cq, q, CQuad};
use crate::error::{Error, Result};

/// Relative size below which a discriminant counts as zero.
const SINGULAR_EPS: f64 = 1e-28;
/// Tolerance on the Sklyanin constraint `alpha + beta + gamma + alpha beta gamma = 0`.
pub const SKLYANIN_EPS: f64 = 1e-12;

/// `y^2 = 4x^3 - g2 x - g3`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassCurve {
    pub g2: CQuad,
    pub g3: CQuad,
}

impl WeierstrassCurve {
    pub fn new(g2: CQuad, g3: CQuad) -> Result<Self> {
        let c = WeierstrassCurve { g2, g3 };
        let scale = numeric::abs_f64(&(g2 * g2 * g2)) + 27.0 * numeric::abs_f64(&(g3 * g3));
        if numeric::abs_f64(&c.discriminant()) <= SINGULAR_EPS * scale {
            return Err(Error::Singular(format!(
                "g2^3 - 27 g3^2 vanishes for g2 = {:?}, g3 = {:?}",
                numeric::to_pair(&g2),
                numeric::to_pair(&g3)
            )));
        }
        Ok(c)
    }

    /// `g2^3 - 27 g3^2`.
    pub fn discriminant(&self) -> CQuad {
        self.g2 * self.g2 * self.g2 - numeric::real(q(27.0)) * self.g3 * self.g3
    }

    /// `1728 g2^3 / (g2^3 - 27 g3^2)`.
    pub fn j_invariant(&self) -> Result<CQuad> {
        let disc = self.discriminant();
        if numeric::abs(&disc) == Quad::ZERO {
            return Err(Error::Singular("zero discriminant".into()));
        }
        Ok(numeric::real(q(1728.0)) * self.g2 * self.g2 * self.g2 / disc)
    }

    /// The same curve as `Y^2 = X^3 - (g2/4) X - g3/4` with `Y = y/2`.
    pub fn to_monic(&self) -> Cubic<CQuad> {
        let quarter = numeric::real(q(0.25));
        Cubic {
            a: cq(0.0, 0.0),
            b: -(self.g2 * quarter),
            c: -(self.g3 * quarter),
        }
    }
}

/// `j = 1728 g2^3 / (g2^3 - 27 g3^2)`.
pub fn j_invariant(wc: &WeierstrassCurve) -> Result<CQuad> {
    wc.j_invariant()
}

/// `y^2 = x(x - 1)(x - lambda)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LegendreCurve {
    pub lambda: CQuad,
}

impl LegendreCurve {
    pub fn new(lambda: CQuad) -> Result<Self> {
        let tiny = 1e-30;
        if numeric::abs_f64(&lambda) <= tiny || numeric::abs_f64(&(lambda - cq(1.0, 0.0))) <= tiny {
            return Err(Error::Degenerate(format!(
                "lambda = {:?} makes the Legendre cubic singular",
                numeric::to_pair(&lambda)
            )));
        }
        Ok(LegendreCurve { lambda })
    }
}

/// `g2 = (4^(1/3)/3)(l^2 - l + 1)`, `g3 = (1/27)(l + 1)(2l^2 - 5l + 2)`, with
/// the real cube root.
pub fn legendre_to_weierstrass(lc: &LegendreCurve) -> Result<WeierstrassCurve> {
    let l = lc.lambda;
    let one = cq(1.0, 0.0);
    let c = numeric::real(numeric::cbrt(q(4.0)) / q(3.0));
    let g2 = c * (l * l - l + one);
    let g3 = (l + one) * (numeric::real(q(2.0)) * l * l - numeric::real(q(5.0)) * l + numeric::real(q(2.0)))
        / numeric::real(q(27.0));
    WeierstrassCurve::new(g2, g3)
}

/// Intersection of `u^2 + v^2 + w^2 + z^2 = 0` and `A v^2 + B w^2 + z^2 = 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JacobiIntersection {
    #[serde(serialize_with = "ser_cq")]
    pub a: CQuad,
    #[serde(serialize_with = "ser_cq")]
    pub b: CQuad,
    /// Set when `A = B`, `A = 1` or `B = 1`; the quadrics then meet in a
    /// singular curve.
    pub degenerate: bool,
}

pub(crate) fn ser_cq<S: serde::Serializer>(z: &CQuad, s: S) -> std::result::Result<S::Ok, S::Error> {
    numeric::to_pair(z).serialize(s)
}

impl JacobiIntersection {
    /// Residuals of both quadrics at `(u, v, w, z)`.
    pub fn residuals(&self, p: &[CQuad; 4]) -> [CQuad; 2] {
        let [u, v, w, z] = p;
        [
            u * u + v * v + w * w + z * z,
            self.a * v * v + self.b * w * w + z * z,
        ]
    }

    /// A point with the given `v`, `w` coordinates.
    pub fn point(&self, v: CQuad, w: CQuad) -> [CQuad; 4] {
        let z = numeric::sqrt(&-(self.a * v * v + self.b * w * w));
        let u = numeric::sqrt(&-(v * v + w * w + z * z));
        [u, v, w, z]
    }
}

/// Jacobi constants `A = (1 - alpha)/(1 + beta)`, `B = (1 + alpha)/(1 - gamma)`
/// of the curve attached to the Sklyanin algebra `S(alpha, beta, gamma)`.
pub fn sklyanin_to_jacobi(alpha: CQuad, beta: CQuad, gamma: CQuad) -> Result<JacobiIntersection> {
    let one = cq(1.0, 0.0);
    let constraint = alpha + beta + gamma + alpha * beta * gamma;
    let size = numeric::abs_f64(&constraint);
    if size > SKLYANIN_EPS {
        return Err(Error::InvalidSklyanin(size));
    }
    let (den_a, den_b) = (one + beta, one - gamma);
    if numeric::abs_f64(&den_a) <= SKLYANIN_EPS {
        return Err(Error::Degenerate("1 + beta = 0".into()));
    }
    if numeric::abs_f64(&den_b) <= SKLYANIN_EPS {
        return Err(Error::Degenerate("1 - gamma = 0".into()));
    }
    let a = (one - alpha) / den_a;
    let b = (one + alpha) / den_b;
    let near = |x: &CQuad, y: &CQuad| numeric::close(x, y, SKLYANIN_EPS);
    let degenerate = near(&a, &b) || near(&a, &one) || near(&b, &one);
    Ok(JacobiIntersection { a, b, degenerate })
}
