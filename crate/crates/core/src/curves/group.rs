//! Chord-tangent group law on `y^2 = x^3 + a x^2 + b x + c`.

use std::fmt::{self, Debug};

use num_traits::Zero;
use qd::Quad;

use super::modulus::Modulus;
use super::numeric::{self, q, CQuad};
use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// Field operations needed by the group law. Exact fields compare exactly;
/// floating fields compare within a relative tolerance.
pub trait CurveField: Clone + Debug + PartialEq {
    fn zero() -> Self;
    fn from_i64(n: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Division by a value already known to be nonzero.
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Equality test: exact, or within relative tolerance `rel`.
    fn same(&self, o: &Self, rel: f64) -> bool;
}

impl CurveField for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(n.into())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn same(&self, o: &Self, _rel: f64) -> bool {
        self == o
    }
}

impl CurveField for CQuad {
    fn zero() -> Self {
        CQuad::new(Quad::ZERO, Quad::ZERO)
    }
    fn from_i64(n: i64) -> Self {
        numeric::real(q(n as f64))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn same(&self, o: &Self, rel: f64) -> bool {
        numeric::close(self, o, rel)
    }
}

/// Tolerance for deciding `x1 = x2` and `y1 = -y2` in floating fields.
const SAME_POINT: f64 = 1e-18;
/// Tolerance for the on-curve predicate in floating fields.
const ON_CURVE: f64 = 1e-12;

/// Monic cubic `x^3 + a x^2 + b x + c`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cubic<F> {
    pub a: F,
    pub b: F,
    pub c: F,
}

/// A point of the projective curve: affine `(x, y)` or the point at infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum AffinePoint<F> {
    Infinity,
    Finite { x: F, y: F },
}

impl<F> AffinePoint<F> {
    pub fn new(x: F, y: F) -> Self {
        AffinePoint::Finite { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, AffinePoint::Infinity)
    }
}

impl fmt::Display for AffinePoint<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffinePoint::Infinity => f.write_str("O"),
            AffinePoint::Finite { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl<F: CurveField> Cubic<F> {
    pub fn new(a: F, b: F, c: F) -> Self {
        Cubic { a, b, c }
    }

    pub fn eval(&self, x: &F) -> F {
        // ((x + a) x + b) x + c
        x.add(&self.a).mul(x).add(&self.b).mul(x).add(&self.c)
    }

    fn derivative(&self, x: &F) -> F {
        let three = F::from_i64(3);
        let two = F::from_i64(2);
        three.mul(x).mul(x).add(&two.mul(&self.a).mul(x)).add(&self.b)
    }

    pub fn contains(&self, p: &AffinePoint<F>) -> bool {
        match p {
            AffinePoint::Infinity => true,
            AffinePoint::Finite { x, y } => y.mul(y).same(&self.eval(x), ON_CURVE),
        }
    }

    fn check(&self, p: &AffinePoint<F>) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::Contract(format!("point {p:?} is not on the curve")))
        }
    }

    pub fn neg(&self, p: &AffinePoint<F>) -> AffinePoint<F> {
        match p {
            AffinePoint::Infinity => AffinePoint::Infinity,
            AffinePoint::Finite { x, y } => AffinePoint::new(x.clone(), y.neg()),
        }
    }

    /// Chord-tangent sum.
    pub fn add(&self, p: &AffinePoint<F>, r: &AffinePoint<F>) -> Result<AffinePoint<F>> {
        self.check(p)?;
        self.check(r)?;
        let (x1, y1, x2, y2) = match (p, r) {
            (AffinePoint::Infinity, _) => return Ok(r.clone()),
            (_, AffinePoint::Infinity) => return Ok(p.clone()),
            (AffinePoint::Finite { x: x1, y: y1 }, AffinePoint::Finite { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let slope = if x1.same(x2, SAME_POINT) {
            if y1.same(&y2.neg(), SAME_POINT) {
                // vertical chord, or vertical tangent at a 2-torsion point
                return Ok(AffinePoint::Infinity);
            }
            self.derivative(x1).div(&F::from_i64(2).mul(y1))
        } else {
            y2.sub(y1).div(&x2.sub(x1))
        };
        let x3 = slope.mul(&slope).sub(&self.a).sub(x1).sub(x2);
        let y3 = y1.add(&slope.mul(&x3.sub(x1))).neg();
        Ok(AffinePoint::new(x3, y3))
    }

    /// `n P` by double-and-add; negative `n` uses `-P`.
    pub fn mul(&self, n: i64, p: &AffinePoint<F>) -> Result<AffinePoint<F>> {
        self.check(p)?;
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = AffinePoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            base = self.add(&base, &base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Least `n <= bound` with `n P = O`, or `None` when no such `n` exists.
    pub fn order(&self, p: &AffinePoint<F>, bound: u64) -> Result<Option<u64>> {
        if bound == 0 {
            return Err(Error::Parameter("bound must be at least 1".into()));
        }
        self.check(p)?;
        let mut acc = p.clone();
        for n in 1..=bound {
            if acc.is_infinity() {
                return Ok(Some(n));
            }
            acc = self.add(&acc, p)?;
        }
        Ok(None)
    }
}

impl Cubic<Rational> {
    /// Cubic with integer coefficients.
    pub fn integral(a: i64, b: i64, c: i64) -> Self {
        Cubic::new(
            Rational::from_integer(a.into()),
            Rational::from_integer(b.into()),
            Rational::from_integer(c.into()),
        )
    }

    /// Discriminant of the cubic; zero means the curve is singular.
    pub fn discriminant(&self) -> Rational {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let n = |k: i64| Rational::from_integer(k.into());
        // a^2 b^2 - 4 b^3 - 4 a^3 c - 27 c^2 + 18 a b c
        a * a * b * b - n(4) * b * b * b - n(4) * a * a * a * c - n(27) * c * c + n(18) * a * b * c
    }

    pub fn nonsingular(a: i64, b: i64, c: i64) -> Result<Self> {
        let cubic = Self::integral(a, b, c);
        if cubic.discriminant().is_zero() {
            return Err(Error::Singular(format!("x^3 + {a}x^2 + {b}x + {c} has a repeated root")));
        }
        Ok(cubic)
    }
}

pub fn point_add<F: CurveField>(p: &AffinePoint<F>, r: &AffinePoint<F>, curve: &Cubic<F>) -> Result<AffinePoint<F>> {
    curve.add(p, r)
}

pub fn point_order<F: CurveField>(p: &AffinePoint<F>, curve: &Cubic<F>, bound: u64) -> Result<Option<u64>> {
    curve.order(p, bound)
}

/// Coordinates `(u, v)` with `z = u + v tau`.
pub fn lattice_coordinates(z: &CQuad, tau: &CQuad) -> (Quad, Quad) {
    let v = z.im / tau.im;
    (z.re - v * tau.re, v)
}

/// `z1 + z2` reduced into the parallelogram `[0,1) + [0,1) tau`.
pub fn torus_add(z1: &CQuad, z2: &CQuad, tau: &Modulus) -> CQuad {
    let t = tau.value();
    let (u, v) = lattice_coordinates(&(z1 + z2), &t);
    let frac = |x: Quad| x - numeric::floor(x);
    let (u, v) = (frac(u), frac(v));
    CQuad::new(u + v * t.re, v * t.im)
}

/// The point `(wp(z), wp'(z)/2)` on the monic model of `y^2 = 4x^3 - g2 x - g3`.
pub fn transport(wp: CQuad, wp_prime: CQuad) -> AffinePoint<CQuad> {
    AffinePoint::new(wp, wp_prime * numeric::real(q(0.5)))
}
