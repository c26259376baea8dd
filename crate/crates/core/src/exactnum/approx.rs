use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use qd::Quad;

use super::{floor_parts, Number, QuadraticSurd, Rational};
use crate::error::{Error, Result};

/// A binary floating value `mantissa * 2^exponent` with unbounded mantissa.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    pub mantissa: BigInt,
    pub exponent: i64,
}

/// A correctly rounded approximation of an exact value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Approximation {
    Real(Dyadic),
    /// `re + i*im`, for imaginary quadratic values with `sqrt(d) = i*sqrt(|d|)`.
    Complex { re: Dyadic, im: Dyadic },
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    /// Exact value as a rational.
    pub fn to_rational(&self) -> Rational {
        let two = BigInt::from(2);
        if self.exponent >= 0 {
            Rational::from_integer(&self.mantissa * two.pow(self.exponent as u32))
        } else {
            Rational::new(self.mantissa.clone(), two.pow((-self.exponent) as u32))
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_quad().0
    }

    /// Nearest double-double; exact when the mantissa fits in 106 bits.
    pub fn to_quad(&self) -> Quad {
        if self.mantissa.is_zero() {
            return Quad::ZERO;
        }
        let bits = self.mantissa.bits() as i64;
        // keep the top 106 bits; the rest is below double-double resolution
        let drop = (bits - 106).max(0);
        let m = &self.mantissa >> (drop as usize);
        let hi = m.to_f64().unwrap_or(f64::NAN);
        let rest = &m - float_to_bigint(hi);
        let lo = rest.to_f64().unwrap_or(0.0);
        let scale = self.exponent + drop;
        let quad = qd_two_sum(hi, lo);
        scale_quad(quad, scale)
    }

    /// Decimal rendering with `digits` digits after the point (truncated).
    pub fn to_decimal(&self, digits: usize) -> String {
        let r = self.to_rational();
        let scale = BigInt::from(10).pow(digits as u32);
        let scaled = (r.abs() * Rational::from_integer(scale.clone())).floor().to_integer();
        let (int, frac) = scaled.div_rem(&scale);
        let sign = if r.is_negative() { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
        }
    }
}

fn float_to_bigint(x: f64) -> BigInt {
    num_traits::FromPrimitive::from_f64(x).unwrap_or_default()
}

fn qd_two_sum(a: f64, b: f64) -> Quad {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    Quad(s, err)
}

fn scale_quad(x: Quad, exp: i64) -> Quad {
    let e = exp.clamp(-2000, 2000) as i32;
    let f = 2f64.powi(e.clamp(-1000, 1000));
    let g = 2f64.powi(e - e.clamp(-1000, 1000));
    Quad(x.0 * f * g, x.1 * f * g)
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(f.precision().unwrap_or(20)))
    }
}

/// Rounds `(p + q*sqrt(d))/r` to the nearest multiple of `2^-shift`.
fn round_scaled(p: &BigInt, q: &BigInt, r: &BigInt, d: i64, shift: i64) -> BigInt {
    // floor(x 2^s + 1/2) = floor((2 p 2^s + r + 2 q 2^s sqrt d) / (2 r))
    let two = BigInt::from(2);
    let (p2, q2, r2) = if shift >= 0 {
        let k = two.pow(shift as u32 + 1);
        (p * &k + r, q * &k, r * &two)
    } else {
        let k = two.pow((-shift) as u32);
        (p * &two + r * &k, q * &two, r * &two * &k)
    };
    if q2.is_zero() {
        p2.div_floor(&r2)
    } else {
        floor_parts(&p2, &q2, &r2, d)
    }
}

/// Correctly rounded binary approximation with `bits` significant bits of a
/// real value `(p + q*sqrt(d))/r` (q may be zero).
fn round_real(p: &BigInt, q: &BigInt, r: &BigInt, d: i64, bits: u32) -> Dyadic {
    let approx = p.to_f64().unwrap_or(0.0) / r.to_f64().unwrap_or(1.0)
        + q.to_f64().unwrap_or(0.0) * (d.max(0) as f64).sqrt() / r.to_f64().unwrap_or(1.0);
    let is_zero = q.is_zero() && p.is_zero();
    if is_zero {
        return Dyadic::zero();
    }
    let mag = if approx == 0.0 || !approx.is_finite() {
        0
    } else {
        approx.abs().log2().floor() as i64
    };
    let mut shift = bits as i64 - 1 - mag;
    let lower = BigInt::from(1) << (bits as usize - 1);
    let upper = BigInt::from(1) << (bits as usize);
    for _ in 0..64 {
        let n = round_scaled(p, q, r, d, shift);
        let a = n.abs();
        if a.is_zero() {
            shift += 8;
        } else if a < lower {
            shift += 1;
        } else if a > upper {
            shift -= 1;
        } else {
            // a == upper only when rounding carried into the next power of two
            return Dyadic { mantissa: n, exponent: -shift };
        }
    }
    unreachable!("shift search converges within a few steps")
}

impl Number {
    /// Correctly rounded approximation with `precision_bits` significant bits.
    ///
    /// Relative error is at most `2^-precision_bits`. Imaginary values use
    /// the convention `sqrt(d) = i*sqrt(|d|)` for `d < 0`.
    pub fn to_float(&self, precision_bits: u32) -> Result<Approximation> {
        if precision_bits < 64 {
            return Err(Error::Parameter(format!(
                "precision_bits must be at least 64, got {precision_bits}"
            )));
        }
        Ok(match self {
            Number::Rational(x) => Approximation::Real(round_real(
                x.numer(),
                &BigInt::zero(),
                x.denom(),
                0,
                precision_bits,
            )),
            Number::Surd(s) if s.d() > 0 => {
                Approximation::Real(round_real(s.p(), s.q(), s.r(), s.d(), precision_bits))
            }
            Number::Surd(s) => Approximation::Complex {
                re: round_real(s.p(), &BigInt::zero(), s.r(), 0, precision_bits),
                im: round_real(&BigInt::zero(), s.q(), s.r(), -s.d(), precision_bits),
            },
        })
    }

    /// Real value in double-double precision.
    pub fn to_quad(&self) -> Result<Quad> {
        match self.to_float(110)? {
            Approximation::Real(x) => Ok(x.to_quad()),
            Approximation::Complex { .. } => {
                Err(Error::domain("imaginary value has no real approximation"))
            }
        }
    }

    /// `(re, im)` in double-double precision.
    pub fn to_complex_quad(&self) -> (Quad, Quad) {
        match self.to_float(110).expect("110 >= 64") {
            Approximation::Real(x) => (x.to_quad(), Quad::ZERO),
            Approximation::Complex { re, im } => (re.to_quad(), im.to_quad()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (re, _) = self.to_complex_quad();
        re.0
    }
}

impl QuadraticSurd {
    pub fn to_float(&self, precision_bits: u32) -> Result<Approximation> {
        Number::Surd(self.clone()).to_float(precision_bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;

    fn real(a: Approximation) -> Dyadic {
        match a {
            Approximation::Real(d) => d,
            Approximation::Complex { .. } => panic!("expected real"),
        }
    }

    #[test]
    fn half_is_exact() {
        let x = Number::rational(1, 2).unwrap();
        let d = real(x.to_float(64).unwrap());
        assert_eq!(d.to_rational(), Rational::new(1.into(), 2.into()));
        assert_eq!(d.to_f64(), 0.5);
    }

    #[test]
    fn sqrt3_interval_oracle() {
        // 128 correctly rounded bits: m*2^e within 2^-127 relative of sqrt 3,
        // checked by squaring integer bounds only.
        let x: Number = QuadraticSurd::sqrt(3).unwrap().into();
        let d = real(x.to_float(128).unwrap());
        let m = d.mantissa.clone();
        let e = -d.exponent;
        assert!(e > 0);
        // |m - sqrt(3) 2^e| <= 1/2 ulp  <=>  (m - 1/2)^2 <= 3*4^e <= (m + 1/2)^2
        let four_e = BigInt::from(3) * (BigInt::from(1) << (2 * e as usize));
        let lo = Pow::pow(BigInt::from(2) * &m - 1, 2u32);
        let hi = Pow::pow(BigInt::from(2) * &m + 1, 2u32);
        let target = four_e * 4;
        assert!(lo <= target && target <= hi);
        assert_eq!(m.bits(), 128);
        assert!(d.to_decimal(7).starts_with("1.7320508"));
    }

    #[test]
    fn imaginary_is_upper_half_plane() {
        let x: Number = QuadraticSurd::sqrt(-7).unwrap().into();
        match x.to_float(96).unwrap() {
            Approximation::Complex { re, im } => {
                assert!(re.mantissa.is_zero());
                let v = im.to_quad();
                let sq = v * v - Quad::from(7.0);
                assert!(sq.abs() < Quad::from(1e-26));
                assert!(im.to_decimal(7).starts_with("2.6457513"));
            }
            _ => panic!("expected complex"),
        }
    }

    #[test]
    fn precision_floor_enforced() {
        assert!(Number::integer(1).to_float(32).is_err());
    }

    #[test]
    fn quad_conversion_matches_sqrt() {
        let x: Number = QuadraticSurd::sqrt(2).unwrap().into();
        let q = x.to_quad().unwrap();
        let err = q * q - Quad::from(2.0);
        assert!(err.abs() < Quad::from(1e-30));
    }

    #[test]
    fn negative_surd_rounding() {
        let x = QuadraticSurd::normalize(-1, -1, 1, 2).unwrap();
        let d = real(x.to_float(64).unwrap());
        assert!((d.to_f64() + 1.0 + 2f64.sqrt()).abs() < 1e-15);
        assert!(d.mantissa.is_negative());
    }
}
