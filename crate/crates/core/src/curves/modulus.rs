use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use qd::Quad;

use super::numeric::{self, cq, CQuad};
use crate::cfrac::UnimodularMatrix;
use crate::error::{Error, Result};
use crate::exactnum::{parse_number, Number, QuadraticSurd, Rational};

/// A point of the upper half-plane, exact (imaginary quadratic) or floating.
#[derive(Clone, Debug, PartialEq)]
pub enum Modulus {
    Exact(QuadraticSurd),
    Float(CQuad),
}

const MAX_STEPS: usize = 100_000;
/// Boundary tolerance for floating reduction.
const FLOAT_EPS: f64 = 1e-24;

impl Modulus {
    pub fn exact(tau: QuadraticSurd) -> Result<Self> {
        if tau.d() > 0 {
            return Err(Error::domain(format!("{tau} is real, not in the upper half-plane")));
        }
        if !tau.q().is_positive() {
            return Err(Error::domain(format!("Im({tau}) <= 0")));
        }
        Ok(Modulus::Exact(tau))
    }

    pub fn from_number(n: Number) -> Result<Self> {
        match n {
            Number::Surd(s) => Self::exact(s),
            Number::Rational(r) => Err(Error::domain(format!(
                "tau = {r} is rational; the lattice Z + Z tau degenerates"
            ))),
        }
    }

    pub fn float(re: f64, im: f64) -> Result<Self> {
        Self::from_cquad(cq(re, im))
    }

    pub fn from_cquad(z: CQuad) -> Result<Self> {
        if !(z.im > Quad::ZERO) || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::domain(format!(
                "Im(tau) = {} is not positive",
                z.im.0
            )));
        }
        Ok(Modulus::Float(z))
    }

    /// Parses an exact value such as `(1 + sqrt(-3))/2` or a float such as
    /// `0.3+0.1i` / `[0.3, 0.1]`.
    pub fn parse(text: &str) -> Result<Self> {
        match parse_number(text) {
            Ok(n) => Self::from_number(n),
            Err(e) if text.contains("sqrt") => Err(e),
            Err(_) => {
                let (re, im) = parse_complex(text)?;
                Self::float(re, im)
            }
        }
    }

    pub fn value(&self) -> CQuad {
        match self {
            Modulus::Exact(s) => {
                let (re, im) = Number::Surd(s.clone()).to_complex_quad();
                CQuad::new(re, im)
            }
            Modulus::Float(z) => *z,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Modulus::Exact(_))
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Exact(s) => write!(f, "{s}"),
            Modulus::Float(z) => {
                let [re, im] = numeric::to_pair(z);
                write!(f, "{re} + {im}i")
            }
        }
    }
}

/// Parses `a+bi`, `bi`, `a-i` or `[a, b]`.
pub fn parse_complex(text: &str) -> Result<(f64, f64)> {
    let err = |pos: usize, msg: &str| Error::Syntax {
        pos,
        msg: msg.into(),
    };
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(inner) = t.strip_prefix('[') {
        let inner = inner.strip_suffix(']').ok_or_else(|| err(text.len(), "expected `]`"))?;
        let mut it = inner.split(',');
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(err(1, "expected `[re, im]`"));
        };
        let re = a.parse().map_err(|_| err(1, "invalid real part"))?;
        let im = b.parse().map_err(|_| err(1, "invalid imaginary part"))?;
        return Ok((re, im));
    }
    let Some(body) = t.strip_suffix('i') else {
        let re: f64 = t.parse().map_err(|_| err(0, "expected a complex number like 0.3+0.1i"))?;
        return Ok((re, 0.0));
    };
    let body = body.strip_suffix('*').unwrap_or(body);
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_text, im_text) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_text.is_empty() {
        0.0
    } else {
        re_text.parse().map_err(|_| err(0, "invalid real part"))?
    };
    let im = match im_text {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s.parse().map_err(|_| err(re_text.len(), "invalid imaginary part"))?,
    };
    Ok((re, im))
}

pub(crate) fn big_to_quad(x: &BigInt) -> Quad {
    match x.to_i64() {
        Some(v) if v.unsigned_abs() < (1u64 << 53) => Quad::from(v as f64),
        _ => numeric::rational_to_quad(&Rational::from_integer(x.clone())),
    }
}

/// `(a z + b)/(c z + d)` in double-double arithmetic.
pub fn act(m: &UnimodularMatrix, z: &CQuad) -> CQuad {
    let (a, b, c, d) = (big_to_quad(m.a()), big_to_quad(m.b()), big_to_quad(m.c()), big_to_quad(m.d()));
    let num = CQuad::new(a * z.re + b, a * z.im);
    let den = CQuad::new(c * z.re + d, c * z.im);
    num / den
}

/// Moves `tau` into the fundamental domain `-1/2 <= Re < 1/2`, `|tau| >= 1`
/// (with `Re <= 0` on the unit circle), returning `tau'` and `M` with
/// `tau' = M tau`.
pub fn reduce_modulus(tau: &Modulus) -> Result<(Modulus, UnimodularMatrix)> {
    match tau {
        Modulus::Exact(s) => reduce_exact(s),
        Modulus::Float(z) => reduce_float(z),
    }
}

fn reduce_exact(tau: &QuadraticSurd) -> Result<(Modulus, UnimodularMatrix)> {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let one = Rational::one();
    let mut t = Number::Surd(tau.clone());
    let mut m = UnimodularMatrix::identity();
    let s = UnimodularMatrix::inversion();
    let parts = |t: &Number| -> (Rational, Rational) {
        let s = t.as_surd().expect("imaginary stays irrational");
        (s.rational_part(), s.norm())
    };
    for _ in 0..MAX_STEPS {
        let (re, _) = parts(&t);
        let n = (&re + &half).floor().to_integer();
        if !n.is_zero() {
            t = t.sub(&Number::from(n.clone()))?;
            m = UnimodularMatrix::translation(-n).mul(&m);
        }
        let (re, norm) = parts(&t);
        if norm < one {
            t = t.recip()?.neg();
            m = s.mul(&m);
            continue;
        }
        if norm == one && re.is_positive() {
            t = t.recip()?.neg();
            m = s.mul(&m);
        }
        let m = m.projective();
        if m.apply(&Number::Surd(tau.clone()))? != t {
            return Err(Error::Contract("reduction witness does not verify".into()));
        }
        let Number::Surd(t) = t else { unreachable!() };
        return Ok((Modulus::Exact(t), m));
    }
    Err(Error::Resource(format!("reduction did not settle in {MAX_STEPS} steps")))
}

fn reduce_float(tau: &CQuad) -> Result<(Modulus, UnimodularMatrix)> {
    let eps = Quad::from(FLOAT_EPS);
    let one = Quad::ONE;
    let half = Quad::from(0.5);
    let mut t = *tau;
    let mut m = UnimodularMatrix::identity();
    let s = UnimodularMatrix::inversion();
    let invert = |t: &CQuad| -numeric::recip(t);
    for _ in 0..MAX_STEPS {
        let n = numeric::floor(t.re + half);
        if n != Quad::ZERO {
            t.re -= n;
            m = UnimodularMatrix::translation(-numeric::to_i64(n)).mul(&m);
        }
        let norm = t.re * t.re + t.im * t.im;
        if norm < one - eps {
            t = invert(&t);
            m = s.mul(&m);
            continue;
        }
        if t.re >= half - eps {
            t.re -= one;
            m = UnimodularMatrix::translation(-1).mul(&m);
        }
        if (norm - one).abs() <= eps && t.re > eps {
            t = invert(&t);
            m = s.mul(&m);
        }
        let m = m.projective();
        let check = act(&m, tau);
        if !numeric::close(&check, &t, 1e-12) {
            return Err(Error::Contract("reduction witness does not verify".into()));
        }
        return Ok((Modulus::Float(t), m));
    }
    Err(Error::Resource(format!("reduction did not settle in {MAX_STEPS} steps")))
}

/// Result of an isomorphism test between two moduli.
#[derive(Clone, Debug, PartialEq)]
pub struct Isomorphism {
    pub isomorphic: bool,
    /// `M` with `tau2 = M tau1`, when one was found.
    pub witness: Option<UnimodularMatrix>,
    /// `"exact"`, `"reduced-float"` or `"j-invariant"`.
    pub method: &'static str,
}

/// Decides whether `E_tau1` and `E_tau2` are isomorphic, i.e. whether the
/// moduli lie in one SL2(Z) orbit.
pub fn isomorphic(tau1: &Modulus, tau2: &Modulus) -> Result<Isomorphism> {
    let (r1, m1) = reduce_modulus(tau1)?;
    let (r2, m2) = reduce_modulus(tau2)?;
    if let (Modulus::Exact(a), Modulus::Exact(b)) = (&r1, &r2) {
        let witness = (a == b).then(|| m2.inverse().mul(&m1).projective());
        return Ok(Isomorphism {
            isomorphic: witness.is_some(),
            witness,
            method: "exact",
        });
    }
    let (z1, z2) = (r1.value(), r2.value());
    // boundary identifications: Re = -1/2 ~ Re = 1/2 and tau ~ -1/tau on |tau| = 1
    let candidates = [
        UnimodularMatrix::identity(),
        UnimodularMatrix::translation(1),
        UnimodularMatrix::translation(-1),
        UnimodularMatrix::inversion(),
    ];
    for b in candidates {
        if numeric::close(&act(&b, &z1), &z2, 1e-18) {
            let w = m2.inverse().mul(&b).mul(&m1).projective();
            return Ok(Isomorphism {
                isomorphic: true,
                witness: Some(w),
                method: "reduced-float",
            });
        }
    }
    let j1 = super::lattice::eisenstein_g2_g3(&r1, super::DEFAULT_SHELLS)?.curve.j_invariant()?;
    let j2 = super::lattice::eisenstein_g2_g3(&r2, super::DEFAULT_SHELLS)?.curve.j_invariant()?;
    let same = numeric::close(&j1, &j2, 1e-9);
    Ok(Isomorphism {
        isomorphic: same,
        witness: None,
        method: "j-invariant",
    })
}

/// Squarefree `D > 0` with `tau` in `Q(sqrt(-D))`; `None` for floating input,
/// where CM cannot be certified.
pub fn cm_discriminant(tau: &Modulus) -> Option<u64> {
    match tau {
        Modulus::Exact(s) => Some(s.d().unsigned_abs()),
        Modulus::Float(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(t: &str) -> Modulus {
        Modulus::parse(t).unwrap()
    }

    #[test]
    fn translation_only() {
        let (r, m) = reduce_modulus(&exact("5 + sqrt(-1)")).unwrap();
        assert_eq!(r, exact("sqrt(-1)"));
        assert_eq!(m, UnimodularMatrix::translation(-5));
    }

    #[test]
    fn already_reduced() {
        let (r, m) = reduce_modulus(&exact("sqrt(-1)")).unwrap();
        assert_eq!(r, exact("sqrt(-1)"));
        assert_eq!(m, UnimodularMatrix::identity());
    }

    #[test]
    fn float_reduction_verifies() {
        let tau = Modulus::float(0.3, 0.1).unwrap();
        let (r, m) = reduce_modulus(&tau).unwrap();
        let z = r.value();
        assert!(numeric::abs_f64(&z) >= 1.0 - 1e-20);
        assert!(z.re.0.abs() <= 0.5);
        assert!(numeric::close(&act(&m, &tau.value()), &z, 1e-12));
    }

    #[test]
    fn exact_idempotent() {
        let tau = exact("(3 + sqrt(-7))/11");
        let (r, _) = reduce_modulus(&tau).unwrap();
        let (r2, m2) = reduce_modulus(&r).unwrap();
        assert_eq!(r, r2);
        assert_eq!(m2, UnimodularMatrix::identity());
    }

    #[test]
    fn unit_circle_boundary() {
        // (1 + sqrt(-3))/2 lies on |tau| = 1 with Re > 0; its partner has Re = -1/2
        let (r, _) = reduce_modulus(&exact("(1 + sqrt(-3))/2")).unwrap();
        assert_eq!(r, exact("(-1 + sqrt(-3))/2"));
    }

    #[test]
    fn isomorphism_examples() {
        let a = isomorphic(&exact("sqrt(-2)"), &exact("1 + sqrt(-2)")).unwrap();
        assert!(a.isomorphic);
        let b = isomorphic(&exact("2*sqrt(-1)"), &exact("sqrt(-1)/2")).unwrap();
        assert!(b.isomorphic);
        let w = b.witness.unwrap();
        assert_eq!(w.apply(&parse_number("2*sqrt(-1)").unwrap()).unwrap(), parse_number("sqrt(-1)/2").unwrap());
        let c = isomorphic(&exact("sqrt(-1)"), &exact("1 + 2*sqrt(-1)")).unwrap();
        assert!(!c.isomorphic);
    }

    #[test]
    fn float_isomorphism() {
        let t1 = Modulus::float(0.1, 1.3).unwrap();
        let m = UnimodularMatrix::new(2, 1, 5, 3).unwrap();
        let t2 = Modulus::from_cquad(act(&m, &t1.value())).unwrap();
        let iso = isomorphic(&t1, &t2).unwrap();
        assert!(iso.isomorphic);
        assert!(numeric::close(&act(&iso.witness.unwrap(), &t1.value()), &t2.value(), 1e-10));
        let t3 = Modulus::float(0.1, 1.4).unwrap();
        assert!(!isomorphic(&t1, &t3).unwrap().isomorphic);
    }

    #[test]
    fn cm_detection() {
        assert_eq!(cm_discriminant(&exact("sqrt(-7)")), Some(7));
        assert_eq!(cm_discriminant(&exact("(1 + sqrt(-3))/2")), Some(3));
        assert_eq!(cm_discriminant(&Modulus::float(0.5, 0.866).unwrap()), None);
        assert!(matches!(Modulus::parse("3/2"), Err(Error::Domain(_))));
    }

    #[test]
    fn complex_text() {
        assert_eq!(parse_complex("0.3+0.1i").unwrap(), (0.3, 0.1));
        assert_eq!(parse_complex("5 - i").unwrap(), (5.0, -1.0));
        assert_eq!(parse_complex("2i").unwrap(), (0.0, 2.0));
        assert_eq!(parse_complex("[0.5, 0.866]").unwrap(), (0.5, 0.866));
        assert_eq!(parse_complex("1e-3+2.5e-1*i").unwrap(), (1e-3, 0.25));
        assert!(matches!(parse_complex("abc"), Err(Error::Syntax { .. })));
        assert!(matches!(Modulus::parse("0.2-0.1i"), Err(Error::Domain(_))));
    }
}
