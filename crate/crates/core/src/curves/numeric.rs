//! Double-double complex helpers (about 106 significant bits).

use num_complex::Complex;
use qd::Quad;

/// Complex number with double-double parts.
pub type CQuad = Complex<Quad>;

pub fn q(x: f64) -> Quad {
    Quad::from(x)
}

pub fn cq(re: f64, im: f64) -> CQuad {
    Complex::new(Quad::from(re), Quad::from(im))
}

pub fn real(x: Quad) -> CQuad {
    Complex::new(x, Quad::ZERO)
}

pub fn abs(z: &CQuad) -> Quad {
    (z.re * z.re + z.im * z.im).sqrt()
}

pub fn abs_f64(z: &CQuad) -> f64 {
    abs(z).0
}

pub fn to_pair(z: &CQuad) -> [f64; 2] {
    [z.re.0 + z.re.1, z.im.0 + z.im.1]
}

pub fn from_c64(z: Complex<f64>) -> CQuad {
    cq(z.re, z.im)
}

pub fn to_c64(z: &CQuad) -> Complex<f64> {
    let [re, im] = to_pair(z);
    Complex::new(re, im)
}

pub fn floor(x: Quad) -> Quad {
    let t = x.trunc();
    if t > x {
        t - Quad::ONE
    } else {
        t
    }
}

/// Nearest integer, ties rounded up.
pub fn round(x: Quad) -> Quad {
    floor(x + q(0.5))
}

pub fn to_i64(x: Quad) -> i64 {
    (x.0 as i128 + x.1 as i128) as i64
}

pub fn recip(z: &CQuad) -> CQuad {
    let n = z.re * z.re + z.im * z.im;
    Complex::new(z.re / n, -z.im / n)
}

pub fn powi(z: &CQuad, n: i32) -> CQuad {
    let (mut base, mut e) = if n < 0 { (recip(z), -n) } else { (*z, n) };
    let mut acc = cq(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base;
        }
        base = base * base;
        e >>= 1;
    }
    acc
}

/// Principal square root.
pub fn sqrt(z: &CQuad) -> CQuad {
    let r = abs(z);
    if r == Quad::ZERO {
        return *z;
    }
    let half = q(0.5);
    let nonneg = |x: Quad| if x < Quad::ZERO { Quad::ZERO } else { x };
    let re = nonneg((r + z.re) * half).sqrt();
    let im = nonneg((r - z.re) * half).sqrt();
    if z.im < Quad::ZERO {
        Complex::new(re, -im)
    } else {
        Complex::new(re, im)
    }
}

/// Real cube root by one Newton step from the `f64` root.
pub fn cbrt(x: Quad) -> Quad {
    let y = q(x.0.cbrt());
    if y == Quad::ZERO {
        return y;
    }
    y - (y * y * y - x) / (q(3.0) * y * y)
}

/// `|a - b| <= rel * (1 + |a| + |b|)`.
pub fn close(a: &CQuad, b: &CQuad, rel: f64) -> bool {
    abs_f64(&(a - b)) <= rel * (1.0 + abs_f64(a) + abs_f64(b))
}

/// Exact rational to double-double.
pub fn rational_to_quad(r: &crate::exactnum::Rational) -> Quad {
    crate::exactnum::Number::Rational(r.clone())
        .to_quad()
        .expect("rationals are real")
}

/// Decimal rendering of the exact value `hi + lo` with `digits` significant
/// digits, rounded half up; scientific notation outside `1e-4 ..= 1e{digits}`.
pub fn to_decimal(x: Quad, digits: usize) -> String {
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero};
    let digits = digits.max(1);
    let exact = |v: f64| crate::exactnum::Rational::from_float(v).unwrap_or_default();
    if !x.0.is_finite() {
        return format!("{}", x.0);
    }
    let r = exact(x.0) + exact(x.1);
    if r.is_zero() {
        return "0".into();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let r = r.abs();
    let ten = |e: i64| {
        let p = crate::exactnum::Rational::from_integer(BigInt::from(10).pow(e.unsigned_abs() as u32));
        if e >= 0 {
            p
        } else {
            p.recip()
        }
    };
    let mut e = x.0.abs().log10().floor() as i64;
    while r >= ten(e + 1) {
        e += 1;
    }
    while r < ten(e) {
        e -= 1;
    }
    let shift = digits as i64 - 1 - e;
    let mut n = (&r * ten(shift) + crate::exactnum::Rational::new(1.into(), 2.into()))
        .floor()
        .to_integer();
    if n >= BigInt::from(10).pow(digits as u32) {
        n /= 10;
        e += 1;
    }
    let m = n.to_string();
    let trim = |int: &str, frac: &str| {
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        }
    };
    if e < -4 || e >= digits as i64 {
        format!("{sign}{}e{e}", trim(&m[..1], &m[1..]))
    } else if e < 0 {
        let zeros = "0".repeat((-e - 1) as usize);
        format!("{sign}{}", trim("0", &format!("{zeros}{m}")))
    } else {
        let split = e as usize + 1;
        format!("{sign}{}", trim(&m[..split], &m[split..]))
    }
}

/// `re + im i` with [`to_decimal`] parts.
pub fn complex_to_decimal(z: &CQuad, digits: usize) -> String {
    let re = to_decimal(z.re, digits);
    let im = to_decimal(z.im, digits);
    match im.strip_prefix('-') {
        Some(abs) => format!("{re} - {abs}i"),
        None => format!("{re} + {im}i"),
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(q(1728.0), 31), "1728");
        assert_eq!(to_decimal(q(-0.125), 31), "-0.125");
        assert_eq!(to_decimal(q(0.0), 5), "0");
        assert_eq!(to_decimal(q(2.0).sqrt(), 31), "1.41421356237309504880168872421");
        assert_eq!(to_decimal(q(1.0) / q(3.0), 5), "0.33333");
        assert_eq!(to_decimal(q(-32768.0) * q(1e20), 4), "-3.277e24");
        assert_eq!(to_decimal(q(2.5e-7), 3), "2.5e-7");
        assert_eq!(to_decimal(q(9.9996), 4), "10");
        assert_eq!(complex_to_decimal(&cq(1.5, -2.0), 10), "1.5 - 2i");
    }

    use super::*;

    #[test]
    fn cube_root_of_four() {
        let c = cbrt(q(4.0));
        let err = c * c * c - q(4.0);
        assert!(err.abs() < q(1e-30));
    }

    #[test]
    fn complex_sqrt_branch() {
        let z = cq(-3.0, -4.0);
        let s = sqrt(&z);
        assert!(close(&(s * s), &z, 1e-30));
        assert!(s.re > Quad::ZERO);
    }

    #[test]
    fn floors_and_powers() {
        assert_eq!(to_i64(floor(q(-2.5))), -3);
        assert_eq!(to_i64(round(q(2.5))), 3);
        let z = cq(0.3, 1.1);
        assert!(close(&(powi(&z, -3) * powi(&z, 3)), &cq(1.0, 0.0), 1e-30));
    }
}
