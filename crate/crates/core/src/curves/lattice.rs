//! Lattice sums for `L = Z + Z tau`: Eisenstein series and the
//! Weierstrass function.
//!
//! Sums run over square shells `max(|m|, |n|) = k`, `k <= N`, of a reduced
//! basis of the same lattice. The omitted shells `k > N` are added back by an
//! Euler-Maclaurin expansion of the shell sums in powers of `1/k`.

use qd::Quad;

use super::forms::WeierstrassCurve;
use super::modulus::{reduce_modulus, Modulus};
use super::numeric::{self, cq, q, CQuad};
use crate::cfrac::UnimodularMatrix;
use crate::error::{Error, Result};

/// Minimum number of shells accepted.
pub const MIN_SHELLS: u32 = 10;
/// Terms of the power series in `z` used for the tail of the Weierstrass sum.
const WP_TERMS: usize = 12;
/// Euler-Maclaurin correction terms.
const EM_TERMS: usize = 10;
/// Distance below which `z` counts as a lattice point.
pub const POLE_RADIUS: f64 = 1e-6;

/// `B_2, B_4, ..., B_24` as `(numerator, denominator)`.
const BERNOULLI: [(f64, f64); 12] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
];

/// `B_{2i}/(2i)!`
fn bernoulli_over_factorial(i: usize) -> Quad {
    let (n, d) = BERNOULLI[i - 1];
    let mut f = Quad::ONE;
    for k in 1..=(2 * i) {
        f *= q(k as f64);
    }
    q(n) / q(d) / f
}

/// Falling factorial `x (x-1) ... (x-r+1)`.
fn falling(x: f64, r: usize) -> Quad {
    (0..r).fold(Quad::ONE, |acc, i| acc * q(x - i as f64))
}

/// `sum_{k > n} k^-s` by Euler-Maclaurin.
fn zeta_tail(s: usize, n: u32) -> Quad {
    let nq = q(n as f64);
    let sf = s as f64;
    let pow = |e: i32| -> Quad { numeric::powi(&numeric::real(nq), e).re };
    let mut acc = pow(1 - s as i32) / q(sf - 1.0) - pow(-(s as i32)) * q(0.5);
    for i in 1..=EM_TERMS {
        let r = 2 * i - 1;
        acc -= bernoulli_over_factorial(i) * falling(-sf, r) * pow(-(s as i32) - r as i32);
    }
    acc
}

/// `sum_{k > n} sum_{max(|m|,|j|) = k} (m + j tau)^-p` for even `p >= 4`,
/// with the magnitude of the last correction kept as an error estimate.
fn shell_tail(tau: &CQuad, p: usize, n: u32) -> (CQuad, f64) {
    let one = cq(1.0, 0.0);
    let edges = [(*tau, one), (-tau, one), (one, *tau), (-one, *tau)];
    let pf = p as f64;
    // leading term: integral of (a + t b)^-p over [-1, 1]
    let mut total = CQuad::new(Quad::ZERO, Quad::ZERO);
    let mut i0 = total;
    for (a, b) in &edges {
        let up = numeric::powi(&(a + b), 1 - p as i32);
        let lo = numeric::powi(&(a - b), 1 - p as i32);
        i0 += (up - lo) / (b * numeric::real(q(1.0 - pf)));
    }
    total += i0 * numeric::real(zeta_tail(p - 1, n));
    let mut last = 0.0;
    for j in 1..=EM_TERMS {
        let r = 2 * j - 1;
        let mut ij = CQuad::new(Quad::ZERO, Quad::ZERO);
        for (a, b) in &edges {
            let d_up = numeric::powi(&(a + b), -(p as i32) - r as i32);
            let d_lo = numeric::powi(&(a - b), -(p as i32) - r as i32);
            ij += numeric::powi(b, r as i32) * (d_up - d_lo);
        }
        let term = ij
            * numeric::real(falling(-pf, r) * bernoulli_over_factorial(j) * zeta_tail(p - 1 + 2 * j, n));
        total += term;
        last = numeric::abs_f64(&term);
    }
    (total, last)
}

/// Lattice `Z + Z tau` prepared for summation with `shells` square shells.
#[derive(Clone, Debug)]
pub struct Lattice {
    tau: CQuad,
    reduced: CQuad,
    matrix: UnimodularMatrix,
    /// `L = omega1 (Z + Z reduced)`
    omega1: CQuad,
    shells: u32,
    /// lattice points of the reduced basis, shell by shell, with `1/w^2`
    points: Vec<(i64, i64, CQuad, CQuad)>,
    shell_ends: Vec<usize>,
    /// `T_{2j+2}` for `j = 1..=WP_TERMS`
    tails: Vec<CQuad>,
    tail_error: f64,
}

/// Eisenstein invariants with their truncation diagnostics.
#[derive(Clone, Debug)]
pub struct Eisenstein {
    pub curve: WeierstrassCurve,
    /// Magnitude of the contribution of the outermost summed shell.
    pub last_shell: f64,
    /// Estimated error after the tail correction.
    pub error_estimate: f64,
    pub shells: u32,
}

impl Lattice {
    pub fn new(tau: &Modulus, shells: u32) -> Result<Self> {
        if shells < MIN_SHELLS {
            return Err(Error::Parameter(format!(
                "shells must be at least {MIN_SHELLS}, got {shells}"
            )));
        }
        let (reduced, matrix) = reduce_modulus(tau)?;
        let (tau, reduced) = (tau.value(), reduced.value());
        let c = super::modulus::big_to_quad(matrix.c());
        let d = super::modulus::big_to_quad(matrix.d());
        let omega1 = CQuad::new(c * tau.re + d, c * tau.im);
        let mut points = Vec::new();
        let mut shell_ends = Vec::new();
        for k in 1..=shells as i64 {
            for (m, n) in shell(k) {
                let w = CQuad::new(q(m as f64) + q(n as f64) * reduced.re, q(n as f64) * reduced.im);
                let inv = numeric::recip(&w);
                points.push((m, n, w, inv * inv));
            }
            shell_ends.push(points.len());
        }
        let mut tails = Vec::with_capacity(WP_TERMS);
        let mut tail_error = 0.0f64;
        for j in 1..=WP_TERMS {
            let (t, e) = shell_tail(&reduced, 2 * j + 2, shells);
            tails.push(t);
            tail_error = tail_error.max(e);
        }
        Ok(Lattice {
            tau,
            reduced,
            matrix,
            omega1,
            shells,
            points,
            shell_ends,
            tails,
            tail_error,
        })
    }

    pub fn tau(&self) -> CQuad {
        self.tau
    }

    pub fn reduced_tau(&self) -> CQuad {
        self.reduced
    }

    pub fn reduction(&self) -> &UnimodularMatrix {
        &self.matrix
    }

    pub fn shells(&self) -> u32 {
        self.shells
    }

    fn rounding_error(&self, scale: f64) -> f64 {
        // double-double rounding accumulated over every summed point
        self.points.len() as f64 * 1e-31 * scale
    }

    /// `g2 = 60 sum w^-4`, `g3 = 140 sum w^-6` over the nonzero lattice points.
    pub fn eisenstein(&self) -> Result<Eisenstein> {
        let zero = CQuad::new(Quad::ZERO, Quad::ZERO);
        let (mut g4, mut g6) = (zero, zero);
        let mut start = 0;
        let mut last = (zero, zero);
        for &end in &self.shell_ends {
            let (mut s4, mut s6) = (zero, zero);
            for (_, _, _, inv2) in &self.points[start..end] {
                let inv4 = inv2 * inv2;
                s4 += inv4;
                s6 += inv4 * inv2;
            }
            g4 += s4;
            g6 += s6;
            last = (s4, s6);
            start = end;
        }
        g4 += self.tails[0];
        g6 += self.tails[1];
        let w4 = numeric::powi(&self.omega1, -4);
        let w6 = numeric::powi(&self.omega1, -6);
        let g2 = numeric::real(q(60.0)) * g4 * w4;
        let g3 = numeric::real(q(140.0)) * g6 * w6;
        let last_shell = (60.0 * numeric::abs_f64(&(last.0 * w4))).max(140.0 * numeric::abs_f64(&(last.1 * w6)));
        let scale = 140.0 * numeric::abs_f64(&w4).max(numeric::abs_f64(&w6)).max(1.0);
        let error_estimate = scale * self.tail_error + self.rounding_error(scale);
        Ok(Eisenstein {
            curve: WeierstrassCurve::new(g2, g3)?,
            last_shell,
            error_estimate,
            shells: self.shells,
        })
    }

    /// Reduces `z/omega1` into the fundamental parallelogram of the reduced
    /// basis, rejecting points near the lattice.
    fn reduce_point(&self, z: &CQuad) -> Result<CQuad> {
        let w = z / self.omega1;
        let t = self.reduced;
        let v = w.im / t.im;
        let u = w.re - v * t.re;
        let (ku, kv) = (numeric::round(u), numeric::round(v));
        let w = CQuad::new(w.re - ku - kv * t.re, w.im - kv * t.im);
        let scale = numeric::abs_f64(&self.omega1);
        for m in -1i64..=1 {
            for n in -1i64..=1 {
                let p = CQuad::new(q(m as f64) + q(n as f64) * t.re, q(n as f64) * t.im);
                let dist = numeric::abs_f64(&(w - p)) * scale;
                if dist < POLE_RADIUS {
                    // back to the original basis: omega1 (M + N t) = (M d + N b) + (M c + N a) tau
                    let big_m = numeric::to_i64(ku) + m;
                    let big_n = numeric::to_i64(kv) + n;
                    let e = self.matrix.to_i64().unwrap_or([0; 4]);
                    let [a, b, c, d] = e;
                    return Err(Error::Pole {
                        m: big_m * d + big_n * b,
                        n: big_m * c + big_n * a,
                        distance: dist,
                    });
                }
            }
        }
        Ok(w)
    }

    /// `(wp(z), wp'(z))` together with an error estimate for `wp`.
    pub fn wp_pair(&self, z: &CQuad) -> Result<(CQuad, CQuad, f64)> {
        let w = self.reduce_point(z)?;
        let zero = CQuad::new(Quad::ZERO, Quad::ZERO);
        let inv = numeric::recip(&w);
        let mut p = inv * inv;
        let mut dp = numeric::real(q(-2.0)) * p * inv;
        let mut sum = zero;
        let mut dsum = zero;
        for (_, _, om, inv_om2) in &self.points {
            let r = numeric::recip(&(w - om));
            let r2 = r * r;
            sum += r2 - inv_om2;
            dsum += r2 * r;
        }
        p += sum;
        dp += numeric::real(q(-2.0)) * dsum;
        // tail: sum_j (2j+1) w^{2j} T_{2j+2}, and its derivative
        let w2 = w * w;
        let mut wpow = w2;
        let mut wpow_d = w;
        let mut tail_err = 0.0f64;
        for (idx, t) in self.tails.iter().enumerate() {
            let j = (idx + 1) as f64;
            let term = numeric::real(q(2.0 * j + 1.0)) * wpow * t;
            p += term;
            dp += numeric::real(q((2.0 * j + 1.0) * 2.0 * j)) * wpow_d * t;
            tail_err = numeric::abs_f64(&term);
            wpow *= w2;
            wpow_d *= w2;
        }
        let w2s = numeric::powi(&self.omega1, -2);
        let w3s = w2s / self.omega1;
        let value = p * w2s;
        let scale = numeric::abs_f64(&w2s);
        let err = scale * (tail_err + self.tail_error) + self.rounding_error(scale * (1.0 + numeric::abs_f64(&p)));
        Ok((value, dp * w3s, err))
    }

    pub fn wp(&self, z: &CQuad) -> Result<CQuad> {
        Ok(self.wp_pair(z)?.0)
    }

    pub fn wp_prime(&self, z: &CQuad) -> Result<CQuad> {
        Ok(self.wp_pair(z)?.1)
    }
}

/// Points `(m, n)` with `max(|m|, |n|) = k`, in a fixed order.
fn shell(k: i64) -> impl Iterator<Item = (i64, i64)> {
    let top = (-k..=k).map(move |m| (m, k));
    let bottom = (-k..=k).map(move |m| (m, -k));
    let right = (-k + 1..k).map(move |n| (k, n));
    let left = (-k + 1..k).map(move |n| (-k, n));
    top.chain(bottom).chain(right).chain(left)
}

/// `g2, g3` of `Z + Z tau` from `shells` square shells plus tail correction.
pub fn eisenstein_g2_g3(tau: &Modulus, shells: u32) -> Result<Eisenstein> {
    Lattice::new(tau, shells)?.eisenstein()
}

pub fn wp(z: &CQuad, tau: &Modulus, shells: u32) -> Result<CQuad> {
    Lattice::new(tau, shells)?.wp(z)
}

pub fn wp_prime(z: &CQuad, tau: &Modulus, shells: u32) -> Result<CQuad> {
    Lattice::new(tau, shells)?.wp_prime(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_tail_matches_direct_sum() {
        // sum_{k > n} k^-4 = zeta(4) - sum_{k <= n} k^-4
        let pi = Quad::PI;
        let zeta4 = pi * pi * pi * pi / q(90.0);
        let direct = |n: u32| {
            let head = (1..=n).fold(Quad::ZERO, |acc, k| acc + Quad::ONE / q((k as f64).powi(4)));
            zeta4 - head
        };
        // truncation error of the expansion at n = 10 is 4.9e-20
        assert!((zeta_tail(4, 10) - direct(10)).abs() < q(6e-20));
        assert!((zeta_tail(4, 40) - direct(40)).abs() < q(1e-30));
    }

    #[test]
    fn shell_order_is_complete() {
        for k in 1..6 {
            let pts: Vec<_> = shell(k).collect();
            assert_eq!(pts.len() as i64, 8 * k);
            let mut dedup = pts.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), pts.len());
        }
    }

    #[test]
    fn tail_correction_converges() {
        // g2 from 10 and 40 shells agree far beyond the naive truncation error
        let tau = Modulus::float(0.2, 1.1).unwrap();
        let a = eisenstein_g2_g3(&tau, 10).unwrap();
        let b = eisenstein_g2_g3(&tau, 40).unwrap();
        assert!(numeric::close(&a.curve.g2, &b.curve.g2, 1e-20));
        assert!(numeric::close(&a.curve.g3, &b.curve.g3, 1e-20));
        assert!(a.last_shell > 1e-4);
    }

    #[test]
    fn shells_floor() {
        let tau = Modulus::float(0.0, 1.0).unwrap();
        assert!(matches!(eisenstein_g2_g3(&tau, 9), Err(Error::Parameter(_))));
    }

    #[test]
    fn pole_reported() {
        let tau = Modulus::float(0.1, 1.2).unwrap();
        let z = CQuad::new(q(2.0) + q(0.1), q(1.2));
        match wp(&z, &tau, 20) {
            Err(Error::Pole { m, n, .. }) => assert_eq!((m, n), (2, 1)),
            other => panic!("expected pole, got {other:?}"),
        }
    }
}
