use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::expand::{surd_orbit, Orbit, DEFAULT_MAX_TERMS};
use super::matrix::{Gl2Matrix, UnimodularMatrix};
use crate::error::{Error, Result};
use crate::exactnum::{Number, QuadraticSurd};

/// `M_k` with `x = M_k(x_k)`, built from the first `k` partial quotients.
fn prefix_matrix(orbit: &Orbit, k: usize) -> Gl2Matrix {
    let mut m = Gl2Matrix::identity();
    for i in 0..k {
        let step = Gl2Matrix {
            a: orbit.term(i).clone(),
            b: BigInt::one(),
            c: BigInt::one(),
            d: BigInt::zero(),
        };
        m = m.mul(&step);
    }
    m
}

fn check_real(x: &QuadraticSurd) -> Result<()> {
    if x.is_real() {
        Ok(())
    } else {
        Err(Error::domain(format!("{x} is not a real quadratic irrational")))
    }
}

fn fractional_part(x: &QuadraticSurd) -> Result<(BigInt, QuadraticSurd)> {
    let n = x.floor()?;
    match Number::Surd(x.clone()).sub(&Number::from(n.clone()))? {
        Number::Surd(f) => Ok((n, f)),
        Number::Rational(_) => unreachable!("irrational minus integer"),
    }
}

struct Coincidence {
    ox: Orbit,
    oy: Orbit,
    i: usize,
    j: usize,
    /// integer parts removed before expanding
    shift_x: BigInt,
    shift_y: BigInt,
}

/// First coincidence `x_i = y_j` of complete quotients of the fractional parts.
fn coincidence(x: &QuadraticSurd, y: &QuadraticSurd) -> Result<Option<Coincidence>> {
    check_real(x)?;
    check_real(y)?;
    if x.d() != y.d() {
        return Ok(None);
    }
    let (shift_x, fx) = fractional_part(x)?;
    let (shift_y, fy) = fractional_part(y)?;
    let ox = surd_orbit(&fx, DEFAULT_MAX_TERMS)?;
    let oy = surd_orbit(&fy, DEFAULT_MAX_TERMS)?;
    let ys: HashMap<QuadraticSurd, usize> = (0..oy.states.len())
        .map(|j| (oy.complete_quotient(j), j))
        .collect();
    let hit = (0..ox.states.len()).find_map(|i| ys.get(&ox.complete_quotient(i)).map(|&j| (i, j)));
    Ok(hit.map(|(i, j)| Coincidence {
        ox,
        oy,
        i,
        j,
        shift_x,
        shift_y,
    }))
}

fn witness(c: &Coincidence, i: usize) -> Gl2Matrix {
    // y - n = N_j(t), x - m = M_i(t)  =>  y = T(n) N_j M_i^{-1} T(-m) (x)
    let t = |n: &BigInt| Gl2Matrix {
        a: BigInt::one(),
        b: n.clone(),
        c: BigInt::zero(),
        d: BigInt::one(),
    };
    t(&c.shift_y)
        .mul(&prefix_matrix(&c.oy, c.j))
        .mul(&prefix_matrix(&c.ox, i).inverse())
        .mul(&t(&-&c.shift_x))
        .projective()
}

fn verify(m: &Gl2Matrix, x: &QuadraticSurd, y: &QuadraticSurd) -> Result<()> {
    let image = m.apply(&Number::Surd(x.clone()))?;
    if image == Number::Surd(y.clone()) {
        Ok(())
    } else {
        Err(Error::Contract(format!("witness {m} does not map {x} to {y}")))
    }
}

/// Decides whether `y = (a x + b)/(c x + d)` for some integer matrix of
/// determinant `1`, returning a witness when it exists.
///
/// Each expansion step has determinant `-1`, so a tail coincidence `x_i = y_j`
/// gives determinant `(-1)^(i+j)`. An odd period lets one side advance by a
/// full period to fix the parity; with an even period the parity is an
/// invariant and odd coincidences mean GL2- but not SL2-equivalence.
pub fn sl2_equivalent(x: &QuadraticSurd, y: &QuadraticSurd) -> Result<Option<UnimodularMatrix>> {
    let Some(c) = coincidence(x, y)? else {
        return Ok(None);
    };
    let mut c = c;
    if (c.i + c.j) % 2 == 1 {
        let l = c.ox.period_len();
        if l % 2 == 0 {
            return Ok(None);
        }
        // equal complete quotients stay equal when both sides advance, so step
        // into the period first; only there is x_{i+l} = x_i
        let lag = c.ox.period_start.saturating_sub(c.i);
        c.i += lag;
        c.j += lag;
        c.i += l;
    }
    let m = witness(&c, c.i);
    verify(&m, x, y)?;
    Ok(Some(UnimodularMatrix::try_from(m)?))
}

/// As [`sl2_equivalent`] with determinant `+1` or `-1`.
pub fn gl2_equivalent(x: &QuadraticSurd, y: &QuadraticSurd) -> Result<Option<Gl2Matrix>> {
    let Some(c) = coincidence(x, y)? else {
        return Ok(None);
    };
    let m = witness(&c, c.i);
    verify(&m, x, y)?;
    Ok(Some(m))
}
