use ecnc_core::cfrac::{gl2_equivalent, sl2_equivalent, sqrt_cf, surd_cf, ContinuedFraction, UnimodularMatrix};
use ecnc_core::{Number, QuadraticSurd, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;
use std::cmp::Ordering;

const B: i64 = 50;

fn surd(p: i64, q: i64, r: i64, d: i64) -> Option<QuadraticSurd> {
    match QuadraticSurd::normalize(p, q, r, d).ok()? {
        Number::Surd(s) => Some(s),
        Number::Rational(_) => None,
    }
}

/// Exhaustive search over determinant-one matrices with entries bounded by `B`.
fn brute_force_sl2(x: &QuadraticSurd, y: &QuadraticSurd) -> Option<[i64; 4]> {
    if x.d() != y.d() {
        return None;
    }
    let xf = Number::Surd(x.clone()).to_f64();
    let yf = Number::Surd(y.clone()).to_f64();
    let exact = |a: i64, b: i64, c: i64, d: i64| {
        let img = Number::Surd(x.clone()).mobius(&a.into(), &b.into(), &c.into(), &d.into());
        matches!(img, Ok(v) if v == Number::Surd(y.clone()))
    };
    for a in -B..=B {
        for b in -B..=B {
            for c in -B..=B {
                let ds: Vec<i64> = if a == 0 {
                    if b * c == -1 {
                        (-B..=B).collect()
                    } else {
                        continue;
                    }
                } else if (1 + b * c) % a == 0 {
                    vec![(1 + b * c) / a]
                } else {
                    continue;
                };
                for d in ds {
                    if d.abs() > B {
                        continue;
                    }
                    let lhs = yf * (c as f64 * xf + d as f64);
                    let rhs = a as f64 * xf + b as f64;
                    if (lhs - rhs).abs() > 1e-6 * (1.0 + rhs.abs()) {
                        continue;
                    }
                    if exact(a, b, c, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

fn image(m: &UnimodularMatrix, x: &QuadraticSurd) -> QuadraticSurd {
    match m.apply(&Number::Surd(x.clone())).unwrap() {
        Number::Surd(s) => s,
        Number::Rational(_) => unreachable!(),
    }
}

fn small_sl2() -> impl Strategy<Value = UnimodularMatrix> {
    // products of T^k and S generate SL2(Z)
    prop::collection::vec(-3i64..=3, 1..4).prop_map(|ks| {
        let mut m = UnimodularMatrix::identity();
        for k in ks {
            m = m.mul(&UnimodularMatrix::translation(k)).mul(&UnimodularMatrix::inversion());
        }
        m
    })
}

fn real_surd() -> impl Strategy<Value = QuadraticSurd> {
    (-6i64..=6, 1i64..=3, 1i64..=4, prop::sample::select(vec![2i64, 3, 5, 6, 7, 10, 13]))
        .prop_filter_map("irrational", |(p, q, r, d)| surd(p, q, r, d))
}

#[test]
fn palindrome_law_up_to_1000() {
    for d in 2..=1000i64 {
        let s = (d as f64).sqrt() as i64;
        if s * s == d || (s + 1) * (s + 1) == d {
            continue;
        }
        let cf = sqrt_cf(d).unwrap();
        assert!(cf.palindrome_check(), "D = {d}: {cf}");
    }
}

#[test]
fn oracle_agrees_on_handpicked_pairs() {
    let cases = [
        ("sqrt(2)", "1 + sqrt(2)"),
        ("sqrt(2)", "sqrt(2)/2"),
        ("sqrt(3)", "(1 + sqrt(3))/2"),
        ("sqrt(3)", "sqrt(3)/3"),
        ("(1 + sqrt(5))/2", "(-1 + sqrt(5))/2"),
        ("sqrt(5)", "(1 + sqrt(5))/2"),
        ("sqrt(7)", "2*sqrt(7)"),
        ("sqrt(10)", "(1 + sqrt(10))/3"),
    ];
    for (a, b) in cases {
        let x: QuadraticSurd = a.parse().unwrap();
        let y: QuadraticSurd = b.parse().unwrap();
        let fast = sl2_equivalent(&x, &y).unwrap();
        let brute = brute_force_sl2(&x, &y);
        assert_eq!(fast.is_some(), brute.is_some(), "{a} vs {b}: {fast:?} / {brute:?}");
    }
}

#[test]
fn golden_ratio_brute_force_b5() {
    let phi: QuadraticSurd = "(1 + sqrt(5))/2".parse().unwrap();
    let inv: QuadraticSurd = "(-1 + sqrt(5))/2".parse().unwrap();
    let found = (-5i64..=5).any(|a| {
        (-5i64..=5).any(|b| {
            (-5i64..=5).any(|c| {
                (-5i64..=5).any(|d| {
                    (a * d - b * c).abs() == 1
                        && Number::Surd(phi.clone()).mobius(&a.into(), &b.into(), &c.into(), &d.into())
                            == Ok(Number::Surd(inv.clone()))
                })
            })
        })
    });
    assert!(found);
    assert!(gl2_equivalent(&phi, &inv).unwrap().is_some());
}

fn abs_less(x: &Number, bound: &Rational) -> bool {
    let b = Number::Rational(bound.clone());
    x.cmp_real(&b).unwrap() == Ordering::Less && x.cmp_real(&b.neg()).unwrap() == Ordering::Greater
}

#[test]
fn convergents_approximate_sqrt() {
    for d in [2i64, 3, 7, 19, 43, 94, 661] {
        let x = Number::Surd(QuadraticSurd::sqrt(d).unwrap());
        for c in sqrt_cf(d).unwrap().convergents(25) {
            let q = c.denom().clone();
            let diff = x.sub(&Number::Rational(c)).unwrap();
            assert!(abs_less(&diff, &Rational::new(BigInt::from(1), &q * &q)));
        }
    }
}

#[test]
fn period_is_minimal() {
    for d in 2..=300i64 {
        let s = (d as f64).sqrt() as i64;
        if s * s == d || (s + 1) * (s + 1) == d {
            continue;
        }
        let cf = sqrt_cf(d).unwrap();
        let p = cf.period();
        let l = p.len();
        for k in (1..l).filter(|k| l % k == 0) {
            assert!((k..l).any(|i| p[i] != p[i - k]), "D = {d} period not minimal");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expansion_reconstructs_value(x in real_surd()) {
        let cf = surd_cf(&x, 10_000).unwrap();
        prop_assert_eq!(cf.value().unwrap(), Number::Surd(x));
        let back: ContinuedFraction = cf.to_string().parse().unwrap();
        prop_assert_eq!(back, cf);
    }

    #[test]
    fn images_are_equivalent(x in real_surd(), m in small_sl2()) {
        let y = image(&m, &x);
        let w = sl2_equivalent(&x, &y).unwrap();
        prop_assert!(w.is_some());
        prop_assert_eq!(image(w.as_ref().unwrap(), &x), y.clone());
        prop_assert!(gl2_equivalent(&x, &y).unwrap().is_some());
    }

    #[test]
    fn equivalence_relation(x in real_surd(), m1 in small_sl2(), m2 in small_sl2()) {
        let y = image(&m1, &x);
        let z = image(&m2, &y);
        prop_assert!(sl2_equivalent(&x, &x).unwrap().is_some());
        let xy = sl2_equivalent(&x, &y).unwrap().unwrap();
        let yx = sl2_equivalent(&y, &x).unwrap().unwrap();
        prop_assert_eq!(image(&yx, &y), x.clone());
        prop_assert_eq!(image(&xy.inverse(), &y), x.clone());
        let yz = sl2_equivalent(&y, &z).unwrap().unwrap();
        prop_assert_eq!(image(&yz.mul(&xy), &x), z.clone());
        prop_assert!(sl2_equivalent(&x, &z).unwrap().is_some());
    }

    #[test]
    fn sl2_agrees_with_brute_force(x in real_surd(), y in real_surd()) {
        let fast = sl2_equivalent(&x, &y).unwrap();
        let brute = brute_force_sl2(&x, &y);
        if brute.is_some() {
            prop_assert!(fast.is_some(), "{} vs {}: brute {:?}", x, y, brute);
        }
        if let Some(w) = &fast {
            prop_assert_eq!(image(w, &x), y.clone());
            if let Some([a, b, c, d]) = w.to_i64() {
                if [a, b, c, d].iter().all(|v| v.abs() <= B) {
                    prop_assert!(brute.is_some());
                }
            }
        } else {
            prop_assert!(brute.is_none());
        }
        if fast.is_some() {
            prop_assert!(gl2_equivalent(&x, &y).unwrap().is_some());
        }
    }
}
