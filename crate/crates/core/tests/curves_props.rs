use ecnc_core::cfrac::UnimodularMatrix;
use ecnc_core::curves::numeric::{self, cq, CQuad};
use ecnc_core::curves::{
    act, eisenstein_g2_g3, legendre_to_weierstrass, point_add, reduce_modulus, torus_add, transport, AffinePoint,
    Cubic, Lattice, LegendreCurve, Modulus,
};
use ecnc_core::{Error, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SHELLS: u32 = 60;

fn c64(z: &CQuad) -> num_complex::Complex<f64> {
    numeric::to_c64(z)
}

fn tol(p: &CQuad) -> f64 {
    1e-6 * (1.0 + numeric::abs_f64(p).powi(3))
}

fn random_tau(rng: &mut ChaCha8Rng) -> Modulus {
    Modulus::float(rng.gen_range(-0.5..0.5), rng.gen_range(0.9..2.0)).unwrap()
}

fn random_z(rng: &mut ChaCha8Rng, tau: &CQuad) -> CQuad {
    let (u, v): (f64, f64) = (rng.gen_range(0.05..0.95), rng.gen_range(0.05..0.95));
    CQuad::new(numeric::q(u) + numeric::q(v) * tau.re, numeric::q(v) * tau.im)
}

fn random_sl2(rng: &mut ChaCha8Rng, bound: i64) -> UnimodularMatrix {
    // product of random translations and inversions
    let mut m = UnimodularMatrix::identity();
    for _ in 0..rng.gen_range(1..5) {
        m = m.mul(&UnimodularMatrix::translation(rng.gen_range(-bound..=bound)));
        m = m.mul(&UnimodularMatrix::inversion());
    }
    m
}

#[test]
fn differential_equation_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let tau = random_tau(&mut rng);
        let lat = Lattice::new(&tau, SHELLS).unwrap();
        let e = lat.eisenstein().unwrap();
        let z = random_z(&mut rng, &tau.value());
        let (p, dp, _) = lat.wp_pair(&z).unwrap();
        let (g2, g3) = (e.curve.g2, e.curve.g3);
        let rhs = cq(4.0, 0.0) * p * p * p - g2 * p - g3;
        let lhs = dp * dp;
        let err = numeric::abs_f64(&(lhs - rhs));
        assert!(err < tol(&p), "tau={:?} z={:?} err={err}", c64(&tau.value()), c64(&z));
    }
}

#[test]
fn wp_even_and_doubly_periodic() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let tau = random_tau(&mut rng);
        let t = tau.value();
        let lat = Lattice::new(&tau, SHELLS).unwrap();
        let z = random_z(&mut rng, &t);
        let p = lat.wp(&z).unwrap();
        let t_ = tol(&p);
        for other in [-z, z + cq(1.0, 0.0), z + t, z - cq(2.0, 0.0) + t + t] {
            let d = numeric::abs_f64(&(lat.wp(&other).unwrap() - p));
            assert!(d < t_, "{d}");
        }
        let dp = lat.wp_prime(&z).unwrap();
        assert!(numeric::abs_f64(&(lat.wp_prime(&-z).unwrap() + dp)) < t_);
    }
}

#[test]
fn wp_prime_matches_difference_quotient() {
    let tau = Modulus::float(0.1, 1.2).unwrap();
    let lat = Lattice::new(&tau, SHELLS).unwrap();
    let z = cq(0.3, 0.4);
    let h = cq(1e-8, 0.0);
    let fd = (lat.wp(&(z + h)).unwrap() - lat.wp(&(z - h)).unwrap()) / (cq(2.0, 0.0) * h);
    let dp = lat.wp_prime(&z).unwrap();
    assert!(numeric::close(&fd, &dp, 1e-12));
}

#[test]
fn symmetric_lattices_have_vanishing_invariant() {
    let square = eisenstein_g2_g3(&Modulus::parse("sqrt(-1)").unwrap(), SHELLS).unwrap();
    assert!(numeric::abs_f64(&square.curve.g3) < 1e-20);
    // g2(i) = Gamma(1/4)^8 / (16 pi^2) ... compared through j = 1728
    let j = square.curve.j_invariant().unwrap();
    assert!(numeric::close(&j, &cq(1728.0, 0.0), 1e-18));
    let hex = eisenstein_g2_g3(&Modulus::parse("(1+sqrt(-3))/2").unwrap(), SHELLS).unwrap();
    assert!(numeric::abs_f64(&hex.curve.g2) < 1e-20);
    assert!(numeric::abs_f64(&hex.curve.j_invariant().unwrap()) < 1e-15);
}

#[test]
fn known_class_number_one_j_values() {
    // j((1 + sqrt(-7))/2) = -3375, j(sqrt(-2)) = 8000
    for (tau, j) in [("(1+sqrt(-7))/2", -3375.0), ("sqrt(-2)", 8000.0), ("(1+sqrt(-11))/2", -32768.0)] {
        let e = eisenstein_g2_g3(&Modulus::parse(tau).unwrap(), SHELLS).unwrap();
        let got = e.curve.j_invariant().unwrap();
        assert!(numeric::close(&got, &cq(j, 0.0), 1e-18), "{tau}: {:?}", c64(&got));
    }
}

#[test]
fn j_is_modular() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let tau = random_tau(&mut rng);
        let j0 = eisenstein_g2_g3(&tau, SHELLS).unwrap().curve.j_invariant().unwrap();
        for _ in 0..20 {
            let m = random_sl2(&mut rng, 3);
            let t2 = act(&m, &tau.value());
            if t2.im.0 < 1e-3 {
                continue;
            }
            let j = eisenstein_g2_g3(&Modulus::from_cquad(t2).unwrap(), SHELLS)
                .unwrap()
                .curve
                .j_invariant()
                .unwrap();
            assert!(numeric::close(&j, &j0, 1e-6), "{m}");
        }
    }
}

#[test]
fn reduction_idempotent_and_verified() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for text in ["sqrt(-1)", "(1+sqrt(-3))/2", "(7+sqrt(-5))/3", "(-11+sqrt(-23))/12", "(100+sqrt(-2))/7"] {
        let tau = Modulus::parse(text).unwrap();
        let (red, m) = reduce_modulus(&tau).unwrap();
        let Modulus::Exact(s) = &tau else { unreachable!() };
        let image = ecnc_core::Number::Surd(s.clone())
            .mobius(m.a(), m.b(), m.c(), m.d())
            .unwrap();
        let Modulus::Exact(r) = &red else { panic!("exact input reduced to float") };
        assert_eq!(image, ecnc_core::Number::Surd(r.clone()));
        let (again, m2) = reduce_modulus(&red).unwrap();
        assert_eq!(again, red);
        assert_eq!(m2, UnimodularMatrix::identity());
    }
    for _ in 0..30 {
        let tau = Modulus::float(rng.gen_range(-20.0..20.0), rng.gen_range(0.01..3.0)).unwrap();
        let (red, m) = reduce_modulus(&tau).unwrap();
        assert!(numeric::close(&act(&m, &tau.value()), &red.value(), 1e-12));
        let v = red.value();
        assert!(v.re.0 >= -0.5 - 1e-12 && v.re.0 < 0.5 + 1e-12);
        assert!(numeric::abs_f64(&v) >= 1.0 - 1e-12);
        let (again, _) = reduce_modulus(&red).unwrap();
        assert!(numeric::close(&again.value(), &v, 1e-20));
    }
}

/// `j` of `y^2 = x(x-1)(x-lambda)`, computed directly from the Legendre form.
fn legendre_j_oracle(l: num_complex::Complex<f64>) -> num_complex::Complex<f64> {
    let one = num_complex::Complex::new(1.0, 0.0);
    let s = l * l - l + one;
    256.0 * s * s * s / (l * l * (l - one) * (l - one))
}

#[test]
fn legendre_j_agrees_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut done = 0;
    while done < 100 {
        let l = num_complex::Complex::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        if l.norm() > 10.0 || l.norm() < 0.1 || (l - 1.0).norm() < 0.1 {
            continue;
        }
        let w = legendre_to_weierstrass(&LegendreCurve::new(numeric::from_c64(l)).unwrap()).unwrap();
        let j = c64(&w.j_invariant().unwrap());
        let o = legendre_j_oracle(l);
        assert!((j - o).norm() <= 1e-9 * o.norm().max(1.0), "lambda={l} j={j} oracle={o}");
        done += 1;
    }
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Random rational points as multiples and sums of known generators.
fn sample_points(curve: &Cubic<Rational>, gens: &[AffinePoint<Rational>], rng: &mut ChaCha8Rng, n: usize) -> Vec<AffinePoint<Rational>> {
    let mut out = Vec::new();
    while out.len() < n {
        let mut acc = AffinePoint::Infinity;
        for g in gens {
            let k = rng.gen_range(-3..=3);
            acc = curve.add(&acc, &curve.mul(k, g).unwrap()).unwrap();
        }
        out.push(acc);
    }
    out
}

#[test]
fn exact_group_law_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let pt = |x: Rational, y: Rational| AffinePoint::new(x, y);
    let cases = [
        // y^2 = x^3 - x: torsion (0,0), (1,0), (-1,0)
        (Cubic::nonsingular(0, -1, 0).unwrap(), vec![pt(r(0, 1), r(0, 1)), pt(r(1, 1), r(0, 1))]),
        // y^2 = x^3 + 17
        (
            Cubic::nonsingular(0, 0, 17).unwrap(),
            vec![pt(r(-2, 1), r(3, 1)), pt(r(-1, 1), r(4, 1))],
        ),
        // y^2 = x^3 - 2
        (Cubic::nonsingular(0, 0, -2).unwrap(), vec![pt(r(3, 1), r(5, 1))]),
    ];
    let mut triples = 0;
    for (curve, gens) in &cases {
        let pts = sample_points(curve, gens, &mut rng, 60);
        for w in pts.windows(3) {
            let (p, q, s) = (&w[0], &w[1], &w[2]);
            assert!(curve.contains(p));
            let lhs = curve.add(&curve.add(p, q).unwrap(), s).unwrap();
            let rhs = curve.add(p, &curve.add(q, s).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(curve.add(p, q).unwrap(), curve.add(q, p).unwrap());
            assert_eq!(curve.add(p, &AffinePoint::Infinity).unwrap(), *p);
            assert!(curve.add(p, &curve.neg(p)).unwrap().is_infinity());
            triples += 1;
        }
    }
    assert!(triples >= 50);
}

#[test]
fn torus_addition_matches_chord_tangent() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let tau = Modulus::float(0.15, 1.1).unwrap();
    let lat = Lattice::new(&tau, SHELLS).unwrap();
    let e = lat.eisenstein().unwrap();
    let monic = e.curve.to_monic();
    let t = tau.value();
    let mut checked = 0;
    while checked < 10 {
        let z1 = random_z(&mut rng, &t);
        let z2 = random_z(&mut rng, &t);
        let z3 = torus_add(&z1, &z2, &tau);
        let p1 = transport(lat.wp(&z1).unwrap(), lat.wp_prime(&z1).unwrap());
        let p2 = transport(lat.wp(&z2).unwrap(), lat.wp_prime(&z2).unwrap());
        let Ok(sum) = point_add(&p1, &p2, &monic) else { continue };
        let (AffinePoint::Finite { x, .. }, Ok(x3)) = (sum, lat.wp(&z3)) else { continue };
        assert!(numeric::close(&x, &x3, 1e-5), "{:?} vs {:?}", c64(&x), c64(&x3));
        checked += 1;
    }
}

#[test]
fn poles_reported_in_original_basis() {
    let tau = Modulus::parse("(5+sqrt(-3))/2").unwrap();
    let lat = Lattice::new(&tau, SHELLS).unwrap();
    let t = tau.value();
    let z = cq(2.0, 0.0) + t * cq(-1.0, 0.0);
    match lat.wp(&z) {
        Err(Error::Pole { m, n, .. }) => assert_eq!((m, n), (2, -1)),
        other => panic!("{other:?}"),
    }
    assert!(Lattice::new(&tau, 5).is_err());
}
