use ecnc_core::cfrac::UnimodularMatrix;
use ecnc_core::curves::Modulus;
use ecnc_core::nctori::{
    arithmetic_complexity, functor_f, golden_table, morita_equivalent, rank_from_complexity, TorusDescriptor,
    DEFAULT_EVALUATOR,
};
use ecnc_core::exactnum::parse_number;
use ecnc_core::{Number, QuadraticSurd};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_det_one(rng: &mut ChaCha8Rng, bound: i64) -> [i64; 4] {
    loop {
        let (a, b, c) = (
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
        );
        if a == 0 || (1 + b * c) % a != 0 {
            continue;
        }
        let d = (1 + b * c) / a;
        if d.abs() <= bound {
            return [a, b, c, d];
        }
    }
}

fn sqrt_theta(d: i64) -> Number {
    Number::Surd(QuadraticSurd::sqrt(d).unwrap())
}

#[test]
fn morita_finds_verified_witnesses() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for row in golden_table() {
        let x = sqrt_theta(row.d);
        for _ in 0..20 {
            let [a, b, c, d] = random_det_one(&mut rng, 20);
            let (a, b, c, d) = (BigInt::from(a), BigInt::from(b), BigInt::from(c), BigInt::from(d));
            let y = x.mobius(&a, &b, &c, &d).unwrap();
            let res = morita_equivalent(
                &TorusDescriptor::exact(x.clone()).unwrap(),
                &TorusDescriptor::exact(y.clone()).unwrap(),
            )
            .unwrap();
            assert!(res.equivalent);
            let w: UnimodularMatrix = res.witness.unwrap();
            assert_eq!(w.as_gl2().det(), BigInt::from(1));
            assert_eq!(w.apply(&x).unwrap(), y, "D = {} witness {w}", row.d);
        }
    }
}

#[test]
fn cross_field_pairs_are_inequivalent() {
    let pairs = [
        ("sqrt(2)", "sqrt(3)"),
        ("sqrt(2)", "sqrt(7)"),
        ("sqrt(3)", "(1+sqrt(15))/2"),
        ("sqrt(5)", "(1+sqrt(13))/2"),
        ("sqrt(6)", "sqrt(10)"),
        ("sqrt(7)", "sqrt(11)"),
        ("(1+sqrt(5))/2", "(1+sqrt(17))/2"),
        ("sqrt(19)", "sqrt(23)"),
        ("3+sqrt(31)", "sqrt(43)/2"),
        ("sqrt(47)", "sqrt(59)"),
        ("sqrt(67)", "(2+sqrt(71))/3"),
    ];
    for (s1, s2) in pairs {
        let (t1, t2) = (TorusDescriptor::parse(s1).unwrap(), TorusDescriptor::parse(s2).unwrap());
        let r = morita_equivalent(&t1, &t2).unwrap();
        assert!(!r.equivalent, "{s1} ~ {s2}");
    }
}

#[test]
fn same_field_but_different_orbits() {
    // sqrt(2) = [1; (2)] and 2 sqrt(2) = [2; (1,4)] never share a tail
    let r = morita_equivalent(
        &TorusDescriptor::parse("sqrt(2)").unwrap(),
        &TorusDescriptor::parse("2*sqrt(2)").unwrap(),
    )
    .unwrap();
    assert!(!r.equivalent);
    let y = TorusDescriptor::parse("sqrt(12)/3").unwrap();
    let r = morita_equivalent(&TorusDescriptor::exact(sqrt_theta(3)).unwrap(), &y).unwrap();
    if let Some(w) = &r.witness {
        assert_eq!(w.apply(&sqrt_theta(3)).unwrap(), parse_number("sqrt(12)/3").unwrap());
    }
}

#[test]
fn functor_respects_cm_discriminant() {
    let groups = [
        vec!["sqrt(-7)", "(1+sqrt(-7))/2", "(3+sqrt(-7))/4", "2*sqrt(-7)"],
        vec!["sqrt(-3)", "(1+sqrt(-3))/2", "(5+sqrt(-3))/7"],
        vec!["sqrt(-19)", "(1+sqrt(-19))/2"],
    ];
    for g in groups {
        let images: Vec<_> = g.iter().map(|t| functor_f(&Modulus::parse(t).unwrap()).unwrap()).collect();
        for a in &images {
            for b in &images {
                assert!(morita_equivalent(a, b).unwrap().equivalent);
            }
        }
    }
}

#[test]
fn complexity_chain_matches_table() {
    for row in golden_table() {
        let rep = arithmetic_complexity(row.d, DEFAULT_EVALUATOR).unwrap();
        assert_eq!(rep.period, row.cf.period());
        assert!(rep.period_length % 4 == 0 || rep.period_length % 4 == 2);
        assert_eq!(rep.complexity, row.complexity);
        assert_eq!(rank_from_complexity(row.d).unwrap(), row.rank);
    }
}
