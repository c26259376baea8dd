use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use ecnc_core::cfrac::{continued_fraction, sqrt_cf, ContinuedFraction, DEFAULT_MAX_TERMS};
use ecnc_core::curves::numeric::{complex_to_decimal, to_pair};
use ecnc_core::curves::{
    cm_discriminant, legendre_to_weierstrass, parse_complex, point_add, reduce_modulus, AffinePoint, CQuad, Cubic,
    LegendreCurve, Lattice, Modulus,
};
use ecnc_core::exactnum::parse_number;
use ecnc_core::nctori::{
    arithmetic_complexity, functor_f, golden_table, load_table, morita_equivalent, rank_from_complexity_with,
    rm_discriminant, verify_records, RankRecord, TorusDescriptor,
};
use ecnc_core::starrew::lemma1_check;
use ecnc_core::{Error, Rational, Result};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::output::Output;

/// Highest working precision: double-double arithmetic.
pub const MAX_PRECISION: u32 = 106;
pub const MIN_PRECISION: u32 = 64;
const WP_TOLERANCE: f64 = 1e-6;

pub struct Settings {
    pub shells: u32,
    pub precision: u32,
    pub evaluator: String,
    pub table_file: Option<PathBuf>,
}

impl Settings {
    pub fn digits(&self) -> Result<usize> {
        if !(MIN_PRECISION..=MAX_PRECISION).contains(&self.precision) {
            return Err(Error::Parameter(format!(
                "--precision must lie in {MIN_PRECISION}..={MAX_PRECISION} bits, got {}",
                self.precision
            )));
        }
        Ok((self.precision as f64 * std::f64::consts::LOG10_2).floor() as usize)
    }

    fn records(&self) -> Result<Vec<RankRecord>> {
        match &self.table_file {
            Some(p) => load_table(p),
            None => Ok(golden_table()),
        }
    }
}

fn complex_json(z: &CQuad) -> Value {
    json!(to_pair(z))
}

fn tau_json(t: &Modulus) -> Value {
    match t {
        Modulus::Exact(s) => json!(s.to_string()),
        Modulus::Float(z) => complex_json(z),
    }
}

fn cf_json(cf: &ContinuedFraction) -> Value {
    json!({
        "head": cf.head().to_string(),
        "preperiod": cf.preperiod(),
        "period": cf.period(),
        "period_length": cf.period().len(),
        "text": cf.to_string(),
        "latex": cf.to_latex(),
    })
}

pub fn cf(x: &str) -> Result<Output> {
    let (cf, palindrome) = match x.trim().parse::<i64>() {
        Ok(d) => {
            let cf = sqrt_cf(d)?;
            let p = cf.palindrome_check();
            (cf, Some(p))
        }
        Err(_) => (continued_fraction(&parse_number(x)?, DEFAULT_MAX_TERMS)?, None),
    };
    let mut payload = cf_json(&cf);
    payload["input"] = json!(x);
    if let Some(p) = palindrome {
        payload["palindrome"] = json!(p);
    }
    Ok(Output::new(cf.to_string(), payload))
}

pub fn reduce(tau: &str, s: &Settings) -> Result<Output> {
    let digits = s.digits()?;
    let t = Modulus::parse(tau)?;
    let (r, m) = reduce_modulus(&t)?;
    let shown = match &r {
        Modulus::Exact(x) => x.to_string(),
        Modulus::Float(z) => complex_to_decimal(z, digits),
    };
    Ok(Output::new(
        format!("{shown}\nmatrix {m}\n"),
        json!({ "tau": tau_json(&t), "reduced": tau_json(&r), "matrix": m }),
    ))
}

fn parse_lambda(text: &str) -> Result<CQuad> {
    match parse_number(text) {
        Ok(n) => {
            let (re, im) = n.to_complex_quad();
            Ok(CQuad::new(re, im))
        }
        Err(e) if text.contains("sqrt") => Err(e),
        Err(_) => {
            let (re, im) = parse_complex(text)?;
            Ok(ecnc_core::curves::numeric::cq(re, im))
        }
    }
}

pub fn j(tau: Option<&str>, lambda: Option<&str>, s: &Settings) -> Result<Output> {
    let digits = s.digits()?;
    let (j, mut payload, note) = match (tau, lambda) {
        (Some(tau), None) => {
            let t = Modulus::parse(tau)?;
            let e = Lattice::new(&t, s.shells)?.eisenstein()?;
            let j = e.curve.j_invariant()?;
            let payload = json!({
                "tau": tau_json(&t),
                "g2": complex_json(&e.curve.g2),
                "g3": complex_json(&e.curve.g3),
                "shells": e.shells,
                "error_estimate": e.error_estimate,
            });
            (j, payload, Some(format!("shells {}, error estimate {:.1e}", e.shells, e.error_estimate)))
        }
        (None, Some(l)) => {
            let lc = LegendreCurve::new(parse_lambda(l)?)?;
            let w = legendre_to_weierstrass(&lc)?;
            let j = w.j_invariant()?;
            let payload = json!({
                "lambda": complex_json(&lc.lambda),
                "g2": complex_json(&w.g2),
                "g3": complex_json(&w.g3),
            });
            (j, payload, None)
        }
        _ => return Err(Error::Parameter("give exactly one of TAU or --lambda".into())),
    };
    payload["j"] = complex_json(&j);
    payload["j_decimal"] = json!(complex_to_decimal(&j, digits));
    let mut out = Output::new(format!("j = {}", complex_to_decimal(&j, digits)), payload);
    out.diagnostics.extend(note);
    Ok(out)
}

pub fn cm(tau: &str) -> Result<Output> {
    let t = Modulus::parse(tau)?;
    match cm_discriminant(&t) {
        Some(d) => {
            let torus = functor_f(&t).ok();
            let mut human = format!("CM by Q(sqrt(-{d}))\n");
            if let Some(a) = &torus {
                let _ = writeln!(human, "torus {} with theta = {}", a.label, a.theta);
            }
            Ok(Output::new(human, json!({ "tau": tau_json(&t), "cm": true, "D": d, "torus": torus })))
        }
        None => {
            let mut out = Output::new(
                "unknown: CM cannot be certified for inexact input\n",
                json!({ "tau": tau_json(&t), "cm": Value::Null, "D": Value::Null }),
            );
            out.diagnostics.push("pass an exact value such as (1+sqrt(-7))/2".into());
            Ok(out)
        }
    }
}

pub fn rm(theta: &str) -> Result<Output> {
    let t = TorusDescriptor::parse(theta)?;
    let d = rm_discriminant(&t)?;
    let human = match d {
        Some(d) => format!("RM by Q(sqrt({d}))"),
        None => "unknown: RM cannot be certified for inexact input".into(),
    };
    Ok(Output::new(human, json!({ "theta": t, "rm": d.map(|_| true), "D": d })))
}

pub fn morita(a: &str, b: &str) -> Result<Output> {
    let t1 = TorusDescriptor::parse(a)?;
    let t2 = TorusDescriptor::parse(b)?;
    let r = morita_equivalent(&t1, &t2)?;
    let human = match &r.witness {
        Some(m) => format!("Morita equivalent: theta2 = M theta1 with M = {m}"),
        None => "not Morita equivalent".into(),
    };
    Ok(Output::new(human, json!({ "theta1": t1, "theta2": t2, "result": r })))
}

pub fn complexity(d: i64, s: &Settings) -> Result<Output> {
    let r = arithmetic_complexity(d, &s.evaluator)?;
    let mut out = Output::new(r.complexity.to_string(), json!(r));
    if !r.validated_range {
        out.diagnostics.push(format!("D = {d} lies outside primes D = 3 mod 4"));
    }
    Ok(out)
}

pub fn rank(d: i64, s: &Settings) -> Result<Output> {
    let r = rank_from_complexity_with(d, &s.evaluator)?;
    Ok(Output::new(r.to_string(), json!({ "D": d, "rank": r, "evaluator": s.evaluator })))
}

pub fn table(s: &Settings) -> Result<Output> {
    let rows = s.records()?;
    let mut human = format!("{:>4}  {:>4}  {:<36}  {}\n", "D", "rank", "continued fraction", "c");
    let mut md = String::from("| D | rank | continued fraction | c |\n|---|---|---|---|\n");
    let mut csv = String::from("D,rank,continued_fraction,c\n");
    for r in &rows {
        let _ = writeln!(human, "{:>4}  {:>4}  {:<36}  {}", r.d, r.rank, r.cf.to_string(), r.complexity);
        let _ = writeln!(md, "| {} | {} | ${}$ | {} |", r.d, r.rank, r.cf.to_latex(), r.complexity);
        let _ = writeln!(csv, "{},{},\"{}\",{}", r.d, r.rank, r.cf, r.complexity);
    }
    let mut out = Output::new(human, json!(rows));
    out.markdown = Some(md);
    out.csv = Some(csv);
    Ok(out)
}

pub fn verify_table(s: &Settings) -> Result<Output> {
    let report = verify_records(&s.records()?, &s.evaluator)?;
    let mut human = String::new();
    for r in report.rows.iter().filter(|r| !r.pass) {
        let _ = writeln!(human, "D = {}: {}", r.d, r.notes.join("; "));
    }
    let _ = writeln!(human, "{}", report.summary());
    let mut csv = String::from("D,rank,stored_cf,computed_cf,stored_c,computed_c,pass\n");
    for r in &report.rows {
        let _ = writeln!(
            csv,
            "{},{},\"{}\",\"{}\",{},{},{}",
            r.d,
            r.rank,
            r.stored_cf,
            r.computed_cf.as_deref().unwrap_or(""),
            r.stored_complexity,
            r.computed_complexity.map(|c| c.to_string()).unwrap_or_default(),
            r.pass
        );
    }
    let mut out = Output::new(human, json!(report));
    out.markdown = Some(report.to_markdown());
    out.csv = Some(csv);
    if !report.all_pass() {
        out.failed = Some(report.summary());
    }
    Ok(out)
}

pub fn verify_lemma() -> Result<Output> {
    let report = lemma1_check();
    let mut out = Output::new(report.to_text(), json!(report));
    if !report.all_ok {
        out.failed = Some("lemma not verified".into());
    }
    Ok(out)
}

/// Fixed sample points `u + v tau` inside the fundamental parallelogram.
const SAMPLES: [(f64, f64); 4] = [(0.1, 0.2), (0.37, 0.61), (0.5, 0.25), (0.83, 0.41)];

pub fn wp_check(tau: &str, zs: &[String], s: &Settings) -> Result<Output> {
    let digits = s.digits()?;
    let t = Modulus::parse(tau)?;
    let lattice = Lattice::new(&t, s.shells)?;
    let e = lattice.eisenstein()?;
    let (g2, g3) = (e.curve.g2, e.curve.g3);
    let tv = t.value();
    let mut points: Vec<CQuad> = SAMPLES
        .iter()
        .map(|&(u, v)| ecnc_core::curves::numeric::cq(u, 0.0) + tv * ecnc_core::curves::numeric::q(v))
        .collect();
    for z in zs {
        let (re, im) = parse_complex(z)?;
        points.push(ecnc_core::curves::numeric::cq(re, im));
    }
    let four = ecnc_core::curves::numeric::cq(4.0, 0.0);
    let mut rows = Vec::new();
    let mut human = format!(
        "g2 = {}\ng3 = {}\n",
        complex_to_decimal(&g2, digits),
        complex_to_decimal(&g3, digits)
    );
    let mut worst = 0.0f64;
    for z in &points {
        let (p, dp, _) = lattice.wp_pair(z)?;
        let pm = lattice.wp(&-z)?;
        let scale = 1.0 + ecnc_core::curves::numeric::abs_f64(&p).powi(3);
        let de = ecnc_core::curves::numeric::abs_f64(&(dp * dp - (four * p * p * p - g2 * p - g3))) / scale;
        let even = ecnc_core::curves::numeric::abs_f64(&(pm - p)) / scale;
        worst = worst.max(de).max(even);
        let _ = writeln!(
            human,
            "z = {:<48} wp = {:<48} ode {:.1e}  even {:.1e}",
            complex_to_decimal(z, 12),
            complex_to_decimal(&p, 12),
            de,
            even
        );
        rows.push(json!({
            "z": complex_json(z),
            "wp": complex_json(&p),
            "wp_prime": complex_json(&dp),
            "ode_residual": de,
            "evenness_residual": even,
        }));
    }
    let pass = worst < WP_TOLERANCE;
    let _ = writeln!(
        human,
        "max relative residual {worst:.1e} (tolerance {WP_TOLERANCE:.0e}): {}",
        if pass { "pass" } else { "FAIL" }
    );
    let mut out = Output::new(
        human,
        json!({
            "tau": tau_json(&t),
            "g2": complex_json(&g2),
            "g3": complex_json(&g3),
            "shells": e.shells,
            "error_estimate": e.error_estimate,
            "samples": rows,
            "max_residual": worst,
            "tolerance": WP_TOLERANCE,
        }),
    );
    if !pass {
        out.failed = Some(format!("residual {worst:e} exceeds {WP_TOLERANCE:e}"));
    }
    Ok(out)
}

/// Comma separated rationals, optionally in brackets or parentheses.
fn parse_rationals(text: &str, n: usize, what: &str) -> Result<Vec<Rational>> {
    let trimmed = text.trim_end();
    let start = trimmed.len() - trimmed.trim_start().len();
    let mut body = &trimmed[start..];
    let mut offset = start;
    if let (Some(open), Some(close)) = (body.chars().next(), body.chars().last()) {
        if matches!((open, close), ('(', ')') | ('[', ']')) && body.len() >= 2 {
            body = &body[1..body.len() - 1];
            offset += 1;
        }
    }
    let mut out = Vec::new();
    for part in body.split(',') {
        let lead = part.len() - part.trim_start().len();
        let item = part.trim();
        let value = Rational::from_str(item).map_err(|_| Error::Syntax {
            pos: offset + lead,
            msg: format!("expected a rational such as -3/4 in {what}"),
        })?;
        out.push(value);
        offset += part.len() + 1;
    }
    if out.len() != n {
        return Err(Error::Syntax {
            pos: text.len(),
            msg: format!("{what} needs {n} comma separated values, got {}", out.len()),
        });
    }
    Ok(out)
}

fn parse_point(text: &str) -> Result<AffinePoint<Rational>> {
    if matches!(text.trim(), "O" | "o" | "inf" | "infinity") {
        return Ok(AffinePoint::Infinity);
    }
    let v = parse_rationals(text, 2, "a point")?;
    Ok(AffinePoint::new(v[0].clone(), v[1].clone()))
}

fn point_json(p: &AffinePoint<Rational>) -> Value {
    match p {
        AffinePoint::Infinity => json!("O"),
        AffinePoint::Finite { x, y } => json!({ "x": x.to_string(), "y": y.to_string() }),
    }
}

pub fn group_law(curve: &str, p: &str, q: &str) -> Result<Output> {
    let c = parse_rationals(curve, 3, "the curve coefficients a,b,c")?;
    let cubic = Cubic::new(c[0].clone(), c[1].clone(), c[2].clone());
    if cubic.discriminant().is_zero() {
        return Err(Error::Singular(format!("x^3 + ({})x^2 + ({})x + ({}) has a repeated root", c[0], c[1], c[2])));
    }
    let (pp, qq) = (parse_point(p)?, parse_point(q)?);
    let sum = point_add(&pp, &qq, &cubic)?;
    Ok(Output::new(
        sum.to_string(),
        json!({
            "curve": { "a": c[0].to_string(), "b": c[1].to_string(), "c": c[2].to_string() },
            "P": point_json(&pp),
            "Q": point_json(&qq),
            "sum": point_json(&sum),
        }),
    ))
}
