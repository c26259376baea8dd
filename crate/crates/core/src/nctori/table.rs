use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use super::complexity::{evaluator, is_prime, DEFAULT_EVALUATOR};
use crate::cfrac::{sqrt_cf, ContinuedFraction};
use crate::error::{Error, Result};

/// The checked-in rank/complexity table.
pub const GOLDEN_TABLE: &str = include_str!("../../data/rank_complexity.txt");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankRecord {
    #[serde(rename = "D")]
    pub d: i64,
    pub rank: i64,
    #[serde(serialize_with = "ser_cf")]
    pub cf: ContinuedFraction,
    pub complexity: u32,
}

fn ser_cf<S: serde::Serializer>(cf: &ContinuedFraction, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&cf.to_string())
}

/// Parses rows `D | rank | CF | c`; `#` starts a comment. Positions in
/// syntax errors are byte offsets into `text`.
pub fn parse_table(text: &str) -> Result<Vec<RankRecord>> {
    let mut rows = Vec::new();
    let mut offset = 0;
    for (lineno, raw) in text.split_inclusive('\n').enumerate() {
        let start = offset;
        offset += raw.len();
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let err = |col: usize, msg: String| Error::Syntax {
            pos: start + col,
            msg: format!("line {}: {msg}", lineno + 1),
        };
        let fields: Vec<&str> = line.split('|').collect();
        if fields.len() != 4 {
            return Err(err(0, format!("expected 4 `|`-separated fields, found {}", fields.len())));
        }
        let mut col = 0;
        let mut cols = Vec::new();
        for f in &fields {
            cols.push(col + (f.len() - f.trim_start().len()));
            col += f.len() + 1;
        }
        let int = |i: usize| -> Result<i64> {
            fields[i]
                .trim()
                .parse()
                .map_err(|_| err(cols[i], format!("`{}` is not an integer", fields[i].trim())))
        };
        let d = int(0)?;
        let rank = int(1)?;
        let cf: ContinuedFraction = fields[2].trim().parse().map_err(|e| match e {
            Error::Syntax { pos, msg } => err(cols[2] + pos, msg),
            other => other,
        })?;
        let c = int(3)?;
        if c < 1 {
            return Err(err(cols[3], format!("complexity {c} is below 1")));
        }
        rows.push(RankRecord {
            d,
            rank,
            cf,
            complexity: c as u32,
        });
    }
    Ok(rows)
}

pub fn golden_table() -> Vec<RankRecord> {
    parse_table(GOLDEN_TABLE).expect("embedded table parses")
}

pub fn load_table(path: &Path) -> Result<Vec<RankRecord>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Resource(format!("cannot read {}: {e}", path.display())))?;
    parse_table(&text)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    #[serde(rename = "D")]
    pub d: i64,
    pub stored_cf: String,
    pub computed_cf: Option<String>,
    pub cf_match: bool,
    pub stored_complexity: u32,
    pub computed_complexity: Option<u32>,
    pub complexity_match: bool,
    pub rank: i64,
    pub rank_match: bool,
    /// `D` prime and `3 mod 4`.
    pub in_scope: bool,
    pub pass: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReconciliationReport {
    pub evaluator: String,
    pub passed: usize,
    pub total: usize,
    pub rows: Vec<RowCheck>,
}

impl ReconciliationReport {
    pub fn all_pass(&self) -> bool {
        self.passed == self.total
    }

    pub fn summary(&self) -> String {
        format!("{}/{} rows pass", self.passed, self.total)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The table in its printed column order with a status column.
    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| D | rank | continued fraction | c | status |\n|---|---|---|---|---|\n");
        for r in &self.rows {
            let status = if r.pass { "pass".to_string() } else { format!("FAIL: {}", r.notes.join("; ")) };
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} |",
                r.d, r.rank, r.stored_cf, r.stored_complexity, status
            );
        }
        let _ = writeln!(out, "\n{} (evaluator: {})", self.summary(), self.evaluator);
        out
    }
}

fn check_row(rec: &RankRecord, ev: &dyn super::ComplexityEvaluator) -> RowCheck {
    let mut notes = Vec::new();
    let in_scope = is_prime(rec.d) && rec.d % 4 == 3;
    if !in_scope {
        notes.push(format!("D = {} is outside primes 3 mod 4", rec.d));
    }
    let computed = match sqrt_cf(rec.d) {
        Ok(cf) => Some(cf),
        Err(e) => {
            notes.push(e.to_string());
            None
        }
    };
    let cf_match = computed.as_ref() == Some(&rec.cf);
    if computed.is_some() && !cf_match {
        notes.push("continued fraction differs".into());
    }
    let c = computed.as_ref().map(|cf| ev.evaluate(cf.period()));
    let complexity_match = c == Some(rec.complexity);
    if c.is_some() && !complexity_match {
        notes.push(format!("complexity is {}", c.unwrap_or_default()));
    }
    let rank_match = c.map(|c| c as i64 - 1) == Some(rec.rank);
    if c.is_some() && !rank_match {
        notes.push(format!("rank {} != c - 1 = {}", rec.rank, c.unwrap_or_default() as i64 - 1));
    }
    RowCheck {
        d: rec.d,
        stored_cf: rec.cf.to_string(),
        computed_cf: computed.as_ref().map(ToString::to_string),
        cf_match,
        stored_complexity: rec.complexity,
        computed_complexity: c,
        complexity_match,
        rank: rec.rank,
        rank_match,
        in_scope,
        pass: in_scope && cf_match && complexity_match && rank_match,
        notes,
    }
}

/// Recomputes every row: the expansion of `sqrt(D)`, the complexity, and
/// `rank = c - 1`. Failures are report content.
pub fn verify_records(records: &[RankRecord], evaluator_name: &str) -> Result<ReconciliationReport> {
    let ev = evaluator(evaluator_name)?;
    let mut rows: Vec<RowCheck> = std::thread::scope(|s| {
        let handles: Vec<_> = records.iter().map(|r| s.spawn(move || check_row(r, ev))).collect();
        handles.into_iter().map(|h| h.join().expect("row check")).collect()
    });
    rows.sort_by_key(|r| r.d);
    Ok(ReconciliationReport {
        evaluator: ev.name().to_string(),
        passed: rows.iter().filter(|r| r.pass).count(),
        total: rows.len(),
        rows,
    })
}

pub fn verify_reconciliation() -> ReconciliationReport {
    verify_records(&golden_table(), DEFAULT_EVALUATOR).expect("default evaluator exists")
}
