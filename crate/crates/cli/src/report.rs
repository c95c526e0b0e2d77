use serde::{Deserialize, Serialize};

use etacong::congruence::{AlphaCell, AlphaCellDiff, CongruenceStatement, CorollaryBound};
use etacong::selftest::SuiteResult;
use etacong::verify::VerificationReport;
use etacong::Valuation;

pub const SCHEMA: u32 = 1;

/// Top-level JSON document: `{"schema": 1, "command": ..., "result": ...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: u32,
    pub command: String,
    pub result: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(command: &str, result: T) -> Self {
        Envelope {
            schema: SCHEMA,
            command: command.to_string(),
            result,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// One row of `scan`. Exactly one of `report` and `error` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub c: i64,
    pub d: i64,
    pub r: u32,
    pub report: Option<VerificationReport>,
    pub error: Option<String>,
}

impl ScanRow {
    pub fn pass(&self) -> bool {
        self.report.as_ref().is_some_and(|r| r.pass)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub rows: usize,
    pub passed: usize,
    pub failed: usize,
    pub trivial: usize,
    pub errors: usize,
}

impl ScanSummary {
    pub fn of(rows: &[ScanRow]) -> Self {
        let mut s = ScanSummary {
            rows: rows.len(),
            ..Default::default()
        };
        for row in rows {
            match &row.report {
                Some(rep) => {
                    if rep.pass {
                        s.passed += 1;
                    } else {
                        s.failed += 1;
                    }
                    s.trivial += usize::from(rep.trivial);
                }
                None => s.errors += 1,
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub rows: Vec<ScanRow>,
    pub summary: ScanSummary,
}

/// The spreadsheet layout shared by `verify` and `scan`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub c: i64,
    pub d: i64,
    pub r: u32,
    pub n: Option<u128>,
    #[serde(rename = "A")]
    pub a: Option<u32>,
    #[serde(rename = "M")]
    pub m: Option<u64>,
    #[serde(rename = "K")]
    pub k: Option<u32>,
    pub min_valuation: Option<String>,
    pub pass: bool,
    pub trivial: Option<bool>,
    pub elapsed_ms: Option<f64>,
}

impl CsvRow {
    pub fn from_report(rep: &VerificationReport) -> Self {
        let s = &rep.statement;
        CsvRow {
            c: s.c,
            d: s.d,
            r: s.r,
            n: Some(s.n),
            a: Some(s.exponent),
            m: Some(rep.terms),
            k: rep.modulus_exponent,
            min_valuation: Some(rep.min_valuation.to_string()),
            pass: rep.pass,
            trivial: Some(rep.trivial),
            elapsed_ms: Some(rep.elapsed_ms),
        }
    }

    pub fn from_scan(row: &ScanRow) -> Self {
        match &row.report {
            Some(rep) => Self::from_report(rep),
            None => CsvRow {
                c: row.c,
                d: row.d,
                r: row.r,
                n: None,
                a: None,
                m: None,
                k: None,
                min_valuation: None,
                pass: false,
                trivial: None,
                elapsed_ms: None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatementResult {
    pub statement: CongruenceStatement,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaDiffSummary {
    pub matched: usize,
    pub cells: usize,
    pub mismatches: Vec<AlphaCellDiff>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TablesResult {
    pub theta: Option<Vec<Vec<u8>>>,
    pub delta: Option<Vec<Vec<i32>>>,
    pub alpha: Option<AlphaDiffSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaResult {
    pub c: i64,
    pub d: i64,
    pub weight: i64,
    pub cell: AlphaCell,
    /// From the θ table and the closed formula.
    pub alpha: u8,
    /// As printed in the embedded α table.
    pub table_alpha: u8,
    pub bound: Option<BoundAt>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundAt {
    pub r: u32,
    /// Absent when c + 11d = 0.
    pub bound: Option<CorollaryBound>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub n: usize,
    /// Decimal string; values outgrow every JSON number type.
    pub value: String,
    pub valuation: Valuation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub c: i64,
    pub d: i64,
    pub ell: u64,
    pub rows: Vec<OracleRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelftestResult {
    pub seed: u64,
    pub trials: u32,
    pub suites: Vec<SuiteResult>,
}

pub fn write_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("csv row serializes");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
}
