use std::fmt::{self, Write as _};

use rayon::prelude::*;

use etacong::congruence::tables::{render_delta, render_theta, DELTA, THETA};
use etacong::congruence::{self, alpha_table_regenerate, AlphaCell, AlphaTable};
use etacong::oracle::{naive_coeffs, valuation_11};
use etacong::selftest;
use etacong::verify::{self, VerificationReport};

use crate::args::{Cli, Command, Format, Which};
use crate::report::*;

/// Largest `--terms` accepted by `oracle`; the naive product is quadratic.
pub const ORACLE_MAX_TERMS: usize = 20_000;

/// Bad arguments or an input the library rejects; exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<etacong::Error> for UsageError {
    fn from(e: etacong::Error) -> Self {
        UsageError(e.to_string())
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

/// Rendered output plus whether every requested check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    pub pass: bool,
}

impl Outcome {
    fn new(body: String, pass: bool) -> Self {
        Outcome { body, pass }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, UsageError> {
    match &cli.command {
        Command::Statement(t) => statement(cli.format, t.c, t.d, t.r),
        Command::Verify { triple, terms, k } => verify(cli.format, triple.c, triple.d, triple.r, *terms, *k),
        Command::Scan {
            c_min,
            c_max,
            d_min,
            d_max,
            r_min,
            r_max,
            terms,
            k,
            jobs,
        } => {
            let grid = ScanGrid {
                c: (*c_min, *c_max),
                d: (*d_min, *d_max),
                r: (*r_min, *r_max),
            };
            scan(cli.format, grid, *terms, *k, *jobs)
        }
        Command::Tables { which } => tables(cli.format, *which),
        Command::Alpha { c, d, r } => alpha(cli.format, *c, *d, *r),
        Command::Oracle { c, d, terms, ell } => oracle(cli.format, *c, *d, *terms, *ell),
        Command::Selftest { trials } => selftest(cli.format, *trials, cli.seed),
    }
}

fn statement(format: Format, c: i64, d: i64, r: u32) -> Result<Outcome, UsageError> {
    let s = congruence::statement(c, d, r)?;
    let text = s.render();
    let body = match format {
        Format::Text => format!("{text}\n"),
        Format::Json => Envelope::new("statement", StatementResult { statement: s, text }).to_json(),
        Format::Csv => write_csv([s]),
    };
    Ok(Outcome::new(body, true))
}

fn check_terms(terms: u64) -> Result<(), UsageError> {
    if terms < 1 {
        return usage("--terms must be at least 1");
    }
    Ok(())
}

fn verify_one(c: i64, d: i64, r: u32, terms: u64, k: Option<u32>) -> etacong::Result<VerificationReport> {
    let k = k.unwrap_or_else(|| verify::default_k(c, d, r));
    verify::verify_theorem(c, d, r, terms, k)
}

fn report_line(rep: &VerificationReport) -> String {
    let verdict = if rep.pass { "PASS" } else { "FAIL" };
    let extra = match rep.exceeds_by {
        Some(e) if e > 0 => format!(", exceeds A by {e}"),
        _ => String::new(),
    };
    let tag = if rep.trivial { " [trivial]" } else { "" };
    format!(
        "{verdict} {}: m = {}..={}, {}, min valuation {}{extra}{tag} ({:.1} ms)",
        rep.statement.render().trim_end_matches(" [trivial]"),
        rep.m_range[0],
        rep.m_range[1],
        rep.ring,
        rep.min_valuation,
        rep.elapsed_ms
    )
}

fn verify(format: Format, c: i64, d: i64, r: u32, terms: u64, k: Option<u32>) -> Result<Outcome, UsageError> {
    check_terms(terms)?;
    let rep = verify_one(c, d, r, terms, k)?;
    let pass = rep.pass;
    let body = match format {
        Format::Text => format!("{}\n", report_line(&rep)),
        Format::Json => Envelope::new("verify", rep).to_json(),
        Format::Csv => write_csv([CsvRow::from_report(&rep)]),
    };
    Ok(Outcome::new(body, pass))
}

#[derive(Debug, Clone, Copy)]
struct ScanGrid {
    c: (i64, i64),
    d: (i64, i64),
    r: (u32, u32),
}

impl ScanGrid {
    fn triples(&self) -> Result<Vec<(i64, i64, u32)>, UsageError> {
        if self.c.0 > self.c.1 || self.d.0 > self.d.1 || self.r.0 > self.r.1 {
            return usage("empty scan range");
        }
        if self.r.0 < 1 {
            return usage("--r-min must be at least 1");
        }
        let mut out = Vec::new();
        for c in self.c.0..=self.c.1 {
            for d in self.d.0..=self.d.1 {
                for r in self.r.0..=self.r.1 {
                    out.push((c, d, r));
                }
            }
        }
        Ok(out)
    }
}

fn scan(format: Format, grid: ScanGrid, terms: u64, k: Option<u32>, jobs: Option<usize>) -> Result<Outcome, UsageError> {
    check_terms(terms)?;
    let triples = grid.triples()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return usage("--jobs must be at least 1");
        }
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| UsageError(e.to_string()))?;
    // collect() on an indexed parallel iterator keeps input order
    let rows: Vec<ScanRow> = pool.install(|| {
        triples
            .par_iter()
            .map(|&(c, d, r)| match verify_one(c, d, r, terms, k) {
                Ok(rep) => ScanRow {
                    c,
                    d,
                    r,
                    report: Some(rep),
                    error: None,
                },
                Err(e) => ScanRow {
                    c,
                    d,
                    r,
                    report: None,
                    error: Some(e.to_string()),
                },
            })
            .collect()
    });
    let summary = ScanSummary::of(&rows);
    let pass = summary.passed == summary.rows;
    let body = match format {
        Format::Text => {
            let mut out = String::new();
            for row in &rows {
                match (&row.report, &row.error) {
                    (Some(rep), _) => writeln!(out, "{}", report_line(rep)).unwrap(),
                    (None, e) => writeln!(
                        out,
                        "ERROR ({}, {}, {}): {}",
                        row.c,
                        row.d,
                        row.r,
                        e.as_deref().unwrap_or("unknown")
                    )
                    .unwrap(),
                }
            }
            writeln!(
                out,
                "scan: {} rows, {} passed, {} failed, {} trivial, {} errors",
                summary.rows, summary.passed, summary.failed, summary.trivial, summary.errors
            )
            .unwrap();
            out
        }
        Format::Json => Envelope::new("scan", ScanResult { rows, summary }).to_json(),
        Format::Csv => write_csv(rows.iter().map(CsvRow::from_scan)),
    };
    Ok(Outcome::new(body, pass))
}

#[derive(serde::Serialize)]
struct TableCsvRow {
    table: &'static str,
    row: i64,
    column: i64,
    negative: bool,
    embedded: i64,
    computed: i64,
    matches: bool,
}

fn tables(format: Format, which: Which) -> Result<Outcome, UsageError> {
    let want = |w: Which| which == w || which == Which::All;
    let regen = want(Which::Alpha).then(alpha_table_regenerate);
    let pass = regen.as_ref().is_none_or(|r| r.all_match());

    let body = match format {
        Format::Text => {
            let mut out = String::new();
            if want(Which::Theta) {
                out.push_str(&render_theta());
            }
            if want(Which::Delta) {
                if !out.is_empty() {
                    out.push('\n');
                }
                out.push_str(&render_delta());
            }
            if let Some(regen) = &regen {
                if !out.is_empty() {
                    out.push('\n');
                }
                out.push_str("embedded ");
                out.push_str(&AlphaTable::embedded().render());
                out.push_str("\nregenerated ");
                out.push_str(&regen.computed.render());
                out.push('\n');
                for m in regen.mismatches() {
                    writeln!(out, "mismatch: {}", describe_cell(m.cell, m.embedded, m.computed)).unwrap();
                }
                let bad = regen.mismatches().count();
                writeln!(
                    out,
                    "alpha: {} of {} cells match",
                    regen.cells.len() - bad,
                    regen.cells.len()
                )
                .unwrap();
            }
            out
        }
        Format::Json => {
            let result = TablesResult {
                theta: want(Which::Theta).then(|| THETA.iter().map(|r| r.to_vec()).collect()),
                delta: want(Which::Delta).then(|| DELTA.iter().map(|r| r.to_vec()).collect()),
                alpha: regen.as_ref().map(|regen| {
                    let mismatches: Vec<_> = regen.mismatches().cloned().collect();
                    AlphaDiffSummary {
                        matched: regen.cells.len() - mismatches.len(),
                        cells: regen.cells.len(),
                        mismatches,
                    }
                }),
            };
            Envelope::new("tables", result).to_json()
        }
        Format::Csv => {
            let mut rows = Vec::new();
            let same = |table, row: usize, column: usize, v: i64| TableCsvRow {
                table,
                row: row as i64,
                column: column as i64,
                negative: false,
                embedded: v,
                computed: v,
                matches: true,
            };
            if want(Which::Theta) {
                for (mu, r) in THETA.iter().enumerate() {
                    for (l, &v) in r.iter().enumerate() {
                        rows.push(same("theta", mu, l, i64::from(v)));
                    }
                }
            }
            if want(Which::Delta) {
                for (mu, r) in DELTA.iter().enumerate() {
                    for (nu, &v) in r.iter().enumerate() {
                        rows.push(same("delta", mu, nu, i64::from(v)));
                    }
                }
            }
            if let Some(regen) = &regen {
                for cell in &regen.cells {
                    rows.push(TableCsvRow {
                        table: "alpha",
                        row: i64::from(cell.cell.row),
                        column: i64::from(cell.cell.column),
                        negative: cell.cell.negative,
                        embedded: i64::from(cell.embedded),
                        computed: i64::from(cell.computed),
                        matches: cell.matches(),
                    });
                }
            }
            write_csv(rows)
        }
    };
    Ok(Outcome::new(body, pass))
}

fn describe_cell(cell: AlphaCell, embedded: u8, computed: u8) -> String {
    let neg = if cell.negative { ", c + 11d < 0" } else { "" };
    format!(
        "residue {} (row {}, column {}{neg}): table {embedded}, computed {computed}",
        cell.residue(),
        cell.row,
        cell.column
    )
}

fn alpha(format: Format, c: i64, d: i64, r: Option<u32>) -> Result<Outcome, UsageError> {
    let weight = c + 11 * d;
    let bound = match r {
        Some(r) => Some(BoundAt {
            r,
            bound: (weight != 0).then(|| congruence::corollary_bound(c, d, r)).transpose()?,
        }),
        None => None,
    };
    let result = AlphaResult {
        c,
        d,
        weight,
        cell: AlphaCell::for_weight(weight),
        alpha: congruence::alpha(c, d),
        table_alpha: AlphaTable::embedded().lookup(c, d),
        bound,
    };
    let pass = result
        .bound
        .as_ref()
        .and_then(|b| b.bound)
        .is_none_or(|b| b.holds);
    let body = match format {
        Format::Text => {
            let mut out = format!(
                "alpha({c}, {d}) = {} (c + 11d = {weight}, table cell row {} column {}{}: {})\n",
                result.alpha,
                result.cell.row,
                result.cell.column,
                if result.cell.negative { " negative" } else { "" },
                result.table_alpha
            );
            match &result.bound {
                Some(BoundAt { r, bound: Some(b) }) => writeln!(
                    out,
                    "r = {r}: A_r = {}, |A_r - alpha r/2| = {:.3} < {:.3}: {}",
                    b.exponent,
                    b.deviation,
                    b.bound,
                    if b.holds { "holds" } else { "FAILS" }
                )
                .unwrap(),
                Some(BoundAt { r, bound: None }) => writeln!(
                    out,
                    "r = {r}: A_r = {}, bound undefined for c + 11d = 0",
                    congruence::exponent(c, d, *r)
                )
                .unwrap(),
                None => {}
            }
            out
        }
        Format::Json => Envelope::new("alpha", result).to_json(),
        Format::Csv => {
            #[derive(serde::Serialize)]
            struct Row {
                c: i64,
                d: i64,
                weight: i64,
                alpha: u8,
                table_alpha: u8,
                r: Option<u32>,
                exponent: Option<u32>,
                deviation: Option<f64>,
                bound: Option<f64>,
                holds: Option<bool>,
            }
            let b = result.bound.as_ref().and_then(|b| b.bound);
            write_csv([Row {
                c,
                d,
                weight,
                alpha: result.alpha,
                table_alpha: result.table_alpha,
                r,
                exponent: r.map(|r| congruence::exponent(c, d, r)),
                deviation: b.map(|b| b.deviation),
                bound: b.map(|b| b.bound),
                holds: b.map(|b| b.holds),
            }])
        }
    };
    Ok(Outcome::new(body, pass))
}

fn oracle(format: Format, c: i64, d: i64, terms: usize, ell: u64) -> Result<Outcome, UsageError> {
    if terms < 1 {
        return usage("--terms must be at least 1");
    }
    if terms > ORACLE_MAX_TERMS {
        return usage(format!("--terms is capped at {ORACLE_MAX_TERMS} for the naive oracle"));
    }
    if ell < 1 {
        return usage("--ell must be at least 1");
    }
    let seq = naive_coeffs(c, d, ell, terms);
    let rows: Vec<OracleRow> = seq
        .values
        .iter()
        .enumerate()
        .map(|(n, v)| OracleRow {
            n,
            value: v.to_string(),
            valuation: valuation_11(v),
        })
        .collect();
    let body = match format {
        Format::Text => {
            let mut out = String::new();
            for row in &rows {
                writeln!(out, "{} {} {}", row.n, row.value, row.valuation).unwrap();
            }
            out
        }
        Format::Json => Envelope::new("oracle", OracleResult { c, d, ell, rows }).to_json(),
        Format::Csv => write_csv(rows.iter().map(|r| (r.n, &r.value, r.valuation.to_string()))),
    };
    Ok(Outcome::new(body, true))
}

fn selftest(format: Format, trials: u32, seed: u64) -> Result<Outcome, UsageError> {
    let suites = vec![
        selftest::up_identity(trials, seed)?,
        selftest::theta_recurrences(40),
        selftest::sequence_closed_forms(20, 6),
        selftest::oracle_equivalence(6, 120)?,
    ];
    let pass = suites.iter().all(|s| s.pass);
    let body = match format {
        Format::Text => {
            let mut out = String::new();
            for s in &suites {
                let tag = if s.pass { "PASS" } else { "FAIL" };
                writeln!(out, "{tag} {}: {}", s.name, s.detail).unwrap();
            }
            out
        }
        Format::Json => Envelope::new("selftest", SelftestResult { seed, trials, suites }).to_json(),
        Format::Csv => write_csv(suites),
    };
    Ok(Outcome::new(body, pass))
}
