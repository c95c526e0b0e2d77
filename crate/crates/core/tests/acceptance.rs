//! Acceptance criteria, one PASS/FAIL line each. Runs under `cargo test`
//! (custom harness) and exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::thread;
use std::time::Instant;

use num_bigint::BigInt;

use etacong::congruence::{self, alpha, alpha_table_regenerate, corollary_bound, exponent};
use etacong::oracle;
use etacong::ring::{Integers, ModPow11};
use etacong::series::{eta_quotient, EtaQuotientSpec};
use etacong::verify::{self, crosscheck_product_form, up_identity_selftest, DEFAULT_TERM_BUDGET};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    match failures.first() {
        None => Outcome {
            pass: true,
            detail: summary,
        },
        Some(first) => Outcome {
            pass: false,
            detail: format!("{summary}; {} failure(s), first: {first}", failures.len()),
        },
    }
}

/// Runs `f` over `items` on all cores, keeping input order.
fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync) -> Vec<U> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get());
    let chunk = items.len().div_ceil(workers).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| s.spawn(|| part.iter().map(&f).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    })
}

/// 11^e | p_[1^c 11^d](step m + n) for m = 0..=terms.
fn family_divisible(c: i64, d: i64, step: u128, n: u128, terms: u64, e: u32) -> Result<(), String> {
    let ring = ModPow11::new(e + 2).unwrap();
    let v = verify::progression_min_valuation(c, d, step, n, terms, ring, DEFAULT_TERM_BUDGET)
        .map_err(|err| err.to_string())?;
    if v.at_least(e) {
        Ok(())
    } else {
        Err(format!(
            "p_[1^{c} 11^{d}]({step}m + {n}) has valuation {v} < {e}"
        ))
    }
}

fn criterion_1() -> Outcome {
    let mut jobs = Vec::new();
    for c in -4..=4 {
        for d in -4..=4 {
            for r in 1..=3 {
                jobs.push((c, d, r));
            }
        }
    }
    let results = par_map(&jobs, |&(c, d, r)| {
        let k = verify::default_k(c, d, r);
        verify::verify_theorem(c, d, r, 30, k)
    });
    let mut failures = Vec::new();
    let mut trivial = 0;
    let mut sharper = 0;
    for ((c, d, r), res) in jobs.iter().zip(results) {
        match res {
            Ok(rep) if rep.pass => {
                trivial += usize::from(rep.trivial);
                sharper += usize::from(rep.exceeds_by.is_some_and(|e| e > 0));
            }
            Ok(rep) => failures.push(format!(
                "({c}, {d}, {r}): min valuation {} < A = {}",
                rep.min_valuation, rep.statement.exponent
            )),
            Err(e) => failures.push(format!("({c}, {d}, {r}): {e}")),
        }
    }
    outcome(
        failures,
        format!(
            "{} instances, M = 30 ({trivial} trivial, {sharper} with valuation above A_r)",
            jobs.len()
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let p = |e: u32| 11u128.pow(e);
    // 11-core partitions: p(11^k m + 11^k - 5) ≡ 0 (mod 11^k)
    for k in 1..=2 {
        checked += 1;
        if let Err(e) = family_divisible(1, -11, p(k), p(k) - 5, 30, k) {
            failures.push(e);
        }
    }
    // 11-regular partitions: p(11^{2k-1} m + (7·11^{2k-1} - 5)/12) ≡ 0 (mod 11^k)
    for k in 1..=2 {
        checked += 1;
        let step = p(2 * k - 1);
        if let Err(e) = family_divisible(1, -1, step, (7 * step - 5) / 12, 30, k) {
            failures.push(e);
        }
    }
    // p_[1 11](11^k m + (11^k + 1)/2) ≡ 0 (mod 11^k)
    for k in 1..=3 {
        checked += 1;
        if let Err(e) = family_divisible(1, 1, p(k), p(k).div_ceil(2), 30, k) {
            failures.push(e);
        }
    }
    outcome(failures, format!("{checked} family instances, 31 terms each"))
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    for (r, n, terms) in [(1u32, 6u128, 100u64), (2, 116, 20)] {
        let canon = congruence::n_canonical(1, 0, r).unwrap();
        if canon != BigInt::from(n) {
            failures.push(format!("n_canonical(1, 0, {r}) = {canon}, expected {n}"));
        }
        if let Err(e) = family_divisible(1, 0, 11u128.pow(r), n, terms, r) {
            failures.push(e);
        }
    }
    outcome(failures, "p(11m + 6) for m <= 100, p(121m + 116) for m <= 20".into())
}

fn criterion_4() -> Outcome {
    let started = Instant::now();
    let regen = alpha_table_regenerate();
    let elapsed = started.elapsed();
    let failures: Vec<String> = regen
        .mismatches()
        .map(|m| {
            format!(
                "cell row {} col {}{} (c + 11d = {}): table {}, computed {}",
                m.cell.row,
                m.cell.column,
                if m.cell.negative { " [c + 11d < 0]" } else { "" },
                m.representative.0,
                m.embedded,
                m.computed
            )
        })
        .collect();
    for f in &failures {
        println!("    finding: {f}");
    }
    let mut out = outcome(
        failures.clone(),
        format!(
            "{} of {} cells match, {:.1} ms",
            regen.cells.len() - failures.len(),
            regen.cells.len(),
            elapsed.as_secs_f64() * 1e3
        ),
    );
    if elapsed.as_secs_f64() >= 1.0 {
        out.pass = false;
        out.detail.push_str("; runtime limit 1 s exceeded");
    }
    out
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    for r in 0..=10 {
        if exponent(1, 1, r) != r {
            failures.push(format!("A_{r}(1, 1) = {}", exponent(1, 1, r)));
        }
    }
    for r in 1..=5 {
        if exponent(1, -1, 2 * r) != r {
            failures.push(format!("A_{}(1, -1) = {}", 2 * r, exponent(1, -1, 2 * r)));
        }
        if exponent(2, 7, 2 * r) != 2 * r - 1 {
            failures.push(format!("A_{}(2, 7) = {}", 2 * r, exponent(2, 7, 2 * r)));
        }
    }
    for ((c, d), want) in [((1, 1), 2), ((1, -1), 1), ((2, 7), 2)] {
        if alpha(c, d) != want {
            failures.push(format!("alpha({c}, {d}) = {}", alpha(c, d)));
        }
    }
    outcome(failures, "A_r(1,1), A_2r(1,-1), A_2r(2,7), alpha".into())
}

fn criterion_6() -> Outcome {
    let started = Instant::now();
    let mut failures = Vec::new();

    let id = up_identity_selftest(100, 2019).unwrap();
    if !id.ok() {
        failures.push(id.first_failure.unwrap());
    }

    let pairs = [(1, 1), (1, -1), (1, 0), (2, 7), (1, -11)];
    let mut towers = Vec::new();
    for &(c, d) in &pairs {
        for r in 1..=2 {
            towers.push((c, d, r));
        }
    }
    let results = par_map(&towers, |&(c, d, r)| {
        crosscheck_product_form(c, d, r, 30, Integers)
    });
    for ((c, d, r), res) in towers.iter().zip(results) {
        match res {
            Ok(x) if x.ok() => {}
            Ok(x) => failures.push(format!("tower ({c}, {d}, {r}): {:?}", x.first_mismatch)),
            Err(e) => failures.push(format!("tower ({c}, {d}, {r}): {e}")),
        }
    }

    let mut seq_checks = 0;
    for c in -20..=20i64 {
        for d in -20..=20i64 {
            let mut seq = congruence::Sequences::new(c, d);
            for r in 0..=6 {
                seq_checks += 1;
                let raw = congruence::n_raw(c, d, r);
                if raw != congruence::n_raw_closed(c, d, r) {
                    failures.push(format!("n_raw({c}, {d}, {r}) closed form"));
                }
                if seq.mu(r) != congruence::mu_least(c, d, r) {
                    failures.push(format!("mu({c}, {d}, {r}) least-m form"));
                }
                if let Ok(closed) = congruence::mu_closed(c, d, r) {
                    if closed != seq.mu(r) {
                        failures.push(format!("mu({c}, {d}, {r}) guarded closed form"));
                    }
                }
            }
        }
    }

    let elapsed = started.elapsed().as_secs_f64();
    let mut out = outcome(
        failures,
        format!(
            "100 identity trials, {} tower crosschecks, {seq_checks} sequence checks, {elapsed:.1} s",
            towers.len()
        ),
    );
    if elapsed >= 60.0 {
        out.pass = false;
        out.detail.push_str("; runtime limit 60 s exceeded");
    }
    out
}

fn criterion_7() -> Outcome {
    let mut pairs = Vec::new();
    for c in -12..=12i64 {
        for d in -12..=12i64 {
            pairs.push((c, d));
        }
    }
    let results = par_map(&pairs, |&(c, d)| {
        let spec = EtaQuotientSpec::new([(1, -c), (11, -d)], false).unwrap();
        let fast = eta_quotient(&spec, 200, Integers).unwrap();
        let slow = oracle::naive_coeffs(c, d, 11, 200);
        (0..200).find(|&n| fast.coeff(n).unwrap() != slow.get(n))
    });
    let failures = pairs
        .iter()
        .zip(results)
        .filter_map(|((c, d), bad)| bad.map(|n| format!("({c}, {d}) differs at n = {n}")))
        .collect();
    outcome(failures, format!("{} (c, d) pairs, N = 200", pairs.len()))
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for c in -10..=10i64 {
        for d in -10..=10i64 {
            if c + 11 * d == 0 {
                continue;
            }
            for r in 1..=60 {
                checked += 1;
                let b = corollary_bound(c, d, r).unwrap();
                if !b.holds {
                    failures.push(format!(
                        "({c}, {d}, {r}): |A - alpha r/2| = {} >= {}",
                        b.deviation, b.bound
                    ));
                }
            }
        }
    }
    outcome(failures, format!("{checked} (c, d, r) triples"))
}

type Criterion = fn() -> Outcome;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 8] = [
        ("1 desk-scale divisibility, (c,d) in [-4,4]^2, r <= 3", criterion_1),
        ("2 11-core, 11-regular and [1 11] families", criterion_2),
        ("3 Ramanujan mod 11 and 11^2", criterion_3),
        ("4 alpha table regeneration", criterion_4),
        ("5 worked examples", criterion_5),
        ("6 structural identities", criterion_6),
        ("7 series vs naive oracle", criterion_7),
        ("8 asymptotic exponent bound", criterion_8),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let started = Instant::now();
        let out = run();
        let secs = started.elapsed().as_secs_f64();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {name}: {} ({secs:.2} s)", out.detail);
        failed += usize::from(!out.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
