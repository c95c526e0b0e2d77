//! Quick structural suites bundled for `etacong selftest`.

use serde::{Deserialize, Serialize};

use crate::congruence::{self, theta};
use crate::oracle;
use crate::ring::Integers;
use crate::series::{eta_quotient, EtaQuotientSpec};
use crate::verify;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn suite(name: &str, failures: Vec<String>, checked: usize) -> SuiteResult {
    SuiteResult {
        name: name.to_string(),
        pass: failures.is_empty(),
        detail: match failures.first() {
            None => format!("{checked} checks"),
            Some(f) => format!("{} of {checked} failed; first: {f}", failures.len()),
        },
    }
}

/// θ(λ - 11, μ) = θ(λ + 12, μ - 5) = θ(λ, μ) on a box.
pub fn theta_recurrences(radius: i64) -> SuiteResult {
    let mut failures = Vec::new();
    let mut checked = 0;
    for l in -radius..=radius {
        for m in -radius..=radius {
            checked += 1;
            let t = theta(l, m);
            if theta(l - 11, m) != t || theta(l + 12, m - 5) != t {
                failures.push(format!("theta({l}, {m})"));
            }
        }
    }
    suite("theta recurrences", failures, checked)
}

/// n_r and μ_r: recurrence vs closed forms vs the least-m characterization.
pub fn sequence_closed_forms(radius: i64, max_r: u32) -> SuiteResult {
    let mut failures = Vec::new();
    let mut checked = 0;
    for c in -radius..=radius {
        for d in -radius..=radius {
            let mut seq = congruence::Sequences::new(c, d);
            for r in 0..=max_r {
                checked += 1;
                let raw = congruence::n_raw(c, d, r);
                let mu = seq.mu(r);
                let mut ok = raw == congruence::n_raw_closed(c, d, r)
                    && mu == congruence::mu_least(c, d, r);
                if r >= 1 {
                    let m = num_bigint::BigInt::from(11).pow(r);
                    let lhs = num_integer::Integer::mod_floor(&(24 * &raw - (c + 11 * d)), &m);
                    ok &= lhs == num_bigint::BigInt::from(0);
                    if let Ok(closed) = congruence::mu_closed(c, d, r) {
                        ok &= closed == mu;
                    }
                }
                if !ok {
                    failures.push(format!("(c, d, r) = ({c}, {d}, {r})"));
                }
            }
        }
    }
    suite("n_r / mu_r closed forms", failures, checked)
}

/// Series-core eta quotients against the naive oracle, exact integers.
pub fn oracle_equivalence(radius: i64, terms: usize) -> Result<SuiteResult> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for c in -radius..=radius {
        for d in -radius..=radius {
            checked += 1;
            let spec = EtaQuotientSpec::new([(1, -c), (11, -d)], false)?;
            let fast = eta_quotient(&spec, terms as i64, Integers)?;
            let slow = oracle::naive_coeffs(c, d, 11, terms);
            let same = (0..terms as i64).all(|n| fast.coeff(n).ok() == Some(slow.get(n)));
            if !same {
                failures.push(format!("(c, d) = ({c}, {d})"));
            }
        }
    }
    Ok(suite("series vs naive oracle", failures, checked))
}

pub fn up_identity(trials: u32, seed: u64) -> Result<SuiteResult> {
    let rep = verify::up_identity_selftest(trials, seed)?;
    let failures = rep.first_failure.into_iter().collect();
    Ok(suite("U_11 commutation identity", failures, trials as usize))
}

pub fn run_all(seed: u64) -> Result<Vec<SuiteResult>> {
    Ok(vec![
        up_identity(100, seed)?,
        theta_recurrences(40),
        sequence_closed_forms(20, 6),
        oracle_equivalence(6, 120)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        for s in run_all(1).unwrap() {
            assert!(s.pass, "{}: {}", s.name, s.detail);
        }
    }
}
