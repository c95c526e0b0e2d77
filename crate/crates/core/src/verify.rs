//! Numerical certification of the congruences.
//!
//! Two independent routes reach the progression p(11^r m + n):
//!
//! * the tower `L_i = U_11(φ^{λ_{i-1}} L_{i-1})`, `L_0 = 1`, which after
//!   dividing out the eta product leaves `Σ_m p(11^r m + n_r) q^m`;
//! * the generating series itself, sliced along the progression.
//!
//! [`crosscheck_product_form`] pins the two together against the naive
//! oracle; [`verify_theorem`] then uses the cheaper second route.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::congruence::{self, lambda, CongruenceStatement};
use crate::oracle;
use crate::ring::{Integers, ModPow11, Ring, Valuation};
use crate::series::{eta_quotient, EtaQuotientSpec, QSeries};
use crate::{Error, Result};

/// Largest number of coefficients a single series may hold.
pub const DEFAULT_TERM_BUDGET: u128 = 50_000_000;

/// Headroom above A_r used when the caller does not pick K.
pub const DEFAULT_GUARD_DIGITS: u32 = 6;

fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        return Err(Error::Resource { needed, budget });
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct TowerResult<R: Ring> {
    /// L_0 ..= L_r
    pub levels: Vec<QSeries<R>>,
    pub ring: R,
    /// L_r is trusted below q^base_precision.
    pub base_precision: i64,
}

impl<R: Ring> TowerResult<R> {
    pub fn top(&self) -> &QSeries<R> {
        self.levels.last().expect("L_0 is always present")
    }
}

/// Precision needed at each level so that L_r is trusted below q^n; level i
/// is also kept at least at n * 11^(r-i).
pub fn tower_precisions(c: i64, d: i64, r: u32, n: i64) -> Vec<i64> {
    let mut precs = vec![n; r as usize + 1];
    for i in (1..=r as usize).rev() {
        let lam = lambda(c, d, i as u32 - 1);
        // U_11 maps prec P to floor((P - 1)/11) + 1, φ^λ shifts it by 5λ
        let needed = 11 * precs[i] - 10 - 5 * lam;
        let floor = n.saturating_mul(11i64.saturating_pow(r - i as u32 + 1));
        precs[i - 1] = needed.max(floor).max(1);
    }
    precs
}

pub fn build_tower<R: Ring>(c: i64, d: i64, r: u32, n: i64, ring: R) -> Result<TowerResult<R>> {
    build_tower_with_budget(c, d, r, n, ring, DEFAULT_TERM_BUDGET)
}

pub fn build_tower_with_budget<R: Ring>(
    c: i64,
    d: i64,
    r: u32,
    n: i64,
    ring: R,
    budget: u128,
) -> Result<TowerResult<R>> {
    if n < 1 {
        return Err(Error::InvalidArgument("tower precision N must be >= 1".into()));
    }
    let precs = tower_precisions(c, d, r, n);
    check_budget(precs[0] as u128, budget)?;

    let mut levels = Vec::with_capacity(r as usize + 1);
    levels.push(QSeries::one(ring.clone(), precs[0]));
    for i in 0..r {
        let phi = EtaQuotientSpec::phi_power(lambda(c, d, i));
        let next = levels[i as usize].mul_eta_quotient(&phi)?.u_p(11)?;
        levels.push(next);
    }
    debug_assert!(levels.last().unwrap().prec() >= n);
    Ok(TowerResult {
        levels,
        ring,
        base_precision: n,
    })
}

/// Eta product accompanying L_r: ∏(1-q^n)^c (1-q^{11n})^d for even r, with
/// c and d swapped for odd r.
pub fn tower_product(c: i64, d: i64, r: u32) -> EtaQuotientSpec {
    let (e1, e11) = if r.is_multiple_of(2) { (c, d) } else { (d, c) };
    EtaQuotientSpec::new([(1, e1), (11, e11)], false).expect("distinct scales")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub m: i64,
    pub tower: BigInt,
    pub direct: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crosscheck {
    /// Checked m values, half-open.
    pub m_range: (i64, i64),
    pub first_mismatch: Option<Mismatch>,
}

impl Crosscheck {
    pub fn ok(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Divides L_r by its eta product and compares the remaining coefficients
/// with p(11^r m + n_r) taken from the naive oracle.
pub fn crosscheck_product_form<R: Ring>(
    c: i64,
    d: i64,
    r: u32,
    n: i64,
    ring: R,
) -> Result<Crosscheck> {
    let tower = build_tower(c, d, r, n, ring.clone())?;
    let inner = tower.top().mul_eta_quotient(&tower_product(c, d, r).inverse())?;
    let mu_r = congruence::mu_seq(c, d, r);
    let m_lo = inner.offset().min(mu_r) - 1;
    let m_hi = n;

    let step = 11i64.pow(r);
    let n_raw = i64::try_from(congruence::n_raw(c, d, r))
        .map_err(|_| Error::InvalidArgument("n_r out of range".into()))?;
    let max_index = step * (m_hi - 1) + n_raw;
    let direct = oracle::naive_coeffs(c, d, 11, (max_index + 1).max(0) as usize);

    for m in m_lo..m_hi {
        let got = inner.coeff(m)?;
        let want = direct.get(step * m + n_raw);
        if got != ring.from_bigint(&want) {
            return Ok(Crosscheck {
                m_range: (m_lo, m_hi),
                first_mismatch: Some(Mismatch {
                    m,
                    tower: ring.to_bigint(&got),
                    direct: want,
                }),
            });
        }
    }
    Ok(Crosscheck {
        m_range: (m_lo, m_hi),
        first_mismatch: None,
    })
}

/// Outcome of checking one statement on m = 0 ..= terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub statement: CongruenceStatement,
    pub terms: u64,
    pub m_range: [u64; 2],
    pub ring: String,
    /// K for Z/11^K, absent for exact integers.
    pub modulus_exponent: Option<u32>,
    /// Minimum 11-adic valuation along the progression.
    pub min_valuation: Valuation,
    /// Certified amount by which the observed valuation exceeds A_r.
    pub exceeds_by: Option<u32>,
    pub pass: bool,
    pub trivial: bool,
    pub elapsed_ms: f64,
}

/// Checks 11^{A_r} | p_[1^c 11^d](11^r m + n) for m ≤ `terms` in Z/11^K.
pub fn verify_theorem(c: i64, d: i64, r: u32, terms: u64, k: u32) -> Result<VerificationReport> {
    let statement = congruence::statement(c, d, r)?;
    if k < statement.exponent + 1 {
        return Err(Error::Config(format!(
            "K = {k} cannot certify 11^{}; need K >= {}",
            statement.exponent,
            statement.exponent + 1
        )));
    }
    let ring = ModPow11::new(k)?;
    verify_statement(&statement, terms, ring, DEFAULT_TERM_BUDGET)
}

/// K = A_r + guard digits, capped at what `u64` residues support.
pub fn default_k(c: i64, d: i64, r: u32) -> u32 {
    (congruence::exponent(c, d, r) + DEFAULT_GUARD_DIGITS).min(ModPow11::MAX_K)
}

pub fn verify_statement<R: Ring>(
    statement: &CongruenceStatement,
    terms: u64,
    ring: R,
    budget: u128,
) -> Result<VerificationReport> {
    if terms < 1 {
        return Err(Error::InvalidArgument("terms must be >= 1".into()));
    }
    let clock = Stopwatch::start();
    let mut report = VerificationReport {
        statement: statement.clone(),
        terms,
        m_range: [0, terms],
        ring: ring.to_string(),
        modulus_exponent: ring.modulus_exponent(),
        min_valuation: Valuation::AtLeast(0),
        exceeds_by: None,
        pass: true,
        trivial: statement.trivial,
        elapsed_ms: 0.0,
    };
    if statement.trivial {
        report.elapsed_ms = clock.elapsed_ms();
        return Ok(report);
    }

    let min = progression_min_valuation(
        statement.c,
        statement.d,
        statement.modulus(),
        statement.n,
        terms,
        ring,
        budget,
    )?;
    report.min_valuation = min;
    report.pass = min.at_least(statement.exponent);
    report.exceeds_by = min
        .lower_bound()
        .and_then(|v| v.checked_sub(statement.exponent));
    report.elapsed_ms = clock.elapsed_ms();
    Ok(report)
}

/// Minimum 11-adic valuation of p_[1^c 11^d](step * m + n) over m = 0 ..= terms,
/// read off one expansion of the generating series.
pub fn progression_min_valuation<R: Ring>(
    c: i64,
    d: i64,
    step: u128,
    n: u128,
    terms: u64,
    ring: R,
    budget: u128,
) -> Result<Valuation> {
    let last = step * u128::from(terms) + n;
    check_budget(last + 1, budget)?;
    let spec = EtaQuotientSpec::new([(1, -c), (11, -d)], false)?;
    let series = eta_quotient(&spec, last as i64 + 1, ring.clone())?;
    let mut min = Valuation::Infinite;
    for m in 0..=u128::from(terms) {
        let a = series.coeff((step * m + n) as i64)?;
        min = min.min(ring.valuation_11(&a));
    }
    Ok(min)
}

/// Same as [`verify_statement`] in exact integers; slow, meant for cross-checks.
pub fn verify_statement_exact(statement: &CongruenceStatement, terms: u64) -> Result<VerificationReport> {
    verify_statement(statement, terms, Integers, DEFAULT_TERM_BUDGET)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub trials: u32,
    pub failures: u32,
    pub seed: u64,
    pub first_failure: Option<String>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }
}

/// Compares `U_11(f(q) g(q^11))` with `g(q) U_11(f(q))` on the common trusted
/// window. Returns `None` when they agree.
pub fn up_identity_case(f: &QSeries<Integers>, g: &QSeries<Integers>) -> Result<Option<String>> {
    let lhs = f.mul(&g.dilate(11)?)?.u_p(11)?;
    let rhs = g.mul(&f.u_p(11)?)?;
    let prec = lhs.prec().min(rhs.prec());
    let (lhs, rhs) = (lhs.truncate(prec), rhs.truncate(prec));
    Ok((lhs != rhs).then(|| format!("f = {f}, g = {g}: {lhs} != {rhs}")))
}

/// Randomized check of `U_11(f(q) g(q^11)) = g(q) U_11(f(q))` for polynomials
/// f with exponents in -20..=400 and g with exponents in 0..=30.
pub fn up_identity_selftest(trials: u32, seed: u64) -> Result<IdentityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = IdentityReport {
        trials,
        failures: 0,
        seed,
        first_failure: None,
    };
    for _ in 0..trials {
        let f_off = rng.gen_range(-20..=0);
        let f_len = rng.gen_range(1..=(401 - f_off) as usize);
        let f: Vec<i64> = (0..f_len).map(|_| rng.gen_range(-50..=50)).collect();
        let g_len = rng.gen_range(1..=31);
        let g: Vec<i64> = (0..g_len).map(|_| rng.gen_range(-50..=50)).collect();
        let f = QSeries::from_i64s(Integers, f_off, &f, 401);
        let g = QSeries::from_i64s(Integers, 0, &g, 31);
        if let Some(msg) = up_identity_case(&f, &g)? {
            report.failures += 1;
            report.first_failure.get_or_insert(msg);
        }
    }
    Ok(report)
}

// std::time::Instant panics on wasm32-unknown-unknown.
struct Stopwatch {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Stopwatch {
    fn start() -> Self {
        Stopwatch {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    fn elapsed_ms(&self) -> f64 {
        #[cfg(not(target_arch = "wasm32"))]
        {
            self.start.elapsed().as_secs_f64() * 1e3
        }
        #[cfg(target_arch = "wasm32")]
        {
            0.0
        }
    }
}
