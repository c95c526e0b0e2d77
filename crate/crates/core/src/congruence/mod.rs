//! Discrete side of the congruences: the sequences λ_r, μ_r, n_r, the θ/δ/α
//! tables and the guaranteed exponent A_r.
//!
//! For integers c, d and r ≥ 1 the statement produced here reads
//!
//! ```text
//! p_[1^c 11^d](11^r m + n) ≡ 0 (mod 11^{A_r})   for all m ≥ 0,
//! ```
//!
//! where n is the least nonnegative solution of 24 n ≡ c + 11d (mod 11^r).

pub mod tables;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};
use tables::{ALPHA, ALPHA_NEGATIVE_LAST_COLUMN, DELTA, THETA};

/// Largest r for which statements are produced; keeps 11^r and n_r in `i128`.
pub const MAX_STATEMENT_R: u32 = 30;

/// λ_i: c for even i, d for odd i.
pub fn lambda(c: i64, d: i64, i: u32) -> i64 {
    if i.is_multiple_of(2) {
        c
    } else {
        d
    }
}

/// Memoized λ/μ/A prefixes for one (c, d).
#[derive(Debug, Clone)]
pub struct Sequences {
    c: i64,
    d: i64,
    mu: Vec<i64>,
    // exponents[r] = A_r
    exponents: Vec<u32>,
}

impl Sequences {
    pub fn new(c: i64, d: i64) -> Self {
        Sequences {
            c,
            d,
            mu: vec![0],
            exponents: vec![0],
        }
    }

    fn extend_to(&mut self, r: u32) {
        while self.mu.len() <= r as usize {
            let i = self.mu.len() as u32 - 1;
            let lam = lambda(self.c, self.d, i);
            let mu = self.mu[i as usize];
            self.mu.push(Integer::div_ceil(&(5 * lam + mu), &11));
            let a = self.exponents[i as usize] + u32::from(theta(lam, mu));
            self.exponents.push(a);
        }
    }

    pub fn mu(&mut self, r: u32) -> i64 {
        self.extend_to(r);
        self.mu[r as usize]
    }

    pub fn exponent(&mut self, r: u32) -> u32 {
        self.extend_to(r);
        self.exponents[r as usize]
    }

    /// μ_0 ..= μ_r
    pub fn mus(&mut self, r: u32) -> &[i64] {
        self.extend_to(r);
        &self.mu[..=r as usize]
    }

    /// A_0 ..= A_r
    pub fn exponents(&mut self, r: u32) -> &[u32] {
        self.extend_to(r);
        &self.exponents[..=r as usize]
    }
}

/// μ_r from μ_0 = 0 and μ_r = ⌈(5 λ_{r-1} + μ_{r-1}) / 11⌉.
pub fn mu_seq(c: i64, d: i64, r: u32) -> i64 {
    Sequences::new(c, d).mu(r)
}

/// ω(c, d) = 1 iff c + 11d is negative and divisible by 24.
pub fn omega(c: i64, d: i64) -> i64 {
    let k = c + 11 * d;
    i64::from(k < 0 && k % 24 == 0)
}

/// Closed form for μ_r, valid while |c + 11d| < 11^r:
/// ⌈(11c + d)/24⌉ + ω for odd r, ⌈(c + 11d)/24⌉ + ω for even r.
pub fn mu_closed(c: i64, d: i64, r: u32) -> Result<i64> {
    let weight = c + 11 * d;
    let in_range = r >= 1
        && 11i128
            .checked_pow(r)
            .is_none_or(|m| (weight as i128).abs() < m);
    if !in_range {
        return Err(Error::Guard { r, weight });
    }
    let base = if r % 2 == 1 {
        Integer::div_ceil(&(11 * c + d), &24)
    } else {
        Integer::div_ceil(&weight, &24)
    };
    Ok(base + omega(c, d))
}

/// Least integer m with 11^r m + n_r ≥ 0.
pub fn mu_least(c: i64, d: i64, r: u32) -> i64 {
    let n = n_raw(c, d, r);
    let m = BigInt::from(11).pow(r);
    Integer::div_ceil(&(-n), &m).to_i64().expect("mu fits in i64")
}

/// n_r from n_0 = 0 and n_r = n_{r-1} - 5 λ_{r-1} 11^{r-1}.
pub fn n_raw(c: i64, d: i64, r: u32) -> BigInt {
    let mut n = BigInt::zero();
    let mut pow = BigInt::one();
    for i in 0..r {
        n -= BigInt::from(5 * lambda(c, d, i)) * &pow;
        pow *= 11;
    }
    n
}

/// Closed forms for n_r, split by parity of r.
pub fn n_raw_closed(c: i64, d: i64, r: u32) -> BigInt {
    if r == 0 {
        return BigInt::zero();
    }
    let big = |e: u32| -> BigInt { (BigInt::from(11).pow(e) - 1) / 24 };
    let (c, d) = (BigInt::from(c), BigInt::from(d));
    if r % 2 == 1 {
        let k = r.div_ceil(2);
        -(c * big(2 * k)) - BigInt::from(11) * d * big(2 * k - 2)
    } else {
        -(c + BigInt::from(11) * d) * big(r)
    }
}

/// Least nonnegative n with 24 n ≡ c + 11d (mod 11^r).
pub fn n_canonical(c: i64, d: i64, r: u32) -> Result<BigInt> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    Ok(n_raw(c, d, r).mod_floor(&BigInt::from(11).pow(r)))
}

/// θ(λ, μ) from the embedded table, extended to all integers by
/// θ(λ - 11, μ) = θ(λ + 12, μ - 5) = θ(λ, μ).
pub fn theta(lambda: i64, mu: i64) -> u8 {
    let (q, s) = mu.div_mod_floor(&5);
    THETA[s as usize][(lambda + 12 * q).rem_euclid(11) as usize]
}

/// δ(μ, ν), depending on μ and ν mod 5.
pub fn delta(mu: i64, nu: i64) -> i32 {
    DELTA[mu.rem_euclid(5) as usize][nu.rem_euclid(5) as usize]
}

/// Lower bound ⌊(11ν - μ - 5λ + δ(μ, ν)) / 10⌋ on the 11-adic order of the
/// transition coefficients.
pub fn order_bound(mu: i64, nu: i64, lambda: i64) -> i64 {
    Integer::div_floor(&(11 * nu - mu - 5 * lambda + i64::from(delta(mu, nu))), &10)
}

/// A_r(c, d) = Σ_{i=0}^{r-1} θ(λ_i, μ_i).
pub fn exponent(c: i64, d: i64, r: u32) -> u32 {
    Sequences::new(c, d).exponent(r)
}

/// α(c, d) = θ(d, ⌈(11c + d)/24⌉ + ω) + θ(c, ⌈(c + 11d)/24⌉ + ω).
pub fn alpha(c: i64, d: i64) -> u8 {
    let w = omega(c, d);
    theta(d, Integer::div_ceil(&(11 * c + d), &24) + w) + theta(c, Integer::div_ceil(&(c + 11 * d), &24) + w)
}

/// One cell of the α table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlphaCell {
    /// 0, 24, 48, 72 or 96.
    pub row: u32,
    /// 1 ..= 24.
    pub column: u32,
    /// The replacement last column used when c + 11d < 0.
    pub negative: bool,
}

impl AlphaCell {
    pub fn residue(&self) -> u32 {
        self.row + self.column
    }

    /// Table cell governing c + 11d.
    pub fn for_weight(weight: i64) -> Self {
        let v = (weight - 1).rem_euclid(120);
        let (row, column) = ((v / 24 * 24) as u32, (v % 24 + 1) as u32);
        AlphaCell {
            row,
            column,
            negative: weight < 0 && column == 24,
        }
    }

    /// A weight c + 11d that falls in this cell.
    pub fn representative_weight(&self) -> i64 {
        let v = i64::from(self.residue());
        if !self.negative {
            v
        } else if v < 120 {
            v - 120
        } else {
            v - 240
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaTable {
    pub grid: [[u8; 24]; 5],
    pub negative_last_column: [u8; 5],
}

impl AlphaTable {
    pub fn embedded() -> Self {
        AlphaTable {
            grid: ALPHA,
            negative_last_column: ALPHA_NEGATIVE_LAST_COLUMN,
        }
    }

    pub fn get(&self, cell: AlphaCell) -> u8 {
        let i = (cell.row / 24) as usize;
        if cell.negative {
            self.negative_last_column[i]
        } else {
            self.grid[i][cell.column as usize - 1]
        }
    }

    fn set(&mut self, cell: AlphaCell, v: u8) {
        let i = (cell.row / 24) as usize;
        if cell.negative {
            self.negative_last_column[i] = v;
        } else {
            self.grid[i][cell.column as usize - 1] = v;
        }
    }

    /// α predicted by the table for c + 11d.
    pub fn lookup(&self, c: i64, d: i64) -> u8 {
        self.get(AlphaCell::for_weight(c + 11 * d))
    }

    /// The 120 ordinary cells followed by the 5 negative last-column cells.
    pub fn cells() -> impl Iterator<Item = AlphaCell> {
        let ordinary = (1..=120u32).map(|v| AlphaCell {
            row: (v - 1) / 24 * 24,
            column: (v - 1) % 24 + 1,
            negative: false,
        });
        let negative = (0..5u32).map(|i| AlphaCell {
            row: 24 * i,
            column: 24,
            negative: true,
        });
        ordinary.chain(negative)
    }

    pub fn render(&self) -> String {
        tables::render_alpha(&self.grid, &self.negative_last_column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaCellDiff {
    pub cell: AlphaCell,
    /// (c, d) used to compute the value.
    pub representative: (i64, i64),
    pub embedded: u8,
    pub computed: u8,
}

impl AlphaCellDiff {
    pub fn matches(&self) -> bool {
        self.embedded == self.computed
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaRegeneration {
    pub computed: AlphaTable,
    pub cells: Vec<AlphaCellDiff>,
}

impl AlphaRegeneration {
    pub fn mismatches(&self) -> impl Iterator<Item = &AlphaCellDiff> {
        self.cells.iter().filter(|c| !c.matches())
    }

    pub fn all_match(&self) -> bool {
        self.mismatches().next().is_none()
    }
}

/// Recomputes every α cell from θ and the α formula and diffs it against the
/// embedded table.
pub fn alpha_table_regenerate() -> AlphaRegeneration {
    let embedded = AlphaTable::embedded();
    let mut computed = embedded.clone();
    let cells = AlphaTable::cells()
        .map(|cell| {
            let representative = (cell.representative_weight(), 0);
            let value = alpha(representative.0, representative.1);
            computed.set(cell, value);
            AlphaCellDiff {
                cell,
                representative,
                embedded: embedded.get(cell),
                computed: value,
            }
        })
        .collect();
    AlphaRegeneration { computed, cells }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorollaryBound {
    pub exponent: u32,
    pub alpha: u8,
    /// |A_r - α r / 2|
    pub deviation: f64,
    /// 2 + α/2 + (1 + α/2) log_11 |c + 11d|
    pub bound: f64,
    pub holds: bool,
}

/// Evaluates |A_r - αr/2| < 2 + α/2 + (1 + α/2) log_11 |c + 11d|.
pub fn corollary_bound(c: i64, d: i64, r: u32) -> Result<CorollaryBound> {
    let weight = c + 11 * d;
    if weight == 0 {
        return Err(Error::Domain("c + 11d = 0, log_11 |c + 11d| undefined".into()));
    }
    let exponent = exponent(c, d, r);
    let alpha = alpha(c, d);
    let half = f64::from(alpha) / 2.0;
    let deviation = (f64::from(exponent) - half * f64::from(r)).abs();
    let bound = 2.0 + half + (1.0 + half) * (weight.abs() as f64).log(11.0);
    Ok(CorollaryBound {
        exponent,
        alpha,
        deviation,
        bound,
        holds: deviation < bound,
    })
}

pub fn corollary_bound_check(c: i64, d: i64, r: u32) -> Result<bool> {
    corollary_bound(c, d, r).map(|b| b.holds)
}

/// p_[1^c 11^d](11^r m + n) ≡ 0 (mod 11^exponent) for all m ≥ 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceStatement {
    pub c: i64,
    pub d: i64,
    pub r: u32,
    /// Least nonnegative representative of the progression.
    pub n: u128,
    /// The value produced by the recurrence; differs from `n` by a multiple of 11^r.
    pub n_raw: i128,
    pub exponent: u32,
    pub trivial: bool,
}

impl CongruenceStatement {
    pub fn modulus(&self) -> u128 {
        11u128.pow(self.r)
    }

    /// Index 11^r m + n.
    pub fn index(&self, m: u64) -> u128 {
        self.modulus() * u128::from(m) + self.n
    }

    pub fn render(&self) -> String {
        let n = if self.n == 0 {
            String::new()
        } else {
            format!(" + {}", self.n)
        };
        let mut s = format!(
            "p_[1^{} 11^{}]({}m{}) ≡ 0 (mod 11^{})",
            self.c,
            self.d,
            self.modulus(),
            n,
            self.exponent
        );
        if self.trivial {
            s.push_str(" [trivial]");
        }
        s
    }
}

pub fn statement(c: i64, d: i64, r: u32) -> Result<CongruenceStatement> {
    if r == 0 || r > MAX_STATEMENT_R {
        return Err(Error::InvalidArgument(format!(
            "r must lie in 1..={MAX_STATEMENT_R}, got {r}"
        )));
    }
    let raw = n_raw(c, d, r);
    let n = n_canonical(c, d, r)?;
    let too_big = || Error::InvalidArgument(format!("n_r for (c, d, r) = ({c}, {d}, {r}) overflows"));
    let exponent = exponent(c, d, r);
    Ok(CongruenceStatement {
        c,
        d,
        r,
        n: n.to_u128().ok_or_else(too_big)?,
        n_raw: raw.to_i128().ok_or_else(too_big)?,
        exponent,
        trivial: exponent == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_alternates() {
        assert_eq!(lambda(1, -1, 0), 1);
        assert_eq!(lambda(2, 7, 3), 7);
        assert_eq!(lambda(5, 9, 10), 5);
    }

    #[test]
    fn mu_recurrence() {
        assert_eq!(mu_seq(1, 1, 1), 1);
        assert_eq!(mu_seq(2, 7, 2), 4);
        assert_eq!(mu_seq(2, 7, 3), 2);
        assert_eq!(mu_seq(1, -1, 2), 0);
        assert_eq!(mu_seq(1, -1, 3), 1);
        let mut s = Sequences::new(2, 7);
        assert_eq!(s.mus(6), &[0, 1, 4, 2, 4, 2, 4]);
    }

    #[test]
    fn mu_closed_form() {
        assert_eq!(mu_closed(2, 7, 10).unwrap(), 4);
        assert_eq!(mu_closed(2, 7, 11).unwrap(), 2);
        assert_eq!(mu_closed(1, -13, 8).unwrap(), Integer::div_ceil(&(-142i64), &24));
        assert_eq!(omega(1, -13), 0);
        assert_eq!(omega(-13, -1), 1);
        assert_eq!(
            mu_closed(2, 7, 1).unwrap_err(),
            Error::Guard { r: 1, weight: 79 }
        );
    }

    #[test]
    fn n_values() {
        assert_eq!(n_raw(3, 8, 1), BigInt::from(-15));
        assert_eq!(n_raw(1, 1, 2), BigInt::from(-60));
        assert_eq!(n_raw(1, 1, 3), BigInt::from(-665));
        assert_eq!(n_raw_closed(1, 1, 3), BigInt::from(-665));
        assert_eq!(n_canonical(1, 1, 1).unwrap(), BigInt::from(6));
        assert_eq!(n_canonical(1, -1, 2).unwrap(), BigInt::from(50));
        assert_eq!(n_canonical(1, -11, 1).unwrap(), BigInt::from(6));
        assert!(n_canonical(1, 1, 0).is_err());
    }

    #[test]
    fn theta_lookups() {
        assert_eq!(theta(1, 1), 1);
        assert_eq!(theta(-1, 1), 0);
        assert_eq!(theta(7, 2), 1);
        assert_eq!(theta(10, 1), 0);
        // θ(λ + 12, μ - 5) = θ(λ, μ)
        assert_eq!(theta(12, -5), theta(0, 0));
        assert_eq!(theta(-12, 5), THETA[0][0]);
    }

    #[test]
    fn delta_and_bounds() {
        assert_eq!(delta(0, 0), -1);
        assert_eq!(delta(2, 3), 13);
        assert_eq!(delta(5, 5), -1);
        assert_eq!(delta(-1, -4), DELTA[4][1]);
        assert_eq!(order_bound(0, 1, 0), 1);
        assert_eq!(order_bound(0, 0, 0), -1);
    }

    #[test]
    fn worked_exponents() {
        for r in 0..=10 {
            assert_eq!(exponent(1, 1, r), r);
        }
        for r in 1..=5 {
            assert_eq!(exponent(1, -1, 2 * r), r);
            assert_eq!(exponent(2, 7, 2 * r), 2 * r - 1);
        }
        assert_eq!(alpha(1, 1), 2);
        assert_eq!(alpha(1, -1), 1);
        assert_eq!(alpha(2, 7), 2);
    }

    #[test]
    fn alpha_cells() {
        let t = AlphaTable::embedded();
        assert_eq!(t.get(AlphaCell::for_weight(12)), 2);
        assert_eq!(t.get(AlphaCell::for_weight(110)), 1);
        assert_eq!(t.get(AlphaCell::for_weight(79)), 2);
        assert_eq!(t.lookup(1, -1), 1);
        let neg = AlphaCell::for_weight(-24);
        assert!(neg.negative);
        assert_eq!((neg.row, neg.column), (72, 24));
        assert_eq!(t.get(neg), 0);
        assert_eq!(AlphaCell::for_weight(120).residue(), 120);
        assert!(!AlphaCell::for_weight(0).negative);
        assert_eq!(AlphaTable::cells().count(), 125);
        let last = AlphaTable::cells().last().unwrap();
        assert_eq!(last.representative_weight(), -120);
    }

    #[test]
    fn regeneration_reports_every_cell() {
        let regen = alpha_table_regenerate();
        assert_eq!(regen.cells.len(), 125);
        let cell = |v: i64| {
            regen
                .cells
                .iter()
                .find(|c| c.representative.0 == v)
                .unwrap()
                .clone()
        };
        assert_eq!(cell(12).computed, 2);
        assert_eq!(cell(110).computed, 1);
        assert_eq!(cell(79).computed, 2);
    }

    #[test]
    fn corollary_examples() {
        assert!(corollary_bound_check(1, 1, 50).unwrap());
        let b = corollary_bound(2, 7, 40).unwrap();
        assert_eq!((b.exponent, b.alpha), (39, 2));
        assert!(b.holds);
        assert!(matches!(corollary_bound_check(11, -1, 5), Err(Error::Domain(_))));
    }

    #[test]
    fn statements() {
        let s = statement(1, 0, 1).unwrap();
        assert_eq!((s.n, s.exponent, s.trivial), (6, 1, false));
        let s = statement(1, 1, 2).unwrap();
        assert_eq!((s.n, s.exponent), (61, 2));
        let s = statement(0, 0, 4).unwrap();
        assert!(s.trivial);
        assert_eq!(s.exponent, 0);
        let s = statement(1, 1, 3).unwrap();
        assert_eq!(s.n, 666);
        assert_eq!(s.render(), "p_[1^1 11^1](1331m + 666) ≡ 0 (mod 11^3)");
        assert!(statement(1, 1, 0).is_err());
    }
}
