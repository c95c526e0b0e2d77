//! Reference values computed the slow, obvious way.
//!
//! Nothing here goes through [`crate::series`]: each factor `(1 - q^m)^{±1}`
//! is applied by its own linear pass over exact integers. The verifier and the
//! test suites compare the fast path against these sequences.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use crate::ring::valuation_11;

/// First N coefficients of a generating function, with the parameters that
/// produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSequence {
    pub values: Vec<BigInt>,
    pub c: i64,
    pub d: i64,
    pub ell: u64,
}

impl OracleSequence {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Coefficient at n, zero for negative n. Panics past the computed range.
    pub fn get(&self, n: i64) -> BigInt {
        if n < 0 {
            BigInt::zero()
        } else {
            self.values[n as usize].clone()
        }
    }
}

/// p(0), ..., p(N-1) from Euler's pentagonal recurrence.
pub fn euler_p(n: usize) -> OracleSequence {
    let mut p = vec![BigInt::zero(); n];
    if n > 0 {
        p[0] = BigInt::one();
    }
    for i in 1..n {
        let mut acc = BigInt::zero();
        for k in 1usize.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = p[i - g1].clone();
            if g2 <= i {
                term += &p[i - g2];
            }
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p[i] = acc;
    }
    OracleSequence {
        values: p,
        c: 1,
        d: 0,
        ell: 1,
    }
}

/// Multiplies `a` in place by `(1 - q^m)^e` one factor at a time.
fn apply_factor(a: &mut [BigInt], m: usize, e: i64) {
    for _ in 0..e.unsigned_abs() {
        if e > 0 {
            for n in (m..a.len()).rev() {
                let t = a[n - m].clone();
                a[n] -= t;
            }
        } else {
            for n in m..a.len() {
                let t = a[n - m].clone();
                a[n] += t;
            }
        }
    }
}

/// First N coefficients of `prod_n (1 - q^n)^{-c} (1 - q^{ell n})^{-d}`.
pub fn naive_coeffs(c: i64, d: i64, ell: u64, n: usize) -> OracleSequence {
    let mut a = vec![BigInt::zero(); n];
    if n > 0 {
        a[0] = BigInt::one();
    }
    for m in 1..n {
        apply_factor(&mut a, m, -c);
    }
    let ell = ell.max(1) as usize;
    for m in (ell..n).step_by(ell) {
        apply_factor(&mut a, m, -d);
    }
    OracleSequence {
        values: a,
        c,
        d,
        ell: ell as u64,
    }
}

/// `prod_{n>=1} (1 - q^{sn})` truncated below N, multiplied out factor by factor.
pub fn naive_euler_product(s: usize, n: usize) -> Vec<BigInt> {
    let mut a = vec![BigInt::zero(); n];
    if n > 0 {
        a[0] = BigInt::one();
    }
    let s = s.max(1);
    for m in (s..n).step_by(s) {
        apply_factor(&mut a, m, 1);
    }
    a
}
