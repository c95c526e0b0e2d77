//! Truncated Laurent series in q over a pluggable coefficient ring.
//!
//! A [`QSeries`] stores the coefficients of q^offset .. q^(prec-1) densely.
//! Everything at or above `prec` is unknown, and every operation propagates
//! that bound pessimistically. Series are kept normalized: the first stored
//! coefficient is nonzero, or the series is the canonical zero (no stored
//! coefficients, `offset == prec`).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::ring::{Ring, Valuation};
use crate::{Error, Result};

#[derive(Clone)]
pub struct QSeries<R: Ring> {
    ring: R,
    offset: i64,
    coeffs: Vec<R::Elem>,
    prec: i64,
}

impl<R: Ring> QSeries<R> {
    /// Builds a series from coefficients of q^offset, q^(offset+1), ...
    /// Entries at or beyond `prec` are dropped; missing entries below `prec`
    /// are zero.
    pub fn from_coeffs(ring: R, offset: i64, mut coeffs: Vec<R::Elem>, prec: i64) -> Self {
        let len = (prec - offset).max(0) as usize;
        coeffs.truncate(len);
        coeffs.resize(len, ring.zero());
        let mut s = QSeries {
            ring,
            offset: offset.min(prec),
            coeffs,
            prec,
        };
        s.normalize();
        s
    }

    pub fn from_i64s(ring: R, offset: i64, coeffs: &[i64], prec: i64) -> Self {
        let coeffs = coeffs.iter().map(|&c| ring.from_i64(c)).collect();
        Self::from_coeffs(ring, offset, coeffs, prec)
    }

    pub fn zero(ring: R, prec: i64) -> Self {
        QSeries {
            ring,
            offset: prec,
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn one(ring: R, prec: i64) -> Self {
        Self::monomial(ring.clone(), 0, ring.one(), prec)
    }

    /// `coeff * q^exponent + O(q^prec)`
    pub fn monomial(ring: R, exponent: i64, coeff: R::Elem, prec: i64) -> Self {
        Self::from_coeffs(ring, exponent, vec![coeff], prec)
    }

    fn normalize(&mut self) {
        match self.coeffs.iter().position(|c| !self.ring.is_zero(c)) {
            Some(0) => {}
            Some(i) => {
                self.coeffs.drain(..i);
                self.offset += i as i64;
            }
            None => {
                self.coeffs.clear();
                self.offset = self.prec;
            }
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// Exponent of the first stored coefficient (the order, when nonzero).
    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Coefficients are trusted for exponents below this bound.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order of the series, `None` when it vanishes on the trusted window.
    pub fn order(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.offset)
    }

    pub fn coefficients(&self) -> &[R::Elem] {
        &self.coeffs
    }

    /// `(exponent, coefficient)` for every stored term, zeros included.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &R::Elem)> + '_ {
        (self.offset..).zip(self.coeffs.iter())
    }

    pub fn coeff(&self, n: i64) -> Result<R::Elem> {
        if n >= self.prec {
            return Err(Error::OutOfPrecision {
                exponent: n,
                prec: self.prec,
            });
        }
        Ok(if n < self.offset {
            self.ring.zero()
        } else {
            self.coeffs[(n - self.offset) as usize].clone()
        })
    }

    pub fn coeff_bigint(&self, n: i64) -> Result<BigInt> {
        self.coeff(n).map(|c| self.ring.to_bigint(&c))
    }

    /// Minimum 11-adic valuation over the trusted window.
    pub fn valuation_11(&self) -> Valuation {
        self.coeffs
            .iter()
            .map(|c| self.ring.valuation_11(c))
            .min()
            .unwrap_or_else(|| self.ring.valuation_11(&self.ring.zero()))
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        Ok(())
    }

    /// Multiplies by q^k.
    pub fn shift(mut self, k: i64) -> Self {
        self.offset += k;
        self.prec += k;
        self
    }

    /// Forgets everything at or above `prec` (no-op if already coarser).
    pub fn truncate(mut self, prec: i64) -> Self {
        if prec < self.prec {
            let keep = (prec - self.offset).max(0) as usize;
            self.coeffs.truncate(keep);
            self.prec = prec;
            self.normalize();
        }
        self
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        QSeries {
            ring: self.ring.clone(),
            offset: self.offset,
            coeffs,
            prec: self.prec,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |r, a, b| r.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |r, a, b| r.sub(a, b))
    }

    fn combine(&self, other: &Self, op: impl Fn(&R, &R::Elem, &R::Elem) -> R::Elem) -> Result<Self> {
        self.check_ring(other)?;
        let prec = self.prec.min(other.prec);
        let offset = self.offset.min(other.offset).min(prec);
        let zero = self.ring.zero();
        let at = |s: &Self, n: i64| -> R::Elem {
            if n < s.offset {
                zero.clone()
            } else {
                s.coeffs[(n - s.offset) as usize].clone()
            }
        };
        let coeffs = (offset..prec)
            .map(|n| op(&self.ring, &at(self, n), &at(other, n)))
            .collect();
        Ok(Self::from_coeffs(self.ring.clone(), offset, coeffs, prec))
    }

    pub fn scale(&self, k: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.mul(c, k)).collect();
        Self::from_coeffs(self.ring.clone(), self.offset, coeffs, self.prec)
    }

    /// Product; the result is trusted below
    /// `min(a.prec + b.offset, b.prec + a.offset)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let offset = self.offset + other.offset;
        let prec = (self.prec + other.offset).min(other.prec + self.offset);
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ring.clone(), prec));
        }
        let len = (prec - offset) as usize;
        let ring = &self.ring;
        let mut out = vec![ring.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                ring.mul_add_assign(&mut out[i + j], a, b);
            }
        }
        Ok(Self::from_coeffs(ring.clone(), offset, out, prec))
    }

    /// Multiplicative inverse; needs a unit leading coefficient.
    pub fn inv(&self) -> Result<Self> {
        let ring = &self.ring;
        let lead_inv = self
            .coeffs
            .first()
            .and_then(|a0| ring.inv(a0))
            .ok_or_else(|| Error::NonUnit {
                exponent: self.offset,
                ring: ring.to_string(),
            })?;
        let len = self.coeffs.len();
        let mut out: Vec<R::Elem> = Vec::with_capacity(len);
        out.push(lead_inv.clone());
        for n in 1..len {
            let mut acc = ring.zero();
            for k in 1..=n {
                ring.mul_add_assign(&mut acc, &self.coeffs[k], &out[n - k]);
            }
            out.push(ring.neg(&ring.mul(&acc, &lead_inv)));
        }
        Ok(Self::from_coeffs(
            ring.clone(),
            -self.offset,
            out,
            len as i64 - self.offset,
        ))
    }

    /// `self^e` by square-and-multiply; negative `e` inverts first.
    pub fn int_pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let rel_prec = base.prec - base.offset;
        let mut result = Self::one(self.ring.clone(), rel_prec);
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(result)
    }

    /// `U_p`: keeps the coefficients at multiples of p, `sum a(pn) q^n`.
    pub fn u_p(&self, p: u64) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidArgument("U_p needs p >= 1".into()));
        }
        let p = p as i64;
        let prec = Integer::div_floor(&(self.prec - 1), &p) + 1;
        if self.is_zero() {
            return Ok(Self::zero(self.ring.clone(), prec));
        }
        let offset = Integer::div_ceil(&self.offset, &p);
        let coeffs = (offset..prec)
            .map(|n| self.coeffs[(p * n - self.offset) as usize].clone())
            .collect();
        Ok(Self::from_coeffs(self.ring.clone(), offset, coeffs, prec))
    }

    /// Substitutes q -> q^p.
    pub fn dilate(&self, p: u64) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidArgument("dilation needs p >= 1".into()));
        }
        let pi = p as i64;
        let prec = self.prec * pi;
        if self.is_zero() {
            return Ok(Self::zero(self.ring.clone(), prec));
        }
        let offset = self.offset * pi;
        let mut coeffs = vec![self.ring.zero(); (prec - offset) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * p as usize] = c.clone();
        }
        Ok(Self::from_coeffs(self.ring.clone(), offset, coeffs, prec))
    }

    /// Multiplies in place by `prod_{n>=1} (1 - q^{sn})`.
    pub fn mul_euler(&mut self, s: u64) {
        let terms = pentagonal_terms(s, self.coeffs.len());
        let ring = &self.ring;
        for idx in (0..self.coeffs.len()).rev() {
            let mut acc = self.coeffs[idx].clone();
            for &(e, negative) in &terms[1..] {
                if e > idx {
                    break;
                }
                let src = &self.coeffs[idx - e];
                if negative {
                    ring.sub_assign(&mut acc, src);
                } else {
                    ring.add_assign(&mut acc, src);
                }
            }
            self.coeffs[idx] = acc;
        }
        self.normalize();
    }

    /// Divides in place by `prod_{n>=1} (1 - q^{sn})`.
    pub fn div_euler(&mut self, s: u64) {
        let terms = pentagonal_terms(s, self.coeffs.len());
        let ring = &self.ring;
        for idx in 0..self.coeffs.len() {
            let mut acc = self.coeffs[idx].clone();
            for &(e, negative) in &terms[1..] {
                if e > idx {
                    break;
                }
                let src = &self.coeffs[idx - e];
                if negative {
                    ring.add_assign(&mut acc, src);
                } else {
                    ring.sub_assign(&mut acc, src);
                }
            }
            self.coeffs[idx] = acc;
        }
        self.normalize();
    }

    /// Multiplies by the eta quotient described by `spec`. The product part
    /// has offset 0 and leading coefficient 1, so precision only moves by the
    /// prefactor shift.
    pub fn mul_eta_quotient(&self, spec: &EtaQuotientSpec) -> Result<Self> {
        let shift = spec.prefactor_offset()?;
        let mut out = self.clone();
        for (&s, &e) in &spec.factors {
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    out.mul_euler(s);
                } else {
                    out.div_euler(s);
                }
            }
        }
        Ok(out.shift(shift))
    }

    /// Re-expresses the coefficients in another ring through their integer
    /// representatives.
    pub fn map_ring<S: Ring>(&self, target: S) -> QSeries<S> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| target.from_bigint(&self.ring.to_bigint(c)))
            .collect();
        QSeries::from_coeffs(target, self.offset, coeffs, self.prec)
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| self.ring.to_bigint(c)).collect()
    }
}

impl<R: Ring> PartialEq for QSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.offset == other.offset
            && self.prec == other.prec
            && self.coeffs == other.coeffs
    }
}

impl<R: Ring> fmt::Debug for QSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries[{}]({self})", self.ring)
    }
}

impl<R: Ring> fmt::Display for QSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.terms() {
            let c = self.ring.to_bigint(c);
            if c == BigInt::from(0) {
                continue;
            }
            let neg = c < BigInt::from(0);
            let mag = if neg { -c } else { c };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let unit = mag == BigInt::from(1);
            match n {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("q")?,
                1 => write!(f, "{mag}q")?,
                _ if unit => write!(f, "q^{n}")?,
                _ => write!(f, "{mag}q^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.prec)
    }
}

/// Exponents `s * k(3k-1)/2` below `len` with sign flag `(-1)^k`, in
/// increasing order, for k = 0, 1, -1, 2, -2, ...
fn pentagonal_terms(s: u64, len: usize) -> Vec<(usize, bool)> {
    let s = s as usize;
    let mut out = vec![(0usize, false)];
    for k in 1usize.. {
        let lo = s * (k * (3 * k - 1) / 2);
        if lo >= len {
            break;
        }
        let negative = k % 2 == 1;
        out.push((lo, negative));
        let hi = s * (k * (3 * k + 1) / 2);
        if hi < len {
            out.push((hi, negative));
        }
    }
    out
}

/// `prod_{n>=1} (1 - q^{sn}) + O(q^prec)` from Euler's pentagonal expansion.
pub fn euler_product<R: Ring>(s: u64, prec: i64, ring: R) -> Result<QSeries<R>> {
    if s == 0 {
        return Err(Error::InvalidArgument("Euler product needs s >= 1".into()));
    }
    let len = prec.max(0) as usize;
    let mut coeffs = vec![ring.zero(); len];
    for (e, negative) in pentagonal_terms(s, len) {
        coeffs[e] = ring.from_i64(if negative { -1 } else { 1 });
    }
    Ok(QSeries::from_coeffs(ring, 0, coeffs, prec))
}

/// A finite product `prod_s eta(s tau)^{e_s}`, optionally without the
/// `q^{sum s e_s / 24}` prefactor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaQuotientSpec {
    factors: BTreeMap<u64, i64>,
    include_eta_prefactor: bool,
}

impl EtaQuotientSpec {
    pub fn new(
        factors: impl IntoIterator<Item = (u64, i64)>,
        include_eta_prefactor: bool,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (s, e) in factors {
            if s == 0 {
                return Err(Error::InvalidArgument("eta scale must be positive".into()));
            }
            if map.insert(s, e).is_some() {
                return Err(Error::InvalidArgument(format!("eta scale {s} repeated")));
            }
        }
        map.retain(|_, e| *e != 0);
        Ok(EtaQuotientSpec {
            factors: map,
            include_eta_prefactor,
        })
    }

    /// `phi^lambda` with `phi = eta(121 tau) / eta(tau)`.
    pub fn phi_power(lambda: i64) -> Self {
        Self::new([(121, lambda), (1, -lambda)], true).expect("distinct scales")
    }

    pub fn factors(&self) -> &BTreeMap<u64, i64> {
        &self.factors
    }

    pub fn include_eta_prefactor(&self) -> bool {
        self.include_eta_prefactor
    }

    /// Same scales with every exponent negated.
    pub fn inverse(&self) -> Self {
        EtaQuotientSpec {
            factors: self.factors.iter().map(|(&s, &e)| (s, -e)).collect(),
            include_eta_prefactor: self.include_eta_prefactor,
        }
    }

    /// `sum_s s * e_s`
    pub fn weight(&self) -> i64 {
        self.factors.iter().map(|(&s, &e)| s as i64 * e).sum()
    }

    /// Power of q contributed by the prefactor (0 when it is excluded).
    pub fn prefactor_offset(&self) -> Result<i64> {
        if !self.include_eta_prefactor {
            return Ok(0);
        }
        let w = self.weight();
        if w % 24 != 0 {
            return Err(Error::NonIntegralPrefactor { weight: w });
        }
        Ok(w / 24)
    }
}

/// Expands an eta quotient to precision `prec`.
pub fn eta_quotient<R: Ring>(spec: &EtaQuotientSpec, prec: i64, ring: R) -> Result<QSeries<R>> {
    let shift = spec.prefactor_offset()?;
    QSeries::one(ring, prec - shift).mul_eta_quotient(spec)
}
