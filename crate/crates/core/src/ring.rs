//! Coefficient rings for truncated series.
//!
//! Two rings are provided: exact integers ([`Integers`]) and the residue
//! ring Z/11^K ([`ModPow11`]). Both answer 11-adic valuation queries; the
//! modular ring can only certify valuations up to K, which is reported as
//! [`Valuation::AtLeast`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// 11-adic valuation of a ring element or of a whole series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Valuation {
    Finite(u32),
    /// The element vanishes modulo 11^k; the true valuation is unknown beyond k.
    AtLeast(u32),
    Infinite,
}

impl Valuation {
    /// The certified lower bound, `None` for an exact zero.
    pub fn lower_bound(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) | Valuation::AtLeast(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// Whether the element is certainly divisible by 11^e.
    pub fn at_least(self, e: u32) -> bool {
        self.lower_bound().is_none_or(|v| v >= e)
    }

    pub fn is_exact(self) -> bool {
        !matches!(self, Valuation::AtLeast(_))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        use Valuation::*;
        match (self, other) {
            (Infinite, Infinite) => Ordering::Equal,
            (Infinite, _) => Ordering::Greater,
            (_, Infinite) => Ordering::Less,
            // at equal bounds the exact value is the smaller statement
            (Finite(a), AtLeast(b)) => a.cmp(b).then(Ordering::Less),
            (AtLeast(a), Finite(b)) => a.cmp(b).then(Ordering::Greater),
            (Finite(a), Finite(b)) | (AtLeast(a), AtLeast(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Largest e with 11^e | x, or [`Valuation::Infinite`] for zero.
pub fn valuation_11(x: &BigInt) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let eleven = BigInt::from(11);
    let mut x = x.abs();
    let mut e = 0;
    loop {
        let (q, r) = x.div_rem(&eleven);
        if !r.is_zero() {
            return Valuation::Finite(e);
        }
        x = q;
        e += 1;
    }
}

/// A commutative coefficient ring. Elements carry no context; the ring value
/// does (e.g. the modulus).
// from_* construct elements of this ring, so they need `self`
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, x: i64) -> Self::Elem;
    fn from_bigint(&self, x: &BigInt) -> Self::Elem;
    /// Canonical integer representative (least nonnegative residue when modular).
    fn to_bigint(&self, a: &Self::Elem) -> BigInt;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    fn sub_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.sub(a, b);
    }

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let p = self.mul(a, b);
        self.add_assign(acc, &p);
    }

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.inv(a).is_some()
    }

    fn valuation_11(&self, a: &Self::Elem) -> Valuation;

    /// K when this is Z/11^K.
    fn modulus_exponent(&self) -> Option<u32> {
        None
    }
}

/// Exact arbitrary-precision integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

impl fmt::Display for Integers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Z")
    }
}

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, x: i64) -> BigInt {
        BigInt::from(x)
    }
    fn from_bigint(&self, x: &BigInt) -> BigInt {
        x.clone()
    }
    fn to_bigint(&self, a: &BigInt) -> BigInt {
        a.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn add_assign(&self, a: &mut BigInt, b: &BigInt) {
        *a += b;
    }
    fn sub_assign(&self, a: &mut BigInt, b: &BigInt) {
        *a -= b;
    }
    fn mul_add_assign(&self, acc: &mut BigInt, a: &BigInt, b: &BigInt) {
        if !a.is_zero() && !b.is_zero() {
            *acc += a * b;
        }
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        (a.abs().is_one()).then(|| a.clone())
    }
    fn valuation_11(&self, a: &BigInt) -> Valuation {
        valuation_11(a)
    }
}

/// Z/11^K with residues stored in `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModPow11 {
    k: u32,
    modulus: u64,
}

impl ModPow11 {
    /// 11^18 is the largest power of 11 below 2^63.
    pub const MAX_K: u32 = 18;

    pub fn new(k: u32) -> crate::Result<Self> {
        if k == 0 || k > Self::MAX_K {
            return Err(crate::Error::Config(format!(
                "modulus exponent K must lie in 1..={}, got {k}",
                Self::MAX_K
            )));
        }
        Ok(ModPow11 {
            k,
            modulus: 11u64.pow(k),
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    fn reduce_i128(&self, x: i128) -> u64 {
        x.rem_euclid(self.modulus as i128) as u64
    }
}

impl fmt::Display for ModPow11 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/11^{}", self.k)
    }
}

impl Ring for ModPow11 {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, x: i64) -> u64 {
        self.reduce_i128(x as i128)
    }
    fn from_bigint(&self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.modulus))
            .to_u64()
            .expect("residue fits in u64")
    }
    fn to_bigint(&self, a: &u64) -> BigInt {
        BigInt::from(*a)
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    #[inline]
    fn add_assign(&self, a: &mut u64, b: &u64) {
        *a = self.add(a, b);
    }
    #[inline]
    fn sub_assign(&self, a: &mut u64, b: &u64) {
        *a = self.sub(a, b);
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if (*a).is_multiple_of(11) {
            return None;
        }
        // extended Euclid on (a, 11^K)
        let (mut r0, mut r1) = (self.modulus as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce_i128(t0))
    }
    fn valuation_11(&self, a: &u64) -> Valuation {
        if *a == 0 {
            return Valuation::AtLeast(self.k);
        }
        let mut x = *a;
        let mut e = 0;
        while x.is_multiple_of(11) {
            x /= 11;
            e += 1;
        }
        Valuation::Finite(e)
    }
    fn modulus_exponent(&self) -> Option<u32> {
        Some(self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_json_shape() {
        let cases = [
            (Valuation::Finite(2), r#"{"kind":"finite","value":2}"#),
            (Valuation::AtLeast(8), r#"{"kind":"at_least","value":8}"#),
            (Valuation::Infinite, r#"{"kind":"infinite"}"#),
        ];
        for (v, json) in cases {
            assert_eq!(serde_json::to_string(&v).unwrap(), json);
            assert_eq!(serde_json::from_str::<Valuation>(json).unwrap(), v);
        }
    }

    #[test]
    fn valuation_of_integers() {
        assert_eq!(valuation_11(&BigInt::from(0)), Valuation::Infinite);
        assert_eq!(valuation_11(&BigInt::from(121)), Valuation::Finite(2));
        assert_eq!(valuation_11(&BigInt::from(57)), Valuation::Finite(0));
        assert_eq!(valuation_11(&BigInt::from(-1331)), Valuation::Finite(3));
    }

    #[test]
    fn modular_zero_reports_lower_bound() {
        let r = ModPow11::new(3).unwrap();
        assert_eq!(r.valuation_11(&0), Valuation::AtLeast(3));
        assert_eq!(r.valuation_11(&r.from_i64(242)), Valuation::Finite(2));
        assert_eq!(r.valuation_11(&r.from_i64(1331 * 5)), Valuation::AtLeast(3));
    }

    #[test]
    fn modular_inverse() {
        let r = ModPow11::new(5).unwrap();
        for a in [1i64, 2, 24, 10, -7, 160_000] {
            let x = r.from_i64(a);
            let y = r.inv(&x).unwrap();
            assert_eq!(r.mul(&x, &y), 1);
        }
        assert!(r.inv(&r.from_i64(11)).is_none());
        assert!(!r.is_unit(&r.from_i64(22)));
    }

    #[test]
    fn integer_units_are_plus_minus_one() {
        assert!(Integers.is_unit(&BigInt::from(-1)));
        assert!(!Integers.is_unit(&BigInt::from(2)));
    }

    #[test]
    fn rejects_out_of_range_k() {
        assert!(ModPow11::new(0).is_err());
        assert!(ModPow11::new(19).is_err());
        assert!(ModPow11::new(18).is_ok());
    }

    #[test]
    fn valuation_order() {
        use Valuation::*;
        let mut v = vec![Infinite, AtLeast(3), Finite(3), Finite(1), AtLeast(0)];
        v.sort();
        assert_eq!(v, vec![AtLeast(0), Finite(1), Finite(3), AtLeast(3), Infinite]);
        assert!(AtLeast(4).at_least(4));
        assert!(!Finite(2).at_least(3));
        assert!(Infinite.at_least(100));
    }

    #[test]
    fn reductions_agree() {
        let r = ModPow11::new(4).unwrap();
        let big = BigInt::parse_bytes(b"-123456789012345678901234567890", 10).unwrap();
        let direct = r.from_bigint(&big);
        let m = BigInt::from(r.modulus());
        assert_eq!(BigInt::from(direct), ((big % &m) + &m) % &m);
    }
}
