//! Fixed-point arithmetic on the circle `[0, 1)` with a rigorous error radius.
//!
//! A [`UnitValue`] stores `mantissa / 2^B` together with an integer bound `err`
//! on the distance (in units of `2^-B`) between the stored value and the real
//! number it stands for. Ring operations modulo 1 are exact on the mantissa, so
//! the only source of error is the realization of the irrational parameter and
//! the error radius grows only through integer multiplication.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational with `u64` parts, used for interval endpoints and radii.
pub type Rational = num_rational::Ratio<u64>;

/// Guard bits kept between the accumulated error and the mantissa width.
pub const GUARD_BITS: u32 = 60;

/// Mantissa width of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision {
    bits: u32,
}

impl Precision {
    pub const MAX_BITS: u32 = 4096;
    pub const MIN_BITS: u32 = 64;
    /// Bits added on top of the integer part consumed by `n^k`.
    pub const POLICY_SLACK: u32 = 64;

    pub fn new(bits: u32) -> Result<Self> {
        if bits > Self::MAX_BITS {
            return Err(Error::PrecisionTooLarge(bits as u64));
        }
        if bits < Self::MIN_BITS {
            return Err(Error::PrecisionBelowPolicy { requested: bits, minimum: Self::MIN_BITS });
        }
        Ok(Self { bits })
    }

    /// `B = k * ceil(log2 n_max) + 64`.
    pub fn policy(k: u32, n_max: u64) -> Result<Self> {
        let bits = policy_bits(k, n_max);
        if bits > Self::MAX_BITS as u64 {
            return Err(Error::PrecisionTooLarge(bits));
        }
        Self::new(bits as u32)
    }

    /// Policy precision, optionally raised by an explicit override. Overrides
    /// below the policy minimum are rejected.
    pub fn for_run(k: u32, n_max: u64, requested: Option<u32>) -> Result<Self> {
        let minimum = Self::policy(k, n_max)?;
        match requested {
            None => Ok(minimum),
            Some(bits) if bits < minimum.bits => {
                Err(Error::PrecisionBelowPolicy { requested: bits, minimum: minimum.bits })
            }
            Some(bits) => Self::new(bits),
        }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// `2^B`, the integer standing for the point `1 ≡ 0`.
    pub fn modulus(self) -> BigUint {
        BigUint::one() << self.bits
    }
}

fn policy_bits(k: u32, n_max: u64) -> u64 {
    k as u64 * ceil_log2(n_max) as u64 + Precision::POLICY_SLACK as u64
}

pub(crate) fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Reduce `x` modulo `2^bits` by dropping high limbs.
pub(crate) fn truncate_bits(x: BigUint, bits: u32) -> BigUint {
    if x.bits() <= bits as u64 {
        return x;
    }
    let words = bits.div_ceil(32) as usize;
    let mut digits: Vec<u32> = x.iter_u32_digits().take(words).collect();
    let rem = bits % 32;
    if rem != 0 {
        if let Some(last) = digits.last_mut() {
            *last &= (1u32 << rem) - 1;
        }
    }
    BigUint::new(digits)
}

/// Floor-reduce a signed integer into `[0, 2^bits)`.
pub(crate) fn reduce_signed(x: &BigInt, bits: u32) -> BigUint {
    let modulus = BigInt::one() << bits;
    x.mod_floor(&modulus).to_biguint().expect("mod_floor with positive modulus is non-negative")
}

/// Result of testing a value against a closed interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Membership {
    Inside,
    Outside,
    /// The error ball straddles an endpoint.
    Uncertain,
}

/// A point of `[0, 1)` stored as `mantissa / 2^B` with error radius `err / 2^B`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnitValue {
    mantissa: BigUint,
    err: BigUint,
    bits: u32,
}

impl fmt::Debug for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnitValue({} ± {} ulp @ {} bits)", self.to_decimal(20), self.err, self.bits)
    }
}

impl UnitValue {
    pub fn zero(prec: Precision) -> Self {
        Self { mantissa: BigUint::zero(), err: BigUint::zero(), bits: prec.bits }
    }

    /// Builds a value from a raw mantissa, reducing it modulo `2^B`.
    pub fn from_mantissa(mantissa: BigUint, err: BigUint, prec: Precision) -> Self {
        Self { mantissa: truncate_bits(mantissa, prec.bits), err, bits: prec.bits }
    }

    /// `{num/den}` truncated to `B` bits; `err` is 0 for dyadic inputs, 1 otherwise.
    pub fn from_ratio(num: u64, den: u64, prec: Precision) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        let scaled = BigUint::from(num % den) << prec.bits;
        let (q, r) = scaled.div_rem(&BigUint::from(den));
        let err = if r.is_zero() { BigUint::zero() } else { BigUint::one() };
        Ok(Self::from_mantissa(q, err, prec))
    }

    /// Parses `0.125`, `.5`, `3/8` or `1` (taken modulo 1).
    pub fn parse(text: &str, prec: Precision) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::Parse(format!("invalid torus coordinate `{text}`"));
        let (num, den) = if let Some((n, d)) = text.split_once('/') {
            let n: BigUint = n.trim().parse().map_err(|_| bad())?;
            let d: BigUint = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            (n, d)
        } else {
            let (int, frac) = text.split_once('.').unwrap_or((text, ""));
            if int.is_empty() && frac.is_empty() {
                return Err(bad());
            }
            if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let digits = format!("{}{}", int, frac);
            let n: BigUint = digits.parse().map_err(|_| bad())?;
            (n, BigUint::from(10u32).pow(frac.len() as u32))
        };
        let scaled = (num % &den) << prec.bits;
        let (q, r) = scaled.div_rem(&den);
        let err = if r.is_zero() { BigUint::zero() } else { BigUint::one() };
        Ok(Self::from_mantissa(q, err, prec))
    }

    pub fn mantissa(&self) -> &BigUint {
        &self.mantissa
    }

    /// Error radius in units of `2^-B`.
    pub fn err(&self) -> &BigUint {
        &self.err
    }

    pub fn precision(&self) -> Precision {
        Precision { bits: self.bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn with_err(mut self, err: BigUint) -> Self {
        self.err = err;
        self
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.bits, other.bits, "mixing fixed-point values of different precision");
    }

    /// Addition modulo 1.
    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        Self {
            mantissa: truncate_bits(&self.mantissa + &other.mantissa, self.bits),
            err: &self.err + &other.err,
            bits: self.bits,
        }
    }

    /// `1 - a` modulo 1.
    pub fn neg(&self) -> Self {
        let mantissa = if self.mantissa.is_zero() {
            BigUint::zero()
        } else {
            (BigUint::one() << self.bits) - &self.mantissa
        };
        Self { mantissa, err: self.err.clone(), bits: self.bits }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiplication by a non-negative integer modulo 1.
    pub fn mul_int(&self, n: &BigUint) -> Self {
        Self {
            mantissa: truncate_bits(&self.mantissa * n, self.bits),
            err: &self.err * n,
            bits: self.bits,
        }
    }

    pub fn mul_u64(&self, n: u64) -> Self {
        Self {
            mantissa: truncate_bits(&self.mantissa * n, self.bits),
            err: &self.err * n,
            bits: self.bits,
        }
    }

    /// Multiplication by a signed integer modulo 1.
    pub fn mul_i64(&self, n: i64) -> Self {
        let scaled = self.mul_u64(n.unsigned_abs());
        if n < 0 {
            scaled.neg()
        } else {
            scaled
        }
    }

    /// Fails when the error radius no longer leaves `GUARD_BITS` of headroom.
    pub fn check_budget(&self) -> Result<()> {
        let limit = self.bits.saturating_sub(GUARD_BITS) as u64;
        if self.err.bits() > limit {
            return Err(Error::InsufficientPrecision {
                bits: self.bits,
                err_bits: self.err.bits(),
                limit,
            });
        }
        Ok(())
    }

    /// `min(a, 1 - a)`, carrying the same error radius.
    pub fn dist_to_integer(&self) -> Self {
        let half = BigUint::one() << (self.bits - 1);
        if self.mantissa <= half {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// Closed-interval membership of the whole error ball, for `0 <= lo < hi <= 1`.
    pub fn interval_test(&self, lo: Rational, hi: Rational) -> Membership {
        debug_assert!(lo < hi && *hi.numer() <= *hi.denom());
        let modulus = BigInt::one() << self.bits;
        let value = BigInt::from(self.mantissa.clone());
        let err = BigInt::from(self.err.clone());
        if &err * 2 >= modulus {
            return if lo == Rational::from_integer(0) && hi == Rational::from_integer(1) {
                Membership::Inside
            } else {
                Membership::Uncertain
            };
        }
        let low = &value - &err;
        let high = &value + &err;
        let pieces = if low.is_negative() {
            vec![(&low + &modulus, modulus.clone()), (BigInt::zero(), high)]
        } else if high > modulus {
            vec![(low, modulus.clone()), (BigInt::zero(), &high - &modulus)]
        } else {
            vec![(low, high)]
        };

        let lo_n = BigInt::from(*lo.numer()) * &modulus;
        let lo_d = BigInt::from(*lo.denom());
        let hi_n = BigInt::from(*hi.numer()) * &modulus;
        let hi_d = BigInt::from(*hi.denom());
        // x >= lo  <=>  x * lo_d >= lo_n, and likewise for hi.
        let at_least_lo = |x: &BigInt| (x * &lo_d).cmp(&lo_n) != Ordering::Less;
        let at_most_hi = |x: &BigInt| (x * &hi_d).cmp(&hi_n) != Ordering::Greater;

        let inside = pieces.iter().all(|(a, b)| at_least_lo(a) && at_most_hi(b));
        if inside {
            return Membership::Inside;
        }
        let outside = pieces.iter().all(|(a, b)| !at_least_lo(b) || !at_most_hi(a));
        if outside {
            Membership::Outside
        } else {
            Membership::Uncertain
        }
    }

    /// Nearest `f64` to the stored value (top 64 bits of the mantissa).
    pub fn to_f64(&self) -> f64 {
        let top = if self.bits >= 64 {
            (&self.mantissa >> (self.bits - 64)).to_u64().unwrap_or(u64::MAX)
        } else {
            (&self.mantissa << (64 - self.bits)).to_u64().unwrap_or(u64::MAX)
        };
        top as f64 * (-64f64).exp2()
    }

    /// Stored value truncated to `digits` decimal places, e.g. `0.4142`.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scaled = (&self.mantissa * BigUint::from(10u32).pow(digits)) >> self.bits;
        if digits == 0 {
            return "0".to_string();
        }
        format!("0.{:0>width$}", scaled.to_string(), width = digits as usize)
    }

    /// `true` if the stored value is within the error radius of 0 modulo 1.
    pub fn is_zero_within_err(&self) -> bool {
        self.dist_to_integer().mantissa <= self.err
    }

    /// Error radius as a real number.
    pub fn err_f64(&self) -> f64 {
        let e = self.err.to_f64().unwrap_or(f64::INFINITY);
        e * (-(self.bits as f64)).exp2()
    }

    /// Compares `value - err > threshold` exactly (the certified lower bound exceeds `threshold`).
    pub fn certainly_above(&self, threshold: Rational) -> bool {
        if self.err > self.mantissa {
            return false;
        }
        let lower = &self.mantissa - &self.err;
        lower * BigUint::from(*threshold.denom()) > BigUint::from(*threshold.numer()) << self.bits
    }

    /// Compares `value + err <= threshold` exactly.
    pub fn certainly_at_most(&self, threshold: Rational) -> bool {
        let upper = &self.mantissa + &self.err;
        upper * BigUint::from(*threshold.denom()) <= BigUint::from(*threshold.numer()) << self.bits
    }
}

/// `{n^k a}`: exact fractional part of `n^k * mantissa / 2^B` with `err = n^k * a.err`.
pub fn frac_npow(n: u64, k: u32, a: &UnitValue) -> Result<UnitValue> {
    let out = match n.checked_pow(k) {
        Some(p) => a.mul_u64(p),
        None => {
            let p = BigUint::from(n).pow(k);
            if p.bits() > Precision::MAX_BITS as u64 {
                return Err(Error::Overflow(format!(
                    "{n}^{k} exceeds the {}-bit wide-integer limit",
                    Precision::MAX_BITS
                )));
            }
            a.mul_int(&p)
        }
    };
    out.check_budget()?;
    Ok(out)
}

/// The irrational `(p + q*sqrt(d)) / r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlphaSpec {
    p: i64,
    q: i64,
    r: i64,
    d: u64,
    label: String,
}

impl AlphaSpec {
    pub fn new(p: i64, q: i64, r: i64, d: u64) -> Result<Self> {
        let label = format!("surd:{p},{q},{r},{d}");
        if r == 0 {
            return Err(Error::MalformedAlpha(format!("{label}: zero denominator")));
        }
        if q == 0 {
            return Err(Error::NotIrrational(format!("{label}: q = 0")));
        }
        let root = d.sqrt();
        if root * root == d {
            return Err(Error::NotIrrational(format!("{label}: {d} is a perfect square")));
        }
        Ok(Self { p, q, r, d, label })
    }

    pub fn sqrt2() -> Self {
        Self::new(0, 1, 1, 2).expect("sqrt(2) is irrational")
    }

    pub fn sqrt3() -> Self {
        Self::new(0, 1, 1, 3).expect("sqrt(3) is irrational")
    }

    /// `(1 + sqrt 5) / 2`.
    pub fn golden() -> Self {
        Self::new(1, 1, 2, 5).expect("golden ratio is irrational")
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn parts(&self) -> (i64, i64, i64, u64) {
        (self.p, self.q, self.r, self.d)
    }

    /// `alpha / divisor` as another surd.
    pub fn divided_by(&self, divisor: i64) -> Result<Self> {
        if divisor == 0 {
            return Err(Error::InvalidParameter("division of alpha by zero".into()));
        }
        let r = self
            .r
            .checked_mul(divisor)
            .ok_or_else(|| Error::Overflow(format!("denominator of {} / {divisor}", self.label)))?;
        Self::new(self.p, self.q, r, self.d)
    }

    /// `mantissa = floor(frac(alpha) * 2^B)`, exact, so `|value - frac(alpha)| < 2^-B`.
    pub fn realize(&self, prec: Precision) -> UnitValue {
        let (mut p, mut q, mut r) = (self.p as i128, self.q as i128, self.r as i128);
        if r < 0 {
            p = -p;
            q = -q;
            r = -r;
        }
        let bits = prec.bits;
        // alpha * 2^B = (p*2^B + sign(q) * sqrt(q^2 d 4^B)) / r and the root is
        // irrational, so its floor s pins down the floor of the whole quotient.
        let radicand = (BigUint::from((q * q) as u128) * self.d) << (2 * bits);
        let s = BigInt::from(radicand.sqrt());
        let shifted_p = BigInt::from(p) << bits;
        let numer = if q > 0 { shifted_p + s } else { shifted_p - s - 1 };
        let floor = numer.div_floor(&BigInt::from(r));
        UnitValue { mantissa: reduce_signed(&floor, bits), err: BigUint::one(), bits }
    }
}

impl fmt::Display for AlphaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "surd:{},{},{},{}", self.p, self.q, self.r, self.d)
    }
}

impl FromStr for AlphaSpec {
    type Err = Error;

    /// `surd:p,q,r,d`.
    fn from_str(s: &str) -> Result<Self> {
        let malformed = || Error::MalformedAlpha(s.to_string());
        let body = s.trim().strip_prefix("surd:").ok_or_else(malformed)?;
        let parts: Vec<&str> = body.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(malformed());
        }
        let p = parts[0].parse().map_err(|_| malformed())?;
        let q = parts[1].parse().map_err(|_| malformed())?;
        let r = parts[2].parse().map_err(|_| malformed())?;
        let d = parts[3].parse().map_err(|_| malformed())?;
        Self::new(p, q, r, d)
    }
}

/// Parses `a/b` or a finite decimal into a [`Rational`].
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid rational `{text}`"));
    if let Some((n, d)) = text.split_once('/') {
        let n: u64 = n.trim().parse().map_err(|_| bad())?;
        let d: u64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    if frac.len() > 18 || (int.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let den = 10u64.pow(frac.len() as u32);
    let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
    let frac_val: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let num = int.checked_mul(den).and_then(|x| x.checked_add(frac_val)).ok_or_else(bad)?;
    Ok(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn r(n: u64, d: u64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn policy_bits_match_formula() {
        assert_eq!(Precision::policy(2, 1_000_000).unwrap().bits(), 2 * 20 + 64);
        assert_eq!(Precision::policy(3, 1024).unwrap().bits(), 3 * 10 + 64);
        assert_eq!(Precision::policy(5, 1).unwrap().bits(), 64);
        assert!(matches!(Precision::policy(200, u64::MAX), Err(Error::PrecisionTooLarge(_))));
    }

    #[test]
    fn override_below_policy_rejected() {
        let err = Precision::for_run(2, 1_000_000, Some(80)).unwrap_err();
        assert!(matches!(err, Error::PrecisionBelowPolicy { requested: 80, minimum: 104 }));
        assert_eq!(Precision::for_run(2, 1_000_000, Some(256)).unwrap().bits(), 256);
    }

    #[test]
    fn realize_sqrt2_matches_frozen_mantissa() {
        // floor(frac(sqrt 2) * 2^64), from a 50-digit mpmath evaluation.
        let a = AlphaSpec::sqrt2().realize(prec(64));
        assert_eq!(a.mantissa(), &BigUint::from(7640891576956012808u64));
        assert_eq!(a.err(), &BigUint::one());
        assert!((a.to_f64() - 0.414_213_562_373_095_05).abs() < 1e-15);
    }

    #[test]
    fn equivalent_surds_realize_identically() {
        let a = AlphaSpec::new(0, 1, 1, 2).unwrap().realize(prec(64));
        let b = AlphaSpec::new(0, 2, 2, 2).unwrap().realize(prec(64));
        let c = AlphaSpec::new(0, -1, -1, 2).unwrap().realize(prec(64));
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn negative_surd_wraps_into_unit_interval() {
        // -sqrt(2) = -2 + 0.5857864376...
        let a = AlphaSpec::new(0, -1, 1, 2).unwrap().realize(prec(64));
        assert!((a.to_f64() - 0.585_786_437_626_904_9).abs() < 1e-15);
        let sum = a.add(&AlphaSpec::sqrt2().realize(prec(64)));
        assert!(sum.is_zero_within_err());
    }

    #[test]
    fn rational_alpha_rejected() {
        assert!(matches!(AlphaSpec::new(1, 0, 1, 2), Err(Error::NotIrrational(_))));
        assert!(matches!(AlphaSpec::new(0, 1, 1, 4), Err(Error::NotIrrational(_))));
        assert!(matches!(AlphaSpec::new(0, 1, 0, 2), Err(Error::MalformedAlpha(_))));
        assert!(matches!("surd:1,0,1,2".parse::<AlphaSpec>(), Err(Error::NotIrrational(_))));
    }

    #[test]
    fn alpha_text_format() {
        let a: AlphaSpec = "surd:0,1,1,2".parse().unwrap();
        assert_eq!(a, AlphaSpec::sqrt2());
        assert_eq!(a.to_string(), "surd:0,1,1,2");
        assert!("surd:0,1,1".parse::<AlphaSpec>().is_err());
        assert!("sqrt:0,1,1,2".parse::<AlphaSpec>().is_err());
        assert!("surd:a,1,1,2".parse::<AlphaSpec>().is_err());
    }

    #[test]
    fn frac_npow_examples() {
        let p = prec(128);
        let quarter = UnitValue::from_ratio(1, 4, p).unwrap();
        assert_eq!(quarter.err(), &BigUint::zero());
        assert_eq!(frac_npow(3, 2, &quarter).unwrap(), quarter);

        let a = AlphaSpec::sqrt2().realize(p);
        assert_eq!(frac_npow(1, 7, &a).unwrap(), a);

        let v = frac_npow(5, 2, &a).unwrap();
        assert!((v.to_f64() - 0.355_339_059_327_376_2).abs() < 1e-15);
        assert_eq!(v.err(), &BigUint::from(25u32));
    }

    #[test]
    fn frac_npow_budget_exceeded() {
        let a = AlphaSpec::sqrt2().realize(prec(64));
        // 2^10 * 1 needs 11 bits of error, only 4 bits of headroom at B = 64.
        let err = frac_npow(2, 10, &a).unwrap_err();
        assert!(matches!(err, Error::InsufficientPrecision { .. }));
    }

    #[test]
    fn dist_to_integer_examples() {
        let p = prec(64);
        let v = UnitValue::from_ratio(3, 4, p).unwrap();
        assert_eq!(v.dist_to_integer(), UnitValue::from_ratio(1, 4, p).unwrap());
        assert_eq!(UnitValue::zero(p).dist_to_integer(), UnitValue::zero(p));
        let x = frac_npow(25, 1, &AlphaSpec::sqrt2().realize(prec(128))).unwrap();
        assert_eq!(x.dist_to_integer(), x);
    }

    #[test]
    fn interval_test_examples() {
        let p = prec(64);
        let half = UnitValue::from_ratio(1, 2, p).unwrap();
        assert_eq!(half.interval_test(r(1, 4), r(3, 4)), Membership::Inside);
        let nine = UnitValue::from_ratio(9, 10, p).unwrap();
        assert_eq!(nine.interval_test(r(1, 4), r(3, 4)), Membership::Outside);
        let quarter = UnitValue::from_ratio(1, 4, p).unwrap().with_err(BigUint::from(2u32));
        assert_eq!(quarter.interval_test(r(1, 4), r(3, 4)), Membership::Uncertain);
    }

    #[test]
    fn interval_test_handles_wraparound_ball() {
        let p = prec(64);
        let near_zero = UnitValue::zero(p).with_err(BigUint::from(5u32));
        assert_eq!(near_zero.interval_test(r(1, 4), r(3, 4)), Membership::Outside);
        assert_eq!(near_zero.interval_test(r(0, 1), r(1, 10)), Membership::Uncertain);
        assert_eq!(near_zero.interval_test(r(0, 1), r(1, 1)), Membership::Inside);
    }

    #[test]
    fn parse_coordinates() {
        let p = prec(64);
        assert_eq!(UnitValue::parse("0.25", p).unwrap(), UnitValue::from_ratio(1, 4, p).unwrap());
        assert_eq!(UnitValue::parse("3/8", p).unwrap(), UnitValue::from_ratio(3, 8, p).unwrap());
        assert_eq!(UnitValue::parse("1.5", p).unwrap(), UnitValue::from_ratio(1, 2, p).unwrap());
        assert_eq!(UnitValue::parse("0.1", p).unwrap().err(), &BigUint::one());
        assert!(UnitValue::parse("-0.1", p).is_err());
        assert!(UnitValue::parse("x", p).is_err());
    }

    #[test]
    fn decimal_rendering() {
        let p = prec(64);
        assert_eq!(UnitValue::from_ratio(1, 8, p).unwrap().to_decimal(5), "0.12500");
        let a = AlphaSpec::sqrt2().realize(prec(128));
        assert_eq!(a.to_decimal(30), "0.414213562373095048801688724209");
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("1/32").unwrap(), r(1, 32));
        assert_eq!(parse_rational("0.1").unwrap(), r(1, 10));
        assert_eq!(parse_rational(".25").unwrap(), r(1, 4));
        assert!(parse_rational("1/0").is_err());
    }
}
