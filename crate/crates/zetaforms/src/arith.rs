//! Exact integer and rational building blocks shared by all modules.
//!
//! The heavy lifting is delegated to `num-bigint` / `num-rational`, which keep
//! fractions reduced with a positive denominator at all times. This module adds
//! the combinatorial helpers (factorials, binomials, rising factorials,
//! lcm(1..n), Bernoulli numbers) and the `"p/q"` string conventions used by
//! every exported report.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision integer.
pub type ExactInt = BigInt;
/// Arbitrary-precision fraction, always reduced, denominator > 0.
pub type ExactRational = BigRational;

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> ExactRational {
    assert!(q != 0, "rational with zero denominator");
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as an exact rational.
pub fn rat_int(p: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(p))
}

/// Canonical string form: `"p"` when the value is an integer, `"p/q"` otherwise.
pub fn rational_to_string(r: &ExactRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"` or `"p/q"` (with optional sign on `p`).
pub fn rational_from_string(s: &str) -> Result<ExactRational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Domain(format!("cannot parse integer '{t}'")))
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::Domain(format!("zero denominator in '{s}'")));
            }
            Ok(BigRational::new(parse_int(p)?, den))
        }
    }
}

/// Rough `log10` of a rational's magnitude, for sizing precision guards.
/// Returns 0.0 for zero.
pub fn rational_log10(r: &ExactRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let digits = |n: &BigInt| -> f64 {
        let (_, mag) = n.to_u32_digits();
        // Leading word plus 32·log10(2) per remaining word.
        let lead = mag.last().copied().unwrap_or(0).max(1) as f64;
        lead.log10() + 32.0 * std::f64::consts::LOG10_2 * (mag.len().saturating_sub(1)) as f64
    };
    digits(r.numer()) - digits(r.denom())
}

/// An f64 upper bound on |r|, saturating to infinity when out of range.
pub fn rational_abs_f64_upper(r: &ExactRational) -> f64 {
    match r.to_f64() {
        Some(v) if v.is_finite() => (v.abs() * (1.0 + 1e-12)).max(f64::MIN_POSITIVE),
        _ => f64::INFINITY,
    }
}

/// k! as an exact integer.
pub fn factorial(k: u32) -> ExactInt {
    let mut acc = BigInt::one();
    for i in 2..=u64::from(k) {
        acc *= i;
    }
    acc
}

/// Binomial coefficient `a choose b`. Errors when `b > a`.
pub fn binomial(a: u64, b: u64) -> Result<ExactInt> {
    if b > a {
        return Err(Error::Domain(format!("binomial({a}, {b}) requires b <= a")));
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 1..=b {
        acc *= a - b + i;
        // Exact by construction: the running product is divisible by i.
        acc /= i;
    }
    Ok(acc)
}

/// Rising factorial (a)_k = a(a+1)...(a+k-1), with (a)_0 = 1.
pub fn pochhammer(a: &ExactRational, k: u32) -> ExactRational {
    let mut acc = BigRational::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

/// lcm(1, 2, ..., n) together with the n it belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcmValue {
    n: u32,
    value: ExactInt,
}

impl LcmValue {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn value(&self) -> &ExactInt {
        &self.value
    }

    /// value^e as an exact integer.
    pub fn pow(&self, e: u32) -> ExactInt {
        num_traits::Pow::pow(&self.value, e)
    }
}

/// Exact lcm of 1..n. Errors for n = 0 (callers wanting the empty lcm use 1).
pub fn lcm_upto(n: u32) -> Result<LcmValue> {
    if n == 0 {
        return Err(Error::Domain("lcm_upto requires n >= 1".into()));
    }
    let mut value = BigInt::one();
    for k in 2..=n {
        value = value.lcm(&BigInt::from(k));
    }
    Ok(LcmValue { n, value })
}

static BERNOULLI_CACHE: Mutex<Vec<ExactRational>> = Mutex::new(Vec::new());

/// Bernoulli number B_k for any k, under the B_1 = -1/2 convention, via the
/// defining recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0. Memoized; exact.
pub(crate) fn bernoulli_any(k: u32) -> ExactRational {
    let mut cache = BERNOULLI_CACHE.lock().expect("bernoulli cache poisoned");
    if cache.is_empty() {
        cache.push(BigRational::one());
    }
    while cache.len() <= k as usize {
        let m = cache.len() as u64;
        if m > 1 && m % 2 == 1 {
            cache.push(BigRational::zero());
            continue;
        }
        let mut acc = BigRational::zero();
        for (j, b) in cache.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            acc += BigRational::from_integer(binomial(m + 1, j as u64).expect("j <= m")) * b;
        }
        let value = -acc / BigRational::from_integer(BigInt::from(m + 1));
        cache.push(value);
    }
    cache[k as usize].clone()
}

/// Bernoulli number B_k for even k (B_0 = 1). Odd k is a domain error.
pub fn bernoulli(k: u32) -> Result<ExactRational> {
    if k % 2 == 1 {
        return Err(Error::Domain(format!(
            "bernoulli({k}): odd index; only even Bernoulli numbers are exposed"
        )));
    }
    Ok(bernoulli_any(k))
}
