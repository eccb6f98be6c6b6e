//! High-precision constants: pi and the complex roots of unity.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::rat;
use crate::error::{Error, Result};
use crate::value::{ComplexValue, PrecisionValue};

/// pi at the given scale, by the base-16 digit series
/// pi = sum_k 16^{-k} (4/(8k+1) - 2/(8k+4) - 1/(8k+5) - 1/(8k+6)).
/// Every bracket is positive and below 4, so the tail after K terms is under
/// 5 * 16^{-K}.
pub(crate) fn pi(scale: u32) -> PrecisionValue {
    let terms = (f64::from(scale) + 3.0) / 16f64.log10();
    let terms = terms.ceil() as i64 + 1;
    let mut acc = PrecisionValue::zero(scale);
    for k in 0..terms {
        let k8 = 8 * k;
        let term = rat(4, k8 + 1) - rat(2, k8 + 4) - rat(1, k8 + 5) - rat(1, k8 + 6);
        let scaled = term / BigRational::from_integer(BigInt::from(16).pow(k as u32));
        acc = acc.add(&PrecisionValue::from_rational(&scaled, scale));
    }
    let tail_ulp = 5.0 * 16f64.powi(-(terms as i32)) * 10f64.powi(scale as i32);
    acc.with_extra_err_ulp(tail_ulp.max(1.0))
}

/// (cos, sin) of 2 pi num/den as a complex value, i.e. the root of unity
/// e^{2 pi i num/den}. Quarter-turn angles are exact; everything else goes
/// through the alternating Taylor series with the first omitted term as the
/// truncation bound.
pub(crate) fn unit_root(num: u32, den: u32, scale: u32) -> ComplexValue {
    assert!(den > 0);
    let r = num % den;
    let one = PrecisionValue::from_int(1, scale);
    let zero = PrecisionValue::zero(scale);
    if r == 0 {
        return ComplexValue::new(one, zero);
    }
    if 2 * r == den {
        return ComplexValue::new(one.neg(), zero);
    }
    if 4 * r == den {
        return ComplexValue::new(zero, one);
    }
    if 4 * r == 3 * den {
        return ComplexValue::new(zero.clone(), one.neg());
    }

    let theta = pi(scale).mul_rat(&BigRational::new(
        BigInt::from(2u32) * BigInt::from(r),
        BigInt::from(den),
    ));
    let theta2 = theta.mul(&theta);

    // cos: t_0 = 1, t_{j+1} = -t_j theta^2 / ((2j+1)(2j+2)).
    let mut cos_acc = PrecisionValue::zero(scale);
    let mut term = PrecisionValue::from_int(1, scale);
    let mut j: i64 = 0;
    loop {
        cos_acc = cos_acc.add(&term);
        term = term
            .mul(&theta2)
            .neg()
            .mul_rat(&rat(1, (2 * j + 1) * (2 * j + 2)));
        j += 1;
        let mag = term.to_f64().abs();
        if j > 4 && mag < 1.0 * 10f64.powi(-(scale as i32)) {
            break;
        }
        assert!(j < 10_000, "cosine series failed to converge");
    }
    let cos_acc = cos_acc.with_extra_err_ulp(term.to_f64().abs() * 10f64.powi(scale as i32) + 1.0);

    // sin: t_0 = theta, t_{j+1} = -t_j theta^2 / ((2j+2)(2j+3)).
    let mut sin_acc = PrecisionValue::zero(scale);
    let mut term = theta.clone();
    let mut j: i64 = 0;
    loop {
        sin_acc = sin_acc.add(&term);
        term = term
            .mul(&theta2)
            .neg()
            .mul_rat(&rat(1, (2 * j + 2) * (2 * j + 3)));
        j += 1;
        let mag = term.to_f64().abs();
        if j > 4 && mag < 1.0 * 10f64.powi(-(scale as i32)) {
            break;
        }
        assert!(j < 10_000, "sine series failed to converge");
    }
    let sin_acc = sin_acc.with_extra_err_ulp(term.to_f64().abs() * 10f64.powi(scale as i32) + 1.0);

    ComplexValue::new(cos_acc, sin_acc)
}

/// xi^r for r = 0..D-1, where xi = e^{2 pi i / D}. Each entry is evaluated
/// directly, so errors do not compound through multiplication chains.
pub(crate) fn unit_root_table(d: u32, scale: u32) -> Vec<ComplexValue> {
    (0..d).map(|r| unit_root(r, d, scale)).collect()
}

/// A root of unity xi_D^m with its evaluated complex value.
#[derive(Clone, Debug)]
pub struct RootOfUnity {
    d: u32,
    m: u32,
    value: ComplexValue,
}

impl RootOfUnity {
    /// xi_D^m at the given scale. Exact for quarter-turn angles (covering all
    /// of D = 1 and D = 2).
    pub fn new(d: u32, m: i64, scale: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParams(
                "root-of-unity degree must be positive".into(),
            ));
        }
        let m = m.rem_euclid(i64::from(d)) as u32;
        Ok(Self {
            d,
            m,
            value: unit_root(m, d, scale),
        })
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn exponent(&self) -> u32 {
        self.m
    }

    pub fn value(&self) -> &ComplexValue {
        &self.value
    }
}
