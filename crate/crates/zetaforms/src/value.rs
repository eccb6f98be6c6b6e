//! Fixed-point arbitrary-precision scalars carrying a running absolute-error
//! bound.
//!
//! A [`PrecisionValue`] stores `mant * 10^(-scale)` plus `err_ulp`, an upper
//! bound on the absolute error measured in units of one ulp (`10^(-scale)`).
//! All values taking part in one computation share the same scale, so addition
//! is exact and every rounding step contributes at most half an ulp. Error
//! propagation through products and quotients uses outward-rounded f64
//! magnitudes; bounds only ever grow. A bound that cannot be maintained
//! degrades to infinity rather than being silently dropped, which downstream
//! accuracy checks then reject.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Pow, Signed, ToPrimitive, Zero};

use crate::arith::ExactRational;

thread_local! {
    static POW10: RefCell<HashMap<u32, BigInt>> = RefCell::new(HashMap::new());
}

fn pow10(e: u32) -> BigInt {
    POW10.with(|cache| {
        cache
            .borrow_mut()
            .entry(e)
            .or_insert_with(|| BigInt::from(10u32).pow(e))
            .clone()
    })
}

/// Round `a / b` to the nearest integer, ties away from zero. Requires b > 0.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(b.is_positive());
    let two_a: BigInt = a << 1u32;
    let adj = if two_a.is_negative() { -b } else { b.clone() };
    (two_a + adj) / (b << 1u32)
}

/// Outward inflation so that f64 rounding in the bound arithmetic itself can
/// never shrink a bound. Exact zero stays zero.
fn up(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        (x * (1.0 + 1e-12)).next_up()
    }
}

/// Real scalar at a fixed decimal scale with a tracked absolute error bound.
#[derive(Clone, Debug)]
pub struct PrecisionValue {
    mant: BigInt,
    scale: u32,
    err_ulp: f64,
}

impl PrecisionValue {
    pub fn zero(scale: u32) -> Self {
        Self {
            mant: BigInt::zero(),
            scale,
            err_ulp: 0.0,
        }
    }

    pub fn from_int(v: i64, scale: u32) -> Self {
        Self {
            mant: BigInt::from(v) * pow10(scale),
            scale,
            err_ulp: 0.0,
        }
    }

    /// Nearest representable value at `scale`; at most half an ulp off.
    pub fn from_rational(r: &ExactRational, scale: u32) -> Self {
        let mant = div_round(&(r.numer() * pow10(scale)), r.denom());
        Self {
            mant,
            scale,
            err_ulp: 0.5,
        }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Error bound in ulp units (1 ulp = 10^-scale).
    pub fn err_ulp(&self) -> f64 {
        self.err_ulp
    }

    /// Widens the error bound by `extra` ulps.
    pub fn with_extra_err_ulp(mut self, extra: f64) -> Self {
        self.err_ulp = up(self.err_ulp + extra);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    /// Outward-rounded |value| as f64, for bound arithmetic.
    fn mag(&self) -> f64 {
        let m = self.mant.to_f64().unwrap_or(f64::INFINITY).abs();
        up(m) * ulp_real(self.scale)
    }

    pub fn to_f64(&self) -> f64 {
        self.mant
            .to_f64()
            .map_or(f64::NAN, |m| m * ulp_real(self.scale))
    }

    /// Absolute error bound as a real number (f64, outward rounded).
    pub fn abs_error(&self) -> f64 {
        up(self.err_ulp) * ulp_real(self.scale)
    }

    /// True when the error bound is at most 10^-digits.
    pub fn err_within_pow10(&self, digits: i64) -> bool {
        if self.err_ulp == 0.0 {
            return true;
        }
        if !self.err_ulp.is_finite() {
            return false;
        }
        // err_ulp * 10^-scale <= 10^-digits  <=>  log10(err_ulp) <= scale - digits
        self.err_ulp.log10() <= (i64::from(self.scale) - digits) as f64
    }

    /// Compares |value| against 10^-digits exactly (ignores the error bound).
    pub fn cmp_abs_pow10(&self, digits: i64) -> Ordering {
        let e = i64::from(self.scale) - digits;
        let m = self.mant.abs();
        if e >= 0 {
            m.cmp(&pow10(e as u32))
        } else {
            (m * pow10((-e) as u32)).cmp(&BigInt::one())
        }
    }

    /// True when value - err > 0, i.e. the number is certainly positive.
    pub fn certainly_positive(&self) -> bool {
        if !self.mant.is_positive() || !self.err_ulp.is_finite() {
            return false;
        }
        match BigInt::from_f64(self.err_ulp.ceil()) {
            Some(e) => self.mant > e,
            None => false,
        }
    }

    fn assert_scale(&self, other: &Self) {
        assert_eq!(self.scale, other.scale, "mixed fixed-point scales");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_scale(other);
        Self {
            mant: &self.mant + &other.mant,
            scale: self.scale,
            err_ulp: up(self.err_ulp + other.err_ulp),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_scale(other);
        Self {
            mant: &self.mant - &other.mant,
            scale: self.scale,
            err_ulp: up(self.err_ulp + other.err_ulp),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            mant: -&self.mant,
            scale: self.scale,
            err_ulp: self.err_ulp,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            mant: self.mant.abs(),
            scale: self.scale,
            err_ulp: self.err_ulp,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_scale(other);
        let mant = div_round(&(&self.mant * &other.mant), &pow10(self.scale));
        let err_ulp = up(self.mag() * other.err_ulp
            + other.mag() * self.err_ulp
            + self.err_ulp * other.err_ulp * ulp_real(self.scale)
            + 0.5);
        Self {
            mant,
            scale: self.scale,
            err_ulp,
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.assert_scale(other);
        let denom_low = other.mag() / (1.0f64 + 1e-12).powi(2) - other.abs_error();
        if denom_low <= 0.0 {
            // Divisor interval contains zero: poison the bound.
            return Self {
                mant: BigInt::zero(),
                scale: self.scale,
                err_ulp: f64::INFINITY,
            };
        }
        let mant =
            div_round(&(&self.mant * pow10(self.scale)), &other.mant.abs()) * other.mant.signum();
        let quot_mag = up(self.mag() / denom_low);
        // err(a/b) <= (err_a + |a/b| err_b) / |b|, all in ulp units.
        let err_ulp = up(
            (self.err_ulp + quot_mag / ulp_real(self.scale) * other.abs_error()) / denom_low + 0.5,
        );
        Self {
            mant,
            scale: self.scale,
            err_ulp,
        }
    }

    /// Multiply by an exact rational (single rounding).
    pub fn mul_rat(&self, r: &ExactRational) -> Self {
        let mant = div_round(&(&self.mant * r.numer()), r.denom());
        let rmag = crate::arith::rational_abs_f64_upper(r);
        Self {
            mant,
            scale: self.scale,
            err_ulp: up(self.err_ulp * rmag + 0.5),
        }
    }

    /// Multiply by `num/den` given as exact integers, den != 0 (single rounding).
    pub fn mul_int_ratio(&self, num: &BigInt, den: &BigInt) -> Self {
        assert!(!den.is_zero());
        let mant = div_round(&(&self.mant * num * den.signum()), &den.abs());
        let nf = num.to_f64().unwrap_or(f64::INFINITY).abs();
        let df = den.to_f64().unwrap_or(f64::INFINITY).abs();
        let rmag = if nf.is_finite() && df.is_finite() {
            up(nf / df)
        } else {
            // Both operands can exceed f64 range while their ratio stays tame;
            // fall back to a bit-length estimate.
            let bits = num.bits() as f64 - den.bits() as f64;
            up(2f64.powf(bits + 1.0))
        };
        Self {
            mant,
            scale: self.scale,
            err_ulp: up(self.err_ulp * rmag + 0.5),
        }
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut e = e;
        let mut acc = Self::from_int(1, self.scale);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Re-expresses the value at another scale. Enlarging the scale is exact;
    /// shrinking rounds once.
    pub fn rescale(&self, new_scale: u32) -> Self {
        if new_scale == self.scale {
            return self.clone();
        }
        if new_scale > self.scale {
            let shift = pow10(new_scale - self.scale);
            let factor = shift.to_f64().unwrap_or(f64::INFINITY);
            Self {
                mant: &self.mant * &shift,
                scale: new_scale,
                err_ulp: up(self.err_ulp * factor),
            }
        } else {
            let down = pow10(self.scale - new_scale);
            let factor = down.to_f64().unwrap_or(f64::INFINITY);
            Self {
                mant: div_round(&self.mant, &down),
                scale: new_scale,
                err_ulp: up(self.err_ulp / factor + 0.5),
            }
        }
    }

    /// Fixed-point decimal string with `digits` fractional digits (rounded).
    pub fn to_decimal_string(&self, digits: u32) -> String {
        let digits = digits.min(self.scale);
        let scaled = div_round(&self.mant, &pow10(self.scale - digits));
        let neg = scaled.is_negative();
        let s = scaled.abs().to_string();
        let (int_part, frac_part) = if s.len() > digits as usize {
            let split = s.len() - digits as usize;
            (s[..split].to_string(), s[split..].to_string())
        } else {
            (
                "0".to_string(),
                format!("{:0>width$}", s, width = digits as usize),
            )
        };
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    /// The error bound as a short scientific-notation string, rounded up.
    pub fn err_string(&self) -> String {
        err_to_string(self.err_ulp, self.scale)
    }
}

fn ulp_real(scale: u32) -> f64 {
    10f64.powi(-(scale as i32))
}

pub(crate) fn err_to_string(err_ulp: f64, scale: u32) -> String {
    if err_ulp == 0.0 {
        return "0".to_string();
    }
    if !err_ulp.is_finite() {
        return "inf".to_string();
    }
    let l = err_ulp.log10();
    let mut e10 = l.floor() as i64;
    // Mantissa in [1, 10), rounded up to 2 significant digits.
    let mut m = (10f64.powf(l - e10 as f64) * 10.0).ceil() / 10.0;
    if m >= 10.0 {
        m = 1.0;
        e10 += 1;
    }
    format!("{:.1}e{}", m, e10 - i64::from(scale))
}

/// Complex scalar built from two [`PrecisionValue`] components.
#[derive(Clone, Debug)]
pub struct ComplexValue {
    pub re: PrecisionValue,
    pub im: PrecisionValue,
}

impl ComplexValue {
    pub fn new(re: PrecisionValue, im: PrecisionValue) -> Self {
        assert_eq!(re.scale(), im.scale());
        Self { re, im }
    }

    pub fn zero(scale: u32) -> Self {
        Self {
            re: PrecisionValue::zero(scale),
            im: PrecisionValue::zero(scale),
        }
    }

    pub fn from_real(re: PrecisionValue) -> Self {
        let scale = re.scale();
        Self {
            re,
            im: PrecisionValue::zero(scale),
        }
    }

    pub fn scale(&self) -> u32 {
        self.re.scale()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            re: self.re.sub(&other.re),
            im: self.im.sub(&other.im),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let re = self.re.mul(&other.re).sub(&self.im.mul(&other.im));
        let im = self.re.mul(&other.im).add(&self.im.mul(&other.re));
        Self { re, im }
    }

    pub fn mul_real(&self, other: &PrecisionValue) -> Self {
        Self {
            re: self.re.mul(other),
            im: self.im.mul(other),
        }
    }

    pub fn mul_rat(&self, r: &ExactRational) -> Self {
        Self {
            re: self.re.mul_rat(r),
            im: self.im.mul_rat(r),
        }
    }

    /// 1/z via the conjugate over the squared norm.
    pub fn recip(&self) -> Self {
        let norm2 = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        Self {
            re: self.re.div(&norm2),
            im: self.im.neg().div(&norm2),
        }
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut e = e;
        let mut acc = Self::from_real(PrecisionValue::from_int(1, self.scale()));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Bound on |error|: component bounds added.
    pub fn abs_error(&self) -> f64 {
        up(self.re.abs_error() + self.im.abs_error())
    }

    pub(crate) fn with_extra_err_ulp(self, extra: f64) -> Self {
        Self {
            re: self.re.with_extra_err_ulp(extra),
            im: self.im.with_extra_err_ulp(extra),
        }
    }

    pub fn rescale(&self, new_scale: u32) -> Self {
        Self {
            re: self.re.rescale(new_scale),
            im: self.im.rescale(new_scale),
        }
    }
}
