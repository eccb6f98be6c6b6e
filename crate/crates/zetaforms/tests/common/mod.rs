//! Independent oracles for the integration tests.
//!
//! Nothing here shares an algorithm with the library: pi comes from Stormer's
//! arctangent identity (the library uses the base-16 digit series), zeta
//! values come from Chebyshev-style acceleration of the alternating series
//! (the library uses Euler-Maclaurin), and the crude series oracle is plain
//! f64 summation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use zetaforms::value::PrecisionValue;

/// atan(1/x) for integer x >= 2 as an exact rational partial sum; the series
/// alternates with decreasing terms, so the tail is below the first omitted
/// term, which is returned as the bound.
fn atan_inv(x: i64, terms: usize) -> (BigRational, BigRational) {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut acc = BigRational::zero();
    let mut power = BigRational::new(BigInt::one(), BigInt::from(x));
    for k in 0..terms {
        let term = &power / BigRational::from_integer(BigInt::from(2 * k as i64 + 1));
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        power /= BigRational::from_integer(x2.clone());
    }
    let bound = power / BigRational::from_integer(BigInt::from(2 * terms as i64 + 1));
    (acc, bound)
}

/// pi via Stormer's identity pi = 24 atan(1/8) + 8 atan(1/57) + 4 atan(1/239).
pub fn pi_stoermer(scale: u32) -> PrecisionValue {
    // atan(1/8) gains ~1.8 digits per term; use it to size all three.
    let terms = (f64::from(scale) / 1.8) as usize + 4;
    let (a8, b8) = atan_inv(8, terms);
    let (a57, b57) = atan_inv(57, terms);
    let (a239, b239) = atan_inv(239, terms);
    let value = a8 * BigRational::from_integer(BigInt::from(24))
        + a57 * BigRational::from_integer(BigInt::from(8))
        + a239 * BigRational::from_integer(BigInt::from(4));
    let bound = b8 * BigRational::from_integer(BigInt::from(24))
        + b57 * BigRational::from_integer(BigInt::from(8))
        + b239 * BigRational::from_integer(BigInt::from(4));
    let bound_ulp = bound.to_f64().unwrap_or(f64::INFINITY) * 10f64.powi(scale as i32) + 1.0;
    PrecisionValue::from_rational(&value, scale).with_extra_err_ulp(bound_ulp)
}

/// zeta(i) through acceleration of the alternating series
/// eta(i) = sum (-1)^k (k+1)^{-i}, using the Chebyshev-polynomial weights with
/// d_n = ((3+sqrt 8)^n + (3-sqrt 8)^n)/2. For totally monotone terms (which
/// inverse powers are) the error is below a small multiple of (3+sqrt 8)^{-n}.
pub fn zeta_accelerated(i: u32, scale: u32) -> PrecisionValue {
    // 10^-scale target: n terms gain n log10(3+sqrt8) ~ 0.765 n digits.
    let n = (f64::from(scale) / 0.76) as usize + 12;
    // d = ((3+s8)^n + (3-s8)^n)/2 satisfies x_{m+1} = 6 x_m - x_{m-1}.
    let mut x_prev = BigInt::from(2);
    let mut x_cur = BigInt::from(6);
    for _ in 1..n {
        let next = BigInt::from(6) * &x_cur - &x_prev;
        x_prev = x_cur;
        x_cur = next;
    }
    let d = BigRational::new(x_cur, BigInt::from(2));

    let mut b = -BigRational::one();
    let mut c = -d.clone();
    let mut s = BigRational::zero();
    for k in 0..n {
        c = &b - &c;
        let a_k = BigRational::new(BigInt::one(), BigInt::from(k as i64 + 1).pow(i));
        s += &c * a_k;
        let num = BigRational::from_integer(
            BigInt::from(2) * BigInt::from((k + n) as i64) * BigInt::from(k as i64 - n as i64),
        );
        let den =
            BigRational::from_integer(BigInt::from(2 * k as i64 + 1) * BigInt::from(k as i64 + 1));
        b = b * num / den;
    }
    let eta = s / &d;
    // zeta(i) = eta(i) / (1 - 2^{1-i}).
    let scaling = BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(2).pow(i - 1));
    let value = eta / scaling;
    let err_bound = 8.0 * (3.0 + 8f64.sqrt()).powi(-(n as i32));
    PrecisionValue::from_rational(&value, scale)
        .with_extra_err_ulp(err_bound * 10f64.powi(scale as i32) + 1.0)
}

/// Crude f64 oracle for r_{n,j}: direct summation with a power-law tail
/// estimate. Good to a few digits only.
pub fn r_direct_f64(d: u32, s: u32, n: u32, j: u32, terms: u64) -> f64 {
    let df = f64::from(d);
    let nf = f64::from(n);
    let mut prefactor = df.powi((3 * d * n) as i32);
    let mut fact = 1.0f64;
    for k in 2..=n {
        fact *= f64::from(k);
    }
    prefactor *= fact.powi((s + 1) as i32 - 3 * d as i32);
    let r_at = |t: f64| -> f64 {
        let mut num = 1.0f64;
        for l in 0..=3 * d * n {
            num *= t - nf + f64::from(l) / df;
        }
        let mut den = 1.0f64;
        for l in 0..=n {
            den *= t + f64::from(l);
        }
        prefactor * num / den.powi((s + 1) as i32)
    };
    let mut acc = 0.0;
    for m in 1..=terms {
        acc += r_at(m as f64 + f64::from(j) / df);
    }
    // Tail ~ integral of the leading power.
    let kappa = ((s + 1) * (n + 1) - (3 * d * n + 1)) as i32;
    let last = r_at(terms as f64 + f64::from(j) / df);
    acc + last * terms as f64 / f64::from(kappa - 1)
}

#[allow(dead_code)]
pub fn assert_close_pow10(a: &PrecisionValue, b: &PrecisionValue, digits: i64, what: &str) {
    let common = a.scale().max(b.scale());
    let diff = a.rescale(common).sub(&b.rescale(common));
    assert_eq!(
        diff.cmp_abs_pow10(digits),
        std::cmp::Ordering::Less,
        "{what}: |diff| >= 1e-{digits}"
    );
}
