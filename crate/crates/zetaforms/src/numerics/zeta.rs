//! Euler-Maclaurin evaluation of sum_{k>=0} (k+alpha)^{-i}.
//!
//! The correction series uses Bernoulli numbers with the remainder bounded by
//! the first omitted term, which is valid here because (x+alpha)^{-i} is
//! completely monotone on the summation ray. The cutoff adapts: when the
//! correction terms stop shrinking before reaching the target, the directly
//! summed prefix doubles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed};

use crate::arith::{bernoulli_any, rational_log10, ExactRational};
use crate::error::{Error, Result};
use crate::value::PrecisionValue;

/// coeff * sum_{k>=0} (k+alpha)^{-i} for rational alpha > 0, nonzero rational
/// coeff, and integer i >= 2, at the given working scale, aiming for an
/// absolute error of 10^{-eps10} on the scaled quantity. Folding the
/// coefficient in keeps the rounding after the scaling, so huge coefficients
/// against tiny zeta values do not inflate the bound. The returned error
/// bound is tracked honestly; callers check it.
pub(crate) fn hurwitz_em_scaled(
    i: u32,
    alpha: &ExactRational,
    coeff: &ExactRational,
    scale: u32,
    eps10: i64,
) -> Result<PrecisionValue> {
    assert!(i >= 2, "hurwitz_em requires i >= 2");
    assert!(alpha.is_positive(), "hurwitz_em requires alpha > 0");
    let eps_abs = 10f64.powi(scale as i32 - eps10 as i32); // in ulp units
    let ulp = 10f64.powi(-(scale as i32));

    // Everything below |coeff| alpha^{-i} (1 + alpha/(i-1)) is invisible at
    // the target: used by tail evaluations at large i, where the whole value
    // vanishes.
    let la = rational_log10(alpha);
    let whole_log10 = rational_log10(coeff) - f64::from(i) * la
        + (1.0 + 10f64.powf(la) / f64::from(i - 1)).log10();
    if whole_log10 < -(eps10 as f64) - 1.0 {
        return Ok(PrecisionValue::zero(scale)
            .with_extra_err_ulp(10f64.powf(whole_log10 + f64::from(scale))));
    }

    let mut n_cut: u32 = 16.max((0.45 * eps10 as f64).ceil() as u32).max(i / 4);
    let mut direct = PrecisionValue::zero(scale);
    let mut summed: u32 = 0;

    for _attempt in 0..12 {
        // Extend the direct prefix coeff * sum_{k < n_cut} (k+alpha)^{-i}
        // exactly.
        for k in summed..n_cut {
            let base = BigRational::from_integer(BigInt::from(k)) + alpha;
            let term = base.pow(-(i as i32)) * coeff;
            direct = direct.add(&PrecisionValue::from_rational(&term, scale));
        }
        summed = n_cut;

        // Euler-Maclaurin at M = n_cut + alpha:
        //   integral M^{1-i}/(i-1), boundary M^{-i}/2, corrections
        //   B_{2j}/(2j)! (i)_{2j-1} M^{-i-2j+1}, all scaled by coeff.
        let m = BigRational::from_integer(BigInt::from(n_cut)) + alpha;
        let m_inv_pow_i = m.clone().pow(-(i as i32)) * coeff;
        let integral = &m_inv_pow_i * &m / BigRational::from_integer(BigInt::from(i - 1));
        let boundary = &m_inv_pow_i / BigRational::from_integer(BigInt::from(2));
        let mut tail = PrecisionValue::from_rational(&integral, scale)
            .add(&PrecisionValue::from_rational(&boundary, scale));

        let m_inv2 = m.clone().pow(-2i32);
        // Correction terms advance by their exact ratio, whose magnitude stays
        // near or below one in the convergent regime; this keeps the tracked
        // error proportional to the term instead of exploding with the raw
        // Bernoulli/Pochhammer factors.
        let first = bernoulli_any(2)
            * BigRational::new(BigInt::from(i), BigInt::from(2))
            * (&m_inv_pow_i * &m_inv2 * &m);
        let mut term = PrecisionValue::from_rational(&first, scale);
        let mut prev_mag = f64::INFINITY;
        let mut converged = false;
        for j in 1..=2_000u32 {
            let mag = term.to_f64().abs();
            if mag <= eps_abs * ulp {
                // First omitted correction bounds the remainder.
                tail = tail.with_extra_err_ulp(mag / ulp);
                converged = true;
                break;
            }
            if mag >= prev_mag {
                break; // asymptotic series turned; need a larger cutoff
            }
            prev_mag = mag;
            tail = tail.add(&term);
            // term_{j+1} / term_j.
            let ratio = (bernoulli_any(2 * j + 2) / bernoulli_any(2 * j))
                * BigRational::new(
                    BigInt::from(i + 2 * j - 1) * BigInt::from(i + 2 * j),
                    BigInt::from(2 * j + 1) * BigInt::from(2 * j + 2),
                )
                * &m_inv2;
            term = term.mul_rat(&ratio);
        }
        if converged {
            return Ok(direct.add(&tail));
        }
        n_cut *= 2;
    }
    Err(Error::Precision(format!(
        "Euler-Maclaurin for zeta({i}, {alpha}) failed to reach 10^-{eps10} \
         even after extending the direct prefix to {n_cut} terms"
    )))
}

/// Unscaled variant: sum_{k>=0} (k+alpha)^{-i}.
pub(crate) fn hurwitz_em(
    i: u32,
    alpha: &ExactRational,
    scale: u32,
    eps10: i64,
) -> Result<PrecisionValue> {
    hurwitz_em_scaled(
        i,
        alpha,
        &BigRational::from_integer(BigInt::from(1)),
        scale,
        eps10,
    )
}

/// The Hurwitz zeta function zeta(i, alpha) = sum_{k>=0} (k+alpha)^{-i} for
/// integer i >= 2 and rational alpha in (0, 1], to `target_digits` absolute
/// accuracy.
pub fn hurwitz_zeta(i: u32, alpha: &ExactRational, target_digits: u32) -> Result<PrecisionValue> {
    if i < 2 {
        return Err(Error::Domain(format!(
            "hurwitz_zeta requires i >= 2 (got {i}); the series diverges"
        )));
    }
    if !alpha.is_positive() || alpha > &BigRational::from_integer(BigInt::from(1)) {
        return Err(Error::Domain(format!(
            "hurwitz_zeta requires alpha in (0, 1] (got {alpha})"
        )));
    }
    let scale = target_digits + 15;
    let v = hurwitz_em(i, alpha, scale, i64::from(target_digits) + 5)?;
    if !v.err_within_pow10(i64::from(target_digits)) {
        return Err(Error::Precision(format!(
            "zeta({i}, {alpha}): achieved error {} misses the 10^-{target_digits} target",
            v.err_string()
        )));
    }
    Ok(v)
}
