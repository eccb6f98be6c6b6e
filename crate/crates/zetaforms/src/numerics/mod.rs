//! Arbitrary-precision evaluation of everything the exact layer asserts:
//! Hurwitz zeta values, the direct series for r_{n,j}, the Beta-factor series
//! for the star integrals, and the residual checks tying them together.
//!
//! Summation order is fixed (ascending k, ascending m) so that repeated runs
//! print identical digits.

pub(crate) mod consts;
mod zeta;

pub use consts::RootOfUnity;
pub use zeta::hurwitz_zeta;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::arith::{factorial, rational_log10, ExactRational};
use crate::error::{Error, Result};
use crate::linear_forms::HurwitzLinearForm;
use crate::rational_function::{Params, RationalFunctionRep};
use crate::value::{ComplexValue, PrecisionValue};

use consts::unit_root_table;
use zeta::hurwitz_em_scaled;

/// Hard ceiling on summed terms for the power-law series; decay exponents
/// below ~4 exhaust it quickly, which surfaces as a precision error.
const TERM_BUDGET: u64 = 4_000_000;

/// Outcome of a two-sided identity check: the observed point distance, the
/// leftover imaginary magnitude where one side is complex, and the declared
/// error budget the residual must stay inside.
#[derive(Clone, Debug)]
pub struct ResidualCheck {
    pub residual: f64,
    pub imag_magnitude: f64,
    pub combined_error: f64,
    pub pass: bool,
    pub detail: String,
}

/// r*_{n,m} evaluated through the exact Beta-factor series, with the series
/// truncation bound reported separately from the rounding error (the value's
/// own bound already includes both).
#[derive(Clone, Debug)]
pub struct StarIntegralValue {
    pub params: Params,
    pub m: u32,
    pub value: ComplexValue,
    pub terms_used: u64,
    pub tail_bound: f64,
}

/// One row of the empirical growth table.
#[derive(Clone, Debug)]
pub struct GrowthRow {
    pub n: u32,
    pub value: PrecisionValue,
    pub nth_root: f64,
    pub positive: bool,
}

fn check_j(params: &Params, j: u32) -> Result<()> {
    if j < 1 || j > params.d() {
        return Err(Error::InvalidParams(format!(
            "j must lie in 1..=D (got j = {j}, D = {})",
            params.d()
        )));
    }
    Ok(())
}

/// r_{n,j} = sum_{m>=1} R_n(m + j/D) to `target_digits` absolute accuracy.
///
/// The first terms are summed exactly; past the cutoff the series is finished
/// through the exact expansion of R at infinity, each power summed as a
/// shifted Hurwitz zeta value and the truncated part of the expansion bounded
/// by its Cauchy estimate. This keeps the evaluation independent of the
/// partial-fraction route it is later compared against.
pub fn eval_r_direct(params: &Params, j: u32, target_digits: u32) -> Result<PrecisionValue> {
    check_j(params, j)?;
    let rep = RationalFunctionRep::build(*params);
    let base_guard = 15 + rational_log10(rep.prefactor()).ceil().max(0.0) as u32;
    let mut last_err = String::new();
    for extra in [0u32, 20, 40] {
        let scale = target_digits + base_guard + extra;
        let value = eval_r_direct_at(&rep, j, scale, i64::from(target_digits) + 3)?;
        if value.err_within_pow10(i64::from(target_digits)) {
            return Ok(value);
        }
        last_err = value.err_string();
    }
    Err(Error::Precision(format!(
        "direct evaluation of r_(n,{j}) stalled at error {last_err} against a 10^-{target_digits} target"
    )))
}

fn eval_r_direct_at(
    rep: &RationalFunctionRep,
    j: u32,
    scale: u32,
    eps10: i64,
) -> Result<PrecisionValue> {
    let params = rep.params();
    let d = params.d();
    let n = params.n();
    let kappa = params.decay_exponent();

    // Exact prefix: the cutoff keeps the expansion ratio 2n/M at 1/4 or less.
    let cutoff = (8 * n).max(16);
    let alpha = BigRational::new(BigInt::from(j), BigInt::from(d));
    let mut acc = PrecisionValue::zero(scale);
    for m in 1..=cutoff {
        let t = BigRational::from_integer(BigInt::from(m)) + &alpha;
        let v = rep.eval_exact(&t).expect("t > 0 is never a pole");
        if !v.is_zero() {
            acc = acc.add(&PrecisionValue::from_rational(&v, scale));
        }
    }

    // Tail sum_{m > cutoff} R(m + j/D) = sum_q coeff[q] zeta(kappa+q, M).
    let m_shift = BigRational::from_integer(BigInt::from(cutoff + 1)) + &alpha;
    let mlog = rational_log10(&m_shift);
    let bound_zeta_log10 =
        |p: f64| -> f64 { -p * mlog + (1.0 + 10f64.powf(mlog) / (p - 1.0)).log10() };
    let remainder_log10 = |q: usize| -> f64 {
        rep.expansion_coeff_log10_bound(q)
            + bound_zeta_log10(f64::from(kappa) + q as f64)
            + (4f64 / 3.0).log10()
    };
    let target_rem = -(eps10 as f64) - 0.7;
    let mut count = 1usize;
    while remainder_log10(count) >= target_rem {
        count += 1;
        if count > 4_000 {
            return Err(Error::Precision(
                "expansion at infinity does not contract; cutoff too small".into(),
            ));
        }
    }
    let coeffs = rep.expansion_at_infinity(count);
    let budget_shift = ((count + 1) as f64).log10().ceil() as i64 + 2;
    for (q, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let p = kappa + q as u32;
        // The coefficient is folded into the zeta evaluation: it can dwarf
        // the zeta value, and scaling an already-rounded value would turn a
        // tiny product into a coarse bound.
        let z = hurwitz_em_scaled(p, &m_shift, c, scale, eps10 + budget_shift)?;
        acc = acc.add(&z);
    }
    let rem_ulp = 10f64.powf(remainder_log10(count) + f64::from(scale));
    Ok(acc.with_extra_err_ulp(rem_ulp.max(0.0)))
}

/// a_{0,j} + sum_i a_i zeta(i, j/D) evaluated numerically.
pub fn eval_form_numeric(form: &HurwitzLinearForm, target_digits: u32) -> Result<PrecisionValue> {
    let params = form.params();
    let alpha = BigRational::new(BigInt::from(form.j()), BigInt::from(params.d()));
    let coeff_log = form
        .a()
        .values()
        .chain(std::iter::once(form.a0()))
        .map(rational_log10)
        .fold(0.0f64, f64::max);
    let base_guard = 15 + coeff_log.ceil().max(0.0) as u32;
    for extra in [0u32, 20] {
        let scale = target_digits + base_guard + extra;
        let eps_z = i64::from(target_digits) + 6;
        let mut acc = PrecisionValue::from_rational(form.a0(), scale);
        for (&i, a_i) in form.a() {
            if a_i.is_zero() {
                continue;
            }
            let z = hurwitz_em_scaled(i, &alpha, a_i, scale, eps_z)?;
            acc = acc.add(&z);
        }
        if acc.err_within_pow10(i64::from(target_digits)) {
            return Ok(acc);
        }
    }
    Err(Error::Precision(format!(
        "form evaluation for j = {} missed the 10^-{target_digits} target",
        form.j()
    )))
}

/// The separated one-dimensional integral in exact Beta form:
/// I_k = int_0^1 x^{Dn+k} (1-x^D)^n dx = n! D^n / prod_{r=0}^{n} (Dn+k+1+rD).
pub fn beta_factor(params: &Params, k: u64) -> ExactRational {
    let d = u64::from(params.d());
    let n = u64::from(params.n());
    let mut den = BigInt::one();
    for r in 0..=n {
        den *= BigInt::from(d * n + k + 1 + r * d);
    }
    BigRational::new(
        factorial(params.n()) * BigInt::from(params.d()).pow(params.n()),
        den,
    )
}

/// Partial sums of the star series bucketed by (k+1) mod D, so that every
/// r*_{n,m} is a root-of-unity combination of the same real accumulators.
/// Returns (buckets, terms used, tail bound in real units).
fn star_buckets(
    params: &Params,
    scale: u32,
    eps10: i64,
) -> Result<(Vec<PrecisionValue>, u64, f64)> {
    let d = u64::from(params.d());
    let n = u64::from(params.n());
    let s = params.s();
    let kappa = params.decay_exponent();
    assert!(
        kappa >= 2,
        "decay exponent below 2 is impossible for valid parameters"
    );
    let eps_real = 10f64.powi(-(eps10 as i32));

    let mut buckets = vec![PrecisionValue::zero(scale); d as usize];
    // Term at k: C(3Dn+1+k, k) I_k^{s+1}; starts at I_0^{s+1} and advances by
    // the exact integer ratio.
    let mut rho = PrecisionValue::from_rational(&beta_factor(params, 0).pow(s as i32 + 1), scale);
    let three_dn = 3 * d * n;

    let mut next_checkpoint: u64 = 512;
    let mut prev_bound: Option<f64> = None;
    let mut mass_since: f64 = 0.0;
    let mut decreasing_since_checkpoint = true;
    let mut prev_mag = f64::INFINITY;

    let ulp = 10f64.powi(-(scale as i32));
    let mut k: u64 = 0;
    loop {
        let mag = rho.to_f64().abs();
        buckets[((k + 1) % d) as usize] = buckets[((k + 1) % d) as usize].add(&rho);
        mass_since += mag;
        if mag > prev_mag {
            decreasing_since_checkpoint = false;
        }
        prev_mag = mag;

        // Advance to term k+1.
        let mut num = BigInt::from(three_dn + 2 + k);
        let mut den = BigInt::from(k + 1);
        let mut inum = BigInt::one();
        let mut iden = BigInt::one();
        for r in 0..=n {
            inum *= BigInt::from(d * n + k + 1 + r * d);
            iden *= BigInt::from(d * n + k + 2 + r * d);
        }
        num *= inum.pow(s + 1);
        den *= iden.pow(s + 1);
        rho = rho.mul_int_ratio(&num, &den);

        let next_mag = rho.to_f64().abs();
        // Resolution floor: once a decayed term is no larger than its own
        // tracked error (or a few ulps), the mantissa is rounding noise and
        // the mass bookkeeping below stops being meaningful. The true term is
        // bounded by the observed magnitude plus the tracked error, which
        // feeds the envelope directly.
        if k + 1 >= 64 && decreasing_since_checkpoint && next_mag <= rho.abs_error().max(4.0 * ulp)
        {
            let bound =
                2.0 * (next_mag + rho.abs_error()) * ((k + 1) as f64) / f64::from(kappa - 1);
            if bound <= eps_real {
                return Ok((buckets, k + 1, bound));
            }
        }

        if k + 1 == next_checkpoint {
            if decreasing_since_checkpoint {
                let bound = 2.0 * next_mag * ((k + 1) as f64) / f64::from(kappa - 1);
                if let Some(pb) = prev_bound {
                    if mass_since > pb {
                        // The envelope under-covered the last stretch; distrust it.
                        prev_bound = None;
                    } else if bound <= eps_real && pb <= eps_real {
                        return Ok((buckets, k + 1, bound));
                    } else {
                        prev_bound = Some(bound);
                    }
                } else {
                    prev_bound = Some(bound);
                }
            } else {
                prev_bound = None;
            }
            mass_since = 0.0;
            decreasing_since_checkpoint = true;
            next_checkpoint *= 2;
        }
        k += 1;
        if k >= TERM_BUDGET {
            return Err(Error::Precision(format!(
                "star series needs more than {TERM_BUDGET} terms to reach 10^-{eps10} \
                 (decay exponent kappa = {kappa}); lower the target or pick parameters \
                 with faster decay"
            )));
        }
    }
}

/// r*_{n,m} = sum_{k>=0} C(3Dn+1+k, k) xi^{m(k+1)} I_k^{s+1}.
pub fn eval_r_star(params: &Params, m: u32, target_digits: u32) -> Result<StarIntegralValue> {
    if m < 1 || m > params.d() {
        return Err(Error::InvalidParams(format!(
            "m must lie in 1..=D (got m = {m}, D = {})",
            params.d()
        )));
    }
    let scale = target_digits + 15;
    let eps10 = i64::from(target_digits) + 2;
    let (buckets, terms_used, tail) = star_buckets(params, scale, eps10)?;
    let roots = unit_root_table(params.d(), scale);
    let mut value = ComplexValue::zero(scale);
    for (c, bucket) in buckets.iter().enumerate() {
        let idx = (m as usize * c) % params.d() as usize;
        value = value.add(&roots[idx].mul_real(bucket));
    }
    let tail_ulp = tail * 10f64.powi(scale as i32);
    let value = value.with_extra_err_ulp(tail_ulp);
    if !value.re.err_within_pow10(i64::from(target_digits))
        || !value.im.err_within_pow10(i64::from(target_digits))
    {
        return Err(Error::Precision(format!(
            "star value error bound {} misses the 10^-{target_digits} target",
            value.re.err_string()
        )));
    }
    Ok(StarIntegralValue {
        params: *params,
        m,
        value,
        terms_used,
        tail_bound: tail,
    })
}

/// Residual of the integral representation
/// r_{n,j} = D^{s-1} (3Dn+1)!/n!^{3D} sum_m xi^{-mj} r*_{n,m},
/// with both sides computed independently. Also checks that the reconstructed
/// right side is real within the declared error.
pub fn verify_theorem1(params: &Params, j: u32, target_digits: u32) -> Result<ResidualCheck> {
    check_j(params, j)?;
    if params.is_degenerate() {
        return Err(Error::InvalidParams(
            "n = 0 is refused: re-indexing the sum to m >= n needs the numerator zeros, \
             which only exist for n >= 1"
                .into(),
        ));
    }
    let d = params.d();
    let s = params.s();
    let n = params.n();
    // D^{s-1} (3Dn+1)! / n!^{3D}.
    let prefactor =
        BigRational::from_integer(BigInt::from(d).pow(s - 1) * factorial(3 * d * n + 1))
            / BigRational::from_integer(factorial(n).pow(3 * d));
    let pref_log = rational_log10(&prefactor).max(0.0);

    let star_eps = i64::from(target_digits) + pref_log.ceil() as i64 + 4;
    let scale = (star_eps + 14) as u32;
    let (buckets, _terms, tail) = star_buckets(params, scale, star_eps)?;
    let roots = unit_root_table(d, scale);
    let tail_ulp = tail * 10f64.powi(scale as i32);

    // Z = sum_m xi^{-mj} r*_m with r*_m = sum_c xi^{mc} T_c; the cancellation
    // of imaginary parts happens numerically, exercising the root layer.
    let mut z = ComplexValue::zero(scale);
    for m in 1..=d {
        let mut star = ComplexValue::zero(scale);
        for (c, bucket) in buckets.iter().enumerate() {
            let idx = (m as usize * c) % d as usize;
            star = star.add(&roots[idx].mul_real(bucket));
        }
        let star = star.with_extra_err_ulp(tail_ulp);
        let idx = ((d - (m * j) % d) % d) as usize;
        z = z.add(&star.mul(&roots[idx]));
    }
    let reconstructed = z.mul_rat(&prefactor);

    let direct = eval_r_direct(params, j, target_digits + 5)?;
    let common = scale.max(direct.scale());
    let diff = direct
        .rescale(common)
        .sub(&reconstructed.re.rescale(common));
    let residual = diff.to_f64().abs();
    let imag_magnitude = reconstructed.im.to_f64().abs();
    let combined_error = direct.abs_error() + reconstructed.abs_error();
    let pass = residual <= combined_error && imag_magnitude <= combined_error;
    let detail = format!(
        "direct = {}, reconstructed re = {}, im| <= {:.3e}",
        direct.to_decimal_string(target_digits.min(direct.scale())),
        reconstructed
            .re
            .to_decimal_string(target_digits.min(reconstructed.re.scale())),
        imag_magnitude
    );
    Ok(ResidualCheck {
        residual,
        imag_magnitude,
        combined_error,
        pass,
        detail,
    })
}

/// Residual of the roots-of-unity filter identity
/// sum_{l == j-1 (mod D)} (3Dn+2)_l / l! x^l
///   = (1/D) sum_{m=1}^{D} xi^{-m(j-1)} (1 - xi^m x)^{-(3Dn+2)}
/// at a rational x with |x| < 1. The left side is summed exactly with a
/// geometric tail bound; the right side goes through complex arithmetic.
pub fn roots_filter_check(
    params: &Params,
    j: u32,
    x: &ExactRational,
    target_digits: u32,
) -> Result<ResidualCheck> {
    check_j(params, j)?;
    if x.abs() >= BigRational::one() {
        return Err(Error::Domain(format!(
            "the filter identity needs |x| < 1 (got x = {x})"
        )));
    }
    let d = params.d();
    let exponent = 3 * params.d() * params.n() + 2;
    let scale = target_digits + 15;
    let eps_real = 10f64.powi(-(target_digits as i32) - 5);

    // Left side: exact rational partial sums over l = j-1, j-1+D, ...
    let xf = x.to_f64().unwrap_or(0.0).abs();
    let mut lhs_acc = BigRational::zero();
    let mut binom = BigRational::one(); // C(3Dn+1+l, l) at l = 0
    let mut xpow = BigRational::one();
    let mut l: u64 = 0;
    let tail_bound_ulp;
    loop {
        if l % u64::from(d) == u64::from(j) - 1 {
            lhs_acc += &binom * &xpow;
        }
        binom *= BigRational::new(BigInt::from(u64::from(exponent) + l), BigInt::from(l + 1));
        xpow *= x;
        l += 1;
        // Ratio bound for all later terms; once below 1 the full-series tail
        // (which dominates the filtered subsequence) is geometric.
        let ratio = xf * (l as f64 + f64::from(exponent)) / (l as f64 + 1.0);
        if ratio < 0.95 {
            let head = binom.to_f64().unwrap_or(f64::INFINITY) * xf.powi(l as i32);
            let tail = head / (1.0 - ratio);
            if tail <= eps_real || x.is_zero() {
                tail_bound_ulp = tail * 10f64.powi(scale as i32);
                break;
            }
        }
        if l > 2_000_000 {
            return Err(Error::Precision(
                "filter series failed to reach the target".into(),
            ));
        }
    }
    let lhs = PrecisionValue::from_rational(&lhs_acc, scale).with_extra_err_ulp(tail_bound_ulp);

    // Right side: (1/D) sum_m xi^{-m(j-1)} (1 - xi^m x)^{-exponent}.
    let roots = unit_root_table(d, scale);
    let one = ComplexValue::from_real(PrecisionValue::from_int(1, scale));
    let mut rhs = ComplexValue::zero(scale);
    for m in 1..=d {
        let w = roots[(m % d) as usize].mul_rat(x);
        let z = one.sub(&w);
        let zpow = z.recip().powi(exponent);
        let idx = ((d - (m * (j - 1)) % d) % d) as usize;
        rhs = rhs.add(&roots[idx].mul(&zpow));
    }
    let rhs = rhs.mul_rat(&BigRational::new(BigInt::one(), BigInt::from(d)));

    let diff = lhs.sub(&rhs.re);
    let residual = diff.to_f64().abs() + rhs.im.to_f64().abs();
    let combined_error = lhs.abs_error() + rhs.abs_error();
    let pass = residual <= combined_error;
    let detail = format!(
        "lhs = {}, rhs re = {}",
        lhs.to_decimal_string(target_digits.min(scale)),
        rhs.re.to_decimal_string(target_digits.min(scale))
    );
    Ok(ResidualCheck {
        residual,
        imag_magnitude: rhs.im.to_f64().abs(),
        combined_error,
        pass,
        detail,
    })
}

/// Residual between r_{n,j} evaluated directly and through the displayed
/// hypergeometric form: prefactor times the series with term ratio
/// prod(upper + k) / (prod(lower + k) (k+1)) at unit argument.
pub fn pfq_cross_check(params: &Params, j: u32, target_digits: u32) -> Result<ResidualCheck> {
    check_j(params, j)?;
    let d = u64::from(params.d());
    let n = u64::from(params.n());
    let s = params.s();
    let kappa = params.decay_exponent();

    // Parameter lists scaled by D so the term ratio is an integer ratio:
    // upper {3nD + j + l : l=1..D} and {nD + j} with multiplicity s+1;
    // lower {D + j - l : l=1..D, l != j} and {2nD + D + j} with multiplicity
    // s+1, plus the implicit k+1.
    let ju = u64::from(j);
    let mut upper: Vec<u64> = (1..=d).map(|l| 3 * n * d + ju + l).collect();
    let mut lower: Vec<u64> = (1..=d).filter(|&l| l != ju).map(|l| d + ju - l).collect();
    upper.extend(std::iter::repeat_n(n * d + ju, s as usize + 1));
    lower.extend(std::iter::repeat_n(2 * n * d + d + ju, s as usize + 1));

    // prefactor n!^{s+1-3D} prod_{l=0}^{3Dn} (l+j) / (D prod_{l=0}^n (n+l+j/D)^{s+1}).
    let mut pref_num = BigRational::from_integer(factorial(params.n()).pow(s + 1 - 3 * params.d()));
    for l in 0..=3 * n * d {
        pref_num *= BigRational::from_integer(BigInt::from(l + ju));
    }
    let mut pref_den = BigRational::from_integer(BigInt::from(d));
    for l in 0..=n {
        pref_den *=
            BigRational::new(BigInt::from(n * d + l * d + ju), BigInt::from(d)).pow(s as i32 + 1);
    }
    let prefactor = pref_num / pref_den;

    let eps10 = i64::from(target_digits) + 3 + rational_log10(&prefactor).ceil() as i64;
    let scale = (eps10.max(i64::from(target_digits)) + 14) as u32;
    let eps_real = 10f64.powi(-(eps10 as i32));

    let ulp = 10f64.powi(-(scale as i32));
    let mut sum = PrecisionValue::zero(scale);
    let mut term = PrecisionValue::from_int(1, scale);
    let mut next_checkpoint: u64 = 512;
    let mut prev_bound: Option<f64> = None;
    let mut mass_since = 0.0f64;
    let mut decreasing = true;
    let mut prev_mag = f64::INFINITY;
    let mut k: u64 = 0;
    let tail;
    loop {
        let mag = term.to_f64().abs();
        sum = sum.add(&term);
        mass_since += mag;
        if mag > prev_mag {
            decreasing = false;
        }
        prev_mag = mag;

        let mut num = BigInt::one();
        for &u in &upper {
            num *= BigInt::from(u + k * d);
        }
        let mut den = BigInt::from((k + 1) * d);
        for &lo in &lower {
            den *= BigInt::from(lo + k * d);
        }
        term = term.mul_int_ratio(&num, &den);

        let next_mag = term.to_f64().abs();
        // Same resolution floor as the star series.
        if k + 1 >= 64 && decreasing && next_mag <= term.abs_error().max(4.0 * ulp) {
            let bound =
                2.0 * (next_mag + term.abs_error()) * ((k + 1) as f64) / f64::from(kappa - 1);
            if bound <= eps_real {
                tail = bound;
                break;
            }
        }

        if k + 1 == next_checkpoint {
            if decreasing {
                let bound = 2.0 * next_mag * ((k + 1) as f64) / f64::from(kappa - 1);
                match prev_bound {
                    Some(pb) if mass_since > pb => prev_bound = None,
                    Some(pb) if bound <= eps_real && pb <= eps_real => {
                        tail = bound;
                        break;
                    }
                    _ => prev_bound = Some(bound),
                }
            } else {
                prev_bound = None;
            }
            mass_since = 0.0;
            decreasing = true;
            next_checkpoint *= 2;
        }
        k += 1;
        if k >= TERM_BUDGET {
            return Err(Error::Precision(format!(
                "hypergeometric series needs more than {TERM_BUDGET} terms (kappa = {kappa})"
            )));
        }
    }
    let value = sum
        .with_extra_err_ulp(tail * 10f64.powi(scale as i32))
        .mul_rat(&prefactor);

    // Reference: the same quantity summed from m = 1 (plus the m = 0 term in
    // the degenerate case, where the series above starts at m = n = 0).
    let mut reference = eval_r_direct(params, j, target_digits + 3)?;
    if params.is_degenerate() {
        let rep = RationalFunctionRep::build(*params);
        let t0 = BigRational::new(BigInt::from(j), BigInt::from(params.d()));
        let extra = rep.eval_exact(&t0)?;
        reference = reference.add(&PrecisionValue::from_rational(&extra, reference.scale()));
    }

    let common = scale.max(reference.scale());
    let diff = reference.rescale(common).sub(&value.rescale(common));
    let residual = diff.to_f64().abs();
    let combined_error = reference.abs_error() + value.abs_error();
    let pass = residual <= combined_error;
    let detail = format!(
        "series = {}, direct = {}",
        value.to_decimal_string(target_digits.min(scale)),
        reference.to_decimal_string(target_digits.min(reference.scale()))
    );
    Ok(ResidualCheck {
        residual,
        imag_magnitude: 0.0,
        combined_error,
        pass,
        detail,
    })
}

/// Empirical growth table for increasing n at fixed (D, s): the values, their
/// n-th roots, and positivity. No asymptotic claim is asserted.
pub fn growth_report(params_list: &[Params], j: u32, target_digits: u32) -> Result<Vec<GrowthRow>> {
    if params_list.is_empty() {
        return Err(Error::InvalidParams(
            "growth report needs at least one parameter set".into(),
        ));
    }
    let d = params_list[0].d();
    let s = params_list[0].s();
    let mut prev_n: Option<u32> = None;
    for p in params_list {
        if p.d() != d || p.s() != s {
            return Err(Error::InvalidParams(
                "growth report expects fixed (D, s) across the list".into(),
            ));
        }
        if let Some(pn) = prev_n {
            if p.n() <= pn {
                return Err(Error::InvalidParams(
                    "growth report expects increasing n".into(),
                ));
            }
        }
        prev_n = Some(p.n());
    }
    let mut rows = Vec::new();
    for p in params_list {
        let value = eval_r_direct(p, j, target_digits)?;
        let v = value.to_f64();
        let nth_root = if p.n() > 0 {
            v.powf(1.0 / f64::from(p.n()))
        } else {
            f64::NAN
        };
        let positive = value.certainly_positive();
        rows.push(GrowthRow {
            n: p.n(),
            value,
            nth_root,
            positive,
        });
    }
    Ok(rows)
}
