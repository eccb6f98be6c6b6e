//! The rational function R_n(t) in factored form: construction, exact and
//! floating evaluation, the reflection symmetry check, and the expansion at
//! infinity used for tail summation.
//!
//! R_n(t) = D^{3Dn} n!^{s+1-3D} prod_{l=0}^{3Dn} (t - n + l/D)
//!          / prod_{l=0}^{n} (t + l)^{s+1}.
//!
//! The representation stays factored throughout; expanding into monomial
//! coefficients would blow up coefficient sizes for no benefit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::arith::{factorial, rational_log10, ExactRational};
use crate::error::{Error, Result};
use crate::value::PrecisionValue;

/// The parameter triple (D, s, n) plus the requested output precision.
///
/// Constraints: s >= 3D - 1, n even (odd n only through
/// [`Params::new_allow_odd`] for the D = 2 pathway), precision_digits in
/// [10, 200]. n = 0 is admitted as a degenerate test case; operations that
/// rely on the numerator zeros refuse it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    d: u32,
    s: u32,
    n: u32,
    precision_digits: u32,
}

impl Params {
    pub fn new(d: u32, s: u32, n: u32, precision_digits: u32) -> Result<Self> {
        if n % 2 != 0 {
            return Err(Error::InvalidParams(format!(
                "n must be even (got n = {n}); odd n is only supported for D = 2 via the \
                 allow-odd-n override"
            )));
        }
        Self::validate_common(d, s, n, precision_digits)
    }

    /// Admits odd n, which the D = 2 pathway supports; other D are rejected.
    pub fn new_allow_odd(d: u32, s: u32, n: u32, precision_digits: u32) -> Result<Self> {
        if n % 2 != 0 && d != 2 {
            return Err(Error::InvalidParams(format!(
                "odd n is only meaningful for D = 2 (got D = {d}, n = {n})"
            )));
        }
        Self::validate_common(d, s, n, precision_digits)
    }

    fn validate_common(d: u32, s: u32, n: u32, precision_digits: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParams("D must be a positive integer".into()));
        }
        if s == 0 {
            return Err(Error::InvalidParams("s must be a positive integer".into()));
        }
        if s + 1 < 3 * d {
            return Err(Error::InvalidParams(format!(
                "s >= 3D - 1 is required (got D = {d}, s = {s})"
            )));
        }
        if precision_digits < 10 {
            return Err(Error::InvalidParams(format!(
                "precision_digits must be at least 10 (got {precision_digits})"
            )));
        }
        if precision_digits > 200 {
            return Err(Error::InvalidParams(format!(
                "precision_digits must be at most 200 (got {precision_digits})"
            )));
        }
        Ok(Self {
            d,
            s,
            n,
            precision_digits,
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn precision_digits(&self) -> u32 {
        self.precision_digits
    }

    /// n = 0: closed forms exist but the numerator has no zeros at the first
    /// summation points, so several verifications refuse it.
    pub fn is_degenerate(&self) -> bool {
        self.n == 0
    }

    /// Numerator degree 3Dn + 1.
    pub fn numerator_degree(&self) -> u32 {
        3 * self.d * self.n + 1
    }

    /// Denominator degree (s+1)(n+1).
    pub fn denominator_degree(&self) -> u32 {
        (self.s + 1) * (self.n + 1)
    }

    /// Power-law decay rate of the summed series: (s+1)(n+1) - (3Dn+1) >= 2.
    pub fn decay_exponent(&self) -> u32 {
        self.denominator_degree() - self.numerator_degree()
    }
}

/// Factored representation of R_n(t): exact scalar prefactor, the ordered
/// numerator roots -n + l/D, and poles 0, -1, ..., -n of uniform order s+1
/// (carried implicitly by the parameters).
#[derive(Clone, Debug)]
pub struct RationalFunctionRep {
    params: Params,
    prefactor: ExactRational,
    numerator_roots: Vec<ExactRational>,
}

impl RationalFunctionRep {
    /// Builds the factored form for validated parameters.
    pub fn build(params: Params) -> Self {
        let d = params.d;
        let n = params.n;
        let s = params.s;
        // D^{3Dn} n!^{s+1-3D}; the parameter constraint makes the factorial
        // exponent nonnegative.
        let prefactor = BigRational::from_integer(
            BigInt::from(d).pow(3 * d * n) * factorial(n).pow(s + 1 - 3 * d),
        );
        // The factor (t - n + l/D) vanishes at n - l/D, so the roots run from
        // n down to -2n in steps of 1/D.
        let numerator_roots: Vec<ExactRational> = (0..=3 * d * n)
            .map(|l| {
                BigRational::new(
                    BigInt::from(d) * BigInt::from(n) - BigInt::from(l),
                    BigInt::from(d),
                )
            })
            .collect();
        debug_assert!(params.numerator_degree() + 2 <= params.denominator_degree());
        debug_assert!(numerator_roots
            .iter()
            .all(|r| *r >= -BigRational::from_integer(BigInt::from(2 * n))
                && *r <= BigRational::from_integer(BigInt::from(n))));
        Self {
            params,
            prefactor,
            numerator_roots,
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn prefactor(&self) -> &ExactRational {
        &self.prefactor
    }

    pub fn numerator_roots(&self) -> &[ExactRational] {
        &self.numerator_roots
    }

    /// The poles as exact rationals: 0, -1, ..., -n, each of order s+1.
    pub fn poles(&self) -> impl Iterator<Item = ExactRational> + '_ {
        (0..=self.params.n).map(|l| BigRational::from_integer(-BigInt::from(l)))
    }

    fn is_pole(&self, t: &ExactRational) -> bool {
        if !t.is_integer() {
            return false;
        }
        let v = t.numer();
        -BigInt::from(self.params.n) <= *v && *v <= BigInt::zero()
    }

    /// Exact value of R_n(t). Errors when t is a pole.
    pub fn eval_exact(&self, t: &ExactRational) -> Result<ExactRational> {
        if self.is_pole(t) {
            return Err(Error::Pole(format!("R_n is evaluated at the pole t = {t}")));
        }
        let d = self.params.d;
        let n = self.params.n;
        let s = self.params.s;
        // prod (t - n + l/D) = D^{-(3Dn+1)} prod (Dt - Dn + l), which folds the
        // D^{3Dn} prefactor into a single 1/D.
        let u = BigRational::from_integer(BigInt::from(d)) * t
            - BigRational::from_integer(BigInt::from(d) * BigInt::from(n));
        let mut num = BigRational::from_integer(factorial(n).pow(s + 1 - 3 * d));
        for l in 0..=3 * d * n {
            let factor = &u + BigRational::from_integer(BigInt::from(l));
            if factor.is_zero() {
                return Ok(BigRational::zero());
            }
            num *= factor;
        }
        let mut den = BigRational::from_integer(BigInt::from(d));
        let mut pole_prod = BigRational::one();
        for l in 0..=n {
            pole_prod *= t + BigRational::from_integer(BigInt::from(l));
        }
        den *= pole_prod.pow(i32::try_from(s + 1).expect("s fits i32"));
        Ok(num / den)
    }

    /// Floating evaluation at a fixed-point scalar, with error tracking.
    /// Errors when some pole factor is too small to certify accuracy.
    pub fn eval_float(&self, t: &PrecisionValue) -> Result<PrecisionValue> {
        let scale = t.scale();
        let d = self.params.d;
        let n = self.params.n;
        let s = self.params.s;
        let u = t.mul_rat(&BigRational::from_integer(BigInt::from(d)));
        let mut num = PrecisionValue::from_rational(
            &BigRational::from_integer(factorial(n).pow(s + 1 - 3 * d)),
            scale,
        );
        for l in 0..=3 * d * n {
            let c = i64::from(l) - i64::from(d) * i64::from(n);
            num = num.mul(&u.add(&PrecisionValue::from_int(c, scale)));
        }
        let mut pole_prod = PrecisionValue::from_int(1, scale);
        for l in 0..=n {
            let factor = t.add(&PrecisionValue::from_int(i64::from(l), scale));
            let fmag = factor.to_f64().abs();
            if !fmag.is_finite() || fmag < 1e-6 || fmag < 1e3 * factor.abs_error() {
                return Err(Error::Conditioning(format!(
                    "t is too close to the pole -{l} for floating evaluation"
                )));
            }
            pole_prod = pole_prod.mul(&factor);
        }
        let den = pole_prod
            .powi(s + 1)
            .mul_rat(&BigRational::from_integer(BigInt::from(d)));
        Ok(num.div(&den))
    }

    /// Checks R_n(-n-t) = (-1)^s R_n(t) exactly at each sample point.
    /// Errors if a sample or its reflection hits a pole.
    pub fn check_symmetry(&self, sample_points: &[ExactRational]) -> Result<bool> {
        let n = BigRational::from_integer(BigInt::from(self.params.n));
        let sign: BigRational = if self.params.s % 2 == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        for t in sample_points {
            let reflected = -(&n) - t;
            let lhs = self.eval_exact(&reflected)?;
            let rhs = sign.clone() * self.eval_exact(t)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact coefficients of the expansion at infinity:
    /// R(t) = sum_{q >= 0} `coeff[q]` t^{-(kappa + q)}, where kappa is the decay
    /// exponent. Converges for |t| > n. Computed as the series quotient of the
    /// reversed numerator by the reversed denominator.
    pub fn expansion_at_infinity(&self, count: usize) -> Vec<ExactRational> {
        let n = self.params.n;
        let s = self.params.s;
        // Reversed numerator: prod (1 - r_l u), degree 3Dn + 1.
        let mut num_poly = vec![BigRational::one()];
        for root in &self.numerator_roots {
            num_poly = poly_mul_linear(&num_poly, &(-root.clone()));
        }
        // Reversed denominator: prod_{l=1}^{n} (1 + l u)^{s+1} (l = 0 gives 1).
        let mut den_poly = vec![BigRational::one()];
        for l in 1..=n {
            den_poly = poly_mul_linear(&den_poly, &BigRational::from_integer(BigInt::from(l)));
        }
        den_poly = poly_pow(&den_poly, s + 1);
        // Series quotient q_k = (num_k - sum_{v>=1} den_v q_{k-v}) / den_0.
        let mut coeffs = Vec::with_capacity(count);
        for k in 0..count {
            let mut c = num_poly.get(k).cloned().unwrap_or_else(BigRational::zero);
            for v in 1..=k.min(den_poly.len() - 1) {
                c -= &den_poly[v] * &coeffs[k - v];
            }
            coeffs.push(c);
        }
        for c in &mut coeffs {
            *c *= &self.prefactor;
        }
        coeffs
    }

    /// log10 of the Cauchy bound on `|coeff[q]|` from `expansion_at_infinity`:
    /// `|coeff[q]|` <= prefactor 2^{3Dn+1+(s+1)(n+1)} (2n)^q (radius 1/(2n)).
    /// For n = 0 the expansion is a single exact term and the bound is only
    /// meaningful at q = 0.
    pub fn expansion_coeff_log10_bound(&self, q: usize) -> f64 {
        let p = &self.params;
        if p.n == 0 {
            return if q == 0 {
                rational_log10(&self.prefactor)
            } else {
                f64::NEG_INFINITY
            };
        }
        rational_log10(&self.prefactor)
            + f64::from(p.numerator_degree() + p.denominator_degree()) * 2f64.log10()
            + q as f64 * (2.0 * f64::from(p.n)).log10()
    }
}

/// (1 + c u) * poly, truncation-free.
fn poly_mul_linear(poly: &[ExactRational], c: &ExactRational) -> Vec<ExactRational> {
    let mut out = vec![BigRational::zero(); poly.len() + 1];
    for (q, a) in poly.iter().enumerate() {
        out[q] += a;
        out[q + 1] += a * c;
    }
    out
}

fn poly_mul(a: &[ExactRational], b: &[ExactRational]) -> Vec<ExactRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_pow(a: &[ExactRational], e: u32) -> Vec<ExactRational> {
    let mut acc = vec![BigRational::one()];
    for _ in 0..e {
        acc = poly_mul(&acc, a);
    }
    acc
}
