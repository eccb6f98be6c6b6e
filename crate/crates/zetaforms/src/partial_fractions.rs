//! Exact partial-fraction decomposition of R_n(t) over the rationals.
//!
//! For each pole -l the coefficients `A[l][i]` of (t+l)^{-i} are read off a
//! truncated exact Taylor expansion of R(t) (t+l)^{s+1} around t = -l: every
//! numerator factor contributes a linear series and every other pole factor a
//! binomial series, multiplied out to order s. No linear solve, no symbolic
//! differentiation, no polynomial part (the degree gap makes R strictly
//! proper).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use serde::Serialize;

use crate::arith::{binomial, rational_to_string, ExactRational};
use crate::error::{Error, Result};
use crate::rational_function::{Params, RationalFunctionRep};

/// Table of exact coefficients `A[l][i]` of (t+l)^{-i}, l = 0..n, i = 1..s+1.
#[derive(Clone, Debug)]
pub struct PartialFractionTable {
    params: Params,
    /// `coeffs[l][i-1]` = `A[l][i]`.
    coeffs: Vec<Vec<ExactRational>>,
}

/// One exported table entry, serialized as {"l": .., "i": .., "A": "p/q"}.
#[derive(Debug, Serialize)]
pub struct TableRow {
    pub l: u32,
    pub i: u32,
    #[serde(rename = "A")]
    pub a: String,
}

impl PartialFractionTable {
    pub fn params(&self) -> &Params {
        &self.params
    }

    /// `A[l][i]`; requires l <= n and 1 <= i <= s+1.
    pub fn coeff(&self, l: u32, i: u32) -> &ExactRational {
        &self.coeffs[l as usize][(i - 1) as usize]
    }

    /// sum_l `A[l][i]` for one power i.
    pub fn column_sum(&self, i: u32) -> ExactRational {
        let mut acc = BigRational::zero();
        for row in &self.coeffs {
            acc += &row[(i - 1) as usize];
        }
        acc
    }

    /// For each i = 1..s+1, whether sum_l `A[l][i]` vanishes exactly. For even n
    /// this is expected to be true at i = 1 and at every i with i != s (mod 2).
    pub fn parity_profile(&self) -> std::collections::BTreeMap<u32, bool> {
        (1..=self.params.s() + 1)
            .map(|i| (i, self.column_sum(i).is_zero()))
            .collect()
    }

    /// sum_{l,i} `A[l][i]` / (t+l)^i. Errors when t is a pole.
    pub fn reconstruct_eval(&self, t: &ExactRational) -> Result<ExactRational> {
        if t.is_integer() {
            let v = t.numer();
            if -BigInt::from(self.params.n()) <= *v && *v <= BigInt::zero() {
                return Err(Error::Pole(format!(
                    "reconstruction evaluated at the pole t = {t}"
                )));
            }
        }
        let mut acc = BigRational::zero();
        for (l, row) in self.coeffs.iter().enumerate() {
            let inv = BigRational::one() / (t + BigRational::from_integer(BigInt::from(l)));
            // Horner in 1/(t+l): ((A[s+1] inv + A[s]) inv + ...) inv.
            let mut local = BigRational::zero();
            for a in row.iter().rev() {
                local = (local + a) * &inv;
            }
            acc += local;
        }
        Ok(acc)
    }

    /// Export rows in a fixed (l, i) order.
    pub fn to_rows(&self) -> Vec<TableRow> {
        let mut rows = Vec::new();
        for (l, row) in self.coeffs.iter().enumerate() {
            for (idx, a) in row.iter().enumerate() {
                rows.push(TableRow {
                    l: l as u32,
                    i: idx as u32 + 1,
                    a: rational_to_string(a),
                });
            }
        }
        rows
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_rows()).expect("table rows serialize")
    }
}

/// Decomposes R_n(t) into its partial-fraction table by exact local expansion
/// at each pole.
pub fn decompose(rep: &RationalFunctionRep) -> PartialFractionTable {
    let params = *rep.params();
    let n = params.n();
    let s = params.s();
    let order = (s + 1) as usize;
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    for l0 in 0..=n {
        // Series of R(t) (t+l0)^{s+1} in eps = t + l0, truncated at eps^s.
        let mut series = vec![BigRational::zero(); order];
        series[0] = rep.prefactor().clone();
        // Numerator factors: (eps + (root distance)).
        for root in rep.numerator_roots() {
            let c = -BigRational::from_integer(BigInt::from(l0)) - root;
            mul_linear_in_place(&mut series, &c);
        }
        // Remaining pole factors: (eps + (l' - l0))^{-(s+1)}.
        for l1 in 0..=n {
            if l1 == l0 {
                continue;
            }
            let d = i64::from(l1) - i64::from(l0);
            let inv_series = binomial_inverse_series(d, s, order);
            series = convolve_truncated(&series, &inv_series, order);
        }
        // A[l0][i] is the eps^{s+1-i} coefficient.
        let row: Vec<ExactRational> = (1..=s + 1)
            .map(|i| series[(s + 1 - i) as usize].clone())
            .collect();
        coeffs.push(row);
    }
    PartialFractionTable { params, coeffs }
}

/// In-place (c + eps) * series, truncated to the series length.
fn mul_linear_in_place(series: &mut [ExactRational], c: &ExactRational) {
    for q in (0..series.len()).rev() {
        let mut v = &series[q] * c;
        if q > 0 {
            v += &series[q - 1];
        }
        series[q] = v;
    }
}

/// Truncated series of (d + eps)^{-(s+1)} for integer d != 0:
/// sum_q C(s+q, q) (-1)^q d^{-(s+1)-q} eps^q.
fn binomial_inverse_series(d: i64, s: u32, order: usize) -> Vec<ExactRational> {
    let d_rat = BigRational::from_integer(BigInt::from(d));
    let mut out = Vec::with_capacity(order);
    let mut power = d_rat.clone().pow(-((s + 1) as i32));
    for q in 0..order {
        let b = BigRational::from_integer(
            binomial(u64::from(s) + q as u64, q as u64).expect("q <= s+q"),
        );
        let sign = if q % 2 == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        out.push(sign * b * &power);
        power /= &d_rat;
    }
    out
}

fn convolve_truncated(
    a: &[ExactRational],
    b: &[ExactRational],
    order: usize,
) -> Vec<ExactRational> {
    let mut out = vec![BigRational::zero(); order];
    for (i, x) in a.iter().enumerate().take(order) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order - i) {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn table(d: u32, s: u32, n: u32) -> PartialFractionTable {
        let params = Params::new(d, s, n, 30).unwrap();
        decompose(&RationalFunctionRep::build(params))
    }

    #[test]
    fn degenerate_case_reads_off_t_to_minus_s() {
        // R = t / t^3 = t^{-2}: A[0][2] = 1, A[0][1] = A[0][3] = 0.
        let t = table(1, 2, 0);
        assert_eq!(t.coeff(0, 1), &rat_int(0));
        assert_eq!(t.coeff(0, 2), &rat_int(1));
        assert_eq!(t.coeff(0, 3), &rat_int(0));
        assert_eq!(t.reconstruct_eval(&rat_int(2)).unwrap(), rat(1, 4));
        let profile = t.parity_profile();
        assert!(profile[&1]);
        assert!(!profile[&2]);
        assert!(profile[&3]);
    }

    #[test]
    fn simple_pole_coefficients_cancel() {
        for (d, s, n) in [(1, 2, 2), (1, 3, 2), (2, 5, 2), (2, 5, 4), (3, 8, 2)] {
            let t = table(d, s, n);
            assert!(t.column_sum(1).is_zero(), "({d},{s},{n})");
        }
    }

    #[test]
    fn off_parity_column_sums_vanish_for_even_n() {
        for (d, s, n) in [(1, 2, 2), (1, 3, 2), (1, 4, 4), (2, 5, 2), (3, 8, 2)] {
            let t = table(d, s, n);
            for i in 2..=s + 1 {
                if i % 2 != s % 2 {
                    assert!(t.column_sum(i).is_zero(), "({d},{s},{n}) at i = {i}");
                }
            }
        }
    }

    #[test]
    fn parity_profile_examples() {
        let t = table(1, 2, 2);
        let profile = t.parity_profile();
        assert!(profile[&3], "sum_l A[l][3] should vanish");
        assert!(profile[&1], "sum_l A[l][1] should vanish");
        let t = table(1, 3, 2);
        assert!(t.parity_profile()[&2], "sum_l A[l][2] should vanish");
    }

    #[test]
    fn reconstruction_matches_exact_evaluation() {
        let params = Params::new(1, 2, 2, 30).unwrap();
        let rep = RationalFunctionRep::build(params);
        let t = decompose(&rep);
        assert_eq!(t.reconstruct_eval(&rat_int(3)).unwrap(), rat(7, 300));
        assert_eq!(
            t.reconstruct_eval(&rat(1, 3)).unwrap(),
            rep.eval_exact(&rat(1, 3)).unwrap()
        );
        // Numerator roots reconstruct to zero.
        assert_eq!(t.reconstruct_eval(&rat_int(1)).unwrap(), rat_int(0));
        assert!(matches!(
            t.reconstruct_eval(&rat_int(-2)),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn reconstruction_is_the_decomposition_oracle() {
        // The complete correctness check: 25 rational points per parameter set.
        for (d, s, n) in [(1, 2, 2), (1, 3, 2), (2, 5, 2), (3, 8, 2)] {
            let params = Params::new(d, s, n, 30).unwrap();
            let rep = RationalFunctionRep::build(params);
            let t = decompose(&rep);
            for k in 1..=25i64 {
                let point = rat(3 * k + 1, 3) + rat(k, 11);
                assert_eq!(
                    t.reconstruct_eval(&point).unwrap(),
                    rep.eval_exact(&point).unwrap(),
                    "({d},{s},{n}) at t = {point}"
                );
            }
        }
    }

    #[test]
    fn reflection_relation_between_mirror_poles() {
        // A[n-l][i] = (-1)^{s+i} A[l][i], induced by the reflection symmetry.
        for (d, s, n) in [
            (1, 2, 2),
            (1, 3, 2),
            (1, 4, 4),
            (2, 5, 2),
            (2, 5, 4),
            (3, 8, 2),
        ] {
            let t = table(d, s, n);
            for l in 0..=n {
                for i in 1..=s + 1 {
                    let sign = if (s + i) % 2 == 0 { 1 } else { -1 };
                    let lhs = t.coeff(n - l, i).clone();
                    let rhs = t.coeff(l, i) * rat_int(sign);
                    assert_eq!(lhs, rhs, "({d},{s},{n}) at l = {l}, i = {i}");
                }
            }
        }
    }

    #[test]
    fn highest_order_coefficient_vanishes_with_numerator_zero_at_pole() {
        // Every pole of the factored form coincides with one simple numerator
        // root, so the analytic order is s and A[l][s+1] = 0.
        let t = table(2, 5, 2);
        for l in 0..=2 {
            assert!(t.coeff(l, 6).is_zero(), "A[{l}][6]");
        }
    }

    #[test]
    fn json_rows_shape() {
        let t = table(1, 2, 0);
        let json = t.to_json();
        assert_eq!(
            json,
            r#"[{"l":0,"i":1,"A":"0"},{"l":0,"i":2,"A":"1"},{"l":0,"i":3,"A":"0"}]"#
        );
    }
}
