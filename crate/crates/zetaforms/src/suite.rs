//! The pinned verification grid: nine criteria with fixed parameters,
//! tolerances, and time limits, runnable from both the test suite and the CLI.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};

use crate::arith::{rat, rat_int};
use crate::linear_forms::{certify_integrality, d2_special_form, extract_form};
use crate::numerics::{
    eval_form_numeric, eval_r_direct, hurwitz_zeta, pfq_cross_check, roots_filter_check,
    verify_theorem1,
};
use crate::partial_fractions::decompose;
use crate::rational_function::{Params, RationalFunctionRep};

/// Outcome of one pinned criterion. `detail` is deterministic across runs;
/// timings live in their own fields so reports can stay byte-identical.
#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed_s: f64,
    /// (slowest single case, limit) for the time-limited criteria.
    pub case_seconds: Option<(f64, f64)>,
}

impl CriterionResult {
    /// Deterministic report line (no timings).
    pub fn report_line(&self) -> String {
        format!(
            "criterion {} ({}): {} {}",
            self.id,
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.detail
        )
    }

    /// Human summary including measured times.
    pub fn summary_line(&self) -> String {
        let case = self
            .case_seconds
            .map(|(slowest, limit)| format!(", slowest case {slowest:.1}s (limit {limit:.0}s)"))
            .unwrap_or_default();
        format!(
            "criterion {} ({}): {} [{:.1}s] {}{case}",
            self.id,
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.elapsed_s,
            self.detail
        )
    }
}

/// The parameter grid behind the end-to-end and positivity criteria.
pub const GRID: [(u32, u32, u32); 6] = [
    (1, 2, 2),
    (1, 3, 2),
    (1, 4, 4),
    (2, 5, 2),
    (2, 5, 4),
    (3, 8, 2),
];

fn grid_params() -> Vec<Params> {
    GRID.iter()
        .map(|&(d, s, n)| Params::new(d, s, n, 40).expect("grid is valid"))
        .collect()
}

fn finish(
    id: u32,
    name: &'static str,
    start: Instant,
    pass: bool,
    detail: String,
) -> CriterionResult {
    CriterionResult {
        id,
        name,
        pass,
        detail,
        elapsed_s: start.elapsed().as_secs_f64(),
        case_seconds: None,
    }
}

fn finish_timed(
    id: u32,
    name: &'static str,
    start: Instant,
    pass: bool,
    detail: String,
    slowest: f64,
    limit: f64,
) -> CriterionResult {
    CriterionResult {
        id,
        name,
        pass,
        detail,
        elapsed_s: start.elapsed().as_secs_f64(),
        case_seconds: Some((slowest, limit)),
    }
}

/// Criterion 1: |eval_r_direct - eval_form_numeric| <= 1e-30 at a 40-digit
/// target, every grid parameter set and every j, each case within 60 s.
pub fn criterion_1_eq1_end_to_end() -> CriterionResult {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut slowest: f64 = 0.0;
    for p in grid_params() {
        let table = decompose(&RationalFunctionRep::build(p));
        for j in 1..=p.d() {
            let case = Instant::now();
            let direct = match eval_r_direct(&p, j, 40) {
                Ok(v) => v,
                Err(e) => return finish(1, "eq1 end-to-end", start, false, e.to_string()),
            };
            let form = match extract_form(&table, j).and_then(|f| eval_form_numeric(&f, 40)) {
                Ok(v) => v,
                Err(e) => return finish(1, "eq1 end-to-end", start, false, e.to_string()),
            };
            let common = direct.scale().max(form.scale());
            let diff = direct.rescale(common).sub(&form.rescale(common));
            if diff.cmp_abs_pow10(30) != std::cmp::Ordering::Less {
                return finish(
                    1,
                    "eq1 end-to-end",
                    start,
                    false,
                    format!(
                        "({},{},{}) j={j}: |direct - form| > 1e-30",
                        p.d(),
                        p.s(),
                        p.n()
                    ),
                );
            }
            if !direct.err_within_pow10(40) || !form.err_within_pow10(40) {
                return finish(
                    1,
                    "eq1 end-to-end",
                    start,
                    false,
                    format!(
                        "({},{},{}) j={j}: error bound misses 1e-40",
                        p.d(),
                        p.s(),
                        p.n()
                    ),
                );
            }
            worst = worst.max(diff.to_f64().abs());
            slowest = slowest.max(case.elapsed().as_secs_f64());
        }
    }
    let pass = slowest <= 60.0;
    finish_timed(
        1,
        "eq1 end-to-end",
        start,
        pass,
        format!("worst |direct-form| = {worst:.2e}"),
        slowest,
        60.0,
    )
}

/// Criterion 2: exact integrality of d_n^{s+1-i} a_i and d_{n+1}^{s+1} a_{0,j}
/// for every grid parameter set and every j; zero tolerance.
pub fn criterion_2_integrality() -> CriterionResult {
    let start = Instant::now();
    let mut checked = 0usize;
    for p in grid_params() {
        let table = decompose(&RationalFunctionRep::build(p));
        for j in 1..=p.d() {
            let cert = match extract_form(&table, j).and_then(|f| certify_integrality(&f)) {
                Ok(c) => c,
                Err(e) => return finish(2, "integrality", start, false, e.to_string()),
            };
            if !cert.pass {
                return finish(
                    2,
                    "integrality",
                    start,
                    false,
                    format!("({},{},{}) j={j}: a witness failed", p.d(), p.s(), p.n()),
                );
            }
            checked += 1 + cert.coefficient_witnesses.len();
        }
    }
    finish(
        2,
        "integrality",
        start,
        true,
        format!("{checked} exact witnesses"),
    )
}

/// Criterion 3: sum_l `A[l][1]` = 0 and sum_l `A[l][i]` = 0 for i != s (mod 2),
/// exactly, for every grid parameter set.
pub fn criterion_3_parity_vanishing() -> CriterionResult {
    let start = Instant::now();
    let mut checked = 0usize;
    for p in grid_params() {
        let table = decompose(&RationalFunctionRep::build(p));
        if !table.column_sum(1).is_zero() {
            return finish(
                3,
                "parity vanishing",
                start,
                false,
                format!("({},{},{}): sum_l A[l][1] != 0", p.d(), p.s(), p.n()),
            );
        }
        checked += 1;
        for i in 2..=p.s() + 1 {
            if i % 2 != p.s() % 2 {
                if !table.column_sum(i).is_zero() {
                    return finish(
                        3,
                        "parity vanishing",
                        start,
                        false,
                        format!("({},{},{}): sum_l A[l][{i}] != 0", p.d(), p.s(), p.n()),
                    );
                }
                checked += 1;
            }
        }
    }
    finish(
        3,
        "parity vanishing",
        start,
        true,
        format!("{checked} exact column sums"),
    )
}

/// Criterion 4: Theorem-1 residual <= 1e-10 for (1,3,2) and (2,5,2) and
/// <= 1e-8 for (3,8,2), all j, imaginary parts within the declared error,
/// each case within 120 s.
pub fn criterion_4_theorem1() -> CriterionResult {
    let start = Instant::now();
    let cases: [(u32, u32, u32, f64); 3] = [(1, 3, 2, 1e-10), (2, 5, 2, 1e-10), (3, 8, 2, 1e-8)];
    let mut worst: f64 = 0.0;
    let mut slowest: f64 = 0.0;
    for (d, s, n, tol) in cases {
        let p = Params::new(d, s, n, 40).expect("valid");
        for j in 1..=d {
            let case = Instant::now();
            let check = match verify_theorem1(&p, j, 12) {
                Ok(c) => c,
                Err(e) => return finish(4, "theorem-1 residual", start, false, e.to_string()),
            };
            if check.residual > tol || !check.pass {
                return finish(
                    4,
                    "theorem-1 residual",
                    start,
                    false,
                    format!(
                        "({d},{s},{n}) j={j}: residual {:.2e} vs {tol:.0e}, imag {:.2e}, bound {:.2e}",
                        check.residual, check.imag_magnitude, check.combined_error
                    ),
                );
            }
            worst = worst.max(check.residual);
            slowest = slowest.max(case.elapsed().as_secs_f64());
        }
    }
    let pass = slowest <= 120.0;
    finish_timed(
        4,
        "theorem-1 residual",
        start,
        pass,
        format!("worst residual {worst:.2e}"),
        slowest,
        120.0,
    )
}

/// Criterion 5: roots-of-unity filter residual <= 1e-20 at
/// x in {0, 1/2, -1/3} for D in {2, 3}, j = 1..D, n in {0, 2}, including the
/// hand-checkable 20/9 at (D=2, n=0, j=1, x=1/2).
pub fn criterion_5_filter() -> CriterionResult {
    let start = Instant::now();
    let xs = [rat_int(0), rat(1, 2), rat(-1, 3)];
    let mut worst: f64 = 0.0;
    let mut cases = 0usize;
    for (d, s) in [(2u32, 5u32), (3, 8)] {
        for n in [0u32, 2] {
            let p = Params::new(d, s, n, 40).expect("valid");
            for j in 1..=d {
                for x in &xs {
                    let check = match roots_filter_check(&p, j, x, 25) {
                        Ok(c) => c,
                        Err(e) => {
                            return finish(5, "roots-of-unity filter", start, false, e.to_string())
                        }
                    };
                    if check.residual > 1e-20 || !check.pass {
                        return finish(
                            5,
                            "roots-of-unity filter",
                            start,
                            false,
                            format!(
                                "(D={d}, n={n}, j={j}, x={x}): residual {:.2e}",
                                check.residual
                            ),
                        );
                    }
                    worst = worst.max(check.residual);
                    cases += 1;
                }
            }
        }
    }
    // The hand value 20/9 at (D=2, n=0, j=1, x=1/2): check the summed side
    // against the exact fraction.
    let p = Params::new(2, 5, 0, 40).expect("valid");
    let check = roots_filter_check(&p, 1, &rat(1, 2), 25).expect("filter runs");
    if !check.detail.contains("2.2222222222") {
        return finish(
            5,
            "roots-of-unity filter",
            start,
            false,
            format!("hand value 20/9 not reproduced: {}", check.detail),
        );
    }
    finish(
        5,
        "roots-of-unity filter",
        start,
        true,
        format!("{cases} cases, worst residual {worst:.2e}, 20/9 reproduced"),
    )
}

/// Criterion 6: hypergeometric-chain residual <= 1e-15 for (1,3,2) and
/// (2,5,2), all j.
pub fn criterion_6_pfq() -> CriterionResult {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (d, s, n) in [(1u32, 3u32, 2u32), (2, 5, 2)] {
        let p = Params::new(d, s, n, 40).expect("valid");
        for j in 1..=d {
            let check = match pfq_cross_check(&p, j, 17) {
                Ok(c) => c,
                Err(e) => return finish(6, "hypergeometric chain", start, false, e.to_string()),
            };
            if check.residual > 1e-15 || !check.pass {
                return finish(
                    6,
                    "hypergeometric chain",
                    start,
                    false,
                    format!("({d},{s},{n}) j={j}: residual {:.2e}", check.residual),
                );
            }
            worst = worst.max(check.residual);
        }
    }
    finish(
        6,
        "hypergeometric chain",
        start,
        true,
        format!("worst residual {worst:.2e}"),
    )
}

/// Criterion 7: sum_{j=1}^{d} zeta(i, j/d) = d^i zeta(i) to 30 digits for
/// d in {1, 2, 3, 4, 6} and i in {2, 3, 5}.
pub fn criterion_7_divisor_formula() -> CriterionResult {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for d in [1u32, 2, 3, 4, 6] {
        for i in [2u32, 3, 5] {
            let zeta_i = match hurwitz_zeta(i, &rat_int(1), 40) {
                Ok(v) => v,
                Err(e) => return finish(7, "divisor formula", start, false, e.to_string()),
            };
            let mut lhs = crate::value::PrecisionValue::zero(zeta_i.scale());
            for j in 1..=d {
                let term = match hurwitz_zeta(i, &rat(i64::from(j), i64::from(d)), 40) {
                    Ok(v) => v,
                    Err(e) => return finish(7, "divisor formula", start, false, e.to_string()),
                };
                lhs = lhs.add(&term);
            }
            let rhs = zeta_i.mul_rat(&BigRational::from_integer(BigInt::from(d).pow(i)));
            let diff = lhs.sub(&rhs);
            if diff.cmp_abs_pow10(30) != std::cmp::Ordering::Less {
                return finish(
                    7,
                    "divisor formula",
                    start,
                    false,
                    format!("d={d}, i={i}: |sum - d^i zeta| > 1e-30"),
                );
            }
            worst = worst.max(diff.to_f64().abs());
        }
    }
    finish(
        7,
        "divisor formula",
        start,
        true,
        format!("worst deviation {worst:.2e}"),
    )
}

/// Criterion 8: for (s,n) in {(5,2), (7,2), (5,4)} at D = 2, the combination
/// 7 r_{n,2} - r_{n,1} has c_3 = 0 and c_5 = (8 - 2^5) a_5, both exactly.
pub fn criterion_8_d2_specialization() -> CriterionResult {
    let start = Instant::now();
    for (s, n) in [(5u32, 2u32), (7, 2), (5, 4)] {
        let p = Params::new(2, s, n, 40).expect("valid");
        let z = match d2_special_form(p) {
            Ok(z) => z,
            Err(e) => return finish(8, "D=2 specialization", start, false, e.to_string()),
        };
        if !z.c()[&3].is_zero() {
            return finish(
                8,
                "D=2 specialization",
                start,
                false,
                format!("(s={s}, n={n}): c_3 != 0"),
            );
        }
        // c_5 = (8 - 2^5) a_5 against an independently extracted a_5.
        let table = decompose(&RationalFunctionRep::build(p));
        let a5 = match extract_form(&table, 1) {
            Ok(f) => f.a()[&5].clone(),
            Err(e) => return finish(8, "D=2 specialization", start, false, e.to_string()),
        };
        if z.c()[&5] != a5 * rat_int(8 - 32) {
            return finish(
                8,
                "D=2 specialization",
                start,
                false,
                format!("(s={s}, n={n}): c_5 != (8 - 2^5) a_5"),
            );
        }
    }
    finish(
        8,
        "D=2 specialization",
        start,
        true,
        "c_3 = 0 and c_5 = -24 a_5 exactly".into(),
    )
}

/// Criterion 9: r_{n,j} > 0 numerically (value minus error bound positive)
/// for every grid parameter set and every j.
pub fn criterion_9_positivity() -> CriterionResult {
    let start = Instant::now();
    let mut cases = 0usize;
    for p in grid_params() {
        for j in 1..=p.d() {
            let v = match eval_r_direct(&p, j, 40) {
                Ok(v) => v,
                Err(e) => return finish(9, "positivity", start, false, e.to_string()),
            };
            if !v.certainly_positive() {
                return finish(
                    9,
                    "positivity",
                    start,
                    false,
                    format!(
                        "({},{},{}) j={j} not certainly positive",
                        p.d(),
                        p.s(),
                        p.n()
                    ),
                );
            }
            cases += 1;
        }
    }
    finish(
        9,
        "positivity",
        start,
        true,
        format!("{cases} values certainly positive"),
    )
}

/// Runs all nine criteria in order.
pub fn run_all() -> Vec<CriterionResult> {
    vec![
        criterion_1_eq1_end_to_end(),
        criterion_2_integrality(),
        criterion_3_parity_vanishing(),
        criterion_4_theorem1(),
        criterion_5_filter(),
        criterion_6_pfq(),
        criterion_7_divisor_formula(),
        criterion_8_d2_specialization(),
        criterion_9_positivity(),
    ]
}
