//! Command-line front end: builds the exact linear-form data, certifies its
//! integrality, and runs the numerical cross-verifications, emitting
//! machine-readable reports.
//!
//! Exit status: 0 when every requested check passes, 1 when a check fails,
//! 2 for invalid parameters or evaluation errors.

mod report;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use zetaforms::arith::{rational_from_string, rational_to_string, ExactInt};
use zetaforms::error::Error;
use zetaforms::linear_forms::{
    certify_integrality, extract_form, reduce_to_zeta, CertificateJson, FormJson, ZetaFormJson,
};
use zetaforms::numerics::{
    eval_form_numeric, eval_r_direct, growth_report, pfq_cross_check, roots_filter_check,
    verify_theorem1,
};
use zetaforms::partial_fractions::{decompose, PartialFractionTable};
use zetaforms::rational_function::{Params, RationalFunctionRep};
use zetaforms::suite;

use report::{Check, ConfigEcho, Report, ValueJson};

#[derive(Parser)]
#[command(
    name = "zetaforms",
    version,
    about = "Exact linear forms in Hurwitz zeta values: construction, integrality \
             certificates, and high-precision cross-verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct ParamArgs {
    /// Root-of-unity degree D >= 1.
    #[arg(long = "D")]
    d: u32,
    /// Weight s >= 3D - 1.
    #[arg(long)]
    s: u32,
    /// Even order n >= 0 (odd n needs --allow-odd-n, n = 0 needs
    /// --allow-degenerate-n).
    #[arg(long)]
    n: u32,
    /// Restrict to one j in 1..=D (default: all).
    #[arg(long)]
    j: Option<u32>,
    /// Target decimal digits of absolute accuracy.
    #[arg(long, default_value_t = 40)]
    digits: u32,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for --format json.
    #[arg(long, conflicts_with = "format")]
    json: bool,
    /// Admit odd n (D = 2 pathway only).
    #[arg(long)]
    allow_odd_n: bool,
    /// Admit the degenerate test case n = 0.
    #[arg(long)]
    allow_degenerate_n: bool,
}

#[derive(Args)]
struct FilterArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Evaluation points as rationals "p/q" with |x| < 1 (repeatable).
    #[arg(long = "x", allow_hyphen_values = true)]
    xs: Vec<String>,
}

#[derive(Args)]
struct CombineArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Integer weights e_1,...,e_D for sum_j e_j r_(n,j).
    #[arg(long, allow_hyphen_values = true)]
    weights: String,
}

#[derive(Args)]
struct GrowthArgs {
    /// Root-of-unity degree D >= 1.
    #[arg(long = "D")]
    d: u32,
    /// Weight s >= 3D - 1.
    #[arg(long)]
    s: u32,
    /// Increasing n values, comma separated.
    #[arg(long = "n-list")]
    n_list: String,
    /// j in 1..=D.
    #[arg(long, default_value_t = 1)]
    j: u32,
    #[arg(long, default_value_t = 25)]
    digits: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, conflicts_with = "format")]
    json: bool,
    #[arg(long)]
    allow_odd_n: bool,
    #[arg(long)]
    allow_degenerate_n: bool,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, conflicts_with = "format")]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build R_n, decompose it, extract the forms, certify integrality.
    Form(ParamArgs),
    /// Compare the direct series against the extracted linear form.
    VerifyEq1(ParamArgs),
    /// Verify the integral representation through the Beta-factor series.
    VerifyTheorem1(ParamArgs),
    /// Verify the roots-of-unity filter identity at sample points.
    VerifyFilter(FilterArgs),
    /// Verify the hypergeometric middle form of the series.
    VerifyPfq(ParamArgs),
    /// Reduce an integer combination of the forms to zeta values.
    Combine(CombineArgs),
    /// Empirical growth table over increasing n.
    Growth(GrowthArgs),
    /// Run every applicable check for one parameter set.
    All(ParamArgs),
    /// Run the pinned verification grid.
    Suite(SuiteArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (format, outcome) = dispatch(cli.command);
    let code = match outcome {
        Ok(rep) => {
            let rendered = match format {
                Format::Json => rep.to_json(),
                Format::Csv => rep.to_csv(),
                Format::Text => rep.to_text(),
            };
            print!("{rendered}");
            if rep.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    };
    eprintln!("elapsed: {:.2}s", start.elapsed().as_secs_f64());
    code
}

fn dispatch(command: Command) -> (Format, Result<Report, Error>) {
    match command {
        Command::Form(a) => (effective_format(&a), run_form(a)),
        Command::VerifyEq1(a) => (effective_format(&a), run_eq1(a)),
        Command::VerifyTheorem1(a) => (effective_format(&a), run_theorem1(a)),
        Command::VerifyFilter(a) => (effective_format(&a.params), run_filter(a)),
        Command::VerifyPfq(a) => (effective_format(&a), run_pfq(a)),
        Command::Combine(a) => (effective_format(&a.params), run_combine(a)),
        Command::Growth(a) => {
            let f = if a.json { Format::Json } else { a.format };
            (f, run_growth(a))
        }
        Command::All(a) => (effective_format(&a), run_all_checks(a)),
        Command::Suite(a) => {
            let f = if a.json { Format::Json } else { a.format };
            (f, run_suite())
        }
    }
}

fn effective_format(a: &ParamArgs) -> Format {
    if a.json {
        Format::Json
    } else {
        a.format
    }
}

fn build_params(a: &ParamArgs) -> Result<Params, Error> {
    if a.n == 0 && !a.allow_degenerate_n {
        return Err(Error::InvalidParams(
            "n = 0 is a degenerate test case; pass --allow-degenerate-n to admit it".into(),
        ));
    }
    if a.allow_odd_n {
        Params::new_allow_odd(a.d, a.s, a.n, a.digits.max(10))
    } else {
        Params::new(a.d, a.s, a.n, a.digits.max(10))
    }
}

fn config_echo(a: &ParamArgs, weights: Option<String>) -> ConfigEcho {
    ConfigEcho {
        d: a.d,
        s: a.s,
        n: a.n,
        j: a.j.map_or_else(|| "all".to_string(), |j| j.to_string()),
        digits: a.digits,
        weights,
        allow_odd_n: a.allow_odd_n,
        allow_degenerate_n: a.allow_degenerate_n,
    }
}

fn j_range(params: &Params, j: Option<u32>) -> Result<Vec<u32>, Error> {
    match j {
        None => Ok((1..=params.d()).collect()),
        Some(j) if j >= 1 && j <= params.d() => Ok(vec![j]),
        Some(j) => Err(Error::InvalidParams(format!(
            "j must lie in 1..=D (got j = {j}, D = {})",
            params.d()
        ))),
    }
}

fn build_table(params: Params) -> PartialFractionTable {
    decompose(&RationalFunctionRep::build(params))
}

fn run_form(a: ParamArgs) -> Result<Report, Error> {
    let params = build_params(&a)?;
    let js = j_range(&params, a.j)?;
    let table = build_table(params);

    let mut forms = Vec::new();
    let mut certs = Vec::new();
    let mut checks = Vec::new();
    let mut csv = vec![vec![
        "j".to_string(),
        "kind".to_string(),
        "i".to_string(),
        "value".to_string(),
    ]];
    for &j in &js {
        let form = extract_form(&table, j)?;
        let cert = certify_integrality(&form)?;
        checks.push(Check::exact(format!("integrality-j{j}"), cert.pass));
        csv.push(vec![
            j.to_string(),
            "a0".into(),
            String::new(),
            rational_to_string(form.a0()),
        ]);
        for (&i, v) in form.a() {
            csv.push(vec![
                j.to_string(),
                "a".into(),
                i.to_string(),
                rational_to_string(v),
            ]);
        }
        forms.push(FormJson::from(&form));
        certs.push(CertificateJson::from(&cert));
    }
    let results = json!({
        "forms": forms,
        "certificates": certs,
        "partial_fractions": table.to_rows(),
    });
    Ok(Report::new("form", config_echo(&a, None), results, checks).with_csv(csv))
}

fn run_eq1(a: ParamArgs) -> Result<Report, Error> {
    let params = build_params(&a)?;
    let js = j_range(&params, a.j)?;
    let table = build_table(params);
    let digits = a.digits;
    let gate = i64::from(digits.saturating_sub(10).max(5));

    let mut checks = Vec::new();
    let mut values = BTreeMap::new();
    for &j in &js {
        let direct = eval_r_direct(&params, j, digits)?;
        let form = extract_form(&table, j)?;
        let via_form = eval_form_numeric(&form, digits)?;
        let common = direct.scale().max(via_form.scale());
        let diff = direct.rescale(common).sub(&via_form.rescale(common));
        let pass = diff.cmp_abs_pow10(gate) == std::cmp::Ordering::Less;
        checks.push(Check::bounded(
            format!("eq1-j{j}"),
            pass,
            diff.to_f64().abs(),
            10f64.powi(-gate as i32),
        ));
        values.insert(
            format!("j{j}"),
            json!({
                "direct": ValueJson::new(&direct, digits),
                "via_form": ValueJson::new(&via_form, digits),
            }),
        );
    }
    let results = json!({ "values": values });
    Ok(Report::new(
        "verify-eq1",
        config_echo(&a, None),
        results,
        checks,
    ))
}

fn run_theorem1(a: ParamArgs) -> Result<Report, Error> {
    let params = build_params(&a)?;
    let js = j_range(&params, a.j)?;
    let mut checks = Vec::new();
    let mut details = BTreeMap::new();
    for &j in &js {
        let check = verify_theorem1(&params, j, a.digits)?;
        checks.push(Check::bounded(
            format!("theorem1-j{j}"),
            check.pass,
            check.residual,
            check.combined_error,
        ));
        checks.push(Check::bounded(
            format!("theorem1-imag-j{j}"),
            check.imag_magnitude <= check.combined_error,
            check.imag_magnitude,
            check.combined_error,
        ));
        details.insert(format!("j{j}"), check.detail);
    }
    let results = json!({ "details": details });
    Ok(Report::new(
        "verify-theorem1",
        config_echo(&a, None),
        results,
        checks,
    ))
}

fn run_filter(a: FilterArgs) -> Result<Report, Error> {
    let params = build_params(&a.params)?;
    let js = j_range(&params, a.params.j)?;
    let xs = if a.xs.is_empty() {
        vec!["0".to_string(), "1/2".to_string(), "-1/3".to_string()]
    } else {
        a.xs.clone()
    };
    let mut checks = Vec::new();
    let mut details = BTreeMap::new();
    for &j in &js {
        for xs_raw in &xs {
            let x = rational_from_string(xs_raw)?;
            let check = roots_filter_check(&params, j, &x, a.params.digits)?;
            checks.push(Check::bounded(
                format!("filter-j{j}-x({})", rational_to_string(&x)),
                check.pass,
                check.residual,
                check.combined_error,
            ));
            details.insert(format!("j{j}-x({})", rational_to_string(&x)), check.detail);
        }
    }
    let results = json!({ "details": details });
    Ok(Report::new(
        "verify-filter",
        config_echo(&a.params, None),
        results,
        checks,
    ))
}

fn run_pfq(a: ParamArgs) -> Result<Report, Error> {
    let params = build_params(&a)?;
    let js = j_range(&params, a.j)?;
    let mut checks = Vec::new();
    let mut details = BTreeMap::new();
    for &j in &js {
        let check = pfq_cross_check(&params, j, a.digits)?;
        checks.push(Check::bounded(
            format!("pfq-j{j}"),
            check.pass,
            check.residual,
            check.combined_error,
        ));
        details.insert(format!("j{j}"), check.detail);
    }
    let results = json!({ "details": details });
    Ok(Report::new(
        "verify-pfq",
        config_echo(&a, None),
        results,
        checks,
    ))
}

fn parse_weights(raw: &str, d: u32) -> Result<Vec<ExactInt>, Error> {
    let weights: Result<Vec<ExactInt>, Error> = raw
        .split(',')
        .map(|w| {
            w.trim()
                .parse::<ExactInt>()
                .map_err(|_| Error::InvalidParams(format!("cannot parse weight '{w}'")))
        })
        .collect();
    let weights = weights?;
    if weights.len() != d as usize {
        return Err(Error::InvalidParams(format!(
            "expected {d} weights for D = {d}, got {}",
            weights.len()
        )));
    }
    Ok(weights)
}

fn run_combine(a: CombineArgs) -> Result<Report, Error> {
    let params = build_params(&a.params)?;
    let weights = parse_weights(&a.weights, params.d())?;
    let table = build_table(params);
    let forms: Result<Vec<_>, Error> = (1..=params.d()).map(|j| extract_form(&table, j)).collect();
    let forms = forms?;
    let zeta_form = reduce_to_zeta(&forms, &weights)?;

    let mut checks = vec![Check::exact("reduction", true)];
    // The headline cancellation for the D = 2 combination -r_1 + 7 r_2.
    if params.d() == 2 && weights == [ExactInt::from(-1), ExactInt::from(7)] {
        let c3_zero = zeta_form.c().get(&3).map(rational_to_string).as_deref() == Some("0");
        checks.push(Check::exact("zeta3-eliminated", c3_zero));
    }
    let fj = ZetaFormJson::from(&zeta_form);
    let mut csv = vec![vec!["i".to_string(), "c".to_string()]];
    csv.push(vec!["0".into(), fj.c0.clone()]);
    for (i, c) in &fj.c {
        csv.push(vec![i.to_string(), c.clone()]);
    }
    let results = json!({ "zeta_form": fj });
    Ok(Report::new(
        "combine",
        config_echo(&a.params, Some(a.weights)),
        results,
        checks,
    )
    .with_csv(csv))
}

fn run_growth(a: GrowthArgs) -> Result<Report, Error> {
    let ns: Result<Vec<u32>, Error> = a
        .n_list
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidParams(format!("cannot parse n value '{t}'")))
        })
        .collect();
    let ns = ns?;
    let params: Result<Vec<Params>, Error> = ns
        .iter()
        .map(|&n| {
            if n == 0 && !a.allow_degenerate_n {
                return Err(Error::InvalidParams(
                    "n = 0 needs --allow-degenerate-n".into(),
                ));
            }
            if a.allow_odd_n {
                Params::new_allow_odd(a.d, a.s, n, a.digits.max(10))
            } else {
                Params::new(a.d, a.s, n, a.digits.max(10))
            }
        })
        .collect();
    let params = params?;
    let rows = growth_report(&params, a.j, a.digits)?;

    let mut checks = Vec::new();
    let mut table = Vec::new();
    let mut csv = vec![vec![
        "n".to_string(),
        "value".to_string(),
        "err".to_string(),
        "nth_root".to_string(),
        "positive".to_string(),
    ]];
    for row in &rows {
        checks.push(Check::exact(format!("positive-n{}", row.n), row.positive));
        let vj = ValueJson::new(&row.value, a.digits);
        csv.push(vec![
            row.n.to_string(),
            vj.value.clone(),
            vj.err.clone(),
            format!("{:.6e}", row.nth_root),
            row.positive.to_string(),
        ]);
        table.push(json!({
            "n": row.n.to_string(),
            "value": vj,
            "nth_root": format!("{:.6e}", row.nth_root),
            "positive": row.positive,
        }));
    }
    let config = ConfigEcho {
        d: a.d,
        s: a.s,
        n: *ns.last().unwrap_or(&0),
        j: a.j.to_string(),
        digits: a.digits,
        weights: None,
        allow_odd_n: a.allow_odd_n,
        allow_degenerate_n: a.allow_degenerate_n,
    };
    let results = json!({ "rows": table });
    Ok(Report::new("growth", config, results, checks).with_csv(csv))
}

fn run_all_checks(a: ParamArgs) -> Result<Report, Error> {
    let params = build_params(&a)?;
    let js = j_range(&params, a.j)?;
    let table = build_table(params);
    let digits = a.digits;
    let gate = i64::from(digits.saturating_sub(10).max(5));

    let mut checks = Vec::new();
    let mut skipped = Vec::new();
    for &j in &js {
        let form = extract_form(&table, j)?;
        let cert = certify_integrality(&form)?;
        checks.push(Check::exact(format!("integrality-j{j}"), cert.pass));

        let direct = eval_r_direct(&params, j, digits)?;
        let via_form = eval_form_numeric(&form, digits)?;
        let common = direct.scale().max(via_form.scale());
        let diff = direct.rescale(common).sub(&via_form.rescale(common));
        checks.push(Check::bounded(
            format!("eq1-j{j}"),
            diff.cmp_abs_pow10(gate) == std::cmp::Ordering::Less,
            diff.to_f64().abs(),
            10f64.powi(-gate as i32),
        ));
        checks.push(Check::exact(
            format!("positive-j{j}"),
            direct.certainly_positive(),
        ));

        // The series verifications need enough decay to converge in the term
        // budget.
        if params.decay_exponent() >= 4 && !params.is_degenerate() {
            let t1 = verify_theorem1(&params, j, digits.min(14))?;
            checks.push(Check::bounded(
                format!("theorem1-j{j}"),
                t1.pass,
                t1.residual,
                t1.combined_error,
            ));
            let pf = pfq_cross_check(&params, j, digits.min(16))?;
            checks.push(Check::bounded(
                format!("pfq-j{j}"),
                pf.pass,
                pf.residual,
                pf.combined_error,
            ));
        } else {
            skipped.push(format!(
                "series verifications for j = {j}: decay exponent {} too slow or n degenerate",
                params.decay_exponent()
            ));
        }

        for xs_raw in ["0", "1/2", "-1/3"] {
            let x = rational_from_string(xs_raw)?;
            let fc = roots_filter_check(&params, j, &x, digits.min(25))?;
            checks.push(Check::bounded(
                format!("filter-j{j}-x({xs_raw})"),
                fc.pass,
                fc.residual,
                fc.combined_error,
            ));
        }
    }
    if params.d() == 2 && params.s() % 2 == 1 && params.s() >= 5 {
        let z = zetaforms::linear_forms::d2_special_form(params)?;
        checks.push(Check::exact(
            "zeta3-eliminated",
            z.c().get(&3).map(rational_to_string).as_deref() == Some("0"),
        ));
    }
    let results = json!({ "skipped": skipped });
    Ok(Report::new("all", config_echo(&a, None), results, checks))
}

fn run_suite() -> Result<Report, Error> {
    let outcomes = suite::run_all();
    let mut checks = Vec::new();
    let mut lines = Vec::new();
    for c in &outcomes {
        checks.push(Check::exact(
            format!("criterion-{} ({})", c.id, c.name),
            c.pass,
        ));
        lines.push(c.report_line());
        eprintln!("{}", c.summary_line());
    }
    let config = ConfigEcho {
        d: 0,
        s: 0,
        n: 0,
        j: "grid".to_string(),
        digits: 40,
        weights: None,
        allow_odd_n: false,
        allow_degenerate_n: false,
    };
    let results = json!({ "summary": lines });
    Ok(Report::new("suite", config, results, checks))
}
