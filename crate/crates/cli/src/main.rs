use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use desing_core::coeffs::{combination, expand_g};
use desing_core::cyclotomic::{twisted_bernoulli_table, CycloElement, RootOfUnity};
use desing_core::exact::{bernoulli_number, factorial, format_rational, int, parse_rational, BigRational};
use desing_core::numeric::{desing1, desing2};
use desing_core::series::build_h_r;
use desing_core::special_values::desing_value_table;
use desing_core::verify::{run_suite, Suite};
use desing_core::Error;

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_TOLERANCE: u8 = 3;

/// Exact tables and numerics for desingularized multiple zeta-functions.
#[derive(Parser, Debug)]
#[command(name = "desing", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bernoulli numbers B_0..B_max (B_1 = -1/2).
    Bernoulli {
        #[arg(long)]
        max: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Twisted Bernoulli numbers B_n(xi) for xi = exp(2 pi i a / c).
    TwistedBernoulli {
        #[arg(long)]
        c: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long)]
        max: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Twisted multiple Bernoulli numbers for all n_j <= max.
    MultiBernoulli {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        c: u32,
        /// Comma-separated exponents a_j, one root exp(2 pi i a_j / c) per index.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a_list: Vec<i64>,
        /// Comma-separated rational weights; all 1 when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        gamma: Vec<String>,
        #[arg(long)]
        max: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Exact values of zeta^des_r at non-positive integers, all k_j <= kmax.
    DesingValues {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        kmax: u32,
        /// Comma-separated rational weights; all 1 when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        gamma: Vec<String>,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Coefficient table of the desingularizing combination.
    Coeffs {
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = CoeffFormat::Json)]
        format: CoeffFormat,
    },
    /// Evaluates zeta^des_1 (one argument) or zeta^des_2 (two arguments).
    Eval {
        /// Comma-separated complex arguments, e.g. `-1,1` or `0.5+2i,3`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        s: Vec<String>,
        /// Comma-separated complex weights; all 1 when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        gamma: Vec<String>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Runs the acceptance checks.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CoeffFormat {
    Json,
    Tex,
}

/// A failed command: message and exit code.
struct Failure(u8, String);

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure(EXIT_USAGE, msg.into())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ToleranceNotMet(_) | Error::ContinuationReach(_) => EXIT_TOLERANCE,
            _ => EXIT_USAGE,
        };
        Failure(code, e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(p) = std::env::var("DESING_PRECISION") {
        if p != "double" {
            eprintln!("error: DESING_PRECISION={p:?} is not supported; only \"double\" is available");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let mut out = String::new();
    let status = run(cli.command, &mut out);
    // a closed pipe downstream is not an error of ours
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match status {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(command: Command, out: &mut String) -> CmdResult {
    match command {
        Command::Bernoulli { max, format } => cmd_bernoulli(out, max, format),
        Command::TwistedBernoulli { c, a, max, format } => cmd_twisted(out, c, a, max, format),
        Command::MultiBernoulli {
            r,
            c,
            a_list,
            gamma,
            max,
            format,
        } => cmd_multi(out, r, c, &a_list, &gamma, max, format),
        Command::DesingValues { r, kmax, gamma, format } => cmd_desing_values(out, r, kmax, &gamma, format),
        Command::Coeffs { r, format } => cmd_coeffs(out, r, format),
        Command::Eval { s, gamma, tol } => cmd_eval(out, &s, &gamma, tol),
        Command::Verify { suite } => cmd_verify(out, &suite),
    }
}

fn line(out: &mut String, text: impl std::fmt::Display) {
    writeln!(out, "{text}").expect("writing to a String cannot fail");
}

fn json_out(out: &mut String, v: &serde_json::Value) {
    line(
        out,
        serde_json::to_string_pretty(v).expect("JSON values always serialize"),
    );
}

fn cmd_bernoulli(out: &mut String, max: u32, format: TableFormat) -> CmdResult {
    let values: Vec<String> = (0..=max as usize)
        .map(|n| format_rational(&bernoulli_number(n)))
        .collect();
    match format {
        TableFormat::Csv => values.iter().for_each(|v| line(out, v)),
        TableFormat::Json => json_out(out, &json!(values)),
    }
    Ok(())
}

fn cyclo_csv(x: &CycloElement) -> String {
    x.coeffs().iter().map(format_rational).collect::<Vec<_>>().join(",")
}

fn cmd_twisted(out: &mut String, c: u32, a: i64, max: u32, format: TableFormat) -> CmdResult {
    let xi = RootOfUnity::new(c, a)?;
    let table = twisted_bernoulli_table(max as usize, &xi)?;
    match format {
        TableFormat::Csv => {
            for (n, b) in table.iter().enumerate() {
                line(out, format!("{n},{}", cyclo_csv(b)));
            }
        }
        TableFormat::Json => {
            let rows: Vec<_> = table
                .iter()
                .enumerate()
                .map(|(n, b)| json!({"n": n, "value": b}))
                .collect();
            json_out(out, &json!(rows));
        }
    }
    Ok(())
}

fn parse_gammas(raw: &[String], r: usize) -> Result<Vec<BigRational>, Failure> {
    if raw.is_empty() {
        return Ok(vec![int(1); r]);
    }
    if raw.len() != r {
        return Err(Failure::usage(format!("expected {r} weights, got {}", raw.len())));
    }
    raw.iter().map(|g| parse_rational(g).map_err(Failure::from)).collect()
}

/// All multi-indices in `0..=max` per coordinate, last index fastest.
fn indices(r: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=max).map(move |k| {
                    let mut v = p.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out
}

fn join_indices(k: &[u32]) -> String {
    k.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_multi(
    out: &mut String,
    r: usize,
    c: u32,
    a_list: &[i64],
    gamma: &[String],
    max: u32,
    format: TableFormat,
) -> CmdResult {
    if !(1..=4).contains(&r) || max > 8 {
        return Err(Failure::usage("multi-bernoulli needs 1 <= r <= 4 and max <= 8"));
    }
    if a_list.len() != r {
        return Err(Failure::usage(format!(
            "expected {r} root exponents, got {}",
            a_list.len()
        )));
    }
    let xis = a_list
        .iter()
        .map(|&a| RootOfUnity::new(c, a))
        .collect::<Result<Vec<_>, _>>()?;
    let gammas = parse_gammas(gamma, r)?;
    let series = build_h_r(&xis, &gammas, max * r as u32)?;
    let rows: Vec<(Vec<u32>, CycloElement)> = indices(r, max)
        .into_iter()
        .map(|n| {
            let scale = BigRational::from_integer(n.iter().map(|&k| factorial(k as u64)).product());
            let v = series
                .coeff(&n)
                .map(|x| x.scale(&scale))
                .unwrap_or_else(|| CycloElement::zero(c));
            (n, v)
        })
        .collect();
    match format {
        TableFormat::Csv => rows
            .iter()
            .for_each(|(n, v)| line(out, format!("{},{}", join_indices(n), cyclo_csv(v)))),
        TableFormat::Json => {
            let items: Vec<_> = rows.iter().map(|(n, v)| json!({"n": n, "value": v})).collect();
            json_out(out, &json!(items));
        }
    }
    Ok(())
}

fn cmd_desing_values(out: &mut String, r: usize, kmax: u32, gamma: &[String], format: TableFormat) -> CmdResult {
    if !(1..=4).contains(&r) {
        return Err(Failure::usage(format!("r = {r} out of range 1..=4")));
    }
    if kmax > 8 {
        return Err(Failure::usage(format!("kmax = {kmax} exceeds 8")));
    }
    let gammas = parse_gammas(gamma, r)?;
    let rows = desing_value_table(kmax, &gammas)?;
    match format {
        TableFormat::Csv => rows
            .iter()
            .for_each(|row| line(out, format!("{},{}", join_indices(&row.k), format_rational(&row.value)))),
        TableFormat::Json => json_out(out, &serde_json::to_value(&rows).expect("rows serialize")),
    }
    Ok(())
}

fn cmd_coeffs(out: &mut String, r: usize, format: CoeffFormat) -> CmdResult {
    if !(1..=6).contains(&r) {
        return Err(Failure::usage(format!("r = {r} out of range 1..=6")));
    }
    match format {
        CoeffFormat::Json => json_out(out, &serde_json::to_value(expand_g(r)).expect("tables serialize")),
        CoeffFormat::Tex => out.push_str(&combination(r).to_tex()),
    }
    Ok(())
}

fn parse_complex(text: &str) -> Result<Complex64, Failure> {
    Complex64::from_str(text.trim()).map_err(|_| Failure::usage(format!("cannot parse {text:?} as a complex number")))
}

fn cmd_eval(out: &mut String, s: &[String], gamma: &[String], tol: f64) -> CmdResult {
    if !(tol > 0.0) {
        return Err(Failure::usage("tol must be positive"));
    }
    let s: Vec<Complex64> = s.iter().map(|x| parse_complex(x)).collect::<Result<_, _>>()?;
    let g: Vec<Complex64> = if gamma.is_empty() {
        vec![Complex64::new(1.0, 0.0); s.len()]
    } else {
        gamma.iter().map(|x| parse_complex(x)).collect::<Result<_, _>>()?
    };
    let result = match (s.as_slice(), g.as_slice()) {
        ([s1], [g1]) => {
            // zeta^des_1(s; g) = g^-s zeta^des_1(s; 1)
            let r = desing1(*s1)?;
            let scale = g1.powc(-s1);
            desing_core::numeric::EvalResult::new(r.value * scale, r.err_estimate * scale.norm(), r.method)
        }
        ([s1, s2], [g1, g2]) => desing2(*s1, *s2, *g1, *g2, tol)?,
        ([_] | [_, _], _) => return Err(Failure::usage("need one weight per argument")),
        _ => return Err(Failure::usage("eval takes one or two arguments")),
    };
    if result.err_estimate > tol {
        return Err(Failure(
            EXIT_TOLERANCE,
            format!("error estimate {:e} exceeds tol {tol:e}", result.err_estimate),
        ));
    }
    json_out(out, &serde_json::to_value(result).expect("results serialize"));
    Ok(())
}

fn cmd_verify(out: &mut String, suite: &str) -> CmdResult {
    let suite: Suite = suite.parse().map_err(|e: Error| Failure::usage(e.to_string()))?;
    let reports = run_suite(suite);
    for r in &reports {
        line(out, r);
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(Failure(
            EXIT_VERIFY,
            format!("{failed} of {} checks failed", reports.len()),
        ));
    }
    Ok(())
}
