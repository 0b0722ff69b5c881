//! `morrey`: command-line front end for morrey-core.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use morrey_core::format::{from_json, to_json};
use morrey_core::{
    build_f, build_g, decreasing_rearrangement, divergence_lower_bound, equimeasurable,
    f_prefix_ratio, g_ratio_upper_bound, morrey_norm_exact, morrey_norm_grid, validate_params,
    CounterexampleParams, MorreyParams, StepFunction,
};

#[derive(Parser)]
#[command(
    name = "morrey",
    version,
    about = "Morrey-space functionals of step functions on the unit circle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Morrey norm of a step function, as a one-row CSV.
    Norm(NormArgs),
    /// Decreasing rearrangement of a step function.
    Rearrange(RearrangeArgs),
    /// Prints "true" (exit 0) or "false" (exit 1).
    Equimeasurable(EquimeasurableArgs),
    /// Certified reproduction of the equimeasurable pair f, g.
    Counterexample(CounterexampleArgs),
    /// Writes the truncated f or g of the pair as a step function file.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Exact,
    Grid,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    F,
    G,
}

#[derive(Args)]
struct NormArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    lambda: f64,
    #[arg(long, value_enum, default_value = "exact")]
    method: Method,
    #[arg(long, default_value_t = 4096)]
    refinement: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RearrangeArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EquimeasurableArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    input2: PathBuf,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    p: f64,
    #[arg(long)]
    lambda: f64,
    #[arg(long)]
    eps: f64,
    /// Truncation index of the materialized functions.
    #[arg(long = "N", default_value_t = 1000)]
    n: usize,
}

impl PairArgs {
    fn params(&self) -> Result<CounterexampleParams> {
        Ok(validate_params(self.p, self.lambda, self.eps)?)
    }
}

#[derive(Args)]
struct CounterexampleArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Comma-separated arc lengths t for the prefix arcs (0, t).
    #[arg(long, value_delimiter = ',', default_value = "1e-2,1e-3,1e-4")]
    t_grid: Vec<f64>,
    #[arg(long, default_value_t = 1e-8)]
    tail_tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    which: Which,
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// `%.17g`-style decimal: 17 significant digits, trailing zeros trimmed,
/// integral values keep a ".0".
fn fmt_num(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0.0".into()
        } else {
            "0.0".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = mantissa
        .strip_prefix('-')
        .map_or(("", mantissa), |m| ("-", m));
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let body = if (-5..17).contains(&exp) {
        let point = exp + 1;
        let mut s = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), digits)
        } else {
            let point = point as usize;
            format!("{}.{}", &digits[..point], &digits[point..])
        };
        trim_fraction(&mut s);
        s
    } else {
        let mut m = format!("{}.{}", &digits[..1], &digits[1..]);
        trim_fraction(&mut m);
        format!("{m}e{exp}")
    };
    format!("{sign}{body}")
}

fn trim_fraction(s: &mut String) {
    while s.ends_with('0') {
        s.pop();
    }
    if s.ends_with('.') {
        s.push('0');
    }
}

fn read_function(path: &Path) -> Result<StepFunction> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    from_json(&text).with_context(|| format!("cannot load {}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_norm(args: &NormArgs) -> Result<bool> {
    let f = read_function(&args.input)?;
    let params = MorreyParams::new(args.p, args.lambda)?;
    let mut csv = String::from("norm,ratio_sup,arc_start,arc_length\n");
    match args.method {
        Method::Exact => {
            let result = morrey_norm_exact(&f, &params);
            writeln!(
                csv,
                "{},{},{},{}",
                fmt_num(result.value),
                fmt_num(result.ratio_sup),
                fmt_num(result.argmax.start()),
                fmt_num(result.argmax.length())
            )?;
        }
        Method::Grid => {
            // The grid oracle reports no maximizing arc.
            let norm = morrey_norm_grid(&f, &params, args.refinement)?;
            writeln!(csv, "{},{},,", fmt_num(norm), fmt_num(norm.powf(args.p)))?;
        }
    }
    emit(&csv, args.out.as_deref())?;
    Ok(true)
}

fn run_rearrange(args: &RearrangeArgs) -> Result<bool> {
    let f = read_function(&args.input)?;
    emit(&to_json(&decreasing_rearrangement(&f)), args.out.as_deref())?;
    Ok(true)
}

fn run_equimeasurable(args: &EquimeasurableArgs) -> Result<bool> {
    let f = read_function(&args.input)?;
    let g = read_function(&args.input2)?;
    let verdict = equimeasurable(&f, &g, 0.0);
    println!("{verdict}");
    Ok(verdict)
}

/// 100, 1000, ... below `n`, followed by `n` itself.
fn n_schedule(n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = std::iter::successors(Some(100usize), |k| k.checked_mul(10))
        .take_while(|k| *k < n)
        .collect();
    out.push(n);
    out
}

fn run_counterexample(args: &CounterexampleArgs) -> Result<bool> {
    let params = args.pair.params()?;
    let n = args.pair.n;
    let f = build_f(&params, n)?;
    let g = build_g(&params, n)?;
    let mut ok = equimeasurable(&f, &g, 0.0);
    let mut csv = format!("equimeasurable,{ok}\n\nt,ratio_lo,ratio_hi,paper_bound\n");

    for &t in &args.t_grid {
        let ratio = f_prefix_ratio(&params, t, args.tail_tol)?;
        let bound = divergence_lower_bound(&params, t)?;
        ok &= ratio.hi >= bound;
        writeln!(
            csv,
            "{},{},{},{}",
            fmt_num(t),
            fmt_num(ratio.lo),
            fmt_num(ratio.hi),
            fmt_num(bound)
        )?;
    }

    csv.push_str("\nN,g_ratio_sup,paper_g_bound\n");
    let g_bound = g_ratio_upper_bound(&params);
    let morrey = params.morrey();
    for k in n_schedule(n) {
        let sup = morrey_norm_exact(&build_g(&params, k)?, &morrey).ratio_sup;
        ok &= sup <= g_bound;
        writeln!(csv, "{k},{},{}", fmt_num(sup), fmt_num(g_bound))?;
    }
    emit(&csv, args.out.as_deref())?;
    Ok(ok)
}

fn run_generate(args: &GenerateArgs) -> Result<bool> {
    let params = args.pair.params()?;
    let f = match args.which {
        Which::F => build_f(&params, args.pair.n)?,
        Which::G => build_g(&params, args.pair.n)?,
    };
    emit(&to_json(&f), args.out.as_deref())?;
    Ok(true)
}

/// Names the library error variant, e.g. `EpsOutOfRange`, for diagnostics.
fn error_kind(e: &anyhow::Error) -> Option<String> {
    let core = e
        .chain()
        .find_map(|c| c.downcast_ref::<morrey_core::Error>())?;
    let debug = format!("{core:?}");
    Some(
        debug
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric())
            .collect(),
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Norm(a) => run_norm(a),
        Command::Rearrange(a) => run_rearrange(a),
        Command::Equimeasurable(a) => run_equimeasurable(a),
        Command::Counterexample(a) => run_counterexample(a),
        Command::Generate(a) => run_generate(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            match error_kind(&e) {
                Some(kind) => eprintln!("error [{kind}]: {e:#}"),
                None => eprintln!("error: {e:#}"),
            }
            ExitCode::from(2)
        }
    }
}
