//! Command-line front end: point evaluation, functional-equation
//! verification suites on seeded sample grids, critical-line zero scans with
//! a Riemann–von Mangoldt cross-check, and class-number tables.
//!
//! Output is one JSON object per line (CSV for the tabular commands on
//! request). Everything except the elapsed-time field is deterministic for
//! a fixed seed. Exit codes: 0 ok, 1 verification failure, 2 usage error,
//! 3 pole/domain/evaluation error.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use crate::characters::enumerate_characters;
use crate::critical_line::{
    count_zeros_rvm, find_zeros, hardy_z, rs_theta, xi_completed, xi_integral_residual,
};
use crate::dirichlet::{
    class_number_analytic, dirichlet_fe_residual, dirichlet_l, quadratic_fe_residual,
    reduced_forms_count, schlomilch_fe_residual,
};
use crate::epstein::{
    epstein_fe_residual, epstein_matrix_fe_residual, epstein_zeta, epstein_zeta_char,
    Characteristics, GramMatrix,
};
use crate::error::EvalError;
use crate::hurwitz::{hurwitz_formula_residual, hurwitz_zeta, ResidueClass};
use crate::lerch::{lerch_fe_residual, lerch_zeta, lipschitz_fe_residual, LerchParams};
use crate::characters::is_fundamental_discriminant;
use crate::special::gamma;
use crate::{real_pow, ComplexValue};

const DEFAULT_SEED: u64 = 0x5EED;

#[derive(Parser)]
#[command(
    name = "zetakit",
    about = "Zeta- and L-function evaluation, verification, and zero scanning"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a function at a point and print one JSON record
    Eval {
        /// hurwitz | dirichlet_l | lerch | epstein | epstein_char | z | xi | theta
        function: String,
        /// complex s, e.g. "2", "0.5+14.3i", "-1.2-0.4i"
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        /// Hurwitz/Lerch shift alpha > 0
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        /// Lerch twist lambda
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<f64>,
        /// real or complex ordinate for z / xi / theta
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        /// character modulus for dirichlet_l
        #[arg(long)]
        modulus: Option<u64>,
        /// character index in enumeration order (0 = principal)
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// symmetric positive-definite matrix, rows ';'-separated: "2,1;1,1"
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
        /// characteristic vector g, comma-separated
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        /// characteristic vector h, comma-separated
        #[arg(long, allow_hyphen_values = true)]
        h: Option<String>,
    },
    /// Run a residual suite on a seeded sample grid
    Verify {
        /// hurwitz_formula | dirichlet_fe | lerch_fe | lipschitz_fe |
        /// epstein_fe | epstein_matrix_fe | xi_integral | class_numbers
        suite: String,
        /// pass threshold for the max residual (default depends on suite)
        #[arg(long)]
        tolerance: Option<f64>,
        /// number of sampled points (default depends on suite)
        #[arg(long)]
        samples: Option<usize>,
        /// RNG seed for the sample grid
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Scan the critical line up to t-max and cross-check the zero count
    Zeros {
        #[arg(long = "t-max")]
        t_max: f64,
        /// json | csv
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Class numbers for fundamental discriminants in [d-min, d-max]
    Classnum {
        #[arg(allow_negative_numbers = true)]
        d_min: i64,
        #[arg(allow_negative_numbers = true)]
        d_max: i64,
        /// json | csv
        #[arg(long, default_value = "json")]
        format: String,
    },
}

enum Failure {
    Usage(String),
    Eval(EvalError),
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        Failure::Eval(e)
    }
}

type CmdResult = Result<i32, Failure>;

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Eval {
            function,
            s,
            alpha,
            lambda,
            t,
            modulus,
            index,
            matrix,
            g,
            h,
        } => cmd_eval(EvalArgs {
            function,
            s,
            alpha,
            lambda,
            t,
            modulus,
            index,
            matrix,
            g,
            h,
        }),
        Command::Verify {
            suite,
            tolerance,
            samples,
            seed,
        } => cmd_verify(&suite, tolerance, samples, seed),
        Command::Zeros { t_max, format } => cmd_zeros(t_max, &format),
        Command::Classnum {
            d_min,
            d_max,
            format,
        } => cmd_classnum(d_min, d_max, &format),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(Failure::Eval(e)) => {
            eprintln!("error: {e}");
            3
        }
    }
}

/// Parse "2", "-1.5", "0.5+14.3i", "2-0.7i", "3i", "-i".
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t: String = text.trim().replace(' ', "");
    let body = match t.strip_suffix('i').or_else(|| t.strip_suffix('I')) {
        None => {
            return t
                .parse::<f64>()
                .map(|re| Complex64::new(re, 0.0))
                .map_err(|_| format!("cannot parse '{text}' as a number"));
        }
        Some(body) => body,
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| matches!(bytes[j], b'+' | b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    match split {
        Some(j) => {
            let re: f64 = body[..j]
                .parse()
                .map_err(|_| format!("bad real part in '{text}'"))?;
            let im = match &body[j..] {
                "+" => 1.0,
                "-" => -1.0,
                imag => imag
                    .parse()
                    .map_err(|_| format!("bad imaginary part in '{text}'"))?,
            };
            Ok(Complex64::new(re, im))
        }
        None => {
            let im = match body {
                "" => 1.0,
                "-" => -1.0,
                imag => imag
                    .parse()
                    .map_err(|_| format!("bad imaginary part in '{text}'"))?,
            };
            Ok(Complex64::new(0.0, im))
        }
    }
}

fn parse_vector(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|e| {
            e.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad vector entry '{e}'"))
        })
        .collect()
}

fn parse_matrix(text: &str) -> Result<Vec<Vec<f64>>, String> {
    text.split(';').map(parse_vector).collect()
}

struct EvalArgs {
    function: String,
    s: Option<String>,
    alpha: Option<f64>,
    lambda: Option<f64>,
    t: Option<String>,
    modulus: Option<u64>,
    index: usize,
    matrix: Option<String>,
    g: Option<String>,
    h: Option<String>,
}

fn require<T>(opt: Option<T>, name: &str) -> Result<T, Failure> {
    opt.ok_or_else(|| Failure::Usage(format!("missing required parameter --{name}")))
}

fn usage(msg: String) -> Failure {
    Failure::Usage(msg)
}

fn cmd_eval(args: EvalArgs) -> CmdResult {
    let started = Instant::now();
    let mut params = BTreeMap::new();
    let mut record = |key: &str, value: String| params.insert(key.to_string(), value);
    if let Some(v) = &args.s {
        record("s", v.clone());
    }
    if let Some(v) = args.alpha {
        record("alpha", v.to_string());
    }
    if let Some(v) = args.lambda {
        record("lambda", v.to_string());
    }
    if let Some(v) = &args.t {
        record("t", v.clone());
    }
    if let Some(v) = args.modulus {
        record("modulus", v.to_string());
        record("index", args.index.to_string());
    }
    if let Some(v) = &args.matrix {
        record("matrix", v.clone());
    }
    if let Some(v) = &args.g {
        record("g", v.clone());
    }
    if let Some(v) = &args.h {
        record("h", v.clone());
    }

    let parse_s = |text: &Option<String>| -> Result<Complex64, Failure> {
        let raw = text
            .as_ref()
            .ok_or_else(|| usage("missing required parameter --s".into()))?;
        parse_complex(raw).map_err(usage)
    };

    let (value, err): (ComplexValue, Option<f64>) = match args.function.as_str() {
        "hurwitz" => {
            let s = parse_s(&args.s)?;
            let alpha = require(args.alpha, "alpha")?;
            let r = hurwitz_zeta(s, alpha)?;
            (r.value, Some(r.err_estimate))
        }
        "dirichlet_l" => {
            let s = parse_s(&args.s)?;
            let m = require(args.modulus, "modulus")?;
            let chars = enumerate_characters(m)?;
            let chi = chars.get(args.index).ok_or_else(|| {
                usage(format!(
                    "character index {} out of range ({} characters mod {m})",
                    args.index,
                    chars.len()
                ))
            })?;
            let r = dirichlet_l(s, chi)?;
            (r.value, Some(r.err_estimate))
        }
        "lerch" => {
            let s = parse_s(&args.s)?;
            let lambda = require(args.lambda, "lambda")?;
            let alpha = require(args.alpha, "alpha")?;
            let r = lerch_zeta(&LerchParams::new(lambda, alpha)?, s)?;
            (r.value, Some(r.err_estimate))
        }
        "epstein" | "epstein_char" => {
            let s = parse_s(&args.s)?;
            let rows = parse_matrix(&require(args.matrix.clone(), "matrix")?).map_err(usage)?;
            let q = GramMatrix::new(rows)?;
            let r = if args.function == "epstein" {
                epstein_zeta(s, &q)?
            } else {
                let g = parse_vector(&require(args.g.clone(), "g")?).map_err(usage)?;
                let h = parse_vector(&require(args.h.clone(), "h")?).map_err(usage)?;
                epstein_zeta_char(s, &q, &Characteristics::new(g, h)?)?
            };
            (r.value, Some(r.err_estimate))
        }
        "z" => {
            let t = parse_real_t(&args.t)?;
            let z = hardy_z(t)?;
            let err = hurwitz_zeta(Complex64::new(0.5, t), 1.0)?.err_estimate;
            (Complex64::new(z, 0.0), Some(err))
        }
        "xi" => {
            let t = parse_complex(
                args.t
                    .as_deref()
                    .ok_or_else(|| usage("missing required parameter --t".into()))?,
            )
            .map_err(usage)?;
            (xi_completed(t), None)
        }
        "theta" => {
            let t = parse_real_t(&args.t)?;
            (Complex64::new(rs_theta(t), 0.0), None)
        }
        other => {
            return Err(usage(format!(
                "unknown function '{other}' (expected hurwitz, dirichlet_l, lerch, epstein, epstein_char, z, xi, theta)"
            )));
        }
    };

    let line = json!({
        "command": "eval",
        "function": args.function,
        "params": params,
        "value_re": value.re,
        "value_im": value.im,
        "err_estimate": err,
        "elapsed_ms": started.elapsed().as_secs_f64() * 1e3,
    });
    println!("{line}");
    Ok(0)
}

fn parse_real_t(t: &Option<String>) -> Result<f64, Failure> {
    t.as_ref()
        .ok_or_else(|| usage("missing required parameter --t".into()))?
        .parse::<f64>()
        .map_err(|_| usage("--t must be a real number".into()))
}

struct Sample {
    label: String,
    residual: f64,
}

fn suite_defaults(suite: &str) -> Option<(f64, usize)> {
    Some(match suite {
        "hurwitz_formula" => (1e-8, 50),
        "dirichlet_fe" => (1e-8, 30),
        "lerch_fe" => (1e-7, 20),
        "lipschitz_fe" => (1e-6, 10),
        "epstein_fe" => (1e-7, 20),
        "epstein_matrix_fe" => (1e-8, 20),
        "xi_integral" => (1e-7, 10),
        "class_numbers" => (0.0, 0),
        _ => return None,
    })
}

fn cmd_verify(suite: &str, tolerance: Option<f64>, samples: Option<usize>, seed: u64) -> CmdResult {
    let (default_tol, default_n) = suite_defaults(suite)
        .ok_or_else(|| usage(format!("unknown suite '{suite}'")))?;
    let tol = tolerance.unwrap_or(default_tol);
    let n = samples.unwrap_or(default_n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut note = None;
    let samples: Vec<Sample> = match suite {
        "hurwitz_formula" => suite_hurwitz_formula(&mut rng, n)?,
        "dirichlet_fe" => suite_dirichlet_fe(&mut rng, n)?,
        "lerch_fe" => suite_lerch_fe(&mut rng, n)?,
        "lipschitz_fe" => suite_lipschitz_fe(&mut rng, n)?,
        "epstein_fe" => suite_epstein_fe(&mut rng, n)?,
        "epstein_matrix_fe" => {
            let (samples, adjudication) = suite_epstein_matrix_fe(&mut rng, n)?;
            note = Some(adjudication);
            samples
        }
        "xi_integral" => suite_xi_integral(&mut rng, n)?,
        "class_numbers" => suite_class_numbers()?,
        _ => unreachable!("validated above"),
    };

    let mut worst: Option<&Sample> = None;
    for sample in &samples {
        println!(
            "{}",
            json!({"suite": suite, "params": sample.label, "residual": sample.residual})
        );
        if worst.map_or(true, |w| sample.residual > w.residual) {
            worst = Some(sample);
        }
    }
    let max_residual = worst.map(|w| w.residual).unwrap_or(0.0);
    let pass = max_residual <= tol;
    let mut summary = json!({
        "command": "verify",
        "suite": suite,
        "samples": samples.len(),
        "max_residual": max_residual,
        "tolerance": tol,
        "pass": pass,
        "worst": worst.map(|w| w.label.clone()),
    });
    if let Some(text) = note {
        summary["adjudication"] = json!(text);
    }
    println!("{summary}");
    Ok(if pass { 0 } else { 1 })
}

/// Distance from s to the nearest point of a finite pole set.
fn pole_distance(s: Complex64, poles: &[f64]) -> f64 {
    poles
        .iter()
        .map(|&p| (s - Complex64::new(p, 0.0)).norm())
        .fold(f64::INFINITY, f64::min)
}

fn suite_hurwitz_formula(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<Sample>, Failure> {
    let poles = [1.0, 0.0, -1.0, -2.0, -3.0, -4.0, -5.0];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let m = rng.gen_range(2..=12u64);
        let a = rng.gen_range(1..=m);
        let s = loop {
            let s = Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            if pole_distance(s, &poles) > 0.2 {
                break s;
            }
        };
        let residual = hurwitz_formula_residual(s, ResidueClass::new(a, m)?)?;
        out.push(Sample {
            label: format!("s={s} a={a} m={m}"),
            residual,
        });
    }
    Ok(out)
}

fn suite_dirichlet_fe(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<Sample>, Failure> {
    let mut primitive = Vec::new();
    for m in 3..=40u64 {
        for (idx, chi) in enumerate_characters(m)?.into_iter().enumerate() {
            if chi.is_primitive() {
                primitive.push((m, idx, chi));
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let (m, idx, chi) = &primitive[rng.gen_range(0..primitive.len())];
        let sigma = rng.gen_range(-2.0..3.0);
        let t = (0.25 + rng.gen_range(0.0..3.75)) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let s = Complex64::new(sigma, t);
        let residual = dirichlet_fe_residual(s, chi)?;
        out.push(Sample {
            label: format!("s={s} chi=({m},{idx})"),
            residual,
        });
    }
    // fixed companions: the Schlömilch mod-4 sine form and the quadratic
    // functional equation for the first few fundamental discriminants
    for s in [Complex64::new(0.3, 1.2), Complex64::new(0.7, -2.0)] {
        out.push(Sample {
            label: format!("schlomilch s={s}"),
            residual: schlomilch_fe_residual(s)?,
        });
        for d in [5, 13, 17] {
            out.push(Sample {
                label: format!("quadratic s={s} D={d}"),
                residual: quadratic_fe_residual(s, d)?,
            });
        }
    }
    Ok(out)
}

fn suite_lerch_fe(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<Sample>, Failure> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let lambda = rng.gen_range(0.05..0.95);
        let alpha = rng.gen_range(0.05..0.95);
        let s = Complex64::new(rng.gen_range(0.05..0.95), rng.gen_range(-2.0..2.0));
        let residual = lerch_fe_residual(&LerchParams::new(lambda, alpha)?, s)?;
        out.push(Sample {
            label: format!("lambda={lambda:.6} alpha={alpha:.6} s={s}"),
            residual,
        });
    }
    Ok(out)
}

fn suite_lipschitz_fe(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<Sample>, Failure> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let u = rng.gen_range(0.05..0.95);
        let v = rng.gen_range(0.05..0.95);
        let s = Complex64::new(rng.gen_range(0.1..0.9), rng.gen_range(-1.5..1.5));
        let residual = lipschitz_fe_residual(u, v, s)?;
        out.push(Sample {
            label: format!("u={u:.6} v={v:.6} s={s}"),
            residual,
        });
    }
    Ok(out)
}

/// Seeded well-conditioned SPD matrix Q = L·Lᵀ from a random lower factor.
fn random_spd(rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let l00: f64 = rng.gen_range(0.8..1.5);
    let l10: f64 = rng.gen_range(-0.7..0.7);
    let l11: f64 = rng.gen_range(0.8..1.5);
    vec![
        vec![l00 * l00, l00 * l10],
        vec![l00 * l10, l10 * l10 + l11 * l11],
    ]
}

fn suite_epstein_fe(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<Sample>, Failure> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let q = GramMatrix::new(random_spd(rng))?;
        let ch = Characteristics::new(
            vec![rng.gen_range(0.1..0.9), rng.gen_range(0.1..0.9)],
            vec![rng.gen_range(0.1..0.9), rng.gen_range(0.1..0.9)],
        )?;
        let t = (0.3 + rng.gen_range(0.0..2.2)) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let s = Complex64::new(rng.gen_range(0.5..1.5), t);
        let residual = epstein_fe_residual(s, &q, &ch)?;
        out.push(Sample {
            label: format!(
                "s={s} q=[{:.4},{:.4};{:.4},{:.4}] g=({:.3},{:.3}) h=({:.3},{:.3})",
                q.entry(0, 0),
                q.entry(0, 1),
                q.entry(1, 0),
                q.entry(1, 1),
                ch.g[0],
                ch.g[1],
                ch.h[0],
                ch.h[1]
            ),
            residual,
        });
    }
    Ok(out)
}

fn suite_epstein_matrix_fe(
    rng: &mut ChaCha8Rng,
    n: usize,
) -> Result<(Vec<Sample>, String), Failure> {
    let mut out = Vec::with_capacity(n);
    let mut max_half = 0.0f64;
    let mut max_one = 0.0f64;
    for _ in 0..n {
        let q = GramMatrix::new(random_spd(rng))?;
        let t = (0.3 + rng.gen_range(0.0..1.7)) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let s = Complex64::new(rng.gen_range(0.25..0.75), t);
        let residual = epstein_matrix_fe_residual(s, &q)?;
        // the printed variant with determinant exponent -1, rebuilt from the
        // public pieces, for the adjudication note
        let lhs = real_pow(PI, -s) * gamma(s)? * epstein_zeta(s, &q)?.value;
        let rhs = q.det().powf(-1.0)
            * real_pow(PI, s - 1.0)
            * gamma(Complex64::new(1.0, 0.0) - s)?
            * epstein_zeta(Complex64::new(1.0, 0.0) - s, &q.inverse_form())?.value;
        let residual_one = (lhs - rhs).norm();
        max_half = max_half.max(residual);
        max_one = max_one.max(residual_one);
        out.push(Sample {
            label: format!(
                "s={s} q=[{:.4},{:.4};{:.4},{:.4}]",
                q.entry(0, 0),
                q.entry(0, 1),
                q.entry(1, 0),
                q.entry(1, 1)
            ),
            residual,
        });
    }
    let note = format!(
        "det exponent -1/2 max residual {max_half:.3e}; printed exponent -1 max residual {max_one:.3e}; -1/2 selected"
    );
    Ok((out, note))
}

fn suite_xi_integral(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<Sample>, Failure> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let t = rng.gen_range(0.0..20.0);
        let residual = xi_integral_residual(t)?;
        out.push(Sample {
            label: format!("t={t:.6}"),
            residual,
        });
    }
    Ok(out)
}

fn suite_class_numbers() -> Result<Vec<Sample>, Failure> {
    let mut out = Vec::new();
    for d in -199..0i64 {
        if !is_fundamental_discriminant(d) {
            continue;
        }
        let analytic = class_number_analytic(d)?;
        let forms = reduced_forms_count(d)?;
        out.push(Sample {
            label: format!("d={d} analytic={analytic} forms={forms}"),
            residual: analytic.abs_diff(forms) as f64,
        });
    }
    Ok(out)
}

fn cmd_zeros(t_max: f64, format: &str) -> CmdResult {
    if !(t_max > 0.0 && t_max <= 500.0) {
        return Err(usage(format!("t-max must lie in (0, 500], got {t_max}")));
    }
    if format != "json" && format != "csv" {
        return Err(usage(format!("format must be json or csv, got '{format}'")));
    }
    let zeros = find_zeros(0.0, t_max)?;
    if format == "csv" {
        println!("ordinate,bracket_lo,bracket_hi,refined");
        for z in &zeros {
            println!(
                "{:.12},{:.12},{:.12},{}",
                z.ordinate, z.bracket.0, z.bracket.1, z.refined
            );
        }
    } else {
        for z in &zeros {
            println!(
                "{}",
                json!({
                    "ordinate": z.ordinate,
                    "bracket_lo": z.bracket.0,
                    "bracket_hi": z.bracket.1,
                    "refined": z.refined,
                })
            );
        }
    }
    let census = zeros.len() as u64;
    let rvm = count_zeros_rvm(t_max)?;
    let ok = census == rvm;
    println!("RvM: {rvm}, census: {census}, {}", if ok { "OK" } else { "MISMATCH" });
    Ok(if ok { 0 } else { 1 })
}

fn cmd_classnum(d_min: i64, d_max: i64, format: &str) -> CmdResult {
    if !(d_min <= d_max && d_max < 0) {
        return Err(usage(format!(
            "need d_min <= d_max < 0, got {d_min}, {d_max}"
        )));
    }
    if format != "json" && format != "csv" {
        return Err(usage(format!("format must be json or csv, got '{format}'")));
    }
    if format == "csv" {
        println!("d,analytic,forms,ok");
    }
    let mut mismatches = 0u64;
    for d in d_min..=d_max {
        if !is_fundamental_discriminant(d) {
            continue;
        }
        let analytic = class_number_analytic(d)?;
        let forms = reduced_forms_count(d)?;
        let ok = analytic == forms;
        if !ok {
            mismatches += 1;
        }
        if format == "csv" {
            println!("{d},{analytic},{forms},{ok}");
        } else {
            println!(
                "{}",
                json!({"d": d, "analytic": analytic, "forms": forms, "ok": ok})
            );
        }
    }
    Ok(if mismatches == 0 { 0 } else { 1 })
}

// parse helpers are exercised through the binary in the integration tests;
// unit-test the complex literal grammar here where the grammar lives
#[cfg(test)]
mod tests {
    use super::parse_complex;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("2").unwrap(), num_complex::Complex64::new(2.0, 0.0));
        assert_eq!(
            parse_complex("-1.5").unwrap(),
            num_complex::Complex64::new(-1.5, 0.0)
        );
        assert_eq!(
            parse_complex("0.5+14.3i").unwrap(),
            num_complex::Complex64::new(0.5, 14.3)
        );
        assert_eq!(
            parse_complex("2-0.7i").unwrap(),
            num_complex::Complex64::new(2.0, -0.7)
        );
        assert_eq!(parse_complex("3i").unwrap(), num_complex::Complex64::new(0.0, 3.0));
        assert_eq!(parse_complex("-i").unwrap(), num_complex::Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("i").unwrap(), num_complex::Complex64::new(0.0, 1.0));
        assert_eq!(
            parse_complex("1e-3-2.5e-1i").unwrap(),
            num_complex::Complex64::new(1e-3, -0.25)
        );
        assert_eq!(
            parse_complex("2+i").unwrap(),
            num_complex::Complex64::new(2.0, 1.0)
        );
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1+2j").is_err());
    }
}
