//! `hw` — exact Weingarten calculus on the unitary group from the command
//! line. Subcommands cover Weingarten values and expansions, entry-monomial
//! integrals, word moments, covariances, noncrossing partitions, free
//! cumulants, Itzykson-Zuber cumulants (exact and limiting), the
//! Harish-Chandra determinant, Monte Carlo verification, and reproduction of
//! the reference tables.
//!
//! Output is JSON by default (`--format text` for indented lines). Exit code
//! 0 on success, 1 on a domain error (single-line diagnostic on stderr), 2 on
//! a usage error.

mod cache;
mod output;

use std::collections::HashMap;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use hw_core::catalan::moeb_perm;
use hw_core::error::HwError;
use hw_core::freecum::{free_cumulant, r_transform_coefficients, MomentSequence};
use hw_core::gamma::{gamma_transitive, relative_cumulant_wg, schaeffer_leading, GammaContext};
use hw_core::hciz::{hciz_determinant, iz_series_vs_determinant};
use hw_core::iz::{
    centered, evaluate_at_spectra, iz_cumulant_exact, iz_cumulant_limit,
    iz_cumulant_limit_from_exact, IzLimit,
};
use hw_core::momentpoly::{y_monomial, Monomial, MomentPolynomial};
use hw_core::ncpart::{enumerate_nc, NonCrossingPartition};
use hw_core::perm::Permutation;
use hw_core::weingarten::{CoefficientMethod, WgContext};
use hw_core::word::{
    exact_covariance, monomial_integral, polynomial_degree, word_expectation, MonomialSpec, Word,
};
use hw_core::{IntegerPartition, SetPartition};
use hw_mc::{estimate_word, variance_decay_fit, CMat, SamplerConfig, C64};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExpandMethod {
    Enumeration,
    Expansion,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LimitPath {
    Gamma,
    Exact,
    Both,
}

#[derive(Parser)]
#[command(
    name = "hw",
    version,
    about = "Exact Haar-unitary integration: Weingarten calculus, cumulant lattices, IZ asymptotics"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads for sampling-heavy subcommands.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weingarten function of a cycle type, at integer d or symbolically.
    Wg {
        /// Cycle type as comma-separated parts, e.g. 2,1
        #[arg(long, value_name = "PARTS")]
        cycle_type: String,
        /// Evaluate exactly at this dimension (requires d >= q).
        #[arg(long, conflicts_with = "symbolic")]
        d: Option<i64>,
        /// Emit the reduced rational function of d.
        #[arg(long)]
        symbolic: bool,
    },
    /// Laurent coefficients of Wg by factorization counts and/or expansion.
    WgExpand {
        #[arg(long, value_name = "PARTS")]
        cycle_type: String,
        /// Highest order l (coefficient of d^{-q-l}).
        #[arg(long, default_value_t = 6)]
        max_order: usize,
        #[arg(long, value_enum, default_value = "both")]
        method: ExpandMethod,
    },
    /// Entry-monomial integral over U(d).
    Integrate {
        #[arg(long)]
        d: i64,
        /// Row indices of the unconjugated factors, e.g. 1,1
        #[arg(long)]
        i: String,
        /// Column indices of the unconjugated factors.
        #[arg(long)]
        j: String,
        /// Row indices of the conjugated factors.
        #[arg(long)]
        ip: String,
        /// Column indices of the conjugated factors.
        #[arg(long)]
        jp: String,
    },
    /// Expected word of Haar unitaries and constants, symbolic or at d.
    Word {
        /// e.g. "U1 V1 U1* V1*" or "(U1 W)(U1* W)"
        word: String,
        #[arg(long, conflicts_with = "d")]
        symbolic: bool,
        #[arg(long)]
        d: Option<i64>,
    },
    /// E(w1 w2) - E(w1) E(w2) symbolically, with its degree in d.
    Covariance { word1: String, word2: String },
    /// Noncrossing partitions: enumerate, or complement one partition.
    Nc {
        #[arg(long)]
        q: Option<usize>,
        /// Kreweras complement of this partition, e.g. "1 2|3 4"
        #[arg(long, value_name = "PARTITION")]
        kreweras: Option<String>,
        #[arg(long, requires = "kreweras")]
        size: Option<usize>,
    },
    /// Free cumulant k_q from a moment sequence (rationals or symbolic).
    FreeCumulant {
        #[arg(long)]
        q: usize,
        /// Comma-separated rationals m1,m2,...; omit for symbolic y-moments.
        #[arg(long)]
        moments: Option<String>,
        /// Emit the full R-transform coefficient list k_1..k_q.
        #[arg(long)]
        r_transform: bool,
    },
    /// Large-d limit of d^-2 C_q(d^2 tr A)/(q-1)!.
    IzLimit {
        #[arg(long)]
        q: u32,
        /// Drop terms containing x1 or y1.
        #[arg(long)]
        centered: bool,
        /// Computation path; `both` verifies the two paths agree.
        #[arg(long, value_enum, default_value = "gamma")]
        path: LimitPath,
    },
    /// Exact normalized cumulant at integer spectra and dimension.
    IzExact {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        d: i64,
        /// Eigenvalues of X, e.g. 1,2,3 (must list d values).
        #[arg(long)]
        x: String,
        /// Eigenvalues of Y.
        #[arg(long)]
        y: String,
    },
    /// Harish-Chandra determinant evaluation of the IZ integral.
    Hciz {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Real part of z.
        #[arg(long, default_value_t = 0.0)]
        z: f64,
        /// Imaginary part of z.
        #[arg(long, default_value_t = 0.0)]
        zim: f64,
        /// Compare log det against the exact cumulant series of this order.
        #[arg(long)]
        series_order: Option<u32>,
    },
    /// Monte Carlo estimate of a word with a z-score against the exact value.
    McVerify {
        #[arg(long)]
        word: String,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 20_000)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exact reference "p/q"; computed automatically for constant-free words.
        #[arg(long)]
        exact: Option<String>,
        /// Diagonal constant matrices, e.g. --constant W=1,2,3 (repeatable).
        #[arg(long = "constant", value_name = "NAME=ENTRIES")]
        constants: Vec<String>,
        /// Fit the variance decay over these dimensions instead, e.g. 3,5,8,12
        #[arg(long)]
        decay_dims: Option<String>,
    },
    /// Transitive factorization coefficient gamma_{sigma,Pi,l}.
    Gamma {
        /// Permutation in cycle notation, e.g. "(1 2)".
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        q: usize,
        /// Partition Pi >= Pi_sigma, e.g. "1 2|3"; defaults to 1_q.
        #[arg(long)]
        pi: Option<String>,
        #[arg(long)]
        l: usize,
        /// Also report the closed-form leading value when l is minimal.
        #[arg(long)]
        closed_form: bool,
    },
    /// Reproduce the reference tables (word moments, Wg values, IZ limits).
    Tables {
        /// Highest cumulant order for the IZ table (2..=6 fast, 7 slow).
        #[arg(long, default_value_t = 5)]
        max_q: u32,
    },
}

fn parse_u32_list(text: &str) -> Result<Vec<u32>, HwError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| HwError::Parse(format!("bad integer {t:?}")))
        })
        .collect()
}

fn parse_usize_list(text: &str) -> Result<Vec<usize>, HwError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| HwError::Parse(format!("bad index {t:?}")))
        })
        .collect()
}

fn parse_i64_list(text: &str) -> Result<Vec<i64>, HwError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| HwError::Parse(format!("bad integer {t:?}")))
        })
        .collect()
}

fn parse_rational(text: &str) -> Result<BigRational, HwError> {
    BigRational::from_str(text.trim()).map_err(|_| HwError::Parse(format!("bad rational {text:?}")))
}

fn parse_rational_list(text: &str) -> Result<Vec<BigRational>, HwError> {
    let text = text.trim();
    if text.starts_with('[') {
        // JSON array of rationals, each a string "p/q" or a bare integer
        let arr: Value = serde_json::from_str(text)
            .map_err(|e| HwError::Parse(format!("bad JSON array: {e}")))?;
        let items = arr
            .as_array()
            .ok_or_else(|| HwError::Parse("expected a JSON array".into()))?;
        return items
            .iter()
            .map(|v| match v {
                Value::String(s) => parse_rational(s),
                Value::Number(n) => parse_rational(&n.to_string()),
                _ => Err(HwError::Parse("array entries must be rationals".into())),
            })
            .collect();
    }
    text.split(',').map(parse_rational).collect()
}

fn parse_cycle_type(text: &str) -> Result<IntegerPartition, HwError> {
    IntegerPartition::from_unsorted(parse_u32_list(text)?)
}

fn parse_f64_list(text: &str) -> Result<Vec<f64>, HwError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| HwError::Parse(format!("bad number {t:?}")))
        })
        .collect()
}

/// "NAME=1,2,3" -> diagonal complex matrix.
fn parse_constants(specs: &[String]) -> Result<HashMap<String, CMat>, HwError> {
    let mut out = HashMap::new();
    for spec in specs {
        let (name, entries) = spec
            .split_once('=')
            .ok_or_else(|| HwError::Parse(format!("expected NAME=ENTRIES, got {spec:?}")))?;
        let diag = parse_f64_list(entries)?;
        let d = diag.len();
        out.insert(
            name.trim().to_string(),
            CMat::from_fn(d, |i, j| {
                if i == j {
                    C64::new(diag[i], 0.0)
                } else {
                    C64::new(0.0, 0.0)
                }
            }),
        );
    }
    Ok(out)
}

fn run(cli: &Cli) -> Result<Value, HwError> {
    let mut wg = WgContext::new();
    cache::load_into(&mut wg);
    let mut gc = GammaContext::new();
    let value = dispatch(cli, &mut wg, &mut gc)?;
    cache::save_from(&mut wg);
    Ok(value)
}

fn dispatch(cli: &Cli, wg: &mut WgContext, gc: &mut GammaContext) -> Result<Value, HwError> {
    match &cli.command {
        Command::Wg {
            cycle_type,
            d,
            symbolic,
        } => {
            let ctype = parse_cycle_type(cycle_type)?;
            if *symbolic || d.is_none() {
                Ok(output::ratfun_value(&wg.wg_ratfun_by_type(&ctype)?))
            } else {
                let d = d.unwrap();
                let v = wg.wg_by_type(&ctype, d)?;
                Ok(json!({
                    "cycle_type": output::int_array(ctype.parts()),
                    "d": d,
                    "value": v.to_string(),
                }))
            }
        }
        Command::WgExpand {
            cycle_type,
            max_order,
            method,
        } => {
            let ctype = parse_cycle_type(cycle_type)?;
            let sigma = Permutation::class_representative(&ctype);
            let q = sigma.degree();
            let mut enums = Vec::new();
            let mut exps = Vec::new();
            for l in 0..=*max_order {
                if *method != ExpandMethod::Expansion {
                    enums.push((
                        l,
                        wg.laurent_coefficient(&sigma, l, CoefficientMethod::Enumeration)?,
                    ));
                }
                if *method != ExpandMethod::Enumeration {
                    exps.push((
                        l,
                        wg.laurent_coefficient(&sigma, l, CoefficientMethod::Expansion)?,
                    ));
                }
            }
            let mut map = Map::new();
            map.insert("cycle_type".into(), output::int_array(ctype.parts()));
            map.insert("q".into(), json!(q));
            map.insert(
                "moeb".into(),
                Value::String(moeb_perm(&sigma).to_string()),
            );
            if !enums.is_empty() {
                map.insert("enumeration".into(), output::coefficient_list(&enums));
            }
            if !exps.is_empty() {
                map.insert("expansion".into(), output::coefficient_list(&exps));
            }
            if *method == ExpandMethod::Both && enums != exps {
                return Err(HwError::Invalid(
                    "enumeration and expansion coefficients disagree".into(),
                ));
            }
            Ok(Value::Object(map))
        }
        Command::Integrate { d, i, j, ip, jp } => {
            let spec = MonomialSpec {
                d: *d,
                i: parse_usize_list(i)?,
                j: parse_usize_list(j)?,
                i_prime: parse_usize_list(ip)?,
                j_prime: parse_usize_list(jp)?,
            };
            let v = monomial_integral(wg, &spec)?;
            Ok(json!({"d": d, "value": v.to_string()}))
        }
        Command::Word { word, symbolic, d } => {
            let w = Word::parse(word)?;
            let poly = word_expectation(wg, &w)?;
            if let Some(d) = d {
                if poly
                    .terms()
                    .any(|(m, _)| !m.is_unit())
                {
                    return Err(HwError::Invalid(
                        "numeric evaluation needs a constant-free word; use --symbolic".into(),
                    ));
                }
                let v = poly.coefficient(&Monomial::unit()).eval(*d)?;
                return Ok(json!({"word": w.to_string(), "d": d, "value": v.to_string()}));
            }
            let _ = symbolic;
            // constant-free results print as a bare rational function string
            if poly.is_zero() {
                return Ok(Value::String("0".into()));
            }
            if poly.num_terms() == 1 {
                if let Some((m, c)) = poly.terms().next() {
                    if m.is_unit() {
                        return Ok(Value::String(c.to_string()));
                    }
                }
            }
            Ok(output::word_polynomial(&poly))
        }
        Command::Covariance { word1, word2 } => {
            let w1 = Word::parse(word1)?;
            let w2 = Word::parse(word2)?;
            let cov = exact_covariance(wg, &w1, &w2)?;
            let degree = polynomial_degree(&cov);
            Ok(json!({
                "degree": degree,
                "covariance": output::word_polynomial(&cov),
            }))
        }
        Command::Nc { q, kreweras, size } => {
            if let Some(text) = kreweras {
                let q = size.ok_or_else(|| {
                    HwError::Parse("--kreweras needs --size for the ground set".into())
                })?;
                let pi = NonCrossingPartition::new(SetPartition::parse(q, text)?)?;
                let k = pi.kreweras();
                return Ok(json!({
                    "input": pi.to_string(),
                    "kreweras": k.to_string(),
                    "geodesic": pi.geodesic_permutation().to_string(),
                }));
            }
            let q = q.ok_or_else(|| HwError::Parse("nc needs --q or --kreweras".into()))?;
            let items = enumerate_nc(q)?;
            Ok(json!({
                "q": q,
                "count": items.len(),
                "partitions": items.iter().map(|p| Value::String(p.to_string())).collect::<Vec<_>>(),
            }))
        }
        Command::FreeCumulant {
            q,
            moments,
            r_transform,
        } => match moments {
            Some(text) => {
                let m = MomentSequence(parse_rational_list(text)?);
                if *r_transform {
                    let ks = r_transform_coefficients(&m, *q)?;
                    Ok(json!({
                        "q": q,
                        "coefficients": ks.iter().map(|k| Value::String(k.to_string())).collect::<Vec<_>>(),
                    }))
                } else {
                    let k = free_cumulant(*q, &m)?;
                    Ok(json!({"q": q, "value": k.to_string()}))
                }
            }
            None => {
                let m: MomentSequence<IzLimit> = MomentSequence(
                    (1..=*q as u32)
                        .map(|k| {
                            MomentPolynomial::monomial(
                                y_monomial(&[k]),
                                BigRational::from_integer(1.into()),
                            )
                        })
                        .collect(),
                );
                let k = free_cumulant(*q, &m)?;
                Ok(output::xy_polynomial(&k))
            }
        },
        Command::IzLimit { q, centered: c, path } => {
            let poly = match path {
                LimitPath::Gamma => iz_cumulant_limit(wg, gc, *q)?,
                LimitPath::Exact => iz_cumulant_limit_from_exact(wg, gc, *q)?,
                LimitPath::Both => {
                    let a = iz_cumulant_limit(wg, gc, *q)?;
                    let b = iz_cumulant_limit_from_exact(wg, gc, *q)?;
                    if a != b {
                        return Err(HwError::Invalid(
                            "gamma and exact limit paths disagree".into(),
                        ));
                    }
                    a
                }
            };
            let poly = if *c { centered(&poly) } else { poly };
            Ok(output::xy_polynomial(&poly))
        }
        Command::IzExact { q, d, x, y } => {
            let poly = iz_cumulant_exact(wg, gc, *q)?;
            let xs = parse_rational_list(x)?;
            let ys = parse_rational_list(y)?;
            let v = evaluate_at_spectra(&poly, &xs, &ys, *d)?;
            Ok(json!({"q": q, "d": d, "value": v.to_string()}))
        }
        Command::Hciz {
            d,
            x,
            y,
            z,
            zim,
            series_order,
        } => {
            let xs = parse_f64_list(x)?;
            let ys = parse_f64_list(y)?;
            let zz = Complex64::new(*z, *zim);
            let v = hciz_determinant(&xs, &ys, zz, *d)?;
            let mut map = Map::new();
            map.insert("d".into(), json!(d));
            map.insert("z_re".into(), json!(z));
            map.insert("z_im".into(), json!(zim));
            map.insert("value_re".into(), json!(v.re));
            map.insert("value_im".into(), json!(v.im));
            if let Some(order) = series_order {
                let xi = parse_i64_list(x)?;
                let yi = parse_i64_list(y)?;
                let report =
                    iz_series_vs_determinant(wg, gc, &xi, &yi, *d, &[*z], *order)?;
                map.insert("series_order".into(), json!(order));
                map.insert("residual".into(), json!(report.max_residual));
            }
            Ok(Value::Object(map))
        }
        Command::McVerify {
            word,
            d,
            n,
            seed,
            exact,
            constants,
            decay_dims,
        } => {
            let w = Word::parse(word)?;
            let mats = parse_constants(constants)?;
            if let Some(dims) = decay_dims {
                let dims = parse_usize_list(dims)?;
                let fit = variance_decay_fit(&w, |_| mats.clone(), &dims, *seed, *n, cli.threads)?;
                return Ok(json!({
                    "word": w.to_string(),
                    "dims": fit.dims,
                    "variances": fit.variances,
                    "slope": fit.slope,
                }));
            }
            let exact_value: Option<Complex64> = match exact {
                Some(text) => to_c64(&parse_rational(text)?),
                None if constants.is_empty() => {
                    let poly = word_expectation(wg, &w)?;
                    if poly.is_zero() {
                        Some(Complex64::new(0.0, 0.0))
                    } else if poly.num_terms() == 1 {
                        poly.terms().next().and_then(|(m, c)| {
                            m.is_unit().then(|| to_c64(&c.eval(*d as i64).ok()?)).flatten()
                        })
                    } else {
                        None
                    }
                }
                None => None,
            };
            let cfg = SamplerConfig {
                d: *d,
                seed: *seed,
                samples: *n,
            };
            let report = estimate_word(&w, &mats, &cfg, cli.threads, exact_value)?;
            let mut map = Map::new();
            map.insert("word".into(), json!(w.to_string()));
            map.insert("d".into(), json!(d));
            map.insert("samples".into(), json!(report.samples));
            map.insert("seed".into(), json!(seed));
            map.insert("mean_re".into(), json!(report.mean.re));
            map.insert("mean_im".into(), json!(report.mean.im));
            map.insert("std_error".into(), json!(report.std_error));
            if let Some(e) = report.exact {
                map.insert("exact_re".into(), json!(e.re));
                map.insert("exact_im".into(), json!(e.im));
            }
            if let Some(z) = report.z_score {
                map.insert("z_score".into(), json!(z));
            }
            Ok(Value::Object(map))
        }
        Command::Gamma {
            sigma,
            q,
            pi,
            l,
            closed_form,
        } => {
            let s = Permutation::parse(*q, sigma)?;
            let pi = match pi {
                Some(text) => SetPartition::parse(*q, text)?,
                None => SetPartition::full(*q),
            };
            let counts = gamma_transitive(&s, &pi, *l)?;
            let mut map = Map::new();
            map.insert("sigma".into(), json!(s.to_string()));
            map.insert("pi".into(), json!(pi.to_string()));
            map.insert("l".into(), json!(l));
            map.insert("gamma".into(), json!(counts.signed_total.to_string()));
            map.insert(
                "per_k".into(),
                Value::Array(counts.per_k.iter().map(|&c| json!(c)).collect()),
            );
            if *closed_form {
                let v = schaeffer_leading(wg, gc, &s, &pi)?;
                map.insert("leading_closed_form".into(), json!(v.to_string()));
                let crel = relative_cumulant_wg(wg, gc, &pi, &s)?;
                map.insert("relative_cumulant".into(), output::ratfun_value(&crel));
            }
            Ok(Value::Object(map))
        }
        Command::Tables { max_q } => tables(wg, gc, *max_q),
    }
}

fn to_c64(v: &BigRational) -> Option<Complex64> {
    Some(Complex64::new(v.to_f64()?, 0.0))
}

fn tables(wg: &mut WgContext, gc: &mut GammaContext, max_q: u32) -> Result<Value, HwError> {
    // Weingarten values through q = 3 plus the full-cycle closed form
    let mut weingarten = Vec::new();
    for q in 1..=3u32 {
        for ctype in IntegerPartition::enumerate(q) {
            let f = wg.wg_ratfun_by_type(&ctype)?;
            weingarten.push(json!({
                "cycle_type": output::int_array(ctype.parts()),
                "wg": output::ratfun_value(&f),
            }));
        }
    }
    // pure-unitary word moments
    let words = [
        "U1 V1 U1* V1*",
        "U1 U1 V1 U1* U1* V1*",
        "U1 V1 U1 V1 U1* V1* U1* V1*",
        "U1 U1 V1 V1 U1* U1* V1* V1*",
        "U1 U1 U1 V1 U1* U1* U1* V1*",
        "U1 V1 U1* V1* U1 V1 U1* V1*",
    ];
    let mut word_moments = Vec::new();
    for text in words {
        let w = Word::parse(text)?;
        let poly = word_expectation(wg, &w)?;
        let v = poly.coefficient(&Monomial::unit());
        word_moments.push(json!({
            "word": format!("E tr({text})"),
            "value": output::ratfun_value(&v),
        }));
    }
    // centered IZ limits
    let mut iz_limits = Vec::new();
    for q in 2..=max_q {
        let poly = centered(&iz_cumulant_limit(wg, gc, q)?);
        iz_limits.push(json!({
            "q": q,
            "limit": output::xy_polynomial(&poly),
        }));
    }
    Ok(json!({
        "weingarten": weingarten,
        "word_moments": word_moments,
        "iz_limits": iz_limits,
    }))
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => {
            println!("{}", output::render(&value, cli.format == Format::Text));
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(1);
        }
    }
}
