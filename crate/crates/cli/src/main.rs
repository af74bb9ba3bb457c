//! Command-line surface: basis listings, expansion/synthesis of JSON value
//! tables, influence reports, scheme spectra, noise smoothing, junta
//! approximation, and self-verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

mod format;
mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use slice_harmonics::combinatorics::{
    c_coefficient, companion_sequence, enumerate_top_sets,
};
use slice_harmonics::expansion::{expand, synthesize};
use slice_harmonics::friedgut::{junta_approximate, JuntaReport};
use slice_harmonics::operators::{
    influence_pair, noise, poincare_bounds, scheme_eigenvalues, total_influence,
    IntersectionProfile,
};
use slice_harmonics::poly::chi_top;
use slice_harmonics::{rat, Rational};

use format::{
    format_rational, parse_rational, to_canonical_json, ExpansionFile, FunctionFile, NoiseFile,
};

#[derive(Debug)]
pub struct CliError {
    message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "slice-harmonics",
    version,
    about = "Exact spectral analysis for functions on a slice of the Boolean cube"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum BasisFormat {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the degree-d basis index sets with companions and norm factors
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t)]
        format: BasisFormat,
        /// Include the expanded basis polynomials
        #[arg(long)]
        chi: bool,
    },
    /// Young-Fourier coefficients of a function file
    Expand {
        #[arg(long, num_args = 2, value_names = ["N", "K"])]
        slice: Vec<usize>,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Point-wise values of an expansion file
    Synthesize {
        #[arg(long, num_args = 2, value_names = ["N", "K"])]
        slice: Vec<usize>,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Pairwise and total influences, with the Poincare bracket
    Influence {
        #[arg(long, num_args = 2, value_names = ["N", "K"])]
        slice: Vec<usize>,
        #[arg(long)]
        input: PathBuf,
    },
    /// Eigenvalues of an intersection-profile matrix
    Spectrum {
        #[arg(long, num_args = 2, value_names = ["N", "K"])]
        slice: Vec<usize>,
        /// Comma-separated weights w0,...,wk (rationals)
        #[arg(long)]
        profile: String,
    },
    /// Heat-semigroup smoothing of a function file
    Noise {
        #[arg(long, num_args = 2, value_names = ["N", "K"])]
        slice: Vec<usize>,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Junta approximation of a Boolean function file
    Junta {
        #[arg(long, num_args = 2, value_names = ["N", "K"])]
        slice: Vec<usize>,
        #[arg(long)]
        input: PathBuf,
        /// Influence threshold (exact rational)
        #[arg(long, conflicts_with = "eps")]
        tau: Option<String>,
        /// Target distance: sweep thresholds and pick the smallest junta
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a self-verification suite
    Verify {
        #[arg(long, value_enum, default_value_t)]
        suite: verify::Suite,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Basis { n, d, format, chi } => cmd_basis(n, d, format, chi),
        Command::Expand {
            slice,
            input,
            output,
        } => cmd_expand(&slice, &input, output.as_deref()),
        Command::Synthesize {
            slice,
            input,
            output,
        } => cmd_synthesize(&slice, &input, output.as_deref()),
        Command::Influence { slice, input } => cmd_influence(&slice, &input),
        Command::Spectrum { slice, profile } => cmd_spectrum(&slice, &profile),
        Command::Noise {
            slice,
            input,
            t,
            output,
        } => cmd_noise(&slice, &input, t, output.as_deref()),
        Command::Junta {
            slice,
            input,
            tau,
            eps,
            output,
        } => cmd_junta(&slice, &input, tau.as_deref(), eps.as_deref(), output.as_deref()),
        Command::Verify { suite, max_n } => Ok(verify::run(suite, max_n)),
    }
}

fn slice_args(slice: &[usize]) -> Result<(usize, usize), CliError> {
    match slice {
        [n, k] => Ok((*n, *k)),
        _ => Err(CliError::input("--slice expects two integers N K")),
    }
}

fn emit(text: String, output: Option<&std::path::Path>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_basis(n: usize, d: usize, format: BasisFormat, chi: bool) -> Result<ExitCode, CliError> {
    if 2 * d > n {
        return Err(CliError::input(format!(
            "no degree-{d} basis elements exist for n = {n} (need d <= n/2)"
        )));
    }
    let tops = enumerate_top_sets(n, d);
    match format {
        BasisFormat::Text => {
            let mut out = String::new();
            for b in &tops {
                let phi = companion_sequence(b);
                write!(
                    out,
                    "B={} phi={} c={}",
                    index_list(b.entries()),
                    index_list(phi.entries()),
                    format_rational(&c_coefficient(b))
                )
                .unwrap();
                if chi {
                    write!(out, " chi={}", chi_top(b)).unwrap();
                }
                out.push('\n');
            }
            print!("{out}");
        }
        BasisFormat::Json => {
            let rows: Vec<serde_json::Value> = tops
                .iter()
                .map(|b| {
                    let phi = companion_sequence(b);
                    let mut row = serde_json::json!({
                        "top_set": b.entries(),
                        "phi": phi.entries(),
                        "c": format_rational(&c_coefficient(b)),
                    });
                    if chi {
                        let poly = chi_top(b);
                        let terms: Vec<serde_json::Value> = poly
                            .terms()
                            .iter()
                            .map(|(m, c)| {
                                serde_json::json!({
                                    "monomial": m,
                                    "value": format_rational(c),
                                })
                            })
                            .collect();
                        row["chi"] = serde_json::Value::Array(terms);
                    }
                    row
                })
                .collect();
            let doc = serde_json::json!({ "n": n, "d": d, "basis": rows });
            print!("{}", to_canonical_json(&doc));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn index_list(entries: &[usize]) -> String {
    let inner = entries
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",");
    format!("({inner})")
}

fn read_function(slice: &[usize], input: &std::path::Path) -> Result<slice_harmonics::expansion::SliceFunction, CliError> {
    let (n, k) = slice_args(slice)?;
    let file = FunctionFile::read(input)?;
    if file.n != n || file.k != k {
        return Err(CliError::input(format!(
            "{} is a ({},{}) function but --slice says ({n},{k})",
            input.display(),
            file.n,
            file.k
        )));
    }
    file.to_function()
}

fn cmd_expand(
    slice: &[usize],
    input: &std::path::Path,
    output: Option<&std::path::Path>,
) -> Result<ExitCode, CliError> {
    let f = read_function(slice, input)?;
    let e = expand(&f);
    emit(to_canonical_json(&ExpansionFile::from_expansion(&e)), output)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_synthesize(
    slice: &[usize],
    input: &std::path::Path,
    output: Option<&std::path::Path>,
) -> Result<ExitCode, CliError> {
    let (n, k) = slice_args(slice)?;
    let file = ExpansionFile::read(input)?;
    if file.n != n || file.k != k {
        return Err(CliError::input(format!(
            "{} is a ({},{}) expansion but --slice says ({n},{k})",
            input.display(),
            file.n,
            file.k
        )));
    }
    let f = synthesize(&file.to_expansion()?);
    emit(to_canonical_json(&FunctionFile::from_function(&f)), output)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_influence(slice: &[usize], input: &std::path::Path) -> Result<ExitCode, CliError> {
    let f = read_function(slice, input)?;
    let n = f.n();
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            let value = influence_pair(&f, i, j).map_err(|e| CliError::input(e.to_string()))?;
            pairs.push(serde_json::json!({
                "i": i,
                "j": j,
                "value": format_rational(&value),
            }));
        }
    }
    let total = total_influence(&f).map_err(|e| CliError::input(e.to_string()))?;
    let (variance, inf, upper) = poincare_bounds(&expand(&f));
    let doc = serde_json::json!({
        "n": n,
        "k": f.k(),
        "total_influence": format_rational(&total),
        "pairs": pairs,
        "poincare": {
            "variance": format_rational(&variance),
            "total_influence": format_rational(&inf),
            "degree_times_variance": format_rational(&upper),
        },
    });
    print!("{}", to_canonical_json(&doc));
    Ok(ExitCode::SUCCESS)
}

fn cmd_spectrum(slice: &[usize], profile: &str) -> Result<ExitCode, CliError> {
    let (n, k) = slice_args(slice)?;
    let weights = profile
        .split(',')
        .map(|w| parse_rational(w).map_err(CliError::input))
        .collect::<Result<Vec<Rational>, _>>()?;
    let profile =
        IntersectionProfile::new(n, k, weights).map_err(|e| CliError::input(e.to_string()))?;
    let eigs = scheme_eigenvalues(&profile).map_err(|e| CliError::input(e.to_string()))?;
    let rows: Vec<serde_json::Value> = eigs
        .iter()
        .enumerate()
        .map(|(d, theta)| {
            use num_traits::ToPrimitive;
            serde_json::json!({
                "degree": d,
                "value": format_rational(theta),
                "multiplicity": slice_harmonics::combinatorics::count_top_sets(n, d)
                    .to_u64()
                    .expect("multiplicity fits u64"),
            })
        })
        .collect();
    let doc = serde_json::json!({ "n": n, "k": k, "eigenvalues": rows });
    print!("{}", to_canonical_json(&doc));
    Ok(ExitCode::SUCCESS)
}

fn cmd_noise(
    slice: &[usize],
    input: &std::path::Path,
    t: f64,
    output: Option<&std::path::Path>,
) -> Result<ExitCode, CliError> {
    let f = read_function(slice, input)?;
    let smoothed = noise(&expand(&f), t).map_err(|e| CliError::input(e.to_string()))?;
    emit(to_canonical_json(&NoiseFile::from_real(&smoothed, t)), output)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_junta(
    slice: &[usize],
    input: &std::path::Path,
    tau: Option<&str>,
    eps: Option<&str>,
    output: Option<&std::path::Path>,
) -> Result<ExitCode, CliError> {
    let f = read_function(slice, input)?;
    let report = match (tau, eps) {
        (Some(tau), None) => {
            let tau = parse_rational(tau).map_err(CliError::input)?;
            junta_approximate(&f, &tau).map_err(|e| CliError::input(e.to_string()))?
        }
        (None, Some(eps)) => {
            let eps = parse_rational(eps).map_err(CliError::input)?;
            sweep_tau(&f, &eps)?
        }
        _ => {
            return Err(CliError::input(
                "junta needs exactly one of --tau or --eps",
            ))
        }
    };
    let doc = junta_report_json(&report);
    emit(to_canonical_json(&doc), output)?;
    Ok(ExitCode::SUCCESS)
}

/// Sweep tau over a geometric grid (halving from 1 down past the smallest
/// influence any Boolean function on the slice can have) and keep the
/// smallest junta achieving the target distance; ties prefer the coarser
/// threshold.
fn sweep_tau(
    f: &slice_harmonics::expansion::SliceFunction,
    eps: &Rational,
) -> Result<JuntaReport, CliError> {
    let floor = rat(1, (4 * f.domain().size()) as i64);
    let mut tau = rat(1, 1);
    let mut best: Option<JuntaReport> = None;
    loop {
        let report = junta_approximate(f, &tau).map_err(|e| CliError::input(e.to_string()))?;
        if report.distance <= *eps {
            let better = match &best {
                None => true,
                Some(b) => report.coordinate_count < b.coordinate_count,
            };
            if better {
                best = Some(report);
            }
        }
        if tau < floor {
            break;
        }
        tau /= rat(2, 1);
    }
    best.ok_or_else(|| {
        CliError::input(format!(
            "no junta within distance {} found over the threshold grid",
            format_rational(eps)
        ))
    })
}

fn junta_report_json(report: &JuntaReport) -> serde_json::Value {
    serde_json::json!({
        "n": report.junta.n(),
        "k": report.junta.k(),
        "tau": format_rational(&report.tau),
        "important_set": report.important_set,
        "coordinate_count": report.coordinate_count,
        "distance": format_rational(&report.distance),
        "rounding_bound": format_rational(&report.rounding_bound),
        "permutation": report.permutation,
        "junta": FunctionFile::from_function(&report.junta),
    })
}
