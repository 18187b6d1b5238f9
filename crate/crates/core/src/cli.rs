//! Command-line front end.
//!
//! Data go to `stdout`, diagnostics to `stderr`. Exit codes: 0 success,
//! 2 parse, usage or configuration error, 3 domain error, 1 i/o failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bundle::{kappa, AdmissibleData, End};
use crate::census::{self, CensusOptions};
use crate::einstein::{classify, Bound, EinsteinVerdict, SignVerdict};
use crate::error::{Error, Result};
use crate::painted::PaintedDiagram;
use crate::profile::{DomainEnd, MetricProfile, Sample, VerdianiReport};
use crate::rational::{self, serde_q, Q};
use crate::rootspace::Family;

#[derive(Debug, Parser)]
#[command(
    name = "kebundle",
    version,
    about = "Kähler–Einstein metrics on admissible bundles over classical flag manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Koszul form and Koszul numbers of a painted diagram.
    Koszul {
        /// Painted diagram, e.g. `A11:oo*oo*ooooo` (`*` black, `o` white).
        diagram: String,
        #[arg(long)]
        json: bool,
    },
    /// Existence verdicts for λ = 0, λ > 0 and λ < 0.
    Classify {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        json: bool,
    },
    /// Sampled profile f(t) of the Einstein metric with constant λ.
    Profile {
        #[command(flatten)]
        data: DataArgs,
        /// Einstein constant as an exact rational `p` or `p/q`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// Sampling range on a ray, as a multiple of κ in f.
        #[arg(long, default_value_t = 4.0)]
        horizon: f64,
        #[arg(long)]
        json: bool,
    },
    /// Verdict catalog of every datum up to a rank; JSONL to a file, CSV
    /// summary to stdout.
    Census {
        #[arg(long)]
        family: String,
        #[arg(long)]
        max_rank: usize,
        #[arg(long)]
        out: PathBuf,
        /// Skip the per-record invariant checks.
        #[arg(long)]
        no_validate: bool,
    },
}

#[derive(Debug, Args)]
struct DataArgs {
    /// Painted diagram of the base, e.g. `A11:oo*oo*ooooo`.
    diagram: String,
    /// First node of the white string (omit with --m1).
    #[arg(long, conflicts_with = "m1", requires = "beta")]
    string: Option<usize>,
    /// End of the string painted black: `left` or `right`.
    #[arg(long, conflicts_with = "m1", requires = "string")]
    beta: Option<String>,
    /// Character coefficients in black-node order, e.g. `2,3`.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    chi: String,
    /// Line bundle (m = 1).
    #[arg(long)]
    m1: bool,
}

/// Parses `<family><rank>:<mask>`.
pub fn parse_diagram(text: &str) -> Result<PaintedDiagram> {
    PaintedDiagram::parse(text)
}

/// Parses comma-separated integer character coefficients. Offsets in
/// errors refer to `text`.
pub fn parse_chi(text: &str) -> Result<Vec<i64>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let trimmed = part.trim();
        let lead = part.len() - part.trim_start().len();
        let k = trimmed.parse::<i64>().map_err(|_| {
            Error::parse(
                offset + lead,
                format!("character coefficient `{trimmed}` is not an integer"),
            )
        })?;
        out.push(k);
        offset += part.len() + 1;
    }
    Ok(out)
}

impl DataArgs {
    fn build(&self) -> Result<AdmissibleData> {
        let s0 = parse_diagram(&self.diagram)?;
        let chi = parse_chi(&self.chi)?;
        match (self.m1, self.string, &self.beta) {
            (true, _, _) => AdmissibleData::line(s0, chi),
            (false, Some(start), Some(beta)) => {
                AdmissibleData::new(s0, start, End::parse(beta)?, chi)
            }
            _ => Err(Error::usage("give either --string and --beta, or --m1")),
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    2
                }
            };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Koszul { diagram, json } => koszul(&diagram, json, out),
        Command::Classify { data, json } => classify_cmd(&data.build()?, json, out),
        Command::Profile {
            data,
            lambda,
            samples,
            horizon,
            json,
        } => {
            let lambda = rational::parse(&lambda)?;
            profile_cmd(&data.build()?, &lambda, samples, horizon, json, out)
        }
        Command::Census {
            family,
            max_rank,
            out: path,
            no_validate,
        } => census_cmd(&family, max_rank, &path, !no_validate, out),
    }
}

#[derive(Serialize)]
struct KoszulJson {
    diagram: String,
    #[serde(serialize_with = "serde_q::serialize_vec")]
    sigma: Vec<Q>,
    koszul: BTreeMap<usize, i64>,
}

fn koszul(text: &str, json: bool, out: &mut dyn Write) -> Result<()> {
    let s0 = parse_diagram(text)?;
    let k = s0.koszul()?;
    if json {
        let report = KoszulJson {
            diagram: s0.to_string(),
            sigma: k.sigma.coeffs().to_vec(),
            koszul: k.numbers.clone(),
        };
        writeln!(out, "{}", to_json(&report)?)?;
    } else {
        writeln!(out, "diagram {s0}")?;
        writeln!(out, "sigma {}", k.sigma)?;
        for (node, n) in &k.numbers {
            writeln!(out, "n{node} {n}")?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct VerdictJson<'a> {
    data: String,
    m: usize,
    koszul: &'a [i64],
    lambda_zero: &'a crate::einstein::ZeroVerdict,
    lambda_pos: &'a SignVerdict,
    lambda_neg: &'a SignVerdict,
    #[serde(serialize_with = "serde_q::serialize_vec")]
    xi_z0_times_lambda: Vec<Q>,
    ray_extends: bool,
}

fn bounds_text(bounds: &[Bound]) -> String {
    bounds
        .iter()
        .map(|b| b.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn sign_line(verdict: &SignVerdict) -> String {
    let status = if verdict.exists { "exists" } else { "absent" };
    let complete = if verdict.complete { ", complete" } else { "" };
    format!("{status}{complete} (region: {})", bounds_text(&verdict.constraint))
}

fn join(v: &[i64]) -> String {
    v.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
}

fn classify_cmd(data: &AdmissibleData, json: bool, out: &mut dyn Write) -> Result<()> {
    let v: EinsteinVerdict = classify(data)?;
    if json {
        let report = VerdictJson {
            data: data.to_string(),
            m: v.m,
            koszul: &v.koszul,
            lambda_zero: &v.lambda_zero,
            lambda_pos: &v.lambda_pos,
            lambda_neg: &v.lambda_neg,
            xi_z0_times_lambda: v.xi_z0_times_lambda.coeffs().to_vec(),
            ray_extends: v.ray_extends,
        };
        writeln!(out, "{}", to_json(&report)?)?;
        return Ok(());
    }
    writeln!(out, "data {data}")?;
    writeln!(out, "m {}", v.m)?;
    writeln!(out, "koszul {}", join(&v.koszul))?;
    let zero = match (&v.lambda_zero.required_chi, v.lambda_zero.exists) {
        (Some(chi), true) => format!("exists (chi = {})", join(chi)),
        (Some(chi), false) => format!("absent (requires chi = {})", join(chi)),
        (None, _) => "absent (m does not divide every Koszul number)".to_string(),
    };
    writeln!(out, "lambda=0 {zero}")?;
    writeln!(out, "lambda>0 {}", sign_line(&v.lambda_pos))?;
    writeln!(out, "lambda<0 {}", sign_line(&v.lambda_neg))?;
    writeln!(out, "ray_extends {}", v.ray_extends)?;
    writeln!(out, "lambda*xi_z0 {}", v.xi_z0_times_lambda)?;
    Ok(())
}

#[derive(Serialize)]
struct ProfileJson<'a> {
    data: String,
    #[serde(serialize_with = "serde_q::serialize")]
    lambda: Q,
    m: usize,
    d: usize,
    #[serde(serialize_with = "serde_q::serialize")]
    kappa_sq: Q,
    kappa: f64,
    end: DomainEnd,
    f_sup: Option<f64>,
    t_sup: Option<f64>,
    /// `(a_α, κ b_α)` exact.
    pairs: Vec<[String; 2]>,
    /// Coefficients of `P(κy)` in `y`, ascending.
    #[serde(serialize_with = "serde_q::serialize_vec")]
    scaled_polynomial: Vec<Q>,
    verdiani: &'a VerdianiReport,
    samples: &'a [Sample],
}

fn profile_cmd(
    data: &AdmissibleData,
    lambda: &Q,
    samples: usize,
    horizon: f64,
    json: bool,
    out: &mut dyn Write,
) -> Result<()> {
    let profile = MetricProfile::new(data, lambda)?;
    let table = profile.samples(samples, horizon)?;
    let verdiani = profile.verdiani_check();
    let (kappa_sq, _) = kappa(data)?;
    if json {
        let report = ProfileJson {
            data: data.to_string(),
            lambda: lambda.clone(),
            m: profile.m(),
            d: profile.d(),
            kappa_sq,
            kappa: profile.kappa(),
            end: profile.end_kind(),
            f_sup: profile.domain_end(),
            t_sup: profile.t_sup(),
            pairs: profile
                .exact_pairs()
                .iter()
                .map(|(a, b)| [rational::format(a), rational::format(b)])
                .collect(),
            scaled_polynomial: profile.scaled_polynomial().coeffs().to_vec(),
            verdiani: &verdiani,
            samples: &table,
        };
        writeln!(out, "{}", to_json(&report)?)?;
        return Ok(());
    }
    let opt = |x: Option<f64>| x.map_or("inf".to_string(), |v| format!("{v:.15e}"));
    writeln!(out, "data {data}")?;
    writeln!(out, "lambda {}", rational::format(lambda))?;
    writeln!(out, "kappa_sq {}", rational::format(&kappa_sq))?;
    writeln!(out, "kappa {:.15e}", profile.kappa())?;
    writeln!(out, "end {}", end_name(profile.end_kind()))?;
    writeln!(out, "f_sup {}", opt(profile.domain_end()))?;
    writeln!(out, "t_sup {}", opt(profile.t_sup()))?;
    writeln!(out, "P(kappa y) {}", profile.scaled_polynomial())?;
    writeln!(
        out,
        "verdiani {} (d={}, m={}, fitted f''(0)={:.9e}, relative error {:.3e})",
        if verdiani.pass { "pass" } else { "fail" },
        verdiani.d,
        verdiani.m,
        verdiani.fitted_curvature,
        verdiani.relative_error
    )?;
    writeln!(out, "# t f residual")?;
    for s in &table {
        writeln!(out, "{:.15e} {:.15e} {:.3e}", s.t, s.f, s.residual)?;
    }
    Ok(())
}

fn end_name(end: DomainEnd) -> &'static str {
    match end {
        DomainEnd::Infinite => "infinite",
        DomainEnd::Closing => "closing",
        DomainEnd::ChamberExit => "chamber_exit",
    }
}

fn census_cmd(
    family: &str,
    max_rank: usize,
    path: &PathBuf,
    validate: bool,
    out: &mut dyn Write,
) -> Result<()> {
    let mut chars = family.chars();
    let family = match (chars.next(), chars.next()) {
        (Some(c), None) => Family::from_letter(c),
        _ => None,
    }
    .ok_or_else(|| Error::parse(0, format!("unknown family `{family}`")))?;
    let options = CensusOptions {
        validate,
        ..CensusOptions::default()
    };
    let records = census::enumerate(family, max_rank, &options)?;
    let file = File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut writer = BufWriter::new(file);
    census::write_jsonl(&records, &mut writer)?;
    writer.flush()?;
    census::write_csv(&census::summarize(&records), out)
}

fn to_json(value: &impl Serialize) -> Result<String> {
    serde_json::to_string(value).map_err(|e| Error::Io(e.to_string()))
}
