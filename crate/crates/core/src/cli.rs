//! Command-line front end for the `heightlab` binary.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 for usage
//! errors (bad flags, unreadable files), 3 for computational errors such as
//! degenerate or non-minimal curves.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::function_field::families::Family;
use crate::function_field::io::{read_curve, read_point};
use crate::function_field::{
    classify_fibers, family, q_integral_run, verify_family, FFError, FiberReport, QCurve, QPoint,
};
use crate::height_search::report::{write_json, write_tsv};
use crate::height_search::{run_search, SearchConfig, SearchError, SearchMode};
use crate::rational::{parse_rational, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COMPUTATION: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "heightlab", version, about = "Minimal canonical heights on elliptic surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "tsv")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exhaustive search over fiber configurations.
    #[command(group(ArgGroup::new("mode").args(["genus0", "any_genus"])))]
    #[command(group(ArgGroup::new("mob").args(["moebius", "no_moebius"])))]
    Search {
        #[arg(long)]
        n: u32,
        /// Base of genus zero: require conductor at least 2n+3 (default).
        #[arg(long)]
        genus0: bool,
        #[arg(long)]
        any_genus: bool,
        /// Height bound H as p/q; defaults to 2n/M^2.
        #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
        max_height: Option<Rational>,
        /// Integral run M used for the default bound.
        #[arg(long)]
        max_multiple: Option<u32>,
        /// Enable the Möbius filter (default in any-genus mode).
        #[arg(long)]
        moebius: bool,
        #[arg(long)]
        no_moebius: bool,
        #[arg(long, env = "HEIGHTLAB_JOBS", default_value_t = 1)]
        jobs: usize,
        /// Also list rejected candidates with their witnesses.
        #[arg(long)]
        keep_rejected: bool,
        /// Number of naive heights printed per candidate.
        #[arg(long)]
        naive_terms: Option<u64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check a family member against its reference height data.
    Verify {
        #[arg(long, value_parser = parse_family_arg)]
        family: Family,
        #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
        param: Option<Rational>,
        /// Required run of integral multiples.
        #[arg(long)]
        multiples: Option<u64>,
        /// Compare naive heights for m up to this.
        #[arg(long)]
        m_check: Option<u64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Kodaira types of the singular fibers.
    #[command(group(ArgGroup::new("source").args(["family", "curve"]).required(true)))]
    Fibers {
        #[arg(long, value_parser = parse_family_arg)]
        family: Option<Family>,
        #[arg(long, value_parser = parse_rational_arg, requires = "family", allow_hyphen_values = true)]
        param: Option<Rational>,
        #[arg(long)]
        curve: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Naive heights of the first multiples of a point.
    Heights {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        point: PathBuf,
        #[arg(long)]
        max_m: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Integral multiples of a point on a curve over Q.
    #[command(group(ArgGroup::new("qsource").args(["builtin", "coeffs"]).required(true)))]
    Qcheck {
        #[arg(long, value_parser = ["e14"])]
        builtin: Option<String>,
        /// a1,a2,a3,a4,a6
        #[arg(long, requires = "point", allow_hyphen_values = true)]
        coeffs: Option<String>,
        /// x,y
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, default_value_t = 14)]
        max_m: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_family_arg(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: FFError| e.to_string())
}

enum CliError {
    Usage(String),
    Computation(String),
}

impl From<FFError> for CliError {
    fn from(e: FFError) -> CliError {
        match e {
            FFError::Input(_) | FFError::ExcludedParameter(_) => CliError::Usage(e.to_string()),
            _ => CliError::Computation(e.to_string()),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> CliError {
        match e {
            SearchError::Pool(_) => CliError::Computation(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn io_err(e: io::Error) -> CliError {
    CliError::Computation(format!("write failed: {e}"))
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn json_to<W: Write, T: Serialize>(value: &T, mut sink: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut sink, value)?;
    writeln!(sink)
}

fn fibers_tsv<W: Write>(report: &FiberReport, vars: (&str, &str), mut sink: W) -> io::Result<()> {
    writeln!(sink, "place\tdegree\tkodaira\tvC4\tvC6\tvDelta")?;
    let v = |x: Option<u32>| x.map(|k| k.to_string()).unwrap_or_else(|| "inf".into());
    for e in &report.entries {
        writeln!(
            sink,
            "{}\t{}\t{}\t{}\t{}\t{}",
            e.place.display_with(vars.0, vars.1),
            e.place_degree,
            e.kodaira,
            v(e.v_c4),
            v(e.v_c6),
            e.v_delta
        )?;
    }
    writeln!(sink, "# d={} N={}", report.discriminant_degree, report.conductor)
}

/// Runs one command; the rendered report goes to `buf`.
fn dispatch(cmd: Command, buf: &mut Vec<u8>) -> Result<(i32, Option<PathBuf>), CliError> {
    match cmd {
        Command::Search {
            n,
            genus0: _,
            any_genus,
            max_height,
            max_multiple,
            moebius,
            no_moebius,
            jobs,
            keep_rejected,
            naive_terms,
            out,
        } => {
            let mode = if any_genus { SearchMode::AnyGenus } else { SearchMode::GenusZero };
            let mut cfg = SearchConfig::new(n, mode);
            cfg.height_bound = max_height;
            cfg.max_multiple = max_multiple;
            cfg.moebius = match (moebius, no_moebius) {
                (true, _) => Some(true),
                (_, true) => Some(false),
                _ => None,
            };
            cfg.jobs = jobs;
            cfg.keep_rejected = keep_rejected;
            cfg.naive_terms = naive_terms;
            cfg.effective_bound()?;
            if jobs == 0 {
                return Err(SearchError::ZeroJobs.into());
            }
            let report = run_search(&cfg)?;
            match out.format {
                Format::Tsv => write_tsv(&report, &mut *buf),
                Format::Json => write_json(&report, &mut *buf),
            }
            .map_err(io_err)?;
            Ok((EXIT_OK, out.output))
        }
        Command::Verify { family: which, param, multiples, m_check, out } => {
            let param = param.unwrap_or_else(|| which.default_param());
            let report = verify_family(which, &param, multiples, m_check)?;
            match out.format {
                Format::Json => json_to(&report, &mut *buf),
                Format::Tsv => (|| -> io::Result<()> {
                    let (hhat, gamma) = (&report.golden_hhat, &report.golden_gamma);
                    writeln!(buf, "family\t{}\nparam\t{}\nn\t{}", report.family, report.param, report.n)?;
                    let kinds: Vec<String> = report.fibers.entries.iter().map(|e| e.kodaira.to_string()).collect();
                    writeln!(buf, "fibers\t{}", kinds.join(" "))?;
                    writeln!(buf, "conductor\t{}", report.fibers.conductor)?;
                    let hs: Vec<String> = report.naive_heights.iter().map(|h| h.to_string()).collect();
                    writeln!(buf, "naive_heights\t{}", hs.join(" "))?;
                    writeln!(buf, "integral_run\t{}", report.integral_run)?;
                    writeln!(buf, "golden\t{hhat}\t{gamma}")?;
                    for row in &report.inferred {
                        writeln!(buf, "inferred\t{}\t{}\t{}", row.hhat, row.gamma, row.assignments)?;
                    }
                    for c in &report.checks {
                        writeln!(buf, "check\t{}\t{}\t{}", c.name, if c.passed { "pass" } else { "fail" }, c.detail)?;
                    }
                    writeln!(buf, "result\t{}", if report.verified { "verified" } else { "mismatch" })
                })(),
            }
            .map_err(io_err)?;
            Ok((if report.verified { EXIT_OK } else { EXIT_MISMATCH }, out.output))
        }
        Command::Fibers { family: which, param, curve, out } => {
            let (e, vars) = match (which, curve) {
                (Some(f), _) => {
                    let param = param.unwrap_or_else(|| f.default_param());
                    (family(f, &param)?.0, f.variables())
                }
                (None, Some(path)) => (read_curve(&read_file(&path)?)?, ("s", "s'")),
                (None, None) => return Err(CliError::Usage("pass --family or --curve".into())),
            };
            let report = classify_fibers(&e)?;
            match out.format {
                Format::Tsv => fibers_tsv(&report, vars, &mut *buf),
                Format::Json => json_to(&report, &mut *buf),
            }
            .map_err(io_err)?;
            Ok((EXIT_OK, out.output))
        }
        Command::Heights { curve, point, max_m, out } => {
            let e = read_curve(&read_file(&curve)?)?;
            let p = read_point(&read_file(&point)?, &e)?;
            let heights = e.naive_heights(&p, max_m)?;
            let run = heights.iter().take_while(|&&h| h == 0).count();
            match out.format {
                Format::Tsv => (|| -> io::Result<()> {
                    writeln!(buf, "m\tnaive_height")?;
                    for (i, h) in heights.iter().enumerate() {
                        writeln!(buf, "{}\t{h}", i + 1)?;
                    }
                    Ok(())
                })(),
                Format::Json => json_to(&serde_json::json!({ "naive_heights": heights, "integral_run": run }), &mut *buf),
            }
            .map_err(io_err)?;
            Ok((EXIT_OK, out.output))
        }
        Command::Qcheck { builtin, coeffs, point, max_m, out } => {
            let (curve, p) = match builtin.as_deref() {
                Some(_) => QCurve::builtin_e14(),
                None => parse_qcurve(coeffs.as_deref().unwrap_or(""), point.as_deref().unwrap_or(""))?,
            };
            let run = q_integral_run(&curve, &p, max_m)?;
            match out.format {
                Format::Json => json_to(&run, &mut *buf),
                Format::Tsv => (|| -> io::Result<()> {
                    writeln!(buf, "run\t{}\nmax_m\t{}", run.run, run.max_m)?;
                    if let (Some(m), Some((x, y))) = (run.first_non_integral, &run.witness) {
                        writeln!(buf, "first_non_integral\t{m}\t{x}\t{y}")?;
                    }
                    Ok(())
                })(),
            }
            .map_err(io_err)?;
            Ok((EXIT_OK, out.output))
        }
    }
}

fn parse_list(text: &str, len: usize, what: &str) -> Result<Vec<Rational>, CliError> {
    let items: Result<Vec<Rational>, _> = text.split(',').map(|t| parse_rational(t.trim())).collect();
    let items = items.map_err(|e| CliError::Usage(format!("{what}: {e}")))?;
    if items.len() != len {
        return Err(CliError::Usage(format!("{what}: expected {len} comma-separated values")));
    }
    Ok(items)
}

fn parse_qcurve(coeffs: &str, point: &str) -> Result<(QCurve, QPoint), CliError> {
    let a = parse_list(coeffs, 5, "--coeffs")?;
    let xy = parse_list(point, 2, "--point")?;
    let a: [Rational; 5] = a.try_into().expect("length checked");
    Ok((QCurve::new(a), QPoint::Affine(xy[0].clone(), xy[1].clone())))
}

/// Parses `argv` (including the program name), runs the command and returns the exit status.
pub fn run_cli<I, T, O, E>(argv: I, stdout: &mut O, stderr: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    O: Write + ?Sized,
    E: Write + ?Sized,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut buf = Vec::new();
    match dispatch(cli.command, &mut buf) {
        Ok((code, path)) => {
            let written = match path {
                Some(p) => fs::write(&p, &buf).map_err(|e| format!("cannot write {}: {e}", p.display())),
                None => stdout.write_all(&buf).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => code,
                Err(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    EXIT_COMPUTATION
                }
            }
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Computation(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_COMPUTATION
        }
    }
}
