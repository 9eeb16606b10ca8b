//! The `seqcm` command line.
//!
//! The local ring of the theory is modelled by a polynomial ring with `m` the
//! ideal of all variables; every input is homogeneous, so lengths, dimensions
//! and multiplicities agree with the local ones.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use log::info;

use crate::corpus;
use crate::error::{Error, Result};
use crate::filtration::{classify, FiltrationReport};
use crate::hilbert::{hilbert_report, lambda_sample, FitConfig, HilbertReport, LambdaSample, ReportOptions, Sampler};
use crate::modpres::DiagonalModule;
use crate::repro::{self, Target};
use crate::session::{parse_session, print_session, Command as SessionCommand, SessionModel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

/// Largest dimension for which the bound columns are printed.
pub const MAX_BOUND_DIM: i64 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SamplerKind {
    /// Seeded random distinguished systems.
    Random,
    /// Powers `x_1^{n_1}, ..., x_d^{n_d}` of the `--sop` elements, `n_i <= --bexp`.
    Lattice,
}

#[derive(Debug, Parser)]
#[command(name = "seqcm", version, about = "Dimension filtrations and adjusted Hilbert coefficients")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
    /// Session file; `-` reads standard input.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Built-in session (ex1, square, point, mono2, mono3, mono4) instead of `--input`.
    #[arg(long, global = true)]
    pub builtin: Option<String>,
    #[arg(long, global = true)]
    pub module: Option<String>,
    #[arg(long, global = true)]
    pub sop: Option<String>,
    /// Coefficient index for `lambda`.
    #[arg(long = "i", global = true)]
    pub index: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest n at which the Hilbert–Samuel function is evaluated.
    #[arg(long, global = true, default_value_t = 40)]
    pub ncap: usize,
    /// Extra values a fit must reproduce.
    #[arg(long, global = true, default_value_t = 3)]
    pub window: usize,
    /// Exponent bound for dd-sequence checks and the power lattice.
    #[arg(long, global = true, default_value_t = 3)]
    pub bexp: u32,
    /// Override the coefficient field: `QQ` or `GF:p`.
    #[arg(long, global = true)]
    pub field: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Dimension filtration, local cohomology of its pieces and the verdict.
    Classify,
    /// Hilbert coefficients, arithmetic degrees and adjusted coefficients for one sop.
    Hilbert {
        /// Skip the bound columns.
        #[arg(long)]
        no_bounds: bool,
    },
    /// Samples `a_i(q; M)` over parameter ideals.
    Lambda {
        #[arg(long, value_enum, default_value = "random")]
        sampler: SamplerKind,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        degree_cap: u32,
        /// Keep systems that are not distinguished (reported as such).
        #[arg(long)]
        allow_non_distinguished: bool,
    },
    /// Runs the built-in reproduction checks.
    Repro {
        #[arg(value_enum)]
        target: Target,
    },
    /// Runs the commands listed in the session.
    Run,
    /// Prints the session in canonical form.
    Print,
}

/// Parses `argv`, runs and returns the exit code; output goes to `out`.
pub fn run_from<I, T>(args: I, out: &mut String) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            out.push_str(&e.to_string());
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Guard(_) | Error::Unstable { .. } | Error::SamplerExhausted { .. } => EXIT_GUARD,
        _ => EXIT_PARSE,
    }
}

fn field_name(spec: &str) -> Result<String> {
    match spec {
        "QQ" => Ok("QQ".into()),
        s => match s.strip_prefix("GF:") {
            Some(p) if p.parse::<u64>().is_ok() => Ok(format!("GF({p})")),
            _ => Err(Error::Syntax { line: 0, column: 0, message: format!("bad --field `{s}`; use QQ or GF:p") }),
        },
    }
}

/// Re-reads the session over another coefficient field.
pub fn with_field(s: &SessionModel, spec: &str) -> Result<SessionModel> {
    let field = field_name(spec)?;
    let text = print_session(s);
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    if let Some(l) = lines.iter_mut().find(|l| l.starts_with("ring ")) {
        let (Some(eq), Some(br)) = (l.find('='), l.find('[')) else { unreachable!("printed ring line") };
        *l = format!("{}= {}{}", &l[..eq], field, &l[br..]);
    }
    parse_session(&lines.join("\n"))
}

pub fn load_session(cli: &Cli) -> Result<SessionModel> {
    let s = match (&cli.input, &cli.builtin) {
        (Some(path), _) => {
            let text = if path.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin())?
            } else {
                std::fs::read_to_string(path)?
            };
            parse_session(&text)?
        }
        (None, Some(name)) => corpus::session(name)?,
        (None, None) => return Err(Error::Usage("give --input FILE or --builtin NAME".into())),
    };
    match &cli.field {
        Some(f) => with_field(&s, f),
        None => Ok(s),
    }
}

fn fit(cli: &Cli) -> Result<FitConfig> {
    if cli.ncap == 0 || cli.window == 0 || cli.bexp == 0 {
        return Err(Error::Guard("--ncap, --window and --bexp must be positive".into()));
    }
    Ok(FitConfig { window: cli.window, ncap: cli.ncap, floor: None })
}

fn pick<'a>(given: &'a Option<String>, names: Vec<&'a str>, what: &str) -> Result<&'a str> {
    match given {
        Some(n) => Ok(n),
        None if names.len() == 1 => Ok(names[0]),
        None => Err(Error::Usage(format!("several {what}s declared; choose one with --{what}"))),
    }
}

fn execute(cli: &Cli, out: &mut String) -> Result<i32> {
    let cfg = fit(cli)?;
    if let Cmd::Repro { target } = cli.command {
        let r = repro::run(target, &cfg)?;
        match cli.format {
            Format::Json => out.push_str(&serde_json::to_string_pretty(&r)?),
            _ => out.push_str(&r.render()),
        }
        return Ok(if r.passed() { EXIT_OK } else { EXIT_FAIL });
    }
    let s = load_session(cli)?;
    match &cli.command {
        Cmd::Classify => {
            let name = pick(&cli.module, s.module_names(), "module")?;
            let m = DiagonalModule::from_session(&s, name)?;
            emit_classify(&classify(&m)?, cli.format, out)?;
        }
        Cmd::Hilbert { no_bounds } => {
            let name = pick(&cli.module, s.module_names(), "module")?;
            let sop = pick(&cli.sop, s.sop_names(), "sop")?;
            hilbert(cli, &s, name, sop, !no_bounds, out)?;
        }
        Cmd::Lambda { sampler, count, degree_cap, allow_non_distinguished } => {
            let name = pick(&cli.module, s.module_names(), "module")?;
            let i = cli.index.ok_or_else(|| Error::Usage("lambda needs --i".into()))?;
            let sampler = match sampler {
                SamplerKind::Random => Sampler::RandomDistinguished { count: *count, seed: cli.seed, degree_cap: *degree_cap },
                SamplerKind::Lattice => {
                    let sop = pick(&cli.sop, s.sop_names(), "sop")?;
                    Sampler::PowerLattice { x: sop_of(&s, sop)?, cap: cli.bexp }
                }
            };
            let m = DiagonalModule::from_session(&s, name)?;
            let sample = lambda_sample(&m, name, i, &sampler, *allow_non_distinguished, &cfg)?;
            emit_lambda(&sample, cli.format, out)?;
        }
        Cmd::Run => {
            for c in &s.commands {
                match c {
                    SessionCommand::Classify { module } => {
                        let m = DiagonalModule::from_session(&s, module)?;
                        emit_classify(&classify(&m)?, cli.format, out)?;
                    }
                    SessionCommand::Hilbert { module, sop } => hilbert(cli, &s, module, sop, true, out)?,
                    SessionCommand::Lambda { module, index } => {
                        let m = DiagonalModule::from_session(&s, module)?;
                        let sampler = Sampler::RandomDistinguished { count: 20, seed: cli.seed, degree_cap: 2 };
                        emit_lambda(&lambda_sample(&m, module, *index, &sampler, false, &cfg)?, cli.format, out)?;
                    }
                }
                out.push('\n');
            }
        }
        Cmd::Print => out.push_str(&print_session(&s)),
        Cmd::Repro { .. } => unreachable!(),
    }
    Ok(EXIT_OK)
}

fn sop_of(s: &SessionModel, name: &str) -> Result<Vec<crate::poly::Polynomial>> {
    s.sop(name)
        .map(<[_]>::to_vec)
        .ok_or_else(|| Error::UnknownName { line: 0, column: 0, name: name.to_string() })
}

fn hilbert(cli: &Cli, s: &SessionModel, name: &str, sop: &str, bounds: bool, out: &mut String) -> Result<()> {
    let m = DiagonalModule::from_session(s, name)?;
    if bounds && m.dim() > MAX_BOUND_DIM {
        return Err(Error::Guard(format!("bound columns need d <= {MAX_BOUND_DIM}; pass --no-bounds")));
    }
    let opts = ReportOptions { fit: fit(cli)?, dd_bound: Some(cli.bexp), bounds };
    let r = hilbert_report(&m, name, &sop_of(s, sop)?, &opts)?;
    info!("{name}: certified from n = {}", r.certificate.start);
    emit_hilbert(&r, cli.format, out)
}

fn emit_classify(r: &FiltrationReport, format: Format, out: &mut String) -> Result<()> {
    match format {
        Format::Json => out.push_str(&serde_json::to_string_pretty(r)?),
        Format::Csv => {
            out.push_str("index,dim,depth,local_cohomology,cohen_macaulay,generalized_cm,invariant\n");
            for p in &r.pieces {
                let lc: Vec<String> = p.local_cohomology.iter().map(|l| l.to_string()).collect();
                let inv = p.invariant.as_ref().map(|b| b.to_string()).unwrap_or_default();
                let _ = writeln!(out, "{},{},{},{},{},{},{}", p.index, p.dim, p.depth, lc.join(";"), p.cohen_macaulay, p.generalized_cm, inv);
            }
        }
        Format::Text => {
            let _ = writeln!(out, "module  {}", r.module);
            let _ = writeln!(out, "verdict {}", r.verdict);
            let _ = writeln!(out, "dim {}  depth {}  dims {:?}  l(W) {}", r.dim, r.depth, r.dims, r.w_length);
            let _ = writeln!(out, "{:>5} {:>4} {:>6}  l(H^j), j < dim", "piece", "dim", "depth");
            for p in &r.pieces {
                let lc: Vec<String> = p.local_cohomology.iter().map(|l| l.to_string()).collect();
                let _ = writeln!(out, "{:>5} {:>4} {:>6}  [{}]", p.index, p.dim, p.depth, lc.join(", "));
            }
            if let (Some(i), Some(c)) = (&r.invariant_filtration, &r.bound_c) {
                let _ = writeln!(out, "I(D,M) = {i}  C = {c}");
            }
        }
    }
    Ok(())
}

fn emit_hilbert(r: &HilbertReport, format: Format, out: &mut String) -> Result<()> {
    match format {
        Format::Json => out.push_str(&serde_json::to_string_pretty(r)?),
        Format::Csv => out.push_str(&r.to_csv()),
        Format::Text => {
            let _ = writeln!(out, "module  {}   q = ({})", r.module, r.q.join(", "));
            let _ = writeln!(out, "verdict {}  d = {}", r.verdict, r.dim);
            let _ = writeln!(out, "e    {:?}", r.e);
            let _ = writeln!(out, "adeg {:?}", r.adeg);
            let _ = writeln!(out, "a    {:?}", r.a);
            let f = &r.flags;
            let show = |b: Option<bool>| b.map_or("unchecked".to_string(), |b| b.to_string());
            let dd = f.dd_sequence.map_or("unchecked".to_string(), |(h, b)| format!("{h} (exponents <= {b})"));
            let _ = writeln!(
                out,
                "sop {}  distinguished {}  good {}  d-sequence {}  dd-sequence {dd}",
                show(f.sop),
                show(f.distinguished),
                show(f.good),
                show(f.d_sequence)
            );
            let _ = writeln!(out, "fit certified on n = {}..={}", r.certificate.start, r.certificate.last_checked);
            let _ = writeln!(out, "{:>4} {:>10} {:>8} {:>8}", "n", "length", "H_ad", "P_ad");
            for row in &r.table {
                let _ = writeln!(out, "{:>4} {:>10} {:>8} {:>8}", row.n, row.length, row.h_ad, row.p_ad);
            }
            if let Some(b) = &r.bounds {
                let _ = writeln!(out, "I(D,M) = {}  C = {}  I(M/M_1) = {}", b.invariant, b.c, b.top_invariant);
                let _ = writeln!(out, "0 <= a_1 <= I(M/M_1): {}", b.first_coefficient_ok);
                let _ = writeln!(out, "coefficient bounds hold: {:?}", b.coefficient_checks);
                let _ = writeln!(out, "H_ad <= upper bound on the table: {}", b.upper_ok);
                match b.threshold {
                    Some(t) => {
                        let _ = writeln!(out, "H_ad >= 0 from n = {t}");
                    }
                    None => out.push_str("nonnegativity threshold too large to print\n"),
                }
            }
        }
    }
    Ok(())
}

fn emit_lambda(s: &LambdaSample, format: Format, out: &mut String) -> Result<()> {
    match format {
        Format::Json => out.push_str(&serde_json::to_string_pretty(s)?),
        Format::Csv => {
            out.push_str("q,value,intro_value,distinguished\n");
            for e in &s.entries {
                let _ = writeln!(out, "\"{}\",{},{},{}", e.q.join(", "), e.value, e.intro_value, e.distinguished);
            }
        }
        Format::Text => {
            let _ = writeln!(out, "module {}  i = {}", s.module, s.index);
            for e in &s.entries {
                let _ = writeln!(out, "{:>6}  ({})", e.value, e.q.join(", "));
            }
            let _ = writeln!(
                out,
                "{} kept, {} rejected, min {:?}, max {:?}, {} distinct",
                s.entries.len(),
                s.rejected,
                s.min,
                s.max,
                s.distinct
            );
            let _ = writeln!(out, "{}", s.caveat);
        }
    }
    Ok(())
}
