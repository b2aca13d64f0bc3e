//! Command-line front end. [`run`] parses arguments, dispatches and returns
//! the process exit code: 0 success, 1 verification failure, 2 usage
//! error, 3 I/O error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::exactalg::{parse_rational, Rational};
use crate::export;
use crate::moduli::{self, fixed_points, patch_weights, Variant};
use crate::oracle;
use crate::report::CheckReport;
use crate::rmatrix::{self, assemble_full, rblock_closed};
use crate::stablebasis::{self, s_inverse, s_matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Inverse,
    Linrel,
    Residues,
    Constructions,
    Unitarity,
    Ybe,
    Oracle,
    Counting,
    Geometry,
    All,
}

#[derive(Debug, Parser)]
#[command(name = "spin-rmatrix", version, about = "Exact R-matrices of the spin chain from stable bases")]
pub struct Cli {
    /// Output format; the default depends on the command.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file (a directory for `export`) instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    /// Seed for random rational sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; all available cores by default.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: Option<u32>,
    /// Suppress progress messages on stderr.
    #[arg(long, short = 'q', global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Ell {
    #[arg(short = 'l', long = "ell", value_parser = clap::value_parser!(u32).range(1..))]
    pub ell: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the torus fixed points with given `k`, `n`, `ell`.
    FixedPoints {
        #[arg(short = 'k')]
        k: u32,
        #[arg(short = 'n', value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[command(flatten)]
        ell: Ell,
    },
    /// Tabulate dim M_1 and the weight space dimension over `k`.
    Dims {
        #[arg(short = 'n', value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[command(flatten)]
        ell: Ell,
    },
    /// The assembled R-matrix at spin `ell / 2`.
    ComputeR {
        #[command(flatten)]
        ell: Ell,
        /// Evaluate at this rational `z` ("p/q").
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational_arg)]
        at_z: Option<Rational>,
        /// Also emit the sector blocks with `eps` generic.
        #[arg(long)]
        blocks: bool,
    },
    /// The stable-basis matrix `S` or its inverse.
    ComputeS {
        #[arg(short = 'k')]
        k: u32,
        #[arg(long)]
        inverse: bool,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest sector checked.
        #[arg(short = 'k')]
        k: Option<u32>,
        #[arg(short = 'l', long = "ell", value_parser = clap::value_parser!(u32).range(1..))]
        ell: Option<u32>,
        /// Largest `n` for the counting suite.
        #[arg(short = 'n', value_parser = clap::value_parser!(u64).range(1..))]
        n: Option<u64>,
        /// Random triples for the Yang-Baxter suite.
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Write every artifact for spin `ell / 2` into the `--output` directory.
    Export {
        #[command(flatten)]
        ell: Ell,
    },
}

fn parse_rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("`{s}` is not an integer or p/q rational"))
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
    Verification(String),
    Compute(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Verification(_) | Failure::Compute(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Io(m) | Failure::Verification(m) | Failure::Compute(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::PoleAtSpecialization { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j as usize);
    }
    let outcome = match pool.build() {
        Ok(p) => p.install(|| execute(&cli)),
        Err(e) => Err(Failure::Compute(format!("cannot start worker pool: {e}"))),
    };
    match outcome {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.code()
        }
    }
}

fn emit(cli: &Cli, body: &str) -> Outcome {
    match &cli.output {
        Some(p) => std::fs::write(p, body).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Io(format!("stdout: {e}")))
        }
    }
}

fn unsupported(cmd: &str, f: Format) -> Failure {
    Failure::Usage(format!("format {f:?} is not available for {cmd}").to_lowercase())
}

fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::FixedPoints { k, n, ell } => {
            let (n, ell) = (*n as usize, ell.ell);
            let pts = fixed_points(*k, n, ell);
            let body = match cli.format.unwrap_or(Format::Text) {
                Format::Json => export::to_string(&export::fixed_points_json(*k, n, ell, &pts)),
                Format::Text | Format::Csv => pts.iter().map(|p| format!("{p}\n")).collect(),
                f => return Err(unsupported("fixed-points", f)),
            };
            emit(cli, &body)
        }
        Command::Dims { n, ell } => {
            let (n, ell) = (*n as usize, ell.ell);
            let rows = export::dims_rows(n, ell);
            let show = |d: Option<i64>| d.map_or("-".to_string(), |d| d.to_string());
            let body = match cli.format.unwrap_or(Format::Text) {
                Format::Json => export::to_string(&export::dims_json(n, ell)),
                Format::Csv => {
                    let mut cells = vec![vec!["k".into(), "dim_m1".into(), "weight_space_dim".into()]];
                    cells.extend(rows.iter().map(|(k, d, w)| vec![k.to_string(), show(*d), w.to_string()]));
                    export::csv(&cells)
                }
                Format::Text => rows.iter().map(|(k, d, w)| format!("k={k}\tdim={}\tweights={w}\n", show(*d))).collect(),
                f => return Err(unsupported("dims", f)),
            };
            emit(cli, &body)
        }
        Command::ComputeR { ell, at_z, blocks } => compute_r(cli, ell.ell, at_z.as_ref(), *blocks),
        Command::ComputeS { k, inverse } => {
            let (m, kind) = if *inverse { (s_inverse(*k), "s_inverse") } else { (s_matrix(*k), "s") };
            let body = match cli.format.unwrap_or(Format::Text) {
                Format::Json => {
                    let mut v = export::matrix_json(&m, kind);
                    v["k"] = json!(k);
                    export::to_string(&v)
                }
                Format::Latex => export::matrix_latex(&m),
                Format::Csv => export::csv(&m.text_grid()),
                Format::Text => export::text(&m.text_grid()),
            };
            emit(cli, &body)
        }
        Command::Verify { suite, k, ell, n, trials } => {
            let opts = SuiteOptions {
                k: *k,
                ell: *ell,
                n: n.map(|n| n as usize),
                trials: *trials,
                seed: cli.seed,
                quiet: cli.quiet,
            };
            let reports = run_suite(*suite, &opts)?;
            let body = match cli.format.unwrap_or(Format::Json) {
                Format::Json => export::to_string(&export::reports_json(&reports)),
                Format::Text => reports.iter().map(|r| format!("{}\n", r.summary())).collect(),
                f => return Err(unsupported("verify", f)),
            };
            emit(cli, &body)?;
            verdict(&reports)
        }
        Command::Export { ell } => export_all(cli, ell.ell),
    }
}

fn verdict(reports: &[CheckReport]) -> Outcome {
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Err(Failure::Verification(format!("first counterexample: {}", r.summary()))),
        None => Ok(()),
    }
}

fn compute_r(cli: &Cli, ell: u32, at_z: Option<&Rational>, blocks: bool) -> Outcome {
    let r = assemble_full(ell)?;
    let block_list: Vec<_> = if blocks { (0..=ell).map(rblock_closed).collect() } else { Vec::new() };
    if let Some(z) = at_z {
        let q = r.eval_at(z)?;
        let body = match cli.format.unwrap_or(Format::Csv) {
            Format::Csv => export::csv(&export::numeric_cells(&q)),
            Format::Text => export::text(&export::numeric_cells(&q)),
            Format::Latex => export::numeric_latex(&q),
            Format::Json => {
                let mut v = export::numeric_json(&q);
                v["ell"] = json!(ell);
                v["z"] = json!(z.to_string());
                export::to_string(&v)
            }
        };
        return emit(cli, &body);
    }
    let body = match cli.format.unwrap_or(Format::Text) {
        Format::Json => {
            let mut v = export::full_r_json(&r);
            if blocks {
                v["blocks"] = Value::Array(block_list.iter().map(export::rblock_json).collect());
            }
            export::to_string(&v)
        }
        Format::Latex => {
            let mut s = export::full_r_latex(&r);
            for b in &block_list {
                s.push_str(&format!("% k = {}\n", b.k));
                s.push_str(&export::matrix_latex(&b.entries));
            }
            s
        }
        Format::Csv | Format::Text => {
            let table = if cli.format == Some(Format::Csv) { export::csv } else { export::text };
            let mut s = table(&r.text_grid());
            for b in &block_list {
                s.push_str(&format!("\nk = {}\n", b.k));
                s.push_str(&table(&b.entries.text_grid()));
            }
            s
        }
    };
    emit(cli, &body)
}

fn write_file(dir: &Path, name: &str, body: &str) -> Outcome {
    let p = dir.join(name);
    std::fs::write(&p, body).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))
}

fn export_all(cli: &Cli, ell: u32) -> Outcome {
    let Some(dir) = &cli.output else {
        return Err(Failure::Usage("export needs --output DIR".into()));
    };
    std::fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    let r = assemble_full(ell)?;
    write_file(dir, "full_r.json", &export::to_string(&export::full_r_json(&r)))?;
    write_file(dir, "full_r.tex", &export::full_r_latex(&r))?;
    for k in 0..=ell {
        let b = rblock_closed(k);
        write_file(dir, &format!("r_block_k{k}.json"), &export::to_string(&export::rblock_json(&b)))?;
        write_file(dir, &format!("r_block_k{k}.tex"), &export::matrix_latex(&b.entries))?;
        for (m, kind) in [(s_matrix(k), "s"), (s_inverse(k), "s_inverse")] {
            let mut v = export::matrix_json(&m, kind);
            v["k"] = json!(k);
            write_file(dir, &format!("{kind}_k{k}.json"), &export::to_string(&v))?;
            write_file(dir, &format!("{kind}_k{k}.tex"), &export::matrix_latex(&m))?;
        }
        let mut tables = Vec::new();
        for jp in 0..=k {
            for j in 0..=jp {
                for (variant, name) in [(Variant::Zbar, "zbar"), (Variant::Stab, "stab")] {
                    let t = patch_weights(k, j, jp, variant)?;
                    tables.push(export::weights_json(k, j, jp, name, &t));
                }
            }
        }
        write_file(dir, &format!("weights_k{k}.json"), &export::to_string(&Value::Array(tables)))?;
    }
    if !cli.quiet {
        eprintln!("wrote artifacts for ell = {ell} to {}", dir.display());
    }
    Ok(())
}

/// Parameters of [`run_suite`]; `None` selects the default range.
#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    pub k: Option<u32>,
    pub ell: Option<u32>,
    pub n: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub quiet: bool,
}

impl SuiteOptions {
    fn ks(&self, default: u32) -> std::ops::RangeInclusive<u32> {
        0..=self.k.unwrap_or(default)
    }

    fn ells(&self) -> Vec<u32> {
        self.ell.map_or_else(|| vec![1, 2, 3], |l| vec![l])
    }

    fn progress(&self, what: &str) {
        if !self.quiet {
            eprintln!("checking {what}");
        }
    }
}

fn or_fail(check: &str, ell: u32, r: crate::Result<CheckReport>) -> CheckReport {
    r.unwrap_or_else(|e| CheckReport::new(check).param("ell", ell).failed(json!({ "error": e.to_string() })))
}

/// Runs one suite, or all of them, and returns the reports in a fixed order.
pub fn run_suite(suite: Suite, o: &SuiteOptions) -> crate::Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Inverse {
        for k in o.ks(6) {
            o.progress(&format!("inverse k={k}"));
            out.push(stablebasis::verify_inverse(k));
        }
    }
    if all || suite == Suite::Residues {
        for k in o.ks(4) {
            o.progress(&format!("residues k={k}"));
            for jp in 0..=k {
                for i in 0..=jp {
                    out.push(stablebasis::verify_residues(k, i, jp));
                }
            }
        }
    }
    if all || suite == Suite::Linrel {
        for k in o.ks(5) {
            o.progress(&format!("linrel k={k}"));
            out.push(stablebasis::verify_linrel(k));
        }
    }
    if all || suite == Suite::Constructions {
        for k in o.ks(6) {
            o.progress(&format!("constructions k={k}"));
            out.push(rmatrix::verify_equal_constructions(k));
            out.push(rmatrix::verify_lu(k));
        }
    }
    if all || suite == Suite::Unitarity {
        for k in o.ks(6) {
            o.progress(&format!("unitarity k={k}"));
            out.push(rmatrix::verify_unitarity_block(k));
        }
        for ell in o.ells() {
            o.progress(&format!("unitarity ell={ell}"));
            out.push(or_fail("unitarity", ell, rmatrix::verify_unitarity_full(ell)));
            out.push(or_fail("identity_at_zero", ell, rmatrix::verify_identity_at_zero(ell)));
        }
    }
    if all || suite == Suite::Ybe {
        for ell in o.ells() {
            o.progress(&format!("ybe ell={ell}"));
            out.push(or_fail("ybe", ell, rmatrix::verify_ybe_random(ell, o.trials, o.seed)));
        }
    }
    if all || suite == Suite::Oracle {
        for ell in o.ells() {
            o.progress(&format!("oracle ell={ell}"));
            out.extend(oracle_reports(ell)?);
        }
    }
    if all || suite == Suite::Counting {
        o.progress("counting");
        let n = o.n.unwrap_or(4);
        let ell = o.ell.unwrap_or(4);
        out.push(moduli::verify_counting(n, ell));
        out.push(moduli::verify_dimensions(n, ell.max(6)));
    }
    if all || suite == Suite::Geometry {
        for k in o.ks(5) {
            o.progress(&format!("geometry k={k}"));
            out.push(stablebasis::verify_geometry(k));
        }
    }
    Ok(out)
}

/// Projectors, equivariance, spectral decomposition and Mobius ratios.
pub fn oracle_reports(ell: u32) -> crate::Result<Vec<CheckReport>> {
    let r = assemble_full(ell)?;
    let mut out = vec![oracle::verify_projectors(ell), rmatrix::verify_block_structure(&r)];
    let eq = oracle::verify_sl2_commutation(&r);
    let commutes = eq.report.passed();
    out.push(eq.report);
    if commutes {
        match oracle::spectral_decompose(&r) {
            Ok(s) => {
                out.push(oracle::verify_mobius_ratios(&s.rho).param("ell", ell));
                out.push(s.report);
            }
            Err(e) => out.push(CheckReport::new("spectral").param("ell", ell).failed(json!({ "error": e.to_string() }))),
        }
    }
    Ok(out)
}
