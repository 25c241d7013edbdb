//! `jacobi-spectra` commands.
//!
//! Exit codes: 0 success, 1 property failure, 2 input error, 3 I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::jost::jost_backsubstitute;
use crate::output::{format_complex, format_number, region_svg, write_jost_grid, write_region_grid, PlotWindow};
use crate::regions::{region_grid, GridSpec, RegionReport};
use crate::spec_file::{OperatorSpec, SpecError};
use crate::spectrum::{discrete_spectrum, reconcile, ReconcileOptions};
use crate::verify::{render_report, run_all, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_CORPUS_SIZE: usize = 200;

#[derive(Debug, Parser)]
#[command(name = "jacobi-spectra", version, about = "Jost functions and discrete spectrum of complex Jacobi matrices")]
pub struct Cli {
    /// Directory for written artifacts.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Jost polynomial; optionally grid |v₀(z)|.
    Jost(JostArgs),
    /// Discrete spectrum from Jost zeros, checked against matrix truncations.
    Spectrum(SpectrumArgs),
    /// Omega threshold, no-spectrum verdict and spectrum-free region.
    Region(RegionArgs),
    /// Run the seeded property suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct JostArgs {
    pub spec: PathBuf,
    /// z-grid as RE0:RE1:IM0:IM1:RES, written to DIR/jost_grid.csv.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    pub spec: PathBuf,
    /// Truncation size.
    #[arg(long, default_value_t = 400)]
    pub n: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub match_tol: f64,
    #[arg(long, default_value_t = 0.05)]
    pub band_margin: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub stability_tol: f64,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    pub spec: PathBuf,
    /// λ-grid as RE0:RE1:IM0:IM1:RES, written to DIR/region_grid.csv.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Write a schematic SVG plot.
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, env = "JACOBI_SPECTRA_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_CORPUS_SIZE)]
    pub corpus_size: usize,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Io(String),
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Io { .. } => Failure::Io(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

/// Parses `RE0:RE1:IM0:IM1:RES`.
pub fn parse_grid(text: &str) -> crate::Result<GridSpec> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || crate::Error::InvalidGrid(format!("expected RE0:RE1:IM0:IM1:RES, got `{text}`"));
    if parts.len() != 5 {
        return Err(bad());
    }
    let mut bounds = [0.0; 4];
    for (slot, part) in bounds.iter_mut().zip(&parts) {
        *slot = part.trim().parse().map_err(|_| bad())?;
    }
    let res: usize = parts[4].trim().parse().map_err(|_| bad())?;
    GridSpec::new((bounds[0], bounds[1]), (bounds[2], bounds[3]), res, res)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    execute(&cli, stdout, stderr)
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Jost(args) => cmd_jost(args, cli.out.as_deref(), stdout),
        Command::Spectrum(args) => cmd_spectrum(args, stdout),
        Command::Region(args) => cmd_region(args, cli.out.as_deref(), stdout),
        Command::Verify(args) => cmd_verify(args, cli.out.as_deref(), stdout),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(stderr, "I/O error: {msg}");
            EXIT_IO
        }
    }
}

fn artifact_path(out: Option<&Path>, file: &str) -> Result<PathBuf, Failure> {
    let dir = out.unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
    Ok(dir.join(file))
}

fn write_file(path: &Path, body: impl FnOnce(&mut io::BufWriter<fs::File>) -> io::Result<()>) -> Result<(), Failure> {
    let file = fs::File::create(path).map_err(|e| io_failure(path, e))?;
    let mut w = io::BufWriter::new(file);
    body(&mut w)
        .and_then(|_| w.flush())
        .map_err(|e| io_failure(path, e))
}

fn out_err(e: io::Error) -> Failure {
    Failure::Io(format!("stdout: {e}"))
}

fn header(out: &mut dyn Write, spec: &OperatorSpec) -> io::Result<()> {
    if let Some(name) = &spec.name {
        writeln!(out, "operator: {name}")?;
    }
    writeln!(out, "support bound M = {}", spec.operator.support_bound())
}

fn cmd_jost(args: &JostArgs, out_dir: Option<&Path>, out: &mut dyn Write) -> Result<i32, Failure> {
    let grid = args
        .grid
        .as_deref()
        .map(parse_grid)
        .transpose()
        .map_err(|e| Failure::Input(e.to_string()))?;
    let spec = OperatorSpec::load(&args.spec)?;
    let jost = jost_backsubstitute(&spec.operator);
    let v0 = jost.jost_function();
    header(out, &spec).map_err(out_err)?;
    writeln!(out, "jost function v0(z), degree {}:", v0.degree()).map_err(out_err)?;
    for (k, c) in v0.coefficients().iter().enumerate() {
        writeln!(out, "  z^{k}: {}", format_complex(*c)).map_err(out_err)?;
    }
    if let Some(grid) = grid {
        let points: Vec<(Complex64, f64)> = grid.points().map(|z| (z, v0.eval(z).norm())).collect();
        let path = artifact_path(out_dir, "jost_grid.csv")?;
        write_file(&path, |w| write_jost_grid(w, &points))?;
        writeln!(out, "wrote {}", path.display()).map_err(out_err)?;
    }
    Ok(EXIT_OK)
}

fn cmd_spectrum(args: &SpectrumArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let spec = OperatorSpec::load(&args.spec)?;
    let options = ReconcileOptions {
        n: args.n,
        band_margin: args.band_margin,
        match_tol: args.match_tol,
        stability_tol: args.stability_tol,
    };
    let result = reconcile(&spec.operator, options).map_err(|e| Failure::Input(e.to_string()))?;
    let w = |e| out_err(e);
    header(out, &spec).map_err(w)?;
    if result.eigenvalues_from_zeros.is_empty() {
        writeln!(out, "no discrete spectrum").map_err(w)?;
    } else {
        writeln!(out, "discrete spectrum ({} eigenvalues):", result.eigenvalues_from_zeros.len()).map_err(w)?;
        for ev in &result.eigenvalues_from_zeros {
            writeln!(
                out,
                "  lambda = {}  z = {}  multiplicity {}",
                format_complex(ev.lambda),
                format_complex(ev.z),
                ev.multiplicity
            )
            .map_err(w)?;
        }
    }
    writeln!(
        out,
        "truncation check: N = {} (stability against N = {}), match tol {:e}, band margin {}",
        options.n,
        2 * options.n,
        options.match_tol,
        options.band_margin
    )
    .map_err(w)?;
    for m in &result.matches {
        writeln!(out, "  matched    {}  distance {:.3e}", format_complex(m.eigenvalue.lambda), m.distance).map_err(w)?;
    }
    for ev in &result.near_boundary {
        writeln!(out, "  near band  {}  not resolvable at this N", format_complex(ev.lambda)).map_err(w)?;
    }
    for m in &result.unmatched_zeros {
        writeln!(
            out,
            "  MISMATCH   {}  nearest truncation eigenvalue {} at {:.3e}",
            format_complex(m.eigenvalue.lambda),
            format_complex(m.oracle),
            m.distance
        )
        .map_err(w)?;
    }
    for (v, d) in &result.unmatched_oracle {
        writeln!(out, "  MISMATCH   truncation eigenvalue {} has no Jost zero (nearest at {d:.3e})", format_complex(*v))
            .map_err(w)?;
    }
    writeln!(
        out,
        "  {} stable off-band truncation eigenvalues, {} near the band",
        result.stable_off_band.len(),
        result.band_artifacts
    )
    .map_err(w)?;
    if result.is_consistent() {
        writeln!(out, "result: consistent").map_err(w)?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "result: MISMATCH").map_err(w)?;
        Ok(EXIT_PROPERTY)
    }
}

fn cmd_region(args: &RegionArgs, out_dir: Option<&Path>, out: &mut dyn Write) -> Result<i32, Failure> {
    let grid = args
        .grid
        .as_deref()
        .map(parse_grid)
        .transpose()
        .map_err(|e| Failure::Input(e.to_string()))?;
    let spec = OperatorSpec::load(&args.spec)?;
    let op = &spec.operator;
    let report = RegionReport::new(op);
    let w = |e| out_err(e);
    header(out, &spec).map_err(w)?;
    writeln!(out, "t = {}", format_number(report.t)).map_err(w)?;
    writeln!(out, "sigma0(0) = {}", format_number(report.d0)).map_err(w)?;
    writeln!(out, "sigma1(0) = {}", format_number(report.d1)).map_err(w)?;
    writeln!(out, "omega threshold 2 sigma0(0) / t = {}", format_number(report.omega_threshold)).map_err(w)?;
    writeln!(out, "no discrete spectrum (sigma1(0) < t): {}", report.no_spectrum).map_err(w)?;
    match report.rectangles {
        Some(r) => writeln!(
            out,
            "rectangles: {} <= |Re w| <= {}, |Im w| <= {}",
            format_number(r.re_lo),
            format_number(r.re_hi),
            format_number(r.im_bound)
        )
        .map_err(w)?,
        None => writeln!(out, "rectangles: not applicable (c = {} >= 2)", format_number(report.c)).map_err(w)?,
    }
    if let Some(grid) = grid {
        let points = region_grid(op, &grid);
        let path = artifact_path(out_dir, "region_grid.csv")?;
        write_file(&path, |f| write_region_grid(f, &points))?;
        writeln!(out, "wrote {}", path.display()).map_err(w)?;
    }
    if let Some(svg_path) = &args.svg {
        let eigenvalues: Vec<Complex64> = discrete_spectrum(op).iter().map(|e| e.lambda).collect();
        let svg = region_svg(&report, &eigenvalues, PlotWindow::default());
        if let Some(parent) = svg_path.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent).map_err(|e| io_failure(parent, e))?;
        }
        fs::write(svg_path, svg).map_err(|e| io_failure(svg_path, e))?;
        writeln!(out, "wrote {}", svg_path.display()).map_err(w)?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, out_dir: Option<&Path>, out: &mut dyn Write) -> Result<i32, Failure> {
    let config = VerifyConfig::new(args.seed, args.corpus_size);
    let outcomes = run_all(&config);
    let report = render_report(&config, &outcomes);
    out.write_all(report.as_bytes()).map_err(out_err)?;
    if let Some(dir) = out_dir {
        let path = artifact_path(Some(dir), "verify_report.txt")?;
        fs::write(&path, &report).map_err(|e| io_failure(&path, e))?;
    }
    Ok(if outcomes.iter().all(|o| o.ok()) {
        EXIT_OK
    } else {
        EXIT_PROPERTY
    })
}
