//! `diamond`: batch front end for single points, sweeps, threshold searches
//! and the validation harness.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use diamond_core::output::{OutputRow, CSV_HEADER};
use diamond_core::sweep::{run_sweep, ParamRange, SweepSpec, DEFAULT_GRID_CAP, DEFAULT_TEMP_FLOOR};
use diamond_core::threshold::{find_threshold, ScanParam, ThresholdQuery, DEFAULT_EPS_DEAD, DEFAULT_TOLERANCE};
use diamond_core::validate::{run_validate, Finding, ValidationOptions, DEFAULT_POINTS};
use diamond_core::{ChainParams, Error, Execution, Measure, MeasureSet, ReportOptions, StateSource, VElement};

const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_VALIDATION: u8 = 4;
const EXIT_INTERRUPTED: u8 = 130;

#[derive(Parser)]
#[command(name = "diamond", version, about = "Thermal quantum correlations of the Ising-Heisenberg diamond chain")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report every measure at a single parameter point.
    Point(PointArgs),
    /// Evaluate a grid of parameter points and emit one row per point.
    Sweep(SweepArgs),
    /// Locate where a measure dies along T or H.
    Threshold(ThresholdArgs),
    /// Run the construction, oracle and symmetry checks.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

/// Output options shared by every subcommand.
#[derive(Args)]
struct OutputArgs {
    /// Write to PATH instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Build states from the closed form using the verbatim |11> weight
    /// instead of the exact trace-out.
    #[arg(long)]
    use_verbatim_v: bool,
}

impl OutputArgs {
    fn writer(&self) -> io::Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    fn source(&self) -> StateSource {
        if self.use_verbatim_v {
            StateSource::ClosedForm(VElement::Verbatim)
        } else {
            StateSource::Exact
        }
    }
}

fn parse_measures(s: &str) -> Result<MeasureSet, String> {
    let list = s.split(',').map(str::parse).collect::<Result<Vec<Measure>, _>>()?;
    Ok(MeasureSet::only(&list))
}

#[derive(Args)]
struct PointArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    j: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    j2: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    jm: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    field: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    temp: f64,
    /// Substitute this temperature when --temp is zero or negative.
    #[arg(long, value_name = "REAL")]
    temp_floor: Option<f64>,
    /// Comma-separated subset of concurrence,qd,gmqd,gqd1.
    #[arg(long, value_parser = parse_measures, default_value = "concurrence,qd,gmqd,gqd1")]
    measures: MeasureSet,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Value or start:stop:steps.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    j: ParamRange,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    j2: ParamRange,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    jm: ParamRange,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    field: ParamRange,
    #[arg(long, default_value = "0.5", allow_hyphen_values = true)]
    temp: ParamRange,
    /// Substituted for any requested temperature <= 0.
    #[arg(long, value_name = "REAL", default_value_t = DEFAULT_TEMP_FLOOR)]
    temp_floor: f64,
    /// Largest number of grid points accepted.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_GRID_CAP)]
    grid_cap: u64,
    #[arg(long, value_parser = parse_measures, default_value = "concurrence,qd,gmqd,gqd1")]
    measures: MeasureSet,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ThresholdArgs {
    /// Scanned parameter: T or H.
    #[arg(long)]
    scan: ScanParam,
    #[arg(long, allow_negative_numbers = true)]
    lo: f64,
    #[arg(long, allow_negative_numbers = true)]
    hi: f64,
    #[arg(long, default_value = "concurrence")]
    measure: Measure,
    #[arg(long, default_value_t = DEFAULT_EPS_DEAD)]
    eps_dead: f64,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    j: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    j2: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    jm: f64,
    /// Ignored when scanning H.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    field: f64,
    /// Ignored when scanning T.
    #[arg(long, default_value_t = 0.01)]
    temp: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ValidateArgs {
    /// Number of validation points.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_POINTS as u64)]
    grid_cap: u64,
    #[command(flatten)]
    output: OutputArgs,
}

/// Failure modes, each mapped to a process exit status.
enum CliError {
    Usage(String),
    Domain(Error),
    Validation,
    Interrupted,
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidRange(_) | Error::InvalidGrid(_) => CliError::Usage(e.to_string()),
            Error::Io(msg) => CliError::Io(io::Error::other(msg)),
            other => CliError::Domain(other),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn default_exec() -> Execution {
    Execution::default()
}

fn write_rows<'a>(
    out: &mut dyn Write,
    format: Format,
    header: bool,
    rows: impl IntoIterator<Item = &'a OutputRow>,
) -> io::Result<()> {
    if header && matches!(format, Format::Csv) {
        writeln!(out, "{CSV_HEADER}")?;
    }
    for row in rows {
        write_row(out, format, row)?;
    }
    Ok(())
}

fn write_row(out: &mut dyn Write, format: Format, row: &OutputRow) -> io::Result<()> {
    match format {
        Format::Csv => writeln!(out, "{}", row.to_csv()),
        Format::Jsonl => writeln!(out, "{}", serde_json::to_string(row).map_err(io::Error::other)?),
    }
}

fn run_point(args: PointArgs) -> Result<(), CliError> {
    let mut spec = SweepSpec::single(ChainParams::new(args.j, args.j2, args.jm, args.field, args.temp));
    spec.measures = args.measures;
    spec.source = args.output.source();
    let floored = args.temp <= 0.0;
    match args.temp_floor {
        Some(floor) => spec.temp_floor = floor,
        None if floored => {
            return Err(CliError::Domain(Error::TemperatureTooLow(args.temp)));
        }
        None => {}
    }
    spec.validate()?;
    let report = spec.evaluate(0)?;
    let mut out = args.output.writer()?;
    write_rows(&mut *out, args.output.format, true, [&OutputRow::from(&report)])?;
    out.flush()?;
    Ok(())
}

fn run_sweep_cmd(args: SweepArgs, cancel: &AtomicBool) -> Result<(), CliError> {
    let spec = SweepSpec {
        t: args.temp,
        h: args.field,
        j: args.j,
        j2: args.j2,
        jm: args.jm,
        measures: args.measures,
        temp_floor: args.temp_floor,
        grid_cap: args.grid_cap,
        source: args.output.source(),
        grid: Default::default(),
    };
    // Reject bad grids before touching the output file.
    spec.validate()?;
    let mut out = args.output.writer()?;
    let format = args.output.format;
    write_rows(&mut *out, format, true, [])?;
    let outcome = run_sweep(&spec, default_exec(), Some(cancel), |report| {
        write_row(&mut *out, format, &OutputRow::from(report))
    })?;
    out.flush()?;
    if outcome.cancelled {
        eprintln!("interrupted after {} of {} rows", outcome.rows, spec.len());
        return Err(CliError::Interrupted);
    }
    Ok(())
}

fn run_threshold(args: ThresholdArgs) -> Result<(), CliError> {
    let fixed = ChainParams::new(args.j, args.j2, args.jm, args.field, args.temp);
    let mut query = ThresholdQuery::new(args.scan, args.lo, args.hi, args.measure);
    query.eps_dead = args.eps_dead;
    query.tol = args.tol;
    let opts = ReportOptions { source: args.output.source(), exec: default_exec(), ..ReportOptions::default() };
    let scan = match args.scan {
        ScanParam::Temperature => "T",
        ScanParam::Field => "H",
    };
    let mut out = args.output.writer()?;
    match find_threshold(&query, &fixed, &opts) {
        Ok(x) => match args.output.format {
            Format::Csv => writeln!(out, "scan,measure,threshold\n{scan},{},{}", args.measure, diamond_core::output::fmt_sig(x))?,
            Format::Jsonl => writeln!(
                out,
                "{}",
                serde_json::json!({ "scan": scan, "measure": args.measure.name(), "threshold": x })
            )?,
        },
        // A measure that never dies has no threshold; that is an answer, not an error.
        Err(Error::NoThreshold) => match args.output.format {
            Format::Csv => writeln!(out, "scan,measure,threshold\n{scan},{},NoThreshold", args.measure)?,
            Format::Jsonl => writeln!(
                out,
                "{}",
                serde_json::json!({ "scan": scan, "measure": args.measure.name(), "threshold": null })
            )?,
        },
        Err(e) => return Err(e.into()),
    }
    out.flush()?;
    Ok(())
}

fn print_findings(out: &mut dyn Write, title: &str, findings: &[Finding]) -> io::Result<()> {
    writeln!(out, "{title}: {}", findings.len())?;
    for f in findings {
        let p = f.params;
        writeln!(
            out,
            "  [{}] J={} J2={} Jm={} H={} T={}: {}",
            f.check, p.j, p.j2, p.jm, p.h, p.t, f.detail
        )?;
    }
    Ok(())
}

fn run_validate_cmd(args: ValidateArgs) -> Result<(), CliError> {
    let opts = ValidationOptions {
        points: usize::try_from(args.grid_cap).map_err(|_| CliError::Usage("--grid-cap too large".into()))?,
        use_verbatim_v: args.output.use_verbatim_v,
        exec: default_exec(),
        ..ValidationOptions::default()
    };
    let summary = run_validate(&opts);
    let mut out = args.output.writer()?;
    match args.output.format {
        Format::Jsonl => writeln!(out, "{}", serde_json::to_string(&summary).map_err(io::Error::other)?)?,
        Format::Csv => {
            writeln!(out, "points: {}", summary.points)?;
            writeln!(out, "checks: {}", summary.checks)?;
            print_findings(&mut *out, "failures", &summary.failures)?;
            print_findings(&mut *out, "documented deviations", &summary.deviations)?;
            print_findings(&mut *out, "warnings", &summary.warnings)?;
            writeln!(out, "result: {}", if summary.passed() { "PASS" } else { "FAIL" })?;
        }
    }
    out.flush()?;
    if summary.passed() {
        Ok(())
    } else {
        Err(CliError::Validation)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cancel = Arc::new(AtomicBool::new(false));
    {
        let cancel = Arc::clone(&cancel);
        // Only sweeps poll the flag; elsewhere the default behaviour is fine.
        if matches!(cli.command, Command::Sweep(_)) {
            let _ = ctrlc::set_handler(move || cancel.store(true, Ordering::SeqCst));
        }
    }

    let result = match cli.command {
        Command::Point(args) => run_point(args),
        Command::Sweep(args) => run_sweep_cmd(args, &cancel),
        Command::Threshold(args) => run_threshold(args),
        Command::Validate(args) => run_validate_cmd(args),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            if let Error::TemperatureTooLow(_) = e {
                eprintln!("hint: pass --temp-floor REAL to evaluate at a small positive temperature instead");
            }
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(CliError::Validation) => ExitCode::from(EXIT_VALIDATION),
        Err(CliError::Interrupted) => ExitCode::from(EXIT_INTERRUPTED),
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
