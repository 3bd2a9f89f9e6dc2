//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cipher::xor_apply;
use crate::config::{KeySpec, RunConfig};
use crate::error::{Error, Result};
use crate::keystream::{generate_keystream, Component, Normalization};
use crate::metrics::{efficiency_index, histogram, WorkScores};
use crate::pgm::{read_pgm, write_pgm};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

const EXIT_CODES_HELP: &str = "\
Exit codes:
  0  success
  1  usage error (bad flags, dimension mismatch)
  2  I/O error (unreadable or malformed file)
  3  numeric or domain error (integration blow-up, undefined metric)";

#[derive(Debug, Parser)]
#[command(
    name = "lbe-cipher",
    version,
    about = "Encrypt 8-bit grayscale PGM images with a Lorenz lower-bound-error keystream",
    after_help = EXIT_CODES_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// XOR a PGM image with the keystream.
    Encrypt(CryptArgs),
    /// Same operation as encrypt; XOR is its own inverse.
    Decrypt(CryptArgs),
    /// Emit the keystream for the given dimensions.
    Keystream(KeystreamArgs),
    /// Entropy, adjacent-pixel correlations and histogram of a PGM image.
    Analyze(AnalyzeArgs),
    /// Efficiency index for each row of a `label,corr_h,corr_v,corr_d,entropy` CSV.
    Index(IndexArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    MantissaLsb,
    MinmaxScale,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ComponentArg {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum KeyFormat {
    #[default]
    Hex,
    Raw,
}

/// Key tuple. Flags override the config file, which overrides the defaults.
#[derive(Debug, Args)]
struct KeyArgs {
    /// TOML key file.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// sigma [default: 16]
    #[arg(long)]
    sigma: Option<f64>,
    /// rho [default: 45.92]
    #[arg(long)]
    rho: Option<f64>,
    /// beta [default: 4]
    #[arg(long)]
    beta: Option<f64>,
    /// RK4 step size [default: 1e-6]
    #[arg(long, value_name = "STEP")]
    h: Option<f64>,
    /// Initial x [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    x0: Option<f64>,
    /// Initial y [default: 0.5]
    #[arg(long, allow_negative_numbers = true)]
    y0: Option<f64>,
    /// Initial z [default: 0.9]
    #[arg(long, allow_negative_numbers = true)]
    z0: Option<f64>,
    /// Samples discarded before key bytes are taken [default: 2000]
    #[arg(long)]
    transient: Option<usize>,
    /// Byte extraction [default: mantissa-lsb]
    #[arg(long, value_enum)]
    strategy: Option<StrategyArg>,
    /// State component used for the lower bound error [default: y]
    #[arg(long, value_enum)]
    component: Option<ComponentArg>,
}

impl KeyArgs {
    fn resolve(&self) -> Result<KeySpec> {
        let mut spec = match &self.config {
            Some(path) => KeySpec::load(path)?,
            None => KeySpec::default(),
        };
        let p = &mut spec.params;
        for (slot, flag) in [
            (&mut p.sigma, self.sigma),
            (&mut p.rho, self.rho),
            (&mut p.beta, self.beta),
            (&mut p.h, self.h),
            (&mut spec.initial.x, self.x0),
            (&mut spec.initial.y, self.y0),
            (&mut spec.initial.z, self.z0),
        ] {
            if let Some(v) = flag {
                *slot = v;
            }
        }
        if let Some(t) = self.transient {
            spec.transient = t;
        }
        if let Some(s) = self.strategy {
            spec.strategy = match s {
                StrategyArg::MantissaLsb => Normalization::MantissaLsb,
                StrategyArg::MinmaxScale => Normalization::MinmaxScale,
            };
        }
        if let Some(c) = self.component {
            spec.component = match c {
                ComponentArg::X => Component::X,
                ComponentArg::Y => Component::Y,
                ComponentArg::Z => Component::Z,
            };
        }
        spec.params.validate()?;
        if !spec.initial.is_finite() {
            return Err(Error::Domain(format!(
                "initial state must be finite, got {:?}",
                spec.initial
            )));
        }
        Ok(spec)
    }
}

#[derive(Debug, Args)]
struct CryptArgs {
    input: PathBuf,
    output: PathBuf,
    /// Key rows; must match the image when given.
    #[arg(long)]
    rows: Option<usize>,
    /// Key columns; must match the image when given.
    #[arg(long)]
    cols: Option<usize>,
    /// Also write a metrics CSV of the output image.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    #[command(flatten)]
    key: KeyArgs,
}

#[derive(Debug, Args)]
struct KeystreamArgs {
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    #[arg(long, value_enum, default_value_t = KeyFormat::Hex)]
    format: KeyFormat,
    /// Output file; stdout when omitted.
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(flatten)]
    key: KeyArgs,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    input: PathBuf,
    /// Metrics CSV (`metric,value`); stdout when omitted.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Histogram CSV (`level,count`).
    #[arg(long, value_name = "PATH")]
    histogram: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct IndexArgs {
    input: PathBuf,
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io { .. } | Error::Pgm { .. } | Error::Parse { .. } => EXIT_IO,
        Error::DimensionMismatch { .. } => EXIT_USAGE,
        _ => EXIT_NUMERIC,
    }
}

/// Parse `argv` (program name first) and run the command.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match command {
        Command::Encrypt(args) | Command::Decrypt(args) => crypt(args, err),
        Command::Keystream(args) => keystream(args, out, err),
        Command::Analyze(args) => analyze(args, out),
        Command::Index(args) => index(args, out),
    }
}

fn stdout_io(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn warn_quality(key: &crate::keystream::Keystream, err: &mut dyn Write) {
    for w in key.quality().warnings() {
        let _ = writeln!(err, "warning: {w}");
    }
}

fn crypt(args: CryptArgs, err: &mut dyn Write) -> Result<()> {
    let key = args.key.resolve()?;
    let image = read_pgm(&args.input)?;
    let dims = match (args.rows, args.cols) {
        (None, None) => None,
        (r, c) => Some((r.unwrap_or(image.rows()), c.unwrap_or(image.cols()))),
    };
    let run = RunConfig::resolve(
        &key,
        dims,
        (image.rows(), image.cols()),
        args.input,
        args.output,
        args.report,
    )?;
    let stream = generate_keystream(&run.params, run.initial, &run.keystream)?;
    warn_quality(&stream, err);
    let result = xor_apply(&image, &stream)?;
    write_pgm(&result, &run.output_path)?;
    if let Some(path) = &run.report_path {
        write_file(path, metrics_csv(&result)?.as_bytes())?;
    }
    Ok(())
}

fn keystream(args: KeystreamArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let spec = args.key.resolve()?;
    let stream = generate_keystream(
        &spec.params,
        spec.initial,
        &spec.keystream_config(args.rows, args.cols),
    )?;
    warn_quality(&stream, err);
    let payload = match args.format {
        KeyFormat::Hex => {
            let mut s = stream.to_hex();
            s.push('\n');
            s.into_bytes()
        }
        KeyFormat::Raw => stream.into_bytes(),
    };
    match &args.output {
        Some(path) => write_file(path, &payload),
        None => out.write_all(&payload).map_err(stdout_io),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// `metric,value` CSV for one image.
pub fn metrics_csv(image: &crate::image::GrayImage) -> Result<String> {
    let scores = WorkScores::measure("", image)?;
    let hist = histogram(image);
    let rows: [(&str, String); 9] = [
        ("rows", image.rows().to_string()),
        ("cols", image.cols().to_string()),
        ("entropy", scores.entropy.to_string()),
        ("corr_horizontal", scores.corr_h.to_string()),
        ("corr_vertical", scores.corr_v.to_string()),
        ("corr_diagonal", scores.corr_d.to_string()),
        ("hist_min", hist.min().to_string()),
        ("hist_max", hist.max().to_string()),
        ("hist_max_min_ratio", hist.max_min_ratio().to_string()),
    ];
    let mut csv = String::from("metric,value\n");
    for (metric, value) in rows {
        csv.push_str(metric);
        csv.push(',');
        csv.push_str(&value);
        csv.push('\n');
    }
    Ok(csv)
}

/// `level,count` CSV with all 256 intensity levels.
pub fn histogram_csv(image: &crate::image::GrayImage) -> String {
    let mut csv = String::from("level,count\n");
    for (level, count) in histogram(image).counts().iter().enumerate() {
        csv.push_str(&format!("{level},{count}\n"));
    }
    csv
}

fn analyze(args: AnalyzeArgs, out: &mut dyn Write) -> Result<()> {
    let image = read_pgm(&args.input)?;
    let report = metrics_csv(&image)?;
    match &args.report {
        Some(path) => write_file(path, report.as_bytes())?,
        None => out.write_all(report.as_bytes()).map_err(stdout_io)?,
    }
    if let Some(path) = &args.histogram {
        write_file(path, histogram_csv(&image).as_bytes())?;
    }
    Ok(())
}

/// Parse a `label,corr_h,corr_v,corr_d,entropy` CSV.
pub fn read_work_scores(path: &Path) -> Result<Vec<WorkScores>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_work_scores(&text).map_err(|message| Error::Parse {
        path: path.to_owned(),
        message,
    })
}

pub fn parse_work_scores(text: &str) -> std::result::Result<Vec<WorkScores>, String> {
    const HEADER: [&str; 5] = ["label", "corr_h", "corr_v", "corr_d", "entropy"];
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or("empty file")?;
    let names: Vec<&str> = header.split(',').map(str::trim).collect();
    if names != HEADER {
        return Err(format!(
            "expected header {:?}, got {header:?}",
            HEADER.join(",")
        ));
    }
    let mut works = Vec::new();
    for (i, line) in lines {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 5 {
            return Err(format!(
                "line {}: expected 5 fields, got {}",
                i + 1,
                fields.len()
            ));
        }
        let num = |k: usize| {
            fields[k].parse::<f64>().map_err(|_| {
                format!(
                    "line {}: {} is not a number: {:?}",
                    i + 1,
                    HEADER[k],
                    fields[k]
                )
            })
        };
        works.push(WorkScores {
            label: fields[0].to_string(),
            corr_h: num(1)?,
            corr_v: num(2)?,
            corr_d: num(3)?,
            entropy: num(4)?,
        });
    }
    if works.is_empty() {
        return Err("no data rows".into());
    }
    Ok(works)
}

fn index(args: IndexArgs, out: &mut dyn Write) -> Result<()> {
    let works = read_work_scores(&args.input)?;
    let ic = efficiency_index(&works)?;
    let mut text = String::from("label,efficiency\n");
    for (w, v) in works.iter().zip(ic) {
        text.push_str(&format!("{},{v}\n", w.label));
    }
    out.write_all(text.as_bytes()).map_err(stdout_io)
}
