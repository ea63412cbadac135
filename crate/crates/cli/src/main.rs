mod family;

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use prodcss::bitlin::write_alist;
use prodcss::build::{predict_spc_stats, spc_logical_witnesses};
use prodcss::meta::measurement_overhead;
use prodcss::sim::{write_csv, ChannelSpec, DecoderKind, Experiment};
use prodcss::{BitMatrix, Error};

use family::{CodeArgs, NamedCode};

const EXIT_USAGE: u8 = 1;
const EXIT_INVARIANT: u8 = 2;
const EXIT_NOT_FOUND: u8 = 3;

/// Build, inspect and simulate CSS product codes and comparison families.
#[derive(Parser, Debug)]
#[command(name = "prodcss", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write Hx and Hz as alist files plus a metadata file.
    Construct {
        #[command(flatten)]
        code: CodeArgs,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Print code parameters, with closed-form predictions for SPC codes.
    Params {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Search for minimum-weight logical errors.
    Distance {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long = "max-weight", default_value_t = 4)]
        max_weight: usize,
        /// Only verify the closed-form minimum-weight logical of an SPC code.
        #[arg(long = "witness-only")]
        witness_only: bool,
    },
    /// Meta-check matrices, their distances and the measurement overhead.
    Metacheck {
        #[command(flatten)]
        code: CodeArgs,
        /// Bound for the meta-check distance search.
        #[arg(long = "max-weight", default_value_t = 3)]
        max_weight: usize,
        /// Directory for mx.alist and mz.alist.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo logical error rates, one CSV row per channel parameter.
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ChannelKind {
    Erasure,
    Depolarizing,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, value_enum, default_value = "bp")]
    decoder: DecoderArg,
    /// Defaults to erasure when --beta is given, depolarizing otherwise.
    #[arg(long, value_enum)]
    channel: Option<ChannelKind>,
    /// Erasure probability (repeatable).
    #[arg(long)]
    beta: Vec<f64>,
    /// Depolarizing probability (repeatable).
    #[arg(long)]
    epsilon: Vec<f64>,
    /// Syndrome read-out flip probability.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long = "max-iters", default_value_t = prodcss::BpConfig::DEFAULT_MAX_ITERS)]
    max_iters: usize,
    /// Stop a point early once this many failures are seen (checked every 1000 trials).
    #[arg(long = "min-failures")]
    min_failures: Option<u64>,
    /// CSV output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DecoderArg {
    ErasureMl,
    Bp,
    BpExtended,
}

impl From<DecoderArg> for DecoderKind {
    fn from(d: DecoderArg) -> Self {
        match d {
            DecoderArg::ErasureMl => DecoderKind::ErasureMl,
            DecoderArg::Bp => DecoderKind::Bp,
            DecoderArg::BpExtended => DecoderKind::BpExtended,
        }
    }
}

/// A finished run whose outcome is not plain success.
#[derive(Debug)]
struct NotFound;

impl std::fmt::Display for NotFound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("no logical error found up to the weight bound")
    }
}

impl std::error::Error for NotFound {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<NotFound>() => ExitCode::from(EXIT_NOT_FOUND),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::InvalidParameter(_) | Error::Config(_) | Error::Parse { .. } | Error::Io(_)) => EXIT_USAGE,
        Some(Error::NotCommuting { .. } | Error::Dimension(_)) if is_input_error(e) => EXIT_USAGE,
        Some(_) => EXIT_INVARIANT,
        None if e.downcast_ref::<io::Error>().is_some() => EXIT_USAGE,
        None => EXIT_INVARIANT,
    }
}

/// Errors raised while loading user-supplied matrices are usage errors.
fn is_input_error(e: &anyhow::Error) -> bool {
    e.chain().any(|c| c.to_string().starts_with("loading"))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Construct { code, out } => construct(&code, &out),
        Command::Params { code } => params(&code),
        Command::Distance {
            code,
            max_weight,
            witness_only,
        } => distance(&code, max_weight, witness_only),
        Command::Metacheck { code, max_weight, out } => metacheck(&code, max_weight, out.as_deref()),
        Command::Simulate(args) => simulate(&args),
    }
}

fn load(args: &CodeArgs) -> Result<NamedCode> {
    if args.hx.is_some() {
        args.load().context("loading check matrices")
    } else {
        args.load()
    }
}

fn write_matrix(path: &Path, m: &BitMatrix) -> Result<()> {
    let mut f = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
    write_alist(m, &mut f)?;
    f.flush()?;
    Ok(())
}

fn construct(args: &CodeArgs, out: &Path) -> Result<()> {
    let nc = load(args)?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    write_matrix(&out.join("hx.alist"), nc.code.hx())?;
    write_matrix(&out.join("hz.alist"), nc.code.hz())?;
    let stats = nc.code.stats();
    let mut meta = BufWriter::new(File::create(out.join("meta.txt"))?);
    writeln!(meta, "code: {}", nc.name)?;
    if let Some(seed) = args.seed {
        writeln!(meta, "seed: {seed}")?;
    }
    writeln!(meta, "{stats}")?;
    meta.flush()?;
    println!("{stats}");
    Ok(())
}

fn params(args: &CodeArgs) -> Result<()> {
    let nc = load(args)?;
    let stats = nc.code.stats();
    println!("code: {}", nc.name);
    println!("{stats}");
    let oh = measurement_overhead(&nc.code);
    println!(
        "measurements: {} (minimum {}, overhead {:.1}%)",
        oh.actual,
        oh.minimum,
        100.0 * oh.ratio
    );
    if let Some(p) = nc.spc {
        let pred = predict_spc_stats(p);
        println!("pure distance: {} / {}", pred.delta_x, pred.delta_z);
        if pred.stats != stats {
            bail!("closed-form parameters disagree with the construction: {}", pred.stats);
        }
    }
    Ok(())
}

fn distance(args: &CodeArgs, max_weight: usize, witness_only: bool) -> Result<()> {
    if max_weight == 0 {
        bail!(Error::InvalidParameter("--max-weight must be at least 1".into()));
    }
    let nc = load(args)?;
    let code = &nc.code;
    if witness_only {
        let Some(p) = nc.spc else {
            bail!(Error::Config("--witness-only needs the spc family".into()));
        };
        let (w, v) = spc_logical_witnesses(p);
        let zero_syndrome = code.hx().mul_vec(&w).is_zero() && code.hz().mul_vec(&w).is_zero();
        let certified = code.hx().mul_vec(&v).is_zero() && code.hz().mul_vec(&v).is_zero() && w.dot(&v);
        if !(zero_syndrome && certified) {
            bail!(Error::NonZeroSyndrome);
        }
        println!("weight-{} logical witness verified (X and Z type)", w.weight());
        return Ok(());
    }
    let report = code.search_min_logical(max_weight);
    println!("{report}");
    if report.found_weight.is_none() {
        return Err(NotFound.into());
    }
    Ok(())
}

fn metacheck(args: &CodeArgs, max_weight: usize, out: Option<&Path>) -> Result<()> {
    let nc = load(args)?;
    let (mx, mz) = nc.metachecks()?;
    for (label, m) in [("X", &mx), ("Z", &mz)] {
        let dist = match m.distance(max_weight) {
            Some(d) => format!("{d}"),
            None if m.rows() == 0 => "none".into(),
            None => format!(">= {}", max_weight + 1),
        };
        println!(
            "{label}: {} meta-checks ({} independent) on {} checks of rank {}, row weight {}, distance {dist}",
            m.rows(),
            m.parent_rows() - m.parent_rank(),
            m.parent_rows(),
            m.parent_rank(),
            m.matrix().max_row_weight()
        );
    }
    let oh = measurement_overhead(&nc.code);
    println!("overhead: {} measurements for {} independent checks ({:.1}%)", oh.actual, oh.minimum, 100.0 * oh.ratio);
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
        write_matrix(&dir.join("mx.alist"), mx.matrix())?;
        write_matrix(&dir.join("mz.alist"), mz.matrix())?;
    }
    Ok(())
}

fn simulate(args: &SimulateArgs) -> Result<()> {
    let channel_kind = args.channel.unwrap_or(if args.beta.is_empty() {
        ChannelKind::Depolarizing
    } else {
        ChannelKind::Erasure
    });
    let channels: Vec<ChannelSpec> = match channel_kind {
        ChannelKind::Erasure => {
            if !args.epsilon.is_empty() || args.p.is_some() {
                bail!(Error::Config("the erasure channel takes --beta only".into()));
            }
            args.beta.iter().map(|&b| ChannelSpec::Erasure(b)).collect()
        }
        ChannelKind::Depolarizing => {
            if !args.beta.is_empty() {
                bail!(Error::Config("the depolarizing channel takes --epsilon".into()));
            }
            args.epsilon
                .iter()
                .map(|&e| match args.p {
                    Some(p) => ChannelSpec::DepolarizingWithReadout(e, p),
                    None => ChannelSpec::Depolarizing(e),
                })
                .collect()
        }
    };
    if channels.is_empty() {
        bail!(Error::Config("give at least one --beta or --epsilon value".into()));
    }
    if args.max_iters == 0 {
        bail!(Error::InvalidParameter("--max-iters must be at least 1".into()));
    }
    let nc = load(&args.code)?;
    let decoder = DecoderKind::from(args.decoder);
    let mut exp = Experiment::new(nc.code.clone(), decoder).with_max_iters(args.max_iters);
    if decoder == DecoderKind::BpExtended {
        let (mx, mz) = nc.metachecks()?;
        exp = exp.with_metachecks(mx, mz)?;
    }
    for ch in &channels {
        exp.check(ch)?;
    }
    // --seed picks both the code instance (randomized families) and the trial streams.
    let seed = args.code.seed.unwrap_or(1);
    let points = channels
        .iter()
        .map(|&ch| match args.min_failures {
            Some(m) => exp.run_point_until(ch, args.trials, m, 1000, seed),
            None => exp.run_point(ch, args.trials, seed),
        })
        .collect::<Result<Vec<_>, _>>()?;
    match &args.out {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
            write_csv(&mut f, &nc.name, &points)?;
            f.flush()?;
        }
        None => write_csv(&mut io::stdout().lock(), &nc.name, &points)?,
    }
    Ok(())
}
