//! `phylomatroid`: enumerate, certify and verify separations of
//! group-based phylogenetic models by their algebraic matroids.
//!
//! Exit codes: 0 success, 1 error, 2 unsolved case or failed verification,
//! 3 enumeration budget exceeded.

mod cases;
mod records;
mod runner;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use phylomatroid::case::Mode;
use phylomatroid::matroid::{exhaustive_matroid_equal, verify_certificate};
use phylomatroid::{
    CaseDescriptor, CertifyOptions, Direction, Error, MatroidComparison, ModelKind, ModelSpec,
    SubsetSampling,
};

use crate::records::{read_certificates, CertificateFile};
use crate::runner::Campaign;

const EXIT_UNSOLVED: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "phylomatroid", version, about = "Matroid certificates separating phylogenetic models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List case ids: mixture orbits on `--leaves` leaves, or pairs of cycle networks.
    Enumerate {
        #[command(flatten)]
        source: EnumerationArgs,
    },
    /// Search for separating sets and write a certificate file.
    Certify(CertifyArgs),
    /// Re-check every certificate in the given files exactly.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Print the model dimension of each side of a case (or of one model).
    Dimension {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        case: String,
    },
    /// Compare all independent sets up to a size.
    MatroidCompare {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        case: String,
        /// Largest set size to compare; all sizes by default.
        #[arg(long)]
        max_size: Option<usize>,
        /// Largest number of sets to examine.
        #[arg(long, default_value_t = 1 << 20)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Cfn,
    Jc,
    K2p,
    K3p,
}

impl From<ModelArg> for ModelKind {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Cfn => ModelKind::Cfn,
            ModelArg::Jc => ModelKind::Jc,
            ModelArg::K2p => ModelKind::K2p,
            ModelArg::K3p => ModelKind::K3p,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Sz,
}

#[derive(Args)]
struct EnumerationArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    leaves: Option<usize>,
    /// Pairs of distinct networks with a cycle of this size instead of mixtures.
    #[arg(long)]
    networks: Option<usize>,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    source: EnumerationArgs,
    /// A case such as "12|34 + 12|34 vs 12|34 + 13|24" (repeatable).
    #[arg(long = "case")]
    cases: Vec<String>,
    /// File with one case per line; blank lines and `#` comments are skipped.
    #[arg(long = "cases")]
    cases_file: Option<PathBuf>,
    /// Certify a seeded random sample of this many enumerated cases.
    #[arg(long)]
    sample: Option<usize>,
    /// Drop every case in the relabelling orbit of this mixture case (repeatable).
    #[arg(long)]
    exclude_orbit: Vec<String>,
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
    /// Error tolerance of the probabilistic mode.
    #[arg(long, default_value_t = 1e-10)]
    epsilon: f64,
    /// Random candidate sets per case.
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Master seed; each case derives its own seed from it and its id.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Candidate sampler: exchange, basis or geometric:<ratio>.
    #[arg(long, default_value = "exchange", value_parser = parse_sampling)]
    sampling: SubsetSampling,
    /// Worker threads (all cores by default).
    #[arg(long)]
    jobs: Option<usize>,
    /// Certificate file to write; standard output by default.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON-lines journal of finished cases; an existing one is resumed.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Report every finished case on standard error.
    #[arg(long, short)]
    verbose: bool,
}

fn parse_sampling(s: &str) -> Result<SubsetSampling, String> {
    match s {
        "exchange" => Ok(SubsetSampling::Exchange),
        "basis" => Ok(SubsetSampling::Basis),
        _ => match s.strip_prefix("geometric:") {
            Some(r) => match r.parse::<f64>() {
                Ok(ratio) if ratio > 0.0 => Ok(SubsetSampling::Geometric { ratio }),
                _ => Err(format!("bad geometric ratio {r:?}")),
            },
            None => Err(format!("unknown sampler {s:?} (exchange, basis, geometric:<ratio>)")),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Enumerate { source } => enumerate(&source),
        Command::Certify(args) => certify(&args),
        Command::Verify { files } => verify(&files),
        Command::Dimension { model, case } => dimension(model.into(), &case),
        Command::MatroidCompare {
            model,
            case,
            max_size,
            budget,
        } => matroid_compare(model.into(), &case, max_size, budget),
    }
}

fn enumerate(source: &EnumerationArgs) -> Result<u8> {
    let cases = cases::enumerate(source.model.into(), source.leaves, source.networks)?;
    let mut out = std::io::stdout().lock();
    for c in &cases {
        writeln!(out, "{c}")?;
    }
    writeln!(out, "# {} cases", cases.len())?;
    Ok(0)
}

fn collect_cases(args: &CertifyArgs) -> Result<Vec<CaseDescriptor>> {
    let kind: ModelKind = args.source.model.into();
    let mut out = Vec::new();
    for text in &args.cases {
        out.push(CaseDescriptor::parse(kind, text)?);
    }
    if let Some(path) = &args.cases_file {
        out.extend(cases::read_case_file(kind, path)?);
    }
    if args.source.leaves.is_some() || args.source.networks.is_some() {
        let mut enumerated = cases::enumerate(kind, args.source.leaves, args.source.networks)?;
        if !args.exclude_orbit.is_empty() {
            let excluded = args
                .exclude_orbit
                .iter()
                .map(|t| cases::orbit(&CaseDescriptor::parse(kind, t)?))
                .collect::<Result<Vec<_>>>()?;
            enumerated.retain(|c| !excluded.iter().any(|o| o.contains(&cases::unordered(c))));
        }
        if let Some(k) = args.sample {
            enumerated = cases::sample(enumerated, k, args.seed)?;
        }
        out.extend(enumerated);
    } else if args.sample.is_some() || !args.exclude_orbit.is_empty() {
        bail!("--sample and --exclude-orbit apply to enumerated cases (--leaves or --networks)");
    }
    if out.is_empty() {
        bail!("no cases given (use --case, --cases, --leaves or --networks)");
    }
    Ok(out)
}

fn certify(args: &CertifyArgs) -> Result<u8> {
    let cases = collect_cases(args)?;
    let mode = match args.mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Sz => Mode::SchwartzZippel { epsilon: args.epsilon },
    };
    let campaign = Campaign {
        mode,
        opts: CertifyOptions {
            trials: args.trials,
            sampling: args.sampling,
            ..CertifyOptions::default()
        },
        master_seed: args.seed,
        jobs: args.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, usize::from)),
        checkpoint: args.checkpoint.clone(),
        verbose: args.verbose,
    };
    let file = CertificateFile::new(campaign.run(&cases)?);
    let text = serde_json::to_string_pretty(&file)? + "\n";
    match &args.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    eprintln!("solved {} of {} cases", file.certificates.len(), cases.len());
    for u in &file.unsolved {
        eprintln!(
            "unsolved: {} ({}): dimensions {:?}, {} trials, {} candidates, {} rejected",
            u.case, u.model, u.dimensions, u.trials, u.candidates, u.rejected
        );
    }
    Ok(if file.unsolved.is_empty() { 0 } else { EXIT_UNSOLVED })
}

fn verify(files: &[PathBuf]) -> Result<u8> {
    let (mut passed, mut total) = (0usize, 0usize);
    for path in files {
        for (i, cert) in read_certificates(path)?.iter().enumerate() {
            total += 1;
            let label = format!("{}#{} {} {} vs {}", path.display(), i, cert.model, cert.case.left.join(" + "), cert.case.right.join(" + "));
            match verify_certificate(cert) {
                Ok(true) => {
                    passed += 1;
                    println!("ok    {label}");
                }
                Ok(false) => println!("FAIL  {label}"),
                Err(Error::Data(msg)) => println!("FAIL  {label}: {msg}"),
                Err(e) => return Err(e.into()),
            }
        }
    }
    println!("{passed} of {total} certificates verified");
    Ok(if passed == total { 0 } else { EXIT_UNSOLVED })
}

fn dimension(kind: ModelKind, text: &str) -> Result<u8> {
    let specs = match text.split_once(" vs ") {
        Some(_) => {
            let c = CaseDescriptor::parse(kind, text)?;
            vec![c.left, c.right]
        }
        None => vec![ModelSpec::parse(text)?],
    };
    for spec in specs {
        let d = spec.parameterization(kind)?.matroid().dimension();
        println!("{d}\t{spec}");
    }
    Ok(0)
}

fn matroid_compare(kind: ModelKind, text: &str, max_size: Option<usize>, budget: u64) -> Result<u8> {
    let case = CaseDescriptor::parse(kind, text)?;
    let (pl, pr) = case.parameterizations()?;
    let max_size = max_size.unwrap_or(pl.coordinates().len());
    match exhaustive_matroid_equal(&pl.matroid(), &pr.matroid(), max_size, budget) {
        Ok(MatroidComparison::Equal { checked }) => {
            println!("equal: all {checked} sets of size <= {max_size} agree");
            Ok(0)
        }
        Ok(MatroidComparison::Differs {
            subset,
            direction,
            checked,
        }) => {
            let coords: Vec<String> = subset.iter().map(|&j| pl.coordinates()[j].to_strings().concat()).collect();
            let side = match direction {
                Direction::LeftIndependent => "left",
                Direction::RightIndependent => "right",
            };
            println!("differs: {{{}}} is independent only in the {side} model ({checked} sets checked)", coords.join(", "));
            Ok(0)
        }
        Err(e @ Error::Budget { .. }) => {
            eprintln!("{e}");
            Ok(EXIT_BUDGET)
        }
        Err(e) => Err(e.into()),
    }
}
