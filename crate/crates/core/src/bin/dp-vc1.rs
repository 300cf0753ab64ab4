use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use dp_vc1::harness::{
    audit_target, generate_class, run_experiment, sample_dataset, write_report, AuditTarget, ExperimentConfig,
    GeneratorSpec,
};
use dp_vc1::io::{read_class, read_dataset, tree_dot, tree_record, write_class, write_dataset};
use dp_vc1::learn::{LearnParams, Learner, Representative};
use dp_vc1::mech::{ChoosingMechanism, ExponentialMedian, RandomSource};
use dp_vc1::oracle::{dimension_report, Distribution};
use dp_vc1::{make_tree, ConceptClass, Error, Result};

#[derive(Parser)]
#[command(name = "dp-vc1", version, about = "Private learners for VC-1 concept classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Thresholds,
    Points,
    RandomTree,
    Example,
    ModifiedExample,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum LearnMode {
    Improper,
    Proper,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Improper,
    Median,
    Choosing,
    Em,
    Laplace,
    RandomizedResponse,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a class and write it as JSON.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        max_children: usize,
        #[arg(long, default_value_t = 0.5)]
        concept_rate: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print VC, Littlestone and thresholds dimensions.
    Dims {
        #[arg(long)]
        class: PathBuf,
    },
    /// Export the tree of the class, f-represented by a member.
    Tree {
        #[arg(long)]
        class: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Index of the representative concept.
        #[arg(long, default_value_t = 0)]
        representative: usize,
    },
    /// Sample a labelled dataset from the uniform distribution.
    Sample {
        #[arg(long)]
        class: PathBuf,
        /// Concept index or id.
        #[arg(long)]
        concept: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a learner on a dataset.
    Learn {
        #[arg(long, value_enum)]
        mode: LearnMode,
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        #[arg(long, default_value_t = 1e-5)]
        delta: f64,
        #[arg(long, default_value_t = 0.2)]
        alpha: f64,
        #[arg(long, default_value_t = 0.2)]
        beta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of subsets; overrides the budget check (improper mode).
        #[arg(long)]
        subsets: Option<usize>,
        #[arg(long)]
        emit_trace: Option<PathBuf>,
    },
    /// Run an experiment sweep and write a CSV report.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate privacy loss of a mechanism empirically.
    Audit {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load_class(path: &Path) -> Result<ConceptClass> {
    read_class(BufReader::new(File::open(path)?))
}

fn print_json(value: &impl serde::Serialize, path: Option<&Path>) -> Result<()> {
    let mut out = output(path)?;
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen { kind, n, max_children, concept_rate, seed, out } => {
            let spec = match kind {
                Kind::Thresholds => GeneratorSpec::Thresholds { n },
                Kind::Points => GeneratorSpec::Points { n },
                Kind::RandomTree => GeneratorSpec::RandomTree { n, max_children, concept_rate, seed },
                Kind::Example => GeneratorSpec::Example,
                Kind::ModifiedExample => GeneratorSpec::ModifiedExample,
            };
            let mut w = output(out.as_deref())?;
            write_class(&generate_class(&spec)?, &mut w)?;
            writeln!(w)?;
            w.flush()?;
        }
        Command::Dims { class } => print_json(&dimension_report(&load_class(&class)?)?, None)?,
        Command::Tree { class, format, representative } => {
            let class = load_class(&class)?.canonicalize()?;
            let f = class
                .concepts()
                .get(representative)
                .ok_or_else(|| Error::InvalidParameter(format!("no concept {representative}")))?
                .clone();
            let tree = make_tree(&class.f_represent(&f)?)?;
            match format {
                Format::Dot => print!("{}", tree_dot(&tree)),
                Format::Json => print_json(&tree_record(&tree), None)?,
            }
        }
        Command::Sample { class, concept, n, seed, out } => {
            let class = load_class(&class)?;
            let c = match concept.parse::<usize>() {
                Ok(i) => class.concepts().get(i),
                Err(_) => class.concepts().iter().find(|c| c.id.as_deref() == Some(concept.as_str())),
            }
            .ok_or_else(|| Error::InvalidParameter(format!("no concept {concept:?}")))?;
            let d = Distribution::uniform(class.domain_size())?;
            let data = sample_dataset(&class, c, &d, n, &mut RandomSource::new(seed))?;
            let mut w = output(out.as_deref())?;
            write_dataset(&data, &mut w)?;
            w.flush()?;
        }
        Command::Learn { mode, class, data, epsilon, delta, alpha, beta, seed, subsets, emit_trace } => {
            let class = load_class(&class)?;
            let data = read_dataset(BufReader::new(File::open(&data)?))?;
            let params = LearnParams::new(alpha, beta, epsilon, delta)?;
            let learner = Learner::new(&class, Representative::First)?;
            let mut rng = RandomSource::new(seed);
            let (summary, trace) = match mode {
                LearnMode::Improper => {
                    let t = match subsets {
                        Some(t) => learner.improper_with(
                            &data,
                            t,
                            &params,
                            &ExponentialMedian,
                            &ChoosingMechanism { config: params.constants.choosing },
                            &mut rng,
                        )?,
                        None => learner.improper(&data, &params, &mut rng)?,
                    };
                    (json!({ "x_good": t.x_good, "hypothesis": t.hypothesis }), serde_json::to_value(&t)?)
                }
                LearnMode::Proper => {
                    let t = learner.proper(&data, &params, &mut rng)?;
                    (json!({ "x_good": t.x_good, "leaf": t.leaf, "hypothesis": t.hypothesis }), serde_json::to_value(&t)?)
                }
            };
            if let Some(p) = emit_trace {
                print_json(&trace, Some(&p))?;
            }
            print_json(&summary, None)?;
        }
        Command::Sweep { config, out } => {
            let cfg: ExperimentConfig = serde_json::from_reader(BufReader::new(File::open(&config)?))?;
            let rows = run_experiment(&cfg)?;
            let mut w = output(out.as_deref())?;
            write_report(&cfg, &rows, &mut w)?;
            w.flush()?;
        }
        Command::Audit { target, trials, epsilon, seed, out } => {
            let target = match target {
                Target::Improper => AuditTarget::Improper,
                Target::Median => AuditTarget::Median,
                Target::Choosing => AuditTarget::Choosing,
                Target::Em => AuditTarget::Em,
                Target::Laplace => AuditTarget::Laplace,
                Target::RandomizedResponse => AuditTarget::RandomizedResponse,
            };
            print_json(&audit_target(target, epsilon, trials, seed)?, out.as_deref())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 2 } else { 1 })
        }
    }
}
