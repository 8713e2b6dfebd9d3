mod commands;
mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use xkg_core::agreement::{AgreementOptions, AlphaMetric, KappaWeighting, SdKind};

use commands::{DescribeInput, Outcome, Outputs, RunInputs};
use config::{CliError, PipelineConfig};

#[derive(Parser)]
#[command(name = "xkg", version, about = "Build and enrich knowledge graphs from text or image descriptions")]
struct Cli {
    /// JSON pipeline configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Repeat for more log output.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Natural-language description of an image, or text passthrough.
    Describe(DescribeArgs),
    /// Base graph from a PENMAN AMR file.
    Base(BaseArgs),
    /// Run enrichment heuristics over a base graph.
    Enrich(EnrichArgs),
    /// Lint, consistency, precedence and profile report for a graph.
    Validate(ValidateArgs),
    /// Agreement statistics from a ratings CSV.
    Agree(AgreeArgs),
    /// Whole pipeline: description, base graph, enrichment, validation.
    Run(RunArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Text file used as the description as is.
    #[arg(long)]
    text: Option<PathBuf>,
    /// Image sent to the multimodal endpoint.
    #[arg(long)]
    image: Option<PathBuf>,
}

impl InputArgs {
    fn get(&self) -> DescribeInput<'_> {
        match (&self.text, &self.image) {
            (Some(text), _) => DescribeInput::Text(text),
            (None, Some(image)) => DescribeInput::Image(image),
            (None, None) => unreachable!("clap requires one input"),
        }
    }
}

#[derive(Args)]
struct MockArg {
    /// Use canned responses from DIR (default: resources.mock_dir) instead of a live endpoint.
    #[arg(long, value_name = "DIR", num_args = 0..=1)]
    mock: Option<Option<PathBuf>>,
}

impl MockArg {
    fn get(&self) -> Option<Option<&Path>> {
        self.mock.as_ref().map(Option::as_deref)
    }
}

#[derive(Args)]
struct DescribeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    mock: MockArg,
    /// Output file (default: <out_dir>/description.txt).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BaseArgs {
    #[arg(long)]
    amr: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnrichArgs {
    #[arg(long)]
    base: PathBuf,
    /// Heuristic name, or `all` (default). Repeatable.
    #[arg(long = "heuristic")]
    heuristics: Vec<String>,
    #[command(flatten)]
    mock: MockArg,
    /// Merge results that carry ERROR diagnostics too.
    #[arg(long)]
    force_merge: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Base graph: enables anchoring checks and diff profiling.
    #[arg(long)]
    base: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SdArg {
    Population,
    Sample,
}

#[derive(Clone, Copy, ValueEnum)]
enum KappaArg {
    Unweighted,
    Quadratic,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlphaArg {
    Nominal,
    Ordinal,
    Interval,
}

#[derive(Args)]
struct AgreeArgs {
    #[arg(long)]
    ratings: PathBuf,
    #[arg(long, value_enum, default_value = "population")]
    sd: SdArg,
    #[arg(long, value_enum, default_value = "unweighted")]
    kappa: KappaArg,
    #[arg(long, value_enum, default_value = "ordinal")]
    alpha: AlphaArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    input: InputArgs,
    /// PENMAN AMR of the description.
    #[arg(long)]
    amr: PathBuf,
    #[arg(long = "heuristic")]
    heuristics: Vec<String>,
    #[command(flatten)]
    mock: MockArg,
    #[arg(long)]
    force_merge: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn execute(cli: Cli) -> Result<Outcome, CliError> {
    let config = PipelineConfig::load_or_default(cli.config.as_deref())?;
    let out_dir = |flag: &Option<PathBuf>| flag.clone().unwrap_or_else(|| config.out_dir.clone());
    let mut outputs = Outputs::default();
    let outcome = match cli.command {
        Command::Describe(args) => {
            let text = commands::describe(&config, args.input.get(), args.mock.get())?;
            let path = args.out.unwrap_or_else(|| config.out_dir.join(commands::DESCRIPTION_FILE));
            outputs.add(path, text);
            Outcome::Clean
        }
        Command::Base(args) => {
            let resources = config.resources()?;
            let stage = commands::base(&resources, &args.amr)?;
            for note in &stage.notes {
                eprintln!("note: {note}");
            }
            commands::base_outputs(&stage, &out_dir(&args.out), &mut outputs);
            print!("{}", xkg_core::validation::render_profile_table(&[("Base Graph".into(), stage.profile)]));
            Outcome::Clean
        }
        Command::Enrich(args) => {
            let resources = config.resources()?;
            let base = commands::load_graph(&args.base)?;
            let specs = commands::select_heuristics(&args.heuristics)?;
            let force = args.force_merge || config.force_merge;
            let run = commands::enrich(&config, &resources, &base, &specs, args.mock.get(), force)?;
            for result in &run.results {
                for d in &result.diagnostics {
                    eprintln!("{}: {d}", result.heuristic.name());
                }
            }
            commands::enrich_outputs(&run, force, &out_dir(&args.out), &mut outputs)
        }
        Command::Validate(args) => {
            let resources = config.resources()?;
            let graph = commands::load_graph(&args.graph)?;
            let base = args.base.as_deref().map(commands::load_graph).transpose()?;
            let report = commands::validate(&graph, base.as_ref(), &resources.ontology);
            print!("{}", report.render(&args.graph.file_stem().unwrap_or_default().to_string_lossy()));
            commands::validate_outputs(&report, &out_dir(&args.out), &mut outputs)
        }
        Command::Agree(args) => {
            let options = AgreementOptions {
                sd: match args.sd {
                    SdArg::Population => SdKind::Population,
                    SdArg::Sample => SdKind::Sample,
                },
                kappa: match args.kappa {
                    KappaArg::Unweighted => KappaWeighting::Unweighted,
                    KappaArg::Quadratic => KappaWeighting::Quadratic,
                },
                alpha: match args.alpha {
                    AlphaArg::Nominal => AlphaMetric::Nominal,
                    AlphaArg::Ordinal => AlphaMetric::Ordinal,
                    AlphaArg::Interval => AlphaMetric::Interval,
                },
            };
            let report = commands::agree(&args.ratings, options)?;
            print!("{}", commands::agree_outputs(&report, &out_dir(&args.out), &mut outputs));
            Outcome::Clean
        }
        Command::Run(args) => {
            let specs = commands::select_heuristics(&args.heuristics)?;
            let inputs = RunInputs {
                description: args.input.get(),
                amr: &args.amr,
                heuristics: &specs,
                mock: args.mock.get(),
                force_merge: args.force_merge || config.force_merge,
            };
            let (outcome, summary) = commands::run(&config, inputs, &out_dir(&args.out), &mut outputs)?;
            print!("{summary}");
            outcome
        }
    };
    outputs.write()?;
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match execute(cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Errors) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
