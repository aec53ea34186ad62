//! Command-line front end for `ditrace-core`: argument parsing, command
//! dispatch, report rendering and the `verify all` property suite.

pub mod commands;
pub mod report;
pub mod suite;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ditrace_core::scalar_functors::Side;
use ditrace_core::{DEFAULT_BOUND, DEFAULT_BUDGET};

use commands::{CliError, Limits};
use report::{Format, Report};

/// Environment variable that overrides `--seed`.
pub const SEED_ENV: &str = "DITRACE_SEED";

#[derive(Parser, Debug)]
#[command(name = "ditrace", version, about = "Absorption monoids, their modules, and directed homotopy of combinatorial spaces")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    /// Word-length bound for checks over infinite domains.
    #[arg(long, default_value_t = DEFAULT_BOUND, value_parser = positive, global = true)]
    pub bound: usize,
    /// Rewrite budget for normalising extension words.
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = positive, global = true)]
    pub budget: usize,
    /// Seed for generated instances (overridden by DITRACE_SEED).
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Size cap for generated instances.
    #[arg(long, default_value_t = 4, value_parser = positive, global = true)]
    pub max_size: usize,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Absorption monoids given as table or free-monoid files.
    #[command(subcommand)]
    Monoid(MonoidCmd),
    /// Modules over absorption monoids.
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Change of scalars along a monoid morphism.
    #[command(subcommand)]
    Scalars(ScalarsCmd),
    /// Directed spaces and their fundamental dihomotopy module.
    #[command(subcommand)]
    Space(SpaceCmd),
    /// Property suites.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
pub enum MonoidCmd {
    /// Check the absorption-monoid laws.
    Check { file: PathBuf },
    /// Cartesian product of monoids.
    Product {
        #[arg(required = true, num_args = 1..)]
        files: Vec<PathBuf>,
    },
    /// Coproduct of monoids.
    Coproduct {
        #[arg(required = true, num_args = 1..)]
        files: Vec<PathBuf>,
    },
    /// Quotient by the sub-monoid generated by the given elements.
    Quotient {
        file: PathBuf,
        /// Comma-separated generators.
        #[arg(long, value_delimiter = ',', required = true)]
        kill: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ModuleCmd {
    /// Check the module laws.
    Check { file: PathBuf },
    /// Build the module of a transition system.
    FromTs { file: PathBuf },
    /// Read a transition system off a module over a free monoid.
    ToTs { file: PathBuf },
}

#[derive(Args, Debug)]
pub struct ChangeArgs {
    /// Morphism file for l: T -> T'.
    #[arg(long)]
    pub l: PathBuf,
    /// Module file.
    #[arg(long)]
    pub module: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum ScalarsCmd {
    /// Restrict a module over T' to T.
    Restrict(ChangeArgs),
    /// Extend a module over T to T'.
    Extend(ChangeArgs),
    /// Co-extend a module over T to T'.
    Coextend(ChangeArgs),
    /// Check an adjunction on generated finite instances.
    AdjointTest {
        /// `left`: extension against restriction; `right`: restriction
        /// against coextension.
        #[arg(long)]
        side: Side,
        /// Number of generated instances.
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum SpaceCmd {
    /// Count dihomotopy classes of d-paths between two vertices.
    Classes {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Act on a class by a trace.
    Pi1Act {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        trace: String,
        #[arg(long)]
        class: String,
    },
    /// Check the functor laws, on one map or on random grid embeddings.
    FunctorTest {
        #[arg(long, requires_all = ["target", "dmap"])]
        source: Option<PathBuf>,
        #[arg(long, requires_all = ["source", "dmap"])]
        target: Option<PathBuf>,
        #[arg(long, requires_all = ["source", "target"])]
        dmap: Option<PathBuf>,
        /// Number of random embeddings when no map is given.
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Run every property in the suite.
    All,
}

/// Outcome of one invocation: the rendered report (or diagnostic) and the
/// exit code.
#[derive(Debug)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Seed from `DITRACE_SEED` when set, else the flag.
pub fn effective_seed(flag: u64, env: Option<&str>) -> Result<u64, CliError> {
    match env {
        None => Ok(flag),
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEED_ENV}={s:?} is not an unsigned integer"))),
    }
}

fn failure(e: &CliError) -> Outcome {
    Outcome {
        code: commands::exit_code(e),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

pub fn run(cli: &Cli, env_seed: Option<&str>) -> Outcome {
    let g = &cli.global;
    let seed = match effective_seed(g.seed, env_seed) {
        Ok(seed) => seed,
        Err(e) => return failure(&e),
    };
    let lim = Limits {
        bound: g.bound,
        budget: g.budget,
        seed,
        max_size: g.max_size,
    };
    let format = match g.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    match dispatch(&cli.command, &lim) {
        Ok(report) => Outcome {
            code: u8::from(report.failed),
            stdout: report.render(format),
            stderr: String::new(),
        },
        Err(e) => failure(&e),
    }
}

fn dispatch(cmd: &Command, lim: &Limits) -> Result<Report, CliError> {
    use commands::*;
    match cmd {
        Command::Monoid(MonoidCmd::Check { file }) => monoid_check(file, lim),
        Command::Monoid(MonoidCmd::Product { files }) => monoid_product(files, false, lim),
        Command::Monoid(MonoidCmd::Coproduct { files }) => monoid_product(files, true, lim),
        Command::Monoid(MonoidCmd::Quotient { file, kill }) => monoid_quotient(file, kill, lim),
        Command::Module(ModuleCmd::Check { file }) => module_check(file, lim),
        Command::Module(ModuleCmd::FromTs { file }) => module_from_ts(file, lim),
        Command::Module(ModuleCmd::ToTs { file }) => module_to_ts(file),
        Command::Scalars(ScalarsCmd::Restrict(a)) => scalars_restrict(&a.l, &a.module, lim),
        Command::Scalars(ScalarsCmd::Extend(a)) => scalars_extend(&a.l, &a.module, lim),
        Command::Scalars(ScalarsCmd::Coextend(a)) => scalars_coextend(&a.l, &a.module, lim),
        Command::Scalars(ScalarsCmd::AdjointTest { side, count }) => scalars_adjoint_test(*side, *count, lim),
        Command::Space(SpaceCmd::Classes { model, from, to }) => space_classes(model, from, to),
        Command::Space(SpaceCmd::Pi1Act { model, trace, class }) => space_pi1_act(model, trace, class),
        Command::Space(SpaceCmd::FunctorTest { source, target, dmap, count }) => {
            let maps = match (source, target, dmap) {
                (Some(s), Some(t), Some(d)) => Some((s.as_path(), t.as_path(), d.as_path())),
                _ => None,
            };
            space_functor_test(maps, *count, lim)
        }
        Command::Verify(VerifyCmd::All) => Ok(verify_all(lim)),
    }
}

fn verify_all(lim: &Limits) -> Report {
    let cfg = suite::SuiteConfig::scaled(lim.seed, lim.max_size, lim.bound, lim.budget);
    let mut report = Report::new("verify all");
    report.fact("seed", lim.seed);
    report.fact("max-size", lim.max_size);
    for outcome in suite::run_all(&cfg) {
        let key = outcome.name.replace(' ', "-");
        report.fact(&format!("{key}-checks"), outcome.checked);
        report.check(&key, outcome.passed);
        if !outcome.failures.is_empty() {
            report.fact(&format!("{key}-failures"), outcome.failures);
        }
    }
    report
}
