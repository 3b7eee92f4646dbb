//! `bshell`: nested set complexes, normal complexes and their facet orders.

mod commands;
mod resolve;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "bshell", version, about = "Nested set complexes of matroids and their shelling orders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct MatroidArgs {
    /// Matroid: JSON file, inline JSON, `uniform:r,n`, `boolean:n`,
    /// `graphic:0-1,1-2,...`, `broom`, or summands joined by `+`.
    #[arg(long, short = 'm')]
    pub matroid: String,
    /// Ground order as comma-separated labels, smallest first.
    #[arg(long)]
    pub ground_order: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug, Clone)]
pub struct InstanceArgs {
    #[command(flatten)]
    pub base: MatroidArgs,
    /// Building set: `minimal`, `maximal`, a JSON file, or inline JSON.
    #[arg(long, short = 'b', default_value = "minimal")]
    pub building: String,
}

#[derive(Args, Debug, Clone)]
pub struct CubicalArgs {
    /// Cubical function: `auto[:seed]`, `random[:seed]`, `quadratic`, a JSON
    /// file, or inline JSON such as `{"c":{"0":"3","1,2,3":"-3"}}`.
    #[arg(long, default_value = "auto")]
    pub c: String,
    /// Seed used by `auto` and `random` when none is given inline.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderKind {
    Nc,
    Nl,
    El,
    Gamma,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    All,
    Uniform,
    Graphic,
    Broom,
    Sums,
}

#[derive(Subcommand, Debug)]
enum NormalCommand {
    /// Vertex of every facet with its λ coefficients.
    Vertices {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        cubical: CubicalArgs,
    },
    /// Whether every vertex lies in the interior of its cone.
    CheckCubical {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        cubical: CubicalArgs,
    },
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Flats, ranks, atoms and connected flats.
    Matroid(MatroidArgs),
    /// Validate a building set and list its members.
    Building(InstanceArgs),
    /// Facets of the nested set complex.
    Facets(InstanceArgs),
    /// Vertices and cubicality of the normal complex.
    #[command(subcommand)]
    Normal(NormalCommand),
    /// List the facets in one of the facet orders.
    Order {
        #[arg(value_enum)]
        which: OrderKind,
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        cubical: CubicalArgs,
        /// Linear functional for inner products (required by `gamma`).
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
    },
    /// Check that a facet order is a shelling order.
    Verify {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        cubical: CubicalArgs,
        /// Order to check: `nc`, `nl`, `el`, or a JSON file / inline JSON
        /// array of facet keys such as `"0;0,1;0,1,2,3"`.
        #[arg(long, default_value = "nc")]
        order: String,
        /// Check the order induced by this functional instead.
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
    },
    /// Check the normal complex order on every corpus instance.
    VerifyCorpus {
        /// Seeds for the default cubical function, run one after another.
        #[arg(long, default_value_t = 3)]
        seeds: u64,
        #[arg(long)]
        json: bool,
    },
    /// Compare two facet orders.
    Compare {
        #[arg(value_enum)]
        a: OrderKind,
        #[arg(value_enum)]
        b: OrderKind,
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        cubical: CubicalArgs,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
    },
    /// Search the corpus for NL orders that are not shellings.
    Search {
        #[arg(long, value_enum, default_value = "all")]
        family: Family,
        /// Skip matroids with more elements than this.
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum number of (instance, ground order) tasks to run.
        #[arg(long)]
        budget: Option<usize>,
        /// Append findings to this file instead of printing them.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

/// Outcome of a command that ran to completion.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("BSHELL_THREADS") {
        let n: usize = v.parse().map_err(|_| anyhow::anyhow!("BSHELL_THREADS must be a number, got {v:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    configure_threads()?;
    match cli.command {
        Command::Matroid(a) => commands::matroid(&a),
        Command::Building(a) => commands::building(&a),
        Command::Facets(a) => commands::facets(&a),
        Command::Normal(NormalCommand::Vertices { inst, cubical }) => commands::vertices_cmd(&inst, &cubical),
        Command::Normal(NormalCommand::CheckCubical { inst, cubical }) => {
            commands::check_cubical(&inst, &cubical)
        }
        Command::Order { which, inst, cubical, gamma } => {
            commands::order(which, &inst, &cubical, gamma.as_deref())
        }
        Command::Verify { inst, cubical, order, gamma } => {
            commands::verify(&inst, &cubical, &order, gamma.as_deref())
        }
        Command::VerifyCorpus { seeds, json } => commands::verify_corpus(seeds, json),
        Command::Compare { a, b, inst, cubical, gamma } => {
            commands::compare(a, b, &inst, &cubical, gamma.as_deref())
        }
        Command::Search { family, max_n, seed, budget, out } => {
            commands::search(family, max_n, seed, budget, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
