//! `metaplex`: infer combinatorial metaplexes and analyse them from files.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use metaplex::io::Format;
use metaplex::rational::parse_rational;
use metaplex::Rational;

#[derive(Debug, Parser)]
#[command(
    name = "metaplex",
    version,
    about = "Combinatorial metaplex inference and centrality"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Infer higher-order simplices from a graph and print the admission trace.
    Infer {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        pipeline: PipelineArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Extend vertex concentrations over a given complex without inference.
    Weights {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Degree, closeness and harmonic centralities of the q-simplices.
    Centrality {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        pipeline: PipelineArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value_t = 1)]
        q: usize,
        /// Exponent in [0, 1] trading simplex count against weight.
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Use distances towards each simplex for closeness and harmonic centrality.
        #[arg(long)]
        incoming: bool,
    },
    /// Export the adjacency matrix of the q-simplices as CSV.
    Matrix {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        pipeline: PipelineArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value_t = 1)]
        q: usize,
        /// Export facet strengths instead of 0/1 entries.
        #[arg(long)]
        weighted: bool,
    },
    /// Check closure, scheme axioms and every conservation identity.
    Validate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        pipeline: PipelineArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Validate these weights (as written by `weights` or `infer --out`)
        /// instead of recomputing them.
        #[arg(long, value_name = "PATH", requires = "complex")]
        weights: Option<PathBuf>,
    },
    /// Print the clique complex of an edge list.
    Clique {
        #[arg(long, value_name = "PATH")]
        edges: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write a seeded random edge list and concentration file.
    Generate {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        #[arg(long, default_value_t = 0.5)]
        edge_probability: f64,
        /// Directory receiving `graph.edges` and `graph.conc`.
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Whitespace-separated edge list.
    #[arg(
        long,
        value_name = "PATH",
        conflicts_with = "complex",
        required_unless_present = "complex"
    )]
    edges: Option<PathBuf>,
    /// JSON facet list, closed on load.
    #[arg(long, value_name = "PATH")]
    complex: Option<PathBuf>,
    /// `vertex rational` lines.
    #[arg(long, value_name = "PATH")]
    conc: Option<PathBuf>,
    /// JSON internal structures, reduced to concentrations on load.
    #[arg(long, value_name = "PATH")]
    internal: Option<PathBuf>,
    /// `uniform` or `table:PATH`.
    #[arg(long, default_value = "uniform")]
    scheme: SchemeArg,
}

#[derive(Debug, Args)]
struct PipelineArgs {
    #[arg(long, default_value_t = 3)]
    max_dim: usize,
    /// Threshold factor `p/q` replacing the default `q + 1`.
    #[arg(long, value_parser = parse_multiplier)]
    multiplier: Option<Rational>,
    /// Admit candidates whose boundary weight equals the threshold.
    #[arg(long)]
    non_strict: bool,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, default_value = "text")]
    format: Format,
    /// Write artefacts into this directory instead of standard output.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone)]
enum SchemeArg {
    Uniform,
    Table(PathBuf),
}

impl FromStr for SchemeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(SchemeArg::Uniform),
            _ => match s.strip_prefix("table:") {
                Some(path) if !path.is_empty() => Ok(SchemeArg::Table(path.into())),
                _ => Err(format!("expected `uniform` or `table:PATH`, got {s:?}")),
            },
        }
    }
}

fn parse_multiplier(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("{failure}");
            ExitCode::from(failure.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn scheme_argument() {
        assert!(matches!("uniform".parse(), Ok(SchemeArg::Uniform)));
        assert!(
            matches!("table:t.json".parse(), Ok(SchemeArg::Table(p)) if p.as_os_str() == "t.json")
        );
        assert!("table:".parse::<SchemeArg>().is_err());
        assert!("other".parse::<SchemeArg>().is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
