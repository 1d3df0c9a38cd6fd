use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hyperdiag::{Edge, EdgeSet, Error, Model, Result, VertexId, VertexSet};

#[derive(Debug, Parser)]
#[command(name = "hyperdiag", version)]
#[command(about = "Hybrid node/link fault diagnosis of hypercubes under PMC and MM*")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand. Always echoed in the report.
#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Maximum search nodes for any exhaustive step.
    #[arg(long, default_value_t = 500_000_000)]
    pub budget: u64,

    /// Worker threads for the pair search.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,

    /// Seed for every random choice (ChaCha8).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Random probes per edge set once the budget runs out.
    #[arg(long, default_value_t = 20_000)]
    pub samples: u64,

    /// Also write the report to this file.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelArg {
    Pmc,
    Mmstar,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Pmc => Model::Pmc,
            ModelArg::Mmstar => Model::MmStar,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyArg {
    Zeros,
    Ones,
    Random,
    Mimic,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckArg {
    Brute,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Describe Q_n, optionally with faulty edges removed
    Topo {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "")]
        fe: String,
        /// Print the edge list instead of a report
        #[arg(long)]
        edge_list: bool,
        #[command(flatten)]
        #[serde(flatten)]
        common: Common,
    },

    /// Minimum vertex boundary of m-subsets of Q_n
    DeltaV {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u64,
        /// Confirm the closed form by exhaustive search
        #[arg(long)]
        check: Option<CheckArg>,
        #[command(flatten)]
        #[serde(flatten)]
        common: Common,
    },

    /// Decide whether two fault sets can be told apart in Q_n - F_e
    Distinguish {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "")]
        fe: String,
        #[arg(long, default_value = "")]
        f1: String,
        #[arg(long, default_value = "")]
        f2: String,
        #[arg(long, value_enum)]
        model: ModelArg,
        #[command(flatten)]
        #[serde(flatten)]
        common: Common,
    },

    /// Check t-diagnosability of Q_n - F_e
    Tdiag {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "")]
        fe: String,
        #[arg(long, value_enum)]
        model: ModelArg,
        #[command(flatten)]
        #[serde(flatten)]
        common: Common,
    },

    /// Compute the h-edge tolerable diagnosability of Q_n
    Thdiag {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        h: usize,
        #[arg(long, value_enum)]
        model: ModelArg,
        #[command(flatten)]
        #[serde(flatten)]
        common: Common,
    },

    /// Check t_h^e(Q_n) = n - h with certificates
    VerifyTheorem {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        h: u32,
        #[arg(long, value_enum)]
        model: ModelArg,
        #[command(flatten)]
        #[serde(flatten)]
        common: Common,
    },

    /// Generate a syndrome for a fault scenario
    Syndrome {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "")]
        fe: String,
        /// Faulty vertices
        #[arg(long, default_value = "")]
        fv: String,
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long, value_enum, default_value = "zeros")]
        strategy: StrategyArg,
        /// Fault set imitated by the mimic strategy
        #[arg(long, default_value = "")]
        target: String,
        #[command(flatten)]
        #[serde(flatten)]
        common: Common,
    },

    /// Decode a syndrome file into the faulty vertex set
    Diagnose {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        syndrome: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum)]
        model: ModelArg,
        #[command(flatten)]
        #[serde(flatten)]
        common: Common,
    },

    /// List edge-set orbits of Q_n under its automorphisms
    Orbits {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        h: usize,
        #[command(flatten)]
        #[serde(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Topo { common, .. }
            | Command::DeltaV { common, .. }
            | Command::Distinguish { common, .. }
            | Command::Tdiag { common, .. }
            | Command::Thdiag { common, .. }
            | Command::VerifyTheorem { common, .. }
            | Command::Syndrome { common, .. }
            | Command::Diagnose { common, .. }
            | Command::Orbits { common, .. } => common,
        }
    }
}

/// A vertex token: exactly `n` binary digits is a label, anything else a
/// decimal id.
pub fn parse_vertex(token: &str, n: u32) -> Result<VertexId> {
    let t = token.trim();
    let value = if t.len() == n as usize && t.chars().all(|c| c == '0' || c == '1') {
        u32::from_str_radix(t, 2).ok()
    } else if let Some(bin) = t.strip_prefix("0b") {
        u32::from_str_radix(bin, 2).ok()
    } else {
        t.parse().ok()
    };
    match value {
        Some(v) if n < 32 && v < 1 << n => Ok(VertexId(v)),
        Some(v) => Err(Error::Domain(format!("vertex {v} is not in Q_{n}"))),
        None => Err(Error::Domain(format!("bad vertex `{t}`"))),
    }
}

/// Comma-separated vertices.
pub fn parse_vertices(list: &str, n: u32) -> Result<VertexSet> {
    list.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_vertex(t, n))
        .collect()
}

/// Comma-separated `u-v` pairs.
pub fn parse_edges(list: &str, n: u32) -> Result<EdgeSet> {
    list.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t
                .split_once('-')
                .ok_or_else(|| Error::Domain(format!("bad edge `{t}`, expected u-v")))?;
            Edge::new(parse_vertex(a, n)?, parse_vertex(b, n)?)
        })
        .collect()
}
