use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use sunada_core::heatkit::{DEFAULT_GRID_POINTS, DEFAULT_NMAX, DEFAULT_T_MAX, DEFAULT_T_MIN};
use sunada_core::permgrp::{DEFAULT_MAX_ORDER, DEFAULT_SUBGROUP_BUDGET};

/// Gassmann triples, Sunada quotients of graphs, and heat-trace checks.
#[derive(Debug, Parser)]
#[command(name = "sunada", version, allow_negative_numbers = true)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,

    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand. Each can also be set through the
/// environment variable named in its help text.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Main acceptance tolerance of the command (spectral gap for `sunada`
    /// and `gspace`, heat-trace tail bound for `heat`)
    #[arg(long, global = true, env = "SUNADA_TOL")]
    pub tol: Option<f64>,

    /// Integrality tolerance for multiplicities
    #[arg(long, global = true, env = "SUNADA_MULT_TOL", default_value_t = sunada_core::chartab::MULT_TOL)]
    pub mult_tol: f64,

    /// Absolute eigenvalue clustering tolerance (default: 1e-8 times the spectral radius)
    #[arg(long, global = true, env = "SUNADA_CLUSTER_TOL")]
    pub cluster_tol: Option<f64>,

    /// Truncation index of flat-model spectra
    #[arg(long, global = true, env = "SUNADA_NMAX", default_value_t = DEFAULT_NMAX)]
    pub nmax: usize,

    /// Subgroup enumeration budget, in subgroup closures
    #[arg(long, global = true, env = "SUNADA_BUDGET", default_value_t = DEFAULT_SUBGROUP_BUDGET)]
    pub budget: usize,

    /// Largest group order accepted when closing generators
    #[arg(long, global = true, env = "SUNADA_MAX_ORDER", default_value_t = DEFAULT_MAX_ORDER)]
    pub max_order: usize,

    /// Seed for randomized weight perturbations
    #[arg(long, global = true, env = "SUNADA_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Write the JSON report here instead of standard output
    #[arg(long, global = true, env = "SUNADA_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, conjugacy classes and character table of a group
    GroupInfo(GroupInfoArgs),
    /// Compare two subgroups, or search for almost-conjugate pairs
    Gassmann(GassmannArgs),
    /// Quotient spectra of a Cayley graph by two subgroups
    Sunada(SunadaArgs),
    /// Heat traces, singularity indicators and audibility reports
    Heat(HeatArgs),
    /// Spectral report for a graph with a group action
    Gspace(GspaceArgs),
}

#[derive(Debug, Args)]
pub struct GroupInfoArgs {
    pub group: PathBuf,

    /// Also export the character table as CSV
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GassmannArgs {
    pub group: PathBuf,

    #[arg(long, requires = "h2", conflicts_with = "search")]
    pub h1: Option<PathBuf>,

    #[arg(long, requires = "h1")]
    pub h2: Option<PathBuf>,

    /// Search all subgroups of this order
    #[arg(long, required_unless_present = "h1")]
    pub search: Option<usize>,

    /// Keep conjugate pairs in search results
    #[arg(long, requires = "search")]
    pub include_conjugate: bool,

    /// Report one pair per orbit of simultaneous conjugation
    #[arg(long, requires = "search")]
    pub one_per_orbit: bool,
}

#[derive(Debug, Args)]
pub struct SunadaArgs {
    pub group: PathBuf,

    #[arg(long)]
    pub h1: PathBuf,

    #[arg(long)]
    pub h2: PathBuf,

    /// Subgroup K for the multiplicity identity (default: trivial)
    #[arg(long)]
    pub k: Option<PathBuf>,

    /// Cayley generators, one permutation per line (default: the group
    /// generators and their inverses)
    #[arg(long)]
    pub gens: Option<PathBuf>,

    /// Extra runs with random invariant edge weights
    #[arg(long, default_value_t = 0)]
    pub perturbations: usize,
}

#[derive(Debug, Args)]
pub struct HeatArgs {
    /// Flat models: `circle:L`, `interval:L`, `torus:A,B`; lengths accept
    /// `pi` factors such as `2pi` or `0.5*pi`
    pub models: Vec<String>,

    /// Spectrum files: JSON arrays of [eigenvalue, multiplicity] pairs
    #[arg(long = "spectrum")]
    pub spectra: Vec<PathBuf>,

    #[arg(long, default_value_t = DEFAULT_T_MIN)]
    pub t_min: f64,

    #[arg(long, default_value_t = DEFAULT_T_MAX)]
    pub t_max: f64,

    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    pub points: usize,

    /// Treat the inputs as O1 O2 M1 M2 (models first, then spectra) and
    /// report whether their heat invariants are consistent
    #[arg(long, requires = "degrees")]
    pub audit: bool,

    /// Cover degrees `d1,d2` for the audit
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub degrees: Vec<usize>,

    /// Singular point counts `k1,k2` for quotients given as spectrum files
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub singular: Vec<usize>,

    /// Largest eigenvalue compared in the audit
    #[arg(long, default_value_t = sunada_core::heatkit::DEFAULT_COMPARE_LIMIT)]
    pub compare_limit: f64,
}

#[derive(Debug, Args)]
pub struct GspaceArgs {
    pub group: PathBuf,

    /// Graph file: lines `u v w`
    #[arg(long)]
    pub graph: PathBuf,

    /// Action file: one vertex permutation per group generator
    #[arg(long)]
    pub action: PathBuf,

    /// Subgroups to quotient by (repeatable)
    #[arg(long = "subgroup")]
    pub subgroups: Vec<PathBuf>,

    /// Subgroup K for the multiplicity identity (default: trivial)
    #[arg(long)]
    pub k: Option<PathBuf>,

    /// Write the graph spectrum as [eigenvalue, multiplicity] pairs
    #[arg(long)]
    pub export_spectrum: Option<PathBuf>,
}
