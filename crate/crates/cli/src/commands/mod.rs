mod gassmann;
mod group_info;
mod gspace;
mod heat;
mod sunada;

use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};
use sunada_core::io::{parse_group, parse_subgroup};
use sunada_core::permgrp::{PermutationGroup, Subgroup};

use crate::args::{Cli, Command, RunConfig};
use crate::error::CliError;
use crate::output::read_file;

/// Runs one subcommand and returns its JSON report.
pub fn run(cli: &Cli) -> Result<Value, CliError> {
    validate(&cli.config)?;
    match &cli.command {
        Command::GroupInfo(args) => group_info::run(&cli.config, args),
        Command::Gassmann(args) => gassmann::run(&cli.config, args),
        Command::Sunada(args) => sunada::run(&cli.config, args),
        Command::Heat(args) => heat::run(&cli.config, args),
        Command::Gspace(args) => gspace::run(&cli.config, args),
    }
}

fn validate(config: &RunConfig) -> Result<(), CliError> {
    let positive = |name: &str, x: Option<f64>| match x {
        Some(v) if !(v.is_finite() && v > 0.0) => Err(CliError::Config(format!("--{name} must be positive, got {v}"))),
        _ => Ok(()),
    };
    positive("tol", config.tol)?;
    positive("mult-tol", Some(config.mult_tol))?;
    positive("cluster-tol", config.cluster_tol)?;
    for (name, v) in [("nmax", config.nmax), ("budget", config.budget), ("max-order", config.max_order)] {
        if v == 0 {
            return Err(CliError::Config(format!("--{name} must be a positive integer")));
        }
    }
    Ok(())
}

pub(crate) fn load_group(path: &Path, config: &RunConfig) -> Result<Arc<PermutationGroup>, CliError> {
    let text = read_file(path)?;
    parse_group(&text, config.max_order)
        .map(Arc::new)
        .map_err(CliError::in_file(path))
}

pub(crate) fn load_subgroup(group: &PermutationGroup, path: &Path) -> Result<Subgroup, CliError> {
    let text = read_file(path)?;
    parse_subgroup(group, &text).map_err(CliError::in_file(path))
}

pub(crate) fn elements_json(group: &PermutationGroup, h: &Subgroup) -> Value {
    json!(h.elements().iter().map(|&e| group.element(e).to_string()).collect::<Vec<_>>())
}

pub(crate) fn max_gap(a: &[f64], b: &[f64]) -> Option<f64> {
    (a.len() == b.len()).then(|| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}
