use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sunada_core::chartab::character_table;
use sunada_core::gassmann::class_intersections;
use sunada_core::io::parse_permutation;
use sunada_core::permgrp::PermutationGroup;
use sunada_core::quotspec::{cayley_graph, invariant_spectrum, spectrum, sunada_identity_check};

use super::{elements_json, load_group, load_subgroup, max_gap};
use crate::args::{RunConfig, SunadaArgs};
use crate::error::CliError;
use crate::output::read_file;

pub const DEFAULT_GAP_TOL: f64 = 1e-9;

fn cayley_generators(group: &PermutationGroup, args: &SunadaArgs) -> Result<Vec<usize>, CliError> {
    let mut gens = match &args.gens {
        None => group
            .generator_indices()
            .into_iter()
            .flat_map(|s| [s, group.inv(s)])
            .filter(|&s| s != group.identity())
            .collect(),
        Some(path) => {
            let text = read_file(path)?;
            let mut out = Vec::new();
            for (no, line) in text.lines().enumerate() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let p = parse_permutation(group.degree(), line).map_err(|message| CliError::Core {
                    path: Some(path.clone()),
                    source: sunada_core::Error::Parse { line: no + 1, message },
                })?;
                let idx = group.index_of(&p).ok_or_else(|| {
                    CliError::Config(format!("{}: {p} is not an element of the group", path.display()))
                })?;
                out.push(idx);
            }
            out
        }
    };
    gens.sort_unstable();
    gens.dedup();
    Ok(gens)
}

pub fn run(config: &RunConfig, args: &SunadaArgs) -> Result<Value, CliError> {
    let group = load_group(&args.group, config)?;
    let h1 = load_subgroup(&group, &args.h1)?;
    let h2 = load_subgroup(&group, &args.h2)?;
    let k = match &args.k {
        Some(p) => load_subgroup(&group, p)?,
        None => group.trivial_subgroup(),
    };
    let gens = cayley_generators(&group, args)?;
    let table = character_table(&group)?;
    let tol = config.tol.unwrap_or(DEFAULT_GAP_TOL);
    let almost_conjugate = class_intersections(&group, &h1) == class_intersections(&group, &h2);

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut runs = Vec::new();
    let mut overall: Option<f64> = Some(0.0);
    for run in 0..=args.perturbations {
        // run 0 uses unit weights; later runs draw one weight per {s, s⁻¹}
        let mut pair_weight: BTreeMap<usize, f64> = BTreeMap::new();
        let weights: Vec<f64> = gens
            .iter()
            .map(|&s| {
                let key = s.min(group.inv(s));
                *pair_weight
                    .entry(key)
                    .or_insert_with(|| if run == 0 { 1.0 } else { rng.random_range(0.5..1.5) })
            })
            .collect();
        let space = cayley_graph(group.clone(), &gens, &weights)?;
        let decomposition = spectrum(space.graph(), config.cluster_tol)?;
        let s1 = invariant_spectrum(&space, &h1, config.cluster_tol)?;
        let s2 = invariant_spectrum(&space, &h2, config.cluster_tol)?;
        let id1 = sunada_identity_check(&space, &decomposition, &h1, &k, &table)?;
        let id2 = sunada_identity_check(&space, &decomposition, &h2, &k, &table)?;
        let gap = max_gap(s1.eigenvalues(), s2.eigenvalues());
        overall = match (overall, gap) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        let cluster_diff: Vec<Value> = id1
            .rows
            .iter()
            .zip(&id2.rows)
            .filter(|(a, b)| a.lhs != b.lhs)
            .map(|(a, b)| json!({ "value": a.value, "h1": a.lhs, "h2": b.lhs }))
            .collect();
        runs.push(json!({
            "run": run,
            "weights": weights,
            "spectrum_h1": s1.eigenvalues(),
            "spectrum_h2": s2.eigenvalues(),
            "max_gap": gap,
            "identity_h1": id1,
            "identity_h2": id2,
            "cluster_diff": cluster_diff,
        }));
    }
    let isospectral = overall.is_some_and(|g| g < tol);

    Ok(json!({
        "group_order": group.order(),
        "vertices": group.order(),
        "cayley_generators": gens.iter().map(|&s| group.element(s).to_string()).collect::<Vec<_>>(),
        "h1": elements_json(&group, &h1),
        "h2": elements_json(&group, &h2),
        "k_order": k.order(),
        "almost_conjugate": almost_conjugate,
        "tol": tol,
        "runs": runs,
        "max_gap": overall,
        "verdict": if isospectral { "isospectral" } else { "not_isospectral" },
    }))
}
