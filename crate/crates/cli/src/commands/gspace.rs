use serde_json::{json, Value};
use sunada_core::chartab::character_table;
use sunada_core::io::{parse_action, parse_graph};
use sunada_core::quotspec::{
    cover_degree, donnelly_support, invariant_spectrum, isotypic_multiplicities_with_tol, spectrum,
    sunada_identity_check, GSpace,
};

use super::{elements_json, load_group, load_subgroup, max_gap};
use crate::args::{GspaceArgs, RunConfig};
use crate::error::CliError;
use crate::output::{read_file, round_floats, spectrum_json, write_file};

pub const DEFAULT_GAP_TOL: f64 = 1e-9;

pub fn run(config: &RunConfig, args: &GspaceArgs) -> Result<Value, CliError> {
    let group = load_group(&args.group, config)?;
    let graph = parse_graph(&read_file(&args.graph)?).map_err(CliError::in_file(&args.graph))?;
    let action = parse_action(group.clone(), graph.n(), &read_file(&args.action)?)
        .map_err(CliError::in_file(&args.action))?;
    let space = GSpace::new(graph, action)?;
    let k = match &args.k {
        Some(p) => load_subgroup(&group, p)?,
        None => group.trivial_subgroup(),
    };
    let table = character_table(&group)?;
    let decomposition = spectrum(space.graph(), config.cluster_tol)?;
    let pairs: Vec<(f64, u64)> = decomposition
        .cluster_summary()
        .into_iter()
        .map(|(v, m)| (v, m as u64))
        .collect();
    if let Some(path) = &args.export_spectrum {
        let mut v = spectrum_json(&pairs);
        round_floats(&mut v);
        write_file(path, &(v.to_string() + "\n"))?;
    }
    let isotypic = isotypic_multiplicities_with_tol(&space, &decomposition, &table, config.mult_tol)?;
    let donnelly = donnelly_support(&space, &decomposition, &table)?;

    let tol = config.tol.unwrap_or(DEFAULT_GAP_TOL);
    let mut quotients = Vec::new();
    let mut invariant = Vec::new();
    for path in &args.subgroups {
        let h = load_subgroup(&group, path)?;
        let inv = invariant_spectrum(&space, &h, config.cluster_tol)?;
        let free = space.action().is_free(&h);
        let degree = if free && space.graph().is_connected() {
            Some(cover_degree(&space, &h)?)
        } else {
            None
        };
        let identity = sunada_identity_check(&space, &decomposition, &h, &k, &table)?;
        quotients.push(json!({
            "subgroup": path.display().to_string(),
            "elements": elements_json(&group, &h),
            "order": h.order(),
            "free": free,
            "cover_degree": degree,
            "invariant_spectrum": inv.eigenvalues(),
            "identity": identity,
        }));
        invariant.push(inv.eigenvalues().to_vec());
    }
    let mut comparisons = Vec::new();
    for i in 0..invariant.len() {
        for j in i + 1..invariant.len() {
            let gap = max_gap(&invariant[i], &invariant[j]);
            comparisons.push(json!({
                "pair": [i, j],
                "max_gap": gap,
                "isospectral": gap.is_some_and(|g| g < tol),
            }));
        }
    }

    Ok(json!({
        "group_order": group.order(),
        "vertices": space.graph().n(),
        "connected": space.graph().is_connected(),
        "k_order": k.order(),
        "spectrum": spectrum_json(&pairs),
        "isotypic": isotypic,
        "donnelly": donnelly,
        "quotients": quotients,
        "comparisons": comparisons,
    }))
}
