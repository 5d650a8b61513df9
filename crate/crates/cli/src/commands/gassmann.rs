use serde_json::{json, Value};
use sunada_core::gassmann::{almost_conjugate, gassmann_search, SearchOptions, TripleReport};
use sunada_core::permgrp::PermutationGroup;

use super::{elements_json, load_group, load_subgroup};
use crate::args::{GassmannArgs, RunConfig};
use crate::error::CliError;

/// Schema keys first, then the subgroups themselves.
pub fn triple_json(group: &PermutationGroup, report: &TripleReport) -> Value {
    let mut v = serde_json::to_value(report.summary()).expect("summaries serialize");
    v["perm_char_h2"] = json!(report.perm_char_h2);
    v["perm_chars_equal"] = json!(report.perm_chars_equal);
    v["h1"] = elements_json(group, &report.h1);
    v["h2"] = elements_json(group, &report.h2);
    v
}

pub fn run(config: &RunConfig, args: &GassmannArgs) -> Result<Value, CliError> {
    let group = load_group(&args.group, config)?;
    match (&args.h1, &args.h2, args.search) {
        (Some(p1), Some(p2), _) => {
            let h1 = load_subgroup(&group, p1)?;
            let h2 = load_subgroup(&group, p2)?;
            Ok(triple_json(&group, &almost_conjugate(&group, &h1, &h2)?))
        }
        (_, _, Some(m)) => {
            let options = SearchOptions {
                require_nonconjugate: !args.include_conjugate,
                one_per_conjugate_pair: args.one_per_orbit,
                budget: config.budget,
            };
            let found = gassmann_search(&group, m, options)?;
            Ok(json!({
                "group_order": group.order(),
                "subgroup_order": m,
                "pairs_found": found.len(),
                "triples": found.iter().map(|r| triple_json(&group, r)).collect::<Vec<_>>(),
            }))
        }
        _ => Err(CliError::Usage("give --h1 and --h2, or --search".into())),
    }
}
