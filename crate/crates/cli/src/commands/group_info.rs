use serde_json::{json, Value};
use sunada_core::chartab::character_table;

use super::load_group;
use crate::args::{GroupInfoArgs, RunConfig};
use crate::error::CliError;
use crate::output::{character_table_csv, write_file};

pub fn run(config: &RunConfig, args: &GroupInfoArgs) -> Result<Value, CliError> {
    let group = load_group(&args.group, config)?;
    let classes = group.classes();
    let table = character_table(&group)?;
    if let Some(path) = &args.csv {
        write_file(path, &character_table_csv(&group, &table)?)?;
    }
    let class_list: Vec<Value> = (0..classes.num_classes())
        .map(|c| {
            json!({
                "representative": group.element(classes.representatives()[c]).to_string(),
                "size": classes.class_sizes()[c],
                "centralizer_order": classes.centralizer_order(c),
            })
        })
        .collect();
    let rows: Vec<Value> = table
        .rows()
        .iter()
        .map(|row| json!(row.values().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()))
        .collect();
    let (row_defect, col_defect) = table.orthogonality_defect();
    Ok(json!({
        "order": group.order(),
        "degree": group.degree(),
        "generators": group.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "abelian": group.is_abelian(),
        "num_classes": classes.num_classes(),
        "classes": class_list,
        "character_table": {
            "degrees": table.degrees(),
            "rows": rows,
            "orthogonality_defect": { "rows": row_defect, "columns": col_defect },
        },
    }))
}
