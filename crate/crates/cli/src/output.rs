use std::path::Path;

use num_complex::Complex64;
use serde_json::Value;
use sunada_core::chartab::CharacterTable;
use sunada_core::heatkit::FiniteSpectrum;
use sunada_core::permgrp::PermutationGroup;

use crate::error::CliError;

/// Rounds to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x + 0.0;
    }
    let s = format!("{:.*e}", digits - 1, x);
    s.parse::<f64>().expect("formatted float parses") + 0.0
}

/// Rounds every float in a JSON tree to 15 significant digits.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("checked f64");
            *v = serde_json::Number::from_f64(round_sig(x, 15)).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn to_json_text(report: &Value) -> String {
    let mut v = report.clone();
    round_floats(&mut v);
    let mut text = serde_json::to_string_pretty(&v).expect("reports serialize");
    text.push('\n');
    text
}

/// `a+bi` with 12 significant digits; the imaginary part is dropped when zero.
pub fn format_complex(z: Complex64) -> String {
    let (re, im) = (round_sig(z.re, 12), round_sig(z.im, 12));
    if im == 0.0 {
        format!("{re}")
    } else if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

/// Character table as CSV: a header of class representatives, a row of
/// class sizes, then one row per irreducible character.
pub fn character_table_csv(group: &PermutationGroup, table: &CharacterTable) -> Result<String, CliError> {
    let classes = table.classes();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["class".to_string()];
    header.extend(classes.representatives().iter().map(|&r| group.element(r).to_string()));
    let mut sizes = vec!["size".to_string()];
    sizes.extend(classes.class_sizes().iter().map(usize::to_string));
    let csv_err = |e: csv::Error| CliError::Usage(format!("CSV export failed: {e}"));
    w.write_record(&header).map_err(csv_err)?;
    w.write_record(&sizes).map_err(csv_err)?;
    for (i, row) in table.rows().iter().enumerate() {
        let mut rec = vec![format!("chi{i}")];
        rec.extend(row.values().iter().map(|&z| format_complex(z)));
        w.write_record(&rec).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(format!("CSV export failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// `(value, multiplicity)` pairs as a JSON array of pairs.
pub fn spectrum_json(pairs: &[(f64, u64)]) -> Value {
    Value::Array(
        pairs
            .iter()
            .map(|&(v, m)| serde_json::json!([v, m]))
            .collect(),
    )
}

pub fn parse_spectrum(path: &Path, text: &str) -> Result<FiniteSpectrum, CliError> {
    let bad = |message: String| CliError::Core {
        path: Some(path.to_path_buf()),
        source: sunada_core::Error::Parse { line: 1, message },
    };
    let raw: Vec<(f64, u64)> = serde_json::from_str(text).map_err(|e| CliError::Core {
        path: Some(path.to_path_buf()),
        source: sunada_core::Error::Parse {
            line: e.line(),
            message: format!("expected an array of [eigenvalue, multiplicity] pairs: {e}"),
        },
    })?;
    if raw.is_empty() {
        return Err(bad("spectrum is empty".into()));
    }
    FiniteSpectrum::new(raw).map_err(CliError::in_file(path))
}
