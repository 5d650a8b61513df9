use std::f64::consts::PI;

use serde_json::{json, Value};
use sunada_core::heatkit::{
    circle_spectrum, constant_term_estimate, heat_trace, interval_neumann_spectrum, log_grid, rect_torus_spectrum,
    singularity_audibility_report, FlatModelSpectrum, QuotientInput, Spectrum, DEFAULT_TRACE_TOL,
};

use crate::args::{HeatArgs, RunConfig};
use crate::error::CliError;
use crate::output::{parse_spectrum, read_file};

/// `2.5`, `pi`, `2pi`, `0.5*pi`.
pub fn parse_length(text: &str) -> Result<f64, String> {
    let t = text.trim();
    let value = match t.strip_suffix("pi") {
        Some(coef) => {
            let coef = coef.trim().trim_end_matches('*').trim();
            let c = if coef.is_empty() {
                1.0
            } else {
                coef.parse::<f64>().map_err(|_| format!("bad length `{text}`"))?
            };
            c * PI
        }
        None => t.parse::<f64>().map_err(|_| format!("bad length `{text}`"))?,
    };
    if !(value.is_finite() && value > 0.0) {
        return Err(format!("length `{text}` must be positive"));
    }
    Ok(value)
}

pub fn parse_model(text: &str, nmax: usize) -> Result<FlatModelSpectrum, CliError> {
    let usage = |m: String| CliError::Usage(format!("model `{text}`: {m}"));
    let (kind, params) = text
        .split_once(':')
        .ok_or_else(|| usage("expected circle:L, interval:L or torus:A,B".into()))?;
    let spec = match kind.trim() {
        "circle" => circle_spectrum(parse_length(params).map_err(usage)?, nmax)?,
        "interval" => interval_neumann_spectrum(parse_length(params).map_err(usage)?, nmax)?,
        "torus" => {
            let (a, b) = params.split_once(',').ok_or_else(|| usage("torus needs two side lengths".into()))?;
            rect_torus_spectrum(parse_length(a).map_err(usage)?, parse_length(b).map_err(usage)?, nmax)?
        }
        other => return Err(usage(format!("unknown model `{other}`"))),
    };
    Ok(spec)
}

fn describe(label: &str, spec: &Spectrum, grid: &[f64], tol: f64) -> Result<Value, CliError> {
    let curve = heat_trace(spec, grid, tol)?;
    let mut v = json!({ "input": label, "volume": spec.volume() });
    match spec {
        Spectrum::Flat(f) => {
            v["model"] = serde_json::to_value(f.model).expect("models serialize");
            v["nmax"] = json!(f.nmax);
            if f.dim() == 1 {
                v["indicator"] = serde_json::to_value(constant_term_estimate(f, grid, tol)?).expect("serializes");
            } else {
                // only the leading term is checked in two dimensions
                let leading = curve.values[0] * 4.0 * PI * grid[0];
                v["leading"] = json!(leading);
                v["leading_relative_error"] = json!((leading - f.volume()).abs() / f.volume());
            }
        }
        Spectrum::Finite(f) => {
            v["dimension"] = json!(f.total_multiplicity());
        }
    }
    v["trace"] = json!({ "t": curve.t_grid, "values": curve.values, "tail_bound_max": curve.tail_bound_max() });
    Ok(v)
}

pub fn run(config: &RunConfig, args: &HeatArgs) -> Result<Value, CliError> {
    if !(args.t_min > 0.0 && args.t_max > args.t_min && args.points >= 3) {
        return Err(CliError::Config("need 0 < t-min < t-max and at least 3 grid points".into()));
    }
    if args.audit && args.degrees.len() != 2 {
        return Err(CliError::Usage("--degrees takes two values d1,d2".into()));
    }
    if !args.singular.is_empty() && args.singular.len() != 2 {
        return Err(CliError::Usage("--singular takes two values k1,k2".into()));
    }
    let grid = log_grid(args.t_min, args.t_max, args.points);
    let tol = config.tol.unwrap_or(DEFAULT_TRACE_TOL);

    let mut inputs: Vec<(String, Spectrum)> = Vec::new();
    for m in &args.models {
        inputs.push((m.clone(), parse_model(m, config.nmax)?.into()));
    }
    for path in &args.spectra {
        let spec = parse_spectrum(path, &read_file(path)?)?;
        inputs.push((path.display().to_string(), spec.into()));
    }
    if inputs.is_empty() {
        return Err(CliError::Usage("give at least one model or --spectrum file".into()));
    }

    let described = inputs
        .iter()
        .map(|(label, spec)| describe(label, spec, &grid, tol))
        .collect::<Result<Vec<_>, _>>()?;
    let mut report = json!({ "t_grid": grid, "tol": tol, "inputs": described });

    if args.audit {
        if inputs.len() != 4 {
            return Err(CliError::Usage(format!("--audit needs exactly 4 inputs (O1 O2 M1 M2), got {}", inputs.len())));
        }
        let quotient = |i: usize| -> QuotientInput {
            let singular_points = match &inputs[i].1 {
                Spectrum::Finite(_) => args.singular.get(i).copied(),
                Spectrum::Flat(_) => None,
            };
            QuotientInput { spectrum: inputs[i].1.clone(), singular_points }
        };
        let audit = singularity_audibility_report(
            &quotient(0),
            &quotient(1),
            &inputs[2].1,
            &inputs[3].1,
            args.degrees[0],
            args.degrees[1],
            &grid,
            tol,
            args.compare_limit,
        )?;
        report["audit"] = serde_json::to_value(audit).expect("reports serialize");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths() {
        assert_eq!(parse_length("2").unwrap(), 2.0);
        assert_eq!(parse_length("pi").unwrap(), PI);
        assert_eq!(parse_length("2pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_length("0.5*pi").unwrap(), 0.5 * PI);
        assert!(parse_length("-1").is_err());
        assert!(parse_length("xpi").is_err());
        assert!(parse_length("0").is_err());
    }

    #[test]
    fn models() {
        assert!(parse_model("circle:2pi", 10).is_ok());
        assert!(parse_model("torus:1,2", 10).is_ok());
        assert!(parse_model("torus:1", 10).is_err());
        assert!(parse_model("sphere:1", 10).is_err());
        assert!(parse_model("circle", 10).is_err());
    }
}
