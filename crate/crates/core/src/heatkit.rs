//! Heat traces of closed-form flat models and finite spectra, and the
//! small-time detector for singular points.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Default absolute tail tolerance, scaled by `max(1, h(t))`.
pub const DEFAULT_TRACE_TOL: f64 = 1e-12;
/// `|constant term|` above this means singular.
pub const SINGULAR_THRESHOLD: f64 = 0.05;
/// RMS fit residual above this makes a non-singular verdict inconclusive.
pub const FIT_RESIDUAL_TOL: f64 = 1e-2;
pub const DEFAULT_NMAX: usize = 20_000;
pub const DEFAULT_T_MIN: f64 = 1e-4;
pub const DEFAULT_T_MAX: f64 = 1e-3;
pub const DEFAULT_GRID_POINTS: usize = 10;
/// Eigenvalues above this are not compared in audibility reports.
pub const DEFAULT_COMPARE_LIMIT: f64 = 1e4;

const MATCH_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum FlatModel {
    Circle { length: f64 },
    IntervalNeumann { length: f64 },
    RectTorus { a: f64, b: f64 },
}

impl FlatModel {
    pub fn dim(&self) -> usize {
        match self {
            FlatModel::RectTorus { .. } => 2,
            _ => 1,
        }
    }

    pub fn volume(&self) -> f64 {
        match *self {
            FlatModel::Circle { length } | FlatModel::IntervalNeumann { length } => length,
            FlatModel::RectTorus { a, b } => a * b,
        }
    }
}

/// Truncated closed-form spectrum of a flat model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlatModelSpectrum {
    pub model: FlatModel,
    pub nmax: usize,
}

fn check_length(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("model length must be positive, got {x}")))
    }
}

/// `0` once, `(2πn/L)²` twice for `1 ≤ n ≤ nmax`.
pub fn circle_spectrum(length: f64, nmax: usize) -> Result<FlatModelSpectrum> {
    check_length(length)?;
    Ok(FlatModelSpectrum {
        model: FlatModel::Circle { length },
        nmax,
    })
}

/// `(nπ/L)²` for `0 ≤ n ≤ nmax`.
pub fn interval_neumann_spectrum(length: f64, nmax: usize) -> Result<FlatModelSpectrum> {
    check_length(length)?;
    Ok(FlatModelSpectrum {
        model: FlatModel::IntervalNeumann { length },
        nmax,
    })
}

/// `(2πm/a)² + (2πn/b)²` for `|m|, |n| ≤ nmax`.
pub fn rect_torus_spectrum(a: f64, b: f64, nmax: usize) -> Result<FlatModelSpectrum> {
    check_length(a)?;
    check_length(b)?;
    Ok(FlatModelSpectrum {
        model: FlatModel::RectTorus { a, b },
        nmax,
    })
}

/// 1-D factor `Σ_{|n| ≤ N} e^{-c n² t}` (`symmetric`) or `Σ_{0 ≤ n ≤ N}`.
#[derive(Debug, Clone, Copy)]
struct Theta {
    c: f64,
    symmetric: bool,
}

impl Theta {
    /// Partial sum, smallest terms first.
    fn partial(&self, nmax: usize, t: f64) -> f64 {
        let a = self.c * t;
        let mult = if self.symmetric { 2.0 } else { 1.0 };
        let mut s = 0.0;
        for n in (1..=nmax).rev() {
            let n = n as f64;
            s += mult * (-a * n * n).exp();
        }
        s + 1.0
    }

    /// Bound on the omitted terms by `Σ_{n>N} e^{-a n²} ≤ ∫_N^∞ e^{-a x²} dx`.
    fn tail(&self, nmax: usize, t: f64) -> f64 {
        let a = self.c * t;
        let mult = if self.symmetric { 2.0 } else { 1.0 };
        let one_sided = if nmax == 0 {
            0.5 * (PI / a).sqrt()
        } else {
            let n = nmax as f64;
            (-a * n * n).exp() / (2.0 * a * n)
        };
        mult * one_sided
    }
}

impl FlatModelSpectrum {
    pub fn dim(&self) -> usize {
        self.model.dim()
    }

    pub fn volume(&self) -> f64 {
        self.model.volume()
    }

    fn factors(&self) -> Vec<Theta> {
        match self.model {
            FlatModel::Circle { length } => vec![Theta {
                c: (2.0 * PI / length).powi(2),
                symmetric: true,
            }],
            FlatModel::IntervalNeumann { length } => vec![Theta {
                c: (PI / length).powi(2),
                symmetric: false,
            }],
            FlatModel::RectTorus { a, b } => vec![
                Theta {
                    c: (2.0 * PI / a).powi(2),
                    symmetric: true,
                },
                Theta {
                    c: (2.0 * PI / b).powi(2),
                    symmetric: true,
                },
            ],
        }
    }

    /// Every eigenvalue strictly below this bound is listed by the truncation.
    pub fn completeness_bound(&self) -> f64 {
        let next = (self.nmax + 1) as f64;
        self.factors()
            .iter()
            .map(|f| f.c * next * next)
            .fold(f64::INFINITY, f64::min)
    }

    /// `(value, multiplicity)` pairs with value `≤ cutoff`, nondecreasing.
    pub fn eigenvalues_up_to(&self, cutoff: f64) -> Vec<(f64, u64)> {
        let factors = self.factors();
        let range = |f: &Theta| -> Vec<(f64, u64)> {
            let mut out = Vec::new();
            for n in 0..=self.nmax {
                let v = f.c * (n * n) as f64;
                if v > cutoff {
                    break;
                }
                let m = if f.symmetric && n > 0 { 2 } else { 1 };
                out.push((v, m));
            }
            out
        };
        let mut raw = match factors.as_slice() {
            [f] => range(f),
            [fa, fb] => {
                let (ra, rb) = (range(fa), range(fb));
                let mut out = Vec::new();
                for &(va, ma) in &ra {
                    for &(vb, mb) in &rb {
                        if va + vb <= cutoff {
                            out.push((va + vb, ma * mb));
                        }
                    }
                }
                out
            }
            _ => unreachable!("flat models have one or two factors"),
        };
        raw.sort_by(|x, y| x.0.total_cmp(&y.0));
        merge_values(raw)
    }

    /// The whole truncated spectrum.
    pub fn eigenvalues(&self) -> Vec<(f64, u64)> {
        self.eigenvalues_up_to(f64::INFINITY)
    }
}

/// Merges sorted `(value, mult)` pairs whose values agree to 1e-12 relative.
fn merge_values(sorted: Vec<(f64, u64)>) -> Vec<(f64, u64)> {
    let mut out: Vec<(f64, u64)> = Vec::with_capacity(sorted.len());
    for (v, m) in sorted {
        match out.last_mut() {
            Some(last) if (v - last.0).abs() <= 1e-12 * v.abs().max(1.0) => last.1 += m,
            _ => out.push((v, m)),
        }
    }
    out
}

/// Spectrum of a finite space, e.g. a graph or an imported list.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteSpectrum {
    values: Vec<(f64, u64)>,
}

impl FiniteSpectrum {
    pub fn new(mut pairs: Vec<(f64, u64)>) -> Result<Self> {
        if let Some(&(v, _)) = pairs.iter().find(|(v, _)| !v.is_finite()) {
            return Err(Error::Precondition(format!("eigenvalue {v} is not finite")));
        }
        pairs.retain(|&(_, m)| m > 0);
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
        Ok(FiniteSpectrum {
            values: merge_values(pairs),
        })
    }

    /// Groups a raw eigenvalue list.
    pub fn from_eigenvalues(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| (v, 1)).collect())
    }

    pub fn pairs(&self) -> &[(f64, u64)] {
        &self.values
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.values.iter().map(|p| p.1).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Spectrum {
    Flat(FlatModelSpectrum),
    Finite(FiniteSpectrum),
}

impl Spectrum {
    /// Model volume; for finite spectra the dimension of the space (`h(0)`).
    pub fn volume(&self) -> f64 {
        match self {
            Spectrum::Flat(f) => f.volume(),
            Spectrum::Finite(f) => f.total_multiplicity() as f64,
        }
    }

    fn completeness_bound(&self) -> f64 {
        match self {
            Spectrum::Flat(f) => f.completeness_bound(),
            Spectrum::Finite(_) => f64::INFINITY,
        }
    }

    pub fn eigenvalues_up_to(&self, cutoff: f64) -> Vec<(f64, u64)> {
        match self {
            Spectrum::Flat(f) => f.eigenvalues_up_to(cutoff),
            Spectrum::Finite(f) => f.values.iter().copied().filter(|p| p.0 <= cutoff).collect(),
        }
    }
}

impl From<FlatModelSpectrum> for Spectrum {
    fn from(f: FlatModelSpectrum) -> Self {
        Spectrum::Flat(f)
    }
}

impl From<FiniteSpectrum> for Spectrum {
    fn from(f: FiniteSpectrum) -> Self {
        Spectrum::Finite(f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeatTraceCurve {
    pub t_grid: Vec<f64>,
    pub values: Vec<f64>,
    pub tail_bound: Vec<f64>,
}

impl HeatTraceCurve {
    pub fn tail_bound_max(&self) -> f64 {
        self.tail_bound.iter().copied().fold(0.0, f64::max)
    }
}

fn trace_at(spec: &Spectrum, t: f64) -> (f64, f64) {
    match spec {
        Spectrum::Flat(f) => {
            let factors = f.factors();
            let sums: Vec<f64> = factors.iter().map(|th| th.partial(f.nmax, t)).collect();
            let tails: Vec<f64> = factors.iter().map(|th| th.tail(f.nmax, t)).collect();
            match (sums.as_slice(), tails.as_slice()) {
                ([s], [e]) => (*s, *e),
                ([sa, sb], [ea, eb]) => (sa * sb, ea * sb + sa * eb + ea * eb),
                _ => unreachable!("flat models have one or two factors"),
            }
        }
        Spectrum::Finite(f) => {
            let h = f.values.iter().rev().map(|&(v, m)| m as f64 * (-v * t).exp()).sum();
            (h, 0.0)
        }
    }
}

/// `Σ e^{-λ t}` on `t_grid`, failing when a tail bound exceeds `tol · max(1, h)`.
pub fn heat_trace(spec: &Spectrum, t_grid: &[f64], tol: f64) -> Result<HeatTraceCurve> {
    if let Some(&t) = t_grid.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
        return Err(Error::Precondition(format!("heat trace times must be positive, got {t}")));
    }
    let mut values = Vec::with_capacity(t_grid.len());
    let mut tail_bound = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let (h, tail) = trace_at(spec, t);
        if tail > tol * h.max(1.0) {
            return Err(Error::TailBound { t, bound: tail, tol });
        }
        values.push(h);
        tail_bound.push(tail);
    }
    Ok(HeatTraceCurve {
        t_grid: t_grid.to_vec(),
        values,
        tail_bound,
    })
}

/// `n` log-spaced points from `t_min` to `t_max`.
pub fn log_grid(t_min: f64, t_max: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![t_min];
    }
    let (a, b) = (t_min.ln(), t_max.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

pub fn default_grid() -> Vec<f64> {
    log_grid(DEFAULT_T_MIN, DEFAULT_T_MAX, DEFAULT_GRID_POINTS)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityVerdict {
    Smooth,
    Singular,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularityIndicator {
    /// `h(t)·(4πt)^{1/2}` at the smallest grid time; recovers the volume.
    pub leading: f64,
    /// Intercept of the fit of `h(t) − vol·(4πt)^{-1/2}` against `t`.
    pub constant: f64,
    pub verdict: SingularityVerdict,
    pub tail_bound_max: f64,
    pub fit_residual: f64,
}

pub fn constant_term_estimate(spec: &FlatModelSpectrum, t_grid: &[f64], tol: f64) -> Result<SingularityIndicator> {
    if spec.dim() != 1 {
        return Err(Error::Precondition(
            "the constant-term detector only handles 1-D models".into(),
        ));
    }
    if t_grid.len() < 3 {
        return Err(Error::Precondition("the fit needs at least 3 grid times".into()));
    }
    let t_min = t_grid.iter().copied().fold(f64::INFINITY, f64::min);
    let t_max = t_grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(t_min > 0.0 && t_max <= 0.05) {
        return Err(Error::Precondition(format!(
            "grid times must lie in (0, 0.05], got [{t_min}, {t_max}]"
        )));
    }
    if t_max > 10.0 * t_min * (1.0 + 1e-12) {
        return Err(Error::Precondition(format!(
            "grid spans more than one decade: [{t_min}, {t_max}]"
        )));
    }
    let curve = heat_trace(&Spectrum::Flat(*spec), t_grid, tol)?;
    let vol = spec.volume();
    let resid: Vec<f64> = t_grid
        .iter()
        .zip(&curve.values)
        .map(|(&t, &h)| h - vol / (4.0 * PI * t).sqrt())
        .collect();

    let n = t_grid.len() as f64;
    let mean_t = t_grid.iter().sum::<f64>() / n;
    let mean_r = resid.iter().sum::<f64>() / n;
    let sxx: f64 = t_grid.iter().map(|t| (t - mean_t).powi(2)).sum();
    if sxx <= (1e-9 * mean_t).powi(2) * n {
        return Err(Error::Numerical("ill-conditioned fit: grid times are not distinct".into()));
    }
    let sxy: f64 = t_grid.iter().zip(&resid).map(|(t, r)| (t - mean_t) * (r - mean_r)).sum();
    let slope = sxy / sxx;
    let constant = mean_r - slope * mean_t;
    let fit_residual = (t_grid
        .iter()
        .zip(&resid)
        .map(|(t, r)| (r - constant - slope * t).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();

    let i_min = t_grid.iter().position(|&t| t == t_min).expect("grid is nonempty");
    let leading = curve.values[i_min] * (4.0 * PI * t_min).sqrt();
    let verdict = if constant.abs() > SINGULAR_THRESHOLD {
        SingularityVerdict::Singular
    } else if fit_residual > FIT_RESIDUAL_TOL {
        SingularityVerdict::Inconclusive
    } else {
        SingularityVerdict::Smooth
    };
    Ok(SingularityIndicator {
        leading,
        constant,
        verdict,
        tail_bound_max: curve.tail_bound_max(),
        fit_residual,
    })
}

/// A quotient in an audibility report. Finite quotients carry the number of
/// singular points (orbits with nontrivial stabilizer) directly.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientInput {
    pub spectrum: Spectrum,
    pub singular_points: Option<usize>,
}

impl QuotientInput {
    pub fn flat(spec: FlatModelSpectrum) -> Self {
        QuotientInput {
            spectrum: Spectrum::Flat(spec),
            singular_points: None,
        }
    }

    pub fn finite(spec: FiniteSpectrum, singular_points: usize) -> Self {
        QuotientInput {
            spectrum: Spectrum::Finite(spec),
            singular_points: Some(singular_points),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AudibilityVerdict {
    Consistent,
    Inconsistent,
    PremiseFailed,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AudibilityReport {
    pub covers_isospectral: bool,
    pub quotients_isospectral: bool,
    /// Eigenvalues up to this value were compared.
    pub compared_up_to: f64,
    pub cover_volumes: [f64; 2],
    pub quotient_volumes: [f64; 2],
    pub degrees: [usize; 2],
    pub degrees_equal: bool,
    pub volume_degree_relation: bool,
    pub indicators: [Option<SingularityIndicator>; 2],
    pub singular: [Option<bool>; 2],
    pub verdict: AudibilityVerdict,
    pub diagnostics: Vec<String>,
}

/// Compares two spectra below `cutoff` elementwise; returns the first disagreement.
fn first_mismatch(a: &Spectrum, b: &Spectrum, cutoff: f64) -> Option<String> {
    let expand = |s: &Spectrum| -> Vec<f64> {
        s.eigenvalues_up_to(cutoff)
            .into_iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v, m as usize))
            .collect()
    };
    let (ea, eb) = (expand(a), expand(b));
    for (i, (x, y)) in ea.iter().zip(&eb).enumerate() {
        if (x - y).abs() > MATCH_TOL * x.abs().max(y.abs()).max(1.0) {
            return Some(format!("eigenvalue {i}: {x} vs {y}"));
        }
    }
    if ea.len() != eb.len() {
        return Some(format!("{} vs {} eigenvalues up to {cutoff}", ea.len(), eb.len()));
    }
    None
}

fn singular_indicator(q: &QuotientInput, t_grid: &[f64], tol: f64) -> Result<(Option<SingularityIndicator>, Option<bool>)> {
    if let Some(k) = q.singular_points {
        return Ok((None, Some(k > 0)));
    }
    match &q.spectrum {
        Spectrum::Flat(f) if f.dim() == 1 => {
            let ind = constant_term_estimate(f, t_grid, tol)?;
            let s = match ind.verdict {
                SingularityVerdict::Singular => Some(true),
                SingularityVerdict::Smooth => Some(false),
                SingularityVerdict::Inconclusive => None,
            };
            Ok((Some(ind), s))
        }
        _ => Ok((None, None)),
    }
}

/// Walks the chain: isospectral covers and quotients, equal degrees, and
/// agreement of the singular-point indicators of the quotients.
#[allow(clippy::too_many_arguments)]
pub fn singularity_audibility_report(
    o1: &QuotientInput,
    o2: &QuotientInput,
    m1: &Spectrum,
    m2: &Spectrum,
    d1: usize,
    d2: usize,
    t_grid: &[f64],
    tol: f64,
    compare_limit: f64,
) -> Result<AudibilityReport> {
    let mut diagnostics = Vec::new();
    let cutoff = [
        o1.spectrum.completeness_bound(),
        o2.spectrum.completeness_bound(),
        m1.completeness_bound(),
        m2.completeness_bound(),
    ]
    .into_iter()
    .map(|b| b * (1.0 - 1e-12))
    .fold(compare_limit, f64::min);

    let covers = first_mismatch(m1, m2, cutoff);
    if let Some(d) = &covers {
        diagnostics.push(format!("covers are not isospectral: {d}"));
    }
    let quotients = first_mismatch(&o1.spectrum, &o2.spectrum, cutoff);
    if let Some(d) = &quotients {
        diagnostics.push(format!("quotients are not isospectral: {d}"));
    }

    let cover_volumes = [m1.volume(), m2.volume()];
    let quotient_volumes = [o1.spectrum.volume(), o2.spectrum.volume()];
    let rel = |a: f64, b: f64| (a - b).abs() <= 1e-9 * a.abs().max(b.abs());
    let volume_degree_relation = rel(cover_volumes[0], d1 as f64 * quotient_volumes[0])
        && rel(cover_volumes[1], d2 as f64 * quotient_volumes[1]);
    if !volume_degree_relation {
        diagnostics.push(format!(
            "cover volumes {cover_volumes:?} are not degree multiples of quotient volumes {quotient_volumes:?}"
        ));
    }
    let degrees_equal = d1 == d2;
    if !degrees_equal {
        diagnostics.push(format!("cover degrees differ: {d1} vs {d2}"));
    }

    let (ind1, s1) = singular_indicator(o1, t_grid, tol)?;
    let (ind2, s2) = singular_indicator(o2, t_grid, tol)?;

    let verdict = if covers.is_some() || quotients.is_some() {
        AudibilityVerdict::PremiseFailed
    } else if !degrees_equal || !volume_degree_relation {
        AudibilityVerdict::Inconsistent
    } else {
        match (s1, s2) {
            (Some(a), Some(b)) if a == b => AudibilityVerdict::Consistent,
            (Some(_), Some(_)) => {
                diagnostics.push("singular indicators of the quotients disagree".into());
                AudibilityVerdict::Inconsistent
            }
            _ => {
                diagnostics.push("a singular indicator is unavailable or inconclusive".into());
                AudibilityVerdict::Inconclusive
            }
        }
    };

    Ok(AudibilityReport {
        covers_isospectral: covers.is_none(),
        quotients_isospectral: quotients.is_none(),
        compared_up_to: cutoff,
        cover_volumes,
        quotient_volumes,
        degrees: [d1, d2],
        degrees_equal,
        volume_degree_relation,
        indicators: [ind1, ind2],
        singular: [s1, s2],
        verdict,
        diagnostics,
    })
}
