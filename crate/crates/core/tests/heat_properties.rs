use std::f64::consts::PI;

use proptest::prelude::*;
use sunada_core::heatkit::{
    circle_spectrum, heat_trace, interval_neumann_spectrum, rect_torus_spectrum, FiniteSpectrum, Spectrum,
    DEFAULT_TRACE_TOL,
};

fn trace(spec: Spectrum, t: f64) -> f64 {
    heat_trace(&spec, &[t], DEFAULT_TRACE_TOL).unwrap().values[0]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn interval_is_half_the_doubled_circle_plus_half(l in 0.5f64..8.0, t in 1e-3f64..2.0) {
        let interval = trace(interval_neumann_spectrum(l, 1000).unwrap().into(), t);
        let circle = trace(circle_spectrum(2.0 * l, 1000).unwrap().into(), t);
        prop_assert!((interval - (0.5 * circle + 0.5)).abs() < 1e-10);
    }

    #[test]
    fn traces_strictly_decrease(l in 2.0f64..8.0, t in 1e-3f64..1.0, ratio in 1.01f64..3.0) {
        for spec in [
            Spectrum::from(circle_spectrum(l, 1000).unwrap()),
            interval_neumann_spectrum(l, 1000).unwrap().into(),
            rect_torus_spectrum(l, l + 1.0, 1000).unwrap().into(),
        ] {
            let c = heat_trace(&spec, &[t, t * ratio], DEFAULT_TRACE_TOL).unwrap();
            prop_assert!(c.values[1] < c.values[0]);
        }
    }

    #[test]
    fn finite_traces_are_monotone_with_the_right_limits(values in prop::collection::vec(0.0f64..10.0, 1..20)) {
        let n = values.len() as f64;
        let spec: Spectrum = FiniteSpectrum::from_eigenvalues(&values).unwrap().into();
        let c = heat_trace(&spec, &[1e-9, 0.5, 1.0], DEFAULT_TRACE_TOL).unwrap();
        prop_assert!((c.values[0] - n).abs() <= 1e-6 * n);
        prop_assert!(c.values[2] <= c.values[1]);
        prop_assert!(c.tail_bound.iter().all(|&b| b == 0.0));
    }
}

#[test]
fn leading_term_recovers_the_volume() {
    let t = 1e-4;
    for spec in [
        circle_spectrum(2.0 * PI, 20_000).unwrap(),
        interval_neumann_spectrum(PI, 20_000).unwrap(),
        rect_torus_spectrum(2.0 * PI, 2.0 * PI, 20_000).unwrap(),
    ] {
        let h = trace(spec.into(), t);
        let leading = h * (4.0 * PI * t).powf(spec.dim() as f64 / 2.0);
        assert!((leading - spec.volume()).abs() < 0.01 * spec.volume(), "{spec:?}: {leading}");
    }
}

#[test]
fn tail_bounds_dominate_the_omitted_terms() {
    // nmax 5 against a long reference sum
    for t in [0.05, 0.2, 1.0] {
        let short = heat_trace(&circle_spectrum(2.0 * PI, 5).unwrap().into(), &[t], 1.0).unwrap();
        let long = trace(circle_spectrum(2.0 * PI, 2000).unwrap().into(), t);
        assert!(long - short.values[0] <= short.tail_bound[0]);
        let short = heat_trace(&rect_torus_spectrum(2.0 * PI, 3.0, 5).unwrap().into(), &[t], 1.0).unwrap();
        let long = trace(rect_torus_spectrum(2.0 * PI, 3.0, 2000).unwrap().into(), t);
        assert!(long - short.values[0] <= short.tail_bound[0]);
    }
}
