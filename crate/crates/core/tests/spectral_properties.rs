mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sunada_core::chartab::character_table;
use sunada_core::gassmann::{gassmann_search, SearchOptions};
use sunada_core::permgrp::{Permutation, PermutationGroup, Subgroup};
use sunada_core::quotspec::{
    cayley_graph, cover_degree, donnelly_support, equivariantly_isospectral, fundamental_domain, invariant_spectrum,
    isotypic_multiplicities, quotient_graph, spectrum, sunada_identity_check, GSpace, GroupAction, WeightedGraph,
};

use common::*;

fn gassmann_pair(g: &PermutationGroup) -> (Subgroup, Subgroup) {
    let found = gassmann_search(g, 4, SearchOptions::default()).unwrap();
    let r = found.first().expect("the order-32 group has a Gassmann pair");
    (r.h1.clone(), r.h2.clone())
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn perturbed_cayley(g: &Arc<PermutationGroup>, rng: &mut ChaCha8Rng) -> GSpace {
    let gens = symmetric_generators(g);
    let weights = paired_weights(g, &gens, rng);
    cayley_graph(g.clone(), &gens, &weights).unwrap()
}

/// `S` with vertices renamed by a random permutation `σ`, action conjugated by `σ`.
fn relabel(space: &GSpace, rng: &mut ChaCha8Rng) -> GSpace {
    let n = space.graph().n();
    let mut images: Vec<u32> = (0..n as u32).collect();
    images.shuffle(rng);
    let sigma = Permutation::from_images(images).unwrap();
    let w = space.graph().weights();
    let moved = nalgebra::DMatrix::from_fn(n, n, |a, b| {
        let (u, v) = (sigma.inverse().apply(a), sigma.inverse().apply(b));
        w[(u, v)]
    });
    let g = space.group().clone();
    let images: Vec<Permutation> = g
        .generator_indices()
        .iter()
        .map(|&s| sigma.compose(space.action().vertex_perm(s)).compose(&sigma.inverse()))
        .collect();
    let action = GroupAction::from_generator_images(g, &images).unwrap();
    GSpace::new(WeightedGraph::new(moved).unwrap(), action).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn gassmann_quotients_of_perturbed_cayley_graphs_are_isospectral(seed in any::<u64>()) {
        let g = Arc::new(affine32());
        let (h1, h2) = gassmann_pair(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = perturbed_cayley(&g, &mut rng);
        let a = invariant_spectrum(&s, &h1, None).unwrap();
        let b = invariant_spectrum(&s, &h2, None).unwrap();
        prop_assert_eq!(a.len(), 8);
        prop_assert!(max_gap(a.eigenvalues(), b.eigenvalues()) < 1e-9);
    }

    #[test]
    fn gassmann_quotients_of_random_gspaces_are_isospectral(seed in any::<u64>()) {
        let g = Arc::new(affine32());
        let (h1, h2) = gassmann_pair(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_gspace(&g, &mut rng);
        let a = invariant_spectrum(&s, &h1, None).unwrap();
        let b = invariant_spectrum(&s, &h2, None).unwrap();
        prop_assert!(max_gap(a.eigenvalues(), b.eigenvalues()) < 1e-9);
    }

    #[test]
    fn identity_and_dimension_checks_on_random_gspaces(seed in any::<u64>(), which in 0usize..2) {
        let g = Arc::new(if which == 0 { s3() } else { d4() });
        let table = character_table(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_gspace(&g, &mut rng);
        let d = spectrum(s.graph(), None).unwrap();
        let iso = isotypic_multiplicities(&s, &d, &table).unwrap();
        for (row, &dim) in iso.multiplicities.iter().zip(&iso.cluster_dims) {
            let total: u64 = row.iter().zip(table.degrees()).map(|(m, d)| m * d).sum();
            prop_assert_eq!(total as usize, dim);
        }
        let subs = subgroups(&g);
        let h = &subs[rng.random_range(0..subs.len())];
        let report = sunada_identity_check(&s, &d, h, &g.trivial_subgroup(), &table).unwrap();
        prop_assert!(report.holds);
        // the left side counts H-invariant eigenfunctions
        let inv = invariant_spectrum(&s, h, None).unwrap();
        prop_assert_eq!(report.rows.iter().map(|r| r.lhs as usize).sum::<usize>(), inv.len());
    }

    #[test]
    fn support_law_on_random_gspaces(seed in any::<u64>(), which in 0usize..2) {
        let g = Arc::new(if which == 0 { s3() } else { z4() });
        let table = character_table(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_gspace(&g, &mut rng);
        let report = donnelly_support(&s, &spectrum(s.graph(), None).unwrap(), &table).unwrap();
        prop_assert!(report.union_law_holds);
        prop_assert_eq!(report.support, report.union_of_stabilizer_supports);
    }

    #[test]
    fn free_quotients_match_invariant_spectra(seed in any::<u64>()) {
        let g = Arc::new(d4());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let action = GroupAction::on_cosets(g.clone(), &[g.trivial_subgroup(), g.trivial_subgroup()]);
        let seeds: Vec<(usize, usize, f64)> =
            (0..4).map(|_| (rng.random_range(0..8), rng.random_range(8..16), rng.random_range(0.5..2.0))).collect();
        let s = sunada_core::quotspec::invariant_graph(action, &seeds).unwrap();
        for h in subgroups(&g) {
            let q = spectrum(&quotient_graph(&s, &h).unwrap(), None).unwrap();
            let inv = invariant_spectrum(&s, &h, None).unwrap();
            prop_assert!(max_gap(q.eigenvalues(), inv.eigenvalues()) < 1e-9);
        }
    }

    #[test]
    fn heat_trace_tends_to_vertex_count(seed in any::<u64>()) {
        let g = Arc::new(s3());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_gspace(&g, &mut rng);
        let n = s.graph().n() as f64;
        let h: f64 = spectrum(s.graph(), None).unwrap().eigenvalues().iter().map(|l| (-l * 1e-8).exp()).sum();
        prop_assert!((h - n).abs() <= 1e-6 * n);
    }

    #[test]
    fn equivariant_premise_transfers_through_relabelling(seed in any::<u64>()) {
        let g = Arc::new(affine32());
        let table = character_table(&g).unwrap();
        let (h1, h2) = gassmann_pair(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s1 = perturbed_cayley(&g, &mut rng);
        let s2 = relabel(&s1, &mut rng);
        prop_assert!(equivariantly_isospectral(&s1, &s2, &table, None).unwrap().equivariantly_isospectral);
        let a = invariant_spectrum(&s1, &h1, None).unwrap();
        let b = invariant_spectrum(&s2, &h2, None).unwrap();
        prop_assert!(max_gap(a.eigenvalues(), b.eigenvalues()) < 1e-9);
    }
}

#[test]
fn regular_representation_totals() {
    for (name, g) in [("S3", s3()), ("D4", d4()), ("Q8", q8())] {
        let g = Arc::new(g);
        let table = character_table(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = perturbed_cayley(&g, &mut rng);
        let iso = isotypic_multiplicities(&s, &spectrum(s.graph(), None).unwrap(), &table).unwrap();
        assert_eq!(iso.totals(), table.degrees(), "{name}");
    }
}

#[test]
fn dirichlet_cells_tile_cayley_graphs() {
    let g = Arc::new(affine32());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let s = perturbed_cayley(&g, &mut rng);
    for h in subgroups(&g) {
        for center in [0usize, 5, 31] {
            let cells = fundamental_domain(&s, &h, center).unwrap();
            assert_eq!(cells.fiber.len(), h.order());
            let mut seen = [false; 32];
            for cell in &cells.cells {
                assert_eq!(cell.len(), cells.cells[0].len());
                for &v in cell {
                    assert!(!seen[v]);
                    seen[v] = true;
                }
            }
            for &v in &cells.boundary {
                assert!(!seen[v]);
                seen[v] = true;
            }
            assert!(seen.iter().all(|&x| x));
            let home = cells.cell_of(center).unwrap();
            for &x in h.elements() {
                let p = s.action().vertex_perm(x);
                let mut moved: Vec<usize> = home.iter().map(|&v| p.apply(v)).collect();
                moved.sort_unstable();
                assert_eq!(moved.as_slice(), cells.cell_of(p.apply(center)).unwrap());
            }
        }
        assert_eq!(cover_degree(&s, &h).unwrap(), h.order());
    }
}

#[test]
fn identity_in_the_order_32_pipeline() {
    let g = Arc::new(affine32());
    let table = character_table(&g).unwrap();
    let (h1, h2) = gassmann_pair(&g);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let s = perturbed_cayley(&g, &mut rng);
    let d = spectrum(s.graph(), None).unwrap();
    let r1 = sunada_identity_check(&s, &d, &h1, &g.trivial_subgroup(), &table).unwrap();
    let r2 = sunada_identity_check(&s, &d, &h2, &g.trivial_subgroup(), &table).unwrap();
    assert!(r1.holds && r2.holds);
    let lhs1: Vec<u64> = r1.rows.iter().map(|r| r.lhs).collect();
    let lhs2: Vec<u64> = r2.rows.iter().map(|r| r.lhs).collect();
    assert_eq!(lhs1, lhs2);
}
