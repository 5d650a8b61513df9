#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sunada_core::io::parse_group;
use sunada_core::permgrp::{all_subgroups, PermutationGroup, Subgroup, DEFAULT_MAX_ORDER, DEFAULT_SUBGROUP_BUDGET};
use sunada_core::quotspec::{invariant_graph, GSpace, GroupAction};

fn group(text: &str) -> PermutationGroup {
    parse_group(text, DEFAULT_MAX_ORDER).unwrap()
}

pub fn s3() -> PermutationGroup {
    group("degree 3\n(0 1)\n(0 1 2)\n")
}

pub fn s4() -> PermutationGroup {
    group("degree 4\n(0 1)\n(0 1 2 3)\n")
}

pub fn d4() -> PermutationGroup {
    group("degree 4\n(0 1 2 3)\n(0 2)\n")
}

pub fn q8() -> PermutationGroup {
    group("degree 8\n(0 2 1 3)(4 6 5 7)\n(0 4 1 5)(2 7 3 6)\n")
}

pub fn z4() -> PermutationGroup {
    group("degree 4\n(0 1 2 3)\n")
}

pub fn z6() -> PermutationGroup {
    group("degree 6\n(0 1 2 3 4 5)\n")
}

pub fn affine32() -> PermutationGroup {
    group("degree 8\n(0 1 2 3 4 5 6 7)\n(1 3)(2 6)(5 7)\n(1 5)(3 7)\n")
}

pub fn named_groups() -> Vec<(&'static str, PermutationGroup)> {
    vec![("S3", s3()), ("S4", s4()), ("D4", d4()), ("Q8", q8()), ("AGL(1,8)", affine32())]
}

pub fn subgroups(g: &PermutationGroup) -> Vec<Subgroup> {
    all_subgroups(g, DEFAULT_SUBGROUP_BUDGET).unwrap()
}

/// Inverse-closed generating set: the group generators and their inverses.
pub fn symmetric_generators(g: &PermutationGroup) -> Vec<usize> {
    let mut s: Vec<usize> = g
        .generator_indices()
        .into_iter()
        .flat_map(|x| [x, g.inv(x)])
        .collect();
    s.sort_unstable();
    s.dedup();
    s
}

/// Weights in [0.5, 1.5], equal on inverse pairs.
pub fn paired_weights(g: &PermutationGroup, gens: &[usize], rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut by_pair = std::collections::HashMap::new();
    gens.iter()
        .map(|&s| {
            let key = s.min(g.inv(s));
            *by_pair.entry(key).or_insert_with(|| rng.random_range(0.5..1.5))
        })
        .collect()
}

/// A random G-space: a union of 1 to 3 coset actions and a few random
/// invariant edge orbits, retried until connected.
pub fn random_gspace(g: &Arc<PermutationGroup>, rng: &mut ChaCha8Rng) -> GSpace {
    let subs = subgroups(g);
    loop {
        let blocks: Vec<Subgroup> = (0..rng.random_range(1..=3))
            .map(|_| subs.choose(rng).unwrap().clone())
            .collect();
        let action = GroupAction::on_cosets(g.clone(), &blocks);
        let n = action.num_vertices();
        if n < 2 {
            continue;
        }
        let seeds: Vec<(usize, usize, f64)> = (0..rng.random_range(2..=5))
            .filter_map(|_| {
                let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
                (u != v).then(|| (u, v, rng.random_range(0.5..2.0)))
            })
            .collect();
        let space = invariant_graph(action, &seeds).unwrap();
        if space.graph().is_connected() {
            return space;
        }
    }
}
