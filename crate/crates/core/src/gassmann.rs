//! Almost conjugacy, representation equivalence and K-equivalence of subgroups.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::chartab::{decompose, g_hat_k, permutation_character, permutation_character_counts, CharacterTable};
use crate::error::{Error, Result};
use crate::permgrp::{are_conjugate_subgroups, subgroups_of_order, PermutationGroup, Subgroup};

/// Comparison of two subgroups of a common group.
#[derive(Debug, Clone)]
pub struct TripleReport {
    pub group_order: usize,
    pub h1: Subgroup,
    pub h2: Subgroup,
    pub class_counts_h1: Vec<u64>,
    pub class_counts_h2: Vec<u64>,
    pub perm_char_h1: Vec<u64>,
    pub perm_char_h2: Vec<u64>,
    pub almost_conjugate: bool,
    pub conjugate: bool,
    pub perm_chars_equal: bool,
}

/// JSON shape of a [`TripleReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleSummary {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub class_counts_h1: Vec<u64>,
    pub class_counts_h2: Vec<u64>,
    pub almost_conjugate: bool,
    pub conjugate: bool,
    pub perm_char: Vec<u64>,
}

impl TripleReport {
    pub fn summary(&self) -> TripleSummary {
        TripleSummary {
            group_order: self.group_order,
            subgroup_order: self.h1.order(),
            class_counts_h1: self.class_counts_h1.clone(),
            class_counts_h2: self.class_counts_h2.clone(),
            almost_conjugate: self.almost_conjugate,
            conjugate: self.conjugate,
            perm_char: self.perm_char_h1.clone(),
        }
    }
}

/// `#([g]_G ∩ H)` for every conjugacy class.
pub fn class_intersections(group: &PermutationGroup, h: &Subgroup) -> Vec<u64> {
    let classes = group.classes();
    let mut counts = vec![0u64; classes.num_classes()];
    for &e in h.elements() {
        counts[classes.class_of(e)] += 1;
    }
    counts
}

pub fn almost_conjugate(group: &PermutationGroup, h1: &Subgroup, h2: &Subgroup) -> Result<TripleReport> {
    let counts1 = class_intersections(group, h1);
    let counts2 = class_intersections(group, h2);
    let ac = counts1 == counts2;
    build_report(group, h1, h2, counts1, counts2, ac, None)
}

fn build_report(
    group: &PermutationGroup,
    h1: &Subgroup,
    h2: &Subgroup,
    class_counts_h1: Vec<u64>,
    class_counts_h2: Vec<u64>,
    almost_conjugate: bool,
    known_conjugate: Option<bool>,
) -> Result<TripleReport> {
    let perm_char_h1 = permutation_character_counts(group, h1);
    let perm_char_h2 = permutation_character_counts(group, h2);
    let perm_chars_equal = perm_char_h1 == perm_char_h2;
    if perm_chars_equal != almost_conjugate {
        return Err(Error::Numerical(format!(
            "class intersections {class_counts_h1:?} / {class_counts_h2:?} disagree with \
             permutation characters {perm_char_h1:?} / {perm_char_h2:?}"
        )));
    }
    let conjugate = known_conjugate.unwrap_or_else(|| are_conjugate_subgroups(group, h1, h2));
    Ok(TripleReport {
        group_order: group.order(),
        h1: h1.clone(),
        h2: h2.clone(),
        class_counts_h1,
        class_counts_h2,
        perm_char_h1,
        perm_char_h2,
        almost_conjugate,
        conjugate,
        perm_chars_equal,
    })
}

/// Equality of the quasi-regular representations, decided on characters.
pub fn representation_equivalent(group: &PermutationGroup, h1: &Subgroup, h2: &Subgroup) -> bool {
    permutation_character_counts(group, h1) == permutation_character_counts(group, h2)
}

/// `[π_{H1} : ρ] = [π_{H2} : ρ]` for every `ρ ∈ Ĝ_K`.
pub fn k_equivalent(
    group: &PermutationGroup,
    table: &CharacterTable,
    k: &Subgroup,
    h1: &Subgroup,
    h2: &Subgroup,
) -> Result<bool> {
    let support = g_hat_k(table, k)?;
    let m1 = decompose(&permutation_character(group, h1), table)?;
    let m2 = decompose(&permutation_character(group, h2), table)?;
    Ok(support.indices().iter().all(|&rho| m1[rho] == m2[rho]))
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub require_nonconjugate: bool,
    /// Keep one pair per orbit of simultaneous conjugation.
    pub one_per_conjugate_pair: bool,
    pub budget: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            require_nonconjugate: true,
            one_per_conjugate_pair: false,
            budget: crate::permgrp::DEFAULT_SUBGROUP_BUDGET,
        }
    }
}

/// All unordered pairs of almost-conjugate subgroups of order `m`.
pub fn gassmann_search(group: &PermutationGroup, m: usize, options: SearchOptions) -> Result<Vec<TripleReport>> {
    let subs = subgroups_of_order(group, m, options.budget)?;
    let counts: Vec<Vec<u64>> = subs.iter().map(|h| class_intersections(group, h)).collect();

    // bucket by class-intersection vector so only candidate pairs are compared
    let mut buckets: BTreeMap<&[u64], Vec<usize>> = BTreeMap::new();
    for (i, c) in counts.iter().enumerate() {
        buckets.entry(c.as_slice()).or_default().push(i);
    }
    let mut pairs = Vec::new();
    for members in buckets.values() {
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                pairs.push((i, j));
            }
        }
    }
    pairs.sort_unstable();

    let lookup: HashMap<&[usize], usize> = subs
        .iter()
        .enumerate()
        .map(|(i, h)| (h.elements(), i))
        .collect();
    let mut seen_orbits = std::collections::HashSet::new();

    let mut out = Vec::new();
    for (i, j) in pairs {
        let conjugate = are_conjugate_subgroups(group, &subs[i], &subs[j]);
        if options.require_nonconjugate && conjugate {
            continue;
        }
        if options.one_per_conjugate_pair {
            let key = (0..group.order())
                .map(|x| {
                    let a = lookup[subs[i].conjugated_by(group, x).elements()];
                    let b = lookup[subs[j].conjugated_by(group, x).elements()];
                    (a.min(b), a.max(b))
                })
                .min()
                .expect("nonempty group");
            if !seen_orbits.insert(key) {
                continue;
            }
        }
        out.push(build_report(
            group,
            &subs[i],
            &subs[j],
            counts[i].clone(),
            counts[j].clone(),
            true,
            Some(conjugate),
        )?);
    }
    Ok(out)
}
