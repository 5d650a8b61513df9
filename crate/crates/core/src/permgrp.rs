//! Finite permutation groups stored by full element enumeration.
//!
//! Elements are kept in lexicographic order of their image lists, so the
//! identity is always element `0` and every index handed out by this module is
//! stable across runs. Products follow the composition convention
//! `(g * h)(x) = g(h(x))`, which makes `g . x = g(x)` a left action.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_ORDER: usize = 20_000;
pub const DEFAULT_SUBGROUP_BUDGET: usize = 200_000;

/// Orders up to this size get a precomputed multiplication table.
const TABLE_LIMIT: usize = 2048;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "image list {images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} out of range for degree {degree}"
                    )));
                }
                if touched[p] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} appears twice in cycle notation"
                    )));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    inverses: Vec<usize>,
    table: Option<Vec<u32>>,
    classes: OnceLock<ConjugacyClassPartition>,
}

/// Closes `generators` under composition; see [`generate_group_bounded`].
pub fn generate_group(degree: usize, generators: Vec<Permutation>) -> Result<PermutationGroup> {
    generate_group_bounded(degree, generators, DEFAULT_MAX_ORDER)
}

pub fn generate_group_bounded(
    degree: usize,
    generators: Vec<Permutation>,
    max_order: usize,
) -> Result<PermutationGroup> {
    for g in &generators {
        if g.degree() != degree {
            return Err(Error::InvalidPermutation(format!(
                "generator {g} has degree {} but the group has degree {degree}",
                g.degree()
            )));
        }
    }

    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for s in &generators {
            let y = x.compose(s);
            if !seen.contains(&y) {
                if seen.len() >= max_order {
                    return Err(Error::GroupTooLarge { max_order });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }

    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort();
    let index: HashMap<Permutation, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();

    let mut group = PermutationGroup {
        degree,
        generators,
        elements,
        index,
        inverses,
        table: None,
        classes: OnceLock::new(),
    };
    let n = group.order();
    if n <= TABLE_LIMIT {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(group.mul_slow(a, b) as u32);
            }
        }
        group.table = Some(table);
    }
    Ok(group)
}

impl PermutationGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    /// Index of the identity, always `0` under lexicographic ordering.
    pub fn identity(&self) -> usize {
        0
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    fn mul_slow(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.mul_slow(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `x a x⁻¹`
    #[inline]
    pub fn conjugate(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(x, a), self.inv(x))
    }

    /// Indices of the generators within `elements`.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    /// Conjugacy classes, computed on first use.
    pub fn classes(&self) -> &ConjugacyClassPartition {
        self.classes.get_or_init(|| conjugacy_classes(self))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_indices();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The whole group as a subgroup of itself.
    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted((0..self.order()).collect(), self.order())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(vec![0], self.order())
    }
}

/// A subgroup, stored as sorted indices into its parent's element list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    fn from_sorted(elements: Vec<usize>, parent_order: usize) -> Self {
        let mut mask = vec![false; parent_order];
        for &e in &elements {
            mask[e] = true;
        }
        Subgroup { elements, mask }
    }

    /// Validates that `elements` is a subgroup of `group`.
    pub fn from_elements(group: &PermutationGroup, elements: &[usize]) -> Result<Self> {
        let mut sorted = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&e| e >= group.order()) {
            return Err(Error::precondition(format!("element index {bad} out of range")));
        }
        if sorted.is_empty() {
            return Err(Error::precondition("a subgroup cannot be empty"));
        }
        let h = Subgroup::from_sorted(sorted, group.order());
        for &a in &h.elements {
            for &b in &h.elements {
                let ab = group.mul(a, b);
                if !h.mask[ab] {
                    return Err(Error::precondition(format!(
                        "subset is not closed under products: {} * {} = {} is missing",
                        group.element(a),
                        group.element(b),
                        group.element(ab)
                    )));
                }
            }
        }
        Ok(h)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    #[inline]
    pub fn contains(&self, element: usize) -> bool {
        self.mask[element]
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }

    /// `x H x⁻¹`
    pub fn conjugated_by(&self, group: &PermutationGroup, x: usize) -> Subgroup {
        let mut elems: Vec<usize> = self
            .elements
            .iter()
            .map(|&h| group.conjugate(h, x))
            .collect();
        elems.sort_unstable();
        Subgroup::from_sorted(elems, group.order())
    }
}

/// Smallest subgroup containing `gens`.
pub fn subgroup_generate(group: &PermutationGroup, gens: &[usize]) -> Subgroup {
    closure(group, gens, usize::MAX).expect("unbounded closure cannot fail")
}

/// Closure that gives up once more than `limit` elements are found.
fn closure(group: &PermutationGroup, gens: &[usize], limit: usize) -> Option<Subgroup> {
    let mut mask = vec![false; group.order()];
    let mut elems = vec![group.identity()];
    mask[group.identity()] = true;
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head];
        head += 1;
        for &s in gens {
            let y = group.mul(x, s);
            if !mask[y] {
                mask[y] = true;
                elems.push(y);
                if elems.len() > limit {
                    return None;
                }
            }
        }
    }
    elems.sort_unstable();
    Some(Subgroup {
        elements: elems,
        mask,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClassPartition {
    class_of: Vec<usize>,
    representatives: Vec<usize>,
    class_sizes: Vec<usize>,
}

impl ConjugacyClassPartition {
    pub fn num_classes(&self) -> usize {
        self.representatives.len()
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    /// Elements of class `c`, in index order.
    pub fn members(&self, c: usize) -> Vec<usize> {
        (0..self.class_of.len())
            .filter(|&e| self.class_of[e] == c)
            .collect()
    }

    /// Order of the centralizer of any element of class `c`.
    pub fn centralizer_order(&self, c: usize) -> usize {
        self.class_of.len() / self.class_sizes[c]
    }
}

/// Partitions the group into conjugacy classes. Classes are numbered by their
/// smallest element index, so class `0` is the identity.
pub fn conjugacy_classes(group: &PermutationGroup) -> ConjugacyClassPartition {
    const UNSET: usize = usize::MAX;
    let n = group.order();
    let gens = group.generator_indices();
    let mut class_of = vec![UNSET; n];
    let mut representatives = Vec::new();
    let mut class_sizes = Vec::new();

    for start in 0..n {
        if class_of[start] != UNSET {
            continue;
        }
        let c = representatives.len();
        representatives.push(start);
        class_of[start] = c;
        let mut stack = vec![start];
        let mut size = 1;
        // conjugation by the generators reaches the whole class
        while let Some(x) = stack.pop() {
            for &s in &gens {
                let y = group.conjugate(x, s);
                if class_of[y] == UNSET {
                    class_of[y] = c;
                    size += 1;
                    stack.push(y);
                }
            }
        }
        class_sizes.push(size);
    }

    ConjugacyClassPartition {
        class_of,
        representatives,
        class_sizes,
    }
}

/// Left cosets `gH` with the left-translation action of the parent group.
#[derive(Debug, Clone)]
pub struct CosetSpace {
    subgroup: Subgroup,
    coset_reps: Vec<usize>,
    coset_of: Vec<usize>,
}

pub fn coset_space(group: &PermutationGroup, subgroup: &Subgroup) -> CosetSpace {
    const UNSET: usize = usize::MAX;
    let mut coset_of = vec![UNSET; group.order()];
    let mut coset_reps = Vec::new();
    for g in 0..group.order() {
        if coset_of[g] != UNSET {
            continue;
        }
        let c = coset_reps.len();
        coset_reps.push(g);
        for &h in subgroup.elements() {
            coset_of[group.mul(g, h)] = c;
        }
    }
    CosetSpace {
        subgroup: subgroup.clone(),
        coset_reps,
        coset_of,
    }
}

impl CosetSpace {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn num_cosets(&self) -> usize {
        self.coset_reps.len()
    }

    pub fn coset_reps(&self) -> &[usize] {
        &self.coset_reps
    }

    /// Index of the coset containing `element`.
    pub fn coset_of(&self, element: usize) -> usize {
        self.coset_of[element]
    }

    /// `g . (xH) = (gx)H`
    pub fn act(&self, group: &PermutationGroup, g: usize, coset: usize) -> usize {
        self.coset_of[group.mul(g, self.coset_reps[coset])]
    }

    pub fn fixed_cosets(&self, group: &PermutationGroup, g: usize) -> usize {
        (0..self.num_cosets())
            .filter(|&c| self.act(group, g, c) == c)
            .count()
    }
}

/// Whether `g H1 g⁻¹ = H2` for some `g` in the group (inner conjugacy only).
pub fn are_conjugate_subgroups(group: &PermutationGroup, h1: &Subgroup, h2: &Subgroup) -> bool {
    if h1.order() != h2.order() {
        return false;
    }
    if h1 == h2 {
        return true;
    }
    (0..group.order()).any(|x| {
        h1.elements()
            .iter()
            .all(|&h| h2.contains(group.conjugate(h, x)))
    })
}

/// Enumerates every subgroup whose order divides `target` (all subgroups when
/// `target` is `None`) by repeatedly joining cyclic subgroups. Each closure
/// counts against `budget`.
pub fn enumerate_subgroups(
    group: &PermutationGroup,
    target: Option<usize>,
    budget: usize,
) -> Result<Vec<Subgroup>> {
    let n = group.order();
    let divides_target = |k: usize| target.is_none_or(|m| m % k == 0);
    let limit = target.unwrap_or(n);
    let mut spent = 0usize;
    let charge = |spent: &mut usize| -> Result<()> {
        *spent += 1;
        if *spent > budget {
            Err(Error::BudgetExceeded { budget })
        } else {
            Ok(())
        }
    };

    let mut known: HashSet<Vec<usize>> = HashSet::new();
    let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
    for g in 0..n {
        charge(&mut spent)?;
        let c = subgroup_generate(group, &[g]);
        if divides_target(c.order()) && known.insert(c.elements.clone()) {
            cyclic.push((g, c));
        }
    }

    // each subgroup keeps a small generating set for cheap joins
    let mut all: Vec<(Vec<usize>, Subgroup)> =
        cyclic.iter().map(|(g, c)| (vec![*g], c.clone())).collect();
    let mut frontier: Vec<usize> = (0..all.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            for (g, c) in &cyclic {
                if c.is_subgroup_of(&all[i].1) {
                    continue;
                }
                charge(&mut spent)?;
                let mut gens = all[i].0.clone();
                gens.push(*g);
                let Some(joined) = closure(group, &gens, limit) else {
                    continue;
                };
                if !divides_target(joined.order()) {
                    continue;
                }
                if known.insert(joined.elements.clone()) {
                    all.push((gens, joined));
                    next.push(all.len() - 1);
                }
            }
        }
        frontier = next;
    }

    let mut out: Vec<Subgroup> = all.into_iter().map(|(_, h)| h).collect();
    out.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements.cmp(&b.elements))
    });
    Ok(out)
}

/// All subgroups of order exactly `m`, in deterministic order.
pub fn subgroups_of_order(group: &PermutationGroup, m: usize, budget: usize) -> Result<Vec<Subgroup>> {
    if m == 0 || !group.order().is_multiple_of(m) {
        return Ok(Vec::new());
    }
    Ok(enumerate_subgroups(group, Some(m), budget)?
        .into_iter()
        .filter(|h| h.order() == m)
        .collect())
}

pub fn all_subgroups(group: &PermutationGroup, budget: usize) -> Result<Vec<Subgroup>> {
    enumerate_subgroups(group, None, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &cycles).unwrap()
    }

    fn s3() -> PermutationGroup {
        generate_group(3, vec![perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])]).unwrap()
    }

    fn affine32() -> PermutationGroup {
        let shift = Permutation::from_images((0..8).map(|x| (x + 1) % 8).collect()).unwrap();
        let triple = Permutation::from_images((0..8).map(|x| (3 * x) % 8).collect()).unwrap();
        let quint = Permutation::from_images((0..8).map(|x| (5 * x) % 8).collect()).unwrap();
        generate_group(8, vec![shift, triple, quint]).unwrap()
    }

    #[test]
    fn symmetric_group_of_degree_three() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert!(g.element(0).is_identity());
        assert!(!g.is_abelian());
    }

    #[test]
    fn trivial_group() {
        let g = generate_group(1, vec![]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(conjugacy_classes(&g).num_classes(), 1);
    }

    fn affine_maps(units: &[u32]) -> Vec<Vec<u32>> {
        let mut direct: Vec<Vec<u32>> = Vec::new();
        for &a in units {
            for b in 0..8u32 {
                direct.push((0..8).map(|x| (a * x + b) % 8).collect());
            }
        }
        direct.sort();
        direct
    }

    #[test]
    fn affine_group_matches_brute_force_enumeration() {
        let g = affine32();
        assert_eq!(g.order(), 32);
        let got: Vec<Vec<u32>> = g.elements().iter().map(|p| p.images().to_vec()).collect();
        assert_eq!(got, affine_maps(&[1, 3, 5, 7]));

        // x -> x + 1 and x -> 3x alone only reach the multipliers {1, 3}
        let shift = Permutation::from_images((0..8).map(|x| (x + 1) % 8).collect()).unwrap();
        let triple = Permutation::from_images((0..8).map(|x| (3 * x) % 8).collect()).unwrap();
        let g16 = generate_group(8, vec![shift, triple]).unwrap();
        assert_eq!(g16.order(), 16);
        let got: Vec<Vec<u32>> = g16.elements().iter().map(|p| p.images().to_vec()).collect();
        assert_eq!(got, affine_maps(&[1, 3]));
    }

    #[test]
    fn rejects_non_bijection_and_oversized_closure() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![0, 3]]).is_err());
        let big = generate_group_bounded(
            5,
            vec![perm(5, &[&[0, 1]]), perm(5, &[&[0, 1, 2, 3, 4]])],
            100,
        );
        assert_eq!(big.unwrap_err(), Error::GroupTooLarge { max_order: 100 });
        let wrong_degree = generate_group(4, vec![perm(3, &[&[0, 1]])]);
        assert!(wrong_degree.is_err());
    }

    #[test]
    fn cycle_notation_round_trip() {
        let p = perm(6, &[&[0, 3, 1], &[4, 5]]);
        assert_eq!(p.to_string(), "(0 3 1)(4 5)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(6));
    }

    #[test]
    fn s3_classes_match_pairwise_conjugation() {
        let g = s3();
        let cls = conjugacy_classes(&g);
        // brute force: g ~ h iff some x has x g x^-1 = h
        for a in 0..6 {
            for b in 0..6 {
                let related = (0..6).any(|x| {
                    let xa = g.element(x).compose(g.element(a));
                    xa.compose(&g.element(x).inverse()) == *g.element(b)
                });
                assert_eq!(related, cls.class_of(a) == cls.class_of(b));
            }
        }
        let mut sizes = cls.class_sizes().to_vec();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(cls.representatives()[0], 0);
    }

    #[test]
    fn cyclic_group_classes_are_singletons() {
        let g = generate_group(4, vec![perm(4, &[&[0, 1, 2, 3]])]).unwrap();
        let cls = conjugacy_classes(&g);
        assert_eq!(cls.num_classes(), 4);
        assert!(cls.class_sizes().iter().all(|&s| s == 1));
    }

    #[test]
    fn subgroup_generation() {
        let g = s3();
        let t = g.index_of(&perm(3, &[&[0, 1]])).unwrap();
        assert_eq!(subgroup_generate(&g, &[t]).order(), 2);
        assert_eq!(subgroup_generate(&g, &[]).order(), 1);

        let a = affine32();
        let times3 = a
            .index_of(&Permutation::from_images((0..8).map(|x| (3 * x) % 8).collect()).unwrap())
            .unwrap();
        let times5 = a
            .index_of(&Permutation::from_images((0..8).map(|x| (5 * x) % 8).collect()).unwrap())
            .unwrap();
        assert_eq!(subgroup_generate(&a, &[times3, times5]).order(), 4);
    }

    #[test]
    fn subgroup_from_elements_checks_closure() {
        let g = s3();
        let t = g.index_of(&perm(3, &[&[0, 1]])).unwrap();
        let c = g.index_of(&perm(3, &[&[0, 1, 2]])).unwrap();
        assert!(Subgroup::from_elements(&g, &[0, t]).is_ok());
        assert!(Subgroup::from_elements(&g, &[0, c]).is_err());
        assert!(Subgroup::from_elements(&g, &[]).is_err());
    }

    #[test]
    fn coset_spaces() {
        let g = s3();
        let whole = coset_space(&g, &g.full_subgroup());
        assert_eq!(whole.num_cosets(), 1);
        let regular = coset_space(&g, &g.trivial_subgroup());
        assert_eq!(regular.num_cosets(), 6);

        let t = g.index_of(&perm(3, &[&[0, 1]])).unwrap();
        let h = subgroup_generate(&g, &[t]);
        let cs = coset_space(&g, &h);
        assert_eq!(cs.num_cosets(), 3);
        // brute force: xH is fixed by t iff x^-1 t x lies in H
        let fixed = (0..6)
            .filter(|&x| h.contains(g.mul(g.inv(x), g.mul(t, x))))
            .count()
            / h.order();
        assert_eq!(fixed, 1);
        assert_eq!(cs.fixed_cosets(&g, t), 1);
        // coset 0 is H and is fixed exactly by H
        for x in 0..6 {
            assert_eq!(cs.act(&g, x, 0) == 0, h.contains(x));
        }
    }

    #[test]
    fn s3_subgroups_by_order() {
        let g = s3();
        // brute force over all subsets of size 2 closed under products
        let closed_pairs = (1..6)
            .filter(|&x| g.mul(x, x) == 0)
            .count();
        let subs = subgroups_of_order(&g, 2, DEFAULT_SUBGROUP_BUDGET).unwrap();
        assert_eq!(subs.len(), closed_pairs);
        assert_eq!(subs.len(), 3);
        assert_eq!(subgroups_of_order(&g, 6, DEFAULT_SUBGROUP_BUDGET).unwrap().len(), 1);
        assert!(subgroups_of_order(&g, 4, DEFAULT_SUBGROUP_BUDGET).unwrap().is_empty());
        assert_eq!(all_subgroups(&g, DEFAULT_SUBGROUP_BUDGET).unwrap().len(), 6);
    }

    #[test]
    fn s4_has_thirty_subgroups() {
        let g = generate_group(4, vec![perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert_eq!(all_subgroups(&g, DEFAULT_SUBGROUP_BUDGET).unwrap().len(), 30);
    }

    #[test]
    fn enumeration_budget_is_enforced() {
        let g = s3();
        assert_eq!(
            all_subgroups(&g, 3).unwrap_err(),
            Error::BudgetExceeded { budget: 3 }
        );
    }

    #[test]
    fn conjugacy_of_subgroups() {
        let g = s3();
        let subs = subgroups_of_order(&g, 2, DEFAULT_SUBGROUP_BUDGET).unwrap();
        assert!(are_conjugate_subgroups(&g, &subs[0], &subs[0]));
        assert!(are_conjugate_subgroups(&g, &subs[0], &subs[1]));
        let a3 = subgroups_of_order(&g, 3, DEFAULT_SUBGROUP_BUDGET).unwrap();
        assert!(!are_conjugate_subgroups(&g, &subs[0], &a3[0]));
    }
}
