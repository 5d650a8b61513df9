mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use sunada_core::chartab::{
    character_table, decompose, g_hat_k, multiplicity, permutation_character, trivial_multiplicity_on_restriction,
    ClassFunction,
};
use sunada_core::gassmann::{almost_conjugate, k_equivalent, representation_equivalent};
use sunada_core::permgrp::{coset_space, subgroup_generate, Permutation};

use common::*;

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #[test]
    fn composition_is_associative_with_inverses(a in permutation(7), b in permutation(7), c in permutation(7)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert!(a.inverse().compose(&a).is_identity());
        for x in 0..7 {
            prop_assert_eq!(a.compose(&b).apply(x), a.apply(b.apply(x)));
        }
    }

    #[test]
    fn cycle_notation_round_trips(p in permutation(9)) {
        let q = Permutation::from_cycles(9, &p.cycles()).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(sunada_core::io::parse_permutation(9, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn table_products_match_composition(gi in 0usize..5, a in 0usize..1000, b in 0usize..1000) {
        let (_, g) = &named_groups()[gi];
        let (a, b) = (a % g.order(), b % g.order());
        let ab = g.mul(a, b);
        prop_assert_eq!(g.element(ab), &g.element(a).compose(g.element(b)));
        prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
        prop_assert_eq!(g.index_of(&g.element(a).inverse()), Some(g.inv(a)));
    }

    #[test]
    fn conjugation_preserves_classes(gi in 0usize..5, a in 0usize..1000, x in 0usize..1000) {
        let (_, g) = &named_groups()[gi];
        let (a, x) = (a % g.order(), x % g.order());
        let classes = g.classes();
        prop_assert_eq!(classes.class_of(g.conjugate(a, x)), classes.class_of(a));
    }

    #[test]
    fn coset_action_is_a_homomorphism(gi in 0usize..5, hi in 0usize..1000, a in 0usize..1000, b in 0usize..1000) {
        let (_, g) = &named_groups()[gi];
        let subs = subgroups(g);
        let h = &subs[hi % subs.len()];
        let cs = coset_space(g, h);
        let (a, b) = (a % g.order(), b % g.order());
        for c in 0..cs.num_cosets() {
            prop_assert_eq!(cs.act(g, g.mul(a, b), c), cs.act(g, a, cs.act(g, b, c)));
        }
        prop_assert_eq!(cs.act(g, a, 0) == 0, h.contains(a));
    }
}

#[test]
fn elements_are_sorted_and_closed() {
    for (name, g) in named_groups() {
        assert!(g.elements().windows(2).all(|w| w[0].images() < w[1].images()), "{name}");
        assert!(g.element(g.identity()).is_identity());
        for gen in g.generators() {
            assert!(g.index_of(gen).is_some());
        }
    }
    let orders: Vec<usize> = named_groups().iter().map(|(_, g)| g.order()).collect();
    assert_eq!(orders, vec![6, 24, 8, 8, 32]);
}

#[test]
fn lagrange_and_cosets() {
    for (name, g) in named_groups() {
        for h in subgroups(&g) {
            assert_eq!(g.order() % h.order(), 0, "{name}");
            let cs = coset_space(&g, &h);
            assert_eq!(cs.num_cosets() * h.order(), g.order());
            // cosets partition the group
            let mut sizes = vec![0; cs.num_cosets()];
            for x in 0..g.order() {
                sizes[cs.coset_of(x)] += 1;
            }
            assert!(sizes.iter().all(|&s| s == h.order()));
        }
    }
}

#[test]
fn class_equation() {
    for (name, g) in named_groups() {
        let classes = g.classes();
        assert_eq!(classes.class_sizes().iter().sum::<usize>(), g.order(), "{name}");
        assert_eq!(classes.representatives()[0], g.identity());
        for c in 0..classes.num_classes() {
            assert_eq!(classes.class_sizes()[c] * classes.centralizer_order(c), g.order());
            // brute force: members are exactly the conjugates of the representative
            let rep = classes.representatives()[c];
            let mut conj: Vec<usize> = (0..g.order()).map(|x| g.conjugate(rep, x)).collect();
            conj.sort_unstable();
            conj.dedup();
            assert_eq!(conj, classes.members(c));
        }
    }
}

#[test]
fn subgroup_counts() {
    let counts: Vec<usize> = named_groups().iter().map(|(_, g)| subgroups(g).len()).collect();
    // S3: 6, S4: 30, D4: 10, Q8: 6
    assert_eq!(&counts[..4], &[6, 30, 10, 6]);
}

#[test]
fn character_tables_are_orthogonal() {
    for (name, g) in named_groups() {
        let t = character_table(&g).unwrap();
        let (row, col) = t.orthogonality_defect();
        assert!(row <= 1e-9 && col <= 1e-9, "{name}: {row} {col}");
        assert_eq!(t.degrees().iter().map(|d| d * d).sum::<u64>(), g.order() as u64);
        assert!(t.degrees().iter().all(|&d| (g.order() as u64).is_multiple_of(d)));
        assert_eq!(t.num_irreps(), g.classes().num_classes());
        assert!(t.row(0).values().iter().all(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-12));
    }
}

/// `[Res_H ρ : 1_H]` straight from the table, and `[π_H : ρ]` from fixed-coset counts.
#[test]
fn frobenius_reciprocity_against_direct_sums() {
    for (name, g) in named_groups() {
        let t = character_table(&g).unwrap();
        for h in subgroups(&g) {
            let cs = coset_space(&g, &h);
            let fixed: Vec<f64> = g
                .classes()
                .representatives()
                .iter()
                .map(|&x| (0..cs.num_cosets()).filter(|&c| cs.act(&g, x, c) == c).count() as f64)
                .collect();
            let pi = ClassFunction::new(fixed.iter().map(|&f| Complex64::new(f, 0.0)).collect());
            assert_eq!(pi, permutation_character(&g, &h));
            for rho in 0..t.num_irreps() {
                let res: Complex64 =
                    h.elements().iter().map(|&x| t.value_at(rho, x)).sum::<Complex64>() / h.order() as f64;
                let direct = res.re.round() as u64;
                assert!((res - Complex64::new(direct as f64, 0.0)).norm() < 1e-9, "{name}");
                assert_eq!(multiplicity(&pi, rho, &t).unwrap(), direct, "{name}");
                assert_eq!(trivial_multiplicity_on_restriction(&t, rho, &h).unwrap(), direct, "{name}");
            }
            // the decomposition reproduces the index [G : H] = π_H(e)
            let m = decompose(&pi, &t).unwrap();
            let dim: u64 = m.iter().zip(t.degrees()).map(|(a, d)| a * d).sum();
            assert_eq!(dim as usize, cs.num_cosets());
        }
    }
}

#[test]
fn almost_conjugacy_matches_brute_force_class_counts() {
    for (name, g) in named_groups() {
        let subs = subgroups(&g);
        for h1 in &subs {
            for h2 in subs.iter().filter(|h2| h2.order() == h1.order()) {
                let r = almost_conjugate(&g, h1, h2).unwrap();
                let brute = (0..g.order()).all(|x| {
                    let conj = |h: &sunada_core::permgrp::Subgroup| {
                        h.elements().iter().filter(|&&y| g.classes().class_of(y) == g.classes().class_of(x)).count()
                    };
                    conj(h1) == conj(h2)
                });
                assert_eq!(r.almost_conjugate, brute, "{name}");
                assert_eq!(r.almost_conjugate, representation_equivalent(&g, h1, h2), "{name}");
                if r.conjugate {
                    assert!(r.almost_conjugate);
                }
            }
        }
    }
}

/// `K ⊆ K'` shrinks `Ĝ_{K'}` inside `Ĝ_K`, so K-equivalence passes up to `K'`.
#[test]
fn k_equivalence_is_monotone() {
    for (name, g) in [("S3", s3()), ("D4", d4()), ("Q8", q8())] {
        let t = character_table(&g).unwrap();
        let subs = subgroups(&g);
        for k in &subs {
            for k2 in subs.iter().filter(|k2| k.is_subgroup_of(k2)) {
                let (a, b) = (g_hat_k(&t, k).unwrap(), g_hat_k(&t, k2).unwrap());
                assert!(b.indices().iter().all(|&r| a.contains(r)), "{name}");
                for h1 in &subs {
                    for h2 in &subs {
                        if k_equivalent(&g, &t, k, h1, h2).unwrap() {
                            assert!(k_equivalent(&g, &t, k2, h1, h2).unwrap(), "{name}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn generated_subgroups_contain_generators() {
    let g = affine32();
    for a in 0..g.order() {
        for b in [0, 5, 17] {
            let h = subgroup_generate(&g, &[a, b]);
            assert!(h.contains(a) && h.contains(b) && h.contains(g.identity()));
            assert_eq!(g.order() % h.order(), 0);
        }
    }
}
