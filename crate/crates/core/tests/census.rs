use calogero_core::coxgroup::{CoxeterGroup, Kappa};
use calogero_core::rootsystem::{RootSystem, SystemKind};

/// Number of partitions of `n` into distinct positive parts, by direct
/// enumeration.
fn distinct_partitions(n: usize) -> usize {
    fn go(rest: usize, max: usize) -> usize {
        if rest == 0 {
            return 1;
        }
        (1..=max.min(rest)).map(|k| go(rest - k, k - 1)).sum()
    }
    go(n, n)
}

/// Number of partitions of `n`.
fn partitions(n: usize) -> usize {
    fn go(rest: usize, max: usize) -> usize {
        if rest == 0 {
            return 1;
        }
        (1..=max.min(rest)).map(|k| go(rest - k, k)).sum()
    }
    go(n, n)
}

fn census(name: &str) -> (usize, usize, CoxeterGroup) {
    let g = CoxeterGroup::generate(RootSystem::build(name).unwrap()).unwrap();
    (g.counts(Kappa::Plus), g.counts(Kappa::Minus), g)
}

#[test]
fn a_series_matches_partition_counts() {
    for n in 2..=6 {
        let (t, st, _) = census(&format!("A{}", n - 1));
        assert_eq!(t, 1, "T(A_{})", n - 1);
        assert_eq!(st, distinct_partitions(n), "ST(A_{})", n - 1);
    }
    assert_eq!((2..=6).map(distinct_partitions).collect::<Vec<_>>(), vec![1, 2, 2, 3, 4]);
}

#[test]
fn b_series_matches_signed_cycle_types() {
    // elements without eigenvalue 1 have only negative cycles: one class per partition of n
    for n in 2..=4 {
        let (t, st, g) = census(&format!("B{n}"));
        assert_eq!(t, partitions(n));
        assert!(g.has_minus_identity());
        assert_eq!(st, t);
    }
}

#[test]
fn dihedral_counts_from_rotation_angles() {
    // rotations by 2πk/m lack eigenvalue 1 for k ≠ 0 and eigenvalue −1 unless 2k = m;
    // reflections have both
    for m in 3..=12 {
        let (t, st, _) = census(&format!("I2({m})"));
        let rotation_classes = m / 2 + 1;
        let t_expected = rotation_classes - 1;
        let st_expected = rotation_classes - usize::from(m % 2 == 0);
        assert_eq!((t, st), (t_expected, st_expected), "I2({m})");
    }
}

#[test]
fn h3_counts_from_rotation_subgroup() {
    // W(H_3) = {±r : r in the icosahedral rotation group}; −r lacks eigenvalue 1
    // unless r is a half turn, giving id, order 3, and two order-5 classes
    let (t, st, g) = census("H3");
    assert_eq!(t, 4);
    assert_eq!(st, 4);
    assert!(g.has_minus_identity());
}

#[test]
fn class_sizes_sum_to_group_order_and_e_is_a_class_function() {
    for kind in SystemKind::catalog() {
        if matches!(kind, SystemKind::H4 | SystemKind::F4 | SystemKind::A(5) | SystemKind::B(4)) {
            continue;
        }
        let g = CoxeterGroup::generate(RootSystem::from_kind(kind)).unwrap();
        assert_eq!(g.order() as u64, kind.classical_order());
        assert_eq!(g.classes().iter().map(|c| c.size()).sum::<usize>(), g.order());
        for c in g.classes() {
            let other = *c.members.last().unwrap();
            assert_eq!(g.eigen_multiplicity(other, Kappa::Plus), c.e_plus);
            assert_eq!(g.eigen_multiplicity(other, Kappa::Minus), c.e_minus);
            assert!(c.e_plus <= g.rank() && c.e_minus <= g.rank());
        }
    }
}

#[test]
fn parity_homomorphism_and_klein_symmetry() {
    for name in ["A3", "B3", "D4", "G2", "H3", "I2(8)"] {
        let (t, st, g) = census(name);
        let n = g.rank();
        let parity = |x: usize| g.eigen_multiplicity(x, Kappa::Minus) % 2;
        let sample: Vec<usize> = (0..g.order()).step_by(g.order() / 12 + 1).collect();
        for &a in &sample {
            assert_eq!((g.eigen_multiplicity(a, Kappa::Plus) + g.eigen_multiplicity(a, Kappa::Minus)) % 2, n % 2);
            for &b in &sample {
                assert_eq!(parity(g.mul(a, b)), (parity(a) + parity(b)) % 2);
            }
        }
        if g.has_minus_identity() {
            assert_eq!(t, st, "{name}");
        }
    }
}

#[test]
fn lemma_one_step_from_eigenvalue_free_classes() {
    // E(g) = 0 implies E(R_v g) = 1 for every root v
    for name in ["A1", "A2", "A3", "B2", "B3", "G2", "H3", "I2(5)"] {
        let g = CoxeterGroup::generate(RootSystem::build(name).unwrap()).unwrap();
        for kappa in [Kappa::Plus, Kappa::Minus] {
            for x in 0..g.order() {
                if g.classes()[g.class_of(x)].e(kappa) != 0 {
                    continue;
                }
                for r in 0..g.root_system().roots().len() {
                    assert_eq!(g.eigen_multiplicity(g.mul(g.reflection(r), x), kappa), 1);
                }
            }
        }
    }
}

#[test]
fn lemma_reflection_changes_e_by_one() {
    use calogero_core::linalg::dot;
    // E(R_v g) = E(g) + 1 if v is orthogonal to the κ-eigenspace, else E(g) − 1
    for name in ["A3", "B3", "H3"] {
        let g = CoxeterGroup::generate(RootSystem::build(name).unwrap()).unwrap();
        let rs = g.root_system();
        for kappa in [Kappa::Plus, Kappa::Minus] {
            for x in (0..g.order()).step_by(7) {
                let e = g.eigen_multiplicity(x, kappa);
                let space = g.eigenspace(x, kappa);
                for r in (0..rs.roots().len()).step_by(3) {
                    let orth = space.iter().all(|c| dot(c, &rs.root(r).0).is_zero());
                    let e2 = g.eigen_multiplicity(g.mul(g.reflection(r), x), kappa);
                    if orth {
                        assert_eq!(e2, e + 1);
                    } else {
                        assert_eq!(e2 + 1, e);
                    }
                }
            }
        }
    }
}

#[test]
fn a0_is_trivial() {
    let (t, st, g) = census("A0");
    assert_eq!(g.order(), 1);
    assert_eq!(g.classes().len(), 1);
    assert_eq!((t, st), (1, 1));
}
