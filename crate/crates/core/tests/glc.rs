use calogero_core::coxgroup::{CoxeterGroup, Kappa};
use calogero_core::glc::{build_glc, build_glc_from, klein_transport, solve_symbolic};
use calogero_core::rootsystem::RootSystem;
use calogero_core::scalar::rational::rat;
use calogero_core::scalar::Cyclotomic;

fn group(name: &str) -> CoxeterGroup {
    CoxeterGroup::generate(RootSystem::build(name).unwrap()).unwrap()
}

#[test]
fn a2_has_one_trace_at_special_and_generic_nu() {
    let g = group("A2");
    let sys = build_glc(&g, Kappa::Plus);
    for q in [rat(1, 3), rat(1, 2), rat(7, 5)] {
        assert_eq!(sys.nullity_rational(&[q]).unwrap(), 1);
    }
}

#[test]
fn b2_has_two_supertraces() {
    let g = group("B2");
    let sys = build_glc(&g, Kappa::Minus);
    for nu in [[rat(1, 2), rat(1, 3)], [rat(-3, 4), rat(5, 2)], [rat(0, 1), rat(0, 1)]] {
        assert_eq!(sys.nullity_rational(&nu).unwrap(), 2);
    }
}

#[test]
fn other_class_representatives_give_the_same_solutions() {
    for name in ["A3", "B3", "H3"] {
        let g = group(name);
        let nu: Vec<Cyclotomic> = (0..g.root_system().num_classes()).map(|k| Cyclotomic::from_rational(rat(2 * k as i64 + 3, 7))).collect();
        for kappa in [Kappa::Plus, Kappa::Minus] {
            let first = build_glc(&g, kappa).solution_basis(&nu).unwrap();
            let last: Vec<usize> = g.classes().iter().map(|c| *c.members.last().unwrap()).collect();
            let other = build_glc_from(&g, kappa, &last).solution_basis(&nu).unwrap();
            assert_eq!(first, other, "{name} {kappa}");
        }
    }
}

#[test]
fn solutions_at_nu_zero_live_on_eigenvalue_free_classes() {
    for name in ["A2", "B3", "G2", "I2(7)"] {
        let g = group(name);
        let zero = vec![Cyclotomic::from_int(0); g.root_system().num_classes()];
        for kappa in [Kappa::Plus, Kappa::Minus] {
            for b in build_glc(&g, kappa).solution_basis(&zero).unwrap() {
                for (c, class) in g.classes().iter().enumerate() {
                    if class.e(kappa) > 0 {
                        assert!(b[c].is_zero(), "{name} {kappa} class {c}");
                    }
                }
            }
        }
    }
}

#[test]
fn symbolic_solutions_specialize_to_the_numeric_basis() {
    for name in ["A3", "B2", "G2", "I2(5)"] {
        let g = group(name);
        let nu: Vec<Cyclotomic> = (0..g.root_system().num_classes()).map(|k| Cyclotomic::from_rational(rat(5 - 3 * k as i64, 4))).collect();
        for kappa in [Kappa::Plus, Kappa::Minus] {
            let numeric = build_glc(&g, kappa).solution_basis(&nu).unwrap();
            let symbolic: Vec<Vec<Cyclotomic>> = solve_symbolic(&g, kappa).unwrap().iter().map(|f| f.evaluate(&nu).unwrap()).collect();
            assert_eq!(numeric, symbolic, "{name} {kappa}");
        }
    }
}

#[test]
fn klein_transport_exchanges_solution_spaces() {
    let g = group("B3");
    let nu = vec![Cyclotomic::from_rational(rat(1, 3)), Cyclotomic::from_rational(rat(-2, 5))];
    let plus = build_glc(&g, Kappa::Plus);
    for b in build_glc(&g, Kappa::Minus).solution_basis(&nu).unwrap() {
        let moved = klein_transport(&b, &g).unwrap();
        assert!(plus.residuals(&moved, &nu).unwrap().iter().all(Cyclotomic::is_zero));
    }
    assert!(klein_transport(&[0, 1, 2], &group("A2")).is_err());
}
