use std::sync::Arc;

use calogero_cli::{parse_expr, to_element, ExprError, ExprKind};
use calogero_core::algebra::Algebra;
use calogero_core::coxgroup::CoxeterGroup;
use calogero_core::rootsystem::RootSystem;

const CORPUS: &[&str] = &[
    "a0_1",
    "a1_2",
    "s_1",
    "w[s_1 s_2]",
    "w[s_2 s_1 s_2]",
    "nu",
    "nu_2",
    "3",
    "3/4",
    "-1/2",
    "a0_1 * a1_1",
    "a0_1*a1_1*s_1",
    "(1 + 2*nu) * s_1",
    "(1 + 2*nu) * a0_1 * a1_1 * s_1",
    "a0_1 + a1_1",
    "a0_1 - a1_1",
    "a0_1 - a1_1 + s_1",
    "-a0_1",
    "--a0_1",
    "-(a0_1 * a1_1)",
    "-(a0_1 + a1_1)",
    "a0_1^2",
    "a0_1^2 * a1_1^3",
    "(a0_1 + a1_1)^2",
    "(a0_1 * a1_1)^2",
    "(a0_1^2)^3",
    "(-a0_1)^2",
    "-a0_1^2",
    "(a0_1 * a1_1) * s_1",
    "a0_1 * (a1_1 * s_1)",
    "((a0_1))",
    "(((a0_1 + a1_1)))",
    "nu_1 * nu_2 - 1/3",
    "2*nu_1^2 + 3*nu_2",
    "1/2 - 2*nu^2",
    "w[s_1] * w[s_2]",
    "s_1 * s_2 * s_1",
    "a0_2 * w[s_1 s_2] * a1_2",
    "(a0_1 - a1_1) * (a0_1 + a1_1)",
    "a0_1 * -a1_1",
    "7 * 11/13 * a1_1",
    "0",
    "0 * a0_1",
    "a0_1 + a0_1 + a0_1",
    "s_1^2 - 1",
    "(s_1 + s_2) * (s_1 - s_2)",
    "a0_1*a0_2*a1_1*a1_2",
    "nu * (a0_1 * a1_1 - a1_1 * a0_1)",
    "  a0_1   *   a1_1  ",
    "(1 - nu)^3 * w[s_2 s_1]",
];

#[test]
fn pretty_printing_round_trips() {
    assert_eq!(CORPUS.len(), 50);
    for text in CORPUS {
        let ast = parse_expr(text).unwrap_or_else(|e| panic!("{text}: {e}"));
        let printed = ast.to_string();
        let again = parse_expr(&printed).unwrap_or_else(|e| panic!("{text} printed as {printed}: {e}"));
        assert_eq!(again, ast, "{text} printed as {printed}");
        assert_eq!(again.to_string(), printed);
    }
}

#[test]
fn product_of_two_generators() {
    let ast = parse_expr("a0_1 * a1_1").unwrap();
    let ExprKind::Product(factors) = ast.kind else { panic!("not a product") };
    assert_eq!(factors.len(), 2);
    assert_eq!(factors[0].kind, ExprKind::Generator { alpha: 0, index: 1 });
    assert_eq!(factors[1].kind, ExprKind::Generator { alpha: 1, index: 1 });
    assert_eq!(factors[1].span, 7..11);
}

#[test]
fn scalar_times_group_element() {
    let ast = parse_expr("(1 + 2*nu) * s_1").unwrap();
    let ExprKind::Product(factors) = ast.kind else { panic!("not a product") };
    assert!(matches!(factors[0].kind, ExprKind::Sum(_)));
    assert_eq!(factors[1].kind, ExprKind::Reflection(1));

    let alg = Algebra::new(Arc::new(CoxeterGroup::generate(RootSystem::build("A1").unwrap()).unwrap()));
    let x = to_element(&parse_expr("(1 + 2*nu) * s_1").unwrap(), &alg).unwrap();
    let y = to_element(&parse_expr("s_1 + 2*nu*s_1").unwrap(), &alg).unwrap();
    assert_eq!(x.terms(), y.terms());
}

#[test]
fn out_of_range_indices_are_unknown_generators() {
    let alg = Algebra::new(Arc::new(CoxeterGroup::generate(RootSystem::build("A1").unwrap()).unwrap()));
    for text in ["a0_3", "a1_2", "s_2", "w[s_1 s_2]", "nu_2"] {
        let ast = parse_expr(text).unwrap();
        assert!(matches!(to_element(&ast, &alg), Err(ExprError::UnknownGenerator { .. })), "{text}");
    }
    match to_element(&parse_expr("s_1 * a0_3").unwrap(), &alg) {
        Err(ExprError::UnknownGenerator { span, .. }) => assert_eq!(span, 6..10),
        other => panic!("{other:?}"),
    }
}

#[test]
fn syntax_errors_carry_spans() {
    for (text, start) in [("a0_1 +", 6), ("a0_1 * )", 7), ("(a0_1", 0), ("a0_1 a1_1", 5), ("a0_", 3), ("w[s_1", 0)] {
        match parse_expr(text) {
            Err(ExprError::Syntax { span, .. }) => assert_eq!(span.start, start, "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
    assert!(matches!(parse_expr("x_1"), Err(ExprError::UnknownGenerator { .. })));
}

#[test]
fn generator_relation_through_the_parser() {
    // [a0, a1] = 1 + 2ν R in A1
    let alg = Algebra::new(Arc::new(CoxeterGroup::generate(RootSystem::build("A1").unwrap()).unwrap()));
    let lhs = to_element(&parse_expr("a0_1*a1_1 - a1_1*a0_1").unwrap(), &alg).unwrap();
    let rhs = to_element(&parse_expr("1 + 2*nu*s_1").unwrap(), &alg).unwrap();
    assert_eq!(lhs.terms(), rhs.terms());
}
