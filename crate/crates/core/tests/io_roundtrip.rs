use immersa::diagram::Diagram;
use immersa::graph::NamedGraph;
use immersa::io::{
    format_number, parse_diagram, parse_graph, parse_immersion, parse_number, serialize_diagram,
    serialize_graph, serialize_immersion, ParseError,
};
use immersa::random::random_immersion;
use immersa::standard::StandardFigure;
use immersa::{ExactDiagram, ExactImmersion, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn standard_figures_round_trip() {
    for f in StandardFigure::ALL_FIXED
        .into_iter()
        .chain([StandardFigure::Theta(4)])
    {
        let imm = f.load().unwrap();
        let text = serialize_immersion(&imm);
        let back: ExactImmersion = parse_immersion(&text).unwrap();
        assert_eq!(back, imm, "{f}");
        assert_eq!(serialize_immersion(&back), text);
    }
}

#[test]
fn random_diagrams_round_trip() {
    let g = NamedGraph::Petersen.build();
    for seed in 0..5 {
        let d = Diagram::random_lift(random_immersion(&g, seed).unwrap(), seed).unwrap();
        let text = serialize_diagram(&d);
        let back: ExactDiagram = parse_diagram(&text).unwrap();
        assert_eq!(back.first_over(), d.first_over());
        assert_eq!(serialize_diagram(&back), text);
    }
}

#[test]
fn inline_graphs_round_trip() {
    let text = "v a\nv b\nv c\ne ab a b\ne bc b c\ne ca c a\ne loop a a\n";
    let g = parse_graph(text).unwrap();
    assert_eq!(serialize_graph(&g), text);
    assert_eq!(
        serialize_graph(&parse_graph("@K3,3\n").unwrap()),
        "@K 3 3\n"
    );
}

#[test]
fn missing_over_line_is_reported() {
    let imm = StandardFigure::PetersenTwoCrossings.load().unwrap();
    let d = Diagram::random_lift(imm, 0).unwrap();
    let text = serialize_diagram(&d);
    let dropped: String = text
        .lines()
        .filter(|l| !l.starts_with("over u1u2"))
        .map(|l| format!("{l}\n"))
        .collect();
    match parse_diagram::<Rational>(&dropped) {
        Err(ParseError::UncoveredCrossing(label)) => assert!(label.starts_with("u1u2~")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn malformed_input_reports_line_numbers() {
    let text = "graph @K 3\npos x1 0 0\npos x2 1 0\npos x3 0 1\nedge x1x2: 0 0\n";
    match parse_immersion::<Rational>(text) {
        Err(ParseError::Syntax { line, .. }) => assert_eq!(line, 5),
        other => panic!("{other:?}"),
    }
    match parse_immersion::<Rational>("graph @K 3\npos x9 0 0\n") {
        Err(ParseError::Unknown { line: 2, token, .. }) => assert_eq!(token, "x9"),
        other => panic!("{other:?}"),
    }
}

proptest! {
    #[test]
    fn numbers_round_trip(n in -10_000_000i64..10_000_000, d in 1i64..5000) {
        let r = Rational::new(BigInt::from(n), BigInt::from(d));
        prop_assert_eq!(parse_number(&format_number(&r)), Some(r));
    }

    #[test]
    fn decimals_are_exact(int in -1000i64..1000, frac in 0u32..1_000_000) {
        let text = format!("{int}.{frac:06}");
        let r = parse_number(&text).unwrap();
        let magnitude: BigInt = BigInt::from(int.abs()) * 1_000_000 + BigInt::from(frac);
        let numer = if int < 0 { -magnitude } else { magnitude };
        let expected = Rational::new(numer, BigInt::from(1_000_000));
        prop_assert_eq!(r, expected);
    }
}
