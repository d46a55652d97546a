//! Text formats for graphs, immersions and diagrams.
//!
//! ```text
//! # graph
//! v a
//! v b
//! e ab a b
//!
//! # immersion: a graph header, then positions and polylines
//! graph @K 4            (or `graph inline` followed by v/e lines)
//! pos x1 0 0
//! edge x1x2: 0 0 ; 1.5 0 ; 4 0
//!
//! # diagram: an immersion plus one line per crossing
//! over x1x3~x2x4#1 x1x3
//! ```
//!
//! Coordinates are exact: decimals such as `-1.25`, integers, or `p/q`.
//! Output uses a terminating decimal whenever the denominator allows and
//! `p/q` otherwise, so every round trip is lossless.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError};
use crate::geometry::Point;
use crate::graph::{EdgeId, GraphError, MultiGraph, NamedGraph};
use crate::immersion::{CrossingKind, ImmersionError, PlaneImmersion};
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("line {line}: unknown {what} `{token}`")]
    Unknown {
        line: usize,
        what: &'static str,
        token: String,
    },
    #[error("line {line}: duplicate {what} `{token}`")]
    Duplicate {
        line: usize,
        what: &'static str,
        token: String,
    },
    #[error("missing position for vertex `{0}`")]
    MissingPosition(String),
    #[error("uncovered crossing `{0}`")]
    UncoveredCrossing(String),
    #[error("missing graph header")]
    MissingGraph,
    #[error(transparent)]
    Immersion(#[from] ImmersionError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Strips a trailing comment. `#` inside a token (crossing ids) is kept;
/// only a `#` at the start of a token opens a comment.
fn content(raw: &str) -> &str {
    let mut prev_space = true;
    for (i, c) in raw.char_indices() {
        if c == '#' && prev_space {
            return raw[..i].trim();
        }
        prev_space = c.is_whitespace();
    }
    raw.trim()
}

/// Parses `@PG`, `@HG`, `@K 4`, `@K 3 3`, `@T 3`, `@theta 5` and the compact
/// forms `@K4`, `@K3,3`, `@K33`, `@T3`, `@theta5`.
pub fn parse_shorthand(spec: &str) -> Result<NamedGraph, String> {
    let body = spec
        .trim()
        .strip_prefix('@')
        .ok_or_else(|| format!("`{spec}` is not an @ shorthand"))?;
    let mut words = body.split_whitespace();
    let head = words.next().ok_or("empty shorthand")?;
    let mut params: Vec<String> = words.map(str::to_string).collect();
    let family_len = head
        .find(|c: char| c.is_ascii_digit())
        .unwrap_or(head.len());
    let (family, attached) = head.split_at(family_len);
    let family = family.trim_end_matches('_');
    if !attached.is_empty() {
        let attached: Vec<String> = if attached.contains(',') {
            attached.split(',').map(str::to_string).collect()
        } else if family == "K" && attached.len() == 2 && params.is_empty() {
            // `K33`: two single-digit parts
            attached.chars().map(String::from).collect()
        } else {
            vec![attached.to_string()]
        };
        params.splice(0..0, attached);
    }
    let params: Vec<i64> = params
        .iter()
        .map(|p| {
            p.parse::<i64>()
                .map_err(|_| format!("bad parameter `{p}` in `{spec}`"))
        })
        .collect::<Result<_, _>>()?;
    NamedGraph::from_parts(family, &params).map_err(|e| e.to_string())
}

/// Parses a graph file: `v`/`e` lines or a single `@` shorthand line.
pub fn parse_graph(text: &str) -> Result<MultiGraph, ParseError> {
    let mut g = MultiGraph::empty();
    let mut named: Option<MultiGraph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let c = content(raw);
        if c.is_empty() {
            continue;
        }
        if c.starts_with('@') {
            if named.is_some() || g.vertex_count() > 0 {
                return Err(syntax(line, "a shorthand must be the only graph item"));
            }
            named = Some(parse_shorthand(c).map_err(|m| syntax(line, m))?.build());
            continue;
        }
        if named.is_some() {
            return Err(syntax(line, "a shorthand must be the only graph item"));
        }
        graph_line(&mut g, line, c)?
            .then_some(())
            .ok_or_else(|| syntax(line, format!("expected `v` or `e`, got `{c}`")))?;
    }
    Ok(named.unwrap_or(g))
}

/// Handles a `v` or `e` line; `Ok(false)` if the line is neither.
fn graph_line(g: &mut MultiGraph, line: usize, c: &str) -> Result<bool, ParseError> {
    let fields: Vec<&str> = c.split_whitespace().collect();
    match fields[..] {
        ["v", name] => {
            g.add_vertex(name)
                .map_err(|source| ParseError::Graph { line, source })?;
        }
        ["e", name, tail, head] => {
            g.add_edge(name, tail, head)
                .map_err(|source| ParseError::Graph { line, source })?;
        }
        ["v", ..] => return Err(syntax(line, "expected `v <name>`")),
        ["e", ..] => return Err(syntax(line, "expected `e <name> <tail> <head>`")),
        _ => return Ok(false),
    }
    Ok(true)
}

pub fn serialize_graph(g: &MultiGraph) -> String {
    if let Some(family) = g.family() {
        return format!("{family}\n");
    }
    let mut out = String::new();
    write_graph_body(g, &mut out);
    out
}

fn write_graph_body(g: &MultiGraph, out: &mut String) {
    for v in g.vertex_names() {
        out.push_str(&format!("v {v}\n"));
    }
    for e in g.edges() {
        out.push_str(&format!(
            "e {} {} {}\n",
            e.name,
            g.vertex_name(e.tail),
            g.vertex_name(e.head)
        ));
    }
}

/// Parses an exact coordinate: integer, decimal or `p/q`.
pub fn parse_number(token: &str) -> Option<Rational> {
    let t = token.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.parse().ok()?;
        let q: BigInt = q.parse().ok()?;
        return (!q.is_zero()).then(|| Rational::new(p, q));
    }
    let (neg, digits) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mantissa: BigInt = format!("{int}{frac}").parse().ok()?;
    let value = Rational::new(mantissa, BigInt::from(10).pow(frac.len() as u32));
    Some(if neg { -value } else { value })
}

/// Exact decimal when the reduced denominator is 2^a·5^b, else `p/q`.
pub fn format_number(r: &Rational) -> String {
    let (numer, denom) = (r.numer(), r.denom());
    if denom.is_one() {
        return numer.to_string();
    }
    let (two, five, ten) = (BigInt::from(2), BigInt::from(5), BigInt::from(10));
    let (mut d, mut a, mut b) = (denom.clone(), 0u32, 0u32);
    while d.is_even() {
        d /= &two;
        a += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        b += 1;
    }
    if !d.is_one() {
        return format!("{numer}/{denom}");
    }
    let places = a.max(b);
    let scaled = numer.abs() * ten.pow(places) / denom;
    let digits = format!(
        "{:0>width$}",
        scaled.to_string(),
        width = places as usize + 1
    );
    let (int, frac) = digits.split_at(digits.len() - places as usize);
    let sign = if numer.is_negative() { "-" } else { "" };
    format!("{sign}{int}.{frac}")
}

fn format_scalar<T: Scalar>(x: &T) -> String {
    format_number(&x.to_rational())
}

/// Parses an immersion. `@` shorthands and `inline` graphs are resolved
/// here; other graph references are the caller's business (see
/// [`parse_immersion_with`]).
pub fn parse_immersion<T: Scalar>(text: &str) -> Result<PlaneImmersion<T>, ParseError> {
    parse_immersion_with(text, &mut |_| None)
}

/// Like [`parse_immersion`], with a resolver for `graph <reference>` headers
/// that are neither `@` shorthands nor `inline`.
pub fn parse_immersion_with<T: Scalar>(
    text: &str,
    resolve: &mut dyn FnMut(&str) -> Option<MultiGraph>,
) -> Result<PlaneImmersion<T>, ParseError> {
    Ok(parse_parts(text, resolve)?.0)
}

/// An `over` line: line number, crossing label, chosen strand.
type OverLine = (usize, String, String);

fn parse_parts<T: Scalar>(
    text: &str,
    resolve: &mut dyn FnMut(&str) -> Option<MultiGraph>,
) -> Result<(PlaneImmersion<T>, Vec<OverLine>), ParseError> {
    let mut graph: Option<MultiGraph> = None;
    let mut inline = false;
    let mut positions: HashMap<String, (usize, Point<T>)> = HashMap::new();
    let mut lines_by_edge: HashMap<String, (usize, Vec<Point<T>>)> = HashMap::new();
    let mut overs: Vec<OverLine> = Vec::new();
    let coordinate = |line: usize, tok: &str| -> Result<T, ParseError> {
        parse_number(tok)
            .map(|r| T::from_rational(&r))
            .ok_or_else(|| syntax(line, format!("bad coordinate `{tok}`")))
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let c = content(raw);
        if c.is_empty() {
            continue;
        }
        let (keyword, rest) = c.split_once(char::is_whitespace).unwrap_or((c, ""));
        let rest = rest.trim();
        match keyword {
            "graph" => {
                if graph.is_some() {
                    return Err(syntax(line, "second graph header"));
                }
                if rest == "inline" {
                    inline = true;
                    graph = Some(MultiGraph::empty());
                } else if rest.starts_with('@') {
                    graph = Some(parse_shorthand(rest).map_err(|m| syntax(line, m))?.build());
                } else if rest.is_empty() {
                    return Err(syntax(line, "expected `graph <@name|inline|reference>`"));
                } else {
                    graph = Some(resolve(rest).ok_or(ParseError::Unknown {
                        line,
                        what: "graph",
                        token: rest.into(),
                    })?);
                }
            }
            "v" | "e" => {
                let g = match (&mut graph, inline) {
                    (Some(g), true) => g,
                    _ => return Err(syntax(line, "`v`/`e` lines need `graph inline`")),
                };
                graph_line(g, line, c)?;
            }
            "pos" => {
                let fields: Vec<&str> = rest.split_whitespace().collect();
                let [name, x, y] = fields[..] else {
                    return Err(syntax(line, "expected `pos <vertex> <x> <y>`"));
                };
                let p = Point::new(coordinate(line, x)?, coordinate(line, y)?);
                if positions.insert(name.to_string(), (line, p)).is_some() {
                    return Err(ParseError::Duplicate {
                        line,
                        what: "position for",
                        token: name.into(),
                    });
                }
            }
            "edge" => {
                let (name, pts) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(line, "expected `edge <name>: x y ; ...`"))?;
                let name = name.trim();
                let mut polyline = Vec::new();
                for chunk in pts.split(';') {
                    let xy: Vec<&str> = chunk.split_whitespace().collect();
                    match xy[..] {
                        [] if pts.trim().is_empty() => {}
                        [x, y] => {
                            polyline.push(Point::new(coordinate(line, x)?, coordinate(line, y)?))
                        }
                        _ => return Err(syntax(line, format!("bad point `{}`", chunk.trim()))),
                    }
                }
                if polyline.len() < 2 {
                    return Err(syntax(
                        line,
                        format!("edge `{name}` needs at least two points"),
                    ));
                }
                if lines_by_edge
                    .insert(name.to_string(), (line, polyline))
                    .is_some()
                {
                    return Err(ParseError::Duplicate {
                        line,
                        what: "polyline for",
                        token: name.into(),
                    });
                }
            }
            "over" => {
                let fields: Vec<&str> = rest.split_whitespace().collect();
                let [id, which] = fields[..] else {
                    return Err(syntax(
                        line,
                        "expected `over <crossing-id> <edge|first|second>`",
                    ));
                };
                overs.push((line, id.to_string(), which.to_string()));
            }
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }

    let g = graph.ok_or(ParseError::MissingGraph)?;
    for (name, (line, _)) in &positions {
        if g.vertex_by_name(name).is_none() {
            return Err(ParseError::Unknown {
                line: *line,
                what: "vertex",
                token: name.clone(),
            });
        }
    }
    for (name, (line, _)) in &lines_by_edge {
        if g.edge_by_name(name).is_none() {
            return Err(ParseError::Unknown {
                line: *line,
                what: "edge",
                token: name.clone(),
            });
        }
    }
    let mut pos = Vec::with_capacity(g.vertex_count());
    for v in g.vertex_ids() {
        let name = g.vertex_name(v);
        let (_, p) = positions
            .remove(name)
            .ok_or_else(|| ParseError::MissingPosition(name.into()))?;
        pos.push(p);
    }
    // An edge without a polyline is drawn straight.
    let polylines = g
        .edge_ids()
        .map(|e| match lines_by_edge.remove(g.edge_name(e)) {
            Some((_, l)) => l,
            None => {
                let (t, h) = g.endpoints(e);
                vec![pos[t.0].clone(), pos[h.0].clone()]
            }
        })
        .collect();
    Ok((PlaneImmersion::new(g, pos, polylines)?, overs))
}

pub fn serialize_immersion<T: Scalar>(imm: &PlaneImmersion<T>) -> String {
    let g = imm.graph();
    let mut out = String::new();
    match g.family() {
        Some(family) => out.push_str(&format!("graph {family}\n")),
        None => {
            out.push_str("graph inline\n");
            write_graph_body(g, &mut out);
        }
    }
    for v in g.vertex_ids() {
        let p = imm.position(v);
        out.push_str(&format!(
            "pos {} {} {}\n",
            g.vertex_name(v),
            format_scalar(&p.x),
            format_scalar(&p.y)
        ));
    }
    for e in g.edge_ids() {
        let pts: Vec<String> = imm
            .polyline(e)
            .iter()
            .map(|p| format!("{} {}", format_scalar(&p.x), format_scalar(&p.y)))
            .collect();
        out.push_str(&format!("edge {}: {}\n", g.edge_name(e), pts.join(" ; ")));
    }
    out
}

pub fn parse_diagram<T: Scalar>(text: &str) -> Result<Diagram<T>, ParseError> {
    parse_diagram_with(text, &mut |_| None)
}

pub fn parse_diagram_with<T: Scalar>(
    text: &str,
    resolve: &mut dyn FnMut(&str) -> Option<MultiGraph>,
) -> Result<Diagram<T>, ParseError> {
    let (imm, overs) = parse_parts::<T>(text, resolve)?;
    let crossings = imm.crossings()?;
    let g = imm.graph();
    let mut choice: Vec<Option<bool>> = vec![None; crossings.len()];
    for (line, id, which) in overs {
        let Some(i) = crossings.iter().position(|c| c.id.label(g) == id) else {
            return Err(ParseError::Unknown {
                line,
                what: "crossing",
                token: id,
            });
        };
        let c = &crossings[i];
        let first_over = match which.as_str() {
            "first" => true,
            "second" => false,
            name if c.kind != CrossingKind::SelfCrossing
                && g.edge_by_name(name) == Some(c.id.first) =>
            {
                true
            }
            name if c.kind != CrossingKind::SelfCrossing
                && g.edge_by_name(name) == Some(c.id.second) =>
            {
                false
            }
            other => {
                return Err(ParseError::Unknown {
                    line,
                    what: "strand",
                    token: other.into(),
                })
            }
        };
        if choice[i].replace(first_over).is_some() {
            return Err(ParseError::Duplicate {
                line,
                what: "over line for",
                token: id,
            });
        }
    }
    let first_over = choice
        .iter()
        .zip(crossings)
        .map(|(c, x)| c.ok_or_else(|| ParseError::UncoveredCrossing(x.id.label(g))))
        .collect::<Result<Vec<bool>, _>>()?;
    Ok(Diagram::new(imm, first_over)?)
}

pub fn serialize_diagram<T: Scalar>(d: &Diagram<T>) -> String {
    let mut out = serialize_immersion(d.immersion());
    let g = d.immersion().graph();
    for (c, &first) in d.crossings().iter().zip(d.first_over()) {
        let which = match (c.kind, first) {
            (CrossingKind::SelfCrossing, true) => "first",
            (CrossingKind::SelfCrossing, false) => "second",
            (_, true) => g.edge_name(c.id.first),
            (_, false) => g.edge_name(c.id.second),
        };
        out.push_str(&format!("over {} {which}\n", c.id.label(g)));
    }
    out
}

/// Name of the over strand, for reports.
pub fn over_label<T: Scalar>(d: &Diagram<T>, index: usize) -> String {
    let c = &d.crossings()[index];
    let g = d.immersion().graph();
    let e: EdgeId = if d.first_over()[index] {
        c.id.first
    } else {
        c.id.second
    };
    if c.kind == CrossingKind::SelfCrossing {
        (if d.first_over()[index] {
            "first"
        } else {
            "second"
        })
        .to_string()
    } else {
        g.edge_name(e).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn numbers_round_trip() {
        for (text, value) in [
            ("3", q(3, 1)),
            ("-1.25", q(-5, 4)),
            ("0.5", q(1, 2)),
            ("-0.04", q(-1, 25)),
            ("1/3", q(1, 3)),
        ] {
            let parsed = parse_number(text).unwrap();
            assert_eq!(parsed, value, "{text}");
            assert_eq!(format_number(&parsed), text);
        }
        assert_eq!(parse_number("2.50").unwrap(), q(5, 2));
        assert_eq!(format_number(&q(5, 2)), "2.5");
        assert_eq!(format_number(&q(-2, 6)), "-1/3");
        assert_eq!(parse_number(".5"), Some(q(1, 2)));
        for bad in ["", "-", "1e3", "x", "1/0", "1.2.3"] {
            assert_eq!(parse_number(bad), None, "{bad}");
        }
    }

    #[test]
    fn shorthands() {
        assert_eq!(parse_shorthand("@PG").unwrap(), NamedGraph::Petersen);
        assert_eq!(parse_shorthand("@K 4").unwrap(), NamedGraph::Complete(4));
        assert_eq!(parse_shorthand("@K4").unwrap(), NamedGraph::Complete(4));
        assert_eq!(
            parse_shorthand("@K 3 3").unwrap(),
            NamedGraph::CompleteBipartite(3, 3)
        );
        assert_eq!(
            parse_shorthand("@K33").unwrap(),
            NamedGraph::CompleteBipartite(3, 3)
        );
        assert_eq!(
            parse_shorthand("@K3,3").unwrap(),
            NamedGraph::CompleteBipartite(3, 3)
        );
        assert_eq!(
            parse_shorthand("@T3").unwrap(),
            NamedGraph::MultipleTriangle(3)
        );
        assert_eq!(parse_shorthand("@theta 5").unwrap(), NamedGraph::Theta(5));
        assert!(parse_shorthand("@X").is_err());
        assert!(parse_shorthand("PG").is_err());
    }

    #[test]
    fn graph_files() {
        let g = parse_graph("# path\nv a\nv b\nv c\ne ab a b # first\ne bc b c\n").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 2));
        assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
        let pg = parse_graph("@PG\n").unwrap();
        assert_eq!((pg.vertex_count(), pg.edge_count()), (10, 15));
        assert_eq!(serialize_graph(&pg), "@PG\n");
        match parse_graph("v a\ne ab a b\n") {
            Err(ParseError::Graph { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_graph("v a\nx\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
    }

    const SQUARE: &str = "graph @K 4\npos x1 0 0\npos x2 4 0\npos x3 4 4\npos x4 0 4\nedge x1x2: 0 0 ; 2 -0.5 ; 4 0\n";

    #[test]
    fn immersion_round_trip() {
        let imm: PlaneImmersion = parse_immersion(SQUARE).unwrap();
        assert!(imm.validate().ok);
        let text = serialize_immersion(&imm);
        assert!(text.contains("edge x1x2: 0 0 ; 2 -0.5 ; 4 0\n"));
        assert!(text.contains("edge x3x4: 4 4 ; 0 4\n"));
        let again: PlaneImmersion = parse_immersion(&text).unwrap();
        assert_eq!(again, imm);
        assert_eq!(serialize_immersion(&again), text);
    }

    #[test]
    fn immersion_errors() {
        let missing = SQUARE.replace("pos x4 0 4\n", "");
        assert_eq!(
            parse_immersion::<Rational>(&missing),
            Err(ParseError::MissingPosition("x4".into()))
        );
        let empty = format!("{SQUARE}edge x1x3:\n");
        assert!(matches!(
            parse_immersion::<Rational>(&empty),
            Err(ParseError::Syntax { line: 7, .. })
        ));
        let bad = SQUARE.replace("pos x2 4 0", "pos x2 4 zero");
        assert!(matches!(
            parse_immersion::<Rational>(&bad),
            Err(ParseError::Syntax { line: 3, .. })
        ));
        let unknown = format!("{SQUARE}pos y 1 1\n");
        assert!(matches!(
            parse_immersion::<Rational>(&unknown),
            Err(ParseError::Unknown { what: "vertex", .. })
        ));
        assert_eq!(
            parse_immersion::<Rational>("pos a 0 0\n"),
            Err(ParseError::MissingGraph)
        );
    }

    #[test]
    fn inline_graphs() {
        let text =
            "graph inline\nv a\nv b\ne ab a b\npos a 0 0\npos b 1/3 1\nedge ab: 0 0 ; 1/3 1\n";
        let imm: PlaneImmersion = parse_immersion(text).unwrap();
        assert_eq!(serialize_immersion(&imm), text);
    }

    #[test]
    fn diagrams() {
        let text = format!("{SQUARE}over x1x3~x2x4#1 x2x4\n");
        let d: Diagram = parse_diagram(&text).unwrap();
        assert_eq!(d.first_over(), &[false]);
        assert_eq!(over_label(&d, 0), "x2x4");
        let out = serialize_diagram(&d);
        assert_eq!(parse_diagram::<Rational>(&out).unwrap(), d);
        assert_eq!(
            parse_diagram::<Rational>(SQUARE),
            Err(ParseError::UncoveredCrossing("x1x3~x2x4#1".into()))
        );
        let wrong = format!("{SQUARE}over x1x3~x2x4#2 first\n");
        assert!(matches!(
            parse_diagram::<Rational>(&wrong),
            Err(ParseError::Unknown {
                what: "crossing",
                ..
            })
        ));
        let twice = format!("{SQUARE}over x1x3~x2x4#1 first\nover x1x3~x2x4#1 first\n");
        assert!(matches!(
            parse_diagram::<Rational>(&twice),
            Err(ParseError::Duplicate { .. })
        ));
    }
}
