//! SVG 1.1 rendering: one `<polyline>` per edge, one marker per crossing,
//! vertices as disks. Diagrams additionally get a gap in each under-strand.

use std::fmt::Write as _;

use crate::diagram::Diagram;
use crate::immersion::{PlaneImmersion, Strand};
use crate::scalar::Scalar;

const CANVAS: f64 = 600.0;
const MARGIN: f64 = 30.0;

struct Frame {
    min: (f64, f64),
    scale: f64,
    height: f64,
}

impl Frame {
    fn fit<T: Scalar>(imm: &PlaneImmersion<T>) -> Frame {
        let pts: Vec<(f64, f64)> = imm
            .polylines()
            .iter()
            .flatten()
            .chain(imm.positions())
            .map(|p| p.to_f64())
            .collect();
        let (mut lo, mut hi) = (
            (f64::INFINITY, f64::INFINITY),
            (f64::NEG_INFINITY, f64::NEG_INFINITY),
        );
        for &(x, y) in &pts {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        if pts.is_empty() {
            lo = (0.0, 0.0);
            hi = (1.0, 1.0);
        }
        let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
        let scale = (CANVAS - 2.0 * MARGIN) / span;
        Frame {
            min: lo,
            scale,
            height: (hi.1 - lo.1) * scale + 2.0 * MARGIN,
        }
    }

    /// Plane y points up; SVG y points down.
    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (
            MARGIN + (x - self.min.0) * self.scale,
            self.height - MARGIN - (y - self.min.1) * self.scale,
        )
    }
}

fn direction<T: Scalar>(imm: &PlaneImmersion<T>, s: &Strand<T>) -> (f64, f64) {
    let line = imm.polyline(s.edge);
    let (a, b) = (line[s.segment].to_f64(), line[s.segment + 1].to_f64());
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let n = (dx * dx + dy * dy).sqrt().max(1e-12);
    (dx / n, dy / n)
}

fn render<T: Scalar>(imm: &PlaneImmersion<T>, first_over: Option<&[bool]>) -> String {
    let frame = Frame::fit(imm);
    let g = imm.graph();
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS:.0}" height="{:.0}" viewBox="0 0 {CANVAS:.0} {:.0}">"#,
        frame.height, frame.height
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for e in g.edge_ids() {
        let points: Vec<String> = imm
            .polyline(e)
            .iter()
            .map(|p| {
                let (x, y) = frame.map(p.to_f64());
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline class="edge" id="edge-{}" points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
            xml_escape(g.edge_name(e)),
            points.join(" ")
        );
    }
    let crossings = imm.crossings().unwrap_or(&[]);
    if let Some(over) = first_over {
        // White out a short stretch of the under-strand, then restore the over-strand.
        let gap = 6.0;
        for (c, &first_over) in crossings.iter().zip(over) {
            let (under, top) = if first_over {
                (&c.second, &c.first)
            } else {
                (&c.first, &c.second)
            };
            let (cx, cy) = frame.map(c.point.to_f64());
            for (strand, stroke, width) in [(under, "white", 5.0), (top, "black", 1.5)] {
                let (dx, dy) = direction(imm, strand);
                let _ = writeln!(
                    out,
                    r#"<line class="gap" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{stroke}" stroke-width="{width}"/>"#,
                    cx - gap * dx,
                    cy + gap * dy,
                    cx + gap * dx,
                    cy - gap * dy
                );
            }
        }
    }
    for c in crossings {
        let (x, y) = frame.map(c.point.to_f64());
        let _ = writeln!(
            out,
            r#"<circle class="crossing" data-label="{}" cx="{x:.2}" cy="{y:.2}" r="2.5" fill="none" stroke="red"/>"#,
            xml_escape(&c.id.label(g))
        );
    }
    for v in g.vertex_ids() {
        let (x, y) = frame.map(imm.position(v).to_f64());
        let _ = writeln!(
            out,
            r#"<circle class="vertex" cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" font-family="sans-serif">{}</text>"#,
            x + 6.0,
            y - 6.0,
            xml_escape(g.vertex_name(v))
        );
    }
    out.push_str("</svg>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn immersion_svg<T: Scalar>(imm: &PlaneImmersion<T>) -> String {
    render(imm, None)
}

pub fn diagram_svg<T: Scalar>(d: &Diagram<T>) -> String {
    render(d.immersion(), Some(d.first_over()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::StandardFigure;

    #[test]
    fn one_polyline_per_edge_and_one_marker_per_crossing() {
        let imm = StandardFigure::HeawoodChords.load().unwrap();
        let svg = immersion_svg(&imm);
        assert_eq!(svg.matches("<polyline").count(), 21);
        assert_eq!(svg.matches(r#"class="crossing""#).count(), 14);
        assert_eq!(svg.matches(r#"class="vertex""#).count(), 14);
    }

    #[test]
    fn diagrams_add_gaps_only() {
        let imm = StandardFigure::PetersenStar.load().unwrap();
        let d = Diagram::random_lift(imm, 3).unwrap();
        let svg = diagram_svg(&d);
        assert_eq!(svg.matches("<polyline").count(), 15);
        assert_eq!(svg.matches(r#"class="gap""#).count(), 10);
    }
}
