//! Deterministic SVG 1.1 output for chord diagrams and drawings.
//!
//! Coordinates are printed with [`SVG_DECIMALS`] fractional digits; rational
//! drawing coordinates are converted to floating point only here.

use std::f64::consts::{PI, TAU};
use std::fmt::Write;

use crate::gauss::{chord_diagram, gauss_chord_diagram, ChordDiagram, DoubleOccurrenceWord, GaussWord};
use crate::geometry::{bounding_box, Drawing};

/// Fractional digits of every number written to an SVG document.
pub const SVG_DECIMALS: usize = 3;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

fn num(x: f64) -> String {
    let s = format!("{x:.SVG_DECIMALS$}");
    // Avoid "-0.000", which would make output depend on rounding direction.
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn header(out: &mut String, width: u32, height: u32, title: &str) {
    let _ = writeln!(out, r##"<?xml version="1.0" encoding="UTF-8"?>"##);
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"##
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, r##"<rect width="{width}" height="{height}" fill="white"/>"##);
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordStyle {
    /// Width and height in pixels.
    pub size: u32,
    /// Write the symbol label next to every point.
    pub point_labels: bool,
    /// Tick and label the start of every edge run.
    pub run_labels: bool,
}

impl Default for ChordStyle {
    fn default() -> Self {
        ChordStyle {
            size: 640,
            point_labels: false,
            run_labels: true,
        }
    }
}

/// Points go clockwise from the top of the circle in word order.
pub fn render_chord_diagram(diagram: &ChordDiagram, style: &ChordStyle) -> String {
    let size = style.size as f64;
    let centre = size / 2.0;
    let radius = size * 0.38;
    let m = diagram.point_count().max(1) as f64;
    let angle = |k: f64| -PI / 2.0 + TAU * k / m;
    let at = |k: f64, r: f64| (centre + r * angle(k).cos(), centre + r * angle(k).sin());

    let mut out = String::new();
    header(&mut out, style.size, style.size, "chord diagram");
    let _ = writeln!(
        out,
        r##"<circle class="rim" cx="{c}" cy="{c}" r="{r}" fill="none" stroke="#999999" stroke-width="1"/>"##,
        c = num(centre),
        r = num(radius)
    );
    let _ = writeln!(out, r##"<g class="chords" stroke="#1f3b73" stroke-width="1" stroke-opacity="0.8">"##);
    for &(a, b) in diagram.chords() {
        let (x1, y1) = at(a as f64, radius);
        let (x2, y2) = at(b as f64, radius);
        let _ = writeln!(
            out,
            r##"<line class="chord" x1="{}" y1="{}" x2="{}" y2="{}"/>"##,
            num(x1),
            num(y1),
            num(x2),
            num(y2)
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r##"<g class="points" fill="black">"##);
    for k in 0..diagram.point_count() {
        let (x, y) = at(k as f64, radius);
        let _ = writeln!(out, r##"<circle class="point" cx="{}" cy="{}" r="2"/>"##, num(x), num(y));
    }
    let _ = writeln!(out, "</g>");
    if style.point_labels {
        let _ = writeln!(out, r##"<g class="point-labels" font-family="sans-serif" font-size="8" text-anchor="middle">"##);
        for (k, label) in diagram.labels().iter().enumerate() {
            let (x, y) = at(k as f64, radius + 10.0);
            let _ = writeln!(out, r##"<text x="{}" y="{}">{}</text>"##, num(x), num(y + 3.0), escape(label));
        }
        let _ = writeln!(out, "</g>");
    }
    if style.run_labels && !diagram.boundaries().is_empty() {
        let _ = writeln!(out, r##"<g class="runs" stroke="#cc3311" stroke-width="1.5" font-family="sans-serif" font-size="11" text-anchor="middle">"##);
        for (run, &b) in diagram.boundaries().iter().enumerate() {
            let k = b as f64 - 0.5;
            let (x1, y1) = at(k, radius - 6.0);
            let (x2, y2) = at(k, radius + 14.0);
            let (tx, ty) = at(k, radius + 26.0);
            let _ = writeln!(
                out,
                r##"<line class="tick" x1="{}" y1="{}" x2="{}" y2="{}"/>"##,
                num(x1),
                num(y1),
                num(x2),
                num(y2)
            );
            let _ = writeln!(
                out,
                r##"<text class="run-label" x="{}" y="{}" stroke="none" fill="#cc3311">e{}</text>"##,
                num(tx),
                num(ty + 4.0),
                run + 1
            );
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</svg>");
    out
}

/// Chord diagram of a polygon's Gauss word with edge runs marked.
pub fn render_chords(word: &GaussWord, style: &ChordStyle) -> String {
    render_chord_diagram(&gauss_chord_diagram(word), style)
}

pub fn render_word_chords(word: &DoubleOccurrenceWord, style: &ChordStyle) -> String {
    render_chord_diagram(&chord_diagram(word), style)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrawingStyle {
    /// Width and height in pixels.
    pub size: u32,
    pub vertex_labels: bool,
    /// Give each edge its own colour.
    pub colour_edges: bool,
}

impl Default for DrawingStyle {
    fn default() -> Self {
        DrawingStyle {
            size: 640,
            vertex_labels: true,
            colour_edges: true,
        }
    }
}

pub fn render_drawing(d: &Drawing, style: &DrawingStyle) -> String {
    let size = style.size as f64;
    let margin = 28.0;
    let (x0, y0, x1, y1) = bounding_box(d);
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let scale = (size - 2.0 * margin) / span;
    let ox = margin + ((size - 2.0 * margin) - (x1 - x0) * scale) / 2.0;
    let oy = margin + ((size - 2.0 * margin) - (y1 - y0) * scale) / 2.0;
    // SVG y grows downward.
    let map = |(x, y): (f64, f64)| (ox + (x - x0) * scale, oy + (y1 - y) * scale);

    let mut out = String::new();
    header(&mut out, style.size, style.size, &format!("{}-gon drawing", d.n()));
    let _ = writeln!(out, r##"<g class="edges" fill="none" stroke-width="1.5" stroke-linejoin="round">"##);
    for (i, edge) in d.edges().iter().enumerate() {
        let points: Vec<String> = edge
            .iter()
            .map(|p| {
                let (x, y) = map(p.to_f64());
                format!("{},{}", num(x), num(y))
            })
            .collect();
        let colour = if style.colour_edges { PALETTE[i % PALETTE.len()] } else { "#1f3b73" };
        let _ = writeln!(
            out,
            r##"<polyline class="edge" data-edge="{}" stroke="{colour}" points="{}"/>"##,
            i + 1,
            points.join(" ")
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r##"<g class="vertices" fill="black" font-family="sans-serif" font-size="12">"##);
    for (i, v) in d.vertices().iter().enumerate() {
        let (x, y) = map(v.to_f64());
        let _ = writeln!(out, r##"<circle class="vertex" cx="{}" cy="{}" r="3"/>"##, num(x), num(y));
        if style.vertex_labels {
            let _ = writeln!(out, r##"<text x="{}" y="{}">v{}</text>"##, num(x + 5.0), num(y - 5.0), i + 1);
        }
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}
