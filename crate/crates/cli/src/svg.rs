//! Static SVG figures for diagrams: every wall is a ray or line through the
//! center of a fixed 640x640 canvas, labeled with its mode and the leading
//! term of its log.  Output is deterministic — identical diagrams give
//! byte-identical documents.

use std::fmt::Write;

use tropex_core::scattering::SupportKind;
use tropex_core::QDiagram;

const SIZE: f64 = 640.0;
const CENTER: f64 = 320.0;
const RADIUS: f64 = 260.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

/// Map a lattice direction to the canvas point at RADIUS from the center.
/// The canvas y axis points down, so the lattice y flips sign.
fn endpoint(direction: &[i64]) -> (f64, f64) {
    let (p, q) = (direction[0] as f64, direction[1] as f64);
    let len = (p * p + q * q).sqrt();
    (CENTER + RADIUS * p / len, CENTER - RADIUS * q / len)
}

pub fn render(diagram: &QDiagram) -> String {
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"  <rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    // Coordinate axes, drawn under the walls.
    let _ = writeln!(
        out,
        r##"  <line x1="0.00" y1="{CENTER}" x2="{SIZE}" y2="{CENTER}" stroke="#dddddd" stroke-width="1"/>"##
    );
    let _ = writeln!(
        out,
        r##"  <line x1="{CENTER}" y1="0.00" x2="{CENTER}" y2="{SIZE}" stroke="#dddddd" stroke-width="1"/>"##
    );
    for (i, wall) in diagram.walls.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let (x, y) = endpoint(&wall.support.direction.0);
        let (x1, y1) = match wall.support.kind {
            SupportKind::Ray => (CENTER, CENTER),
            SupportKind::Line => (2.0 * CENTER - x, 2.0 * CENTER - y),
        };
        let _ = writeln!(
            out,
            r#"  <line x1="{x1:.2}" y1="{y1:.2}" x2="{x:.2}" y2="{y:.2}" stroke="{color}" stroke-width="2"/>"#
        );
        let leading = match wall.log_factor.min_t_order() {
            Some(k) => wall.log_factor.order_part(k).to_string(),
            None => "0".to_string(),
        };
        let label = format!(
            "m=({},{})  {}",
            wall.mode.0[0], wall.mode.0[1], leading
        );
        let (lx, ly) = (CENTER + (x - CENTER) * 0.86 + 4.0, CENTER + (y - CENTER) * 0.86 - 4.0);
        let _ = writeln!(
            out,
            r#"  <text x="{lx:.2}" y="{ly:.2}" font-family="monospace" font-size="10" fill="{color}">{label}</text>"#
        );
    }
    let _ = writeln!(out, r##"  <circle cx="{CENTER}" cy="{CENTER}" r="3" fill="#333333"/>"##);
    out.push_str("</svg>\n");
    out
}
