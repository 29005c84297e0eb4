//! Text and SVG renderings.

use std::fmt::Write;

use seriesfact::corpus::CaseOutcome;
use seriesfact::{NewtonPolygon, Valuation};

pub fn polygon_text(np: &NewtonPolygon, valuation: &Valuation) -> String {
    let mut out = String::new();
    let vertices: Vec<String> = np.vertices.iter().map(|p| format!("({}, {})", p.i, p.v)).collect();
    writeln!(out, "valuation: {valuation}").unwrap();
    writeln!(out, "window: {}", np.window).unwrap();
    writeln!(out, "vertices: {}", vertices.join(" ")).unwrap();
    for e in &np.edges {
        writeln!(
            out,
            "edge: ({}, {}) -> ({}, {}) slope {} length {}",
            e.from.i, e.from.v, e.to.i, e.to.v, e.slope.0, e.hlen
        )
        .unwrap();
    }
    writeln!(out, "censored: {}", np.censored).unwrap();
    out
}

/// A static plot: coefficient points as dots, the polygon as a polyline.
/// A censored polygon gets a dashed continuation to the window edge.
pub fn svg(np: &NewtonPolygon) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const MARGIN: f64 = 40.0;
    let points = np.points();
    let max_i = points.iter().map(|p| p.i).chain([np.window, 1]).max().unwrap() as f64;
    let max_v = points.iter().map(|p| p.v).chain([1]).max().unwrap() as f64;
    let x = |i: u64| MARGIN + i as f64 * (W - 2.0 * MARGIN) / max_i;
    let y = |v: u64| H - MARGIN - v as f64 * (H - 2.0 * MARGIN) / max_v;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"<path d="M {x0} {y0} H {x1} M {x0} {y0} V {y1}" stroke="black" fill="none"/>"#,
        x0 = x(0),
        y0 = y(0),
        x1 = x(max_i as u64),
        y1 = y(max_v as u64)
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="end">i</text>"#,
        x(max_i as u64),
        y(0) + 16.0
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="{}">v(a_i)</text>"#,
        x(0) + 4.0,
        y(max_v as u64) - 8.0
    )
    .unwrap();
    for p in points {
        writeln!(
            out,
            r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="steelblue"/>"#,
            x(p.i),
            y(p.v)
        )
        .unwrap();
    }
    if !np.vertices.is_empty() {
        let path: Vec<String> = np
            .vertices
            .iter()
            .map(|p| format!("{:.1},{:.1}", x(p.i), y(p.v)))
            .collect();
        writeln!(
            out,
            r#"<polyline points="{}" stroke="crimson" stroke-width="2" fill="none"/>"#,
            path.join(" ")
        )
        .unwrap();
        for e in &np.edges {
            writeln!(
                out,
                r#"<text x="{:.1}" y="{:.1}" fill="crimson">{}</text>"#,
                (x(e.from.i) + x(e.to.i)) / 2.0 + 4.0,
                (y(e.from.v) + y(e.to.v)) / 2.0 - 4.0,
                e.slope.0
            )
            .unwrap();
        }
        if np.censored {
            let last = np.vertices.last().unwrap();
            writeln!(
                out,
                r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="crimson" stroke-dasharray="6 4"/>"#,
                x(last.i),
                y(last.v),
                x(np.window),
                y(last.v)
            )
            .unwrap();
        }
    }
    writeln!(
        out,
        r#"<text x="{W}" y="16" text-anchor="end" dx="-8">window {}{}</text>"#,
        np.window,
        if np.censored { ", censored" } else { "" }
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}

pub fn corpus_table(outcomes: &[CaseOutcome]) -> String {
    let expr_w = outcomes.iter().map(|o| o.expr.len()).max().unwrap_or(0).max(10);
    let mut out = String::new();
    writeln!(
        out,
        "{:<10} {:<expr_w$} {:<6} verdict",
        "example", "expression", "result"
    )
    .unwrap();
    for o in outcomes {
        let result = if o.pass { "PASS" } else { "FAIL" };
        writeln!(out, "{:<10} {:<expr_w$} {:<6} {}", o.example, o.expr, result, o.verdict).unwrap();
        for f in &o.failed {
            writeln!(out, "{:<10} {:<expr_w$}        unmet: {f}", "", "").unwrap();
        }
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    writeln!(out, "{} passed, {failed} failed", outcomes.len() - failed).unwrap();
    out
}
