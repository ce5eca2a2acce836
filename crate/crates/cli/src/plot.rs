//! Minimal SVG line chart of a rewiring trace: normalized gap and triangle
//! count (as a fraction of its initial value) against iterations.

use std::fmt::Write as _;

use rewire_core::rewiring::TraceRecord;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 48.0;

fn polyline(points: &[(f64, f64)], color: &str) -> String {
    let coords: Vec<String> = points
        .iter()
        .map(|(x, y)| format!("{x:.1},{y:.1}"))
        .collect();
    format!(
        r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
        coords.join(" ")
    )
}

pub fn trace_svg(records: &[TraceRecord], title: &str) -> String {
    let last_iter = records.last().map_or(1, |r| r.iteration).max(1) as f64;
    let top_gap = records
        .iter()
        .map(|r| r.normalized_gap)
        .fold(1e-12, f64::max);
    let first_tri = records.first().map_or(0, |r| r.triangles).max(1) as f64;
    let top_tri = records
        .iter()
        .map(|r| r.triangles as f64 / first_tri)
        .fold(1.0, f64::max);
    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = HEIGHT - 2.0 * MARGIN;
    let px = |it: usize| MARGIN + plot_w * it as f64 / last_iter;
    let py = |frac: f64| HEIGHT - MARGIN - plot_h * frac;
    let gap: Vec<(f64, f64)> = records
        .iter()
        .map(|r| (px(r.iteration), py(r.normalized_gap / top_gap)))
        .collect();
    let tri: Vec<(f64, f64)> = records
        .iter()
        .map(|r| {
            (
                px(r.iteration),
                py(r.triangles as f64 / first_tri / top_tri),
            )
        })
        .collect();

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        svg,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="{MARGIN}" y="{}">{}</text>"#,
        MARGIN - 20.0,
        escape(title)
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="{MARGIN}" y="{}">iterations 0 .. {last_iter}</text>"#,
        HEIGHT - 16.0
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="{}" y="{}" fill="steelblue">normalized gap (max {:.3})</text>"#,
        MARGIN + 8.0,
        MARGIN + 16.0,
        top_gap
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="{}" y="{}" fill="darkorange">triangles / initial (max {:.3})</text>"#,
        MARGIN + 8.0,
        MARGIN + 32.0,
        top_tri
    )
    .unwrap();
    writeln!(svg, "{}", polyline(&gap, "steelblue")).unwrap();
    writeln!(svg, "{}", polyline(&tri, "darkorange")).unwrap();
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
