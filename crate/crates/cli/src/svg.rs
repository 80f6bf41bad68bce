//! Static SVG pictures of geodesics in both half planes.

use std::fmt::Write;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 400.0;
const AXIS: f64 = HEIGHT / 2.0;

/// One oriented geodesic, drawn in the upper half plane and mirrored in the
/// lower one.
pub struct Arc {
    pub repelling: f64,
    pub attracting: f64,
    pub repelling_label: String,
    pub attracting_label: String,
    pub title: String,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render(title: &str, arcs: &[Arc]) -> String {
    let extent = arcs
        .iter()
        .flat_map(|a| [a.repelling.abs(), a.attracting.abs()])
        .fold(1.0f64, f64::max);
    let radius = arcs
        .iter()
        .map(|a| (a.attracting - a.repelling).abs() / 2.0)
        .fold(0.5f64, f64::max);
    let scale = (0.45 * WIDTH / extent).min(0.9 * AXIS / radius);
    let x = |t: f64| WIDTH / 2.0 + t * scale;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(out, "  <title>{}</title>", escape(title));
    out.push_str(concat!(
        "  <defs>\n",
        "    <marker id=\"head\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">\n",
        "      <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#333\"/>\n",
        "    </marker>\n",
        "  </defs>\n",
    ));
    out.push_str("  <rect x=\"0\" y=\"0\" width=\"800\" height=\"400\" fill=\"white\"/>\n");
    let _ = writeln!(out, "  <line x1=\"0\" y1=\"{AXIS}\" x2=\"{WIDTH}\" y2=\"{AXIS}\" stroke=\"#999\" stroke-width=\"1\"/>");
    let mut labels: Vec<(String, String)> = Vec::new();
    for (k, a) in arcs.iter().enumerate() {
        let (x0, x1) = (x(a.repelling), x(a.attracting));
        let r = (x1 - x0).abs() / 2.0;
        let upper = if x0 < x1 { 1 } else { 0 };
        let _ = writeln!(out, "  <g id=\"geodesic-{k}\">");
        let _ = writeln!(out, "    <title>{}</title>", escape(&a.title));
        for (half, sweep) in [("upper", upper), ("lower", 1 - upper)] {
            let _ = writeln!(
                out,
                "    <path class=\"{half}\" d=\"M {x0:.2} {AXIS:.2} A {r:.2} {r:.2} 0 0 {sweep} {x1:.2} {AXIS:.2}\" fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"2\" marker-end=\"url(#head)\"/>"
            );
        }
        out.push_str("  </g>\n");
        for (t, label) in [(x0, &a.repelling_label), (x1, &a.attracting_label)] {
            let key = format!("{t:.2}");
            if !labels.iter().any(|(k, _)| *k == key) {
                labels.push((key, label.clone()));
            }
        }
    }
    for (t, label) in &labels {
        let _ = writeln!(out, "  <circle cx=\"{t}\" cy=\"{AXIS:.2}\" r=\"3\" fill=\"#333\"/>");
        let _ = writeln!(
            out,
            "  <text x=\"{t}\" y=\"{:.2}\" font-family=\"serif\" font-size=\"14\" text-anchor=\"middle\">{}</text>",
            AXIS + 18.0,
            escape(label)
        );
    }
    out.push_str("</svg>\n");
    out
}
