//! Static SVG emission: Friedman rank bar charts and projected-front
//! scatter plots. Pure string construction, byte-identical on repeat.

use std::fmt::Write;

const FONT: &str = "font-family=\"monospace\" font-size=\"12\"";

/// Horizontal bar chart of average ranks (lower is better).
pub fn rank_bar_chart(title: &str, entries: &[(String, f64)], k: usize) -> String {
    let width = 640.0f64;
    let bar_height = 26.0;
    let label_width = 170.0;
    let top = 40.0;
    let height = top + entries.len() as f64 * (bar_height + 8.0) + 20.0;
    let span = (width - label_width - 80.0).max(1.0);
    let max_rank = k as f64;

    let mut svg = svg_open(width, height);
    let _ = writeln!(
        svg,
        "  <text x=\"12\" y=\"22\" {FONT} font-weight=\"bold\">{}</text>",
        escape(title)
    );
    for (row, (name, rank)) in entries.iter().enumerate() {
        let y = top + row as f64 * (bar_height + 8.0);
        let w = span * rank / max_rank;
        let _ = writeln!(
            svg,
            "  <text x=\"12\" y=\"{:.1}\" {FONT}>{}</text>",
            y + bar_height / 2.0 + 4.0,
            escape(name)
        );
        let _ = writeln!(
            svg,
            "  <rect x=\"{label_width:.1}\" y=\"{y:.1}\" width=\"{w:.2}\" height=\"{bar_height:.1}\" fill=\"#4878a8\"/>"
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{:.2}\" y=\"{:.1}\" {FONT}>{rank:.3}</text>",
            label_width + w + 8.0,
            y + bar_height / 2.0 + 4.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// One scatter panel per front; panels share the drawing style of the
/// normalized projected-front illustrations.
pub struct ScatterPanel {
    pub title: String,
    /// 2-D points, already in plotting space.
    pub points: Vec<(f64, f64)>,
    pub x_label: String,
    pub y_label: String,
}

pub fn front_scatter(panels: &[ScatterPanel]) -> String {
    let panel_size = 300.0;
    let margin = 48.0;
    let width = margin + panels.len() as f64 * (panel_size + margin);
    let height = panel_size + 2.0 * margin;
    let mut svg = svg_open(width, height);

    for (index, panel) in panels.iter().enumerate() {
        let x0 = margin + index as f64 * (panel_size + margin);
        let y0 = margin;
        // Axis box.
        let _ = writeln!(
            svg,
            "  <rect x=\"{x0:.1}\" y=\"{y0:.1}\" width=\"{panel_size:.1}\" height=\"{panel_size:.1}\" fill=\"none\" stroke=\"#333333\"/>"
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{:.1}\" y=\"{:.1}\" {FONT} font-weight=\"bold\">{}</text>",
            x0,
            y0 - 12.0,
            escape(&panel.title)
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{:.1}\" y=\"{:.1}\" {FONT}>{}</text>",
            x0 + panel_size / 2.0 - 12.0,
            y0 + panel_size + 28.0,
            escape(&panel.x_label)
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{:.1}\" y=\"{:.1}\" {FONT} transform=\"rotate(-90 {:.1} {:.1})\">{}</text>",
            x0 - 16.0,
            y0 + panel_size / 2.0,
            x0 - 16.0,
            y0 + panel_size / 2.0,
            escape(&panel.y_label)
        );

        let (lo_x, hi_x) = padded_range(panel.points.iter().map(|p| p.0));
        let (lo_y, hi_y) = padded_range(panel.points.iter().map(|p| p.1));
        for &(px, py) in &panel.points {
            let sx = x0 + (px - lo_x) / (hi_x - lo_x) * panel_size;
            // SVG y grows downward.
            let sy = y0 + panel_size - (py - lo_y) / (hi_y - lo_y) * panel_size;
            let _ = writeln!(
                svg,
                "  <circle cx=\"{sx:.2}\" cy=\"{sy:.2}\" r=\"2\" fill=\"#b03030\"/>"
            );
        }
        let _ = writeln!(
            svg,
            "  <text x=\"{x0:.1}\" y=\"{:.1}\" {FONT}>{:.2}..{:.2}</text>",
            y0 + panel_size + 14.0,
            lo_x,
            hi_x
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    let pad = ((hi - lo) * 0.05).max(0.05);
    (lo - pad, hi + pad)
}

fn svg_open(width: f64, height: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">\n  <rect width=\"{width:.0}\" height=\"{height:.0}\" fill=\"white\"/>\n"
    )
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charts_are_deterministic() {
        let entries = vec![("rvea-retain".to_string(), 1.4), ("rvea-inherit".to_string(), 2.6)];
        let a = rank_bar_chart("Setting I, tau_t = 25", &entries, 4);
        let b = rank_bar_chart("Setting I, tau_t = 25", &entries, 4);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.contains("rvea-retain"));
    }

    #[test]
    fn scatter_handles_single_point() {
        let panel = ScatterPanel {
            title: "dtlz1 f1-f2".into(),
            points: vec![(0.0, 0.0)],
            x_label: "f1".into(),
            y_label: "f2".into(),
        };
        let svg = front_scatter(&[panel]);
        assert!(svg.contains("circle"));
        assert!(svg.ends_with("</svg>\n"));
    }
}
