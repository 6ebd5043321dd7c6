//! Minimal hand-rolled SVG line plots: fixed 800x400 viewport, axes,
//! polyline series, shaded spans, and point markers. Good enough to eyeball
//! trajectories without pulling in a plotting stack.

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 45.0;

pub struct Series<'a> {
    pub label: &'a str,
    pub color: &'a str,
    pub x: &'a [f64],
    pub y: &'a [f64],
}

pub struct Marker {
    pub x: f64,
    pub y: f64,
    pub color: String,
}

pub const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

struct Scale {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Scale {
    fn x(&self, v: f64) -> f64 {
        MARGIN + (v - self.x_min) / (self.x_max - self.x_min) * (WIDTH - 2.0 * MARGIN)
    }

    fn y(&self, v: f64) -> f64 {
        HEIGHT - MARGIN - (v - self.y_min) / (self.y_max - self.y_min) * (HEIGHT - 2.0 * MARGIN)
    }
}

/// Render a line plot. `shaded` spans are x-ranges highlighted behind the
/// data (obstacle windows); markers are drawn on top.
pub fn line_plot(
    title: &str,
    series: &[Series<'_>],
    shaded: &[(f64, f64)],
    markers: &[Marker],
) -> String {
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for s in series {
        for &v in s.x {
            x_min = x_min.min(v);
            x_max = x_max.max(v);
        }
        for &v in s.y {
            y_min = y_min.min(v);
            y_max = y_max.max(v);
        }
    }
    if !x_min.is_finite() || x_min == x_max {
        x_min = 0.0;
        x_max = 1.0;
    }
    if !y_min.is_finite() || y_min == y_max {
        y_min -= 0.5;
        y_max += 0.5;
    }
    // Pad the vertical range a little so lines stay off the frame.
    let pad = 0.05 * (y_max - y_min);
    let scale = Scale {
        x_min,
        x_max,
        y_min: y_min - pad,
        y_max: y_max + pad,
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    for &(a, b) in shaded {
        let xa = scale.x(a.max(scale.x_min));
        let xb = scale.x(b.min(scale.x_max));
        svg.push_str(&format!(
            "<rect x=\"{:.2}\" y=\"{MARGIN}\" width=\"{:.2}\" height=\"{:.2}\" \
             fill=\"#fdd\" opacity=\"0.6\"/>\n",
            xa,
            (xb - xa).max(0.0),
            HEIGHT - 2.0 * MARGIN
        ));
    }

    // Axes.
    svg.push_str(&format!(
        "<line x1=\"{MARGIN}\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\" stroke=\"black\"/>\n",
        HEIGHT - MARGIN,
        WIDTH - MARGIN
    ));
    svg.push_str(&format!(
        "<line x1=\"{MARGIN}\" y1=\"{MARGIN}\" x2=\"{MARGIN}\" y2=\"{}\" stroke=\"black\"/>\n",
        HEIGHT - MARGIN
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    ));
    for (anchor, value, x, y) in [
        ("start", scale.x_min, MARGIN, HEIGHT - MARGIN + 16.0),
        ("end", scale.x_max, WIDTH - MARGIN, HEIGHT - MARGIN + 16.0),
    ] {
        svg.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{y:.2}\" text-anchor=\"{anchor}\" font-size=\"10\">{value:.3}</text>\n"
        ));
    }
    for (value, y) in [(scale.y_min, HEIGHT - MARGIN), (scale.y_max, MARGIN)] {
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-size=\"10\">{value:.3}</text>\n",
            MARGIN - 4.0,
            y + 3.0
        ));
    }

    for s in series {
        let mut points = String::new();
        for (xv, yv) in s.x.iter().zip(s.y) {
            points.push_str(&format!("{:.2},{:.2} ", scale.x(*xv), scale.y(*yv)));
        }
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.2\" points=\"{}\"/>\n",
            s.color,
            points.trim_end()
        ));
    }

    for m in markers {
        svg.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3.5\" fill=\"{}\"/>\n",
            scale.x(m.x),
            scale.y(m.y),
            m.color
        ));
    }

    // Legend.
    let mut ly = MARGIN + 6.0;
    for s in series {
        svg.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{ly:.2}\" x2=\"{1}\" y2=\"{ly:.2}\" stroke=\"{2}\" stroke-width=\"2\"/>\n\
             <text x=\"{3}\" y=\"{4:.2}\" font-size=\"11\">{5}</text>\n",
            WIDTH - MARGIN - 130.0,
            WIDTH - MARGIN - 106.0,
            s.color,
            WIDTH - MARGIN - 100.0,
            ly + 3.5,
            escape(s.label)
        ));
        ly += 16.0;
    }

    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
