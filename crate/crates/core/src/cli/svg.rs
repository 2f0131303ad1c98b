//! Deterministic SVG scatter plots of sampled ranges.

use std::fmt::Write;

use num_complex::Complex64;

use crate::geometry::{convex_hull, RangeCloud};

const SIZE: f64 = 640.0;
const MARGIN: f64 = 64.0;
const LEVELS: usize = 12;

/// Blue at the origin to red at the sampling boundary.
fn color(level: usize) -> String {
    let t = level as f64 / (LEVELS - 1) as f64;
    let lerp = |a: f64, b: f64| (a + (b - a) * t).round() as u8;
    format!("#{:02x}{:02x}{:02x}", lerp(44.0, 215.0), lerp(123.0, 25.0), lerp(182.0, 28.0))
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders the cloud values coloured by `|λ|`, with the convex hull drawn on
/// top. The output depends only on the cloud and the strings passed in.
pub fn render_cloud(cloud: &RangeCloud, title: &str, subtitle: &str) -> String {
    let values = cloud.values();
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for v in &values {
        xmin = xmin.min(v.re);
        xmax = xmax.max(v.re);
        ymin = ymin.min(v.im);
        ymax = ymax.max(v.im);
    }
    // equal aspect, square window with 5% padding
    let span = (xmax - xmin).max(ymax - ymin).max(1e-12) * 1.1;
    let (cx, cy) = (0.5 * (xmin + xmax), 0.5 * (ymin + ymax));
    let (x0, y0) = (cx - 0.5 * span, cy - 0.5 * span);
    let plot = SIZE - 2.0 * MARGIN;
    let px = |v: Complex64| (MARGIN + (v.re - x0) / span * plot, SIZE - MARGIN - (v.im - y0) / span * plot);

    let r_max = cloud
        .points
        .iter()
        .map(|p| p.lambda.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut groups: Vec<String> = vec![String::new(); LEVELS];
    for p in &cloud.points {
        let level = ((p.lambda.norm() / r_max) * (LEVELS - 1) as f64).round() as usize;
        let (x, y) = px(p.value);
        let _ = write!(groups[level.min(LEVELS - 1)], "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"1.2\"/>");
    }

    let mut out = String::new();
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    let _ = writeln!(
        out,
        "<text x=\"{:.3}\" y=\"28\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">{}</text>",
        SIZE / 2.0,
        escape(title)
    );
    let _ = writeln!(
        out,
        "<text x=\"{:.3}\" y=\"48\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\" fill=\"#555555\">{}</text>",
        SIZE / 2.0,
        escape(subtitle)
    );
    let _ = writeln!(
        out,
        "<rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{plot}\" height=\"{plot}\" fill=\"none\" stroke=\"#999999\"/>"
    );
    if (x0..=x0 + span).contains(&0.0) {
        let (x, _) = px(Complex64::new(0.0, 0.0));
        let _ = writeln!(
            out,
            "<line x1=\"{x:.3}\" y1=\"{MARGIN}\" x2=\"{x:.3}\" y2=\"{:.3}\" stroke=\"#cccccc\"/>",
            SIZE - MARGIN
        );
    }
    if (y0..=y0 + span).contains(&0.0) {
        let (_, y) = px(Complex64::new(0.0, 0.0));
        let _ = writeln!(
            out,
            "<line x1=\"{MARGIN}\" y1=\"{y:.3}\" x2=\"{:.3}\" y2=\"{y:.3}\" stroke=\"#cccccc\"/>",
            SIZE - MARGIN
        );
    }
    let label = |out: &mut String, x: f64, y: f64, anchor: &str, text: String| {
        let _ = writeln!(
            out,
            "<text x=\"{x:.3}\" y=\"{y:.3}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"{anchor}\">{text}</text>"
        );
    };
    label(&mut out, MARGIN, SIZE - MARGIN + 16.0, "start", format!("{x0:.4}"));
    label(&mut out, SIZE - MARGIN, SIZE - MARGIN + 16.0, "end", format!("{:.4}", x0 + span));
    label(&mut out, MARGIN - 6.0, SIZE - MARGIN, "end", format!("{y0:.4}"));
    label(&mut out, MARGIN - 6.0, MARGIN + 10.0, "end", format!("{:.4}", y0 + span));
    label(&mut out, SIZE / 2.0, SIZE - MARGIN + 32.0, "middle", "Re".into());
    label(&mut out, MARGIN - 30.0, SIZE / 2.0, "middle", "Im".into());

    for (level, body) in groups.iter().enumerate() {
        if !body.is_empty() {
            let _ = writeln!(out, "<g fill=\"{}\" fill-opacity=\"0.8\">{body}</g>", color(level));
        }
    }
    let hull = convex_hull(&values);
    if hull.len() >= 2 {
        let pts: Vec<String> = hull
            .iter()
            .map(|&v| {
                let (x, y) = px(v);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            "<polygon points=\"{}\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>",
            pts.join(" ")
        );
    }
    let _ = writeln!(out, "</svg>");
    out
}
