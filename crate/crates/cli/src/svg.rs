//! Minimal SVG snapshots of 2D flow frames: the truncated body, its
//! recession cone fan, and the central-direction arrow.

use std::path::{Path, PathBuf};

use recess_core::bodies::{self, VBody};
use recess_core::geom::Vector;
use recess_core::metrics::{sample_body, MetricsConfig};
use recess_core::Result;

use crate::output::format_sig;

const CANVAS: f64 = 600.0;

pub fn frame_path(stem: &Path, index: usize) -> PathBuf {
    let parent = stem.parent().map(|p| p.to_path_buf()).unwrap_or_default();
    let name = stem
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("flow")
        .to_string();
    parent.join(format!("{name}_step_{index:03}.svg"))
}

pub fn render_frame(body: &VBody) -> Result<String> {
    // Drawing window: generators plus 20% margin.
    let mut w: f64 = 1.0;
    for p in body.points() {
        w = w.max(p[0].abs()).max(p[1].abs());
    }
    let w = w * 1.2 + 1.0;

    // Boundary polyline by ray shooting within the window.
    let cfg = MetricsConfig {
        r_max: w * 2.0,
        grid_directions: 256,
        radial_levels: 2,
        ..Default::default()
    };
    let sampled = sample_body(body, &cfg);

    let to_px = |v: &Vector| {
        let x = (v[0] / w + 1.0) * CANVAS / 2.0;
        let y = (1.0 - v[1] / w) * CANVAS / 2.0;
        (x, y)
    };

    let mut doc = String::new();
    doc.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n",
        CANVAS
    ));
    doc.push_str(&format!(
        "<rect width=\"{0}\" height=\"{0}\" fill=\"white\"/>\n",
        CANVAS
    ));

    // Body samples.
    for s in &sampled.samples {
        if s[0].abs() <= w && s[1].abs() <= w {
            let (x, y) = to_px(s);
            doc.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"1.2\" fill=\"#4477aa\"/>\n",
                format_sig(x),
                format_sig(y)
            ));
        }
    }

    // Recession cone fan from the first point generator.
    let anchor = body.points()[0].clone();
    let (ax, ay) = to_px(&anchor);
    let mut fan: Vec<Vector> = body.rays().to_vec();
    for l in body.lines() {
        fan.push(l.clone());
        fan.push(l.scale(-1.0));
    }
    for r in &fan {
        let tip = anchor.axpy(w * 0.8, r);
        let (tx, ty) = to_px(&tip);
        doc.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#cc6677\" stroke-width=\"1\"/>\n",
            format_sig(ax),
            format_sig(ay),
            format_sig(tx),
            format_sig(ty)
        ));
    }

    // Central-direction arrow when defined.
    if let Ok(cd) = bodies::central_direction(body) {
        let tip = anchor.axpy(w * 0.5, &cd);
        let (tx, ty) = to_px(&tip);
        doc.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#117733\" stroke-width=\"2.5\"/>\n",
            format_sig(ax),
            format_sig(ay),
            format_sig(tx),
            format_sig(ty)
        ));
        doc.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"#117733\"/>\n",
            format_sig(tx),
            format_sig(ty)
        ));
    }

    doc.push_str("</svg>\n");
    Ok(doc)
}
