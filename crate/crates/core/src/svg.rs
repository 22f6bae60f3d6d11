//! SVG rendering of instances, zone layouts and solution paths.

use std::fmt::Write as _;

use crate::arc_search::feasible_arcs;
use crate::geometry::{Point, EPS};
use crate::instance::{Instance, Solution};
use crate::rszd::SzLayout;

const ARC_STEPS: usize = 24;

fn bbox(instance: &Instance) -> (f64, f64, f64, f64) {
    let r = instance.radius();
    let mut b = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    let pts = instance.circles.iter().map(|c| c.circle.center).chain([instance.depot_start, instance.depot_end]);
    for p in pts {
        b = (b.0.min(p.x - r), b.1.min(p.y - r), b.2.max(p.x + r), b.3.max(p.y + r));
    }
    b
}

/// Draws target circles, optional zone arcs/vertices/centers and an optional
/// path. The y axis points up.
pub fn render(instance: &Instance, layout: Option<&SzLayout>, solution: Option<&Solution>) -> String {
    let (x0, y0, x1, y1) = bbox(instance);
    let margin = 0.05 * (x1 - x0).max(y1 - y0).max(1.0);
    let (x0, y0, x1, y1) = (x0 - margin, y0 - margin, x1 + margin, y1 + margin);
    let (w, h) = (x1 - x0, y1 - y0);
    let stroke = 0.002 * w.max(h);
    let tx = |p: Point| (p.x, p.y);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{x0} {y0} {w} {h}" width="800" height="{}">"#,
        (800.0 * h / w).round()
    );
    // Flip y so the picture matches the usual math orientation while keeping
    // raw coordinates in the markup.
    let _ = writeln!(s, r#"<g transform="translate(0 {}) scale(1 -1)">"#, y0 + y1);
    let _ = writeln!(s, r##"<g fill="none" stroke="#888" stroke-width="{stroke}">"##);
    for c in &instance.circles {
        let (cx, cy) = tx(c.circle.center);
        let _ = writeln!(s, r#"<circle cx="{cx}" cy="{cy}" r="{}"/>"#, c.circle.radius);
    }
    let _ = writeln!(s, "</g>");

    if let Some(layout) = layout {
        let _ = writeln!(s, r##"<g fill="none" stroke="#1f77b4" stroke-width="{}">"##, 2.0 * stroke);
        for z in layout.zones.iter().filter(|z| z.degree() > 1) {
            for (m, arc) in z.members.iter().zip(feasible_arcs(z, EPS)) {
                for (lo, hi) in arc.intervals {
                    let pts: Vec<String> = (0..=ARC_STEPS)
                        .map(|k| {
                            let (x, y) = tx(m.circle.point_at(lo + (hi - lo) * k as f64 / ARC_STEPS as f64));
                            format!("{x},{y}")
                        })
                        .collect();
                    let _ = writeln!(s, r#"<polyline points="{}"/>"#, pts.join(" "));
                }
            }
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(s, r##"<g fill="#1f77b4">"##);
        for z in &layout.zones {
            for v in &z.vertices {
                let (x, y) = tx(*v);
                let _ = writeln!(s, r#"<circle cx="{x}" cy="{y}" r="{}"/>"#, 2.0 * stroke);
            }
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(s, r##"<g stroke="#d62728" stroke-width="{stroke}">"##);
        for z in &layout.zones {
            let (x, y) = tx(z.center);
            let d = 3.0 * stroke;
            let _ = writeln!(s, r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}"/>"#, x - d, x + d);
            let _ = writeln!(s, r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}"/>"#, y - d, y + d);
        }
        let _ = writeln!(s, "</g>");
    }

    if let Some(sol) = solution {
        let pts: Vec<String> = sol
            .polyline(instance.depot_start, instance.depot_end)
            .into_iter()
            .map(|p| {
                let (x, y) = tx(p);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            s,
            r##"<polyline id="path" fill="none" stroke="#2ca02c" stroke-width="{}" points="{}"/>"##,
            2.0 * stroke,
            pts.join(" ")
        );
    }
    for (id, p) in [("depot-start", instance.depot_start), ("depot-end", instance.depot_end)] {
        let (x, y) = tx(p);
        let _ = writeln!(s, r#"<rect id="{id}" x="{}" y="{}" width="{}" height="{}" fill="black"/>"#, x - 3.0 * stroke, y - 3.0 * stroke, 6.0 * stroke, 6.0 * stroke);
    }
    s.push_str("</g>\n</svg>\n");
    s
}
