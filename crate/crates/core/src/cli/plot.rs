// Copyright 2026 The dyncp Authors
//
// Licensed under the Apache license, version 2.0 (the "license");
// you may not use this file except in compliance with the license.
// You may obtain a copy of the license at
//
//     http://www.apache.org/licenses/license-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the license is distributed on an "as is" basis,
// without warranties or conditions of any kind, either express or implied.
// See the license for the specific language governing permissions and
// limitations under the license.

//! Self-contained SVG plot of a sweep.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::geometry::AtomConfig;

use super::config::SweepKind;
use super::run::Row;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 90.0;
const MARGIN_RIGHT: f64 = 170.0;
const MARGIN_Y: f64 = 40.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

/// Light-cone thresholds in the plot's x coordinate.
fn markers(kind: SweepKind, rows: &[Row], base: &AtomConfig<f64>) -> Vec<(f64, &'static str)> {
    let Ok(tri) = base.triangle() else {
        return Vec::new();
    };
    let (a, b, g) = (tri.alpha, tri.beta, tri.gamma);
    let mut out = Vec::new();
    match kind {
        SweepKind::Time | SweepKind::CustomGrid => {
            let s = rows.first().map(|r| r.scale).unwrap_or(1.0);
            out.push((a * s, "α"));
            out.push((b * s, "β"));
            out.push((g * s, "γ"));
            if a > g {
                out.push(((a - g) * s, "α−γ"));
            }
            if b > g {
                out.push(((b - g) * s, "β−γ"));
            }
        }
        SweepKind::SideScaling => {
            let ct = rows.first().map(|r| r.ct).unwrap_or(0.0);
            if ct > 0.0 {
                out.push((ct / a, "α"));
                out.push((ct / b, "β"));
                out.push((ct / g, "γ"));
                if a > g {
                    out.push((ct / (a - g), "α−γ"));
                }
                if b > g {
                    out.push((ct / (b - g), "β−γ"));
                }
            }
        }
    }
    out
}

fn series_name(kind: SweepKind, r: &Row) -> String {
    match kind {
        SweepKind::CustomGrid => format!("{} ×{}", r.quantity, r.scale),
        _ => r.quantity.to_string(),
    }
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo <= f64::EPSILON * lo.abs().max(1.0) {
        let pad = 0.5 * lo.abs().max(1.0);
        return (lo - pad, hi + pad);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

/// Energy against the swept variable, one polyline per quantity, with dashed
/// vertical lines where a light cone or the retardation window opens.
pub fn render(rows: &[Row], kind: SweepKind, base: &AtomConfig<f64>) -> String {
    let x_of = |r: &Row| match kind {
        SweepKind::SideScaling => r.scale,
        _ => r.ct,
    };
    let mut series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    let mut order: Vec<String> = Vec::new();
    for r in rows {
        let name = series_name(kind, r);
        if !series.contains_key(&name) {
            order.push(name.clone());
        }
        let pts = series.entry(name).or_default();
        if let Some(v) = r.value.filter(|v| v.is_finite()) {
            pts.push((x_of(r), v));
        }
    }
    let (x0, x1) = range(rows.iter().map(x_of));
    let (y0, y1) = range(series.values().flatten().map(|p| p.1));
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - 2.0 * MARGIN_Y;
    let sx = |x: f64| MARGIN_LEFT + (x - x0) / (x1 - x0) * plot_w;
    let sy = |y: f64| MARGIN_Y + (y1 - y) / (y1 - y0) * plot_h;
    let x_label = match kind {
        SweepKind::SideScaling => "scale",
        _ => "ct",
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_Y}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let (xv, yv) = (x0 + t * (x1 - x0), y0 + t * (y1 - y0));
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{:.3}</text>"#,
            sx(xv),
            HEIGHT - MARGIN_Y + 16.0,
            xv
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{:.3e}</text>"#,
            MARGIN_LEFT - 6.0,
            sy(yv) + 4.0,
            yv
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{x_label}</text>"#,
        MARGIN_LEFT + 0.5 * plot_w,
        HEIGHT - 6.0
    );
    if y0 < 0.0 && y1 > 0.0 {
        let _ = writeln!(
            s,
            r##"<line x1="{MARGIN_LEFT}" x2="{:.1}" y1="{y:.1}" y2="{y:.1}" stroke="#999"/>"##,
            MARGIN_LEFT + plot_w,
            y = sy(0.0)
        );
    }
    for (x, label) in markers(kind, rows, base) {
        if x < x0 || x > x1 {
            continue;
        }
        let _ = writeln!(
            s,
            r##"<line x1="{px:.1}" x2="{px:.1}" y1="{MARGIN_Y}" y2="{:.1}" stroke="#555" stroke-dasharray="4 3"/>"##,
            MARGIN_Y + plot_h,
            px = sx(x)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{label}</text>"#,
            sx(x),
            MARGIN_Y - 6.0
        );
    }
    for (i, name) in order.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let pts = &series[name];
        if !pts.is_empty() {
            let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                path.join(" ")
            );
        }
        let ly = MARGIN_Y + 16.0 * (i as f64 + 1.0);
        let lx = WIDTH - MARGIN_RIGHT + 12.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" x2="{:.1}" y1="{ly}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{:.1}" y="{:.1}">{name}</text>"#,
            lx + 18.0,
            lx + 24.0,
            ly + 4.0
        );
    }
    s.push_str("</svg>\n");
    s
}
