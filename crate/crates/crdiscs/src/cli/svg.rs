//! Minimal SVG plot emission. Plots are display conveniences only; all
//! numeric acceptance reads the CSV outputs.

use crate::cli::report::fmt_f;
use crate::hypersurface::{SectorLabel, SectorMap};

const SIZE: f64 = 400.0;

fn color(label: SectorLabel) -> &'static str {
    match label {
        SectorLabel::Pseudoconvex => "#2166ac",
        SectorLabel::Pseudoconcave => "#b2182b",
        SectorLabel::Flat => "#999999",
    }
}

/// Polar sign plot of the sector decomposition: colored annular arcs per
/// sector, radial lines for flat rays.
pub fn sector_svg(map: &SectorMap) -> String {
    let c = SIZE / 2.0;
    let r = 0.4 * SIZE;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    );
    for s in map.sectors() {
        let (lo, hi) = (s.theta_lo, s.theta_hi);
        let large = if hi - lo > std::f64::consts::PI { 1 } else { 0 };
        // SVG y-axis points down; negate the angle for mathematical orientation
        let (x0, y0) = (c + r * lo.cos(), c - r * lo.sin());
        let (x1, y1) = (c + r * hi.cos(), c - r * hi.sin());
        out.push_str(&format!(
            "  <path d=\"M {c:.2} {c:.2} L {x0:.2} {y0:.2} A {r:.2} {r:.2} 0 {large} 0 {x1:.2} {y1:.2} Z\" fill=\"{}\" fill-opacity=\"0.6\"/>\n",
            color(s.label)
        ));
    }
    for &ray in map.flat_rays() {
        let (x, y) = (c + r * ray.cos(), c - r * ray.sin());
        out.push_str(&format!(
            "  <line x1=\"{c:.2}\" y1=\"{c:.2}\" x2=\"{x:.2}\" y2=\"{y:.2}\" stroke=\"#000\" stroke-width=\"2\"/>\n"
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Line plot of a per-index series (e.g. slope vs n) with an optional
/// horizontal reference level.
pub fn series_svg(values: &[f64], reference: Option<f64>, title: &str) -> String {
    let mut lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let mut hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if let Some(r) = reference {
        lo = lo.min(r);
        hi = hi.max(r);
    }
    if !(hi > lo) {
        hi = lo + 1.0;
    }
    let pad = 0.1 * (hi - lo);
    let (lo, hi) = (lo - pad, hi + pad);
    let x = |i: usize| 40.0 + (SIZE - 80.0) * i as f64 / (values.len().max(2) - 1) as f64;
    let y = |v: f64| SIZE - 40.0 - (SIZE - 80.0) * (v - lo) / (hi - lo);
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n  <title>{title}</title>\n"
    );
    if let Some(r) = reference {
        out.push_str(&format!(
            "  <line x1=\"40\" y1=\"{0:.2}\" x2=\"{1:.2}\" y2=\"{0:.2}\" stroke=\"#b2182b\" stroke-dasharray=\"4\"/>\n",
            y(r),
            SIZE - 40.0
        ));
    }
    let pts: Vec<String> = values
        .iter()
        .enumerate()
        .map(|(i, &v)| format!("{:.2},{:.2}", x(i), y(v)))
        .collect();
    out.push_str(&format!(
        "  <polyline points=\"{}\" fill=\"none\" stroke=\"#2166ac\" stroke-width=\"2\"/>\n",
        pts.join(" ")
    ));
    for (i, &v) in values.iter().enumerate() {
        out.push_str(&format!(
            "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"#2166ac\"><title>{}</title></circle>\n",
            x(i),
            y(v),
            fmt_f(v)
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Curve plot of a closed boundary trace in the plane.
pub fn curve_svg(points: &[(f64, f64)], title: &str) -> String {
    let (mut xlo, mut xhi, mut ylo, mut yhi) =
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        xlo = xlo.min(x);
        xhi = xhi.max(x);
        ylo = ylo.min(y);
        yhi = yhi.max(y);
    }
    let span = (xhi - xlo).max(yhi - ylo).max(1e-12);
    let map = |x: f64, y: f64| {
        (
            40.0 + (SIZE - 80.0) * (x - xlo) / span,
            SIZE - 40.0 - (SIZE - 80.0) * (y - ylo) / span,
        )
    };
    let pts: Vec<String> = points
        .iter()
        .map(|&(x, y)| {
            let (a, b) = map(x, y);
            format!("{a:.2},{b:.2}")
        })
        .collect();
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n  <title>{title}</title>\n  <polygon points=\"{}\" fill=\"none\" stroke=\"#2166ac\" stroke-width=\"1.5\"/>\n</svg>\n",
        pts.join(" ")
    )
}
