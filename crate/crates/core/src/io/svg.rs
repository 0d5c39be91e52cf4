use std::fmt::Write as _;

use super::{format_real, sorted_points};
use crate::experiments::CurvePoint;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct SvgOptions {
    pub width: f64,
    pub height: f64,
    pub title: String,
    pub x_label: String,
    pub y_label: String,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            width: 720.0,
            height: 440.0,
            title: String::new(),
            x_label: "x".into(),
            y_label: "similarity".into(),
        }
    }
}

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 170.0;
const MARGIN_TOP: f64 = 36.0;
const MARGIN_BOTTOM: f64 = 52.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        return (lo - 0.5, hi + 0.5);
    }
    (lo, hi)
}

/// Line chart: one polyline per measure, shaded mean ± std band, legend.
pub fn emit_curve_svg(points: &[CurvePoint], opts: &SvgOptions) -> Result<String> {
    if points.is_empty() {
        return Err(Error::invalid("no curve points to plot"));
    }
    let sorted = sorted_points(points);
    let mut series: Vec<(&str, Vec<&CurvePoint>)> = Vec::new();
    for p in sorted {
        match series.last_mut() {
            Some((m, pts)) if *m == p.measure => pts.push(p),
            _ => series.push((&p.measure, vec![p])),
        }
    }

    let (x0, x1) = range(points.iter().map(|p| p.x));
    let (y0, y1) = range(
        points
            .iter()
            .flat_map(|p| [p.mean - p.std.max(0.0), p.mean + p.std.max(0.0)]),
    );
    let plot_w = (opts.width - MARGIN_LEFT - MARGIN_RIGHT).max(10.0);
    let plot_h = (opts.height - MARGIN_TOP - MARGIN_BOTTOM).max(10.0);
    let sx = |x: f64| MARGIN_LEFT + (x - x0) / (x1 - x0) * plot_w;
    let sy = |y: f64| MARGIN_TOP + (y1 - y) / (y1 - y0) * plot_h;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#,
        w = opts.width,
        h = opts.height
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    if !opts.title.is_empty() {
        writeln!(
            out,
            r#"<text x="{:.1}" y="20" text-anchor="middle" font-size="14">{}</text>"#,
            MARGIN_LEFT + plot_w / 2.0,
            escape(&opts.title)
        )
        .unwrap();
    }

    // axes and ticks
    let bottom = MARGIN_TOP + plot_h;
    writeln!(
        out,
        r#"<path d="M{l:.1},{t:.1} V{b:.1} H{r:.1}" fill="none" stroke="black"/>"#,
        l = MARGIN_LEFT,
        t = MARGIN_TOP,
        b = bottom,
        r = MARGIN_LEFT + plot_w
    )
    .unwrap();
    for i in 0..=5 {
        let f = i as f64 / 5.0;
        let xv = x0 + f * (x1 - x0);
        let yv = y0 + f * (y1 - y0);
        let (px, py) = (sx(xv), sy(yv));
        writeln!(
            out,
            r#"<line x1="{px:.1}" y1="{bottom:.1}" x2="{px:.1}" y2="{:.1}" stroke="black"/><text x="{px:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            bottom + 4.0,
            bottom + 18.0,
            short(xv)
        )
        .unwrap();
        writeln!(
            out,
            r#"<line x1="{:.1}" y1="{py:.1}" x2="{MARGIN_LEFT:.1}" y2="{py:.1}" stroke="black"/><text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
            MARGIN_LEFT - 4.0,
            MARGIN_LEFT - 6.0,
            py + 4.0,
            short(yv)
        )
        .unwrap();
    }
    writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        opts.height - 12.0,
        escape(&opts.x_label)
    )
    .unwrap();
    writeln!(
        out,
        r#"<text transform="translate(16,{:.1}) rotate(-90)" text-anchor="middle">{}</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        escape(&opts.y_label)
    )
    .unwrap();

    for (i, (measure, pts)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let finite: Vec<&&CurvePoint> = pts.iter().filter(|p| p.mean.is_finite()).collect();
        if finite.len() > 1 {
            let std = |p: &CurvePoint| if p.std.is_finite() { p.std } else { 0.0 };
            let upper = finite.iter().map(|p| (sx(p.x), sy(p.mean + std(p))));
            let lower = finite.iter().rev().map(|p| (sx(p.x), sy(p.mean - std(p))));
            let band: Vec<String> = upper
                .chain(lower)
                .map(|(x, y)| format!("{x:.1},{y:.1}"))
                .collect();
            writeln!(
                out,
                r#"<polygon points="{}" fill="{color}" fill-opacity="0.15" stroke="none"/>"#,
                band.join(" ")
            )
            .unwrap();
        }
        let line: Vec<String> = finite
            .iter()
            .map(|p| format!("{:.1},{:.1}", sx(p.x), sy(p.mean)))
            .collect();
        writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.8"/>"#,
            line.join(" ")
        )
        .unwrap();
        for p in &finite {
            writeln!(
                out,
                r#"<circle cx="{:.1}" cy="{:.1}" r="2.5" fill="{color}"/>"#,
                sx(p.x),
                sy(p.mean)
            )
            .unwrap();
        }
        let ly = MARGIN_TOP + 8.0 + 18.0 * i as f64;
        let lx = MARGIN_LEFT + plot_w + 14.0;
        writeln!(
            out,
            r#"<line x1="{lx:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{color}" stroke-width="2"/><text x="{:.1}" y="{:.1}">{}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0,
            escape(measure)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn short(v: f64) -> String {
    let s = format_real((v * 1e4).round() / 1e4);
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}
