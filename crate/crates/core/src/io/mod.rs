//! Text formats: edge lists, partition files and curve CSV/SVG output.
//!
//! Edge list: one `u v` pair per line, optional leading `n <count>` header
//! declaring the vertex count (needed for isolated vertices), `#` comments.
//!
//! Partition: one `vertex part` pair per line; every vertex must appear
//! exactly once. Part identifiers are arbitrary tokens and are canonicalized
//! on read.
//!
//! Curve CSV: header `x,measure,mean,std,trials,degenerate`, rows sorted by
//! `(measure, x)`, reals written with 12 significant digits.

mod svg;

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::experiments::CurvePoint;
use crate::graph::{Graph, Partition};
use crate::{Error, Result};

pub use svg::{emit_curve_svg, SvgOptions};

/// Vertex-id conventions for reading external files.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReadOptions {
    /// Ids in the file start at 1 and are shifted down on read.
    pub one_based: bool,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        (!line.is_empty() && !line.starts_with('#')).then_some((i + 1, line))
    })
}

fn parse_vertex(token: &str, line: usize, opts: ReadOptions) -> Result<usize> {
    let id: usize = token
        .parse()
        .map_err(|_| parse_error(line, format!("invalid vertex id {token:?}")))?;
    if opts.one_based {
        id.checked_sub(1)
            .ok_or_else(|| parse_error(line, "vertex id 0 in a one-based file"))
    } else {
        Ok(id)
    }
}

pub fn parse_edge_list(text: &str, opts: ReadOptions) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut pairs = Vec::new();
    let mut seen = HashSet::new();
    for (idx, (line, content)) in content_lines(text).enumerate() {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if idx == 0 && tokens.first() == Some(&"n") {
            if tokens.len() != 2 {
                return Err(parse_error(line, "header must be `n <count>`"));
            }
            let n = tokens[1]
                .parse()
                .map_err(|_| parse_error(line, format!("invalid vertex count {:?}", tokens[1])))?;
            declared = Some(n);
            continue;
        }
        if tokens.len() != 2 {
            return Err(parse_error(
                line,
                format!("expected `u v`, found {} fields", tokens.len()),
            ));
        }
        let u = parse_vertex(tokens[0], line, opts)?;
        let v = parse_vertex(tokens[1], line, opts)?;
        if u == v {
            return Err(parse_error(line, format!("self-loop at vertex {u}")));
        }
        if let Some(n) = declared {
            if u.max(v) >= n {
                return Err(parse_error(
                    line,
                    format!("vertex {} out of range for declared n = {n}", u.max(v)),
                ));
            }
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_error(line, format!("duplicate edge ({u}, {v})")));
        }
        pairs.push((u, v));
    }
    let n = declared.unwrap_or_else(|| pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Graph::new(n, pairs)
}

/// Always writes the `n` header, then the edges in graph order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + 12 * g.edge_count());
    writeln!(out, "n {}", g.vertex_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Reads a partition covering exactly the vertices `0..vertex_count`.
pub fn parse_partition(text: &str, vertex_count: usize, opts: ReadOptions) -> Result<Partition> {
    let mut labels: Vec<Option<&str>> = vec![None; vertex_count];
    let mut last_line = 0;
    for (line, content) in content_lines(text) {
        last_line = line;
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(parse_error(
                line,
                format!("expected `vertex part`, found {} fields", tokens.len()),
            ));
        }
        let v = parse_vertex(tokens[0], line, opts)?;
        let slot = labels.get_mut(v).ok_or_else(|| {
            parse_error(
                line,
                format!("unknown vertex {v} (graph has {vertex_count})"),
            )
        })?;
        if slot.is_some() {
            return Err(parse_error(line, format!("duplicate vertex {v}")));
        }
        *slot = Some(tokens[1]);
    }
    if let Some(v) = labels.iter().position(Option::is_none) {
        return Err(parse_error(
            last_line.max(1),
            format!("missing vertex {v} (end of input)"),
        ));
    }
    let labels: Vec<&str> = labels.into_iter().map(|l| l.expect("checked")).collect();
    Ok(Partition::from_labels(&labels))
}

pub fn write_partition(p: &Partition) -> String {
    let mut out = String::with_capacity(8 * p.len());
    for (v, l) in p.labels().iter().enumerate() {
        writeln!(out, "{v} {l}").unwrap();
    }
    out
}

/// Decimal rendering with 12 significant digits, `%g` style: trailing zeros
/// dropped, scientific notation outside `[1e-5, 1e12)`.
pub fn format_real(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (11 - exp) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Points sorted by `(measure, x)`.
pub fn sorted_points(points: &[CurvePoint]) -> Vec<&CurvePoint> {
    let mut sorted: Vec<&CurvePoint> = points.iter().collect();
    sorted.sort_by(|a, b| a.measure.cmp(&b.measure).then(a.x.total_cmp(&b.x)));
    sorted
}

pub const CURVE_CSV_HEADER: &str = "x,measure,mean,std,trials,degenerate";

pub fn emit_curve_csv(points: &[CurvePoint]) -> Result<String> {
    if points.is_empty() {
        return Err(Error::invalid("no curve points to write"));
    }
    let mut out = String::from(CURVE_CSV_HEADER);
    out.push('\n');
    for p in sorted_points(points) {
        if p.measure.contains([',', '\n', '"']) {
            return Err(Error::invalid(format!(
                "measure label {:?} is not CSV-safe",
                p.measure
            )));
        }
        writeln!(
            out,
            "{},{},{},{},{},{}",
            format_real(p.x),
            p.measure,
            format_real(p.mean),
            format_real(p.std),
            p.trials,
            p.degenerate
        )
        .unwrap();
    }
    Ok(out)
}
