//! SVG score-space maps and loading bar charts.
//!
//! Output is plain SVG text with fixed three-decimal coordinates, so equal
//! inputs render to identical bytes.
//!
//! Palette: bands `#d7191c` very critical, `#fdae61` critical, `#a6d96a`
//! intermediate, `#1a9641` adequate; descriptor maps `#2166ac` for
//! `p > 0.5` and `#b2182b` otherwise; categories cycle through the ten
//! Tableau colors; missing values are `#bdbdbd`.

use std::collections::BTreeSet;
use std::fmt::Write;

use nalgebra::DMatrix;

use crate::error::{LpcaError, Result};
use crate::fit::ModelParams;
use crate::ingest::{band_of, ProficiencyBand, ResponseTable};
use crate::irt::{self, Side};

pub const BAND_COLORS: [&str; 4] = ["#d7191c", "#fdae61", "#a6d96a", "#1a9641"];
pub const POSITIVE_COLOR: &str = "#2166ac";
pub const NEGATIVE_COLOR: &str = "#b2182b";
pub const MISSING_COLOR: &str = "#bdbdbd";
pub const CATEGORY_COLORS: [&str; 10] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Scatter,
    LoadingsBar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColorMode {
    ProficiencyBands,
    /// Descriptor column index.
    DescriptorBinary(usize),
    /// Metadata column name (without `meta:`).
    Categorical(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub kind: PlotKind,
    pub color_mode: ColorMode,
    /// Descriptor whose 0.5 level set is drawn.
    pub overlay_levelset: Option<usize>,
    /// 1-based principal components on the x and y axes. For loading bars
    /// only the first is used.
    pub axes: (usize, usize),
    pub width: f64,
    pub height: f64,
    pub point_radius: f64,
}

impl PlotSpec {
    pub fn scatter(color_mode: ColorMode) -> Self {
        let overlay_levelset = match color_mode {
            ColorMode::DescriptorBinary(j) => Some(j),
            _ => None,
        };
        Self {
            kind: PlotKind::Scatter,
            color_mode,
            overlay_levelset,
            axes: (1, 2),
            width: 720.0,
            height: 540.0,
            point_radius: 2.5,
        }
    }

    pub fn loadings(component: usize) -> Self {
        Self {
            kind: PlotKind::LoadingsBar,
            color_mode: ColorMode::ProficiencyBands,
            overlay_levelset: None,
            axes: (component, component),
            width: 900.0,
            height: 360.0,
            point_radius: 0.0,
        }
    }

    fn validate(&self, k: usize, d: usize) -> Result<()> {
        let (a, b) = self.axes;
        if a == 0 || a > k {
            return Err(LpcaError::Config(format!("component {a} outside 1..={k}")));
        }
        if self.kind == PlotKind::Scatter {
            if k < 2 {
                return Err(LpcaError::Config("scatter maps need k >= 2".into()));
            }
            if b == 0 || b > k || a == b {
                return Err(LpcaError::Config(format!("invalid axes ({a}, {b}) for k = {k}")));
            }
        }
        let check = |j: usize| {
            if j >= d {
                Err(LpcaError::Config(format!("descriptor index {j} outside 0..{d}")))
            } else {
                Ok(())
            }
        };
        if let ColorMode::DescriptorBinary(j) = self.color_mode {
            check(j)?;
        }
        if let Some(j) = self.overlay_levelset {
            check(j)?;
        }
        if !(self.width > 0.0 && self.height > 0.0) {
            return Err(LpcaError::Config("plot size must be positive".into()));
        }
        Ok(())
    }
}

/// Everything a map needs: model, scores and the table supplying column names
/// and metadata. `scores` and `table` rows must correspond.
pub struct MapInput<'a> {
    pub params: &'a ModelParams,
    pub scores: &'a DMatrix<f64>,
    pub table: &'a ResponseTable,
}

pub fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 170.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 56.0;

/// Maps data coordinates into the plot rectangle.
#[derive(Debug, Clone, Copy)]
struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
    left: f64,
    top: f64,
    w: f64,
    h: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        self.left + (x - self.x_min) / (self.x_max - self.x_min) * self.w
    }

    fn py(&self, y: f64) -> f64 {
        self.top + (self.y_max - y) / (self.y_max - self.y_min) * self.h
    }
}

/// Data range padded by 5% on both sides.
fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (-1.0, 1.0);
    }
    if hi - lo < 1e-12 {
        return (lo - 1.0, hi + 1.0);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

fn svg_open(out: &mut String, width: f64, height: f64, title: &str) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{width:.0}" height="{height:.0}" fill="white"/>"#);
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    (0..=4).map(|i| lo + (hi - lo) * i as f64 / 4.0).collect()
}

fn draw_axes(out: &mut String, f: &Frame, x_label: &str, y_label: &str) {
    let bottom = f.top + f.h;
    let _ = writeln!(out, r#"<g class="axes" stroke="black" fill="none">"#);
    let _ = writeln!(
        out,
        r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}"/>"#,
        f.left, f.top, f.w, f.h
    );
    for t in ticks(f.x_min, f.x_max) {
        let x = f.px(t);
        let _ = writeln!(out, r#"<line x1="{x:.3}" y1="{bottom:.3}" x2="{x:.3}" y2="{:.3}"/>"#, bottom + 5.0);
    }
    for t in ticks(f.y_min, f.y_max) {
        let y = f.py(t);
        let _ = writeln!(out, r#"<line x1="{:.3}" y1="{y:.3}" x2="{:.3}" y2="{y:.3}"/>"#, f.left - 5.0, f.left);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g class="tick-labels" fill="black">"#);
    for t in ticks(f.x_min, f.x_max) {
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">{t:.2}</text>"#,
            f.px(t),
            bottom + 18.0
        );
    }
    for t in ticks(f.y_min, f.y_max) {
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="end">{t:.2}</text>"#,
            f.left - 8.0,
            f.py(t) + 4.0
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r#"<text class="x-label" x="{:.3}" y="{:.3}" text-anchor="middle">{}</text>"#,
        f.left + f.w / 2.0,
        bottom + 42.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text class="y-label" x="{:.3}" y="{:.3}" text-anchor="middle" transform="rotate(-90 {:.3} {:.3})">{}</text>"#,
        18.0,
        f.top + f.h / 2.0,
        18.0,
        f.top + f.h / 2.0,
        escape(y_label)
    );
}

fn draw_legend(out: &mut String, x: f64, y: f64, entries: &[(String, String)]) {
    let _ = writeln!(out, r#"<g class="legend">"#);
    for (i, (label, color)) in entries.iter().enumerate() {
        let cy = y + 20.0 * i as f64;
        let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{cy:.3}" r="5" fill="{color}"/>"#);
        let _ = writeln!(
            out,
            r#"<text class="legend-label" x="{:.3}" y="{:.3}">{}</text>"#,
            x + 12.0,
            cy + 4.0,
            escape(label)
        );
    }
    let _ = writeln!(out, "</g>");
}

/// Segment of `a x + b y + c = 0` inside the frame's data box, if any.
pub fn clip_line(a: f64, b: f64, c: f64, x: (f64, f64), y: (f64, f64)) -> Option<((f64, f64), (f64, f64))> {
    let eps = 1e-12;
    let mut pts: Vec<(f64, f64)> = Vec::new();
    if b.abs() > eps {
        for xv in [x.0, x.1] {
            let yv = -(a * xv + c) / b;
            if yv >= y.0 - eps && yv <= y.1 + eps {
                pts.push((xv, yv.clamp(y.0, y.1)));
            }
        }
    }
    if a.abs() > eps {
        for yv in [y.0, y.1] {
            let xv = -(b * yv + c) / a;
            if xv >= x.0 - eps && xv <= x.1 + eps {
                pts.push((xv.clamp(x.0, x.1), yv));
            }
        }
    }
    pts.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
    pts.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-12 && (p.1 - q.1).abs() < 1e-12);
    match pts.len() {
        0 | 1 => None,
        _ => Some((pts[0], pts[pts.len() - 1])),
    }
}

/// (label, color) pairs in legend order.
type Legend = Vec<(String, String)>;

/// Per-point colors and legend entries for a scatter map.
fn point_colors(spec: &PlotSpec, input: &MapInput) -> Result<(Vec<String>, Legend)> {
    let n = input.scores.nrows();
    match &spec.color_mode {
        ColorMode::ProficiencyBands => {
            let prof = input
                .table
                .numeric_meta("proficiency")?
                .ok_or_else(|| LpcaError::Data("table has no meta:proficiency column".into()))?;
            let colors = prof
                .iter()
                .map(|p| match p {
                    Some(v) => band_of(*v).map(|b| BAND_COLORS[b as usize].to_string()),
                    None => Ok(MISSING_COLOR.to_string()),
                })
                .collect::<Result<Vec<_>>>()?;
            let legend = ProficiencyBand::ALL
                .iter()
                .map(|b| (b.label().to_string(), BAND_COLORS[*b as usize].to_string()))
                .collect();
            Ok((colors, legend))
        }
        ColorMode::DescriptorBinary(j) => {
            let h = &irt::to_hyperplanes(input.params)[*j];
            let colors = (0..n)
                .map(|i| {
                    let psi: Vec<f64> = input.scores.row(i).iter().copied().collect();
                    match irt::classify_side(h, &psi) {
                        Side::Positive => POSITIVE_COLOR.to_string(),
                        _ => NEGATIVE_COLOR.to_string(),
                    }
                })
                .collect();
            let legend = vec![
                ("p > 0.5".to_string(), POSITIVE_COLOR.to_string()),
                ("p ≤ 0.5".to_string(), NEGATIVE_COLOR.to_string()),
            ];
            Ok((colors, legend))
        }
        ColorMode::Categorical(name) => {
            let col = input
                .table
                .meta(name)
                .ok_or_else(|| LpcaError::Data(format!("table has no meta:{name} column")))?;
            let levels: BTreeSet<&str> = col.iter().flatten().map(String::as_str).collect();
            let levels: Vec<&str> = levels.into_iter().collect();
            let color_of = |v: &str| {
                let idx = levels.iter().position(|l| *l == v).expect("level collected above");
                CATEGORY_COLORS[idx % CATEGORY_COLORS.len()].to_string()
            };
            let colors = col
                .iter()
                .map(|v| v.as_deref().map_or(MISSING_COLOR.to_string(), color_of))
                .collect();
            let legend = levels.iter().map(|l| (l.to_string(), color_of(l))).collect();
            Ok((colors, legend))
        }
    }
}

fn render_scatter(spec: &PlotSpec, input: &MapInput) -> Result<String> {
    let (ax, ay) = (spec.axes.0 - 1, spec.axes.1 - 1);
    let n = input.scores.nrows();
    if input.table.nrows() != n {
        return Err(LpcaError::DimensionMismatch {
            expected: n,
            got: input.table.nrows(),
        });
    }
    let (colors, legend) = point_colors(spec, input)?;
    let (x_min, x_max) = padded_range(input.scores.column(ax).iter().copied());
    let (y_min, y_max) = padded_range(input.scores.column(ay).iter().copied());
    let frame = Frame {
        x_min,
        x_max,
        y_min,
        y_max,
        left: MARGIN_LEFT,
        top: MARGIN_TOP,
        w: spec.width - MARGIN_LEFT - MARGIN_RIGHT,
        h: spec.height - MARGIN_TOP - MARGIN_BOTTOM,
    };

    let title = match &spec.color_mode {
        ColorMode::ProficiencyBands => "Proficiency map".to_string(),
        ColorMode::DescriptorBinary(j) => {
            format!("Descriptor map: {}", input.table.descriptor_names[*j])
        }
        ColorMode::Categorical(c) => format!("Category map: {c}"),
    };
    let mut out = String::new();
    svg_open(&mut out, spec.width, spec.height, &title);
    let _ = writeln!(
        out,
        r#"<text class="title" x="{:.3}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        frame.left + frame.w / 2.0,
        escape(&title)
    );
    draw_axes(&mut out, &frame, &format!("PC{}", spec.axes.0), &format!("PC{}", spec.axes.1));

    let _ = writeln!(out, r#"<g class="points" fill-opacity="0.8">"#);
    for (i, color) in colors.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<circle class="point" cx="{:.3}" cy="{:.3}" r="{:.3}" fill="{color}"/>"#,
            frame.px(input.scores[(i, ax)]),
            frame.py(input.scores[(i, ay)]),
            spec.point_radius,
        );
    }
    let _ = writeln!(out, "</g>");

    if let Some(j) = spec.overlay_levelset {
        let u = &input.params.u;
        let (a, b, c) = (u[(j, ax)], u[(j, ay)], input.params.mu[j]);
        if let Some(((x1, y1), (x2, y2))) = clip_line(a, b, c, (x_min, x_max), (y_min, y_max)) {
            let _ = writeln!(
                out,
                r#"<line class="level-set" data-descriptor="{}" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black" stroke-width="1.5"/>"#,
                escape(&input.table.descriptor_names[j]),
                frame.px(x1),
                frame.py(y1),
                frame.px(x2),
                frame.py(y2)
            );
        }
    }
    draw_legend(&mut out, frame.left + frame.w + 24.0, frame.top + 10.0, &legend);
    out.push_str("</svg>\n");
    Ok(out)
}

fn render_loadings(spec: &PlotSpec, input: &MapInput) -> Result<String> {
    let component = spec.axes.0;
    let loadings = irt::relative_loadings(input.params, component)?;
    let d = loadings.percentages.len();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| loadings.percentages[b].total_cmp(&loadings.percentages[a]));
    let peak = loadings
        .percentages
        .iter()
        .copied()
        .fold(loadings.mean, f64::max);
    let frame = Frame {
        x_min: 0.0,
        x_max: d as f64,
        y_min: 0.0,
        y_max: peak * 1.1,
        left: MARGIN_LEFT,
        top: MARGIN_TOP,
        w: spec.width - MARGIN_LEFT - 40.0,
        h: spec.height - MARGIN_TOP - 80.0,
    };
    let title = format!("Relative loadings of PC{component}");
    let mut out = String::new();
    svg_open(&mut out, spec.width, spec.height, &title);
    let _ = writeln!(
        out,
        r#"<text class="title" x="{:.3}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        frame.left + frame.w / 2.0,
        escape(&title)
    );
    let bottom = frame.top + frame.h;
    let _ = writeln!(out, r#"<g class="axes" stroke="black" fill="none">"#);
    let _ = writeln!(
        out,
        r#"<line x1="{:.3}" y1="{bottom:.3}" x2="{:.3}" y2="{bottom:.3}"/>"#,
        frame.left,
        frame.left + frame.w
    );
    let _ = writeln!(
        out,
        r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{bottom:.3}"/>"#,
        frame.left, frame.top, frame.left
    );
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g class="tick-labels" fill="black">"#);
    for t in ticks(frame.y_min, frame.y_max) {
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="end">{t:.2}</text>"#,
            frame.left - 8.0,
            frame.py(t) + 4.0
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r#"<text class="y-label" x="18" y="{:.3}" text-anchor="middle" transform="rotate(-90 18 {:.3})">Loadings in %</text>"#,
        frame.top + frame.h / 2.0,
        frame.top + frame.h / 2.0
    );

    let slot = frame.w / d as f64;
    let _ = writeln!(out, r##"<g class="bars" fill="#4e79a7" fill-opacity="0.6" stroke="#4e79a7">"##);
    for (pos, &j) in order.iter().enumerate() {
        let v = loadings.percentages[j];
        let x = frame.left + slot * (pos as f64 + 0.1);
        let y = frame.py(v);
        let _ = writeln!(
            out,
            r#"<rect class="bar" data-descriptor="{}" data-value="{v:.4}" x="{x:.3}" y="{y:.3}" width="{:.3}" height="{:.3}"/>"#,
            escape(&input.table.descriptor_names[j]),
            slot * 0.8,
            bottom - y
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g class="bar-labels" fill="black" font-size="10">"#);
    for (pos, &j) in order.iter().enumerate() {
        let x = frame.left + slot * (pos as f64 + 0.5);
        let y = bottom + 12.0;
        let _ = writeln!(
            out,
            r#"<text x="{x:.3}" y="{y:.3}" text-anchor="end" transform="rotate(-45 {x:.3} {y:.3})">{}</text>"#,
            escape(&input.table.descriptor_names[j])
        );
    }
    let _ = writeln!(out, "</g>");
    let my = frame.py(loadings.mean);
    let _ = writeln!(
        out,
        r#"<line class="mean-rule" data-value="{:.4}" x1="{:.3}" y1="{my:.3}" x2="{:.3}" y2="{my:.3}" stroke="black" stroke-dasharray="6,4"/>"#,
        loadings.mean,
        frame.left,
        frame.left + frame.w
    );
    let _ = writeln!(
        out,
        r#"<text class="mean-label" x="{:.3}" y="{:.3}" text-anchor="end">Mean ({:.4}%)</text>"#,
        frame.left + frame.w - 4.0,
        my - 6.0,
        loadings.mean
    );
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn render(spec: &PlotSpec, input: &MapInput) -> Result<String> {
    spec.validate(input.params.k, input.params.d())?;
    if input.table.ncols() != input.params.d() {
        return Err(LpcaError::DimensionMismatch {
            expected: input.params.d(),
            got: input.table.ncols(),
        });
    }
    match spec.kind {
        PlotKind::Scatter => render_scatter(spec, input),
        PlotKind::LoadingsBar => render_loadings(spec, input),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expfam::Family;
    use crate::ingest::parse_table;
    use nalgebra::DVector;

    fn fixture() -> (ModelParams, DMatrix<f64>, ResponseTable) {
        let params = ModelParams {
            family: Family::Bernoulli,
            k: 2,
            m: 4.0,
            mu: DVector::from_row_slice(&[-2.0, 0.5, 0.0]),
            u: DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]),
        };
        let scores = DMatrix::from_row_slice(4, 2, &[0.0, 0.0, 4.0, 1.0, 1.0, -3.0, 3.0, 2.0]);
        let table = parse_table(
            "examinee,D1,D2,D3,meta:proficiency,meta:shift\nS1,0,1,1,240,morning\nS2,1,1,0,275,night\nS3,0,0,1,320,NA\nS4,1,1,1,400,morning\n"
                .as_bytes(),
        )
        .unwrap();
        (params, scores, table)
    }

    #[test]
    fn vertical_level_set_line() {
        let (params, scores, table) = fixture();
        let spec = PlotSpec::scatter(ColorMode::DescriptorBinary(0));
        let svg = render(&spec, &MapInput { params: &params, scores: &scores, table: &table }).unwrap();
        let line = svg.lines().find(|l| l.contains("level-set")).unwrap();
        let attr = |name: &str| -> f64 {
            let start = line.find(&format!(" {name}=\"")).unwrap() + name.len() + 3;
            line[start..].split('"').next().unwrap().parse().unwrap()
        };
        assert_eq!(attr("x1"), attr("x2"));
        // ψ₁ = 2 maps to the frame's x coordinate for 2
        let (lo, hi) = padded_range([0.0, 4.0, 1.0, 3.0].into_iter());
        let w = spec.width - MARGIN_LEFT - MARGIN_RIGHT;
        let expected = MARGIN_LEFT + (2.0 - lo) / (hi - lo) * w;
        assert!((attr("x1") - expected).abs() < 1e-3);
    }

    #[test]
    fn descriptor_colors_follow_side() {
        let (params, scores, table) = fixture();
        let spec = PlotSpec::scatter(ColorMode::DescriptorBinary(0));
        let svg = render(&spec, &MapInput { params: &params, scores: &scores, table: &table }).unwrap();
        let fills: Vec<&str> = svg
            .lines()
            .filter(|l| l.contains(r#"class="point""#))
            .map(|l| l.split("fill=\"").nth(1).unwrap().split('"').next().unwrap())
            .collect();
        // ψ₁ vs 2: 0 -> neg, 4 -> pos, 1 -> neg, 3 -> pos
        assert_eq!(fills, vec![NEGATIVE_COLOR, POSITIVE_COLOR, NEGATIVE_COLOR, POSITIVE_COLOR]);
    }

    #[test]
    fn proficiency_legend() {
        let (params, scores, table) = fixture();
        let spec = PlotSpec::scatter(ColorMode::ProficiencyBands);
        let svg = render(&spec, &MapInput { params: &params, scores: &scores, table: &table }).unwrap();
        let labels: Vec<&str> = svg
            .lines()
            .filter(|l| l.contains("legend-label"))
            .map(|l| l.split('>').nth(1).unwrap().split('<').next().unwrap())
            .collect();
        assert_eq!(labels, vec!["very critical", "critical", "intermediate", "adequate"]);
    }

    #[test]
    fn categorical_palette_and_missing() {
        let (params, scores, table) = fixture();
        let spec = PlotSpec::scatter(ColorMode::Categorical("shift".into()));
        let svg = render(&spec, &MapInput { params: &params, scores: &scores, table: &table }).unwrap();
        assert!(svg.contains(MISSING_COLOR));
        assert_eq!(svg.matches("legend-label").count(), 2);
        let spec = PlotSpec::scatter(ColorMode::Categorical("nope".into()));
        assert!(render(&spec, &MapInput { params: &params, scores: &scores, table: &table }).is_err());
    }

    #[test]
    fn loadings_mean_rule() {
        let (params, scores, table) = fixture();
        let svg = render(&PlotSpec::loadings(1), &MapInput { params: &params, scores: &scores, table: &table }).unwrap();
        assert!(svg.contains(r#"class="mean-rule" data-value="33.3333""#));
        assert!(svg.contains("stroke-dasharray"));
        assert_eq!(svg.matches(r#"class="bar""#).count(), 3);
    }

    #[test]
    fn scatter_requires_two_components() {
        let (mut params, scores, table) = fixture();
        params.u = params.u.columns(0, 1).into_owned();
        params.k = 1;
        let s = scores.columns(0, 1).into_owned();
        let spec = PlotSpec::scatter(ColorMode::ProficiencyBands);
        assert!(render(&spec, &MapInput { params: &params, scores: &s, table: &table }).is_err());
    }

    #[test]
    fn clip_cases() {
        assert_eq!(clip_line(1.0, 0.0, -2.0, (0.0, 4.0), (-1.0, 1.0)), Some(((2.0, -1.0), (2.0, 1.0))));
        assert_eq!(clip_line(1.0, 0.0, -9.0, (0.0, 4.0), (-1.0, 1.0)), None);
        assert_eq!(clip_line(0.0, 0.0, 1.0, (0.0, 4.0), (-1.0, 1.0)), None);
        let seg = clip_line(1.0, 1.0, 0.0, (-1.0, 1.0), (-1.0, 1.0)).unwrap();
        assert_eq!(seg, ((-1.0, 1.0), (1.0, -1.0)));
    }

    #[test]
    fn escapes_markup() {
        assert_eq!(escape("a<b & \"c\""), "a&lt;b &amp; &quot;c&quot;");
    }
}
