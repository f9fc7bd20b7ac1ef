//! SVG and TikZ drawings of benzenoids, one pointy-top hexagon per cell.
//!
//! Cell `(q, r)` is centred at `(√3·(q + r/2), 1.5·r)` edge lengths, with y
//! pointing up. Coordinates are printed with three decimals so that equal
//! inputs give byte-identical documents.

use std::fmt::Write as _;

use thiserror::Error;

use crate::lattice::{Benzenoid, CellSet, HexCell};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("edge length must be a positive finite number, got {0}")]
    BadEdgeLength(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    edge_length: f64,
    pub label_cells: bool,
    pub stroke: String,
    pub fill: String,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            edge_length: 30.0,
            label_cells: false,
            stroke: "black".into(),
            fill: "none".into(),
        }
    }
}

impl RenderOptions {
    pub fn edge_length(&self) -> f64 {
        self.edge_length
    }

    pub fn with_edge_length(mut self, edge_length: f64) -> Result<Self, RenderError> {
        if !(edge_length.is_finite() && edge_length > 0.0) {
            return Err(RenderError::BadEdgeLength(edge_length));
        }
        self.edge_length = edge_length;
        Ok(self)
    }
}

fn center(cell: HexCell, size: f64) -> (f64, f64) {
    let (q, r) = (f64::from(cell.q), f64::from(cell.r));
    (3f64.sqrt() * (q + r / 2.0) * size, 1.5 * r * size)
}

fn corners(cell: HexCell, size: f64) -> [(f64, f64); 6] {
    let (cx, cy) = center(cell, size);
    std::array::from_fn(|k| {
        let angle = (30.0 + 60.0 * k as f64).to_radians();
        (cx + size * angle.cos(), cy + size * angle.sin())
    })
}

type Point = (f64, f64);

/// Drawing in y-up coordinates, shifted so the margin starts at the origin.
struct Layout {
    /// Cell, its corners and its center.
    hexagons: Vec<(HexCell, [Point; 6], Point)>,
    width: f64,
    height: f64,
}

fn layout(cells: &CellSet, size: f64) -> Layout {
    let raw: Vec<_> = cells.iter().map(|&c| (c, corners(c, size), center(c, size))).collect();
    let points = || raw.iter().flat_map(|(_, pts, _)| pts.iter());
    let min_x = points().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let max_x = points().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let min_y = points().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let max_y = points().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let shift = |(x, y): (f64, f64)| (x - min_x + size, y - min_y + size);
    Layout {
        hexagons: raw
            .iter()
            .map(|&(c, pts, mid)| (c, pts.map(shift), shift(mid)))
            .collect(),
        width: max_x - min_x + 2.0 * size,
        height: max_y - min_y + 2.0 * size,
    }
}

fn escape_xml(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('"', "&quot;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn to_svg(b: &Benzenoid, opts: &RenderOptions) -> String {
    cells_to_svg(&b.cells, opts)
}

/// SVG 1.1 document. Screen y grows downwards, so the drawing is flipped.
pub fn cells_to_svg(cells: &CellSet, opts: &RenderOptions) -> String {
    let size = opts.edge_length;
    let lay = layout(cells, size);
    let flip = |(x, y): (f64, f64)| (x, lay.height - y);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.3}\" height=\"{h:.3}\" viewBox=\"0 0 {w:.3} {h:.3}\">",
        w = lay.width,
        h = lay.height
    );
    let _ = writeln!(
        out,
        "<g fill=\"{}\" stroke=\"{}\" stroke-width=\"{:.3}\" stroke-linejoin=\"round\">",
        escape_xml(&opts.fill),
        escape_xml(&opts.stroke),
        size / 15.0
    );
    for (_, pts, _) in &lay.hexagons {
        out.push_str("<path d=\"");
        for (k, &p) in pts.iter().enumerate() {
            let (x, y) = flip(p);
            let _ = write!(out, "{}{x:.3} {y:.3} ", if k == 0 { "M" } else { "L" });
        }
        out.push_str("Z\"/>\n");
    }
    out.push_str("</g>\n");
    if opts.label_cells {
        let _ = writeln!(
            out,
            "<g font-family=\"sans-serif\" font-size=\"{:.3}\" text-anchor=\"middle\" dominant-baseline=\"central\" fill=\"{}\">",
            size / 2.5,
            escape_xml(&opts.stroke)
        );
        for (cell, _, mid) in &lay.hexagons {
            let (x, y) = flip(*mid);
            let _ = writeln!(out, "<text x=\"{x:.3}\" y=\"{y:.3}\">{},{}</text>", cell.q, cell.r);
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

pub fn to_tikz(b: &Benzenoid, opts: &RenderOptions) -> String {
    cells_to_tikz(&b.cells, opts)
}

/// A `scope` for use inside a `tikzpicture`, coordinates in points.
pub fn cells_to_tikz(cells: &CellSet, opts: &RenderOptions) -> String {
    let lay = layout(cells, opts.edge_length);
    let mut style = format!("draw={}", opts.stroke);
    if opts.fill != "none" {
        let _ = write!(style, ", fill={}", opts.fill);
    }
    let mut out = String::from("\\begin{scope}[x=1pt, y=1pt]\n");
    for (_, pts, _) in &lay.hexagons {
        let _ = write!(out, "\\draw[{style}]");
        for (x, y) in pts {
            let _ = write!(out, " ({x:.3},{y:.3}) --");
        }
        out.push_str(" cycle;\n");
    }
    if opts.label_cells {
        for (cell, _, (x, y)) in &lay.hexagons {
            let _ = writeln!(out, "\\node at ({x:.3},{y:.3}) {{\\tiny ${},{}$}};", cell.q, cell.r);
        }
    }
    out.push_str("\\end{scope}\n");
    out
}
