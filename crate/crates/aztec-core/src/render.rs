//! Deterministic SVG pictures of tilings and arrow fields.
//!
//! Output is a pure function of the input and options: fixed palette,
//! two-decimal coordinates, no timestamps, so golden files diff cleanly.
//! The y axis is flipped into screen coordinates to keep figures in the
//! usual mathematical orientation.
//!
//! Palette: horizontal dominoes `#e63946` / `#f4a261` and vertical ones
//! `#457b9d` / `#2a9d8f`, split by the checkerboard parity of the
//! domino's lower-left cell; monochrome fill `#f1faee`; ink `#1d3557`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::arrowfield::ArrowField;
use crate::bijection::bold_edges;
use crate::geometry::{NodeContext, Point, Region};
use crate::tiling::{validate_tiling, Orientation, Tiling, TilingError};

const INK: &str = "#1d3557";
const PLAIN_FILL: &str = "#f1faee";
const CELL_FILL: &str = "#f8f9fa";
const GRID: &str = "#ced4da";
const CLASS_FILLS: [(&str, &str); 4] = [
    ("h0", "#e63946"),
    ("h1", "#f4a261"),
    ("v0", "#457b9d"),
    ("v1", "#2a9d8f"),
];

#[derive(Debug, Error)]
pub enum RenderError {
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error("field has invalid patterns at {} node(s)", .0.len())]
    InvalidField(Vec<Point>),
    #[error("arrow and bold-edge overlays need a diamond tiling of positive order, got {0}")]
    OverlayUnavailable(Region),
}

/// Knobs for both renderers; the output depends on nothing else.
#[derive(Debug, Clone, Copy)]
pub struct RenderOptions {
    /// Pixels per lattice unit.
    pub cell_px: u32,
    /// Overlay the tiling's arrows (for tilings: those of its own field).
    pub show_arrows: bool,
    /// Dots on the node-parity lattice points.
    pub show_nodes: bool,
    /// Overlay the bold edges incident to the arrow heads.
    pub show_bold_edges: bool,
    /// Four-color dominoes by orientation and anchor-cell parity; plain
    /// fill otherwise.
    pub color_classes: bool,
}

impl Default for RenderOptions {
    fn default() -> RenderOptions {
        RenderOptions {
            cell_px: 24,
            show_arrows: false,
            show_nodes: false,
            show_bold_edges: false,
            color_classes: true,
        }
    }
}

// Lattice-to-pixel mapping with a half-cell margin and flipped y.
struct Canvas {
    cell: f64,
    x_lo: i64,
    y_hi: i64,
    width: f64,
    height: f64,
}

impl Canvas {
    fn new(region: &Region, cell_px: u32) -> Canvas {
        let rows = region.rows();
        let cell = f64::from(cell_px);
        let (x_lo, x_hi, y_lo, y_hi) = if rows.is_empty() {
            (0, 1, 0, 1)
        } else {
            (
                rows.iter().map(|r| r.x_min).min().unwrap(),
                rows.iter().map(|r| r.x_max).max().unwrap() + 1,
                rows.first().unwrap().y,
                rows.last().unwrap().y + 1,
            )
        };
        Canvas {
            cell,
            x_lo,
            y_hi,
            width: (x_hi - x_lo) as f64 * cell + cell,
            height: (y_hi - y_lo) as f64 * cell + cell,
        }
    }

    fn x(&self, x: f64) -> f64 {
        (x - self.x_lo as f64) * self.cell + self.cell / 2.0
    }

    fn y(&self, y: f64) -> f64 {
        (self.y_hi as f64 - y) * self.cell + self.cell / 2.0
    }
}

fn open_document(svg: &mut String, canvas: &Canvas) {
    let _ = write!(
        svg,
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.2}\" height=\"{h:.2}\" \
         viewBox=\"0 0 {w:.2} {h:.2}\">\n\
         <rect class=\"bg\" x=\"0\" y=\"0\" width=\"{w:.2}\" height=\"{h:.2}\" fill=\"#ffffff\"/>\n",
        w = canvas.width,
        h = canvas.height,
    );
}

fn segment_path(svg: &mut String, canvas: &Canvas, class: &str, width: f64, segments: &[(Point, Point)]) {
    if segments.is_empty() {
        return;
    }
    let mut d = String::new();
    for (p, q) in segments {
        let _ = write!(
            d,
            "M{:.2} {:.2}L{:.2} {:.2}",
            canvas.x(p.x as f64),
            canvas.y(p.y as f64),
            canvas.x(q.x as f64),
            canvas.y(q.y as f64),
        );
    }
    let _ = writeln!(
        svg,
        "<path class=\"{class}\" d=\"{d}\" fill=\"none\" stroke=\"{INK}\" \
         stroke-width=\"{width:.2}\" stroke-linecap=\"square\"/>",
    );
}

fn outline(svg: &mut String, canvas: &Canvas, region: &Region) {
    let mut segments = region.boundary_segments();
    segments.sort_by_key(|(p, q)| (p.y, p.x, q.y, q.x));
    segment_path(svg, canvas, "outline", canvas.cell * 0.08, &segments);
}

fn bold_overlay(svg: &mut String, canvas: &Canvas, field: &ArrowField) {
    let segments: Vec<(Point, Point)> =
        bold_edges(field).iter().map(|e| e.endpoints()).collect();
    segment_path(svg, canvas, "bold", canvas.cell * 0.14, &segments);
}

fn arrows(svg: &mut String, canvas: &Canvas, field: &ArrowField) {
    for cell in field.cells() {
        let tail = field.tail(cell).expect("carrier cell");
        let head = field.head(cell).expect("carrier cell");
        let (tx, ty) = (tail.x as f64, tail.y as f64);
        let (dx, dy) = (head.x as f64 - tx, head.y as f64 - ty);
        // shaft from 18% to 72% of the diagonal, solid head past it
        let _ = writeln!(
            svg,
            "<line class=\"arrow\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" \
             stroke=\"{INK}\" stroke-width=\"{:.2}\" stroke-linecap=\"round\"/>",
            canvas.x(tx + 0.18 * dx),
            canvas.y(ty + 0.18 * dy),
            canvas.x(tx + 0.72 * dx),
            canvas.y(ty + 0.72 * dy),
            canvas.cell * 0.07,
        );
        let tip = (tx + 0.92 * dx, ty + 0.92 * dy);
        let base = (tx + 0.66 * dx, ty + 0.66 * dy);
        // perpendicular of the diagonal direction, scaled for the barbs
        let (px, py) = (-dy * 0.10, dx * 0.10);
        let _ = writeln!(
            svg,
            "<polygon class=\"arrowhead\" points=\"{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}\" \
             fill=\"{INK}\"/>",
            canvas.x(tip.0),
            canvas.y(tip.1),
            canvas.x(base.0 + px),
            canvas.y(base.1 + py),
            canvas.x(base.0 - px),
            canvas.y(base.1 - py),
        );
    }
}

fn node_dots(svg: &mut String, canvas: &Canvas, region: &Region, parity: i64) {
    let mut nodes: Vec<Point> = Vec::new();
    for cell in region.cells() {
        for corner in cell.corners() {
            if (corner.x + corner.y).rem_euclid(2) == parity {
                nodes.push(corner);
            }
        }
    }
    nodes.sort_by_key(|p| (p.y, p.x));
    nodes.dedup();
    for node in nodes {
        let _ = writeln!(
            svg,
            "<circle class=\"node\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"{:.2}\" fill=\"{INK}\"/>",
            canvas.x(node.x as f64),
            canvas.y(node.y as f64),
            canvas.cell * 0.09,
        );
    }
}

fn domino_class(domino: &crate::tiling::Domino) -> &'static str {
    let parity = (domino.cell.x + domino.cell.y).rem_euclid(2);
    match (domino.orientation, parity) {
        (Orientation::Horizontal, 0) => "h0",
        (Orientation::Horizontal, _) => "h1",
        (Orientation::Vertical, 0) => "v0",
        (Orientation::Vertical, _) => "v1",
    }
}

fn fill_for(class: &str) -> &'static str {
    CLASS_FILLS
        .iter()
        .find(|(c, _)| *c == class)
        .map(|(_, fill)| *fill)
        .expect("known class")
}

/// Draws a validated tiling: one rectangle per domino over the region
/// outline, with optional node dots and (for diamonds of positive order)
/// arrow and bold-edge overlays from the tiling's own field.
pub fn render_tiling(tiling: &Tiling, options: &RenderOptions) -> Result<String, RenderError> {
    let violations = validate_tiling(tiling);
    if !violations.is_empty() {
        return Err(TilingError::InvalidTiling(violations).into());
    }
    let region = *tiling.region();
    let field = if options.show_arrows || options.show_bold_edges {
        match region {
            Region::AztecDiamond { order } if order >= 1 => Some(
                ArrowField::from_outer_tiling(tiling).expect("validated diamond tiling"),
            ),
            _ => return Err(RenderError::OverlayUnavailable(region)),
        }
    } else {
        None
    };

    let canvas = Canvas::new(&region, options.cell_px);
    let mut svg = String::new();
    open_document(&mut svg, &canvas);
    for domino in tiling.dominoes() {
        let class = domino_class(domino);
        let fill = if options.color_classes { fill_for(class) } else { PLAIN_FILL };
        let (w, h) = match domino.orientation {
            Orientation::Horizontal => (2.0, 1.0),
            Orientation::Vertical => (1.0, 2.0),
        };
        let _ = writeln!(
            svg,
            "<rect class=\"domino {class}\" x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" \
             height=\"{:.2}\" fill=\"{fill}\" stroke=\"{INK}\" stroke-width=\"{:.2}\"/>",
            canvas.x(domino.cell.x as f64),
            canvas.y(domino.cell.y as f64 + h),
            w * canvas.cell,
            h * canvas.cell,
            canvas.cell * 0.06,
        );
    }
    outline(&mut svg, &canvas, &region);
    if let Some(field) = &field {
        if options.show_bold_edges {
            bold_overlay(&mut svg, &canvas, field);
        }
        if options.show_arrows {
            arrows(&mut svg, &canvas, field);
        }
    }
    if options.show_nodes {
        if let Region::AztecDiamond { order } = region {
            if order >= 1 {
                node_dots(&mut svg, &canvas, &region, i64::from((order - 1) % 2));
            }
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Draws a validated field: the carrier's cells, one arrow per cell, and
/// optional bold-edge and node overlays.
pub fn render_field(field: &ArrowField, options: &RenderOptions) -> Result<String, RenderError> {
    let invalid = field.validate();
    if !invalid.is_empty() {
        return Err(RenderError::InvalidField(invalid));
    }
    let carrier = field.carrier();
    let canvas = Canvas::new(&carrier, options.cell_px);
    let mut svg = String::new();
    open_document(&mut svg, &canvas);
    for cell in field.cells() {
        let _ = writeln!(
            svg,
            "<rect class=\"cell\" x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" \
             fill=\"{CELL_FILL}\" stroke=\"{GRID}\" stroke-width=\"{:.2}\"/>",
            canvas.x(cell.x as f64),
            canvas.y(cell.y as f64 + 1.0),
            canvas.cell,
            canvas.cell,
            canvas.cell * 0.03,
        );
    }
    outline(&mut svg, &canvas, &carrier);
    if options.show_bold_edges {
        bold_overlay(&mut svg, &canvas, field);
    }
    arrows(&mut svg, &canvas, field);
    if options.show_nodes {
        let ctx: &NodeContext = field.context();
        node_dots(&mut svg, &canvas, &carrier, ctx.parity());
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
