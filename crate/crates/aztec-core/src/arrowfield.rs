//! Arrow fields over a diamond carrier.
//!
//! Every cell of the order-`n+1` carrier holds one arrow along its node
//! diagonal, stored as a single "up" bit (true when the head is the
//! higher node corner). Fields are built from tilings two ways:
//!
//! * from a tiling of the carrier itself, each cell's head is the node
//!   corner it shares with its covering domino (exactly one qualifies);
//! * from a tiling of the inner order-`n` diamond, interior cells use the
//!   same rule and the uncovered boundary ring points at the node corner
//!   closer to the origin.
//!
//! Reversing every arrow is then a bitwise complement, which is what
//! makes the tiling recursion bookkeeping tractable.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Cell, NodeContext, Point, Region, RegionIndex};
use crate::tiling::{validate_tiling, Domino, Tiling, TilingError};

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("arrow fields are defined over aztec diamonds, got {0}")]
    NotAztec(Region),
    #[error("an outer tiling must cover a diamond of order >= 1")]
    OrderZeroOuter,
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error("{0} is not an interior node of the carrier")]
    NotInteriorNode(Point),
    #[error("invalid arrow pattern at node {node}")]
    InvalidPattern { node: Point },
    #[error("operation requires an outward field, got {0}")]
    NotOutward(FieldOrientation),
    #[error("expected {expected} arrow bits, got {got}")]
    BitLength { expected: usize, got: usize },
    #[error("arrow cell {0} lies outside the carrier")]
    ArrowOutsideCarrier(Cell),
    #[error("duplicate arrow for cell {0}")]
    DuplicateArrow(Cell),
    #[error("missing arrow for cell {0}")]
    MissingArrow(Cell),
    #[error("head {head} is not a node corner of cell {cell}")]
    HeadNotACorner { cell: Cell, head: Point },
    #[error("malformed field JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Local arrow pattern at an interior node, read from the four cells
/// around it. Six of the sixteen conceivable patterns fall in these
/// classes; the other ten are reported as errors, never classified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeClass {
    /// All four arrows head into the node.
    Attracting,
    /// All four arrows head away from the node.
    Repelling,
    /// Arrows pass through: on each diagonal exactly one cell heads in.
    Transient,
}

impl fmt::Display for NodeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeClass::Attracting => "attracting",
            NodeClass::Repelling => "repelling",
            NodeClass::Transient => "transient",
        })
    }
}

/// Interior-node class counts for one field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FieldCensus {
    pub attracting: u32,
    pub repelling: u32,
    pub transient: u32,
}

/// Which way the boundary-ring arrows point, relative to the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldOrientation {
    Outward,
    Inward,
    Mixed,
}

impl fmt::Display for FieldOrientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldOrientation::Outward => "outward",
            FieldOrientation::Inward => "inward",
            FieldOrientation::Mixed => "mixed",
        })
    }
}

/// Arrow-pair tallies along one SW-NE diagonal of cells (`y - x = offset`).
///
/// Reading the diagonal from SW to NE, `bf` counts adjacent cell pairs
/// whose arrows both point away from their shared node, and `fb` counts
/// pairs whose arrows both point into it. Summed over a valid field,
/// `bf` is the repelling-node count and `fb` the attracting one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LineBalance {
    pub offset: i64,
    pub bf: u32,
    pub fb: u32,
}

/// A diagonal arrow per cell of the order-`n+1` carrier diamond.
#[derive(Debug, Clone)]
pub struct ArrowField {
    ctx: NodeContext,
    index: RegionIndex,
    up: Vec<bool>,
}

impl PartialEq for ArrowField {
    fn eq(&self, other: &ArrowField) -> bool {
        self.ctx.inner_order() == other.ctx.inner_order() && self.up == other.up
    }
}

impl Eq for ArrowField {}

impl Hash for ArrowField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.inner_order().hash(state);
        self.up.hash(state);
    }
}

// Of the two node corners of a cell, exactly one is also a corner of any
// domino covering the cell; that corner is the arrow head.
fn head_from_domino(ctx: &NodeContext, cell: Cell, domino: &Domino) -> bool {
    let (lo, hi) = ctx.cell_node_corners(cell).expect("cell inside carrier");
    let corners = domino.corners();
    match (corners.contains(&hi), corners.contains(&lo)) {
        (true, false) => true,
        (false, true) => false,
        _ => unreachable!("exactly one node corner of a cell lies on its covering domino"),
    }
}

impl ArrowField {
    /// Field of a tiling of the carrier itself (diamond of order >= 1).
    pub fn from_outer_tiling(tiling: &Tiling) -> Result<ArrowField, FieldError> {
        let region = *tiling.region();
        let Region::AztecDiamond { order } = region else {
            return Err(FieldError::NotAztec(region));
        };
        if order == 0 {
            return Err(FieldError::OrderZeroOuter);
        }
        let ctx = NodeContext::new(order - 1);
        let owner = cover_map(&ctx, tiling)?;
        let index = ctx.outer().indexer();
        let up = (0..index.len())
            .map(|i| {
                let domino = owner[i].expect("outer tiling covers the whole carrier");
                head_from_domino(&ctx, index.cell_at(i), &domino)
            })
            .collect();
        Ok(ArrowField { ctx, index, up })
    }

    /// Field of a tiling of the inner diamond, extended over the carrier's
    /// uncovered boundary ring by pointing each ring cell at its node
    /// corner of smaller taxicab norm.
    pub fn from_inner_tiling(tiling: &Tiling) -> Result<ArrowField, FieldError> {
        let region = *tiling.region();
        let Region::AztecDiamond { order } = region else {
            return Err(FieldError::NotAztec(region));
        };
        let ctx = NodeContext::new(order);
        let owner = cover_map(&ctx, tiling)?;
        let index = ctx.outer().indexer();
        let up = (0..index.len())
            .map(|i| {
                let cell = index.cell_at(i);
                match owner[i] {
                    Some(domino) => head_from_domino(&ctx, cell, &domino),
                    None => {
                        debug_assert!(ctx.is_boundary_cell(cell));
                        let (lo, hi) = ctx.cell_node_corners(cell).expect("cell inside carrier");
                        match hi.taxicab().cmp(&lo.taxicab()) {
                            std::cmp::Ordering::Less => true,
                            std::cmp::Ordering::Greater => false,
                            std::cmp::Ordering::Equal => {
                                unreachable!("boundary node corners differ in taxicab norm")
                            }
                        }
                    }
                }
            })
            .collect();
        Ok(ArrowField { ctx, index, up })
    }

    /// Field from raw up bits in canonical cell order; mainly for
    /// exhaustive checks over all bit patterns.
    pub fn from_up_bits(inner_order: u32, up: Vec<bool>) -> Result<ArrowField, FieldError> {
        let ctx = NodeContext::new(inner_order);
        let index = ctx.outer().indexer();
        if up.len() != index.len() {
            return Err(FieldError::BitLength { expected: index.len(), got: up.len() });
        }
        Ok(ArrowField { ctx, index, up })
    }

    pub fn inner_order(&self) -> u32 {
        self.ctx.inner_order()
    }

    pub fn context(&self) -> &NodeContext {
        &self.ctx
    }

    /// The diamond the arrows live on (order `inner_order + 1`).
    pub fn carrier(&self) -> Region {
        self.ctx.outer()
    }

    pub fn up_bit(&self, cell: Cell) -> Option<bool> {
        self.index.index_of(cell).map(|i| self.up[i])
    }

    pub fn head(&self, cell: Cell) -> Option<Point> {
        let i = self.index.index_of(cell)?;
        let (lo, hi) = self.ctx.cell_node_corners(cell).expect("cell inside carrier");
        Some(if self.up[i] { hi } else { lo })
    }

    pub fn tail(&self, cell: Cell) -> Option<Point> {
        let i = self.index.index_of(cell)?;
        let (lo, hi) = self.ctx.cell_node_corners(cell).expect("cell inside carrier");
        Some(if self.up[i] { lo } else { hi })
    }

    /// Cells of the carrier in canonical order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.index.len()).map(|i| self.index.cell_at(i))
    }

    /// Every arrow reversed. An involution by construction: each arrow
    /// has exactly two possible positions on its diagonal.
    pub fn flip(&self) -> ArrowField {
        ArrowField {
            ctx: self.ctx,
            index: self.index.clone(),
            up: self.up.iter().map(|b| !b).collect(),
        }
    }

    /// Classifies the local pattern at an interior node of the carrier.
    pub fn classify(&self, node: Point) -> Result<NodeClass, FieldError> {
        if !self.ctx.is_interior_node(node) {
            return Err(FieldError::NotInteriorNode(node));
        }
        let [sw, se, nw, ne] = self
            .ctx
            .cells_around(node)
            .map(|cell| self.head(cell) == Some(node));
        if sw && se && nw && ne {
            Ok(NodeClass::Attracting)
        } else if !(sw || se || nw || ne) {
            Ok(NodeClass::Repelling)
        } else if (sw ^ ne) && (se ^ nw) {
            Ok(NodeClass::Transient)
        } else {
            Err(FieldError::InvalidPattern { node })
        }
    }

    /// Interior nodes whose local pattern is invalid; empty means the
    /// field satisfies the local condition everywhere. Fields built from
    /// tilings always validate; violations are possible only for
    /// hand-built bit fields, so they are returned as data.
    pub fn validate(&self) -> Vec<Point> {
        self.ctx
            .interior_nodes()
            .into_iter()
            .filter(|&node| {
                matches!(self.classify(node), Err(FieldError::InvalidPattern { .. }))
            })
            .collect()
    }

    /// Class counts over all interior nodes; errors on the first invalid
    /// pattern (possible only for hand-built bit fields).
    pub fn census(&self) -> Result<FieldCensus, FieldError> {
        let mut census = FieldCensus { attracting: 0, repelling: 0, transient: 0 };
        for node in self.ctx.interior_nodes() {
            match self.classify(node)? {
                NodeClass::Attracting => census.attracting += 1,
                NodeClass::Repelling => census.repelling += 1,
                NodeClass::Transient => census.transient += 1,
            }
        }
        Ok(census)
    }

    /// Reads the boundary ring: do its arrows head away from the origin,
    /// toward it, or some of each?
    pub fn orientation(&self) -> FieldOrientation {
        let mut outward = true;
        let mut inward = true;
        for cell in self.ctx.boundary_cells() {
            let head = self.head(cell).expect("boundary cell inside carrier").taxicab();
            let tail = self.tail(cell).expect("boundary cell inside carrier").taxicab();
            if head > tail {
                inward = false;
            } else {
                outward = false;
            }
        }
        match (outward, inward) {
            (true, false) => FieldOrientation::Outward,
            (false, true) => FieldOrientation::Inward,
            _ => FieldOrientation::Mixed,
        }
    }

    /// Pair tallies for each SW-NE diagonal of cells, ordered by offset;
    /// defined for outward fields, where each line tilts by exactly one.
    ///
    /// The carrier's cells whose diagonals point SW-NE lie on
    /// `inner_order + 1` lines `y - x = offset`, each holding
    /// `inner_order + 2` cells; interior nodes on the line sit between
    /// consecutive cells.
    pub fn line_balance(&self) -> Result<Vec<LineBalance>, FieldError> {
        let orientation = self.orientation();
        if orientation != FieldOrientation::Outward {
            return Err(FieldError::NotOutward(orientation));
        }
        let n = i64::from(self.ctx.inner_order());
        let carrier = self.carrier();
        let mut balances = Vec::new();
        let mut offset = -n;
        while offset <= n {
            let mut bits = Vec::new();
            for k in -(n + 2)..=(n + 2) {
                let cell = Cell::new(k, k + offset);
                if carrier.contains(cell) {
                    bits.push(self.up_bit(cell).expect("cell inside carrier"));
                }
            }
            debug_assert_eq!(bits.len() as i64, n + 2);
            let mut balance = LineBalance { offset, bf: 0, fb: 0 };
            for pair in bits.windows(2) {
                match (pair[0], pair[1]) {
                    (false, true) => balance.bf += 1,
                    (true, false) => balance.fb += 1,
                    _ => {}
                }
            }
            balances.push(balance);
            offset += 2;
        }
        Ok(balances)
    }

    /// Compact canonical JSON: cells in canonical order, heads explicit.
    pub fn to_json(&self) -> String {
        let arrows = (0..self.index.len())
            .map(|i| {
                let cell = self.index.cell_at(i);
                let head = self.head(cell).expect("cell inside carrier");
                ArrowJson { x: cell.x, y: cell.y, hx: head.x, hy: head.y }
            })
            .collect();
        serde_json::to_string(&FieldJson { inner_order: self.ctx.inner_order(), arrows })
            .expect("field serialization")
    }

    pub fn from_json(text: &str) -> Result<ArrowField, FieldError> {
        let dto: FieldJson = serde_json::from_str(text)?;
        let ctx = NodeContext::new(dto.inner_order);
        let index = ctx.outer().indexer();
        let mut up: Vec<Option<bool>> = vec![None; index.len()];
        for arrow in &dto.arrows {
            let cell = Cell::new(arrow.x, arrow.y);
            let Some(i) = index.index_of(cell) else {
                return Err(FieldError::ArrowOutsideCarrier(cell));
            };
            if up[i].is_some() {
                return Err(FieldError::DuplicateArrow(cell));
            }
            let head = Point::new(arrow.hx, arrow.hy);
            let (lo, hi) = ctx.cell_node_corners(cell).expect("cell inside carrier");
            up[i] = Some(if head == hi {
                true
            } else if head == lo {
                false
            } else {
                return Err(FieldError::HeadNotACorner { cell, head });
            });
        }
        let up = up
            .into_iter()
            .enumerate()
            .map(|(i, bit)| bit.ok_or(FieldError::MissingArrow(index.cell_at(i))))
            .collect::<Result<Vec<bool>, FieldError>>()?;
        Ok(ArrowField { ctx, index, up })
    }
}

fn cover_map(ctx: &NodeContext, tiling: &Tiling) -> Result<Vec<Option<Domino>>, FieldError> {
    let violations = validate_tiling(tiling);
    if !violations.is_empty() {
        return Err(TilingError::InvalidTiling(violations).into());
    }
    let index = ctx.outer().indexer();
    let mut owner = vec![None; index.len()];
    for domino in tiling.dominoes() {
        for cell in domino.cells() {
            let i = index.index_of(cell).expect("tiled cell inside carrier");
            owner[i] = Some(*domino);
        }
    }
    Ok(owner)
}

// ---------------------------------------------------------------------------
// JSON wire format
//
// { "inner_order": N,
//   "arrows": [ {"x":K, "y":L, "hx":X, "hy":Y}, ... ] }

#[derive(Serialize, Deserialize)]
struct FieldJson {
    inner_order: u32,
    arrows: Vec<ArrowJson>,
}

#[derive(Serialize, Deserialize)]
struct ArrowJson {
    x: i64,
    y: i64,
    hx: i64,
    hy: i64,
}
