//! Integer-lattice vocabulary: points, cells, regions, and the node
//! structure of a nested pair of Aztec diamonds.
//!
//! Cells are named by their lower-left corner. The Aztec diamond of order
//! `n` is stored implicitly through the membership test
//! `|2k+1| + |2l+1| <= 2n`, which is an integer-only reformulation of
//! "the unit square at (k,l) meets the open square |x|+|y| < n".
//! Cell enumeration order is row-major by `(y, x)` everywhere; every
//! algorithm in the crate that promises determinism leans on that order.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("cell {0} lies outside the region")]
    CellOutsideRegion(Cell),
}

/// A lattice point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    /// Taxicab distance from the origin.
    pub fn taxicab(&self) -> i64 {
        self.x.abs() + self.y.abs()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A unit lattice square, identified by its lower-left corner `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub const fn new(x: i64, y: i64) -> Self {
        Cell { x, y }
    }

    pub fn corner(&self) -> Point {
        Point::new(self.x, self.y)
    }

    /// The four corners, lower-left first, row-major.
    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.x, self.y),
            Point::new(self.x + 1, self.y),
            Point::new(self.x, self.y + 1),
            Point::new(self.x + 1, self.y + 1),
        ]
    }

    pub fn shifted(&self, dx: i64, dy: i64) -> Cell {
        Cell::new(self.x + dx, self.y + dy)
    }

    /// Canonical (row-major) sort key.
    pub fn key(&self) -> (i64, i64) {
        (self.y, self.x)
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A finite cell region: an Aztec diamond or an axis-aligned rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// The Aztec diamond of the given order, centered at (-1/2, -1/2).
    AztecDiamond { order: u32 },
    /// A `width × height` rectangle with lower-left cell at the origin.
    Rectangle { width: u32, height: u32 },
}

/// Horizontal extent of one row of a region: cells `(x, y)` with
/// `x_min <= x <= x_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowExtent {
    pub y: i64,
    pub x_min: i64,
    pub x_max: i64,
}

impl Region {
    pub fn aztec(order: u32) -> Region {
        Region::AztecDiamond { order }
    }

    pub fn rectangle(width: u32, height: u32) -> Region {
        Region::Rectangle { width, height }
    }

    pub fn contains(&self, cell: Cell) -> bool {
        match *self {
            Region::AztecDiamond { order } => {
                let n = i64::from(order);
                (2 * cell.x + 1).abs() + (2 * cell.y + 1).abs() <= 2 * n
            }
            Region::Rectangle { width, height } => {
                (0..i64::from(width)).contains(&cell.x) && (0..i64::from(height)).contains(&cell.y)
            }
        }
    }

    /// Non-empty rows in ascending `y` order.
    pub fn rows(&self) -> Vec<RowExtent> {
        match *self {
            Region::AztecDiamond { order } => {
                let n = i64::from(order);
                (-n..n)
                    .map(|y| {
                        // |2x+1| <= 2n - |2y+1|, an odd bound b >= 1
                        let b = 2 * n - (2 * y + 1).abs();
                        RowExtent { y, x_min: (-b - 1) / 2, x_max: (b - 1) / 2 }
                    })
                    .collect()
            }
            Region::Rectangle { width, height } => {
                if width == 0 {
                    return Vec::new();
                }
                (0..i64::from(height))
                    .map(|y| RowExtent { y, x_min: 0, x_max: i64::from(width) - 1 })
                    .collect()
            }
        }
    }

    /// Number of cells: `2n(n+1)` for a diamond, `w·h` for a rectangle.
    pub fn cell_count(&self) -> u64 {
        match *self {
            Region::AztecDiamond { order } => {
                let n = u64::from(order);
                2 * n * (n + 1)
            }
            Region::Rectangle { width, height } => u64::from(width) * u64::from(height),
        }
    }

    /// All cells in canonical row-major `(y, x)` order.
    pub fn cells(&self) -> Vec<Cell> {
        self.rows()
            .iter()
            .flat_map(|r| (r.x_min..=r.x_max).map(move |x| Cell::new(x, r.y)))
            .collect()
    }

    pub fn indexer(&self) -> RegionIndex {
        RegionIndex::new(self)
    }

    /// Unit boundary segments (sides between a cell of the region and the
    /// outside), each with its lexicographically smaller endpoint first,
    /// sorted. Used by the renderer and by bold-edge checks.
    pub fn boundary_segments(&self) -> Vec<(Point, Point)> {
        let mut segs = Vec::new();
        for cell in self.cells() {
            let [bl, br, tl, tr] = cell.corners();
            let sides = [
                (cell.shifted(0, -1), bl, br), // bottom
                (cell.shifted(-1, 0), bl, tl), // left
                (cell.shifted(1, 0), br, tr),  // right
                (cell.shifted(0, 1), tl, tr),  // top
            ];
            for (neighbor, a, b) in sides {
                if !self.contains(neighbor) {
                    segs.push(if a <= b { (a, b) } else { (b, a) });
                }
            }
        }
        segs.sort();
        segs
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Region::AztecDiamond { order } => write!(f, "aztec diamond of order {order}"),
            Region::Rectangle { width, height } => write!(f, "{width}x{height} rectangle"),
        }
    }
}

/// Constant-time mapping between cells of a region and their position in
/// the canonical row-major order.
#[derive(Debug, Clone)]
pub struct RegionIndex {
    region: Region,
    rows: Vec<RowExtent>,
    offsets: Vec<usize>,
    y_min: i64,
    len: usize,
}

impl RegionIndex {
    pub fn new(region: &Region) -> RegionIndex {
        let rows = region.rows();
        let y_min = rows.first().map_or(0, |r| r.y);
        let mut offsets = Vec::with_capacity(rows.len());
        let mut len = 0usize;
        for r in &rows {
            offsets.push(len);
            len += (r.x_max - r.x_min + 1) as usize;
        }
        RegionIndex { region: *region, rows, offsets, y_min, len }
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn index_of(&self, cell: Cell) -> Option<usize> {
        let row_idx = usize::try_from(cell.y - self.y_min).ok()?;
        let row = self.rows.get(row_idx)?;
        if cell.x < row.x_min || cell.x > row.x_max {
            return None;
        }
        Some(self.offsets[row_idx] + (cell.x - row.x_min) as usize)
    }

    pub fn cell_at(&self, index: usize) -> Cell {
        debug_assert!(index < self.len);
        let row_idx = match self.offsets.binary_search(&index) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let row = &self.rows[row_idx];
        Cell::new(row.x_min + (index - self.offsets[row_idx]) as i64, row.y)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.rows
            .iter()
            .flat_map(|r| (r.x_min..=r.x_max).map(move |x| Cell::new(x, r.y)))
    }
}

/// The node structure of the pair `A_n ⊂ A_{n+1}`, for a fixed inner
/// order `n`. A node is a lattice point of `A_{n+1}` whose coordinate sum
/// is congruent to `n` mod 2; every cell of `A_{n+1}` has exactly one
/// diagonal pair of node corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeContext {
    inner_order: u32,
}

impl NodeContext {
    pub fn new(inner_order: u32) -> NodeContext {
        NodeContext { inner_order }
    }

    pub fn inner_order(&self) -> u32 {
        self.inner_order
    }

    /// `n mod 2`: the coordinate-sum parity that makes a lattice point a node.
    pub fn parity(&self) -> i64 {
        i64::from(self.inner_order) % 2
    }

    pub fn inner(&self) -> Region {
        Region::aztec(self.inner_order)
    }

    pub fn outer(&self) -> Region {
        Region::aztec(self.inner_order + 1)
    }

    /// Point-set membership of a lattice point in `A_{n+1}`: true iff the
    /// point is a corner of some cell of the diamond.
    pub fn point_in_outer(&self, p: Point) -> bool {
        let outer = self.outer();
        self.cells_around(p).into_iter().any(|c| outer.contains(c))
    }

    /// The four cells having `p` as a corner, in canonical order.
    pub fn cells_around(&self, p: Point) -> [Cell; 4] {
        [
            Cell::new(p.x - 1, p.y - 1),
            Cell::new(p.x, p.y - 1),
            Cell::new(p.x - 1, p.y),
            Cell::new(p.x, p.y),
        ]
    }

    pub fn is_node(&self, p: Point) -> bool {
        self.point_in_outer(p) && (p.x + p.y).rem_euclid(2) == self.parity()
    }

    /// A node all four of whose adjacent cells lie in `A_{n+1}`.
    pub fn is_interior_node(&self, p: Point) -> bool {
        if (p.x + p.y).rem_euclid(2) != self.parity() {
            return false;
        }
        let outer = self.outer();
        self.cells_around(p).into_iter().all(|c| outer.contains(c))
    }

    /// All interior nodes, sorted by `(y, x)`. There are `(n+1)²` of them.
    pub fn interior_nodes(&self) -> Vec<Point> {
        let m = i64::from(self.inner_order) + 1;
        let mut nodes = Vec::new();
        for y in -m..=m {
            for x in -m..=m {
                let p = Point::new(x, y);
                if self.is_interior_node(p) {
                    nodes.push(p);
                }
            }
        }
        nodes
    }

    /// Cells of `A_{n+1}` not in `A_n`, in canonical order; `4(n+1)` cells.
    pub fn boundary_cells(&self) -> Vec<Cell> {
        let inner = self.inner();
        self.outer()
            .cells()
            .into_iter()
            .filter(|c| !inner.contains(*c))
            .collect()
    }

    pub fn is_boundary_cell(&self, cell: Cell) -> bool {
        self.outer().contains(cell) && !self.inner().contains(cell)
    }

    /// The diagonal pair of node corners of a cell of `A_{n+1}`, lower
    /// endpoint first.
    ///
    /// Cells whose corner sum matches the node parity carry their nodes on
    /// the SW–NE diagonal, the others on the SE–NW diagonal.
    pub fn cell_node_corners(&self, cell: Cell) -> Result<(Point, Point), GeometryError> {
        if !self.outer().contains(cell) {
            return Err(GeometryError::CellOutsideRegion(cell));
        }
        Ok(if (cell.x + cell.y).rem_euclid(2) == self.parity() {
            (Point::new(cell.x, cell.y), Point::new(cell.x + 1, cell.y + 1))
        } else {
            (Point::new(cell.x + 1, cell.y), Point::new(cell.x, cell.y + 1))
        })
    }
}
