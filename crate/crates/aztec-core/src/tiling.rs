//! Dominoes and tilings: validation, exhaustive enumeration, exact
//! counting, the horizontal-domino histogram, and closed-form oracles.
//!
//! Counting is done by a broken-profile dynamic program: cells are swept
//! in canonical row-major order and partial tilings are keyed by a binary
//! occupancy word for the frontier, so the count is exact for any region
//! the crate models. Enumeration is plain backtracking over the first
//! uncovered cell, horizontal branch before vertical, which fixes a
//! deterministic order that tests can index into.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Cell, Region, RegionIndex};
use crate::sampler::{sample_uniform, SampleSpec};

/// Exact non-negative tiling count.
pub type BigCount = BigUint;

/// Largest diamond order accepted by exhaustive-enumeration entry points
/// (`2^21` tilings at order 6).
pub const ENUMERATION_GUARD: u32 = 6;

#[derive(Debug, Error)]
pub enum TilingError {
    #[error("enumeration is limited to aztec orders <= {guard} (requested {order})")]
    EnumerationGuard { order: u32, guard: u32 },
    #[error("the square-grid product formula needs an even order (got {0})")]
    OddKasteleynOrder(u32),
    #[error("tiling of {region} has an odd horizontal-domino count {count}")]
    OddHorizontalCount { region: Region, count: u64 },
    #[error("invalid tiling: {}", format_violations(.0))]
    InvalidTiling(Vec<Violation>),
    #[error("malformed tiling JSON: {0}")]
    Json(#[from] serde_json::Error),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(Violation::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// A 1×2 or 2×1 domino, named by its lower-left cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Domino {
    pub cell: Cell,
    pub orientation: Orientation,
}

impl Domino {
    pub fn horizontal(x: i64, y: i64) -> Domino {
        Domino { cell: Cell::new(x, y), orientation: Orientation::Horizontal }
    }

    pub fn vertical(x: i64, y: i64) -> Domino {
        Domino { cell: Cell::new(x, y), orientation: Orientation::Vertical }
    }

    pub fn cells(&self) -> [Cell; 2] {
        match self.orientation {
            Orientation::Horizontal => [self.cell, self.cell.shifted(1, 0)],
            Orientation::Vertical => [self.cell, self.cell.shifted(0, 1)],
        }
    }

    /// The four lattice corners of the covered rectangle.
    pub fn corners(&self) -> [crate::geometry::Point; 4] {
        let (w, h) = match self.orientation {
            Orientation::Horizontal => (2, 1),
            Orientation::Vertical => (1, 2),
        };
        let c = self.cell.corner();
        [
            c,
            crate::geometry::Point::new(c.x + w, c.y),
            crate::geometry::Point::new(c.x, c.y + h),
            crate::geometry::Point::new(c.x + w, c.y + h),
        ]
    }
}

impl fmt::Display for Domino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = match self.orientation {
            Orientation::Horizontal => 'h',
            Orientation::Vertical => 'v',
        };
        write!(f, "{}{}", self.cell, o)
    }
}

/// A set of dominoes covering a region. The domino list is kept sorted by
/// `(y, x)`, so equality and hashing are canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tiling {
    region: Region,
    dominoes: Vec<Domino>,
}

impl Tiling {
    pub fn new(region: Region, mut dominoes: Vec<Domino>) -> Tiling {
        dominoes.sort();
        Tiling { region, dominoes }
    }

    pub fn empty(region: Region) -> Tiling {
        Tiling { region, dominoes: Vec::new() }
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn dominoes(&self) -> &[Domino] {
        &self.dominoes
    }

    pub fn horizontal_domino_count(&self) -> u64 {
        self.dominoes
            .iter()
            .filter(|d| d.orientation == Orientation::Horizontal)
            .count() as u64
    }

    pub fn is_valid(&self) -> bool {
        validate_tiling(self).is_empty()
    }

    /// Compact canonical JSON, stable byte-for-byte for equal tilings.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&TilingJson::from(self)).expect("tiling serialization")
    }

    pub fn from_json(text: &str) -> Result<Tiling, TilingError> {
        let dto: TilingJson = serde_json::from_str(text)?;
        Ok(dto.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    Uncovered(Cell),
    DoublyCovered(Cell),
    OutsideRegion(Cell),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Uncovered(c) => write!(f, "cell {c} is uncovered"),
            Violation::DoublyCovered(c) => write!(f, "cell {c} is covered more than once"),
            Violation::OutsideRegion(c) => write!(f, "cell {c} lies outside the region"),
        }
    }
}

/// Checks the exact-cover invariants. An empty result means the tiling is
/// valid; violations are data, not faults.
pub fn validate_tiling(tiling: &Tiling) -> Vec<Violation> {
    let index = tiling.region().indexer();
    let mut cover = vec![0u8; index.len()];
    let mut violations = Vec::new();
    for domino in tiling.dominoes() {
        for cell in domino.cells() {
            match index.index_of(cell) {
                Some(i) => cover[i] = cover[i].saturating_add(1),
                None => violations.push(Violation::OutsideRegion(cell)),
            }
        }
    }
    for (i, &count) in cover.iter().enumerate() {
        match count {
            0 => violations.push(Violation::Uncovered(index.cell_at(i))),
            1 => {}
            _ => violations.push(Violation::DoublyCovered(index.cell_at(i))),
        }
    }
    violations
}

/// Lazily enumerates every tiling of a region exactly once.
///
/// Backtracks on the first uncovered cell in canonical order, horizontal
/// branch before vertical. Regions with an odd cell count yield nothing;
/// the empty region yields exactly the empty tiling.
pub fn enumerate_tilings(region: &Region) -> TilingIter {
    TilingIter::new(region)
}

pub struct TilingIter {
    region: Region,
    index: RegionIndex,
    covered: Vec<bool>,
    // (placed domino, branch taken at its anchor: 0 horizontal, 1 vertical)
    path: Vec<(Domino, u8)>,
    // every cell with canonical index < hint is covered
    hint: usize,
    state: IterState,
}

#[derive(PartialEq)]
enum IterState {
    Fresh,
    Mid,
    Done,
}

impl TilingIter {
    fn new(region: &Region) -> TilingIter {
        let index = region.indexer();
        let covered = vec![false; index.len()];
        TilingIter {
            region: *region,
            index,
            covered,
            path: Vec::new(),
            hint: 0,
            state: IterState::Fresh,
        }
    }

    fn first_uncovered(&mut self) -> Option<usize> {
        while self.hint < self.covered.len() && self.covered[self.hint] {
            self.hint += 1;
        }
        (self.hint < self.covered.len()).then_some(self.hint)
    }

    fn try_place(&mut self, anchor: usize, from_branch: u8) -> bool {
        let cell = self.index.cell_at(anchor);
        for branch in from_branch..2 {
            let domino = if branch == 0 {
                Domino { cell, orientation: Orientation::Horizontal }
            } else {
                Domino { cell, orientation: Orientation::Vertical }
            };
            let other = domino.cells()[1];
            let Some(j) = self.index.index_of(other) else { continue };
            if self.covered[j] {
                continue;
            }
            self.covered[anchor] = true;
            self.covered[j] = true;
            self.path.push((domino, branch));
            self.hint = anchor + 1;
            return true;
        }
        false
    }

    fn backtrack(&mut self) -> bool {
        while let Some((domino, branch)) = self.path.pop() {
            let anchor = self.index.index_of(domino.cell).expect("anchor in region");
            for cell in domino.cells() {
                let i = self.index.index_of(cell).expect("covered cell in region");
                self.covered[i] = false;
            }
            self.hint = anchor;
            if branch == 0 && self.try_place(anchor, 1) {
                return true;
            }
        }
        false
    }

    fn snapshot(&self) -> Tiling {
        Tiling::new(self.region, self.path.iter().map(|(d, _)| *d).collect())
    }
}

impl Iterator for TilingIter {
    type Item = Tiling;

    fn next(&mut self) -> Option<Tiling> {
        match self.state {
            IterState::Done => return None,
            IterState::Fresh => self.state = IterState::Mid,
            IterState::Mid => {
                if !self.backtrack() {
                    self.state = IterState::Done;
                    return None;
                }
            }
        }
        loop {
            match self.first_uncovered() {
                None => return Some(self.snapshot()),
                Some(anchor) => {
                    if !self.try_place(anchor, 0) && !self.backtrack() {
                        self.state = IterState::Done;
                        return None;
                    }
                }
            }
        }
    }
}

/// Exact number of domino tilings, by broken-profile dynamic programming
/// with arbitrary-precision counts.
pub fn count_tilings(region: &Region) -> BigCount {
    // Sweeping the short side keeps the profile narrow.
    let region = match *region {
        Region::Rectangle { width, height } if width > height => {
            Region::rectangle(height, width)
        }
        r => r,
    };
    let rows = region.rows();
    if rows.is_empty() {
        return BigCount::one();
    }
    let x_min = rows.iter().map(|r| r.x_min).min().expect("non-empty rows");
    let x_max = rows.iter().map(|r| r.x_max).max().expect("non-empty rows");
    let width = x_max - x_min + 1;
    assert!(width <= 60, "profile width {width} exceeds the 60-column DP limit");

    let mut states: HashMap<u64, BigCount> = HashMap::from([(0, BigCount::one())]);
    let mut next: HashMap<u64, BigCount> = HashMap::new();
    for row in &rows {
        for x in x_min..=x_max {
            let bit = 1u64 << (x - x_min);
            let in_region = x >= row.x_min && x <= row.x_max;
            let can_horizontal = in_region && x < row.x_max;
            let can_vertical = in_region && region.contains(Cell::new(x, row.y + 1));
            next.clear();
            for (&mask, count) in &states {
                if mask & bit != 0 {
                    // covered by a vertical domino from the row below
                    debug_assert!(in_region);
                    *next.entry(mask & !bit).or_default() += count;
                } else if !in_region {
                    *next.entry(mask).or_default() += count;
                } else {
                    if can_horizontal && mask & (bit << 1) == 0 {
                        *next.entry(mask | (bit << 1)).or_default() += count;
                    }
                    if can_vertical {
                        *next.entry(mask | bit).or_default() += count;
                    }
                }
            }
            std::mem::swap(&mut states, &mut next);
        }
    }
    states.remove(&0).unwrap_or_else(BigCount::zero)
}

/// `2^{n(n+1)/2}`, the exact tiling count of the order-`n` diamond.
pub fn aztec_closed_form(n: u32) -> BigCount {
    let exponent = u64::from(n) * (u64::from(n) + 1) / 2;
    BigCount::one() << exponent
}

/// The square-grid product formula
/// `2^{n²/2} · ∏_{j,k=1}^{n/2} (cos²(jπ/(n+1)) + cos²(kπ/(n+1)))`,
/// evaluated in double precision. It is transcendental, so callers compare
/// it against exact counts with a tolerance, never for equality.
pub fn kasteleyn_square(n: u32) -> Result<f64, TilingError> {
    if !n.is_multiple_of(2) {
        return Err(TilingError::OddKasteleynOrder(n));
    }
    let half = n / 2;
    let denom = f64::from(n + 1);
    let mut product = 1.0f64;
    for j in 1..=half {
        for k in 1..=half {
            let cj = (PI * f64::from(j) / denom).cos();
            let ck = (PI * f64::from(k) / denom).cos();
            product *= cj * cj + ck * ck;
        }
    }
    Ok(2f64.powi((n * n / 2) as i32) * product)
}

/// Binomial coefficient `C(n, k)`, exact.
pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut result = BigCount::one();
    for i in 1..=k {
        result = result * (n - k + i) / i;
    }
    result
}

/// Where the tilings feeding [`horizontal_histogram`] come from.
#[derive(Debug, Clone, Copy)]
pub enum HistogramSource {
    /// Exhaustive enumeration; exact, guarded by [`ENUMERATION_GUARD`].
    Enumerate,
    /// `count` independent uniform samples with per-sample seeds
    /// `seed + index` (wrapping).
    Sample { count: u64, seed: u64 },
}

/// Buckets tilings of the order-`n` diamond by half their
/// horizontal-domino count. Every diamond tiling has an even number of
/// horizontal dominoes; an odd count is reported as an error rather than
/// floored.
pub fn horizontal_histogram(
    n: u32,
    source: HistogramSource,
) -> Result<BTreeMap<u64, BigCount>, TilingError> {
    let region = Region::aztec(n);
    let mut histogram = BTreeMap::new();
    let mut add = |tiling: &Tiling| -> Result<(), TilingError> {
        let count = tiling.horizontal_domino_count();
        if !count.is_multiple_of(2) {
            return Err(TilingError::OddHorizontalCount { region, count });
        }
        *histogram.entry(count / 2).or_insert_with(BigCount::zero) += 1u32;
        Ok(())
    };
    match source {
        HistogramSource::Enumerate => {
            if n > ENUMERATION_GUARD {
                return Err(TilingError::EnumerationGuard { order: n, guard: ENUMERATION_GUARD });
            }
            for tiling in enumerate_tilings(&region) {
                add(&tiling)?;
            }
        }
        HistogramSource::Sample { count, seed } => {
            for i in 0..count {
                let tiling = sample_uniform(&SampleSpec {
                    order: n,
                    seed: seed.wrapping_add(i),
                });
                add(&tiling)?;
            }
        }
    }
    Ok(histogram)
}

// ---------------------------------------------------------------------------
// JSON wire format
//
// { "region": {"kind":"aztec","order":N} | {"kind":"rect","w":W,"h":H},
//   "dominoes": [ {"x":K, "y":L, "o":"h"|"v"}, ... ] }
// with dominoes sorted by (y, x) on output.

#[derive(Serialize, Deserialize)]
struct TilingJson {
    region: RegionJson,
    dominoes: Vec<DominoJson>,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(tag = "kind")]
pub(crate) enum RegionJson {
    #[serde(rename = "aztec")]
    Aztec { order: u32 },
    #[serde(rename = "rect")]
    Rect { w: u32, h: u32 },
}

#[derive(Serialize, Deserialize)]
struct DominoJson {
    x: i64,
    y: i64,
    o: OrientationJson,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
pub(crate) enum OrientationJson {
    #[serde(rename = "h")]
    H,
    #[serde(rename = "v")]
    V,
}

impl From<Region> for RegionJson {
    fn from(region: Region) -> RegionJson {
        match region {
            Region::AztecDiamond { order } => RegionJson::Aztec { order },
            Region::Rectangle { width, height } => RegionJson::Rect { w: width, h: height },
        }
    }
}

impl From<RegionJson> for Region {
    fn from(dto: RegionJson) -> Region {
        match dto {
            RegionJson::Aztec { order } => Region::aztec(order),
            RegionJson::Rect { w, h } => Region::rectangle(w, h),
        }
    }
}

impl From<&Tiling> for TilingJson {
    fn from(tiling: &Tiling) -> TilingJson {
        TilingJson {
            region: (*tiling.region()).into(),
            dominoes: tiling
                .dominoes()
                .iter()
                .map(|d| DominoJson {
                    x: d.cell.x,
                    y: d.cell.y,
                    o: match d.orientation {
                        Orientation::Horizontal => OrientationJson::H,
                        Orientation::Vertical => OrientationJson::V,
                    },
                })
                .collect(),
        }
    }
}

impl From<TilingJson> for Tiling {
    fn from(dto: TilingJson) -> Tiling {
        let dominoes = dto
            .dominoes
            .into_iter()
            .map(|d| Domino {
                cell: Cell::new(d.x, d.y),
                orientation: match d.o {
                    OrientationJson::H => Orientation::Horizontal,
                    OrientationJson::V => Orientation::Vertical,
                },
            })
            .collect();
        Tiling::new(dto.region.into(), dominoes)
    }
}
