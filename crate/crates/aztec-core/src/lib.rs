//! Exact combinatorics of domino tilings of Aztec diamonds.
//!
//! The library is organized around the constructive correspondence between
//! domino tilings and diagonal arrow fields on a nested pair of diamonds
//! `A_n ⊂ A_{n+1}`:
//!
//! - [`geometry`]: cells, regions, nodes, and the node-corner pairing.
//! - [`tiling`]: dominoes, tiling validation, exhaustive enumeration,
//!   big-integer counting, and closed-form oracles.
//! - [`arrowfield`]: arrow fields, the six-pattern validity condition,
//!   node classification, the flip involution, and line balance.
//! - [`bijection`]: bold edges, the 1×2/2×2 component decomposition, the
//!   `2^r` tilings compatible with a field, and the verified recursion
//!   `T_{n+1} = 2^{n+1} · T_n`.
//! - [`sampler`]: exactly uniform random tiling generation by growing a
//!   tiling one order at a time through the flip.
//! - [`render`]: deterministic SVG pictures of tilings and arrow fields.

pub mod arrowfield;
pub mod bijection;
pub mod geometry;
pub mod render;
pub mod sampler;
pub mod tiling;

pub use arrowfield::{
    ArrowField, FieldCensus, FieldError, FieldOrientation, LineBalance, NodeClass,
};
pub use bijection::{
    bold_edges, decompose, horizontal_component_count, tilings_for_field, verify_recursion,
    BijectionError, CheckResult, Component, ComponentShape, Decomposition, Edge, RecursionReport,
    RECURSION_GUARD,
};
pub use geometry::{Cell, GeometryError, NodeContext, Point, Region, RegionIndex, RowExtent};
pub use render::{render_field, render_tiling, RenderError, RenderOptions};
pub use sampler::{
    grow, sample_statistics, sample_uniform, SampleSpec, SampleStatistics, SplitMix64,
    DEFAULT_SEED,
};
pub use tiling::{
    aztec_closed_form, binomial, count_tilings, enumerate_tilings, horizontal_histogram,
    kasteleyn_square, validate_tiling, BigCount, Domino, HistogramSource, Orientation, Tiling,
    TilingError, Violation, ENUMERATION_GUARD,
};
