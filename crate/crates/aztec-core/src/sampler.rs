//! Exact uniform random tilings, by running the counting argument
//! forwards: a tiling of the order-`k` diamond determines an inward
//! field; flipping it gives an outward field on the order-`k+1` diamond;
//! filling that field's free squares with independent fair bits yields a
//! tiling one order up. Started from the empty tiling and iterated `n`
//! times this samples exactly uniformly: a uniform inner tiling lands on
//! field `f` with probability `2^{r(f)}/T_k`, and each member of the
//! outer family then receives `2^{-r(flip f)}`, so every outer tiling
//! gets `2^{-(k+1)}/T_k = 1/T_{k+1}`.
//!
//! Randomness comes from SplitMix64, chosen for its two-line, exactly
//! reproducible state transition:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15                    (wrapping)
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9       (wrapping)
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB       (wrapping)
//! output = z ^ (z >> 31)
//! ```
//!
//! A fair bit is the low bit of the next output. Cryptographic quality
//! is a non-goal; cross-implementation reproducibility is the point.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arrowfield::ArrowField;
use crate::bijection::{decompose, BijectionError};
use crate::geometry::Region;
use crate::tiling::{Orientation, Tiling};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0xA52EC0DE;

/// SplitMix64 pseudo-random generator with a drawn-bit counter.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
    bits_drawn: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed, bits_drawn: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// One fair bit: the low bit of the next output word.
    pub fn next_bit(&mut self) -> bool {
        self.bits_drawn += 1;
        self.next_u64() & 1 == 1
    }

    /// Fair bits handed out so far.
    pub fn bits_drawn(&self) -> u64 {
        self.bits_drawn
    }
}

/// A reproducible sampling request: same order and seed, same tiling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleSpec {
    pub order: u32,
    pub seed: u64,
}

/// One step up the diamond ladder: tiling of order `k` in, tiling of
/// order `k+1` out, consuming one fair bit per free square.
pub fn grow(tiling: &Tiling, rng: &mut SplitMix64) -> Result<Tiling, BijectionError> {
    let inward = ArrowField::from_inner_tiling(tiling)?;
    let decomposition = decompose(&inward.flip())?;
    let choices: Vec<bool> = (0..decomposition.free_choices()).map(|_| rng.next_bit()).collect();
    decomposition.tiling(&choices)
}

/// Draws one exactly-uniform tiling of the order-`spec.order` diamond.
pub fn sample_uniform(spec: &SampleSpec) -> Tiling {
    let mut rng = SplitMix64::new(spec.seed);
    let mut tiling = Tiling::empty(Region::aztec(0));
    for _ in 0..spec.order {
        tiling = grow(&tiling, &mut rng).expect("growth from a valid tiling cannot fail");
    }
    tiling
}

/// Aggregates of a batch of independent samples: the histogram of half
/// the horizontal-domino count, and the per-cell horizontal-occupancy
/// fractions over the diamond's bounding box (raw material for
/// arctic-circle pictures; zero outside the region).
#[derive(Debug, Clone, Serialize)]
pub struct SampleStatistics {
    pub order: u32,
    pub count: u64,
    pub hist: BTreeMap<u64, u64>,
    pub h_occupancy: Vec<Vec<f64>>,
}

impl SampleStatistics {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("statistics serialization")
    }
}

/// Samples `count` tilings of the order-`order` diamond with per-sample
/// seeds `seed`, `seed+1`, … (wrapping) and aggregates them.
pub fn sample_statistics(order: u32, count: u64, seed: u64) -> SampleStatistics {
    assert!(count >= 1, "sample_statistics needs at least one sample");
    let n = order as usize;
    let side = 2 * n;
    let mut horizontal_cells = vec![vec![0u64; side]; side];
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    for i in 0..count {
        let tiling = sample_uniform(&SampleSpec { order, seed: seed.wrapping_add(i) });
        *hist.entry(tiling.horizontal_domino_count() / 2).or_default() += 1;
        for domino in tiling.dominoes() {
            if domino.orientation == Orientation::Horizontal {
                for cell in domino.cells() {
                    let row = (cell.y + order as i64) as usize;
                    let col = (cell.x + order as i64) as usize;
                    horizontal_cells[row][col] += 1;
                }
            }
        }
    }
    let h_occupancy = horizontal_cells
        .into_iter()
        .map(|row| row.into_iter().map(|c| c as f64 / count as f64).collect())
        .collect();
    SampleStatistics { order, count, hist, h_occupancy }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Cell;
    use crate::tiling::validate_tiling;

    #[test]
    fn splitmix_reference_outputs() {
        // first three outputs for seed 0, from the published algorithm
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(rng.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(rng.next_u64(), 0x06C4_5D18_8009_454F);
        assert_eq!(rng.bits_drawn(), 0);
    }

    #[test]
    fn growing_the_empty_tiling_yields_either_first_order_tiling() {
        let empty = Tiling::empty(Region::aztec(0));
        let mut seen = std::collections::HashSet::new();
        for seed in 0..8u64 {
            let mut rng = SplitMix64::new(seed);
            let grown = grow(&empty, &mut rng).unwrap();
            assert_eq!(*grown.region(), Region::aztec(1));
            assert!(grown.is_valid());
            assert_eq!(rng.bits_drawn(), 1);
            seen.insert(grown);
        }
        assert_eq!(seen.len(), 2, "both one-square fillings appear across seeds");
    }

    #[test]
    fn sampled_tilings_validate_across_orders() {
        for order in 0..=8u32 {
            let tiling = sample_uniform(&SampleSpec { order, seed: DEFAULT_SEED });
            assert_eq!(*tiling.region(), Region::aztec(order));
            assert!(validate_tiling(&tiling).is_empty(), "order {order}");
            assert_eq!(tiling.horizontal_domino_count() % 2, 0);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let spec = SampleSpec { order: 6, seed: 991 };
        assert_eq!(sample_uniform(&spec).to_json(), sample_uniform(&spec).to_json());
    }

    #[test]
    fn order_one_split_is_binomially_plausible() {
        let mut horizontal = 0u32;
        for seed in 0..10_000u64 {
            let tiling = sample_uniform(&SampleSpec { order: 1, seed });
            if tiling.horizontal_domino_count() == 2 {
                horizontal += 1;
            }
        }
        // 3 sigma around 5000 at sigma = sqrt(10000 * 1/4) = 50
        assert!((4850..=5150).contains(&horizontal), "split {horizontal}/10000");
    }

    #[test]
    fn bits_drawn_match_free_choices_step_by_step() {
        let mut rng = SplitMix64::new(12345);
        let mut tiling = Tiling::empty(Region::aztec(0));
        let mut expected_bits = 0u64;
        for _ in 0..6 {
            let inward = ArrowField::from_inner_tiling(&tiling).unwrap();
            let outward = inward.flip();
            expected_bits += decompose(&outward).unwrap().free_choices() as u64;
            tiling = grow(&tiling, &mut rng).unwrap();
            assert_eq!(rng.bits_drawn(), expected_bits);
            assert_eq!(ArrowField::from_outer_tiling(&tiling).unwrap(), outward);
        }
    }

    #[test]
    fn growth_raises_the_repelling_count_by_order_plus_one() {
        let mut rng = SplitMix64::new(777);
        let mut tiling = Tiling::empty(Region::aztec(0));
        for k in 0..5u32 {
            let inward = ArrowField::from_inner_tiling(&tiling).unwrap();
            let r_inner = inward.census().unwrap().repelling;
            let r_outer = inward.flip().census().unwrap().repelling;
            assert_eq!(r_outer, r_inner + k + 1);
            tiling = grow(&tiling, &mut rng).unwrap();
        }
    }

    #[test]
    fn statistics_of_the_empty_order_are_trivial() {
        let stats = sample_statistics(0, 5, 1);
        assert_eq!(stats.hist, BTreeMap::from([(0, 5)]));
        assert!(stats.h_occupancy.is_empty());
        assert_eq!(
            stats.to_json(),
            r#"{"order":0,"count":5,"hist":{"0":5},"h_occupancy":[]}"#
        );
    }

    #[test]
    fn statistics_grid_is_zero_outside_the_region_and_bounded_inside() {
        let stats = sample_statistics(2, 200, 7);
        assert_eq!(stats.h_occupancy.len(), 4);
        let region = Region::aztec(2);
        for (row, cells) in stats.h_occupancy.iter().enumerate() {
            assert_eq!(cells.len(), 4);
            for (col, &fraction) in cells.iter().enumerate() {
                let cell = Cell::new(col as i64 - 2, row as i64 - 2);
                if region.contains(cell) {
                    assert!((0.0..=1.0).contains(&fraction));
                } else {
                    assert_eq!(fraction, 0.0, "cell {cell}");
                }
            }
        }
        assert_eq!(stats.hist.values().sum::<u64>(), 200);
        let slots = 3u64; // free squares accumulated growing to order 2
        assert!(stats.hist.keys().all(|&k| k <= slots));
    }
}
