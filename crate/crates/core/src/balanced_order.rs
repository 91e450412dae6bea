//! Orders and colors a pillar set by balanced binary recursion.
//!
//! The median pillar comes first in the order and takes the highest palette
//! color; the two halves recurse with the remaining colors, left block before
//! right. Because the root precedes and separates both halves, any interval
//! reaching across it is assigned to the root or something even earlier, which
//! is what makes condition (1) and the degree bound k work out for a set of up
//! to 2^k − 1 pillars.

use crate::error::{Error, Result};
use crate::interval_system::IntervalSystem;
use crate::pillar_assignment::Pillar;
use crate::position::Pos;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedOrderResult {
    /// Pillars in order (order_keys `0..m`, ascending).
    pub ordered_pillars: Vec<Pillar>,
    pub k_used: usize,
}

/// Smallest k with `m ≤ 2^k − 1`, i.e. `⌈log₂(m+1)⌉`.
pub fn adaptive_k(m: usize) -> usize {
    let mut k = 0;
    while (1usize << k) - 1 < m {
        k += 1;
    }
    k
}

/// Recursively orders `positions` (sorted, pillar-eligible) and colors them
/// from `palette`: the median of each block is emitted first with the color
/// `palette[k − 1 − depth]`, then the left half, then the right half.
pub fn build_balanced(
    positions: &[Pos],
    palette: &[u32],
    system: &IntervalSystem,
) -> Result<BalancedOrderResult> {
    let m = positions.len();
    let k = palette.len();
    if m > (1usize << k) - 1 {
        return Err(Error::PaletteTooSmall { positions: m, palette: k });
    }
    debug_assert!(positions.windows(2).all(|w| w[0] < w[1]), "positions must be sorted");
    for &p in positions {
        if !p.is_interior() || system.is_endpoint(p) {
            return Err(Error::InvalidPillars(format!("{p} is not pillar-eligible")));
        }
    }

    let mut ordered = Vec::with_capacity(m);
    let mut key = 0u64;
    split(positions, palette, 0, &mut key, &mut ordered);
    Ok(BalancedOrderResult { ordered_pillars: ordered, k_used: k })
}

fn split(block: &[Pos], palette: &[u32], depth: usize, key: &mut u64, out: &mut Vec<Pillar>) {
    if block.is_empty() {
        return;
    }
    let mid = block.len().div_ceil(2) - 1;
    out.push(Pillar {
        pos: block[mid],
        color: palette[palette.len() - 1 - depth],
        order_key: *key,
    });
    *key += 1;
    split(&block[..mid], palette, depth + 1, key, out);
    split(&block[mid + 1..], palette, depth + 1, key, out);
}
