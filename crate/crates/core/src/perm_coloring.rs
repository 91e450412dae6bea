//! Optimal coloring of per-pillar fibers and composition of final colors.
//!
//! All intervals assigned to one pillar share that pillar's position, so
//! within a fiber the overlap relation is a two-order agreement: sort by left
//! endpoint, and two intervals overlap exactly when their right-endpoint
//! ranks ascend. Patience piles (greedy decreasing subsequences) therefore
//! color a fiber with exactly its clique number of colors. Final colors are
//! pairs (pillar color, pile index), flattened over the pairs that actually
//! occur.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pillar_assignment::PillarAssignmentState;
use crate::position::Pos;
use crate::interval_system::IntervalSystem;

/// The intervals assigned to one pillar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub pillar: usize,
    pub pos: Pos,
    pub intervals: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalColorRecord {
    pub pillar: usize,
    pub class_color: u32,
    pub fiber_color: u32,
    pub final_color: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassColoring {
    /// One record per interval, in interval order.
    pub records: Vec<IntervalColorRecord>,
    pub num_classes: usize,
    pub num_final_colors: usize,
}

/// Groups assigned intervals by pillar; pillars without intervals yield no
/// fiber. Fails on the first uncovered interval.
pub fn fibers(state: &PillarAssignmentState) -> Result<Vec<Fiber>> {
    let mut by_pillar: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, a) in state.assignment().iter().enumerate() {
        match a {
            Some(p) => by_pillar.entry(*p).or_default().push(i),
            None => return Err(Error::IncompleteAssignment { interval: i }),
        }
    }
    Ok(by_pillar
        .into_iter()
        .map(|(pillar, intervals)| Fiber {
            pillar,
            pos: state.pillars()[pillar].pos,
            intervals,
        })
        .collect())
}

/// Fiber interval indices sorted by left endpoint, after checking that each
/// interval strictly contains the fiber's pillar.
fn sorted_by_left(f: &Fiber, system: &IntervalSystem) -> Result<Vec<usize>> {
    for &i in &f.intervals {
        if !system.interval(i).contains(f.pos) {
            return Err(Error::IntervalMissesPillar { interval: i, pos: f.pos });
        }
    }
    let mut order = f.intervals.clone();
    order.sort_by_key(|&i| system.interval(i).left);
    Ok(order)
}

/// Rank sequence of right endpoints in left-endpoint order (ranks are
/// 1-based within the fiber). Two fiber intervals overlap exactly when their
/// entries form an ascent pair.
pub fn fiber_permutation(f: &Fiber, system: &IntervalSystem) -> Result<Vec<usize>> {
    let order = sorted_by_left(f, system)?;
    let mut rights: Vec<Pos> = order.iter().map(|&i| system.interval(i).right).collect();
    let perm = rights
        .iter()
        .map(|r| rights.iter().filter(|&&x| x < *r).count() + 1)
        .collect();
    rights.sort();
    Ok(perm)
}

/// Patience coloring: in left-endpoint order, each interval joins the
/// lowest-numbered pile whose last right-rank exceeds its own, or opens a
/// new pile. Pile tops stay sorted ascending, so the lowest eligible pile is
/// found by binary search, and the pile count equals the longest increasing
/// subsequence of the permutation — the fiber's clique number.
///
/// Returned colors are aligned with the left-endpoint order (the order of
/// [`fiber_permutation`]).
pub fn patience_color(f: &Fiber, system: &IntervalSystem) -> Result<Vec<u32>> {
    let perm = fiber_permutation(f, system)?;
    let mut tops: Vec<usize> = Vec::new();
    let mut colors = Vec::with_capacity(perm.len());
    for r in perm {
        let j = tops.partition_point(|&t| t < r);
        if j == tops.len() {
            tops.push(r);
        } else {
            tops[j] = r;
        }
        colors.push(j as u32 + 1);
    }
    Ok(colors)
}

/// Combines pillar colors (classes) with patience pile indices into final
/// colors, numbering only the (class, fiber) pairs that occur. Fiber colors
/// are deliberately reused across fibers of the same class: condition (1)
/// guarantees no edges between same-colored distinct fibers.
pub fn compose(state: &PillarAssignmentState, fibers: &[Fiber]) -> Result<ClassColoring> {
    let n = state.system().n();
    for (i, a) in state.assignment().iter().enumerate() {
        if a.is_none() {
            return Err(Error::IncompleteAssignment { interval: i });
        }
    }
    let mut partial: Vec<Option<IntervalColorRecord>> = vec![None; n];
    for f in fibers {
        let class_color = state.pillars()[f.pillar].color;
        let order = sorted_by_left(f, state.system())?;
        let colors = patience_color(f, state.system())?;
        for (&interval, &fiber_color) in order.iter().zip(colors.iter()) {
            partial[interval] = Some(IntervalColorRecord {
                pillar: f.pillar,
                class_color,
                fiber_color,
                final_color: 0,
            });
        }
    }
    let mut records = Vec::with_capacity(n);
    for (i, r) in partial.into_iter().enumerate() {
        records.push(r.ok_or(Error::IncompleteAssignment { interval: i })?);
    }

    let realized: BTreeSet<(u32, u32)> =
        records.iter().map(|r| (r.class_color, r.fiber_color)).collect();
    let final_id: BTreeMap<(u32, u32), u32> = realized
        .iter()
        .enumerate()
        .map(|(i, &pair)| (pair, i as u32 + 1))
        .collect();
    for r in &mut records {
        r.final_color = final_id[&(r.class_color, r.fiber_color)];
    }
    let num_classes = records
        .iter()
        .map(|r| r.class_color)
        .collect::<BTreeSet<_>>()
        .len();
    Ok(ClassColoring { records, num_classes, num_final_colors: realized.len() })
}
