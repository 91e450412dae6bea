//! Pillars, assignments, and the two degree notions that drive the
//! augmentation loop.
//!
//! A pillar is an interior point that coincides with no endpoint; it carries
//! a color and an `order_key`, and the keys define the pillar order. An
//! interval is *assigned* to the earliest pillar (smallest key) it strictly
//! contains, or to none. The central soundness condition on a state is
//! condition (1): two overlapping intervals may not be assigned to distinct
//! pillars of the same color.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval_system::{overlaps, segments_of, IntervalSystem, Segment};
use crate::position::Pos;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pillar {
    pub pos: Pos,
    pub color: u32,
    pub order_key: u64,
}

/// Witness for a condition (1) violation: overlapping intervals `a`, `b`
/// assigned to distinct pillars of equal color.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Condition1Violation {
    pub a: usize,
    pub b: usize,
    pub pillar_a: usize,
    pub pillar_b: usize,
}

#[derive(Clone, Debug)]
pub struct PillarAssignmentState {
    system: IntervalSystem,
    pillars: Vec<Pillar>,
    /// Interval index -> pillar index, or `None` while uncovered.
    assignment: Vec<Option<usize>>,
}

impl PillarAssignmentState {
    pub fn new(system: IntervalSystem) -> PillarAssignmentState {
        let n = system.n();
        PillarAssignmentState { system, pillars: Vec::new(), assignment: vec![None; n] }
    }

    pub fn with_pillars(system: IntervalSystem, pillars: Vec<Pillar>) -> Result<PillarAssignmentState> {
        let mut state = PillarAssignmentState::new(system);
        state.push_pillars(pillars)?;
        Ok(state)
    }

    pub fn system(&self) -> &IntervalSystem {
        &self.system
    }

    pub fn pillars(&self) -> &[Pillar] {
        &self.pillars
    }

    pub fn assignment(&self) -> &[Option<usize>] {
        &self.assignment
    }

    pub fn covered_count(&self) -> usize {
        self.assignment.iter().filter(|a| a.is_some()).count()
    }

    pub fn is_complete(&self) -> bool {
        self.assignment.iter().all(|a| a.is_some())
    }

    /// Pillar positions in ascending order.
    pub fn sorted_positions(&self) -> Vec<Pos> {
        let mut ps: Vec<Pos> = self.pillars.iter().map(|p| p.pos).collect();
        ps.sort();
        ps
    }

    pub fn segments(&self) -> Vec<Segment> {
        segments_of(&self.sorted_positions())
    }

    /// The segment of the current pillar set containing the non-pillar
    /// point `p`.
    pub fn segment_around(&self, p: Pos) -> Segment {
        let ps = self.sorted_positions();
        let k = ps.partition_point(|&q| q < p);
        debug_assert!(ps.get(k) != Some(&p), "point sits on a pillar");
        Segment {
            lo: if k == 0 { Pos::ZERO } else { ps[k - 1] },
            hi: if k == ps.len() { Pos::ONE } else { ps[k] },
        }
    }

    /// The earliest pillar (smallest `order_key`) strictly inside interval
    /// `i`, independent of the stored assignment.
    pub fn assign_interval(&self, i: usize) -> Option<usize> {
        let iv = self.system.interval(i);
        self.pillars
            .iter()
            .enumerate()
            .filter(|(_, p)| iv.contains(p.pos))
            .min_by_key(|(_, p)| p.order_key)
            .map(|(idx, _)| idx)
    }

    /// Recomputes the whole assignment map from scratch. Pure in
    /// `(system, pillars)`: the stored map is exactly
    /// [`PillarAssignmentState::assign_interval`] evaluated everywhere.
    pub fn recompute_assignment(&mut self) {
        for i in 0..self.system.n() {
            self.assignment[i] = self.assign_interval(i);
        }
    }

    /// Appends pillars after validation and updates the assignment map.
    ///
    /// When every new key is larger than every existing key (the merge order
    /// used by augmentation) existing assignments cannot change, so only
    /// uncovered intervals are rescanned; otherwise the map is rebuilt.
    pub fn push_pillars(&mut self, new: Vec<Pillar>) -> Result<()> {
        let mut positions: BTreeSet<Pos> = self.pillars.iter().map(|p| p.pos).collect();
        let mut keys: BTreeSet<u64> = self.pillars.iter().map(|p| p.order_key).collect();
        for p in &new {
            if !p.pos.is_interior() {
                return Err(Error::InvalidPillars(format!("position {} is not interior", p.pos)));
            }
            if self.system.is_endpoint(p.pos) {
                return Err(Error::InvalidPillars(format!("position {} is an endpoint", p.pos)));
            }
            if !positions.insert(p.pos) {
                return Err(Error::InvalidPillars(format!("duplicate position {}", p.pos)));
            }
            if !keys.insert(p.order_key) {
                return Err(Error::InvalidPillars(format!("duplicate order key {}", p.order_key)));
            }
            if p.color == 0 {
                return Err(Error::InvalidPillars("color 0 is reserved".into()));
            }
        }
        let old_max = self.pillars.iter().map(|p| p.order_key).max();
        let new_min = new.iter().map(|p| p.order_key).min();
        let append_after = match (old_max, new_min) {
            (Some(a), Some(b)) => b > a,
            _ => true,
        };
        let first_new = self.pillars.len();
        self.pillars.extend(new);
        if append_after {
            for i in 0..self.system.n() {
                if self.assignment[i].is_some() {
                    continue;
                }
                let iv = self.system.interval(i);
                self.assignment[i] = self.pillars[first_new..]
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| iv.contains(p.pos))
                    .min_by_key(|(_, p)| p.order_key)
                    .map(|(off, _)| first_new + off);
            }
        } else {
            self.recompute_assignment();
        }
        Ok(())
    }

    /// All condition (1) violations in the current assignment.
    pub fn check_condition1(&self) -> Vec<Condition1Violation> {
        let n = self.system.n();
        let mut out = Vec::new();
        for a in 0..n {
            let Some(pa) = self.assignment[a] else { continue };
            for b in a + 1..n {
                let Some(pb) = self.assignment[b] else { continue };
                if pa != pb
                    && self.pillars[pa].color == self.pillars[pb].color
                    && overlaps(&self.system.interval(a), &self.system.interval(b))
                {
                    out.push(Condition1Violation { a, b, pillar_a: pa, pillar_b: pb });
                }
            }
        }
        out
    }

    /// Number of distinct pillars that receive an interval with an endpoint
    /// strictly inside the window `(lo, hi)`. The window may not cross a
    /// pillar (it must fit inside one segment).
    pub fn ordered_degree(&self, lo: Pos, hi: Pos) -> Result<usize> {
        if lo >= hi {
            return Err(Error::IllegalWindow { lo, hi });
        }
        if self.pillars.iter().any(|p| lo < p.pos && p.pos < hi) {
            return Err(Error::IllegalWindow { lo, hi });
        }
        let mut hit: BTreeSet<usize> = BTreeSet::new();
        for e in self.system.endpoints_in(lo, hi) {
            if let Some(p) = self.assignment[e.interval] {
                hit.insert(p);
            }
        }
        Ok(hit.len())
    }

    /// Maximum ordered degree over all segments of the pillar set.
    pub fn max_degree(&self) -> usize {
        let ps = self.sorted_positions();
        let mut per_segment: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ps.len() + 1];
        for e in self.system.endpoints() {
            if let Some(p) = self.assignment[e.interval] {
                let seg = ps.partition_point(|&q| q < e.pos);
                per_segment[seg].insert(p);
            }
        }
        per_segment.iter().map(|s| s.len()).max().unwrap_or(0)
    }
}

/// The `P`-degree of the pair `(p1, p2)`: the number of pairs `{S1, S2}`
/// where `S1` is a segment of `P` disjoint from `(p1, p2)`, `S2` is a
/// segment of `P ∪ {p1, p2}` contained in `(p1, p2)`, and some interval has
/// one end in each. Pairs are counted once regardless of how many intervals
/// witness them.
///
/// Legal pairs: `p1 < p2` pillar-eligible, and either both in `P` or with no
/// point of `P` strictly between them.
pub fn p_degree(system: &IntervalSystem, pillar_set: &[Pos], p1: Pos, p2: Pos) -> Result<usize> {
    let mut ps: Vec<Pos> = pillar_set.to_vec();
    ps.sort();
    ps.dedup();

    if p1 >= p2 {
        return Err(Error::IllegalPair { p1, p2, reason: "p1 must be strictly below p2" });
    }
    if !p1.is_interior() || !p2.is_interior() || system.is_endpoint(p1) || system.is_endpoint(p2) {
        return Err(Error::IllegalPair { p1, p2, reason: "positions must be pillar-eligible" });
    }
    let both_in = ps.binary_search(&p1).is_ok() && ps.binary_search(&p2).is_ok();
    let inner: Vec<Pos> = ps.iter().copied().filter(|&q| p1 < q && q < p2).collect();
    if !both_in && !inner.is_empty() {
        return Err(Error::IllegalPair {
            p1,
            p2,
            reason: "pair is neither within the pillar set nor inside one segment",
        });
    }

    // Segment index of a non-pillar point x is the number of pillars below
    // it; bounds of segment k are (ps[k-1], ps[k]) with 0 and 1 outside.
    let seg_bounds = |k: usize| -> (Pos, Pos) {
        (
            if k == 0 { Pos::ZERO } else { ps[k - 1] },
            if k == ps.len() { Pos::ONE } else { ps[k] },
        )
    };

    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for e in system.endpoints_in(p1, p2) {
        let partner = system.partner(e);
        if partner > p1 && partner < p2 {
            continue; // both ends inside the pair: no disjoint segment holds one
        }
        let k = ps.partition_point(|&q| q < partner);
        let (lo, hi) = seg_bounds(k);
        if hi <= p1 || lo >= p2 {
            let sub = inner.partition_point(|&q| q < e.pos);
            pairs.insert((k, sub));
        }
    }
    Ok(pairs.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{gen_uniform_matching, SplitMix64};

    fn pos(n: i64, d: i64) -> Pos {
        Pos::new(n, d).unwrap()
    }

    fn pillar(n: i64, d: i64, color: u32, order_key: u64) -> Pillar {
        Pillar { pos: pos(n, d), color, order_key }
    }

    fn triangle() -> IntervalSystem {
        IntervalSystem::normalize(&[(2, 8), (4, 10), (6, 12)]).unwrap()
    }

    #[test]
    fn assigns_to_earliest_contained_pillar() {
        // Both pillars sit inside the single interval; the order-0 one wins.
        let sys = IntervalSystem::normalize(&[(1, 3)]).unwrap();
        let state = PillarAssignmentState::with_pillars(
            sys,
            vec![pillar(2, 5, 1, 1), pillar(1, 2, 1, 0)],
        )
        .unwrap();
        assert_eq!(state.assign_interval(0), Some(1));
        assert_eq!(state.assignment()[0], Some(1));
    }

    #[test]
    fn unassigned_when_no_pillar_inside() {
        // 11/14 lies only in the third triangle interval (6/14, 12/14).
        let sys = triangle();
        let state =
            PillarAssignmentState::with_pillars(sys, vec![pillar(11, 14, 1, 0)]).unwrap();
        assert_eq!(state.assignment(), &[None, None, Some(0)]);
        assert_eq!(state.covered_count(), 1);
        assert!(!state.is_complete());
    }

    #[test]
    fn crossing_pair_shares_the_pillar_in_their_intersection() {
        let sys = IntervalSystem::normalize(&[(1, 3), (2, 4)]).unwrap();
        let state = PillarAssignmentState::with_pillars(sys, vec![pillar(1, 2, 1, 0)]).unwrap();
        assert_eq!(state.assignment(), &[Some(0), Some(0)]);
        assert!(state.check_condition1().is_empty());
    }

    #[test]
    fn rejects_bad_pillars() {
        let dup = PillarAssignmentState::with_pillars(
            triangle(),
            vec![pillar(1, 2, 1, 0), pillar(7, 14, 1, 1)],
        );
        assert!(matches!(dup, Err(Error::InvalidPillars(_))));
        let on_endpoint =
            PillarAssignmentState::with_pillars(triangle(), vec![pillar(2, 7, 1, 0)]);
        assert!(matches!(on_endpoint, Err(Error::InvalidPillars(_))));
        let dup_key = PillarAssignmentState::with_pillars(
            triangle(),
            vec![pillar(1, 2, 1, 3), pillar(3, 14, 1, 3)],
        );
        assert!(matches!(dup_key, Err(Error::InvalidPillars(_))));
    }

    #[test]
    fn condition1_catches_same_color_distinct_pillars() {
        // Two crossing intervals with private same-colored pillars.
        let sys = IntervalSystem::normalize(&[(1, 3), (2, 4)]).unwrap();
        // Endpoints at 1/5..4/5; pillar at 3/10 is only inside interval 0,
        // pillar at 7/10 only inside interval 1.
        let state = PillarAssignmentState::with_pillars(
            sys,
            vec![pillar(3, 10, 1, 0), pillar(7, 10, 1, 1)],
        )
        .unwrap();
        let viols = state.check_condition1();
        assert_eq!(
            viols,
            vec![Condition1Violation { a: 0, b: 1, pillar_a: 0, pillar_b: 1 }]
        );
        // Distinct colors clear it.
        let state = PillarAssignmentState::with_pillars(
            triangle(),
            vec![pillar(3, 10, 1, 0), pillar(7, 10, 2, 1)],
        )
        .unwrap();
        assert!(state.check_condition1().is_empty());
    }

    #[test]
    fn ordered_degree_counts_pillars_not_intervals() {
        // Two intervals with ends in the same two segments are assigned to
        // the same pillar and contribute 1, not 2.
        let sys = IntervalSystem::normalize(&[(1, 5), (2, 6)]).unwrap();
        let state = PillarAssignmentState::with_pillars(sys, vec![pillar(1, 2, 1, 0)]).unwrap();
        assert_eq!(state.ordered_degree(Pos::ZERO, pos(1, 2)).unwrap(), 1);
        assert_eq!(state.ordered_degree(pos(1, 2), Pos::ONE).unwrap(), 1);
        assert_eq!(state.max_degree(), 1);
    }

    #[test]
    fn ordered_degree_rejects_windows_crossing_pillars() {
        let state =
            PillarAssignmentState::with_pillars(triangle(), vec![pillar(1, 2, 1, 0)]).unwrap();
        assert!(matches!(
            state.ordered_degree(pos(1, 7), pos(6, 7)),
            Err(Error::IllegalWindow { .. })
        ));
        assert!(state.ordered_degree(pos(1, 2), pos(1, 2)).is_err());
    }

    #[test]
    fn max_degree_of_empty_state_is_zero() {
        let state = PillarAssignmentState::new(triangle());
        assert_eq!(state.max_degree(), 0);
        assert_eq!(state.segment_around(pos(1, 2)), Segment { lo: Pos::ZERO, hi: Pos::ONE });
    }

    #[test]
    fn p_degree_triangle_across_the_pair() {
        // P = {3/14, 9/14}, pair in P. The middle segment is flanked by
        // (0,3/14) reachable via (2/14,8/14) and (9/14,1) reachable via the
        // other two intervals, which share a segment pair.
        let sys = triangle();
        let p = [pos(3, 14), pos(9, 14)];
        assert_eq!(p_degree(&sys, &p, pos(3, 14), pos(9, 14)).unwrap(), 2);
    }

    #[test]
    fn p_degree_window_inside_middle_segment() {
        // Same system and P, pair (5/14, 7/14) strictly inside the middle
        // segment. Only 6/14 lies in the window and its partner 12/14 sits
        // in (9/14, 1), so exactly one segment pair is witnessed.
        let sys = triangle();
        let p = [pos(3, 14), pos(9, 14)];
        assert_eq!(p_degree(&sys, &p, pos(5, 14), pos(7, 14)).unwrap(), 1);
    }

    #[test]
    fn p_degree_illegal_pairs() {
        let sys = triangle();
        let p = [pos(3, 14), pos(9, 14)];
        assert!(matches!(
            p_degree(&sys, &p, pos(9, 14), pos(3, 14)),
            Err(Error::IllegalPair { .. })
        ));
        // Endpoint positions are not pillar-eligible.
        assert!(p_degree(&sys, &p, pos(2, 14), pos(9, 14)).is_err());
        // Mixed pair straddling a member of P.
        assert!(p_degree(&sys, &p, pos(5, 14), pos(11, 14)).is_err());
    }

    #[test]
    fn p_degree_empty_pillar_set_is_zero() {
        let sys = triangle();
        assert_eq!(p_degree(&sys, &[], pos(5, 14), pos(7, 14)).unwrap(), 0);
    }

    #[test]
    fn ordered_degree_never_exceeds_p_degree() {
        // Ordered degree collapses intervals sharing a segment pair onto one
        // pillar, so it is dominated by the p-degree of the same window.
        let mut rng = SplitMix64::new(0xD1CE);
        for trial in 0..200 {
            let n = 2 + (rng.next_below(14) as usize);
            let sys = gen_uniform_matching(n, 0xA000 + trial);
            let den = 2 * n as i64 + 1;
            // Candidate pillar positions: midpoints of endpoint gaps.
            let gaps: Vec<Pos> = (0..2 * n as i64)
                .map(|r| Pos::midpoint(pos(r, den), pos(r + 1, den)))
                .collect();
            let mut chosen: Vec<Pos> = Vec::new();
            for &g in &gaps {
                if rng.next_below(3) == 0 {
                    chosen.push(g);
                }
            }
            if chosen.len() < 2 {
                continue;
            }
            let pillars: Vec<Pillar> = chosen
                .iter()
                .enumerate()
                .map(|(i, &p)| Pillar { pos: p, color: 1 + (i as u32 % 3), order_key: i as u64 })
                .collect();
            let state = PillarAssignmentState::with_pillars(sys.clone(), pillars).unwrap();
            let i = rng.next_below(chosen.len() as u64 - 1) as usize;
            let (lo, hi) = (chosen[i], chosen[i + 1]);
            let od = state.ordered_degree(lo, hi).unwrap();
            let pd = p_degree(&sys, &chosen, lo, hi).unwrap();
            assert!(od <= pd, "ordered {od} > p-degree {pd} on trial {trial}");
        }
    }

    #[test]
    fn incremental_push_matches_full_recompute() {
        let mut rng = SplitMix64::new(0xBEEF);
        for trial in 0..50 {
            let n = 3 + (rng.next_below(20) as usize);
            let sys = gen_uniform_matching(n, 0xB000 + trial);
            let den = 2 * n as i64 + 1;
            let mut state = PillarAssignmentState::new(sys);
            let mut key = 0u64;
            for batch in 0..3 {
                let mut new = Vec::new();
                for r in 0..2 * n as i64 {
                    if rng.next_below(5) == 0 {
                        let p = Pos::midpoint(pos(r, den), pos(r + 1, den));
                        if state.pillars().iter().all(|q| q.pos != p)
                            && new.iter().all(|q: &Pillar| q.pos != p)
                        {
                            new.push(Pillar { pos: p, color: 1 + batch, order_key: key });
                            key += 1;
                        }
                    }
                }
                state.push_pillars(new).unwrap();
                let mut fresh = state.clone();
                fresh.recompute_assignment();
                assert_eq!(fresh.assignment(), state.assignment(), "trial {trial}");
            }
        }
    }
}
