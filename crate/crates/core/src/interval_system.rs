//! Interval systems on the unit interval and their overlap structure.
//!
//! A system is a finite set of open intervals with pairwise distinct
//! endpoints. Raw integer input is normalized so that the `2n` endpoints sit
//! at `r/(2n+1)` for ranks `r = 1..2n`; only the relative order of the raw
//! values matters. Two intervals *overlap* when they intersect but neither
//! contains the other, i.e. their endpoints interleave. The overlap graph of
//! a system is the circle graph it represents.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::position::Pos;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub left: Pos,
    pub right: Pos,
}

impl Interval {
    /// Open-interval membership.
    pub fn contains(&self, p: Pos) -> bool {
        self.left < p && p < self.right
    }
}

/// One endpoint of one interval, in the system-wide sorted order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Endpoint {
    pub pos: Pos,
    pub interval: usize,
    pub is_left: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSystem {
    intervals: Vec<Interval>,
    /// All `2n` endpoints sorted by position.
    endpoints: Vec<Endpoint>,
}

impl IntervalSystem {
    /// Builds a system from raw integer endpoint pairs, mapping the sorted
    /// endpoint values to ranks `1..2n` over denominator `2n+1`.
    ///
    /// `[[10, 30], [20, 40]]` becomes `{(1/5, 3/5), (2/5, 4/5)}`.
    pub fn normalize(raw: &[(i64, i64)]) -> Result<IntervalSystem> {
        for &(l, r) in raw {
            if l >= r {
                return Err(Error::DegenerateInterval { left: l, right: r });
            }
        }
        let mut values: Vec<i64> = raw.iter().flat_map(|&(l, r)| [l, r]).collect();
        values.sort_unstable();
        for w in values.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEndpoint { value: w[0] });
            }
        }
        let den = 2 * raw.len() as i64 + 1;
        let rank = |v: i64| values.partition_point(|&x| x < v) as i64 + 1;
        let intervals: Vec<Interval> = raw
            .iter()
            .map(|&(l, r)| {
                Ok(Interval {
                    left: Pos::new(rank(l), den)?,
                    right: Pos::new(rank(r), den)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(IntervalSystem::from_normalized(intervals))
    }

    fn from_normalized(intervals: Vec<Interval>) -> IntervalSystem {
        let mut endpoints: Vec<Endpoint> = intervals
            .iter()
            .enumerate()
            .flat_map(|(i, iv)| {
                [
                    Endpoint { pos: iv.left, interval: i, is_left: true },
                    Endpoint { pos: iv.right, interval: i, is_left: false },
                ]
            })
            .collect();
        endpoints.sort_by_key(|e| e.pos);
        IntervalSystem { intervals, endpoints }
    }

    pub fn n(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn interval(&self, i: usize) -> Interval {
        self.intervals[i]
    }

    /// All endpoints in ascending position order.
    pub fn endpoints(&self) -> &[Endpoint] {
        &self.endpoints
    }

    /// Endpoints strictly inside the open interval `(lo, hi)`.
    pub fn endpoints_in(&self, lo: Pos, hi: Pos) -> &[Endpoint] {
        let a = self.endpoints.partition_point(|e| e.pos <= lo);
        let b = self.endpoints.partition_point(|e| e.pos < hi);
        &self.endpoints[a..b]
    }

    /// The other end of the interval that `e` belongs to.
    pub fn partner(&self, e: &Endpoint) -> Pos {
        let iv = self.intervals[e.interval];
        if e.is_left {
            iv.right
        } else {
            iv.left
        }
    }

    /// True when `p` coincides with some endpoint (and is therefore not a
    /// legal pillar position).
    pub fn is_endpoint(&self, p: Pos) -> bool {
        self.endpoints
            .binary_search_by(|e| e.pos.cmp(&p))
            .is_ok()
    }

    /// Rank-encoded endpoint pairs, the canonical raw form: feeding them back
    /// through [`IntervalSystem::normalize`] reproduces this system exactly.
    pub fn rank_pairs(&self) -> Vec<(i64, i64)> {
        let rank_of = |p: Pos| self.endpoints.partition_point(|e| e.pos < p) as i64 + 1;
        self.intervals
            .iter()
            .map(|iv| (rank_of(iv.left), rank_of(iv.right)))
            .collect()
    }

    pub fn overlap_graph(&self) -> OverlapGraph {
        OverlapGraph::build(self)
    }
}

/// Endpoint interleaving test: `a` and `b` overlap iff
/// `a.left < b.left < a.right < b.right` or vice versa.
pub fn overlaps(a: &Interval, b: &Interval) -> bool {
    (a.left < b.left && b.left < a.right && a.right < b.right)
        || (b.left < a.left && a.left < b.right && b.right < a.right)
}

#[derive(Clone, Debug)]
pub struct OverlapGraph {
    n: usize,
    adj: Vec<Vec<bool>>,
    component_id: Vec<usize>,
    num_components: usize,
    num_edges: usize,
}

impl OverlapGraph {
    fn build(system: &IntervalSystem) -> OverlapGraph {
        let n = system.n();
        let mut adj = vec![vec![false; n]; n];
        let mut num_edges = 0;
        for i in 0..n {
            for j in i + 1..n {
                if overlaps(&system.intervals[i], &system.intervals[j]) {
                    adj[i][j] = true;
                    adj[j][i] = true;
                    num_edges += 1;
                }
            }
        }
        // Components by depth-first search.
        let mut component_id = vec![usize::MAX; n];
        let mut num_components = 0;
        for start in 0..n {
            if component_id[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            component_id[start] = num_components;
            while let Some(v) = stack.pop() {
                for u in 0..n {
                    if adj[v][u] && component_id[u] == usize::MAX {
                        component_id[u] = num_components;
                        stack.push(u);
                    }
                }
            }
            num_components += 1;
        }
        OverlapGraph { n, adj, component_id, num_components, num_edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i]
            .iter()
            .enumerate()
            .filter_map(|(j, &e)| e.then_some(j))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].iter().filter(|&&e| e).count()
    }

    pub fn component_id(&self) -> &[usize] {
        &self.component_id
    }

    pub fn num_components(&self) -> usize {
        self.num_components
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }
}

/// A maximal pillar-free gap: an open interval with ends in the point set or
/// at the outer bounds 0 and 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub lo: Pos,
    pub hi: Pos,
}

impl Segment {
    pub fn contains(&self, p: Pos) -> bool {
        self.lo < p && p < self.hi
    }

    /// True when the open intervals are disjoint.
    pub fn disjoint_from(&self, lo: Pos, hi: Pos) -> bool {
        self.hi <= lo || self.lo >= hi
    }
}

/// The `|points| + 1` segments cut out of `(0, 1)` by a sorted set of
/// interior points.
pub fn segments_of(points: &[Pos]) -> Vec<Segment> {
    debug_assert!(points.windows(2).all(|w| w[0] < w[1]), "points must be sorted and distinct");
    debug_assert!(points.iter().all(|p| p.is_interior()));
    let mut bounds = Vec::with_capacity(points.len() + 2);
    bounds.push(Pos::ZERO);
    bounds.extend_from_slice(points);
    bounds.push(Pos::ONE);
    bounds
        .windows(2)
        .map(|w| Segment { lo: w[0], hi: w[1] })
        .collect()
}
