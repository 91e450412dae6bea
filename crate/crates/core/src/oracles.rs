//! Brute-force references and verifiers: exact clique and chromatic numbers,
//! coloring/certificate verification, and a naive P-degree reimplementation
//! for differential testing. Nothing here is performance-sensitive; clarity
//! and independence from the fast paths win every tie.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval_system::{segments_of, IntervalSystem, Segment};
use crate::perm_coloring::ClassColoring;
use crate::pillar_assignment::PillarAssignmentState;
use crate::position::Pos;

pub const DEFAULT_CLIQUE_CAP: usize = 500;
pub const DEFAULT_CHROMATIC_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    fn from_checks(checks: Vec<CheckResult>) -> Self {
        VerificationReport { passed: checks.iter().all(|c| c.passed), checks }
    }
}

fn check(name: &str, witness: Option<String>) -> CheckResult {
    CheckResult { name: name.to_string(), passed: witness.is_none(), witness }
}

#[derive(Clone)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn empty(n: usize) -> Self {
        BitSet { words: vec![0; n.div_ceil(64)] }
    }

    fn insert(&mut self, i: usize) {
        self.words[i >> 6] |= 1 << (i & 63);
    }

    fn remove(&mut self, i: usize) {
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i >> 6] & (1 << (i & 63)) != 0
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn and(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    fn and_count(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

/// Max clique of the overlap graph: branch and bound with a pivot, the
/// classic scheme where only candidates outside the pivot's neighborhood
/// branch.
fn max_clique(adj: &[BitSet], r: usize, p: &mut BitSet, best: &mut usize) {
    if p.is_empty() {
        *best = (*best).max(r);
        return;
    }
    if r + p.count() <= *best {
        return;
    }
    let pivot = p.iter().max_by_key(|&u| p.and_count(&adj[u])).unwrap();
    let branch: Vec<usize> = p.iter().filter(|&v| !adj[pivot].contains(v)).collect();
    for v in branch {
        let mut next = p.and(&adj[v]);
        max_clique(adj, r + 1, &mut next, best);
        p.remove(v);
    }
}

fn adjacency_bitsets(system: &IntervalSystem) -> Vec<BitSet> {
    let n = system.n();
    let g = system.overlap_graph();
    let mut adj = vec![BitSet::empty(n); n];
    for i in 0..n {
        for j in 0..n {
            if g.has_edge(i, j) {
                adj[i].insert(j);
            }
        }
    }
    adj
}

pub fn clique_number_exact(system: &IntervalSystem) -> Result<u32> {
    clique_number_exact_with_cap(system, DEFAULT_CLIQUE_CAP)
}

pub fn clique_number_exact_with_cap(system: &IntervalSystem, cap: usize) -> Result<u32> {
    let n = system.n();
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    if n == 0 {
        return Ok(0);
    }
    let adj = adjacency_bitsets(system);
    let mut p = BitSet::empty(n);
    for i in 0..n {
        p.insert(i);
    }
    let mut best = 0;
    max_clique(&adj, 0, &mut p, &mut best);
    Ok(best as u32)
}

pub fn chromatic_number_exact(system: &IntervalSystem) -> Result<u32> {
    chromatic_number_exact_with_cap(system, DEFAULT_CHROMATIC_CAP)
}

/// Exact chromatic number by branch and bound over color assignments.
/// Vertices are processed in decreasing-degree order; a greedy pass gives the
/// initial upper bound and the clique number the lower bound.
pub fn chromatic_number_exact_with_cap(system: &IntervalSystem, cap: usize) -> Result<u32> {
    let n = system.n();
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    if n == 0 {
        return Ok(0);
    }
    let g = system.overlap_graph();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));

    let mut colors = vec![0u32; n];
    let mut upper = 0u32;
    for &v in &order {
        let used: BTreeSet<u32> =
            g.neighbors(v).filter(|&w| colors[w] != 0).map(|w| colors[w]).collect();
        let c = (1..).find(|c| !used.contains(c)).unwrap();
        colors[v] = c;
        upper = upper.max(c);
    }
    let lower = clique_number_exact_with_cap(system, cap)?;
    if lower == upper {
        return Ok(lower);
    }

    fn bnb(
        i: usize,
        used: u32,
        order: &[usize],
        g: &crate::interval_system::OverlapGraph,
        colors: &mut Vec<u32>,
        best: &mut u32,
        lower: u32,
    ) {
        if used >= *best || *best == lower {
            return;
        }
        if i == order.len() {
            *best = used;
            return;
        }
        let v = order[i];
        let mut forbidden = 0u32;
        for w in g.neighbors(v) {
            if colors[w] != 0 {
                forbidden |= 1 << (colors[w] - 1);
            }
        }
        for c in 1..=used {
            if forbidden & (1 << (c - 1)) == 0 {
                colors[v] = c;
                bnb(i + 1, used, order, g, colors, best, lower);
            }
        }
        if used + 1 < *best {
            colors[v] = used + 1;
            bnb(i + 1, used + 1, order, g, colors, best, lower);
        }
        colors[v] = 0;
    }

    let mut best = upper;
    let mut scratch = vec![0u32; n];
    bnb(0, 0, &order, &g, &mut scratch, &mut best, lower);
    Ok(best)
}

/// Checks that the coloring is total and that no overlapping pair shares a
/// final color.
pub fn verify_proper(system: &IntervalSystem, coloring: &ClassColoring) -> VerificationReport {
    let n = system.n();
    let total = if coloring.records.len() != n {
        Some(format!("expected {n} records, found {}", coloring.records.len()))
    } else {
        coloring
            .records
            .iter()
            .position(|r| r.final_color == 0)
            .map(|i| format!("interval {i} has no final color"))
    };
    let mut checks = vec![check("coloring_total", total)];

    let mut proper = None;
    if coloring.records.len() == n {
        'outer: for i in 0..n {
            for j in i + 1..n {
                if crate::interval_system::overlaps(&system.interval(i), &system.interval(j))
                    && coloring.records[i].final_color == coloring.records[j].final_color
                {
                    proper = Some(format!(
                        "intervals {i} and {j} overlap and share final color {}",
                        coloring.records[i].final_color
                    ));
                    break 'outer;
                }
            }
        }
    }
    checks.push(check("proper", proper));
    VerificationReport::from_checks(checks)
}

/// Certifies the permutation-graph structure behind a coloring: in every
/// pillar-color class, each connected component of the induced overlap graph
/// sits on a single pillar, and every interval strictly contains the pillar
/// it is assigned to.
pub fn verify_permutation_certificate(
    system: &IntervalSystem,
    state: &PillarAssignmentState,
    coloring: &ClassColoring,
) -> VerificationReport {
    let n = system.n();
    let assignment = state.assignment();
    let pillars = state.pillars();

    let complete = assignment
        .iter()
        .position(|a| a.is_none())
        .map(|i| format!("interval {i} is not assigned to any pillar"));
    let mut checks = vec![check("assignment_complete", complete)];

    let mut records_match = if coloring.records.len() != n {
        Some(format!("expected {n} records, found {}", coloring.records.len()))
    } else {
        None
    };
    if records_match.is_none() {
        for (i, r) in coloring.records.iter().enumerate() {
            match assignment[i] {
                Some(p) if p == r.pillar && pillars[p].color == r.class_color => {}
                Some(p) => {
                    records_match = Some(format!(
                        "interval {i}: record says pillar {} class {}, state says pillar {p} class {}",
                        r.pillar, r.class_color, pillars[p].color
                    ));
                    break;
                }
                None => {
                    records_match = Some(format!("interval {i} has a record but no assignment"));
                    break;
                }
            }
        }
    }
    checks.push(check("records_match_assignment", records_match));

    let mut contains = None;
    for (i, a) in assignment.iter().enumerate() {
        if let Some(p) = a {
            let pos = pillars[*p].pos;
            if !system.interval(i).contains(pos) {
                contains = Some(format!("interval {i} does not contain its pillar at {pos}"));
                break;
            }
        }
    }
    checks.push(check("members_contain_pillar", contains));

    // Components of each class's induced overlap graph must share a pillar.
    let mut single = None;
    if assignment.iter().all(|a| a.is_some()) {
        let g = system.overlap_graph();
        let class_colors: BTreeSet<u32> =
            assignment.iter().map(|a| pillars[a.unwrap()].color).collect();
        'classes: for cc in class_colors {
            let members: Vec<usize> = (0..n)
                .filter(|&i| pillars[assignment[i].unwrap()].color == cc)
                .collect();
            let mut seen: BTreeSet<usize> = BTreeSet::new();
            for &start in &members {
                if seen.contains(&start) {
                    continue;
                }
                let mut component = vec![start];
                let mut stack = vec![start];
                seen.insert(start);
                while let Some(v) = stack.pop() {
                    for &w in &members {
                        if !seen.contains(&w) && g.has_edge(v, w) {
                            seen.insert(w);
                            component.push(w);
                            stack.push(w);
                        }
                    }
                }
                let hit: BTreeSet<usize> =
                    component.iter().map(|&v| assignment[v].unwrap()).collect();
                if hit.len() > 1 {
                    single = Some(format!(
                        "class {cc} component {component:?} spans pillars {hit:?}"
                    ));
                    break 'classes;
                }
            }
        }
    }
    checks.push(check("components_share_pillar", single));

    VerificationReport::from_checks(checks)
}

/// Naive reimplementation of the P-degree: enumerate every (segment of P,
/// segment of P ∪ {p1,p2}) pair and scan all intervals for a witness. Kept
/// deliberately independent of the fast endpoint-window version.
pub fn p_degree_oracle(
    system: &IntervalSystem,
    pillar_set: &[Pos],
    p1: Pos,
    p2: Pos,
) -> Result<usize> {
    let mut ps: Vec<Pos> = pillar_set.to_vec();
    ps.sort();
    ps.dedup();

    if p1 >= p2 {
        return Err(Error::IllegalPair { p1, p2, reason: "p1 must be strictly below p2" });
    }
    if !p1.is_interior() || !p2.is_interior() || system.is_endpoint(p1) || system.is_endpoint(p2) {
        return Err(Error::IllegalPair { p1, p2, reason: "positions must be pillar-eligible" });
    }
    let both_in = ps.contains(&p1) && ps.contains(&p2);
    if !both_in && ps.iter().any(|&q| p1 < q && q < p2) {
        return Err(Error::IllegalPair {
            p1,
            p2,
            reason: "pair is neither within the pillar set nor inside one segment",
        });
    }

    let mut extended = ps.clone();
    extended.push(p1);
    extended.push(p2);
    extended.sort();
    extended.dedup();

    let coarse = segments_of(&ps);
    let fine = segments_of(&extended);

    let inside = |s: &Segment, x: Pos| s.lo < x && x < s.hi;
    let mut count = 0;
    for s1 in coarse.iter().filter(|s| s.disjoint_from(p1, p2)) {
        for s2 in fine.iter().filter(|s| p1 <= s.lo && s.hi <= p2) {
            let witnessed = (0..system.n()).any(|i| {
                let iv = system.interval(i);
                (inside(s1, iv.left) && inside(s2, iv.right))
                    || (inside(s2, iv.left) && inside(s1, iv.right))
            });
            if witnessed {
                count += 1;
            }
        }
    }
    Ok(count)
}
