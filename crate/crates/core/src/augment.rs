//! The augmenting loop that completes a pillar assignment.
//!
//! Each step picks the lowest-indexed uncovered interval `I` inside a segment
//! `S`, collects the pillars `P₁` already fed by intervals with an end in
//! `S`, sweeps `S` left to right emitting a quota pillar whenever the running
//! `P₁`-degree hits the quota `Q`, adds one covering pillar `p*` inside `I`,
//! and merges the new set — ordered and colored by the balanced recursion
//! with colors that avoid `colors(P₁)` — strictly after every existing
//! pillar. That placement discipline is what keeps condition (1) intact,
//! every previously assigned interval on its old pillar, and the maximum
//! segment degree within the budget `B`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::balanced_order::{adaptive_k, build_balanced, BalancedOrderResult};
use crate::error::{Error, Result};
use crate::interval_system::{IntervalSystem, Segment};
use crate::oracles::clique_number_exact;
use crate::perm_coloring::{compose, fibers, ClassColoring};
use crate::pillar_assignment::{Pillar, PillarAssignmentState};
use crate::position::Pos;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    Default,
    Omega2,
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentConfig {
    pub omega: u32,
    pub quota: usize,
    pub budget: usize,
    pub palette_size: usize,
    pub profile: Profile,
}

/// Smallest `L` with `2^L ≥ x`.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

impl AugmentConfig {
    /// Profile constants for a clique number: ω = 2 uses the fixed omega2
    /// numbers (10, 12, 14); ω ≥ 3 uses Q = ω+8, B = ω+⌈2log₂ω⌉+8,
    /// palette = ω+2⌈2log₂ω⌉+8.
    pub fn for_omega(omega: u32) -> Result<AugmentConfig> {
        if omega < 2 {
            return Err(Error::BadConfig(format!(
                "profiles require omega >= 2, got {omega}"
            )));
        }
        let cfg = if omega == 2 {
            AugmentConfig {
                omega,
                quota: 10,
                budget: 12,
                palette_size: 14,
                profile: Profile::Omega2,
            }
        } else {
            let l = ceil_log2(omega as u64 * omega as u64) as usize;
            AugmentConfig {
                omega,
                quota: omega as usize + 8,
                budget: omega as usize + l + 8,
                palette_size: omega as usize + 2 * l + 8,
                profile: Profile::Default,
            }
        };
        cfg.check_closure()?;
        Ok(cfg)
    }

    pub fn custom(omega: u32, quota: usize, budget: usize, palette_size: usize) -> Result<AugmentConfig> {
        let cfg = AugmentConfig { omega, quota, budget, palette_size, profile: Profile::Custom };
        cfg.check_closure()?;
        Ok(cfg)
    }

    /// Largest quota-pillar count a step can produce: the degree argument
    /// gives (Q − ω)·t < ω·B.
    pub fn max_quota_pillars(&self) -> usize {
        (self.omega as usize * self.budget - 1) / (self.quota - self.omega as usize)
    }

    /// Worst-case |P*| = quota pillars + the covering pillar.
    pub fn max_step_pillars(&self) -> usize {
        self.max_quota_pillars() + 1
    }

    /// Worst-case fresh colors per step.
    pub fn k_max(&self) -> usize {
        adaptive_k(self.max_step_pillars())
    }

    /// The arithmetic that keeps every step within budget and palette:
    /// B ≥ Q + k_max, palette ≥ B + k_max, palette ≤ 7ω.
    pub fn check_closure(&self) -> Result<()> {
        if self.omega < 2 {
            return Err(Error::BadConfig(format!(
                "omega must be at least 2, got {}",
                self.omega
            )));
        }
        if self.quota <= self.omega as usize {
            return Err(Error::BadConfig(format!(
                "quota {} must exceed omega {}",
                self.quota, self.omega
            )));
        }
        let k_max = self.k_max();
        if self.budget < self.quota + k_max {
            return Err(Error::BadConfig(format!(
                "budget {} below quota {} + k_max {k_max}",
                self.budget, self.quota
            )));
        }
        if self.palette_size < self.budget + k_max {
            return Err(Error::BadConfig(format!(
                "palette {} below budget {} + k_max {k_max}",
                self.palette_size, self.budget
            )));
        }
        if self.palette_size > 7 * self.omega as usize {
            return Err(Error::BadConfig(format!(
                "palette {} exceeds 7*omega = {}",
                self.palette_size,
                7 * self.omega
            )));
        }
        Ok(())
    }
}

/// Everything one augmentation step decided, kept for tracing and tests.
#[derive(Clone, Debug)]
pub struct AugmentContext {
    pub interval: usize,
    pub segment: Segment,
    /// Indices of pillars already assigned from an end inside the segment.
    pub p1: Vec<usize>,
    pub quota_pillars: Vec<Pos>,
    pub star: Pos,
    pub fresh_colors: Vec<u32>,
    pub balanced: BalancedOrderResult,
}

/// One JSON line per step under `--trace`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepTrace {
    pub step: usize,
    pub interval: usize,
    pub segment: Segment,
    pub p1_len: usize,
    pub p1_colors: Vec<u32>,
    pub quota_len: usize,
    pub p_star_len: usize,
    pub k: usize,
    pub fresh_colors: Vec<u32>,
    pub max_degree_after: usize,
    pub covered_after: usize,
}

/// Lowest-indexed uncovered interval and the pillar segment containing it,
/// or `None` when the assignment is complete.
pub fn find_uncovered(state: &PillarAssignmentState) -> Option<(usize, Segment)> {
    let i = state.assignment().iter().position(|a| a.is_none())?;
    let iv = state.system().interval(i);
    let seg = state.segment_around(iv.left);
    debug_assert!(
        seg.contains(iv.right),
        "uncovered interval must lie inside one segment"
    );
    Some((i, seg))
}

/// Pillars receiving an assignment from some interval with an end in `s`.
pub fn compute_p1(state: &PillarAssignmentState, s: &Segment) -> Vec<usize> {
    let mut set = BTreeSet::new();
    for e in state.system().endpoints_in(s.lo, s.hi) {
        if let Some(p) = state.assignment()[e.interval] {
            set.insert(p);
        }
    }
    set.into_iter().collect()
}

/// Sweeps the endpoints of `s` left to right, tracking which segments of
/// `p1_positions` (other than the one around `s`) are reached by partners of
/// the endpoints seen since the last emission. Each time that count reaches
/// `quota`, the midpoint of the gap to the next endpoint becomes a pillar and
/// the count resets. Reaching the quota on the last endpoint emits nothing:
/// the trailing stretch is allowed degree up to the quota.
pub fn greedy_quota_pillars(
    system: &IntervalSystem,
    p1_positions: &[Pos],
    s: &Segment,
    quota: usize,
) -> Vec<Pos> {
    debug_assert!(p1_positions.windows(2).all(|w| w[0] < w[1]));
    debug_assert!(p1_positions.iter().all(|p| !s.contains(*p)));
    // All of s sits in one p1-segment; a partner in that same segment never
    // counts because that segment is not disjoint from the window.
    let ambient = p1_positions.partition_point(|&p| p < s.lo);
    let eps = system.endpoints_in(s.lo, s.hi);
    let mut hit: BTreeSet<usize> = BTreeSet::new();
    let mut out = Vec::new();
    for (i, e) in eps.iter().enumerate() {
        let partner = system.partner(e);
        let seg = p1_positions.partition_point(|&p| p < partner);
        if seg != ambient {
            hit.insert(seg);
        }
        if hit.len() >= quota {
            if let Some(next) = eps.get(i + 1) {
                out.push(Pos::midpoint(e.pos, next.pos));
                hit.clear();
            }
        }
    }
    out
}

/// The covering pillar for interval `i`: midpoint of the gap between the last
/// endpoint inside the interval and its right end. If a quota pillar already
/// sits in that gap, the free sub-gap against the right end is used instead.
pub fn cover_position(system: &IntervalSystem, i: usize, quota_pillars: &[Pos]) -> Pos {
    let iv = system.interval(i);
    let inside = system.endpoints_in(iv.left, iv.right);
    let gap_lo = inside.last().map_or(iv.left, |e| e.pos);
    let occupied: Vec<Pos> = quota_pillars
        .iter()
        .copied()
        .filter(|&q| gap_lo < q && q < iv.right)
        .collect();
    debug_assert!(occupied.len() <= 1, "at most one quota pillar per endpoint gap");
    match occupied.first() {
        Some(&q) => Pos::midpoint(q, iv.right),
        None => Pos::midpoint(gap_lo, iv.right),
    }
}

/// Plans one step without touching the state.
pub fn plan_step(
    state: &PillarAssignmentState,
    config: &AugmentConfig,
) -> Result<Option<AugmentContext>> {
    let Some((interval, segment)) = find_uncovered(state) else {
        return Ok(None);
    };
    let system = state.system();
    let p1 = compute_p1(state, &segment);
    let p1_positions: Vec<Pos> = {
        let mut v: Vec<Pos> = p1.iter().map(|&p| state.pillars()[p].pos).collect();
        v.sort();
        v
    };
    let p1_colors: BTreeSet<u32> = p1.iter().map(|&p| state.pillars()[p].color).collect();

    let quota_pillars = greedy_quota_pillars(system, &p1_positions, &segment, config.quota);
    let star = cover_position(system, interval, &quota_pillars);
    let mut p_star: Vec<Pos> = quota_pillars.clone();
    p_star.push(star);
    p_star.sort();

    let k = adaptive_k(p_star.len());
    let fresh_colors: Vec<u32> = (1..=config.palette_size as u32)
        .filter(|c| !p1_colors.contains(c))
        .take(k)
        .collect();
    if fresh_colors.len() < k {
        return Err(Error::PaletteExhausted { needed: k, available: fresh_colors.len() });
    }
    let balanced = build_balanced(&p_star, &fresh_colors, system)?;
    Ok(Some(AugmentContext {
        interval,
        segment,
        p1,
        quota_pillars,
        star,
        fresh_colors,
        balanced,
    }))
}

/// Plans and applies one step: new pillars are appended strictly after every
/// existing order key, so prior assignments survive untouched. Returns the
/// applied context, or `None` when the assignment was already complete.
pub fn augment_step(
    state: &mut PillarAssignmentState,
    config: &AugmentConfig,
) -> Result<Option<AugmentContext>> {
    let Some(ctx) = plan_step(state, config)? else {
        return Ok(None);
    };
    let base = state.pillars().iter().map(|p| p.order_key).max().map_or(0, |m| m + 1);
    let shifted: Vec<Pillar> = ctx
        .balanced
        .ordered_pillars
        .iter()
        .map(|p| Pillar { order_key: p.order_key + base, ..*p })
        .collect();
    state.push_pillars(shifted)?;
    assert!(
        state.assignment()[ctx.interval].is_some(),
        "covering pillar must capture the uncovered interval"
    );
    let max_degree = state.max_degree();
    if max_degree > config.budget {
        return Err(Error::BudgetViolated { max_degree, budget: config.budget });
    }
    Ok(Some(ctx))
}

/// A finished run: the complete assignment, the composed coloring, and one
/// trace entry per augmentation step.
#[derive(Clone, Debug)]
pub struct ColoringRun {
    pub omega: u32,
    pub config: Option<AugmentConfig>,
    pub state: PillarAssignmentState,
    pub coloring: ClassColoring,
    pub traces: Vec<StepTrace>,
}

/// Colors a whole system: computes ω (oracle, unless a config fixes it),
/// handles ω ≤ 1 directly, otherwise augments until complete and composes
/// fiber colorings. The returned class count never exceeds the palette size
/// (≤ 7ω), the final color count never exceeds 7ω².
pub fn color_system(
    system: IntervalSystem,
    config: Option<AugmentConfig>,
) -> Result<ColoringRun> {
    let omega = match &config {
        Some(c) => c.omega,
        None => clique_number_exact(&system)?,
    };
    if omega <= 1 {
        return trivial_cover(system, omega);
    }
    let cfg = match config {
        Some(c) => {
            c.check_closure()?;
            c
        }
        None => AugmentConfig::for_omega(omega)?,
    };

    let n = system.n();
    let mut state = PillarAssignmentState::new(system);
    let mut traces = Vec::new();
    while let Some(ctx) = augment_step(&mut state, &cfg)? {
        let trace = StepTrace {
            step: traces.len() + 1,
            interval: ctx.interval,
            segment: ctx.segment,
            p1_len: ctx.p1.len(),
            p1_colors: ctx.p1.iter().map(|&p| state.pillars()[p].color).collect(),
            quota_len: ctx.quota_pillars.len(),
            p_star_len: ctx.quota_pillars.len() + 1,
            k: ctx.balanced.k_used,
            fresh_colors: ctx.fresh_colors.clone(),
            max_degree_after: state.max_degree(),
            covered_after: state.covered_count(),
        };
        traces.push(trace);
        assert!(traces.len() <= n, "augmentation failed to terminate");
    }

    assert!(state.is_complete(), "loop ended with uncovered intervals");
    let violations = state.check_condition1();
    assert!(violations.is_empty(), "condition (1) violated: {violations:?}");
    assert!(state.max_degree() <= cfg.budget);
    let classes: BTreeSet<u32> = state.pillars().iter().map(|p| p.color).collect();
    assert!(classes.len() <= cfg.palette_size);

    let fs = fibers(&state)?;
    let coloring = compose(&state, &fs)?;
    Ok(ColoringRun { omega, config: Some(cfg), state, coloring, traces })
}

/// ω ≤ 1 means no two intervals overlap: one pillar per interval, placed in
/// the endpoint gap just inside its right end (those gaps are distinct across
/// intervals), everything colored 1.
fn trivial_cover(system: IntervalSystem, omega: u32) -> Result<ColoringRun> {
    let pillars: Vec<Pillar> = system
        .intervals()
        .iter()
        .enumerate()
        .map(|(i, iv)| {
            let inside = system.endpoints_in(iv.left, iv.right);
            let gap_lo = inside.last().map_or(iv.left, |e| e.pos);
            Pillar { pos: Pos::midpoint(gap_lo, iv.right), color: 1, order_key: i as u64 }
        })
        .collect();
    let state = PillarAssignmentState::with_pillars(system, pillars)?;
    debug_assert!(state.is_complete());
    debug_assert!(state.check_condition1().is_empty());
    let fs = fibers(&state)?;
    let coloring = compose(&state, &fs)?;
    Ok(ColoringRun { omega, config: None, state, coloring, traces: Vec::new() })
}
