//! Shared fixtures for the criterion benches.

use circlecolor::{gen_uniform_matching, IntervalSystem, Pos};

/// A random matching together with an evenly spread pillar set and the
/// outermost pillar pair, ready for P-degree measurements.
pub fn p_degree_fixture(
    n: usize,
    seed: u64,
    num_pillars: usize,
) -> (IntervalSystem, Vec<Pos>, Pos, Pos) {
    let system = gen_uniform_matching(n, seed);
    let eps = system.endpoints();
    assert!(num_pillars >= 2 && num_pillars < eps.len());
    let stride = eps.len() / num_pillars;
    let pillars: Vec<Pos> = (0..num_pillars)
        .map(|i| Pos::midpoint(eps[i * stride].pos, eps[i * stride + 1].pos))
        .collect();
    let p1 = pillars[0];
    let p2 = pillars[num_pillars - 1];
    (system, pillars, p1, p2)
}
