#![allow(dead_code)]

use judicious::{generate, GenMode, GenSpec, MultiHypergraph, SplitMix64};

/// A generated instance with the parameters that produced it.
#[derive(Debug, Clone)]
pub struct Instance {
    pub r: usize,
    pub seed: u64,
    pub spec: GenSpec,
    pub h: MultiHypergraph,
}

fn choose(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Deterministic instance for `(r, seed)`: `n` in `r..=14`, `m` in `0..=50`,
/// mode cycling through uniform-random, multi-heavy and (where small
/// enough) complete.
pub fn instance(r: usize, seed: u64) -> Instance {
    let mut rng = SplitMix64::new(seed.wrapping_mul(0x1000_0000_01B3) ^ (r as u64) << 56);
    let n = r + rng.below((15 - r) as u64) as usize;
    let mut m = rng.below(51) as usize;
    let mode = match seed % 3 {
        0 => GenMode::UniformRandom,
        1 => GenMode::MultiHeavy,
        _ => {
            let all = choose(n, r);
            if all <= 50 {
                m = m.min(all);
                GenMode::Complete
            } else {
                GenMode::UniformRandom
            }
        }
    };
    let spec = GenSpec {
        r,
        n,
        m: Some(m),
        seed: rng.next_u64(),
        mode,
    };
    let h = generate(&spec).expect("valid generator spec");
    Instance { r, seed, spec, h }
}

/// The acceptance corpus: `per_r` instances for each `r` in `2..=6`.
pub fn corpus(per_r: u64) -> Vec<Instance> {
    (2..=6)
        .flat_map(|r| (0..per_r).map(move |s| instance(r, s)))
        .collect()
}

/// Coverage of each class, counted edge by edge without any crate helper.
pub fn recount(h: &MultiHypergraph, assignment: &[usize], r: usize) -> Vec<usize> {
    let mut cover = vec![0; r];
    for edge in h.edges() {
        for (c, slot) in cover.iter_mut().enumerate() {
            if edge.iter().any(|&v| assignment[v] == c) {
                *slot += 1;
            }
        }
    }
    cover
}

/// Coverage of an explicit vertex list.
pub fn meets(h: &MultiHypergraph, set: &[usize]) -> usize {
    h.edges()
        .iter()
        .filter(|e| e.iter().any(|v| set.contains(v)))
        .count()
}

/// `count >= num/den` by cross-multiplication.
pub fn at_least(count: usize, num: u64, den: u64) -> bool {
    count as u128 * den as u128 >= num as u128
}

pub fn assignment_of(classes: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut a = vec![usize::MAX; n];
    for (c, class) in classes.iter().enumerate() {
        for &v in class {
            a[v] = c;
        }
    }
    a
}
