//! The end-to-end partitioner.
//!
//! For `r >= 3`, a vertex meeting at least `c_r·m` edges becomes a class of
//! its own and the remaining problem is solved one level down on the
//! (r-1)-uniform hypergraph obtained by shrinking every edge away from it.
//! Otherwise the maximum degree is below `τ = c_r·m` and the solver starts
//! from a local optimum of `Σ_i d(V_i)`, ordered by descending coverage:
//!
//! * the weakest class already meets `τ`: done;
//! * case 1, the second weakest meets `τ`: shrink classes to minimal good
//!   sets and hand the rest to the weakest;
//! * case 2 (`r >= 4`), every class meets at least `τ/2`: pair each class
//!   below `τ` with a class meeting `2τ` and recombine;
//! * case 3 (`r >= 4`), some class meets fewer than `τ/2` edges: classes in
//!   `[τ/2, τ)` take one strong partner, classes below `τ/2` consume two
//!   strong partners which are resplit into three good classes.
//!
//! Each branch is backed by a counting argument; when one fails the solver
//! reports a logic error carrying a diagnostic dump instead of guessing.

use std::collections::BTreeMap;

use crate::certificate::{verify_certificate, Certificate, Verification};
use crate::error::{Diagnostic, Error, Result};
use crate::format::serialize_instance;
use crate::hypergraph::{MultiHypergraph, VertexSet};
use crate::local_search::improve_to_local_optimum;
use crate::partition::{CoverageProfile, Partition};
use crate::refinement::{apply_lemma_aab, combine_big_small, combine_two_bigs, AabOutcome};
use crate::threshold::Threshold;

/// `c_r` as `(numerator, denominator)`: 2/3, 5/9, then `r/(3r-4)`.
pub fn judicious_constant(r: usize) -> Result<(u64, u64)> {
    match r {
        0 | 1 => Err(Error::input(format!("r must be at least 2, got {r}"))),
        2 => Ok((2, 3)),
        3 => Ok((5, 9)),
        _ => Ok((r as u64, 3 * r as u64 - 4)),
    }
}

/// `τ = c_r·m` as an exact rational.
pub fn threshold(r: usize, m: usize) -> Result<Threshold> {
    let (num, den) = judicious_constant(r)?;
    Threshold::new(num * m as u64, den)
}

/// Class counts by coverage band relative to `τ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CaseProfile {
    /// `d >= 2τ`
    pub big: usize,
    /// `τ <= d < 2τ`
    pub mid: usize,
    /// `τ/2 <= d < τ`
    pub low: usize,
    /// `d < τ/2`
    pub very_low: usize,
}

impl CaseProfile {
    pub fn of(coverage: &[usize], tau: &Threshold) -> Self {
        let (two, half) = (tau.times(2), tau.divided_by(2));
        let mut prof = CaseProfile::default();
        for &d in coverage {
            let d = d as u64;
            if two.is_met_by(d) {
                prof.big += 1;
            } else if tau.is_met_by(d) {
                prof.mid += 1;
            } else if half.is_met_by(d) {
                prof.low += 1;
            } else {
                prof.very_low += 1;
            }
        }
        prof
    }

    /// Classes below `τ`.
    pub fn bad(&self) -> usize {
        self.low + self.very_low
    }

    pub fn total(&self) -> usize {
        self.big + self.mid + self.low + self.very_low
    }
}

/// Which branch settled a level of the recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Empty,
    Reduced,
    Settled,
    Case1,
    Case2,
    Case3,
}

/// Instrumentation collected over one solver run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Branch entries keyed by the level's class count `r`.
    pub branches: BTreeMap<usize, BTreeMap<Branch, usize>>,
    /// Deepest recursion level reached (the top level is depth 0).
    pub max_depth: usize,
}

impl SolveStats {
    fn record(&mut self, r: usize, branch: Branch) {
        *self
            .branches
            .entry(r)
            .or_default()
            .entry(branch)
            .or_default() += 1;
    }

    pub fn count(&self, r: usize, branch: Branch) -> usize {
        self.branches
            .get(&r)
            .and_then(|b| b.get(&branch))
            .copied()
            .unwrap_or(0)
    }

    pub fn merge(&mut self, other: &SolveStats) {
        for (&r, branches) in &other.branches {
            for (&b, &n) in branches {
                *self.branches.entry(r).or_default().entry(b).or_default() += n;
            }
        }
        self.max_depth = self.max_depth.max(other.max_depth);
    }
}

/// Partitions an r-uniform multi-hypergraph into r classes that each meet
/// at least `c_r·m` edges, and returns the verified certificate.
pub fn partition_judicious(h: &MultiHypergraph, r: usize) -> Result<Certificate> {
    partition_judicious_with_stats(h, r).map(|(cert, _)| cert)
}

pub fn partition_judicious_with_stats(
    h: &MultiHypergraph,
    r: usize,
) -> Result<(Certificate, SolveStats)> {
    solve(h, r, None)
}

/// As [`partition_judicious_with_stats`], but the top-level local search
/// starts from `start` instead of the round-robin partition. The start is
/// ignored when a high-degree vertex forces a reduction to `r - 1` classes.
pub fn partition_judicious_from(
    h: &MultiHypergraph,
    r: usize,
    start: &Partition,
) -> Result<(Certificate, SolveStats)> {
    if start.class_count() != r || start.vertex_count() != h.vertex_count() {
        return Err(Error::input(format!(
            "start partition must assign all {} vertices to {r} classes",
            h.vertex_count()
        )));
    }
    solve(h, r, Some(start))
}

fn solve(
    h: &MultiHypergraph,
    r: usize,
    start: Option<&Partition>,
) -> Result<(Certificate, SolveStats)> {
    judicious_constant(r)?;
    if !h.is_uniform(r) {
        return Err(Error::input(format!("hypergraph is not {r}-uniform")));
    }
    let mut stats = SolveStats::default();
    let p = solve_level(h, r, 0, start, &mut stats)?;
    let cert = Certificate::for_partition(h, &p)?;
    if let Verification::Invalid(why) = verify_certificate(h, &cert) {
        return Err(with_dump(
            Error::logic(format!("final certificate rejected: {why}")),
            h,
            &p,
        ));
    }
    Ok((cert, stats))
}

fn with_dump(err: Error, h: &MultiHypergraph, p: &Partition) -> Error {
    let message = match err {
        Error::Logic {
            diagnostic: Some(_),
            ..
        } => return err,
        Error::Logic { message, .. } => message,
        other => other.to_string(),
    };
    Error::Logic {
        message,
        diagnostic: Some(Box::new(Diagnostic {
            instance: serialize_instance(h),
            assignment: p.to_index_line(),
        })),
    }
}

fn solve_level(
    h: &MultiHypergraph,
    r: usize,
    depth: usize,
    start: Option<&Partition>,
    stats: &mut SolveStats,
) -> Result<Partition> {
    stats.max_depth = stats.max_depth.max(depth);
    let n = h.vertex_count();
    let m = h.edge_count();
    let tau = threshold(r, m)?;

    if m == 0 {
        stats.record(r, Branch::Empty);
        return Ok(Partition::round_robin(n, r));
    }

    if r >= 3 {
        if let Some((v, deg)) = h
            .max_degree_vertex()
            .filter(|&(_, d)| tau.is_met_by(d as u64))
        {
            stats.record(r, Branch::Reduced);
            let shrunk = h.shrink_uniformity(v)?;
            debug_assert_eq!(shrunk.edge_count(), m);
            let sub = solve_level(&shrunk, r - 1, depth + 1, None, stats)?;
            let mut assignment = sub.assignment().to_vec();
            assignment[v] = r - 1;
            let p = Partition::new(r, assignment)?;
            debug_assert!(tau.is_met_by(deg as u64));
            return check_level(h, p, &tau);
        }
    }

    let p = match start {
        Some(s) => improve_to_local_optimum(h, s)?,
        None => improve_to_local_optimum(h, &Partition::round_robin(n, r))?,
    };
    let prof = CoverageProfile::of(h, &p)?;
    let weakest = prof.order[r - 1];
    let second = prof.order[r - 2];

    let branch = if tau.is_met_by(prof.coverage[weakest] as u64) {
        Branch::Settled
    } else if tau.is_met_by(prof.coverage[second] as u64) {
        Branch::Case1
    } else if tau.divided_by(2).is_met_by(prof.coverage[weakest] as u64) {
        Branch::Case2
    } else {
        Branch::Case3
    };
    stats.record(r, branch);

    let result = match branch {
        Branch::Settled => Ok(p.clone()),
        Branch::Case1 => case_one(h, &p, weakest, &tau),
        Branch::Case2 | Branch::Case3 if r < 4 => Err(Error::logic(format!(
            "second weakest class below τ at r = {r}"
        ))),
        Branch::Case2 => case_two(h, &p, &prof, &tau),
        Branch::Case3 => case_three(h, &p, &prof, &tau),
        Branch::Empty | Branch::Reduced => unreachable!(),
    };
    result
        .and_then(|q| check_level(h, q, &tau))
        .map_err(|e| with_dump(e, h, &p))
}

fn check_level(h: &MultiHypergraph, p: Partition, tau: &Threshold) -> Result<Partition> {
    let prof = CoverageProfile::of(h, &p)?;
    if let Some((class, d)) = prof
        .coverage
        .iter()
        .enumerate()
        .find(|(_, &d)| !tau.is_met_by(d as u64))
    {
        return Err(with_dump(
            Error::logic(format!("class {class} meets {d} < τ = {tau} edges")),
            h,
            &p,
        ));
    }
    Ok(p)
}

fn case_one(
    h: &MultiHypergraph,
    p: &Partition,
    weakest: usize,
    tau: &Threshold,
) -> Result<Partition> {
    match apply_lemma_aab(h, p, weakest, tau)? {
        AabOutcome::Good(q) => Ok(q),
        AabOutcome::Shrunk(_) => Err(Error::logic(
            "shrinking to minimal good classes left the receiving class below τ",
        )),
    }
}

/// Classes meeting at least `2τ`, by descending coverage.
fn big_classes(prof: &CoverageProfile, tau: &Threshold) -> Vec<usize> {
    let two = tau.times(2);
    prof.order
        .iter()
        .copied()
        .filter(|&c| two.is_met_by(prof.coverage[c] as u64))
        .collect()
}

/// Classes below `τ`, by ascending coverage then ascending index.
fn bad_classes(prof: &CoverageProfile, tau: &Threshold) -> Vec<usize> {
    let mut bad: Vec<usize> = (0..prof.coverage.len())
        .filter(|&c| !tau.is_met_by(prof.coverage[c] as u64))
        .collect();
    bad.sort_by_key(|&c| (prof.coverage[c], c));
    bad
}

fn case_two(
    h: &MultiHypergraph,
    p: &Partition,
    prof: &CoverageProfile,
    tau: &Threshold,
) -> Result<Partition> {
    let bigs = big_classes(prof, tau);
    let bads = bad_classes(prof, tau);
    if bigs.len() < bads.len() {
        return Err(Error::logic(format!(
            "{} classes meet 2τ but {} classes are below τ",
            bigs.len(),
            bads.len()
        )));
    }
    let mut classes = p.classes();
    for (&bad, &big) in bads.iter().zip(&bigs) {
        let [joined, rest] = combine_big_small(h, &classes[big], &classes[bad], tau)?;
        classes[bad] = joined;
        classes[big] = rest;
    }
    Partition::from_classes(h.vertex_count(), &classes)
}

fn case_three(
    h: &MultiHypergraph,
    p: &Partition,
    prof: &CoverageProfile,
    tau: &Threshold,
) -> Result<Partition> {
    let bands = CaseProfile::of(&prof.coverage, tau);
    if bands.big < bands.low + 2 * bands.very_low {
        return Err(Error::logic(format!(
            "{} classes meet 2τ, need {} in [τ/2, τ) plus twice {} below τ/2",
            bands.big, bands.low, bands.very_low
        )));
    }
    let half = tau.divided_by(2);
    let mut bigs = big_classes(prof, tau).into_iter();
    let mut classes = p.classes();
    for bad in bad_classes(prof, tau) {
        let mut next_big = || {
            bigs.next()
                .ok_or_else(|| Error::logic("ran out of strong classes"))
        };
        if half.is_met_by(prof.coverage[bad] as u64) {
            let big = next_big()?;
            let [joined, rest] = combine_big_small(h, &classes[big], &classes[bad], tau)?;
            classes[bad] = joined;
            classes[big] = rest;
        } else {
            let (a, b) = (next_big()?, next_big()?);
            let [merged, rest_a, rest_b] = combine_two_bigs(h, &classes[a], &classes[b], tau)?;
            let absorbed: VertexSet = merged.union(&classes[bad]);
            classes[bad] = absorbed;
            classes[a] = rest_a;
            classes[b] = rest_b;
        }
    }
    Partition::from_classes(h.vertex_count(), &classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_certificate;
    use num_rational::Ratio;

    #[test]
    fn thresholds() {
        assert_eq!(threshold(2, 3).unwrap(), Threshold::from_count(2));
        assert_eq!(threshold(3, 9).unwrap(), Threshold::from_count(5));
        assert_eq!(threshold(4, 8).unwrap(), Threshold::from_count(4));
        assert_eq!(threshold(10, 26).unwrap(), Threshold::from_count(10));
        assert_eq!(threshold(3, 4).unwrap(), Threshold::new(20, 9).unwrap());
        assert!(matches!(threshold(1, 5), Err(Error::Input(_))));
    }

    #[test]
    fn constants_are_monotone_and_bounded() {
        let c = |r| {
            let (n, d) = judicious_constant(r).unwrap();
            Ratio::new(n, d)
        };
        assert!(c(2) > c(3) && c(3) > c(4));
        for r in 4..200 {
            assert!(c(r) >= c(r + 1));
            assert!(c(r) <= Ratio::new(1, 2));
        }
        for r in 2..200 {
            assert!(c(r) > Ratio::new(1, 3));
        }
    }

    #[test]
    fn case_profile_bands() {
        let tau = Threshold::from_count(4);
        let prof = CaseProfile::of(&[8, 7, 4, 3, 2, 1], &tau);
        assert_eq!(
            prof,
            CaseProfile {
                big: 1,
                mid: 2,
                low: 2,
                very_low: 1
            }
        );
        assert_eq!(prof.bad(), 3);
        assert_eq!(prof.total(), 6);
    }

    #[test]
    fn triangle_bipartition() {
        let h = MultiHypergraph::from_edges(vec![vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap();
        let cert = partition_judicious(&h, 2).unwrap();
        assert!(verify_certificate(&h, &cert).is_valid());
        assert!(cert.min_coverage() >= 2);
    }

    #[test]
    fn k4_3_three_classes() {
        let h = MultiHypergraph::from_edges(vec![
            vec![1, 2, 3],
            vec![1, 2, 4],
            vec![1, 3, 4],
            vec![2, 3, 4],
        ])
        .unwrap();
        let cert = partition_judicious(&h, 3).unwrap();
        assert_eq!(cert.threshold, Threshold::new(20, 9).unwrap());
        assert!(cert.min_coverage() >= 3);
        assert!(verify_certificate(&h, &cert).is_valid());
    }

    #[test]
    fn repeated_single_edge_gives_singletons() {
        for r in 2..7 {
            let h = MultiHypergraph::from_edges(vec![(0..r).collect(); 5]).unwrap();
            let (cert, stats) = partition_judicious_with_stats(&h, r).unwrap();
            assert!(cert.coverage.iter().all(|&d| d == 5));
            assert!(cert.classes.iter().all(|c| c.len() == 1));
            assert!(stats.max_depth <= r - 2);
        }
    }

    #[test]
    fn edgeless_any_partition() {
        let h = MultiHypergraph::new(7, vec![]).unwrap();
        let cert = partition_judicious(&h, 4).unwrap();
        assert_eq!(cert.threshold, Threshold::ZERO);
        assert_eq!(cert.classes.len(), 4);
        assert!(verify_certificate(&h, &cert).is_valid());
    }

    #[test]
    fn rejects_non_uniform() {
        let h = MultiHypergraph::from_edges(vec![vec![0, 1], vec![0, 1, 2]]).unwrap();
        assert!(matches!(partition_judicious(&h, 2), Err(Error::Input(_))));
        let h = MultiHypergraph::from_edges(vec![vec![0, 1, 2]]).unwrap();
        assert!(matches!(partition_judicious(&h, 2), Err(Error::Input(_))));
        assert!(matches!(partition_judicious(&h, 1), Err(Error::Input(_))));
    }

    /// Random instances with maximum degree below `τ`, each paired with a
    /// partition whose first classes are large and whose last `weak`
    /// classes are single vertices, or with `grow` the shortest random
    /// prefixes meeting `τ/2` edges.
    fn skewed_configurations(
        r: usize,
        weak: usize,
        grow: bool,
        count: u64,
    ) -> impl Iterator<Item = (MultiHypergraph, Partition, Threshold)> {
        use crate::generate::{generate, GenMode, GenSpec, SplitMix64};
        (0..count).filter_map(move |seed| {
            let mut rng = SplitMix64::new(seed);
            let n = 6 * r + rng.below(4 * r as u64) as usize;
            let m = 3 * n + rng.below(3 * n as u64) as usize;
            let spec = GenSpec {
                r,
                n,
                m: Some(m),
                seed,
                mode: GenMode::UniformRandom,
            };
            let h = generate(&spec).ok()?;
            let tau = threshold(r, m).ok()?;
            if tau.is_met_by(h.max_degree() as u64) {
                return None;
            }
            let mut order: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                order.swap(i, rng.below(i as u64 + 1) as usize);
            }
            let half = tau.divided_by(2);
            let mut assignment = vec![usize::MAX; n];
            let mut next = order.into_iter();
            for class in r - weak..r {
                let mut members = VertexSet::default();
                while members.is_empty()
                    || (grow && !half.is_met_by(h.degree_meeting(&members).ok()? as u64))
                {
                    let v = next.next()?;
                    members.insert(v);
                    assignment[v] = class;
                }
            }
            for (k, v) in next.enumerate() {
                assignment[v] = k % (r - weak);
            }
            Some((h, Partition::new(r, assignment).ok()?, tau))
        })
    }

    fn all_meet(h: &MultiHypergraph, p: &Partition, tau: &Threshold) -> bool {
        let prof = CoverageProfile::of(h, p).unwrap();
        prof.coverage.iter().all(|&d| tau.is_met_by(d as u64))
    }

    #[test]
    fn case_two_repairs_low_classes() {
        let mut exercised = 0;
        for r in 4..8 {
            for weak in 1..=r / 2 {
                for (h, p, tau) in skewed_configurations(r, weak, true, 60) {
                    let prof = CoverageProfile::of(&h, &p).unwrap();
                    let bands = CaseProfile::of(&prof.coverage, &tau);
                    if bands.very_low > 0 || bands.low == 0 || bands.big < bands.bad() {
                        continue;
                    }
                    let q = case_two(&h, &p, &prof, &tau).unwrap();
                    assert!(all_meet(&h, &q, &tau), "r = {r}, weak = {weak}");
                    exercised += 1;
                }
            }
        }
        assert!(exercised >= 50, "only {exercised} configurations");
    }

    #[test]
    fn case_three_repairs_very_low_classes() {
        let mut exercised = 0;
        let mut with_very_low = 0;
        for r in 4..10 {
            for (weak, grow) in (1..=r / 3).flat_map(|w| [(w, false), (w, true)]) {
                for (h, p, tau) in skewed_configurations(r, weak, grow, 60) {
                    let prof = CoverageProfile::of(&h, &p).unwrap();
                    let bands = CaseProfile::of(&prof.coverage, &tau);
                    if bands.bad() == 0 || bands.big < bands.low + 2 * bands.very_low {
                        continue;
                    }
                    let q = case_three(&h, &p, &prof, &tau).unwrap();
                    assert!(all_meet(&h, &q, &tau), "r = {r}, weak = {weak}");
                    exercised += 1;
                    with_very_low += usize::from(bands.very_low > 0);
                }
            }
        }
        assert!(exercised >= 50, "only {exercised} configurations");
        assert!(
            with_very_low >= 20,
            "only {with_very_low} with a class below τ/2"
        );
    }

    #[test]
    fn case_two_rejects_too_few_strong_classes() {
        for (h, p, tau) in skewed_configurations(4, 2, false, 200) {
            let prof = CoverageProfile::of(&h, &p).unwrap();
            let bands = CaseProfile::of(&prof.coverage, &tau);
            if bands.big < bands.bad() {
                assert!(matches!(
                    case_two(&h, &p, &prof, &tau),
                    Err(Error::Logic { .. })
                ));
                return;
            }
        }
        panic!("no configuration with fewer strong than weak classes");
    }

    #[test]
    fn warm_start_must_match_shape() {
        let h = MultiHypergraph::from_edges(vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let start = Partition::round_robin(4, 2);
        assert!(matches!(
            partition_judicious_from(&h, 3, &start),
            Err(Error::Input(_))
        ));
        let start = Partition::round_robin(3, 3);
        assert!(matches!(
            partition_judicious_from(&h, 3, &start),
            Err(Error::Input(_))
        ));
    }
}
