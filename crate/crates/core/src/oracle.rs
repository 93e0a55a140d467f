//! Independent ground truth for small instances.
//!
//! [`brute_force_best`] searches every assignment of vertices to classes for
//! one maximizing the minimum class coverage. [`check_rulast`] is the
//! arithmetic fact that makes the solver's third case go through: for a
//! list of numbers in `[0, 1]` with a large enough mean, the count of
//! numbers at least `2c` dominates the count of numbers below `c`, with
//! numbers below `c/2` counted twice.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::hypergraph::MultiHypergraph;
use crate::partition::Partition;
use crate::solver::judicious_constant;

pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Minimum coverage and the assignment reaching it.
type Best = (usize, Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForce {
    pub partition: Partition,
    pub min_coverage: usize,
}

/// Depth-first search over assignments in lexicographic order.
///
/// Only restricted-growth assignments are visited (vertex `v` may open class
/// `k` only if classes `0..k` are already used). Relabeling classes by first
/// appearance never changes the minimum coverage and never makes an
/// assignment lexicographically larger, so the lexicographically smallest
/// optimum is among them.
///
/// An edge's class set is fixed once its largest vertex is assigned, and it
/// then either meets class `c` or is lost to `c` for good. `missed[c]` counts
/// the lost edges, so `m - missed[c]` bounds the final coverage of `c`.
struct Search<'a> {
    h: &'a MultiHypergraph,
    r: usize,
    closing: Vec<Vec<usize>>,
    assignment: Vec<usize>,
    missed: Vec<u32>,
    best: Option<Best>,
}

impl<'a> Search<'a> {
    fn new(h: &'a MultiHypergraph, r: usize) -> Self {
        let mut closing = vec![Vec::new(); h.vertex_count()];
        for (e, edge) in h.edges().iter().enumerate() {
            closing[*edge.last().expect("edges are non-empty")].push(e);
        }
        Self {
            h,
            r,
            closing,
            assignment: vec![0; h.vertex_count()],
            missed: vec![0; r],
            best: None,
        }
    }

    fn bound(&self) -> usize {
        self.h.edge_count() - *self.missed.iter().max().unwrap_or(&0) as usize
    }

    fn place(&mut self, v: usize, class: usize, undo: bool) {
        self.assignment[v] = class;
        for &e in &self.closing[v] {
            let mut met = 0u64;
            for &u in &self.h.edges()[e] {
                met |= 1 << self.assignment[u];
            }
            for c in 0..self.r {
                if met & (1 << c) == 0 {
                    if undo {
                        self.missed[c] -= 1;
                    } else {
                        self.missed[c] += 1;
                    }
                }
            }
        }
    }

    fn run(&mut self, depth: usize, used: usize) {
        let bound = self.bound();
        if let Some((best, _)) = &self.best {
            if bound <= *best {
                return;
            }
        }
        if depth == self.h.vertex_count() {
            self.best = Some((bound, self.assignment.clone()));
            return;
        }
        let limit = (used + 1).min(self.r);
        for class in 0..limit {
            self.place(depth, class, false);
            self.run(depth + 1, used.max(class + 1));
            self.place(depth, class, true);
        }
    }

    fn run_from(&mut self, prefix: &[usize]) {
        let mut used = 0;
        for (v, &c) in prefix.iter().enumerate() {
            self.place(v, c, false);
            used = used.max(c + 1);
        }
        self.run(prefix.len(), used);
    }
}

/// All restricted-growth prefixes of length `len`, in lexicographic order.
fn prefixes(len: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                let used = p.iter().map(|&c| c + 1).max().unwrap_or(0);
                (0..(used + 1).min(r)).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

fn required_budget(n: usize, r: usize) -> u128 {
    (r as u128).checked_pow(n as u32).unwrap_or(u128::MAX)
}

/// Exhaustive maximum of `min_i d(V_i)` over all r-class partitions, with
/// ties broken toward the lexicographically smallest assignment vector.
/// Refuses when `r^n` exceeds `budget`.
pub fn brute_force_best(h: &MultiHypergraph, r: usize, budget: u128) -> Result<BruteForce> {
    brute_force_best_jobs(h, r, budget, 1)
}

/// As [`brute_force_best`], splitting the search over `jobs` threads. The
/// result does not depend on `jobs`.
pub fn brute_force_best_jobs(
    h: &MultiHypergraph,
    r: usize,
    budget: u128,
    jobs: usize,
) -> Result<BruteForce> {
    if r == 0 || r > 64 {
        return Err(Error::input(format!("class count {r} out of range 1..=64")));
    }
    let n = h.vertex_count();
    let required = required_budget(n, r);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }

    let (min_coverage, assignment) = if jobs <= 1 || n < 2 {
        let mut search = Search::new(h, r);
        search.run(0, 0);
        search.best.expect("at least one assignment")
    } else {
        let mut depth = 1;
        while depth < n && prefixes(depth, r).len() < 8 * jobs {
            depth += 1;
        }
        let tasks = prefixes(depth, r);
        let next = AtomicUsize::new(0);
        let mut results: Vec<(usize, Option<Best>)> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|_| {
                    scope.spawn(|| {
                        let mut local = Vec::new();
                        loop {
                            let i = next.fetch_add(1, Ordering::Relaxed);
                            let Some(prefix) = tasks.get(i) else { break };
                            let mut search = Search::new(h, r);
                            search.run_from(prefix);
                            local.push((i, search.best));
                        }
                        local
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|t| t.join().expect("search worker panicked"))
                .collect()
        });
        results.sort_by_key(|(i, _)| *i);
        // tasks are in lexicographic order, so the first maximum wins ties
        results
            .into_iter()
            .filter_map(|(_, best)| best)
            .fold(None, |acc: Option<Best>, cand| match acc {
                Some(a) if a.0 >= cand.0 => Some(a),
                _ => Some(cand),
            })
            .expect("at least one assignment")
    };
    Ok(BruteForce {
        partition: Partition::new(r, assignment)?,
        min_coverage,
    })
}

/// A finite list of rationals in `[0, 1]` together with `c` in `[1/3, 1/2]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RulastInstance {
    values: Vec<Ratio<i64>>,
    c: Ratio<i64>,
}

/// Counts of values by band: `j` at least `2c`, `k` in `[c/2, c)`, `l`
/// below `c/2`, `rest` in `[c, 2c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BandCounts {
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub rest: usize,
}

impl RulastInstance {
    pub fn new(values: Vec<Ratio<i64>>, c: Ratio<i64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::input("value list must be non-empty"));
        }
        let (zero, one) = (Ratio::from_integer(0), Ratio::from_integer(1));
        if let Some(x) = values.iter().find(|&&x| x < zero || x > one) {
            return Err(Error::input(format!("value {x} outside [0, 1]")));
        }
        if c < Ratio::new(1, 3) || c > Ratio::new(1, 2) {
            return Err(Error::input(format!("c = {c} outside [1/3, 1/2]")));
        }
        Ok(Self { values, c })
    }

    pub fn values(&self) -> &[Ratio<i64>] {
        &self.values
    }

    pub fn c(&self) -> Ratio<i64> {
        self.c
    }

    pub fn mean(&self) -> Ratio<i64> {
        self.values.iter().sum::<Ratio<i64>>() / self.values.len() as i64
    }

    /// `max(2c, 2/3 + c/6)`.
    pub fn mean_floor(&self) -> Ratio<i64> {
        let two_c = self.c * 2;
        let other = Ratio::new(2, 3) + self.c / 6;
        two_c.max(other)
    }

    pub fn counts(&self) -> BandCounts {
        let c = self.c;
        let mut counts = BandCounts {
            j: 0,
            k: 0,
            l: 0,
            rest: 0,
        };
        for &x in &self.values {
            if x >= c * 2 {
                counts.j += 1;
            } else if x >= c {
                counts.rest += 1;
            } else if x >= c / 2 {
                counts.k += 1;
            } else {
                counts.l += 1;
            }
        }
        counts
    }
}

/// `j >= k + 2l`, given that the mean is at least `max(2c, 2/3 + c/6)`.
/// A mean below that bound is a precondition error, not a `false`.
pub fn check_rulast(inst: &RulastInstance) -> Result<bool> {
    let mean = inst.mean();
    let floor = inst.mean_floor();
    if mean < floor {
        return Err(Error::precondition(format!(
            "mean {mean} is below max(2c, 2/3 + c/6) = {floor}"
        )));
    }
    let BandCounts { j, k, l, .. } = inst.counts();
    Ok(j >= k + 2 * l)
}

/// How the exhaustive optimum compares with the proven constant `c_r` and
/// with the conjectured `r/(2r-1)`. Observational only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub r: usize,
    pub m: usize,
    pub optimum: usize,
    pub partition: Partition,
    /// `optimum / m`, `None` when `m = 0`.
    pub ratio: Option<Ratio<u64>>,
    pub proven: Ratio<u64>,
    pub conjectured: Ratio<u64>,
}

impl GapReport {
    pub fn meets_proven(&self) -> Option<bool> {
        self.ratio.map(|q| q >= self.proven)
    }

    pub fn meets_conjectured(&self) -> Option<bool> {
        self.ratio.map(|q| q >= self.conjectured)
    }
}

impl fmt::Display for GapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "r             {}", self.r)?;
        writeln!(f, "m             {}", self.m)?;
        writeln!(f, "optimum       {}", self.optimum)?;
        match self.ratio {
            None => writeln!(f, "ratio         vacuous")?,
            Some(q) => writeln!(f, "ratio         {q}")?,
        }
        writeln!(f, "proven c_r    {}", self.proven)?;
        writeln!(f, "conjectured   {}", self.conjectured)?;
        writeln!(f, "assignment    {}", self.partition.to_index_line())
    }
}

pub fn conjecture_gap_report(
    h: &MultiHypergraph,
    r: usize,
    budget: u128,
    jobs: usize,
) -> Result<GapReport> {
    let (num, den) = judicious_constant(r)?;
    let best = brute_force_best_jobs(h, r, budget, jobs)?;
    let m = h.edge_count();
    Ok(GapReport {
        r,
        m,
        optimum: best.min_coverage,
        partition: best.partition,
        ratio: (m > 0).then(|| Ratio::new(best.min_coverage as u64, m as u64)),
        proven: Ratio::new(num, den),
        conjectured: Ratio::new(r as u64, 2 * r as u64 - 1),
    })
}
