//! Hill climbing on `Σ_i d(V_i)` under single-vertex moves.
//!
//! A partition where no single move strictly increases the sum satisfies,
//! for every class `V_t`, the hypothesis "the sum cannot be increased by
//! moving a vertex into `V_t`". For an r-uniform hypergraph split into r
//! classes this yields `Σ_i d(V_i) >= (r+1)m - r·d(V_t)`, checked by
//! [`check_lemma_aaa`].

use crate::error::{Error, Result};
use crate::hypergraph::MultiHypergraph;
use crate::partition::{CoverageProfile, Partition};

/// Change in `Σ_i d(V_i)` if `v` moved from its class to `target`: edges
/// through `v` that miss `target` are gained, edges meeting the old class
/// only at `v` are lost.
pub fn move_gain(h: &MultiHypergraph, p: &Partition, v: usize, target: usize) -> Result<i64> {
    check_shapes(h, p)?;
    if v >= h.vertex_count() {
        return Err(Error::input(format!("vertex {v} outside the hypergraph")));
    }
    if target >= p.class_count() {
        return Err(Error::input(format!("class {target} does not exist")));
    }
    let current = p.class_of(v);
    if current == target {
        return Err(Error::input(format!(
            "vertex {v} is already in class {target}"
        )));
    }
    let mut gain = 0i64;
    for &e in h.incident_edges(v) {
        let edge = &h.edges()[e];
        if edge.iter().all(|&u| p.class_of(u) != target) {
            gain += 1;
        }
        if edge.iter().all(|&u| u == v || p.class_of(u) != current) {
            gain -= 1;
        }
    }
    Ok(gain)
}

fn check_shapes(h: &MultiHypergraph, p: &Partition) -> Result<()> {
    if p.vertex_count() != h.vertex_count() {
        return Err(Error::input(format!(
            "partition covers {} vertices, hypergraph has {}",
            p.vertex_count(),
            h.vertex_count()
        )));
    }
    Ok(())
}

/// Per-edge class occupancy counts, so a move gain costs O(deg(v)).
struct Occupancy {
    classes: usize,
    counts: Vec<u32>,
}

impl Occupancy {
    fn new(h: &MultiHypergraph, p: &Partition) -> Self {
        let classes = p.class_count();
        let mut counts = vec![0u32; h.edge_count() * classes];
        for (e, edge) in h.edges().iter().enumerate() {
            for &v in edge {
                counts[e * classes + p.class_of(v)] += 1;
            }
        }
        Self { classes, counts }
    }

    fn gain(&self, h: &MultiHypergraph, v: usize, from: usize, to: usize) -> i64 {
        let k = self.classes;
        h.incident_edges(v)
            .iter()
            .map(|&e| {
                let row = &self.counts[e * k..(e + 1) * k];
                (row[to] == 0) as i64 - (row[from] == 1) as i64
            })
            .sum()
    }

    fn apply(&mut self, h: &MultiHypergraph, v: usize, from: usize, to: usize) {
        let k = self.classes;
        for &e in h.incident_edges(v) {
            self.counts[e * k + from] -= 1;
            self.counts[e * k + to] += 1;
        }
    }
}

/// Runs sweeps over vertices in ascending id; for each vertex the first
/// target class (ascending index) with strictly positive gain is taken.
/// Stops after a sweep without moves. Each accepted move raises the integer
/// sum by at least one and the sum is bounded by `r·m`, so this terminates.
pub fn improve_to_local_optimum(h: &MultiHypergraph, p: &Partition) -> Result<Partition> {
    check_shapes(h, p)?;
    let mut p = p.clone();
    let mut occ = Occupancy::new(h, &p);
    let r = p.class_count();
    loop {
        let mut moved = false;
        for v in 0..h.vertex_count() {
            let from = p.class_of(v);
            if let Some(to) = (0..r).find(|&t| t != from && occ.gain(h, v, from, t) > 0) {
                occ.apply(h, v, from, to);
                p.assign(v, to);
                moved = true;
            }
        }
        if !moved {
            return Ok(p);
        }
    }
}

/// True when no single-vertex move strictly increases `Σ_i d(V_i)`.
pub fn is_local_optimum(h: &MultiHypergraph, p: &Partition) -> Result<bool> {
    check_shapes(h, p)?;
    let occ = Occupancy::new(h, p);
    Ok((0..h.vertex_count()).all(|v| {
        let from = p.class_of(v);
        (0..p.class_count()).all(|t| t == from || occ.gain(h, v, from, t) <= 0)
    }))
}

/// `Σ_i d(V_i) >= (r+1)m - r·d(V_r)` with `V_r` the class of least
/// coverage. The hypergraph must be r-uniform for the r classes of `p`.
pub fn check_lemma_aaa(h: &MultiHypergraph, p: &Partition) -> Result<bool> {
    let prof = coverage_for_aaa(h, p)?;
    Ok(aaa_holds(&prof, h.edge_count(), prof.weakest()))
}

/// The same inequality with class `role` playing `V_r`.
pub fn check_lemma_aaa_for(h: &MultiHypergraph, p: &Partition, role: usize) -> Result<bool> {
    let prof = coverage_for_aaa(h, p)?;
    if role >= p.class_count() {
        return Err(Error::input(format!("class {role} does not exist")));
    }
    Ok(aaa_holds(&prof, h.edge_count(), role))
}

fn coverage_for_aaa(h: &MultiHypergraph, p: &Partition) -> Result<CoverageProfile> {
    if !h.is_uniform(p.class_count()) {
        return Err(Error::input(format!(
            "the coverage bound needs a {}-uniform hypergraph",
            p.class_count()
        )));
    }
    CoverageProfile::of(h, p)
}

fn aaa_holds(prof: &CoverageProfile, m: usize, role: usize) -> bool {
    let r = prof.coverage.len() as i64;
    let lhs = prof.total as i64;
    lhs >= (r + 1) * m as i64 - r * prof.coverage[role] as i64
}
