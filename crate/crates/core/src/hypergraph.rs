//! Multi-hypergraph storage and the degree calculus used throughout the
//! solver: `d(S)` (edges meeting S), `d(S, T)` (edges meeting both of two
//! disjoint sets), `d2(S)` (edges meeting S in two or more vertices) and the
//! number of partition classes an edge touches.

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A set of vertex ids, kept sorted and free of duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: usize) -> Self {
        Self { members: vec![v] }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn smallest(&self) -> Option<usize> {
        self.members.first().copied()
    }

    pub fn largest(&self) -> Option<usize> {
        self.members.last().copied()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.members.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.members.insert(pos, v);
                true
            }
        }
    }

    pub fn remove(&mut self, v: usize) -> bool {
        match self.members.binary_search(&v) {
            Ok(pos) => {
                self.members.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn without(&self, v: usize) -> Self {
        let mut out = self.clone();
        out.remove(v);
        out
    }

    pub fn union(&self, other: &VertexSet) -> Self {
        let mut members = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.members, &other.members);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    members.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    members.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    members.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        members.extend_from_slice(&a[i..]);
        members.extend_from_slice(&b[j..]);
        Self { members }
    }

    pub fn difference(&self, other: &VertexSet) -> Self {
        self.iter().filter(|&v| !other.contains(v)).collect()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().all(|v| !large.contains(v))
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut members: Vec<usize> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self { members }
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(vs: [usize; N]) -> Self {
        vs.into_iter().collect()
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(vs: Vec<usize>) -> Self {
        vs.into_iter().collect()
    }
}

/// A hypergraph on vertices `0..n` whose edges are non-empty sets of
/// distinct vertices. Identical edges may repeat and are counted with
/// multiplicity, so `m` is the length of the edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiHypergraph {
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
    uniformity: Option<usize>,
}

impl MultiHypergraph {
    /// Builds a hypergraph on `vertex_count` vertices. Each edge is sorted;
    /// empty edges, repeated vertices inside an edge and out-of-range ids
    /// are rejected.
    pub fn new(vertex_count: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(edges.len());
        for (idx, mut edge) in edges.into_iter().enumerate() {
            if edge.is_empty() {
                return Err(Error::input(format!("edge {idx} is empty")));
            }
            edge.sort_unstable();
            if let Some(w) = edge.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::input(format!("edge {idx} repeats vertex {}", w[0])));
            }
            if let Some(&v) = edge.last().filter(|&&v| v >= vertex_count) {
                return Err(Error::input(format!(
                    "edge {idx} contains vertex {v} outside 0..{vertex_count}"
                )));
            }
            sorted.push(edge);
        }
        Ok(Self::from_sorted_edges(vertex_count, sorted))
    }

    /// Infers the vertex count as one more than the largest id used.
    pub fn from_edges(edges: Vec<Vec<usize>>) -> Result<Self> {
        let n = edges
            .iter()
            .flat_map(|e| e.iter().copied())
            .max()
            .map_or(0, |v| v + 1);
        Self::new(n, edges)
    }

    fn from_sorted_edges(vertex_count: usize, edges: Vec<Vec<usize>>) -> Self {
        let mut incidence = vec![Vec::new(); vertex_count];
        for (idx, edge) in edges.iter().enumerate() {
            for &v in edge {
                incidence[v].push(idx);
            }
        }
        let uniformity = match edges.first() {
            Some(first) if edges.iter().all(|e| e.len() == first.len()) => Some(first.len()),
            _ => None,
        };
        Self {
            vertex_count,
            edges,
            incidence,
            uniformity,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> Option<&[usize]> {
        self.edges.get(idx).map(Vec::as_slice)
    }

    /// Indices of the edges containing `v`.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// Common edge size, or `None` when edge sizes differ or there are no
    /// edges.
    pub fn uniformity(&self) -> Option<usize> {
        self.uniformity
    }

    /// True when every edge has exactly `r` vertices (vacuously so when
    /// there are no edges).
    pub fn is_uniform(&self, r: usize) -> bool {
        self.edges.is_empty() || self.uniformity == Some(r)
    }

    pub fn vertex_degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    fn check_range(&self, s: &VertexSet) -> Result<()> {
        match s.largest() {
            Some(v) if v >= self.vertex_count => Err(Error::input(format!(
                "vertex {v} outside 0..{}",
                self.vertex_count
            ))),
            _ => Ok(()),
        }
    }

    fn edges_hit(&self, s: &VertexSet) -> Vec<u32> {
        let mut hits = vec![0u32; self.edges.len()];
        for v in s.iter() {
            for &e in &self.incidence[v] {
                hits[e] += 1;
            }
        }
        hits
    }

    /// `d(S)`: the number of edges, with multiplicity, meeting `S`.
    pub fn degree_meeting(&self, s: &VertexSet) -> Result<usize> {
        self.check_range(s)?;
        Ok(self.meeting_unchecked(s))
    }

    pub(crate) fn meeting_unchecked(&self, s: &VertexSet) -> usize {
        if s.len() == 1 {
            return self.incidence[s.as_slice()[0]].len();
        }
        self.edges_hit(s).iter().filter(|&&h| h > 0).count()
    }

    /// `d(S, T)`: the number of edges meeting both of the disjoint sets.
    pub fn degree_joint(&self, s: &VertexSet, t: &VertexSet) -> Result<usize> {
        self.check_range(s)?;
        self.check_range(t)?;
        if !s.is_disjoint(t) {
            return Err(Error::input("joint degree requires disjoint sets"));
        }
        let hs = self.edges_hit(s);
        let ht = self.edges_hit(t);
        Ok(hs
            .iter()
            .zip(&ht)
            .filter(|(a, b)| **a > 0 && **b > 0)
            .count())
    }

    /// `d2(S)`: the number of edges meeting `S` in at least two vertices.
    pub fn degree_multi(&self, s: &VertexSet) -> Result<usize> {
        self.check_range(s)?;
        Ok(self.edges_hit(s).iter().filter(|&&h| h >= 2).count())
    }

    /// The number of distinct classes of `p` met by edge `edge_idx`.
    pub fn parts_met(&self, edge_idx: usize, p: &Partition) -> Result<usize> {
        let edge = self
            .edges
            .get(edge_idx)
            .ok_or_else(|| Error::input(format!("no edge with index {edge_idx}")))?;
        if p.vertex_count() != self.vertex_count {
            return Err(Error::input("partition does not cover the vertex set"));
        }
        let mut classes: Vec<usize> = edge.iter().map(|&v| p.class_of(v)).collect();
        classes.sort_unstable();
        classes.dedup();
        Ok(classes.len())
    }

    /// Largest vertex degree; 0 for an edgeless hypergraph.
    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Smallest id among the vertices of maximum degree.
    pub fn max_degree_vertex(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (v, inc) in self.incidence.iter().enumerate() {
            if best.is_none_or(|(_, d)| inc.len() > d) {
                best = Some((v, inc.len()));
            }
        }
        best
    }

    /// Replaces every edge meeting `S` in more than one vertex by the subedge
    /// that keeps only the smallest vertex of `e ∩ S`. Edge count and
    /// `d(S)` are unchanged; the result is no longer marked uniform unless
    /// the sizes happen to agree.
    pub fn trim_to_set(&self, s: &VertexSet) -> Result<MultiHypergraph> {
        self.check_range(s)?;
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let mut kept_one = false;
                e.iter()
                    .copied()
                    .filter(|&v| {
                        if !s.contains(v) {
                            return true;
                        }
                        // edges are sorted, so the first hit is the minimum
                        !std::mem::replace(&mut kept_one, true)
                    })
                    .collect()
            })
            .collect();
        Ok(Self::from_sorted_edges(self.vertex_count, edges))
    }

    /// Turns an r-uniform hypergraph into an (r-1)-uniform one that avoids
    /// `v`: edges through `v` lose `v`, every other edge loses its largest
    /// vertex. `v` is left isolated and the vertex range is unchanged.
    pub fn shrink_uniformity(&self, v: usize) -> Result<MultiHypergraph> {
        if v >= self.vertex_count {
            return Err(Error::input(format!(
                "vertex {v} outside 0..{}",
                self.vertex_count
            )));
        }
        let r = match self.uniformity {
            Some(r) => r,
            None if self.edges.is_empty() => {
                return Ok(self.clone());
            }
            None => return Err(Error::input("shrinking requires a uniform hypergraph")),
        };
        if r < 3 {
            return Err(Error::input(format!(
                "cannot shrink a {r}-uniform hypergraph"
            )));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| match e.binary_search(&v) {
                Ok(pos) => {
                    let mut sub = e.clone();
                    sub.remove(pos);
                    sub
                }
                Err(_) => e[..e.len() - 1].to_vec(),
            })
            .collect();
        Ok(Self::from_sorted_edges(self.vertex_count, edges))
    }
}
