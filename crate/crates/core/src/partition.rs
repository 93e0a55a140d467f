use crate::error::{Error, Result};
use crate::hypergraph::{MultiHypergraph, VertexSet};

/// An assignment of every vertex to one of `class_count` classes. Classes
/// may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    class_count: usize,
    assignment: Vec<usize>,
}

impl Partition {
    pub fn new(class_count: usize, assignment: Vec<usize>) -> Result<Self> {
        if class_count == 0 {
            return Err(Error::input("a partition needs at least one class"));
        }
        if let Some((v, &c)) = assignment
            .iter()
            .enumerate()
            .find(|(_, &c)| c >= class_count)
        {
            return Err(Error::input(format!(
                "vertex {v} assigned to class {c}, only {class_count} classes"
            )));
        }
        Ok(Self {
            class_count,
            assignment,
        })
    }

    /// Vertex `v` goes to class `v mod class_count`.
    pub fn round_robin(vertex_count: usize, class_count: usize) -> Self {
        assert!(class_count > 0);
        Self {
            class_count,
            assignment: (0..vertex_count).map(|v| v % class_count).collect(),
        }
    }

    /// Builds a partition from explicit classes, which must be pairwise
    /// disjoint and together cover `0..vertex_count`.
    pub fn from_classes(vertex_count: usize, classes: &[VertexSet]) -> Result<Self> {
        let mut assignment = vec![usize::MAX; vertex_count];
        for (c, class) in classes.iter().enumerate() {
            for v in class.iter() {
                let slot = assignment
                    .get_mut(v)
                    .ok_or_else(|| Error::input(format!("vertex {v} outside 0..{vertex_count}")))?;
                if *slot != usize::MAX {
                    return Err(Error::input(format!(
                        "vertex {v} appears in classes {} and {c}",
                        *slot
                    )));
                }
                *slot = c;
            }
        }
        if let Some(v) = assignment.iter().position(|&c| c == usize::MAX) {
            return Err(Error::input(format!("vertex {v} is not assigned")));
        }
        Self::new(classes.len(), assignment)
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn vertex_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn assign(&mut self, v: usize, class: usize) {
        assert!(class < self.class_count);
        self.assignment[v] = class;
    }

    pub fn class(&self, class: usize) -> VertexSet {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == class)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn classes(&self) -> Vec<VertexSet> {
        let mut members = vec![Vec::new(); self.class_count];
        for (v, &c) in self.assignment.iter().enumerate() {
            members[c].push(v);
        }
        members.into_iter().map(VertexSet::from).collect()
    }

    /// The class indices as one space-separated line.
    pub fn to_index_line(&self) -> String {
        self.assignment
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Per-class coverage `d(V_i)`, its sum, and the classes ordered by
/// descending coverage (ties by ascending class index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageProfile {
    pub coverage: Vec<usize>,
    pub total: usize,
    pub order: Vec<usize>,
}

impl CoverageProfile {
    pub fn of(h: &MultiHypergraph, p: &Partition) -> Result<Self> {
        if p.vertex_count() != h.vertex_count() {
            return Err(Error::input(format!(
                "partition covers {} vertices, hypergraph has {}",
                p.vertex_count(),
                h.vertex_count()
            )));
        }
        let r = p.class_count();
        let mut coverage = vec![0; r];
        let mut seen = vec![false; r];
        for edge in h.edges() {
            seen.fill(false);
            for &v in edge {
                let c = p.class_of(v);
                if !seen[c] {
                    seen[c] = true;
                    coverage[c] += 1;
                }
            }
        }
        Ok(Self::from_coverage(coverage))
    }

    pub fn from_coverage(coverage: Vec<usize>) -> Self {
        let total = coverage.iter().sum();
        let mut order: Vec<usize> = (0..coverage.len()).collect();
        order.sort_by(|&a, &b| coverage[b].cmp(&coverage[a]).then(a.cmp(&b)));
        Self {
            coverage,
            total,
            order,
        }
    }

    pub fn min(&self) -> usize {
        self.coverage.iter().copied().min().unwrap_or(0)
    }

    /// Class with the smallest coverage (last in `order`).
    pub fn weakest(&self) -> usize {
        *self.order.last().expect("at least one class")
    }
}
