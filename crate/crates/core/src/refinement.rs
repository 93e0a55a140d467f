//! Local refinement steps that turn classes meeting many edges into more
//! classes meeting at least `τ` edges.
//!
//! Every operation here assumes the maximum vertex degree is below `τ`.
//! Internally the hypergraph is trimmed so that each edge meets the sets
//! being split in at most one vertex; coverage in the trimmed hypergraph is
//! additive over subsets and never exceeds coverage in the original, so all
//! guarantees transfer back to the caller's hypergraph.

use crate::error::{Error, Result};
use crate::hypergraph::{MultiHypergraph, VertexSet};
use crate::partition::Partition;
use crate::threshold::Threshold;

/// Three disjoint non-empty parts of a set `A` such that the union of any
/// two parts meets at least `τ` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSplit {
    pub parts: [VertexSet; 3],
}

impl TripleSplit {
    pub fn union_of_others(&self, skip: usize) -> VertexSet {
        (0..3)
            .filter(|&i| i != skip)
            .fold(VertexSet::new(), |acc, i| acc.union(&self.parts[i]))
    }
}

fn require_low_degree(h: &MultiHypergraph, tau: &Threshold) -> Result<()> {
    let delta = h.max_degree() as u64;
    if tau.is_met_by(delta) {
        return Err(Error::precondition(format!(
            "max degree {delta} < τ = {tau} fails"
        )));
    }
    Ok(())
}

fn require_disjoint(a: &VertexSet, b: &VertexSet) -> Result<()> {
    if !a.is_disjoint(b) {
        return Err(Error::precondition("sets must be disjoint"));
    }
    Ok(())
}

/// Splits `A` into `A1, A2, A3`. `A1` is grown greedily in ascending id
/// while it still meets fewer than `τ` edges, which makes it maximal with
/// that property; `A2` is the smallest remaining vertex and `A3` the rest.
///
/// `h` must already meet `A` at most once per edge, have maximum degree
/// below `τ`, and satisfy `d(A) >= 2τ`.
pub fn split_into_three_overlapping(
    h: &MultiHypergraph,
    a: &VertexSet,
    tau: &Threshold,
) -> Result<TripleSplit> {
    h.degree_meeting(a)?;
    require_low_degree(h, tau)?;
    if h.degree_multi(a)? > 0 {
        return Err(Error::precondition(
            "some edge meets the set in more than one vertex",
        ));
    }
    let da = h.degree_meeting(a)? as u64;
    if !tau.times(2).is_met_by(da) {
        return Err(Error::precondition(format!(
            "d(A) = {da} >= 2τ = {} fails",
            tau.times(2)
        )));
    }

    let mut first = VertexSet::new();
    for v in a.iter() {
        let grown = first.union(&VertexSet::singleton(v));
        if !tau.is_met_by(h.meeting_unchecked(&grown) as u64) {
            first = grown;
        }
    }
    let rest = a.difference(&first);
    let second = VertexSet::singleton(
        rest.smallest()
            .ok_or_else(|| Error::logic("greedy part swallowed the whole set"))?,
    );
    let third = rest.difference(&second);
    let split = TripleSplit {
        parts: [first, second, third],
    };

    if split.parts.iter().any(VertexSet::is_empty) {
        return Err(Error::logic("three-way split produced an empty part"));
    }
    for skip in 0..3 {
        if !tau.is_met_by(h.meeting_unchecked(&split.union_of_others(skip)) as u64) {
            return Err(Error::logic(format!(
                "pair of split parts avoiding part {skip} meets fewer than τ edges"
            )));
        }
    }
    Ok(split)
}

fn trim_both(h: &MultiHypergraph, a: &VertexSet, b: &VertexSet) -> Result<MultiHypergraph> {
    h.trim_to_set(a)?.trim_to_set(b)
}

fn check_outputs(
    h: &MultiHypergraph,
    parts: &[VertexSet],
    tau: &Threshold,
    what: &str,
) -> Result<()> {
    for (i, part) in parts.iter().enumerate() {
        let d = h.meeting_unchecked(part) as u64;
        if !tau.is_met_by(d) {
            return Err(Error::logic(format!(
                "{what}: output part {i} meets {d} < τ = {tau} edges"
            )));
        }
    }
    Ok(())
}

/// Repartitions two disjoint sets that each meet at least `2τ` edges into
/// three sets that each meet at least `τ` edges.
///
/// Returns `(A_i ∪ B_j, A \ A_i, B \ B_j)` for the pair `(i, j)` maximizing
/// `d(A_i ∪ B_j)` in the trimmed hypergraph (ties to the smallest pair).
/// Averaging the nine candidates gives the merged part at least `10τ/9`.
///
/// The construction cannot promise two parts meeting more than `τ + 1`
/// edges: take `A` and `B` of three vertices each, two of degree `τ - 1`
/// and one of degree 2.
pub fn combine_two_bigs(
    h: &MultiHypergraph,
    a: &VertexSet,
    b: &VertexSet,
    tau: &Threshold,
) -> Result<[VertexSet; 3]> {
    require_disjoint(a, b)?;
    require_low_degree(h, tau)?;
    let (da, db) = (h.degree_meeting(a)? as u64, h.degree_meeting(b)? as u64);
    let two_tau = tau.times(2);
    if !two_tau.is_met_by(da) || !two_tau.is_met_by(db) {
        return Err(Error::precondition(format!(
            "d(A) = {da} and d(B) = {db} must both be >= 2τ = {two_tau}"
        )));
    }

    let trimmed = trim_both(h, a, b)?;
    let sa = split_into_three_overlapping(&trimmed, a, tau)?;
    let sb = split_into_three_overlapping(&trimmed, b, tau)?;

    let mut best: Option<(usize, usize, usize)> = None;
    for i in 0..3 {
        for j in 0..3 {
            let d = trimmed.meeting_unchecked(&sa.parts[i].union(&sb.parts[j]));
            if best.is_none_or(|(_, _, bd)| d > bd) {
                best = Some((i, j, d));
            }
        }
    }
    let (i, j, merged_cover) = best.expect("nine candidates");
    if !tau.times(10).divided_by(9).is_met_by(merged_cover as u64) {
        return Err(Error::logic(format!(
            "best merged pair meets {merged_cover} < 10τ/9 edges"
        )));
    }

    let out = [
        sa.parts[i].union(&sb.parts[j]),
        sa.union_of_others(i),
        sb.union_of_others(j),
    ];
    check_outputs(h, &out, tau, "combine_two_bigs")?;
    Ok(out)
}

/// Repartitions `A` (meeting at least `2τ` edges) and a disjoint `B` with
/// `d(A) + 2·d(B) >= 3τ` into two sets each meeting at least `τ` edges:
/// `(A_i ∪ B, A \ A_i)` for the `i` maximizing `d(A_i ∪ B)`.
pub fn combine_big_small(
    h: &MultiHypergraph,
    a: &VertexSet,
    b: &VertexSet,
    tau: &Threshold,
) -> Result<[VertexSet; 2]> {
    require_disjoint(a, b)?;
    require_low_degree(h, tau)?;
    let (da, db) = (h.degree_meeting(a)? as u64, h.degree_meeting(b)? as u64);
    if !tau.times(2).is_met_by(da) {
        return Err(Error::precondition(format!(
            "d(A) = {da} >= 2τ = {} fails",
            tau.times(2)
        )));
    }
    if !tau.times(3).is_met_by(da + 2 * db) {
        return Err(Error::precondition(format!(
            "d(A) + 2d(B) = {} >= 3τ = {} fails",
            da + 2 * db,
            tau.times(3)
        )));
    }

    let trimmed = trim_both(h, a, b)?;
    let sa = split_into_three_overlapping(&trimmed, a, tau)?;
    let mut best: Option<(usize, usize)> = None;
    for i in 0..3 {
        let d = trimmed.meeting_unchecked(&sa.parts[i].union(b));
        if best.is_none_or(|(_, bd)| d > bd) {
            best = Some((i, d));
        }
    }
    let (i, _) = best.expect("three candidates");
    let out = [sa.parts[i].union(b), sa.union_of_others(i)];
    check_outputs(h, &out, tau, "combine_big_small")?;
    Ok(out)
}

/// Shrinks `S` to a minimal subset still meeting at least `τ` edges.
///
/// One pass in descending vertex id drops every vertex whose removal keeps
/// the coverage at `τ` or above. Coverage only decreases as vertices leave,
/// so a vertex kept once can never become removable later.
pub fn shrink_to_minimal_good(
    h: &MultiHypergraph,
    s: &VertexSet,
    tau: &Threshold,
) -> Result<VertexSet> {
    let ds = h.degree_meeting(s)? as u64;
    if !tau.is_met_by(ds) {
        return Err(Error::precondition(format!(
            "d(S) = {ds} >= τ = {tau} fails"
        )));
    }
    let mut current = s.clone();
    for v in s.iter().rev() {
        let smaller = current.without(v);
        if tau.is_met_by(h.meeting_unchecked(&smaller) as u64) {
            current = smaller;
        }
    }
    Ok(current)
}

/// Result of shrinking every strong class to a minimal good subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AabOutcome {
    /// Every class meets at least `τ` edges.
    Good(Partition),
    /// The receiving class stayed below `τ`; all other classes are minimal
    /// good sets with `Σ d(W_i) > (r+1)(m - τ)` over them.
    Shrunk(ShrunkWitness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShrunkWitness {
    pub partition: Partition,
    /// The class that received all removed vertices.
    pub receiver: usize,
}

/// Shrinks every class except `receiver` to a minimal good subset and moves
/// the removed vertices into `receiver`.
///
/// `p` must be a partition of an r-uniform hypergraph into r classes in
/// which no single-vertex move into `receiver` increases `Σ_i d(V_i)`, and
/// every class other than `receiver` must meet at least `τ` edges. Shrinking
/// preserves the no-improving-move condition, which is what makes the
/// witness inequality hold; a violation is reported as a logic error.
pub fn apply_lemma_aab(
    h: &MultiHypergraph,
    p: &Partition,
    receiver: usize,
    tau: &Threshold,
) -> Result<AabOutcome> {
    let r = p.class_count();
    if receiver >= r {
        return Err(Error::input(format!("class {receiver} does not exist")));
    }
    if !h.is_uniform(r) {
        return Err(Error::input(format!(
            "class shrinking needs a {r}-uniform hypergraph"
        )));
    }
    if p.vertex_count() != h.vertex_count() {
        return Err(Error::input("partition does not match the hypergraph"));
    }

    let mut classes = p.classes();
    let mut shrunk_total: u64 = 0;
    for (i, class) in classes.iter_mut().enumerate() {
        if i == receiver {
            continue;
        }
        let w = shrink_to_minimal_good(h, class, tau)?;
        shrunk_total += h.meeting_unchecked(&w) as u64;
        *class = w;
    }
    let kept: VertexSet = classes
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != receiver)
        .fold(VertexSet::new(), |acc, (_, c)| acc.union(c));
    classes[receiver] = (0..h.vertex_count())
        .filter(|&v| !kept.contains(v))
        .collect();
    let partition = Partition::from_classes(h.vertex_count(), &classes)?;

    if tau.is_met_by(h.meeting_unchecked(&classes[receiver]) as u64) {
        return Ok(AabOutcome::Good(partition));
    }

    let m = h.edge_count() as i128;
    let (num, den) = (tau.numerator() as i128, tau.denominator() as i128);
    if shrunk_total as i128 * den <= (r as i128 + 1) * (m * den - num) {
        return Err(Error::logic(format!(
            "shrunk classes meet {shrunk_total} edges in total, not more than (r+1)(m-τ) with r = {r}, m = {m}, τ = {tau}"
        )));
    }
    Ok(AabOutcome::Shrunk(ShrunkWitness {
        partition,
        receiver,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `count` disjoint 2-edges `{2i, 2i+1}`.
    fn disjoint_edges(count: usize) -> MultiHypergraph {
        MultiHypergraph::from_edges((0..count).map(|i| vec![2 * i, 2 * i + 1]).collect()).unwrap()
    }

    fn cover(h: &MultiHypergraph, s: &VertexSet) -> usize {
        h.degree_meeting(s).unwrap()
    }

    #[test]
    fn split_of_four_disjoint_hits() {
        let h = disjoint_edges(8);
        let a: VertexSet = [0, 2, 4, 6].into();
        let tau = Threshold::from_count(2);
        let s = split_into_three_overlapping(&h, &a, &tau).unwrap();
        assert_eq!(s.parts[0].as_slice(), &[0]);
        assert_eq!(s.parts[1].as_slice(), &[2]);
        assert_eq!(s.parts[2].as_slice(), &[4, 6]);
        for skip in 0..3 {
            assert!(cover(&h, &s.union_of_others(skip)) >= 2);
        }
    }

    #[test]
    fn split_at_exact_double_threshold() {
        // Δ = τ - 1 = 2 and d(A) = 2τ = 6.
        let h = MultiHypergraph::from_edges(vec![
            vec![0, 10],
            vec![0, 11],
            vec![1, 12],
            vec![1, 13],
            vec![2, 14],
            vec![2, 15],
        ])
        .unwrap();
        let a: VertexSet = [0, 1, 2].into();
        let tau = Threshold::from_count(3);
        let s = split_into_three_overlapping(&h, &a, &tau).unwrap();
        assert_eq!(s.parts[0].as_slice(), &[0]);
        assert_eq!(s.parts[1].as_slice(), &[1]);
        assert_eq!(s.parts[2].as_slice(), &[2]);
    }

    #[test]
    fn split_preconditions() {
        let h = disjoint_edges(4);
        let a: VertexSet = [0, 2].into();
        assert!(matches!(
            split_into_three_overlapping(&h, &a, &Threshold::ZERO),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            split_into_three_overlapping(&h, &a, &Threshold::from_count(2)),
            Err(Error::Precondition(_))
        ));
        let a: VertexSet = [0, 1, 2, 4, 6].into();
        assert!(matches!(
            split_into_three_overlapping(&h, &a, &Threshold::from_count(2)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn two_bigs_on_disjoint_edges() {
        let h = disjoint_edges(8);
        let a: VertexSet = [0, 2, 4, 6].into();
        let b: VertexSet = [8, 10, 12, 14].into();
        let tau = Threshold::from_count(2);
        let [merged, ra, rb] = combine_two_bigs(&h, &a, &b, &tau).unwrap();
        assert_eq!(merged.as_slice(), &[4, 6, 12, 14]);
        assert_eq!(ra.as_slice(), &[0, 2]);
        assert_eq!(rb.as_slice(), &[8, 10]);
        assert_eq!(
            [cover(&h, &merged), cover(&h, &ra), cover(&h, &rb)],
            [4, 2, 2]
        );
        assert!(matches!(
            combine_two_bigs(&h, &a, &a, &tau),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn big_small_on_disjoint_edges() {
        let h = disjoint_edges(6);
        let a: VertexSet = [0, 2, 4, 6].into();
        let b: VertexSet = [8].into();
        let tau = Threshold::from_count(2);
        let [joined, rest] = combine_big_small(&h, &a, &b, &tau).unwrap();
        assert_eq!(joined.as_slice(), &[4, 6, 8]);
        assert_eq!(rest.as_slice(), &[0, 2]);
        assert_eq!((cover(&h, &joined), cover(&h, &rest)), (3, 2));
    }

    #[test]
    fn big_small_with_empty_partner() {
        let h = disjoint_edges(6);
        let a: VertexSet = [0, 2, 4, 6, 8, 10].into();
        let tau = Threshold::from_count(2);
        let [x, y] = combine_big_small(&h, &a, &VertexSet::new(), &tau).unwrap();
        assert!(cover(&h, &x) >= 2 && cover(&h, &y) >= 2);
        assert_eq!(x.union(&y), a);
        // d(A) = 4 < 3τ with nothing to add
        let a: VertexSet = [0, 2, 4, 6].into();
        assert!(combine_big_small(&h, &a, &VertexSet::new(), &tau).is_err());
    }

    #[test]
    fn minimal_good_on_a_path() {
        let h = MultiHypergraph::from_edges(vec![vec![1, 2], vec![2, 3], vec![3, 4]]).unwrap();
        let s: VertexSet = [1, 2, 3, 4].into();
        let w = shrink_to_minimal_good(&h, &s, &Threshold::from_count(2)).unwrap();
        assert_eq!(w.as_slice(), &[2]);
        assert!(shrink_to_minimal_good(&h, &s, &Threshold::ZERO)
            .unwrap()
            .is_empty());
        let one: VertexSet = [3].into();
        assert_eq!(
            shrink_to_minimal_good(&h, &one, &Threshold::from_count(2)).unwrap(),
            one
        );
        assert!(shrink_to_minimal_good(&h, &one, &Threshold::from_count(3)).is_err());
    }

    #[test]
    fn aab_zero_threshold_is_good() {
        let h = MultiHypergraph::from_edges(vec![vec![0, 1, 2]]).unwrap();
        let p = Partition::round_robin(3, 3);
        assert!(matches!(
            apply_lemma_aab(&h, &p, 2, &Threshold::ZERO).unwrap(),
            AabOutcome::Good(_)
        ));
    }

    #[test]
    fn aab_on_k4_3() {
        let h = MultiHypergraph::from_edges(vec![
            vec![1, 2, 3],
            vec![1, 2, 4],
            vec![1, 3, 4],
            vec![2, 3, 4],
        ])
        .unwrap();
        let p = Partition::new(3, vec![2, 0, 1, 2, 2]).unwrap();
        let tau = Threshold::new(20, 9).unwrap();
        match apply_lemma_aab(&h, &p, 2, &tau).unwrap() {
            AabOutcome::Good(q) => assert_eq!(q, p),
            other => panic!("expected a good partition, got {other:?}"),
        }
    }
}
