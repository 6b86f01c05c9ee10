//! Motif disaggregation: split one motif into two, compute the information
//! increment, group scenarios with equal increments, and filter candidates
//! by external constraints on the refined quotient.
//!
//! The full graph is an explicit input here: the point is to show that the
//! same starting partition and the same increment can lead to different
//! refined systems, not to infer an unknown system.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::motifs::{info_from_stats, motif_stats, quotient, QuotientGraph};
use crate::partition::Partition;

/// Default absolute tolerance for matching information increments, in bits.
pub const DELTA_TOLERANCE: f64 = 1e-6;

/// One way of splitting a single motif into two non-empty parts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefinementCandidate {
    pub parent: Partition,
    pub refined: Partition,
    /// Parent block that was split.
    pub split_block: usize,
    /// I_ve(refined) - I_ve(parent), in bits.
    pub delta_i: f64,
    /// Quotient of the full graph by the refined partition.
    pub quotient: QuotientGraph,
}

/// All binary splits of the chosen block (or of every block of size >= 2).
///
/// A block of size s yields 2^(s-1) - 1 candidates. The increment is
/// computed incrementally: only the split block's (n_i, e_i) entry changes.
pub fn enumerate_splits(
    g: &Graph,
    p: &Partition,
    block: Option<usize>,
) -> Result<Vec<RefinementCandidate>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let parent_stats = motif_stats(g, p)?;
    let parent_info = info_from_stats(&parent_stats);
    let blocks = p.blocks();
    let targets: Vec<usize> = match block {
        Some(b) => {
            if b >= p.n_blocks() {
                return Err(Error::InvalidPartition(format!(
                    "block {b} out of range for a {}-block partition",
                    p.n_blocks()
                )));
            }
            if blocks[b].len() < 2 {
                return Err(Error::SingletonBlock(b));
            }
            vec![b]
        }
        None => {
            let splittable: Vec<usize> =
                (0..p.n_blocks()).filter(|&b| blocks[b].len() >= 2).collect();
            if splittable.is_empty() {
                return Err(Error::SingletonBlock(0));
            }
            splittable
        }
    };

    let mut out = Vec::new();
    for b in targets {
        let members = &blocks[b];
        let s = members.len();
        // members[0] stays in the first part, so each bipartition appears once
        for submask in 0..(1u64 << (s - 1)) - 1 {
            let mut labels = p.assignment().to_vec();
            let new_block = p.n_blocks();
            let mut part1_count = 0usize;
            let mut part1_degsum = 0u64;
            for (bit, &v) in members[1..].iter().enumerate() {
                if submask >> bit & 1 == 0 {
                    labels[v] = new_block;
                    part1_count += 1;
                    part1_degsum += g.neighbors(v).len() as u64;
                }
            }
            let refined = Partition::from_labels(&labels)?;

            let mut patched = parent_stats.clone();
            patched.vertex_counts[b] -= part1_count;
            patched.degree_sums[b] -= part1_degsum;
            patched.vertex_counts.push(part1_count);
            patched.degree_sums.push(part1_degsum);
            let delta_i = info_from_stats(&patched) - parent_info;

            out.push(RefinementCandidate {
                parent: p.clone(),
                refined: refined.clone(),
                split_block: b,
                delta_i,
                quotient: quotient(g, &refined)?,
            });
        }
    }
    Ok(out)
}

/// Candidates whose increments agree within an absolute tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioGroup {
    /// Representative increment (the smallest in the group).
    pub delta_i: f64,
    pub candidates: Vec<RefinementCandidate>,
    /// True when the group holds >= 2 candidates with different refined
    /// partitions: the same increment, different possible systems.
    pub distinct: bool,
    /// Number of isomorphism classes among the refined quotients
    /// (stats-preserving exact check).
    pub quotient_iso_classes: usize,
}

/// Group candidates by increment: members match the group representative
/// within `tol` bits. Every candidate lands in exactly one group.
pub fn group_candidates(mut candidates: Vec<RefinementCandidate>, tol: f64) -> Vec<ScenarioGroup> {
    candidates
        .sort_by(|a, b| a.delta_i.total_cmp(&b.delta_i).then_with(|| a.refined.cmp(&b.refined)));
    let mut groups: Vec<ScenarioGroup> = Vec::new();
    for cand in candidates {
        match groups.last_mut() {
            Some(group) if (cand.delta_i - group.delta_i).abs() <= tol => {
                group.candidates.push(cand);
            }
            _ => groups.push(ScenarioGroup {
                delta_i: cand.delta_i,
                candidates: vec![cand],
                distinct: false,
                quotient_iso_classes: 0,
            }),
        }
    }
    for group in &mut groups {
        group.distinct = group
            .candidates
            .iter()
            .any(|c| c.refined != group.candidates[0].refined);
        let mut reps: Vec<&QuotientGraph> = Vec::new();
        for cand in &group.candidates {
            if !reps.iter().any(|r| quotients_isomorphic(r, &cand.quotient)) {
                reps.push(&cand.quotient);
            }
        }
        group.quotient_iso_classes = reps.len();
    }
    groups
}

/// Splits whose increment matches `delta` within `tol` bits, grouped into
/// scenarios. An empty result means no split achieves the increment.
pub fn candidates_for_increment(
    g: &Graph,
    p: &Partition,
    delta: f64,
    tol: f64,
) -> Result<Vec<ScenarioGroup>> {
    let matching: Vec<RefinementCandidate> = enumerate_splits(g, p, None)?
        .into_iter()
        .filter(|c| (c.delta_i - delta).abs() <= tol)
        .collect();
    Ok(group_candidates(matching, tol))
}

/// External constraints on the refined quotient.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefineConstraints {
    /// Motif pairs that must be adjacent in the refined quotient.
    #[serde(default)]
    pub adjacent: Vec<(usize, usize)>,
    /// Motif pairs that must not be adjacent.
    #[serde(default)]
    pub nonadjacent: Vec<(usize, usize)>,
    /// Minimum vertices per motif.
    #[serde(default)]
    pub block_min: Option<usize>,
    /// Maximum vertices per motif.
    #[serde(default)]
    pub block_max: Option<usize>,
}

impl RefineConstraints {
    fn validate(&self, order: usize) -> Result<()> {
        for &(a, b) in self.adjacent.iter().chain(&self.nonadjacent) {
            if a == b {
                return Err(Error::MalformedConstraint(format!("loop pair ({a}, {b})")));
            }
            if a >= order || b >= order {
                return Err(Error::MalformedConstraint(format!(
                    "pair ({a}, {b}) out of range for {order} motifs"
                )));
            }
        }
        if let Some(&(a, b)) = self
            .adjacent
            .iter()
            .find(|&&(a, b)| {
                self.nonadjacent.contains(&(a, b)) || self.nonadjacent.contains(&(b, a))
            })
        {
            return Err(Error::MalformedConstraint(format!(
                "pair ({a}, {b}) is both adjacent and nonadjacent"
            )));
        }
        if let (Some(lo), Some(hi)) = (self.block_min, self.block_max) {
            if lo > hi {
                return Err(Error::MalformedConstraint(format!(
                    "block_min {lo} exceeds block_max {hi}"
                )));
            }
        }
        Ok(())
    }

    fn admits(&self, q: &QuotientGraph) -> bool {
        let adjacency_ok = self.adjacent.iter().all(|&(a, b)| q.graph.has_edge(a, b))
            && self.nonadjacent.iter().all(|&(a, b)| !q.graph.has_edge(a, b));
        let sizes_ok = q.stats.vertex_counts.iter().all(|&s| {
            self.block_min.is_none_or(|lo| s >= lo) && self.block_max.is_none_or(|hi| s <= hi)
        });
        adjacency_ok && sizes_ok
    }
}

/// Keep the candidates whose refined quotient satisfies every constraint.
/// The result is an order-stable subset of the input.
pub fn filter_candidates(
    candidates: &[RefinementCandidate],
    constraints: &RefineConstraints,
) -> Result<Vec<RefinementCandidate>> {
    for cand in candidates {
        constraints.validate(cand.quotient.graph.n())?;
    }
    Ok(candidates.iter().filter(|c| constraints.admits(&c.quotient)).cloned().collect())
}

/// Exact isomorphism of quotient graphs carrying motif stats: a vertex
/// bijection preserving adjacency, vertex counts, and degree sums.
/// Backtracking over stat-compatible images; fine at motif scale.
pub fn quotients_isomorphic(a: &QuotientGraph, b: &QuotientGraph) -> bool {
    let n = a.graph.n();
    if n != b.graph.n() || a.graph.m() != b.graph.m() {
        return false;
    }
    let sig = |q: &QuotientGraph, v: usize| {
        (q.stats.vertex_counts[v], q.stats.degree_sums[v], q.graph.neighbors(v).len())
    };
    let mut sig_a: Vec<_> = (0..n).map(|v| sig(a, v)).collect();
    let mut sig_b: Vec<_> = (0..n).map(|v| sig(b, v)).collect();
    sig_a.sort_unstable();
    sig_b.sort_unstable();
    if sig_a != sig_b {
        return false;
    }

    fn assign(
        a: &QuotientGraph,
        b: &QuotientGraph,
        sig: &dyn Fn(&QuotientGraph, usize) -> (usize, u64, usize),
        mapping: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        v: usize,
    ) -> bool {
        let n = a.graph.n();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || sig(a, v) != sig(b, w) {
                continue;
            }
            let consistent = (0..v).all(|u| {
                a.graph.has_edge(u, v) == b.graph.has_edge(mapping[u].unwrap(), w)
            });
            if consistent {
                mapping[v] = Some(w);
                used[w] = true;
                if assign(a, b, sig, mapping, used, v + 1) {
                    return true;
                }
                mapping[v] = None;
                used[w] = false;
            }
        }
        false
    }

    let mut mapping = vec![None; n];
    let mut used = vec![false; n];
    assign(a, b, &sig, &mut mapping, &mut used, 0)
}
