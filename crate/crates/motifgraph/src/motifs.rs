//! Motif partitions, quotient graphs, and the information content I_ve of
//! approximate representations.
//!
//! A motif is a block of a vertex partition. Coarsening a graph by a
//! partition yields the quotient graph: one vertex per motif, with an edge
//! between two motifs when any full-graph edge crosses between them. The
//! information content of the coarsened representation is the Shannon
//! entropy of the per-motif weights w_i built from the vertex fraction
//! n_i/N_v and the degree fraction e_i/(2 N_e).

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::{
    enumerate_partitions_capped, sample_partitions_with_rng, Partition,
    PARTITION_ENUMERATION_CAP,
};

/// Per-motif vertex counts and degree sums of a partitioned graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MotifStats {
    /// n_i: number of vertices in each motif.
    pub vertex_counts: Vec<usize>,
    /// e_i: sum of full-graph degrees over the vertices of each motif.
    pub degree_sums: Vec<u64>,
    /// N_v: total vertex count.
    pub total_vertices: usize,
    /// N_e: total edge count of the full graph.
    pub total_edges: usize,
}

/// Motif-level graph with the stats of the partition that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuotientGraph {
    pub graph: Graph,
    pub stats: MotifStats,
}

fn check_partition(g: &Graph, p: &Partition) -> Result<()> {
    if p.n() != g.n() {
        return Err(Error::PartitionMismatch { partition: p.n(), graph: g.n() });
    }
    Ok(())
}

/// Per-motif stats of `g` under `p`.
pub fn motif_stats(g: &Graph, p: &Partition) -> Result<MotifStats> {
    check_partition(g, p)?;
    let mut vertex_counts = vec![0usize; p.n_blocks()];
    let mut degree_sums = vec![0u64; p.n_blocks()];
    for (v, &b) in p.assignment().iter().enumerate() {
        vertex_counts[b] += 1;
        degree_sums[b] += g.neighbors(v).len() as u64;
    }
    Ok(MotifStats {
        vertex_counts,
        degree_sums,
        total_vertices: g.n(),
        total_edges: g.m(),
    })
}

/// Coarsen `g` by `p`: motifs become vertices, adjacent iff at least one
/// full-graph edge crosses between them.
pub fn quotient(g: &Graph, p: &Partition) -> Result<QuotientGraph> {
    let stats = motif_stats(g, p)?;
    let crossing: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (p.block_of(u), p.block_of(v)))
        .filter(|&(a, b)| a != b)
        .collect();
    let graph = Graph::new_dedup(p.n_blocks(), &crossing)?;
    Ok(QuotientGraph { graph, stats })
}

/// Shannon entropy (bits) of the motif weight distribution
/// w_i = p_i^v p_i^e / sum_j p_j^v p_j^e.
///
/// Terms are accumulated in sorted (n_i, e_i) order so relabeling the
/// motifs or the vertices produces a bit-identical value.
pub fn info_from_stats(stats: &MotifStats) -> f64 {
    let mut pairs: Vec<(usize, u64)> = stats
        .vertex_counts
        .iter()
        .copied()
        .zip(stats.degree_sums.iter().copied())
        .collect();
    pairs.sort_unstable();
    let nv = stats.total_vertices as f64;
    let ne2 = 2.0 * stats.total_edges as f64;
    let products: Vec<f64> =
        pairs.iter().map(|&(n_i, e_i)| (n_i as f64 / nv) * (e_i as f64 / ne2)).collect();
    let total: f64 = products.iter().sum();
    products
        .iter()
        .map(|&p| {
            let w = p / total;
            if w > 0.0 { -w * w.log2() } else { 0.0 }
        })
        .sum()
}

/// Information content of a coarsened representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InfoResult {
    /// I_ve of the motif representation, in bits.
    pub i_ve: f64,
    /// I_ve of the full system (singleton partition).
    pub i_ve_full: f64,
    /// i_ve / i_ve_full.
    pub normalized: f64,
}

/// I_ve of `g` coarsened by `p`, and its value normalized to the full
/// (singleton-partition) representation.
pub fn info_content(g: &Graph, p: &Partition) -> Result<InfoResult> {
    check_partition(g, p)?;
    if g.n() < 2 {
        return Err(Error::DegenerateOrder { required: 2, got: g.n() });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let i_ve = info_from_stats(&motif_stats(g, p)?);
    let i_ve_full = info_from_stats(&motif_stats(g, &Partition::singletons(g.n())?)?);
    Ok(InfoResult { i_ve, i_ve_full, normalized: i_ve / i_ve_full })
}

/// One evaluated partition in a scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanPoint {
    pub n_blocks: usize,
    pub i_ve: f64,
    pub normalized: f64,
    pub partition: Partition,
}

/// Extremal partitions for one motif count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanNmExtremes {
    pub n_blocks: usize,
    pub min: ScanPoint,
    pub max: ScanPoint,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub i_ve_full: f64,
    pub points: Vec<ScanPoint>,
    pub extremes: Vec<ScanNmExtremes>,
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    /// Partitions evaluated per motif count in sampled mode.
    pub samples_per_nm: usize,
    pub seed: u64,
    /// Enumerate every partition instead of sampling.
    pub exhaustive: bool,
    /// Motif-count range, defaulting to 1..=n.
    pub nm_min: Option<usize>,
    pub nm_max: Option<usize>,
    /// Cap on n for exhaustive enumeration.
    pub enumeration_cap: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            samples_per_nm: 100,
            seed: 0,
            exhaustive: false,
            nm_min: None,
            nm_max: None,
            enumeration_cap: PARTITION_ENUMERATION_CAP,
        }
    }
}

/// Evaluate normalized information content over partitions for each motif
/// count, recording every point and the extremal partitions per N_m.
///
/// Deterministic for a fixed seed; extremal ties are broken by the
/// lexicographically smallest restricted-growth string.
pub fn scan(g: &Graph, cfg: &ScanConfig) -> Result<ScanResult> {
    let n = g.n();
    if n < 2 {
        return Err(Error::DegenerateOrder { required: 2, got: n });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let nm_min = cfg.nm_min.unwrap_or(1).max(1);
    let nm_max = cfg.nm_max.unwrap_or(n).min(n);
    if nm_min > nm_max {
        return Err(Error::InvalidBlockCount { blocks: nm_min, n });
    }
    let i_ve_full = info_from_stats(&motif_stats(g, &Partition::singletons(n)?)?);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut points = Vec::new();
    let mut extremes = Vec::new();
    for nm in nm_min..=nm_max {
        let partitions: Vec<Partition> = if cfg.exhaustive {
            enumerate_partitions_capped(n, Some(nm), cfg.enumeration_cap)?.collect()
        } else {
            sample_partitions_with_rng(n, nm, cfg.samples_per_nm, &mut rng)?
        };
        let mut min: Option<ScanPoint> = None;
        let mut max: Option<ScanPoint> = None;
        for p in partitions {
            let i_ve = info_from_stats(&motif_stats(g, &p)?);
            let point =
                ScanPoint { n_blocks: nm, i_ve, normalized: i_ve / i_ve_full, partition: p };
            let beats_min = min.as_ref().is_none_or(|b| {
                point.i_ve < b.i_ve || (point.i_ve == b.i_ve && point.partition < b.partition)
            });
            if beats_min {
                min = Some(point.clone());
            }
            let beats_max = max.as_ref().is_none_or(|b| {
                point.i_ve > b.i_ve || (point.i_ve == b.i_ve && point.partition < b.partition)
            });
            if beats_max {
                max = Some(point.clone());
            }
            points.push(point);
        }
        extremes.push(ScanNmExtremes {
            n_blocks: nm,
            min: min.expect("at least one partition per motif count"),
            max: max.expect("at least one partition per motif count"),
        });
    }
    Ok(ScanResult { i_ve_full, points, extremes })
}

/// Partitions with equal information content at a fixed motif count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EqualInfoGroup {
    /// Representative I_ve (the smallest in the group).
    pub i_ve: f64,
    pub partitions: Vec<Partition>,
    /// True when members have different block-size multisets.
    pub mixed_block_sizes: bool,
}

/// Group all partitions with `n_blocks` blocks by I_ve within a relative
/// tolerance, flagging groups whose members differ in block-size multiset.
pub fn equal_info_partitions(
    g: &Graph,
    n_blocks: usize,
    tol: f64,
) -> Result<Vec<EqualInfoGroup>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut evaluated: Vec<(f64, Partition)> = enumerate_partitions_capped(
        g.n(),
        Some(n_blocks),
        PARTITION_ENUMERATION_CAP,
    )?
    .map(|p| motif_stats(g, &p).map(|s| (info_from_stats(&s), p)))
    .collect::<Result<_>>()?;
    evaluated.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));

    let mut groups: Vec<EqualInfoGroup> = Vec::new();
    for (i_ve, partition) in evaluated {
        let fits = groups
            .last()
            .is_some_and(|group| (i_ve - group.i_ve).abs() <= tol * group.i_ve.abs());
        if fits {
            let group = groups.last_mut().unwrap();
            group.mixed_block_sizes |=
                partition.block_size_multiset() != group.partitions[0].block_size_multiset();
            group.partitions.push(partition);
        } else {
            groups.push(EqualInfoGroup { i_ve, partitions: vec![partition], mixed_block_sizes: false });
        }
    }
    Ok(groups)
}
