//! Vertex partitions in restricted-growth form, their enumeration, and
//! uniform sampling of partitions with a fixed number of blocks.
//!
//! A restricted-growth string assigns block ids in first-use order, so every
//! set partition has exactly one encoding and lexicographic order on the
//! strings is a canonical enumeration order.

use num_bigint::BigUint;
use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Partitions of more elements than this are refused by the exhaustive
/// enumerator (Bell numbers grow too fast beyond it).
pub const PARTITION_ENUMERATION_CAP: usize = 12;

/// A partition of `0..n-1` into non-empty blocks, stored as a
/// restricted-growth string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    assignment: Vec<usize>,
    n_blocks: usize,
}

impl Partition {
    /// Canonicalize an arbitrary block labeling into restricted-growth form.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidPartition("no elements".into()));
        }
        let mut remap: Vec<Option<usize>> = vec![None; labels.len()];
        let mut next = 0usize;
        let mut assignment = Vec::with_capacity(labels.len());
        for &l in labels {
            if l >= labels.len() {
                return Err(Error::InvalidPartition(format!(
                    "block label {l} out of range for {} elements",
                    labels.len()
                )));
            }
            let id = *remap[l].get_or_insert_with(|| {
                let id = next;
                next += 1;
                id
            });
            assignment.push(id);
        }
        Ok(Partition { assignment, n_blocks: next })
    }

    /// Build from explicit blocks, which must disjointly cover `0..n-1`.
    pub fn from_blocks(blocks: &[Vec<usize>]) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        if n == 0 {
            return Err(Error::InvalidPartition("no elements".into()));
        }
        let mut labels = vec![usize::MAX; n];
        for (id, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {id} is empty")));
            }
            for &v in block {
                if v >= n {
                    return Err(Error::InvalidPartition(format!(
                        "element {v} out of range for {n} elements"
                    )));
                }
                if labels[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("element {v} appears twice")));
                }
                labels[v] = id;
            }
        }
        Self::from_labels(&labels)
    }

    /// The partition into n singleton blocks.
    pub fn singletons(n: usize) -> Result<Self> {
        Self::from_labels(&(0..n).collect::<Vec<_>>())
    }

    /// The partition with all n elements in one block.
    pub fn single_block(n: usize) -> Result<Self> {
        Self::from_labels(&vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn n_blocks(&self) -> usize {
        self.n_blocks
    }

    /// Block id of each element, in restricted-growth form.
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    /// Blocks in id order; elements within a block are ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.n_blocks];
        for (v, &b) in self.assignment.iter().enumerate() {
            blocks[b].push(v);
        }
        blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.n_blocks];
        for &b in &self.assignment {
            sizes[b] += 1;
        }
        sizes
    }

    /// Block sizes sorted ascending (the size multiset).
    pub fn block_size_multiset(&self) -> Vec<usize> {
        let mut sizes = self.block_sizes();
        sizes.sort_unstable();
        sizes
    }

    /// Merge blocks `a` and `b` into one (result re-canonicalized).
    pub fn merge_blocks(&self, a: usize, b: usize) -> Result<Self> {
        if a == b || a >= self.n_blocks || b >= self.n_blocks {
            return Err(Error::InvalidPartition(format!(
                "cannot merge blocks {a} and {b} of a {}-block partition",
                self.n_blocks
            )));
        }
        let labels: Vec<usize> =
            self.assignment.iter().map(|&x| if x == b { a } else { x }).collect();
        Self::from_labels(&labels)
    }

    /// Partition induced by relabeling elements with `perm`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n() {
            return Err(Error::InvalidPartition("permutation length mismatch".into()));
        }
        let mut labels = vec![0usize; self.n()];
        for (v, &b) in self.assignment.iter().enumerate() {
            labels[perm[v]] = b;
        }
        Self::from_labels(&labels)
    }

    /// The restricted-growth string rendered with one symbol per element
    /// (0-9, then a-z, then A-Z).
    pub fn rgs_string(&self) -> String {
        self.assignment
            .iter()
            .map(|&b| match b {
                0..=9 => (b'0' + b as u8) as char,
                10..=35 => (b'a' + (b - 10) as u8) as char,
                36..=61 => (b'A' + (b - 36) as u8) as char,
                _ => '?',
            })
            .collect()
    }
}

/// Lexicographic enumeration of restricted-growth strings, optionally
/// filtered to a fixed block count.
pub struct PartitionIter {
    rgs: Vec<usize>,
    max_prefix: Vec<usize>,
    target: Option<usize>,
    done: bool,
    fresh: bool,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        loop {
            if self.done {
                return None;
            }
            if !self.fresh {
                self.advance();
                if self.done {
                    return None;
                }
            }
            self.fresh = false;
            let n_blocks = self.max_prefix[self.rgs.len() - 1] + 1;
            if self.target.is_none_or(|t| t == n_blocks) {
                return Some(Partition { assignment: self.rgs.clone(), n_blocks });
            }
        }
    }
}

impl PartitionIter {
    fn advance(&mut self) {
        let n = self.rgs.len();
        // rightmost position that can still grow: rgs[i] <= max of the prefix
        let mut i = n - 1;
        loop {
            if i == 0 {
                self.done = true;
                return;
            }
            if self.rgs[i] <= self.max_prefix[i - 1] {
                break;
            }
            i -= 1;
        }
        self.rgs[i] += 1;
        self.max_prefix[i] = self.max_prefix[i - 1].max(self.rgs[i]);
        for j in i + 1..n {
            self.rgs[j] = 0;
            self.max_prefix[j] = self.max_prefix[j - 1];
        }
    }
}

/// Every partition of `0..n-1` (or only those with `blocks` blocks) in
/// restricted-growth lexicographic order, refusing n beyond the cap.
pub fn enumerate_partitions(n: usize, blocks: Option<usize>) -> Result<PartitionIter> {
    enumerate_partitions_capped(n, blocks, PARTITION_ENUMERATION_CAP)
}

pub fn enumerate_partitions_capped(
    n: usize,
    blocks: Option<usize>,
    cap: usize,
) -> Result<PartitionIter> {
    if n == 0 {
        return Err(Error::InvalidPartition("no elements".into()));
    }
    if n > cap {
        return Err(Error::BudgetExceeded(format!(
            "partition enumeration for n={n} exceeds the cap of {cap}"
        )));
    }
    if let Some(b) = blocks {
        if b == 0 || b > n {
            return Err(Error::InvalidBlockCount { blocks: b, n });
        }
    }
    Ok(PartitionIter {
        rgs: vec![0; n],
        max_prefix: vec![0; n],
        target: blocks,
        done: false,
        fresh: true,
    })
}

/// Stirling number of the second kind S(n, k).
pub fn stirling2(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    if n == 0 {
        return BigUint::from(1u32);
    }
    if k == 0 {
        return BigUint::ZERO;
    }
    let mut prev = vec![BigUint::ZERO; k + 1];
    prev[0] = BigUint::from(1u32);
    for _ in 1..=n {
        let mut curr = vec![BigUint::ZERO; k + 1];
        for j in 1..=k {
            curr[j] = &prev[j] * BigUint::from(j) + &prev[j - 1];
        }
        prev = curr;
    }
    prev[k].clone()
}

/// Bell number B(n) = sum over k of S(n, k).
pub fn bell(n: usize) -> BigUint {
    (0..=n).map(|k| stirling2(n, k)).sum()
}

/// Draw `count` partitions of `0..n-1` with exactly `blocks` blocks,
/// uniformly and deterministically for a fixed seed.
///
/// Elements are assigned left to right; the choice between joining an
/// existing block and opening a new one is weighted by the exact number of
/// completions, computed with big-integer arithmetic.
pub fn sample_partitions(n: usize, blocks: usize, count: usize, seed: u64) -> Result<Vec<Partition>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_partitions_with_rng(n, blocks, count, &mut rng)
}

pub(crate) fn sample_partitions_with_rng(
    n: usize,
    blocks: usize,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Partition>> {
    if n == 0 {
        return Err(Error::InvalidPartition("no elements".into()));
    }
    if blocks == 0 || blocks > n {
        return Err(Error::InvalidBlockCount { blocks, n });
    }
    // completions[t][j]: ways to extend a prefix of t elements in j blocks
    // to a full partition with exactly `blocks` blocks
    let mut completions = vec![vec![BigUint::ZERO; blocks + 2]; n + 1];
    completions[n][blocks] = BigUint::from(1u32);
    for t in (0..n).rev() {
        for j in 0..=blocks.min(t) {
            let stay = &completions[t + 1][j] * BigUint::from(j);
            completions[t][j] = stay + &completions[t + 1][j + 1];
        }
    }

    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut labels = Vec::with_capacity(n);
        let mut used = 0usize;
        for t in 0..n {
            let join = &completions[t + 1][used] * BigUint::from(used);
            let total = &join + &completions[t + 1][used + 1];
            let r = random_below(rng, &total);
            if r < join {
                let block: usize = (&r / &completions[t + 1][used]).try_into().unwrap();
                labels.push(block);
            } else {
                labels.push(used);
                used += 1;
            }
        }
        out.push(Partition::from_labels(&labels)?);
    }
    Ok(out)
}

/// Uniform big integer in `[0, bound)` by rejection sampling on the top bits.
fn random_below(rng: &mut ChaCha8Rng, bound: &BigUint) -> BigUint {
    debug_assert!(*bound > BigUint::ZERO);
    let bits = bound.bits();
    let bytes = bits.div_ceil(8) as usize;
    let top_mask = if bits % 8 == 0 { 0xff } else { (1u8 << (bits % 8)) - 1 };
    let mut buf = vec![0u8; bytes];
    loop {
        rng.fill_bytes(&mut buf);
        buf[0] &= top_mask;
        let candidate = BigUint::from_bytes_be(&buf);
        if candidate < *bound {
            return candidate;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn canonical_form() {
        let p = Partition::from_labels(&[2, 0, 2, 1]).unwrap();
        assert_eq!(p.assignment(), &[0, 1, 0, 2]);
        assert_eq!(p.n_blocks(), 3);
        assert_eq!(p.blocks(), vec![vec![0, 2], vec![1], vec![3]]);
        assert_eq!(p.rgs_string(), "0102");
    }

    #[test]
    fn from_blocks_validates() {
        assert!(Partition::from_blocks(&[vec![0, 2], vec![1]]).is_ok());
        assert!(Partition::from_blocks(&[vec![0], vec![0, 1]]).is_err());
        assert!(Partition::from_blocks(&[vec![0, 3]]).is_err());
        assert!(Partition::from_blocks(&[]).is_err());
    }

    #[test]
    fn enumeration_order_n3() {
        let all: Vec<String> =
            enumerate_partitions(3, None).unwrap().map(|p| p.rgs_string()).collect();
        assert_eq!(all, vec!["000", "001", "010", "011", "012"]);
    }

    #[test]
    fn enumeration_counts_match_stirling() {
        assert_eq!(enumerate_partitions(4, Some(2)).unwrap().count(), 7);
        assert_eq!(enumerate_partitions(3, None).unwrap().count(), 5);
        assert_eq!(enumerate_partitions(6, Some(6)).unwrap().count(), 1);
        for n in 1..=8 {
            for k in 1..=n {
                let count = enumerate_partitions(n, Some(k)).unwrap().count();
                assert_eq!(BigUint::from(count), stirling2(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn enumeration_cap() {
        assert!(matches!(enumerate_partitions(13, None), Err(Error::BudgetExceeded(_))));
        assert!(enumerate_partitions_capped(13, Some(13), 13).is_ok());
    }

    #[test]
    fn stirling_known_values() {
        assert_eq!(stirling2(4, 2), BigUint::from(7u32));
        assert_eq!(stirling2(6, 2), BigUint::from(31u32));
        assert_eq!(stirling2(5, 3), BigUint::from(25u32));
        assert_eq!(stirling2(10, 10), BigUint::from(1u32));
        assert_eq!(bell(3), BigUint::from(5u32));
        assert_eq!(bell(10), BigUint::from(115975u32));
    }

    #[test]
    fn sampling_is_deterministic_and_valid() {
        let a = sample_partitions(10, 5, 100, 1).unwrap();
        let b = sample_partitions(10, 5, 100, 1).unwrap();
        assert_eq!(a, b);
        for p in &a {
            assert_eq!(p.n_blocks(), 5);
            assert_eq!(p.n(), 10);
        }
        let c = sample_partitions(10, 5, 100, 2).unwrap();
        assert_ne!(a, c);
        // blocks == n forces the singleton partition
        for p in sample_partitions(6, 6, 20, 3).unwrap() {
            assert_eq!(p, Partition::singletons(6).unwrap());
        }
        assert!(matches!(
            sample_partitions(4, 5, 1, 0),
            Err(Error::InvalidBlockCount { blocks: 5, n: 4 })
        ));
    }

    #[test]
    fn sampling_is_close_to_uniform() {
        // S(6,2) = 31 partitions; 10000 draws, each count within 5 sigma
        let samples = sample_partitions(6, 2, 10_000, 42).unwrap();
        let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
        for p in samples {
            *counts.entry(p.assignment().to_vec()).or_default() += 1;
        }
        assert_eq!(counts.len(), 31);
        let p: f64 = 1.0 / 31.0;
        let mean = 10_000.0 * p;
        let sigma = (10_000.0 * p * (1.0 - p)).sqrt();
        for (_, &c) in counts.iter() {
            assert!((c as f64 - mean).abs() < 5.0 * sigma, "count {c} too far from {mean}");
        }
    }

    #[test]
    fn merge_blocks_roundtrip() {
        let p = Partition::from_blocks(&[vec![0, 1], vec![2], vec![3, 4]]).unwrap();
        let merged = p.merge_blocks(0, 2).unwrap();
        assert_eq!(merged.blocks(), vec![vec![0, 1, 3, 4], vec![2]]);
        assert!(p.merge_blocks(0, 0).is_err());
        assert!(p.merge_blocks(0, 9).is_err());
    }
}
