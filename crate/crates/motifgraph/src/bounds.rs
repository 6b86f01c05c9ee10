//! Mathematical and constraint-respecting extremes of complexity measures,
//! found by exhaustive scan over all connected graphs on n labeled vertices.
//!
//! Graphs are encoded as bitmasks over the C(n,2) vertex pairs in
//! lexicographic order. Constrained scans only walk the submasks of the
//! free (neither required nor forbidden) pairs. K and OC are counted with a
//! subset dynamic program over vertex sets instead of explicit subgraph
//! enumeration; the DP is checked against the recursive census in tests.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measures::{self, Measure, DEFAULT_SUBGRAPH_BUDGET};

/// Largest order scanned exhaustively: 2^(n(n-1)/2) graphs.
pub const EXHAUSTIVE_ORDER_CAP: usize = 7;

/// Required and forbidden edge sets bounding the admissible graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSet {
    pub n: usize,
    pub required: Vec<(usize, usize)>,
    pub forbidden: Vec<(usize, usize)>,
}

impl ConstraintSet {
    pub fn new(
        n: usize,
        required: Vec<(usize, usize)>,
        forbidden: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let mut c = ConstraintSet { n, required, forbidden };
        c.validate()?;
        Ok(c)
    }

    /// Canonicalize both edge sets and check they are simple and disjoint.
    pub fn validate(&mut self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::EmptyGraph);
        }
        for set in [&mut self.required, &mut self.forbidden] {
            for pair in set.iter_mut() {
                let (a, b) = *pair;
                if a == b {
                    return Err(Error::MalformedConstraint(format!("loop pair ({a}, {b})")));
                }
                if a >= self.n || b >= self.n {
                    return Err(Error::MalformedConstraint(format!(
                        "pair ({a}, {b}) out of range for n={}",
                        self.n
                    )));
                }
                *pair = (a.min(b), a.max(b));
            }
            set.sort_unstable();
            set.dedup();
        }
        if let Some(&(a, b)) = self.required.iter().find(|p| self.forbidden.contains(p)) {
            return Err(Error::MalformedConstraint(format!(
                "pair ({a}, {b}) is both required and forbidden"
            )));
        }
        Ok(())
    }

    /// Constraints that admit every graph on n vertices.
    pub fn unconstrained(n: usize) -> Result<Self> {
        Self::new(n, Vec::new(), Vec::new())
    }
}

/// Extreme measure values over all connected graphs of a given order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MathLimits {
    pub measure: Measure,
    pub min: f64,
    pub max: f64,
    pub min_witness: Vec<(usize, usize)>,
    pub max_witness: Vec<(usize, usize)>,
}

/// Mathematical and constrained extremes with witness graphs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremesResult {
    pub measure: Measure,
    pub n: usize,
    pub math_min: f64,
    pub math_max: f64,
    pub math_min_witness: Vec<(usize, usize)>,
    pub math_max_witness: Vec<(usize, usize)>,
    pub constrained_min: f64,
    pub constrained_max: f64,
    pub constrained_min_witness: Vec<(usize, usize)>,
    pub constrained_max_witness: Vec<(usize, usize)>,
}

impl ExtremesResult {
    /// math_min <= constrained_min <= constrained_max <= math_max.
    pub fn sandwich_holds(&self) -> bool {
        self.math_min <= self.constrained_min
            && self.constrained_min <= self.constrained_max
            && self.constrained_max <= self.math_max
    }
}

/// Extremes of `measure` over every connected graph on `n` labeled vertices.
pub fn mathematical_limits(n: usize, measure: Measure) -> Result<MathLimits> {
    mathematical_limits_capped(n, measure, EXHAUSTIVE_ORDER_CAP)
}

pub fn mathematical_limits_capped(n: usize, measure: Measure, cap: usize) -> Result<MathLimits> {
    let scan = scan_masks(&ConstraintSet::unconstrained(n)?, measure, cap)?;
    let (min, min_mask, max, max_mask) = scan.ok_or(Error::Infeasible)?;
    Ok(MathLimits {
        measure,
        min,
        max,
        min_witness: mask_to_edges(n, min_mask),
        max_witness: mask_to_edges(n, max_mask),
    })
}

/// Extremes over the connected graphs containing every required edge and no
/// forbidden edge, alongside the unconstrained limits for context.
pub fn constrained_extremes(constraints: &ConstraintSet, measure: Measure) -> Result<ExtremesResult> {
    constrained_extremes_capped(constraints, measure, EXHAUSTIVE_ORDER_CAP)
}

pub fn constrained_extremes_capped(
    constraints: &ConstraintSet,
    measure: Measure,
    cap: usize,
) -> Result<ExtremesResult> {
    let math = mathematical_limits_capped(constraints.n, measure, cap)?;
    constrained_extremes_with_limits(constraints, &math, cap)
}

/// Constrained scan reusing precomputed mathematical limits (they depend
/// only on `(n, measure)`, so callers evaluating many constraint sets can
/// compute them once).
pub fn constrained_extremes_with_limits(
    constraints: &ConstraintSet,
    math: &MathLimits,
    cap: usize,
) -> Result<ExtremesResult> {
    let scan = scan_masks(constraints, math.measure, cap)?;
    let (cmin, cmin_mask, cmax, cmax_mask) = scan.ok_or(Error::Infeasible)?;
    let result = ExtremesResult {
        measure: math.measure,
        n: constraints.n,
        math_min: math.min,
        math_max: math.max,
        math_min_witness: math.min_witness.clone(),
        math_max_witness: math.max_witness.clone(),
        constrained_min: cmin,
        constrained_max: cmax,
        constrained_min_witness: mask_to_edges(constraints.n, cmin_mask),
        constrained_max_witness: mask_to_edges(constraints.n, cmax_mask),
    };
    debug_assert!(result.sandwich_holds());
    Ok(result)
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    // lexicographic rank of (i, j), i < j, among the C(n,2) pairs
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn mask_to_edges(n: usize, mask: u32) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> idx & 1 == 1 {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    edges
}

fn edges_to_mask(n: usize, edges: &[(usize, usize)]) -> u32 {
    edges.iter().fold(0, |mask, &(i, j)| mask | 1 << pair_index(n, i, j))
}

/// Lexicographic order on the sorted edge lists the masks encode.
fn edge_list_lex_less(a: u32, b: u32) -> bool {
    let (mut x, mut y) = (a, b);
    while x != 0 && y != 0 {
        let (ex, ey) = (x.trailing_zeros(), y.trailing_zeros());
        if ex != ey {
            return ex < ey;
        }
        x &= x - 1;
        y &= y - 1;
    }
    x == 0 && y != 0
}

/// Scan every admissible connected graph, returning
/// `(min, min_mask, max, max_mask)`, or None when none is admissible.
/// Ties go to the lexicographically smallest edge set.
fn scan_masks(
    constraints: &ConstraintSet,
    measure: Measure,
    cap: usize,
) -> Result<Option<(f64, u32, f64, u32)>> {
    let n = constraints.n;
    if n > cap {
        return Err(Error::BudgetExceeded(format!(
            "order {n} exceeds the exhaustive search cap of {cap}"
        )));
    }
    let pairs = n * (n - 1) / 2;
    let full = if pairs == 32 { u32::MAX } else { (1u32 << pairs) - 1 };
    let base = edges_to_mask(n, &constraints.required);
    let free = full & !base & !edges_to_mask(n, &constraints.forbidden);

    let mut best: Option<(f64, u32, f64, u32)> = None;
    let mut t = free;
    loop {
        let mask = base | t;
        if mask_connected(n, mask) {
            let value = measure_on_mask(n, mask, measure)?;
            best = Some(match best {
                None => (value, mask, value, mask),
                Some((mut lo, mut lo_mask, mut hi, mut hi_mask)) => {
                    if value < lo || (value == lo && edge_list_lex_less(mask, lo_mask)) {
                        (lo, lo_mask) = (value, mask);
                    }
                    if value > hi || (value == hi && edge_list_lex_less(mask, hi_mask)) {
                        (hi, hi_mask) = (value, mask);
                    }
                    (lo, lo_mask, hi, hi_mask)
                }
            });
        }
        if t == 0 {
            break;
        }
        t = (t - 1) & free;
    }
    Ok(best)
}

fn adjacency_masks(n: usize, mask: u32) -> [u32; 8] {
    let mut adj = [0u32; 8];
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> idx & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            idx += 1;
        }
    }
    adj
}

fn mask_connected(n: usize, mask: u32) -> bool {
    if n == 1 {
        return true;
    }
    let adj = adjacency_masks(n, mask);
    let all = (1u32 << n) - 1;
    let mut seen = 1u32;
    loop {
        let mut next = seen;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            next |= adj[v];
        }
        if next == seen {
            return seen == all;
        }
        seen = next;
    }
}

fn measure_on_mask(n: usize, mask: u32, measure: Measure) -> Result<f64> {
    match measure {
        Measure::K => Ok(census_totals_masked(n, mask).0 as f64),
        Measure::Oc => Ok(census_totals_masked(n, mask).1 as f64),
        _ => {
            let g = Graph::new(n, &mask_to_edges(n, mask))
                .expect("mask encodes a valid simple graph");
            measures::measure_value(&g, measure, DEFAULT_SUBGRAPH_BUDGET)
        }
    }
}

/// (K, OC) of the masked graph via a subset DP: cc[S] counts the connected
/// edge-subgraphs spanning exactly the vertex set S, obtained by peeling the
/// component of S's lowest vertex off the free count 2^{e(S)}.
fn census_totals_masked(n: usize, mask: u32) -> (u64, u64) {
    debug_assert!(n <= 8);
    let adj = adjacency_masks(n, mask);
    let deg: Vec<u16> = (0..n).map(|v| adj[v].count_ones() as u16).collect();
    let size = 1usize << n;

    let mut edges_in = [0u8; 256];
    let mut degsum = [0u16; 256];
    for x in 1..size {
        let v = x.trailing_zeros() as usize;
        let rest = x & (x - 1);
        edges_in[x] = edges_in[rest] + (adj[v] & rest as u32).count_ones() as u8;
        degsum[x] = degsum[rest] + deg[v];
    }

    let mut cc = [0u64; 256];
    let mut k_total = 0u64;
    let mut oc_total = 0u64;
    for x in 1..size {
        if x & (x - 1) == 0 {
            cc[x] = 1;
        } else {
            let low = x & x.wrapping_neg();
            let others = x ^ low;
            let mut count = 1u64 << edges_in[x];
            let mut sub = others;
            loop {
                sub = sub.wrapping_sub(1) & others;
                let s0 = low | sub;
                count -= cc[s0] << edges_in[x & !s0];
                if sub == 0 {
                    break;
                }
            }
            cc[x] = count;
        }
        k_total += cc[x];
        oc_total += cc[x] * degsum[x] as u64;
    }
    (k_total, oc_total)
}

/// (K, OC) of a graph via the subset DP (n <= 8).
#[cfg(test)]
pub(crate) fn census_totals_fast(g: &Graph) -> (u64, u64) {
    census_totals_masked(g.n(), edges_to_mask(g.n(), g.edges()))
}
