//! Graph-complexity and motif-analysis toolkit.
//!
//! Physical systems are modeled as simple undirected graphs. The crate
//! computes basic topological descriptors and complexity measures of the
//! full graph, quantifies the information content of motif-coarsened
//! representations, searches for extremal-complexity representations under
//! edge constraints, and enumerates information-targeted motif refinements.

pub mod bounds;
pub mod error;
pub mod graph;
pub mod io;
pub mod measures;
pub mod motifs;
pub mod partition;
pub mod refine;

pub use error::{Error, Result};
pub use graph::{DescriptorReport, DistanceMatrix, Graph};
pub use measures::{ComplexityReport, Measure, DEFAULT_SUBGRAPH_BUDGET};
pub use motifs::{InfoResult, QuotientGraph};
pub use partition::Partition;

#[cfg(test)]
pub(crate) mod testutil {
    use crate::graph::Graph;
    use rand::RngCore;
    use rand_chacha::ChaCha8Rng;

    /// Random connected graph: a random spanning tree plus independent
    /// extra edges with probability `extra_p`.
    pub fn rand_connected_graph(rng: &mut ChaCha8Rng, n: usize, extra_p: f64) -> Graph {
        let mut edges = Vec::new();
        for v in 1..n {
            let parent = (rng.next_u64() % v as u64) as usize;
            edges.push((parent, v));
        }
        for i in 0..n {
            for j in i + 1..n {
                let present = edges.contains(&(i, j));
                if !present && (rng.next_u64() as f64 / u64::MAX as f64) < extra_p {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(n, &edges).expect("construction yields a valid simple graph")
    }

    pub fn rand_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            perm.swap(i, j);
        }
        perm
    }
}
