//! Simple undirected graphs and their basic topological descriptors.
//!
//! Vertices are labeled `0..n-1`. Edges are unordered pairs stored in
//! canonical form `(i, j)` with `i < j`, sorted lexicographically. Loops,
//! duplicate edges, and out-of-range endpoints are rejected on construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple undirected graph on `n` labeled vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Build a graph from an edge list, rejecting loops, duplicates
    /// (including reversed duplicates), and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::build(n, edges, false)
    }

    /// Like [`Graph::new`] but collapses duplicate and reversed-duplicate
    /// edges to a single edge instead of rejecting them.
    pub fn new_dedup(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::build(n, edges, true)
    }

    fn build(n: usize, edges: &[(usize, usize)], dedup: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut canon: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(Error::LoopEdge(a));
            }
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, order: n });
                }
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        if dedup {
            canon.dedup();
        } else if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &canon {
            adj[i].push(j);
            adj[j].push(i);
        }
        Ok(Graph { n, edges: canon, adj })
    }

    /// The complete graph K_n.
    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Self::new(n, &edges)
    }

    /// The path graph 0-1-...-(n-1).
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Self::new(n, &edges)
    }

    /// The cycle graph C_n (requires n >= 3).
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::DegenerateOrder { required: 3, got: n });
        }
        let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n - 1));
        Self::new(n, &edges)
    }

    /// The star graph with center 0 and n-1 leaves.
    pub fn star(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Self::new(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list: `(i, j)` with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && a < self.n && b < self.n && self.adj[a].contains(&b)
    }

    /// Vertex degree a_i: the number of neighbors of `i`.
    pub fn degree(&self, i: usize) -> Result<usize> {
        if i >= self.n {
            return Err(Error::VertexOutOfRange { vertex: i, order: self.n });
        }
        Ok(self.adj[i].len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// True iff every vertex is reachable from vertex 0.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// Apply the vertex relabeling `perm` (vertex `v` becomes `perm[v]`).
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::VertexOutOfRange { vertex: perm.len(), order: self.n });
        }
        let edges: Vec<_> = self.edges.iter().map(|&(i, j)| (perm[i], perm[j])).collect();
        Self::new(self.n, &edges)
    }
}

/// Total adjacency A = sum of all vertex degrees = 2m.
pub fn total_adjacency(g: &Graph) -> u64 {
    2 * g.m() as u64
}

/// Connectedness (Conn, Conn') = (2m/n^2, 2m/(n(n-1))).
///
/// Conn' is 1 exactly for complete graphs; it needs n >= 2.
pub fn connectedness(g: &Graph) -> Result<(f64, f64)> {
    let n = g.n() as f64;
    if g.n() < 2 {
        return Err(Error::DegenerateOrder { required: 2, got: g.n() });
    }
    let a = total_adjacency(g) as f64;
    Ok((a / (n * n), a / (n * (n - 1.0))))
}

/// Local clustering coefficients c_i = 2 m_i / (a_i (a_i - 1)) and their
/// average C. Vertices with degree 0 or 1 take c_i = 0.
pub fn clustering(g: &Graph) -> (Vec<f64>, f64) {
    let n = g.n();
    let mut local = vec![0.0; n];
    for i in 0..n {
        let nbrs = g.neighbors(i);
        let a = nbrs.len();
        if a <= 1 {
            continue;
        }
        let mut mi = 0u64;
        for (x, &u) in nbrs.iter().enumerate() {
            for &v in &nbrs[x + 1..] {
                if g.has_edge(u, v) {
                    mi += 1;
                }
            }
        }
        local[i] = 2.0 * mi as f64 / (a as f64 * (a as f64 - 1.0));
    }
    // sum in sorted order so relabeled graphs get a bit-identical average
    let mut sorted = local.clone();
    sorted.sort_unstable_by(f64::total_cmp);
    let avg = sorted.iter().sum::<f64>() / n as f64;
    (local, avg)
}

/// Extended connectivities ^kEC for k = 0..=k_max.
///
/// Morgan-style iteration: ec_i^(0) = a_i and ec_i^(k+1) = sum of ec_j^(k)
/// over neighbors j of i; ^kEC is the vertex sum at step k, so ^0EC = A.
pub fn extended_connectivity(g: &Graph, k_max: usize) -> Vec<u128> {
    let n = g.n();
    let mut ec: Vec<u128> = (0..n).map(|i| g.neighbors(i).len() as u128).collect();
    let mut totals = vec![ec.iter().sum::<u128>()];
    for _ in 0..k_max {
        let next: Vec<u128> = (0..n)
            .map(|i| g.neighbors(i).iter().map(|&j| ec[j]).sum())
            .collect();
        ec = next;
        totals.push(ec.iter().sum());
    }
    totals
}

/// All-pairs geodesic hop counts of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.d[i * self.n + j]
    }

    /// Distance degree d_i = sum over j of d_ij.
    pub fn distance_degree(&self, i: usize) -> u64 {
        self.d[i * self.n..(i + 1) * self.n].iter().map(|&x| x as u64).sum()
    }
}

/// All-pairs distances via breadth-first search from every vertex.
///
/// Fails with `Disconnected` when some pair is unreachable.
pub fn distances(g: &Graph) -> Result<DistanceMatrix> {
    let n = g.n();
    let mut d = vec![u32::MAX; n * n];
    let mut queue = Vec::with_capacity(n);
    for s in 0..n {
        let row = &mut d[s * n..(s + 1) * n];
        row[s] = 0;
        queue.clear();
        queue.push(s);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &v in g.neighbors(u) {
                if row[v] == u32::MAX {
                    row[v] = row[u] + 1;
                    queue.push(v);
                }
            }
        }
        if queue.len() != n {
            return Err(Error::Disconnected);
        }
    }
    let dm = DistanceMatrix { n, d };
    debug_assert!(dm.check_invariants());
    Ok(dm)
}

impl DistanceMatrix {
    /// Zero diagonal, symmetry, and the triangle inequality.
    pub fn check_invariants(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            if self.get(i, i) != 0 {
                return false;
            }
            for j in 0..n {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
                for k in 0..n {
                    if self.get(i, k) > self.get(i, j) + self.get(j, k) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Distance-based descriptors of a connected graph on n >= 2 vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceDescriptors {
    /// d_i = sum over j of d_ij, per vertex.
    pub distance_degrees: Vec<u64>,
    /// D = sum of all d_i.
    pub graph_distance: u64,
    /// <d_i> = D / n.
    pub avg_vertex_distance: f64,
    /// <d> = D / (n (n - 1)).
    pub avg_graph_distance: f64,
    /// Mean geodesic l = (sum over i >= j of d_ij) / (n (n + 1) / 2),
    /// diagonal zeros included.
    pub mean_geodesic: f64,
}

pub fn distance_descriptors(g: &Graph) -> Result<DistanceDescriptors> {
    let n = g.n();
    if n < 2 {
        return Err(Error::DegenerateOrder { required: 2, got: n });
    }
    let dm = distances(g)?;
    let distance_degrees: Vec<u64> = (0..n).map(|i| dm.distance_degree(i)).collect();
    let graph_distance: u64 = distance_degrees.iter().sum();
    let nf = n as f64;
    Ok(DistanceDescriptors {
        avg_vertex_distance: graph_distance as f64 / nf,
        avg_graph_distance: graph_distance as f64 / (nf * (nf - 1.0)),
        // the lower triangle including the diagonal holds D/2 plus n zeros
        mean_geodesic: (graph_distance as f64 / 2.0) / (nf * (nf + 1.0) / 2.0),
        distance_degrees,
        graph_distance,
    })
}

/// Every basic descriptor of a connected graph in one pass.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DescriptorReport {
    pub degrees: Vec<usize>,
    pub total_adjacency: u64,
    pub avg_degree: f64,
    pub conn: f64,
    pub conn_prime: f64,
    pub local_clustering: Vec<f64>,
    pub clustering: f64,
    /// ^kEC for k = 0..=k_max.
    pub extended_connectivity: Vec<u128>,
    pub distance_degrees: Vec<u64>,
    pub graph_distance: u64,
    pub avg_vertex_distance: f64,
    pub avg_graph_distance: f64,
    pub mean_geodesic: f64,
}

pub fn descriptor_report(g: &Graph, ec_k_max: usize) -> Result<DescriptorReport> {
    let (conn, conn_prime) = connectedness(g)?;
    let (local_clustering, clustering) = clustering(g);
    let dd = distance_descriptors(g)?;
    Ok(DescriptorReport {
        degrees: g.degrees(),
        total_adjacency: total_adjacency(g),
        avg_degree: total_adjacency(g) as f64 / g.n() as f64,
        conn,
        conn_prime,
        local_clustering,
        clustering,
        extended_connectivity: extended_connectivity(g, ec_k_max),
        distance_degrees: dd.distance_degrees,
        graph_distance: dd.graph_distance,
        avg_vertex_distance: dd.avg_vertex_distance,
        avg_graph_distance: dd.avg_graph_distance,
        mean_geodesic: dd.mean_geodesic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn p3() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(Graph::new(0, &[]), Err(Error::EmptyGraph));
        assert_eq!(Graph::new(2, &[(0, 0)]), Err(Error::LoopEdge(0)));
        assert_eq!(Graph::new(3, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(Graph::new(3, &[(0, 1), (0, 1)]), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(
            Graph::new(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, order: 2 })
        );
    }

    #[test]
    fn dedup_collapses_reversed_duplicates() {
        let g = Graph::new_dedup(3, &[(1, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        // a loop is still rejected
        assert_eq!(Graph::new_dedup(2, &[(1, 1)]), Err(Error::LoopEdge(1)));
    }

    #[test]
    fn basic_shapes() {
        assert_eq!(k3().m(), 3);
        assert_eq!(p3().m(), 2);
        assert_eq!(Graph::star(5).unwrap().degree(0).unwrap(), 4);
        assert_eq!(p3().degree(1).unwrap(), 2);
        assert_eq!(p3().degree(0).unwrap(), 1);
        assert!(k3().degree(7).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(k3().is_connected());
        assert!(!Graph::new(4, &[(0, 1), (2, 3)]).unwrap().is_connected());
        assert!(Graph::new(1, &[]).unwrap().is_connected());
    }

    #[test]
    fn adjacency_and_connectedness() {
        assert_eq!(total_adjacency(&k3()), 6);
        assert_eq!(total_adjacency(&p3()), 4);
        assert_eq!(total_adjacency(&Graph::new(1, &[]).unwrap()), 0);

        let (conn, connp) = connectedness(&k3()).unwrap();
        assert_eq!((conn, connp), (2.0 / 3.0, 1.0));
        let (conn, connp) = connectedness(&p3()).unwrap();
        assert_eq!((conn, connp), (4.0 / 9.0, 2.0 / 3.0));
        for n in 2..7 {
            let (_, connp) = connectedness(&Graph::complete(n).unwrap()).unwrap();
            assert_eq!(connp, 1.0);
        }
        assert!(connectedness(&Graph::new(1, &[]).unwrap()).is_err());
    }

    #[test]
    fn clustering_values() {
        let (ci, c) = clustering(&k3());
        assert_eq!(ci, vec![1.0; 3]);
        assert_eq!(c, 1.0);
        let (ci, c) = clustering(&p3());
        assert_eq!(ci, vec![0.0; 3]);
        assert_eq!(c, 0.0);
        // K4 minus edge (0,3): m_i enumerated by hand from the oracle
        let g = Graph::new(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let (ci, c) = clustering(&g);
        assert_eq!(ci, vec![1.0, 2.0 / 3.0, 2.0 / 3.0, 1.0]);
        assert!((c - 5.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn extended_connectivity_values() {
        // K3 is 2-regular: ^kEC = 3 * 2^(k+1)
        assert_eq!(extended_connectivity(&k3(), 2), vec![6, 12, 24]);
        // P3: hand iteration of the recurrence
        assert_eq!(extended_connectivity(&p3(), 2), vec![4, 6, 8]);
        // ^0EC = A always
        let g = Graph::new(5, &[(0, 1), (0, 2), (1, 2), (3, 4), (2, 3)]).unwrap();
        assert_eq!(extended_connectivity(&g, 0)[0], total_adjacency(&g) as u128);
    }

    #[test]
    fn regular_graph_extended_connectivity_closed_form() {
        for (g, r) in [
            (Graph::cycle(6).unwrap(), 2u128),
            (Graph::complete(5).unwrap(), 4u128),
        ] {
            let n = g.n() as u128;
            let ec = extended_connectivity(&g, 6);
            for (k, &v) in ec.iter().enumerate() {
                assert_eq!(v, n * r.pow(k as u32 + 1));
            }
        }
    }

    #[test]
    fn distance_matrix_values() {
        let dm = distances(&p3()).unwrap();
        assert_eq!(dm.get(0, 2), 2);
        assert_eq!(dm.get(0, 1), 1);
        assert_eq!(dm.get(1, 2), 1);
        let dm = distances(&Graph::complete(5).unwrap()).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(dm.get(i, j), u32::from(i != j));
            }
        }
        assert_eq!(distances(&Graph::new(3, &[(0, 1)]).unwrap()), Err(Error::Disconnected));
    }

    #[test]
    fn distance_descriptor_values() {
        let dd = distance_descriptors(&p3()).unwrap();
        assert_eq!(dd.distance_degrees, vec![3, 2, 3]);
        assert_eq!(dd.graph_distance, 8);
        assert_eq!(dd.avg_graph_distance, 8.0 / 6.0);
        assert_eq!(dd.mean_geodesic, 4.0 / 6.0);

        let dd = distance_descriptors(&k3()).unwrap();
        assert_eq!(dd.graph_distance, 6);
        assert_eq!(dd.mean_geodesic, 0.5);

        for n in 2..7 {
            let dd = distance_descriptors(&Graph::complete(n).unwrap()).unwrap();
            assert_eq!(dd.graph_distance, (n * (n - 1)) as u64);
        }
    }

    #[test]
    fn trees_have_zero_clustering() {
        for g in [Graph::path(7).unwrap(), Graph::star(6).unwrap()] {
            assert_eq!(clustering(&g).1, 0.0);
        }
    }

    #[test]
    fn report_fields_are_consistent() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let r = descriptor_report(&g, 2).unwrap();
        assert_eq!(r.total_adjacency, 2 * g.m() as u64);
        assert_eq!(r.total_adjacency, r.degrees.iter().map(|&d| d as u64).sum::<u64>());
        assert_eq!(r.graph_distance, r.distance_degrees.iter().sum::<u64>());
        assert_eq!(r.extended_connectivity, vec![10, 26, 66]);
        assert_eq!(r.mean_geodesic, 7.0 / 10.0);
    }
}
