//! Topological complexity measures: degree-distribution information, edge
//! complexities, subgraph-count indices, overall connectivity, and the
//! distance-based A/D and B indices.
//!
//! The subgraph census enumerates every connected edge-subgraph exactly once
//! by recursive extension. Edges adjacent in the line graph are added in
//! anchor order: a subgraph is generated only from its minimum edge, and an
//! edge that was considered and skipped is never revisited, so no subgraph
//! appears twice. Single vertices count as the 0-edge subgraphs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{self, Graph};

/// Default cap on the number of enumerated subgraphs.
pub const DEFAULT_SUBGRAPH_BUDGET: u64 = 100_000_000;

/// Counts of connected subgraphs grouped by edge count; entry 0 is the
/// number of vertices, entry 1 the number of edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgraphSpectrum {
    pub by_edges: Vec<u64>,
    /// K: total subgraph count, including the graph itself.
    pub total: u64,
}

/// ^kOC values: for each k, the sum over connected k-edge subgraphs of the
/// parent-graph degrees of their vertices. Entry 0 sums over single
/// vertices, so it equals the total adjacency.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverallConnectivity {
    pub by_edges: Vec<u64>,
    pub total: u64,
}

struct CensusTopo {
    /// line-graph adjacency: edges sharing an endpoint
    edge_adj: Vec<Vec<u32>>,
    edge_ends: Vec<(u32, u32)>,
    deg: Vec<u64>,
}

struct CensusScratch {
    closed: Vec<bool>,
    vertex_uses: Vec<u32>,
    degsum: u64,
    spectrum: Vec<u64>,
    oc: Vec<u64>,
    count: u64,
    budget: u64,
    pool: Vec<Vec<u32>>,
}

impl CensusScratch {
    fn emit(&mut self, edges: usize) -> Result<()> {
        self.count += 1;
        if self.count > self.budget {
            return Err(Error::BudgetExceeded(format!(
                "subgraph count exceeds the budget of {}",
                self.budget
            )));
        }
        self.spectrum[edges] += 1;
        self.oc[edges] += self.degsum;
        Ok(())
    }

    fn add_edge(&mut self, topo: &CensusTopo, e: u32) {
        let (a, b) = topo.edge_ends[e as usize];
        for v in [a as usize, b as usize] {
            self.vertex_uses[v] += 1;
            if self.vertex_uses[v] == 1 {
                self.degsum += topo.deg[v];
            }
        }
    }

    fn remove_edge(&mut self, topo: &CensusTopo, e: u32) {
        let (a, b) = topo.edge_ends[e as usize];
        for v in [a as usize, b as usize] {
            self.vertex_uses[v] -= 1;
            if self.vertex_uses[v] == 0 {
                self.degsum -= topo.deg[v];
            }
        }
    }
}

fn census_extend(scratch: &mut CensusScratch, topo: &CensusTopo, depth: usize) -> Result<()> {
    let ext = std::mem::take(&mut scratch.pool[depth]);
    for i in 0..ext.len() {
        let w = ext[i];
        scratch.add_edge(topo, w);
        scratch.emit(depth + 1)?;
        // candidates for the extended subgraph: the not-yet-considered part
        // of ext plus w's fresh line-graph neighbors
        let keep = ext.len() - i - 1;
        scratch.pool[depth + 1].clear();
        scratch.pool[depth + 1].extend_from_slice(&ext[i + 1..]);
        for &e in &topo.edge_adj[w as usize] {
            if !scratch.closed[e as usize] {
                scratch.closed[e as usize] = true;
                scratch.pool[depth + 1].push(e);
            }
        }
        census_extend(scratch, topo, depth + 1)?;
        for k in keep..scratch.pool[depth + 1].len() {
            scratch.closed[scratch.pool[depth + 1][k] as usize] = false;
        }
        scratch.remove_edge(topo, w);
    }
    scratch.pool[depth] = ext;
    Ok(())
}

/// Enumerate every connected subgraph of a connected graph, tallying the
/// subgraph spectrum and the overall-connectivity spectrum in one pass.
pub fn subgraph_census(g: &Graph, budget: u64) -> Result<(SubgraphSpectrum, OverallConnectivity)> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let m = g.m();
    let deg: Vec<u64> = g.degrees().iter().map(|&d| d as u64).collect();

    let mut incident: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (idx, &(a, b)) in g.edges().iter().enumerate() {
        incident[a].push(idx as u32);
        incident[b].push(idx as u32);
    }
    let mut edge_adj: Vec<Vec<u32>> = vec![Vec::new(); m];
    for (idx, &(a, b)) in g.edges().iter().enumerate() {
        for v in [a, b] {
            for &e in &incident[v] {
                if e as usize != idx {
                    edge_adj[idx].push(e);
                }
            }
        }
    }
    let topo = CensusTopo {
        edge_adj,
        edge_ends: g.edges().iter().map(|&(a, b)| (a as u32, b as u32)).collect(),
        deg: deg.clone(),
    };

    let total_adjacency: u64 = deg.iter().sum();
    let mut scratch = CensusScratch {
        closed: vec![false; m],
        vertex_uses: vec![0; n],
        degsum: 0,
        spectrum: vec![0; m + 1],
        oc: vec![0; m + 1],
        count: n as u64,
        budget,
        pool: vec![Vec::new(); m + 1],
    };
    if scratch.count > budget {
        return Err(Error::BudgetExceeded(format!(
            "subgraph count exceeds the budget of {budget}"
        )));
    }
    scratch.spectrum[0] = n as u64;
    scratch.oc[0] = total_adjacency;

    for anchor in 0..m as u32 {
        scratch.closed[anchor as usize] = true; // stays closed for later anchors
        scratch.add_edge(&topo, anchor);
        scratch.emit(1)?;
        scratch.pool[1].clear();
        for &e in &topo.edge_adj[anchor as usize] {
            if !scratch.closed[e as usize] {
                scratch.closed[e as usize] = true;
                scratch.pool[1].push(e);
            }
        }
        census_extend(&mut scratch, &topo, 1)?;
        for k in 0..scratch.pool[1].len() {
            scratch.closed[scratch.pool[1][k] as usize] = false;
        }
        scratch.remove_edge(&topo, anchor);
    }

    let spectrum_total = scratch.spectrum.iter().sum();
    let oc_total = scratch.oc.iter().sum();
    Ok((
        SubgraphSpectrum { by_edges: scratch.spectrum, total: spectrum_total },
        OverallConnectivity { by_edges: scratch.oc, total: oc_total },
    ))
}

/// Total subgraph count K with its per-edge-count spectrum.
pub fn total_subgraph_count(g: &Graph, budget: u64) -> Result<SubgraphSpectrum> {
    Ok(subgraph_census(g, budget)?.0)
}

/// Overall connectivity OC with its per-edge-count spectrum.
pub fn overall_connectivity(g: &Graph, budget: u64) -> Result<OverallConnectivity> {
    Ok(subgraph_census(g, budget)?.1)
}

/// I_vd = sum over vertices of a_i log2(a_i), in bits (paper sign
/// convention: no leading minus).
pub fn info_vertex_degree(g: &Graph) -> Result<f64> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    // sorted degrees: relabeled graphs sum in the same order
    let mut degrees = g.degrees();
    degrees.sort_unstable();
    Ok(degrees
        .iter()
        .map(|&a| if a > 1 { a as f64 * (a as f64).log2() } else { 0.0 })
        .sum())
}

/// Edge complexities (E_g, E_a, E_n) = (A, A/n, A/n^2).
pub fn edge_complexities(g: &Graph) -> (u64, f64, f64) {
    let a = graph::total_adjacency(g);
    let n = g.n() as f64;
    (a, a as f64 / n, a as f64 / (n * n))
}

/// Second-order subgraph count ^2SC (Platt's index) and its normalization
/// by the 2-edge subgraph count of the complete graph.
pub fn subgraph_count_2(g: &Graph) -> Result<(u64, f64)> {
    let n = g.n();
    if n < 3 {
        return Err(Error::DegenerateOrder { required: 3, got: n });
    }
    // every connected 2-edge subgraph has a unique center vertex
    let sc2: u64 = g.degrees().iter().map(|&a| (a as u64) * (a as u64).saturating_sub(1) / 2).sum();
    let nf = n as f64;
    Ok((sc2, sc2 as f64 / (0.5 * nf * (nf - 1.0) * (nf - 2.0))))
}

/// A/D index: average vertex degree over average distance degree.
pub fn ad_index(g: &Graph) -> Result<f64> {
    let dd = graph::distance_descriptors(g)?;
    let avg_degree = graph::total_adjacency(g) as f64 / g.n() as f64;
    Ok(avg_degree / dd.avg_vertex_distance)
}

/// B index: the sum of b_i = a_i / d_i over all vertices.
pub fn b_index(g: &Graph) -> Result<(f64, Vec<f64>)> {
    let dd = graph::distance_descriptors(g)?;
    let b_i: Vec<f64> = g
        .degrees()
        .iter()
        .zip(&dd.distance_degrees)
        .map(|(&a, &d)| a as f64 / d as f64)
        .collect();
    let mut sorted = b_i.clone();
    sorted.sort_unstable_by(f64::total_cmp);
    Ok((sorted.iter().sum(), b_i))
}

/// Identifier for one scalar complexity measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Ivd,
    Eg,
    Ea,
    En,
    Sc2,
    Sc2n,
    K,
    Oc,
    Ad,
    B,
}

impl Measure {
    pub const ALL: [Measure; 10] = [
        Measure::Ivd,
        Measure::Eg,
        Measure::Ea,
        Measure::En,
        Measure::Sc2,
        Measure::Sc2n,
        Measure::K,
        Measure::Oc,
        Measure::Ad,
        Measure::B,
    ];

    /// Short key used on the command line and in serialized output.
    pub fn key(self) -> &'static str {
        match self {
            Measure::Ivd => "ivd",
            Measure::Eg => "eg",
            Measure::Ea => "ea",
            Measure::En => "en",
            Measure::Sc2 => "sc2",
            Measure::Sc2n => "sc2n",
            Measure::K => "k",
            Measure::Oc => "oc",
            Measure::Ad => "ad",
            Measure::B => "b",
        }
    }

    /// Human-readable label for table headers.
    pub fn label(self) -> &'static str {
        match self {
            Measure::Ivd => "I_vd",
            Measure::Eg => "E_g",
            Measure::Ea => "E_a",
            Measure::En => "E_n",
            Measure::Sc2 => "2SC",
            Measure::Sc2n => "2SC_n",
            Measure::K => "K",
            Measure::Oc => "OC",
            Measure::Ad => "A/D",
            Measure::B => "B",
        }
    }
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.key())
    }
}

impl std::str::FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let lower = s.to_ascii_lowercase();
        Measure::ALL
            .into_iter()
            .find(|m| m.key() == lower || m.label().to_ascii_lowercase() == lower)
            .ok_or_else(|| {
                let keys: Vec<_> = Measure::ALL.iter().map(|m| m.key()).collect();
                format!("unknown measure \"{s}\" (expected one of {})", keys.join(", "))
            })
    }
}

/// Evaluate a single measure on a connected graph.
pub fn measure_value(g: &Graph, measure: Measure, budget: u64) -> Result<f64> {
    let value = match measure {
        Measure::Ivd => info_vertex_degree(g)?,
        Measure::Eg => edge_complexities(g).0 as f64,
        Measure::Ea => edge_complexities(g).1,
        Measure::En => edge_complexities(g).2,
        Measure::Sc2 => subgraph_count_2(g)?.0 as f64,
        Measure::Sc2n => subgraph_count_2(g)?.1,
        Measure::K => total_subgraph_count(g, budget)?.total as f64,
        Measure::Oc => overall_connectivity(g, budget)?.total as f64,
        Measure::Ad => ad_index(g)?,
        Measure::B => b_index(g)?.0,
    };
    Ok(value)
}

/// Every complexity measure of one connected graph, including both spectra.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexityReport {
    pub n: usize,
    pub m: usize,
    pub i_vd: f64,
    pub e_g: u64,
    pub e_a: f64,
    pub e_n: f64,
    pub sc2: u64,
    pub sc2_n: f64,
    pub k_total: u64,
    pub oc_total: u64,
    pub ad_index: f64,
    pub b_index: f64,
    pub b_i: Vec<f64>,
    pub subgraph_spectrum: Vec<u64>,
    pub oc_spectrum: Vec<u64>,
}

impl ComplexityReport {
    pub fn compute(g: &Graph, budget: u64) -> Result<Self> {
        let (spectrum, oc) = subgraph_census(g, budget)?;
        let (sc2, sc2_n) = subgraph_count_2(g)?;
        let (b, b_i) = b_index(g)?;
        let (e_g, e_a, e_n) = edge_complexities(g);
        Ok(ComplexityReport {
            n: g.n(),
            m: g.m(),
            i_vd: info_vertex_degree(g)?,
            e_g,
            e_a,
            e_n,
            sc2,
            sc2_n,
            k_total: spectrum.total,
            oc_total: oc.total,
            ad_index: ad_index(g)?,
            b_index: b,
            b_i,
            subgraph_spectrum: spectrum.by_edges,
            oc_spectrum: oc.by_edges,
        })
    }

    pub fn value(&self, measure: Measure) -> f64 {
        match measure {
            Measure::Ivd => self.i_vd,
            Measure::Eg => self.e_g as f64,
            Measure::Ea => self.e_a,
            Measure::En => self.e_n,
            Measure::Sc2 => self.sc2 as f64,
            Measure::Sc2n => self.sc2_n,
            Measure::K => self.k_total as f64,
            Measure::Oc => self.oc_total as f64,
            Measure::Ad => self.ad_index,
            Measure::B => self.b_index,
        }
    }
}

/// Reports for a set of graphs plus, for each requested measure, the values
/// divided by their minimum over the set (so the minimum row is exactly 1).
#[derive(Debug, Clone, Serialize)]
pub struct MeasureSuite {
    pub reports: Vec<ComplexityReport>,
    pub normalized: Vec<(Measure, Vec<f64>)>,
}

pub fn measure_suite(graphs: &[Graph], normalize: &[Measure], budget: u64) -> Result<MeasureSuite> {
    let reports: Vec<ComplexityReport> =
        graphs.iter().map(|g| ComplexityReport::compute(g, budget)).collect::<Result<_>>()?;
    let normalized = normalize
        .iter()
        .map(|&measure| {
            let values: Vec<f64> = reports.iter().map(|r| r.value(measure)).collect();
            let min = values.iter().copied().fold(f64::INFINITY, f64::min);
            (measure, values.iter().map(|&v| v / min).collect())
        })
        .collect();
    Ok(MeasureSuite { reports, normalized })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{rand_connected_graph, rand_permutation};
    use rand::RngCore;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const BUDGET: u64 = DEFAULT_SUBGRAPH_BUDGET;

    fn k3() -> Graph {
        Graph::complete(3).unwrap()
    }

    fn p3() -> Graph {
        Graph::path(3).unwrap()
    }

    #[test]
    fn census_frozen_values() {
        // expected spectra computed by brute force over all 2^m edge subsets
        let cases: [(Graph, Vec<u64>, Vec<u64>); 6] = [
            (k3(), vec![3, 3, 3, 1], vec![6, 12, 18, 6]),
            (p3(), vec![3, 2, 1], vec![4, 6, 4]),
            (Graph::path(2).unwrap(), vec![2, 1], vec![2, 2]),
            (Graph::path(4).unwrap(), vec![4, 3, 2, 1], vec![6, 10, 10, 6]),
            (Graph::cycle(4).unwrap(), vec![4, 4, 4, 4, 1], vec![8, 16, 24, 32, 8]),
            (Graph::star(5).unwrap(), vec![5, 4, 6, 4, 1], vec![8, 20, 36, 28, 8]),
        ];
        for (g, spec, oc) in cases {
            let (s, o) = subgraph_census(&g, BUDGET).unwrap();
            assert_eq!(s.by_edges, spec, "spectrum of {:?}", g.edges());
            assert_eq!(o.by_edges, oc, "oc of {:?}", g.edges());
            assert_eq!(s.total, spec.iter().sum::<u64>());
            assert_eq!(o.total, oc.iter().sum::<u64>());
        }
        assert_eq!(total_subgraph_count(&k3(), BUDGET).unwrap().total, 10);
        assert_eq!(overall_connectivity(&p3(), BUDGET).unwrap().total, 14);

        let k4 = Graph::complete(4).unwrap();
        let (s, o) = subgraph_census(&k4, BUDGET).unwrap();
        assert_eq!(s.by_edges, vec![4, 6, 12, 20, 15, 6, 1]);
        assert_eq!(s.total, 64);
        assert_eq!(o.by_edges, vec![12, 36, 108, 228, 180, 72, 12]);
        assert_eq!(o.total, 648);

        let k4e = Graph::new(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let (s, o) = subgraph_census(&k4e, BUDGET).unwrap();
        assert_eq!(s.by_edges, vec![4, 5, 8, 10, 5, 1]);
        assert_eq!(o.total, 254);
    }

    #[test]
    fn census_rejects_disconnected_and_budget() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(subgraph_census(&g, BUDGET), Err(Error::Disconnected)));
        assert!(matches!(
            subgraph_census(&Graph::complete(4).unwrap(), 10),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn spectrum_head_entries() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let g = rand_connected_graph(&mut rng, 7, 0.4);
            let (s, o) = subgraph_census(&g, BUDGET).unwrap();
            assert_eq!(s.by_edges[0], g.n() as u64);
            assert_eq!(s.by_edges[1], g.m() as u64);
            assert_eq!(o.by_edges[0], graph::total_adjacency(&g));
            // degree-formula 2SC equals the 2-edge spectrum entry
            let expected = s.by_edges.get(2).copied().unwrap_or(0);
            if g.n() >= 3 {
                assert_eq!(subgraph_count_2(&g).unwrap().0, expected);
            }
        }
    }

    #[test]
    fn info_vertex_degree_values() {
        assert_eq!(info_vertex_degree(&k3()).unwrap(), 6.0);
        assert_eq!(info_vertex_degree(&p3()).unwrap(), 2.0);
        for n in 3..9 {
            assert_eq!(info_vertex_degree(&Graph::cycle(n).unwrap()).unwrap(), 2.0 * n as f64);
        }
        assert!(matches!(
            info_vertex_degree(&Graph::new(3, &[(0, 1)]).unwrap()),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn edge_complexity_values() {
        assert_eq!(edge_complexities(&k3()), (6, 2.0, 2.0 / 3.0));
        assert_eq!(edge_complexities(&p3()), (4, 4.0 / 3.0, 4.0 / 9.0));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let g = rand_connected_graph(&mut rng, 6, 0.5);
            let (_, _, e_n) = edge_complexities(&g);
            assert_eq!(e_n, crate::graph::connectedness(&g).unwrap().0);
        }
    }

    #[test]
    fn sc2_values() {
        assert_eq!(subgraph_count_2(&k3()).unwrap(), (3, 1.0));
        let (sc2, sc2n) = subgraph_count_2(&p3()).unwrap();
        assert_eq!(sc2, 1);
        assert!((sc2n - 1.0 / 3.0).abs() < 1e-15);
        // star on k+1 vertices: C(k, 2) paths through the center
        for k in 2..7u64 {
            let star = Graph::star(k as usize + 1).unwrap();
            assert_eq!(subgraph_count_2(&star).unwrap().0, k * (k - 1) / 2);
        }
        assert!(subgraph_count_2(&Graph::path(2).unwrap()).is_err());
    }

    #[test]
    fn ad_and_b_values() {
        for n in 2..7 {
            let kn = Graph::complete(n).unwrap();
            assert_eq!(ad_index(&kn).unwrap(), 1.0);
            assert_eq!(b_index(&kn).unwrap().0, n as f64);
        }
        assert_eq!(ad_index(&p3()).unwrap(), 0.5);
        let (b, b_i) = b_index(&p3()).unwrap();
        assert!((b - 5.0 / 3.0).abs() < 1e-15);
        assert_eq!(b_i.len(), 3);

        let k4e = Graph::new(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(b_index(&k4e).unwrap().0, 3.0);
    }

    #[test]
    fn suite_normalization() {
        let suite = measure_suite(&[k3(), p3()], &[Measure::B], BUDGET).unwrap();
        let (measure, values) = &suite.normalized[0];
        assert_eq!(*measure, Measure::B);
        assert!((values[0] - 1.8).abs() < 1e-12);
        assert_eq!(values[1], 1.0);

        let single = measure_suite(&[k3()], &Measure::ALL, BUDGET).unwrap();
        for (_, values) in &single.normalized {
            assert_eq!(values, &vec![1.0]);
        }

        // isomorphic graphs produce identical rows
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 2)]).unwrap();
        let h = g.permuted(&[3, 1, 0, 2]).unwrap();
        let suite = measure_suite(&[g, h], &Measure::ALL, BUDGET).unwrap();
        for m in Measure::ALL {
            assert_eq!(suite.reports[0].value(m), suite.reports[1].value(m), "{m}");
        }
    }

    #[test]
    fn measures_are_isomorphism_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g = rand_connected_graph(&mut rng, 7, 0.4);
            let perm = rand_permutation(&mut rng, 7);
            let h = g.permuted(&perm).unwrap();
            for m in [Measure::B, Measure::Ad, Measure::Ivd, Measure::K, Measure::Oc] {
                assert_eq!(
                    measure_value(&g, m, BUDGET).unwrap(),
                    measure_value(&h, m, BUDGET).unwrap(),
                    "{m} changed under relabeling"
                );
            }
        }
    }

    #[test]
    fn b_and_k_strictly_increase_with_added_edges() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut checked = 0;
        while checked < 40 {
            let g = rand_connected_graph(&mut rng, 8, 0.35);
            let missing: Vec<(usize, usize)> = (0..8)
                .flat_map(|i| (i + 1..8).map(move |j| (i, j)))
                .filter(|&(i, j)| !g.has_edge(i, j))
                .collect();
            if missing.is_empty() {
                continue;
            }
            let pick = missing[(rng.next_u32() as usize) % missing.len()];
            let mut edges = g.edges().to_vec();
            edges.push(pick);
            let bigger = Graph::new(8, &edges).unwrap();
            assert!(b_index(&bigger).unwrap().0 > b_index(&g).unwrap().0);
            assert!(
                total_subgraph_count(&bigger, BUDGET).unwrap().total
                    > total_subgraph_count(&g, BUDGET).unwrap().total
            );
            checked += 1;
        }
    }

    #[test]
    fn measure_parsing() {
        assert_eq!("b".parse::<Measure>().unwrap(), Measure::B);
        assert_eq!("A/D".parse::<Measure>().unwrap(), Measure::Ad);
        assert_eq!("K".parse::<Measure>().unwrap(), Measure::K);
        assert!("nope".parse::<Measure>().is_err());
    }
}
