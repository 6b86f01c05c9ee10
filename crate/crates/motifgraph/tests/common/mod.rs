//! Brute-force oracles shared by the integration suites. These stay
//! independent of the library code paths they are used to check.

use motifgraph::Graph;
use rand::RngCore;
use rand_chacha::ChaCha8Rng;

/// Subgraph census by exhaustive scan of all 2^m edge subsets: keep the
/// connected ones, bucket by edge count, and add the n single vertices.
/// Returns (spectrum, oc) with oc summing parent degrees over each
/// subgraph's vertices.
pub fn brute_census(g: &Graph) -> (Vec<u64>, Vec<u64>) {
    let n = g.n();
    let m = g.m();
    assert!(m <= 20, "oracle is exponential in m");
    let degrees = g.degrees();
    let total_adjacency: u64 = degrees.iter().map(|&d| d as u64).sum();
    let mut spectrum = vec![0u64; m + 1];
    let mut oc = vec![0u64; m + 1];
    spectrum[0] = n as u64;
    oc[0] = total_adjacency;

    let mut parent = vec![0usize; n];
    for mask in 1u32..1 << m {
        for (v, p) in parent.iter_mut().enumerate() {
            *p = v;
        }
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        let mut covered = vec![false; n];
        let mut components = 0i64;
        let mut vertices = 0i64;
        for (idx, &(a, b)) in g.edges().iter().enumerate() {
            if mask >> idx & 1 == 0 {
                continue;
            }
            for v in [a, b] {
                if !covered[v] {
                    covered[v] = true;
                    vertices += 1;
                    components += 1;
                }
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
            }
        }
        if components == 1 {
            let k = mask.count_ones() as usize;
            spectrum[k] += 1;
            let degree_sum: u64 = (0..n)
                .filter(|&v| covered[v])
                .map(|v| degrees[v] as u64)
                .sum();
            oc[k] += degree_sum;
        }
        let _ = vertices;
    }
    (spectrum, oc)
}

/// All-pairs distances by iterative relaxation over all vertex triples.
pub fn relaxation_distances(g: &Graph) -> Option<Vec<Vec<u64>>> {
    let n = g.n();
    const INF: u64 = u64::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for v in 0..n {
        d[v][v] = 0;
    }
    for &(a, b) in g.edges() {
        d[a][b] = 1;
        d[b][a] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    if d.iter().any(|row| row.iter().any(|&x| x >= INF)) {
        return None;
    }
    Some(d)
}

/// Random connected graph: random spanning tree plus extra edges.
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
    Graph::new(n, &edges).expect("valid simple graph")
}

pub fn rand_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        perm.swap(i, j);
    }
    perm
}

/// Every connected graph on n labeled vertices (exponential; n <= 6 here).
pub fn all_connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(idx, _)| mask >> idx & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::new(n, &edges).expect("valid simple graph");
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

/// Stirling numbers of the second kind by the plain recurrence
/// S(n,k) = k S(n-1,k) + S(n-1,k-1); small n only.
pub fn stirling_recurrence(n: usize, k: usize) -> u64 {
    if n == 0 && k == 0 {
        return 1;
    }
    if n == 0 || k == 0 || k > n {
        return 0;
    }
    k as u64 * stirling_recurrence(n - 1, k) + stirling_recurrence(n - 1, k - 1)
}
