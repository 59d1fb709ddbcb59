//! Shared test helpers: seeded random graph generation and independent
//! brute-force oracles. The oracles deliberately avoid the library's BFS
//! machinery: distances come from Floyd-Warshall and geodesics from
//! explicit path enumeration.
#![allow(dead_code)] // each test target uses its own subset

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use interlock::graph::{AffiliationNetwork, JournalGraph, VertexId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random simple graph on `n` vertices with edge probability `p` and values
/// uniform in 1..=max_value.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, max_value: u32) -> JournalGraph {
    let mut g = JournalGraph::new();
    let ids: Vec<VertexId> = (0..n).map(|i| g.add_vertex(&format!("V{i}")).unwrap()).collect();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                let value = rng.gen_range(1..=max_value);
                g.add_edge(ids[i], ids[j], value).unwrap();
            }
        }
    }
    g
}

/// Random bipartite affiliation data with up to `actors` x `events` seats.
pub fn random_affiliation(rng: &mut ChaCha8Rng, actors: usize, events: usize, p: f64) -> AffiliationNetwork {
    let mut a = AffiliationNetwork::new();
    // insert all events first so the projection covers isolated journals too
    for e in 0..events {
        for act in 0..actors {
            if rng.gen_bool(p) {
                a.add_seat(&format!("editor{act}"), &format!("journal{e}"));
            }
        }
    }
    a
}

/// All-pairs distances by Floyd-Warshall; `usize::MAX` marks unreachable.
pub fn floyd_warshall(g: &JournalGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    const INF: usize = usize::MAX;
    let mut dist = vec![vec![INF; n]; n];
    for v in 0..n {
        dist[v][v] = 0;
    }
    for e in g.edges() {
        dist[e.u.index()][e.v.index()] = 1;
        dist[e.v.index()][e.u.index()] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            if dist[i][k] == INF {
                continue;
            }
            for j in 0..n {
                if dist[k][j] == INF {
                    continue;
                }
                let through = dist[i][k] + dist[k][j];
                if through < dist[i][j] {
                    dist[i][j] = through;
                }
            }
        }
    }
    dist
}

/// Enumerates every geodesic from `s` to `t` (as vertex sequences) by
/// depth-first extension along the distance gradient.
pub fn enumerate_geodesics(
    g: &JournalGraph,
    dist: &[Vec<usize>],
    s: usize,
    t: usize,
) -> Vec<Vec<usize>> {
    if dist[s][t] == usize::MAX {
        return Vec::new();
    }
    let mut paths = Vec::new();
    let mut current = vec![s];
    fn extend(
        g: &JournalGraph,
        dist: &[Vec<usize>],
        t: usize,
        current: &mut Vec<usize>,
        paths: &mut Vec<Vec<usize>>,
    ) {
        let last = *current.last().unwrap();
        if last == t {
            paths.push(current.clone());
            return;
        }
        for &(w, _) in g.neighbors(VertexId::new(last)) {
            let w = w.index();
            if dist[last][t] != usize::MAX && dist[w][t] + 1 == dist[last][t] {
                current.push(w);
                extend(g, dist, t, current, paths);
                current.pop();
            }
        }
    }
    extend(g, dist, t, &mut current, &mut paths);
    paths
}

/// Betweenness by exhaustive enumeration of all geodesics, normalized the
/// same way as the implementation under test.
pub fn betweenness_oracle(g: &JournalGraph) -> Vec<f64> {
    let n = g.vertex_count();
    assert!(n >= 3);
    let dist = floyd_warshall(g);
    let mut raw = vec![0.0f64; n];
    for s in 0..n {
        for t in s + 1..n {
            let paths = enumerate_geodesics(g, &dist, s, t);
            if paths.is_empty() {
                continue;
            }
            let sigma = paths.len() as f64;
            for path in &paths {
                for &v in &path[1..path.len() - 1] {
                    raw[v] += 1.0 / sigma;
                }
            }
        }
    }
    let pairs = (n - 1) as f64 * (n - 2) as f64 / 2.0;
    raw.into_iter().map(|b| b / pairs).collect()
}

/// Component blocks from the reachability closure: vertices are grouped by
/// their full row of the reachability matrix.
pub fn components_oracle(g: &JournalGraph) -> Vec<Vec<usize>> {
    let dist = floyd_warshall(g);
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for v in 0..n {
        if seen[v] {
            continue;
        }
        let block: Vec<usize> = (0..n).filter(|&w| dist[v][w] != usize::MAX).collect();
        for &w in &block {
            seen[w] = true;
        }
        blocks.push(block);
    }
    blocks
}
