//! Per-vertex centrality (degree, closeness, betweenness), competition
//! ranking and Freeman centralization indices.
//!
//! All distance computations treat the graph as binary: edge values are
//! ignored and every line has unit length. Betweenness uses the Brandes
//! accumulation over single-source geodesic DAGs, parallelized over source
//! vertices; the final reduction runs in a fixed chunk order so the result
//! is bit-identical regardless of the worker count.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::cohesion::components;
use crate::graph::{JournalGraph, VertexId};
use crate::AnalysisError;

/// How closeness treats disconnected graphs.
///
/// `Verbal` is the plain reachable-count-over-distance-sum ratio; it scores
/// a tight small component as high as the giant one. `Corrected` (the
/// default) scales it by the reachable fraction so small components score
/// near zero. The two coincide on a connected graph.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum ClosenessVariant {
    Verbal,
    #[default]
    Corrected,
}

/// Per-vertex centrality values with their competition ranks.
#[derive(Clone, Debug, Serialize)]
pub struct CentralityReport {
    pub labels: Vec<String>,
    pub degree: Vec<usize>,
    pub normalized_degree: Vec<f64>,
    pub closeness: Vec<f64>,
    pub betweenness: Vec<f64>,
    pub rank_degree: Vec<usize>,
    pub rank_closeness: Vec<usize>,
    pub rank_betweenness: Vec<usize>,
}

impl CentralityReport {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Freeman centralization of the three measures.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CentralizationIndices {
    pub degree: f64,
    pub closeness: f64,
    pub betweenness: f64,
    /// Size of the largest component the closeness index was computed on.
    pub closeness_subnetwork_size: usize,
}

/// Single-source BFS state: unit-length distances, geodesic counts and the
/// predecessor DAG needed for dependency accumulation.
struct ShortestPathTree {
    dist: Vec<i64>,
    sigma: Vec<f64>,
    /// Vertices in non-decreasing distance order (the BFS pop order).
    order: Vec<u32>,
    preds: Vec<Vec<u32>>,
}

fn bfs(g: &JournalGraph, source: usize, with_preds: bool) -> ShortestPathTree {
    let n = g.vertex_count();
    let mut dist = vec![-1i64; n];
    let mut sigma = vec![0.0f64; n];
    let mut order = Vec::with_capacity(n);
    let mut preds = vec![Vec::new(); if with_preds { n } else { 0 }];
    dist[source] = 0;
    sigma[source] = 1.0;
    let mut queue = VecDeque::new();
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        order.push(v as u32);
        for &(w, _) in g.neighbors(VertexId::new(v)) {
            let w = w.index();
            if dist[w] < 0 {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
                if with_preds {
                    preds[w].push(v as u32);
                }
            }
        }
    }
    ShortestPathTree {
        dist,
        sigma,
        order,
        preds,
    }
}

/// All-pairs geodesic structure: `dist[s][t]` is the unweighted shortest-path
/// length (`None` if unreachable) and `sigma[s][t]` the number of distinct
/// geodesics. O(n^2) memory; meant for inspection and small networks, the
/// centrality functions stream per-source instead.
pub struct Geodesics {
    pub dist: Vec<Vec<Option<u32>>>,
    pub sigma: Vec<Vec<f64>>,
}

pub fn all_pairs_geodesics(g: &JournalGraph) -> Geodesics {
    let n = g.vertex_count();
    let mut dist = Vec::with_capacity(n);
    let mut sigma = Vec::with_capacity(n);
    for s in 0..n {
        let t = bfs(g, s, false);
        dist.push(
            t.dist
                .iter()
                .map(|&d| if d < 0 { None } else { Some(d as u32) })
                .collect(),
        );
        sigma.push(t.sigma);
    }
    Geodesics { dist, sigma }
}

/// Degree and normalized degree (degree over n-1) per vertex.
pub fn degree_centrality(g: &JournalGraph) -> Result<Vec<(usize, f64)>, AnalysisError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(AnalysisError::DegenerateNetwork { n });
    }
    Ok(g.vertices()
        .map(|v| {
            let d = g.degree(v);
            (d, d as f64 / (n - 1) as f64)
        })
        .collect())
}

/// Closeness centrality per vertex.
///
/// With `r` reachable vertices (excluding the vertex itself) and `S` the sum
/// of distances to them: the verbal form is `r/S`, the corrected form scales
/// it by `r/(n-1)`. Isolated vertices score 0 under both.
pub fn closeness_centrality(g: &JournalGraph, variant: ClosenessVariant) -> Vec<f64> {
    let n = g.vertex_count();
    (0..n)
        .map(|s| {
            let t = bfs(g, s, false);
            let mut reach = 0u64;
            let mut sum = 0u64;
            for &d in &t.dist {
                if d > 0 {
                    reach += 1;
                    sum += d as u64;
                }
            }
            if reach == 0 {
                return 0.0;
            }
            let verbal = reach as f64 / sum as f64;
            match variant {
                ClosenessVariant::Verbal => verbal,
                ClosenessVariant::Corrected => verbal * reach as f64 / (n - 1) as f64,
            }
        })
        .collect()
}

// Chunk size for the source-parallel loop. Fixed so the reduction order,
// and therefore the floating-point result, does not depend on thread count.
const BETWEENNESS_CHUNK: usize = 32;

/// Betweenness centrality, normalized to [0, 1] by the number of vertex
/// pairs `(n-1)(n-2)/2`. Unreachable pairs contribute nothing; the
/// denominator still uses the full n.
pub fn betweenness_centrality(g: &JournalGraph) -> Result<Vec<f64>, AnalysisError> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(AnalysisError::DegenerateNetwork { n });
    }
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(BETWEENNESS_CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0f64; n];
            for &s in chunk {
                let tree = bfs(g, s, true);
                let mut delta = vec![0.0f64; n];
                for &w in tree.order.iter().rev() {
                    let w = w as usize;
                    for &v in &tree.preds[w] {
                        let v = v as usize;
                        delta[v] += tree.sigma[v] / tree.sigma[w] * (1.0 + delta[w]);
                    }
                    if w != s {
                        acc[w] += delta[w];
                    }
                }
            }
            acc
        })
        .collect();
    let mut raw = vec![0.0f64; n];
    for partial in &partials {
        for (r, p) in raw.iter_mut().zip(partial) {
            *r += p;
        }
    }
    // each unordered pair was visited from both endpoints
    let pairs = (n - 1) as f64 * (n - 2) as f64 / 2.0;
    Ok(raw.into_iter().map(|b| b / 2.0 / pairs).collect())
}

/// Competition (min) ranks of `values`, descending: the rank of a value is
/// one plus the number of strictly greater values, so ties share the
/// smallest rank of their block.
pub fn competition_ranks(values: &[f64]) -> Vec<usize> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).expect("no NaN values"));
    let mut ranks = vec![0usize; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        for &idx in &order[i..=j] {
            ranks[idx] = i + 1;
        }
        i = j + 1;
    }
    ranks
}

/// Full per-vertex report: the three measures plus their competition ranks.
pub fn centrality_report(
    g: &JournalGraph,
    variant: ClosenessVariant,
) -> Result<CentralityReport, AnalysisError> {
    let degree = degree_centrality(g)?;
    let betweenness = betweenness_centrality(g)?;
    let closeness = closeness_centrality(g, variant);
    let degree_vals: Vec<f64> = degree.iter().map(|&(d, _)| d as f64).collect();
    Ok(CentralityReport {
        labels: g.labels().map(str::to_string).collect(),
        rank_degree: competition_ranks(&degree_vals),
        rank_closeness: competition_ranks(&closeness),
        rank_betweenness: competition_ranks(&betweenness),
        normalized_degree: degree.iter().map(|&(_, nd)| nd).collect(),
        degree: degree.into_iter().map(|(d, _)| d).collect(),
        closeness,
        betweenness,
    })
}

/// Degree centralization from a plain degree list:
/// `sum(d_max - d_v) / ((n-1)(n-2))`.
pub fn degree_centralization(degrees: &[usize]) -> Result<f64, AnalysisError> {
    let n = degrees.len();
    if n < 3 {
        return Err(AnalysisError::DegenerateNetwork { n });
    }
    let d_max = *degrees.iter().max().expect("n >= 3");
    let sum: usize = degrees.iter().map(|&d| d_max - d).sum();
    Ok(sum as f64 / ((n - 1) as f64 * (n - 2) as f64))
}

/// Betweenness centralization from normalized scores:
/// `sum(b_max - b_v) / (n-1)`.
pub fn betweenness_centralization(betweenness: &[f64]) -> Result<f64, AnalysisError> {
    let n = betweenness.len();
    if n < 3 {
        return Err(AnalysisError::DegenerateNetwork { n });
    }
    let b_max = betweenness.iter().cloned().fold(f64::MIN, f64::max);
    Ok(betweenness.iter().map(|&b| b_max - b).sum::<f64>() / (n - 1) as f64)
}

/// The three Freeman indices for one graph.
///
/// Degree and betweenness are computed on the full graph. Closeness is
/// computed within the largest connected component only, against the Freeman
/// maximum `(n'-2)(n'-1)/(2n'-3)` for a component of n' vertices.
pub fn centralization(g: &JournalGraph) -> Result<CentralizationIndices, AnalysisError> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(AnalysisError::DegenerateNetwork { n });
    }
    let degrees: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let betweenness = betweenness_centrality(g)?;

    let parts = components(g);
    let giant_members = parts.members(parts.giant);
    let n_giant = giant_members.len();
    let closeness_idx = if n_giant < 3 {
        0.0
    } else {
        let sub = g.induced_subgraph(&giant_members);
        let closeness = closeness_centrality(&sub, ClosenessVariant::Verbal);
        let c_max = closeness.iter().cloned().fold(f64::MIN, f64::max);
        let spread: f64 = closeness.iter().map(|&c| c_max - c).sum();
        let np = n_giant as f64;
        spread / ((np - 2.0) * (np - 1.0) / (2.0 * np - 3.0))
    };

    Ok(CentralizationIndices {
        degree: degree_centralization(&degrees)?,
        closeness: closeness_idx,
        betweenness: betweenness_centralization(&betweenness)?,
        closeness_subnetwork_size: n_giant,
    })
}
