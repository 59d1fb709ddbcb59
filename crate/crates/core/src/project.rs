//! One-mode projection of the affiliation network and whole-network
//! summary statistics.
//!
//! Two journals are linked when at least one editor sits on both boards;
//! the value of the line is the number of shared editors. Journals whose
//! board overlaps with nobody stay in the projection as degree-0 vertices.

use std::collections::HashMap;

use serde::Serialize;

use crate::graph::{AffiliationNetwork, JournalGraph};
use crate::AnalysisError;

/// Whole-network summary in the shape the database statistics are reported:
/// seat counts on the two-mode side, line/density/degree statistics on the
/// one-mode side.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NetworkSummary {
    pub journals: usize,
    pub editors: usize,
    pub seats: usize,
    pub mean_seats_per_journal: f64,
    pub mean_participation: f64,
    pub lines: usize,
    pub density: f64,
    pub mean_degree: f64,
    pub median_degree: f64,
    pub degree_sd: f64,
}

/// One row of a frequency distribution table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistributionRow {
    pub value: u64,
    pub freq: u64,
    pub freq_pct: f64,
}

/// Ordered value -> (frequency, percentage) table; values strictly
/// increasing, frequencies summing to the population size.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct DistributionTable {
    pub rows: Vec<DistributionRow>,
}

impl DistributionTable {
    /// Builds a table from raw occurrences.
    pub fn from_values(values: impl IntoIterator<Item = u64>) -> Self {
        let mut counts: HashMap<u64, u64> = HashMap::new();
        let mut total = 0u64;
        for v in values {
            *counts.entry(v).or_insert(0) += 1;
            total += 1;
        }
        let mut rows: Vec<DistributionRow> = counts
            .into_iter()
            .map(|(value, freq)| DistributionRow {
                value,
                freq,
                freq_pct: 100.0 * freq as f64 / total as f64,
            })
            .collect();
        rows.sort_unstable_by_key(|r| r.value);
        DistributionTable { rows }
    }

    pub fn total(&self) -> u64 {
        self.rows.iter().map(|r| r.freq).sum()
    }
}

/// Projects the two-mode network to the valued journal graph.
///
/// One vertex per event in insertion order; an edge per journal pair with at
/// least one shared editor, valued by the size of the board intersection.
pub fn project(a: &AffiliationNetwork) -> JournalGraph {
    let mut g = JournalGraph::new();
    for label in a.event_labels() {
        g.add_vertex(label).expect("event labels unique");
    }
    // Each actor on k boards contributes 1 to each of the k(k-1)/2 pairs.
    let mut counts: HashMap<(u32, u32), u32> = HashMap::new();
    for board in a.boards() {
        for i in 0..board.len() {
            for j in i + 1..board.len() {
                let (x, y) = (board[i], board[j]);
                let key = if x < y {
                    (x.index() as u32, y.index() as u32)
                } else {
                    (y.index() as u32, x.index() as u32)
                };
                *counts.entry(key).or_insert(0) += 1;
            }
        }
    }
    let mut pairs: Vec<_> = counts.into_iter().collect();
    pairs.sort_unstable_by_key(|&(k, _)| k);
    for ((u, v), value) in pairs {
        g.add_edge(
            crate::graph::VertexId::new(u as usize),
            crate::graph::VertexId::new(v as usize),
            value,
        )
        .expect("pairs are distinct");
    }
    g
}

/// Summarizes the affiliation network together with its projection.
///
/// The median of an even-length degree list is the lower middle element, and
/// the standard deviation is the population one (divide by n).
pub fn summarize(a: &AffiliationNetwork, g: &JournalGraph) -> Result<NetworkSummary, AnalysisError> {
    let journals = g.vertex_count();
    if journals < 2 {
        return Err(AnalysisError::DegenerateNetwork { n: journals });
    }
    let editors = a.actor_count();
    let seats = a.seat_count();
    let lines = g.edge_count();
    let mut degrees: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    degrees.sort_unstable();
    let n = journals as f64;
    let mean_degree = degrees.iter().sum::<usize>() as f64 / n;
    let median_degree = degrees[(journals - 1) / 2] as f64;
    let variance = degrees
        .iter()
        .map(|&d| {
            let diff = d as f64 - mean_degree;
            diff * diff
        })
        .sum::<f64>()
        / n;
    Ok(NetworkSummary {
        journals,
        editors,
        seats,
        mean_seats_per_journal: seats as f64 / n,
        mean_participation: a.participation_rate(),
        lines,
        density: lines as f64 / (n * (n - 1.0) / 2.0),
        mean_degree,
        median_degree,
        degree_sd: variance.sqrt(),
    })
}

/// Frequency distribution of vertex degrees (Table I shape).
pub fn degree_distribution(g: &JournalGraph) -> DistributionTable {
    DistributionTable::from_values(g.vertices().map(|v| g.degree(v) as u64))
}

/// Frequency distribution of edge values (Table III shape).
pub fn line_value_distribution(g: &JournalGraph) -> DistributionTable {
    DistributionTable::from_values(g.edges().iter().map(|e| e.value as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexId;

    fn shared_board(n_editors: usize) -> AffiliationNetwork {
        let mut a = AffiliationNetwork::new();
        for i in 0..n_editors {
            a.add_seat(&format!("e{i}"), "J1");
            a.add_seat(&format!("e{i}"), "J2");
        }
        a
    }

    #[test]
    fn companion_journals_share_whole_board() {
        // two journals sharing all 23 editors -> single edge of value 23
        let g = project(&shared_board(23));
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges()[0].value, 23);
    }

    #[test]
    fn single_board_editor_contributes_nothing() {
        let mut a = AffiliationNetwork::new();
        a.add_seat("e1", "J1");
        a.add_seat("e2", "J2");
        let g = project(&a);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn isolated_journals_are_kept() {
        let mut a = shared_board(2);
        a.add_seat("solo", "J3");
        let g = project(&a);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.degree(VertexId::new(2)), 0);
    }

    #[test]
    fn summary_trivial_pair() {
        let a = shared_board(1);
        let g = project(&a);
        let s = summarize(&a, &g).unwrap();
        assert_eq!(s.lines, 1);
        assert_eq!(s.density, 1.0);
        assert_eq!(s.mean_degree, 1.0);
        assert_eq!(s.seats, 2);
    }

    #[test]
    fn summary_hand_computed() {
        // 3 journals with degrees (0,1,1): mean 2/3, median 1 (lower middle
        // of the sorted odd list), population sd sqrt(2/9)
        let mut a = shared_board(1);
        a.add_seat("solo", "J3");
        let g = project(&a);
        let s = summarize(&a, &g).unwrap();
        assert!((s.mean_degree - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(s.median_degree, 1.0);
        assert!((s.degree_sd - (2.0f64 / 9.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn summary_rejects_single_journal() {
        let mut a = AffiliationNetwork::new();
        a.add_seat("e1", "J1");
        let g = project(&a);
        assert!(matches!(
            summarize(&a, &g),
            Err(AnalysisError::DegenerateNetwork { n: 1 })
        ));
    }

    #[test]
    fn degree_distribution_counts() {
        // complete K4: single row (3, 4, 100%)
        let mut g = JournalGraph::new();
        let ids: Vec<_> = (0..4).map(|i| g.add_vertex(&format!("J{i}")).unwrap()).collect();
        for i in 0..4 {
            for j in i + 1..4 {
                g.add_edge(ids[i], ids[j], 1).unwrap();
            }
        }
        let t = degree_distribution(&g);
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0], DistributionRow { value: 3, freq: 4, freq_pct: 100.0 });

        // path P3: rows (1,2,66.7%), (2,1,33.3%)
        let mut p = JournalGraph::new();
        let ids: Vec<_> = (0..3).map(|i| p.add_vertex(&format!("J{i}")).unwrap()).collect();
        p.add_edge(ids[0], ids[1], 1).unwrap();
        p.add_edge(ids[1], ids[2], 1).unwrap();
        let t = degree_distribution(&p);
        assert_eq!(t.rows[0].value, 1);
        assert_eq!(t.rows[0].freq, 2);
        assert!((t.rows[0].freq_pct - 200.0 / 3.0).abs() < 1e-9);
        assert_eq!(t.rows[1].freq, 1);
    }

    #[test]
    fn line_value_distribution_counts() {
        let mut g = JournalGraph::new();
        let ids: Vec<_> = (0..3).map(|i| g.add_vertex(&format!("J{i}")).unwrap()).collect();
        assert!(line_value_distribution(&g).rows.is_empty());
        g.add_edge(ids[0], ids[1], 1).unwrap();
        g.add_edge(ids[1], ids[2], 1).unwrap();
        g.add_edge(ids[0], ids[2], 5).unwrap();
        let t = line_value_distribution(&g);
        assert_eq!(t.rows.len(), 2);
        assert_eq!((t.rows[0].value, t.rows[0].freq), (1, 2));
        assert_eq!((t.rows[1].value, t.rows[1].freq), (5, 1));
        assert_eq!(t.total(), 3);
    }
}
