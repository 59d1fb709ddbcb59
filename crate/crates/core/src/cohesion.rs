//! Connected components, m-slice extraction and the component census.
//!
//! Cohesive subgroups are the (weak) components of the m-slice, the subgraph
//! keeping only lines of value >= m. On an undirected graph the weak
//! component is just the ordinary connected component. Slicing never drops
//! vertices, so ids stay stable across thresholds.

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::{Edge, JournalGraph, VertexId};
use crate::project::DistributionTable;

/// Partition of the vertex set into connected components. Component ids are
/// assigned by decreasing size, ties broken by the smallest member vertex id,
/// so the partition is a deterministic function of the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    /// Per-vertex component id.
    pub assignment: Vec<usize>,
    /// Per-component size, indexed by component id.
    pub sizes: Vec<usize>,
    /// Id of a largest component (0 by construction).
    pub giant: usize,
}

impl ComponentPartition {
    pub fn component_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn giant_size(&self) -> usize {
        self.sizes.get(self.giant).copied().unwrap_or(0)
    }

    /// Members of one component, in increasing vertex id order.
    pub fn members(&self, component: usize) -> Vec<VertexId> {
        self.assignment
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == component)
            .map(|(i, _)| VertexId::new(i))
            .collect()
    }
}

/// Census of one m-slice in the shape the component listings are reported:
/// multi-vertex components vs isolated journals, plus a size histogram.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SliceCensus {
    pub m: u32,
    /// Components with at least two vertices.
    pub component_count_nontrivial: usize,
    /// Journals belonging to a component of at least two vertices.
    pub journals_in_nontrivial: usize,
    /// Singleton components.
    pub isolated: usize,
    pub giant_size: usize,
    pub size_histogram: DistributionTable,
}

/// Connected components via breadth-first search, edge values ignored.
pub fn components(g: &JournalGraph) -> ComponentPartition {
    let n = g.vertex_count();
    let mut raw = vec![usize::MAX; n];
    let mut comp_sizes: Vec<(usize, usize)> = Vec::new(); // (size, min member id)
    let mut queue = VecDeque::new();
    for start in 0..n {
        if raw[start] != usize::MAX {
            continue;
        }
        let comp = comp_sizes.len();
        let mut size = 0usize;
        raw[start] = comp;
        queue.push_back(VertexId::new(start));
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &(w, _) in g.neighbors(v) {
                if raw[w.index()] == usize::MAX {
                    raw[w.index()] = comp;
                    queue.push_back(w);
                }
            }
        }
        comp_sizes.push((size, start));
    }
    // renumber by decreasing size, ties by smallest member id
    let mut order: Vec<usize> = (0..comp_sizes.len()).collect();
    order.sort_by_key(|&c| (std::cmp::Reverse(comp_sizes[c].0), comp_sizes[c].1));
    let mut renumber = vec![0usize; comp_sizes.len()];
    for (new_id, &old_id) in order.iter().enumerate() {
        renumber[old_id] = new_id;
    }
    let assignment: Vec<usize> = raw.into_iter().map(|c| renumber[c]).collect();
    let sizes: Vec<usize> = order.iter().map(|&c| comp_sizes[c].0).collect();
    ComponentPartition {
        assignment,
        sizes,
        giant: 0,
    }
}

/// Subgraph keeping only the lines of value >= m; all vertices retained.
/// `m_slice(g, 1)` is the graph itself.
pub fn m_slice(g: &JournalGraph, m: u32) -> JournalGraph {
    g.subgraph_by_edges(|e| e.value >= m)
}

/// Component census of the m-slice.
pub fn slice_census(g: &JournalGraph, m: u32) -> SliceCensus {
    let sliced = m_slice(g, m);
    let parts = components(&sliced);
    let isolated = parts.sizes.iter().filter(|&&s| s == 1).count();
    let nontrivial = parts.component_count() - isolated;
    let journals_in_nontrivial = parts.sizes.iter().filter(|&&s| s >= 2).sum::<usize>();
    SliceCensus {
        m,
        component_count_nontrivial: nontrivial,
        journals_in_nontrivial,
        isolated,
        giant_size: parts.giant_size(),
        size_histogram: DistributionTable::from_values(parts.sizes.iter().map(|&s| s as u64)),
    }
}

/// One qualifying component of an m-slice: its members (sorted labels, each
/// with the journal's betweenness in the complete network) and the induced
/// valued edges.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentMembers {
    pub component: usize,
    /// (label, betweenness in the full graph), sorted by label.
    pub members: Vec<(String, f64)>,
    /// (label, label, value) for edges inside the component.
    pub edges: Vec<(String, String, u32)>,
}

/// Lists the components of the m-slice with at least `min_size` vertices.
///
/// Vertex sizing in the published figures uses the betweenness of each
/// journal in the complete network, so that is what gets attached here, not
/// the betweenness within the slice.
pub fn component_members(
    g: &JournalGraph,
    m: u32,
    min_size: usize,
) -> Result<Vec<ComponentMembers>, crate::AnalysisError> {
    let betweenness = crate::centrality::betweenness_centrality(g)?;
    let sliced = m_slice(g, m);
    let parts = components(&sliced);
    let mut out = Vec::new();
    for comp in 0..parts.component_count() {
        if parts.sizes[comp] < min_size {
            continue;
        }
        let member_ids = parts.members(comp);
        let mut members: Vec<(String, f64)> = member_ids
            .iter()
            .map(|&v| (g.label(v).to_string(), betweenness[v.index()]))
            .collect();
        members.sort_by(|a, b| a.0.cmp(&b.0));
        let in_comp = |v: VertexId| parts.assignment[v.index()] == comp;
        let mut edges: Vec<(String, String, u32)> = sliced
            .edges()
            .iter()
            .filter(|e: &&Edge| in_comp(e.u))
            .map(|e| (g.label(e.u).to_string(), g.label(e.v).to_string(), e.value))
            .collect();
        edges.sort();
        out.push(ComponentMembers {
            component: comp,
            members,
            edges,
        });
    }
    Ok(out)
}
