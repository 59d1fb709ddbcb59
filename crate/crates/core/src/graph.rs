//! Graph data model shared by the analysis modules.
//!
//! Two structures live here: [`JournalGraph`], an undirected valued graph
//! whose edge values are integer multiplicities, and [`AffiliationNetwork`],
//! a two-mode incidence structure of actors (editors) and events (journals).
//!
//! Vertex identity is by exact label string after NFC normalization and
//! whitespace trim; internally every vertex gets a dense 0-based id so
//! algorithm state can be array-indexed. Graphs are built single-writer and
//! are immutable afterwards; all analysis takes `&JournalGraph`.

use std::collections::{HashMap, HashSet};
use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

/// Errors raised while building a graph or affiliation network.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex label {0:?}")]
    DuplicateVertex(String),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("edge {{{0}, {1}}} already present")]
    DuplicateEdge(usize, usize),
    #[error("unknown vertex id {0}")]
    UnknownVertex(usize),
    #[error("edge value must be a positive integer")]
    ZeroValue,
}

/// Canonical form of a vertex label: NFC-normalized, surrounding whitespace
/// trimmed. No fuzzy matching beyond that; input data is expected pre-cleaned.
pub fn normalize_label(raw: &str) -> String {
    raw.trim().nfc().collect()
}

/// Dense vertex index, contiguous `0..n` within one graph.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(u32);

impl VertexId {
    pub fn new(index: usize) -> Self {
        VertexId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One undirected valued edge, stored once with `u < v`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub value: u32,
}

/// Undirected valued graph: no self-loops, no parallel edges; the
/// multiplicity of a tie is carried as the value of its single edge.
#[derive(Clone, Debug, Default)]
pub struct JournalGraph {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(VertexId, u32)>>,
    edge_set: HashSet<(u32, u32)>,
}

impl JournalGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.index()]
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }

    /// Looks a vertex up by label (normalized before the lookup).
    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.index.get(&normalize_label(label)).copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.labels.len()).map(VertexId::new)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `v` with the value of the connecting edge.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, u32)] {
        &self.adjacency[v.index()]
    }

    /// Number of distinct neighbors (edge values ignored).
    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.index()].len()
    }

    pub fn add_vertex(&mut self, label: &str) -> Result<VertexId, GraphError> {
        let label = normalize_label(label);
        if self.index.contains_key(&label) {
            return Err(GraphError::DuplicateVertex(label));
        }
        let id = VertexId::new(self.labels.len());
        self.index.insert(label.clone(), id);
        self.labels.push(label);
        self.adjacency.push(Vec::new());
        Ok(id)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, value: u32) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u.index()));
        }
        let n = self.vertex_count();
        if u.index() >= n {
            return Err(GraphError::UnknownVertex(u.index()));
        }
        if v.index() >= n {
            return Err(GraphError::UnknownVertex(v.index()));
        }
        if value == 0 {
            return Err(GraphError::ZeroValue);
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if !self.edge_set.insert((a.0, b.0)) {
            return Err(GraphError::DuplicateEdge(a.index(), b.index()));
        }
        self.edges.push(Edge { u: a, v: b, value });
        self.adjacency[a.index()].push((b, value));
        self.adjacency[b.index()].push((a, value));
        Ok(())
    }

    /// Keeps every vertex and only the edges satisfying `keep`.
    /// Ids and labels are preserved, so partitions computed on the result
    /// can be compared across thresholds.
    pub fn subgraph_by_edges(&self, keep: impl Fn(&Edge) -> bool) -> JournalGraph {
        let mut g = JournalGraph::new();
        for label in &self.labels {
            g.add_vertex(label).expect("labels unique in source graph");
        }
        for e in &self.edges {
            if keep(e) {
                g.add_edge(e.u, e.v, e.value).expect("edges unique in source graph");
            }
        }
        g
    }

    /// Induced subgraph on `keep`, with new dense ids in the order given.
    pub fn induced_subgraph(&self, keep: &[VertexId]) -> JournalGraph {
        let mut g = JournalGraph::new();
        let mut map: HashMap<VertexId, VertexId> = HashMap::with_capacity(keep.len());
        for &v in keep {
            let nv = g.add_vertex(&self.labels[v.index()]).expect("kept labels unique");
            map.insert(v, nv);
        }
        for e in &self.edges {
            if let (Some(&u), Some(&v)) = (map.get(&e.u), map.get(&e.v)) {
                g.add_edge(u, v, e.value).expect("edges unique in source graph");
            }
        }
        g
    }
}

/// Two-mode incidence structure: actors (editors) hold seats on events
/// (journals). Strictly bipartite; one actor holds at most one seat per event.
#[derive(Clone, Debug, Default)]
pub struct AffiliationNetwork {
    actor_labels: Vec<String>,
    actor_index: HashMap<String, VertexId>,
    event_labels: Vec<String>,
    event_index: HashMap<String, VertexId>,
    /// Per actor: the events where the actor holds a seat, in insertion order.
    boards: Vec<Vec<VertexId>>,
    /// Per event: the actors seated on its board.
    rosters: Vec<Vec<VertexId>>,
    seat_set: HashSet<(u32, u32)>,
}

impl AffiliationNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn actor_count(&self) -> usize {
        self.actor_labels.len()
    }

    pub fn event_count(&self) -> usize {
        self.event_labels.len()
    }

    pub fn seat_count(&self) -> usize {
        self.seat_set.len()
    }

    /// Mean number of seats occupied by each actor.
    pub fn participation_rate(&self) -> f64 {
        if self.actor_count() == 0 {
            0.0
        } else {
            self.seat_count() as f64 / self.actor_count() as f64
        }
    }

    pub fn actor_labels(&self) -> impl Iterator<Item = &str> {
        self.actor_labels.iter().map(String::as_str)
    }

    pub fn event_labels(&self) -> impl Iterator<Item = &str> {
        self.event_labels.iter().map(String::as_str)
    }

    pub fn event_label(&self, e: VertexId) -> &str {
        &self.event_labels[e.index()]
    }

    /// Per-actor board memberships, indexed by actor id.
    pub fn boards(&self) -> &[Vec<VertexId>] {
        &self.boards
    }

    /// Per-event board rosters, indexed by event id.
    pub fn rosters(&self) -> &[Vec<VertexId>] {
        &self.rosters
    }

    fn intern_actor(&mut self, label: &str) -> VertexId {
        let label = normalize_label(label);
        if let Some(&id) = self.actor_index.get(&label) {
            return id;
        }
        let id = VertexId::new(self.actor_labels.len());
        self.actor_index.insert(label.clone(), id);
        self.actor_labels.push(label);
        self.boards.push(Vec::new());
        id
    }

    fn intern_event(&mut self, label: &str) -> VertexId {
        let label = normalize_label(label);
        if let Some(&id) = self.event_index.get(&label) {
            return id;
        }
        let id = VertexId::new(self.event_labels.len());
        self.event_index.insert(label.clone(), id);
        self.event_labels.push(label);
        self.rosters.push(Vec::new());
        id
    }

    /// Records one seat. Returns `false` when the (actor, event) pair was
    /// already present; the duplicate is dropped.
    pub fn add_seat(&mut self, editor_label: &str, journal_label: &str) -> bool {
        let actor = self.intern_actor(editor_label);
        let event = self.intern_event(journal_label);
        if !self.seat_set.insert((actor.index() as u32, event.index() as u32)) {
            return false;
        }
        self.boards[actor.index()].push(event);
        self.rosters[event.index()].push(actor);
        true
    }
}
