//! Multigraph model of multiloop topologies and classical causality checks.
//!
//! Every edge carries a reference direction `tail -> head`. An [`Orientation`]
//! assigns one bit per edge: `1` keeps the reference direction, `0` reverses
//! it. A *causal configuration* is an orientation whose directed multigraph
//! has no directed cycle.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{OrientationParseError, TopologyError};

pub type EdgeId = usize;

/// Default limit on `n` for brute-force enumeration over all `2^n` orientations.
pub const DEFAULT_ENUMERATION_BOUND: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: String,
    pub head: String,
}

/// Requires edge `edge` to take bit `value` in every marked orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FixedEdge {
    pub edge: EdgeId,
    pub value: bool,
}

impl FixedEdge {
    pub fn new(edge: EdgeId, value: bool) -> Self {
        Self { edge, value }
    }

    pub fn holds(&self, orientation: &Orientation) -> bool {
        orientation.bit(self.edge) == self.value
    }
}

impl Default for FixedEdge {
    fn default() -> Self {
        Self::new(0, true)
    }
}

impl Serialize for FixedEdge {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("FixedEdge", 2)?;
        s.serialize_field("edge", &self.edge)?;
        s.serialize_field("value", &u8::from(self.value))?;
        s.end()
    }
}

/// A bitstring over edges; bit `i` governs edge `i`.
///
/// The textual form puts edge 0 leftmost, so `"10"` means edge 0 follows its
/// reference direction and edge 1 is reversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    len: usize,
    bits: u64,
}

impl Orientation {
    /// Builds an orientation from the low `len` bits of `bits` (bit `i` = edge `i`).
    pub fn from_bits(bits: u64, len: usize) -> Self {
        assert!(len <= 64, "orientation length {len} exceeds 64");
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        Self { len, bits: bits & mask }
    }

    pub fn all_reference(len: usize) -> Self {
        Self::from_bits(u64::MAX, len)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn bit(&self, edge: EdgeId) -> bool {
        edge < self.len && (self.bits >> edge) & 1 == 1
    }

    /// Flips every edge. Acyclicity is invariant under this map.
    pub fn reverse(&self) -> Self {
        Self::from_bits(!self.bits, self.len)
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Orientation {
    type Err = OrientationParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let len = s.chars().count();
        if len > 64 {
            return Err(OrientationParseError::TooLong(len));
        }
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                other => return Err(OrientationParseError::InvalidChar(other)),
            }
        }
        Ok(Self { len, bits })
    }
}

impl Serialize for Orientation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A validated multigraph with reference edge orientations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    name: String,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    fixed: Option<FixedEdge>,
    // (tail, head) as vertex indices, indexed by edge id
    endpoints: Vec<(usize, usize)>,
}

impl Topology {
    /// Validates the raw description. Edges may be listed in any order; they
    /// are stored sorted by id.
    pub fn new(
        name: impl Into<String>,
        vertices: Vec<String>,
        mut edges: Vec<Edge>,
        fixed: Option<FixedEdge>,
    ) -> Result<Self, TopologyError> {
        let n = edges.len();
        if n == 0 {
            return Err(TopologyError::NoEdges);
        }
        if n > 64 {
            return Err(TopologyError::TooManyEdges(n));
        }

        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(TopologyError::DuplicateVertex(v.clone()));
            }
        }

        edges.sort_by_key(|e| e.id);
        for pair in edges.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(TopologyError::DuplicateEdgeId(pair[0].id));
            }
        }
        if let Some(missing) = edges.iter().enumerate().find(|(i, e)| e.id != *i).map(|(i, _)| i) {
            return Err(TopologyError::MissingEdgeId { missing, n });
        }

        let mut endpoints = Vec::with_capacity(n);
        for e in &edges {
            let lookup = |label: &String| {
                index.get(label.as_str()).copied().ok_or_else(|| TopologyError::UnknownVertex {
                    edge: e.id,
                    vertex: label.clone(),
                })
            };
            let tail = lookup(&e.tail)?;
            let head = lookup(&e.head)?;
            if tail == head {
                return Err(TopologyError::SelfLoop { edge: e.id, vertex: e.tail.clone() });
            }
            endpoints.push((tail, head));
        }

        if let Some(f) = fixed {
            if f.edge >= n {
                return Err(TopologyError::FixedEdgeOutOfRange { edge: f.edge, n });
            }
        }

        let topology = Self { name: name.into(), vertices, edges, fixed, endpoints };
        if let Some(unreached) = topology.first_unreachable_vertex() {
            return Err(TopologyError::Disconnected(topology.vertices[unreached].clone()));
        }
        Ok(topology)
    }

    fn first_unreachable_vertex(&self) -> Option<usize> {
        let adjacency = self.adjacency();
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.iter().position(|s| !s)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn fixed(&self) -> Option<FixedEdge> {
        self.fixed
    }

    /// Same graph with a different fixed-edge constraint.
    pub fn with_fixed(&self, fixed: Option<FixedEdge>) -> Result<Self, TopologyError> {
        if let Some(f) = fixed {
            if f.edge >= self.edge_count() {
                return Err(TopologyError::FixedEdgeOutOfRange { edge: f.edge, n: self.edge_count() });
            }
        }
        Ok(Self { fixed, ..self.clone() })
    }

    /// `(tail, head)` vertex indices of an edge's reference direction.
    pub fn endpoints(&self, edge: EdgeId) -> (usize, usize) {
        self.endpoints[edge]
    }

    /// `(from, to)` vertex indices of `edge` under `orientation`.
    pub fn directed_endpoints(&self, edge: EdgeId, orientation: &Orientation) -> (usize, usize) {
        let (tail, head) = self.endpoints[edge];
        if orientation.bit(edge) {
            (tail, head)
        } else {
            (head, tail)
        }
    }

    /// Per-vertex list of `(neighbour, edge id)`, in edge-id order.
    pub fn adjacency(&self) -> Vec<Vec<(usize, EdgeId)>> {
        let mut adjacency = vec![Vec::new(); self.vertices.len()];
        for (id, &(t, h)) in self.endpoints.iter().enumerate() {
            adjacency[t].push((h, id));
            adjacency[h].push((t, id));
        }
        adjacency
    }

    fn check_len(&self, orientation: &Orientation) -> Result<(), TopologyError> {
        if orientation.len() != self.edge_count() {
            return Err(TopologyError::LengthMismatch {
                expected: self.edge_count(),
                got: orientation.len(),
            });
        }
        Ok(())
    }

    /// Whether the directed multigraph obtained from `orientation` has no
    /// directed cycle (Kahn's topological sort).
    pub fn is_acyclic(&self, orientation: &Orientation) -> Result<bool, TopologyError> {
        self.check_len(orientation)?;
        Ok(self.acyclic_bits(orientation.bits()))
    }

    fn acyclic_bits(&self, bits: u64) -> bool {
        let nv = self.vertices.len();
        let mut indegree = vec![0usize; nv];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (id, &(t, h)) in self.endpoints.iter().enumerate() {
            let (from, to) = if (bits >> id) & 1 == 1 { (t, h) } else { (h, t) };
            out[from].push(to);
            indegree[to] += 1;
        }
        let mut ready: Vec<usize> = (0..nv).filter(|&v| indegree[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = ready.pop() {
            removed += 1;
            for &w in &out[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    ready.push(w);
                }
            }
        }
        removed == nv
    }

    /// All acyclic orientations, ignoring any fixed-edge constraint, in
    /// ascending order of their integer value.
    pub fn enumerate_acyclic(&self, bound: usize) -> Result<Vec<Orientation>, TopologyError> {
        self.enumerate_filtered(bound, None)
    }

    /// Causal configurations: acyclic orientations that also satisfy the
    /// topology's fixed-edge constraint when one is present.
    pub fn enumerate_causal(&self) -> Result<Vec<Orientation>, TopologyError> {
        self.enumerate_causal_bounded(DEFAULT_ENUMERATION_BOUND)
    }

    pub fn enumerate_causal_bounded(&self, bound: usize) -> Result<Vec<Orientation>, TopologyError> {
        self.enumerate_filtered(bound, self.fixed)
    }

    fn enumerate_filtered(
        &self,
        bound: usize,
        fixed: Option<FixedEdge>,
    ) -> Result<Vec<Orientation>, TopologyError> {
        let n = self.edge_count();
        if n > bound || n >= 64 {
            return Err(TopologyError::BoundExceeded { n, bound });
        }
        Ok((0..1u64 << n)
            .into_par_iter()
            .map(|bits| Orientation::from_bits(bits, n))
            .filter(|o| fixed.is_none_or(|f| f.holds(o)))
            .filter(|o| self.acyclic_bits(o.bits()))
            .collect())
    }
}
