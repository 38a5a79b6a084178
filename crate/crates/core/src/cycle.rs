//! Chordless cycles of a multigraph.
//!
//! A cycle is chordless when no edge outside it joins two non-consecutive
//! cycle vertices. Edges parallel to a cycle edge are not chords, and every
//! pair of parallel edges forms a 2-cycle of its own. A shortest directed
//! cycle is always chordless, so checking these cycles detects every directed
//! cycle of an orientation.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::topology::{EdgeId, Orientation, Topology};

/// A closed walk `vertices[0] -> vertices[1] -> ... -> vertices[0]` where
/// `edges[k]` joins `vertices[k]` and `vertices[k + 1]`.
///
/// `alignments[k]` is `false` when edge `k`'s reference direction agrees with
/// the traversal and `true` when it opposes it. Vertices are indices into
/// [`Topology::vertices`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Cycle {
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<usize>,
    pub alignments: Vec<bool>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Builds the cycle that traverses `vertices` using `edges`, deriving the
    /// alignments from the topology's reference directions.
    pub fn from_walk(topology: &Topology, vertices: Vec<usize>, edges: Vec<EdgeId>) -> Self {
        let alignments = edges
            .iter()
            .zip(&vertices)
            .map(|(&e, &v)| topology.endpoints(e).0 != v)
            .collect();
        Self { edges, vertices, alignments }
    }

    /// Whether every edge points the same way around the cycle under
    /// `orientation`, i.e. the cycle is directed in one of its two senses.
    pub fn is_uniformly_directed(&self, orientation: &Orientation) -> bool {
        let mut senses = self
            .edges
            .iter()
            .zip(&self.alignments)
            .map(|(&e, &a)| orientation.bit(e) ^ a);
        match senses.next() {
            Some(first) => senses.all(|s| s == first),
            None => false,
        }
    }

    /// Edge ids in ascending order; the sort key for cycle lists.
    pub fn sorted_edges(&self) -> Vec<EdgeId> {
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        edges
    }

    pub fn vertex_labels<'t>(&self, topology: &'t Topology) -> Vec<&'t str> {
        self.vertices.iter().map(|&v| topology.vertices()[v].as_str()).collect()
    }

    /// Checks the structural invariants against `topology`: length at least
    /// two, distinct vertices, each listed edge joining its consecutive
    /// vertices, alignments consistent, and no chord.
    pub fn is_valid_chordless(&self, topology: &Topology) -> bool {
        let k = self.len();
        if k < 2 || self.vertices.len() != k || self.alignments.len() != k {
            return false;
        }
        let mut seen = vec![false; topology.vertex_count()];
        for &v in &self.vertices {
            if v >= seen.len() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        for i in 0..k {
            let (from, to) = (self.vertices[i], self.vertices[(i + 1) % k]);
            let Some(&e) = self.edges.get(i) else { return false };
            if e >= topology.edge_count() {
                return false;
            }
            let (t, h) = topology.endpoints(e);
            let aligned = (t, h) == (from, to);
            let opposed = (t, h) == (to, from);
            if !(aligned || opposed) || self.alignments[i] != opposed {
                return false;
            }
        }
        let position: BTreeMap<usize, usize> =
            self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        topology.edges().iter().all(|edge| {
            let (t, h) = topology.endpoints(edge.id);
            match (position.get(&t), position.get(&h)) {
                (Some(&i), Some(&j)) => {
                    let gap = i.abs_diff(j);
                    gap == 1 || gap == k - 1
                }
                _ => true,
            }
        })
    }
}

/// Rotates and reflects `cycle` so its lowest edge id comes first and the
/// traversal follows that edge's reference direction.
pub fn canonical_cycle_order(cycle: &Cycle) -> Cycle {
    let k = cycle.len();
    if k == 0 {
        return cycle.clone();
    }
    let start = (0..k).min_by_key(|&i| cycle.edges[i]).unwrap_or(0);
    let mut edges = rotated(&cycle.edges, start);
    let mut vertices = rotated(&cycle.vertices, start);
    let mut alignments = rotated(&cycle.alignments, start);

    if alignments[0] {
        // Walk the other way, keeping edges[0] in front.
        let reflect = |i: usize| if i == 0 { 0 } else { k - i };
        edges = (0..k).map(|i| edges[reflect(i)]).collect();
        alignments = (0..k).map(|i| !alignments[reflect(i)]).collect();
        vertices = (0..k).map(|i| vertices[(k + 1 - i) % k]).collect();
    }
    Cycle { edges, vertices, alignments }
}

fn rotated<T: Copy>(items: &[T], start: usize) -> Vec<T> {
    items[start..].iter().chain(&items[..start]).copied().collect()
}

/// All chordless cycles of the multigraph, each in canonical order, sorted by
/// their ascending edge-id sequence.
pub fn chordless_cycles(topology: &Topology) -> Vec<Cycle> {
    let nv = topology.vertex_count();

    // Underlying simple graph, with the parallel class of every vertex pair.
    let mut parallel: BTreeMap<(usize, usize), Vec<EdgeId>> = BTreeMap::new();
    for e in topology.edges() {
        let (t, h) = topology.endpoints(e.id);
        parallel.entry((t.min(h), t.max(h))).or_default().push(e.id);
    }
    let mut adjacent = vec![vec![false; nv]; nv];
    let mut neighbours = vec![Vec::new(); nv];
    for &(a, b) in parallel.keys() {
        adjacent[a][b] = true;
        adjacent[b][a] = true;
        neighbours[a].push(b);
        neighbours[b].push(a);
    }

    let mut cycles = Vec::new();

    for (&(a, b), class) in &parallel {
        for (i, &e) in class.iter().enumerate() {
            for &f in &class[i + 1..] {
                cycles.push(Cycle::from_walk(topology, vec![a, b], vec![e, f]));
            }
        }
    }

    let mut induced = Vec::new();
    for start in 0..nv {
        let mut path = vec![start];
        let mut on_path = vec![false; nv];
        on_path[start] = true;
        extend_induced_path(start, &neighbours, &adjacent, &mut path, &mut on_path, &mut induced);
    }

    for ring in induced {
        let k = ring.len();
        let classes: Vec<&Vec<EdgeId>> = (0..k)
            .map(|i| {
                let (a, b) = (ring[i], ring[(i + 1) % k]);
                &parallel[&(a.min(b), a.max(b))]
            })
            .collect();
        // One cycle per choice of parallel representative on every side.
        let mut choice = vec![0usize; k];
        loop {
            let edges = (0..k).map(|i| classes[i][choice[i]]).collect();
            cycles.push(Cycle::from_walk(topology, ring.clone(), edges));
            let mut slot = 0;
            while slot < k {
                choice[slot] += 1;
                if choice[slot] < classes[slot].len() {
                    break;
                }
                choice[slot] = 0;
                slot += 1;
            }
            if slot == k {
                break;
            }
        }
    }

    let mut cycles: Vec<Cycle> = cycles.iter().map(canonical_cycle_order).collect();
    cycles.sort_by_cached_key(Cycle::sorted_edges);
    cycles
}

/// Depth-first growth of induced paths from `path[0]`, which is the smallest
/// vertex on the path. Each induced cycle of length >= 3 is recorded once.
fn extend_induced_path(
    start: usize,
    neighbours: &[Vec<usize>],
    adjacent: &[Vec<bool>],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().expect("path starts non-empty");
    for &next in &neighbours[last] {
        if next <= start || on_path[next] {
            continue;
        }
        if path.len() >= 2 {
            let interior = &path[1..path.len() - 1];
            if interior.iter().any(|&v| adjacent[v][next]) {
                continue;
            }
            if adjacent[next][start] {
                // Each ring is found in both directions; keep one.
                if path[1] < next {
                    let mut ring = path.clone();
                    ring.push(next);
                    out.push(ring);
                }
                continue;
            }
        }
        path.push(next);
        on_path[next] = true;
        extend_induced_path(start, neighbours, adjacent, path, on_path, out);
        on_path[next] = false;
        path.pop();
    }
}
