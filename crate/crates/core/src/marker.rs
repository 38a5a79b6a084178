//! Logical-level Grover marker synthesized from a topology.
//!
//! Every chordless cycle contributes one cycle clause: the negated
//! conjunction of comparisons between consecutive edges around the cycle.
//! Two consecutive edges must be *equal* when both agree (or both disagree)
//! with the traversal, and *different* otherwise, for the cycle to be
//! directed. The closing pair is implied by the others and is dropped.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::cycle::{chordless_cycles, Cycle};
use crate::error::TopologyError;
use crate::topology::{EdgeId, FixedEdge, Orientation, Topology};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Polarity {
    /// `e_i = e_j`
    Eq,
    /// `e_i != e_j`
    Neq,
}

/// Comparison between two edge bits, with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ComparisonClause {
    pub lo: EdgeId,
    pub hi: EdgeId,
    pub polarity: Polarity,
}

impl ComparisonClause {
    pub fn new(a: EdgeId, b: EdgeId, polarity: Polarity) -> Self {
        debug_assert_ne!(a, b);
        Self { lo: a.min(b), hi: a.max(b), polarity }
    }

    pub fn eval(&self, orientation: &Orientation) -> bool {
        let differ = orientation.bit(self.lo) != orientation.bit(self.hi);
        match self.polarity {
            Polarity::Eq => !differ,
            Polarity::Neq => differ,
        }
    }
}

impl fmt::Display for ComparisonClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.polarity {
            Polarity::Eq => "==",
            Polarity::Neq => "!=",
        };
        write!(f, "e{} {} e{}", self.lo, op, self.hi)
    }
}

/// `NOT (AND of comparisons)` for one cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleClause {
    pub cycle: Cycle,
    /// Indices into [`MarkerSpec::comparisons`], in traversal order.
    pub comparisons: Vec<usize>,
}

/// How the fixed-edge conjunct of the marker is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FixedMode {
    /// The topology's own constraint, or edge 0 = 1 when it has none.
    #[default]
    Default,
    /// No fixed conjunct; each reversal pair is marked twice.
    Unconstrained,
    Explicit(FixedEdge),
}

impl FixedMode {
    pub fn resolve(self, topology: &Topology) -> Option<FixedEdge> {
        match self {
            FixedMode::Default => Some(topology.fixed().unwrap_or_default()),
            FixedMode::Unconstrained => None,
            FixedMode::Explicit(f) => Some(f),
        }
    }
}

/// The synthesized Boolean marker `f(e) = (AND of cycle clauses) AND fixed`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarkerSpec {
    pub n: usize,
    pub comparisons: Vec<ComparisonClause>,
    pub cycles: Vec<CycleClause>,
    pub fixed: Option<FixedEdge>,
}

/// Synthesizes the marker with the default fixed-edge constraint.
pub fn synthesize_marker(topology: &Topology) -> MarkerSpec {
    synthesize_marker_with(topology, FixedMode::Default)
        .expect("default fixed edge is valid for a validated topology")
}

pub fn synthesize_marker_with(
    topology: &Topology,
    mode: FixedMode,
) -> Result<MarkerSpec, TopologyError> {
    let fixed = mode.resolve(topology);
    if let Some(f) = fixed {
        if f.edge >= topology.edge_count() {
            return Err(TopologyError::FixedEdgeOutOfRange { edge: f.edge, n: topology.edge_count() });
        }
    }

    let cycles = chordless_cycles(topology);
    let per_cycle: Vec<Vec<ComparisonClause>> = cycles
        .iter()
        .map(|c| {
            (0..c.len() - 1)
                .map(|k| {
                    let polarity = if c.alignments[k] == c.alignments[k + 1] {
                        Polarity::Eq
                    } else {
                        Polarity::Neq
                    };
                    ComparisonClause::new(c.edges[k], c.edges[k + 1], polarity)
                })
                .collect()
        })
        .collect();

    let table: BTreeMap<ComparisonClause, usize> = per_cycle
        .iter()
        .flatten()
        .map(|&c| (c, 0))
        .collect::<BTreeMap<_, _>>()
        .into_keys()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();

    let clauses = cycles
        .into_iter()
        .zip(per_cycle)
        .map(|(cycle, comps)| CycleClause {
            cycle,
            comparisons: comps.iter().map(|c| table[c]).collect(),
        })
        .collect();

    Ok(MarkerSpec {
        n: topology.edge_count(),
        comparisons: table.into_keys().collect(),
        cycles: clauses,
        fixed,
    })
}

impl MarkerSpec {
    pub fn eval(&self, orientation: &Orientation) -> Result<bool, TopologyError> {
        if orientation.len() != self.n {
            return Err(TopologyError::LengthMismatch { expected: self.n, got: orientation.len() });
        }
        let comparisons: Vec<bool> = self.comparisons.iter().map(|c| c.eval(orientation)).collect();
        let clauses_hold = self
            .cycles
            .iter()
            .all(|clause| !clause.comparisons.iter().all(|&k| comparisons[k]));
        Ok(clauses_hold && self.fixed.is_none_or(|f| f.holds(orientation)))
    }

    /// Copy with cycle clause `index` removed and any comparison no longer
    /// referenced pruned. Useful for building deliberately broken oracles.
    pub fn without_cycle(&self, index: usize) -> MarkerSpec {
        let mut cycles = self.cycles.clone();
        cycles.remove(index);
        let mut used = vec![false; self.comparisons.len()];
        for clause in &cycles {
            for &k in &clause.comparisons {
                used[k] = true;
            }
        }
        let mut remap = vec![usize::MAX; self.comparisons.len()];
        let mut comparisons = Vec::new();
        for (k, c) in self.comparisons.iter().enumerate() {
            if used[k] {
                remap[k] = comparisons.len();
                comparisons.push(*c);
            }
        }
        for clause in &mut cycles {
            for k in &mut clause.comparisons {
                *k = remap[*k];
            }
        }
        MarkerSpec { n: self.n, comparisons, cycles, fixed: self.fixed }
    }
}

/// Classical evaluation of the marker on one orientation.
pub fn eval_marker(spec: &MarkerSpec, orientation: &Orientation) -> Result<bool, TopologyError> {
    spec.eval(orientation)
}
