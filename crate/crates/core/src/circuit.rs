//! Gate-level circuits for the Grover query.
//!
//! Qubits are laid out as `e` (one per edge), then `c` (one per comparison
//! clause), then `a` (one per cycle clause), then a single `out` qubit. Qubit
//! `i` is bit `i` of the basis-state index, so the low `n_e` bits of a
//! measured index read directly as an [`Orientation`](crate::Orientation).

use std::fmt;

use serde::Serialize;

use crate::error::CircuitError;
use crate::marker::{MarkerSpec, Polarity};

/// Default qubit budget shared by circuit layout and the simulator.
pub const DEFAULT_QUBIT_LIMIT: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QubitLayout {
    pub n_e: usize,
    pub n_c: usize,
    pub n_a: usize,
}

impl QubitLayout {
    pub fn new(n_e: usize, n_c: usize, n_a: usize) -> Self {
        Self { n_e, n_c, n_a }
    }

    pub fn total(&self) -> usize {
        self.n_e + self.n_c + self.n_a + 1
    }

    pub fn e(&self, edge: usize) -> usize {
        debug_assert!(edge < self.n_e);
        edge
    }

    pub fn c(&self, comparison: usize) -> usize {
        debug_assert!(comparison < self.n_c);
        self.n_e + comparison
    }

    pub fn a(&self, clause: usize) -> usize {
        debug_assert!(clause < self.n_a);
        self.n_e + self.n_c + clause
    }

    pub fn out(&self) -> usize {
        self.total() - 1
    }

    pub fn e_qubits(&self) -> impl Iterator<Item = usize> {
        0..self.n_e
    }
}

/// Sizes the four registers for `spec`, rejecting layouts over `limit` qubits.
pub fn layout_qubits(spec: &MarkerSpec, limit: usize) -> Result<QubitLayout, CircuitError> {
    let layout = QubitLayout::new(spec.n, spec.comparisons.len(), spec.cycles.len());
    if layout.total() > limit {
        return Err(CircuitError::QubitBudget { required: layout.total(), limit });
    }
    Ok(layout)
}

/// Every gate here is self-inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    X(usize),
    Cnot { control: usize, target: usize },
    /// Flips `target` when every control is 1.
    Mcx { controls: Vec<usize>, target: usize },
    /// Negates the amplitude when every control and the target are 1.
    Mcz { controls: Vec<usize>, target: usize },
}

impl Gate {
    pub fn target(&self) -> usize {
        match *self {
            Gate::H(q) | Gate::X(q) => q,
            Gate::Cnot { target, .. } | Gate::Mcx { target, .. } | Gate::Mcz { target, .. } => target,
        }
    }

    pub fn controls(&self) -> &[usize] {
        match self {
            Gate::H(_) | Gate::X(_) => &[],
            Gate::Cnot { control, .. } => std::slice::from_ref(control),
            Gate::Mcx { controls, .. } | Gate::Mcz { controls, .. } => controls,
        }
    }

    /// Bit mask over all controls.
    pub fn control_mask(&self) -> u64 {
        self.controls().iter().fold(0, |m, &q| m | 1 << q)
    }

    pub fn validate(&self, total: usize) -> Result<(), CircuitError> {
        let target = self.target();
        let mut seen = 0u64;
        for &q in self.controls().iter().chain(std::iter::once(&target)) {
            if q >= total || q >= 64 {
                return Err(CircuitError::QubitOutOfRange { qubit: q, total });
            }
        }
        for &q in self.controls() {
            if q == target {
                return Err(CircuitError::TargetIsControl(q));
            }
            if seen & (1 << q) != 0 {
                return Err(CircuitError::DuplicateControl(q));
            }
            seen |= 1 << q;
        }
        Ok(())
    }

    /// Image of a computational basis index under a permutation gate
    /// (`X`, `CNOT`, `MCX`). `None` for `H` and `MCZ`, which are not
    /// classical permutations without phase.
    pub fn permute_basis(&self, index: u64) -> Option<u64> {
        match self {
            Gate::H(_) | Gate::Mcz { .. } => None,
            _ => {
                let mask = self.control_mask();
                if index & mask == mask {
                    Some(index ^ (1 << self.target()))
                } else {
                    Some(index)
                }
            }
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::H(q) => write!(f, "H({q})"),
            Gate::X(q) => write!(f, "X({q})"),
            Gate::Cnot { control, target } => write!(f, "CNOT({control}->{target})"),
            Gate::Mcx { controls, target } => write!(f, "MCX({controls:?}->{target})"),
            Gate::Mcz { controls, target } => write!(f, "MCZ({controls:?},{target})"),
        }
    }
}

/// A Grover query: preparation once, then `repetitions` copies of
/// `iteration` (oracle followed by diffuser), then measurement of `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    pub layout: QubitLayout,
    pub prepare: Vec<Gate>,
    pub iteration: Vec<Gate>,
    /// Number of leading `iteration` gates that form the oracle.
    pub oracle_len: usize,
    pub repetitions: usize,
}

impl Circuit {
    pub fn oracle(&self) -> &[Gate] {
        &self.iteration[..self.oracle_len]
    }

    pub fn diffuser(&self) -> &[Gate] {
        &self.iteration[self.oracle_len..]
    }

    pub fn validate(&self) -> Result<(), CircuitError> {
        let total = self.layout.total();
        self.prepare.iter().chain(&self.iteration).try_for_each(|g| g.validate(total))
    }

    /// Gates in execution order.
    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.prepare
            .iter()
            .chain((0..self.repetitions).flat_map(move |_| self.iteration.iter()))
    }
}

/// Compute, kickback, uncompute. The uncompute half is the compute half
/// reversed, so the list reads the same forwards and backwards around the
/// kickback gate.
pub fn build_oracle(spec: &MarkerSpec, layout: &QubitLayout) -> Vec<Gate> {
    let mut compute = Vec::new();
    for (k, cmp) in spec.comparisons.iter().enumerate() {
        let target = layout.c(k);
        compute.push(Gate::Cnot { control: layout.e(cmp.lo), target });
        compute.push(Gate::Cnot { control: layout.e(cmp.hi), target });
        if cmp.polarity == Polarity::Eq {
            compute.push(Gate::X(target));
        }
    }
    for (m, clause) in spec.cycles.iter().enumerate() {
        let target = layout.a(m);
        let controls = clause.comparisons.iter().map(|&k| layout.c(k)).collect();
        compute.push(Gate::Mcx { controls, target });
        compute.push(Gate::X(target));
    }

    let mut controls: Vec<usize> = (0..layout.n_a).map(|m| layout.a(m)).collect();
    if let Some(fixed) = spec.fixed {
        controls.push(layout.e(fixed.edge));
        if !fixed.value {
            compute.push(Gate::X(layout.e(fixed.edge)));
        }
    }

    let mut oracle = compute.clone();
    oracle.push(Gate::Mcx { controls, target: layout.out() });
    oracle.extend(compute.into_iter().rev());
    oracle
}

/// Reflection about the uniform superposition on the `e` register.
pub fn build_diffuser(layout: &QubitLayout) -> Vec<Gate> {
    let e: Vec<usize> = layout.e_qubits().collect();
    let Some((&target, controls)) = e.split_last() else {
        return Vec::new();
    };
    let mut gates: Vec<Gate> = e.iter().map(|&q| Gate::H(q)).collect();
    gates.extend(e.iter().map(|&q| Gate::X(q)));
    gates.push(Gate::Mcz { controls: controls.to_vec(), target });
    gates.extend(e.iter().map(|&q| Gate::X(q)));
    gates.extend(e.iter().map(|&q| Gate::H(q)));
    gates
}

/// Full query circuit with `repetitions` Grover iterations.
pub fn build_grover(
    spec: &MarkerSpec,
    repetitions: usize,
    limit: usize,
) -> Result<Circuit, CircuitError> {
    let layout = layout_qubits(spec, limit)?;
    let mut prepare: Vec<Gate> = layout.e_qubits().map(Gate::H).collect();
    prepare.push(Gate::X(layout.out()));
    prepare.push(Gate::H(layout.out()));

    let mut iteration = build_oracle(spec, &layout);
    let oracle_len = iteration.len();
    iteration.extend(build_diffuser(&layout));

    let circuit = Circuit { layout, prepare, iteration, oracle_len, repetitions };
    circuit.validate()?;
    Ok(circuit)
}
