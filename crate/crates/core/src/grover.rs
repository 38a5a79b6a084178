//! End-to-end query orchestration: planning, simulation, sampling and the
//! quantum-versus-classical cross-check.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::time::Instant;

use serde::Serialize;

use crate::circuit::{build_grover, Circuit, Gate, DEFAULT_QUBIT_LIMIT};
use crate::error::{Error, PlanError};
use crate::marker::{synthesize_marker_with, FixedMode, MarkerSpec};
use crate::sim::{sample, Histogram, Precision, Real, Statevector, PRNG_ALGORITHM};
use crate::topology::{Orientation, Topology};

/// `sin^2((2r + 1) * asin(sqrt(M / N)))`.
pub fn success_probability(size: u64, marked: u64, iterations: usize) -> f64 {
    let theta = rotation_angle(size, marked);
    ((2 * iterations + 1) as f64 * theta).sin().powi(2)
}

fn rotation_angle(size: u64, marked: u64) -> f64 {
    (marked as f64 / size as f64).sqrt().asin()
}

/// The iteration count in `0..=ceil(pi / (4 theta))` with the highest
/// success probability; ties go to the smaller count.
pub fn optimal_iterations(size: u64, marked: u64) -> Result<usize, PlanError> {
    check_counts(size, marked)?;
    let theta = rotation_angle(size, marked);
    let upper = (PI / (4.0 * theta)).ceil() as usize;
    let mut best = (0, success_probability(size, marked, 0));
    for r in 1..=upper {
        let p = success_probability(size, marked, r);
        if p > best.1 {
            best = (r, p);
        }
    }
    Ok(best.0)
}

fn check_counts(size: u64, marked: u64) -> Result<(), PlanError> {
    match marked {
        0 => Err(PlanError::NothingToAmplify),
        m if m == size => Err(PlanError::AllMarked(size)),
        m if m > size => Err(PlanError::InvalidCount { marked: m, size }),
        _ => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Iterations {
    #[default]
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroverPlan {
    #[serde(rename = "N")]
    pub size: u64,
    #[serde(rename = "M")]
    pub marked: u64,
    #[serde(rename = "r")]
    pub iterations: usize,
    pub theta: f64,
    pub p_success: f64,
    #[serde(skip)]
    pub warnings: Vec<String>,
}

impl GroverPlan {
    pub fn new(size: u64, marked: u64, iterations: Iterations) -> Result<Self, PlanError> {
        check_counts(size, marked)?;
        let mut warnings = Vec::new();
        let r = match iterations {
            Iterations::Fixed(r) => r,
            Iterations::Auto if 2 * marked >= size => {
                warnings.push(format!(
                    "marked fraction {marked}/{size} is at least 1/2; amplification disabled (r = 0)"
                ));
                0
            }
            Iterations::Auto => optimal_iterations(size, marked)?,
        };
        Ok(Self {
            size,
            marked,
            iterations: r,
            theta: rotation_angle(size, marked),
            p_success: success_probability(size, marked, r),
            warnings,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryOptions {
    pub shots: u64,
    pub seed: u64,
    pub iterations: Iterations,
    pub precision: Precision,
    pub qubit_limit: usize,
    pub fixed: FixedMode,
}

impl Default for QueryOptions {
    fn default() -> Self {
        Self {
            shots: 8192,
            seed: 0,
            iterations: Iterations::Auto,
            precision: Precision::Double,
            qubit_limit: DEFAULT_QUBIT_LIMIT,
            fixed: FixedMode::Default,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectedEdge {
    pub id: usize,
    pub from: String,
    pub to: String,
}

/// A causal orientation with every edge resolved to a vertex pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CausalConfiguration {
    pub bits: Orientation,
    pub edges: Vec<DirectedEdge>,
}

impl CausalConfiguration {
    pub fn resolve(topology: &Topology, orientation: Orientation) -> Self {
        let label = |v: usize| topology.vertices()[v].clone();
        let edges = (0..topology.edge_count())
            .map(|id| {
                let (from, to) = topology.directed_endpoints(id, &orientation);
                DirectedEdge { id, from: label(from), to: label(to) }
            })
            .collect();
        Self { bits: orientation, edges }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrngInfo {
    pub algorithm: &'static str,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryReport {
    pub topology: String,
    pub plan: GroverPlan,
    pub prng: PrngInfo,
    pub histogram: Histogram,
    pub marked_fraction: f64,
    pub causal_configurations: Vec<CausalConfiguration>,
    /// Exact probability of every `e` bitstring before measurement.
    pub probabilities: Vec<f64>,
    pub wall_time_ms: u64,
}

impl Serialize for QueryReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("QueryReport", 12)?;
        s.serialize_field("topology", &self.topology)?;
        s.serialize_field("N", &self.plan.size)?;
        s.serialize_field("M", &self.plan.marked)?;
        s.serialize_field("r", &self.plan.iterations)?;
        s.serialize_field("theta", &self.plan.theta)?;
        s.serialize_field("p_success", &self.plan.p_success)?;
        s.serialize_field("prng", &self.prng)?;
        s.serialize_field("shots", &self.histogram.shots)?;
        s.serialize_field("histogram", &self.histogram.by_bitstring())?;
        s.serialize_field("marked_fraction", &self.marked_fraction)?;
        s.serialize_field("causal_configurations", &self.causal_configurations)?;
        s.serialize_field("wall_time_ms", &self.wall_time_ms)?;
        s.end()
    }
}

/// Classical causal set for a marker's fixed-edge constraint.
fn classical_marked(topology: &Topology, spec: &MarkerSpec) -> Result<Vec<Orientation>, Error> {
    Ok(topology.with_fixed(spec.fixed)?.enumerate_causal()?)
}

/// Synthesizes the oracle, plans and simulates the query, then samples it.
pub fn run_query(topology: &Topology, options: &QueryOptions) -> Result<QueryReport, Error> {
    let started = Instant::now();
    let spec = synthesize_marker_with(topology, options.fixed)?;
    let causal = classical_marked(topology, &spec)?;
    let n = topology.edge_count();
    let mut plan = GroverPlan::new(1u64 << n, causal.len() as u64, options.iterations)?;
    if spec.fixed.is_none() {
        plan.warnings.push(
            "no fixed-edge constraint: both members of every reversal pair are marked".to_string(),
        );
    }
    let circuit = build_grover(&spec, plan.iterations, options.qubit_limit)?;

    let probabilities = match options.precision {
        Precision::Double => simulate::<f64>(&circuit, options.qubit_limit)?,
        Precision::Single => simulate::<f32>(&circuit, options.qubit_limit)?,
    };
    let histogram = sample(&probabilities, n, options.shots, options.seed)?;

    let causal_set: BTreeSet<u64> = causal.iter().map(Orientation::bits).collect();
    let hits: u64 = histogram
        .counts
        .iter()
        .filter(|(v, _)| causal_set.contains(v))
        .map(|(_, &c)| c)
        .sum();

    Ok(QueryReport {
        topology: topology.name().to_string(),
        marked_fraction: hits as f64 / histogram.shots as f64,
        prng: PrngInfo { algorithm: PRNG_ALGORITHM, seed: options.seed },
        causal_configurations: causal
            .into_iter()
            .map(|o| CausalConfiguration::resolve(topology, o))
            .collect(),
        plan,
        histogram,
        probabilities,
        wall_time_ms: started.elapsed().as_millis() as u64,
    })
}

fn simulate<T: Real>(circuit: &Circuit, limit: usize) -> Result<Vec<f64>, Error> {
    let mut state = Statevector::<T>::with_limit(circuit.layout.total(), limit)?;
    state.run_circuit(circuit)?;
    Ok(state.probabilities_e(circuit.layout.n_e))
}

/// Outcome of comparing the oracle's phase-flipped set with the classical
/// causal set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub topology: String,
    pub pass: bool,
    #[serde(rename = "N")]
    pub size: u64,
    pub classical_count: usize,
    pub quantum_count: usize,
    /// Bitstrings whose phase the oracle flips.
    pub marked: Vec<Orientation>,
    /// Flipped by the oracle but not causal.
    pub only_quantum: Vec<Orientation>,
    /// Causal but not flipped by the oracle.
    pub only_classical: Vec<Orientation>,
    /// Probability left outside `c = 0, a = 0` after the oracle.
    pub ancilla_residual: f64,
    /// Largest deviation of an `e` amplitude from `+-1/sqrt(2^(n+1))`.
    pub max_amplitude_error: f64,
}

const VERIFY_TOLERANCE: f64 = 1e-9;

pub fn verify(topology: &Topology) -> Result<VerificationReport, Error> {
    let spec = synthesize_marker_with(topology, FixedMode::Default)?;
    verify_marker(topology, &spec, DEFAULT_QUBIT_LIMIT)
}

/// Runs the oracle once on the uniform superposition with `out = |->` and
/// reads each edge assignment's phase from the exact amplitudes.
pub fn verify_marker(
    topology: &Topology,
    spec: &MarkerSpec,
    qubit_limit: usize,
) -> Result<VerificationReport, Error> {
    let classical = classical_marked(topology, spec)?;
    let circuit = build_grover(spec, 0, qubit_limit)?;
    let layout = circuit.layout;

    let mut state = Statevector::<f64>::with_limit(layout.total(), qubit_limit)?;
    state.apply_gates(&circuit.prepare)?;
    state.apply_gates(circuit.oracle())?;

    let n = layout.n_e;
    let out_bit = 1usize << layout.out();
    let expected = (0.5f64).sqrt() / ((1u64 << n) as f64).sqrt();
    let mut marked = Vec::new();
    let mut retained = 0.0;
    let mut max_error: f64 = 0.0;
    for e in 0..1usize << n {
        let (zero, one) = (state.amplitude(e), state.amplitude(e | out_bit));
        retained += zero.norm_sqr() + one.norm_sqr();
        let sign = if zero.re < 0.0 { -1.0 } else { 1.0 };
        max_error = max_error
            .max((zero.re - sign * expected).abs())
            .max((one.re + sign * expected).abs())
            .max(zero.im.abs())
            .max(one.im.abs());
        if sign < 0.0 {
            marked.push(Orientation::from_bits(e as u64, n));
        }
    }

    let quantum: BTreeSet<Orientation> = marked.iter().copied().collect();
    let classical_set: BTreeSet<Orientation> = classical.iter().copied().collect();
    let by_value = |set: Vec<Orientation>| {
        let mut v = set;
        v.sort_by_key(Orientation::bits);
        v
    };
    let only_quantum = by_value(quantum.difference(&classical_set).copied().collect());
    let only_classical = by_value(classical_set.difference(&quantum).copied().collect());
    let ancilla_residual = (1.0 - retained).abs();

    Ok(VerificationReport {
        topology: topology.name().to_string(),
        pass: only_quantum.is_empty()
            && only_classical.is_empty()
            && ancilla_residual <= VERIFY_TOLERANCE
            && max_error <= VERIFY_TOLERANCE,
        size: 1u64 << n,
        classical_count: classical.len(),
        quantum_count: marked.len(),
        marked,
        only_quantum,
        only_classical,
        ancilla_residual,
        max_amplitude_error: max_error,
    })
}

/// Classical reversible evaluation of a permutation-only gate list on one
/// basis index. `None` if the list contains `H` or `MCZ`.
pub fn permute_basis(gates: &[Gate], index: u64) -> Option<u64> {
    gates.iter().try_fold(index, |i, g| g.permute_basis(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn success_probability_examples() {
        assert!((success_probability(256, 39, 0) - 39.0 / 256.0).abs() < 1e-15);
        assert!((success_probability(4, 1, 1) - 1.0).abs() < 1e-15);
        let theta = (39.0f64 / 256.0).sqrt().asin();
        assert!((success_probability(256, 39, 1) - (3.0 * theta).sin().powi(2)).abs() < 1e-15);
    }

    #[test]
    fn optimal_iteration_examples() {
        assert_eq!(optimal_iterations(4, 1), Ok(1));
        assert_eq!(optimal_iterations(256, 39), Ok(1));
        assert!(success_probability(256, 39, 1) > success_probability(256, 39, 2));
        assert_eq!(optimal_iterations(8, 3), Ok(1));
        assert!((success_probability(8, 3, 1) - 0.84375).abs() < 1e-12);
    }

    #[test]
    fn degenerate_counts_are_distinct_errors() {
        assert_eq!(optimal_iterations(16, 0), Err(PlanError::NothingToAmplify));
        assert_eq!(optimal_iterations(16, 16), Err(PlanError::AllMarked(16)));
    }

    #[test]
    fn half_marked_plans_zero_iterations() {
        let plan = GroverPlan::new(4, 2, Iterations::Auto).unwrap();
        assert_eq!(plan.iterations, 0);
        assert_eq!(plan.warnings.len(), 1);
        let forced = GroverPlan::new(4, 2, Iterations::Fixed(3)).unwrap();
        assert_eq!(forced.iterations, 3);
    }
}
