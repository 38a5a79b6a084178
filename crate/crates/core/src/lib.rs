//! Grover-search query of causal configurations of multiloop topologies.
//!
//! A topology is a multigraph whose edges carry reference directions. Its
//! causal configurations are the edge orientations without a directed cycle.
//! This crate synthesizes a Grover oracle that marks exactly those
//! orientations, simulates the amplitude-amplification query on a dense
//! statevector, and cross-checks the result against classical enumeration.

pub mod circuit;
pub mod cycle;
pub mod error;
pub mod grover;
pub mod io;
pub mod marker;
pub mod qasm;
pub mod sim;
pub mod topology;

pub use circuit::{
    build_diffuser, build_grover, build_oracle, layout_qubits, Circuit, Gate, QubitLayout,
    DEFAULT_QUBIT_LIMIT,
};
pub use cycle::{canonical_cycle_order, chordless_cycles, Cycle};
pub use error::{CircuitError, Error, PlanError, Result, SimError, TopologyError};
pub use grover::{
    optimal_iterations, run_query, success_probability, verify, verify_marker, GroverPlan,
    Iterations, QueryOptions, QueryReport, VerificationReport,
};
pub use io::{builtin, load_topology, parse_topology, TopologyFile};
pub use marker::{
    eval_marker, synthesize_marker, synthesize_marker_with, ComparisonClause, CycleClause,
    FixedMode, MarkerSpec, Polarity,
};
pub use qasm::export_qasm;
pub use sim::{Histogram, Precision, Statevector};
pub use topology::{Edge, EdgeId, FixedEdge, Orientation, Topology, DEFAULT_ENUMERATION_BOUND};
