use thiserror::Error;

/// Problems found while building or querying a [`crate::Topology`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("topology has no edges")]
    NoEdges,
    #[error("topology has {0} edges; at most 64 are supported")]
    TooManyEdges(usize),
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0}")]
    DuplicateEdgeId(usize),
    #[error("missing edge id {missing}: ids must be exactly 0..{n}")]
    MissingEdgeId { missing: usize, n: usize },
    #[error("edge {edge} references unknown vertex `{vertex}`")]
    UnknownVertex { edge: usize, vertex: String },
    #[error("edge {edge} is a self-loop on `{vertex}`")]
    SelfLoop { edge: usize, vertex: String },
    #[error("graph is disconnected: vertex `{0}` is unreachable from the first vertex")]
    Disconnected(String),
    #[error("fixed edge {edge} does not exist (topology has {n} edges)")]
    FixedEdgeOutOfRange { edge: usize, n: usize },
    #[error("orientation has {got} bits but the topology has {expected} edges")]
    LengthMismatch { expected: usize, got: usize },
    #[error("brute-force enumeration over 2^{n} orientations exceeds the bound 2^{bound}")]
    BoundExceeded { n: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientationParseError {
    #[error("invalid character `{0}` in orientation bitstring (expected 0 or 1)")]
    InvalidChar(char),
    #[error("orientation bitstring has {0} characters; at most 64 are supported")]
    TooLong(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("circuit needs {required} qubits but the budget is {limit}")]
    QubitBudget { required: usize, limit: usize },
    #[error("gate references qubit {qubit} but the layout has {total} qubits")]
    QubitOutOfRange { qubit: usize, total: usize },
    #[error("gate target {0} also appears among its controls")]
    TargetIsControl(usize),
    #[error("gate lists control qubit {0} more than once")]
    DuplicateControl(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("{requested} qubits exceed the simulator limit of {limit}")]
    QubitLimit { requested: usize, limit: usize },
    #[error("cannot allocate statevector for {qubits} qubits ({bytes} bytes required)")]
    Allocation { qubits: usize, bytes: u128 },
    #[error("state has {state} qubits but the circuit expects {circuit}")]
    DimensionMismatch { state: usize, circuit: usize },
    #[error(transparent)]
    Gate(#[from] CircuitError),
    #[error("sampling requires at least one shot")]
    NoShots,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("no marked states: nothing to amplify")]
    NothingToAmplify,
    #[error("all {0} states are marked: amplification is meaningless")]
    AllMarked(u64),
    #[error("marked count {marked} exceeds search space {size}")]
    InvalidCount { marked: u64, size: u64 },
}

/// Errors surfaced by end-to-end queries.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error("malformed topology file: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
