//! OpenQASM 3.0 export.
//!
//! Multi-controlled gates are written with `ctrl(k) @` modifiers instead of
//! being decomposed into a hardware-native basis. Iterations are unrolled.

use std::fmt::Write;

use crate::circuit::{Circuit, Gate};

pub fn export_qasm(circuit: &Circuit) -> String {
    let layout = &circuit.layout;
    let mut out = String::new();
    out.push_str("OPENQASM 3.0;\n");
    out.push_str("include \"stdgates.inc\";\n");
    let _ = writeln!(
        out,
        "// registers: e = q[0..{}], c = q[{}..{}], a = q[{}..{}], out = q[{}]",
        layout.n_e,
        layout.n_e,
        layout.n_e + layout.n_c,
        layout.n_e + layout.n_c,
        layout.n_e + layout.n_c + layout.n_a,
        layout.out()
    );
    let _ = writeln!(out, "qubit[{}] q;", layout.total());
    let _ = writeln!(out, "bit[{}] c_out;", layout.n_e);

    out.push_str("// prepare\n");
    for gate in &circuit.prepare {
        write_gate(&mut out, gate);
    }
    for r in 0..circuit.repetitions {
        let _ = writeln!(out, "// iteration {}: oracle", r + 1);
        for gate in circuit.oracle() {
            write_gate(&mut out, gate);
        }
        let _ = writeln!(out, "// iteration {}: diffuser", r + 1);
        for gate in circuit.diffuser() {
            write_gate(&mut out, gate);
        }
    }
    for i in layout.e_qubits() {
        let _ = writeln!(out, "c_out[{i}] = measure q[{i}];");
    }
    out
}

fn write_gate(out: &mut String, gate: &Gate) {
    let operands = |controls: &[usize], target: usize| {
        controls
            .iter()
            .chain(std::iter::once(&target))
            .map(|q| format!("q[{q}]"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let _ = match gate {
        Gate::H(q) => writeln!(out, "h q[{q}];"),
        Gate::X(q) => writeln!(out, "x q[{q}];"),
        Gate::Cnot { control, target } => writeln!(out, "cx q[{control}], q[{target}];"),
        Gate::Mcx { controls, target } => {
            writeln!(out, "ctrl({}) @ x {};", controls.len(), operands(controls, *target))
        }
        Gate::Mcz { controls, target } if controls.is_empty() => writeln!(out, "z q[{target}];"),
        Gate::Mcz { controls, target } => {
            writeln!(out, "ctrl({}) @ z {};", controls.len(), operands(controls, *target))
        }
    };
}
