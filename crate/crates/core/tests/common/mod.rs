//! Independent oracles shared by the integration tests. Nothing here calls
//! into the code paths it is used to check.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::FRAC_1_SQRT_2;

use causalq::{builtin, Edge, Gate, Orientation, Topology};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn corpus() -> Vec<Topology> {
    ["bubble", "triangle", "four-eloop"]
        .iter()
        .map(|n| builtin(n).unwrap())
        .collect()
}

pub fn four_eloop() -> Topology {
    builtin("four-eloop").unwrap()
}

pub fn orientation(s: &str) -> Orientation {
    s.parse().unwrap()
}

/// Random connected multigraph: a random spanning tree plus extra edges
/// (parallel edges allowed), random reference directions, no fixed edge.
pub fn random_multigraph(rng: &mut StdRng, max_edges: usize) -> Topology {
    let vertices = rng.gen_range(2..=5usize.min(max_edges + 1));
    let edges = rng.gen_range(vertices - 1..=max_edges);
    let labels: Vec<String> = (0..vertices).map(|i| format!("v{i}")).collect();
    let mut pairs = Vec::new();
    for v in 1..vertices {
        pairs.push((rng.gen_range(0..v), v));
    }
    while pairs.len() < edges {
        let a = rng.gen_range(0..vertices);
        let mut b = rng.gen_range(0..vertices - 1);
        if b >= a {
            b += 1;
        }
        pairs.push((a, b));
    }
    // Shuffle ids so tree edges are not always the low ones.
    for i in (1..pairs.len()).rev() {
        pairs.swap(i, rng.gen_range(0..=i));
    }
    let edge_list = pairs
        .into_iter()
        .enumerate()
        .map(|(id, (a, b))| {
            let (t, h) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            Edge { id, tail: labels[t].clone(), head: labels[h].clone() }
        })
        .collect();
    Topology::new("random", labels, edge_list, None).unwrap()
}

pub fn random_corpus(seed: u64, count: usize, max_edges: usize) -> Vec<Topology> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| random_multigraph(&mut rng, max_edges)).collect()
}

/// Every simple cycle as a set of edge ids, by checking all edge subsets.
pub fn brute_force_cycles(t: &Topology) -> Vec<BTreeSet<usize>> {
    let n = t.edge_count();
    let mut out = Vec::new();
    for mask in 1u64..1 << n {
        if mask.count_ones() < 2 {
            continue;
        }
        let edges: Vec<usize> = (0..n).filter(|&e| mask >> e & 1 == 1).collect();
        let mut degree = BTreeMap::new();
        for &e in &edges {
            let (a, b) = t.endpoints(e);
            *degree.entry(a).or_insert(0) += 1;
            *degree.entry(b).or_insert(0) += 1;
        }
        if degree.values().any(|&d| d != 2) {
            continue;
        }
        // connected?
        let start = *degree.keys().next().unwrap();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &e in &edges {
                let (a, b) = t.endpoints(e);
                let w = if a == v { b } else if b == v { a } else { continue };
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if seen.len() == degree.len() {
            out.push(edges.into_iter().collect());
        }
    }
    out
}

/// Subset of `brute_force_cycles` with no chord.
pub fn brute_force_chordless(t: &Topology) -> Vec<BTreeSet<usize>> {
    brute_force_cycles(t)
        .into_iter()
        .filter(|cycle| {
            let joined: BTreeSet<(usize, usize)> = cycle
                .iter()
                .map(|&e| {
                    let (a, b) = t.endpoints(e);
                    (a.min(b), a.max(b))
                })
                .collect();
            let on_cycle: BTreeSet<usize> = joined.iter().flat_map(|&(a, b)| [a, b]).collect();
            (0..t.edge_count()).filter(|e| !cycle.contains(e)).all(|e| {
                let (a, b) = t.endpoints(e);
                let key = (a.min(b), a.max(b));
                !(on_cycle.contains(&a) && on_cycle.contains(&b)) || joined.contains(&key)
            })
        })
        .collect()
}

/// Whether some simple cycle is directed under `o`, by walking each cycle.
pub fn has_directed_cycle(t: &Topology, cycles: &[BTreeSet<usize>], o: &Orientation) -> bool {
    cycles.iter().any(|c| directed_cycle(t, c, o))
}

pub fn directed_cycle(t: &Topology, cycle: &BTreeSet<usize>, o: &Orientation) -> bool {
    // Directed iff every vertex has exactly one incoming cycle edge.
    let mut indegree = BTreeMap::new();
    for &e in cycle {
        let (from, to) = t.directed_endpoints(e, o);
        indegree.entry(from).or_insert(0);
        *indegree.entry(to).or_insert(0) += 1;
    }
    indegree.values().all(|&d| d == 1)
}

/// Chromatic polynomial of the underlying simple graph evaluated at `k`, by
/// deletion-contraction.
pub fn chromatic_at(t: &Topology, k: i64) -> i64 {
    let edges: BTreeSet<(usize, usize)> = t
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = t.endpoints(e.id);
            (a.min(b), a.max(b))
        })
        .collect();
    chromatic(t.vertex_count(), edges, k)
}

fn chromatic(vertices: usize, edges: BTreeSet<(usize, usize)>, k: i64) -> i64 {
    let Some(&(a, b)) = edges.iter().next() else {
        return k.pow(vertices as u32);
    };
    let mut deleted = edges.clone();
    deleted.remove(&(a, b));
    // contract b into a
    let contracted: BTreeSet<(usize, usize)> = deleted
        .iter()
        .map(|&(x, y)| {
            let x = if x == b { a } else { x };
            let y = if y == b { a } else { y };
            (x.min(y), x.max(y))
        })
        .filter(|&(x, y)| x != y)
        .collect();
    chromatic(vertices, deleted, k) - chromatic(vertices - 1, contracted, k)
}

/// Explicit `2^q x 2^q` matrix of a gate, column by column.
#[allow(clippy::needless_range_loop)]
pub fn dense_matrix(gate: &Gate, qubits: usize) -> Vec<Vec<Complex64>> {
    let dim = 1usize << qubits;
    let zero = Complex64::new(0.0, 0.0);
    let mut m = vec![vec![zero; dim]; dim];
    let target = gate.target();
    let controls_on = |j: usize| gate.controls().iter().all(|&c| j >> c & 1 == 1);
    for j in 0..dim {
        match gate {
            Gate::H(_) => {
                let bit = j >> target & 1;
                let low = j & !(1 << target);
                let high = j | 1 << target;
                m[low][j] = Complex64::new(FRAC_1_SQRT_2, 0.0);
                m[high][j] = Complex64::new(if bit == 1 { -FRAC_1_SQRT_2 } else { FRAC_1_SQRT_2 }, 0.0);
            }
            Gate::X(_) | Gate::Cnot { .. } | Gate::Mcx { .. } => {
                let i = if controls_on(j) { j ^ 1 << target } else { j };
                m[i][j] = Complex64::new(1.0, 0.0);
            }
            Gate::Mcz { .. } => {
                let flip = controls_on(j) && j >> target & 1 == 1;
                m[j][j] = Complex64::new(if flip { -1.0 } else { 1.0 }, 0.0);
            }
        }
    }
    m
}

pub fn mat_vec(m: &[Vec<Complex64>], v: &[Complex64]) -> Vec<Complex64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn random_state(rng: &mut StdRng, qubits: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..1usize << qubits)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|a| a / norm).collect()
}

pub fn random_gate(rng: &mut StdRng, qubits: usize) -> Gate {
    let mut pool: Vec<usize> = (0..qubits).collect();
    for i in (1..pool.len()).rev() {
        pool.swap(i, rng.gen_range(0..=i));
    }
    let target = pool[0];
    let kinds = if qubits == 1 { 2 } else { 5 };
    match rng.gen_range(0..kinds) {
        0 => Gate::H(target),
        1 => Gate::X(target),
        2 => Gate::Cnot { control: pool[1], target },
        3 => {
            let k = rng.gen_range(0..qubits);
            Gate::Mcx { controls: pool[1..=k].to_vec(), target }
        }
        _ => {
            let k = rng.gen_range(0..qubits);
            Gate::Mcz { controls: pool[1..=k].to_vec(), target }
        }
    }
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
