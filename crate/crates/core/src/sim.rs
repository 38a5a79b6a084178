//! Dense statevector simulation.
//!
//! Kernels work in place on the amplitude array using bit-mask index
//! arithmetic: qubit `k` pairs index `i` with `i | 1 << k`. Each gate is one
//! pass over the array. Parallel execution splits the index space into
//! disjoint blocks and performs exactly the same per-element arithmetic as the
//! serial path, so both produce bit-identical results.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt::Debug;

use num_complex::Complex;
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::circuit::{Circuit, Gate, DEFAULT_QUBIT_LIMIT};
use crate::error::SimError;

/// Name and version of the sampling generator, recorded in reports.
pub const PRNG_ALGORITHM: &str = "chacha20/rand_chacha-0.3/seed_from_u64";

const BLOCK: usize = 1 << 14;

/// Floating-point type of the amplitudes.
pub trait Real: Float + Send + Sync + Debug + 'static {}

impl<T: Float + Send + Sync + Debug + 'static> Real for T {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    #[default]
    Double,
    Single,
}

impl Precision {
    pub fn bytes_per_amplitude(self) -> usize {
        match self {
            Precision::Double => 16,
            Precision::Single => 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector<T: Real = f64> {
    qubits: usize,
    amplitudes: Vec<Complex<T>>,
    parallel: bool,
}

impl<T: Real> Statevector<T> {
    /// `|0...0>` on `qubits` qubits, within the default qubit limit.
    pub fn new(qubits: usize) -> Result<Self, SimError> {
        Self::with_limit(qubits, DEFAULT_QUBIT_LIMIT)
    }

    pub fn with_limit(qubits: usize, limit: usize) -> Result<Self, SimError> {
        if qubits > limit || qubits >= usize::BITS as usize - 1 {
            return Err(SimError::QubitLimit { requested: qubits, limit });
        }
        let len = 1usize << qubits;
        let bytes = (len as u128) * std::mem::size_of::<Complex<T>>() as u128;
        let mut amplitudes = Vec::new();
        amplitudes
            .try_reserve_exact(len)
            .map_err(|_| SimError::Allocation { qubits, bytes })?;
        amplitudes.resize(len, Complex::new(T::zero(), T::zero()));
        amplitudes[0] = Complex::new(T::one(), T::zero());
        Ok(Self { qubits, amplitudes, parallel: true })
    }

    /// Wraps an explicit amplitude array whose length is a power of two.
    pub fn from_amplitudes(amplitudes: Vec<Complex<T>>) -> Self {
        assert!(amplitudes.len().is_power_of_two(), "length must be a power of two");
        let qubits = amplitudes.len().trailing_zeros() as usize;
        Self { qubits, amplitudes, parallel: true }
    }

    pub fn set_parallel(&mut self, parallel: bool) {
        self.parallel = parallel;
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr().to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<(), SimError> {
        gate.validate(self.qubits)?;
        let target = gate.target();
        let mask = gate.control_mask() as usize;
        match gate {
            Gate::H(_) => {
                let s = T::from(FRAC_1_SQRT_2).expect("representable constant");
                self.for_each_pair(target, mask, move |x, y| {
                    let (a, b) = (*x, *y);
                    *x = (a + b) * s;
                    *y = (a - b) * s;
                });
            }
            Gate::X(_) | Gate::Cnot { .. } | Gate::Mcx { .. } => {
                self.for_each_pair(target, mask, std::mem::swap);
            }
            Gate::Mcz { .. } => self.negate_where(mask | 1 << target),
        }
        Ok(())
    }

    pub fn apply_gates<'g>(
        &mut self,
        gates: impl IntoIterator<Item = &'g Gate>,
    ) -> Result<(), SimError> {
        gates.into_iter().try_for_each(|g| self.apply_gate(g))
    }

    /// Preparation once, then the iteration block `repetitions` times.
    pub fn run_circuit(&mut self, circuit: &Circuit) -> Result<(), SimError> {
        if self.qubits != circuit.layout.total() {
            return Err(SimError::DimensionMismatch {
                state: self.qubits,
                circuit: circuit.layout.total(),
            });
        }
        self.apply_gates(&circuit.prepare)?;
        for _ in 0..circuit.repetitions {
            self.apply_gates(&circuit.iteration)?;
        }
        Ok(())
    }

    fn for_each_pair<F>(&mut self, target: usize, mask: usize, op: F)
    where
        F: Fn(&mut Complex<T>, &mut Complex<T>) + Sync,
    {
        let stride = 1usize << target;
        let len = self.amplitudes.len();
        if !self.parallel || len <= BLOCK {
            pair_pass(&mut self.amplitudes, 0, stride, mask, &op);
        } else if 2 * stride <= BLOCK {
            self.amplitudes
                .par_chunks_mut(BLOCK)
                .enumerate()
                .for_each(|(b, block)| pair_pass(block, b * BLOCK, stride, mask, &op));
        } else {
            self.amplitudes
                .par_chunks_mut(2 * stride)
                .enumerate()
                .for_each(|(c, chunk)| {
                    let base = c * 2 * stride;
                    let (lo, hi) = chunk.split_at_mut(stride);
                    lo.par_chunks_mut(BLOCK)
                        .zip(hi.par_chunks_mut(BLOCK))
                        .enumerate()
                        .for_each(|(b, (lo, hi))| {
                            let offset = base + b * BLOCK;
                            for (j, (x, y)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                                if (offset + j) & mask == mask {
                                    op(x, y);
                                }
                            }
                        });
                });
        }
    }

    fn negate_where(&mut self, mask: usize) {
        let negate = |offset: usize, block: &mut [Complex<T>]| {
            for (j, a) in block.iter_mut().enumerate() {
                if (offset + j) & mask == mask {
                    *a = -*a;
                }
            }
        };
        if self.parallel && self.amplitudes.len() > BLOCK {
            self.amplitudes
                .par_chunks_mut(BLOCK)
                .enumerate()
                .for_each(|(b, block)| negate(b * BLOCK, block));
        } else {
            negate(0, &mut self.amplitudes);
        }
    }

    /// Marginal distribution of the low `n_e` qubits, indexed by their
    /// integer value. Every entry sums its rows in ascending order, so the
    /// result does not depend on thread scheduling.
    pub fn probabilities_e(&self, n_e: usize) -> Vec<f64> {
        assert!(n_e <= self.qubits, "register wider than the state");
        let width = 1usize << n_e;
        let rows = self.amplitudes.len() >> n_e;
        let amplitudes = &self.amplitudes;
        let fill = |start: usize, out: &mut [f64]| {
            for r in 0..rows {
                let row = &amplitudes[(r << n_e) + start..(r << n_e) + start + out.len()];
                for (p, a) in out.iter_mut().zip(row) {
                    *p += a.norm_sqr().to_f64().unwrap_or(f64::NAN);
                }
            }
        };
        let mut probs = vec![0.0; width];
        if self.parallel && width > BLOCK {
            probs
                .par_chunks_mut(BLOCK)
                .enumerate()
                .for_each(|(b, out)| fill(b * BLOCK, out));
        } else {
            fill(0, &mut probs);
        }
        probs
    }

    /// Draws `shots` samples of the low `n_e` qubits.
    pub fn sample(&self, n_e: usize, shots: u64, seed: u64) -> Result<Histogram, SimError> {
        sample(&self.probabilities_e(n_e), n_e, shots, seed)
    }
}

fn pair_pass<T: Real, F>(block: &mut [Complex<T>], offset: usize, stride: usize, mask: usize, op: &F)
where
    F: Fn(&mut Complex<T>, &mut Complex<T>),
{
    for (c, chunk) in block.chunks_mut(2 * stride).enumerate() {
        let base = offset + c * 2 * stride;
        let (lo, hi) = chunk.split_at_mut(stride);
        for (j, (x, y)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
            if (base + j) & mask == mask {
                op(x, y);
            }
        }
    }
}

/// Shot counts per measured bitstring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    /// Number of measured qubits.
    pub width: usize,
    /// Counts keyed by the integer value of the measured register.
    pub counts: BTreeMap<u64, u64>,
    pub shots: u64,
}

impl Histogram {
    pub fn count(&self, value: u64) -> u64 {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    /// Counts keyed by bitstring, character `i` = qubit `i`.
    pub fn by_bitstring(&self) -> BTreeMap<String, u64> {
        self.counts
            .iter()
            .map(|(&v, &n)| ((0..self.width).map(|i| if (v >> i) & 1 == 1 { '1' } else { '0' }).collect(), n))
            .collect()
    }
}

/// Inverse-CDF sampling from `probabilities` with a seeded ChaCha20 stream.
pub fn sample(probabilities: &[f64], width: usize, shots: u64, seed: u64) -> Result<Histogram, SimError> {
    if shots == 0 {
        return Err(SimError::NoShots);
    }
    let cdf: Vec<f64> = probabilities
        .iter()
        .scan(0.0, |acc, &p| {
            *acc += p.max(0.0);
            Some(*acc)
        })
        .collect();
    let total = cdf.last().copied().unwrap_or(0.0);
    let last_nonzero = probabilities.iter().rposition(|&p| p > 0.0).unwrap_or(0);

    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        let u = rng.gen::<f64>() * total;
        let index = cdf.partition_point(|&c| c <= u).min(last_nonzero);
        *counts.entry(index as u64).or_insert(0) += 1;
    }
    Ok(Histogram { width, counts, shots })
}
