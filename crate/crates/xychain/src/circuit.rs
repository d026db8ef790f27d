//! Circuit intermediate representation: an ordered program of gates with
//! composition, inversion, dense-unitary extraction, and the structural
//! statistics (counts, greedy depth, cut crossings) the construction is
//! judged by.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dense::Matrix;
use crate::gatelib::{Gate, GateLabel};
use crate::statevector::{apply_matrix_to_amps, check_targets, StateVector};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitOp {
    #[serde(flatten)]
    pub gate: Gate,
    pub targets: Vec<usize>,
}

/// Ordered gate program on `n` qubits; ops apply left-to-right to states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub n: usize,
    pub ops: Vec<CircuitOp>,
}

/// Structural counts; `depth` uses greedy earliest-layer scheduling on the
/// as-built order (a gate enters the first layer in which all its targets
/// are free), with no reordering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitStats {
    pub total_gates: usize,
    pub two_qubit_gates: usize,
    pub gates_by_label: BTreeMap<GateLabel, usize>,
    pub depth: usize,
}

impl Circuit {
    pub fn new(n: usize) -> Circuit {
        Circuit { n, ops: Vec::new() }
    }

    /// Appends a gate after validating its targets against `n`.
    pub fn push(&mut self, gate: Gate, targets: Vec<usize>) -> Result<(), Error> {
        check_targets(self.n, gate.arity(), &targets)?;
        self.ops.push(CircuitOp { gate, targets });
        Ok(())
    }

    /// Re-validates every op (useful after deserialization).
    pub fn validate(&self) -> Result<(), Error> {
        for op in &self.ops {
            check_targets(self.n, op.gate.arity(), &op.targets)?;
        }
        Ok(())
    }

    pub fn run(&self, state: &StateVector) -> Result<StateVector, Error> {
        if state.n() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "circuit on {} qubits, state on {}",
                self.n,
                state.n()
            )));
        }
        let mut out = state.clone();
        for op in &self.ops {
            out.apply_inplace(&op.gate, &op.targets)?;
        }
        Ok(out)
    }

    /// Reversed op order with every gate conjugate-transposed.
    pub fn inverse(&self) -> Circuit {
        let ops = self
            .ops
            .iter()
            .rev()
            .map(|op| CircuitOp { gate: op.gate.dagger(), targets: op.targets.clone() })
            .collect();
        Circuit { n: self.n, ops }
    }

    /// Dense 2^n × 2^n unitary: ordered product of embedded gate matrices.
    pub fn unitary_of(&self) -> Result<Matrix, Error> {
        const MAX_N: usize = 12;
        if self.n > MAX_N {
            return Err(Error::TooLarge { n: self.n, max: MAX_N, what: "dense circuit unitary" });
        }
        self.validate()?;
        let dim = 1usize << self.n;
        let mut u = Matrix::identity(dim);
        for c in 0..dim {
            let mut col = u.column(c);
            for op in &self.ops {
                apply_matrix_to_amps(&mut col, self.n, op.gate.matrix(), &op.targets);
            }
            u.set_column(c, &col);
        }
        Ok(u)
    }

    pub fn stats(&self) -> CircuitStats {
        let mut gates_by_label: BTreeMap<GateLabel, usize> = BTreeMap::new();
        let mut two_qubit_gates = 0;
        let mut level = vec![0usize; self.n];
        let mut depth = 0;
        for op in &self.ops {
            *gates_by_label.entry(op.gate.label()).or_insert(0) += 1;
            if op.targets.len() == 2 {
                two_qubit_gates += 1;
            }
            let layer = 1 + op.targets.iter().map(|&q| level[q]).max().unwrap_or(0);
            for &q in &op.targets {
                level[q] = layer;
            }
            depth = depth.max(layer);
        }
        CircuitStats { total_gates: self.ops.len(), two_qubit_gates, gates_by_label, depth }
    }

    /// Number of two-qubit gates straddling the boundary between qubit c−1
    /// and qubit c (valid cuts: 1 ..= n−1).
    pub fn cut_crossings(&self, cut: usize) -> Result<usize, Error> {
        if cut == 0 || cut >= self.n {
            return Err(Error::BadCut { cut, n: self.n });
        }
        Ok(self
            .ops
            .iter()
            .filter(|op| {
                op.targets.len() == 2 && {
                    let lo = *op.targets.iter().min().unwrap();
                    let hi = *op.targets.iter().max().unwrap();
                    lo < cut && cut <= hi
                }
            })
            .count())
    }
}
