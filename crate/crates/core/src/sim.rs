//! Dense state-vector execution of processes with postselection.
//!
//! Basis ordering: wire 0 is the least significant bit of an amplitude index.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::code::ClassicalCode;
use crate::dense::{CMatrix, ONE, ZERO};
use crate::error::{Error, Result};
use crate::pauli::{mask, PauliOperator, I_POWERS};
use crate::process::{extract_defect, AncillaState, Basis, Gate, Outcome, QuantumProcess};

/// Largest register a state vector may span.
pub const STATE_CAP: usize = 20;
/// Largest `n_in + ancillas` for which a full process matrix is assembled.
pub const PROCESS_MATRIX_WIRES: usize = 12;
/// Postselection probabilities below this count as annihilation.
pub const ANNIHILATION_THRESHOLD: f64 = 1e-12;

/// Single-qubit state amplitudes `[⟨0|ψ⟩, ⟨1|ψ⟩]`.
pub type Qubit = [Complex64; 2];

/// Per-ancilla replacement states, keyed by wire.
pub type AncillaOverrides = BTreeMap<usize, Qubit>;

pub fn qubit(state: AncillaState) -> Qubit {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match state {
        AncillaState::Zero => [ONE, ZERO],
        AncillaState::One => [ZERO, ONE],
        AncillaState::Plus => [Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
        AncillaState::Minus => [Complex64::new(s, 0.0), Complex64::new(-s, 0.0)],
    }
}

/// `α|+⟩ + β|−⟩` in the computational basis.
pub fn x_superposition(alpha: Complex64, beta: Complex64) -> Qubit {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    [(alpha + beta) * s, (alpha - beta) * s]
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    wires: usize,
    amps: Vec<Complex64>,
}

impl DenseState {
    pub fn new(wires: usize, amps: Vec<Complex64>) -> Result<Self> {
        if wires > STATE_CAP {
            return Err(Error::Resource(format!("{wires} wires exceed the cap of {STATE_CAP}")));
        }
        if amps.len() != 1 << wires {
            return Err(Error::Dimension(format!(
                "{} amplitudes for {wires} wires",
                amps.len()
            )));
        }
        Ok(Self { wires, amps })
    }

    pub fn basis(wires: usize, index: usize) -> Result<Self> {
        if wires > STATE_CAP {
            return Err(Error::Resource(format!("{wires} wires exceed the cap of {STATE_CAP}")));
        }
        let mut amps = vec![ZERO; 1 << wires];
        if index >= amps.len() {
            return Err(Error::Argument(format!("basis index {index} out of range")));
        }
        amps[index] = ONE;
        Self::new(wires, amps)
    }

    /// `⊗_w q_w` with `qubits[0]` on wire 0.
    pub fn product(qubits: &[Qubit]) -> Result<Self> {
        let wires = qubits.len();
        if wires > STATE_CAP {
            return Err(Error::Resource(format!("{wires} wires exceed the cap of {STATE_CAP}")));
        }
        let amps = (0..1usize << wires)
            .map(|b| {
                qubits
                    .iter()
                    .enumerate()
                    .fold(ONE, |acc, (w, q)| acc * q[b >> w & 1])
            })
            .collect();
        Self::new(wires, amps)
    }

    pub fn uniform(wires: usize, state: AncillaState) -> Result<Self> {
        Self::product(&vec![qubit(state); wires])
    }

    pub fn wires(&self) -> usize {
        self.wires
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_squared(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm_squared().sqrt();
        Self {
            wires: self.wires,
            amps: self.amps.iter().map(|a| a / n).collect(),
        }
    }

    /// `|⟨a|b⟩|² / (⟨a|a⟩⟨b|b⟩)`: 1 iff the states agree up to a global factor.
    pub fn fidelity(&self, other: &DenseState) -> f64 {
        assert_eq!(self.wires, other.wires);
        let inner: Complex64 = self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum();
        inner.norm_sqr() / (self.norm_squared() * other.norm_squared())
    }

    /// `⟨ψ|P|ψ⟩ / ⟨ψ|ψ⟩`.
    pub fn expectation(&self, op: &PauliOperator) -> Complex64 {
        let applied = apply_pauli(op, &self.amps);
        let inner: Complex64 = self.amps.iter().zip(&applied).map(|(a, b)| a.conj() * b).sum();
        inner / self.norm_squared()
    }
}

/// `P ψ` for a Pauli acting on the whole register.
pub fn apply_pauli(op: &PauliOperator, psi: &[Complex64]) -> Vec<Complex64> {
    let xm = mask(op.x_bits());
    let zm = mask(op.z_bits());
    let phase = I_POWERS[op.phase() as usize];
    (0..psi.len())
        .into_par_iter()
        .map(|b| {
            let src = b ^ xm;
            let sign = if (zm & src).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
            phase * sign * psi[src]
        })
        .collect()
}

fn apply_gate(amps: &mut [Complex64], gate: Gate) {
    match gate {
        Gate::H(w) => {
            let bit = 1usize << w;
            let s = std::f64::consts::FRAC_1_SQRT_2;
            for idx in 0..amps.len() {
                if idx & bit == 0 {
                    let (a, b) = (amps[idx], amps[idx | bit]);
                    amps[idx] = (a + b) * s;
                    amps[idx | bit] = (a - b) * s;
                }
            }
        }
        Gate::Cnot { control, target } => {
            let (c, t) = (1usize << control, 1usize << target);
            for idx in 0..amps.len() {
                if idx & c != 0 && idx & t == 0 {
                    amps.swap(idx, idx | t);
                }
            }
        }
    }
}

/// Runs `p` on `input` without renormalizing, so scalars compose.
pub fn apply_process_raw(
    p: &QuantumProcess,
    input: &DenseState,
    overrides: &AncillaOverrides,
) -> Result<DenseState> {
    if input.wires() != p.n_in() {
        return Err(Error::Dimension(format!(
            "state has {} wires, process expects {}",
            input.wires(),
            p.n_in()
        )));
    }
    let total = p.total_wires();
    if total > STATE_CAP {
        return Err(Error::Resource(format!(
            "process spans {total} wires, beyond the cap of {STATE_CAP}"
        )));
    }
    if let Some(w) = overrides.keys().find(|w| !p.ancillas().iter().any(|a| a.wire == **w)) {
        return Err(Error::Argument(format!("override for wire {w}, which is not an ancilla")));
    }

    let mut anc: Vec<(usize, Qubit)> = p
        .ancillas()
        .iter()
        .map(|a| (a.wire, overrides.get(&a.wire).copied().unwrap_or_else(|| qubit(a.state))))
        .collect();
    anc.sort_by_key(|&(w, _)| w);

    let n_in = p.n_in();
    let mut amps = vec![ZERO; 1 << total];
    for (idx, slot) in amps.iter_mut().enumerate() {
        let x = idx & ((1 << n_in) - 1);
        let mut v = input.amplitudes()[x];
        for &(w, q) in &anc {
            v *= q[idx >> w & 1];
        }
        *slot = v;
    }
    for &g in p.gates() {
        apply_gate(&mut amps, g);
    }

    let mut fixed = 0usize;
    for m in p.measurements() {
        if m.basis == Basis::X {
            apply_gate(&mut amps, Gate::H(m.wire));
        }
        if m.outcome == Outcome::Minus {
            fixed |= 1 << m.wire;
        }
    }
    let outputs = p.outputs();
    let out: Vec<Complex64> = (0..1usize << outputs.len())
        .map(|y| {
            let idx = outputs
                .iter()
                .enumerate()
                .fold(fixed, |acc, (k, &w)| acc | (y >> k & 1) << w);
            amps[idx]
        })
        .collect();
    DenseState::new(outputs.len(), out)
}

/// Runs `p` on `input` and renormalizes; returns the state and the postselection probability.
pub fn apply_process(
    p: &QuantumProcess,
    input: &DenseState,
    overrides: &AncillaOverrides,
) -> Result<(DenseState, f64)> {
    let raw = apply_process_raw(p, input, overrides)?;
    let probability = raw.norm_squared() / input.norm_squared();
    if probability.is_nan() || probability < ANNIHILATION_THRESHOLD {
        return Err(Error::Annihilated { probability });
    }
    Ok((raw.normalized(), probability))
}

/// The `2^{n_out} x 2^{n_in}` linear map realized by `p`.
pub fn process_matrix(p: &QuantumProcess) -> Result<CMatrix> {
    if p.total_wires() > PROCESS_MATRIX_WIRES {
        return Err(Error::Resource(format!(
            "process matrix needs n_in + ancillas <= {PROCESS_MATRIX_WIRES}, got {}",
            p.total_wires()
        )));
    }
    let none = AncillaOverrides::new();
    let columns: Vec<DenseState> = (0..1usize << p.n_in())
        .into_par_iter()
        .map(|x| apply_process_raw(p, &DenseState::basis(p.n_in(), x)?, &none))
        .collect::<Result<_>>()?;
    Ok(CMatrix::from_fn(1 << p.n_out(), columns.len(), |r, c| columns[c].amplitudes()[r]))
}

/// Runs the defect process of `code` on `|+⟩^n`.
pub fn prepare_state(code: &ClassicalCode, overrides: &AncillaOverrides) -> Result<DenseState> {
    let p = extract_defect(code);
    let input = DenseState::uniform(code.n(), AncillaState::Plus)?;
    Ok(apply_process(&p, &input, overrides)?.0)
}
