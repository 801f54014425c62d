//! Quantum processes: ancilla preparation, a CNOT/Hadamard circuit, and
//! postselected single-qubit measurements.
//!
//! Wires `0..n_in` carry the inputs and ancillas occupy `n_in..n_in+ancillas`.
//! Every wire ends either as an output or in a measurement.

use std::fmt;

use crate::code::ClassicalCode;
use crate::error::{Error, Result};
use crate::f2::{rref_with_trace, RowOp};
use crate::zx::ProductKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    X,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AncillaState {
    Plus,
    Minus,
    Zero,
    One,
}

impl AncillaState {
    pub fn basis(self) -> Basis {
        match self {
            Self::Plus | Self::Minus => Basis::X,
            Self::Zero | Self::One => Basis::Z,
        }
    }

    /// Eigenvalue of the basis Pauli on this state.
    pub fn sign(self) -> i8 {
        match self {
            Self::Plus | Self::Zero => 1,
            Self::Minus | Self::One => -1,
        }
    }
}

/// Postselected eigenvalue of the measured Pauli.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub fn sign(self) -> i8 {
        match self {
            Self::Plus => 1,
            Self::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    Cnot { control: usize, target: usize },
}

impl Gate {
    pub fn wires(&self) -> Vec<usize> {
        match *self {
            Gate::H(w) => vec![w],
            Gate::Cnot { control, target } => vec![control, target],
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(w) => write!(f, "H {w}"),
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ancilla {
    pub wire: usize,
    pub state: AncillaState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Measurement {
    pub wire: usize,
    pub basis: Basis,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WireSource {
    Input,
    Ancilla,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WireSink {
    Output,
    Measured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Wire {
    pub id: usize,
    pub source: WireSource,
    pub sink: WireSink,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Realization {
    Defect,
    MinimalCoupling,
    TensorMerge,
    CheckMerge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumProcess {
    n_in: usize,
    ancillas: Vec<Ancilla>,
    gates: Vec<Gate>,
    measurements: Vec<Measurement>,
    outputs: Vec<usize>,
    realization: Realization,
}

impl QuantumProcess {
    /// Validating constructor.
    pub fn new(
        n_in: usize,
        ancillas: Vec<Ancilla>,
        gates: Vec<Gate>,
        measurements: Vec<Measurement>,
        outputs: Vec<usize>,
        realization: Realization,
    ) -> Result<Self> {
        let total = n_in + ancillas.len();
        let mut anc_wires: Vec<usize> = ancillas.iter().map(|a| a.wire).collect();
        anc_wires.sort_unstable();
        if anc_wires != (n_in..total).collect::<Vec<_>>() {
            return Err(Error::Argument(format!(
                "ancilla wires must be exactly {n_in}..{total}, got {anc_wires:?}"
            )));
        }
        for g in &gates {
            let w = g.wires();
            if w.iter().any(|&w| w >= total) {
                return Err(Error::Argument(format!("gate `{g}` references an undeclared wire")));
            }
            if w.len() == 2 && w[0] == w[1] {
                return Err(Error::Argument(format!("gate `{g}` has control equal to target")));
            }
        }
        let mut seen = vec![false; total];
        for w in measurements.iter().map(|m| m.wire).chain(outputs.iter().copied()) {
            if w >= total {
                return Err(Error::Argument(format!("wire {w} is not declared")));
            }
            if std::mem::replace(&mut seen[w], true) {
                return Err(Error::Argument(format!("wire {w} ends more than once")));
            }
        }
        if let Some(w) = seen.iter().position(|&s| !s) {
            return Err(Error::Argument(format!("wire {w} is neither measured nor output")));
        }
        Ok(Self {
            n_in,
            ancillas,
            gates,
            measurements,
            outputs,
            realization,
        })
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.outputs.len()
    }

    pub fn total_wires(&self) -> usize {
        self.n_in + self.ancillas.len()
    }

    pub fn ancillas(&self) -> &[Ancilla] {
        &self.ancillas
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn measurements(&self) -> &[Measurement] {
        &self.measurements
    }

    /// Wire carrying output `k`.
    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn realization(&self) -> Realization {
        self.realization
    }

    pub fn wires(&self) -> Vec<Wire> {
        let measured: Vec<usize> = self.measurements.iter().map(|m| m.wire).collect();
        (0..self.total_wires())
            .map(|id| Wire {
                id,
                source: if id < self.n_in { WireSource::Input } else { WireSource::Ancilla },
                sink: if measured.contains(&id) { WireSink::Measured } else { WireSink::Output },
            })
            .collect()
    }

    /// `(ancillas, measurements)`.
    pub fn resource_counts(&self) -> (usize, usize) {
        (self.ancillas.len(), self.measurements.len())
    }

    /// The same process with gate `index` deleted.
    pub fn without_gate(&self, index: usize) -> Self {
        let mut p = self.clone();
        p.gates.remove(index);
        p
    }

    /// The same process with every ancilla prepared in `state`.
    pub fn with_ancilla_state(&self, state: AncillaState) -> Self {
        let mut p = self.clone();
        for a in &mut p.ancillas {
            a.state = state;
        }
        p
    }
}

/// Minimal-resource realization of the KW map: `k^T` ancillas, `k` measurements.
///
/// With `H = E^{-1} Π^T S^T Ẽ^{-T}`, where `E` reduces `H` and `Ẽ` reduces the
/// transpose of its echelon form, the circuit applies `Ẽ^{-T}` as CNOTs on the
/// bits, keeps the surviving bits as the pivot checks, measures the rest, adds
/// a `|0⟩` ancilla per zero row, applies `E^{-1}` and finally a Hadamard on each
/// output. Output `k` is check `k`. Ancillas sit before the Hadamards, so
/// the default `|0⟩` reads as `|+⟩` in the output frame.
pub fn extract_defect(code: &ClassicalCode) -> QuantumProcess {
    let (m, n) = (code.m(), code.n());
    let outer = rref_with_trace(code.parity_check());
    let inner = rref_with_trace(&outer.matrix.transpose());
    let r = outer.rank();
    debug_assert_eq!(inner.rank(), r);

    let zero_checks = outer.zero_rows();
    let mut check_wire = vec![usize::MAX; m];
    for p in 0..r {
        check_wire[outer.pivot_rows()[p]] = inner.pivot_rows()[p];
    }
    for (k, &a) in zero_checks.iter().enumerate() {
        check_wire[a] = n + k;
    }

    let mut gates = Vec::new();
    for &RowOp { target, source } in &inner.trace.ops {
        gates.push(Gate::Cnot { control: target, target: source });
    }
    for &RowOp { target, source } in outer.trace.ops.iter().rev() {
        gates.push(Gate::Cnot {
            control: check_wire[source],
            target: check_wire[target],
        });
    }
    gates.extend(check_wire.iter().map(|&w| Gate::H(w)));

    let ancillas = (0..zero_checks.len())
        .map(|k| Ancilla { wire: n + k, state: AncillaState::Zero })
        .collect();
    let mut measured: Vec<usize> = inner.zero_rows().to_vec();
    measured.sort_unstable();
    let measurements = measured
        .into_iter()
        .map(|wire| Measurement { wire, basis: Basis::X, outcome: Outcome::Plus })
        .collect();

    QuantumProcess::new(n, ancillas, gates, measurements, check_wire, Realization::Defect)
        .expect("defect extraction yields a well-formed process")
}

/// Gauge-field realization: one ancilla per check accumulates its parity,
/// then every bit is measured in the X basis.
pub fn extract_minimal_coupling(code: &ClassicalCode) -> QuantumProcess {
    let (m, n) = (code.m(), code.n());
    let ancillas = (0..m)
        .map(|a| Ancilla { wire: n + a, state: AncillaState::Zero })
        .collect();
    let mut gates: Vec<Gate> = (0..n)
        .flat_map(|i| {
            code.bit_support(i)
                .into_iter()
                .map(move |a| Gate::Cnot { control: i, target: n + a })
        })
        .collect();
    gates.extend((0..m).map(|a| Gate::H(n + a)));
    let measurements = (0..n)
        .map(|wire| Measurement { wire, basis: Basis::X, outcome: Outcome::Plus })
        .collect();
    QuantumProcess::new(
        n,
        ancillas,
        gates,
        measurements,
        (n..n + m).collect(),
        Realization::MinimalCoupling,
    )
    .expect("minimal coupling yields a well-formed process")
}

/// Pairwise merge of two layers `α` (wires `0..N`) and `β` (wires `N..2N`).
pub fn extract_product(c1: &ClassicalCode, c2: &ClassicalCode, kind: ProductKind) -> QuantumProcess {
    let sites = c1.n() * c2.n();
    let (gates, basis, realization): (Vec<Gate>, _, _) = match kind {
        ProductKind::Tensor => (
            (0..sites).map(|k| Gate::Cnot { control: k, target: sites + k }).collect(),
            Basis::Z,
            Realization::TensorMerge,
        ),
        ProductKind::Check => (
            (0..sites).map(|k| Gate::Cnot { control: sites + k, target: k }).collect(),
            Basis::X,
            Realization::CheckMerge,
        ),
    };
    let measurements = (sites..2 * sites)
        .map(|wire| Measurement { wire, basis, outcome: Outcome::Plus })
        .collect();
    QuantumProcess::new(2 * sites, Vec::new(), gates, measurements, (0..sites).collect(), realization)
        .expect("product merge yields a well-formed process")
}
