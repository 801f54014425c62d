//! Symplectic Pauli operators, pushing them through processes, and the
//! operator-level verification reports.
//!
//! A Pauli is stored as `i^phase · ∏_w X_w^{x_w} Z_w^{z_w}` with the X factor
//! to the left on each wire, so `Y = i·X·Z`.

use std::fmt;

use rayon::prelude::*;

use crate::code::ClassicalCode;
use crate::dense::{max_abs, CMatrix, ZERO};
use crate::error::Result;
use crate::f2::BinaryMatrix;
use crate::process::{Basis, Gate, QuantumProcess};
use crate::zx::ProductKind;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: Vec<bool>,
    z: Vec<bool>,
    /// Power of `i`, mod 4.
    phase: u8,
}

impl PauliOperator {
    pub fn identity(wires: usize) -> Self {
        Self { x: vec![false; wires], z: vec![false; wires], phase: 0 }
    }

    pub fn from_parts(x: Vec<bool>, z: Vec<bool>, phase: u8) -> Self {
        assert_eq!(x.len(), z.len());
        Self { x, z, phase: phase % 4 }
    }

    /// `∏_{w ∈ support} X_w`.
    pub fn x_on(wires: usize, support: &[usize]) -> Self {
        let mut p = Self::identity(wires);
        for &w in support {
            p.x[w] ^= true;
        }
        p
    }

    /// `∏_{w ∈ support} Z_w`.
    pub fn z_on(wires: usize, support: &[usize]) -> Self {
        let mut p = Self::identity(wires);
        for &w in support {
            p.z[w] ^= true;
        }
        p
    }

    /// Parses a word such as `"XIZY"` or `"-iZZ"`; character `k` acts on wire `k`.
    pub fn parse(word: &str) -> Option<Self> {
        let (mut phase, body) = match word {
            w if w.starts_with("-i") => (3, &w[2..]),
            w if w.starts_with("+i") => (1, &w[2..]),
            w if w.starts_with('i') => (1, &w[1..]),
            w if w.starts_with('-') => (2, &w[1..]),
            w if w.starts_with('+') => (0, &w[1..]),
            w => (0, w),
        };
        let mut p = Self::identity(body.chars().count());
        for (w, c) in body.chars().enumerate() {
            match c {
                'I' => {}
                'X' => p.x[w] = true,
                'Z' => p.z[w] = true,
                'Y' => {
                    p.x[w] = true;
                    p.z[w] = true;
                    phase += 1;
                }
                _ => return None,
            }
        }
        p.phase = phase % 4;
        Some(p)
    }

    pub fn wires(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &[bool] {
        &self.x
    }

    pub fn z_bits(&self) -> &[bool] {
        &self.z
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn is_identity(&self) -> bool {
        self.phase == 0 && self.support_is_empty()
    }

    fn support_is_empty(&self) -> bool {
        !self.x.iter().chain(self.z.iter()).any(|&b| b)
    }

    fn y_count(&self) -> usize {
        self.x.iter().zip(&self.z).filter(|&(&x, &z)| x && z).count()
    }

    /// Self-adjoint iff the phase cancels the `i` carried by each Y.
    pub fn is_hermitian(&self) -> bool {
        (self.phase as usize) % 2 == self.y_count() % 2
    }

    /// The `±1` of a Hermitian operator relative to its bare Pauli word.
    pub fn hermitian_sign(&self) -> Option<i8> {
        if !self.is_hermitian() {
            return None;
        }
        let k = (self.phase as usize + 4 - self.y_count() % 4) % 4;
        Some(if k == 0 { 1 } else { -1 })
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.wires(), rhs.wires(), "wire count mismatch");
        let swaps = self.z.iter().zip(&rhs.x).filter(|&(&z, &x)| z && x).count();
        Self {
            x: self.x.iter().zip(&rhs.x).map(|(a, b)| a ^ b).collect(),
            z: self.z.iter().zip(&rhs.z).map(|(a, b)| a ^ b).collect(),
            phase: ((self.phase as usize + rhs.phase as usize + 2 * swaps) % 4) as u8,
        }
    }

    pub fn adjoint(&self) -> Self {
        // (X^x Z^z)† = Z^z X^x = (-1)^{x·z} X^x Z^z
        let flips = self.y_count();
        Self {
            x: self.x.clone(),
            z: self.z.clone(),
            phase: ((4 - self.phase as usize + 2 * flips) % 4) as u8,
        }
    }

    pub fn scaled(&self, sign: i8) -> Self {
        let mut p = self.clone();
        if sign < 0 {
            p.phase = (p.phase + 2) % 4;
        }
        p
    }

    pub fn commutes_with(&self, rhs: &Self) -> bool {
        symplectic_form(self, rhs) == 0
    }

    /// Conjugation `G P G†`.
    pub fn conjugate(&mut self, gate: Gate) {
        match gate {
            Gate::H(w) => {
                if self.x[w] && self.z[w] {
                    self.phase = (self.phase + 2) % 4;
                }
                std::mem::swap(&mut self.x[w], &mut self.z[w]);
            }
            Gate::Cnot { control, target } => {
                self.x[target] ^= self.x[control];
                self.z[control] ^= self.z[target];
            }
        }
    }

    /// Extends with identity up to `wires`.
    pub fn padded(&self, wires: usize) -> Self {
        let mut p = self.clone();
        p.x.resize(wires, false);
        p.z.resize(wires, false);
        p
    }

    /// The factors on `wires`, in that order; other factors are dropped.
    pub fn restrict(&self, wires: &[usize]) -> Self {
        Self {
            x: wires.iter().map(|&w| self.x[w]).collect(),
            z: wires.iter().map(|&w| self.z[w]).collect(),
            phase: self.phase,
        }
    }

    /// The `(x | z)` vector of length `2·wires`.
    pub fn symplectic(&self) -> Vec<bool> {
        self.x.iter().chain(self.z.iter()).copied().collect()
    }

    /// Dense matrix, wire 0 least significant.
    pub fn to_matrix(&self) -> CMatrix {
        let n = self.wires();
        let dim = 1usize << n;
        let xmask = mask(&self.x);
        let zmask = mask(&self.z);
        let base = I_POWERS[self.phase as usize];
        let mut m = CMatrix::zeros(dim, dim);
        for b in 0..dim {
            // X^x Z^z |b⟩ = (-1)^{z·b} |b ⊕ x⟩
            let sign = if (zmask & b).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
            m[(b ^ xmask, b)] = base * sign;
        }
        m
    }
}

pub(crate) const I_POWERS: [num_complex::Complex64; 4] = [
    num_complex::Complex64::new(1.0, 0.0),
    num_complex::Complex64::new(0.0, 1.0),
    num_complex::Complex64::new(-1.0, 0.0),
    num_complex::Complex64::new(0.0, -1.0),
];

pub(crate) fn mask(bits: &[bool]) -> usize {
    bits.iter()
        .enumerate()
        .fold(0usize, |acc, (k, &b)| acc | usize::from(b) << k)
}

pub fn symplectic_form(a: &PauliOperator, b: &PauliOperator) -> u8 {
    let s = (0..a.wires())
        .filter(|&w| (a.x[w] && b.z[w]) ^ (a.z[w] && b.x[w]))
        .count();
    (s % 2) as u8
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // print with Y letters; the residual phase is relative to that word
        let k = (self.phase as usize + 4 - self.y_count() % 4) % 4;
        f.write_str(["", "i", "-", "-i"][k])?;
        for (&x, &z) in self.x.iter().zip(&self.z) {
            f.write_str(match (x, z) {
                (false, false) => "I",
                (true, false) => "X",
                (false, true) => "Z",
                (true, true) => "Y",
            })?;
        }
        Ok(())
    }
}

/// Outcome of pushing a Pauli through a process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pushed {
    /// `D · op = image · D` with `image` on the output wires.
    Image(PauliOperator),
    /// A factor on this measured wire cannot be absorbed by the postselection.
    Obstructed { wire: usize },
}

impl Pushed {
    pub fn image(&self) -> Option<&PauliOperator> {
        match self {
            Pushed::Image(p) => Some(p),
            Pushed::Obstructed { .. } => None,
        }
    }
}

/// Gate-conjugated Pauli on all wires.
fn through_gates(p: &QuantumProcess, mut op: PauliOperator) -> PauliOperator {
    for &g in p.gates() {
        op.conjugate(g);
    }
    op
}

/// Pushed ancilla stabilizers with their eigenvalue sign folded in.
fn ancilla_stabilizers(p: &QuantumProcess) -> Vec<PauliOperator> {
    let w = p.total_wires();
    p.ancillas()
        .iter()
        .map(|a| {
            let s = match a.state.basis() {
                Basis::X => PauliOperator::x_on(w, &[a.wire]),
                Basis::Z => PauliOperator::z_on(w, &[a.wire]),
            };
            through_gates(p, s.scaled(a.state.sign()))
        })
        .collect()
}

/// The bit that must vanish on a measured wire for the factor to be absorbed.
fn blocking_bit(op: &PauliOperator, wire: usize, basis: Basis) -> bool {
    match basis {
        Basis::X => op.z[wire],
        Basis::Z => op.x[wire],
    }
}

/// Strips absorbable factors on measured wires, applying the outcome signs.
fn absorb(p: &QuantumProcess, op: &PauliOperator) -> std::result::Result<PauliOperator, usize> {
    let mut sign = 1i8;
    for m in p.measurements() {
        if blocking_bit(op, m.wire, m.basis) {
            return Err(m.wire);
        }
        let present = match m.basis {
            Basis::X => op.x[m.wire],
            Basis::Z => op.z[m.wire],
        };
        if present {
            sign *= m.outcome.sign();
        }
    }
    Ok(op.restrict(p.outputs()).scaled(sign))
}

/// Pushes `op` (on the input wires) to the output side of `p`.
///
/// After conjugating through the gates the result is multiplied by pushed
/// ancilla stabilizers, chosen by a GF(2) solve so that every measured wire
/// carries only factors the postselection absorbs.
pub fn push_pauli(p: &QuantumProcess, op: &PauliOperator) -> Pushed {
    assert_eq!(op.wires(), p.n_in(), "operator must act on the process inputs");
    let pushed = through_gates(p, op.padded(p.total_wires()));
    let stabs = ancilla_stabilizers(p);
    let meas = p.measurements();

    let system = BinaryMatrix::from_fn(meas.len(), stabs.len(), |r, c| {
        blocking_bit(&stabs[c], meas[r].wire, meas[r].basis)
    });
    let rhs: Vec<bool> = meas
        .iter()
        .map(|m| blocking_bit(&pushed, m.wire, m.basis))
        .collect();
    let Some(choice) = system.solve(&rhs) else {
        let wire = meas
            .iter()
            .find(|m| blocking_bit(&pushed, m.wire, m.basis))
            .map_or(0, |m| m.wire);
        return Pushed::Obstructed { wire };
    };
    let mut full = pushed;
    for (s, &take) in stabs.iter().zip(&choice) {
        if take {
            full = full.mul(s);
        }
    }
    match absorb(p, &full) {
        Ok(image) => Pushed::Image(image),
        Err(wire) => Pushed::Obstructed { wire },
    }
}

/// Output Paulis `T` with `T · D = D`, as generators.
///
/// They come from products of ancilla stabilizers whose measured parts are
/// absorbable; the nullspace of the absorption system enumerates them.
pub fn trivial_group(p: &QuantumProcess) -> Vec<PauliOperator> {
    let stabs = ancilla_stabilizers(p);
    let meas = p.measurements();
    let system = BinaryMatrix::from_fn(meas.len(), stabs.len(), |r, c| {
        blocking_bit(&stabs[c], meas[r].wire, meas[r].basis)
    });
    crate::f2::kernel_basis(&system)
        .into_iter()
        .filter_map(|combo| {
            let mut acc = PauliOperator::identity(p.total_wires());
            for (s, &take) in stabs.iter().zip(&combo) {
                if take {
                    acc = acc.mul(s);
                }
            }
            absorb(p, &acc).ok()
        })
        .collect()
}

/// Whether `a = t · b` for some `t` in the group generated by `group`, phases included.
pub fn equal_modulo(a: &PauliOperator, b: &PauliOperator, group: &[PauliOperator]) -> bool {
    let diff = a.mul(&b.adjoint());
    if group.is_empty() {
        return diff.is_identity();
    }
    let gens = BinaryMatrix::from_bit_rows(
        &group.iter().map(|g| g.symplectic()).collect::<Vec<_>>(),
        2 * a.wires(),
    )
    .transpose();
    let Some(choice) = gens.solve(&diff.symplectic()) else {
        return false;
    };
    let mut acc = PauliOperator::identity(a.wires());
    for (g, &take) in group.iter().zip(&choice) {
        if take {
            acc = acc.mul(g);
        }
    }
    acc == diff
}

/// Status of one operator relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationStatus {
    Pass,
    /// The push landed on a different operator.
    Mismatch { got: PauliOperator },
    Obstructed { wire: usize },
    /// Symplectic check passed but the dense intertwining residual did not.
    DenseMismatch { residual_bits: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub index: usize,
    pub name: String,
    pub input: PauliOperator,
    pub expected: PauliOperator,
    pub status: RelationStatus,
    /// Whether the dense check ran (and agreed with the symplectic one).
    pub dense_checked: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub relations: Vec<Relation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(|r| r.status == RelationStatus::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Relation> {
        self.relations.iter().filter(|r| r.status != RelationStatus::Pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.relations {
            let status = match &r.status {
                RelationStatus::Pass => "pass".to_string(),
                RelationStatus::Mismatch { got } => format!("FAIL got {got}"),
                RelationStatus::Obstructed { wire } => format!("FAIL obstructed at wire {wire}"),
                RelationStatus::DenseMismatch { residual_bits } => {
                    format!("FAIL dense residual {:.3e}", f64::from_bits(*residual_bits))
                }
            };
            writeln!(f, "{:>3} {:<28} {} -> {}  {}", r.index, r.name, r.input, r.expected, status)?;
        }
        let failed = self.failures().count();
        write!(f, "{} relations, {} failed", self.relations.len(), failed)
    }
}

/// Dense relations are checked when `n_in + ancillas` stays at or below this.
pub const DENSE_VERIFY_WIRES: usize = 10;

fn check_relations(
    p: &QuantumProcess,
    specs: Vec<(String, PauliOperator, PauliOperator)>,
    dense: bool,
) -> Result<Report> {
    let group = trivial_group(p);
    let matrix = if dense { Some(crate::sim::process_matrix(p)?) } else { None };
    let mut relations: Vec<Relation> = specs
        .into_par_iter()
        .enumerate()
        .map(|(index, (name, input, expected))| {
            let mut status = match push_pauli(p, &input) {
                Pushed::Obstructed { wire } => RelationStatus::Obstructed { wire },
                Pushed::Image(img) if equal_modulo(&img, &expected, &group) => RelationStatus::Pass,
                Pushed::Image(got) => RelationStatus::Mismatch { got },
            };
            let mut dense_checked = false;
            if let Some(d) = &matrix {
                let residual = intertwining_residual(d, &input, &expected);
                let dense_ok = residual <= 1e-10;
                dense_checked = true;
                if status == RelationStatus::Pass && !dense_ok {
                    status = RelationStatus::DenseMismatch { residual_bits: residual.to_bits() };
                }
            }
            Relation { index, name, input, expected, status, dense_checked }
        })
        .collect();
    relations.sort_by_key(|r| r.index);
    Ok(Report { relations })
}

/// `max |D·op − op'·D| / max |D|`.
///
/// Both Paulis are signed permutations, so the products are index shuffles.
pub fn intertwining_residual(d: &CMatrix, op: &PauliOperator, image: &PauliOperator) -> f64 {
    let scale = max_abs(d);
    if scale == 0.0 {
        return 0.0;
    }
    // P|b⟩ = i^phase (-1)^{z·b} |b ⊕ x⟩, so ⟨b ⊕ x|P|b⟩ depends on b alone
    let coefficient = |p: &PauliOperator| {
        let (zmask, base) = (mask(&p.z), I_POWERS[p.phase as usize]);
        move |b: usize| if (zmask & b).count_ones().is_multiple_of(2) { base } else { -base }
    };
    let (c_in, c_out) = (coefficient(op), coefficient(image));
    let (x_in, x_out) = (mask(&op.x), mask(&image.x));
    (0..d.ncols())
        .flat_map(|c| (0..d.nrows()).map(move |r| (r, c)))
        .map(|(r, c)| {
            let lhs = d[(r, c ^ x_in)] * c_in(c);
            let rhs = c_out(r ^ x_out) * d[(r ^ x_out, c)];
            (lhs - rhs).norm()
        })
        .fold(0.0, f64::max)
        / scale
}

/// The relations `σ^x_i ↦ ∏_{a∈δᵀ(i)} τ^z_a` and `∏_{i∈δ(a)} σ^z_i ↦ τ^x_a`.
pub fn duality_relations(code: &ClassicalCode) -> Vec<(String, PauliOperator, PauliOperator)> {
    let (n, m) = (code.n(), code.m());
    let bits = (0..n).map(|i| {
        (
            format!("X on bit {i}"),
            PauliOperator::x_on(n, &[i]),
            PauliOperator::z_on(m, &code.bit_support(i)),
        )
    });
    let checks = (0..m).map(|a| {
        (
            format!("check {a}"),
            PauliOperator::z_on(n, &code.check_support(a)),
            PauliOperator::x_on(m, &[a]),
        )
    });
    bits.chain(checks).collect()
}

/// Verifies the KW pushing relations on `p`; dense intertwining is added for small codes.
pub fn verify_duality(code: &ClassicalCode, p: &QuantumProcess) -> Result<Report> {
    let dense = code.n() + code.m() <= DENSE_VERIFY_WIRES
        && p.total_wires() <= crate::sim::PROCESS_MATRIX_WIRES;
    check_relations(p, duality_relations(code), dense)
}

/// Operator mappings of the tensor and check merges.
pub fn product_relations(
    c1: &ClassicalCode,
    c2: &ClassicalCode,
    kind: ProductKind,
) -> Vec<(String, PauliOperator, PauliOperator)> {
    let (n1, n2) = (c1.n(), c2.n());
    let sites = n1 * n2;
    let site = |i: usize, j: usize| j * n1 + i;
    let mut out = Vec::new();
    match kind {
        ProductKind::Tensor => {
            for k in 0..sites {
                out.push((
                    format!("XX on site {k}"),
                    PauliOperator::x_on(2 * sites, &[k, sites + k]),
                    PauliOperator::x_on(sites, &[k]),
                ));
            }
            for j in 0..n2 {
                for a in 0..c1.m() {
                    let s: Vec<usize> = c1.check_support(a).iter().map(|&i| site(i, j)).collect();
                    out.push((
                        format!("row check {a} on row {j}"),
                        PauliOperator::z_on(2 * sites, &s),
                        PauliOperator::z_on(sites, &s),
                    ));
                }
            }
            for i in 0..n1 {
                for b in 0..c2.m() {
                    let s: Vec<usize> = c2.check_support(b).iter().map(|&j| site(i, j)).collect();
                    let shifted: Vec<usize> = s.iter().map(|&k| sites + k).collect();
                    out.push((
                        format!("column check {b} on column {i}"),
                        PauliOperator::z_on(2 * sites, &shifted),
                        PauliOperator::z_on(sites, &s),
                    ));
                }
            }
        }
        ProductKind::Check => {
            for k in 0..sites {
                out.push((
                    format!("alpha X on site {k}"),
                    PauliOperator::x_on(2 * sites, &[k]),
                    PauliOperator::x_on(sites, &[k]),
                ));
                out.push((
                    format!("beta X on site {k}"),
                    PauliOperator::x_on(2 * sites, &[sites + k]),
                    PauliOperator::x_on(sites, &[k]),
                ));
                out.push((
                    format!("ZZ on site {k}"),
                    PauliOperator::z_on(2 * sites, &[k, sites + k]),
                    PauliOperator::z_on(sites, &[k]),
                ));
            }
        }
    }
    out
}

pub fn verify_product(
    c1: &ClassicalCode,
    c2: &ClassicalCode,
    kind: ProductKind,
    p: &QuantumProcess,
) -> Result<Report> {
    let dense = p.total_wires() <= DENSE_VERIFY_WIRES;
    check_relations(p, product_relations(c1, c2, kind), dense)
}

/// A real linear combination of Hermitian Pauli words on a fixed register.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSpec {
    wires: usize,
    terms: Vec<(f64, PauliOperator)>,
}

impl HamiltonianSpec {
    pub fn new(wires: usize) -> Self {
        Self { wires, terms: Vec::new() }
    }

    pub fn push(&mut self, coefficient: f64, op: PauliOperator) {
        assert_eq!(op.wires(), self.wires, "term acts on the wrong register");
        assert!(op.is_hermitian(), "term {op} is not Hermitian");
        self.terms.push((coefficient, op));
    }

    pub fn wires(&self) -> usize {
        self.wires
    }

    pub fn terms(&self) -> &[(f64, PauliOperator)] {
        &self.terms
    }

    /// Whether all terms pairwise commute.
    pub fn is_commuting(&self) -> bool {
        self.terms.iter().enumerate().all(|(k, (_, a))| {
            self.terms[k + 1..].iter().all(|(_, b)| a.commutes_with(b))
        })
    }

    /// `self ∪ other` on the same register.
    pub fn extended(&self, other: &HamiltonianSpec) -> HamiltonianSpec {
        assert_eq!(self.wires, other.wires);
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out
    }

    pub fn to_matrix(&self) -> CMatrix {
        let dim = 1usize << self.wires;
        let mut m = CMatrix::from_element(dim, dim, ZERO);
        for (c, op) in &self.terms {
            m += op.to_matrix() * num_complex::Complex64::new(*c, 0.0);
        }
        m
    }
}

/// `-J Σ_a ∏_{i∈δ(a)} Z_i - h Σ_i X_i`, checks first.
pub fn build_hamiltonian(code: &ClassicalCode, j: f64, h: f64) -> HamiltonianSpec {
    let n = code.n();
    let mut spec = HamiltonianSpec::new(n);
    for a in 0..code.m() {
        spec.push(-j, PauliOperator::z_on(n, &code.check_support(a)));
    }
    for i in 0..n {
        spec.push(-h, PauliOperator::x_on(n, &[i]));
    }
    spec
}

/// The two-layer Hamiltonian on `α` (wires `0..N`) and `β` (wires `N..2N`).
///
/// `α` holds one copy of the first layer per row `j`, `β` one copy of the second
/// per column `i`, both with unit check coupling; the interlayer term is
/// `-λ Σ α^zβ^z` for the tensor product and `-λ Σ α^xβ^x` for the check product.
/// Returns `(full, coupling)` so the coupling can serve as the constraint.
pub fn build_coupled_layer(
    c1: &ClassicalCode,
    c2: &ClassicalCode,
    kind: ProductKind,
    h1: f64,
    h2: f64,
    lambda: f64,
) -> (HamiltonianSpec, HamiltonianSpec) {
    let (n1, n2) = (c1.n(), c2.n());
    let sites = n1 * n2;
    let w = 2 * sites;
    let alpha = |i: usize, j: usize| j * n1 + i;
    let beta = |i: usize, j: usize| sites + j * n1 + i;

    let mut layers = HamiltonianSpec::new(w);
    for j in 0..n2 {
        for a in 0..c1.m() {
            let s: Vec<usize> = c1.check_support(a).iter().map(|&i| alpha(i, j)).collect();
            layers.push(-1.0, PauliOperator::z_on(w, &s));
        }
        for i in 0..n1 {
            layers.push(-h1, PauliOperator::x_on(w, &[alpha(i, j)]));
        }
    }
    for i in 0..n1 {
        for b in 0..c2.m() {
            let s: Vec<usize> = c2.check_support(b).iter().map(|&j| beta(i, j)).collect();
            layers.push(-1.0, PauliOperator::z_on(w, &s));
        }
        for j in 0..n2 {
            layers.push(-h2, PauliOperator::x_on(w, &[beta(i, j)]));
        }
    }
    let mut coupling = HamiltonianSpec::new(w);
    for k in 0..sites {
        let op = match kind {
            ProductKind::Tensor => PauliOperator::z_on(w, &[k, sites + k]),
            ProductKind::Check => PauliOperator::x_on(w, &[k, sites + k]),
        };
        coupling.push(-lambda, op);
    }
    (layers.extended(&coupling), coupling)
}
