//! Non-perturbative effective Hamiltonians for strongly constrained models.
//!
//! The low eigenspace of the full Hamiltonian is rotated onto the ground space
//! of the commuting constraint by the direct rotation (the unitary closest to
//! the identity doing so); the rotated Hamiltonian restricted there is exact
//! and its Pauli coefficients are what degenerate perturbation theory
//! approximates order by order.

use num_complex::Complex64;

use crate::code::ClassicalCode;
use crate::dense::{CMatrix, ONE, ZERO};
use crate::error::{Error, Result};
use crate::f2::BinaryMatrix;
use crate::pauli::{build_coupled_layer, HamiltonianSpec, PauliOperator};
use crate::sim::apply_pauli;
use crate::spectrum::{hermitian_eigen, DENSE_SPECTRUM_WIRES};
use crate::zx::ProductKind;

/// Below this smallest singular value of the overlap the rotation is undefined.
pub const OVERLAP_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct EffectiveBlock {
    /// Basis state `b` whose projection seeded each constrained basis vector.
    pub labels: Vec<usize>,
    /// Orthonormal constrained basis as columns.
    pub basis: CMatrix,
    /// Effective Hamiltonian in that basis.
    pub matrix: CMatrix,
    /// Exact low eigenvalues of the full Hamiltonian.
    pub energies: Vec<f64>,
    /// Largest constraint coupling magnitude.
    pub lambda: f64,
    /// Sine of the largest principal angle between the two subspaces.
    pub residual: f64,
}

impl EffectiveBlock {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `max |H - H†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = &self.matrix - self.matrix.adjoint();
        d.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigen(&self.matrix).0
    }

    /// `op` restricted to the constrained basis; `op` must preserve the constraint.
    pub fn restrict(&self, op: &PauliOperator) -> CMatrix {
        let cols: Vec<Vec<Complex64>> = (0..self.dim())
            .map(|c| {
                let col: Vec<Complex64> = self.basis.column(c).iter().copied().collect();
                apply_pauli(op, &col)
            })
            .collect();
        let applied = CMatrix::from_fn(self.basis.nrows(), self.dim(), |r, c| cols[c][r]);
        self.basis.adjoint() * applied
    }

    /// Coefficient of `op` in the Pauli expansion of the effective Hamiltonian.
    pub fn coefficient(&self, op: &PauliOperator) -> f64 {
        let o = self.restrict(op);
        let t: Complex64 = (o.adjoint() * &self.matrix).trace();
        t.re / self.dim() as f64
    }
}

/// Dimension of the joint ground space of a commuting, sign-consistent constraint.
pub fn constrained_dimension(constraint: &HamiltonianSpec) -> usize {
    let active: Vec<Vec<bool>> = constraint
        .terms()
        .iter()
        .filter(|(c, _)| *c != 0.0)
        .map(|(_, op)| op.symplectic())
        .collect();
    let rank = BinaryMatrix::from_bit_rows(&active, 2 * constraint.wires()).rank();
    1usize << (constraint.wires() - rank)
}

fn project(constraint: &HamiltonianSpec, psi: Vec<Complex64>) -> Vec<Complex64> {
    constraint
        .terms()
        .iter()
        .filter(|(c, _)| *c != 0.0)
        .fold(psi, |v, (c, op)| {
            // ground space of c·P is the −sign(c) eigenspace of P
            let s = -c.signum();
            let pv = apply_pauli(op, &v);
            v.iter().zip(&pv).map(|(a, b)| (a + b * s) * 0.5).collect()
        })
}

/// Exact effective Hamiltonian of `h` on the ground space of `constraint`.
pub fn effective_block(
    h: &HamiltonianSpec,
    constraint: &HamiltonianSpec,
    num_states: usize,
) -> Result<EffectiveBlock> {
    if h.wires() != constraint.wires() {
        return Err(Error::Dimension("constraint acts on a different register".into()));
    }
    if h.wires() > DENSE_SPECTRUM_WIRES {
        return Err(Error::Resource(format!(
            "effective blocks need full diagonalization, at most {DENSE_SPECTRUM_WIRES} wires"
        )));
    }
    if !constraint.is_commuting() {
        return Err(Error::Argument("constraint terms do not commute".into()));
    }
    let d = constrained_dimension(constraint);
    if num_states != d {
        return Err(Error::Argument(format!(
            "constraint ground space has dimension {d}, asked for {num_states} states"
        )));
    }
    let dim = 1usize << h.wires();

    // Gram–Schmidt over projected basis states, in ascending order
    let mut labels = Vec::with_capacity(d);
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    for b in 0..dim {
        if columns.len() == d {
            break;
        }
        let mut e = vec![ZERO; dim];
        e[b] = ONE;
        let mut v = project(constraint, e);
        for _ in 0..2 {
            for q in &columns {
                let c: Complex64 = q.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                v.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
            }
        }
        let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-8 {
            v.iter_mut().for_each(|x| *x /= n);
            columns.push(v);
            labels.push(b);
        }
    }
    if columns.len() < d {
        return Err(Error::Argument("constraint signs are inconsistent".into()));
    }
    let basis = CMatrix::from_fn(dim, d, |r, c| columns[c][r]);

    let (values, vectors) = hermitian_eigen(&h.to_matrix());
    let low = vectors.columns(0, d).into_owned();
    let overlap = basis.adjoint() * &low;
    let svd = overlap.svd(true, true);
    let smallest = svd.singular_values.iter().copied().fold(f64::INFINITY, f64::min);
    if smallest < OVERLAP_FLOOR {
        return Err(Error::Degenerate { overlap: smallest });
    }
    let w = svd.u.expect("u requested") * svd.v_t.expect("v requested");
    let energies: Vec<f64> = values[..d].to_vec();
    let diag = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        d,
        energies.iter().map(|&e| Complex64::new(e, 0.0)),
    ));
    let matrix = &w * diag * w.adjoint();
    let lambda = constraint.terms().iter().map(|(c, _)| c.abs()).fold(0.0, f64::max);
    let residual = (1.0 - smallest.min(1.0).powi(2)).max(0.0).sqrt();
    Ok(EffectiveBlock { labels, basis, matrix, energies, lambda, residual })
}

/// Emergent operator whose effective amplitude is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Probe {
    /// A single merged-site flip: `α^xβ^x` (tensor) or `α^x` (check) on site 0.
    Flip,
    /// The plaquette `∏ α^zβ^z` over `δ¹(0) × δ²(0)` (check product only).
    Plaquette,
}

pub fn probe_operator(
    c1: &ClassicalCode,
    c2: &ClassicalCode,
    kind: ProductKind,
    probe: Probe,
) -> Result<PauliOperator> {
    let n1 = c1.n();
    let sites = n1 * c2.n();
    let w = 2 * sites;
    match (probe, kind) {
        (Probe::Flip, ProductKind::Tensor) => Ok(PauliOperator::x_on(w, &[0, sites])),
        (Probe::Flip, ProductKind::Check) => Ok(PauliOperator::x_on(w, &[0])),
        (Probe::Plaquette, ProductKind::Check) => {
            if c1.m() == 0 || c2.m() == 0 {
                return Err(Error::Argument("plaquette probe needs a check in each code".into()));
            }
            let support: Vec<usize> = c2
                .check_support(0)
                .iter()
                .flat_map(|&j| c1.check_support(0).into_iter().map(move |i| j * n1 + i))
                .flat_map(|k| [k, sites + k])
                .collect();
            Ok(PauliOperator::z_on(w, &support))
        }
        (Probe::Plaquette, ProductKind::Tensor) => Err(Error::Argument(
            "the plaquette probe applies to the check product".into(),
        )),
    }
}

/// Effective amplitude of `probe`, i.e. minus its coefficient in `H_eff`, for
/// each `λ`.
pub fn coupled_layer_scan(
    c1: &ClassicalCode,
    c2: &ClassicalCode,
    kind: ProductKind,
    h1: f64,
    h2: f64,
    lambdas: &[f64],
    probe: Probe,
) -> Result<Vec<(f64, f64)>> {
    let op = probe_operator(c1, c2, kind, probe)?;
    lambdas
        .iter()
        .map(|&lambda| {
            let (full, coupling) = build_coupled_layer(c1, c2, kind, h1, h2, lambda);
            let block = effective_block(&full, &coupling, constrained_dimension(&coupling))?;
            Ok((lambda, -block.coefficient(&op)))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLaw {
    pub exponent: f64,
    /// Prefactor `c` in `value ≈ c · λ^exponent`, signed like the samples.
    pub constant: f64,
    /// Largest relative deviation of a sample from the fit.
    pub residual: f64,
}

/// Least-squares fit of `log|value|` against `log λ`.
pub fn fit_power_law(samples: &[(f64, f64)]) -> Result<PowerLaw> {
    if samples.len() < 2 {
        return Err(Error::Argument("a power-law fit needs at least two samples".into()));
    }
    if samples.iter().any(|&(l, v)| v == 0.0 || !v.is_finite() || l <= 0.0) {
        return Err(Error::Argument("samples must have positive λ and nonzero values".into()));
    }
    let sign = samples[0].1.signum();
    if samples.iter().any(|&(_, v)| v.signum() != sign) {
        return Err(Error::Argument("samples change sign".into()));
    }
    let n = samples.len() as f64;
    let xs: Vec<f64> = samples.iter().map(|&(l, _)| l.ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|&(_, v)| v.abs().ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Argument("all λ values coincide".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let exponent = sxy / sxx;
    let constant = (my - exponent * mx).exp();
    let residual = samples
        .iter()
        .map(|&(l, v)| ((constant * l.powf(exponent) - v.abs()) / v.abs()).abs())
        .fold(0.0, f64::max);
    Ok(PowerLaw { exponent, constant: sign * constant, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_laws() {
        let fit = fit_power_law(&[(10.0, 1e-4), (20.0, 6.25e-6), (40.0, 3.90625e-7)]).unwrap();
        assert!((fit.exponent + 4.0).abs() < 1e-9 && (fit.constant - 1.0).abs() < 1e-9);
        let fit = fit_power_law(&[(10.0, 0.1), (100.0, 0.01)]).unwrap();
        assert!((fit.exponent + 1.0).abs() < 1e-12);
        assert!(fit_power_law(&[(1.0, 0.0), (2.0, 1.0)]).is_err());
    }

    #[test]
    fn commuting_limit_is_projected_hamiltonian() {
        let ring2 = ClassicalCode::ising_ring(2);
        let (full, coupling) = build_coupled_layer(&ring2, &ring2, ProductKind::Tensor, 0.0, 0.0, 1e6);
        let d = constrained_dimension(&coupling);
        assert_eq!(d, 16);
        let block = effective_block(&full, &coupling, d).unwrap();
        assert!(block.hermiticity_defect() < 1e-10);
        // P H P on the constrained basis
        let pp = block.basis.adjoint() * full.to_matrix() * &block.basis;
        let diff = &pp - &block.matrix;
        assert!(diff.iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-6);
        assert!(block.residual < 1e-10);
    }

    #[test]
    fn block_spectrum_matches_exact_low_spectrum() {
        let ring2 = ClassicalCode::ising_ring(2);
        let (full, coupling) = build_coupled_layer(&ring2, &ring2, ProductKind::Tensor, 1.0, 0.7, 30.0);
        let block = effective_block(&full, &coupling, 16).unwrap();
        for (a, b) in block.eigenvalues().iter().zip(&block.energies) {
            assert!((a - b).abs() < 1e-8);
        }
        assert!(matches!(effective_block(&full, &coupling, 8), Err(Error::Argument(_))));
    }

    #[test]
    fn tensor_flip_is_second_order() {
        let ring2 = ClassicalCode::ising_ring(2);
        let scan = coupled_layer_scan(&ring2, &ring2, ProductKind::Tensor, 1.0, 1.0, &[100.0], Probe::Flip).unwrap();
        let rel = (scan[0].1 * 100.0 - 1.0).abs();
        assert!(rel < 0.02, "h_eff·λ = {}", scan[0].1 * 100.0);
    }

    #[test]
    fn check_flip_is_first_order() {
        // α^x and β^x both map to the merged flip: h_eff = h1 + h2
        let unit = ClassicalCode::from_matrix(BinaryMatrix::zeros(0, 1));
        let scan = coupled_layer_scan(&unit, &unit, ProductKind::Check, 0.3, 0.5, &[200.0], Probe::Flip).unwrap();
        assert!((scan[0].1 - 0.8).abs() < 1e-8);
    }

    #[test]
    fn degenerate_overlap_is_reported() {
        // the constraint ground state is orthogonal to the true ground state
        let mut h = HamiltonianSpec::new(1);
        h.push(-1.0, PauliOperator::z_on(1, &[0]));
        let mut c = HamiltonianSpec::new(1);
        c.push(1.0, PauliOperator::z_on(1, &[0]));
        assert!(matches!(effective_block(&h, &c, 1), Err(Error::Degenerate { .. })));
    }
}
