//! Low-lying spectra of Pauli Hamiltonians.
//!
//! Small registers are diagonalized densely; larger ones use a restarted block
//! Lanczos iteration whose block width exceeds the requested count, so exact
//! degeneracies inside the window are resolved.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dense::{CMatrix, ZERO};
use crate::error::{Error, Result};
use crate::pauli::{mask, HamiltonianSpec, I_POWERS};

/// Registers up to this size are diagonalized densely.
pub const DENSE_SPECTRUM_WIRES: usize = 10;
/// Hard cap for the iterative solver.
pub const ITERATIVE_SPECTRUM_WIRES: usize = 20;
/// Largest number of low states the iterative solver returns.
pub const MAX_LOW_STATES: usize = 16;
/// Residual norm at which a Ritz pair is accepted.
pub const LANCZOS_TOLERANCE: f64 = 1e-10;

const SEED: u64 = 0x5eed_1a9c;

/// One Pauli term prepared for fast application.
#[derive(Debug, Clone, Copy)]
struct Term {
    weight: Complex64,
    xmask: usize,
    zmask: usize,
}

fn prepared_terms(h: &HamiltonianSpec) -> Vec<Term> {
    h.terms()
        .iter()
        .filter(|(c, _)| *c != 0.0)
        .map(|(c, op)| Term {
            weight: I_POWERS[op.phase() as usize] * *c,
            xmask: mask(op.x_bits()),
            zmask: mask(op.z_bits()),
        })
        .collect()
}

fn matvec(terms: &[Term], psi: &[Complex64]) -> Vec<Complex64> {
    (0..psi.len())
        .into_par_iter()
        .map(|b| {
            terms.iter().fold(ZERO, |acc, t| {
                let src = b ^ t.xmask;
                if (t.zmask & src).count_ones() % 2 == 0 {
                    acc + t.weight * psi[src]
                } else {
                    acc - t.weight * psi[src]
                }
            })
        })
        .collect()
}

/// Ascending eigenvalues and matching eigenvector columns of a Hermitian matrix.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let real = m.iter().all(|z| z.im == 0.0);
    let (values, vectors) = if real {
        let eig = m.map(|z| z.re).symmetric_eigen();
        (eig.eigenvalues.iter().copied().collect::<Vec<_>>(), eig.eigenvectors.map(|x| Complex64::new(x, 0.0)))
    } else {
        let eig = m.clone().symmetric_eigen();
        (eig.eigenvalues.iter().copied().collect::<Vec<_>>(), eig.eigenvectors)
    };
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let sorted = order.iter().map(|&k| values[k]).collect();
    let cols: Vec<DVector<Complex64>> = order.iter().map(|&k| vectors.column(k).into_owned()).collect();
    let vecs = if cols.is_empty() {
        CMatrix::zeros(m.nrows(), 0)
    } else {
        CMatrix::from_columns(&cols)
    };
    (sorted, vecs)
}

/// Lowest `num_low` eigenvalues, ascending, degeneracies repeated.
pub fn exact_spectrum(h: &HamiltonianSpec, num_low: usize) -> Result<Vec<f64>> {
    let wires = h.wires();
    let dim = 1usize << wires.min(usize::BITS as usize - 1);
    if num_low > dim {
        return Err(Error::Argument(format!("{num_low} states requested from a {dim}-dimensional space")));
    }
    if wires <= DENSE_SPECTRUM_WIRES {
        let (values, _) = hermitian_eigen(&h.to_matrix());
        return Ok(values[..num_low].to_vec());
    }
    if wires > ITERATIVE_SPECTRUM_WIRES {
        return Err(Error::Resource(format!(
            "{wires} wires exceed the spectrum cap of {ITERATIVE_SPECTRUM_WIRES}"
        )));
    }
    if num_low > MAX_LOW_STATES {
        return Err(Error::Argument(format!(
            "at most {MAX_LOW_STATES} low states are supported, asked for {num_low}"
        )));
    }
    iterative_spectrum(h, num_low)
}

/// The block Lanczos path regardless of register size.
pub fn iterative_spectrum(h: &HamiltonianSpec, num_low: usize) -> Result<Vec<f64>> {
    if h.wires() > ITERATIVE_SPECTRUM_WIRES {
        return Err(Error::Resource(format!(
            "{} wires exceed the spectrum cap of {ITERATIVE_SPECTRUM_WIRES}",
            h.wires()
        )));
    }
    let dim = 1usize << h.wires();
    if num_low > dim.min(MAX_LOW_STATES) {
        return Err(Error::Argument(format!("cannot return {num_low} low states")));
    }
    Ok(block_lanczos(&prepared_terms(h), dim, num_low)?.0)
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.par_iter().zip(b.par_iter()).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.par_iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthogonalizes `v` against every vector in `groups` twice (classical
/// Gram–Schmidt with a second pass); returns the norm left before normalizing.
fn orthonormalize(v: &mut [Complex64], groups: &[&[Vec<Complex64>]]) -> f64 {
    for _ in 0..2 {
        for q in groups.iter().flat_map(|g| g.iter()) {
            let c = dot(q, v);
            v.par_iter_mut().zip(q.par_iter()).for_each(|(x, y)| *x -= c * y);
        }
    }
    let n = norm(v);
    if n > 0.0 {
        v.par_iter_mut().for_each(|x| *x /= n);
    }
    n
}

/// Restarted block Lanczos; returns the eigenvalues and the residual norms.
fn block_lanczos(terms: &[Term], dim: usize, num_low: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let block = (num_low + 4).min(dim);
    let max_basis = (block * 8).max(48).min(dim);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    let mut start: Vec<Vec<Complex64>> = Vec::new();
    while start.len() < block {
        let mut v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, 0.0))
            .collect();
        if orthonormalize(&mut v, &[&start]) > 1e-8 {
            start.push(v);
        }
    }

    let mut last_residuals = Vec::new();
    for _restart in 0..500 {
        let mut basis: Vec<Vec<Complex64>> = Vec::new();
        let mut images: Vec<Vec<Complex64>> = Vec::new();
        let mut frontier = start.clone();
        for v in frontier.iter_mut() {
            if orthonormalize(v, &[&basis]) > 1e-10 {
                basis.push(v.clone());
            }
        }
        frontier = basis.clone();
        while !frontier.is_empty() && basis.len() < max_basis {
            let mut next = Vec::new();
            for v in &frontier {
                let av = matvec(terms, v);
                images.push(av.clone());
                if basis.len() + next.len() >= max_basis {
                    continue;
                }
                let mut w = av;
                if orthonormalize(&mut w, &[&basis, &next]) > 1e-10 {
                    next.push(w);
                }
            }
            basis.extend(next.iter().cloned());
            frontier = next;
        }
        // images for vectors added in the final sweep
        while images.len() < basis.len() {
            images.push(matvec(terms, &basis[images.len()]));
        }

        let k = basis.len();
        let t = DMatrix::from_fn(k, k, |r, c| dot(&basis[r], &images[c]));
        let t = (&t + t.adjoint()) * Complex64::new(0.5, 0.0);
        let (theta, y) = hermitian_eigen(&t);

        let keep = block.min(k);
        let mut ritz = Vec::with_capacity(keep);
        let mut residuals = Vec::with_capacity(keep);
        for j in 0..keep {
            let mut x = vec![ZERO; dim];
            let mut ax = vec![ZERO; dim];
            for r in 0..k {
                let c = y[(r, j)];
                if c == ZERO {
                    continue;
                }
                x.par_iter_mut().zip(basis[r].par_iter()).for_each(|(a, b)| *a += c * b);
                ax.par_iter_mut().zip(images[r].par_iter()).for_each(|(a, b)| *a += c * b);
            }
            let res: f64 = ax
                .par_iter()
                .zip(x.par_iter())
                .map(|(a, b)| (a - b * theta[j]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            residuals.push(res);
            ritz.push(x);
        }
        let converged = residuals[..num_low].iter().all(|&r| r < LANCZOS_TOLERANCE);
        if converged || k == dim {
            return Ok((theta[..num_low].to_vec(), residuals[..num_low].to_vec()));
        }
        last_residuals = residuals;
        start = ritz;
    }
    Err(Error::Resource(format!(
        "block Lanczos did not converge; residuals {last_residuals:?}"
    )))
}
