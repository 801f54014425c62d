//! End-to-end checks of the extracted processes against an independent dense
//! model of the KW map.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tanner_zx::corpus::{full_rank_codes, named_codes, verification_corpus, FULL_RANK_SEED};
use tanner_zx::dense::{fidelity, hadamard_all, max_abs, unitarity_defect};
use tanner_zx::pauli::{symplectic_form, trivial_group, verify_product, Pushed};
use tanner_zx::process::{extract_defect, extract_minimal_coupling, extract_product};
use tanner_zx::sim::{apply_process_raw, apply_pauli};
use tanner_zx::{
    kw_diagram, process_matrix, product_diagram, push_pauli, verify_duality, AncillaOverrides,
    BinaryMatrix, CMatrix, ClassicalCode, DenseState, PauliOperator, ProductKind, QuantumProcess,
};

const TEST_SEED: u64 = 0x0dd_ba11;

/// `⟨y|D|x⟩ = (-1)^{y·Hx}` up to normalization, built bit by bit.
fn kw_reference(h: &BinaryMatrix) -> CMatrix {
    let (m, n) = h.shape();
    CMatrix::from_fn(1 << m, 1 << n, |y, x| {
        let mut parity = false;
        for a in 0..m {
            let mut syndrome = false;
            for i in 0..n {
                syndrome ^= h.get(a, i) && x >> i & 1 == 1;
            }
            parity ^= syndrome && y >> a & 1 == 1;
        }
        Complex64::new(if parity { -1.0 } else { 1.0 }, 0.0)
    })
}

/// `2^{nullity}` by enumeration.
fn brute_nullity(h: &BinaryMatrix) -> usize {
    let n = h.cols();
    let count = (0..1usize << n)
        .filter(|&x| {
            let v: Vec<bool> = (0..n).map(|i| x >> i & 1 == 1).collect();
            h.mul_vec(&v).iter().all(|&b| !b)
        })
        .count();
    count.trailing_zeros() as usize
}

fn random_pauli(rng: &mut ChaCha8Rng, wires: usize) -> PauliOperator {
    let x = (0..wires).map(|_| rng.random_bool(0.5)).collect();
    let z = (0..wires).map(|_| rng.random_bool(0.5)).collect();
    PauliOperator::from_parts(x, z, 0)
}

fn random_state(rng: &mut ChaCha8Rng, wires: usize) -> DenseState {
    let amps = (0..1usize << wires)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    DenseState::new(wires, amps).unwrap()
}

fn both_realizations(code: &ClassicalCode) -> [QuantumProcess; 2] {
    [extract_defect(code), extract_minimal_coupling(code)]
}

#[test]
fn resource_counts_follow_kernel_dimensions() {
    for code in verification_corpus() {
        let h = code.parity_check();
        let k = brute_nullity(h);
        let kt = brute_nullity(&h.transpose());
        assert_eq!(extract_defect(&code).resource_counts(), (kt, k));
        assert_eq!(extract_minimal_coupling(&code).resource_counts(), (code.m(), code.n()));
    }
}

#[test]
fn processes_match_the_reference_map() {
    for code in verification_corpus() {
        let reference = kw_reference(code.parity_check());
        for p in both_realizations(&code) {
            let d = process_matrix(&p).unwrap();
            let f = fidelity(&d, &reference);
            assert!(f >= 1.0 - 1e-10, "{:?} on {:?}: fidelity {f}", p.realization(), code);
        }
        let zx = kw_diagram(&code).contract().unwrap();
        assert!(fidelity(&zx, &reference) >= 1.0 - 1e-10);
    }
}

#[test]
fn duality_relations_hold_for_both_realizations() {
    for code in verification_corpus() {
        for p in both_realizations(&code) {
            let report = verify_duality(&code, &p).unwrap();
            assert!(report.passed(), "{report}");
            let dense = code.n() + code.m() <= 10;
            assert!(report.relations.iter().all(|r| r.dense_checked == dense));
        }
    }
}

#[test]
fn invertible_codes_extract_to_unitaries() {
    for code in full_rank_codes(FULL_RANK_SEED, 20) {
        let p = extract_defect(&code);
        assert_eq!(p.resource_counts(), (0, 0));
        let u = process_matrix(&p).unwrap();
        assert!(unitarity_defect(&u) < 1e-10);
        assert!(fidelity(&u, &kw_reference(code.parity_check())) >= 1.0 - 1e-10);
    }
}

#[test]
fn pushing_preserves_commutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(TEST_SEED);
    for code in verification_corpus() {
        for p in both_realizations(&code) {
            for _ in 0..20 {
                let a = random_pauli(&mut rng, p.n_in());
                let b = random_pauli(&mut rng, p.n_in());
                if let (Pushed::Image(pa), Pushed::Image(pb)) = (push_pauli(&p, &a), push_pauli(&p, &b)) {
                    assert_eq!(symplectic_form(&pa, &pb), symplectic_form(&a, &b));
                }
            }
        }
    }
}

#[test]
fn pushed_images_intertwine_densely() {
    let mut rng = ChaCha8Rng::seed_from_u64(TEST_SEED ^ 1);
    for code in verification_corpus().into_iter().filter(|c| c.n() + c.m() <= 10) {
        let p = extract_defect(&code);
        let d = process_matrix(&p).unwrap();
        for _ in 0..10 {
            let op = random_pauli(&mut rng, p.n_in());
            match push_pauli(&p, &op) {
                Pushed::Image(img) => {
                    let diff = &d * op.to_matrix() - img.to_matrix() * &d;
                    assert!(max_abs(&diff) <= 1e-10 * max_abs(&d));
                }
                Pushed::Obstructed { .. } => {
                    // an obstructed Pauli anticommutes with some symmetry, so D·op ≠ c·D·op
                    // for every symmetry-commuting c; check it breaks the kernel structure
                    let anticommutes = code.symmetries().iter().any(|s| {
                        s.iter().filter(|&&i| op.z_bits()[i]).count() % 2 == 1
                    });
                    assert!(anticommutes, "{op} obstructed without anticommuting with a symmetry");
                }
            }
        }
    }
}

#[test]
fn trivial_group_fixes_the_map() {
    for code in verification_corpus().into_iter().filter(|c| c.n() + c.m() <= 10) {
        for p in both_realizations(&code) {
            let d = process_matrix(&p).unwrap();
            for t in trivial_group(&p) {
                assert!(max_abs(&(t.to_matrix() * &d - &d)) <= 1e-10 * max_abs(&d), "{t}");
            }
        }
    }
}

#[test]
fn minimal_coupling_gauss_laws_are_trivial() {
    // every bit's Gauss law ∏τ^z over its checks acts trivially after σ^x is pushed
    for (_, code) in named_codes() {
        let p = extract_minimal_coupling(&code);
        let d = process_matrix(&p).unwrap();
        for i in 0..code.n() {
            let x = PauliOperator::x_on(code.n(), &[i]);
            let law = PauliOperator::z_on(code.m(), &code.bit_support(i));
            let lhs = &d * x.to_matrix();
            let rhs = law.to_matrix() * &d;
            assert!(max_abs(&(lhs - rhs)) < 1e-10);
        }
    }
}

#[test]
fn state_evolution_matches_the_process_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(TEST_SEED ^ 2);
    let none = AncillaOverrides::new();
    for code in verification_corpus() {
        for p in both_realizations(&code) {
            let d = process_matrix(&p).unwrap();
            let psi = random_state(&mut rng, p.n_in());
            let phi = random_state(&mut rng, p.n_in());
            let out = apply_process_raw(&p, &psi, &none).unwrap();
            let v = CMatrix::from_column_slice(psi.amplitudes().len(), 1, psi.amplitudes());
            let expected = &d * v;
            for (a, b) in out.amplitudes().iter().zip(expected.iter()) {
                assert!((a - b).norm() < 1e-10);
            }
            // linearity: D(2ψ + iφ) = 2Dψ + iDφ
            let c = Complex64::new(0.0, 1.0);
            let combo: Vec<Complex64> = psi
                .amplitudes()
                .iter()
                .zip(phi.amplitudes())
                .map(|(x, y)| x * 2.0 + c * y)
                .collect();
            let combo = DenseState::new(p.n_in(), combo).unwrap();
            let lhs = apply_process_raw(&p, &combo, &none).unwrap();
            let dphi = apply_process_raw(&p, &phi, &none).unwrap();
            for ((l, a), b) in lhs.amplitudes().iter().zip(out.amplitudes()).zip(dphi.amplitudes()) {
                assert!((l - (a * 2.0 + c * b)).norm() < 1e-10);
            }
        }
    }
}

#[test]
fn prepared_states_are_stabilized_by_pushed_fields() {
    for code in verification_corpus() {
        let psi = tanner_zx::prepare_state(&code, &AncillaOverrides::new()).unwrap();
        for i in 0..code.n() {
            let stab = PauliOperator::z_on(code.m(), &code.bit_support(i));
            let image = apply_pauli(&stab, psi.amplitudes());
            let overlap: Complex64 =
                psi.amplitudes().iter().zip(&image).map(|(a, b)| a.conj() * b).sum();
            assert!((overlap - 1.0).norm() < 1e-10, "bit {i} of {code:?}");
        }
    }
}

#[test]
fn every_gate_matters() {
    for (name, code) in named_codes().into_iter().filter(|(_, c)| c.n() + c.m() <= 10) {
        let reference = kw_reference(code.parity_check());
        for p in both_realizations(&code) {
            for g in 0..p.gates().len() {
                let mutant = p.without_gate(g);
                let oracle_ok = fidelity(&process_matrix(&mutant).unwrap(), &reference) >= 1.0 - 1e-10;
                let relations_ok = verify_duality(&code, &mutant).unwrap().passed();
                assert!(
                    !(oracle_ok && relations_ok),
                    "{name}: removing gate {g} ({}) went unnoticed",
                    p.gates()[g]
                );
            }
        }
    }
}

#[test]
fn product_merges() {
    let codes = verification_corpus();
    let pairs = codes
        .iter()
        .zip(codes.iter().skip(3))
        .filter(|(a, b)| a.n() * b.n() <= 5);
    for (c1, c2) in pairs {
        let sites = c1.n() * c2.n();
        let tensor = process_matrix(&extract_product(c1, c2, ProductKind::Tensor)).unwrap();
        let check = process_matrix(&extract_product(c1, c2, ProductKind::Check)).unwrap();
        let conjugated = hadamard_all(sites) * &tensor * hadamard_all(2 * sites);
        assert!(fidelity(&check, &conjugated) >= 1.0 - 1e-10);
        for kind in [ProductKind::Tensor, ProductKind::Check] {
            let p = extract_product(c1, c2, kind);
            let zx = product_diagram(c1, c2, kind).contract().unwrap();
            assert!(fidelity(&zx, &process_matrix(&p).unwrap()) >= 1.0 - 1e-10);
            let report = verify_product(c1, c2, kind, &p).unwrap();
            assert!(report.passed(), "{report}");
        }
    }
}
