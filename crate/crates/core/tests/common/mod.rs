#![allow(dead_code)]

use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vdistill::pauli::{Pauli, PauliString};
use vdistill::sim::{Circuit, DensityMatrix};
use vdistill::C64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn trace(m: &DMatrix<C64>) -> C64 {
    (0..m.nrows()).map(|i| m[(i, i)]).sum()
}

/// Permutation matrix exchanging the two `n`-qubit halves, built bit by bit.
pub fn swap_oracle(n: usize) -> DMatrix<C64> {
    let dim = 1usize << (2 * n);
    DMatrix::from_fn(dim, dim, |r, col| {
        let mut swapped = 0;
        for q in 0..n {
            let first = (col >> (2 * n - 1 - q)) & 1;
            let second = (col >> (n - 1 - q)) & 1;
            swapped |= second << (2 * n - 1 - q);
            swapped |= first << (n - 1 - q);
        }
        if r == swapped {
            c(1.0)
        } else {
            c(0.0)
        }
    })
}

/// `Tr(O ρ²) / Tr(ρ²)`.
pub fn purified_ratio(o: &DMatrix<C64>, rho: &DMatrix<C64>) -> f64 {
    let rho2 = rho * rho;
    (trace(&(o * &rho2)) / trace(&rho2)).re
}

/// Single-qubit Pauli placed on `q` of an `n`-qubit register.
pub fn embedded(n: usize, q: usize, p: Pauli) -> DMatrix<C64> {
    let mut letters = vec![Pauli::I; n];
    letters[q] = p;
    PauliString::new(letters).matrix()
}

/// Depolarization of pair `(a, b)` written as a Pauli twirl:
/// `(1-λ)ρ + λ/16 Σ_P P ρ P` over the sixteen pair Paulis.
pub fn twirl_oracle(rho: &DMatrix<C64>, n: usize, a: usize, b: usize, lambda: f64) -> DMatrix<C64> {
    let mut twirled = DMatrix::from_element(rho.nrows(), rho.ncols(), c(0.0));
    for pa in Pauli::ALL {
        for pb in Pauli::ALL {
            let p = embedded(n, a, pa) * embedded(n, b, pb);
            twirled += &p * rho * p.adjoint();
        }
    }
    rho * c(1.0 - lambda) + twirled * c(lambda / 16.0)
}

pub fn dense(rho: &DensityMatrix) -> DMatrix<C64> {
    rho.to_matrix()
}

pub fn is_unitary(u: &DMatrix<C64>, tol: f64) -> bool {
    let id = DMatrix::<C64>::identity(u.nrows(), u.ncols());
    max_abs_diff(&(u.adjoint() * u), &id) < tol
}

/// Random circuit over the full gate set on `n ≥ 2` qubits.
pub fn circuit_strategy(n: usize, max_len: usize) -> impl Strategy<Value = Circuit> {
    prop::collection::vec((0u8..9, 0..n, 1..n, -3.2f64..3.2), 1..max_len).prop_map(move |ops| {
        let mut circ = Circuit::new(n);
        for (kind, q, shift, angle) in ops {
            let t = (q + shift) % n;
            match kind {
                0 => circ.x(q),
                1 => circ.h(q),
                2 => circ.s(q),
                3 => circ.sdag(q),
                4 => circ.rx(angle, q),
                5 => circ.ry(angle, q),
                6 => circ.rz(angle, q),
                7 => circ.cnot(q, t),
                _ => circ.cz(q, t),
            };
        }
        circ
    })
}

pub fn fixture_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}
