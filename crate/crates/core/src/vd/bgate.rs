use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use serde::{Deserialize, Serialize};

use crate::error::{Result, VdError};
use crate::sim::Circuit;
use crate::C64;

/// Swap-diagonalizing circuit over every `(i, i+n)` pair plus the per-pair
/// eigenvalue tables read off by conjugation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BGatePlan {
    pub n: usize,
    pub circuit: Circuit,
    /// Pair-swap eigenvalue for local outcome `2·bit(i) + bit(i+n)`.
    pub swap_eigen: [f64; 4],
    /// Eigenvalue of `(Z⊗I + I⊗Z)/2 · SWAP` for the same local outcome.
    pub sym_z_eigen: [f64; 4],
}

fn append_pair(c: &mut Circuit, q0: usize, q1: usize) {
    c.rx(-FRAC_PI_2, q0)
        .rx(FRAC_PI_2, q1)
        .h(q0)
        .cnot(q0, q1)
        .rx(FRAC_PI_4, q0)
        .rz(FRAC_PI_4, q1)
        .cnot(q0, q1)
        .h(q0)
        .rx(-FRAC_PI_2, q1)
        .rx(FRAC_PI_2, q0);
}

/// Diagonal of `B · M · B†`; errors if the conjugate is not diagonal.
fn conjugated_diagonal(b: &nalgebra::DMatrix<C64>, m: &nalgebra::DMatrix<C64>) -> Result<[f64; 4]> {
    let c = b * m * b.adjoint();
    let mut diag = [0.0; 4];
    for r in 0..4 {
        for k in 0..4 {
            if r != k && c[(r, k)].norm() > 1e-10 {
                return Err(VdError::Numeric(
                    "B gate does not diagonalize the pair operator".into(),
                ));
            }
        }
        if c[(r, r)].im.abs() > 1e-10 {
            return Err(VdError::Numeric(
                "complex eigenvalue from B gate conjugation".into(),
            ));
        }
        diag[r] = c[(r, r)].re;
        if (diag[r] - diag[r].round()).abs() < 1e-10 {
            diag[r] = diag[r].round();
        }
    }
    Ok(diag)
}

pub fn build_b_gate(n: usize) -> Result<BGatePlan> {
    if n == 0 {
        return Err(VdError::domain("B gate needs at least one pair"));
    }
    let mut pair = Circuit::new(2);
    append_pair(&mut pair, 0, 1);
    let b = pair.unitary();
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let swap = nalgebra::DMatrix::from_fn(4, 4, |r, c| {
        let swapped = ((c & 1) << 1) | (c >> 1);
        if r == swapped {
            one
        } else {
            zero
        }
    });
    let sym_z = nalgebra::DMatrix::from_fn(4, 4, |r, c| {
        if r == c {
            let z = |bit: usize| 1.0 - 2.0 * bit as f64;
            C64::new((z(r >> 1) + z(r & 1)) / 2.0, 0.0)
        } else {
            zero
        }
    }) * &swap;
    let swap_eigen = conjugated_diagonal(&b, &swap)?;
    let sym_z_eigen = conjugated_diagonal(&b, &sym_z)?;

    let mut circuit = Circuit::new(2 * n).with_label("b gate");
    for i in 0..n {
        append_pair(&mut circuit, i, i + n);
    }
    Ok(BGatePlan {
        n,
        circuit,
        swap_eigen,
        sym_z_eigen,
    })
}

impl BGatePlan {
    fn local(&self, outcome: usize, i: usize) -> usize {
        let w = 2 * self.n;
        2 * ((outcome >> (w - 1 - i)) & 1) + ((outcome >> (w - 1 - i - self.n)) & 1)
    }

    /// Eigenvalue of `S₂` on the B-basis outcome.
    pub fn s2_eigenvalue(&self, outcome: usize) -> f64 {
        (0..self.n)
            .map(|i| self.swap_eigen[self.local(outcome, i)])
            .product()
    }

    /// Eigenvalue of `Z_sym · S₂` for `Z` on base qubit `qubit`.
    pub fn one_local_z_eigenvalue(&self, outcome: usize, qubit: usize) -> f64 {
        (0..self.n)
            .map(|i| {
                let l = self.local(outcome, i);
                if i == qubit {
                    self.sym_z_eigen[l]
                } else {
                    self.swap_eigen[l]
                }
            })
            .product()
    }
}
