use nalgebra::{DMatrix, SymmetricEigen};

use super::{PauliString, PauliSum};
use crate::error::{Result, VdError};
use crate::C64;

const PRUNE: f64 = 1e-12;
const MAX_DIAG_QUBITS: usize = 10;

/// Expand a Hermitian matrix in the Pauli basis: `c_P = Tr(P M) / 2^k`.
///
/// Coefficients below `1e-12` are dropped; the identity coefficient becomes
/// the constant of the returned sum.
pub fn pauli_decompose(m: &DMatrix<C64>) -> Result<PauliSum> {
    let dim = m.nrows();
    if dim != m.ncols() || dim == 0 || !dim.is_power_of_two() {
        return Err(VdError::domain(format!(
            "{}x{} is not a square power-of-two matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    let k = dim.trailing_zeros() as usize;
    if k > MAX_DIAG_QUBITS {
        return Err(VdError::Capacity(format!(
            "{k} qubits exceeds the {MAX_DIAG_QUBITS}-qubit decomposition limit"
        )));
    }
    let scale = 1.0 / dim as f64;
    let mut sum = PauliSum::new(k);
    for p in PauliString::all(k) {
        let mut tr = C64::new(0.0, 0.0);
        for col in 0..dim {
            let (phase, row) = p.apply_to_basis(col);
            tr += phase * m[(col, row)];
        }
        let c = tr * scale;
        if c.im.abs() > 1e-9 {
            return Err(VdError::domain(format!(
                "matrix is not Hermitian: {p} coefficient {c}"
            )));
        }
        if c.re.abs() >= PRUNE {
            sum.push(p, c.re)?;
        }
    }
    Ok(sum)
}

#[derive(Debug, Clone)]
pub struct DiagonalizationResult {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Column `j` is the eigenvector of `eigenvalues[j]`.
    pub eigenvectors: DMatrix<C64>,
}

impl DiagonalizationResult {
    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn ground_state(&self) -> Vec<C64> {
        self.eigenvectors.column(0).iter().cloned().collect()
    }
}

/// Full dense eigendecomposition of a Pauli sum, up to 10 qubits.
pub fn exact_diagonalize(h: &PauliSum) -> Result<DiagonalizationResult> {
    if h.n_qubits() > MAX_DIAG_QUBITS {
        return Err(VdError::Capacity(format!(
            "{} qubits exceeds the {MAX_DIAG_QUBITS}-qubit diagonalization limit",
            h.n_qubits()
        )));
    }
    let eig = SymmetricEigen::new(h.matrix());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    if eigenvalues.iter().any(|e| !e.is_finite()) {
        return Err(VdError::Numeric(
            "eigendecomposition produced non-finite values".into(),
        ));
    }
    let dim = eigenvalues.len();
    let eigenvectors = DMatrix::from_fn(dim, dim, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(DiagonalizationResult {
        eigenvalues,
        eigenvectors,
    })
}
