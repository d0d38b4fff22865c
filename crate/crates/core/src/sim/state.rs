use nalgebra::DMatrix;

use super::circuit::Circuit;
use super::kernel::apply_gate;
use super::{MAX_QUBITS, PROB_CLAMP};
use crate::error::{Result, VdError};
use crate::C64;

const NORM_TOL: f64 = 1e-12;
const HERMITIAN_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;
const PSD_TOL: f64 = 1e-9;

fn check_width(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        return Err(VdError::Capacity(format!(
            "{n} qubits exceeds the dense limit of {MAX_QUBITS}"
        )));
    }
    Ok(())
}

fn width_of(len: usize) -> Result<usize> {
    if len == 0 || !len.is_power_of_two() {
        return Err(VdError::dim(format!("length {len} is not a power of two")));
    }
    Ok(len.trailing_zeros() as usize)
}

/// Pure state of `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(n_qubits: usize) -> Self {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n_qubits];
        amps[index] = C64::new(1.0, 0.0);
        Self { n_qubits, amps }
    }

    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let n_qubits = width_of(amps.len())?;
        check_width(n_qubits)?;
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(VdError::Numeric("amplitude is not finite".into()));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(VdError::domain(format!("state norm {norm} is not 1")));
        }
        Ok(Self { n_qubits, amps })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(mut amps: Vec<C64>) -> Result<Self> {
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(VdError::Numeric(format!(
                "cannot normalize a vector of norm {norm}"
            )));
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Self::from_amplitudes(amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `|self⟩ ⊗ |other⟩`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        StateVector {
            n_qubits: self.n_qubits + other.n_qubits,
            amps,
        }
    }

    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn to_density_matrix(&self) -> DensityMatrix {
        let dim = self.amps.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in &self.amps {
            for c in &self.amps {
                data.push(r * c.conj());
            }
        }
        DensityMatrix {
            n_qubits: self.n_qubits,
            data,
        }
    }

    pub(crate) fn apply(&mut self, circuit: &Circuit) {
        for gate in &circuit.gates {
            apply_gate(&mut self.amps, self.n_qubits, gate, 0, false);
        }
    }
}

/// Mixed state of `n_qubits` qubits, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    data: Vec<C64>,
}

impl DensityMatrix {
    pub fn zero(n_qubits: usize) -> Self {
        StateVector::zero(n_qubits).to_density_matrix()
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let mut data = vec![C64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = C64::new(1.0 / dim as f64, 0.0);
        }
        Self { n_qubits, data }
    }

    /// Validates Hermiticity, unit trace and positivity before accepting `m`.
    pub fn from_matrix(m: &DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(VdError::dim(format!(
                "{}x{} matrix is not square",
                m.nrows(),
                m.ncols()
            )));
        }
        let n_qubits = width_of(m.nrows())?;
        check_width(n_qubits)?;
        let dim = m.nrows();
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(m[(r, c)]);
            }
        }
        let rho = Self { n_qubits, data };
        rho.validate()?;
        Ok(rho)
    }

    /// Convex mixture `Σ wᵢ |ψᵢ⟩⟨ψᵢ|`; weights must be non-negative and sum to 1.
    pub fn mixture(parts: &[(f64, StateVector)]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| VdError::input("empty mixture"))?;
        let n = first.1.n_qubits();
        let dim = 1usize << n;
        let mut data = vec![C64::new(0.0, 0.0); dim * dim];
        for (w, psi) in parts {
            if psi.n_qubits() != n {
                return Err(VdError::dim("mixture components differ in width"));
            }
            if *w < 0.0 {
                return Err(VdError::domain(format!("negative mixture weight {w}")));
            }
            let a = psi.amplitudes();
            for r in 0..dim {
                for c in 0..dim {
                    data[r * dim + c] += a[r] * a[c].conj() * *w;
                }
            }
        }
        let rho = Self { n_qubits: n, data };
        rho.validate()?;
        Ok(rho)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim() + col]
    }

    /// Row-major entries.
    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub(crate) fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn to_matrix(&self) -> DMatrix<C64> {
        let dim = self.dim();
        DMatrix::from_row_slice(dim, dim, &self.data)
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    /// `Tr(ρ²)`; for Hermitian ρ this is the squared Frobenius norm.
    pub fn purity(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `ρ ⊗ σ`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let (da, db) = (self.dim(), other.dim());
        let dim = da * db;
        let mut data = vec![C64::new(0.0, 0.0); dim * dim];
        for r1 in 0..da {
            for c1 in 0..da {
                let a = self.get(r1, c1);
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for r2 in 0..db {
                    let row = (r1 * db + r2) * dim + c1 * db;
                    for c2 in 0..db {
                        data[row + c2] = a * other.get(r2, c2);
                    }
                }
            }
        }
        DensityMatrix {
            n_qubits: self.n_qubits + other.n_qubits,
            data,
        }
    }

    /// `Tr(O ρ)` for a dense operator of matching dimension.
    pub fn expectation(&self, op: &DMatrix<C64>) -> Result<C64> {
        let dim = self.dim();
        if op.nrows() != dim || op.ncols() != dim {
            return Err(VdError::dim("operator and state dimensions differ"));
        }
        let mut acc = C64::new(0.0, 0.0);
        for r in 0..dim {
            for c in 0..dim {
                acc += op[(r, c)] * self.get(c, r);
            }
        }
        Ok(acc)
    }

    /// Checks the density-matrix invariants (Hermitian, unit trace, PSD).
    pub fn validate(&self) -> Result<()> {
        let dim = self.dim();
        if self
            .data
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(VdError::Numeric(
                "density matrix entry is not finite".into(),
            ));
        }
        for r in 0..dim {
            for c in r..dim {
                if (self.get(r, c) - self.get(c, r).conj()).norm() > HERMITIAN_TOL {
                    return Err(VdError::domain(format!("not Hermitian at ({r},{c})")));
                }
            }
        }
        let tr = self.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(VdError::domain(format!("trace {tr} is not 1")));
        }
        let min = self.min_eigenvalue();
        if min < -PSD_TOL {
            return Err(VdError::domain(format!("negative eigenvalue {min}")));
        }
        Ok(())
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let m = self.to_matrix();
        let m = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        m.symmetric_eigenvalues()
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
    }

    pub(crate) fn apply_gate(&mut self, gate: &super::Gate) {
        let n = self.n_qubits;
        apply_gate(&mut self.data, 2 * n, gate, 0, false);
        apply_gate(&mut self.data, 2 * n, gate, n, true);
    }
}

/// Anything that yields computational-basis outcome probabilities.
pub trait QuantumState {
    fn n_qubits(&self) -> usize;

    /// Raw (unclamped) probability of each basis outcome.
    fn raw_probabilities(&self) -> Vec<f64>;
}

impl QuantumState for StateVector {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn raw_probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }
}

impl QuantumState for DensityMatrix {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn raw_probabilities(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.get(i, i).re).collect()
    }
}

/// Computational-basis probabilities. Values in `[-1e-12, 0)` clamp to zero;
/// anything more negative signals a logic error and is rejected.
pub fn measurement_probabilities<S: QuantumState + ?Sized>(state: &S) -> Result<Vec<f64>> {
    let mut probs = state.raw_probabilities();
    for (i, p) in probs.iter_mut().enumerate() {
        if !p.is_finite() {
            return Err(VdError::Numeric(format!(
                "probability of outcome {i} is {p}"
            )));
        }
        if *p < 0.0 {
            if *p < -PROB_CLAMP {
                return Err(VdError::domain(format!(
                    "probability of outcome {i} is {p}"
                )));
            }
            *p = 0.0;
        }
    }
    Ok(probs)
}

/// `U_circuit |input⟩`.
pub fn apply_circuit_pure(circuit: &Circuit, input: &StateVector) -> Result<StateVector> {
    if circuit.n_qubits != input.n_qubits {
        return Err(VdError::dim(format!(
            "{}-qubit circuit applied to a {}-qubit state",
            circuit.n_qubits, input.n_qubits
        )));
    }
    if input
        .amps
        .iter()
        .any(|a| !a.re.is_finite() || !a.im.is_finite())
    {
        return Err(VdError::Numeric("input amplitude is not finite".into()));
    }
    let mut out = input.clone();
    out.apply(circuit);
    Ok(out)
}
