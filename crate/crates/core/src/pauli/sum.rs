use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;

use super::PauliString;
use crate::error::{Result, VdError};
use crate::sim::{DensityMatrix, StateVector};
use crate::C64;

/// `constant·I + Σ c_k P_k` with real coefficients.
///
/// Identity strings passed to [`PauliSum::push`] are folded into the constant,
/// and repeated strings have their coefficients merged.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<PauliString, f64>,
    constant: f64,
}

impl PauliSum {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            terms: BTreeMap::new(),
            constant: 0.0,
        }
    }

    pub fn from_terms<I>(n_qubits: usize, terms: I, constant: f64) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliString, f64)>,
    {
        let mut s = Self::new(n_qubits);
        s.add_constant(constant)?;
        for (p, c) in terms {
            s.push(p, c)?;
        }
        Ok(s)
    }

    pub fn push(&mut self, p: PauliString, coeff: f64) -> Result<()> {
        if p.n_qubits() != self.n_qubits {
            return Err(VdError::dim(format!(
                "{p} has {} qubits, sum has {}",
                p.n_qubits(),
                self.n_qubits
            )));
        }
        if !coeff.is_finite() {
            return Err(VdError::Numeric(format!("non-finite coefficient for {p}")));
        }
        if p.is_identity() {
            self.constant += coeff;
        } else {
            *self.terms.entry(p).or_insert(0.0) += coeff;
        }
        Ok(())
    }

    pub fn add_constant(&mut self, c: f64) -> Result<()> {
        if !c.is_finite() {
            return Err(VdError::Numeric("non-finite constant".into()));
        }
        self.constant += c;
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// Non-identity terms in string order.
    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, f64)> {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn matrix(&self) -> DMatrix<C64> {
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::identity(dim, dim) * C64::new(self.constant, 0.0);
        for (p, c) in self.terms() {
            for col in 0..dim {
                let (phase, row) = p.apply_to_basis(col);
                m[(row, col)] += phase * c;
            }
        }
        m
    }

    pub fn expectation(&self, rho: &DensityMatrix) -> f64 {
        self.constant
            + self
                .terms()
                .map(|(p, c)| c * p.expectation(rho))
                .sum::<f64>()
    }

    pub fn expectation_pure(&self, psi: &StateVector) -> f64 {
        self.constant
            + self
                .terms()
                .map(|(p, c)| c * p.expectation_pure(psi))
                .sum::<f64>()
    }

    /// Terms grouped by measurement basis (see [`PauliString::basis_key`]).
    pub fn basis_groups(&self) -> BTreeMap<PauliString, Vec<(PauliString, f64)>> {
        let mut groups: BTreeMap<PauliString, Vec<(PauliString, f64)>> = BTreeMap::new();
        for (p, c) in self.terms() {
            groups
                .entry(p.basis_key())
                .or_default()
                .push((p.clone(), c));
        }
        groups
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+.10}", self.constant)?;
        for (p, c) in self.terms() {
            write!(f, " {c:+.10}*{p}")?;
        }
        Ok(())
    }
}
