use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, VdError};
use crate::sim::{Circuit, DensityMatrix, StateVector};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> DMatrix<C64> {
        let (z, o, i) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 1.0));
        let e = match self {
            Pauli::I => [o, z, z, o],
            Pauli::X => [z, o, o, z],
            Pauli::Y => [z, -i, i, z],
            Pauli::Z => [o, z, z, -o],
        };
        DMatrix::from_row_slice(2, 2, &e)
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Tensor product of single-qubit Paulis; letter `i` acts on qubit `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    letters: Vec<Pauli>,
}

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Self {
        Self { letters }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            letters: vec![Pauli::I; n],
        }
    }

    /// All `4^n` strings on `n` qubits in lexicographic I < X < Y < Z order.
    pub fn all(n: usize) -> impl Iterator<Item = PauliString> {
        (0..1usize << (2 * n)).map(move |code| {
            let letters = (0..n)
                .map(|q| Pauli::ALL[(code >> (2 * (n - 1 - q))) & 3])
                .collect();
            PauliString { letters }
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|&p| p == Pauli::I)
    }

    /// True if the string has only `I` and `Z` letters.
    pub fn is_diagonal(&self) -> bool {
        self.letters
            .iter()
            .all(|&p| matches!(p, Pauli::I | Pauli::Z))
    }

    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&p| p != Pauli::I).count()
    }

    fn mask_of(&self, pred: impl Fn(Pauli) -> bool) -> usize {
        let n = self.n_qubits();
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, &p)| pred(p))
            .fold(0, |m, (q, _)| m | (1 << (n - 1 - q)))
    }

    /// Bit mask of the non-identity positions.
    pub fn support_mask(&self) -> usize {
        self.mask_of(|p| p != Pauli::I)
    }

    /// The string after basis rotation: every X and Y becomes Z.
    pub fn diagonalized(&self) -> PauliString {
        let letters = self
            .letters
            .iter()
            .map(|&p| if p == Pauli::I { Pauli::I } else { Pauli::Z })
            .collect();
        PauliString { letters }
    }

    /// Key identifying the measurement basis: I counts as Z.
    pub fn basis_key(&self) -> PauliString {
        let letters = self
            .letters
            .iter()
            .map(|&p| if p == Pauli::I { Pauli::Z } else { p })
            .collect();
        PauliString { letters }
    }

    /// `P|col⟩ = phase · |row⟩`.
    pub fn apply_to_basis(&self, col: usize) -> (C64, usize) {
        let flip = self.mask_of(|p| matches!(p, Pauli::X | Pauli::Y));
        let zlike = self.mask_of(|p| matches!(p, Pauli::Y | Pauli::Z));
        let ys = self.letters.iter().filter(|&&p| p == Pauli::Y).count();
        let sign = if (col & zlike).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        let phase = C64::new(0.0, 1.0).powi(ys as i32) * sign;
        (phase, col ^ flip)
    }

    /// Dense Kronecker product of the letters (qubit 0 leftmost).
    pub fn matrix(&self) -> DMatrix<C64> {
        let dim = 1usize << self.n_qubits();
        let mut m = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
        for col in 0..dim {
            let (phase, row) = self.apply_to_basis(col);
            m[(row, col)] = phase;
        }
        m
    }

    /// `Tr(P ρ)`, real for Hermitian ρ.
    pub fn expectation(&self, rho: &DensityMatrix) -> f64 {
        let dim = rho.dim();
        let mut acc = C64::new(0.0, 0.0);
        for col in 0..dim {
            let (phase, row) = self.apply_to_basis(col);
            acc += phase * rho.get(col, row);
        }
        acc.re
    }

    /// `⟨ψ|P|ψ⟩`.
    pub fn expectation_pure(&self, psi: &StateVector) -> f64 {
        let a = psi.amplitudes();
        let mut acc = C64::new(0.0, 0.0);
        for (col, amp) in a.iter().enumerate() {
            let (phase, row) = self.apply_to_basis(col);
            acc += a[row].conj() * phase * amp;
        }
        acc.re
    }

    /// `±1` eigenvalue of a diagonal string on basis outcome `x`.
    pub(crate) fn diagonal_sign(&self, x: usize) -> f64 {
        if (x & self.support_mask()).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.letters {
            write!(f, "{}", p.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = VdError;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .trim()
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(VdError::input(format!("'{other}' is not a Pauli letter"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if letters.is_empty() {
            return Err(VdError::input("empty Pauli string"));
        }
        Ok(Self { letters })
    }
}

impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Circuit `R` with `R P R†` diagonal: `H` on X positions, `S†` then `H` on
/// Y positions, nothing elsewhere.
pub fn basis_rotation_circuit(p: &PauliString) -> Circuit {
    let mut c = Circuit::new(p.n_qubits()).with_label(format!("rotate {p}"));
    for (q, &letter) in p.letters().iter().enumerate() {
        match letter {
            Pauli::X => {
                c.h(q);
            }
            Pauli::Y => {
                c.sdag(q).h(q);
            }
            Pauli::I | Pauli::Z => {}
        }
    }
    c
}

/// `(-1)^(number of Z positions where the outcome bit is 1)`.
pub fn eigenvalue_of_outcome(p: &PauliString, outcome: usize) -> Result<i8> {
    if !p.is_diagonal() {
        return Err(VdError::domain(format!(
            "{p} is not diagonal; rotate it first"
        )));
    }
    if outcome >> p.n_qubits() != 0 {
        return Err(VdError::dim(format!(
            "outcome {outcome} has more than {} bits",
            p.n_qubits()
        )));
    }
    Ok(if p.diagonal_sign(outcome) < 0.0 {
        -1
    } else {
        1
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn single_letter_matrices() {
        assert_eq!(ps("I").matrix(), DMatrix::identity(2, 2));
        let z = ps("Z").matrix();
        assert_eq!(z[(0, 0)], C64::new(1.0, 0.0));
        assert_eq!(z[(1, 1)], C64::new(-1.0, 0.0));
        assert_eq!(ps("Y").matrix(), Pauli::Y.matrix());
    }

    #[test]
    fn matrix_is_kronecker_product() {
        for p in PauliString::all(2) {
            let k = p.letters()[0].matrix().kronecker(&p.letters()[1].matrix());
            assert_eq!(p.matrix(), k, "{p}");
        }
    }

    #[test]
    fn xx_spectrum() {
        let mut e: Vec<f64> = ps("XX")
            .matrix()
            .symmetric_eigenvalues()
            .iter()
            .cloned()
            .collect();
        e.sort_by(f64::total_cmp);
        let want = [-1.0, -1.0, 1.0, 1.0];
        assert!(e.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-12));
    }

    #[test]
    fn outcome_eigenvalues() {
        assert_eq!(eigenvalue_of_outcome(&ps("ZI"), 0b10).unwrap(), -1);
        assert_eq!(eigenvalue_of_outcome(&ps("ZZ"), 0b11).unwrap(), 1);
        assert_eq!(eigenvalue_of_outcome(&ps("IZ"), 0b10).unwrap(), 1);
        assert!(matches!(
            eigenvalue_of_outcome(&ps("XZ"), 0),
            Err(VdError::Domain(_))
        ));
    }

    #[test]
    fn simple_rotations() {
        assert!(basis_rotation_circuit(&ps("ZZ")).is_empty());
        let r = basis_rotation_circuit(&ps("X"));
        assert_eq!(r.len(), 1);
        assert_eq!(r.gates[0].kind.name(), "H");
        let u = basis_rotation_circuit(&ps("Y")).unitary();
        let conj = &u * ps("Y").matrix() * u.adjoint();
        assert!((conj - ps("Z").matrix()).iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<PauliString>().is_err());
        assert!("XQ".parse::<PauliString>().is_err());
        assert_eq!(ps("xyZi").to_string(), "XYZI");
    }
}
