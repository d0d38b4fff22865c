use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Result, VdError};
use crate::C64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GateKind {
    X,
    H,
    S,
    Sdag,
    Rx(f64),
    Ry(f64),
    Rz(f64),
    Cnot,
    Cz,
    /// `-1` phase on the basis states where every listed qubit is `1`.
    /// With one qubit this is `Z`, with two it is `CZ`.
    MultiControlZ,
    /// Basis permutation on the listed qubits: local state `i` goes to `table[i]`.
    Permute(Vec<usize>),
}

impl GateKind {
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Sdag => "SDG",
            GateKind::Rx(_) => "RX",
            GateKind::Ry(_) => "RY",
            GateKind::Rz(_) => "RZ",
            GateKind::Cnot => "CNOT",
            GateKind::Cz => "CZ",
            GateKind::MultiControlZ => "MCZ",
            GateKind::Permute(_) => "PERMUTE",
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match self {
            GateKind::Rx(t) | GateKind::Ry(t) | GateKind::Rz(t) => Some(*t),
            _ => None,
        }
    }

    fn fixed_arity(&self) -> Option<usize> {
        match self {
            GateKind::X
            | GateKind::H
            | GateKind::S
            | GateKind::Sdag
            | GateKind::Rx(_)
            | GateKind::Ry(_)
            | GateKind::Rz(_) => Some(1),
            GateKind::Cnot | GateKind::Cz => Some(2),
            GateKind::MultiControlZ | GateKind::Permute(_) => None,
        }
    }
}

/// A gate and the ordered qubits it acts on. For `Cnot` the order is
/// `[control, target]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<usize>) -> Result<Self> {
        if qubits.is_empty() {
            return Err(VdError::input(format!(
                "{} gate without qubits",
                kind.name()
            )));
        }
        if let Some(k) = kind.fixed_arity() {
            if qubits.len() != k {
                return Err(VdError::input(format!(
                    "{} acts on {k} qubit(s), got {}",
                    kind.name(),
                    qubits.len()
                )));
            }
        }
        if let GateKind::Permute(table) = &kind {
            let dim = 1usize << qubits.len();
            let mut seen = vec![false; dim];
            if table.len() != dim {
                return Err(VdError::input("permutation table size must be 2^k"));
            }
            for &t in table {
                if t >= dim || seen[t] {
                    return Err(VdError::input("permutation table is not a bijection"));
                }
                seen[t] = true;
            }
        }
        if let Some(t) = kind.angle() {
            if !t.is_finite() {
                return Err(VdError::Numeric(format!("{} angle {t}", kind.name())));
            }
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(VdError::input(format!("{} repeats qubit {q}", kind.name())));
            }
        }
        Ok(Self { kind, qubits })
    }

    pub fn arity(&self) -> usize {
        self.qubits.len()
    }

    pub fn is_two_qubit(&self) -> bool {
        self.qubits.len() == 2
    }

    pub fn inverse(&self) -> Gate {
        let kind = match &self.kind {
            GateKind::S => GateKind::Sdag,
            GateKind::Sdag => GateKind::S,
            GateKind::Rx(t) => GateKind::Rx(-t),
            GateKind::Ry(t) => GateKind::Ry(-t),
            GateKind::Rz(t) => GateKind::Rz(-t),
            GateKind::Permute(table) => {
                let mut inv = vec![0; table.len()];
                for (i, &t) in table.iter().enumerate() {
                    inv[t] = i;
                }
                GateKind::Permute(inv)
            }
            other => other.clone(),
        };
        Gate {
            kind,
            qubits: self.qubits.clone(),
        }
    }

    /// Same gate with every qubit index shifted by `offset`.
    pub fn shifted(&self, offset: usize) -> Gate {
        Gate {
            kind: self.kind.clone(),
            qubits: self.qubits.iter().map(|q| q + offset).collect(),
        }
    }

    /// Dense `2^k × 2^k` matrix in the local big-endian basis of `qubits`.
    pub fn matrix(&self) -> DMatrix<C64> {
        let zero = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let two = |a: C64, b: C64, c: C64, d: C64| DMatrix::from_row_slice(2, 2, &[a, b, c, d]);
        match &self.kind {
            GateKind::X => two(zero, one, one, zero),
            GateKind::H => {
                let h = C64::new(FRAC_1_SQRT_2, 0.0);
                two(h, h, h, -h)
            }
            GateKind::S => two(one, zero, zero, i),
            GateKind::Sdag => two(one, zero, zero, -i),
            GateKind::Rx(t) => {
                let (s, c) = (t / 2.0).sin_cos();
                two(c.into(), -i * s, -i * s, c.into())
            }
            GateKind::Ry(t) => {
                let (s, c) = (t / 2.0).sin_cos();
                two(c.into(), (-s).into(), s.into(), c.into())
            }
            GateKind::Rz(t) => {
                let (s, c) = (t / 2.0).sin_cos();
                two(C64::new(c, -s), zero, zero, C64::new(c, s))
            }
            GateKind::Cnot => {
                let mut m = DMatrix::from_element(4, 4, zero);
                m[(0, 0)] = one;
                m[(1, 1)] = one;
                m[(2, 3)] = one;
                m[(3, 2)] = one;
                m
            }
            GateKind::Cz => {
                DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![one, one, one, -one]))
            }
            GateKind::MultiControlZ => {
                let dim = 1 << self.qubits.len();
                let mut m = DMatrix::identity(dim, dim);
                m[(dim - 1, dim - 1)] = -one;
                m
            }
            GateKind::Permute(table) => {
                let dim = table.len();
                let mut m = DMatrix::from_element(dim, dim, zero);
                for (src, &dst) in table.iter().enumerate() {
                    m[(dst, src)] = one;
                }
                m
            }
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.kind.name())?;
        for (i, q) in self.qubits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, ")")?;
        if let Some(t) = self.kind.angle() {
            write!(f, "[{t}]")?;
        }
        Ok(())
    }
}

/// Ordered gate program on a fixed number of qubits.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Circuit {
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
    pub label: String,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            gates: Vec::new(),
            label: String::new(),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Appends a gate after checking its qubits fit the register.
    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        if let Some(&q) = gate.qubits.iter().find(|&&q| q >= self.n_qubits) {
            return Err(VdError::dim(format!(
                "{} touches qubit {q} of a {}-qubit circuit",
                gate.kind.name(),
                self.n_qubits
            )));
        }
        self.gates.push(gate);
        Ok(self)
    }

    // Builder helpers. These panic on out-of-range qubits; parsed or
    // user-supplied gates go through `push`.

    fn add(&mut self, kind: GateKind, qubits: Vec<usize>) -> &mut Self {
        let gate = Gate::new(kind, qubits).expect("builder gate is well formed");
        self.push(gate).expect("builder qubit in range")
    }

    pub fn x(&mut self, q: usize) -> &mut Self {
        self.add(GateKind::X, vec![q])
    }

    pub fn h(&mut self, q: usize) -> &mut Self {
        self.add(GateKind::H, vec![q])
    }

    pub fn s(&mut self, q: usize) -> &mut Self {
        self.add(GateKind::S, vec![q])
    }

    pub fn sdag(&mut self, q: usize) -> &mut Self {
        self.add(GateKind::Sdag, vec![q])
    }

    pub fn rx(&mut self, theta: f64, q: usize) -> &mut Self {
        self.add(GateKind::Rx(theta), vec![q])
    }

    pub fn ry(&mut self, theta: f64, q: usize) -> &mut Self {
        self.add(GateKind::Ry(theta), vec![q])
    }

    pub fn rz(&mut self, theta: f64, q: usize) -> &mut Self {
        self.add(GateKind::Rz(theta), vec![q])
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> &mut Self {
        self.add(GateKind::Cnot, vec![control, target])
    }

    pub fn cz(&mut self, a: usize, b: usize) -> &mut Self {
        self.add(GateKind::Cz, vec![a, b])
    }

    pub fn mcz(&mut self, qubits: Vec<usize>) -> &mut Self {
        self.add(GateKind::MultiControlZ, qubits)
    }

    /// Appends every gate of `other` (same width).
    pub fn extend(&mut self, other: &Circuit) -> Result<&mut Self> {
        if other.n_qubits != self.n_qubits {
            return Err(VdError::dim(format!(
                "cannot append a {}-qubit circuit to a {}-qubit circuit",
                other.n_qubits, self.n_qubits
            )));
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(self)
    }

    pub fn inverse(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            label: format!("{}^-1", self.label),
        }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn count(&self, kind: &str) -> usize {
        self.gates.iter().filter(|g| g.kind.name() == kind).count()
    }

    pub fn cnot_count(&self) -> usize {
        self.count("CNOT")
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    /// Composed unitary, built column by column from basis states.
    pub fn unitary(&self) -> DMatrix<C64> {
        let dim = 1usize << self.n_qubits;
        let mut u = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        for col in 0..dim {
            amps.iter_mut().for_each(|a| *a = C64::new(0.0, 0.0));
            amps[col] = C64::new(1.0, 0.0);
            for gate in &self.gates {
                super::kernel::apply_gate(&mut amps, self.n_qubits, gate, 0, false);
            }
            for (row, a) in amps.iter().enumerate() {
                u[(row, col)] = *a;
            }
        }
        u
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gates.iter().map(|g| g.to_string()).collect();
        write!(f, "[{}] {}", self.n_qubits, parts.join(" "))
    }
}
