//! In-place gate kernels on a big-endian amplitude register.
//!
//! A density matrix of `n` qubits is treated as a `2n`-qubit register whose
//! first `n` qubits index rows and last `n` index columns, so `U ρ U†` is the
//! gate applied at offset 0 followed by its conjugate at offset `n`.

use super::circuit::{Gate, GateKind};
use crate::C64;

#[inline]
fn bit(width: usize, q: usize) -> usize {
    1usize << (width - 1 - q)
}

/// Applies `gate` (qubits shifted by `offset`) to `amps`, a register of
/// `width` qubits. With `conj` the complex conjugate of the gate is applied.
pub(crate) fn apply_gate(amps: &mut [C64], width: usize, gate: &Gate, offset: usize, conj: bool) {
    debug_assert_eq!(amps.len(), 1 << width);
    let q = |i: usize| gate.qubits[i] + offset;
    match &gate.kind {
        GateKind::X => {
            let b = bit(width, q(0));
            for i in 0..amps.len() {
                if i & b == 0 {
                    amps.swap(i, i | b);
                }
            }
        }
        GateKind::Cnot => {
            let c = bit(width, q(0));
            let t = bit(width, q(1));
            for i in 0..amps.len() {
                if i & c != 0 && i & t == 0 {
                    amps.swap(i, i | t);
                }
            }
        }
        GateKind::Cz | GateKind::MultiControlZ => {
            let mask = gate
                .qubits
                .iter()
                .fold(0, |m, &x| m | bit(width, x + offset));
            for (i, a) in amps.iter_mut().enumerate() {
                if i & mask == mask {
                    *a = -*a;
                }
            }
        }
        GateKind::Permute(table) => {
            let qs: Vec<usize> = gate.qubits.iter().map(|&x| x + offset).collect();
            permute(amps, width, &qs, table);
        }
        _ => {
            let m = gate.matrix();
            let mut u = [m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]];
            if conj {
                u.iter_mut().for_each(|z| *z = z.conj());
            }
            let b = bit(width, q(0));
            for i in 0..amps.len() {
                if i & b == 0 {
                    let (a0, a1) = (amps[i], amps[i | b]);
                    amps[i] = u[0] * a0 + u[1] * a1;
                    amps[i | b] = u[2] * a0 + u[3] * a1;
                }
            }
        }
    }
}

fn permute(amps: &mut [C64], width: usize, qubits: &[usize], table: &[usize]) {
    let k = qubits.len();
    let offsets: Vec<usize> = (0..1usize << k)
        .map(|local| {
            (0..k)
                .filter(|&j| (local >> (k - 1 - j)) & 1 == 1)
                .fold(0, |acc, j| acc | bit(width, qubits[j]))
        })
        .collect();
    let mask = offsets[offsets.len() - 1];
    let mut buf = vec![C64::new(0.0, 0.0); offsets.len()];
    for base in 0..amps.len() {
        if base & mask != 0 {
            continue;
        }
        for (l, off) in offsets.iter().enumerate() {
            buf[l] = amps[base | off];
        }
        for (src, &dst) in table.iter().enumerate() {
            amps[base | offsets[dst]] = buf[src];
        }
    }
}
