//! Line-based circuit text format.
//!
//! ```text
//! # qubits: 4, convention: big-endian
//! # label: mask 11 projection
//! CNOT 2,3
//! RY 0 1.5707963267948966
//! ```
//!
//! One gate per line: the gate name, comma-separated qubits and, for
//! rotations, the angle in radians. `PERMUTE` takes its output table as a
//! comma-separated list in place of the angle. Blank lines and other `#`
//! lines are ignored.

use crate::error::{Result, VdError};
use crate::sim::{Circuit, Gate, GateKind};

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(|q| q.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn write_circuit(c: &Circuit) -> String {
    let mut out = format!("# qubits: {}, convention: big-endian\n", c.n_qubits);
    if !c.label.is_empty() {
        out.push_str(&format!("# label: {}\n", c.label));
    }
    for g in &c.gates {
        out.push_str(g.kind.name());
        out.push(' ');
        out.push_str(&join(&g.qubits));
        match &g.kind {
            GateKind::Permute(table) => {
                out.push(' ');
                out.push_str(&join(table));
            }
            kind => {
                if let Some(t) = kind.angle() {
                    out.push_str(&format!(" {t:?}"));
                }
            }
        }
        out.push('\n');
    }
    out
}

fn parse_list(s: &str, line: usize) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim().parse::<usize>().map_err(|e| VdError::Parse {
                line,
                msg: format!("bad index {t:?}: {e}"),
            })
        })
        .collect()
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    let mut label = String::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() {
            continue;
        }
        if let Some(comment) = s.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(rest) = comment.strip_prefix("qubits:") {
                let count = rest.split(',').next().unwrap_or("").trim();
                let n = count.parse::<usize>().map_err(|e| VdError::Parse {
                    line,
                    msg: format!("bad qubit count {count:?}: {e}"),
                })?;
                if let Some(conv) = rest.split(',').nth(1) {
                    let conv = conv.trim();
                    if conv != "convention: big-endian" {
                        return Err(VdError::Parse {
                            line,
                            msg: format!("unsupported {conv:?}"),
                        });
                    }
                }
                circuit = Some(Circuit::new(n));
            } else if let Some(rest) = comment.strip_prefix("label:") {
                label = rest.trim().to_string();
            }
            continue;
        }
        let c = circuit.as_mut().ok_or(VdError::Parse {
            line,
            msg: "gate before the `# qubits:` header".into(),
        })?;
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let parse_err = |msg: String| VdError::Parse { line, msg };
        if tokens.len() < 2 || tokens.len() > 3 {
            return Err(parse_err(format!(
                "expected `GATE qubits [argument]`, got {s:?}"
            )));
        }
        let qubits = parse_list(tokens[1], line)?;
        let angle = || -> Result<f64> {
            let t = tokens
                .get(2)
                .ok_or_else(|| parse_err(format!("{} needs an angle", tokens[0])))?;
            t.parse::<f64>()
                .map_err(|e| parse_err(format!("bad angle {t:?}: {e}")))
        };
        let kind = match tokens[0].to_ascii_uppercase().as_str() {
            "X" => GateKind::X,
            "H" => GateKind::H,
            "S" => GateKind::S,
            "SDG" => GateKind::Sdag,
            "RX" => GateKind::Rx(angle()?),
            "RY" => GateKind::Ry(angle()?),
            "RZ" => GateKind::Rz(angle()?),
            "CNOT" => GateKind::Cnot,
            "CZ" => GateKind::Cz,
            "MCZ" => GateKind::MultiControlZ,
            "PERMUTE" => {
                let t = tokens
                    .get(2)
                    .ok_or_else(|| parse_err("PERMUTE needs a table".into()))?;
                GateKind::Permute(parse_list(t, line)?)
            }
            other => return Err(parse_err(format!("unknown gate {other:?}"))),
        };
        if kind.angle().is_none() && !matches!(kind, GateKind::Permute(_)) && tokens.len() == 3 {
            return Err(parse_err(format!("{} takes no argument", kind.name())));
        }
        let gate = Gate::new(kind, qubits).map_err(|e| parse_err(e.to_string()))?;
        c.push(gate).map_err(|e| parse_err(e.to_string()))?;
    }
    let mut c = circuit.ok_or(VdError::Parse {
        line: 0,
        msg: "missing `# qubits:` header".into(),
    })?;
    c.label = label;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut c = Circuit::new(4).with_label("demo");
        c.x(1)
            .ry(0.1 + 0.2, 0)
            .cnot(0, 3)
            .rz(-std::f64::consts::PI, 2)
            .mcz(vec![0, 1, 2])
            .sdag(3);
        c.push(Gate::new(GateKind::Permute(vec![1, 0, 3, 2]), vec![1, 2]).unwrap())
            .unwrap();
        let text = write_circuit(&c);
        assert!(text.starts_with("# qubits: 4, convention: big-endian\n"));
        assert_eq!(parse_circuit(&text).unwrap(), c);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_circuit("# qubits: 2\nH 0\nRY 1\n").unwrap_err();
        assert!(matches!(err, VdError::Parse { line: 3, .. }), "{err}");
        assert!(matches!(
            parse_circuit("H 0\n"),
            Err(VdError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_circuit("# qubits: 2\nCNOT 0,2\n"),
            Err(VdError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_circuit("# qubits: 2\nFOO 0\n"),
            Err(VdError::Parse { line: 2, .. })
        ));
    }
}
