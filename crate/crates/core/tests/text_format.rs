mod common;

use common::*;
use proptest::prelude::*;
use vdistill::sim::Circuit;
use vdistill::text::{parse_circuit, write_circuit};
use vdistill::vd::{
    build_b_gate, build_mask_projection, build_pauli_expectation_plan, build_s2_projection,
};
use vdistill::VdError;

#[test]
fn mask_plan_text_is_line_per_gate() {
    let text = write_circuit(&build_mask_projection(2, 0b11).unwrap().circuit);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# qubits: 4, convention: big-endian");
    assert!(lines[1].starts_with("# label:"));
    assert_eq!(&lines[2..], ["CNOT 2,3", "CNOT 1,2", "CNOT 0,1", "H 0"]);
}

#[test]
fn plan_circuits_round_trip() {
    let mut circuits: Vec<Circuit> = vec![
        build_s2_projection(3).unwrap().circuit,
        build_b_gate(2).unwrap().circuit,
    ];
    circuits.push(
        build_pauli_expectation_plan(&"ZZ".parse().unwrap())
            .unwrap()
            .0
            .circuit,
    );
    for d in 1..8 {
        circuits.push(build_mask_projection(3, d).unwrap().circuit);
    }
    for c in circuits {
        assert_eq!(parse_circuit(&write_circuit(&c)).unwrap(), c);
    }
}

#[test]
fn parse_errors_name_the_line() {
    let bad = "# qubits: 2, convention: big-endian\nH 0\nCNOT 0,x\n";
    match parse_circuit(bad) {
        Err(VdError::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
    assert!(parse_circuit("H 0\n").is_err());
    assert!(parse_circuit("# qubits: 1, convention: big-endian\nCNOT 0,1\n").is_err());
    assert!(parse_circuit("# qubits: 1, convention: big-endian\nRY 0\n").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_circuits_round_trip(circ in circuit_strategy(3, 20)) {
        let back = parse_circuit(&write_circuit(&circ)).unwrap();
        prop_assert_eq!(back, circ);
    }
}
