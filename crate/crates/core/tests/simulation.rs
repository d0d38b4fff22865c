mod common;

use common::*;
use proptest::prelude::*;
use vdistill::pauli::{basis_rotation_circuit, PauliString};
use vdistill::sim::random::{random_density_matrix, random_state};
use vdistill::sim::*;
use vdistill::vd::{
    build_b_gate, build_mask_projection, build_pauli_expectation_plan, build_s2_projection,
    duplicate,
};
use vdistill::vqe::{build_ansatz, AnsatzSpec};

fn built_circuits() -> Vec<Circuit> {
    let mut out = Vec::new();
    out.push(build_ansatz(&AnsatzSpec::reduced_ucc_2q(), &[0.7]).unwrap());
    for (n, init) in [(3, "010"), (4, "1100")] {
        let spec = AnsatzSpec::hardware_efficient(n, 2, init);
        let params: Vec<f64> = (0..spec.n_params()).map(|i| 0.3 * i as f64 - 1.0).collect();
        out.push(build_ansatz(&spec, &params).unwrap());
    }
    for n in 1..=4 {
        out.push(build_s2_projection(n).unwrap().circuit);
        out.push(build_b_gate(n).unwrap().circuit);
        if n <= 3 {
            for d in 1..1usize << n {
                out.push(build_mask_projection(n, d).unwrap().circuit);
            }
        }
        for p in PauliString::all(n) {
            out.push(basis_rotation_circuit(&p));
            if n <= 2 && p.is_diagonal() && !p.is_identity() {
                out.push(build_pauli_expectation_plan(&p).unwrap().0.circuit);
            }
        }
    }
    out.push(duplicate(&out[0]).doubled);
    out
}

#[test]
fn every_built_circuit_is_unitary() {
    for circ in built_circuits() {
        assert!(is_unitary(&circ.unitary(), 1e-10), "{:?}", circ.label);
    }
}

#[test]
fn depolarization_matches_pauli_twirl() {
    let mut r = rng(11);
    for (a, b, lambda) in [(0, 1, 0.0), (0, 2, 0.05), (2, 1, 0.3), (1, 2, 1.0)] {
        let rho = random_density_matrix(3, 4, &mut r);
        let want = twirl_oracle(&dense(&rho), 3, a, b, lambda);
        let mut got = rho.clone();
        depolarize_pair(&mut got, a, b, lambda);
        assert!(max_abs_diff(&dense(&got), &want) < 1e-12);
    }
}

#[test]
fn full_depolarization_of_a_pair_gives_uniform_outcomes() {
    let mut circ = Circuit::new(2);
    circ.h(0).cnot(0, 1);
    let rho = apply_circuit_noisy(
        &circ,
        &DensityMatrix::zero(2),
        &NoiseSpec::depolarizing(1.0),
    )
    .unwrap();
    for p in measurement_probabilities(&rho).unwrap() {
        assert!((p - 0.25).abs() < 1e-12);
    }
}

#[test]
fn per_gate_override_replaces_default() {
    let mut circ = Circuit::new(2);
    circ.h(0).cnot(0, 1).cnot(0, 1);
    let mut noise = NoiseSpec::depolarizing(0.0);
    noise.per_gate_overrides.insert(1, 1.0);
    let rho = apply_circuit_noisy(&circ, &DensityMatrix::zero(2), &noise).unwrap();
    assert!((rho.purity() - 0.25).abs() < 1e-12);
}

#[test]
fn purity_decreases_with_lambda_for_ansatz_circuits() {
    let spec = AnsatzSpec::hardware_efficient(3, 2, "010");
    let params: Vec<f64> = (0..spec.n_params())
        .map(|i| (i as f64 * 0.77).sin())
        .collect();
    let circ = build_ansatz(&spec, &params).unwrap();
    let mut last = f64::INFINITY;
    for i in 0..=10 {
        let lambda = i as f64 / 10.0;
        let rho = apply_circuit_noisy(
            &circ,
            &DensityMatrix::zero(3),
            &NoiseSpec::depolarizing(lambda),
        )
        .unwrap();
        let purity = rho.purity();
        assert!(purity <= last + 1e-12, "λ={lambda}: {purity} > {last}");
        last = purity;
    }
    assert!(last >= 1.0 / 8.0 - 1e-12);
}

#[test]
fn sampling_converges_at_a_million_shots() {
    let mut r = rng(5);
    let psi = random_state(3, &mut r);
    let probs = measurement_probabilities(&psi).unwrap();
    for seed in 0..5 {
        let counts = sample_counts(&probs, 1_000_000, seed).unwrap();
        for (f, p) in counts.frequencies().iter().zip(&probs) {
            assert!((f - p).abs() < 0.005);
        }
    }
}

#[test]
fn sampled_mean_sits_inside_binomial_band() {
    let probs = [0.1, 0.2, 0.3, 0.4];
    let shots = 8196u64;
    let trials = 200;
    for (i, &p) in probs.iter().enumerate() {
        let mean: f64 = (0..trials)
            .map(|s| sample_counts(&probs, shots, s).unwrap().get(i) as f64 / shots as f64)
            .sum::<f64>()
            / trials as f64;
        let se = (p * (1.0 - p) / (shots as f64 * trials as f64)).sqrt();
        assert!((mean - p).abs() < 5.0 * se, "outcome {i}: {mean} vs {p}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn noiseless_channel_equals_pure_evolution(circ in circuit_strategy(3, 16)) {
        let pure = apply_circuit_pure(&circ, &StateVector::zero(3)).unwrap().to_density_matrix();
        let mixed = apply_circuit_noisy(&circ, &DensityMatrix::zero(3), &NoiseSpec::noiseless()).unwrap();
        prop_assert!(max_abs_diff(&dense(&pure), &dense(&mixed)) < 1e-10);
    }

    #[test]
    fn noisy_evolution_stays_a_density_matrix(circ in circuit_strategy(3, 16), lambda in 0.0f64..=1.0) {
        let rho = apply_circuit_noisy(&circ, &DensityMatrix::zero(3), &NoiseSpec::depolarizing(lambda)).unwrap();
        prop_assert!((rho.trace().re - 1.0).abs() < 1e-10);
        prop_assert!(rho.trace().im.abs() < 1e-10);
        prop_assert!(rho.min_eigenvalue() > -1e-10);
        prop_assert!(rho.validate().is_ok());
    }

    #[test]
    fn purity_is_monotone_in_lambda(circ in circuit_strategy(3, 12), lo in 0.0f64..0.5, step in 0.0f64..0.5) {
        let run = |l: f64| apply_circuit_noisy(&circ, &DensityMatrix::zero(3), &NoiseSpec::depolarizing(l)).unwrap().purity();
        prop_assert!(run(lo + step) <= run(lo) + 1e-12);
    }

    #[test]
    fn circuit_unitary_matches_statevector(circ in circuit_strategy(3, 12), seed in 0u64..1000) {
        let psi = random_state(3, &mut rng(seed));
        let via_matrix = circ.unitary() * nalgebra::DVector::from_column_slice(psi.amplitudes());
        let via_kernel = apply_circuit_pure(&circ, &psi).unwrap();
        for (a, b) in via_matrix.iter().zip(via_kernel.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn inverse_circuit_undoes_the_circuit(circ in circuit_strategy(3, 12)) {
        let mut round = circ.clone();
        round.extend(&circ.inverse()).unwrap();
        let id = nalgebra::DMatrix::identity(8, 8);
        prop_assert!(max_abs_diff(&round.unitary(), &id) < 1e-10);
    }
}
