mod common;

use common::*;
use proptest::prelude::*;
use vdistill::estimate::*;
use vdistill::fixture::HamiltonianFixture;
use vdistill::pauli::{PauliString, PauliSum};
use vdistill::sim::random::{random_density_matrix, random_state};
use vdistill::sim::*;
use vdistill::vd::*;
use vdistill::vqe::{build_ansatz, AnsatzSpec};
use vdistill::VdError;

fn ps(s: &str) -> PauliString {
    s.parse().unwrap()
}

fn full_bundle(
    rho: &DensityMatrix,
    shots: Shots,
    seed: u64,
) -> (MeasurementBundle, Vec<ProjectionPlan>) {
    let n = rho.n_qubits();
    let doubled = rho.tensor(rho);
    let comp =
        Distribution::measure(measurement_probabilities(&doubled).unwrap(), shots, seed).unwrap();
    let mut bundle = MeasurementBundle::new(n, comp, shots, seed);
    let mut plans = Vec::new();
    for d in 1..1usize << n {
        let plan = build_mask_projection(n, d).unwrap();
        let out = apply_circuit_noisy(&plan.circuit, &doubled, &NoiseSpec::noiseless()).unwrap();
        let dist = Distribution::measure(
            measurement_probabilities(&out).unwrap(),
            shots,
            derive_seed(seed, d as u64),
        )
        .unwrap();
        bundle = bundle.with_plan(PlanId::Mask(d), dist);
        plans.push(plan);
    }
    (bundle, plans)
}

fn eigenvector_weight(rho: &DensityMatrix, v: EigenVector) -> f64 {
    let m = rho.tensor(rho).to_matrix();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let dim = m.nrows();
    let mut vec = nalgebra::DVector::from_element(dim, c(0.0));
    match v {
        EigenVector::Invariant(x) => vec[x] = c(1.0),
        EigenVector::Symmetric { lo, hi } => {
            vec[lo] = c(h);
            vec[hi] = c(h);
        }
        EigenVector::Antisymmetric { lo, hi } => {
            vec[lo] = c(h);
            vec[hi] = c(-h);
        }
    }
    (vec.adjoint() * m * vec)[(0, 0)].re
}

#[test]
fn reconstruction_matches_eigenprojections() {
    let mut r = rng(41);
    for n in 1..=3 {
        let cls = classify_basis(n);
        for _ in 0..20 {
            let rho = random_density_matrix(n, 3, &mut r);
            let (bundle, plans) = full_bundle(&rho, Shots::Exact, 0);
            let stats = reconstruct_statistics(&bundle, &cls, &plans).unwrap();
            assert!(stats.missing_masks.is_empty());
            assert!((stats.total() - 1.0).abs() < 1e-12);
            for id in 0..stats.probabilities.len() {
                let want = eigenvector_weight(&rho, stats.eigenvector(id));
                assert!(
                    (stats.probabilities[id] - want).abs() < 1e-10,
                    "n={n} id={id}"
                );
            }
            assert!((s2_from_statistics(&stats).unwrap() - rho.purity()).abs() < 1e-10);
        }
    }
}

#[test]
fn pure_bell_pair_has_no_antisymmetric_weight() {
    let mut circ = Circuit::new(2);
    circ.h(0).cnot(0, 1);
    let psi = apply_circuit_pure(&circ, &StateVector::zero(2)).unwrap();
    let (bundle, plans) = full_bundle(&psi.to_density_matrix(), Shots::Exact, 0);
    let stats = reconstruct_statistics(&bundle, &classify_basis(2), &plans).unwrap();
    for (id, p) in stats.probabilities.iter().enumerate() {
        if let EigenVector::Antisymmetric { .. } = stats.eigenvector(id) {
            assert!(p.abs() < 1e-12);
        }
    }
}

#[test]
fn basis_state_lands_on_its_invariant_entry() {
    let rho = StateVector::basis(2, 0b01).to_density_matrix();
    let (bundle, plans) = full_bundle(&rho, Shots::Exact, 0);
    let stats = reconstruct_statistics(&bundle, &classify_basis(2), &plans).unwrap();
    assert!((stats.probabilities[0b0101] - 1.0).abs() < 1e-12);
}

#[test]
fn sampled_reconstruction_is_normalized() {
    let mut r = rng(4);
    for seed in 0..20 {
        let rho = random_density_matrix(2, 2, &mut r);
        let (bundle, plans) = full_bundle(&rho, Shots::Finite(500), seed);
        let stats = reconstruct_statistics(&bundle, &classify_basis(2), &plans).unwrap();
        assert!((stats.total() - 1.0).abs() < 1e-12);
        assert!(stats.probabilities.iter().all(|&p| p >= 0.0));
    }
}

#[test]
fn missing_mask_is_flagged_and_blocks_dependent_terms() {
    let rho = random_density_matrix(2, 2, &mut rng(9));
    let (mut bundle, plans) = full_bundle(&rho, Shots::Exact, 0);
    bundle.per_plan.remove(&PlanId::Mask(0b01));
    let stats = reconstruct_statistics(&bundle, &classify_basis(2), &plans).unwrap();
    assert_eq!(
        stats.missing_masks.iter().copied().collect::<Vec<_>>(),
        vec![0b01]
    );
    assert!((stats.total() - 1.0).abs() < 1e-12);
    assert!(matches!(
        corrected_pauli_expectation(&ps("ZI"), &stats, 0.9),
        Err(VdError::Coverage(_))
    ));
    assert!(corrected_pauli_expectation(&ps("IZ"), &stats, 0.9).is_ok());
    assert!(matches!(
        s2_from_statistics(&stats),
        Err(VdError::Coverage(_))
    ));
}

#[test]
fn antisymmetric_pairs_of_opposite_eigenvalue_contribute_nothing() {
    let cls = classify_basis(1);
    let mut probabilities = vec![0.0; 4];
    let (lo, hi) = cls.pairs().next().unwrap();
    probabilities[lo] = 0.5;
    probabilities[hi] = 0.5;
    let stats = ReconstructedStatistics {
        n: 1,
        probabilities,
        missing_masks: Default::default(),
        missing_mass: 0.0,
        clamped_mass: 0.0,
    };
    let est = corrected_pauli_expectation(&ps("Z"), &stats, 1.0).unwrap();
    assert_eq!(est.numerator, 0.0);
}

#[test]
fn degenerate_purity_is_an_error() {
    let rho = random_density_matrix(1, 2, &mut rng(2));
    let (bundle, plans) = full_bundle(&rho, Shots::Exact, 0);
    let stats = reconstruct_statistics(&bundle, &classify_basis(1), &plans).unwrap();
    assert!(matches!(
        corrected_pauli_expectation(&ps("Z"), &stats, 1e-7),
        Err(VdError::DegeneratePurity(_))
    ));
    assert!(corrected_pauli_expectation(&ps("X"), &stats, 0.5).is_err());
}

#[test]
fn depolarized_product_state_matches_dense_ratio() {
    let psi = random_state(2, &mut rng(77));
    let mixed = DensityMatrix::maximally_mixed(2);
    let pure = psi.to_density_matrix();
    let m = pure.to_matrix() * c(0.8) + mixed.to_matrix() * c(0.2);
    let rho = DensityMatrix::from_matrix(&m).unwrap();
    let h = PauliSum::from_terms(2, [(ps("ZZ"), 1.0)], 0.0).unwrap();
    let report = EnergyPipeline::compile(&h)
        .unwrap()
        .run_state(&rho, &PipelineOptions::default())
        .unwrap();
    let want = purified_ratio(&ps("ZZ").matrix(), &m);
    assert!((report.vd.value - want).abs() < 1e-10);
}

#[test]
fn pipeline_matches_dense_ratio_for_every_string() {
    let mut r = rng(1234);
    for n in 1..=2 {
        for p in PauliString::all(n).filter(|p| !p.is_identity()) {
            let h = PauliSum::from_terms(n, [(p.clone(), 1.0)], 0.0).unwrap();
            let pipe = EnergyPipeline::compile(&h).unwrap();
            for _ in 0..5 {
                let rho = random_density_matrix(n, 3, &mut r);
                let report = pipe.run_state(&rho, &PipelineOptions::default()).unwrap();
                let want = purified_ratio(&p.matrix(), &rho.to_matrix());
                assert!((report.vd.value - want).abs() < 1e-10, "{p}");
                assert!((report.raw - p.expectation(&rho)).abs() < 1e-12);
                assert!((report.s2 - rho.purity()).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn pure_state_correction_changes_nothing() {
    let h = PauliSum::from_terms(
        3,
        [(ps("ZZI"), 0.5), (ps("XYZ"), -0.2), (ps("IIX"), 0.3)],
        0.1,
    )
    .unwrap();
    let pipe = EnergyPipeline::compile(&h).unwrap();
    let psi = random_state(3, &mut rng(6));
    let report = pipe
        .run_state(
            &psi.to_density_matrix(),
            &PipelineOptions {
                with_bgate: true,
                ..Default::default()
            },
        )
        .unwrap();
    let e = h.expectation_pure(&psi);
    assert!((report.vd.value - e).abs() < 1e-10);
    assert!((report.raw - e).abs() < 1e-10);
    assert!((report.s2 - 1.0).abs() < 1e-10);
    let b = report.bgate.unwrap();
    assert!((b.denominator - 1.0).abs() < 1e-10);
    assert!((b.value - e).abs() < 1e-10);
}

fn two_qubit_setup() -> (PauliSum, Circuit) {
    let f = HamiltonianFixture::load(fixture_path("h2_2q_2.json")).unwrap();
    let h = f.hamiltonian().unwrap();
    let grid: Vec<f64> = (0..51)
        .map(|i| -std::f64::consts::PI + 2.0 * std::f64::consts::PI * i as f64 / 50.0)
        .collect();
    let spec = AnsatzSpec::reduced_ucc_2q();
    let best = vdistill::vqe::sweep_1d(&h, &spec, &grid, &NoiseSpec::noiseless(), None).unwrap();
    let circ = build_ansatz(&spec, &best.best().params).unwrap();
    (h, circ)
}

#[test]
fn noise_free_fixture_run_agrees_everywhere() {
    let (h, circ) = two_qubit_setup();
    let pipe = EnergyPipeline::compile(&h).unwrap();
    let report = pipe
        .run(
            &circ,
            &PipelineOptions {
                with_bgate: true,
                ..Default::default()
            },
        )
        .unwrap();
    let psi = apply_circuit_pure(&circ, &StateVector::zero(2)).unwrap();
    let ideal = h.expectation_pure(&psi);
    assert!((report.raw - ideal).abs() < 1e-9);
    assert!((report.vd.value - ideal).abs() < 1e-9);
    assert!((report.bgate.unwrap().value - ideal).abs() < 1e-9);
}

#[test]
fn correction_lowers_energy_on_noisy_two_qubit_fixture() {
    let (h, circ) = two_qubit_setup();
    let pipe = EnergyPipeline::compile(&h).unwrap();
    for i in 1..=10 {
        let opts = PipelineOptions {
            noise: NoiseSpec::depolarizing(i as f64 / 100.0),
            ..Default::default()
        };
        let report = pipe.run(&circ, &opts).unwrap();
        assert!(report.vd.value <= report.raw);
        assert!(report.s2 < 1.0);
    }
}

#[test]
fn shot_estimates_converge_to_exact_value() {
    let (h, circ) = two_qubit_setup();
    let pipe = EnergyPipeline::compile(&h).unwrap();
    let noise = NoiseSpec::depolarizing(0.05);
    let exact = pipe
        .run(
            &circ,
            &PipelineOptions {
                noise: noise.clone(),
                ..Default::default()
            },
        )
        .unwrap()
        .vd
        .value;
    let values: Vec<f64> = (0..100)
        .map(|seed| {
            let opts = PipelineOptions {
                noise: noise.clone(),
                shots: Shots::Finite(1_000_000),
                seed,
                with_bgate: false,
            };
            pipe.run(&circ, &opts).unwrap().vd.value
        })
        .collect();
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let sd =
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (values.len() - 1) as f64).sqrt();
    let inside = values
        .iter()
        .filter(|v| (*v - exact).abs() <= 3.0 * sd)
        .count();
    assert!(inside >= 95, "{inside}/100 within 3σ");
    assert!(sd < 1e-3);
}

#[test]
fn seeded_runs_are_reproducible() {
    let (h, circ) = two_qubit_setup();
    let pipe = EnergyPipeline::compile(&h).unwrap();
    let opts = |seed| PipelineOptions {
        shots: Shots::Finite(8196),
        seed,
        with_bgate: true,
        ..Default::default()
    };
    let a = pipe.run(&circ, &opts(3)).unwrap();
    let b = pipe.run(&circ, &opts(3)).unwrap();
    let other = pipe.run(&circ, &opts(4)).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.vd.value, other.vd.value);
}

#[test]
fn shot_counts_parse() {
    assert_eq!("exact".parse::<Shots>().unwrap(), Shots::Exact);
    assert_eq!("8196".parse::<Shots>().unwrap(), Shots::Finite(8196));
    assert!("0".parse::<Shots>().is_err());
    assert!("-3".parse::<Shots>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sampled_statistics_always_sum_to_one(seed in 0u64..100_000, shots in 1u64..2000) {
        let rho = random_density_matrix(2, 3, &mut rng(seed));
        let (bundle, plans) = full_bundle(&rho, Shots::Finite(shots), seed);
        let stats = reconstruct_statistics(&bundle, &classify_basis(2), &plans).unwrap();
        prop_assert!((stats.total() - 1.0).abs() < 1e-12);
        prop_assert!(stats.clamped_mass >= 0.0);
    }
}
