use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use vdistill::estimate::{EnergyPipeline, EnergyReport, Method, PipelineOptions};
use vdistill::fixture::HamiltonianFixture;
use vdistill::pauli::PauliSum;
use vdistill::sim::{apply_circuit_pure, derive_seed, Circuit, NoiseSpec, StateVector};
use vdistill::text::write_circuit;
use vdistill::vqe::{
    build_ansatz, optimize, sweep_1d, AnsatzSpec, OptimizationTrace, OptimizerSettings,
};
use vdistill::VdError;

use crate::config::{Experiment, ExperimentConfig};
use crate::error::{CliError, CliResult};
use crate::output::{join_nums, line_plot_svg, num, sha256_file, write_file, Table};

/// Corrected-energy standard deviations reported for 8196 shots × 100
/// repetitions, keyed by qubit count.
pub const REFERENCE_SHOT_STD: [(usize, f64); 3] = [(2, 1.296e-3), (3, 1.386e-3), (4, 2.038e-3)];

pub fn reference_shot_std(n_qubits: usize) -> Option<f64> {
    REFERENCE_SHOT_STD
        .iter()
        .find(|(n, _)| *n == n_qubits)
        .map(|(_, s)| *s)
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunSummary {
    pub outputs: Vec<PathBuf>,
    /// Rows that carry an error marker instead of values.
    pub row_errors: usize,
}

impl RunSummary {
    pub fn exit_code(&self) -> u8 {
        if self.row_errors > 0 {
            3
        } else {
            0
        }
    }
}

pub struct LoadedFixture {
    pub path: PathBuf,
    pub hash: String,
    pub fixture: HamiltonianFixture,
    pub hamiltonian: PauliSum,
    /// Ground energy from diagonalization.
    pub exact: f64,
}

impl LoadedFixture {
    pub fn load(path: &Path) -> CliResult<Self> {
        let wrap = |source: VdError| CliError::Fixture {
            path: path.to_path_buf(),
            source,
        };
        let fixture = HamiltonianFixture::load(path).map_err(wrap)?;
        let exact = fixture.verify().map_err(wrap)?;
        let hamiltonian = fixture.hamiltonian().map_err(wrap)?;
        Ok(Self {
            path: path.to_path_buf(),
            hash: sha256_file(path)?,
            fixture,
            hamiltonian,
            exact,
        })
    }

    pub fn name(&self) -> String {
        self.path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    }

    pub fn n_qubits(&self) -> usize {
        self.fixture.n_qubits
    }

    fn describe(&self) -> String {
        format!("{} sha256:{}", self.name(), self.hash)
    }
}

/// `points` angles from `-π` to `π` inclusive.
pub fn angle_grid(points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| -PI + 2.0 * PI * i as f64 / (points - 1) as f64)
        .collect()
}

/// Raw-energy minimization: a grid sweep for one parameter, multi-start
/// simplex otherwise.
pub fn minimize_raw(
    h: &PauliSum,
    spec: &AnsatzSpec,
    noise: &NoiseSpec,
    cfg: &ExperimentConfig,
) -> CliResult<OptimizationTrace> {
    let trace = if spec.n_params() == 1 {
        sweep_1d(h, spec, &angle_grid(cfg.grid_points), noise, None)?
    } else {
        let settings = OptimizerSettings {
            restarts: cfg.restarts,
            seed: cfg.seed,
            ..Default::default()
        };
        optimize(h, spec, noise, &settings, None)?
    };
    Ok(trace)
}

fn ideal_energy(h: &PauliSum, circuit: &Circuit) -> CliResult<f64> {
    let psi = apply_circuit_pure(circuit, &StateVector::zero(circuit.n_qubits))?;
    Ok(h.expectation_pure(&psi))
}

fn options(cfg: &ExperimentConfig, lambda: f64, stream: u64) -> PipelineOptions {
    PipelineOptions {
        noise: NoiseSpec::depolarizing(lambda),
        shots: cfg.shots,
        seed: derive_seed(cfg.seed, stream),
        with_bgate: cfg.method == Method::BgateHybrid,
    }
}

fn corrected(report: &EnergyReport, method: Method) -> f64 {
    report.value(method).unwrap_or(f64::NAN)
}

fn marker(e: &VdError) -> String {
    format!("error: {e}")
}

fn output_path(cfg: &ExperimentConfig) -> PathBuf {
    cfg.output
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}.csv", cfg.experiment)))
}

fn base_table(cfg: &ExperimentConfig, header: &[&str], fixtures: &[&LoadedFixture]) -> Table {
    let mut t = Table::new(header);
    t.meta("experiment", cfg.experiment);
    for f in fixtures {
        t.meta("fixture", f.describe());
    }
    t.meta("seed", cfg.seed)
        .meta("shots", cfg.shots)
        .meta("method", cfg.method);
    t
}

/// Title, x-axis label and points.
type Plot<'a> = (&'a str, &'a str, Vec<(f64, f64)>);

fn finish(
    cfg: &ExperimentConfig,
    table: &Table,
    plot: Option<Plot<'_>>,
    row_errors: usize,
) -> CliResult<RunSummary> {
    let path = output_path(cfg);
    table.write(&path)?;
    let mut outputs = vec![path];
    if let (Some(svg), Some((title, x_label, points))) = (&cfg.svg, plot) {
        write_file(
            svg,
            line_plot_svg(title, x_label, "corrected energy (Ha)", &points),
        )?;
        outputs.push(svg.clone());
    }
    Ok(RunSummary {
        outputs,
        row_errors,
    })
}

pub fn run(cfg: &ExperimentConfig) -> CliResult<RunSummary> {
    cfg.validate()?;
    match cfg.experiment {
        Experiment::Compile => compile(cfg),
        Experiment::DepolSweep => depol_sweep(cfg),
        Experiment::Dissociation => dissociation(cfg),
        Experiment::Vqe => vqe(cfg),
        Experiment::ShotNoise => shot_noise(cfg),
    }
}

fn single_fixture(cfg: &ExperimentConfig) -> CliResult<LoadedFixture> {
    let path = cfg
        .fixture
        .as_ref()
        .ok_or_else(|| CliError::config("missing `fixture`"))?;
    LoadedFixture::load(path)
}

fn bits(x: usize, width: usize) -> String {
    format!("{x:0width$b}")
}

/// Mask circuits, the `S₂` plan, the B-gate circuit and their recipes.
pub fn compile(cfg: &ExperimentConfig) -> CliResult<RunSummary> {
    let f = single_fixture(cfg)?;
    let n = f.n_qubits();
    let pipe = EnergyPipeline::compile(&f.hamiltonian)?;
    let dir = cfg
        .output
        .clone()
        .unwrap_or_else(|| PathBuf::from("compile"));
    let mut manifest = base_table(cfg, &["file", "kind", "mask", "cnots", "gates"], &[&f]);
    let mut outputs = Vec::new();
    let mut emit = |name: String, kind: &str, mask: String, circuit: &Circuit| -> CliResult<()> {
        let path = dir.join(&name);
        write_file(&path, write_circuit(circuit))?;
        manifest.push(vec![
            name,
            kind.into(),
            mask,
            circuit.cnot_count().to_string(),
            circuit.len().to_string(),
        ]);
        outputs.push(path);
        Ok(())
    };
    for plan in &pipe.mask_plans {
        let m = plan.mask_bits().unwrap_or_default();
        emit(format!("mask_{m}.txt"), "mask", m, &plan.circuit)?;
    }
    emit("s2.txt".into(), "s2", String::new(), &pipe.s2_plan.circuit)?;
    emit(
        "bgate.txt".into(),
        "bgate",
        String::new(),
        &pipe.bgate.circuit,
    )?;

    let recipe = &pipe.s2_recipe;
    let computational: BTreeMap<String, f64> = recipe
        .computational
        .iter()
        .map(|&(x, c)| (bits(x, 2 * n), c))
        .collect();
    let projection: BTreeMap<String, f64> = recipe
        .signed_terms()
        .map(|(x, s)| (bits(x, 2 * n), s as f64))
        .collect();
    let s2_json = serde_json::json!({ "computational": computational, "projection": projection });
    let bgate: BTreeMap<String, f64> = (0..1usize << (2 * n))
        .map(|o| (bits(o, 2 * n), pipe.bgate.s2_eigenvalue(o)))
        .collect();
    for (name, value) in [
        ("s2_recipe.json", s2_json),
        ("bgate_recipe.json", serde_json::json!(bgate)),
    ] {
        let path = dir.join(name);
        let text = serde_json::to_string_pretty(&value).map_err(VdError::from)? + "\n";
        write_file(&path, text)?;
        manifest.push(vec![
            name.into(),
            "recipe".into(),
            String::new(),
            String::new(),
            String::new(),
        ]);
        outputs.push(path);
    }
    let path = dir.join("manifest.csv");
    manifest.write(&path)?;
    outputs.push(path);
    Ok(RunSummary {
        outputs,
        row_errors: 0,
    })
}

/// Energies across the λ grid at the noiseless optimum of the ansatz.
pub fn depol_sweep(cfg: &ExperimentConfig) -> CliResult<RunSummary> {
    let f = single_fixture(cfg)?;
    let spec = cfg.ansatz_for(f.n_qubits())?;
    let pipe = EnergyPipeline::compile(&f.hamiltonian)?;
    let params = minimize_raw(&f.hamiltonian, &spec, &NoiseSpec::noiseless(), cfg)?
        .best()
        .params
        .clone();
    let circuit = build_ansatz(&spec, &params)?;
    let ideal = ideal_energy(&f.hamiltonian, &circuit)?;
    let grid = cfg.lambda_grid();
    let results: Vec<_> = grid
        .par_iter()
        .enumerate()
        .map(|(i, &l)| pipe.run(&circuit, &options(cfg, l, i as u64)))
        .collect();

    let bgate = cfg.method == Method::BgateHybrid;
    let mut header = vec![
        "lambda",
        "raw_energy",
        "corrected_energy",
        "ideal_energy",
        "s2_value",
    ];
    if bgate {
        header.push("bgate_energy");
    }
    header.push("status");
    let mut t = base_table(cfg, &header, &[&f]);
    t.meta("lambda", join_nums(grid, " "));
    t.meta(
        "ansatz",
        serde_json::to_string(&spec).map_err(VdError::from)?,
    );
    t.meta("params", join_nums(&params, " "));
    let mut errors = 0;
    let mut points = Vec::new();
    for (&l, r) in grid.iter().zip(&results) {
        let mut row = vec![num(l)];
        match r {
            Ok(rep) => {
                let value = match cfg.method {
                    Method::Raw => rep.raw,
                    _ => rep.vd.value,
                };
                points.push((l, value));
                row.extend([num(rep.raw), num(value), num(ideal), num(rep.s2)]);
                if bgate {
                    row.push(num(corrected(rep, Method::BgateHybrid)));
                }
                row.push("ok".into());
            }
            Err(e) => {
                errors += 1;
                row.extend([String::new(), String::new(), num(ideal), String::new()]);
                if bgate {
                    row.push(String::new());
                }
                row.push(marker(e));
            }
        }
        t.push(row);
    }
    finish(
        cfg,
        &t,
        Some(("Energy against depolarization", "lambda", points)),
        errors,
    )
}

/// Optimizes the raw energy under the configured noise for every fixture,
/// then estimates the corrected energy at that optimum.
pub fn dissociation(cfg: &ExperimentConfig) -> CliResult<RunSummary> {
    let mut fixtures = cfg
        .fixtures
        .iter()
        .map(|p| LoadedFixture::load(p))
        .collect::<CliResult<Vec<_>>>()?;
    fixtures.sort_by(|a, b| {
        a.fixture
            .meta
            .distance_angstrom
            .total_cmp(&b.fixture.meta.distance_angstrom)
            .then_with(|| a.name().cmp(&b.name()))
    });
    let specs = fixtures
        .iter()
        .map(|f| cfg.ansatz_for(f.n_qubits()))
        .collect::<CliResult<Vec<_>>>()?;
    let noise = NoiseSpec::depolarizing(cfg.lambda);
    let results: Vec<CliResult<Result<EnergyReport, VdError>>> = fixtures
        .par_iter()
        .zip(&specs)
        .enumerate()
        .map(|(i, (f, spec))| {
            let params = minimize_raw(&f.hamiltonian, spec, &noise, cfg)?
                .best()
                .params
                .clone();
            let circuit = build_ansatz(spec, &params)?;
            let pipe = EnergyPipeline::compile(&f.hamiltonian)?;
            Ok(pipe.run(&circuit, &options(cfg, cfg.lambda, i as u64)))
        })
        .collect();

    let refs: Vec<&LoadedFixture> = fixtures.iter().collect();
    let mut t = base_table(
        cfg,
        &[
            "distance",
            "fixture",
            "n_qubits",
            "exact_energy",
            "raw_energy",
            "corrected_energy",
            "s2_value",
            "status",
        ],
        &refs,
    );
    t.meta("lambda", num(cfg.lambda));
    let mut errors = 0;
    let mut points = Vec::new();
    for (f, r) in fixtures.iter().zip(results) {
        let d = f.fixture.meta.distance_angstrom;
        let mut row = vec![num(d), f.name(), f.n_qubits().to_string(), num(f.exact)];
        match r? {
            Ok(rep) => {
                let value = corrected(&rep, cfg.method);
                points.push((d, value));
                row.extend([num(rep.raw), num(value), num(rep.s2), "ok".into()]);
            }
            Err(e) => {
                errors += 1;
                row.extend([String::new(), String::new(), String::new(), marker(&e)]);
            }
        }
        t.push(row);
    }
    finish(
        cfg,
        &t,
        Some(("Dissociation curve", "distance (Angstrom)", points)),
        errors,
    )
}

/// The optimizer trace, closed by a row repeating the best raw point with
/// its corrected energy.
pub fn vqe(cfg: &ExperimentConfig) -> CliResult<RunSummary> {
    let f = single_fixture(cfg)?;
    let spec = cfg.ansatz_for(f.n_qubits())?;
    let noise = NoiseSpec::depolarizing(cfg.lambda);
    let trace = minimize_raw(&f.hamiltonian, &spec, &noise, cfg)?;
    let best = trace.best().clone();
    let pipe = EnergyPipeline::compile(&f.hamiltonian)?;
    let report = pipe.run(
        &build_ansatz(&spec, &best.params)?,
        &options(cfg, cfg.lambda, 0),
    );

    let mut t = base_table(
        cfg,
        &[
            "index",
            "run",
            "raw_energy",
            "corrected_energy",
            "best",
            "params",
        ],
        &[&f],
    );
    t.meta("lambda", num(cfg.lambda));
    t.meta(
        "ansatz",
        serde_json::to_string(&spec).map_err(VdError::from)?,
    );
    t.meta("exact_energy", num(f.exact));
    t.meta("converged", trace.converged);
    for (i, e) in trace.evaluations.iter().enumerate() {
        t.push(vec![
            i.to_string(),
            e.run.to_string(),
            num(e.raw_energy),
            String::new(),
            String::new(),
            join_nums(&e.params, ";"),
        ]);
    }
    let (value, flag, errors) = match &report {
        Ok(r) => (num(corrected(r, cfg.method)), "best".to_string(), 0),
        Err(e) => (String::new(), format!("best {}", marker(e)), 1),
    };
    t.push(vec![
        trace.best.to_string(),
        best.run.to_string(),
        num(best.raw_energy),
        value,
        flag,
        join_nums(&best.params, ";"),
    ]);
    finish(cfg, &t, None, errors)
}

pub struct ShotStats {
    pub mean: f64,
    pub std: f64,
    pub failures: usize,
}

/// Sample mean and standard deviation of the corrected energy over seeded
/// repetitions at the noiseless optimum.
pub fn shot_statistics(f: &LoadedFixture, cfg: &ExperimentConfig) -> CliResult<ShotStats> {
    let spec = cfg.ansatz_for(f.n_qubits())?;
    let params = minimize_raw(&f.hamiltonian, &spec, &NoiseSpec::noiseless(), cfg)?
        .best()
        .params
        .clone();
    let circuit = build_ansatz(&spec, &params)?;
    let pipe = EnergyPipeline::compile(&f.hamiltonian)?;
    let values: Vec<Result<f64, VdError>> = (0..cfg.repetitions)
        .into_par_iter()
        .map(|rep| {
            pipe.run(&circuit, &options(cfg, cfg.lambda, rep as u64))
                .map(|r| corrected(&r, cfg.method))
        })
        .collect();
    let ok: Vec<f64> = values
        .iter()
        .filter_map(|v| v.as_ref().ok().copied())
        .collect();
    let failures = values.len() - ok.len();
    let k = ok.len() as f64;
    let mean = ok.iter().sum::<f64>() / k;
    let std = if ok.len() < 2 {
        f64::NAN
    } else {
        (ok.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt()
    };
    Ok(ShotStats {
        mean,
        std,
        failures,
    })
}

pub fn shot_noise(cfg: &ExperimentConfig) -> CliResult<RunSummary> {
    let fixtures = cfg
        .fixtures
        .iter()
        .map(|p| LoadedFixture::load(p))
        .collect::<CliResult<Vec<_>>>()?;
    let refs: Vec<&LoadedFixture> = fixtures.iter().collect();
    let mut t = base_table(
        cfg,
        &[
            "fixture",
            "n_qubits",
            "shots",
            "repetitions",
            "mean_energy",
            "std_energy",
            "reference_std",
            "ratio",
            "in_band",
            "status",
        ],
        &refs,
    );
    t.meta("lambda", num(cfg.lambda));
    let mut errors = 0;
    for f in &fixtures {
        let s = shot_statistics(f, cfg)?;
        let reference = reference_shot_std(f.n_qubits());
        let ratio = reference.map(|r| s.std / r);
        let status = if s.failures == 0 {
            "ok".to_string()
        } else {
            errors += 1;
            format!(
                "error: {} of {} repetitions failed",
                s.failures, cfg.repetitions
            )
        };
        t.push(vec![
            f.name(),
            f.n_qubits().to_string(),
            cfg.shots.to_string(),
            cfg.repetitions.to_string(),
            num(s.mean),
            num(s.std),
            reference.map(num).unwrap_or_default(),
            ratio.map(num).unwrap_or_default(),
            ratio
                .map(|r| (0.5..=2.0).contains(&r).to_string())
                .unwrap_or_default(),
            status,
        ]);
    }
    finish(cfg, &t, None, errors)
}
