//! Variational ground-energy search on an exact statevector.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ansatz::{Ansatz, HardwareEfficient, MAX_STATEVECTOR_QUBITS};
use crate::error::{arg_err, capacity_err, Result};
use crate::hamiltonian::HamiltonianSpec;
use crate::lattice::{casimir_exact, mode_hamiltonian, subtraction_constant, Mode, ModeFamily};
use crate::optimize::{minimize, MinimizeOptions, Optimizer};
use crate::pauli::{PauliSum, DEFAULT_DROP_TOL};

/// Half-width of the uniform window for initial parameters.
pub const INITIAL_SPREAD: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VqeConfig {
    /// Entangling layers of the hardware-efficient ansatz.
    pub depth: usize,
    pub optimizer: Optimizer,
    pub max_iterations: usize,
    pub tolerance: f64,
    pub seed: u64,
    /// `None` evaluates expectations exactly.
    pub shots: Option<u64>,
}

impl Default for VqeConfig {
    fn default() -> Self {
        Self {
            depth: 1,
            optimizer: Optimizer::LinearApprox,
            max_iterations: 500,
            tolerance: 1e-8,
            seed: 0,
            shots: None,
        }
    }
}

impl VqeConfig {
    pub fn validate(&self) -> Result<()> {
        self.minimize_options().validate()?;
        if self.shots == Some(0) {
            return Err(arg_err!("shots must be positive when given"));
        }
        Ok(())
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    fn minimize_options(&self) -> MinimizeOptions {
        MinimizeOptions {
            optimizer: self.optimizer,
            max_iterations: self.max_iterations,
            tolerance: self.tolerance,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VqeResult {
    pub energy: f64,
    pub parameters: Vec<f64>,
    /// `(iteration, best energy so far)` per accepted iterate.
    pub trace: Vec<(usize, f64)>,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

/// Initial parameters, uniform in `(−0.1, 0.1)`.
pub fn initial_parameters(count: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.random_range(-INITIAL_SPREAD..INITIAL_SPREAD)).collect()
}

fn check_capacity(qubits: usize) -> Result<()> {
    if qubits > MAX_STATEVECTOR_QUBITS {
        return Err(capacity_err!(
            "VQE limited to {MAX_STATEVECTOR_QUBITS} qubits, Hamiltonian has {qubits}; run it partitioned per mode"
        ));
    }
    Ok(())
}

/// VQE with the hardware-efficient ansatz of depth `cfg.depth`.
pub fn run_vqe(h: &HamiltonianSpec, cfg: &VqeConfig) -> Result<VqeResult> {
    check_capacity(h.qubits())?;
    let ansatz = HardwareEfficient::new(h.qubits(), cfg.depth)?;
    run_vqe_with(&h.to_pauli(DEFAULT_DROP_TOL)?, &ansatz, cfg)
}

/// VQE over an arbitrary ansatz.
pub fn run_vqe_with<A: Ansatz + ?Sized>(h: &PauliSum, ansatz: &A, cfg: &VqeConfig) -> Result<VqeResult> {
    cfg.validate()?;
    check_capacity(h.qubits())?;
    if ansatz.qubits() != h.qubits() {
        return Err(arg_err!(
            "ansatz acts on {} qubits, Hamiltonian on {}",
            ansatz.qubits(),
            h.qubits()
        ));
    }
    let x0 = initial_parameters(ansatz.parameter_count(), cfg.seed);
    let mut sampler = ChaCha8Rng::seed_from_u64(cfg.seed);
    sampler.set_stream(1);
    let objective = |theta: &[f64]| -> f64 {
        let state = ansatz.state(theta).expect("parameter count fixed by the ansatz");
        match cfg.shots {
            None => h.expectation(&state),
            Some(shots) => h.sampled_expectation(&state, shots, &mut sampler),
        }
        .expect("ansatz states are normalized and sized to the register")
    };
    let m = minimize(objective, &x0, &cfg.minimize_options())?;
    Ok(VqeResult {
        energy: m.value,
        parameters: m.x,
        trace: m.trace,
        iterations: m.iterations,
        evaluations: m.evaluations,
        converged: m.converged,
    })
}

/// `100 (vqe − exact) / exact`.
pub fn percent_difference(vqe: f64, exact: f64) -> f64 {
    100.0 * (vqe - exact) / exact
}

/// One per-mode VQE of a partitioned run.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeJob {
    pub mode: Mode,
    pub hamiltonian: HamiltonianSpec,
    pub config: VqeConfig,
}

impl ModeJob {
    pub fn run(&self) -> Result<ModeRun> {
        Ok(ModeRun {
            mode: self.mode,
            exact: self.hamiltonian.ground_energy()?,
            result: run_vqe(&self.hamiltonian, &self.config)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeRun {
    pub mode: Mode,
    pub exact: f64,
    pub result: VqeResult,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CasimirReport {
    pub family: ModeFamily,
    pub exact_energy: f64,
    pub vqe_energy: f64,
    pub subtraction: f64,
    pub modes: Vec<ModeRun>,
}

impl CasimirReport {
    pub fn percent_difference(&self) -> f64 {
        percent_difference(self.vqe_energy, self.exact_energy)
    }

    pub fn converged(&self) -> bool {
        self.modes.iter().all(|m| m.result.converged)
    }

    pub fn iterations(&self) -> usize {
        self.modes.iter().map(|m| m.result.iterations).sum()
    }

    pub fn evaluations(&self) -> usize {
        self.modes.iter().map(|m| m.result.evaluations).sum()
    }

    pub fn per_mode_energies(&self) -> Vec<f64> {
        self.modes.iter().map(|m| m.result.energy).collect()
    }

    /// Concatenated per-mode traces shifted to a running total: each row is the
    /// sum of finished modes' energies, the current mode's best so far, and the
    /// subtraction constant, with iterations counted across modes.
    pub fn combined_trace(&self) -> Vec<(usize, f64)> {
        let mut out = Vec::new();
        let mut done = self.subtraction;
        let pending: f64 = self.modes.iter().map(|m| m.result.trace[0].1).sum();
        let mut pending = pending;
        let mut offset = 0;
        for m in &self.modes {
            pending -= m.result.trace[0].1;
            for &(it, e) in &m.result.trace {
                out.push((offset + it, done + e + pending));
            }
            done += m.result.energy;
            offset += m.result.iterations + 1;
        }
        out
    }

    pub fn label(&self) -> String {
        format!("{}", self.family)
    }
}

/// Splits a family into one job per mode; job `k` uses seed `cfg.seed + k`.
pub fn partition_jobs(family: &ModeFamily, cfg: &VqeConfig) -> Result<Vec<ModeJob>> {
    cfg.validate()?;
    family
        .modes()
        .into_iter()
        .enumerate()
        .map(|(k, mode)| {
            Ok(ModeJob {
                mode,
                hamiltonian: mode_hamiltonian(&mode)?,
                config: cfg.with_seed(cfg.seed.wrapping_add(k as u64)),
            })
        })
        .collect()
}

/// Sums finished per-mode runs (in job order) into a report.
pub fn assemble_report(family: &ModeFamily, modes: Vec<ModeRun>) -> CasimirReport {
    let subtraction = subtraction_constant(family.statistics);
    CasimirReport {
        family: *family,
        exact_energy: casimir_exact(family),
        vqe_energy: modes.iter().map(|m| m.result.energy).sum::<f64>() + subtraction,
        subtraction,
        modes,
    }
}

/// Runs every mode sequentially and reports the corrected total.
pub fn partitioned_run(family: &ModeFamily, cfg: &VqeConfig) -> Result<CasimirReport> {
    let runs = partition_jobs(family, cfg)?
        .iter()
        .map(ModeJob::run)
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble_report(family, runs))
}
