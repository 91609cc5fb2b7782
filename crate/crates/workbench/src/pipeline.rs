//! Library-level pipelines behind the CLI commands. Parallel work is reduced
//! in input order, so results do not depend on thread scheduling.

use rayon::prelude::*;
use ringcasimir_core::chiral::{
    build_t, bulk_density, chiral_vqe, continuum_target, dirac_sea_energy, dispersion_grid, dispersion_table,
    ChiralSystem, DispersionPoint,
};
use ringcasimir_core::lattice::{
    casimir_exact, mode_sum_energy, subtraction_constant, term_count, FamilyKind, ModeFamily, MAX_RING_QUBITS,
};
use ringcasimir_core::vqe::{
    assemble_report, partition_jobs, percent_difference, run_vqe, CasimirReport, ModeJob, VqeConfig, VqeResult,
};
use ringcasimir_core::hamiltonian::HamiltonianSpec;
use ringcasimir_core::Error;

use crate::records::{ChiralRecord, CountRow, VqeRecord};

/// One line of `exact` output for a field family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactRow {
    pub family: ModeFamily,
    pub energy: f64,
    pub subtraction: f64,
}

pub fn exact_row(family: ModeFamily, corrected: bool) -> ExactRow {
    if corrected {
        ExactRow { family, energy: casimir_exact(&family), subtraction: subtraction_constant(family.statistics) }
    } else {
        ExactRow { family, energy: mode_sum_energy(&family), subtraction: 0.0 }
    }
}

/// Partitioned VQE over several families at once. Every mode of every
/// family is an independent work item.
pub fn partitioned_sweep(families: &[ModeFamily], cfg: &VqeConfig) -> Result<Vec<CasimirReport>, Error> {
    let jobs: Vec<(usize, ModeJob)> = families
        .iter()
        .enumerate()
        .map(|(f, family)| Ok(partition_jobs(family, cfg)?.into_iter().map(move |j| (f, j))))
        .collect::<Result<Vec<_>, Error>>()?
        .into_iter()
        .flatten()
        .collect();
    let runs = jobs.par_iter().map(|(_, j)| j.run()).collect::<Result<Vec<_>, _>>()?;
    let mut per_family: Vec<Vec<_>> = vec![Vec::new(); families.len()];
    for ((f, _), run) in jobs.iter().zip(runs) {
        per_family[*f].push(run);
    }
    Ok(families.iter().zip(per_family).map(|(fam, runs)| assemble_report(fam, runs)).collect())
}

pub fn partitioned(family: &ModeFamily, cfg: &VqeConfig) -> Result<CasimirReport, Error> {
    Ok(partitioned_sweep(std::slice::from_ref(family), cfg)?.remove(0))
}

pub fn family_record(report: &CasimirReport, cfg: &VqeConfig) -> VqeRecord {
    VqeRecord {
        family: report.family.selector(),
        sites: Some(report.family.sites),
        exact_energy: report.exact_energy,
        vqe_energy: report.vqe_energy,
        percent_difference: report.percent_difference(),
        iterations: report.iterations(),
        evaluations: report.evaluations(),
        optimizer: cfg.optimizer.name().to_string(),
        seed: cfg.seed,
        converged: report.converged(),
    }
}

/// VQE on an arbitrary Hamiltonian, compared against its exact ground energy.
pub fn hamiltonian_vqe(h: &HamiltonianSpec, cfg: &VqeConfig) -> Result<(f64, VqeResult), Error> {
    let result = run_vqe(h, cfg)?;
    Ok((h.ground_energy()?, result))
}

pub fn plain_record(label: &str, sites: Option<usize>, exact: f64, r: &VqeResult, cfg: &VqeConfig) -> VqeRecord {
    VqeRecord {
        family: label.to_string(),
        sites,
        exact_energy: exact,
        vqe_energy: r.energy,
        percent_difference: percent_difference(r.energy, exact),
        iterations: r.iterations,
        evaluations: r.evaluations,
        optimizer: cfg.optimizer.name().to_string(),
        seed: cfg.seed,
        converged: r.converged,
    }
}

/// Slater-determinant VQE on a chiral system; returns the exact Dirac-sea
/// energy, the best sector's result and the evaluations spent over all sectors.
pub fn chiral_vqe_run(system: &ChiralSystem, cfg: &VqeConfig) -> Result<(f64, VqeResult, usize), Error> {
    let t = build_t(system);
    let exact = dirac_sea_energy(&t)?;
    let out = chiral_vqe(&t, cfg)?;
    let evaluations = out.sectors.iter().map(|s| s.evaluations).sum();
    Ok((exact, out.best().clone(), evaluations))
}

/// The subtraction used when none is given: `L · scale · bulk_density(η)`.
pub fn bulk_subtraction(system: &ChiralSystem) -> Result<f64, Error> {
    Ok(system.sites() as f64 * system.scale() * bulk_density(system.eta())?)
}

pub fn chiral_record(system: &ChiralSystem, subtraction: Option<f64>) -> Result<ChiralRecord, Error> {
    let sea = dirac_sea_energy(&build_t(system))?;
    let subtraction = match subtraction {
        Some(s) => s,
        None => bulk_subtraction(system)?,
    };
    Ok(ChiralRecord {
        sites: system.sites(),
        eta: system.eta(),
        scale: system.scale(),
        dirac_sea_energy: sea,
        subtraction,
        casimir: sea - subtraction,
        continuum_target: continuum_target(system.sites()),
    })
}

/// Ring momenta, plus a uniform grid of `dense` momenta when asked, sorted by
/// momentum with coincident points kept once.
pub fn dispersion_rows(system: &ChiralSystem, dense: Option<usize>) -> Vec<DispersionPoint> {
    let mut rows = dispersion_table(system);
    if let Some(points) = dense {
        rows.extend(dispersion_grid(system, points));
        rows.sort_by(|a, b| a.momentum.total_cmp(&b.momentum));
        rows.dedup_by(|a, b| (a.momentum - b.momentum).abs() < 1e-12);
    }
    rows
}

/// Pauli counts of a family over a range of sizes; sizes beyond the ring
/// capacity get `terms = None`.
pub fn pauli_counts(kind: FamilyKind, sites: impl IntoIterator<Item = usize>) -> Result<Vec<CountRow>, Error> {
    let sizes: Vec<usize> = sites.into_iter().collect();
    sizes
        .par_iter()
        .map(|&n| {
            let family = kind.at(n)?;
            let qubits = family.qubits();
            let terms = if qubits > MAX_RING_QUBITS {
                None
            } else {
                match term_count(&family) {
                    Ok(t) => Some(t),
                    Err(Error::Capacity(_)) => None,
                    Err(e) => return Err(e),
                }
            };
            Ok(CountRow { sites: n, qubits, terms })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ringcasimir_core::lattice::{Boundary, Statistics};
    use ringcasimir_core::vqe::partitioned_run;

    #[test]
    fn parallel_sweep_matches_sequential_runs() {
        let cfg = VqeConfig { seed: 3, ..Default::default() };
        let families: Vec<ModeFamily> = FamilyKind::ALL.iter().map(|k| k.at(3).unwrap()).collect();
        let par = partitioned_sweep(&families, &cfg).unwrap();
        for (fam, report) in families.iter().zip(&par) {
            assert_eq!(report, &partitioned_run(fam, &cfg).unwrap());
        }
    }

    #[test]
    fn uncorrected_row_is_mode_sum() {
        let fam = ModeFamily::new(Statistics::Boson, Boundary::Periodic, 1).unwrap();
        let raw = exact_row(fam, false);
        assert!((raw.energy - 0.5 * 8.0 / 3.0 * 2.0 * (std::f64::consts::PI / 3.0).sin()).abs() < 1e-12);
        let corrected = exact_row(fam, true);
        assert!((corrected.energy - (raw.energy - 8.0 / std::f64::consts::PI)).abs() < 1e-12);
    }

    #[test]
    fn counts_mark_capacity() {
        let kind: FamilyKind = "boson-periodic".parse().unwrap();
        let rows = pauli_counts(kind, 7..=9).unwrap();
        assert_eq!(rows[1].qubits, 16);
        assert!(rows[1].terms.is_some());
        assert_eq!(rows[2].terms, None);
        assert_eq!(rows[2].qubits, 18);
    }

    #[test]
    fn dense_dispersion_is_sorted_union() {
        let sys = ChiralSystem::new(4, 2.0).unwrap();
        let rows = dispersion_rows(&sys, Some(8));
        assert_eq!(rows.len(), 8);
        assert!(rows.windows(2).all(|w| w[0].momentum < w[1].momentum));
        assert_eq!(dispersion_rows(&sys, None).len(), 4);
    }

    #[test]
    fn chiral_record_subtractions() {
        let sys = ChiralSystem::new(6, 1.0).unwrap();
        let r = chiral_record(&sys, Some(-14.0)).unwrap();
        assert!((r.dirac_sea_energy + 8.0 + 4.0 * 3f64.sqrt()).abs() < 1e-9);
        assert!((r.casimir - (r.dirac_sea_energy + 14.0)).abs() < 1e-12);
        let b = chiral_record(&sys, None).unwrap();
        assert!((b.subtraction + 6.0 * 8.0 / std::f64::consts::PI).abs() < 1e-9);
    }
}
