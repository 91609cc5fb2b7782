//! Free boson and fermion fields on a ring: normal-mode frequencies,
//! regularized mode sums, their large-N expansions and the qubit Hamiltonians
//! built from them.
//!
//! A ring of `N` kept modes uses frequencies
//!
//! ```text
//! ω_i = s · 2 sin(θ_i),   s = 8/(2N+1) (bosons) or 32/(2N+1) (fermions)
//! θ_i = 2π i/(4N+2) (periodic) or 2π (i + 1/2)/(4N+2) (twisted),  i = 1..N
//! ```
//!
//! and the Casimir energy is the signed half mode sum plus a fixed counter-term
//! (−8/π bosons, +32/π fermions, +24/π both).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;


#[allow(unused_imports)] // only needed when std is absent from the build
use num_traits::Float;

use crate::error::{arg_err, capacity_err, Error, Result};
use crate::hamiltonian::HamiltonianSpec;
use crate::linalg::{hermitian_eigenvalues, kron_sum_diagonals, ComplexMatrix};
use crate::operators::{boson_lower, fermion_lower};
use crate::pauli::DEFAULT_DROP_TOL;

/// Largest register assembled for a whole ring.
pub const MAX_RING_QUBITS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Boson,
    Fermion,
}

impl Field {
    /// Frequency prefactor numerator (8 or 32).
    fn prefactor_numerator(self) -> f64 {
        match self {
            Field::Boson => 8.0,
            Field::Fermion => 32.0,
        }
    }

    /// Sign of the zero-point term: `+ω/2` for bosons, `−ω/2` for fermions.
    pub fn vacuum_sign(self) -> f64 {
        match self {
            Field::Boson => 1.0,
            Field::Fermion => -1.0,
        }
    }

    /// Qubits needed per mode.
    pub fn qubits_per_mode(self) -> usize {
        match self {
            Field::Boson => 2,
            Field::Fermion => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statistics {
    Boson,
    Fermion,
    /// One boson and one fermion field sharing boundary and size.
    Combined,
}

impl Statistics {
    pub fn fields(self) -> &'static [Field] {
        match self {
            Statistics::Boson => &[Field::Boson],
            Statistics::Fermion => &[Field::Fermion],
            Statistics::Combined => &[Field::Boson, Field::Fermion],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Boundary {
    Periodic,
    /// Antiperiodic.
    Twisted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeFamily {
    pub statistics: Statistics,
    pub boundary: Boundary,
    pub sites: usize,
}

/// One normal mode of a family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub field: Field,
    pub boundary: Boundary,
    pub sites: usize,
    /// 1-based mode index.
    pub index: usize,
    pub frequency: f64,
}

impl ModeFamily {
    pub fn new(statistics: Statistics, boundary: Boundary, sites: usize) -> Result<Self> {
        if sites == 0 {
            return Err(arg_err!("a ring needs at least one site"));
        }
        Ok(Self {
            statistics,
            boundary,
            sites,
        })
    }

    pub fn with_sites(self, sites: usize) -> Result<Self> {
        Self::new(self.statistics, self.boundary, sites)
    }

    /// All modes, bosons first, each field in index order.
    pub fn modes(&self) -> Vec<Mode> {
        self.statistics
            .fields()
            .iter()
            .flat_map(|&field| {
                (1..=self.sites).map(move |index| Mode {
                    field,
                    boundary: self.boundary,
                    sites: self.sites,
                    index,
                    frequency: raw_frequency(field, self.boundary, self.sites, index as f64),
                })
            })
            .collect()
    }

    /// Qubits for the assembled ring register.
    pub fn qubits(&self) -> usize {
        self.statistics
            .fields()
            .iter()
            .map(|f| f.qubits_per_mode() * self.sites)
            .sum()
    }

    /// Selector string, e.g. `boson-periodic`.
    pub fn selector(&self) -> String {
        format!("{}-{}", statistics_name(self.statistics), boundary_name(self.boundary))
    }
}

fn statistics_name(s: Statistics) -> &'static str {
    match s {
        Statistics::Boson => "boson",
        Statistics::Fermion => "fermion",
        Statistics::Combined => "combined",
    }
}

fn boundary_name(b: Boundary) -> &'static str {
    match b {
        Boundary::Periodic => "periodic",
        Boundary::Twisted => "twisted",
    }
}

impl fmt::Display for ModeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} N={}", self.selector(), self.sites)
    }
}

/// A family selector without a size, parsed from strings like `fermion-twisted`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilyKind {
    pub statistics: Statistics,
    pub boundary: Boundary,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [
        FamilyKind { statistics: Statistics::Boson, boundary: Boundary::Periodic },
        FamilyKind { statistics: Statistics::Boson, boundary: Boundary::Twisted },
        FamilyKind { statistics: Statistics::Fermion, boundary: Boundary::Periodic },
        FamilyKind { statistics: Statistics::Fermion, boundary: Boundary::Twisted },
        FamilyKind { statistics: Statistics::Combined, boundary: Boundary::Periodic },
        FamilyKind { statistics: Statistics::Combined, boundary: Boundary::Twisted },
    ];

    pub fn at(self, sites: usize) -> Result<ModeFamily> {
        ModeFamily::new(self.statistics, self.boundary, sites)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", statistics_name(self.statistics), boundary_name(self.boundary))
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (stat, bc) = s
            .split_once('-')
            .ok_or_else(|| arg_err!("family selector '{s}' is not of the form <statistics>-<boundary>"))?;
        let statistics = match stat {
            "boson" => Statistics::Boson,
            "fermion" => Statistics::Fermion,
            "combined" => Statistics::Combined,
            _ => return Err(arg_err!("unknown statistics '{stat}'")),
        };
        let boundary = match bc {
            "periodic" => Boundary::Periodic,
            "twisted" => Boundary::Twisted,
            _ => return Err(arg_err!("unknown boundary '{bc}'")),
        };
        Ok(Self { statistics, boundary })
    }
}

/// Mode frequency formula evaluated at a (possibly fractional or zero) index.
pub(crate) fn raw_frequency(field: Field, boundary: Boundary, sites: usize, i: f64) -> f64 {
    let n = sites as f64;
    let s = field.prefactor_numerator() / (2.0 * n + 1.0);
    let shift = match boundary {
        Boundary::Periodic => 0.0,
        Boundary::Twisted => 0.5,
    };
    s * 2.0 * (2.0 * PI * (i + shift) / (4.0 * n + 2.0)).sin()
}

/// Frequency prefactor `s` of a field on an `N`-site ring.
pub fn prefactor(field: Field, sites: usize) -> f64 {
    field.prefactor_numerator() / (2.0 * sites as f64 + 1.0)
}

/// Frequency of mode `i` (1-based) of a single-field family.
pub fn mode_frequency(field: Field, boundary: Boundary, sites: usize, i: usize) -> Result<f64> {
    if sites == 0 {
        return Err(arg_err!("a ring needs at least one site"));
    }
    if i == 0 || i > sites {
        return Err(arg_err!("mode index {i} outside 1..={sites}"));
    }
    Ok(raw_frequency(field, boundary, sites, i as f64))
}

/// Counter-term added to the raw half mode sum.
pub fn subtraction_constant(statistics: Statistics) -> f64 {
    match statistics {
        Statistics::Boson => -8.0 / PI,
        Statistics::Fermion => 32.0 / PI,
        Statistics::Combined => 24.0 / PI,
    }
}

/// Raw zero-point energy `±½ Σ ω_i` before subtraction.
pub fn mode_sum_energy(family: &ModeFamily) -> f64 {
    family
        .modes()
        .iter()
        .map(|m| 0.5 * m.field.vacuum_sign() * m.frequency)
        .sum()
}

/// Regularized Casimir energy: mode sum plus counter-term.
pub fn casimir_exact(family: &ModeFamily) -> f64 {
    mode_sum_energy(family) + subtraction_constant(family.statistics)
}

/// Casimir energy from the full `2N+1`-site ring spectrum, `½ Σ_k ω_k` over
/// all ring momenta, plus the same counter-term.
///
/// For periodic rings this equals [`casimir_exact`]. For twisted rings the
/// full spectrum is `θ` evaluated at `i = 0..N-1` (twice each) plus the
/// unpaired `i = N` mode, which is what the large-N expansions describe.
pub fn casimir_full_ring(family: &ModeFamily) -> f64 {
    let n = family.sites;
    let half_sum = |field: Field| -> f64 {
        match family.boundary {
            Boundary::Periodic => (1..=n).map(|i| raw_frequency(field, Boundary::Periodic, n, i as f64)).sum(),
            Boundary::Twisted => {
                (0..n).map(|i| raw_frequency(field, Boundary::Twisted, n, i as f64)).sum::<f64>()
                    + 0.5 * raw_frequency(field, Boundary::Twisted, n, n as f64)
            }
        }
    };
    family
        .statistics
        .fields()
        .iter()
        .map(|&f| 0.5 * f.vacuum_sign() * half_sum(f))
        .sum::<f64>()
        + subtraction_constant(family.statistics)
}

/// Large-N expansion of the Casimir energy truncated after `1/N^order`.
pub fn large_n_series(family: &ModeFamily, order: u32) -> Result<f64> {
    if !(2..=4).contains(&order) {
        return Err(arg_err!("series order must be 2, 3 or 4, got {order}"));
    }
    let coefficients = boson_series_coefficients(family.boundary);
    let n = family.sites as f64;
    let boson: f64 = coefficients
        .iter()
        .zip(2..=order)
        .map(|(c, k)| c / n.powi(k as i32))
        .sum();
    let factor: f64 = family
        .statistics
        .fields()
        .iter()
        .map(|f| match f {
            Field::Boson => 1.0,
            Field::Fermion => -4.0,
        })
        .sum();
    Ok(factor * boson)
}

/// Boson coefficients of `1/N^2`, `1/N^3`, `1/N^4`.
pub fn boson_series_coefficients(boundary: Boundary) -> [f64; 3] {
    let pi3 = PI * PI * PI;
    match boundary {
        Boundary::Periodic => [-PI / 6.0, PI / 6.0, -(180.0 * PI + pi3) / 1440.0],
        Boundary::Twisted => [PI / 12.0, -PI / 12.0, PI / 16.0 - 7.0 * pi3 / 11520.0],
    }
}

/// Continuum Casimir energy density on a circle of radius `radius`.
pub fn continuum_density(statistics: Statistics, boundary: Boundary, radius: f64) -> Result<f64> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(arg_err!("radius must be positive, got {radius}"));
    }
    let a2 = radius * radius;
    let boson = match boundary {
        Boundary::Periodic => -PI / (6.0 * a2),
        Boundary::Twisted => PI / (12.0 * a2),
    };
    Ok(statistics
        .fields()
        .iter()
        .map(|f| match f {
            Field::Boson => boson,
            Field::Fermion => -4.0 * boson,
        })
        .sum())
}

/// Single-mode Hamiltonian `ω(a†a + ½)` on two qubits or `ω(c†c − ½)` on one.
pub fn mode_hamiltonian(mode: &Mode) -> Result<HamiltonianSpec> {
    let (lower, shift) = match mode.field {
        Field::Boson => (boson_lower(1, 1)?, 0.5),
        Field::Fermion => (fermion_lower(1, 1)?, -0.5),
    };
    let number = &lower.adjoint() * &lower;
    let mut diag = number
        .as_real_diagonal()
        .ok_or_else(|| arg_err!("number operator is not diagonal"))?;
    for d in &mut diag {
        *d = mode.frequency * (*d + shift);
    }
    HamiltonianSpec::diagonal(
        format!(
            "{}-{} N={} mode {}",
            match mode.field {
                Field::Boson => "boson",
                Field::Fermion => "fermion",
            },
            boundary_name(mode.boundary),
            mode.sites,
            mode.index
        ),
        diag,
    )
}

/// Hamiltonian of mode `i` of a single-field family.
pub fn build_mode_hamiltonian(family: &ModeFamily, i: usize) -> Result<HamiltonianSpec> {
    let field = match family.statistics {
        Statistics::Boson => Field::Boson,
        Statistics::Fermion => Field::Fermion,
        Statistics::Combined => {
            return Err(arg_err!("combined families have two fields; use ModeFamily::modes"))
        }
    };
    let frequency = mode_frequency(field, family.boundary, family.sites, i)?;
    mode_hamiltonian(&Mode {
        field,
        boundary: family.boundary,
        sites: family.sites,
        index: i,
        frequency,
    })
}

/// Whole-ring Hamiltonian `Σ_i H_i`, each mode on its own qubits (mode 1
/// leftmost, bosons before fermions). Ground energy equals [`mode_sum_energy`].
pub fn build_ring_hamiltonian(family: &ModeFamily) -> Result<HamiltonianSpec> {
    let qubits = family.qubits();
    if qubits > MAX_RING_QUBITS {
        return Err(capacity_err!(
            "{family} needs {qubits} qubits, above the {MAX_RING_QUBITS}-qubit cap; run it partitioned per mode"
        ));
    }
    let per_mode = family
        .modes()
        .iter()
        .map(|m| {
            mode_hamiltonian(m).map(|h| h.as_diagonal().expect("mode Hamiltonians are diagonal"))
        })
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&[f64]> = per_mode.iter().map(Vec::as_slice).collect();
    HamiltonianSpec::diagonal(format!("{family}"), kron_sum_diagonals(&refs))
}

/// Ring Hamiltonian with the counter-term folded in as an identity term, so
/// its ground energy is [`casimir_exact`].
pub fn build_corrected_ring_hamiltonian(family: &ModeFamily) -> Result<HamiltonianSpec> {
    let mut h = build_ring_hamiltonian(family)?.shifted(subtraction_constant(family.statistics));
    h.label = format!("{family} corrected");
    Ok(h)
}

/// Pauli terms (identity included) of the corrected ring Hamiltonian at the
/// default drop tolerance.
pub fn term_count(family: &ModeFamily) -> Result<usize> {
    Ok(build_corrected_ring_hamiltonian(family)?.to_pauli(DEFAULT_DROP_TOL)?.len())
}

/// Second-difference matrix of a scalar field on a `2N+1`-site ring.
pub fn coupling_matrix(sites: usize, boundary: Boundary) -> ComplexMatrix {
    let dim = 2 * sites + 1;
    let mut m = ComplexMatrix::zeros(dim, dim);
    for j in 0..dim {
        m[(j, j)] += 2.0;
        if j + 1 < dim {
            m[(j, j + 1)] -= 1.0;
            m[(j + 1, j)] -= 1.0;
        }
    }
    let corner = match boundary {
        Boundary::Periodic => -1.0,
        Boundary::Twisted => 1.0,
    };
    m[(0, dim - 1)] += corner;
    m[(dim - 1, 0)] += corner;
    m
}

/// Normal-mode frequencies from diagonalizing [`coupling_matrix`]: square
/// roots of its eigenvalues scaled by the field prefactor, ascending.
pub fn fourier_frequencies(field: Field, boundary: Boundary, sites: usize) -> Result<Vec<f64>> {
    let s = prefactor(field, sites);
    Ok(hermitian_eigenvalues(&coupling_matrix(sites, boundary))?
        .into_iter()
        // The matrix is positive semidefinite with norm ≤ 4, so anything this
        // close to zero is roundoff, which the square root would amplify.
        .map(|ev| if ev < 1e-13 { 0.0 } else { s * ev.sqrt() })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kron_chain, ComplexMatrix};
    use alloc::vec;

    fn fam(s: Statistics, b: Boundary, n: usize) -> ModeFamily {
        ModeFamily::new(s, b, n).unwrap()
    }

    #[test]
    fn frequency_examples() {
        let bp = mode_frequency(Field::Boson, Boundary::Periodic, 1, 1).unwrap();
        assert!((bp - 8.0 / 3.0 * 2.0 * (PI / 3.0).sin()).abs() < 1e-15);
        assert!((bp - 4.618802).abs() < 1e-6);
        let bt = mode_frequency(Field::Boson, Boundary::Twisted, 2, 1).unwrap();
        assert!((bt - 1.6 * 2.0 * (3.0 * PI / 10.0).sin()).abs() < 1e-15);
        assert!((bt - 2.588854).abs() < 1e-6);
        let fp = mode_frequency(Field::Fermion, Boundary::Periodic, 1, 1).unwrap();
        assert!((fp - 4.0 * bp).abs() < 1e-14);
        assert!((fp - 18.475209).abs() < 1e-6);
        assert!(mode_frequency(Field::Boson, Boundary::Periodic, 3, 0).is_err());
        assert!(mode_frequency(Field::Boson, Boundary::Periodic, 3, 4).is_err());
    }

    #[test]
    fn frequencies_positive() {
        for kind in FamilyKind::ALL {
            for n in 1..=40 {
                assert!(kind.at(n).unwrap().modes().iter().all(|m| m.frequency > 0.0));
            }
        }
    }

    #[test]
    fn subtraction_constants() {
        assert!((subtraction_constant(Statistics::Boson) + 2.546479).abs() < 1e-6);
        assert!((subtraction_constant(Statistics::Fermion) - 10.185916).abs() < 1e-6);
        assert_eq!(
            subtraction_constant(Statistics::Combined),
            subtraction_constant(Statistics::Boson) + subtraction_constant(Statistics::Fermion)
        );
    }

    #[test]
    fn mode_sum_examples() {
        let e1 = mode_sum_energy(&fam(Statistics::Boson, Boundary::Periodic, 1));
        assert!((e1 - 2.309401).abs() < 1e-6);
        let e2 = mode_sum_energy(&fam(Statistics::Boson, Boundary::Periodic, 2));
        let w1 = mode_frequency(Field::Boson, Boundary::Periodic, 2, 1).unwrap();
        let w2 = mode_frequency(Field::Boson, Boundary::Periodic, 2, 2).unwrap();
        assert!((w1 - 3.2 * (PI / 5.0).sin()).abs() < 1e-14);
        assert!((w2 - 3.2 * (2.0 * PI / 5.0).sin()).abs() < 1e-14);
        assert!((e2 - 0.5 * (w1 + w2)).abs() < 1e-14);
        assert!((e2 - 2.462147).abs() < 1e-6);
        for b in [Boundary::Periodic, Boundary::Twisted] {
            for n in 1..=10 {
                let boson = mode_sum_energy(&fam(Statistics::Boson, b, n));
                let fermion = mode_sum_energy(&fam(Statistics::Fermion, b, n));
                assert!((fermion + 4.0 * boson).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn table_spot_checks() {
        let cases = [
            (Statistics::Boson, Boundary::Periodic, 1, -0.2371),
            (Statistics::Boson, Boundary::Periodic, 2, -0.0843),
            (Statistics::Boson, Boundary::Twisted, 2, 0.3479),
            (Statistics::Fermion, Boundary::Twisted, 8, -0.782),
        ];
        for (s, b, n, want) in cases {
            assert!((casimir_exact(&fam(s, b, n)) - want).abs() <= 5e-5, "{s:?} {b:?} {n}");
        }
    }

    #[test]
    fn combined_is_sum_of_constituents() {
        for b in [Boundary::Periodic, Boundary::Twisted] {
            for n in 1..=8 {
                let c = casimir_exact(&fam(Statistics::Combined, b, n));
                let sum = casimir_exact(&fam(Statistics::Boson, b, n)) + casimir_exact(&fam(Statistics::Fermion, b, n));
                assert!((c - sum).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn series_examples() {
        let bp = fam(Statistics::Boson, Boundary::Periodic, 10);
        assert!((large_n_series(&bp, 2).unwrap() + PI / 600.0).abs() < 1e-15);
        let fp = fam(Statistics::Fermion, Boundary::Periodic, 10);
        assert!((large_n_series(&fp, 2).unwrap() - 4.0 * PI / 600.0).abs() < 1e-15);
        assert!(large_n_series(&bp, 1).is_err());
        assert!(large_n_series(&bp, 5).is_err());
        let huge = fam(Statistics::Boson, Boundary::Twisted, 1_000_000);
        assert!(large_n_series(&huge, 4).unwrap().abs() < 1e-12);
    }

    #[test]
    fn periodic_series_consistency() {
        let bp = fam(Statistics::Boson, Boundary::Periodic, 100);
        assert!((casimir_exact(&bp) - large_n_series(&bp, 4).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn full_ring_sum_tracks_series_for_both_boundaries() {
        for b in [Boundary::Periodic, Boundary::Twisted] {
            for n in [50, 100] {
                let f = fam(Statistics::Boson, b, n);
                assert!((casimir_full_ring(&f) - large_n_series(&f, 4).unwrap()).abs() < 1e-7);
            }
        }
        let f = fam(Statistics::Boson, Boundary::Periodic, 7);
        assert!((casimir_full_ring(&f) - casimir_exact(&f)).abs() < 1e-14);
    }

    #[test]
    fn continuum_limit_periodic_boson() {
        let f = fam(Statistics::Boson, Boundary::Periodic, 200);
        let scaled = 200.0 * 200.0 * casimir_exact(&f);
        assert!((scaled / (-PI / 6.0) - 1.0).abs() < 0.01);
    }

    #[test]
    fn continuum_density_examples() {
        assert!((continuum_density(Statistics::Boson, Boundary::Periodic, 1.0).unwrap() + PI / 6.0).abs() < 1e-15);
        assert!((continuum_density(Statistics::Fermion, Boundary::Periodic, 1.0).unwrap() - 4.0 * PI / 6.0).abs() < 1e-15);
        assert!((continuum_density(Statistics::Boson, Boundary::Twisted, 2.0).unwrap() - PI / 48.0).abs() < 1e-15);
        assert!((continuum_density(Statistics::Fermion, Boundary::Twisted, 1.0).unwrap() + 4.0 * PI / 12.0).abs() < 1e-15);
        assert!(continuum_density(Statistics::Boson, Boundary::Periodic, 0.0).is_err());
        assert!(continuum_density(Statistics::Boson, Boundary::Periodic, -1.0).is_err());
    }

    #[test]
    fn mode_hamiltonians() {
        let omega = mode_frequency(Field::Fermion, Boundary::Twisted, 3, 2).unwrap();
        let f = build_mode_hamiltonian(&fam(Statistics::Fermion, Boundary::Twisted, 3), 2).unwrap();
        assert_eq!(f.qubits(), 1);
        assert_eq!(f.as_diagonal().unwrap(), vec![-omega / 2.0, omega / 2.0]);

        let fb = fam(Statistics::Boson, Boundary::Periodic, 1);
        let b = build_mode_hamiltonian(&fb, 1).unwrap();
        let w = mode_frequency(Field::Boson, Boundary::Periodic, 1, 1).unwrap();
        for (got, k) in b.as_diagonal().unwrap().iter().zip([0.5, 1.5, 2.5, 3.5]) {
            assert!((got - k * w).abs() < 1e-14);
        }
        assert!((b.ground_energy().unwrap() - 2.309401).abs() < 1e-6);
        assert_eq!(build_ring_hamiltonian(&fb).unwrap().as_diagonal(), b.as_diagonal());
        assert!(build_mode_hamiltonian(&fb, 2).is_err());
        assert!(build_mode_hamiltonian(&fam(Statistics::Combined, Boundary::Periodic, 1), 1).is_err());
    }

    fn dense_ring(family: &ModeFamily) -> ComplexMatrix {
        // Independent assembly: I ⊗ … ⊗ H_i ⊗ … ⊗ I summed over modes.
        let modes = family.modes();
        let blocks: Vec<ComplexMatrix> = modes
            .iter()
            .map(|m| mode_hamiltonian(m).unwrap().to_dense().unwrap())
            .collect();
        let dim = 1usize << family.qubits();
        let mut total = ComplexMatrix::zeros(dim, dim);
        for k in 0..modes.len() {
            let ids: Vec<ComplexMatrix> = blocks.iter().map(|b| ComplexMatrix::identity(b.rows())).collect();
            let factors: Vec<&ComplexMatrix> = (0..modes.len()).map(|j| if j == k { &blocks[j] } else { &ids[j] }).collect();
            total = &total + &kron_chain(&factors).unwrap();
        }
        total
    }

    #[test]
    fn ring_assembly_matches_dense_kronecker() {
        for kind in FamilyKind::ALL {
            for n in 1..=2 {
                let f = kind.at(n).unwrap();
                let fast = build_ring_hamiltonian(&f).unwrap().to_dense().unwrap();
                assert!(fast.max_abs_diff(&dense_ring(&f)) < 1e-13, "{f}");
            }
        }
    }

    #[test]
    fn fermion_ring_two_modes() {
        let f = fam(Statistics::Fermion, Boundary::Periodic, 2);
        let h = build_ring_hamiltonian(&f).unwrap();
        assert_eq!(h.qubits(), 2);
        let w: Vec<f64> = f.modes().iter().map(|m| m.frequency).collect();
        let ev = hermitian_eigenvalues(&h.to_dense().unwrap()).unwrap();
        assert!((ev[0] + 0.5 * (w[0] + w[1])).abs() < 1e-12);
    }

    #[test]
    fn ring_ground_energy_is_mode_sum() {
        for kind in FamilyKind::ALL {
            for n in 1..=8 {
                let f = kind.at(n).unwrap();
                match build_ring_hamiltonian(&f) {
                    Ok(h) => assert!((h.ground_energy().unwrap() - mode_sum_energy(&f)).abs() < 1e-9),
                    Err(Error::Capacity(_)) => assert!(f.qubits() > MAX_RING_QUBITS),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn table1_row3_through_ring_hamiltonian() {
        let f = fam(Statistics::Boson, Boundary::Periodic, 3);
        let e = build_corrected_ring_hamiltonian(&f).unwrap().ground_energy().unwrap();
        assert!((e - (-0.0429)).abs() <= 5e-5);
    }

    #[test]
    fn term_count_examples() {
        assert_eq!(term_count(&fam(Statistics::Fermion, Boundary::Periodic, 1)).unwrap(), 2);
        assert_eq!(term_count(&fam(Statistics::Boson, Boundary::Periodic, 1)).unwrap(), 3);
        assert_eq!(term_count(&fam(Statistics::Boson, Boundary::Periodic, 2)).unwrap(), 5);
        let p = build_corrected_ring_hamiltonian(&fam(Statistics::Boson, Boundary::Periodic, 2))
            .unwrap()
            .to_pauli(DEFAULT_DROP_TOL)
            .unwrap();
        let mut strings: Vec<String> = p.terms().iter().map(|(_, s)| format!("{s}")).collect();
        strings.sort();
        assert_eq!(strings, ["IIII", "IIIZ", "IIZI", "IZII", "ZIII"]);
    }

    #[test]
    fn capacity_is_enforced() {
        let f = fam(Statistics::Boson, Boundary::Periodic, 9);
        assert!(matches!(build_ring_hamiltonian(&f), Err(Error::Capacity(_))));
    }

    #[test]
    fn coupling_matrix_examples() {
        let p = coupling_matrix(1, Boundary::Periodic);
        let ev = hermitian_eigenvalues(&p).unwrap();
        for (g, w) in ev.iter().zip([0.0, 3.0, 3.0]) {
            assert!((g - w).abs() < 1e-12);
        }
        let fr = fourier_frequencies(Field::Boson, Boundary::Periodic, 1).unwrap();
        for (g, w) in fr.iter().zip([0.0, 4.618802, 4.618802]) {
            assert!((g - w).abs() < 1e-6);
        }
        let t = coupling_matrix(1, Boundary::Twisted);
        let ev = hermitian_eigenvalues(&t).unwrap();
        for (g, w) in ev.iter().zip([1.0, 1.0, 4.0]) {
            assert!((g - w).abs() < 1e-12);
        }
        let fr = fourier_frequencies(Field::Boson, Boundary::Twisted, 1).unwrap();
        for (g, w) in fr.iter().zip([8.0 / 3.0, 8.0 / 3.0, 16.0 / 3.0]) {
            assert!((g - w).abs() < 1e-12);
        }
    }

    #[test]
    fn selector_round_trip() {
        for kind in FamilyKind::ALL {
            let s = format!("{kind}");
            assert_eq!(s.parse::<FamilyKind>().unwrap(), kind);
        }
        assert!("boson".parse::<FamilyKind>().is_err());
        assert!("boson-open".parse::<FamilyKind>().is_err());
        assert!("photon-periodic".parse::<FamilyKind>().is_err());
    }
}
