//! The `ringcasimir` command line.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use ringcasimir_core::chiral::{build_t, jw_hamiltonian, left_mover_gap, ChiralSystem, CALIBRATED_SCALE_CONSTANT};
use ringcasimir_core::hamiltonian::HamiltonianSpec;
use ringcasimir_core::lattice::{
    build_corrected_ring_hamiltonian, build_mode_hamiltonian, build_ring_hamiltonian, FamilyKind, ModeFamily,
};
use ringcasimir_core::optimize::Optimizer;
use ringcasimir_core::pauli::{PauliSum, DEFAULT_DROP_TOL};
use ringcasimir_core::vqe::VqeConfig;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::pauli_text;
use crate::pipeline;
use crate::records::{self, ExactRecord, FileRecord, Precision, RunManifest, VqeRecord};

#[derive(Debug, Parser)]
#[command(name = "ringcasimir", version, about = "Casimir energies of lattice fields on a ring, exactly and by VQE")]
pub struct Cli {
    #[command(flatten)]
    pub globals: Globals,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct Globals {
    /// Directory for generated files
    #[arg(long, global = true, env = "RINGCASIMIR_OUT_DIR", default_value = ".")]
    pub out_dir: PathBuf,
    /// Print shortest round-trip decimals instead of six decimals
    #[arg(long, global = true)]
    pub full_precision: bool,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Exact ground (Casimir) energies
    Exact(ExactArgs),
    /// Variational ground energies with a convergence trace
    Vqe(VqeArgs),
    /// Write a Hamiltonian in Pauli text format
    Export(ExportArgs),
    /// Validate a Pauli text file and report its contents
    Import(ImportArgs),
    /// Pauli term counts over a range of lattice sizes, as CSV
    PauliCount(CountArgs),
    /// Chiral fermion dispersion branches, as CSV
    Dispersion(DispersionArgs),
    /// Re-run the command recorded in a manifest
    Replay(ReplayArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Exact(_) => "exact",
            Command::Vqe(_) => "vqe",
            Command::Export(_) => "export",
            Command::Import(_) => "import",
            Command::PauliCount(_) => "pauli-count",
            Command::Dispersion(_) => "dispersion",
            Command::Replay(_) => "replay",
        }
    }
}

/// Inclusive range of lattice sizes, written `a..b` or `a..=b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiteRange {
    pub first: usize,
    pub last: usize,
}

impl SiteRange {
    pub fn sizes(self) -> impl Iterator<Item = usize> {
        self.first..=self.last
    }
}

impl FromStr for SiteRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s
            .split_once("..=")
            .or_else(|| s.split_once(".."))
            .ok_or_else(|| format!("expected a range like 1..8, got {s:?}"))?;
        let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad range bound {x:?}"));
        let (first, last) = (parse(a)?, parse(b)?);
        if first == 0 || first > last {
            return Err(format!("range {s:?} must satisfy 1 <= first <= last"));
        }
        Ok(Self { first, last })
    }
}

impl fmt::Display for SiteRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.first, self.last)
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct Selector {
    /// Ring family: boson-periodic, boson-twisted, fermion-periodic,
    /// fermion-twisted, combined-periodic or combined-twisted. Comma-separated
    /// lists and `all` are accepted.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["chiral", "from_file"])]
    pub family: Vec<String>,
    /// Lattice size: modes N for ring families, sites L for the chiral system
    #[arg(long, conflicts_with = "sweep")]
    pub sites: Option<usize>,
    /// Inclusive range of lattice sizes, e.g. 1..8
    #[arg(long)]
    pub sweep: Option<SiteRange>,
    /// Select the chiral fermion system
    #[arg(long, conflicts_with = "from_file")]
    pub chiral: bool,
    /// Left-mover deformation of the chiral system (1 is the Wilson case)
    #[arg(long, default_value_t = 1.0)]
    pub eta: f64,
    /// Energy scale of the chiral single-particle matrix
    #[arg(long, conflicts_with = "calibrated_scale")]
    pub scale: Option<f64>,
    /// Use the calibrated chiral normalization (constant / L)
    #[arg(long)]
    pub calibrated_scale: bool,
    /// Subtraction for the chiral Casimir energy [default: L * scale * bulk density]
    #[arg(long, allow_negative_numbers = true)]
    pub subtraction: Option<f64>,
    /// Read the Hamiltonian from a Pauli text file
    #[arg(long)]
    pub from_file: Option<PathBuf>,
}

enum Target {
    Families(Vec<ModeFamily>),
    Chiral(Vec<ChiralSystem>, Option<f64>),
    File(PathBuf),
}

fn parse_kinds(names: &[String]) -> Result<Vec<FamilyKind>, CliError> {
    let mut kinds = Vec::new();
    for name in names {
        if name == "all" {
            kinds.extend(FamilyKind::ALL);
        } else {
            kinds.push(name.parse().map_err(|_| {
                CliError::Usage(format!(
                    "unknown family {name:?}; expected one of {} or all",
                    FamilyKind::ALL.map(|k| k.to_string()).join(", ")
                ))
            })?);
        }
    }
    Ok(kinds)
}

fn chiral_system(sites: usize, eta: f64, scale: Option<f64>, calibrated_scale: bool) -> Result<ChiralSystem, CliError> {
    let scale = if calibrated_scale { CALIBRATED_SCALE_CONSTANT / sites as f64 } else { scale.unwrap_or(1.0) };
    Ok(ChiralSystem::with_scale(sites, eta, scale)?)
}

impl Selector {
    fn sizes(&self) -> Result<Vec<usize>, CliError> {
        match (self.sites, self.sweep) {
            (Some(n), None) => Ok(vec![n]),
            (None, Some(r)) => Ok(r.sizes().collect()),
            _ => Err(CliError::Usage("give --sites or --sweep".into())),
        }
    }

    fn resolve(&self) -> Result<Target, CliError> {
        if let Some(path) = &self.from_file {
            return Ok(Target::File(path.clone()));
        }
        if self.chiral {
            let systems = self
                .sizes()?
                .into_iter()
                .map(|l| chiral_system(l, self.eta, self.scale, self.calibrated_scale))
                .collect::<Result<_, _>>()?;
            return Ok(Target::Chiral(systems, self.subtraction));
        }
        if self.family.is_empty() {
            return Err(CliError::Usage("choose --family, --chiral or --from-file".into()));
        }
        let kinds = parse_kinds(&self.family)?;
        let sizes = self.sizes()?;
        let mut families = Vec::new();
        for kind in kinds {
            for &n in &sizes {
                families.push(kind.at(n)?);
            }
        }
        Ok(Target::Families(families))
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ExactArgs {
    #[command(flatten)]
    pub selector: Selector,
    /// Report the bare mode sum without the subtraction constant
    #[arg(long)]
    pub no_correction: bool,
    /// Also write the rows as JSON to this file
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct VqeArgs {
    #[command(flatten)]
    pub selector: Selector,
    /// Entangling layers of the ansatz
    #[arg(long, default_value_t = 1)]
    pub depth: usize,
    /// linear (simplex trust region) or quadratic (quasi-Newton)
    #[arg(long, default_value = "linear")]
    pub optimizer: String,
    /// Iteration budget per run
    #[arg(long, default_value_t = 500)]
    pub max_iterations: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Estimate expectations from this many measurement shots
    #[arg(long)]
    pub shots: Option<u64>,
    /// File name stem for the outputs
    #[arg(long)]
    pub name: Option<String>,
}

impl VqeArgs {
    fn config(&self) -> Result<VqeConfig, CliError> {
        let optimizer: Optimizer = self
            .optimizer
            .parse()
            .map_err(|_| CliError::Usage(format!("unknown optimizer {:?}; use linear or quadratic", self.optimizer)))?;
        let cfg = VqeConfig {
            depth: self.depth,
            optimizer,
            max_iterations: self.max_iterations,
            tolerance: self.tolerance,
            seed: self.seed,
            shots: self.shots,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ExportArgs {
    #[command(flatten)]
    pub selector: Selector,
    /// Leave the subtraction constant out of the identity term
    #[arg(long)]
    pub no_correction: bool,
    /// Export the Hamiltonian of this single mode (1-based) instead of the ring
    #[arg(long)]
    pub mode: Option<usize>,
    /// Output file; `-` writes to standard output
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ImportArgs {
    /// Pauli text file
    pub path: PathBuf,
    /// Rewrite the file in canonical form here
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CountArgs {
    /// Ring family
    #[arg(long)]
    pub family: String,
    /// Inclusive range of lattice sizes
    #[arg(long, default_value = "1..8")]
    pub sweep: SiteRange,
    /// Output file instead of standard output
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct DispersionArgs {
    /// Chiral lattice sites L
    #[arg(long)]
    pub sites: usize,
    #[arg(long, default_value_t = 1.0)]
    pub eta: f64,
    #[arg(long, conflicts_with = "calibrated_scale")]
    pub scale: Option<f64>,
    /// Use the calibrated chiral normalization (constant / L)
    #[arg(long)]
    pub calibrated_scale: bool,
    /// Add a uniform grid of this many momenta from the closed-form branches
    #[arg(long)]
    pub dense: Option<usize>,
    /// Output file instead of standard output
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    /// Manifest written alongside an earlier output
    pub manifest: PathBuf,
}

/// Everything needed to reproduce a run; stored as a manifest's `config`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Invocation {
    pub globals: Globals,
    pub command: Command,
}

/// How a successful command finished.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Done,
    NotConverged,
}

struct Ctx<'a> {
    inv: &'a Invocation,
    precision: Precision,
}

impl Ctx<'_> {
    fn fmt(&self, x: f64) -> String {
        self.precision.format(x)
    }

    fn default_path(&self, file: &str) -> PathBuf {
        self.inv.globals.out_dir.join(file)
    }

    /// Writes `contents` and the run manifest beside it.
    fn emit(&self, path: &Path, contents: &[u8]) -> Result<(), CliError> {
        write_file(path, contents)?;
        let manifest = RunManifest::new(self.inv.command.name(), serde_json::to_value(self.inv)?);
        write_file(&manifest_path(path), records::to_json(&manifest).as_bytes())?;
        eprintln!("wrote {}", path.display());
        Ok(())
    }

    fn emit_plain(&self, path: &Path, contents: &[u8]) -> Result<(), CliError> {
        write_file(path, contents)?;
        eprintln!("wrote {}", path.display());
        Ok(())
    }
}

/// `out.json` → `out.json.manifest.json`.
pub fn manifest_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

pub fn read_pauli_file(path: &Path) -> Result<PauliSum, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    pauli_text::parse(&text).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

fn print_table(header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, w))| if i == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        padded.join("  ")
    };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", line(header.to_vec()));
    for r in rows {
        let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
    }
}

pub fn run(inv: &Invocation) -> Result<Outcome, CliError> {
    let ctx = Ctx {
        inv,
        precision: if inv.globals.full_precision { Precision::Full } else { Precision::Fixed },
    };
    match &inv.command {
        Command::Exact(a) => exact(&ctx, a),
        Command::Vqe(a) => vqe(&ctx, a),
        Command::Export(a) => export(&ctx, a),
        Command::Import(a) => import(&ctx, a),
        Command::PauliCount(a) => pauli_count(&ctx, a),
        Command::Dispersion(a) => dispersion(&ctx, a),
        Command::Replay(a) => replay(&inv.globals, a),
    }
}

fn exact(ctx: &Ctx, a: &ExactArgs) -> Result<Outcome, CliError> {
    let json = match a.selector.resolve()? {
        Target::Families(families) => {
            let rows: Vec<_> = families.iter().map(|f| pipeline::exact_row(*f, !a.no_correction)).collect();
            print_table(
                &["family", "sites", "qubits", "energy", "subtraction"],
                &rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.family.selector(),
                            r.family.sites.to_string(),
                            r.family.qubits().to_string(),
                            ctx.fmt(r.energy),
                            ctx.fmt(r.subtraction),
                        ]
                    })
                    .collect::<Vec<_>>(),
            );
            let recs: Vec<ExactRecord> = rows
                .iter()
                .map(|r| ExactRecord {
                    family: r.family.selector(),
                    sites: r.family.sites,
                    qubits: r.family.qubits(),
                    exact_energy: r.energy,
                    subtraction: r.subtraction,
                })
                .collect();
            records::to_json(&recs)
        }
        Target::Chiral(systems, subtraction) => {
            let subtraction = if a.no_correction { Some(0.0) } else { subtraction };
            let recs = systems
                .iter()
                .map(|s| pipeline::chiral_record(s, subtraction))
                .collect::<Result<Vec<_>, _>>()?;
            print_table(
                &["sites", "eta", "scale", "dirac_sea_energy", "subtraction", "casimir", "continuum_target"],
                &recs
                    .iter()
                    .map(|r| {
                        vec![
                            r.sites.to_string(),
                            format!("{}", r.eta),
                            ctx.fmt(r.scale),
                            ctx.fmt(r.dirac_sea_energy),
                            ctx.fmt(r.subtraction),
                            ctx.fmt(r.casimir),
                            ctx.fmt(r.continuum_target),
                        ]
                    })
                    .collect::<Vec<_>>(),
            );
            records::to_json(&recs)
        }
        Target::File(path) => {
            let p = read_pauli_file(&path)?;
            let rec = FileRecord {
                path: path.display().to_string(),
                qubits: p.qubits(),
                terms: p.len(),
                ground_energy: HamiltonianSpec::pauli(path.display().to_string(), p).ground_energy()?,
            };
            print_table(
                &["file", "qubits", "terms", "ground_energy"],
                &[vec![rec.path.clone(), rec.qubits.to_string(), rec.terms.to_string(), ctx.fmt(rec.ground_energy)]],
            );
            records::to_json(&rec)
        }
    };
    if let Some(path) = &a.json {
        ctx.emit(path, json.as_bytes())?;
    }
    Ok(Outcome::Done)
}

fn vqe(ctx: &Ctx, a: &VqeArgs) -> Result<Outcome, CliError> {
    let cfg = a.config()?;
    // Each entry: the record, and the trace when there is a single run.
    let (recs, trace, stem): (Vec<VqeRecord>, Option<Vec<(usize, f64)>>, String) = match a.selector.resolve()? {
        Target::Families(families) => {
            let reports = pipeline::partitioned_sweep(&families, &cfg)?;
            let recs: Vec<_> = reports.iter().map(|r| pipeline::family_record(r, &cfg)).collect();
            let stem = if let [f] = families.as_slice() {
                format!("vqe-{}-n{}-seed{}", f.selector(), f.sites, cfg.seed)
            } else {
                format!("vqe-sweep-seed{}", cfg.seed)
            };
            let trace = (reports.len() == 1).then(|| reports[0].combined_trace());
            (recs, trace, stem)
        }
        Target::Chiral(systems, _) => {
            let mut recs = Vec::new();
            let mut traces = Vec::new();
            for s in &systems {
                let (exact, best, evaluations) = pipeline::chiral_vqe_run(s, &cfg)?;
                let mut rec = pipeline::plain_record("chiral", Some(s.sites()), exact, &best, &cfg);
                rec.evaluations = evaluations;
                recs.push(rec);
                traces.push(best.trace);
            }
            let stem = match systems.as_slice() {
                [s] => format!("vqe-chiral-l{}-eta{}-seed{}", s.sites(), s.eta(), cfg.seed),
                _ => format!("vqe-chiral-sweep-eta{}-seed{}", a.selector.eta, cfg.seed),
            };
            let trace = (traces.len() == 1).then(|| traces.remove(0));
            (recs, trace, stem)
        }
        Target::File(path) => {
            let p = read_pauli_file(&path)?;
            let h = HamiltonianSpec::pauli(path.display().to_string(), p);
            let (exact, r) = pipeline::hamiltonian_vqe(&h, &cfg)?;
            let stem_name = path.file_stem().map_or("file".into(), |s| s.to_string_lossy().into_owned());
            let rec = pipeline::plain_record("file", None, exact, &r, &cfg);
            (vec![rec], Some(r.trace), format!("vqe-{stem_name}-seed{}", cfg.seed))
        }
    };
    let stem = a.name.clone().unwrap_or(stem);
    print_table(
        &["family", "sites", "exact_energy", "vqe_energy", "percent_difference", "converged"],
        &recs
            .iter()
            .map(|r| {
                vec![
                    r.family.clone(),
                    r.sites.map_or("-".into(), |s| s.to_string()),
                    ctx.fmt(r.exact_energy),
                    ctx.fmt(r.vqe_energy),
                    format!("{:.3e}", r.percent_difference),
                    r.converged.to_string(),
                ]
            })
            .collect::<Vec<_>>(),
    );
    let json_path = ctx.default_path(&format!("{stem}.json"));
    match (&trace, recs.as_slice()) {
        (Some(trace), [rec]) => {
            ctx.emit(&json_path, records::to_json(rec).as_bytes())?;
            let mut csv = Vec::new();
            records::write_trace(&mut csv, trace, ctx.precision)?;
            ctx.emit_plain(&ctx.default_path(&format!("{stem}.trace.csv")), &csv)?;
        }
        _ => ctx.emit(&json_path, records::to_json(&recs).as_bytes())?,
    }
    Ok(if recs.iter().all(|r| r.converged) { Outcome::Done } else { Outcome::NotConverged })
}

fn export(ctx: &Ctx, a: &ExportArgs) -> Result<Outcome, CliError> {
    let (h, stem) = match a.selector.resolve()? {
        Target::Families(families) => {
            let [f] = families.as_slice() else {
                return Err(CliError::Usage("export takes a single family and size".into()));
            };
            let stem = format!("{}-n{}", f.selector(), f.sites);
            match a.mode {
                Some(i) => (build_mode_hamiltonian(f, i)?, format!("{stem}-mode{i}")),
                None if a.no_correction => (build_ring_hamiltonian(f)?, format!("{stem}-raw")),
                None => (build_corrected_ring_hamiltonian(f)?, stem),
            }
        }
        Target::Chiral(systems, _) => {
            let [s] = systems.as_slice() else {
                return Err(CliError::Usage("export takes a single chiral size".into()));
            };
            (jw_hamiltonian(&build_t(s))?, format!("chiral-l{}-eta{}", s.sites(), s.eta()))
        }
        Target::File(path) => {
            let p = read_pauli_file(&path)?;
            let stem = path.file_stem().map_or("file".into(), |s| s.to_string_lossy().into_owned());
            (HamiltonianSpec::pauli(stem.clone(), p), stem)
        }
    };
    let text = pauli_text::serialize(&h.to_pauli(DEFAULT_DROP_TOL)?);
    match &a.output {
        Some(p) if p.as_os_str() == "-" => print!("{text}"),
        Some(p) => ctx.emit(p, text.as_bytes())?,
        None => ctx.emit(&ctx.default_path(&format!("{stem}.pauli")), text.as_bytes())?,
    }
    Ok(Outcome::Done)
}

fn import(ctx: &Ctx, a: &ImportArgs) -> Result<Outcome, CliError> {
    let p = read_pauli_file(&a.path)?;
    let (qubits, terms, diagonal) = (p.qubits(), p.len(), p.is_diagonal());
    let ground = HamiltonianSpec::pauli("import", p.clone()).ground_energy();
    print_table(
        &["file", "qubits", "terms", "diagonal", "ground_energy"],
        &[vec![
            a.path.display().to_string(),
            qubits.to_string(),
            terms.to_string(),
            diagonal.to_string(),
            ground.map_or_else(|_| "NA".into(), |g| ctx.fmt(g)),
        ]],
    );
    if let Some(out) = &a.output {
        ctx.emit(out, pauli_text::serialize(&p).as_bytes())?;
    }
    Ok(Outcome::Done)
}

fn pauli_count(ctx: &Ctx, a: &CountArgs) -> Result<Outcome, CliError> {
    let [kind] = parse_kinds(std::slice::from_ref(&a.family))?[..] else {
        return Err(CliError::Usage("pauli-count takes a single family".into()));
    };
    let rows = pipeline::pauli_counts(kind, a.sweep.sizes())?;
    let mut csv = Vec::new();
    records::write_counts(&mut csv, &rows)?;
    match &a.output {
        Some(p) => ctx.emit(p, &csv)?,
        None => std::io::stdout().write_all(&csv)?,
    }
    Ok(Outcome::Done)
}

fn dispersion(ctx: &Ctx, a: &DispersionArgs) -> Result<Outcome, CliError> {
    let system = chiral_system(a.sites, a.eta, a.scale, a.calibrated_scale)?;
    if a.dense == Some(0) {
        return Err(CliError::Usage("--dense needs at least one point".into()));
    }
    let rows = pipeline::dispersion_rows(&system, a.dense);
    let mut csv = Vec::new();
    records::write_dispersion(&mut csv, &rows, ctx.precision)?;
    match &a.output {
        Some(p) => ctx.emit(p, &csv)?,
        None => std::io::stdout().write_all(&csv)?,
    }
    let gap = left_mover_gap(&system);
    eprintln!(
        "left movers: min |energy| {}; right movers and doublers: max |energy| {}; gapped: {}",
        ctx.fmt(gap.min_left),
        ctx.fmt(gap.max_right),
        gap.is_gapped()
    );
    Ok(Outcome::Done)
}

fn replay(_globals: &Globals, a: &ReplayArgs) -> Result<Outcome, CliError> {
    let text = fs::read_to_string(&a.manifest).map_err(|e| CliError::io(&a.manifest, e))?;
    let manifest: RunManifest = serde_json::from_str(&text)?;
    let inv: Invocation = serde_json::from_value(manifest.config)?;
    if matches!(inv.command, Command::Replay(_)) {
        return Err(CliError::Format("a manifest cannot replay another manifest".into()));
    }
    if inv.command.name() != manifest.command {
        return Err(CliError::Format(format!(
            "manifest command {:?} does not match its configuration ({:?})",
            manifest.command,
            inv.command.name()
        )));
    }
    run(&inv)
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let mut globals = cli.globals;
    globals.out_dir = std::path::absolute(&globals.out_dir).unwrap_or(globals.out_dir);
    let inv = Invocation { globals, command: cli.command };
    match run(&inv) {
        Ok(Outcome::Done) => crate::error::exit::OK,
        Ok(Outcome::NotConverged) => {
            eprintln!("warning: optimizer stopped at max-iterations before converging");
            crate::error::exit::NOT_CONVERGED
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
