//! Command-line front end: reproduces the datasets behind the library's
//! diagrams and reports spectral summaries of individual matrices.
//!
//! Exit codes: 0 success, 1 invalid flags, 2 input-file validation failure,
//! 3 internal numerical failure.

mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use set_thermo::diagrams;
use set_thermo::ergotropy::{self, Placement};
use set_thermo::heisenberg;
use set_thermo::io::{fmt_f64, read_matrix};
use set_thermo::polarization;
use set_thermo::sampling::{self, Method, PsaParams, SamplerConfig};
use set_thermo::spectra;
use set_thermo::states::{self, DensityMatrix, Hamiltonian};
use set_thermo::Error;

use config::{resolve, ConfigFile};

#[derive(Parser)]
#[command(
    name = "set-thermo",
    about = "Spectral effective-temperature datasets: entropy-SET diagrams, \
             Heisenberg chains, ergotropy bounds and purity sweeps",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Boundary curves, a Monte Carlo cloud and the spectrum-ansatz path of
    /// the entropy-SET region.
    Diagram(DiagramArgs),
    /// SET vs canonical temperature for an open Heisenberg chain, with
    /// plateau/slope/variance diagnostics.
    Heisenberg(HeisenbergArgs),
    /// Ergotropy scatter records and the structured-state bound curve.
    Ergotropy(ErgotropyArgs),
    /// Inverse SET over purity-index grids (third-law divergence data).
    Thirdlaw(ThirdlawArgs),
    /// Spectral summary of one density matrix from a JSON matrix file.
    Summary(SummaryArgs),
    /// Characteristic-decomposition classification of a 3x3 density matrix.
    Classify(SummaryArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Output path (CSV sections derive sibling files from its stem).
    #[arg(long)]
    out: PathBuf,
    /// Output format.
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,
    /// Key-value config file supplying unset flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct DiagramArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Hilbert space dimension.
    #[arg(long)]
    dim: Option<usize>,
    /// Monte Carlo cloud size.
    #[arg(long)]
    samples: Option<usize>,
    /// RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Points per boundary curve.
    #[arg(long)]
    resolution: Option<usize>,
    /// SET ceiling at which unbounded curves are truncated.
    #[arg(long)]
    tau_max: Option<f64>,
    /// Energy levels for an overlaid thermal-entropy curve (must list
    /// `dim` values).
    #[arg(long, value_delimiter = ',')]
    omega: Option<Vec<f64>>,
    /// Lowest thermal grid temperature (used with --omega).
    #[arg(long)]
    tmin: Option<f64>,
    /// Highest thermal grid temperature (used with --omega).
    #[arg(long)]
    tmax: Option<f64>,
    /// Thermal grid size (used with --omega).
    #[arg(long)]
    points: Option<usize>,
}

#[derive(Args)]
struct HeisenbergArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Chain length (2..=9).
    #[arg(long)]
    length: Option<usize>,
    /// Lowest temperature of the sweep.
    #[arg(long)]
    tmin: Option<f64>,
    /// Highest temperature of the sweep.
    #[arg(long)]
    tmax: Option<f64>,
    /// Number of grid points (log-spaced).
    #[arg(long)]
    points: Option<usize>,
}

#[derive(Args)]
struct ErgotropyArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated energy levels of the diagonal Hamiltonian.
    #[arg(long, value_delimiter = ',')]
    omega: Option<Vec<f64>>,
    /// Fraction of samples drawn from the Ginibre ensemble (the rest come
    /// from uniform-entropy sampling).
    #[arg(long)]
    ginibre_fraction: Option<f64>,
    /// How sampled spectra are placed on the levels.
    #[arg(long, value_parser = ["haar", "antialigned"])]
    placement: Option<String>,
}

#[derive(Args)]
struct ThirdlawArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    dim: Option<usize>,
    /// Grid steps per index.
    #[arg(long)]
    points: Option<usize>,
}

#[derive(Args)]
struct SummaryArgs {
    /// JSON matrix file `{ "d": n, "re": [[..]], "im": [[..]] }`.
    #[arg(long)]
    input: PathBuf,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not errors
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    init_thread_pool();
    let result = match cli.command {
        Command::Diagram(args) => run_diagram(args),
        Command::Heisenberg(args) => run_heisenberg(args),
        Command::Ergotropy(args) => run_ergotropy(args),
        Command::Thirdlaw(args) => run_thirdlaw(args),
        Command::Summary(args) => run_summary(args),
        Command::Classify(args) => run_classify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// `SET_THERMO_THREADS` caps the worker pool; unset leaves the default.
fn init_thread_pool() {
    if let Ok(raw) = std::env::var("SET_THERMO_THREADS") {
        if let Ok(n) = raw.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

enum CliError {
    Usage(String),
    Input(Error),
    Numerical(Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Input(e) => write!(f, "invalid input file: {e}"),
            CliError::Numerical(e) => write!(f, "{e}"),
        }
    }
}

impl From<String> for CliError {
    fn from(msg: String) -> Self {
        CliError::Usage(msg)
    }
}

fn numerical(e: Error) -> CliError {
    CliError::Numerical(e)
}

fn require(cond: bool, msg: &str) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Usage(msg.to_string()))
    }
}

fn load_config(common: &CommonArgs) -> Result<ConfigFile, CliError> {
    match &common.config {
        None => Ok(ConfigFile::empty()),
        Some(path) => ConfigFile::load(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display()))),
    }
}

fn output_format(common: &CommonArgs, cfg: &ConfigFile) -> Result<String, CliError> {
    let fmt = match &common.format {
        Some(f) => f.clone(),
        None => cfg
            .get::<String>("format")
            .map_err(CliError::Usage)?
            .unwrap_or_else(|| "csv".to_string()),
    };
    if fmt != "csv" && fmt != "json" {
        return Err(CliError::Usage(format!("unknown format `{fmt}`")));
    }
    Ok(fmt)
}

/// `stem_suffix.csv` next to the requested output path.
fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    let ext = path.extension().map(|e| e.to_string_lossy().into_owned());
    let name = match ext {
        Some(ext) => format!("{stem}_{suffix}.{ext}"),
        None => format!("{stem}_{suffix}"),
    };
    path.with_file_name(name)
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| numerical(Error::Io(e)))
}

fn csv_row(cells: &[f64]) -> String {
    cells.iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>().join(",")
}

fn run_diagram(args: DiagramArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.common)?;
    let dim = resolve(args.dim, &cfg, "dim", 3)?;
    let samples = resolve(args.samples, &cfg, "samples", 10_000)?;
    let seed = resolve(args.seed, &cfg, "seed", 0)?;
    let resolution = resolve(args.resolution, &cfg, "resolution", 1024)?;
    let tau_max = resolve(args.tau_max, &cfg, "tau_max", diagrams::DEFAULT_TAU_MAX)?;
    let format = output_format(&args.common, &cfg)?;
    require(dim >= 2, "--dim must be at least 2")?;
    require(samples >= 1, "--samples must be at least 1")?;
    require(resolution >= 2, "--resolution must be at least 2")?;
    require(tau_max > 0.0, "--tau-max must be positive")?;
    let thermal = match &args.omega {
        None => None,
        Some(levels) => {
            require(
                levels.len() == dim,
                "--omega must list exactly --dim energy levels",
            )?;
            let tmin = resolve(args.tmin, &cfg, "tmin", 0.05)?;
            let tmax = resolve(args.tmax, &cfg, "tmax", 20.0)?;
            let points = resolve(args.points, &cfg, "points", 512)?;
            require(tmin > 0.0 && tmax > tmin, "need 0 < tmin < tmax")?;
            require(points >= 2, "--points must be at least 2")?;
            let grid: Vec<f64> = (0..points)
                .map(|i| tmin + (tmax - tmin) * i as f64 / (points - 1) as f64)
                .collect();
            Some(diagrams::thermal_entropy_curve(levels, &grid).map_err(numerical)?)
        }
    };

    let curves = diagrams::boundary_curves(dim, resolution, tau_max).map_err(numerical)?;
    let sampler = SamplerConfig::new(dim, samples, seed, Method::IpSphere).map_err(numerical)?;
    let cloud = sampling::sample_ips(&sampler).map_err(numerical)?;
    let psa_params = PsaParams::equispaced(dim).map_err(numerical)?;
    let zeta_grid: Vec<f64> = (0..512)
        .map(|i| {
            let u = i as f64 / 511.0;
            50.0 * u * u
        })
        .collect();
    let psa = sampling::psa_curve(&psa_params, &zeta_grid).map_err(numerical)?;

    if format == "json" {
        let cloud_rows: Vec<serde_json::Value> = cloud.iter().map(cloud_json).collect();
        let doc = serde_json::json!({
            "dimension": dim,
            "curves": curves,
            "cloud": cloud_rows,
            "psa": psa.iter().map(|p| serde_json::json!({
                "zeta": p.zeta,
                "tau": extended(p.tau),
                "entropy": p.entropy,
            })).collect::<Vec<_>>(),
            "thermal": thermal.as_ref().map(|pts| pts.iter().map(|p| serde_json::json!({
                "T": p.temperature,
                "entropy": p.entropy,
                "tau": extended(p.tau),
            })).collect::<Vec<_>>()),
        });
        return write_text(&args.common.out, &pretty(&doc)?);
    }

    let mut text = String::from("curve_label,t,tau,entropy\n");
    for curve in &curves {
        for p in &curve.points {
            text.push_str(&format!(
                "{},{}\n",
                curve.label,
                csv_row(&[p.t, p.tau, p.entropy])
            ));
        }
    }
    write_text(&sibling(&args.common.out, "curves"), &text)?;

    let mut text = String::from("tau,entropy");
    for k in 1..dim {
        text.push_str(&format!(",p{k}"));
    }
    text.push('\n');
    for ips in &cloud {
        let tau = spectra::set_temperature(spectra::global_purity_from_indices(ips))
            .map_err(numerical)?;
        let entropy = spectra::entropy_from_indices(ips);
        let mut cells = vec![tau, entropy];
        cells.extend_from_slice(ips.values());
        text.push_str(&csv_row(&cells));
        text.push('\n');
    }
    write_text(&sibling(&args.common.out, "cloud"), &text)?;

    let mut text = String::from("zeta,tau,entropy\n");
    for p in &psa {
        text.push_str(&csv_row(&[p.zeta, p.tau, p.entropy]));
        text.push('\n');
    }
    write_text(&sibling(&args.common.out, "psa"), &text)?;

    if let Some(points) = &thermal {
        let mut text = String::from("T,entropy,tau\n");
        for p in points {
            text.push_str(&csv_row(&[p.temperature, p.entropy, p.tau]));
            text.push('\n');
        }
        write_text(&sibling(&args.common.out, "thermal"), &text)?;
    }
    Ok(())
}

fn cloud_json(ips: &spectra::IndicesOfPurity) -> serde_json::Value {
    let tau = spectra::set_temperature(spectra::global_purity_from_indices(ips))
        .expect("purity in [0,1]");
    serde_json::json!({
        "tau": extended(tau),
        "entropy": spectra::entropy_from_indices(ips),
        "indices": ips.values(),
    })
}

fn run_heisenberg(args: HeisenbergArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.common)?;
    let length = resolve(args.length, &cfg, "length", 3)?;
    let tmin = resolve(args.tmin, &cfg, "tmin", 1e-4)?;
    let tmax = resolve(args.tmax, &cfg, "tmax", 100.0)?;
    let points = resolve(args.points, &cfg, "points", 256)?;
    let format = output_format(&args.common, &cfg)?;
    if !(tmin > 0.0 && tmax > tmin) {
        return Err(CliError::Usage(format!(
            "need 0 < tmin < tmax, got {tmin} and {tmax}"
        )));
    }
    if points < 2 {
        return Err(CliError::Usage("need at least 2 grid points".into()));
    }
    require(
        (set_thermo::heisenberg::MIN_LENGTH..=set_thermo::heisenberg::MAX_LENGTH)
            .contains(&length),
        "--length must lie in 2..=9",
    )?;
    let grid: Vec<f64> = (0..points)
        .map(|i| {
            let u = i as f64 / (points - 1) as f64;
            tmin * (tmax / tmin).powf(u)
        })
        .collect();
    let sweep = heisenberg::tau_vs_temperature(length, &grid).map_err(numerical)?;
    let diag = heisenberg::diagnostics(length).map_err(numerical)?;

    if format == "json" {
        let doc = serde_json::json!({
            "diagnostics": diag,
            "points": sweep.iter().map(|p| serde_json::json!({
                "T": p.temperature,
                "tau": extended(p.tau),
                "entropy": p.entropy,
            })).collect::<Vec<_>>(),
        });
        return write_text(&args.common.out, &pretty(&doc)?);
    }

    let mut text = String::from("T,tau,entropy\n");
    for p in &sweep {
        text.push_str(&csv_row(&[p.temperature, p.tau, p.entropy]));
        text.push('\n');
    }
    write_text(&args.common.out, &text)?;
    write_text(
        &sibling(&args.common.out, "diagnostics").with_extension("json"),
        &pretty(&serde_json::to_value(&diag).map_err(|e| numerical(Error::Json(e)))?)?,
    )
}

fn run_ergotropy(args: ErgotropyArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.common)?;
    let dim = resolve(args.dim, &cfg, "dim", 4)?;
    let samples = resolve(args.samples, &cfg, "samples", 20_000)?;
    let seed = resolve(args.seed, &cfg, "seed", 0)?;
    let ginibre_fraction = resolve(args.ginibre_fraction, &cfg, "ginibre_fraction", 0.5)?;
    let format = output_format(&args.common, &cfg)?;
    if !(0.0..=1.0).contains(&ginibre_fraction) {
        return Err(CliError::Usage(format!(
            "ginibre fraction {ginibre_fraction} outside [0, 1]"
        )));
    }
    require(dim >= 2, "--dim must be at least 2")?;
    require(samples >= 1, "--samples must be at least 1")?;
    let placement_name = match &args.placement {
        Some(p) => p.clone(),
        None => cfg
            .get::<String>("placement")
            .map_err(CliError::Usage)?
            .unwrap_or_else(|| "haar".to_string()),
    };
    let placement = match placement_name.as_str() {
        "haar" => Placement::HaarRotated,
        "antialigned" => Placement::AntiAlignedDiagonal,
        other => return Err(CliError::Usage(format!("unknown placement `{other}`"))),
    };
    let energies = match args.omega {
        Some(listed) => listed,
        None => match dim {
            2 => vec![0.0, 3.86],
            4 => vec![0.0, 3.75, 7.32, 9.51],
            d => (0..d).map(|i| i as f64).collect(),
        },
    };
    if energies.len() != dim {
        return Err(CliError::Usage(format!(
            "--omega lists {} levels but --dim is {dim}",
            energies.len()
        )));
    }
    let h = Hamiltonian::from_energies(&energies);

    let n_ginibre = (samples as f64 * ginibre_fraction).round() as usize;
    let n_uniform = samples.saturating_sub(n_ginibre);
    let mut spectra_pool = Vec::with_capacity(samples);
    if n_ginibre > 0 {
        let cfg_g = SamplerConfig::new(
            dim,
            n_ginibre,
            sampling::derive_seed(seed, 1),
            Method::Ginibre,
        )
        .map_err(numerical)?;
        for rho in sampling::sample_ginibre(&cfg_g).map_err(numerical)? {
            spectra_pool.push(rho.spectrum().map_err(numerical)?);
        }
    }
    if n_uniform > 0 {
        let cfg_u = SamplerConfig::new(
            dim,
            n_uniform,
            sampling::derive_seed(seed, 2),
            Method::UniformEntropy,
        )
        .map_err(numerical)?;
        let draw = sampling::sample_uniform_entropy(&cfg_u, 20).map_err(numerical)?;
        if !draw.complete {
            eprintln!(
                "note: uniform-entropy sampler filled {} of {} requested samples \
                 before its attempt budget ran out",
                draw.spectra.len(),
                n_uniform
            );
        }
        spectra_pool.extend(draw.spectra);
    }
    let records = ergotropy::ergotropy_scatter(
        &spectra_pool,
        &h,
        sampling::derive_seed(seed, 3),
        placement,
    )
    .map_err(numerical)?;
    let eps_top = energies.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - energies.iter().cloned().fold(f64::INFINITY, f64::min);
    let bound = ergotropy::structured_bound_curve(dim, eps_top, 512).map_err(numerical)?;

    if format == "json" {
        let doc = serde_json::json!({
            "dimension": dim,
            "energies": energies,
            "records": records.iter().map(|r| serde_json::json!({
                "lambda_max": r.lambda_max,
                "work": r.work,
                "entropy": r.entropy,
                "tau": extended(r.tau),
                "coherence": r.coherence,
            })).collect::<Vec<_>>(),
            "bound": bound.iter().map(|&(l, w, s, tau)| serde_json::json!({
                "lambda_max": l,
                "work": w,
                "entropy": s,
                "tau": extended(tau),
            })).collect::<Vec<_>>(),
        });
        return write_text(&args.common.out, &pretty(&doc)?);
    }

    let mut text = String::from("lambda_max,work,entropy,tau,coherence\n");
    for r in &records {
        text.push_str(&csv_row(&[r.lambda_max, r.work, r.entropy, r.tau, r.coherence]));
        text.push('\n');
    }
    write_text(&sibling(&args.common.out, "scatter"), &text)?;

    let mut text = String::from("lambda_max,work,entropy,tau\n");
    for &(l, w, s, tau) in &bound {
        text.push_str(&csv_row(&[l, w, s, tau]));
        text.push('\n');
    }
    write_text(&sibling(&args.common.out, "bound"), &text)
}

fn run_thirdlaw(args: ThirdlawArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.common)?;
    let dim = resolve(args.dim, &cfg, "dim", 2)?;
    let points = resolve(args.points, &cfg, "points", 201)?;
    let format = output_format(&args.common, &cfg)?;
    require(dim >= 2, "--dim must be at least 2")?;
    require(points >= 2, "--points must be at least 2")?;
    let grid = diagrams::third_law_grid(dim, points).map_err(numerical)?;
    let sweep = diagrams::third_law_sweep(&grid);

    if format == "json" {
        let doc: Vec<serde_json::Value> = sweep
            .iter()
            .map(|p| {
                serde_json::json!({
                    "indices": p.indices.values(),
                    "p_global": p.p_global,
                    "beta": extended(p.beta),
                    "diverging": p.diverging,
                })
            })
            .collect();
        return write_text(&args.common.out, &pretty(&serde_json::Value::Array(doc))?);
    }

    let mut text = String::new();
    for k in 1..dim {
        text.push_str(&format!("p{k},"));
    }
    text.push_str("p_global,beta,diverging\n");
    for p in &sweep {
        let mut cells: Vec<f64> = p.indices.values().to_vec();
        cells.push(p.p_global);
        cells.push(p.beta);
        text.push_str(&csv_row(&cells));
        text.push_str(if p.diverging { ",1\n" } else { ",0\n" });
    }
    write_text(&args.common.out, &text)
}

fn run_summary(args: SummaryArgs) -> Result<(), CliError> {
    let matrix = read_matrix(&args.input).map_err(CliError::Input)?;
    let rho = DensityMatrix::new(matrix).map_err(CliError::Input)?;
    let summary = states::spectral_summary(&rho).map_err(numerical)?;
    let text = pretty(&serde_json::to_value(&summary).map_err(|e| numerical(Error::Json(e)))?)?;
    emit(args.out.as_deref(), &text)
}

fn run_classify(args: SummaryArgs) -> Result<(), CliError> {
    let matrix = read_matrix(&args.input).map_err(CliError::Input)?;
    let rho = DensityMatrix::new(matrix).map_err(CliError::Input)?;
    let report = polarization::classification_report(&rho).map_err(numerical)?;
    let text = pretty(&serde_json::to_value(&report).map_err(|e| numerical(Error::Json(e)))?)?;
    emit(args.out.as_deref(), &text)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_text(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.write_all(b"\n"))
                .map_err(|e| numerical(Error::Io(e)))
        }
    }
}

fn extended(x: f64) -> serde_json::Value {
    if x.is_infinite() {
        serde_json::Value::String(if x > 0.0 { "inf".into() } else { "-inf".into() })
    } else {
        serde_json::json!(x)
    }
}

fn pretty(value: &serde_json::Value) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|e| numerical(Error::Json(e)))
}
