//! Subcommand definitions, flag/config resolution, and command execution.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ggscat::amplitudes::Mechanism;
use ggscat::constants::{
    energy_from_reduced_wavelength, energy_from_wavelength, validate_low_energy, PhotonEnergy,
    ValidityStatus, CODATA_2018,
};
use ggscat::correlations::{
    beam_splitter_transform, coincidence_probability_for, hom_statistics, DetectorPolarizations,
    SeparationAlongBeam, TwoPhotonModeState,
};
use ggscat::sampler::{run_sampler, SamplerConfig, EVENTS_PER_STREAM, RNG_ALGORITHM};
use ggscat::scattering::{
    classify_regime, cos_delta_beta, dcs_profile, natural_dcs_unit, total_xsec, TwoPhotonInState,
};

use crate::config::ConfigFile;
use crate::output::{emit_csv, emit_json, format_f64, Field, Report};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or config: exit 2.
    Usage(String),
    /// Energy fails the low-energy validity gate without --force: exit 3.
    Validity(String),
    /// I/O or unexpected computation failure: exit 1.
    Runtime(String),
}

fn from_lib(e: ggscat::Error) -> CliError {
    match e {
        ggscat::Error::EnergyAboveThreshold { .. } => CliError::Validity(e.to_string()),
        ggscat::Error::UnknownMechanism(_) | ggscat::Error::InvalidArgument(_) => {
            CliError::Usage(e.to_string())
        }
        other => CliError::Runtime(other.to_string()),
    }
}

#[derive(Parser)]
#[command(
    name = "ggscat",
    version,
    about = "Photon-photon scattering observables for polarization-entangled photon pairs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Differential cross section over a scattering-angle grid
    Dcs(DcsArgs),
    /// Total cross section by adaptive quadrature
    Total(TotalArgs),
    /// Interference-regime classification from cos Δβ(θ)
    Classify(ClassifyArgs),
    /// Seeded Monte Carlo scattering events
    Sample(SampleArgs),
    /// Delayed-coincidence correlation g(δ)
    Coincidence(CoincidenceArgs),
    /// Beam-splitter two-photon output statistics
    Hom(HomArgs),
    /// DCS profiles of the product and Bell states in the natural unit U
    Figure3(Figure3Args),
}

#[derive(Args, Clone, Default)]
pub struct MechanismOpt {
    /// Mechanism name (qed-low-energy is built in)
    #[arg(long)]
    mechanism: Option<String>,
}

#[derive(Args, Clone, Default)]
pub struct StateOpts {
    /// Named in-state: bell-plus | bell-minus | product-12 | product-21
    /// (overrides --phi/--rho)
    #[arg(long)]
    state: Option<String>,
    /// Entanglement parameter phi in radians, within [0, pi/2]
    #[arg(long)]
    phi: Option<f64>,
    /// Relative phase rho in radians
    #[arg(long)]
    rho: Option<f64>,
}

#[derive(Args, Clone, Default)]
pub struct EnergyOpts {
    /// Photon energy in eV (center-of-momentum frame, per photon)
    #[arg(long)]
    energy_ev: Option<f64>,
    /// Conventional wavelength in m; E = 2*pi*hbar*c/lambda
    #[arg(long)]
    wavelength: Option<f64>,
    /// Reduced wavelength in m; E = hbar*c/lambda_bar
    #[arg(long)]
    reduced_wavelength: Option<f64>,
    /// Compute even when E reaches the pair-creation threshold
    #[arg(long)]
    force: bool,
}

#[derive(Args, Clone, Default)]
pub struct OutputOpts {
    /// Write the output here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Flat key-value JSON config file mirroring the flags (flags win)
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args)]
pub struct DcsArgs {
    #[command(flatten)]
    mechanism: MechanismOpt,
    #[command(flatten)]
    state: StateOpts,
    #[command(flatten)]
    energy: EnergyOpts,
    /// Scattering-angle grid in degrees, as start:stop:step
    #[arg(long)]
    theta_grid: Option<String>,
    /// Single scattering angle in degrees
    #[arg(long)]
    theta_deg: Option<f64>,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
pub struct TotalArgs {
    #[command(flatten)]
    mechanism: MechanismOpt,
    #[command(flatten)]
    state: StateOpts,
    #[command(flatten)]
    energy: EnergyOpts,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    mechanism: MechanismOpt,
    #[command(flatten)]
    energy: EnergyOpts,
    /// Scattering-angle grid in degrees, as start:stop:step
    #[arg(long)]
    theta_grid: Option<String>,
    /// Single scattering angle in degrees
    #[arg(long)]
    theta_deg: Option<f64>,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
pub struct SampleArgs {
    #[command(flatten)]
    mechanism: MechanismOpt,
    #[command(flatten)]
    state: StateOpts,
    #[command(flatten)]
    energy: EnergyOpts,
    /// Number of events to draw
    #[arg(long)]
    n_events: Option<u64>,
    /// RNG seed
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for event generation (output is identical for any value)
    #[arg(long)]
    threads: Option<usize>,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
pub struct CoincidenceArgs {
    #[command(flatten)]
    state: StateOpts,
    #[command(flatten)]
    energy: EnergyOpts,
    /// Single detector separation along the beam axis, in m
    #[arg(long)]
    delta: Option<f64>,
    /// Separation grid in m, as start:stop:step
    #[arg(long)]
    delta_grid: Option<String>,
    /// Detector polarization configuration: 21 | 12 | 11 | 22
    #[arg(long)]
    polarizations: Option<String>,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
pub struct HomArgs {
    /// Beam-splitter in-state: antisymmetric | symmetric | product-ab
    #[arg(long)]
    input: Option<String>,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
pub struct Figure3Args {
    #[command(flatten)]
    mechanism: MechanismOpt,
    #[command(flatten)]
    energy: EnergyOpts,
    /// Scattering-angle grid in degrees, as start:stop:step
    #[arg(long)]
    theta_grid: Option<String>,
    #[command(flatten)]
    out: OutputOpts,
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Dcs(args) => run_dcs(args),
        Command::Total(args) => run_total(args),
        Command::Classify(args) => run_classify(args),
        Command::Sample(args) => run_sample(args),
        Command::Coincidence(args) => run_coincidence(args),
        Command::Hom(args) => run_hom(args),
        Command::Figure3(args) => run_figure3(args),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn verbose() -> bool {
    std::env::var("GGSCAT_VERBOSE").is_ok_and(|v| !v.is_empty() && v != "0")
}

fn load_config(out: &OutputOpts, allowed: &[&str]) -> Result<ConfigFile, CliError> {
    match &out.config {
        Some(path) => ConfigFile::load(path, allowed),
        None => Ok(ConfigFile::empty()),
    }
}

fn resolve_mechanism(opt: &MechanismOpt, cfg: &ConfigFile) -> Result<Mechanism, CliError> {
    let name = cfg
        .string("mechanism", opt.mechanism.clone())?
        .unwrap_or_else(|| "qed-low-energy".to_string());
    Mechanism::by_name(&name).map_err(from_lib)
}

fn resolve_state(opts: &StateOpts, cfg: &ConfigFile) -> Result<TwoPhotonInState, CliError> {
    let named = cfg.string("state", opts.state.clone())?;
    if let Some(name) = named {
        return match name.as_str() {
            "bell-plus" => Ok(TwoPhotonInState::bell_plus()),
            "bell-minus" => Ok(TwoPhotonInState::bell_minus()),
            "product-12" => Ok(TwoPhotonInState::product_12()),
            "product-21" => Ok(TwoPhotonInState::product_21()),
            other => Err(usage(format!(
                "unknown state `{other}` (expected bell-plus, bell-minus, product-12, product-21)"
            ))),
        };
    }
    let phi = cfg.f64("phi", opts.phi)?;
    let rho = cfg.f64("rho", opts.rho)?;
    match (phi, rho) {
        (Some(phi), Some(rho)) => TwoPhotonInState::new(phi, rho).map_err(from_lib),
        (None, None) => Err(usage("no in-state given: use --state or --phi with --rho")),
        _ => Err(usage("--phi and --rho must be given together")),
    }
}

fn resolve_energy(opts: &EnergyOpts, cfg: &ConfigFile) -> Result<PhotonEnergy, CliError> {
    let energy_ev = cfg.f64("energy-ev", opts.energy_ev)?;
    let wavelength = cfg.f64("wavelength", opts.wavelength)?;
    let reduced = cfg.f64("reduced-wavelength", opts.reduced_wavelength)?;
    let force = cfg.flag("force", opts.force)?;

    let given = [energy_ev.is_some(), wavelength.is_some(), reduced.is_some()]
        .iter()
        .filter(|&&b| b)
        .count();
    if given != 1 {
        return Err(usage(
            "exactly one of --energy-ev, --wavelength, --reduced-wavelength is required",
        ));
    }

    let energy = if let Some(ev) = energy_ev {
        PhotonEnergy::from_ev(ev)
    } else if let Some(lambda) = wavelength {
        energy_from_wavelength(lambda)
    } else {
        energy_from_reduced_wavelength(reduced.expect("one spec is set"))
    }
    .map_err(from_lib)?;

    match validate_low_energy(energy) {
        ValidityStatus::Valid => Ok(energy),
        ValidityStatus::Marginal => {
            eprintln!(
                "warning: E = {} eV is within a decade of the pair-creation threshold \
                 ({} eV); low-energy results degrade there",
                energy.ev(),
                CODATA_2018.electron_mass_energy_ev
            );
            Ok(energy)
        }
        ValidityStatus::Invalid if force => {
            eprintln!(
                "warning: E = {} eV is at or above the pair-creation threshold; \
                 forcing evaluation as requested",
                energy.ev()
            );
            PhotonEnergy::from_ev_forced(energy.ev()).map_err(from_lib)
        }
        ValidityStatus::Invalid => Err(CliError::Validity(format!(
            "E = {} eV is at or above the pair-creation threshold ({} eV); \
             pass --force to compute anyway",
            energy.ev(),
            CODATA_2018.electron_mass_energy_ev
        ))),
    }
}

fn parse_grid(spec: &str, what: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        return Err(usage(format!("{what} grid must be start:stop:step, got `{spec}`")));
    };
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| usage(format!("cannot parse `{s}` in {what} grid `{spec}`")))
    };
    let (start, stop, step) = (parse(start)?, parse(stop)?, parse(step)?);
    if !(start.is_finite() && stop.is_finite() && step.is_finite() && step > 0.0 && start <= stop)
    {
        return Err(usage(format!(
            "{what} grid needs finite bounds with start <= stop and step > 0, got `{spec}`"
        )));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if n > 5_000_000 {
        return Err(usage(format!("{what} grid has {n} points; refusing")));
    }
    // accumulated rounding must not push the last point past the bound
    Ok((0..n).map(|i| (start + step * i as f64).min(stop)).collect())
}

fn resolve_theta_grid(
    grid: &Option<String>,
    single: Option<f64>,
    cfg: &ConfigFile,
    default: Option<&str>,
) -> Result<Vec<f64>, CliError> {
    let grid = cfg.string("theta-grid", grid.clone())?;
    let single = cfg.f64("theta-deg", single)?;
    match (grid, single) {
        (Some(_), Some(_)) => Err(usage("--theta-grid and --theta-deg are mutually exclusive")),
        (Some(spec), None) => parse_grid(&spec, "theta"),
        (None, Some(deg)) => Ok(vec![deg]),
        (None, None) => match default {
            Some(spec) => parse_grid(spec, "theta"),
            None => Err(usage("one of --theta-grid or --theta-deg is required")),
        },
    }
}

fn write_artifact(out: &OutputOpts, text: &str) -> Result<(), CliError> {
    match &out.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(out: &OutputOpts, cfg: &ConfigFile, report: &Report) -> Result<(), CliError> {
    let format = match cfg.string("format", out.format.map(|f| format_name(f).to_string()))? {
        None => Format::Csv,
        Some(name) => match name.as_str() {
            "csv" => Format::Csv,
            "json" => Format::Json,
            other => return Err(usage(format!("unknown format `{other}`"))),
        },
    };
    let text = match format {
        Format::Csv => emit_csv(report),
        Format::Json => emit_json(report),
    };
    write_artifact(out, &text)
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

fn base_meta(report: &mut Report, command: &str) {
    report.meta("tool", "ggscat");
    report.meta("version", env!("CARGO_PKG_VERSION"));
    report.meta("command", command);
}

fn state_meta(report: &mut Report, state: TwoPhotonInState) {
    report.meta(
        "state",
        format!("phi:{},rho:{}", format_f64(state.phi()), format_f64(state.rho())),
    );
}

fn energy_meta(report: &mut Report, energy: PhotonEnergy) {
    report.meta_num("energy_ev", energy.ev());
    if energy.is_forced() {
        report.meta("forced", "true");
    }
}

const DCS_KEYS: &[&str] = &[
    "mechanism", "state", "phi", "rho", "energy-ev", "wavelength", "reduced-wavelength",
    "force", "theta-grid", "theta-deg", "format",
];

fn run_dcs(args: DcsArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.out, DCS_KEYS)?;
    let mechanism = resolve_mechanism(&args.mechanism, &cfg)?;
    let state = resolve_state(&args.state, &cfg)?;
    let energy = resolve_energy(&args.energy, &cfg)?;
    let grid_deg = resolve_theta_grid(&args.theta_grid, args.theta_deg, &cfg, None)?;
    let grid_rad: Vec<f64> = grid_deg.iter().map(|d| d.to_radians()).collect();

    let values = dcs_profile(state, &mechanism, energy, &grid_rad).map_err(from_lib)?;

    let mut report = Report::new(vec!["theta_deg", "dcs_si_m2_sr", "dcs_natural_U"]);
    base_meta(&mut report, "dcs");
    report.meta("mechanism", mechanism.name());
    state_meta(&mut report, state);
    energy_meta(&mut report, energy);
    for (deg, value) in grid_deg.iter().zip(&values) {
        report.push_row(vec![
            Field::Num(*deg),
            Field::Num(value.si_m2_per_sr()),
            Field::Num(value.natural_u()),
        ]);
    }
    render(&args.out, &cfg, &report)
}

const TOTAL_KEYS: &[&str] = &[
    "mechanism", "state", "phi", "rho", "energy-ev", "wavelength", "reduced-wavelength",
    "force", "format",
];

fn run_total(args: TotalArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.out, TOTAL_KEYS)?;
    let mechanism = resolve_mechanism(&args.mechanism, &cfg)?;
    let state = resolve_state(&args.state, &cfg)?;
    let energy = resolve_energy(&args.energy, &cfg)?;

    let sigma = total_xsec(state, &mechanism, energy).map_err(from_lib)?;

    let mut report = Report::new(vec!["total_si_m2", "total_natural_U"]);
    base_meta(&mut report, "total");
    report.meta("mechanism", mechanism.name());
    state_meta(&mut report, state);
    energy_meta(&mut report, energy);
    report.push_row(vec![
        Field::Num(sigma),
        Field::Num(sigma / natural_dcs_unit(energy)),
    ]);
    render(&args.out, &cfg, &report)
}

const CLASSIFY_KEYS: &[&str] = &[
    "mechanism", "energy-ev", "wavelength", "reduced-wavelength", "force",
    "theta-grid", "theta-deg", "format",
];

fn run_classify(args: ClassifyArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.out, CLASSIFY_KEYS)?;
    let mechanism = resolve_mechanism(&args.mechanism, &cfg)?;
    let energy = resolve_energy(&args.energy, &cfg)?;
    let single = cfg.f64("theta-deg", args.theta_deg)?;
    let grid_spec = cfg.string("theta-grid", args.theta_grid.clone())?;

    if let (Some(deg), None) = (single, &grid_spec) {
        // single angle: the artifact is the bare regime name
        let regime = classify_regime(&mechanism, energy, deg.to_radians()).map_err(from_lib)?;
        let mut report = Report::new(vec!["regime"]);
        base_meta(&mut report, "classify");
        report.meta("mechanism", mechanism.name());
        energy_meta(&mut report, energy);
        report.push_row(vec![Field::Text(regime.to_string())]);
        return match cfg.string("format", args.out.format.map(|f| format_name(f).to_string()))? {
            Some(ref f) if f == "json" => write_artifact(&args.out, &emit_json(&report)),
            _ => write_artifact(&args.out, &format!("{regime}\n")),
        };
    }

    let grid_deg = resolve_theta_grid(&grid_spec, single, &ConfigFile::empty(), None)?;
    let mut report = Report::new(vec!["theta_deg", "cos_delta_beta", "regime"]);
    base_meta(&mut report, "classify");
    report.meta("mechanism", mechanism.name());
    energy_meta(&mut report, energy);
    for deg in grid_deg {
        let theta = deg.to_radians();
        let regime = classify_regime(&mechanism, energy, theta).map_err(from_lib)?;
        let cos_db = cos_delta_beta(&mechanism, energy, theta).map_err(from_lib)?;
        report.push_row(vec![
            Field::Num(deg),
            Field::Num(cos_db.unwrap_or(f64::NAN)),
            Field::Text(regime.to_string()),
        ]);
    }
    render(&args.out, &cfg, &report)
}

const SAMPLE_KEYS: &[&str] = &[
    "mechanism", "state", "phi", "rho", "energy-ev", "wavelength", "reduced-wavelength",
    "force", "n-events", "seed", "threads", "format",
];

fn run_sample(args: SampleArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.out, SAMPLE_KEYS)?;
    let mechanism = resolve_mechanism(&args.mechanism, &cfg)?;
    let state = resolve_state(&args.state, &cfg)?;
    let energy = resolve_energy(&args.energy, &cfg)?;
    let n_events = cfg
        .u64("n-events", args.n_events)?
        .ok_or_else(|| usage("--n-events is required"))?;
    let seed = cfg.u64("seed", args.seed)?.unwrap_or(0);
    let threads = cfg.u64("threads", args.threads.map(|t| t as u64))?;

    let sampler_cfg = SamplerConfig {
        n_events,
        seed,
        mechanism: mechanism.name().to_string(),
        state,
        energy,
    };
    let run = match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n as usize)
                .build()
                .map_err(|e| CliError::Runtime(format!("cannot build thread pool: {e}")))?;
            pool.install(|| run_sampler(&sampler_cfg))
        }
        None => run_sampler(&sampler_cfg),
    }
    .map_err(from_lib)?;

    if verbose() {
        eprintln!(
            "sample: {} events, acceptance ratio {:.4}, envelope {:.6e}",
            run.events.len(),
            run.acceptance_ratio,
            run.envelope
        );
    }

    let mut report = Report::new(vec!["theta_rad", "azimuth_rad"]);
    base_meta(&mut report, "sample");
    report.meta("mechanism", mechanism.name());
    state_meta(&mut report, state);
    energy_meta(&mut report, energy);
    report.meta("seed", seed.to_string());
    report.meta("rng", RNG_ALGORITHM);
    report.meta("events_per_stream", EVENTS_PER_STREAM.to_string());
    report.meta("n_events", n_events.to_string());
    for event in &run.events {
        report.push_row(vec![Field::Num(event.theta), Field::Num(event.azimuth)]);
    }
    render(&args.out, &cfg, &report)
}

const COINCIDENCE_KEYS: &[&str] = &[
    "state", "phi", "rho", "energy-ev", "wavelength", "reduced-wavelength", "force",
    "delta", "delta-grid", "polarizations", "format",
];

fn run_coincidence(args: CoincidenceArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.out, COINCIDENCE_KEYS)?;
    let state = resolve_state(&args.state, &cfg)?;
    let energy = resolve_energy(&args.energy, &cfg)?;
    let single = cfg.f64("delta", args.delta)?;
    let grid_spec = cfg.string("delta-grid", args.delta_grid.clone())?;
    let deltas = match (single, grid_spec) {
        (Some(_), Some(_)) => {
            return Err(usage("--delta and --delta-grid are mutually exclusive"))
        }
        (Some(d), None) => vec![d],
        (None, Some(spec)) => parse_grid(&spec, "delta")?,
        (None, None) => return Err(usage("one of --delta or --delta-grid is required")),
    };
    let pol = match cfg
        .string("polarizations", args.polarizations.clone())?
        .as_deref()
    {
        None | Some("21") => DetectorPolarizations::InPlaneThenPerp,
        Some("12") => DetectorPolarizations::PerpThenInPlane,
        Some("11") => DetectorPolarizations::BothPerp,
        Some("22") => DetectorPolarizations::BothInPlane,
        Some(other) => {
            return Err(usage(format!(
                "unknown polarization configuration `{other}` (expected 21, 12, 11, 22)"
            )))
        }
    };

    let mut report = Report::new(vec!["delta_m", "g"]);
    base_meta(&mut report, "coincidence");
    state_meta(&mut report, state);
    energy_meta(&mut report, energy);
    report.meta(
        "polarizations",
        match pol {
            DetectorPolarizations::InPlaneThenPerp => "21",
            DetectorPolarizations::PerpThenInPlane => "12",
            DetectorPolarizations::BothPerp => "11",
            DetectorPolarizations::BothInPlane => "22",
        },
    );
    for delta in deltas {
        let sep = SeparationAlongBeam::new(delta).map_err(from_lib)?;
        let g = coincidence_probability_for(state, energy, sep, pol);
        report.push_row(vec![Field::Num(delta), Field::Num(g)]);
    }
    render(&args.out, &cfg, &report)
}

const HOM_KEYS: &[&str] = &["input", "format"];

fn run_hom(args: HomArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.out, HOM_KEYS)?;
    let input = cfg
        .string("input", args.input.clone())?
        .ok_or_else(|| usage("--input is required (antisymmetric | symmetric | product-ab)"))?;
    let in_state = match input.as_str() {
        "antisymmetric" => TwoPhotonModeState::antisymmetric_ab(),
        "symmetric" => TwoPhotonModeState::symmetric_ab(),
        "product-ab" => TwoPhotonModeState::product_ab(),
        other => {
            return Err(usage(format!(
                "unknown in-state `{other}` (expected antisymmetric, symmetric, product-ab)"
            )))
        }
    };
    let out_state = beam_splitter_transform(&in_state).map_err(from_lib)?;
    let stats = hom_statistics(&out_state).map_err(from_lib)?;

    let mut report = Report::new(vec!["p_coincidence", "p_both_c", "p_both_d"]);
    base_meta(&mut report, "hom");
    report.meta("input", input);
    report.push_row(vec![
        Field::Num(stats.p_coincidence),
        Field::Num(stats.p_both_c),
        Field::Num(stats.p_both_d),
    ]);
    render(&args.out, &cfg, &report)
}

const FIGURE3_KEYS: &[&str] = &[
    "mechanism", "energy-ev", "wavelength", "reduced-wavelength", "force",
    "theta-grid", "format",
];

fn run_figure3(args: Figure3Args) -> Result<(), CliError> {
    let cfg = load_config(&args.out, FIGURE3_KEYS)?;
    let mechanism = resolve_mechanism(&args.mechanism, &cfg)?;
    let energy = resolve_energy(&args.energy, &cfg)?;
    let grid_deg = resolve_theta_grid(&args.theta_grid, None, &cfg, Some("0:90:1"))?;
    let grid_rad: Vec<f64> = grid_deg.iter().map(|d| d.to_radians()).collect();

    let product =
        dcs_profile(TwoPhotonInState::product_12(), &mechanism, energy, &grid_rad)
            .map_err(from_lib)?;
    let plus = dcs_profile(TwoPhotonInState::bell_plus(), &mechanism, energy, &grid_rad)
        .map_err(from_lib)?;
    let minus = dcs_profile(TwoPhotonInState::bell_minus(), &mechanism, energy, &grid_rad)
        .map_err(from_lib)?;

    let mut report = Report::new(vec![
        "theta_deg",
        "dcs_product_U",
        "dcs_bell_plus_U",
        "dcs_bell_minus_U",
    ]);
    base_meta(&mut report, "figure3");
    report.meta("mechanism", mechanism.name());
    energy_meta(&mut report, energy);
    for i in 0..grid_deg.len() {
        report.push_row(vec![
            Field::Num(grid_deg[i]),
            Field::Num(product[i].natural_u()),
            Field::Num(plus[i].natural_u()),
            Field::Num(minus[i].natural_u()),
        ]);
    }
    render(&args.out, &cfg, &report)
}
