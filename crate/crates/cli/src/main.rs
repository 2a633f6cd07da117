//! `sswm`: run presets or TOML configs and export plot-ready CSV.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sswm_core::config::{apply_grid_spec, ConfigFile, GridSpec, RunConfig};
use sswm_core::correlations::{
    self, classify_regime, coherence_extent, diagonal_support_metric, oracle_check, oscillation_period,
};
use sswm_core::error::ErrorKind;
use sswm_core::export::{self, OutputEntry, VERSION};
use sswm_core::spectra::{self, find_peaks, predicted_resonances, Quantity, DEFAULT_THRESHOLD};
use sswm_core::{Error, Result, Schedule};

const ORACLE_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "sswm", version, about = "Six-wave mixing spectra and coincidence rates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a susceptibility or the kernel on the frequency lattice.
    Spectra {
        #[command(flatten)]
        common: Common,
        /// chi_s3, chi5_he, chi5_pcr_s1, chi5_pcr_s2, chi5_pcr_s3 or kernel
        #[arg(long, value_parser = parse_quantity)]
        quantity: Quantity,
        /// Also write the detected peaks next to the predicted pathways.
        #[arg(long)]
        peaks: bool,
    },
    /// Three-photon surface, conditional traces and regime report.
    Correlations {
        #[command(flatten)]
        common: Common,
        /// Compare the transform with direct quadrature at k probe points.
        #[arg(long, value_name = "K")]
        oracle: Option<usize>,
    },
    /// Harmonic-expansion vs chain-rule susceptibilities.
    ComparePcr {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    preset: Option<String>,
    /// TOML run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Lattice size, e.g. 512x512.
    #[arg(long, value_name = "N1xN2")]
    grid: Option<String>,
    /// Frequency spans in γ31 units, `S` or `S1xS2`.
    #[arg(long)]
    span: Option<String>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    halve_absorption: bool,
    #[arg(long)]
    literal_omega_tr: bool,
}

fn parse_quantity(s: &str) -> std::result::Result<Quantity, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_pair<T: std::str::FromStr>(s: &str, what: &str, allow_single: bool) -> Result<(T, T)> {
    let bad = || Error::Config(format!("--{what} expects A x B, got `{s}`"));
    let parts: Vec<&str> = s.split(['x', 'X']).map(str::trim).collect();
    let parse = |p: &str| p.parse::<T>().map_err(|_| bad());
    match parts.as_slice() {
        [a] if allow_single => Ok((parse(a)?, parse(a)?)),
        [a, b] => Ok((parse(a)?, parse(b)?)),
        _ => Err(bad()),
    }
}

impl Common {
    fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => ConfigFile::from_path(path)?,
            None => ConfigFile::default(),
        };
        if self.preset.is_some() {
            cfg.preset = self.preset.clone();
        }
        if cfg.preset.is_none() && cfg.native.is_none() && self.config.is_none() {
            return Err(Error::Config("one of --preset or --config is required".into()));
        }
        if self.halve_absorption {
            cfg.halve_absorption = Some(true);
        }
        if self.literal_omega_tr {
            cfg.literal_omega_tr = Some(true);
        }
        let mut run = cfg.resolve()?;
        let mut spec = GridSpec::default();
        if let Some(g) = &self.grid {
            let (n1, n2) = parse_pair::<usize>(g, "grid", false)?;
            spec.n1 = Some(n1);
            spec.n2 = Some(n2);
        }
        if let Some(s) = &self.span {
            let (s1, s2) = parse_pair::<f64>(s, "span", true)?;
            spec.nu1_span = Some(s1);
            spec.nu2_span = Some(s2);
        }
        run.grid = apply_grid_spec(&run.grid, &spec)?;
        Ok(run)
    }
}

struct Output {
    dir: PathBuf,
    entries: Vec<OutputEntry>,
}

impl Output {
    fn new(dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(Self { dir: dir.to_path_buf(), entries: Vec::new() })
    }

    fn write(&mut self, name: &str, f: impl FnOnce(&Path) -> Result<()>) -> Result<()> {
        f(&self.dir.join(name))?;
        self.entries.push(OutputEntry::for_file(&self.dir, name)?);
        Ok(())
    }
}

fn spectra_cmd(run: &RunConfig, quantity: Quantity, peaks: bool, out: &mut Output) -> Result<Value> {
    let field = spectra::evaluate(quantity, &run.params, &run.grid)?;
    let name = quantity.as_str();
    out.write(&format!("{name}.csv"), |p| export::write_field_csv(p, &field))?;
    let sidecar = export::FieldSidecar::new(&field, &run.params)?;
    out.write(&format!("{name}.json"), |p| export::write_json(p, &sidecar))?;
    let mut extra = json!({ "quantity": name, "scale": field.scale });
    if peaks {
        let found = find_peaks(&field, DEFAULT_THRESHOLD)?;
        let prediction = predicted_resonances(&run.params);
        if let Err(e) = &prediction {
            log::warn!("no closed-form prediction: {e}");
        }
        let prediction = prediction.ok();
        out.write("peaks.csv", |p| export::write_peaks_csv(p, &found, prediction.as_ref()))?;
        extra["peak_count"] = json!(found.len());
        extra["prediction"] = json!(prediction);
    }
    Ok(extra)
}

fn correlations_cmd(run: &RunConfig, oracle: Option<usize>, out: &mut Output) -> Result<Value> {
    let schedule = Schedule::default();
    let r = correlations::run(&run.params, &run.grid, schedule)?;
    out.write("r3.csv", |p| export::write_surface_csv(p, &r.surface))?;
    out.write("r2.csv", |p| export::write_traces_csv(p, &[&r.r2_tau32, &r.r2_tau31]))?;

    let regime = match classify_regime(&run.params) {
        Ok(rep) => json!(rep),
        Err(e) => {
            log::warn!("regime not classified: {e}");
            json!({ "error": e.to_string() })
        }
    };
    let trace_metrics = |t: &correlations::ConditionalTrace| {
        json!({
            "traced_over": t.traced_over.as_str(),
            "coherence_extent": coherence_extent(t),
            "oscillation_period": oscillation_period(t).ok(),
        })
    };
    let mut extra = json!({
        "regime": regime,
        "diagonal": diagonal_support_metric(&r.surface),
        "traces": [trace_metrics(&r.r2_tau32), trace_metrics(&r.r2_tau31)],
        "edge_ratio": r.field.edge_ratio(),
        "parseval_ratio": correlations::parseval_ratio(&r.field, &r.amplitude),
    });
    if let Some(k) = oracle {
        let rows = oracle_check(&run.params, &r.field, &r.amplitude, k, ORACLE_SEED, schedule);
        out.write("oracle.csv", |p| export::write_oracle_csv(p, &rows))?;
        let worst = rows.iter().map(|x| x.deviation).fold(0.0, f64::max);
        extra["oracle"] = json!({ "points": rows.len(), "seed": ORACLE_SEED, "max_deviation": worst });
    }
    Ok(extra)
}

fn compare_cmd(run: &RunConfig, out: &mut Output) -> Result<Value> {
    let report = sswm_core::compare::compare_pcr(&run.params, &run.grid, Schedule::default())?;
    out.write("compare.json", |p| export::write_json(p, &report))?;
    Ok(json!({
        "chi_s3_max_deviation": report.chi_s3_max_deviation,
        "min_shape_distance": report.min_distance(),
    }))
}

fn execute(cli: Cli) -> Result<()> {
    let start = Instant::now();
    let (name, common) = match &cli.command {
        Command::Spectra { common, .. } => ("spectra", common),
        Command::Correlations { common, .. } => ("correlations", common),
        Command::ComparePcr { common } => ("compare-pcr", common),
    };
    let run = common.resolve()?;
    let mut out = Output::new(&common.out)?;
    let results = match &cli.command {
        Command::Spectra { quantity, peaks, .. } => spectra_cmd(&run, *quantity, *peaks, &mut out)?,
        Command::Correlations { oracle, .. } => correlations_cmd(&run, *oracle, &mut out)?,
        Command::ComparePcr { .. } => compare_cmd(&run, &mut out)?,
    };
    let manifest = json!({
        "command": name,
        "args": std::env::args().skip(1).collect::<Vec<_>>(),
        "preset": run.preset,
        "params": run.params,
        "grid": run.grid,
        "outputs": out.entries,
        "results": results,
        "wall_time_s": start.elapsed().as_secs_f64(),
        "threads": rayon::current_num_threads(),
        "version": VERSION,
    });
    export::write_json(&out.dir.join("manifest.json"), &manifest)
}

fn init_threads() -> Result<()> {
    let Ok(v) = std::env::var("SSWM_THREADS") else { return Ok(()) };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Config(format!("SSWM_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Invariant(e.to_string()))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match init_threads().and_then(|()| execute(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Config => 2,
                ErrorKind::Numeric => 3,
                ErrorKind::Internal => 4,
            })
        }
    }
}
