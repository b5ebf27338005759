use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use jcm_cli::config::{parse_document, Entry};
use jcm_cli::{run, verify, write_outputs, Error, RunConfig};

/// Moving Λ-atom in a cavity with intensity-dependent coupling: sample the
/// field entropy, entropic and quadrature squeezing and the Mandel parameter
/// over scaled time τ = λt.
#[derive(Debug, Parser)]
#[command(name = "jcm", version, allow_negative_numbers = true)]
struct Cli {
    /// Flat `key = value` config file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Compare the analytic state with an RK4 integration at five τ values.
    #[arg(long)]
    verify: bool,

    /// Initial mean photon number |α|².
    #[arg(long = "alpha_sq", value_name = "VALUE")]
    alpha_sq: Option<String>,
    /// Phase of α in radians.
    #[arg(long = "alpha_phase", value_name = "VALUE")]
    alpha_phase: Option<String>,
    #[arg(long, value_name = "VALUE")]
    lambda: Option<String>,
    /// Number of half-wavelengths of the mode crossed by the moving atom.
    #[arg(long, value_name = "VALUE")]
    p: Option<String>,
    /// moving | static
    #[arg(long, value_name = "VALUE")]
    motion: Option<String>,
    /// identity | trapped_ion | harmonious | poschl_teller | custom
    #[arg(long, value_name = "VALUE")]
    nonlinearity: Option<String>,
    /// Lamb-Dicke parameter of the trapped-ion profile.
    #[arg(long, value_name = "VALUE")]
    eta: Option<String>,
    /// Pöschl-Teller parameter.
    #[arg(long, value_name = "VALUE")]
    nu: Option<String>,
    /// Fock cutoff, 0 for automatic.
    #[arg(long = "n_max", value_name = "VALUE")]
    n_max: Option<String>,
    /// Comma list g(1),g(2),... for the custom profile.
    #[arg(long = "custom_g", value_name = "LIST")]
    custom_g: Option<String>,
    #[arg(long = "tau_start", value_name = "VALUE")]
    tau_start: Option<String>,
    #[arg(long = "tau_end", value_name = "VALUE")]
    tau_end: Option<String>,
    #[arg(long = "tau_step", value_name = "VALUE")]
    tau_step: Option<String>,
    /// Comma list of entropy, entropy_squeezing, mandel, quadrature.
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    observables: Option<String>,
    /// Comma list of p values, one output set each.
    #[arg(long = "sweep_p", value_name = "LIST")]
    sweep_p: Option<String>,
    /// Comma list of nonlinearity kinds, one output set each.
    #[arg(long = "sweep_nonlinearity", value_name = "LIST")]
    sweep_nonlinearity: Option<String>,
    /// CSV path; sweep members get a `_<label>` suffix.
    #[arg(long, value_name = "PATH")]
    output: Option<String>,
    /// Also write one SVG per observable.
    #[arg(long, value_name = "BOOL")]
    plot: Option<String>,
    /// Quadrature points for the entropic squeezing integrals (odd).
    #[arg(long = "grid_points", value_name = "VALUE")]
    grid_points: Option<String>,
}

impl Cli {
    fn flag_entries(&self) -> Vec<Entry> {
        [
            ("alpha_sq", &self.alpha_sq),
            ("alpha_phase", &self.alpha_phase),
            ("lambda", &self.lambda),
            ("p", &self.p),
            ("motion", &self.motion),
            ("nonlinearity", &self.nonlinearity),
            ("eta", &self.eta),
            ("nu", &self.nu),
            ("n_max", &self.n_max),
            ("custom_g", &self.custom_g),
            ("tau_start", &self.tau_start),
            ("tau_end", &self.tau_end),
            ("tau_step", &self.tau_step),
            ("observables", &self.observables),
            ("sweep_p", &self.sweep_p),
            ("sweep_nonlinearity", &self.sweep_nonlinearity),
            ("output", &self.output),
            ("plot", &self.plot),
            ("grid_points", &self.grid_points),
        ]
        .into_iter()
        .filter_map(|(key, value)| value.as_ref().map(|v| Entry::flag(key, v.trim())))
        .collect()
    }
}

fn load(cli: &Cli) -> Result<RunConfig, Error> {
    let mut entries = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            parse_document(&text)?
        }
        None => Vec::new(),
    };
    let flags = cli.flag_entries();
    entries.retain(|e| !flags.iter().any(|f| f.key == e.key));
    entries.extend(flags);
    Ok(RunConfig::from_entries(&entries)?)
}

fn execute(cli: &Cli) -> Result<(), Error> {
    let config = load(cli)?;
    let series = run(&config)?;
    for path in write_outputs(&series)? {
        eprintln!("wrote {}", path.display());
    }
    if cli.verify {
        for report in verify(&config)? {
            let name = report.label.as_deref().unwrap_or("run");
            eprintln!(
                "verify {name}: max deviation {:.3e} over {} checkpoints",
                report.max_deviation(),
                report.samples.len()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("jcm: error: {e}");
            ExitCode::FAILURE
        }
    }
}
