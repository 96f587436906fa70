//! `adqc`: figure curve data, verification campaigns, and single protocol demos.
//!
//! Exit status is 0 on success, 1 when a campaign fails, and 2 for usage or I/O errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adqc_fidelity::curves::{
    curve_table, CurveRequest, Figure, DEFAULT_RESOLUTION, DEFAULT_S_VALUES,
};
use adqc_fidelity::protocols::{analyze, FidelityReport, ProtocolKind, ProtocolSpec};
use adqc_fidelity::verify::{run_campaign, Campaign, CampaignConfig};
use adqc_fidelity::{presets, state_file, PureState};
use clap::{Parser, Subcommand, ValueEnum};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "adqc",
    version,
    about = "Inaccurate-measurement fidelity of one-way and ancilla-driven gates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write bound-curve data as CSV.
    Curves {
        #[arg(long, value_parser = parse_figure)]
        figure: Figure,
        /// Number of abscissa points, endpoints included.
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        grid: usize,
        /// Comma-separated S values (fig5 only).
        #[arg(long, value_delimiter = ',')]
        s_values: Option<Vec<f64>>,
        /// Output file; standard output when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a seeded verification campaign and write its JSON report.
    Verify {
        #[arg(value_parser = parse_campaign)]
        campaign: Campaign,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        tolerance: Option<f64>,
        /// Report file; standard output when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Worker threads; all cores when omitted. Results do not depend on it.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run one protocol on a state file or preset and print its fidelity report.
    Demo {
        #[arg(value_parser = parse_protocol)]
        protocol: ProtocolKind,
        /// State file (`qubits: n` then `index re im` lines).
        #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
        state: Option<PathBuf>,
        /// bell, ghz:n, product:n, saturate:S, rho_lambda:λ, mixed_pair
        #[arg(long)]
        preset: Option<String>,
        /// Comma-separated target qubits; defaults to 0 (rotations) or 0,1 (gates).
        #[arg(long, value_delimiter = ',')]
        targets: Option<Vec<usize>>,
        /// Rotation angle (rotation protocols only).
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        u: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        delta: f64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

fn parse_figure(s: &str) -> Result<Figure, String> {
    s.parse().map_err(|e: adqc_fidelity::Error| e.to_string())
}

fn parse_campaign(s: &str) -> Result<Campaign, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Campaign::ALL.iter().map(|c| c.name()).collect();
        format!(
            "unknown campaign `{s}` (expected one of: {})",
            names.join(", ")
        )
    })
}

fn parse_protocol(s: &str) -> Result<ProtocolKind, String> {
    s.parse().map_err(|e: adqc_fidelity::Error| e.to_string())
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), String> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_curves(
    figure: Figure,
    grid: usize,
    s_values: Option<Vec<f64>>,
    output: Option<&Path>,
) -> Result<u8, String> {
    let request = CurveRequest {
        figure,
        resolution: grid,
        s_values: s_values.unwrap_or_else(|| DEFAULT_S_VALUES.to_vec()),
    };
    let table = curve_table(&request).map_err(|e| e.to_string())?;
    emit(output, &table.to_csv())?;
    Ok(0)
}

fn cmd_verify(
    campaign: Campaign,
    samples: Option<u64>,
    seed: u64,
    tolerance: Option<f64>,
    output: Option<&Path>,
    threads: Option<usize>,
) -> Result<u8, String> {
    let mut config = CampaignConfig::for_campaign(campaign, seed);
    if let Some(n) = samples {
        config.samples = n;
    }
    if let Some(t) = tolerance {
        config.tolerance = t;
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err("--threads must be at least 1".into());
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| e.to_string())?;
    let report = pool
        .install(|| run_campaign(&config, campaign))
        .map_err(|e| e.to_string())?;
    let mut json = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
    json.push('\n');
    match output {
        Some(path) => {
            emit(Some(path), &json)?;
            println!("{}", report.summary_line());
        }
        None => {
            print!("{json}");
            eprintln!("{}", report.summary_line());
        }
    }
    Ok(if report.passed { 0 } else { EXIT_FAILED })
}

fn load_input(state: Option<&Path>, preset: Option<&str>) -> Result<PureState, String> {
    match (state, preset) {
        (Some(path), _) => {
            let sf = state_file::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
            if sf.was_renormalized() {
                eprintln!("note: renormalized input (norm was {})", sf.original_norm);
            }
            Ok(sf.state)
        }
        (None, Some(name)) => presets::preset(name).map_err(|e| e.to_string()),
        (None, None) => Err("one of --state or --preset is required".into()),
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), |v| format!("{v:.12}"))
}

fn render_table(r: &FidelityReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "protocol              {}", r.protocol);
    let _ = writeln!(s, "targets               {:?}", r.targets);
    if let Some(u) = r.u {
        let _ = writeln!(s, "u                     {u}");
    }
    let _ = writeln!(s, "epsilon, delta        {}, {}", r.epsilon, r.delta);
    let _ = writeln!(
        s,
        "branch probabilities  {:.12}, {:.12}",
        r.branch_probabilities[0], r.branch_probabilities[1]
    );
    let _ = writeln!(s, "simulated F           {:.12}", r.simulated_f);
    let _ = writeln!(s, "closed-form F         {:.12}", r.closed_form_f);
    let _ = writeln!(s, "{:<22}{:.12}", r.correlator_name, r.correlator_used);
    let _ = writeln!(s, "attributed qubits     {:?}", r.attributed_qubits);
    let e = &r.entanglement;
    if e.purity_s.is_some() {
        let _ = writeln!(s, "S                     {}", fmt_opt(e.purity_s));
        let _ = writeln!(s, "S_v                   {:.12}", e.von_neumann);
        let _ = writeln!(s, "Bloch length          {}", fmt_opt(e.bloch_length));
    } else {
        let _ = writeln!(s, "S_v2                  {:.12}", e.von_neumann);
    }
    for (name, value) in &r.bounds {
        let mut flags = String::new();
        if r.saturated.contains(name) {
            flags.push_str("  [saturated]");
        }
        if r.violations.iter().any(|v| &v.bound == name) {
            flags.push_str("  [VIOLATED]");
        }
        let _ = writeln!(s, "{name:<22}{value:.12}{flags}");
    }
    for (name, why) in &r.unavailable_bounds {
        let _ = writeln!(s, "{name:<22}n/a ({why})");
    }
    let _ = writeln!(
        s,
        "violations            {}",
        if r.violations.is_empty() {
            "none".to_string()
        } else {
            r.violations.len().to_string()
        }
    );
    s
}

#[allow(clippy::too_many_arguments)]
fn cmd_demo(
    kind: ProtocolKind,
    state: Option<&Path>,
    preset: Option<&str>,
    targets: Option<Vec<usize>>,
    u: f64,
    epsilon: f64,
    delta: f64,
    format: Format,
) -> Result<u8, String> {
    let input = load_input(state, preset)?;
    let targets = targets.unwrap_or_else(|| (0..kind.target_count()).collect());
    if targets.len() != kind.target_count() {
        return Err(format!(
            "{kind} takes {} target(s), got {}",
            kind.target_count(),
            targets.len()
        ));
    }
    let spec = if kind.is_rotation() {
        ProtocolSpec::rotation(kind, targets[0], u, epsilon, delta)
    } else {
        ProtocolSpec::two_qubit(kind, targets[0], targets[1], epsilon, delta)
    }
    .map_err(|e| e.to_string())?;
    let report = analyze(&input, &spec).map_err(|e| e.to_string())?;
    match format {
        Format::Table => print!("{}", render_table(&report)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
        ),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Curves {
            figure,
            grid,
            s_values,
            output,
        } => cmd_curves(figure, grid, s_values, output.as_deref()),
        Command::Verify {
            campaign,
            samples,
            seed,
            tolerance,
            output,
            threads,
        } => cmd_verify(
            campaign,
            samples,
            seed,
            tolerance,
            output.as_deref(),
            threads,
        ),
        Command::Demo {
            protocol,
            state,
            preset,
            targets,
            u,
            epsilon,
            delta,
            format,
        } => cmd_demo(
            protocol,
            state.as_deref(),
            preset.as_deref(),
            targets,
            u,
            epsilon,
            delta,
            format,
        ),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
