use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use vnlw::data_factory::{build_adversarial, describe, BoxSpec, Variant};
use vnlw::estimates::{lower_bound_predictions, thresholds, xi1_closed_form, xi1_closed_form_field, Bracket, LowerBoundParams, Regime};
use vnlw::harness::{
    emit_report, run_ck_failure, run_long_time_inflation, run_short_time_inflation, run_wellposedness, verify, Config,
    ExperimentReport, Format, LongTimeRun, RRule, ShortTimeRun, WellposednessRun,
};
use vnlw::regimes::{plan_ck_failure, plan_long_time, plan_long_time_calibrated, plan_short_time, short_time_case, Calibration};
use vnlw::spectral_core::{hs_norm, FrequencyLattice};
use vnlw::{Error, Result};

#[derive(Parser)]
#[command(name = "vnlw", version, about = "Viscous nonlinear wave lab on the torus")]
struct Cli {
    /// key = value configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override the "<<" margin
    #[arg(long, global = true)]
    margin: Option<f64>,
    /// Override the background data seed
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    json: Option<PathBuf>,
    /// Also write the sample CSV here
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlanKind {
    /// Short-time construction
    #[value(alias = "short")]
    Sec3,
    /// Long-time construction
    #[value(alias = "long")]
    Sec4,
    /// Unit-norm data for the C^k failure
    Ck,
}

#[derive(Clone, Copy, ValueEnum)]
enum InflateKind {
    Short,
    Long,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Short,
    Long,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Short => Variant::ShortTime,
            VariantArg::Long => Variant::LongTime,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// s_scal, s_vis and s_m for (d, k)
    Thresholds {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
    },
    /// Parameter plan with its inequality ledger
    Plan {
        kind: PlanKind,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<f64>,
        /// Inflation target n
        #[arg(long, default_value_t = 2)]
        n: u64,
        #[arg(long = "N", default_value_t = 1024.0)]
        big_n: f64,
        /// sec3: require this construction case (1, 2 or 3)
        #[arg(long)]
        case: Option<u8>,
        /// sec4: size R and T for this finite N instead of window midpoints
        #[arg(long)]
        calibrated: bool,
    },
    /// First Picard iterate of box data from the closed form
    Xi1 {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "N")]
        big_n: u64,
        #[arg(long = "A", default_value_t = 1.0)]
        a: f64,
        #[arg(long = "R", default_value_t = 1.0)]
        r: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = -0.75)]
        s: f64,
        /// Frequency for a single coefficient, e.g. 0,0,0
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        xi: Option<Vec<i64>>,
        #[arg(long, value_enum, default_value = "long")]
        variant: VariantArg,
    },
    /// Norm inflation experiments
    Inflate {
        kind: InflateKind,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, allow_hyphen_values = true, default_value_t = -0.75)]
        s: f64,
        /// long: norm measured in H^sigma (defaults to s)
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<f64>,
        /// long: inflation target
        #[arg(long, default_value_t = 2)]
        n: u64,
        /// short: comma-separated sweep; long: a single N (default: smallest feasible)
        #[arg(long = "N", value_delimiter = ',')]
        big_n: Vec<u64>,
        /// short: box width
        #[arg(long = "A", default_value_t = 16.0)]
        a: f64,
        /// short: fixed amplitude (default: unit data distance)
        #[arg(long = "R")]
        r: Option<f64>,
        /// long: highest Picard level
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Growth of the first iterate for unit-norm data
    CkFailure {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long = "N", value_delimiter = ',', default_value = "64,128,256,512")]
        big_n: Vec<u64>,
        /// Allowed distance of the fitted exponent from the prediction
        #[arg(long, default_value_t = 0.15)]
        tol: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Contraction, Lipschitz dependence and smoothing constants
    Wp {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long, default_value_t = 0.1)]
        scale: f64,
        #[arg(long = "T", default_value_t = 0.25)]
        t: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Invariant suite; deterministic JSON for a given seed
    Verify {
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Data utilities
    Data {
        #[command(subcommand)]
        command: DataCommand,
    },
}

#[derive(Subcommand)]
enum DataCommand {
    /// Σ, support size and norms of box data
    Describe {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "N")]
        big_n: u64,
        #[arg(long = "A", default_value_t = 1.0)]
        a: f64,
        #[arg(long = "R", default_value_t = 1.0)]
        r: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = -0.75)]
        s: f64,
        #[arg(long, value_enum, default_value = "long")]
        variant: VariantArg,
    },
}

fn print_json(value: &serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn finish_report(report: &ExperimentReport, out: &Output) -> Result<()> {
    if let Some(path) = &out.csv {
        emit_report(report, Format::Csv, path)?;
    }
    match &out.json {
        Some(path) => emit_report(report, Format::Json, path)?,
        None => println!("{}", report.to_json()?),
    }
    eprintln!("{}: verdict {}", report.experiment, if report.verdict { "pass" } else { "fail" });
    Ok(())
}

fn xi1_command(
    d: usize,
    k: usize,
    big_n: u64,
    a: f64,
    r: f64,
    t: f64,
    s: f64,
    xi: Option<Vec<i64>>,
    variant: Variant,
) -> Result<serde_json::Value> {
    let spec = BoxSpec::new(d, k, big_n, a, variant)?;
    let data = build_adversarial(spec, r, FrequencyLattice::new(d, spec.required_cutoff())?)?;
    let inputs = json!({"d": d, "k": k, "N": big_n, "A": a, "R": r, "t": t, "s": s});
    if let Some(xi) = xi {
        if xi.len() != d {
            return Err(Error::Domain(format!("--xi needs {d} components")));
        }
        let mut f = [0i64; 3];
        f[..d].copy_from_slice(&xi);
        let c = xi1_closed_form(&data, t, &f)?;
        return Ok(json!({"inputs": inputs, "xi": xi, "value": {"re": c.re, "im": c.im}}));
    }
    let field = xi1_closed_form_field(&data, t, FrequencyLattice::new(d, k * spec.required_cutoff())?)?;
    let value = hs_norm(&field, s);
    let regime = if t * big_n as f64 <= 1.0 { Regime::Short } else { Regime::Long };
    let predicted = lower_bound_predictions(&LowerBoundParams { d, k, s, r, a, n: big_n as f64, t, regime })?;
    let bracket = Bracket::default();
    Ok(json!({
        "inputs": inputs,
        "value": value,
        "regime": format!("{regime:?}"),
        "predicted": predicted,
        "bracket": [bracket.lower * predicted, bracket.upper * predicted],
        "pass": bracket.contains_ratio(value / predicted),
    }))
}

fn run(cli: Cli) -> Result<()> {
    let mut cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(m) = cli.margin {
        cfg.margin = m;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    cfg.validate()?;
    match cli.command {
        Command::Thresholds { d, k } => print_json(&thresholds(d, k)?.to_json()),
        Command::Plan { kind, d, k, s, sigma, n, big_n, case, calibrated } => {
            let plan = match kind {
                PlanKind::Sec3 => {
                    if let Some(want) = case {
                        let got = short_time_case(d, k, s)?.number();
                        if got != want {
                            return Err(Error::Regime(format!("(d, k, s) = ({d}, {k}, {s}) falls in case {got}, not {want}")));
                        }
                    }
                    plan_short_time(d, k, s, n, big_n, cfg.margin)?
                }
                PlanKind::Sec4 if calibrated => {
                    let cal = Calibration { distance_safety: cfg.distance_safety, ..Calibration::default() };
                    plan_long_time_calibrated(d, k, s, sigma.unwrap_or(s), n, big_n as u64, &cal)?
                }
                PlanKind::Sec4 => plan_long_time(d, k, s, sigma.unwrap_or(s), n, big_n, cfg.margin)?,
                PlanKind::Ck => plan_ck_failure(d, k, s, big_n as u64)?,
            };
            print_json(&plan.to_json())
        }
        Command::Xi1 { d, k, big_n, a, r, t, s, xi, variant } => print_json(&xi1_command(d, k, big_n, a, r, t, s, xi, variant.into())?),
        Command::Inflate { kind, d, k, s, sigma, n, big_n, a, r, levels, out } => {
            let report = match kind {
                InflateKind::Short => {
                    let sweep = if big_n.is_empty() { vec![256] } else { big_n };
                    let mut run = ShortTimeRun::standard(d, k, s, sweep);
                    run.a = a;
                    if let Some(r) = r {
                        run.r = RRule::Fixed(r);
                    }
                    run_short_time_inflation(&run, &cfg)?
                }
                InflateKind::Long => {
                    if big_n.len() > 1 {
                        return Err(Error::Config("long inflation takes a single N".into()));
                    }
                    let run = LongTimeRun {
                        big_n: big_n.first().copied(),
                        levels,
                        ..LongTimeRun::new(d, k, s, sigma.unwrap_or(s), n)
                    };
                    run_long_time_inflation(&run, &cfg)?
                }
            };
            finish_report(&report, &out)
        }
        Command::CkFailure { d, k, s, big_n, tol, out } => finish_report(&run_ck_failure(d, k, s, &big_n, tol, &cfg)?, &out),
        Command::Wp { d, k, s, scale, t, out } => {
            let run = WellposednessRun { scale, t_end: t, ..WellposednessRun::new(d, k, s) };
            finish_report(&run_wellposedness(&run, &cfg)?, &out)
        }
        Command::Verify { json } => {
            let report = verify(&cfg)?;
            let text = report.to_json()? + "\n";
            match json {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            if !report.pass {
                return Err(Error::Accuracy { message: "invariant suite failed".into(), achieved: 0.0 });
            }
            Ok(())
        }
        Command::Data { command: DataCommand::Describe { d, k, big_n, a, r, s, variant } } => {
            let spec = BoxSpec::new(d, k, big_n, a, variant.into())?;
            let data = build_adversarial(spec, r, FrequencyLattice::new(d, spec.required_cutoff())?)?;
            print_json(&serde_json::to_value(describe(&data, s)?)?)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
