use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use oscfractal::asymptotics::{predict_phase, PredictOptions};
use oscfractal::calibration::{calibrate, CalibrationConfig, CalibrationRow, Quantity};
use oscfractal::fractal::{
    box_count, estimate_content_with, estimate_dimension_with, EpsilonGrid, Polyline, ScalingModel,
};
use oscfractal::integral::{
    curve_from_samples, reflected_graph, sample_curve, sample_integral, Component,
};
use oscfractal::newton::analyze;
use oscfractal::phase::{AmplitudeSpec, PolynomialPhase};
use oscfractal::report::{
    content_grid, default_tau_range, measurement_grid, polyline_svg, samples_csv,
    verify_with_samples, ToleranceProfile, VerifyConfig, CONTENT_SCALES,
};
use oscfractal::{Error, Result};

#[derive(Parser)]
#[command(
    name = "oscfractal",
    version,
    about = "Fractal dimensions of curves defined by oscillatory integrals"
)]
struct Cli {
    /// JSON file with optional "verify" and "calibration" sections.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for output files; results also go to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Dimension tolerance profile: strict (0.03) or desk (0.05).
    #[arg(long, global = true)]
    tolerance: Option<ToleranceProfile>,
    /// Seed for the random grid offsets of box counts.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Newton diagram, distance, remoteness and multiplicity.
    Newton {
        #[arg(long)]
        phase: String,
    },
    /// Predicted dimensions and content.
    Predict {
        #[arg(long)]
        phase: String,
        /// Amplitude value at the origin.
        #[arg(long, default_value_t = 1.0)]
        phi0: f64,
        #[arg(long)]
        assume_adapted: bool,
        /// Coefficient hypothesis for three or more variables: 0 for a nonzero leading
        /// coefficient, k > 0 for a nonzero coefficient of the k-th log power.
        #[arg(long)]
        coeff_hypothesis: Option<usize>,
    },
    /// Samples of I(τ) as a tau,re,im table.
    Integrate {
        #[command(flatten)]
        input: IntegralInput,
        /// Geometric grid of this many points instead of phase-step refinement.
        #[arg(long)]
        count: Option<usize>,
    },
    /// The curve and reflected graphs as CSV, plus the curve as SVG.
    Curve {
        #[command(flatten)]
        input: IntegralInput,
    },
    /// Box dimension of a polyline CSV.
    Dim {
        #[command(flatten)]
        set: SetInput,
    },
    /// Minkowski content of a polyline CSV at a given dimension.
    Content {
        #[command(flatten)]
        set: SetInput,
        #[arg(long)]
        d: f64,
    },
    /// Estimator check on synthetic chirps, spirals and a-strings.
    Calibrate,
    /// Prediction against measurement; exit code 0 iff the phase passes.
    Verify {
        #[command(flatten)]
        input: IntegralInput,
        /// Skip the Minkowski content measurement.
        #[arg(long)]
        no_content: bool,
        #[arg(long)]
        assume_adapted: bool,
        #[arg(long)]
        coeff_hypothesis: Option<usize>,
    },
}

#[derive(Args)]
struct IntegralInput {
    /// Phase as inline JSON or a path to a JSON file.
    #[arg(long)]
    phase: String,
    /// Amplitude as inline JSON or a path; defaults to the unit radial bump.
    #[arg(long)]
    amplitude: Option<String>,
    #[arg(long)]
    tau_min: Option<f64>,
    #[arg(long)]
    tau_max: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Plain,
    TailCorrected,
}

impl From<Model> for ScalingModel {
    fn from(m: Model) -> Self {
        match m {
            Model::Plain => ScalingModel::Plain,
            Model::TailCorrected => ScalingModel::TailCorrected,
        }
    }
}

#[derive(Args)]
struct SetInput {
    /// CSV of x,y rows.
    #[arg(long)]
    input: PathBuf,
    /// Treat the rows as a point set rather than a polyline.
    #[arg(long)]
    points: bool,
    #[arg(long, value_enum, default_value_t = Model::Plain)]
    model: Model,
    #[arg(long)]
    eps_max: Option<f64>,
    #[arg(long)]
    eps_min: Option<f64>,
    #[arg(long)]
    scales: Option<usize>,
}

#[derive(Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct FileConfig {
    verify: VerifyConfig,
    calibration: CalibrationConfig,
}

/// Exit code for a completed run whose checks failed.
const EXIT_FAIL: u8 = 1;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

/// Inline JSON or the contents of a file.
fn json_arg(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        Ok(fs::read_to_string(arg)?)
    }
}

fn load_phase(arg: &str) -> Result<PolynomialPhase> {
    PolynomialPhase::from_json(&json_arg(arg)?)
}

fn load_amplitude(arg: Option<&str>, dim: usize) -> Result<AmplitudeSpec> {
    match arg {
        Some(a) => AmplitudeSpec::from_json(&json_arg(a)?, dim),
        None => Ok(AmplitudeSpec::unit(dim)),
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

struct Output<'a> {
    dir: Option<&'a Path>,
}

impl Output<'_> {
    /// Prints `text` and, with an output directory, also writes it there.
    fn emit(&self, name: &str, text: &str) -> Result<()> {
        print!("{text}");
        self.file(name, text)
    }

    fn file(&self, name: &str, text: &str) -> Result<()> {
        if let Some(dir) = self.dir {
            fs::create_dir_all(dir)?;
            fs::write(dir.join(name), text)?;
        }
        Ok(())
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let mut file_cfg = match &cli.config {
        Some(p) => serde_json::from_str::<FileConfig>(&fs::read_to_string(p)?)?,
        None => FileConfig::default(),
    };
    if let Some(t) = cli.tolerance {
        file_cfg.verify.tolerance = t;
    }
    if let Some(s) = cli.seed {
        file_cfg.verify.seed = s;
        file_cfg.calibration.seed = s;
    }
    let out = Output {
        dir: cli.out.as_deref(),
    };
    let vcfg = &file_cfg.verify;

    match &cli.cmd {
        Cmd::Newton { phase } => {
            let info = analyze(&load_phase(phase)?)?;
            out.emit("newton.json", &to_json(&info)?)?;
        }
        Cmd::Predict {
            phase,
            phi0,
            assume_adapted,
            coeff_hypothesis,
        } => {
            let opts = PredictOptions {
                assume_adapted: *assume_adapted,
                coeff_hypothesis: *coeff_hypothesis,
                leading_coeff: None,
            };
            let p = predict_phase(&load_phase(phase)?, *phi0, &opts)?;
            out.emit("prediction.json", &to_json(&p)?)?;
        }
        Cmd::Integrate { input, count } => {
            let (phase, amp, lo, hi) = integral_input(input, vcfg)?;
            let samples = match count {
                Some(c) => sample_integral(&phase, &amp, lo, hi, *c, &vcfg.quadrature)?,
                None => sample_curve(
                    &phase,
                    &amp,
                    lo,
                    hi,
                    vcfg.phase_step,
                    &vcfg.quadrature,
                    vcfg.max_points,
                )?,
            };
            out.emit("samples.csv", &samples_csv(&samples))?;
        }
        Cmd::Curve { input } => {
            let (phase, amp, lo, hi) = integral_input(input, vcfg)?;
            let samples = sample_curve(
                &phase,
                &amp,
                lo,
                hi,
                vcfg.phase_step,
                &vcfg.quadrature,
                vcfg.max_points,
            )?;
            let curve = curve_from_samples(&samples)?.to_polyline();
            out.emit("curve.csv", &curve.to_csv())?;
            out.file("samples.csv", &samples_csv(&samples))?;
            out.file("curve.svg", &polyline_svg(&curve, 800.0))?;
            out.file(
                "reflected_re.csv",
                &reflected_graph(&samples, Component::Re)?
                    .to_polyline()
                    .to_csv(),
            )?;
            out.file(
                "reflected_im.csv",
                &reflected_graph(&samples, Component::Im)?
                    .to_polyline()
                    .to_csv(),
            )?;
        }
        Cmd::Dim { set } => {
            let poly = load_set(set)?;
            let grid = set_grid(set, &poly, false)?;
            let counts = box_count(&poly, &grid, vcfg.offsets, vcfg.seed)?;
            let est = estimate_dimension_with(&counts, set.model.into())?;
            out.emit("dimension.json", &to_json(&est)?)?;
        }
        Cmd::Content { set, d } => {
            let poly = load_set(set)?;
            let grid = set_grid(set, &poly, true)?;
            let est = estimate_content_with(&poly, *d, &grid, set.model.into())?;
            out.emit("content.json", &to_json(&est)?)?;
        }
        Cmd::Calibrate => {
            let rows = calibrate(&file_cfg.calibration)?;
            print!("{}", calibration_table(&rows));
            out.file("calibration.json", &to_json(&rows)?)?;
            if rows.iter().any(|r| !r.pass) {
                return Ok(EXIT_FAIL);
            }
        }
        Cmd::Verify {
            input,
            no_content,
            assume_adapted,
            coeff_hypothesis,
        } => {
            let phase = load_phase(&input.phase)?;
            let amp = load_amplitude(input.amplitude.as_deref(), phase.dim())?;
            let mut cfg = vcfg.clone();
            cfg.tau_min = input.tau_min.or(cfg.tau_min);
            cfg.tau_max = input.tau_max.or(cfg.tau_max);
            cfg.measure_content &= !no_content;
            cfg.assume_adapted |= assume_adapted;
            cfg.coeff_hypothesis = coeff_hypothesis.or(cfg.coeff_hypothesis);
            let (report, samples) = match verify_with_samples(&phase, &amp, &cfg) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(e.exit_code() as u8);
                }
            };
            out.emit("report.json", &to_json(&report)?)?;
            if out.dir.is_some() {
                out.file("samples.csv", &samples_csv(&samples))?;
                out.file(
                    "curve.svg",
                    &polyline_svg(&curve_from_samples(&samples)?.to_polyline(), 800.0),
                )?;
            }
            if !report.pass {
                return Ok(EXIT_FAIL);
            }
        }
    }
    Ok(0)
}

fn integral_input(
    input: &IntegralInput,
    cfg: &VerifyConfig,
) -> Result<(PolynomialPhase, AmplitudeSpec, f64, f64)> {
    let phase = load_phase(&input.phase)?;
    let amp = load_amplitude(input.amplitude.as_deref(), phase.dim())?;
    let (dlo, dhi) = default_tau_range(phase.dim());
    let lo = input.tau_min.or(cfg.tau_min).unwrap_or(dlo);
    let hi = input.tau_max.or(cfg.tau_max).unwrap_or(dhi);
    Ok((phase, amp, lo, hi))
}

fn load_set(set: &SetInput) -> Result<Polyline> {
    let poly = Polyline::from_csv(&fs::read_to_string(&set.input)?, !set.points)?;
    poly.validate()?;
    Ok(poly)
}

/// Explicit bounds when given, otherwise the window relative to the extent.
fn set_grid(set: &SetInput, poly: &Polyline, content: bool) -> Result<EpsilonGrid> {
    let default_scales = if content {
        CONTENT_SCALES
    } else {
        oscfractal::report::DEFAULT_SCALES
    };
    let scales = set.scales.unwrap_or(default_scales);
    match (set.eps_max, set.eps_min) {
        (Some(hi), Some(lo)) => EpsilonGrid::geometric(hi, lo, scales),
        (None, None) if content => content_grid(poly, None, scales),
        (None, None) => measurement_grid(poly, None, scales),
        _ => Err(Error::InvalidInput(
            "give both --eps-max and --eps-min or neither".into(),
        )),
    }
}

fn calibration_table(rows: &[CalibrationRow]) -> String {
    let mut s = format!(
        "{:<28} {:<10} {:>12} {:>12} {:>10}  result\n",
        "case", "quantity", "expected", "measured", "tolerance"
    );
    for r in rows {
        let (q, expected, measured) = match r.quantity {
            Quantity::Dimension => (
                "dimension",
                format!("{:.4}", r.expected),
                format!("{:.4}", r.measured),
            ),
            Quantity::Content => (
                "content",
                format!("{:.4}", r.expected),
                format!("{:.4}", r.measured),
            ),
            Quantity::Verdict => (
                "verdict",
                r.expected_verdict
                    .map(verdict_str)
                    .unwrap_or("-")
                    .to_string(),
                r.verdict.map(verdict_str).unwrap_or("-").to_string(),
            ),
        };
        let tol = match r.quantity {
            Quantity::Dimension => format!("±{}", r.tolerance),
            Quantity::Content => format!("{}%", r.tolerance * 100.0),
            Quantity::Verdict => "-".into(),
        };
        s.push_str(&format!(
            "{:<28} {q:<10} {expected:>12} {measured:>12} {tol:>10}  {}\n",
            r.case,
            if r.pass { "pass" } else { "FAIL" }
        ));
    }
    s
}

fn verdict_str(v: oscfractal::fractal::ContentVerdict) -> &'static str {
    use oscfractal::fractal::ContentVerdict::*;
    match v {
        Nondegenerate => "nondegen",
        DegenerateInfinity => "degen-inf",
        DegenerateZero => "degen-zero",
        Inconclusive => "inconclusive",
    }
}
