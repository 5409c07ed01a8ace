//! Command-line front end.

mod examples;
pub mod format;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::Error;
use crate::hausdorff::{estimate, HausdorffEstimate, DEFAULT_DIVERGENCE_THRESHOLD};
use crate::numerics::{sample_unit_sphere, SampleConfig, Tolerance, Vector};
use crate::sets::{ConvexSet, SetDescription, SupportValue};
use crate::{classify, radius_for_epsilon, ClassificationReport, RadiusSearchResult, Verdict};

use format::{g17, to_json, tuple};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DIMENSION: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "convex-trunc",
    version,
    about = "Support functions, truncations and Hausdorff distances of unbounded convex sets",
    after_help = "Sets are JSON files, e.g. {\"type\":\"hyperbola-epigraph\"} or \
                  {\"type\":\"truncation\",\"base\":{\"type\":\"parabola-epigraph\",\"scale\":1.0},\"radius\":5}.\n\
                  Exit codes: 0 ok, 1 other failure, 2 parse error, 3 dimension mismatch, 4 I/O error."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Geometric tolerance (membership, distances).
    #[arg(long, global = true, default_value_t = Tolerance::default().eps_geometry)]
    pub tol_geom: f64,
    /// Classification tolerance (continuity jumps, convergence).
    #[arg(long, global = true, default_value_t = Tolerance::default().eps_classify)]
    pub tol_classify: f64,
    /// Number of sampled directions.
    #[arg(long, global = true, default_value_t = SampleConfig::default().count)]
    pub samples: usize,
    /// Sampling seed.
    #[arg(long, global = true, default_value_t = SampleConfig::default().seed)]
    pub seed: u64,
    /// Refinement rounds around the best directions.
    #[arg(long, global = true, default_value_t = SampleConfig::default().refinement_rounds)]
    pub refine: usize,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// hausdorff: write `d1,..,dn,sigma1,sigma2,abs_diff` per sampled direction.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the support function in one direction.
    Support {
        set: PathBuf,
        /// Direction as comma-separated decimals, e.g. "-1,-1".
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
    },
    /// M-decomposable / approximately M-decomposable / hyperbolic verdicts.
    Classify { set: PathBuf },
    /// Hausdorff distance estimate via support functions.
    Hausdorff {
        set1: PathBuf,
        set2: PathBuf,
        /// Gap beyond which the estimate reports divergence.
        #[arg(long, default_value_t = DEFAULT_DIVERGENCE_THRESHOLD)]
        threshold: f64,
    },
    /// Smallest truncation radius found with estimated distance at most EPS.
    Radius {
        set: PathBuf,
        #[arg(long)]
        eps: f64,
    },
    /// Reproduce the reference examples and write their CSV tables.
    ///
    /// Files: hyperbola_truncation_convergence.csv (eps,r,estimate),
    /// parabola_divergence.csv (k,gap), cone_lift_certificate.csv
    /// (n,sigma_dn,sigma_limit), pk_pointwise.csv (r,point_0,..) and
    /// examples_report.json.
    Examples {
        #[arg(long, default_value = "examples_out")]
        out: PathBuf,
    },
}

/// Settings echoed into every report.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub tolerance: Tolerance,
    pub sampling: SampleConfig,
    pub divergence_threshold: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<SetDescription>,
    pub results: serde_json::Value,
    pub config: RunConfig,
    pub version: String,
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn io(path: &Path, e: std::io::Error) -> Self {
        CliError {
            code: EXIT_IO,
            message: format!("{}: {e}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::NonFinite { .. } | Error::EmptyVector => EXIT_PARSE,
            Error::DimensionMismatch { .. } => EXIT_DIMENSION,
            _ => EXIT_OTHER,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

impl GlobalOpts {
    fn config(&self, threshold: f64) -> CliResult<RunConfig> {
        let tolerance = Tolerance {
            eps_geometry: self.tol_geom,
            eps_classify: self.tol_classify,
            eps_feasibility: Tolerance::default().eps_feasibility.min(self.tol_geom),
            ..Tolerance::default()
        };
        tolerance.validate()?;
        let sampling = SampleConfig {
            seed: self.seed,
            count: self.samples,
            refinement_rounds: self.refine,
        };
        sampling.validate()?;
        Ok(RunConfig {
            tolerance,
            sampling,
            divergence_threshold: threshold,
        })
    }
}

fn load(path: &Path, tol: &Tolerance) -> CliResult<(SetDescription, ConvexSet)> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let desc = SetDescription::from_json(&text)?;
    let set = desc.build(tol)?;
    Ok((desc, set))
}

/// Parses `"a,b,c"` into a vector.
pub fn parse_direction(text: &str) -> Result<Vector, Error> {
    let coords = text
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad direction component {p:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Vector::new(coords)
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::Unknown => "unknown",
    }
}

/// Runs a parsed command, returning the report and its text rendering.
pub fn execute(cli: &Cli) -> CliResult<(Report, String)> {
    let threshold = match &cli.command {
        Command::Hausdorff { threshold, .. } => *threshold,
        _ => DEFAULT_DIVERGENCE_THRESHOLD,
    };
    let config = cli.global.config(threshold)?;
    let tol = config.tolerance;
    let cfg = config.sampling;
    let report = |command: &str, inputs: Vec<SetDescription>, results: serde_json::Value| Report {
        command: command.into(),
        inputs,
        results,
        config,
        version: env!("CARGO_PKG_VERSION").into(),
    };
    match &cli.command {
        Command::Support { set, dir } => {
            let (desc, s) = load(set, &tol)?;
            let d = parse_direction(dir)?;
            let value = s.support(&d, &tol)?;
            let text = match value {
                SupportValue::Finite(v) => format!("support {}: {}", tuple(&d), g17(v)),
                SupportValue::PlusInfinity => format!("support {}: +inf (direction outside dom σ)", tuple(&d)),
            };
            let shown = match value {
                SupportValue::Finite(v) => json!(v),
                SupportValue::PlusInfinity => json!("+inf"),
            };
            let results = json!({"direction": d, "value": shown, "in_domain": value.is_finite()});
            Ok((report("support", vec![desc], results), text))
        }
        Command::Classify { set } => {
            let (desc, s) = load(set, &tol)?;
            let rep = classify(&s, &tol, &cfg)?;
            let text = classify_text(&rep);
            let results = serde_json::to_value(&rep).expect("report serializes");
            Ok((report("classify", vec![desc], results), text))
        }
        Command::Hausdorff { set1, set2, threshold } => {
            let (d1, s1) = load(set1, &tol)?;
            let (d2, s2) = load(set2, &tol)?;
            let est = estimate(&s1, &s2, &tol, &cfg, *threshold, None)?;
            if let Some(path) = &cli.global.csv {
                write_gap_csv(path, &s1, &s2, &tol, &cfg)?;
            }
            let text = hausdorff_text(&est);
            let results = serde_json::to_value(&est).expect("estimate serializes");
            Ok((report("hausdorff", vec![d1, d2], results), text))
        }
        Command::Radius { set, eps } => {
            let (desc, s) = load(set, &tol)?;
            let res = radius_for_epsilon(&s, *eps, &tol, &cfg)?;
            let text = match &res {
                RadiusSearchResult::Found {
                    radius,
                    certified_estimate,
                    ..
                } => format!(
                    "found radius {} (estimated distance {})",
                    g17(*radius),
                    g17(*certified_estimate)
                ),
                RadiusSearchResult::Diverged { reason } => match reason {
                    crate::decomposition::DivergenceReason::DomainMismatch => "diverged: domain mismatch".to_string(),
                    crate::decomposition::DivergenceReason::EstimateExceeds { threshold } => {
                        format!("diverged: estimate exceeds {} at every radius tried", g17(*threshold))
                    }
                },
            };
            let results = serde_json::to_value(&res).expect("result serializes");
            Ok((report("radius", vec![desc], results), text))
        }
        Command::Examples { out } => {
            let (results, text) = examples::run(out, &tol, &cfg)?;
            let rep = report("examples", Vec::new(), results);
            let path = out.join("examples_report.json");
            fs::write(&path, to_json(&rep) + "\n").map_err(|e| CliError::io(&path, e))?;
            Ok((rep, text))
        }
    }
}

fn classify_text(rep: &ClassificationReport) -> String {
    use crate::decomposition::{ApproxBasis, Witness};
    let probed = rep
        .witnesses
        .iter()
        .any(|w| matches!(w, Witness::ContinuityProbed { .. } | Witness::Discontinuity { .. }));
    let basis = match rep.approx_basis {
        ApproxBasis::ImpliedByMotzkin => "implied by M-decomposability",
        ApproxBasis::PolyhedralShortcut => "shortcut: polyhedral",
        ApproxBasis::Probed => "probed",
        ApproxBasis::NotHyperbolic => "domain not closed",
        ApproxBasis::Undetermined => "undetermined",
    };
    let basis = if probed && rep.approx_basis != ApproxBasis::Probed {
        format!("{basis}; probed")
    } else {
        basis.to_string()
    };
    let mut lines = vec![
        format!("m-decomposable: {}", verdict_text(rep.m_decomposable)),
        format!("approx-M: {} ({basis})", verdict_text(rep.approx_m_decomposable)),
        format!("hyperbolic: {}", verdict_text(rep.hyperbolic)),
        format!("continuous: {}", verdict_text(rep.continuous_set)),
    ];
    for w in &rep.witnesses {
        match w {
            Witness::PolyhedralRecessionCone => lines.push("witness: polyhedral recession cone".into()),
            Witness::ImpliedByMotzkinDecomposition => lines.push("witness: Motzkin decomposition".into()),
            Witness::CompactTranslate { translate } => {
                lines.push(format!("witness: set ⊆ {} + recession cone", tuple(translate)))
            }
            Witness::NonClosedDomain { direction } => lines.push(format!(
                "witness: {} is in the closure of dom σ but not in dom σ",
                tuple(direction)
            )),
            Witness::Discontinuity {
                limit,
                sequence,
                values,
                limit_of_values,
                value_at_limit,
            } => {
                lines.push(format!(
                    "witness: σ(d_n) → {} while σ({}) = {}",
                    g17(*limit_of_values),
                    tuple(limit),
                    g17(*value_at_limit)
                ));
                let len = sequence.len();
                for (n, (d, v)) in sequence.iter().zip(values).enumerate() {
                    if n < 3 || n + 1 == len {
                        lines.push(format!("  n={} d_n={} σ(d_n)={}", n + 1, tuple(d), g17(*v)));
                    } else if n == 3 {
                        lines.push("  ...".into());
                    }
                }
            }
            Witness::ContinuityProbed {
                limit,
                limit_of_values,
                value_at_limit,
            } => lines.push(format!(
                "probe: σ continuous at {} (limit {}, value {})",
                tuple(limit),
                g17(*limit_of_values),
                g17(*value_at_limit)
            )),
            Witness::EmptyTruncation { radius, distance } => lines.push(format!(
                "witness: truncation radius {} is below the distance {} to the origin",
                g17(*radius),
                g17(*distance)
            )),
        }
    }
    lines.join("\n")
}

fn hausdorff_text(est: &HausdorffEstimate) -> String {
    match est {
        HausdorffEstimate::Finite {
            lower_bound,
            argmax_direction,
            samples_used,
            converged,
            ..
        } => format!(
            "finite: {} (direction {}, {} directions, {})",
            g17(*lower_bound),
            tuple(argmax_direction),
            samples_used,
            if *converged { "converged" } else { "not converged" }
        ),
        HausdorffEstimate::InfiniteDomainMismatch { witness_direction, .. } => {
            format!("infinite: domain mismatch at d ≈ {}", tuple(witness_direction))
        }
        HausdorffEstimate::DivergentEvidence {
            threshold_exceeded,
            observed,
            direction,
            ..
        } => format!(
            "divergent: support gap {} exceeds threshold {} at {}",
            g17(*observed),
            g17(*threshold_exceeded),
            tuple(direction)
        ),
    }
}

fn sigma_text(v: SupportValue) -> String {
    match v {
        SupportValue::Finite(x) => g17(x),
        SupportValue::PlusInfinity => "+inf".into(),
    }
}

fn write_gap_csv(path: &Path, s1: &ConvexSet, s2: &ConvexSet, tol: &Tolerance, cfg: &SampleConfig) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    })?;
    let dim = s1.dim();
    let mut header: Vec<String> = (1..=dim).map(|i| format!("d{i}")).collect();
    header.extend(["sigma1", "sigma2", "abs_diff"].map(String::from));
    let io = |e: csv::Error| CliError {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    };
    w.write_record(&header).map_err(io)?;
    for d in sample_unit_sphere(dim, cfg)? {
        let (a, b) = (s1.support(&d, tol)?, s2.support(&d, tol)?);
        let diff = match (a, b) {
            (SupportValue::Finite(x), SupportValue::Finite(y)) => g17((x - y).abs()),
            (SupportValue::PlusInfinity, SupportValue::PlusInfinity) => "nan".into(),
            _ => "inf".into(),
        };
        let mut row: Vec<String> = d.iter().map(|x| g17(*x)).collect();
        row.extend([sigma_text(a), sigma_text(b), diff]);
        w.write_record(&row).map_err(io)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Entry point shared by the binary: parses `args`, prints the report and
/// returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok((report, text)) => {
            let body = match cli.global.format {
                OutputFormat::Json => to_json(&report),
                OutputFormat::Text => text,
            };
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if report.command == "examples" && report.results["all_passed"] == json!(false) {
                return EXIT_OTHER;
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
