use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use crate::decomposition::{ApproxBasis, Witness};
use crate::hausdorff::{hausdorff_support_estimate, HausdorffEstimate};
use crate::numerics::{SampleConfig, Tolerance, Vector};
use crate::sets::ConvexSet;
use crate::{classify, pk_pointwise_check, Verdict};

use super::format::g17;
use super::{CliError, CliResult, EXIT_IO};

const K_MAX: usize = 64;
const N_MAX: usize = 64;

struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn writer(path: &Path) -> CliResult<csv::Writer<fs::File>> {
    csv::Writer::from_path(path).map_err(|e| csv_err(path, e))
}

fn csv_err(path: &Path, e: csv::Error) -> CliError {
    CliError {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    }
}

fn finish(path: &Path, mut w: csv::Writer<fs::File>) -> CliResult<()> {
    w.flush().map_err(|e| CliError::io(path, e))
}

fn v(x: &[f64]) -> Vector {
    Vector::from_slice(x).expect("finite literal")
}

fn hyperbola_convergence(out: &Path, tol: &Tolerance, cfg: &SampleConfig) -> CliResult<(Value, Check)> {
    let path = out.join("hyperbola_truncation_convergence.csv");
    let mut w = writer(&path)?;
    w.write_record(["eps", "r", "estimate"])
        .map_err(|e| csv_err(&path, e))?;
    let c = ConvexSet::HyperbolaEpigraph;
    let mut rows = Vec::new();
    let mut passed = true;
    for eps in [0.5_f64, 0.2, 0.1] {
        let r = (eps * eps + 1.0 / (eps * eps)).sqrt();
        let t = c.truncated(r, tol)?;
        let est = hausdorff_support_estimate(&t, &c, tol, cfg)?;
        let value = match &est {
            HausdorffEstimate::Finite { lower_bound, .. } => *lower_bound,
            _ => f64::INFINITY,
        };
        passed &= value <= eps + 1e-3;
        w.write_record([g17(eps), g17(r), g17(value)])
            .map_err(|e| csv_err(&path, e))?;
        rows.push(json!({"eps": eps, "r": r, "estimate": est}));
    }
    finish(&path, w)?;
    let check = Check {
        name: "hyperbola truncations within eps at r = sqrt(eps^2 + eps^-2)",
        passed,
        detail: format!("{} radii", rows.len()),
    };
    Ok((Value::Array(rows), check))
}

fn parabola_divergence(out: &Path, tol: &Tolerance) -> CliResult<(Value, Check)> {
    let path = out.join("parabola_divergence.csv");
    let mut w = writer(&path)?;
    w.write_record(["k", "gap"]).map_err(|e| csv_err(&path, e))?;
    let (p1, p2) = (ConvexSet::parabola(1.0)?, ConvexSet::parabola(2.0)?);
    let mut gaps = Vec::with_capacity(K_MAX);
    for k in 1..=K_MAX {
        let kf = k as f64;
        let d = v(&[1.0, -1.0 / kf]).normalized().expect("nonzero");
        let gap = (p2.support(&d, tol)?.to_f64() - p1.support(&d, tol)?.to_f64()).abs();
        w.write_record([k.to_string(), g17(gap)])
            .map_err(|e| csv_err(&path, e))?;
        gaps.push(gap);
    }
    finish(&path, w)?;
    let increasing = gaps.windows(2).all(|p| p[1] > p[0]);
    let last = *gaps.last().expect("nonempty");
    let check = Check {
        name: "parabola support gap strictly increasing in k",
        passed: increasing && last > 10.0,
        detail: format!("gap at k = {K_MAX}: {}", g17(last)),
    };
    Ok((json!({"gaps": gaps}), check))
}

fn cone_lift_certificate(out: &Path, tol: &Tolerance, cfg: &SampleConfig) -> CliResult<(Value, Check)> {
    let path = out.join("cone_lift_certificate.csv");
    let mut w = writer(&path)?;
    w.write_record(["n", "sigma_dn", "sigma_limit"])
        .map_err(|e| csv_err(&path, e))?;
    let c = ConvexSet::ConeLift3D;
    let limit = c.support(&v(&[0.0, 0.0, -1.0]), tol)?.to_f64();
    let mut values = Vec::with_capacity(N_MAX);
    for n in 1..=N_MAX {
        let nf = n as f64;
        let d = v(&[1.0 / nf, -1.0 / (4.0 * nf * nf), -1.0]);
        let s = c.support(&d, tol)?.to_f64();
        w.write_record([n.to_string(), g17(s), g17(limit)])
            .map_err(|e| csv_err(&path, e))?;
        values.push(s);
    }
    finish(&path, w)?;
    let report = classify(&c, tol, cfg)?;
    let witnessed = report
        .witnesses
        .iter()
        .any(|w| matches!(w, Witness::Discontinuity { .. }));
    let passed = values.iter().all(|&s| s >= 0.75 && (s - 1.0).abs() <= 1e-9)
        && limit.abs() <= 1e-9
        && report.hyperbolic == Verdict::Yes
        && report.approx_m_decomposable == Verdict::No
        && report.approx_basis == ApproxBasis::Probed
        && witnessed;
    let check = Check {
        name: "cone lift: sigma(d_n) = 1, sigma(limit) = 0, hyperbolic but not approx-M",
        passed,
        detail: format!("sigma(limit) = {}", g17(limit)),
    };
    Ok((
        json!({"sigma_dn": values, "sigma_limit": limit, "classification": report}),
        check,
    ))
}

fn pk_pointwise(out: &Path, tol: &Tolerance) -> CliResult<(Value, Check)> {
    let path = out.join("pk_pointwise.csv");
    let c = ConvexSet::parabola(1.0)?;
    let points = [
        v(&[0.0, 0.5]),
        v(&[1.0, 1.0]),
        v(&[-3.0, 9.5]),
        v(&[6.0, 40.0]),
        v(&[-7.5, 60.0]),
        v(&[0.0, -1.0]),
        v(&[3.0, 2.0]),
    ];
    let radii: Vec<f64> = (1..=N_MAX).map(|r| r as f64).collect();
    let reports = pk_pointwise_check(&c, &points, &radii, tol)?;
    let mut w = writer(&path)?;
    let mut header = vec!["r".to_string()];
    header.extend((0..points.len()).map(|i| format!("point_{i}")));
    w.write_record(&header).map_err(|e| csv_err(&path, e))?;
    for (i, r) in radii.iter().enumerate() {
        let mut row = vec![g17(*r)];
        row.extend(reports.iter().map(|p| g17(p.distances[i])));
        w.write_record(&row).map_err(|e| csv_err(&path, e))?;
    }
    finish(&path, w)?;
    let passed = reports.iter().all(|p| p.monotone && p.consistent);
    let check = Check {
        name: "parabola truncations converge pointwise",
        passed,
        detail: format!("{} points, radii 1..{N_MAX}", points.len()),
    };
    Ok((serde_json::to_value(&reports).expect("reports serialize"), check))
}

/// Runs every example, writing CSV files into `out`.
pub(super) fn run(out: &Path, tol: &Tolerance, cfg: &SampleConfig) -> CliResult<(Value, String)> {
    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let (hyp, c1) = hyperbola_convergence(out, tol, cfg)?;
    let (par, c2) = parabola_divergence(out, tol)?;
    let (cone, c3) = cone_lift_certificate(out, tol, cfg)?;
    let (pk, c4) = pk_pointwise(out, tol)?;
    let checks = [c1, c2, c3, c4];
    let all_passed = checks.iter().all(|c| c.passed);
    let text = checks
        .iter()
        .map(|c| format!("{} {} ({})", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
        .chain(std::iter::once(format!(
            "{}/{} checks passed",
            checks.iter().filter(|c| c.passed).count(),
            checks.len()
        )))
        .collect::<Vec<_>>()
        .join("\n");
    let summary: Vec<Value> = checks
        .iter()
        .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
        .collect();
    let results = json!({
        "hyperbola_truncation_convergence": hyp,
        "parabola_divergence": par,
        "cone_lift_certificate": cone,
        "pk_pointwise": pk,
        "checks": summary,
        "all_passed": all_passed,
    });
    Ok((results, text))
}
