//! Report formatting: JSON objects per run and fixed-column CSV rows.
//! Integers print as exact decimals, reals with 6 significant digits.

use codelat_core::solver::{RunReport, RunStatus};
use serde_json::{json, Value};

/// Six significant digits, scientific for extreme magnitudes.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let a = x.abs();
    if !(1e-3..1e6).contains(&a) {
        return format!("{x:.5E}");
    }
    let digits_before = a.log10().floor() as i32 + 1;
    let decimals = (6 - digits_before).clamp(0, 9) as usize;
    format!("{x:.decimals$}")
}

pub fn status_str(s: RunStatus) -> &'static str {
    match s {
        RunStatus::Found => "found",
        RunStatus::ExhaustedList => "exhausted-list",
        RunStatus::IterationCap => "iteration-cap",
    }
}

/// One JSON object describing a solver run.
#[allow(clippy::too_many_arguments)]
pub fn run_json(
    algo: &str,
    modulus: &str,
    dim: usize,
    seed: u64,
    report: &RunReport,
    bounds: (f64, f64),
    wall_ms: f64,
    membership_verified: bool,
) -> Value {
    let output: Vec<String> =
        report.output_vectors.first().map(|v| v.iter().map(|e| e.to_string()).collect()).unwrap_or_default();
    json!({
        "algo": algo,
        "modulus": modulus,
        "dim": dim,
        "seed": seed,
        "status": status_str(report.status),
        "iterations": report.iterations,
        "final_list_size": report.final_list_size,
        "outputs_found": report.output_vectors.len(),
        "output": output,
        "norm_sqr": report.first_norm_sqr.to_string(),
        "length": report.length_of_first,
        "predicted_lower": bounds.0,
        "predicted_upper": bounds.1,
        "lineage_of_first": report.lineage_of_first,
        "membership_verified": membership_verified,
        "generator": report.generator,
        "wall_ms": wall_ms,
    })
}

pub const BENCH_HEADER: &str =
    "P,d,seed,iter,length,sqrt2_pow_iter,two_pow_iter,predicted_iter,wall_ms";

#[allow(clippy::too_many_arguments)]
pub fn bench_row(
    p: &str,
    d: u64,
    seed: u64,
    iter: u32,
    length: f64,
    predicted: Option<u64>,
    wall_ms: f64,
) -> String {
    let sqrt2 = 2f64.powf(iter as f64 / 2.0);
    let two = 2f64.powf(iter as f64);
    format!(
        "{p},{d},{seed},{iter},{length},{sqrt2},{two},{predicted},{wall}",
        length = sig6(length),
        sqrt2 = sig6(sqrt2),
        two = sig6(two),
        predicted = predicted.map(|v| v.to_string()).unwrap_or_default(),
        wall = sig6(wall_ms),
    )
}
