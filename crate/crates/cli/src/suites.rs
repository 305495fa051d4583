//! Benchmark suites: the published (P, d) grids re-run at desk scale, the
//! prediction grid, and the input-set-size timing suite.

use crate::report::{bench_row, BENCH_HEADER};
use crate::CliError;
use codelat_core::input_sets::{sample_dual_uniform, sparse_signed, InputRecipe};
use codelat_core::iter_model;
use codelat_core::lattice::parse_big_scientific;
use codelat_core::projection::Modulus;
use codelat_core::solver::{run_general, run_simple, SolverConfig};
use num_bigint::BigUint;
use rayon::prelude::*;
use std::time::Instant;

const TABLE1: &[&str] = &[
    "3.13E+102", "2.73E+89", "1.42E+79", "2.15E+69", "1.99E+59", "5.30E+49", "2.04E+49",
    "6.19E+24", "2.19E+12",
];
const TABLE2: &[&str] = &[
    "3.13E+102", "2.728E+89", "9.38E+79", "2.154E+69", "1.987E+59", "5.303E+49", "2.044E+49",
    "8.721E+34", "6.193E+24", "2.187E+12",
];
const TABLE3: &[&str] = &[
    "3.13E+102", "2.728E+89", "9.38E+79", "2.154E+69", "1.987E+59", "5.303E+49", "2.044E+49",
    "8.721E+34", "6.193E+24", "2.187E+12",
];
const TABLE4: &[&str] = &[
    "3.13E+102", "2.73E+89", "9.38E+79", "2.15E+69", "1.99E+59", "5.30E+49", "2.04E+49",
    "8.72E+34", "6.19E+24", "2.187E+12",
];

fn grid(name: &str) -> Result<Vec<(String, u64)>, CliError> {
    let rows = |ps: &[&str], d: u64| ps.iter().map(|p| (p.to_string(), d)).collect::<Vec<_>>();
    match name {
        "table1" => Ok(rows(TABLE1, 1000)),
        "table2" => Ok(rows(TABLE2, 2000)),
        "table3" => Ok(rows(TABLE3, 4000)),
        "table4" => Ok(rows(TABLE4, 8000)),
        "table5" => {
            let mut all = rows(TABLE1, 1000);
            all.extend(rows(TABLE2, 2000));
            all.extend(rows(TABLE3, 4000));
            all.extend(rows(TABLE4, 8000));
            Ok(all)
        }
        other => Err(CliError::usage(format!("unknown suite '{other}'"))),
    }
}

/// P above this is the slow tier (opt-in via --slow).
fn is_slow(p: &BigUint) -> bool {
    p > &BigUint::from(10u8).pow(60)
}

pub fn run_suite(name: &str, seeds: u64, slow: bool) -> Result<String, CliError> {
    if name == "scaling" {
        return run_scaling_suite(seeds);
    }
    let rows = grid(name)?;
    let mut jobs = Vec::new();
    for (p_str, d) in rows {
        let p = parse_big_scientific(&p_str).map_err(CliError::Core)?;
        if is_slow(&p) && !slow {
            continue;
        }
        for seed in 0..seeds {
            jobs.push((p_str.clone(), p.clone(), d, seed));
        }
    }
    let lines: Vec<String> = jobs
        .par_iter()
        .map(|(p_str, p, d, seed)| -> Result<String, CliError> {
            let modulus = Modulus::new(p.clone()).map_err(CliError::Core)?;
            let v = sample_dual_uniform(*d as usize, &modulus, *seed).map_err(CliError::Core)?;
            let cfg = SolverConfig::simple(&v, *d as usize).map_err(CliError::Core)?.with_seed(*seed);
            let t = Instant::now();
            let report = run_simple(&v, *d as usize, &cfg).map_err(CliError::Core)?;
            let wall = t.elapsed().as_secs_f64() * 1e3;
            let predicted = iter_model::predicted_iterations(p, *d).ok();
            Ok(bench_row(
                p_str,
                *d,
                *seed,
                report.iterations,
                report.length_of_first,
                predicted,
                wall,
            ))
        })
        .collect::<Result<_, _>>()?;
    let mut out = String::from(BENCH_HEADER);
    out.push('\n');
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    Ok(out)
}

/// Input-set-size timing: general runs at d = 30 with d* doubling. The `d`
/// column carries d*; wall time should roughly double per row.
fn run_scaling_suite(seeds: u64) -> Result<String, CliError> {
    let d = 30usize;
    let p = Modulus::new(BigUint::from(1_000_000_000_000_000_009u64)).map_err(CliError::Core)?;
    let mut out = String::from(BENCH_HEADER);
    out.push('\n');
    for dstar in [4096usize, 8192, 16384] {
        for seed in 0..seeds {
            let v = sample_dual_uniform(d, &p, 100 + seed).map_err(CliError::Core)?;
            let recipe = InputRecipe::sparse_signed(dstar, 8, 8, 200 + seed);
            let input = sparse_signed(d, &recipe).map_err(CliError::Core)?;
            let cfg = SolverConfig::general(&v, dstar).map_err(CliError::Core)?.with_seed(seed);
            let t = Instant::now();
            let report = run_general(&v, input, &cfg).map_err(CliError::Core)?;
            let wall = t.elapsed().as_secs_f64() * 1e3;
            let predicted =
                iter_model::general_iterations(p.value(), dstar as u64).ok().map(|r| r.to_f64().round() as u64);
            out.push_str(&bench_row(
                &p.value().to_string(),
                dstar as u64,
                seed,
                report.iterations,
                report.length_of_first,
                predicted,
                wall,
            ));
            out.push('\n');
        }
    }
    Ok(out)
}
