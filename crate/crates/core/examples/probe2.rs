use codelat_core::codim::{run_codim2, harvest_codim1, DualCode, QSchedule};
use codelat_core::input_sets::sample_dual_uniform;
use codelat_core::solver::{run_simple, SolverConfig};
use codelat_core::projection::{IntVec, Modulus};
use num_bigint::BigUint;

fn main() {
    // criterion 7: codim2 at d=200, P ~ 1e8 (prime 100000007)
    let p = Modulus::from_u64(100_000_007).unwrap();
    for seed in 0..5u64 {
        let t = std::time::Instant::now();
        let v1 = sample_dual_uniform(200, &p, 10 + seed).unwrap();
        let v2 = sample_dual_uniform(200, &p, 50 + seed).unwrap();
        let cfg = SolverConfig::q_multiplied(&v1, 200, BigUint::from(1u8)).unwrap();
        let pool = harvest_codim1(&v1, 200, &QSchedule::Sequential, &cfg).unwrap();
        let mut l1: Vec<f64> = pool.iter().map(|w| {
            let n: f64 = w.to_bigints().iter().map(|e| {
                let x: f64 = e.to_string().parse().unwrap(); x * x
            }).sum(); n.sqrt()
        }).collect();
        l1.sort_by(f64::total_cmp);
        let med_l1 = l1[l1.len()/2];
        let code = DualCode::new(vec![v1, v2]).unwrap();
        let r = run_codim2(&code, &cfg, &QSchedule::Sequential).unwrap();
        println!("codim2 seed={seed} status={:?} med_l1={med_l1:.3} l1^2={:.1} l2={:.3} iters={} t={:?}",
            r.status, med_l1*med_l1, r.length_of_first, r.iterations, t.elapsed());
    }
    // criterion 4 band grid probe
    let grid: Vec<(usize, u64, u32)> = vec![
        (500, 0, 9), (800, 0, 11), (1000, 0, 12), (1200, 0, 13), (1500, 0, 14), (2000, 0, 15),
    ];
    let mut inband = 0; let mut total = 0;
    for (d, _, e) in grid {
        let p = Modulus::new(BigUint::from(10u8).pow(e)).unwrap();
        for seed in 0..2u64 {
            let v = sample_dual_uniform(d, &p, 70 + seed).unwrap();
            let cfg = SolverConfig::simple(&v, d).unwrap();
            let r = run_simple(&v, d, &cfg).unwrap();
            let norm2 = r.first_norm_sqr.clone();
            let lo = BigUint::from(2u8).pow(r.iterations);
            let hi = BigUint::from(4u8).pow(r.iterations);
            let ok = norm2 >= lo && norm2 <= hi;
            total += 1; if ok { inband += 1; }
            println!("band d={d} P=1e{e} seed={seed} iters={} norm2={} lo={} ok={}",
                r.iterations, norm2, lo, ok);
        }
    }
    println!("in band: {inband}/{total}");
    let _ = IntVec::zeros(1);
}
