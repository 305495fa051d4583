use codelat_core::input_sets::{sample_dual_uniform, sparse_signed, InputRecipe};
use codelat_core::solver::{run_general, run_simple, SolverConfig};
use codelat_core::projection::Modulus;
use num_bigint::BigUint;

fn main() {
    // criterion 3 row 1: P = 2.19e12, d = 1000
    let p = Modulus::new(BigUint::from(219u32) * BigUint::from(10u64).pow(10)).unwrap();
    for seed in 0..5u64 {
        let v = sample_dual_uniform(1000, &p, seed).unwrap();
        let cfg = SolverConfig::simple(&v, 1000).unwrap();
        let t = std::time::Instant::now();
        let r = run_simple(&v, 1000, &cfg).unwrap();
        println!("d=1000 seed={seed} status={:?} iters={} len={:.5} norm2={} t={:?}",
            r.status, r.iterations, r.length_of_first, r.first_norm_sqr, t.elapsed());
    }
    // criterion 3 row 2: P = 6.19e24, d = 2000
    let p = Modulus::new(BigUint::from(619u32) * BigUint::from(10u64).pow(22)).unwrap();
    for seed in 0..5u64 {
        let v = sample_dual_uniform(2000, &p, seed).unwrap();
        let cfg = SolverConfig::simple(&v, 2000).unwrap();
        let t = std::time::Instant::now();
        let r = run_simple(&v, 2000, &cfg).unwrap();
        println!("d=2000 seed={seed} status={:?} iters={} len={:.5} norm2={} t={:?}",
            r.status, r.iterations, r.length_of_first, r.first_norm_sqr, t.elapsed());
    }
    // criterion 11: d=30, P ~ 1e18, dstar in {256,1024,4096}
    let p = Modulus::new(BigUint::from(1_000_000_000_000_000_009u64)).unwrap();
    for dstar in [256usize, 1024, 4096] {
        let pred = 60.0f64 * (1e18f64).log2() / 60.0 / (dstar as f64).log2();
        for seed in 0..5u64 {
            let v = sample_dual_uniform(30, &p, 100 + seed).unwrap();
            let recipe = InputRecipe::sparse_signed(dstar, 8, 8, 200 + seed);
            let input = sparse_signed(30, &recipe).unwrap();
            let cfg = SolverConfig::general(&v, dstar).unwrap();
            let r = run_general(&v, input, &cfg).unwrap();
            println!("dstar={dstar} seed={seed} status={:?} iters={} pred={:.2} len={:.3}",
                r.status, r.iterations, pred, r.length_of_first);
        }
    }
}
