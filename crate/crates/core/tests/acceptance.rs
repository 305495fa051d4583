//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line. Run with `cargo test -p codelat-core --test acceptance`
//! (add `-- --nocapture` to see the lines for passing criteria too).

use codelat_core::codim::{harvest_codim1, run_codim2, run_codimk_with_guard, DualCode, QSchedule};
use codelat_core::input_sets::{sample_dual_uniform, sparse_signed, InputRecipe};
use codelat_core::iter_model;
use codelat_core::kblock::{reduce3, reduce3_fast, reduce_k};
use codelat_core::lattice::{
    self, extract_dual_codeword, gaussian_heuristic, integer_rank, verify_membership,
    LatticeBasis,
};
use codelat_core::primality::next_prime_at_least;
use codelat_core::projection::{reduce_pair, IntVec, Modulus, ProjKind, TrackedVector};
use codelat_core::solver::{
    run_block, run_general, run_q_multiplied, run_simple, RunStatus, SolverConfig, WorkingList,
};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use std::time::Instant;

/// Published prediction grid: (P in scientific notation, d, predicted
/// iteration count).
const FIT_GRID: &[(&str, u64, u64)] = &[
    ("3.13E+102", 1000, 94),
    ("2.73E+89", 1000, 77),
    ("1.42E+79", 1000, 65),
    ("2.15E+69", 1000, 54),
    ("1.99E+59", 1000, 44),
    ("5.30E+49", 1000, 35),
    ("2.04E+49", 1000, 35),
    ("6.19E+24", 1000, 17),
    ("2.19E+12", 1000, 9),
    ("3.13E+102", 2000, 78),
    ("2.728E+89", 2000, 64),
    ("9.38E+79", 2000, 55),
    ("2.154E+69", 2000, 45),
    ("1.987E+59", 2000, 37),
    ("5.303E+49", 2000, 30),
    ("5.303E+49", 2000, 30),
    ("2.044E+49", 2000, 30),
    ("2.044E+49", 2000, 30),
    ("8.721E+34", 2000, 21),
    ("6.193E+24", 2000, 15),
    ("2.187E+12", 2000, 9),
    ("3.13E+102", 4000, 65),
    ("2.728E+89", 4000, 54),
    ("9.38E+79", 4000, 47),
    ("2.154E+69", 4000, 39),
    ("1.987E+59", 4000, 32),
    ("5.303E+49", 4000, 27),
    ("2.044E+49", 4000, 26),
    ("8.721E+34", 4000, 18),
    ("6.193E+24", 4000, 14),
    ("2.187E+12", 4000, 8),
    ("3.13E+102", 8000, 56),
    ("2.73E+89", 8000, 47),
    ("9.38E+79", 8000, 41),
    ("2.15E+69", 8000, 34),
    ("1.99E+59", 8000, 29),
    ("5.30E+49", 8000, 24),
    ("5.30E+49", 8000, 24),
    ("2.04E+49", 8000, 23),
    ("8.72E+34", 8000, 17),
    ("6.19E+24", 8000, 12),
    ("2.187E+12", 8000, 7),
];

fn pass(n: u32, msg: &str) {
    println!("ACCEPTANCE PASS {n:02}: {msg}");
}

#[test]
fn criterion_01_fit_grid_reproduction() {
    let start = Instant::now();
    let mut matched = 0usize;
    for (p_str, d, want) in FIT_GRID {
        let p = lattice::parse_big_scientific(p_str).unwrap();
        let got = iter_model::predicted_iterations(&p, *d).unwrap();
        if got == *want {
            matched += 1;
        } else {
            eprintln!("fit mismatch at (P={p_str}, d={d}): got {got}, want {want}");
        }
    }
    let elapsed = start.elapsed();
    // the published grid has 42 rows; up to two may sit on a rounding
    // boundary of the 3-significant-figure P values
    assert!(matched >= FIT_GRID.len() - 2, "only {matched}/{} rows matched", FIT_GRID.len());
    assert!(elapsed.as_secs_f64() < 1.0, "grid took {elapsed:?}");
    pass(1, &format!("fit prediction matches {matched}/{} published rows in {elapsed:?}", FIT_GRID.len()));
}

#[test]
fn criterion_02_recursion_benchmark() {
    let start = Instant::now();
    let p = BigUint::from(10u8).pow(102);
    let n = iter_model::recursion_count(&p, 1000).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(n, 109);
    assert!(elapsed.as_secs_f64() < 1.0, "recursion took {elapsed:?}");
    pass(2, &format!("recursion count for (10^102, 1000) is 109 in {elapsed:?}"));
}

fn median<T: Clone + PartialOrd>(mut xs: Vec<T>) -> T {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs[xs.len() / 2].clone()
}

#[test]
fn criterion_03_simple_solver_desk_rows() {
    // P ~ 2.19e12, d = 1000: median iterations 4 +- 1, median length <= 8
    let p = Modulus::new(BigUint::from(219u32) * BigUint::from(10u64).pow(10)).unwrap();
    let mut iters = Vec::new();
    let mut lengths = Vec::new();
    for seed in 0..5u64 {
        let v = sample_dual_uniform(1000, &p, seed).unwrap();
        let cfg = SolverConfig::simple(&v, 1000).unwrap();
        let r = run_simple(&v, 1000, &cfg).unwrap();
        assert_eq!(r.status, RunStatus::Found);
        iters.push(r.iterations as i64);
        lengths.push(r.length_of_first);
    }
    let med_iter = median(iters.clone());
    let med_len = median(lengths.clone());
    assert!((med_iter - 4).abs() <= 1, "median iterations {med_iter} not within 4 +- 1");
    assert!(med_len <= 8.0, "median length {med_len} exceeds 8");

    // P ~ 6.19e24, d = 2000: median length within a factor 2 of 16,
    // iterations 8 +- 2
    let p = Modulus::new(BigUint::from(619u32) * BigUint::from(10u64).pow(22)).unwrap();
    let mut iters2 = Vec::new();
    let mut lengths2 = Vec::new();
    for seed in 0..5u64 {
        let v = sample_dual_uniform(2000, &p, seed).unwrap();
        let cfg = SolverConfig::simple(&v, 2000).unwrap();
        let r = run_simple(&v, 2000, &cfg).unwrap();
        assert_eq!(r.status, RunStatus::Found);
        iters2.push(r.iterations as i64);
        lengths2.push(r.length_of_first);
    }
    let med_iter2 = median(iters2);
    let med_len2 = median(lengths2);
    assert!((med_iter2 - 8).abs() <= 2, "median iterations {med_iter2} not within 8 +- 2");
    assert!(med_len2 >= 8.0 && med_len2 <= 32.0, "median length {med_len2} not within 2x of 16");
    pass(3, &format!(
        "desk rows: (2.19e12, 1000) median iter {med_iter} len {med_len:.3}; (6.19e24, 2000) median iter {med_iter2} len {med_len2:.3}"
    ));
}

#[test]
fn criterion_04_length_bound_band() {
    // hard bound holds on every run (also asserted inside the engine);
    // empirically the squared length sits in [2^iter, 4^iter] on >= 90% of
    // runs in the 1 <= P^(1/(d-2)) < 2 regime
    let grid: &[(usize, u32)] =
        &[(500, 9), (800, 11), (1000, 12), (1200, 13), (1500, 14), (2000, 15)];
    let mut in_band = 0usize;
    let mut total = 0usize;
    for &(d, exp) in grid {
        let p = Modulus::new(BigUint::from(10u8).pow(exp)).unwrap();
        for seed in 0..2u64 {
            let v = sample_dual_uniform(d, &p, 70 + seed).unwrap();
            let cfg = SolverConfig::simple(&v, d).unwrap();
            let r = run_simple(&v, d, &cfg).unwrap();
            assert_eq!(r.status, RunStatus::Found);

            // hard invariant, exact integer arithmetic: L0 = 1 on the unit
            // basis and the cutoff root is 1 in this regime
            let root = cfg.cutoff.max_ratio();
            let growth = root + BigUint::one();
            let hard = growth.pow(2 * r.iterations);
            assert!(r.first_norm_sqr <= hard, "hard length bound violated");

            let lo = BigUint::from(2u8).pow(r.iterations);
            let hi = BigUint::from(4u8).pow(r.iterations);
            total += 1;
            if r.first_norm_sqr >= lo && r.first_norm_sqr <= hi {
                in_band += 1;
            }
        }
    }
    assert!(
        in_band * 10 >= total * 9,
        "only {in_band}/{total} runs inside the sqrt2..2 band"
    );
    pass(4, &format!("hard bound everywhere; {in_band}/{total} runs inside the band"));
}

#[test]
fn criterion_05_regularity_small_instances() {
    // 500 random small instances: the shrink pass preserves full integer
    // rank at every iteration and never emits the zero vector
    let mut rng = ChaCha12Rng::seed_from_u64(505);
    for case in 0..500u64 {
        let d = rng.gen_range(4..=12usize);
        let p_val = rng.gen_range(17u64..10_000);
        let p = Modulus::from_u64(p_val).unwrap();
        let v = sample_dual_uniform(d, &p, case).unwrap();
        let cfg = SolverConfig::simple(&v, d).unwrap();

        // drive the shrink pass through the public kernel, checking rank
        let mut list: Vec<TrackedVector> = (0..d)
            .map(|k| TrackedVector::new(IntVec::unit(d, k), &v, ProjKind::Raw).unwrap())
            .collect();
        list.sort_by(|a, b| a.proj.cmp(&b.proj));
        while !list[0].proj.is_zero() && list.len() > 1 {
            let mut next = Vec::with_capacity(list.len() - 1);
            for w in list.windows(2) {
                next.push(reduce_pair(&w[0], &w[1], &cfg.cutoff).unwrap());
            }
            next.sort_by(|a, b| a.proj.cmp(&b.proj));
            let rows: Vec<Vec<BigInt>> = next.iter().map(|tv| tv.vec.to_bigints()).collect();
            assert_eq!(
                integer_rank(&rows),
                next.len(),
                "rank dropped on case {case} (d={d}, P={p_val})"
            );
            list = next;
        }

        // the engine agrees and never outputs the zero vector
        let r = run_simple(&v, d, &cfg).unwrap();
        for out in &r.output_vectors {
            assert!(out.iter().any(|e| !e.is_zero()), "zero vector output on case {case}");
        }
        if r.status == RunStatus::Found {
            assert_eq!(&r.output_vectors[0], &list[0].vec.to_bigints());
        }
    }
    pass(5, "rank preserved and outputs nonzero on 500 small instances");
}

#[test]
fn criterion_06_membership_soundness() {
    let d = 50;
    let p = Modulus::from_u64(1_000_003).unwrap();
    assert!(p.is_prime());
    let mut checked = 0usize;

    for seed in 0..3u64 {
        let v = sample_dual_uniform(d, &p, seed).unwrap();

        let cfg = SolverConfig::simple(&v, d).unwrap();
        let r = run_simple(&v, d, &cfg).unwrap();
        for out in &r.output_vectors {
            assert!(verify_membership(out, &v).unwrap());
            checked += 1;
        }

        for q in [2u64, 7, 12345] {
            let q = BigUint::from(q);
            let cfg = SolverConfig::q_multiplied(&v, d, q.clone()).unwrap();
            let r = run_q_multiplied(&v, &q, d, &cfg).unwrap();
            for out in &r.output_vectors {
                assert!(verify_membership(out, &v).unwrap());
                checked += 1;
            }
        }

        let recipe = InputRecipe::sparse_signed(256, 4, 4, 900 + seed);
        let input = sparse_signed(d, &recipe).unwrap();
        let cfg = SolverConfig::general(&v, 256).unwrap();
        let r = run_general(&v, input, &cfg).unwrap();
        for out in &r.output_vectors {
            assert!(verify_membership(out, &v).unwrap());
            checked += 1;
        }

        let cfg = SolverConfig::block(&v, d, 3).unwrap();
        let r = run_block(&v, d, 3, &cfg).unwrap();
        for out in &r.output_vectors {
            assert!(verify_membership(out, &v).unwrap());
            checked += 1;
        }

        // stacked constraints for k = 2 and k = 3
        let v2 = sample_dual_uniform(d, &p, 100 + seed).unwrap();
        let v3 = sample_dual_uniform(d, &p, 200 + seed).unwrap();
        let cfg_q = SolverConfig::q_multiplied(&v, d, BigUint::one()).unwrap();
        for cws in [vec![v.clone(), v2.clone()], vec![v.clone(), v2.clone(), v3.clone()]] {
            let code = DualCode::new(cws.clone()).unwrap();
            let r = run_codimk_with_guard(&code, &cfg_q, &QSchedule::Sequential, 3).unwrap();
            assert_eq!(r.status, RunStatus::Found);
            for out in &r.output_vectors {
                for cw in &cws {
                    assert!(verify_membership(out, cw).unwrap());
                    checked += 1;
                }
            }
        }
    }
    assert!(checked >= 20);
    pass(6, &format!("membership verified on {checked} outputs across all variants"));
}

#[test]
fn criterion_07_codim_scaling() {
    let d = 200;
    let p = Modulus::from_u64(100_000_007).unwrap();
    assert!(p.is_prime());
    let mut l1_medians = Vec::new();
    let mut l2_values = Vec::new();
    for seed in 0..5u64 {
        let v1 = sample_dual_uniform(d, &p, 10 + seed).unwrap();
        let v2 = sample_dual_uniform(d, &p, 50 + seed).unwrap();
        let cfg = SolverConfig::q_multiplied(&v1, d, BigUint::one()).unwrap();
        let pool = harvest_codim1(&v1, d, &QSchedule::Sequential, &cfg).unwrap();
        let l1: Vec<f64> = pool
            .iter()
            .map(|w| {
                use num_traits::ToPrimitive;
                w.norm_sqr().to_f64().unwrap().sqrt()
            })
            .collect();
        l1_medians.push(median(l1));
        let code = DualCode::new(vec![v1, v2]).unwrap();
        let r = run_codim2(&code, &cfg, &QSchedule::Sequential).unwrap();
        assert_eq!(r.status, RunStatus::Found);
        l2_values.push(r.length_of_first);
    }
    let l1 = median(l1_medians);
    let l2 = median(l2_values);
    let target = l1 * l1;
    assert!(
        l2 >= target / 3.0 && l2 <= target * 3.0,
        "codim-2 length {l2:.3} not within 3x of squared codim-1 length {target:.3}"
    );
    pass(7, &format!("codim-2 median length {l2:.3} vs squared codim-1 {target:.3}"));
}

#[test]
fn criterion_08_kblock_oracle_equivalence() {
    let mut rng = ChaCha12Rng::seed_from_u64(808);
    // 1000 random sorted prefixes, length <= 64: exact projection and sign
    for _ in 0..1000 {
        let len = rng.gen_range(3..=64usize);
        let mut projs: Vec<u64> = (0..len).map(|_| rng.gen_range(0..5000)).collect();
        projs.sort_unstable();
        let list = working_list(&projs);
        let target = rng.gen_range(2..len);
        let (b, bc) = reduce3(target, &list).unwrap();
        let (f, fc) = reduce3_fast(target, &list).unwrap();
        assert_eq!(b.proj, f.proj, "projection diverged");
        assert_eq!(bc.signed, fc.signed, "sign diverged");
        assert_eq!(bc, fc, "donor choice diverged");
        assert_eq!(b.vec, f.vec);
    }
    // reduce_k at k = 3 against the brute force on 200 instances
    for _ in 0..200 {
        let len = rng.gen_range(3..=48usize);
        let mut projs: Vec<u64> = (0..len).map(|_| rng.gen_range(0..2000)).collect();
        projs.sort_unstable();
        let list = working_list(&projs);
        let target = rng.gen_range(2..len);
        let (b, bc) = reduce3(target, &list).unwrap();
        let (k, kc) = reduce_k(3, target, &list).unwrap();
        assert_eq!(b.proj, k.proj);
        assert_eq!(bc, kc);
    }
    pass(8, "reduce3_fast and reduce_k(3) match the brute force exactly");
}

fn working_list(projs: &[u64]) -> WorkingList {
    let d = projs.len();
    let vectors = (0..d)
        .map(|k| TrackedVector {
            vec: IntVec::unit(d, k),
            proj: BigInt::from(projs[k]),
            kind: ProjKind::Raw,
        })
        .collect();
    WorkingList { vectors, sorted: true }
}

#[test]
fn criterion_09_gaussian_heuristic() {
    let det40 = BigUint::from(186u8) * BigUint::from(10u8).pow(118);
    let v40 = gaussian_heuristic(40, &det40).unwrap().to_f64();
    assert!((v40 - 1651.31).abs() <= 0.5, "d=40 heuristic {v40}");
    let det42 = BigUint::from(181u8) * BigUint::from(10u8).pow(124);
    let v42 = gaussian_heuristic(42, &det42).unwrap().to_f64();
    assert!((v42 - 1685.91).abs() <= 0.5, "d=42 heuristic {v42}");
    pass(9, &format!("gaussian heuristic {v40:.2} / {v42:.2} at the published points"));
}

#[test]
fn criterion_10_dual_extraction_roundtrip() {
    let mut rng = ChaCha12Rng::seed_from_u64(1010);
    for case in 0..200 {
        let d = rng.gen_range(2..=20usize);
        let p = next_prime_at_least(&BigUint::from(rng.gen_range(2u64..1_000_000_000)));
        let p_int = BigInt::from(p.clone());
        let mut rows = vec![vec![BigInt::zero(); d]; d];
        for i in 0..d - 1 {
            rows[i][i] = BigInt::one();
            rows[i][d - 1] = BigInt::from(rng.gen::<u64>()) % &p_int;
        }
        rows[d - 1][d - 1] = p_int.clone();
        let basis = LatticeBasis::new(rows).unwrap();
        // extraction runs the exact adjugate-identity check internally
        let (cw, modulus) = extract_dual_codeword(&basis)
            .unwrap_or_else(|e| panic!("extraction failed on case {case}: {e}"));
        assert_eq!(modulus.value(), &p);
        for row in basis.rows() {
            assert!(verify_membership(row, &cw).unwrap(), "row not annihilated, case {case}");
        }
    }
    pass(10, "200 random Goldstein-Mayer bases extract and verify");
}

#[test]
fn criterion_11_general_iteration_model() {
    let d = 30;
    let p = Modulus::new(BigUint::from(1_000_000_000_000_000_009u64)).unwrap();
    for dstar in [256usize, 1024, 4096] {
        let predicted =
            iter_model::general_iterations(p.value(), dstar as u64).unwrap().to_f64();
        let mut iters = Vec::new();
        for seed in 0..5u64 {
            let v = sample_dual_uniform(d, &p, 100 + seed).unwrap();
            let recipe = InputRecipe::sparse_signed(dstar, 8, 8, 200 + seed);
            let input = sparse_signed(d, &recipe).unwrap();
            let cfg = SolverConfig::general(&v, dstar).unwrap();
            let r = run_general(&v, input, &cfg).unwrap();
            assert_eq!(r.status, RunStatus::Found);
            iters.push(r.iterations as f64);
        }
        let med = median(iters);
        assert!(
            med >= predicted * 0.5 && med <= predicted * 1.5,
            "d*={dstar}: measured {med} outside +-50% of {predicted:.2}"
        );
    }
    pass(11, "general-solver iterations track log2(P)/log2(d*) within 50%");
}

#[test]
fn criterion_12_declared_substitutions() {
    // The published d = 40/42 challenge runs (~10^7 input vectors, hours of
    // compute) are not reproduced here. Their stand-ins are criteria 1-11
    // plus the opt-in CLI recipe (`solve --algo general --recipe darmstadt40
    // --basis FILE`), which is exercised in the CLI test suite. The length
    // predictor is pinned to the published estimates for those runs:
    let p40 = Modulus::new(BigUint::from(186u8) * BigUint::from(10u8).pow(118)).unwrap();
    let est40 =
        codelat_core::solver::predict_general_length(&p40, 8_000_000, 4.0).unwrap();
    assert!((est40 - 1185.5).abs() < 0.5);
    let p42 = Modulus::new(BigUint::from(181u8) * BigUint::from(10u8).pow(124)).unwrap();
    let est42 =
        codelat_core::solver::predict_general_length(&p42, 19_200_000, 4.0).unwrap();
    assert!((est42 - 1150.22).abs() < 0.5);
    pass(12, "full-scale challenge rows declared out of desk scale; predictors pinned");
}
