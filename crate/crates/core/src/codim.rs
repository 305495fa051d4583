//! Co-dimension 2 and general co-dimension k solvers, built by feeding
//! q-multiplied co-dimension-1 outputs into fresh co-dimension-1 runs.

use crate::error::{Error, Result};
use crate::projection::{CutoffRule, DualCodeword, IntVec, Modulus, ProjKind};
use crate::solver::{
    run_general, run_q_multiplied, Boundary, RunReport, RunStatus, SolverConfig, Variant,
};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

/// A rank-k dual code: k codewords over the same modulus, verified to be
/// linearly independent mod P.
#[derive(Debug, Clone)]
pub struct DualCode {
    codewords: Vec<DualCodeword>,
    rank_checked: bool,
}

impl DualCode {
    /// Checks matching dimensions and moduli plus linear independence mod P
    /// (P must be prime for the independence check to be meaningful).
    pub fn new(codewords: Vec<DualCodeword>) -> Result<Self> {
        if codewords.is_empty() {
            return Err(Error::config("a dual code needs at least one codeword"));
        }
        let d = codewords[0].dim();
        let modulus = codewords[0].modulus().clone();
        for cw in &codewords {
            if cw.dim() != d {
                return Err(Error::Dimension { expected: d, got: cw.dim() });
            }
            if cw.modulus() != &modulus {
                return Err(Error::config("codewords must share one modulus"));
            }
        }
        if !modulus.is_prime() {
            return Err(Error::config("co-dimension stacking requires a prime modulus"));
        }
        if rank_mod_p(&codewords, &modulus) != codewords.len() {
            return Err(Error::config("codewords are not linearly independent mod P"));
        }
        Ok(DualCode { codewords, rank_checked: true })
    }

    pub fn rank(&self) -> usize {
        self.codewords.len()
    }

    pub fn dim(&self) -> usize {
        self.codewords[0].dim()
    }

    pub fn modulus(&self) -> &Modulus {
        self.codewords[0].modulus()
    }

    pub fn codewords(&self) -> &[DualCodeword] {
        &self.codewords
    }

    pub fn rank_checked(&self) -> bool {
        self.rank_checked
    }
}

/// Gaussian elimination over the prime field Z_P.
fn rank_mod_p(codewords: &[DualCodeword], modulus: &Modulus) -> usize {
    let p = modulus.value_int();
    let mut m: Vec<Vec<BigInt>> = codewords.iter().map(|c| c.entries().to_vec()).collect();
    let rows = m.len();
    let cols = m[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        let pivot = (rank..rows).find(|&i| !m[i][col].is_zero());
        let Some(pivot) = pivot else {
            col += 1;
            continue;
        };
        m.swap(rank, pivot);
        let inv = mod_inverse(&m[rank][col], &p);
        for j in col..cols {
            m[rank][j] = (&m[rank][j] * &inv).mod_floor(&p);
        }
        for i in 0..rows {
            if i != rank && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..cols {
                    let v = (&m[i][j] - &f * &m[rank][j]).mod_floor(&p);
                    m[i][j] = v;
                }
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let eg = a.mod_floor(p).extended_gcd(p);
    eg.x.mod_floor(p)
}

/// Multiplier schedules for harvesting. The default is q_i = i + 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QSchedule {
    Sequential,
    Explicit(Vec<BigUint>),
}

impl QSchedule {
    pub fn get(&self, i: usize, modulus: &Modulus) -> Result<BigUint> {
        let q = match self {
            QSchedule::Sequential => BigUint::from(i) + BigUint::one(),
            QSchedule::Explicit(qs) => qs
                .get(i)
                .cloned()
                .ok_or_else(|| Error::config("q-schedule shorter than the harvest count"))?,
        };
        if (&q % modulus.value()).is_zero() {
            return Err(Error::config("q-schedule entry is zero mod P"));
        }
        Ok(q)
    }
}

/// `count` lattice vectors orthogonal to v mod P, each the first output of
/// a q-multiplied unit-basis run. Duplicates are permitted.
pub fn harvest_codim1(
    codeword: &DualCodeword,
    count: usize,
    schedule: &QSchedule,
    config: &SolverConfig,
) -> Result<Vec<IntVec>> {
    let d = codeword.dim();
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let q = schedule.get(i, codeword.modulus())?;
        let mut cfg = config.clone();
        cfg.variant = Variant::QMultiplied;
        cfg.q = Some(q.clone());
        let report = run_q_multiplied(codeword, &q, d, &cfg)?;
        if report.status != RunStatus::Found {
            return Err(Error::Harvest { q });
        }
        out.push(IntVec::from_bigints(report.output_vectors[0].clone()));
    }
    Ok(out)
}

/// Configuration for one mod-P level run over a harvested input set:
/// shrink boundary with zero-vector discard, cutoff exponent d - 2.
fn level_config(modulus: &Modulus, input_size: usize) -> Result<SolverConfig> {
    if input_size < 3 {
        return Err(Error::config("level input must have at least 3 vectors"));
    }
    Ok(SolverConfig {
        variant: Variant::General,
        boundary: Boundary::Shrink,
        k_max: 2,
        q: None,
        cutoff: CutoffRule::new(input_size as u32 - 2, modulus.clone())?,
        proj_kind: ProjKind::ModP,
        max_iterations: None,
        discard_zero_vectors: true,
        seed: 0,
    })
}

/// Co-dimension 2: harvest d vectors orthogonal to v1, then run the mod-P
/// engine against v2. Outputs satisfy both constraints.
pub fn run_codim2(
    code: &DualCode,
    config: &SolverConfig,
    schedule: &QSchedule,
) -> Result<RunReport> {
    if code.rank() != 2 {
        return Err(Error::config("run_codim2 needs a rank-2 dual code"));
    }
    run_codimk(code, config, schedule)
}

/// Co-dimension k, inductively: the level-m input list is d harvested
/// outputs of level m-1 under the q-schedule; the final level is a single
/// run against the last codeword. Every output is checked against all k
/// constraints.
pub fn run_codimk(
    code: &DualCode,
    config: &SolverConfig,
    schedule: &QSchedule,
) -> Result<RunReport> {
    let d = code.dim();
    run_codimk_with_guard(code, config, schedule, (d / 10).max(1))
}

/// Same as [`run_codimk`] with an explicit cap on the co-dimension (the
/// method needs k much smaller than d).
pub fn run_codimk_with_guard(
    code: &DualCode,
    config: &SolverConfig,
    schedule: &QSchedule,
    max_codim: usize,
) -> Result<RunReport> {
    let k = code.rank();
    let d = code.dim();
    if k > max_codim {
        return Err(Error::config(format!(
            "co-dimension {k} exceeds the limit {max_codim} for dimension {d}"
        )));
    }
    if k == 1 {
        // base case: a single q-multiplied unit-basis run
        let q = schedule.get(0, code.modulus())?;
        let mut cfg = SolverConfig::q_multiplied(&code.codewords()[0], d, q.clone())?;
        cfg.seed = config.seed;
        cfg.max_iterations = config.max_iterations;
        return run_q_multiplied(&code.codewords()[0], &q, d, &cfg);
    }

    let base_cfg = SolverConfig::q_multiplied(&code.codewords()[0], d, BigUint::one())?
        .with_seed(config.seed);
    let mut pool = harvest_codim1(&code.codewords()[0], d, schedule, &base_cfg)?;
    check_pool(&pool, &code.codewords()[..1])?;

    // intermediate levels harvest d vectors each from q-multiplied runs
    for level in 2..k {
        let cw = &code.codewords()[level - 1];
        let mut next = Vec::with_capacity(d);
        for i in 0..d {
            let q = schedule.get(i, code.modulus())?;
            let multiplied = cw.multiplied(&q)?;
            let cfg = level_config(code.modulus(), pool.len())?;
            let report = run_general(&multiplied, pool.clone(), &cfg)?;
            if report.status != RunStatus::Found {
                return Err(Error::Harvest { q });
            }
            next.push(IntVec::from_bigints(report.output_vectors[0].clone()));
        }
        pool = next;
        check_pool(&pool, &code.codewords()[..level])?;
    }

    // final level: one run against the last codeword
    let cfg = level_config(code.modulus(), pool.len())?;
    let cfg = SolverConfig { max_iterations: config.max_iterations, ..cfg };
    let report = run_general(&code.codewords()[k - 1], pool, &cfg)?;
    if report.status == RunStatus::Found {
        for out in &report.output_vectors {
            let w = IntVec::from_bigints(out.clone());
            for cw in code.codewords() {
                assert!(
                    cw.project_mod(&w)?.is_zero(),
                    "output must satisfy every stacked constraint"
                );
            }
        }
    }
    Ok(report)
}

/// Every pool vector must satisfy all constraints accumulated so far.
fn check_pool(pool: &[IntVec], codewords: &[DualCodeword]) -> Result<()> {
    for v in pool {
        for cw in codewords {
            assert!(
                cw.project_mod(v)?.is_zero(),
                "harvested vector violates a level constraint"
            );
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input_sets::sample_dual_uniform;
    use crate::projection::Modulus;

    fn cw(entries: &[u64], p: u64) -> DualCodeword {
        let m = Modulus::from_u64(p).unwrap();
        DualCodeword::new(entries.iter().map(|&e| BigInt::from(e)).collect(), m).unwrap()
    }

    #[test]
    fn collinear_codewords_rejected() {
        // v2 = 3 v1 mod 101
        let v1 = cw(&[3, 5, 7, 11], 101);
        let v2 = v1.multiplied(&BigUint::from(3u8)).unwrap();
        assert!(DualCode::new(vec![v1, v2]).is_err());
    }

    #[test]
    fn independent_codewords_accepted() {
        let v1 = cw(&[3, 5, 7, 11], 101);
        let v2 = cw(&[1, 0, 4, 9], 101);
        let code = DualCode::new(vec![v1, v2]).unwrap();
        assert!(code.rank_checked());
        assert_eq!(code.rank(), 2);
    }

    #[test]
    fn composite_modulus_rejected() {
        let v1 = cw(&[3, 5, 7, 11], 100);
        assert!(DualCode::new(vec![v1]).is_err());
    }

    #[test]
    fn sequential_schedule_skips_nothing() {
        let m = Modulus::from_u64(101).unwrap();
        let s = QSchedule::Sequential;
        assert_eq!(s.get(0, &m).unwrap(), BigUint::one());
        assert_eq!(s.get(99, &m).unwrap(), BigUint::from(100u8));
        assert!(s.get(100, &m).is_err()); // 101 = 0 mod P
    }

    #[test]
    fn harvest_produces_orthogonal_vectors() {
        let d = 24;
        let m = Modulus::from_u64(100003).unwrap();
        let v = sample_dual_uniform(d, &m, 5).unwrap();
        let cfg = SolverConfig::q_multiplied(&v, d, BigUint::one()).unwrap();
        let pool = harvest_codim1(&v, 10, &QSchedule::Sequential, &cfg).unwrap();
        assert_eq!(pool.len(), 10);
        for w in &pool {
            assert!(v.project_mod(w).unwrap().is_zero());
        }
    }

    #[test]
    fn harvest_q1_matches_simple_run() {
        let d = 16;
        let m = Modulus::from_u64(100003).unwrap();
        let v = sample_dual_uniform(d, &m, 9).unwrap();
        let cfg = SolverConfig::q_multiplied(&v, d, BigUint::one()).unwrap();
        let pool = harvest_codim1(&v, 1, &QSchedule::Sequential, &cfg).unwrap();
        let simple_cfg = SolverConfig::simple(&v, d).unwrap();
        let report = crate::solver::run_simple(&v, d, &simple_cfg).unwrap();
        assert_eq!(pool[0].to_bigints(), report.output_vectors[0]);
    }

    #[test]
    fn codim2_outputs_satisfy_both_constraints() {
        let d = 30;
        let m = Modulus::from_u64(1_000_003).unwrap();
        let v1 = sample_dual_uniform(d, &m, 21).unwrap();
        let v2 = sample_dual_uniform(d, &m, 22).unwrap();
        let code = DualCode::new(vec![v1.clone(), v2.clone()]).unwrap();
        let cfg = SolverConfig::q_multiplied(&v1, d, BigUint::one()).unwrap();
        let report = run_codim2(&code, &cfg, &QSchedule::Sequential).unwrap();
        assert_eq!(report.status, RunStatus::Found);
        for out in &report.output_vectors {
            let w = IntVec::from_bigints(out.clone());
            assert!(v1.project_mod(&w).unwrap().is_zero());
            assert!(v2.project_mod(&w).unwrap().is_zero());
        }
    }

    #[test]
    fn codimk_matches_codim2_at_rank_2() {
        let d = 24;
        let m = Modulus::from_u64(1_000_003).unwrap();
        let v1 = sample_dual_uniform(d, &m, 31).unwrap();
        let v2 = sample_dual_uniform(d, &m, 32).unwrap();
        let code = DualCode::new(vec![v1.clone(), v2]).unwrap();
        let cfg = SolverConfig::q_multiplied(&v1, d, BigUint::one()).unwrap();
        let a = run_codim2(&code, &cfg, &QSchedule::Sequential).unwrap();
        let b = run_codimk(&code, &cfg, &QSchedule::Sequential).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn codimk_guard_enforced() {
        let d = 12;
        let m = Modulus::from_u64(1_000_003).unwrap();
        let cws: Vec<DualCodeword> =
            (0..3).map(|i| sample_dual_uniform(d, &m, 40 + i).unwrap()).collect();
        let code = DualCode::new(cws).unwrap();
        let cfg = SolverConfig::q_multiplied(&code.codewords()[0], d, BigUint::one()).unwrap();
        // d/10 = 1 < 3
        assert!(run_codimk(&code, &cfg, &QSchedule::Sequential).is_err());
        let ok = run_codimk_with_guard(&code, &cfg, &QSchedule::Sequential, 3);
        assert!(ok.is_ok());
    }

    #[test]
    fn stack_is_deterministic() {
        let d = 20;
        let m = Modulus::from_u64(1_000_003).unwrap();
        let v1 = sample_dual_uniform(d, &m, 51).unwrap();
        let v2 = sample_dual_uniform(d, &m, 52).unwrap();
        let code = DualCode::new(vec![v1.clone(), v2]).unwrap();
        let cfg = SolverConfig::q_multiplied(&v1, d, BigUint::one()).unwrap();
        let a = run_codim2(&code, &cfg, &QSchedule::Sequential).unwrap();
        let b = run_codim2(&code, &cfg, &QSchedule::Sequential).unwrap();
        assert_eq!(a, b);
    }
}
