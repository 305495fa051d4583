//! The iteration engine: sort, reduce pass, boundary conditions,
//! zero-vector discard, and termination.
//!
//! One iteration is one reduce pass plus one sort. The run terminates as
//! soon as the sorted list starts with a zero projection (the vector is in
//! the lattice), when the list is exhausted, or at the iteration cap.

use crate::error::{Error, Result};
use crate::kblock::best_choice_reduce;
use crate::projection::{
    reduce_pair, CutoffRule, DualCodeword, IntVec, Modulus, ProjKind, TrackedVector,
};
use crate::{iter_model, GENERATOR_ID};
use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

/// A projection-sorted sequence of tracked vectors consumed and produced by
/// one solver iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkingList {
    pub vectors: Vec<TrackedVector>,
    pub sorted: bool,
}

impl WorkingList {
    pub fn new(vectors: Vec<TrackedVector>) -> Self {
        WorkingList { vectors, sorted: false }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn sort_by_projection(&mut self) {
        // stable: ties keep their order from the previous pass
        self.vectors.sort_by(|a, b| a.proj.cmp(&b.proj));
        self.sorted = true;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Simple,
    QMultiplied,
    General,
    Block,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Plain consecutive-pair pass; the list shrinks by one each iteration.
    Shrink,
    /// The current minimum is carried over unchanged, preserving list size.
    KeepFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    Found,
    ExhaustedList,
    IterationCap,
}

/// Algorithm variant, cutoff rule, boundary condition and caps for one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    pub variant: Variant,
    pub boundary: Boundary,
    pub k_max: usize,
    pub q: Option<BigUint>,
    pub cutoff: CutoffRule,
    pub proj_kind: ProjKind,
    pub max_iterations: Option<u32>,
    pub discard_zero_vectors: bool,
    pub seed: u64,
}

impl SolverConfig {
    /// Unit-basis run with raw projections and the shrinking boundary.
    pub fn simple(codeword: &DualCodeword, d: usize) -> Result<Self> {
        if d < 3 {
            return Err(Error::config("simple variant needs d >= 3"));
        }
        if d != codeword.dim() {
            return Err(Error::Dimension { expected: codeword.dim(), got: d });
        }
        Ok(SolverConfig {
            variant: Variant::Simple,
            boundary: Boundary::Shrink,
            k_max: 2,
            q: None,
            cutoff: CutoffRule::new(d as u32 - 2, codeword.modulus().clone())?,
            proj_kind: ProjKind::Raw,
            max_iterations: None,
            discard_zero_vectors: false,
            seed: 0,
        })
    }

    /// Same run against q*v mod P; requires a prime modulus.
    pub fn q_multiplied(codeword: &DualCodeword, d: usize, q: BigUint) -> Result<Self> {
        if !codeword.modulus().is_prime() {
            return Err(Error::config("q-multiplied variant requires a prime modulus"));
        }
        if q.is_zero() || &q % codeword.modulus().value() == BigUint::zero() {
            return Err(Error::config("q must be nonzero mod P"));
        }
        let mut cfg = SolverConfig::simple(codeword, d)?;
        cfg.variant = Variant::QMultiplied;
        cfg.q = Some(q);
        Ok(cfg)
    }

    /// Arbitrary input set of size d_star under mod-P projections; the first
    /// vector is kept each pass and zero vectors are discarded.
    pub fn general(codeword: &DualCodeword, d_star: usize) -> Result<Self> {
        if d_star < 3 {
            return Err(Error::config("general variant needs an input set of size >= 3"));
        }
        Ok(SolverConfig {
            variant: Variant::General,
            boundary: Boundary::KeepFirst,
            k_max: 2,
            q: None,
            cutoff: CutoffRule::new(d_star as u32 - 2, codeword.modulus().clone())?,
            proj_kind: ProjKind::ModP,
            max_iterations: None,
            discard_zero_vectors: true,
            seed: 0,
        })
    }

    /// Unit-basis run where each target takes the best reduction of arity
    /// 2..=k_max.
    pub fn block(codeword: &DualCodeword, d: usize, k_max: usize) -> Result<Self> {
        if k_max < 2 {
            return Err(Error::config("block variant needs k_max >= 2"));
        }
        let mut cfg = SolverConfig::simple(codeword, d)?;
        cfg.variant = Variant::Block;
        cfg.k_max = k_max;
        cfg.discard_zero_vectors = true;
        Ok(cfg)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_iterations(mut self, cap: u32) -> Self {
        self.max_iterations = Some(cap);
        self
    }

    /// Safety cap: four times the fitted iteration prediction, with a
    /// generous bit-length fallback outside the fit's regime.
    pub fn resolve_max_iterations(&self, input_size: usize) -> u32 {
        if let Some(cap) = self.max_iterations {
            return cap;
        }
        let p = self.cutoff.modulus().value();
        match iter_model::predicted_iterations(p, input_size as u64) {
            Ok(pred) => 4 * (pred as u32).max(2),
            Err(_) => 4 * (p.bits() as u32 + 2),
        }
    }
}

/// Per-iteration snapshot recorded after the pass and sort.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterRecord {
    pub list_size: usize,
    pub min_proj: BigInt,
    pub max_proj: BigInt,
    pub max_norm_sqr: BigUint,
}

/// Outcome of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub status: RunStatus,
    /// Nonzero vectors with zero projection, in sorted order.
    pub output_vectors: Vec<Vec<BigInt>>,
    pub iterations: u32,
    pub final_list_size: usize,
    /// Exact squared Euclidean length of the first reported vector.
    pub first_norm_sqr: BigUint,
    pub length_of_first: f64,
    /// Depth of the familial line of the first vector (effective iterations).
    pub lineage_of_first: u32,
    pub trace: Vec<IterRecord>,
    pub generator: &'static str,
}

enum PassMode {
    Pairwise,
    Block { k_max: usize },
}

struct Engine<'a> {
    codeword: &'a DualCodeword,
    rule: &'a CutoffRule,
    boundary: Boundary,
    discard: bool,
    mode: PassMode,
    cap: u32,
    check_pigeonhole: bool,
}

impl Engine<'_> {
    fn run(&self, input: Vec<IntVec>, kind: ProjKind) -> Result<RunReport> {
        let mut items: Vec<(TrackedVector, u32)> = input
            .into_iter()
            .map(|v| Ok((TrackedVector::new(v, self.codeword, kind)?, 0u32)))
            .collect::<Result<_>>()?;
        let l0_sqr = items.iter().map(|(tv, _)| tv.norm_sqr()).max().unwrap_or_default();
        let initial_distinct_positive = {
            let mut projs: Vec<&BigInt> = items.iter().map(|(tv, _)| &tv.proj).collect();
            projs.sort();
            !projs.is_empty()
                && !projs[0].is_zero()
                && projs.windows(2).all(|w| w[0] != w[1])
        };
        items.sort_by(|a, b| a.0.proj.cmp(&b.0.proj));

        let mut iterations = 0u32;
        let mut trace = Vec::new();
        let status = loop {
            match items.first() {
                None => break RunStatus::ExhaustedList,
                Some((first, _)) if first.proj.is_zero() => break RunStatus::Found,
                _ => {}
            }
            if items.len() <= 1 {
                break RunStatus::ExhaustedList;
            }
            if iterations >= self.cap {
                break RunStatus::IterationCap;
            }

            let mut fired_any = false;
            let mut next = self.pass(&items, &mut fired_any)?;
            if self.check_pigeonhole && iterations == 0 && initial_distinct_positive {
                assert!(
                    fired_any,
                    "pigeonhole: the first pass must accept at least one ratio"
                );
            }
            if self.discard {
                next.retain(|(tv, _)| !tv.vec.is_zero());
            }
            next.sort_by(|a, b| a.0.proj.cmp(&b.0.proj));
            items = next;
            iterations += 1;
            trace.push(IterRecord {
                list_size: items.len(),
                min_proj: items.first().map(|(tv, _)| tv.proj.clone()).unwrap_or_default(),
                max_proj: items.last().map(|(tv, _)| tv.proj.clone()).unwrap_or_default(),
                max_norm_sqr: items.iter().map(|(tv, _)| tv.norm_sqr()).max().unwrap_or_default(),
            });
        };

        self.check_length_bound(&items, &l0_sqr, iterations);

        let mut output_vectors = Vec::new();
        let mut lineage_of_first = 0;
        if status == RunStatus::Found {
            for (tv, line) in items.iter().take_while(|(tv, _)| tv.proj.is_zero()) {
                if tv.vec.is_zero() {
                    continue; // cannot happen without discard; excluded from outputs
                }
                if output_vectors.is_empty() {
                    lineage_of_first = *line;
                }
                output_vectors.push(tv.vec.to_bigints());
            }
            assert!(!output_vectors.is_empty(), "found status requires a nonzero output");
            for out in &output_vectors {
                let w = IntVec::from_bigints(out.clone());
                let p = self.codeword.project(&w, kind)?;
                assert!(p.is_zero(), "membership: every output must project to zero");
            }
        }

        let (first_norm_sqr, length_of_first) = if status == RunStatus::Found {
            let n = IntVec::from_bigints(output_vectors[0].clone()).norm_sqr();
            let l = n.to_f64().unwrap_or(f64::INFINITY).sqrt();
            (n, l)
        } else if let Some((tv, line)) = items.first() {
            lineage_of_first = *line;
            let n = tv.norm_sqr();
            let l = n.to_f64().unwrap_or(f64::INFINITY).sqrt();
            (n, l)
        } else {
            (BigUint::zero(), 0.0)
        };

        Ok(RunReport {
            status,
            output_vectors,
            iterations,
            final_list_size: items.len(),
            first_norm_sqr,
            length_of_first,
            lineage_of_first,
            trace,
            generator: GENERATOR_ID,
        })
    }

    fn pass(
        &self,
        items: &[(TrackedVector, u32)],
        fired_any: &mut bool,
    ) -> Result<Vec<(TrackedVector, u32)>> {
        debug_assert!(items.windows(2).all(|w| w[0].0.proj <= w[1].0.proj));
        let n = items.len();
        match self.mode {
            PassMode::Pairwise => {
                let mut next = Vec::with_capacity(n);
                if self.boundary == Boundary::KeepFirst {
                    next.push(items[0].clone());
                }
                for w in items.windows(2) {
                    let (out, fired) = reduce_pair_traced(&w[0].0, &w[1].0, self.rule)?;
                    *fired_any |= fired;
                    let line = if fired { w[0].1 + 1 } else { w[0].1 };
                    next.push((out, line));
                }
                Ok(next)
            }
            PassMode::Block { k_max } => {
                let list = WorkingList { vectors: items.iter().map(|(tv, _)| tv.clone()).collect(), sorted: true };
                let mut next = Vec::with_capacity(n - 1);
                for target in 1..n {
                    let (out, choice) = best_choice_reduce(k_max, target, &list, self.rule)?;
                    let line = if choice.arity == 2 {
                        let pred = &items[target - 1];
                        if out.proj == pred.0.proj && out.vec == pred.0.vec {
                            pred.1
                        } else {
                            *fired_any = true;
                            pred.1 + 1
                        }
                    } else {
                        *fired_any = true;
                        let donors_max =
                            choice.donor_indices.iter().map(|&i| items[i].1).max().unwrap_or(0);
                        donors_max.max(items[target].1) + 1
                    };
                    next.push((out, line));
                }
                Ok(next)
            }
        }
    }

    /// Hard triangle-inequality bound on growth. The per-iteration factor is
    /// 1 + floor(P^(1/n)) for pairwise passes and at least k for k-party
    /// reductions with unit coefficients.
    fn check_length_bound(&self, items: &[(TrackedVector, u32)], l0_sqr: &BigUint, iterations: u32) {
        let Some(max_norm) = items.iter().map(|(tv, _)| tv.norm_sqr()).max() else {
            return;
        };
        let mut factor = self.rule.max_ratio() + BigUint::from(1u8);
        if let PassMode::Block { k_max } = self.mode {
            factor = factor.max(BigUint::from(k_max));
        }
        let bound = l0_sqr * factor.pow(2 * iterations);
        assert!(
            max_norm <= bound,
            "length bound violated: max norm^2 {} > allowed {}",
            max_norm,
            bound
        );
    }
}

fn reduce_pair_traced(
    smaller: &TrackedVector,
    larger: &TrackedVector,
    rule: &CutoffRule,
) -> Result<(TrackedVector, bool)> {
    let out = reduce_pair(smaller, larger, rule)?;
    let fired = !(out.proj == smaller.proj && out.vec == smaller.vec);
    Ok((out, fired))
}

fn engine_for<'a>(codeword: &'a DualCodeword, config: &'a SolverConfig, input_size: usize) -> Engine<'a> {
    Engine {
        codeword,
        rule: &config.cutoff,
        boundary: config.boundary,
        discard: config.discard_zero_vectors,
        mode: match config.variant {
            Variant::Block => PassMode::Block { k_max: config.k_max },
            _ => PassMode::Pairwise,
        },
        cap: config.resolve_max_iterations(input_size),
        check_pigeonhole: config.variant == Variant::Simple,
    }
}

fn unit_basis_input(d: usize) -> Vec<IntVec> {
    (0..d).map(|k| IntVec::unit(d, k)).collect()
}

/// Algorithm on the unit basis with raw projections and shrink boundary.
pub fn run_simple(codeword: &DualCodeword, d: usize, config: &SolverConfig) -> Result<RunReport> {
    if config.variant != Variant::Simple {
        return Err(Error::config("config variant must be Simple"));
    }
    if d < 3 {
        return Err(Error::config("simple variant needs d >= 3"));
    }
    if d != codeword.dim() {
        return Err(Error::Dimension { expected: codeword.dim(), got: d });
    }
    let engine = engine_for(codeword, config, d);
    engine.run(unit_basis_input(d), config.proj_kind)
}

/// Runs the simple algorithm against q*v mod P; any output is verified to
/// lie in the original lattice before the report is returned.
pub fn run_q_multiplied(
    codeword: &DualCodeword,
    q: &BigUint,
    d: usize,
    config: &SolverConfig,
) -> Result<RunReport> {
    if config.variant != Variant::QMultiplied {
        return Err(Error::config("config variant must be QMultiplied"));
    }
    if !codeword.modulus().is_prime() {
        return Err(Error::config("q-multiplied variant requires a prime modulus"));
    }
    let multiplied = codeword.multiplied(q)?;
    let engine = Engine {
        codeword: &multiplied,
        rule: &config.cutoff,
        boundary: config.boundary,
        discard: config.discard_zero_vectors,
        mode: PassMode::Pairwise,
        cap: config.resolve_max_iterations(d),
        check_pigeonhole: false,
    };
    let report = engine.run(unit_basis_input(d), config.proj_kind)?;
    // primality makes orthogonality to qv equivalent to orthogonality to v;
    // checked explicitly anyway
    for out in &report.output_vectors {
        let w = IntVec::from_bigints(out.clone());
        let p = codeword.project_mod(&w)?;
        assert!(p.is_zero(), "q-multiplied output must lie in the original lattice");
    }
    Ok(report)
}

/// Algorithm over an arbitrary input set with mod-P projections, keep-first
/// boundary and zero-vector discard.
pub fn run_general(
    codeword: &DualCodeword,
    input: Vec<IntVec>,
    config: &SolverConfig,
) -> Result<RunReport> {
    if config.variant != Variant::General {
        return Err(Error::config("config variant must be General"));
    }
    if input.is_empty() {
        return Err(Error::config("general variant needs a nonempty input set"));
    }
    for v in &input {
        if v.len() != codeword.dim() {
            return Err(Error::Dimension { expected: codeword.dim(), got: v.len() });
        }
    }
    let engine = engine_for(codeword, config, input.len());
    engine.run(input, config.proj_kind)
}

/// Block algorithm on the unit basis: each target takes the best reduction
/// of arity up to k_max.
pub fn run_block(
    codeword: &DualCodeword,
    d: usize,
    k_max: usize,
    config: &SolverConfig,
) -> Result<RunReport> {
    if config.variant != Variant::Block {
        return Err(Error::config("config variant must be Block"));
    }
    if k_max < 2 {
        return Err(Error::config("block variant needs k_max >= 2"));
    }
    if d != codeword.dim() {
        return Err(Error::Dimension { expected: codeword.dim(), got: d });
    }
    let mut cfg = config.clone();
    cfg.k_max = k_max;
    let engine = engine_for(codeword, &cfg, d);
    engine.run(unit_basis_input(d), cfg.proj_kind)
}

/// Block algorithm over a caller-supplied input set.
pub fn run_block_with_input(
    codeword: &DualCodeword,
    input: Vec<IntVec>,
    k_max: usize,
    config: &SolverConfig,
) -> Result<RunReport> {
    if input.len() < 2 {
        return Err(Error::config("block variant needs at least two input vectors"));
    }
    let mut cfg = config.clone();
    cfg.variant = Variant::Block;
    cfg.k_max = k_max;
    let engine = engine_for(codeword, &cfg, input.len());
    engine.run(input, cfg.proj_kind)
}

/// The interval bracketing the triangle-inequality upper bound on output
/// length after a given number of iterations.
pub fn predict_length_bounds(iterations: u32, l0: f64, rule: &CutoffRule) -> (f64, f64) {
    let lower = l0 * 2f64.powf(iterations as f64 / 2.0);
    let growth = 1.0 + rule.max_ratio().to_f64().unwrap_or(f64::INFINITY);
    let upper = l0 * growth.powf(iterations as f64);
    (lower, upper)
}

/// Expected output length for an input set of size d_star:
/// (L0/sqrt(2)) * P^(1/(2 log2 d_star)).
pub fn predict_general_length(p: &Modulus, d_star: u64, l0: f64) -> Result<f64> {
    if d_star < 4 {
        return Err(Error::config("general-length prediction needs d_star >= 4"));
    }
    use crate::real::{ln2, ln_biguint, Real};
    let log2_dstar = Real::from_u64(d_star).ln().div(ln2());
    let exponent = Real::one().div(&log2_dstar.scale2(1));
    let p_pow = ln_biguint(p.value()).mul(&exponent).exp();
    Ok(l0 / std::f64::consts::SQRT_2 * p_pow.to_f64())
}

/// Input-set size needed for a target output length: P^(1/(2 log2 L)).
pub fn invert_general_dstar(p: &Modulus, target_len: f64) -> Result<f64> {
    if !(target_len > 1.0) {
        return Err(Error::config("target length must exceed 1"));
    }
    use crate::real::{ln2, ln_biguint, Real};
    let log2_len = Real::from_f64(target_len).ln().div(ln2());
    let exponent = Real::one().div(&log2_len.scale2(1));
    Ok(ln_biguint(p.value()).mul(&exponent).exp().to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn codeword(entries: &[u64], p: u64) -> DualCodeword {
        let m = Modulus::from_u64(p).unwrap();
        DualCodeword::new(entries.iter().map(|&e| BigInt::from(e)).collect(), m).unwrap()
    }

    fn random_codeword(d: usize, p: u64, seed: u64) -> DualCodeword {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let entries: Vec<u64> = (0..d).map(|_| rng.gen_range(0..p)).collect();
        codeword(&entries, p)
    }

    #[test]
    fn zero_entry_found_immediately() {
        let v = codeword(&[5, 0, 9], 101);
        let cfg = SolverConfig::simple(&v, 3).unwrap();
        let report = run_simple(&v, 3, &cfg).unwrap();
        assert_eq!(report.status, RunStatus::Found);
        assert_eq!(report.iterations, 0);
        assert_eq!(report.output_vectors, vec![vec![BigInt::from(0), BigInt::from(1), BigInt::from(0)]]);
        assert_eq!(report.first_norm_sqr, BigUint::from(1u8));
        assert_eq!(report.length_of_first, 1.0);
    }

    #[test]
    fn small_run_finds_lattice_vector() {
        let v = random_codeword(32, 100003, 1);
        let cfg = SolverConfig::simple(&v, 32).unwrap();
        let report = run_simple(&v, 32, &cfg).unwrap();
        assert_eq!(report.status, RunStatus::Found);
        assert!(report.iterations >= 1);
        for out in &report.output_vectors {
            let w = IntVec::from_bigints(out.clone());
            assert_eq!(v.project_raw(&w).unwrap(), BigInt::from(0));
        }
    }

    #[test]
    fn d_below_three_rejected() {
        let v = codeword(&[3, 5], 101);
        assert!(SolverConfig::simple(&v, 2).is_err());
    }

    #[test]
    fn deterministic_reports() {
        let v = random_codeword(48, 999983, 7);
        let cfg = SolverConfig::simple(&v, 48).unwrap();
        let a = run_simple(&v, 48, &cfg).unwrap();
        let b = run_simple(&v, 48, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn shrink_boundary_loses_exactly_one_per_pass() {
        let v = random_codeword(24, 100003, 3);
        let cfg = SolverConfig::simple(&v, 24).unwrap();
        let report = run_simple(&v, 24, &cfg).unwrap();
        for (i, rec) in report.trace.iter().enumerate() {
            assert_eq!(rec.list_size, 24 - i - 1);
        }
    }

    #[test]
    fn q_multiplied_q1_matches_simple_on_reduced_codeword() {
        let v = random_codeword(32, 100003, 11);
        let cfg_q = SolverConfig::q_multiplied(&v, 32, BigUint::from(1u8)).unwrap();
        let rq = run_q_multiplied(&v, &BigUint::from(1u8), 32, &cfg_q).unwrap();
        let cfg_s = SolverConfig::simple(&v, 32).unwrap();
        let rs = run_simple(&v, 32, &cfg_s).unwrap();
        assert_eq!(rq.output_vectors, rs.output_vectors);
        assert_eq!(rq.iterations, rs.iterations);
    }

    #[test]
    fn q_multiplied_outputs_lie_in_original_lattice() {
        let v = random_codeword(32, 100003, 13);
        for q in [2u64, 17, 99991] {
            let q = BigUint::from(q);
            let cfg = SolverConfig::q_multiplied(&v, 32, q.clone()).unwrap();
            let report = run_q_multiplied(&v, &q, 32, &cfg).unwrap();
            assert_eq!(report.status, RunStatus::Found);
            for out in &report.output_vectors {
                let w = IntVec::from_bigints(out.clone());
                assert_eq!(v.project_mod(&w).unwrap(), BigInt::from(0));
            }
        }
    }

    #[test]
    fn q_multiplied_rejects_composite_modulus() {
        let v = codeword(&[3, 5, 7], 100); // 100 is composite
        assert!(SolverConfig::q_multiplied(&v, 3, BigUint::from(2u8)).is_err());
    }

    #[test]
    fn q_zero_mod_p_rejected() {
        let v = codeword(&[3, 5, 7], 101);
        assert!(SolverConfig::q_multiplied(&v, 3, BigUint::from(101u8)).is_err());
        assert!(SolverConfig::q_multiplied(&v, 3, BigUint::from(202u16)).is_err());
    }

    #[test]
    fn general_on_unit_basis_with_zero_entry() {
        let v = codeword(&[5, 0, 9, 11], 101);
        let input: Vec<IntVec> = (0..4).map(|k| IntVec::unit(4, k)).collect();
        let cfg = SolverConfig::general(&v, 4).unwrap();
        let report = run_general(&v, input, &cfg).unwrap();
        assert_eq!(report.status, RunStatus::Found);
        assert_eq!(report.iterations, 0);
    }

    #[test]
    fn general_empty_input_rejected() {
        let v = codeword(&[3, 5, 7], 101);
        let cfg = SolverConfig::general(&v, 8).unwrap();
        assert!(run_general(&v, Vec::new(), &cfg).is_err());
    }

    #[test]
    fn general_keeps_list_size_modulo_discards() {
        let v = random_codeword(16, 100003, 5);
        let input: Vec<IntVec> = (0..64)
            .map(|i| {
                let mut e = vec![0i64; 16];
                e[i % 16] = 1 + (i as i64 % 3);
                e[(i * 7 + 3) % 16] -= 1;
                IntVec::from_i64(e)
            })
            .collect();
        let cfg = SolverConfig::general(&v, 64).unwrap();
        let report = run_general(&v, input, &cfg).unwrap();
        let mut prev = 64usize;
        for rec in &report.trace {
            assert!(rec.list_size <= prev, "keep-first never grows the list");
            prev = rec.list_size;
        }
    }

    #[test]
    fn block_kmax2_matches_simple_outputs() {
        // arity-2-only block pass performs the same multiset of reductions
        let v = random_codeword(24, 100003, 17);
        let cfg_b = SolverConfig::block(&v, 24, 2).unwrap();
        let rb = run_block(&v, 24, 2, &cfg_b).unwrap();
        let cfg_s = SolverConfig::simple(&v, 24).unwrap();
        let rs = run_simple(&v, 24, &cfg_s).unwrap();
        assert_eq!(rb.status, RunStatus::Found);
        assert_eq!(rs.status, RunStatus::Found);
        assert_eq!(rb.iterations, rs.iterations);
        assert_eq!(rb.first_norm_sqr, rs.first_norm_sqr);
    }

    #[test]
    fn block_no_slower_than_simple_on_most_seeds() {
        let mut wins = 0;
        for seed in 0..5u64 {
            let v = random_codeword(40, 999983, 100 + seed);
            let cfg_b = SolverConfig::block(&v, 40, 3).unwrap();
            let rb = run_block(&v, 40, 3, &cfg_b).unwrap();
            let cfg_s = SolverConfig::simple(&v, 40).unwrap();
            let rs = run_simple(&v, 40, &cfg_s).unwrap();
            if rb.iterations <= rs.iterations {
                wins += 1;
            }
        }
        assert!(wins >= 4, "block beat simple on only {wins}/5 seeds");
    }

    #[test]
    fn iteration_cap_reported() {
        let v = random_codeword(32, 999983, 23);
        let cfg = SolverConfig::simple(&v, 32).unwrap().with_max_iterations(1);
        let report = run_simple(&v, 32, &cfg).unwrap();
        assert_eq!(report.status, RunStatus::IterationCap);
        assert_eq!(report.iterations, 1);
    }

    #[test]
    fn exhaustion_on_hostile_codeword() {
        // P huge relative to d so every ratio floor fails rarely... use a
        // geometric codeword to starve the list instead
        let entries: Vec<u64> = (0..6).map(|i| 7u64.pow(i as u32 + 3)).collect();
        let v = codeword(&entries, 1_000_000_007);
        let cfg = SolverConfig::simple(&v, 6).unwrap();
        let report = run_simple(&v, 6, &cfg).unwrap();
        // either it finds a vector or the list runs out; both are legal ends
        assert!(matches!(report.status, RunStatus::Found | RunStatus::ExhaustedList));
        if report.status == RunStatus::ExhaustedList {
            assert_eq!(report.final_list_size, 1);
        }
    }

    #[test]
    fn length_bound_examples() {
        let rule = CutoffRule::new(998, Modulus::new(BigUint::from(2u8)).unwrap()).unwrap();
        // cutoff root of P = 2 at n = 998 is 1, growth factor 2
        let (lo, hi) = predict_length_bounds(0, 1.0, &rule);
        assert_eq!((lo, hi), (1.0, 1.0));
        let (lo, hi) = predict_length_bounds(53, 1.0, &rule);
        assert!((lo - 9.4906265e7).abs() / 9.4906265e7 < 1e-6);
        assert!((hi - 9.007199254740992e15).abs() / 9.007199254740992e15 < 1e-12);
        let (lo, _) = predict_length_bounds(19, 4.0, &rule);
        assert!((lo - 2896.309375740098).abs() < 1e-6);
    }

    #[test]
    fn general_length_prediction_examples() {
        // inverting at P = 10^120, L = 1000 lands near 10^6
        let p = Modulus::new(BigUint::from(10u8).pow(120)).unwrap();
        let dstar = invert_general_dstar(&p, 1000.0).unwrap();
        assert!(dstar > 5e5 && dstar < 2e6, "got {dstar}");

        // the published recipe estimates
        let p40 = Modulus::new(BigUint::from(186u8) * BigUint::from(10u8).pow(118)).unwrap();
        let est = predict_general_length(&p40, 8_000_000, 4.0).unwrap();
        assert!((est - 1185.5).abs() < 0.5, "got {est}");
        let p42 = Modulus::new(BigUint::from(181u8) * BigUint::from(10u8).pow(124)).unwrap();
        let est = predict_general_length(&p42, 19_200_000, 4.0).unwrap();
        assert!((est - 1150.22).abs() < 0.5, "got {est}");
    }

    #[test]
    fn lineage_depth_recorded() {
        let v = random_codeword(32, 100003, 29);
        let cfg = SolverConfig::simple(&v, 32).unwrap();
        let report = run_simple(&v, 32, &cfg).unwrap();
        assert!(report.lineage_of_first <= report.iterations);
        if report.iterations > 0 {
            assert!(report.lineage_of_first >= 1);
        }
    }
}
