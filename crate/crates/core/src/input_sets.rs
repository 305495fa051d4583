//! Seeded generators for input-set families and dual-codeword
//! distributions.
//!
//! Every generator is a pure function of (parameters, seed). Randomness
//! comes from ChaCha12 with per-vector substreams (`set_stream(index)`), so
//! vectors can be generated independently and in parallel without changing
//! the output.

use crate::error::{Error, Result};
use crate::projection::{DualCodeword, IntVec, Modulus};
use crate::real::Real;
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecipeKind {
    UnitBasis,
    SparseSigned,
    Pattern,
}

/// Description of one input-set family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputRecipe {
    pub kind: RecipeKind,
    pub count: usize,
    pub support_size: usize,
    pub plus_count: usize,
    pub minus_count: usize,
    pub pattern_values: Vec<i64>,
    pub seed: u64,
}

impl InputRecipe {
    pub fn sparse_signed(count: usize, plus: usize, minus: usize, seed: u64) -> Self {
        InputRecipe {
            kind: RecipeKind::SparseSigned,
            count,
            support_size: plus + minus,
            plus_count: plus,
            minus_count: minus,
            pattern_values: Vec::new(),
            seed,
        }
    }

    pub fn pattern(count: usize, values: Vec<i64>, seed: u64) -> Self {
        InputRecipe {
            kind: RecipeKind::Pattern,
            count,
            support_size: values.len(),
            plus_count: 0,
            minus_count: 0,
            pattern_values: values,
            seed,
        }
    }

    fn validate(&self, d: usize) -> Result<()> {
        if self.support_size > d {
            return Err(Error::config("support size exceeds dimension"));
        }
        match self.kind {
            RecipeKind::UnitBasis => Ok(()),
            RecipeKind::SparseSigned => {
                if self.plus_count + self.minus_count != self.support_size {
                    return Err(Error::config("plus + minus must equal support size"));
                }
                Ok(())
            }
            RecipeKind::Pattern => {
                if self.pattern_values.len() != self.support_size {
                    return Err(Error::config("pattern length must equal support size"));
                }
                Ok(())
            }
        }
    }

    pub fn generate(&self, d: usize) -> Result<Vec<IntVec>> {
        self.validate(d)?;
        match self.kind {
            RecipeKind::UnitBasis => Ok(unit_basis(d)),
            RecipeKind::SparseSigned | RecipeKind::Pattern => sparse_signed(d, self),
        }
    }
}

fn substream(seed: u64, index: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// The canonical basis e_1..e_d.
pub fn unit_basis(d: usize) -> Vec<IntVec> {
    (0..d).map(|k| IntVec::unit(d, k)).collect()
}

/// Vectors supported on `support_size` distinct random indices. Sparse
/// signed recipes place +1 on the first `plus_count` sampled indices and -1
/// on the rest; pattern recipes place `pattern_values` in sampling order.
pub fn sparse_signed(d: usize, recipe: &InputRecipe) -> Result<Vec<IntVec>> {
    recipe.validate(d)?;
    let mut out = Vec::with_capacity(recipe.count);
    for i in 0..recipe.count {
        let mut rng = substream(recipe.seed, i as u64);
        let mut picked: Vec<usize> = Vec::with_capacity(recipe.support_size);
        while picked.len() < recipe.support_size {
            let idx = rng.gen_range(0..d);
            if !picked.contains(&idx) {
                picked.push(idx);
            }
        }
        let mut v = vec![0i64; d];
        for (j, &idx) in picked.iter().enumerate() {
            v[idx] = match recipe.kind {
                RecipeKind::Pattern => recipe.pattern_values[j],
                _ => {
                    if j < recipe.plus_count {
                        1
                    } else {
                        -1
                    }
                }
            };
        }
        out.push(IntVec::from_i64(v));
    }
    Ok(out)
}

/// Uniform draw from [0, P) by rejection from the enclosing power of two,
/// so there is no modulo bias.
fn uniform_below(rng: &mut ChaCha12Rng, p: &BigUint) -> BigUint {
    let bits = (p - BigUint::one()).bits().max(1);
    let bytes = bits.div_ceil(8) as usize;
    let spare = (bytes as u64) * 8 - bits;
    let mask = 0xffu8 >> spare;
    loop {
        let mut buf = vec![0u8; bytes];
        rng.fill_bytes(&mut buf);
        buf[bytes - 1] &= mask;
        let x = BigUint::from_bytes_le(&buf);
        if &x < p {
            return x;
        }
    }
}

/// Codeword with i.i.d. uniform entries on [0, P).
pub fn sample_dual_uniform(d: usize, modulus: &Modulus, seed: u64) -> Result<DualCodeword> {
    let mut rng = substream(seed, 0);
    loop {
        let entries: Vec<BigInt> = (0..d)
            .map(|_| BigInt::from_biguint(Sign::Plus, uniform_below(&mut rng, modulus.value())))
            .collect();
        if entries.iter().any(|e| !e.is_zero()) {
            return DualCodeword::new(entries, modulus.clone());
        }
        // an all-zero draw is astronomically unlikely; redraw to keep the
        // codeword invariant
    }
}

/// Codeword with entries round(exp(u)), u uniform on [ln sqrt(P), ln P],
/// clamped into [0, P-1]. The exponential is evaluated in fixed
/// high-precision arithmetic so results are identical on every platform.
pub fn sample_dual_loguniform(d: usize, modulus: &Modulus, seed: u64) -> Result<DualCodeword> {
    if modulus.value() < &BigUint::from(4u8) {
        return Err(Error::config("log-uniform sampling needs P >= 4"));
    }
    let mut rng = substream(seed, 0);
    let ln_hi = crate::real::ln_biguint(modulus.value());
    let ln_lo = ln_hi.mul(&Real::from_ratio(&1.into(), &2.into()));
    let span = ln_hi.sub(&ln_lo);
    let p_minus_1 = BigInt::from_biguint(Sign::Plus, modulus.value() - BigUint::one());
    let half = Real::from_ratio(&1.into(), &2.into());
    let entries: Vec<BigInt> = (0..d)
        .map(|_| {
            let t = Real::from_u64(rng.next_u64()).scale2(-64);
            let u = ln_lo.add(&span.mul(&t));
            // round half up, then clamp
            let x = u.exp().add(&half).floor_bigint();
            if x > p_minus_1 {
                p_minus_1.clone()
            } else if x.is_negative() {
                BigInt::zero()
            } else {
                x
            }
        })
        .collect();
    DualCodeword::new(entries, modulus.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn unit_basis_shape() {
        let basis = unit_basis(3);
        assert_eq!(basis.len(), 3);
        for (k, v) in basis.iter().enumerate() {
            assert_eq!(v.norm_sqr(), BigUint::one());
            assert_eq!(v.get(k), BigInt::one());
        }
        // pairwise orthogonal
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let dot = basis[i].dot(&basis[j].to_bigints());
                    assert!(dot.is_zero());
                }
            }
        }
    }

    #[test]
    fn sparse_signed_exact_lengths() {
        let d = 40;
        let r16 = InputRecipe::sparse_signed(25, 8, 8, 1);
        for v in sparse_signed(d, &r16).unwrap() {
            assert_eq!(v.norm_sqr(), BigUint::from(16u8));
        }
        let r15 = InputRecipe::sparse_signed(25, 8, 7, 2);
        for v in sparse_signed(d, &r15).unwrap() {
            assert_eq!(v.norm_sqr(), BigUint::from(15u8));
        }
        let pat = InputRecipe::pattern(25, vec![1, 2, -1, -1, -1], 3);
        for v in sparse_signed(d, &pat).unwrap() {
            assert_eq!(v.norm_sqr(), BigUint::from(8u8));
        }
    }

    #[test]
    fn sparse_signed_sign_counts() {
        let r = InputRecipe::sparse_signed(10, 8, 7, 9);
        for v in sparse_signed(40, &r).unwrap() {
            let e = v.to_bigints();
            let plus = e.iter().filter(|x| **x == BigInt::one()).count();
            let minus = e.iter().filter(|x| **x == BigInt::from(-1)).count();
            assert_eq!((plus, minus), (8, 7));
        }
    }

    #[test]
    fn support_larger_than_dimension_rejected() {
        let r = InputRecipe::sparse_signed(1, 8, 8, 0);
        assert!(sparse_signed(10, &r).is_err());
    }

    #[test]
    fn generators_are_seed_deterministic() {
        let r = InputRecipe::sparse_signed(20, 8, 8, 42);
        assert_eq!(sparse_signed(64, &r).unwrap(), sparse_signed(64, &r).unwrap());
        let m = Modulus::from_u64(1_000_003).unwrap();
        let a = sample_dual_uniform(50, &m, 7).unwrap();
        let b = sample_dual_uniform(50, &m, 7).unwrap();
        assert_eq!(a, b);
        let c = sample_dual_uniform(50, &m, 8).unwrap();
        assert_ne!(a, c);
        let lu = sample_dual_loguniform(50, &m, 7).unwrap();
        assert_eq!(lu, sample_dual_loguniform(50, &m, 7).unwrap());
    }

    #[test]
    fn uniform_entries_in_range() {
        let m = Modulus::from_u64(97).unwrap();
        let cw = sample_dual_uniform(2000, &m, 3).unwrap();
        for e in cw.entries() {
            assert!(*e >= BigInt::zero() && *e < BigInt::from(97));
        }
    }

    #[test]
    fn uniform_chi_square_16_bins() {
        // d = 10^5 entries over P = 2^64, binned by the top 4 bits; the
        // statistic is compared against the df=15 tail point at 1e-6
        let m = Modulus::new(BigUint::from(1u8) << 64).unwrap();
        let cw = sample_dual_uniform(100_000, &m, 12345).unwrap();
        let mut bins = [0u64; 16];
        for e in cw.entries() {
            let v = e.magnitude().to_u64().unwrap_or(u64::MAX);
            bins[(v >> 60) as usize] += 1;
        }
        let expected = 100_000.0 / 16.0;
        let chi2: f64 = bins.iter().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
        assert!(chi2 < 56.4934, "chi-square statistic {chi2} rejects uniformity");
    }

    #[test]
    fn loguniform_respects_cutoffs() {
        let p = 1_000_000_000_000u64; // 10^12
        let m = Modulus::from_u64(p).unwrap();
        let cw = sample_dual_loguniform(2000, &m, 5).unwrap();
        let sqrt_p = BigInt::from(1_000_000u64);
        for e in cw.entries() {
            assert!(*e >= &sqrt_p - 1, "entry {e} below the lower scale cutoff");
            assert!(*e < BigInt::from(p));
        }
    }

    #[test]
    fn loguniform_median_near_p34() {
        let m = Modulus::new(BigUint::from(1u8) << 64).unwrap();
        let cw = sample_dual_loguniform(100_000, &m, 99).unwrap();
        let mut entries: Vec<BigInt> = cw.entries().to_vec();
        entries.sort();
        let median = entries[entries.len() / 2].to_f64().unwrap();
        let p34 = 2f64.powf(48.0); // (2^64)^(3/4)
        assert!(median > p34 / 2.0 && median < p34 * 2.0, "median {median:e} vs {p34:e}");
    }

    #[test]
    fn loguniform_needs_p_at_least_4() {
        let m = Modulus::from_u64(3).unwrap();
        assert!(sample_dual_loguniform(4, &m, 0).is_err());
    }
}
