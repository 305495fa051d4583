//! Exact projection arithmetic and the single-step pairwise Euclidean
//! reduction that every algorithm variant is built on.

use crate::error::{Error, Result};
use crate::primality::is_probable_prime;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

/// The modulus P of the code, with a lazily computed primality flag.
#[derive(Debug)]
pub struct Modulus {
    value: BigUint,
    prime: OnceLock<bool>,
}

impl Modulus {
    /// P must be at least 2.
    pub fn new(value: BigUint) -> Result<Self> {
        if value < BigUint::from(2u8) {
            return Err(Error::config("modulus must be >= 2"));
        }
        Ok(Modulus { value, prime: OnceLock::new() })
    }

    pub fn from_u64(v: u64) -> Result<Self> {
        Modulus::new(BigUint::from(v))
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn value_int(&self) -> BigInt {
        BigInt::from_biguint(Sign::Plus, self.value.clone())
    }

    /// Miller-Rabin with 64 random bases plus trial division, cached.
    pub fn is_prime(&self) -> bool {
        *self.prime.get_or_init(|| is_probable_prime(&self.value))
    }
}

impl Clone for Modulus {
    fn clone(&self) -> Self {
        let prime = OnceLock::new();
        if let Some(p) = self.prime.get() {
            let _ = prime.set(*p);
        }
        Modulus { value: self.value.clone(), prime }
    }
}

impl PartialEq for Modulus {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}
impl Eq for Modulus {}

/// Whether cached projections are raw dot products or canonical residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjKind {
    /// The exact integer dot product (usable when inputs keep it bounded).
    Raw,
    /// The dot product reduced into [0, P).
    ModP,
}

/// A length-d vector over Z_P defining the co-dimension-1 constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCodeword {
    entries: Vec<BigInt>,
    modulus: Modulus,
}

impl DualCodeword {
    /// Entries must already be canonical residues in [0, P), not all zero.
    pub fn new(entries: Vec<BigInt>, modulus: Modulus) -> Result<Self> {
        let p = modulus.value_int();
        for e in &entries {
            if e.is_negative() || *e >= p {
                return Err(Error::config("codeword entry outside [0, P)"));
            }
        }
        if entries.iter().all(|e| e.is_zero()) {
            return Err(Error::config("codeword must have a nonzero entry"));
        }
        Ok(DualCodeword { entries, modulus })
    }

    /// Reduce arbitrary integers into [0, P) first.
    pub fn from_unreduced(entries: Vec<BigInt>, modulus: Modulus) -> Result<Self> {
        let p = modulus.value_int();
        let reduced = entries.into_iter().map(|e| e.mod_floor(&p)).collect();
        DualCodeword::new(reduced, modulus)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    /// The codeword q*v mod P used to sample further lattice vectors.
    pub fn multiplied(&self, q: &BigUint) -> Result<Self> {
        let p = self.modulus.value_int();
        let q = BigInt::from_biguint(Sign::Plus, q.clone());
        if q.mod_floor(&p).is_zero() {
            return Err(Error::config("q must be nonzero mod P"));
        }
        let entries = self.entries.iter().map(|e| (e * &q).mod_floor(&p)).collect();
        DualCodeword::new(entries, self.modulus.clone())
    }

    /// Raw projection: the exact dot product w . v.
    pub fn project_raw(&self, w: &IntVec) -> Result<BigInt> {
        if w.len() != self.entries.len() {
            return Err(Error::Dimension { expected: self.entries.len(), got: w.len() });
        }
        Ok(w.dot(&self.entries))
    }

    /// Modular projection: the dot product reduced into [0, P).
    pub fn project_mod(&self, w: &IntVec) -> Result<BigInt> {
        Ok(self.project_raw(w)?.mod_floor(&self.modulus.value_int()))
    }

    pub fn project(&self, w: &IntVec, kind: ProjKind) -> Result<BigInt> {
        match kind {
            ProjKind::Raw => self.project_raw(w),
            ProjKind::ModP => self.project_mod(w),
        }
    }
}

/// Dense integer vector. Entries live in machine words until an update
/// would overflow, then the vector promotes to big integers; all arithmetic
/// is exact either way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntVec {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

impl IntVec {
    pub fn zeros(d: usize) -> Self {
        IntVec::Small(vec![0; d])
    }

    pub fn unit(d: usize, k: usize) -> Self {
        let mut v = vec![0i64; d];
        v[k] = 1;
        IntVec::Small(v)
    }

    pub fn from_i64(v: Vec<i64>) -> Self {
        IntVec::Small(v)
    }

    pub fn from_bigints(v: Vec<BigInt>) -> Self {
        // stay in the small representation when everything fits
        if v.iter().all(|e| e.to_i64().is_some()) {
            IntVec::Small(v.iter().map(|e| e.to_i64().unwrap()).collect())
        } else {
            IntVec::Big(v)
        }
    }

    pub fn len(&self) -> usize {
        match self {
            IntVec::Small(v) => v.len(),
            IntVec::Big(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_zero(&self) -> bool {
        match self {
            IntVec::Small(v) => v.iter().all(|&e| e == 0),
            IntVec::Big(v) => v.iter().all(|e| e.is_zero()),
        }
    }

    pub fn get(&self, i: usize) -> BigInt {
        match self {
            IntVec::Small(v) => BigInt::from(v[i]),
            IntVec::Big(v) => v[i].clone(),
        }
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        match self {
            IntVec::Small(v) => v.iter().map(|&e| BigInt::from(e)).collect(),
            IntVec::Big(v) => v.clone(),
        }
    }

    fn to_big(&self) -> Vec<BigInt> {
        self.to_bigints()
    }

    /// self - r*other, exact.
    pub fn sub_scaled(&self, other: &IntVec, r: &BigInt) -> IntVec {
        debug_assert_eq!(self.len(), other.len());
        if let (IntVec::Small(a), IntVec::Small(b), Some(rs)) = (self, other, r.to_i64()) {
            let mut out = Vec::with_capacity(a.len());
            let mut ok = true;
            for (&x, &y) in a.iter().zip(b) {
                match rs.checked_mul(y).and_then(|p| x.checked_sub(p)) {
                    Some(v) => out.push(v),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return IntVec::Small(out);
            }
        }
        let a = self.to_big();
        let b = other.to_big();
        IntVec::Big(a.into_iter().zip(b).map(|(x, y)| x - r * y).collect())
    }

    /// self - other, exact.
    pub fn sub(&self, other: &IntVec) -> IntVec {
        self.sub_scaled(other, &BigInt::from(1))
    }

    pub fn neg(&self) -> IntVec {
        match self {
            IntVec::Small(v) => {
                if v.iter().all(|&e| e != i64::MIN) {
                    IntVec::Small(v.iter().map(|&e| -e).collect())
                } else {
                    IntVec::Big(v.iter().map(|&e| -BigInt::from(e)).collect())
                }
            }
            IntVec::Big(v) => IntVec::Big(v.iter().map(|e| -e).collect()),
        }
    }

    /// Exact dot product with big-integer coefficients.
    pub fn dot(&self, coeffs: &[BigInt]) -> BigInt {
        debug_assert_eq!(self.len(), coeffs.len());
        let mut acc = BigInt::zero();
        match self {
            IntVec::Small(v) => {
                for (&e, c) in v.iter().zip(coeffs) {
                    if e != 0 {
                        acc += c * e;
                    }
                }
            }
            IntVec::Big(v) => {
                for (e, c) in v.iter().zip(coeffs) {
                    if !e.is_zero() {
                        acc += c * e;
                    }
                }
            }
        }
        acc
    }

    /// Exact squared Euclidean norm.
    pub fn norm_sqr(&self) -> BigUint {
        match self {
            IntVec::Small(v) => {
                let mut acc: u128 = 0;
                let mut overflow = false;
                for &e in v {
                    let sq = (e as i128).unsigned_abs().pow(2) as u128;
                    match acc.checked_add(sq) {
                        Some(s) => acc = s,
                        None => {
                            overflow = true;
                            break;
                        }
                    }
                }
                if !overflow {
                    return BigUint::from(acc);
                }
                let mut big = BigUint::zero();
                for &e in v {
                    let a = BigUint::from(e.unsigned_abs());
                    big += &a * &a;
                }
                big
            }
            IntVec::Big(v) => {
                let mut acc = BigUint::zero();
                for e in v {
                    let m = e.magnitude();
                    acc += m * m;
                }
                acc
            }
        }
    }
}

/// Exact integer form of the ratio cutoff r <= P^(1/n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutoffRule {
    denom: u32,
    modulus: Modulus,
}

impl CutoffRule {
    /// `denom` is the d-2 (or d*-2) in the exponent; must be >= 1.
    pub fn new(denom: u32, modulus: Modulus) -> Result<Self> {
        if denom == 0 {
            return Err(Error::config("cutoff exponent denominator must be >= 1"));
        }
        Ok(CutoffRule { denom, modulus })
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    /// True iff r^n <= P, evaluated with exact integer exponentiation.
    pub fn accepts(&self, r: &BigUint) -> bool {
        if r <= &BigUint::from(1u8) {
            return true; // 0 and 1 always pass since P >= 2
        }
        let p = self.modulus.value();
        // quick reject: r >= 2^(b-1) implies r^n >= 2^((b-1) n)
        let rb = r.bits();
        if (rb - 1).saturating_mul(self.denom as u64) > p.bits() {
            return false;
        }
        r.pow(self.denom) <= *p
    }

    /// floor(P^(1/n)), the largest ratio the rule accepts.
    pub fn max_ratio(&self) -> BigUint {
        self.modulus.value().nth_root(self.denom)
    }
}

/// An integer vector paired with its cached projection value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackedVector {
    pub vec: IntVec,
    pub proj: BigInt,
    pub kind: ProjKind,
}

impl TrackedVector {
    /// Compute and cache the projection of `vec`.
    pub fn new(vec: IntVec, codeword: &DualCodeword, kind: ProjKind) -> Result<Self> {
        let proj = codeword.project(&vec, kind)?;
        Ok(TrackedVector { vec, proj, kind })
    }

    /// Recompute the projection from scratch; must equal the cache.
    pub fn recomputed_proj(&self, codeword: &DualCodeword) -> Result<BigInt> {
        codeword.project(&self.vec, self.kind)
    }

    pub fn norm_sqr(&self) -> BigUint {
        self.vec.norm_sqr()
    }
}

/// One Euclidean step on a projection-sorted pair.
///
/// Preconditions: `0 < smaller.proj <= larger.proj`, same kind. When the
/// cutoff accepts the ratio floor the reduced vector replaces the larger
/// one; otherwise the smaller vector is returned unchanged.
pub fn reduce_pair(
    smaller: &TrackedVector,
    larger: &TrackedVector,
    rule: &CutoffRule,
) -> Result<TrackedVector> {
    if smaller.proj.is_zero() {
        return Err(Error::ZeroPivot);
    }
    debug_assert!(smaller.proj <= larger.proj, "pair not sorted by projection");
    debug_assert_eq!(smaller.kind, larger.kind);
    let r = &larger.proj / &smaller.proj;
    let r_mag = r.magnitude().clone();
    if !rule.accepts(&r_mag) {
        return Ok(smaller.clone());
    }
    let vec = larger.vec.sub_scaled(&smaller.vec, &r);
    let mut proj = &larger.proj - &r * &smaller.proj;
    if smaller.kind == ProjKind::ModP {
        proj = proj.mod_floor(&rule.modulus().value_int());
    }
    Ok(TrackedVector { vec, proj, kind: smaller.kind })
}
