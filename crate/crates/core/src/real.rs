//! Fixed-precision binary floating point on top of `BigInt`.
//!
//! The prediction models and lattice diagnostics quote values to 6
//! significant figures but are derived from integers with hundreds of
//! digits, so they are evaluated here at a fixed 320-bit mantissa
//! (~96 decimal digits). Logarithms of huge integers go through the
//! exact bit length plus a mantissa correction; no `f64` appears in any
//! computation path, only in the final conversions for reporting.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::sync::OnceLock;

/// Mantissa width in bits.
const PREC: u64 = 320;
/// Extra bits carried through division and series evaluation.
const GUARD: u64 = 16;

/// A nonzero value is kept normalized with exactly `PREC` mantissa bits.
#[derive(Debug, Clone)]
pub struct Real {
    mant: BigInt,
    exp: i64,
}

impl Real {
    pub fn zero() -> Self {
        Real { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Real::from_u64(1)
    }

    pub fn from_u64(v: u64) -> Self {
        Real::from_bigint(&BigInt::from(v))
    }

    pub fn from_i64(v: i64) -> Self {
        Real::from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        Real { mant: v.clone(), exp: 0 }.normalized()
    }

    pub fn from_biguint(v: &BigUint) -> Self {
        Real::from_bigint(&BigInt::from_biguint(Sign::Plus, v.clone()))
    }

    /// Exact ratio of two integers, rounded to working precision.
    pub fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        assert!(!den.is_zero(), "division by zero");
        if num.is_zero() {
            return Real::zero();
        }
        let shift = PREC + GUARD + den.bits().max(1);
        let q = (num << shift) / den;
        Real { mant: q, exp: -(shift as i64) }.normalized()
    }

    /// Parse a plain decimal literal such as `-12.345`; used mostly by tests
    /// that compare against independently computed constants.
    pub fn from_decimal_str(s: &str) -> Option<Self> {
        let s = s.trim();
        let (digits, frac) = match s.find('.') {
            Some(p) => {
                let mut d = String::with_capacity(s.len());
                d.push_str(&s[..p]);
                d.push_str(&s[p + 1..]);
                (d, (s.len() - p - 1) as u32)
            }
            None => (s.to_string(), 0),
        };
        let num: BigInt = digits.parse().ok()?;
        let den = BigInt::from(10u32).pow(frac);
        Some(Real::from_ratio(&num, &den))
    }

    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "non-finite input");
        let (m, e, s) = num_traits::Float::integer_decode(v);
        let mant = BigInt::from(m) * BigInt::from(s as i64);
        Real { mant, exp: e as i64 }.normalized()
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let bits = self.mant.bits();
        if bits > PREC {
            let shift = bits - PREC;
            // round to nearest, half away from zero
            let half = BigInt::from(1u8) << (shift - 1);
            let adj = if self.mant.is_negative() { -half } else { half };
            self.mant = (self.mant + adj) >> shift;
            self.exp += shift as i64;
            // rounding can carry into one extra bit
            if self.mant.bits() > PREC {
                self.mant >>= 1;
                self.exp += 1;
            }
        } else if bits < PREC {
            let shift = PREC - bits;
            self.mant <<= shift;
            self.exp -= shift as i64;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn neg(&self) -> Self {
        Real { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Real { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn add(&self, other: &Real) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (hi, lo) = if self.exp >= other.exp { (self, other) } else { (other, self) };
        let diff = (hi.exp - lo.exp) as u64;
        if diff > PREC + GUARD {
            return hi.clone();
        }
        let mant = (&hi.mant << diff) + &lo.mant;
        Real { mant, exp: lo.exp }.normalized()
    }

    pub fn sub(&self, other: &Real) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Real) -> Self {
        Real { mant: &self.mant * &other.mant, exp: self.exp + other.exp }.normalized()
    }

    pub fn div(&self, other: &Real) -> Self {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Real::zero();
        }
        let shift = PREC + GUARD;
        let q = (&self.mant << shift) / &other.mant;
        Real { mant: q, exp: self.exp - other.exp - shift as i64 }.normalized()
    }

    pub fn mul_u64(&self, k: u64) -> Self {
        Real { mant: &self.mant * BigInt::from(k), exp: self.exp }.normalized()
    }

    pub fn div_u64(&self, k: u64) -> Self {
        self.div(&Real::from_u64(k))
    }

    /// Multiply by 2^k exactly.
    pub fn scale2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Real::zero();
        }
        Real { mant: self.mant.clone(), exp: self.exp + k }
    }

    pub fn cmp(&self, other: &Real) -> Ordering {
        let d = self.sub(other);
        if d.is_zero() {
            Ordering::Equal
        } else if d.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        // keep the top 64 bits and apply the remaining exponent in f64
        let bits = self.mant.bits();
        let shift = bits.saturating_sub(64);
        let head = (&self.mant >> shift).to_f64().unwrap_or(0.0);
        let e = self.exp + shift as i64;
        if e > 2000 {
            return if self.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        if e < -2000 {
            return 0.0;
        }
        // split the power to stay inside f64's exponent range per step
        let mut x = head;
        let mut e = e;
        while e > 0 {
            let step = e.min(512);
            x *= 2f64.powi(step as i32);
            e -= step;
        }
        while e < 0 {
            let step = (-e).min(512);
            x /= 2f64.powi(step as i32);
            e += step;
        }
        x
    }

    pub fn floor_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as u64;
        }
        let shift = (-self.exp) as u64;
        if shift >= self.mant.bits() + 1 {
            return if self.is_negative() { BigInt::from(-1) } else { BigInt::zero() };
        }
        // BigInt shr is an arithmetic shift (floor division by 2^k)
        &self.mant >> shift
    }

    pub fn ceil_bigint(&self) -> BigInt {
        let f = self.floor_bigint();
        if self.sub(&Real::from_bigint(&f)).is_zero() {
            f
        } else {
            f + 1
        }
    }

    /// Round half away from zero.
    pub fn round_bigint(&self) -> BigInt {
        let half = Real::from_ratio(&BigInt::from(1), &BigInt::from(2));
        if self.is_negative() {
            self.sub(&half).ceil_bigint()
        } else {
            self.add(&half).floor_bigint()
        }
    }

    /// Natural logarithm; panics on non-positive input.
    pub fn ln(&self) -> Self {
        assert!(!self.is_zero() && !self.is_negative(), "ln of non-positive value");
        // self = f * 2^k with f = mant/2^(PREC-1) in [1, 2)
        let k = self.exp + (PREC as i64 - 1);
        let f = Real { mant: self.mant.clone(), exp: -(PREC as i64 - 1) };
        // ln f = 2 atanh((f-1)/(f+1)), t in [0, 1/3)
        let one = Real::one();
        let t = f.sub(&one).div(&f.add(&one));
        let ln_f = atanh_series(&t).scale2(1);
        ln_f.add(&ln2().mul(&Real::from_i64(k)))
    }

    /// e^self. The result exponent is unbounded in i64, so no overflow
    /// handling is needed for any argument this crate produces.
    pub fn exp(&self) -> Self {
        if self.is_zero() {
            return Real::one();
        }
        let k_big = self.div(ln2()).round_bigint();
        let k = k_big.to_i64().expect("exp argument out of range");
        let r = self.sub(&ln2().mul(&Real::from_bigint(&k_big)));
        // Taylor series of e^r for |r| <= ln2/2 + eps
        let mut term = Real::one();
        let mut sum = Real::one();
        let mut i = 1u64;
        loop {
            term = term.mul(&r).div_u64(i);
            if term.is_zero() || term.exp + (PREC as i64) < -((PREC + GUARD) as i64) {
                break;
            }
            sum = sum.add(&term);
            i += 1;
        }
        sum.scale2(k)
    }

    /// Square root; panics on negative input.
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of negative value");
        if self.is_zero() {
            return Real::zero();
        }
        // shift to an even exponent with ~2*PREC mantissa bits
        let mut shift = PREC as i64;
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m = (&self.mant << shift as u64).to_biguint().unwrap();
        let root = m.sqrt();
        Real {
            mant: BigInt::from_biguint(Sign::Plus, root),
            exp: (self.exp - shift) / 2,
        }
        .normalized()
    }

    /// self^y for positive self.
    pub fn powf(&self, y: &Real) -> Self {
        if y.is_zero() {
            return Real::one();
        }
        self.ln().mul(y).exp()
    }
}

fn atanh_series(t: &Real) -> Real {
    // t + t^3/3 + t^5/5 + ...
    let t2 = t.mul(t);
    let mut pow = t.clone();
    let mut sum = t.clone();
    let mut n = 3u64;
    loop {
        pow = pow.mul(&t2);
        let term = pow.div_u64(n);
        if term.is_zero() || term.exp + (PREC as i64) < sum.exp - GUARD as i64 {
            break;
        }
        sum = sum.add(&term);
        n += 2;
    }
    sum
}

fn atan_inv(n: u64) -> Real {
    // arctan(1/n) = 1/n - 1/(3 n^3) + 1/(5 n^5) - ...
    let inv = Real::one().div_u64(n);
    let inv2 = inv.mul(&inv);
    let mut pow = inv.clone();
    let mut sum = inv.clone();
    let mut k = 3u64;
    let mut sign = true; // next term is negative
    loop {
        pow = pow.mul(&inv2);
        let term = pow.div_u64(k);
        if term.is_zero() || term.exp + (PREC as i64) < sum.exp - GUARD as i64 {
            break;
        }
        sum = if sign { sum.sub(&term) } else { sum.add(&term) };
        sign = !sign;
        k += 2;
    }
    sum
}

static LN2: OnceLock<Real> = OnceLock::new();
static PI: OnceLock<Real> = OnceLock::new();

/// ln 2 at working precision.
pub fn ln2() -> &'static Real {
    LN2.get_or_init(|| {
        // ln 2 = 2 atanh(1/3)
        let third = Real::one().div_u64(3);
        atanh_series(&third).scale2(1)
    })
}

/// pi at working precision (Machin's formula).
pub fn pi() -> &'static Real {
    PI.get_or_init(|| {
        let a = atan_inv(5).mul_u64(16);
        let b = atan_inv(239).mul_u64(4);
        a.sub(&b)
    })
}

/// ln of an exact positive integer.
pub fn ln_biguint(v: &BigUint) -> Real {
    Real::from_biguint(v).ln()
}

/// log base 2 of an exact positive integer.
pub fn log2_biguint(v: &BigUint) -> Real {
    ln_biguint(v).div(ln2())
}
