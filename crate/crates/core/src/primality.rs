//! Probabilistic primality testing for arbitrary-precision moduli.

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Number of random Miller-Rabin bases; error probability < 4^-64 < 2^-80.
const ROUNDS: usize = 64;

/// Trial-division primes below 1024.
fn small_primes() -> Vec<u64> {
    let mut sieve = vec![true; 1024];
    sieve[0] = false;
    sieve[1] = false;
    for i in 2..1024usize {
        if sieve[i] {
            let mut j = i * i;
            while j < 1024 {
                sieve[j] = false;
                j += i;
            }
        }
    }
    (0..1024).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

/// Miller-Rabin with trial division. Deterministic: the base stream is
/// seeded from a fixed constant so repeated queries agree.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u8);
    if n < &two {
        return false;
    }
    for p in small_primes() {
        let p = BigUint::from(p);
        if &p * &p > *n {
            break;
        }
        if n.is_multiple_of(&p) {
            return n == &p;
        }
    }
    if n < &BigUint::from(1024u32 * 1024) {
        // fully covered by trial division above
        return true;
    }

    // n - 1 = d * 2^s with d odd
    let n_minus_1 = n - BigUint::one();
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    let mut rng = ChaCha12Rng::seed_from_u64(0x4d52_6261_7365_7374); // fixed base stream
    'witness: for _ in 0..ROUNDS {
        let a = rng.gen_biguint_range(&two, &(n - &two));
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s.saturating_sub(1) {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest probable prime >= n (n >= 2).
pub fn next_prime_at_least(n: &BigUint) -> BigUint {
    let mut c = n.clone();
    if c < BigUint::from(2u8) {
        c = BigUint::from(2u8);
    }
    if c == BigUint::from(2u8) {
        return c;
    }
    if c.is_even() {
        c += BigUint::one();
    }
    loop {
        if is_probable_prime(&c) {
            return c;
        }
        c += BigUint::from(2u8);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    #[test]
    fn small_values() {
        let primes = [2u64, 3, 5, 7, 11, 13, 97, 1009, 1000003, 100000007];
        for p in primes {
            assert!(is_probable_prime(&BigUint::from(p)), "{p} should be prime");
        }
        let composites = [1u64, 4, 6, 9, 15, 1001, 1000001, 1024 * 1024 + 1];
        for c in composites {
            assert!(!is_probable_prime(&BigUint::from(c)), "{c} should be composite");
        }
    }

    #[test]
    fn large_known_values() {
        // primes listed with the log-uniform benchmark lattices
        for s in [
            "100529784361",
            "1238926361552897",
            "48112959837082048697",
            "9876543210230123456789",
            "1000000000000000035000061",
            "999999999333555557777777221",
            "27064032706411",
        ] {
            let p = BigUint::from_str(s).unwrap();
            assert!(is_probable_prime(&p), "{s} should be prime");
        }
        // Mersenne-style composite and an even giant
        let c = BigUint::from(2u8).pow(101) - BigUint::one();
        assert!(!is_probable_prime(&c));
        assert!(!is_probable_prime(&BigUint::from(10u8).pow(40)));
    }

    #[test]
    fn carmichael_numbers_rejected() {
        for c in [561u64, 1105, 1729, 41041, 825265] {
            assert!(!is_probable_prime(&BigUint::from(c)), "{c} is Carmichael");
        }
    }

    #[test]
    fn next_prime_walks_forward() {
        assert_eq!(next_prime_at_least(&BigUint::from(14u8)), BigUint::from(17u8));
        assert_eq!(next_prime_at_least(&BigUint::from(17u8)), BigUint::from(17u8));
        let p = next_prime_at_least(&BigUint::from(10u8).pow(12));
        assert!(is_probable_prime(&p));
    }
}
