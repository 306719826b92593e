//! Primality testing and random prime generation for the modular rank path.

use rand::Rng;

/// Deterministic Miller-Rabin for `u64`. The base set below is known to be
/// exact for all inputs up to 2^64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A uniformly random prime in `[2^60, 2^61)`.
pub fn random_prime_61(rng: &mut impl Rng) -> u64 {
    loop {
        let candidate = rng.random_range(1u64 << 60..1u64 << 61) | 1;
        if is_prime_u64(candidate) {
            return candidate;
        }
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`, via Fermat.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_primes_classified() {
        let primes = [2u64, 3, 5, 7, 11, 13, 97, 7919, 2147483647];
        let composites = [0u64, 1, 4, 9, 15, 91, 6601, 2147483649]; // 6601 is a Carmichael number
        for p in primes {
            assert!(is_prime_u64(p), "{p} should be prime");
        }
        for c in composites {
            assert!(!is_prime_u64(c), "{c} should be composite");
        }
    }

    #[test]
    fn known_large_primes() {
        assert!(is_prime_u64((1 << 61) - 1)); // Mersenne
        assert!(is_prime_u64(0x7fffffffffffffe7));
        assert!(!is_prime_u64((1 << 61) - 3));
    }

    #[test]
    fn random_primes_are_61_bit() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let p = random_prime_61(&mut rng);
            assert!(p >= 1 << 60 && p < 1 << 61);
            assert!(is_prime_u64(p));
        }
    }

    #[test]
    fn inverse_is_correct() {
        let p = 0x7fffffffffffffe7;
        for a in [1u64, 2, 12345, p - 1] {
            assert_eq!(mul_mod(a, inv_mod(a, p), p), 1);
        }
    }
}
