//! Exact scalar rings and the dense/sparse linear algebra built on them.
//!
//! Every ring here is exact. [`Ring`] is deliberately small: generic code
//! only needs the ring operations plus a way to manufacture constants, and
//! for `Z/m` the constants depend on a runtime modulus, hence the
//! [`Ring::Ctx`] parameter.

mod laurent;
pub mod linalg;
mod matrix;
mod rational;
mod zmod;

use std::fmt;

pub use laurent::LaurentPoly;
pub use matrix::Matrix;
pub use rational::Rational;
pub use zmod::{unit_group, ZmInt};

/// A commutative ring with exact arithmetic.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    /// Data needed to build constants (the modulus for `Z/m`, `()` otherwise).
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(v: i64, ctx: &Self::Ctx) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;

    /// Multiplicative inverse, or `None` for non-units.
    fn try_inverse(&self) -> Option<Self>;

    /// The modulus when this is `Z/m`, used to explain elimination failures.
    fn modulus_of(_ctx: &Self::Ctx) -> Option<u64> {
        None
    }

    /// Short name used in reports ("rational", "laurent", "zm").
    fn ring_name() -> &'static str;

    /// JSON form of one scalar inside a serialized matrix.
    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: &serde_json::Value, ctx: &Self::Ctx) -> crate::Result<Self>;
}

/// A ring in which every nonzero element is invertible and which receives
/// the rationals (for `Z/p`, those whose denominator is prime to `p`).
pub trait Field: Ring {
    fn from_rational(r: &Rational, ctx: &Self::Ctx) -> crate::Result<Self>;
}

impl Field for Rational {
    fn from_rational(r: &Rational, _ctx: &()) -> crate::Result<Self> {
        Ok(r.clone())
    }
}

impl Field for ZmInt {
    /// Callers are responsible for the modulus being prime.
    fn from_rational(r: &Rational, ctx: &u64) -> crate::Result<Self> {
        rational_to_zp(r, *ctx)
    }
}

/// Reduce a rational into `Z/p`; fails when `p` divides the denominator.
pub fn rational_to_zp(r: &Rational, p: u64) -> crate::Result<ZmInt> {
    let (num, den) = r.residues_mod(p);
    let den = ZmInt::new(den, p);
    let inv = den.try_inverse().ok_or(crate::Error::BadPrime(p))?;
    Ok(ZmInt::new(num, p).times(&inv))
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pick `count` distinct primes in `[2^30, 2^31)` from a seeded stream.
pub fn random_primes(count: usize, seed: u64) -> Vec<u64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let candidate = rng.gen_range((1u64 << 30)..(1u64 << 31)) | 1;
        if is_prime_u64(candidate) && !out.contains(&candidate) {
            out.push(candidate);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn miller_rabin_matches_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000u64 {
            assert_eq!(is_prime_u64(n), trial(n), "n = {n}");
        }
        assert!(is_prime_u64(2_147_483_647));
    }

    #[test]
    fn random_primes_are_large_distinct_primes() {
        let ps = random_primes(3, 7);
        assert_eq!(ps.len(), 3);
        for &p in &ps {
            assert!(p > 1 << 30 && is_prime_u64(p));
        }
        assert_eq!(ps, random_primes(3, 7));
    }

    #[test]
    fn rational_reduction_into_zp() {
        let r: Rational = "7/2".parse().unwrap();
        let z = rational_to_zp(&r, 11).unwrap();
        assert_eq!(z.times(&ZmInt::new(2, 11)), ZmInt::new(7, 11));
        assert!(rational_to_zp(&"1/11".parse().unwrap(), 11).is_err());
    }
}
