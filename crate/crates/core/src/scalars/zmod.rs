use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

use super::Ring;
use crate::{Error, Result};

/// A residue modulo `m >= 2`, stored normalized in `[0, m)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZmInt {
    residue: u64,
    modulus: u64,
}

impl ZmInt {
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        ZmInt { residue: value % modulus, modulus }
    }

    /// Reduce a signed integer.
    pub fn from_signed(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        ZmInt::new(((value as i128 % m + m) % m) as u64, modulus)
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
    }

    /// The inverse of a unit, by the extended Euclidean algorithm.
    pub fn mod_inverse(&self) -> Result<ZmInt> {
        let ext = (self.residue as i128).extended_gcd(&(self.modulus as i128));
        if ext.gcd != 1 {
            return Err(Error::NotAUnit { value: self.residue, modulus: self.modulus });
        }
        let m = self.modulus as i128;
        Ok(ZmInt::new(((ext.x % m + m) % m) as u64, self.modulus))
    }

    pub fn pow(&self, mut e: u64) -> ZmInt {
        let mut base = *self;
        let mut acc = ZmInt::new(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self) -> bool {
        self.residue.gcd(&self.modulus) == 1
    }
}

/// All residues coprime to `m`, in increasing order.
pub fn unit_group(m: u64) -> Result<BTreeSet<ZmInt>> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("modulus {m} < 2")));
    }
    Ok((1..m).filter(|r| r.gcd(&m) == 1).map(|r| ZmInt::new(r, m)).collect())
}

impl fmt::Display for ZmInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl fmt::Debug for ZmInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.modulus)
    }
}

impl Add for ZmInt {
    type Output = ZmInt;
    fn add(self, rhs: ZmInt) -> ZmInt {
        self.check(&rhs);
        let s = self.residue as u128 + rhs.residue as u128;
        ZmInt { residue: (s % self.modulus as u128) as u64, modulus: self.modulus }
    }
}

impl Sub for ZmInt {
    type Output = ZmInt;
    fn sub(self, rhs: ZmInt) -> ZmInt {
        self + (-rhs)
    }
}

impl Mul for ZmInt {
    type Output = ZmInt;
    fn mul(self, rhs: ZmInt) -> ZmInt {
        self.check(&rhs);
        let p = self.residue as u128 * rhs.residue as u128;
        ZmInt { residue: (p % self.modulus as u128) as u64, modulus: self.modulus }
    }
}

impl Neg for ZmInt {
    type Output = ZmInt;
    fn neg(self) -> ZmInt {
        let r = if self.residue == 0 { 0 } else { self.modulus - self.residue };
        ZmInt { residue: r, modulus: self.modulus }
    }
}

impl Ring for ZmInt {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.modulus
    }
    fn zero(m: &u64) -> Self {
        ZmInt::new(0, *m)
    }
    fn one(m: &u64) -> Self {
        ZmInt::new(1, *m)
    }
    fn from_i64(v: i64, m: &u64) -> Self {
        ZmInt::from_signed(v, *m)
    }
    fn is_zero(&self) -> bool {
        self.residue == 0
    }
    fn is_one(&self) -> bool {
        self.residue == 1
    }
    fn plus(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
    fn negated(&self) -> Self {
        -*self
    }
    fn try_inverse(&self) -> Option<Self> {
        self.mod_inverse().ok()
    }
    fn modulus_of(m: &u64) -> Option<u64> {
        Some(*m)
    }
    fn ring_name() -> &'static str {
        "zm"
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(self.residue)
    }
    fn from_json(v: &serde_json::Value, m: &u64) -> Result<Self> {
        if *m < 2 {
            return Err(Error::InvalidParameter(format!("modulus {m} < 2")));
        }
        v.as_i64()
            .map(|x| ZmInt::from_signed(x, *m))
            .ok_or_else(|| Error::Parse(format!("expected an integer residue, got {v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inverse_examples() {
        assert_eq!(ZmInt::new(2, 5).mod_inverse().unwrap(), ZmInt::new(3, 5));
        for m in 2..20 {
            assert_eq!(ZmInt::new(1, m).mod_inverse().unwrap(), ZmInt::new(1, m));
        }
        assert_eq!(ZmInt::new(2, 4).mod_inverse(), Err(Error::NotAUnit { value: 2, modulus: 4 }));
    }

    #[test]
    fn unit_group_examples() {
        let res = |m| unit_group(m).unwrap().into_iter().map(|z| z.residue()).collect::<Vec<_>>();
        assert_eq!(res(5), vec![1, 2, 3, 4]);
        // filter 0..9 by gcd = 1
        assert_eq!(res(9), vec![1, 2, 4, 5, 7, 8]);
        assert_eq!(res(2), vec![1]);
        assert!(unit_group(1).is_err());
    }

    #[test]
    fn totient_cardinality() {
        fn phi(mut n: u64) -> u64 {
            let mut out = n;
            let mut p = 2;
            while p * p <= n {
                if n % p == 0 {
                    while n % p == 0 {
                        n /= p;
                    }
                    out -= out / p;
                }
                p += 1;
            }
            if n > 1 {
                out -= out / n;
            }
            out
        }
        for m in 2..200 {
            assert_eq!(unit_group(m).unwrap().len() as u64, phi(m), "m = {m}");
        }
    }

    proptest! {
        #[test]
        fn inverse_and_closure(m in 2u64..60, a in 0u64..1000, b in 0u64..1000) {
            let units = unit_group(m).unwrap();
            let (x, y) = (ZmInt::new(a, m), ZmInt::new(b, m));
            if let Ok(inv) = x.mod_inverse() {
                prop_assert!((inv * x).is_one());
                prop_assert!(units.contains(&x) && units.contains(&inv));
            } else {
                prop_assert!(!units.contains(&x));
            }
            if units.contains(&x) && units.contains(&y) {
                prop_assert!(units.contains(&(x * y)));
            }
        }
    }
}
