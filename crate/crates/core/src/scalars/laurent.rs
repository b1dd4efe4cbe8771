use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Rational, Ring};
use crate::{Error, Result};

/// A Laurent polynomial in one variable `q` with rational coefficients.
///
/// Zero coefficients are never stored, so the empty map is the zero
/// polynomial and structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// The variable `q^exp` with coefficient one.
    pub fn q_pow(exp: i32) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(terms: I) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    fn add_term(&mut self, e: i32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// A single-term polynomial (these are exactly the units).
    pub fn as_monomial(&self) -> Option<(i32, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn eval(&self, q: &Rational) -> Result<Rational> {
        if q.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return Err(Error::InvalidParameter("evaluating a negative power at q = 0".into()));
        }
        Ok(self.terms.iter().fold(Rational::zero(), |acc, (e, c)| &acc + &(c * &q.pow(*e))))
    }

    /// Exact quotient `self / divisor`; fails unless the division is exact.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        let (Some(dmin), Some(dmax)) = (divisor.min_exp(), divisor.max_exp()) else {
            return Err(Error::InexactDivision);
        };
        let Some(nmin) = self.min_exp() else {
            return Ok(LaurentPoly::zero());
        };
        // Shift both to ordinary polynomials with nonzero constant term.
        let lead = divisor.terms[&dmax].clone();
        let mut rem: BTreeMap<i32, Rational> = self.terms.iter().map(|(e, c)| (e - nmin, c.clone())).collect();
        let dlen = dmax - dmin;
        let mut quotient = LaurentPoly::zero();
        while let Some((&top, coeff)) = rem.iter().next_back() {
            if top < dlen {
                return Err(Error::InexactDivision);
            }
            let factor = coeff / &lead;
            let shift = top - dlen;
            for (e, c) in &divisor.terms {
                let k = e - dmin + shift;
                let slot = rem.entry(k).or_insert_with(Rational::zero);
                *slot = &*slot - &(&factor * c);
                if slot.is_zero() {
                    rem.remove(&k);
                }
            }
            quotient.add_term(shift + nmin - dmin, &factor);
        }
        Ok(quotient)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as `[[exponent, "p/q"], ...]` sorted by exponent.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(i32, &Rational)> = self.terms.iter().map(|(e, c)| (*e, c)).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<(i32, Rational)> = Vec::deserialize(d)?;
        let mut seen = std::collections::BTreeSet::new();
        for (e, _) in &v {
            if !seen.insert(*e) {
                return Err(serde::de::Error::custom(format!("repeated exponent {e}")));
            }
        }
        Ok(LaurentPoly::from_terms(v))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Ring for LaurentPoly {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero(_: &()) -> Self {
        LaurentPoly::zero()
    }
    fn one(_: &()) -> Self {
        LaurentPoly::q_pow(0)
    }
    fn from_i64(v: i64, _: &()) -> Self {
        LaurentPoly::constant(Rational::integer(v))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn try_inverse(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        Some(LaurentPoly::monomial(c.recip()?, -e))
    }
    fn ring_name() -> &'static str {
        "laurent"
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("laurent polynomials always serialize")
    }
    fn from_json(v: &serde_json::Value, _: &()) -> Result<Self> {
        LaurentPoly::deserialize(v).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn q() -> LaurentPoly {
        LaurentPoly::q_pow(1)
    }

    #[test]
    fn units_are_monomials() {
        let m = LaurentPoly::monomial(Rational::new(3, 2), -2);
        assert_eq!(&m * &m.try_inverse().unwrap(), LaurentPoly::q_pow(0));
        assert!((&q() + &LaurentPoly::q_pow(-1)).try_inverse().is_none());
        assert!(LaurentPoly::zero().try_inverse().is_none());
    }

    #[test]
    fn exact_division() {
        let d = &q() - &LaurentPoly::q_pow(-1);
        let quotient = &LaurentPoly::q_pow(2) + &LaurentPoly::constant(Rational::integer(5));
        let n = &d * &quotient;
        assert_eq!(n.div_exact(&d).unwrap(), quotient);
        assert_eq!((-&d).div_exact(&d).unwrap(), LaurentPoly::constant(Rational::integer(-1)));
        assert_eq!(q().div_exact(&d), Err(Error::InexactDivision));
        assert_eq!(LaurentPoly::zero().div_exact(&d).unwrap(), LaurentPoly::zero());
    }

    #[test]
    fn serde_shape() {
        let p = LaurentPoly::from_terms([(2, Rational::new(1, 2)), (-1, Rational::integer(-3))]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[[-1,"-3/1"],[2,"1/2"]]"#);
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), p);
        assert!(serde_json::from_str::<LaurentPoly>(r#"[[1,"1"],[1,"2"]]"#).is_err());
        assert_eq!(p.to_string(), "1/2*q^2 - 3*q^-1");
    }

    #[test]
    fn ring_axioms_on_seeded_triples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x1a0e);
        let mut sample = || {
            LaurentPoly::from_terms((0..rng.gen_range(0..5)).map(|_| {
                (rng.gen_range(-4..5), Rational::new(rng.gen_range(-9..10), rng.gen_range(1..5)))
            }))
        };
        for _ in 0..300 {
            let (a, b, c) = (sample(), sample(), sample());
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&a * &b, &b * &a);
            assert_eq!(&(&a + &b) - &b, a);
        }
    }

    proptest! {
        #[test]
        fn evaluation_is_a_homomorphism(
            a in proptest::collection::vec((-3i32..4, -5i64..6), 0..4),
            b in proptest::collection::vec((-3i32..4, -5i64..6), 0..4),
            x in 1i64..5,
        ) {
            let mk = |v: &Vec<(i32, i64)>| LaurentPoly::from_terms(v.iter().map(|(e, c)| (*e, Rational::integer(*c))));
            let (pa, pb) = (mk(&a), mk(&b));
            let at = Rational::new(x, 3);
            prop_assert_eq!((&pa * &pb).eval(&at).unwrap(), &pa.eval(&at).unwrap() * &pb.eval(&at).unwrap());
        }
    }
}
