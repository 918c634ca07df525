//! Exact coefficient arithmetic over the rationals and small prime fields.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds 2^31")]
    ModulusTooLarge(u64),
    #[error("characteristic {0} is forbidden here: {1}")]
    ForbiddenCharacteristic(u64, String),
    #[error("cannot parse field element from `{0}`")]
    Parse(String),
}

/// A coefficient field with exact arithmetic. The field value itself carries
/// any shared context (the modulus for prime fields); elements are plain data.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + std::hash::Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        if self.is_zero(b) {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.mul(a, &self.inv(b)?))
    }
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Exact `num/den`; errors when `den` vanishes in the field.
    fn from_fraction(&self, num: i64, den: i64) -> Result<Self::Elem, FieldError> {
        self.div(&self.from_i64(num), &self.from_i64(den))
    }
    /// 0 for the rationals, p for F_p.
    fn characteristic(&self) -> u64;
    fn format(&self, a: &Self::Elem) -> String;
    /// Parses an integer or an `a/b` fraction.
    fn parse(&self, s: &str) -> Result<Self::Elem, FieldError>;
    /// Short human-readable name, e.g. `Q` or `Fp:5`.
    fn name(&self) -> String;
}

/// The field ℚ, backed by arbitrary-precision rationals. `BigRational` keeps
/// the canonical form invariant for us: reduced fraction, positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational, FieldError> {
        if a.is_zero() {
            return Err(FieldError::InverseOfZero);
        }
        Ok(a.recip())
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational, FieldError> {
        let s = s.trim();
        let parse_int =
            |t: &str| t.parse::<BigInt>().map_err(|_| FieldError::Parse(s.to_string()));
        match s.split_once('/') {
            None => Ok(BigRational::from_integer(parse_int(s)?)),
            Some((num, den)) => {
                let den = parse_int(den)?;
                if den.is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                Ok(BigRational::new(parse_int(num)?, den))
            }
        }
    }
    fn name(&self) -> String {
        "Q".to_string()
    }
}

/// The prime field F_p for p < 2^31, so products fit in u64 without overflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 31 {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Result<u64, FieldError> {
        if *a == 0 {
            return Err(FieldError::InverseOfZero);
        }
        // Fermat: a^(p-2) = a^(-1) in F_p.
        Ok(self.pow(*a, self.p - 2))
    }
    fn from_i64(&self, n: i64) -> u64 {
        let r = n.rem_euclid(self.p as i64);
        r as u64
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64, FieldError> {
        let s = s.trim();
        match s.split_once('/') {
            None => {
                let n = s.parse::<i64>().map_err(|_| FieldError::Parse(s.to_string()))?;
                Ok(self.from_i64(n))
            }
            Some((num, den)) => {
                let num = num.parse::<i64>().map_err(|_| FieldError::Parse(s.to_string()))?;
                let den = den.parse::<i64>().map_err(|_| FieldError::Parse(s.to_string()))?;
                self.from_fraction(num, den)
            }
        }
    }
    fn name(&self) -> String {
        format!("Fp:{}", self.p)
    }
}

/// Rejects fields whose characteristic a construction forbids (e.g. the conic
/// generators need char ≠ 2, Euler-formula identities need char ∤ d).
pub fn check_characteristic_allowed(
    char_p: u64,
    forbidden: &[u64],
    why: &str,
) -> Result<(), FieldError> {
    if forbidden.contains(&char_p) {
        return Err(FieldError::ForbiddenCharacteristic(char_p, why.to_string()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_examples() {
        let q = Rationals;
        let half = q.from_fraction(1, 2).unwrap();
        let third = q.from_fraction(1, 3).unwrap();
        assert_eq!(q.add(&half, &third), q.from_fraction(5, 6).unwrap());
        assert_eq!(q.inv(&q.from_fraction(2, 3).unwrap()).unwrap(), q.from_fraction(3, 2).unwrap());
        assert!(q.inv(&q.zero()).is_err());
    }

    #[test]
    fn rational_canonical_form() {
        let q = Rationals;
        let a = q.from_fraction(4, -6).unwrap();
        assert_eq!(q.format(&a), "-2/3");
        let b = q.from_fraction(6, 3).unwrap();
        assert_eq!(q.format(&b), "2");
    }

    #[test]
    fn prime_field_examples() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.mul(&3, &4), 2);
        assert_eq!(f5.inv(&2).unwrap(), 3);
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.div(&1, &3).unwrap(), 5);
        assert_eq!(f7.inv(&1).unwrap(), 1);
        assert!(f7.inv(&0).is_err());
        assert!(f7.div(&3, &0).is_err());
    }

    #[test]
    fn prime_field_construction_checks() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(1 << 31).is_err());
        assert!(PrimeField::new(32003).is_ok());
    }

    #[test]
    fn fermat_little_theorem() {
        for p in [3u64, 5, 7, 32003] {
            let f = PrimeField::new(p).unwrap();
            for a in [1u64, 2, p - 1, p / 2 + 1] {
                assert_eq!(f.pow(a % p, p - 1), 1, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn characteristic_guard() {
        assert!(check_characteristic_allowed(2, &[2], "conic").is_err());
        assert!(check_characteristic_allowed(3, &[2], "conic").is_ok());
        assert!(check_characteristic_allowed(0, &[2], "conic").is_ok());
    }

    #[test]
    fn parse_elements() {
        let q = Rationals;
        assert_eq!(q.parse("-3/4").unwrap(), q.from_fraction(-3, 4).unwrap());
        assert!(q.parse("1/0").is_err());
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.parse("-1").unwrap(), 4);
        assert_eq!(f5.parse("7").unwrap(), 2);
    }
}
