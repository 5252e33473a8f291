//! Exact scalars: reduced rationals and residues modulo an odd prime.
//!
//! A [`Scalar`] always knows which [`FieldContext`] it lives in. The operator
//! impls panic when two contexts are mixed; the `checked_*` methods and every
//! container constructor report [`Error::ContextMismatch`] instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Range of the integers drawn by [`FieldContext::random_element`] over ℚ.
const RATIONAL_SAMPLE_BOUND: i64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldContext {
    Rationals,
    Prime(u64),
}

impl FieldContext {
    pub fn rationals() -> Self {
        FieldContext::Rationals
    }

    /// An odd prime field. The curve layer additionally demands p > 7.
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 || !is_prime_u64(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(FieldContext::Prime(p))
    }

    /// 0 for ℚ.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldContext::Rationals => 0,
            FieldContext::Prime(p) => *p,
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, FieldContext::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldContext::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldContext::Prime(p) => {
                let r = (n as i128).rem_euclid(p as i128) as u64;
                Scalar::Residue { value: r, modulus: p }
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            FieldContext::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldContext::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Residue { value: r.to_u64().expect("residue fits"), modulus: p }
            }
        }
    }

    /// Image of a rational number; fails if the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            FieldContext::Rationals => Ok(Scalar::Rational(q.clone())),
            FieldContext::Prime(_) => {
                let den = self.from_bigint(q.denom());
                let inv = den.inv().ok_or(Error::DivisionByZero)?;
                Ok(&self.from_bigint(q.numer()) * &inv)
            }
        }
    }

    /// Parse a decimal integer or an `a/b` fraction.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let t = text.trim();
        let bad = || Error::InvalidInput(format!("not a number: {text:?}"));
        let q = if let Some((a, b)) = t.split_once('/') {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            BigRational::new(a, b)
        } else {
            BigRational::from_integer(t.parse::<BigInt>().map_err(|_| bad())?)
        };
        self.from_rational(&q)
    }

    /// Uniform residue over F_p; an integer in ±10⁶ over ℚ.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match *self {
            FieldContext::Rationals => {
                self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND))
            }
            FieldContext::Prime(p) => Scalar::Residue { value: rng.gen_range(0..p), modulus: p },
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random_element(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            FieldContext::Rationals => "Q".to_string(),
            FieldContext::Prime(p) => format!("F_{p}"),
        }
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// An exact field element in canonical form, so derived equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn ctx(&self) -> FieldContext {
        match self {
            Scalar::Rational(_) => FieldContext::Rationals,
            Scalar::Residue { modulus, .. } => FieldContext::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    fn same_ctx(&self, other: &Scalar) -> Result<()> {
        if self.ctx() == other.ctx() {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_ctx(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_ctx(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_ctx(other)?;
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_ctx(other)?;
        let inv = other.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.ctx().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Euler's criterion over F_p; perfect-square test over ℚ.
    pub fn is_square(&self) -> bool {
        match self {
            Scalar::Residue { value, modulus } => {
                *value == 0 || pow_mod(*value, (modulus - 1) / 2, *modulus) == 1
            }
            Scalar::Rational(_) => self.sqrt().is_some(),
        }
    }

    /// A square root if one exists in the field (Tonelli–Shanks over F_p).
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Residue { value, modulus } => {
                tonelli_shanks(*value, *modulus).map(|r| Scalar::Residue { value: r, modulus: *modulus })
            }
            Scalar::Rational(q) => {
                if q.is_negative() {
                    return None;
                }
                let n = q.numer().sqrt();
                let d = q.denom().sqrt();
                if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
                    Some(Scalar::Rational(BigRational::new(n, d)))
                } else {
                    None
                }
            }
        }
    }

    /// Integer representative in [0, p) of a residue; the value itself over ℚ.
    pub fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Rational(q) => q.clone(),
            Scalar::Residue { value, .. } => BigRational::from_integer(BigInt::from(*value)),
        }
    }

    /// Sign used by the printer: residues are always "positive".
    pub(crate) fn is_negative_literal(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Residue { .. } => false,
        }
    }

    pub(crate) fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn mismatch() -> ! {
    panic!("cross-context scalar arithmetic")
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                let s = (*a as u128 + *b as u128) % *p as u128;
                Scalar::Residue { value: s as u64, modulus: *p }
            }
            _ => mismatch(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                let s = (*a as u128 + *p as u128 - *b as u128) % *p as u128;
                Scalar::Residue { value: s as u64, modulus: *p }
            }
            _ => mismatch(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                Scalar::Residue { value: mul_mod(*a, *b, *p), modulus: *p }
            }
            _ => mismatch(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, exact for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
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

fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_validation() {
        assert!(FieldContext::prime(10007).is_ok());
        assert!(FieldContext::prime(3).is_ok());
        assert_eq!(FieldContext::prime(2), Err(Error::NotPrime("2".into())));
        assert!(FieldContext::prime(10005).is_err());
        assert!(is_prime_u64(18446744073709551557));
        assert!(!is_prime_u64(3215031751));
    }

    #[test]
    fn canonical_forms() {
        let q = FieldContext::rationals();
        assert_eq!(q.parse_scalar("6/-4").unwrap().to_string(), "-3/2");
        let f = FieldContext::prime(7).unwrap();
        assert_eq!(f.from_i64(-1).to_string(), "6");
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(4));
    }

    #[test]
    fn cross_context_is_rejected() {
        let a = FieldContext::prime(11).unwrap().one();
        let b = FieldContext::prime(13).unwrap().one();
        assert_eq!(a.checked_add(&b), Err(Error::ContextMismatch));
        assert_eq!(a.checked_mul(&FieldContext::rationals().one()), Err(Error::ContextMismatch));
    }

    #[test]
    fn square_roots() {
        let f = FieldContext::prime(10009).unwrap();
        for n in 1..200 {
            let s = f.from_i64(n);
            match s.sqrt() {
                Some(r) => assert_eq!(&r * &r, s),
                None => assert!(!s.is_square()),
            }
        }
        // -1 is a non-residue mod 7.
        assert!(FieldContext::prime(7).unwrap().from_i64(-1).sqrt().is_none());
        let q = FieldContext::rationals();
        assert_eq!(q.parse_scalar("9/4").unwrap().sqrt(), Some(q.parse_scalar("3/2").unwrap()));
        assert_eq!(q.from_i64(2).sqrt(), None);
    }

    proptest! {
        #[test]
        fn field_axioms_mod_p(a in 0u64..10009, b in 0u64..10009, c in 0u64..10009) {
            let f = FieldContext::prime(10009).unwrap();
            let (a, b, c) = (f.from_i64(a as i64), f.from_i64(b as i64), f.from_i64(c as i64));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn field_axioms_rationals(a in -50i64..50, b in 1i64..50, c in -50i64..50) {
            let q = FieldContext::rationals();
            let x = q.parse_scalar(&format!("{a}/{b}")).unwrap();
            let y = q.from_i64(c);
            prop_assert_eq!(&x * &(&y + &x), &(&x * &y) + &(&x * &x));
            if !x.is_zero() {
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }
        }
    }
}
