//! Exact field elements.
//!
//! Everything in this crate is generic over [`Scalar`], an exact field with a
//! fixed characteristic. Two implementations ship: arbitrary-precision
//! rationals ([`Rational`]) and residues modulo a prime ([`Fp`]).

use std::cell::Cell;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{GvError, Result};

/// An exact field element.
///
/// Arithmetic never rounds. The characteristic is a property of the ambient
/// field and is the same for every value used in one computation.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Characteristic of the ambient field (0 for the rationals).
    fn characteristic() -> u64;

    fn from_i64(n: i64) -> Self;

    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// Parses the canonical text form (`"p/q"`, `"n"`).
    fn parse_exact(s: &str) -> Result<Self>;

    /// Canonical text form; `parse_exact(x.to_exact_string()) == x`.
    fn to_exact_string(&self) -> String;

    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.sub_ref(&a.mul_ref(b));
    }

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.add_ref(&a.mul_ref(b));
    }
}

/// Arbitrary-precision rational numbers.
pub type Rational = BigRational;

impl Scalar for BigRational {
    fn characteristic() -> u64 {
        0
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn parse_exact(s: &str) -> Result<Self> {
        let t = s.trim();
        let parsed = match t.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim());
                let d = BigInt::from_str(d.trim());
                match (n, d) {
                    (Ok(n), Ok(d)) if !d.is_zero() => Some(BigRational::new(n, d)),
                    _ => None,
                }
            }
            None => BigInt::from_str(t).ok().map(BigRational::from_integer),
        };
        parsed.ok_or_else(|| GvError::Parse(format!("not a rational number: {s:?}")))
    }

    fn to_exact_string(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    // Integer and zero fast paths skip the gcd work of the general operations.
    fn add_ref(&self, other: &Self) -> Self {
        if other.is_zero() {
            self.clone()
        } else if self.is_zero() {
            other.clone()
        } else if self.is_integer() && other.is_integer() {
            BigRational::from_integer(self.numer() + other.numer())
        } else {
            self + other
        }
    }

    fn sub_ref(&self, other: &Self) -> Self {
        if other.is_zero() {
            self.clone()
        } else if self.is_zero() {
            -other
        } else if self.is_integer() && other.is_integer() {
            BigRational::from_integer(self.numer() - other.numer())
        } else {
            self - other
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            BigRational::zero()
        } else if self.is_integer() && other.is_integer() {
            BigRational::from_integer(self.numer() * other.numer())
        } else {
            self * other
        }
    }

    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        // Integer fast path: most entries met in practice are small integers.
        if a.is_integer() && b.is_integer() && self.is_integer() {
            let v = self.numer() - a.numer() * b.numer();
            *self = BigRational::from_integer(v);
            return;
        }
        *self -= a * b;
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        if a.is_integer() && b.is_integer() && self.is_integer() {
            let v = self.numer() + a.numer() * b.numer();
            *self = BigRational::from_integer(v);
            return;
        }
        *self += a * b;
    }
}

thread_local! {
    static MODULUS: Cell<u32> = const { Cell::new(0) };
}

/// Residue class modulo a prime `p < 2^31`.
///
/// The modulus is ambient: it is installed for the current thread with
/// [`Fp::with_modulus`] and read by every arithmetic operation. Values created
/// under one modulus must not be mixed with another.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp(u32);

impl Fp {
    /// Runs `f` with `p` installed as the ambient modulus for this thread.
    ///
    /// Fails if `p` is not a prime below `2^31`. The previous modulus is
    /// restored afterwards, so scopes nest.
    pub fn with_modulus<R>(p: u32, f: impl FnOnce() -> R) -> Result<R> {
        if !is_prime(p) || p >= (1u32 << 31) {
            return Err(GvError::InvalidInput(format!(
                "modulus {p} is not a prime below 2^31"
            )));
        }
        struct Restore(u32);
        impl Drop for Restore {
            fn drop(&mut self) {
                MODULUS.with(|m| m.set(self.0));
            }
        }
        let _restore = Restore(MODULUS.with(|m| m.replace(p)));
        Ok(f())
    }

    /// The ambient modulus; panics when none is installed.
    pub fn modulus() -> u32 {
        let p = MODULUS.with(|m| m.get());
        assert!(p != 0, "Fp arithmetic outside Fp::with_modulus");
        p
    }

    pub fn new(value: i64) -> Self {
        let p = Self::modulus() as i64;
        Fp(value.rem_euclid(p) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let p = Self::modulus() as u64;
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u32)
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let p = Fp::modulus() as u64;
        Fp(((self.0 as u64 + rhs.0 as u64) % p) as u32)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let p = Fp::modulus() as u64;
        Fp(((self.0 as u64 + p - rhs.0 as u64) % p) as u32)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let p = Fp::modulus() as u64;
        Fp(((self.0 as u64 * rhs.0 as u64) % p) as u32)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inverse().expect("division by zero in Fp")
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::zero() - self
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp(1)
    }
}

impl Scalar for Fp {
    fn characteristic() -> u64 {
        Fp::modulus() as u64
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }

    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(Fp::modulus() as u64 - 2))
        }
    }

    fn parse_exact(s: &str) -> Result<Self> {
        let bad = || GvError::Parse(format!("not a field element: {s:?}"));
        let t = s.trim();
        let parse_int = |x: &str| -> Result<Fp> {
            let n = BigInt::from_str(x.trim()).map_err(|_| bad())?;
            let p = BigInt::from(Fp::modulus());
            let r = ((n % &p) + &p) % &p;
            Ok(Fp(u32::try_from(r).map_err(|_| bad())?))
        };
        match t.split_once('/') {
            Some((n, d)) => {
                let d = parse_int(d)?;
                let inv = d.inverse().ok_or_else(bad)?;
                Ok(parse_int(n)? * inv)
            }
            None => parse_int(t),
        }
    }

    fn to_exact_string(&self) -> String {
        self.0.to_string()
    }
}
