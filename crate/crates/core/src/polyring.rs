//! Dense univariate polynomials over the integers.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactmath::{decimal, Integer};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by zero")]
    ZeroDivisor,
    #[error("coefficient of x^{} is {} which is not divisible by {divisor}", witness.index, witness.value)]
    NotDivisible { divisor: Integer, witness: CoeffWitness },
}

/// Lowest-index coefficient that failed a divisibility test.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CoeffWitness {
    pub index: usize,
    #[serde(serialize_with = "decimal::serialize")]
    pub value: Integer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Divisibility {
    Divisible,
    NotDivisible(CoeffWitness),
}

impl Divisibility {
    pub fn is_divisible(&self) -> bool {
        matches!(self, Divisibility::Divisible)
    }

    pub fn witness(&self) -> Option<&CoeffWitness> {
        match self {
            Divisibility::Divisible => None,
            Divisibility::NotDivisible(w) => Some(w),
        }
    }
}

/// Polynomial in `x` with integer coefficients, index `i` holding the
/// coefficient of `x^i`. The last stored coefficient is never zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<Integer>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Integer::one())
    }

    pub fn constant(c: Integer) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Integer::zero(), Integer::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Integer> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Integer {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    pub fn scalar_mul(&self, c: &Integer) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// `self^m` by repeated squaring; `pow(0)` is the constant 1.
    pub fn pow(&self, mut m: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while m > 0 {
            if m & 1 == 1 {
                acc = &acc * &base;
            }
            m >>= 1;
            if m > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation at an integer point.
    pub fn eval_int(&self, t: &Integer) -> Integer {
        self.coeffs.iter().rev().fold(Integer::zero(), |acc, c| acc * t + c)
    }

    pub fn divisible_by(&self, d: &Integer) -> Result<Divisibility, PolyError> {
        if d.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        let hit = self.coeffs.iter().enumerate().find(|(_, c)| !c.is_multiple_of(d));
        Ok(match hit {
            None => Divisibility::Divisible,
            Some((index, value)) => Divisibility::NotDivisible(CoeffWitness { index, value: value.clone() }),
        })
    }

    /// Divides every coefficient by `d`, failing with the witness when any
    /// coefficient is not a multiple of `d`.
    pub fn divexact_by(&self, d: &Integer) -> Result<Self, PolyError> {
        if let Divisibility::NotDivisible(witness) = self.divisible_by(d)? {
            return Err(PolyError::NotDivisible { divisor: d.clone(), witness });
        }
        Ok(Self { coeffs: self.coeffs.iter().map(|c| c / d).collect() })
    }

    /// Coefficients as decimal strings, lowest degree first.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for IntPoly {
    /// Renders as `c0 + c1*x + c2*x^2`, skipping zero terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*x")?,
                _ => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl serde::Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(ToString::to_string))
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &'a IntPoly) -> IntPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for IntPoly {
    type Output = IntPoly;

    fn add(mut self, rhs: IntPoly) -> IntPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&IntPoly> for IntPoly {
    fn add_assign(&mut self, rhs: &IntPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Integer::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        let coeffs = std::mem::take(&mut self.coeffs);
        *self = IntPoly::from_coeffs(coeffs);
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        -&self
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &'a IntPoly) -> IntPoly {
        let mut out = self.clone();
        out += &-rhs;
        out
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    // schoolbook; degrees stay small
    fn mul(self, rhs: &'a IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![Integer::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}
