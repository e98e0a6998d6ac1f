//! Generalized Delannoy (Schmidt) and Schröder polynomials.
//!
//! For `h >= 1`,
//!
//! ```text
//! D_n^(h)(x) = sum_{k=0}^{n} C(n+k, 2k)^h C(2k, k)^h x^k
//! S_n^(h)(x) = sum_{k=0}^{n} C(n+k, 2k)^h Cat_k^h   x^k
//! ```

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_traits::{One, Pow};
use serde::Serialize;
use thiserror::Error;

use crate::exactmath::{binomial, catalan, Integer};
use crate::polyring::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("power h must be at least 1")]
    ZeroPower,
    #[error("unknown family {0:?} (expected D or S)")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    #[serde(rename = "D")]
    Delannoy,
    #[serde(rename = "S")]
    Schroder,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Delannoy => "D",
            Family::Schroder => "S",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "D" | "d" | "delannoy" => Ok(Family::Delannoy),
            "S" | "s" | "schroder" => Ok(Family::Schroder),
            other => Err(SequenceError::UnknownFamily(other.to_string())),
        }
    }
}

fn check_power(h: u32) -> Result<(), SequenceError> {
    if h == 0 {
        Err(SequenceError::ZeroPower)
    } else {
        Ok(())
    }
}

fn build(n: u32, h: u32, weight: impl Fn(i64) -> Integer) -> Result<IntPoly, SequenceError> {
    check_power(h)?;
    let n = i64::from(n);
    let coeffs = (0..=n).map(|k| Pow::pow(binomial(n + k, 2 * k) * weight(k), h)).collect();
    Ok(IntPoly::from_coeffs(coeffs))
}

/// `D_n^(h)(x)` from the `C(n+k, 2k) C(2k, k)` form.
pub fn delannoy_poly(n: u32, h: u32) -> Result<IntPoly, SequenceError> {
    build(n, h, |k| binomial(2 * k, k))
}

/// `D_n^(h)(x)` from the `C(n, k) C(n+k, k)` form.
pub fn delannoy_poly_alt(n: u32, h: u32) -> Result<IntPoly, SequenceError> {
    check_power(h)?;
    let n = i64::from(n);
    let coeffs = (0..=n).map(|k| Pow::pow(binomial(n, k) * binomial(n + k, k), h)).collect();
    Ok(IntPoly::from_coeffs(coeffs))
}

/// `S_n^(h)(x)`, summed over `0 <= k <= n`.
pub fn schroder_poly(n: u32, h: u32) -> Result<IntPoly, SequenceError> {
    build(n, h, |k| catalan(k as u32))
}

pub fn family_poly(family: Family, n: u32, h: u32) -> Result<IntPoly, SequenceError> {
    match family {
        Family::Delannoy => delannoy_poly(n, h),
        Family::Schroder => schroder_poly(n, h),
    }
}

pub fn central_delannoy(n: u32) -> Integer {
    delannoy_poly(n, 1).expect("h = 1").eval_int(&Integer::one())
}

pub fn large_schroder(n: u32) -> Integer {
    schroder_poly(n, 1).expect("h = 1").eval_int(&Integer::one())
}

type PowerKey = (Family, u32, u32, u32);

/// Shared memo of `P_n^(h)(x)^m`. Concurrent misses may compute the same
/// entry twice; the stored values are identical.
#[derive(Debug, Default)]
pub struct PolyCache {
    powers: RwLock<HashMap<PowerKey, Arc<IntPoly>>>,
}

impl PolyCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn poly(&self, family: Family, n: u32, h: u32) -> Result<Arc<IntPoly>, SequenceError> {
        self.power(family, n, h, 1)
    }

    pub fn power(&self, family: Family, n: u32, h: u32, m: u32) -> Result<Arc<IntPoly>, SequenceError> {
        let key = (family, n, h, m);
        if let Some(hit) = self.powers.read().expect("poisoned").get(&key) {
            return Ok(hit.clone());
        }
        let value = match m {
            0 => IntPoly::one(),
            1 => family_poly(family, n, h)?,
            _ => {
                let base = self.power(family, n, h, 1)?;
                let prev = self.power(family, n, h, m - 1)?;
                &*prev * &*base
            }
        };
        let value = Arc::new(value);
        self.powers.write().expect("poisoned").entry(key).or_insert_with(|| value.clone());
        Ok(value)
    }

    pub fn len(&self) -> usize {
        self.powers.read().expect("poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use num_traits::Signed;

    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn delannoy_examples() {
        for h in 1..=4 {
            assert_eq!(delannoy_poly(0, h).unwrap(), IntPoly::one());
        }
        assert_eq!(delannoy_poly(2, 1).unwrap(), p(&[1, 6, 6]));
        assert_eq!(delannoy_poly(2, 2).unwrap(), p(&[1, 36, 36]));
    }

    #[test]
    fn schroder_examples() {
        assert_eq!(schroder_poly(2, 1).unwrap(), p(&[1, 3, 2]));
        assert_eq!(schroder_poly(2, 2).unwrap(), p(&[1, 9, 4]));
        for h in 1..=4 {
            assert_eq!(schroder_poly(1, h).unwrap(), p(&[1, 1]));
        }
    }

    #[test]
    fn zero_power_is_rejected() {
        assert_eq!(delannoy_poly(3, 0), Err(SequenceError::ZeroPower));
        assert_eq!(schroder_poly(3, 0), Err(SequenceError::ZeroPower));
    }

    #[test]
    fn number_sequences() {
        let d: Vec<Integer> = (0..=4).map(central_delannoy).collect();
        let s: Vec<Integer> = (0..=4).map(large_schroder).collect();
        assert_eq!(d, [1, 3, 13, 63, 321].map(Integer::from));
        assert_eq!(s, [1, 2, 6, 22, 90].map(Integer::from));
    }

    #[test]
    fn closed_forms_agree() {
        for n in 0..=25 {
            for h in 1..=3 {
                assert_eq!(delannoy_poly(n, h).unwrap(), delannoy_poly_alt(n, h).unwrap(), "n={n} h={h}");
            }
        }
    }

    #[test]
    fn polys_have_full_degree_and_nonnegative_coefficients() {
        for n in 0..=20 {
            for h in 1..=3 {
                for fam in [Family::Delannoy, Family::Schroder] {
                    let q = family_poly(fam, n, h).unwrap();
                    assert_eq!(q.degree(), Some(n as usize));
                    assert!(q.coeffs().iter().all(|c| !c.is_negative()));
                }
            }
        }
    }

    #[test]
    fn cache_matches_direct_powers() {
        let cache = PolyCache::new();
        for fam in [Family::Delannoy, Family::Schroder] {
            for m in 0..=3 {
                let direct = family_poly(fam, 4, 2).unwrap().pow(m);
                assert_eq!(*cache.power(fam, 4, 2, m).unwrap(), direct);
            }
        }
        assert!(!cache.is_empty());
    }

    #[test]
    fn family_parsing() {
        assert_eq!("D".parse::<Family>().unwrap(), Family::Delannoy);
        assert_eq!("S".parse::<Family>().unwrap(), Family::Schroder);
        assert!("X".parse::<Family>().is_err());
    }
}
