//! Exact integer kernel: binomials, Catalan numbers, rising factorials and
//! gcd/lcm over arbitrary-precision integers.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision signed integer used for every scalar.
pub type Integer = BigInt;

/// Exact rational, only used for intermediates.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("binomial upper index must be nonnegative, got {0}")]
    NegativeUpperIndex(i64),
    #[error("gcd of an all-zero list is undefined")]
    AllZeroGcd,
    #[error("lcm requires nonzero arguments")]
    ZeroLcm,
    #[error("{context}: {value} is not an integer")]
    NotIntegral { context: String, value: String },
}

/// Rows of Pascal's triangle below this bound are precomputed once.
const PASCAL_ROWS: usize = 192;

fn pascal() -> &'static [Vec<Integer>] {
    static TABLE: OnceLock<Vec<Vec<Integer>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<Integer>> = Vec::with_capacity(PASCAL_ROWS);
        rows.push(vec![Integer::one()]);
        for n in 1..PASCAL_ROWS {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(Integer::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(Integer::one());
            rows.push(row);
        }
        rows
    })
}

/// `C(n, k)` for `n >= 0`; zero when `k` lies outside `0..=n`.
pub fn try_binomial(n: i64, k: i64) -> Result<Integer, MathError> {
    if n < 0 {
        return Err(MathError::NegativeUpperIndex(n));
    }
    if k < 0 || k > n {
        return Ok(Integer::zero());
    }
    let (n, k) = (n as usize, k as usize);
    if n < PASCAL_ROWS {
        return Ok(pascal()[n][k].clone());
    }
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    Ok(acc)
}

/// Binomial coefficient with the upper index known to be nonnegative.
///
/// Panics if `n < 0`; use [`try_binomial`] when that is not guaranteed.
pub fn binomial(n: i64, k: i64) -> Integer {
    try_binomial(n, k).expect("binomial called with a negative upper index")
}

/// Catalan number `C(2k, k) / (k + 1)`.
pub fn catalan(k: u32) -> Integer {
    let k = i64::from(k);
    binomial(2 * k, k) / (k + 1)
}

/// Rising factorial `x (x+1) ... (x+n-1)`, with `(x)_0 = 1`.
pub fn rising_factorial(x: i64, n: u32) -> Integer {
    (0..i64::from(n)).fold(Integer::one(), |acc, i| acc * (x + i))
}

/// Nonnegative gcd of a list; errors when every entry is zero.
pub fn gcd_many(values: &[Integer]) -> Result<Integer, MathError> {
    let g = values.iter().fold(Integer::zero(), |g, v| g.gcd(v));
    if g.is_zero() {
        Err(MathError::AllZeroGcd)
    } else {
        Ok(g)
    }
}

/// Positive lcm of two nonzero integers.
pub fn lcm2(a: &Integer, b: &Integer) -> Result<Integer, MathError> {
    if a.is_zero() || b.is_zero() {
        return Err(MathError::ZeroLcm);
    }
    Ok(a.lcm(b).abs())
}

/// `num / den` when exact, otherwise an invariant failure naming `context`.
pub fn exact_div(num: &Integer, den: &Integer, context: &str) -> Result<Integer, MathError> {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(MathError::NotIntegral {
            context: context.to_string(),
            value: format!("{num}/{den}"),
        })
    }
}

/// Converts a rational known to be integral; never truncates.
pub fn to_integer(value: &Rational, context: &str) -> Result<Integer, MathError> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(MathError::NotIntegral {
            context: context.to_string(),
            value: value.to_string(),
        })
    }
}

pub fn rational(n: impl Into<Integer>, d: impl Into<Integer>) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `(-1)^k` as a small integer.
pub fn alternating(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Serde helpers writing integers as decimal strings.
pub mod decimal {
    use std::collections::BTreeMap;

    use serde::Serializer;

    use super::Integer;

    pub fn serialize<S: Serializer>(v: &Integer, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn option<S: Serializer>(v: &Option<Integer>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.collect_str(v),
            None => s.serialize_none(),
        }
    }

    pub fn map<S: Serializer>(v: &Option<BTreeMap<String, Integer>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(m) => s.collect_map(m.iter().map(|(k, v)| (k, v.to_string()))),
            None => s.serialize_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Integer {
        Integer::from(v)
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(4, 7), int(0));
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(binomial(3, -1), int(0));
    }

    #[test]
    fn binomial_negative_upper_is_domain_error() {
        assert_eq!(try_binomial(-1, 0), Err(MathError::NegativeUpperIndex(-1)));
    }

    #[test]
    fn binomial_outside_pascal_cache() {
        let n = PASCAL_ROWS as i64 + 10;
        for k in [0, 1, 7, n / 2, n - 1, n] {
            assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        }
    }

    #[test]
    fn pascal_rule() {
        for n in 1..=60 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), int(1));
        assert_eq!(catalan(3), int(5));
        assert_eq!(catalan(5), int(42));
        for k in 0..=60u32 {
            assert_eq!(catalan(k) * (k + 1), binomial(2 * i64::from(k), i64::from(k)));
        }
    }

    #[test]
    fn rising_factorial_values() {
        assert_eq!(rising_factorial(3, 0), int(1));
        assert_eq!(rising_factorial(2, 3), int(2 * 3 * 4));
        assert_eq!(rising_factorial(1, 4), int(24));
        assert_eq!(rising_factorial(-1, 3), int(0));
    }

    #[test]
    fn gcd_and_lcm() {
        assert_eq!(gcd_many(&[int(2), int(4), int(6)]).unwrap(), int(2));
        assert_eq!(gcd_many(&[int(2), int(1), int(2)]).unwrap(), int(1));
        assert_eq!(gcd_many(&[int(0), int(-4)]).unwrap(), int(4));
        assert_eq!(gcd_many(&[int(0), int(0)]), Err(MathError::AllZeroGcd));
        assert_eq!(gcd_many(&[]), Err(MathError::AllZeroGcd));

        let l = lcm2(&int(6), &int(4)).unwrap();
        assert_eq!(l, int(12));
        assert_eq!(l, int(2 * 3 * 4) / gcd_many(&[int(2), int(2)]).unwrap());
        assert_eq!(lcm2(&int(-6), &int(4)).unwrap(), int(12));
        assert_eq!(lcm2(&int(0), &int(4)), Err(MathError::ZeroLcm));
    }

    #[test]
    fn lcm_of_consecutive_products() {
        for n in 1..=60i64 {
            let lhs = lcm2(&int(n * (n + 1)), &int(n + 2)).unwrap() * gcd_many(&[int(2), int(n)]).unwrap();
            assert_eq!(lhs, int(n * (n + 1) * (n + 2)), "n = {n}");
        }
    }

    #[test]
    fn exact_division_reports_remainder() {
        assert_eq!(exact_div(&int(12), &int(4), "t").unwrap(), int(3));
        assert!(matches!(exact_div(&int(13), &int(4), "t"), Err(MathError::NotIntegral { .. })));
        assert_eq!(to_integer(&rational(12, 4), "t").unwrap(), int(3));
        assert!(to_integer(&rational(1, 2), "t").is_err());
    }

    #[test]
    fn rationals_are_reduced() {
        let r = rational(6, -4);
        assert_eq!(r.numer(), &int(-3));
        assert_eq!(r.denom(), &int(2));
    }
}
