//! Coefficients that re-expand products of binomial summands in the bases
//!
//! ```text
//! e_l(k) = C(k+l, 2l) C(2l, l)           (B family)
//! f_l(k) = C(k+l, 2l) C(2l, l) / (l+1)   (A family)
//! ```
//!
//! together with the `C_u(l, a)` expansion of `k^a (k+1)^a` in the product
//! basis `prod_{v=1}^{u} (k(k+1) - (l+v-1)(l+v))`.
//!
//! Rows are memoized in a [`CoeffTable`]. Multi-index rows are keyed by the
//! sorted index tuple since every multi-index coefficient is symmetric.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_integer::Integer as _;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactmath::{binomial, rising_factorial, to_integer, Integer, MathError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("invariant violated: {0}")]
    NotIntegral(#[from] MathError),
    #[error("invariant violated: C({t},{i}) does not divide b[{i},{t}]^({h}) = {value}")]
    BDivisibility { i: u32, t: u32, h: u32, value: Integer },
    #[error("power h must be at least 1")]
    ZeroPower,
    #[error("index tuple must be nonempty")]
    EmptyIndices,
    #[error("u = {u} exceeds a = {a}")]
    UOutOfRange { u: u32, a: u32 },
    #[error("t = {t} outside [{i}, {h}*{i}]")]
    TOutOfRange { i: u32, t: u32, h: u32 },
}

/// A coefficient row indexed from zero (by `u`, `t` or `l`).
pub type Row = Arc<Vec<Integer>>;

/// Entry `idx` of a row, zero past its end.
pub fn row_at(row: &[Integer], idx: usize) -> Integer {
    row.get(idx).cloned().unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Key {
    C { l: u32, a: u32 },
    B { i: u32, h: u32 },
    A { i: u32, h: u32 },
    BMulti(Vec<u32>),
    AMulti(Vec<u32>),
    BTilde(Vec<u32>, u32),
    ATilde(Vec<u32>, u32),
}

/// `C(i+j, i) C(j, i+j-l) C(l, j)`, the coefficient of `e_l` in `e_i e_j`.
pub fn b_pair(i: u32, j: u32, l: u32) -> Integer {
    let (i, j, l) = (i64::from(i), i64::from(j), i64::from(l));
    binomial(i + j, i) * binomial(j, i + j - l) * binomial(l, j)
}

/// Coefficient of `f_l` in `f_i f_j`, via the subtraction form
/// `C(i+j, i+j-l) C(l, j) C(l+1, i+1) - C(i+j, i+1) C(j, i+j-l) C(l+1, l-j)`,
/// which needs no special case at `j = 0`.
pub fn a_pair(i: u32, j: u32, l: u32) -> Integer {
    let (i, j, l) = (i64::from(i), i64::from(j), i64::from(l));
    binomial(i + j, i + j - l) * binomial(l, j) * binomial(l + 1, i + 1)
        - binomial(i + j, i + 1) * binomial(j, i + j - l) * binomial(l + 1, l - j)
}

/// The `(1/j) C(i+j, i+1) C(j, i+j-l) C(l+1, l-j)` form of [`a_pair`], for `j >= 1`.
pub fn a_pair_quotient_form(i: u32, j: u32, l: u32) -> Option<Rational> {
    if j == 0 {
        return None;
    }
    let (i, j, l) = (i64::from(i), i64::from(j), i64::from(l));
    let num = binomial(i + j, i + 1) * binomial(j, i + j - l) * binomial(l + 1, l - j);
    Some(Rational::new(num, Integer::from(j)))
}

/// Basis element `e_l(k)`.
pub fn basis_b(l: u32, k: u32) -> Integer {
    let (l, k) = (i64::from(l), i64::from(k));
    binomial(k + l, 2 * l) * binomial(2 * l, l)
}

/// Basis element `f_l(k) = C(k+l, 2l) Cat_l`, always an integer.
pub fn basis_a(l: u32, k: u32) -> Integer {
    let (l, k) = (i64::from(l), i64::from(k));
    binomial(k + l, 2 * l) * (binomial(2 * l, l) / (l + 1))
}

fn check_power(h: u32) -> Result<(), ReductionError> {
    if h == 0 {
        Err(ReductionError::ZeroPower)
    } else {
        Ok(())
    }
}

fn sorted(indices: &[u32]) -> Result<Vec<u32>, ReductionError> {
    if indices.is_empty() {
        return Err(ReductionError::EmptyIndices);
    }
    let mut v = indices.to_vec();
    v.sort_unstable();
    Ok(v)
}

/// `row'[l] = sum_{l1, t} row[l1] * right[t] * pair(l1, t, l)`.
fn fold_rows(left: &[Integer], right: &[Integer], pair: fn(u32, u32, u32) -> Integer) -> Vec<Integer> {
    let len = (left.len() + right.len()).saturating_sub(1);
    let mut out = vec![Integer::zero(); len];
    for (l1, x) in left.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (t, y) in right.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let xy = x * y;
            // pair(l1, t, l) vanishes outside max(l1, t) <= l <= l1 + t
            for (l, slot) in out.iter_mut().enumerate().take(l1 + t + 1).skip(l1.max(t)) {
                let c = pair(l1 as u32, t as u32, l as u32);
                if !c.is_zero() {
                    *slot += &xy * c;
                }
            }
        }
    }
    out
}

fn delta_row(i: u32) -> Vec<Integer> {
    let mut row = vec![Integer::zero(); i as usize + 1];
    row[i as usize] = Integer::one();
    row
}

/// Memoized coefficient store. Safe to share across threads; concurrent
/// misses may compute an entry twice with identical results.
#[derive(Debug, Default)]
pub struct CoeffTable {
    rows: RwLock<HashMap<Key, Row>>,
}

impl CoeffTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.read().expect("poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn cached(&self, key: &Key) -> Option<Row> {
        self.rows.read().expect("poisoned").get(key).cloned()
    }

    fn insert(&self, key: Key, row: Vec<Integer>) -> Row {
        let row = Arc::new(row);
        self.rows.write().expect("poisoned").entry(key).or_insert(row).clone()
    }

    /// `[C_0(l,a), ..., C_a(l,a)]`: Newton divided differences of `y^a` at
    /// the nodes `(l+v-1)(l+v)`, `v = 1..=a+1`, each checked to be integral.
    pub fn c_coeffs(&self, l: u32, a: u32) -> Result<Row, ReductionError> {
        let key = Key::C { l, a };
        if let Some(row) = self.cached(&key) {
            return Ok(row);
        }
        let nodes: Vec<Integer> = (1..=i64::from(a) + 1)
            .map(|v| Integer::from((i64::from(l) + v - 1) * (i64::from(l) + v)))
            .collect();
        let mut diffs: Vec<Rational> =
            nodes.iter().map(|y| Rational::from_integer(num_traits::Pow::pow(y, a))).collect();
        let mut coeffs = vec![to_integer(&diffs[0], "C_0")?];
        for level in 1..=a as usize {
            diffs = (0..diffs.len() - 1)
                .map(|i| (&diffs[i + 1] - &diffs[i]) / Rational::from_integer(&nodes[i + level] - &nodes[i]))
                .collect();
            coeffs.push(to_integer(&diffs[0], &format!("C_{level}({l},{a})"))?);
        }
        Ok(self.insert(key, coeffs))
    }

    /// `K_u(l,a) = C_u(l,a) C(2l+2u, l+u) ((l+1)_u)^2`.
    pub fn k_coeff(&self, u: u32, l: u32, a: u32) -> Result<Integer, ReductionError> {
        if u > a {
            return Err(ReductionError::UOutOfRange { u, a });
        }
        let c = self.c_coeffs(l, a)?;
        let (ui, li) = (i64::from(u), i64::from(l));
        let rf = rising_factorial(li + 1, u);
        Ok(&c[u as usize] * binomial(2 * li + 2 * ui, li + ui) * &rf * &rf)
    }

    /// `b_{i,t}^(h)` for `t` in `0..=h*i` (zero below `i`): the expansion of
    /// `C(k+i, 2i)^h C(2i, i)` in the `e_t` basis, found by a triangular solve
    /// at `k = i..=h*i` where `e_t(k) = 0` for `k < t`.
    pub fn b_table(&self, i: u32, h: u32) -> Result<Row, ReductionError> {
        check_power(h)?;
        let key = Key::B { i, h };
        if let Some(row) = self.cached(&key) {
            return Ok(row);
        }
        let top = h * i;
        let mut b: Vec<Integer> = vec![Integer::zero(); top as usize + 1];
        let central = binomial(2 * i64::from(i), i64::from(i));
        for k in i..=top {
            let lhs = num_traits::Pow::pow(binomial(i64::from(k + i), 2 * i64::from(i)), h) * &central;
            let known: Integer = (i..k).map(|t| &b[t as usize] * basis_b(t, k)).sum();
            let rem = Rational::new(lhs - known, basis_b(k, k));
            b[k as usize] = to_integer(&rem, &format!("b[{i},{k}]^({h})"))?;
        }
        for t in i..=top {
            let value = &b[t as usize];
            if !value.is_multiple_of(&binomial(i64::from(t), i64::from(i))) {
                return Err(ReductionError::BDivisibility { i, t, h, value: value.clone() });
            }
        }
        Ok(self.insert(key, b))
    }

    pub fn b_coeff(&self, i: u32, t: u32, h: u32) -> Result<Integer, ReductionError> {
        Ok(row_at(&self.b_table(i, h)?, t as usize))
    }

    /// Row of `a_{i,t}^(h) = b_{i,t}^(h) (t+1)/(i+1)` for `t` in `0..=h*i`.
    pub fn a_table(&self, i: u32, h: u32) -> Result<Row, ReductionError> {
        let key = Key::A { i, h };
        if let Some(row) = self.cached(&key) {
            return Ok(row);
        }
        let b = self.b_table(i, h)?;
        let row = b
            .iter()
            .enumerate()
            .map(|(t, v)| {
                let q = Rational::new(v * (t + 1), Integer::from(i + 1));
                to_integer(&q, &format!("a[{i},{t}]^({h})"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.insert(key, row))
    }

    pub fn a_coeff(&self, i: u32, t: u32, h: u32) -> Result<Integer, ReductionError> {
        check_power(h)?;
        if t < i || t > h * i {
            return Err(ReductionError::TOutOfRange { i, t, h });
        }
        Ok(row_at(&self.a_table(i, h)?, t as usize))
    }

    fn multi_row(&self, indices: &[u32], is_a: bool) -> Result<Row, ReductionError> {
        let indices = sorted(indices)?;
        let key = if is_a { Key::AMulti(indices.clone()) } else { Key::BMulti(indices.clone()) };
        if let Some(row) = self.cached(&key) {
            return Ok(row);
        }
        let row = match indices.split_last() {
            Some((&last, [])) => delta_row(last),
            Some((&last, rest)) => {
                let prefix = self.multi_row(rest, is_a)?;
                let pair = if is_a { a_pair } else { b_pair };
                fold_rows(&prefix, &delta_row(last), pair)
            }
            None => unreachable!("checked nonempty"),
        };
        Ok(self.insert(key, row))
    }

    /// `B_{i_1..i_m}^(l)` for all `l` in `0..=sum(i)`.
    pub fn b_multi_row(&self, indices: &[u32]) -> Result<Row, ReductionError> {
        self.multi_row(indices, false)
    }

    pub fn b_multi(&self, indices: &[u32], l: u32) -> Result<Integer, ReductionError> {
        Ok(row_at(&self.b_multi_row(indices)?, l as usize))
    }

    /// `A_{i_1..i_m}^(l)` for all `l` in `0..=sum(i)`.
    pub fn a_multi_row(&self, indices: &[u32]) -> Result<Row, ReductionError> {
        self.multi_row(indices, true)
    }

    pub fn a_multi(&self, indices: &[u32], l: u32) -> Result<Integer, ReductionError> {
        Ok(row_at(&self.a_multi_row(indices)?, l as usize))
    }

    /// `sum over i_j <= t_j <= h i_j of (prod_s w_{i_s,t_s}) M_{t_1..t_m}^(l)`,
    /// with `w` the b (or a) table and `M` the B (or A) multi-index row.
    fn tilde_row(&self, indices: &[u32], h: u32, is_a: bool) -> Result<Row, ReductionError> {
        check_power(h)?;
        let indices = sorted(indices)?;
        let key = if is_a { Key::ATilde(indices.clone(), h) } else { Key::BTilde(indices.clone(), h) };
        if let Some(row) = self.cached(&key) {
            return Ok(row);
        }
        let weights = indices
            .iter()
            .map(|&i| if is_a { self.a_table(i, h) } else { self.b_table(i, h) })
            .collect::<Result<Vec<_>, _>>()?;
        let total: u32 = indices.iter().sum();
        let mut out = vec![Integer::zero(); (h * total) as usize + 1];
        let mut ts: Vec<u32> = indices.clone();
        loop {
            let weight: Integer = ts.iter().zip(&weights).map(|(&t, w)| &w[t as usize]).product();
            if !weight.is_zero() {
                let inner = self.multi_row(&ts, is_a)?;
                for (slot, c) in out.iter_mut().zip(inner.iter()) {
                    if !c.is_zero() {
                        *slot += &weight * c;
                    }
                }
            }
            // odometer over t_j in [i_j, h i_j]
            let mut pos = 0;
            loop {
                if pos == ts.len() {
                    return Ok(self.insert(key, out));
                }
                if ts[pos] < h * indices[pos] {
                    ts[pos] += 1;
                    break;
                }
                ts[pos] = indices[pos];
                pos += 1;
            }
        }
    }

    /// `B~_{i_1..i_m}^(l,h)` for all `l` in `0..=h*sum(i)`.
    pub fn b_tilde_row(&self, indices: &[u32], h: u32) -> Result<Row, ReductionError> {
        self.tilde_row(indices, h, false)
    }

    pub fn b_tilde(&self, indices: &[u32], l: u32, h: u32) -> Result<Integer, ReductionError> {
        Ok(row_at(&self.b_tilde_row(indices, h)?, l as usize))
    }

    /// `A~_{i_1..i_m}^(l,h)` for all `l` in `0..=h*sum(i)`.
    pub fn a_tilde_row(&self, indices: &[u32], h: u32) -> Result<Row, ReductionError> {
        self.tilde_row(indices, h, true)
    }

    pub fn a_tilde(&self, indices: &[u32], l: u32, h: u32) -> Result<Integer, ReductionError> {
        Ok(row_at(&self.a_tilde_row(indices, h)?, l as usize))
    }
}
