//! Finite-range verifiers for the lemma-level identities and parity facts
//! the divisibility proofs rest on.
//!
//! Every verifier returns a [`CheckResult`]; a failing result carries the
//! first point where the claim broke together with the values involved.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactmath::{alternating, binomial, catalan, decimal, rising_factorial, Integer, MathError, Rational};
use crate::reduction::{a_pair, row_at, CoeffTable, ReductionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Math(#[from] MathError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown quotient kind {0:?} (expected F, Gplus or Gminus)")]
    UnknownQuotient(String),
}

fn require(cond: bool, what: impl FnOnce() -> String) -> Result<(), IdentityError> {
    if cond {
        Ok(())
    } else {
        Err(IdentityError::Precondition(what()))
    }
}

/// Sign `+1` or `-1` of an alternating weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `sign^k`.
    pub fn pow(self, k: i64) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => alternating(k),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl FromStr for Sign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+1" | "1" | "plus" | "+" => Ok(Sign::Plus),
            "-1" | "minus" | "-" => Ok(Sign::Minus),
            other => Err(format!("unknown sign {other:?}")),
        }
    }
}

/// Outcome of one finite check. `pass == false` implies a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub params: BTreeMap<String, i64>,
    pub pass: bool,
    #[serde(serialize_with = "decimal::map")]
    pub witness: Option<BTreeMap<String, Integer>>,
}

impl CheckResult {
    fn new(id: &str, params: &[(&str, i64)]) -> Self {
        Self {
            id: id.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            pass: true,
            witness: None,
        }
    }

    /// Records the first failure; later ones are ignored.
    fn fail(&mut self, entries: &[(&str, Integer)]) {
        if self.pass {
            self.pass = false;
            self.witness = Some(entries.iter().map(|(k, v)| (k.to_string(), v.clone())).collect());
        }
    }

    fn expect_eq(&mut self, point: &[(&str, Integer)], lhs: &Integer, rhs: &Integer) {
        if lhs != rhs {
            let mut entries = point.to_vec();
            entries.push(("lhs", lhs.clone()));
            entries.push(("rhs", rhs.clone()));
            self.fail(&entries);
        }
    }

    fn expect_parity(&mut self, point: &[(&str, Integer)], value: &Integer, odd: bool) {
        if value.is_odd() != odd {
            let mut entries = point.to_vec();
            entries.push(("value", value.clone()));
            self.fail(&entries);
        }
    }

    /// Merges another result into this one, keeping the first witness.
    pub fn absorb(&mut self, other: CheckResult) {
        if !other.pass && self.pass {
            self.pass = false;
            self.witness = other.witness;
        }
    }
}

fn int(v: i64) -> Integer {
    Integer::from(v)
}

fn pt(entries: &[(&'static str, i64)]) -> Vec<(&'static str, Integer)> {
    entries.iter().map(|&(k, v)| (k, int(v))).collect()
}

/// Exact division for checks; a remainder becomes `None`.
fn div_exact(num: &Integer, den: &Integer) -> Option<Integer> {
    let (q, r) = num.div_rem(den);
    r.is_zero().then_some(q)
}

fn telescope_summand(sign: Sign, l: i64, u: i64, k: i64) -> Integer {
    binomial(k + l + u, 2 * l + 2 * u) * (2 * k + 1) * sign.pow(k)
}

/// Certificate `G(k)` scaled so it is an integer polynomial expression, and
/// the divisor it must be divided by.
fn telescope_certificate(sign: Sign, l: i64, u: i64, k: i64) -> (Integer, Integer) {
    let c = binomial(k + l + u, 2 * l + 2 * u);
    match sign {
        Sign::Minus => (c * (k - l - u) * alternating(k + 1), Integer::one()),
        Sign::Plus => (c * k * (k - l - u), int(l + 1 + u)),
    }
}

/// Checks `summand(k) = G(k+1) - G(k)` for every `k` in `0..=kmax`, where
/// the summand is `sign^k (2k+1) C(k+l+u, 2l+2u)` and `G` is the matching
/// Gosper certificate. For `sign = +1` the certificate's division by
/// `l+1+u` must also be exact at every point.
pub fn verify_telescope(sign: Sign, l: u32, u: u32, kmax: u32) -> CheckResult {
    let mut res = CheckResult::new("lemma-telescope", &[("sign", sign.value()), ("l", l.into()), ("u", u.into()), ("kmax", kmax.into())]);
    let (l, u) = (i64::from(l), i64::from(u));
    let cert = |k: i64| {
        let (num, den) = telescope_certificate(sign, l, u, k);
        div_exact(&num, &den).ok_or(num)
    };
    for k in 0..=i64::from(kmax) {
        let (g0, g1) = match (cert(k), cert(k + 1)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(num), _) | (_, Err(num)) => {
                res.fail(&[("k", int(k)), ("certificate_numerator", num)]);
                break;
            }
        };
        res.expect_eq(&pt(&[("k", k)]), &telescope_summand(sign, l, u, k), &(g1 - g0));
    }
    res
}

/// Checks the summed closed forms
/// `sum_{k<=n} (-1)^k (2k+1) C(k+l+u, 2l+2u) = (-1)^n (n+1+l+u) C(n+l+u, 2l+2u)` and
/// `sum_{k<=n} (2k+1) C(k+l+u, 2l+2u) = (n+1)(n+1+l+u) C(n+l+u, 2l+2u) / (l+1+u)`
/// for every `n` in `0..=nmax`.
pub fn verify_summed(sign: Sign, l: u32, u: u32, nmax: u32) -> CheckResult {
    let mut res = CheckResult::new("lemma-summed", &[("sign", sign.value()), ("l", l.into()), ("u", u.into()), ("nmax", nmax.into())]);
    let (l, u) = (i64::from(l), i64::from(u));
    let mut partial = Integer::zero();
    for n in 0..=i64::from(nmax) {
        partial += telescope_summand(sign, l, u, n);
        let c = binomial(n + l + u, 2 * l + 2 * u) * (n + 1 + l + u);
        let closed = match sign {
            Sign::Minus => Some(c * alternating(n)),
            Sign::Plus => div_exact(&(c * (n + 1)), &int(l + 1 + u)),
        };
        match closed {
            Some(closed) => res.expect_eq(&pt(&[("n", n)]), &partial, &closed),
            None => res.fail(&pt(&[("n", n), ("inexact_division", 1)])),
        }
    }
    res
}

/// `2 C(n-1, l-1) C(n+l+1, l) / (n+2)` is an integer and equals
/// `C(n-1, l-1) C(n+l+1, l) - C(n, l) C(n+l+1, n+2)`.
pub fn verify_lemma_2_4(n: u32, l: u32) -> Result<CheckResult, IdentityError> {
    require(n >= 1 && l >= 1, || format!("lemma 2.4 needs n, l >= 1 (n={n}, l={l})"))?;
    let mut res = CheckResult::new("lemma-2.4", &[("n", n.into()), ("l", l.into())]);
    let (n, l) = (i64::from(n), i64::from(l));
    let num = binomial(n - 1, l - 1) * binomial(n + l + 1, l) * 2;
    let split = binomial(n - 1, l - 1) * binomial(n + l + 1, l) - binomial(n, l) * binomial(n + l + 1, n + 2);
    match div_exact(&num, &int(n + 2)) {
        Some(q) => res.expect_eq(&[], &q, &split),
        None => res.fail(&[("numerator", num), ("divisor", int(n + 2))]),
    }
    Ok(res)
}

/// `C_0(l,1) / (l(l+1)) = 1`; for `a > 1`, `C_0(l,a) / (l(l+1))` and
/// `C_1(l,a)` are even integers.
pub fn verify_lemma_2_5(table: &CoeffTable, l: u32, a: u32) -> Result<CheckResult, IdentityError> {
    require(l >= 1 && a >= 1, || format!("lemma 2.5 needs l, a >= 1 (l={l}, a={a})"))?;
    let mut res = CheckResult::new("lemma-2.5", &[("l", l.into()), ("a", a.into())]);
    let c = table.c_coeffs(l, a)?;
    let ll = int(i64::from(l) * (i64::from(l) + 1));
    let Some(q) = div_exact(&c[0], &ll) else {
        res.fail(&[("C0", c[0].clone()), ("divisor", ll)]);
        return Ok(res);
    };
    if a == 1 {
        res.expect_eq(&[("quantity", int(0))], &q, &Integer::one());
        res.expect_eq(&[("quantity", int(1))], &c[1], &Integer::one());
    } else {
        res.expect_parity(&[("quantity", int(0))], &q, false);
        res.expect_parity(&[("quantity", int(1))], &c[1], false);
    }
    Ok(res)
}

/// `C(x+a, b) C(y+b, a) = sum_{i=0}^{a} C(x+y+i, i) C(y, a-i) C(x, b-i)`.
pub fn pfaff_saalschutz_sides(x: u32, y: u32, a: u32, b: u32) -> (Integer, Integer) {
    let (x, y, a, b) = (i64::from(x), i64::from(y), i64::from(a), i64::from(b));
    let lhs = binomial(x + a, b) * binomial(y + b, a);
    let rhs = (0..=a).map(|i| binomial(x + y + i, i) * binomial(y, a - i) * binomial(x, b - i)).sum();
    (lhs, rhs)
}

pub fn verify_pfaff_saalschutz(x: u32, y: u32, a: u32, b: u32) -> CheckResult {
    let mut res = CheckResult::new("pfaff-saalschutz", &[("x", x.into()), ("y", y.into()), ("a", a.into()), ("b", b.into())]);
    let (lhs, rhs) = pfaff_saalschutz_sides(x, y, a, b);
    res.expect_eq(&[], &lhs, &rhs);
    res
}

/// `w(n, l) = C(n-1, l-1) C(n+l, l) - C(n, l) C(n+l, l-1)` for `n, l >= 1`.
pub fn w_val(n: u32, l: u32) -> Integer {
    assert!(n >= 1 && l >= 1, "w(n, l) needs n, l >= 1");
    let (n, l) = (i64::from(n), i64::from(l));
    binomial(n - 1, l - 1) * binomial(n + l, l) - binomial(n, l) * binomial(n + l, l - 1)
}

/// `(1/l) C(n-1, l-1) C(n+l, l-1)`, the other form of `w(n, l)`.
pub fn w_val_rational(n: u32, l: u32) -> Rational {
    let (n, l) = (i64::from(n), i64::from(l));
    Rational::new(binomial(n - 1, l - 1) * binomial(n + l, l - 1), int(l))
}

/// `H(n, l) = w(n, l+1) + w(n+1, l+1)`.
pub fn h_val(n: u32, l: u32) -> Integer {
    w_val(n, l + 1) + w_val(n + 1, l + 1)
}

/// `sum_{l=0}^{2b} w(n, l+1)` is odd and `sum_{l=0}^{2b} H(n, l)` is even.
pub fn verify_lemma_3_4(n: u32, b: u32) -> Result<CheckResult, IdentityError> {
    require(n >= 1, || "lemma 3.4 needs n >= 1".to_string())?;
    let mut res = CheckResult::new("lemma-3.4", &[("n", n.into()), ("b", b.into())]);
    let w_sum: Integer = (0..=2 * b).map(|l| w_val(n, l + 1)).sum();
    let h_sum: Integer = (0..=2 * b).map(|l| h_val(n, l)).sum();
    res.expect_parity(&[("sum", int(0))], &w_sum, true);
    res.expect_parity(&[("sum", int(1))], &h_sum, false);
    Ok(res)
}

/// For `J <= l <= 2J`, `A_{J,J}^(l)` is odd exactly when `J + 1` is a power of two.
pub fn verify_lemma_3_5(j: u32) -> Result<CheckResult, IdentityError> {
    require(j >= 1, || "lemma 3.5 needs J >= 1".to_string())?;
    let mut res = CheckResult::new("lemma-3.5", &[("J", j.into())]);
    let odd = (j + 1).is_power_of_two();
    for l in j..=2 * j {
        res.expect_parity(&pt(&[("l", l.into())]), &a_pair(j, j, l), odd);
    }
    Ok(res)
}

/// Calls `f` on every tuple of `parts` entries in `0..=max` summing to `total`.
pub fn for_each_bounded_composition(total: u32, parts: usize, max: u32, mut f: impl FnMut(&[u32])) {
    fn go(rest: u32, slot: usize, max: u32, buf: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if slot + 1 == buf.len() {
            if rest <= max {
                buf[slot] = rest;
                f(buf);
            }
            return;
        }
        let remaining_slots = (buf.len() - slot - 1) as u32;
        for v in 0..=rest.min(max) {
            if rest - v > remaining_slots * max {
                continue;
            }
            buf[slot] = v;
            go(rest - v, slot + 1, max, buf, f);
        }
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    let mut buf = vec![0; parts];
    go(total, 0, max, &mut buf, &mut f);
}

fn add_row(acc: &mut Vec<Integer>, row: &[Integer], weight: &Integer) {
    if acc.len() < row.len() {
        acc.resize(row.len(), Integer::zero());
    }
    for (slot, c) in acc.iter_mut().zip(row) {
        if !c.is_zero() {
            *slot += weight * c;
        }
    }
}

/// `sum B_{i_1..i_{2M}}^(l)` over tuples in `[0, n]^{2M}` with total `I`,
/// for every `l` (index of the returned vector).
pub fn lemma_2_6_sums(table: &CoeffTable, big_m: u32, n: u32, total: u32) -> Result<Vec<Integer>, IdentityError> {
    let mut acc = Vec::new();
    let mut err = None;
    for_each_bounded_composition(total, 2 * big_m as usize, n, |tup| {
        if err.is_some() {
            return;
        }
        match table.b_multi_row(tup) {
            Ok(row) => add_row(&mut acc, &row, &Integer::one()),
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e.into()),
        None => Ok(acc),
    }
}

pub fn verify_lemma_2_6(table: &CoeffTable, big_m: u32, n: u32, total: u32, l: u32) -> Result<CheckResult, IdentityError> {
    require(big_m >= 1 && n >= 1 && l >= 1, || "lemma 2.6 needs M, n, l >= 1".to_string())?;
    require(total <= 2 * big_m * n, || format!("lemma 2.6 needs I <= 2Mn (I={total})"))?;
    let mut res = CheckResult::new("lemma-2.6", &[("M", big_m.into()), ("n", n.into()), ("I", total.into()), ("l", l.into())]);
    let sums = lemma_2_6_sums(table, big_m, n, total)?;
    res.expect_parity(&[], &row_at(&sums, l as usize), false);
    Ok(res)
}

fn catalan_weight(indices: &[u32], h: u32) -> Integer {
    indices.iter().map(|&i| num_traits::Pow::pow(catalan(i), h - 1)).product()
}

/// `sum A~_{i_1..i_{2M}}^(l,h) prod_j Cat_{i_j}^{h-1}` over tuples in
/// `[0, n]^{2M}` with total `I`, for every `l`.
pub fn lemma_3_6_sums(table: &CoeffTable, big_m: u32, n: u32, total: u32, h: u32) -> Result<Vec<Integer>, IdentityError> {
    let mut acc = Vec::new();
    let mut err = None;
    for_each_bounded_composition(total, 2 * big_m as usize, n, |tup| {
        if err.is_some() {
            return;
        }
        match table.a_tilde_row(tup, h) {
            Ok(row) => add_row(&mut acc, &row, &catalan_weight(tup, h)),
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e.into()),
        None => Ok(acc),
    }
}

/// For odd `I`, the Catalan-weighted sum of `A~^(l,h)` over `2M`-tuples is even.
pub fn verify_lemma_3_6(table: &CoeffTable, big_m: u32, n: u32, total: u32, l: u32, h: u32) -> Result<CheckResult, IdentityError> {
    require(big_m >= 1 && n >= 1 && h >= 1, || "lemma 3.6 needs M, n, h >= 1".to_string())?;
    require(total % 2 == 1, || format!("lemma 3.6 needs odd I (I={total})"))?;
    let mut res = CheckResult::new("lemma-3.6", &[("M", big_m.into()), ("n", n.into()), ("I", total.into()), ("l", l.into()), ("h", h.into())]);
    let sums = lemma_3_6_sums(table, big_m, n, total, h)?;
    res.expect_parity(&[], &row_at(&sums, l as usize), false);
    Ok(res)
}

/// For even `I` and `e`,
/// `sum_{l=0}^{e} H(n,l) sum_{j} A~_{j_1..j_M,j_1..j_M}^(l,h) (prod_s Cat_{j_s}^{h-1})^2`
/// is even, `j` ranging over `[0, n]^M` with total `I/2`.
pub fn verify_lemma_3_7(table: &CoeffTable, big_m: u32, n: u32, total: u32, e: u32, h: u32) -> Result<CheckResult, IdentityError> {
    require(big_m >= 1 && n >= 1 && h >= 1, || "lemma 3.7 needs M, n, h >= 1".to_string())?;
    require(total.is_multiple_of(2) && e.is_multiple_of(2), || format!("lemma 3.7 needs even I and e (I={total}, e={e})"))?;
    let mut res = CheckResult::new("lemma-3.7", &[("M", big_m.into()), ("n", n.into()), ("I", total.into()), ("e", e.into()), ("h", h.into())]);
    let mut inner = Vec::new();
    let mut err = None;
    for_each_bounded_composition(total / 2, big_m as usize, n, |js| {
        if err.is_some() {
            return;
        }
        let doubled: Vec<u32> = js.iter().chain(js).copied().collect();
        match table.a_tilde_row(&doubled, h) {
            Ok(row) => {
                let w = catalan_weight(js, h);
                add_row(&mut inner, &row, &(&w * &w));
            }
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e.into());
    }
    let total_sum: Integer = (0..=e).map(|l| h_val(n, l) * row_at(&inner, l as usize)).sum();
    res.expect_parity(&[], &total_sum, false);
    Ok(res)
}

/// Which quotient family [`verify_quotients`] examines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum QuotientKind {
    F,
    Gplus,
    Gminus,
}

impl FromStr for QuotientKind {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "F" => Ok(QuotientKind::F),
            "Gplus" | "G+" => Ok(QuotientKind::Gplus),
            "Gminus" | "G-" => Ok(QuotientKind::Gminus),
            other => Err(IdentityError::UnknownQuotient(other.to_string())),
        }
    }
}

impl QuotientKind {
    fn id(self) -> &'static str {
        match self {
            QuotientKind::F => "quotient-F",
            QuotientKind::Gplus => "quotient-Gplus",
            QuotientKind::Gminus => "quotient-Gminus",
        }
    }
}

/// `F_u(l,a,n) = K_u(l,a) (-1)^n (n+1+l+u) C(n+l+u, 2l+2u)`.
pub fn f_value(table: &CoeffTable, l: u32, a: u32, u: u32, n: u32) -> Result<Integer, IdentityError> {
    let (li, ui, ni) = (i64::from(l), i64::from(u), i64::from(n));
    Ok(table.k_coeff(u, l, a)? * alternating(ni) * (ni + 1 + li + ui) * binomial(ni + li + ui, 2 * li + 2 * ui))
}

/// `G_u^(1)(l,a,n) = K_u (n+1)(n+1+l+u) C(n+l+u, 2l+2u) / ((l+1)(l+1+u))`, exact.
pub fn g_plus_value(table: &CoeffTable, l: u32, a: u32, u: u32, n: u32) -> Result<Rational, IdentityError> {
    let (li, ui, ni) = (i64::from(l), i64::from(u), i64::from(n));
    let num = table.k_coeff(u, l, a)? * (ni + 1) * (ni + 1 + li + ui) * binomial(ni + li + ui, 2 * li + 2 * ui);
    Ok(Rational::new(num, int((li + 1) * (li + 1 + ui))))
}

/// `G_u^(-1)(l,a,n) = K_u (n+1+l+u) C(n+l+u, 2l+2u) / (l+1)`, exact.
pub fn g_minus_value(table: &CoeffTable, l: u32, a: u32, u: u32, n: u32) -> Result<Rational, IdentityError> {
    let (li, ui, ni) = (i64::from(l), i64::from(u), i64::from(n));
    let num = table.k_coeff(u, l, a)? * (ni + 1 + li + ui) * binomial(ni + li + ui, 2 * li + 2 * ui);
    Ok(Rational::new(num, int(li + 1)))
}

/// Checks `value / divisor` is an integer equal to `display`.
fn expect_quotient(res: &mut CheckResult, label: i64, value: &Rational, divisor: i64, display: &Rational) {
    let q = value / Rational::from_integer(int(divisor));
    if !q.is_integer() {
        res.fail(&[("check", int(label)), ("numerator", q.numer().clone()), ("denominator", q.denom().clone())]);
    } else if &q != display {
        res.fail(&[("check", int(label)), ("quotient", q.to_integer()), ("display_numerator", display.numer().clone())]);
    }
}

fn rat(v: Integer) -> Rational {
    Rational::from_integer(v)
}

/// Integrality of the quotient families used in the theorem proofs, each
/// compared against its displayed closed form:
///
/// * `F`: `F_u / (n(n+1)(n+2))` for `u >= 1`; `2 F_0 / (n(n+1)(n+2))` for `u = 0`.
/// * `Gplus`: `G_u^(1) / (n(n+1))` for every `u`.
/// * `Gminus`: `G_u^(-1) / (n(n+1))` for `u <= 1` (and `/(n(n+1)(n+2))`
///   when `a >= 2`); `G_u^(-1) / (n(n+1)(n+2))` for `u >= 2`. With `a = 1`
///   also `(G_0^(-1) + G_1^(-1)) / (n(n+1)(n+2)) = H(n,l)/2`.
pub fn verify_quotients(table: &CoeffTable, kind: QuotientKind, l: u32, a: u32, u: u32, n: u32) -> Result<CheckResult, IdentityError> {
    require(l >= 1 && n >= 1 && a >= 1, || format!("quotients need l, n, a >= 1 (l={l}, n={n}, a={a})"))?;
    require(u <= a, || format!("quotients need u <= a (u={u}, a={a})"))?;
    let mut res = CheckResult::new(kind.id(), &[("l", l.into()), ("a", a.into()), ("u", u.into()), ("n", n.into())]);
    let c = table.c_coeffs(l, a)?;
    let cu = rat(c[u as usize].clone());
    let (li, ui, ni) = (i64::from(l), i64::from(u), i64::from(n));
    let n01 = ni * (ni + 1);
    let n012 = n01 * (ni + 2);
    let sign = int(alternating(ni));
    let rf = |x: i64, k: i64| rat(if k < 0 { Integer::one() } else { rising_factorial(x, k as u32) });
    let c0_over = || rat(c[0].clone()) / rat(int(li * (li + 1)));
    match kind {
        QuotientKind::F => {
            let f = rat(f_value(table, l, a, u, n)?);
            if u >= 1 {
                let r = rf(li + 1, ui - 1);
                let display = cu * rat(binomial(ni + 1 + li + ui, ni + 2) * binomial(ni - 1, ni - li - ui) * sign) * &r * &r;
                expect_quotient(&mut res, 0, &f, n012, &display);
            } else {
                let display = rat(c[0].clone()) / rat(int(li)) * Rational::new(int(2), int(ni + 2))
                    * rat(binomial(ni + li + 1, li) * binomial(ni - 1, li - 1) * sign);
                expect_quotient(&mut res, 0, &(f * rat(int(2))), n012, &display);
            }
        }
        QuotientKind::Gplus => {
            let g = g_plus_value(table, l, a, u, n)?;
            let display = match u {
                0 => c0_over() * rat(binomial(ni + li + 1, li + 1) * binomial(ni - 1, li - 1)),
                1 => cu * rat(binomial(ni + li + 2, li + 2) * binomial(ni - 1, li)),
                _ => cu * rat(binomial(ni + 1 + li + ui, li + ui + 1) * binomial(ni - 1, li + ui - 1)) * rf(li + 1, ui) * rf(li + 2, ui - 2),
            };
            expect_quotient(&mut res, 0, &g, n01, &display);
        }
        QuotientKind::Gminus => {
            let g = g_minus_value(table, l, a, u, n)?;
            match u {
                0 | 1 => {
                    let display = if u == 0 {
                        c0_over() * rat(binomial(ni + li + 1, li) * binomial(ni - 1, li - 1))
                    } else {
                        cu * rat(binomial(ni + li + 2, li + 1) * binomial(ni - 1, li))
                    };
                    expect_quotient(&mut res, 0, &g, n01, &display);
                    if a >= 2 {
                        let q = &g / rat(int(n012));
                        if !q.is_integer() {
                            res.fail(&[("check", int(1)), ("numerator", q.numer().clone()), ("denominator", q.denom().clone())]);
                        }
                    }
                }
                _ => {
                    let display = cu * rat(binomial(ni + 1 + li + ui, li + ui - 1) * binomial(ni - 1, li + ui - 1)) * rf(li + 1, ui - 1) * rf(li + 2, ui - 2);
                    expect_quotient(&mut res, 0, &g, n012, &display);
                }
            }
            if a == 1 {
                res.absorb(verify_h_pairing(table, l, n)?);
            }
        }
    }
    Ok(res)
}

/// `(G_0^(-1)(l,1,n) + G_1^(-1)(l,1,n)) / (n(n+1)(n+2)) = H(n,l)/2`.
pub fn verify_h_pairing(table: &CoeffTable, l: u32, n: u32) -> Result<CheckResult, IdentityError> {
    require(l >= 1 && n >= 1, || "pairing needs l, n >= 1".to_string())?;
    let mut res = CheckResult::new("h-pairing", &[("l", l.into()), ("n", n.into())]);
    let ni = i64::from(n);
    let lhs = (g_minus_value(table, l, 1, 0, n)? + g_minus_value(table, l, 1, 1, n)?) / rat(int(ni * (ni + 1) * (ni + 2)));
    let h = h_val(n, l);
    let twice = lhs * rat(int(2));
    if twice != rat(h.clone()) {
        res.fail(&[("twice_lhs_numerator", twice.numer().clone()), ("twice_lhs_denominator", twice.denom().clone()), ("H", h)]);
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(r: Result<CheckResult, IdentityError>) -> CheckResult {
        r.expect("verifier error")
    }

    #[test]
    fn telescope_examples() {
        assert!(verify_telescope(Sign::Minus, 0, 0, 10).pass);
        assert!(verify_telescope(Sign::Minus, 2, 1, 30).pass);
        assert!(verify_telescope(Sign::Plus, 3, 2, 30).pass);
        // trivial instance written out: (-1)^k (2k+1) = G(k+1) - G(k), G(k) = (-1)^{k+1} k
        for k in 0..10i64 {
            let g = |k: i64| alternating(k + 1) * k;
            assert_eq!(alternating(k) * (2 * k + 1), g(k + 1) - g(k));
        }
    }

    #[test]
    fn summed_examples() {
        // 1 - 3 + 5 - 7 = -4 = (-1)^3 * 4
        let direct: i64 = (0..=3).map(|k| alternating(k) * (2 * k + 1)).sum();
        assert_eq!(direct, -4);
        assert!(verify_summed(Sign::Minus, 0, 0, 3).pass);
        // 1 + 3 + 5 + 7 = 16 = 4*4*1/1
        assert!(verify_summed(Sign::Plus, 0, 0, 3).pass);
        assert!(verify_summed(Sign::Plus, 1, 1, 25).pass);
    }

    #[test]
    fn telescope_and_summed_agree() {
        for sign in [Sign::Plus, Sign::Minus] {
            for l in 0..=4 {
                for u in 0..=4 {
                    let (l64, u64_) = (i64::from(l), i64::from(u));
                    for n in 0..=12i64 {
                        let partial: Integer = (0..=n).map(|k| telescope_summand(sign, l64, u64_, k)).sum();
                        let (g_num, g_den) = telescope_certificate(sign, l64, u64_, n + 1);
                        let (z_num, _) = telescope_certificate(sign, l64, u64_, 0);
                        assert!(z_num.is_zero());
                        assert_eq!(partial, g_num / g_den);
                    }
                }
            }
        }
    }

    #[test]
    fn broken_identity_is_reported() {
        let mut r = CheckResult::new("t", &[]);
        r.expect_eq(&pt(&[("k", 3)]), &int(1), &int(2));
        r.expect_eq(&pt(&[("k", 4)]), &int(1), &int(5));
        assert!(!r.pass);
        let w = r.witness.unwrap();
        assert_eq!(w["k"], int(3));
        assert_eq!(w["rhs"], int(2));
    }

    #[test]
    fn lemma_2_4_examples() {
        assert!(ok(verify_lemma_2_4(1, 1)).pass);
        assert!(ok(verify_lemma_2_4(2, 1)).pass);
        assert!(ok(verify_lemma_2_4(2, 3)).pass);
        assert_eq!(binomial(1, 2), int(0));
        assert!(verify_lemma_2_4(0, 1).is_err());
        for n in 1..=30 {
            for l in 1..=30 {
                assert!(ok(verify_lemma_2_4(n, l)).pass, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn pfaff_saalschutz_examples() {
        assert_eq!(pfaff_saalschutz_sides(0, 0, 0, 0), (int(1), int(1)));
        // C(4,2) C(4,1) = 24; sum: 1*2*3 + 6*1*3 = 24
        assert_eq!(pfaff_saalschutz_sides(3, 2, 1, 2), (int(24), int(24)));
        for x in 0..=8 {
            for y in 0..=8 {
                for a in 0..=6 {
                    for b in 0..=6 {
                        assert!(verify_pfaff_saalschutz(x, y, a, b).pass);
                    }
                }
            }
        }
    }

    #[test]
    fn w_and_h_values() {
        for n in 1..=20 {
            assert_eq!(w_val(n, 1), int(1));
            assert_eq!(h_val(n, 0), int(2));
            for l in 1..=20 {
                assert_eq!(Rational::from_integer(w_val(n, l)), w_val_rational(n, l), "n={n} l={l}");
            }
        }
        assert_eq!(w_val(2, 2), int(2));
        assert_eq!((w_val(3, 1), w_val(3, 2), w_val(3, 3)), (int(1), int(5), int(5)));
    }

    #[test]
    fn w_pairs_are_even() {
        for n in 1..=30 {
            for b in 1..=15 {
                assert!((w_val(n, 2 * b) + w_val(n, 2 * b + 1)).is_even(), "n={n} b={b}");
            }
        }
    }

    #[test]
    fn lemma_3_4_examples() {
        for n in 1..=10 {
            assert!(ok(verify_lemma_3_4(n, 0)).pass);
        }
        assert!(ok(verify_lemma_3_4(3, 1)).pass);
        let h_sum = h_val(3, 0) + h_val(3, 1) + h_val(3, 2);
        assert!(h_sum.is_even());
    }

    #[test]
    fn lemma_3_5_examples() {
        let vals = |j| (j..=2 * j).map(|l| a_pair(j, j, l)).collect::<Vec<_>>();
        assert_eq!(vals(1), vec![int(1), int(3)]);
        assert_eq!(vals(2), vec![int(2), int(16), int(20)]);
        assert!(vals(3).iter().all(|v| v.is_odd()));
        for j in 1..=16 {
            assert!(ok(verify_lemma_3_5(j)).pass, "J={j}");
        }
        assert!(verify_lemma_3_5(0).is_err());
        // excluded edge: A_{0,0}^(0) is odd
        assert_eq!(a_pair(0, 0, 0), int(1));
    }

    #[test]
    fn compositions_enumerate_exactly() {
        let mut seen = Vec::new();
        for_each_bounded_composition(3, 2, 2, |t| seen.push(t.to_vec()));
        assert_eq!(seen, vec![vec![1, 2], vec![2, 1]]);
        let mut count = 0;
        for_each_bounded_composition(4, 3, 4, |_| count += 1);
        assert_eq!(count, 15);
        let mut none = 0;
        for_each_bounded_composition(9, 2, 4, |_| none += 1);
        assert_eq!(none, 0);
    }

    #[test]
    fn lemma_2_6_examples() {
        let t = CoeffTable::new();
        assert!(ok(verify_lemma_2_6(&t, 1, 2, 3, 2)).pass);
        assert!(ok(verify_lemma_2_6(&t, 1, 2, 2, 1)).pass);
        assert_eq!(row_at(&lemma_2_6_sums(&t, 1, 2, 2).unwrap(), 1), int(2));
        for total in 0..=8 {
            for l in 1..=8 {
                assert!(ok(verify_lemma_2_6(&t, 2, 2, total, l)).pass, "I={total} l={l}");
            }
        }
        // l = 0 excluded: the all-zero tuple contributes 1
        assert!(lemma_2_6_sums(&t, 1, 2, 0).unwrap()[0].is_odd());
    }

    #[test]
    fn lemma_3_6_examples() {
        let t = CoeffTable::new();
        for total in [1, 3, 5] {
            for l in 0..=10 {
                assert!(ok(verify_lemma_3_6(&t, 1, 3, total, l, 2)).pass);
            }
        }
        for l in 0..=3 {
            assert!(ok(verify_lemma_3_6(&t, 1, 3, 3, l, 1)).pass);
        }
        assert!(verify_lemma_3_6(&t, 1, 3, 2, 1, 1).is_err());
    }

    #[test]
    fn lemma_3_7_example() {
        let t = CoeffTable::new();
        // H(2,0)*0 + H(2,1)*1 + H(2,2)*3 = 7 + 15 = 22
        assert_eq!((h_val(2, 0), h_val(2, 1), h_val(2, 2)), (int(2), int(7), int(5)));
        assert!(ok(verify_lemma_3_7(&t, 1, 2, 2, 2, 1)).pass);
        assert!(verify_lemma_3_7(&t, 1, 2, 3, 2, 1).is_err());
    }

    #[test]
    fn lemma_2_5_examples() {
        let t = CoeffTable::new();
        for l in 1..=12 {
            for a in 1..=4 {
                assert!(ok(verify_lemma_2_5(&t, l, a)).pass, "l={l} a={a}");
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let t = CoeffTable::new();
        // G_0^(-1)(1,1,2) = K_0/2 * 4 * C(3,2) = 24; /(2*3) = 4
        assert_eq!(g_minus_value(&t, 1, 1, 0, 2).unwrap(), Rational::from_integer(int(24)));
        assert!(ok(verify_quotients(&t, QuotientKind::Gminus, 1, 1, 0, 2)).pass);
        for kind in [QuotientKind::F, QuotientKind::Gplus, QuotientKind::Gminus] {
            for a in 1..=3 {
                for u in 0..=a {
                    for (l, n) in [(1, 1), (2, 5), (4, 3), (3, 9)] {
                        assert!(ok(verify_quotients(&t, kind, l, a, u, n)).pass, "{kind:?} l={l} a={a} u={u} n={n}");
                    }
                }
            }
        }
        assert!(verify_quotients(&t, QuotientKind::F, 1, 1, 2, 1).is_err());
    }

    #[test]
    fn h_pairing_grid() {
        let t = CoeffTable::new();
        for n in 1..=10 {
            for l in 1..=10 {
                assert!(ok(verify_h_pairing(&t, l, n)).pass, "n={n} l={l}");
            }
        }
    }
}
