//! Weighted power sums of Delannoy and Schröder polynomials and their
//! divisibility checks.
//!
//! The checkers build every sum directly from [`crate::sequences`] and
//! [`crate::polyring`]; none of them touches the reduction tables, so the
//! lemma verifiers remain an independent line of evidence.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactmath::{decimal, gcd_many, Integer};
use crate::identities::Sign;
use crate::polyring::{CoeffWitness, Divisibility, IntPoly};
use crate::sequences::{Family, PolyCache, SequenceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error("unknown theorem id {0:?} (expected 2.1, 2.2, 3.1, 5.3 or chen-guo)")]
    UnknownTheorem(String),
}

/// Which divisibility statement a report belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// Delannoy sums, both signs, modulus `n(n+1)(n+2)/gcd(2,n)`.
    Delannoy,
    /// Alternating Delannoy sums with the stronger modulus.
    DelannoyAlternating,
    /// Schröder sums, both signs.
    Schroder,
    /// The `a = 1` statements for both families, routed to the three above.
    Conjecture,
    /// `n | sum_{k<n}`.
    ChenGuo,
}

impl TheoremId {
    pub const ALL: [TheoremId; 5] = [
        TheoremId::Delannoy,
        TheoremId::DelannoyAlternating,
        TheoremId::Schroder,
        TheoremId::Conjecture,
        TheoremId::ChenGuo,
    ];

    pub fn id(self) -> &'static str {
        match self {
            TheoremId::Delannoy => "2.1",
            TheoremId::DelannoyAlternating => "2.2",
            TheoremId::Schroder => "3.1",
            TheoremId::Conjecture => "5.3",
            TheoremId::ChenGuo => "chen-guo",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for TheoremId {
    type Err = TheoremError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .or_else(|| (s == "cg").then_some(TheoremId::ChenGuo))
            .ok_or_else(|| TheoremError::UnknownTheorem(s.to_string()))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

/// One instance of `sum_k sign^k k^a (k+1)^a (2k+1) P_k^(h)(x)^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SumSpec {
    pub family: Family,
    pub n: u32,
    pub h: u32,
    pub m: u32,
    pub a: u32,
    pub sign: Sign,
}

impl SumSpec {
    pub fn new(family: Family, n: u32, h: u32, m: u32, a: u32, sign: Sign) -> Result<Self, TheoremError> {
        let spec = Self { family, n, h, m, a, sign };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), TheoremError> {
        for (name, v) in [("n", self.n), ("h", self.h), ("m", self.m), ("a", self.a)] {
            if v == 0 {
                return Err(TheoremError::InvalidSpec(format!("{name} must be at least 1")));
            }
        }
        Ok(())
    }

    /// Cartesian product in canonical order.
    pub fn grid(
        families: &[Family],
        n: impl IntoIterator<Item = u32> + Clone,
        h: impl IntoIterator<Item = u32> + Clone,
        m: impl IntoIterator<Item = u32> + Clone,
        a: impl IntoIterator<Item = u32> + Clone,
        signs: &[Sign],
    ) -> Vec<SumSpec> {
        let mut out = Vec::new();
        for &family in families {
            for n in n.clone() {
                for h in h.clone() {
                    for m in m.clone() {
                        for a in a.clone() {
                            for &sign in signs {
                                out.push(SumSpec { family, n, h, m, a, sign });
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for SumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={} h={} m={} a={} eps={}", self.family, self.n, self.h, self.m, self.a, self.sign)
    }
}

/// Divisibility of the same sum by a single factor of the modulus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorCheck {
    #[serde(serialize_with = "decimal::serialize")]
    pub divisor: Integer,
    pub pass: bool,
    pub witness: Option<CoeffWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub spec: SumSpec,
    pub theorem: TheoremId,
    #[serde(serialize_with = "decimal::serialize")]
    pub modulus: Integer,
    pub pass: bool,
    pub witness: Option<CoeffWitness>,
    pub quotient_degree: Option<usize>,
    pub factors: Vec<FactorCheck>,
}

fn int(v: u64) -> Integer {
    Integer::from(v)
}

fn term_weight(sign: Sign, k: u32, a: u32) -> Integer {
    let k = u64::from(k);
    let base = Pow::pow(int(k * (k + 1)), a) * (2 * k + 1);
    if sign.pow(k as i64) < 0 {
        -base
    } else {
        base
    }
}

fn power_sum(spec: &SumSpec, ks: impl Iterator<Item = u32>, cache: &PolyCache) -> Result<IntPoly, TheoremError> {
    let mut acc = IntPoly::zero();
    for k in ks {
        let weight = term_weight(spec.sign, k, spec.a);
        if weight.is_zero() {
            continue;
        }
        acc += &cache.power(spec.family, k, spec.h, spec.m)?.scalar_mul(&weight);
    }
    Ok(acc)
}

/// `sum_{k=1}^{n} sign^k k^a (k+1)^a (2k+1) P_k^(h)(x)^m`.
pub fn weighted_power_sum(spec: &SumSpec, cache: &PolyCache) -> Result<IntPoly, TheoremError> {
    spec.validate()?;
    power_sum(spec, 1..=spec.n, cache)
}

/// The same summand over `0 <= k <= n-1`.
pub fn chen_guo_sum(spec: &SumSpec, cache: &PolyCache) -> Result<IntPoly, TheoremError> {
    spec.validate()?;
    power_sum(spec, 0..spec.n, cache)
}

fn triple(n: u32) -> Integer {
    let n = u64::from(n);
    int(n * (n + 1) * (n + 2))
}

fn gcd_of(values: &[u64]) -> Integer {
    let v: Vec<Integer> = values.iter().map(|&x| int(x)).collect();
    gcd_many(&v).expect("2 is among the values")
}

/// `n(n+1)(n+2) / gcd(2, n)`.
pub fn modulus_two_n(n: u32) -> Integer {
    triple(n) / gcd_of(&[2, n.into()])
}

/// `n(n+1)(n+2) / gcd(2, m-1, n)`.
pub fn modulus_two_m_n(n: u32, m: u32) -> Integer {
    triple(n) / gcd_of(&[2, u64::from(m) - 1, n.into()])
}

fn factor_check(sum: &IntPoly, divisor: Integer) -> FactorCheck {
    let d = sum.divisible_by(&divisor).expect("divisor is positive");
    FactorCheck { pass: d.is_divisible(), witness: d.witness().cloned(), divisor }
}

fn report(spec: &SumSpec, theorem: TheoremId, sum: &IntPoly, modulus: Integer, factors: Vec<Integer>) -> DivisibilityReport {
    let (pass, witness, quotient_degree) = match sum.divisible_by(&modulus).expect("modulus is positive") {
        Divisibility::Divisible => (true, None, Some(sum.degree().unwrap_or(0))),
        Divisibility::NotDivisible(w) => (false, Some(w), None),
    };
    DivisibilityReport {
        spec: *spec,
        theorem,
        modulus,
        pass,
        witness,
        quotient_degree,
        factors: factors.into_iter().map(|d| factor_check(sum, d)).collect(),
    }
}

fn require(cond: bool, msg: &str) -> Result<(), TheoremError> {
    if cond {
        Ok(())
    } else {
        Err(TheoremError::InvalidSpec(msg.to_string()))
    }
}

fn single_factors(n: u32) -> Vec<Integer> {
    let n = u64::from(n);
    vec![int(n), int(n + 1), int(n + 2)]
}

/// Delannoy family, either sign: `n(n+1)(n+2)/gcd(2,n)` divides the sum.
pub fn check_thm_2_1(spec: &SumSpec, cache: &PolyCache) -> Result<DivisibilityReport, TheoremError> {
    require(spec.family == Family::Delannoy, "this theorem concerns the D family")?;
    let sum = weighted_power_sum(spec, cache)?;
    Ok(report(spec, TheoremId::Delannoy, &sum, modulus_two_n(spec.n), single_factors(spec.n)))
}

/// Alternating Delannoy sums: `n(n+1)(n+2)` for `h > 1`, and
/// `n(n+1)(n+2)/gcd(2,m-1,n)` for `h = 1`.
pub fn check_thm_2_2(spec: &SumSpec, cache: &PolyCache) -> Result<DivisibilityReport, TheoremError> {
    require(spec.family == Family::Delannoy, "this theorem concerns the D family")?;
    require(spec.sign == Sign::Minus, "this theorem concerns alternating sums (eps = -1)")?;
    let sum = weighted_power_sum(spec, cache)?;
    let modulus = if spec.h > 1 { triple(spec.n) } else { modulus_two_m_n(spec.n, spec.m) };
    Ok(report(spec, TheoremId::DelannoyAlternating, &sum, modulus, single_factors(spec.n)))
}

/// Schröder family: `gcd(2,n)` for `eps = +1`, `gcd(2,m-1,n)` for `eps = -1`.
pub fn check_thm_3_1(spec: &SumSpec, cache: &PolyCache) -> Result<DivisibilityReport, TheoremError> {
    require(spec.family == Family::Schroder, "this theorem concerns the S family")?;
    let sum = weighted_power_sum(spec, cache)?;
    let modulus = match spec.sign {
        Sign::Plus => modulus_two_n(spec.n),
        Sign::Minus => modulus_two_m_n(spec.n, spec.m),
    };
    let n = u64::from(spec.n);
    Ok(report(spec, TheoremId::Schroder, &sum, modulus, vec![int(n * (n + 1)), int((n + 1) * (n + 2))]))
}

/// The `a = 1` statement for `family` and `sign`, routed to the matching checker.
pub fn check_conjecture_5_3(family: Family, sign: Sign, n: u32, h: u32, m: u32, cache: &PolyCache) -> Result<DivisibilityReport, TheoremError> {
    let spec = SumSpec::new(family, n, h, m, 1, sign)?;
    let mut rep = match (family, sign) {
        (Family::Delannoy, Sign::Plus) => check_thm_2_1(&spec, cache),
        (Family::Delannoy, Sign::Minus) => check_thm_2_2(&spec, cache),
        (Family::Schroder, _) => check_thm_3_1(&spec, cache),
    }?;
    rep.theorem = TheoremId::Conjecture;
    Ok(rep)
}

/// `n | sum_{k=0}^{n-1} sign^k k^a (k+1)^a (2k+1) P_k^(h)(x)^m`.
pub fn check_chen_guo_special(spec: &SumSpec, cache: &PolyCache) -> Result<DivisibilityReport, TheoremError> {
    let sum = chen_guo_sum(spec, cache)?;
    Ok(report(spec, TheoremId::ChenGuo, &sum, int(spec.n.into()), Vec::new()))
}

/// The weighted power sum checked against an arbitrary positive modulus.
pub fn check_with_modulus(spec: &SumSpec, theorem: TheoremId, modulus: &Integer, cache: &PolyCache) -> Result<DivisibilityReport, TheoremError> {
    require(*modulus >= Integer::one(), "modulus must be positive")?;
    let sum = weighted_power_sum(spec, cache)?;
    Ok(report(spec, theorem, &sum, modulus.clone(), Vec::new()))
}

/// Dispatches `spec` to the checker for `theorem`.
pub fn check(theorem: TheoremId, spec: &SumSpec, cache: &PolyCache) -> Result<DivisibilityReport, TheoremError> {
    match theorem {
        TheoremId::Delannoy => check_thm_2_1(spec, cache),
        TheoremId::DelannoyAlternating => check_thm_2_2(spec, cache),
        TheoremId::Schroder => check_thm_3_1(spec, cache),
        TheoremId::Conjecture => {
            require(spec.a == 1, "the conjecture is stated for a = 1")?;
            check_conjecture_5_3(spec.family, spec.sign, spec.n, spec.h, spec.m, cache)
        }
        TheoremId::ChenGuo => check_chen_guo_special(spec, cache),
    }
}

/// Whether `theorem` has a checker for `spec` (family and sign match).
pub fn applies(theorem: TheoremId, spec: &SumSpec) -> bool {
    match theorem {
        TheoremId::Delannoy => spec.family == Family::Delannoy,
        TheoremId::DelannoyAlternating => spec.family == Family::Delannoy && spec.sign == Sign::Minus,
        TheoremId::Schroder => spec.family == Family::Schroder,
        TheoremId::Conjecture => spec.a == 1,
        TheoremId::ChenGuo => true,
    }
}

/// Runs `theorem` over `specs` in parallel; reports come back in input order.
pub fn sweep(theorem: TheoremId, specs: &[SumSpec], cache: &PolyCache) -> Result<Vec<DivisibilityReport>, TheoremError> {
    specs.par_iter().map(|s| check(theorem, s, cache)).collect()
}

/// Re-checks each spec against the full `n(n+1)(n+2)` and returns only the
/// failures, in input order.
pub fn sharpness_probe(theorem: TheoremId, specs: &[SumSpec], cache: &PolyCache) -> Result<Vec<DivisibilityReport>, TheoremError> {
    let reports: Result<Vec<_>, _> = specs
        .par_iter()
        .filter(|s| applies(theorem, s))
        .map(|s| check_with_modulus(s, theorem, &triple(s.n), cache))
        .collect();
    Ok(reports?.into_iter().filter(|r| !r.pass).collect())
}
