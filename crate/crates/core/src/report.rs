//! Flat records shared by every output format.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::exactmath::{decimal, Integer};
use crate::identities::CheckResult;
use crate::theorems::{DivisibilityReport, TheoremId};

/// A parameter value: small integer or tag such as a family name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum Param {
    Int(i64),
    Text(String),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Int(v) => write!(f, "{v}"),
            Param::Text(v) => f.write_str(v),
        }
    }
}

/// One emitted line: check id, parameters, optional modulus, verdict and
/// the witness values of a failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub check: String,
    pub params: BTreeMap<String, Param>,
    #[serde(serialize_with = "decimal::option")]
    pub modulus: Option<Integer>,
    pub pass: bool,
    #[serde(serialize_with = "decimal::map")]
    pub witness: Option<BTreeMap<String, Integer>>,
}

impl Record {
    /// `k=v` pairs joined by `sep`, in key order.
    pub fn params_string(&self, sep: &str) -> String {
        self.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(sep)
    }

    pub fn witness_string(&self, sep: &str) -> String {
        match &self.witness {
            Some(w) => w.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(sep),
            None => String::new(),
        }
    }
}

pub fn check_id(theorem: TheoremId) -> String {
    match theorem {
        TheoremId::Conjecture => "conj-5.3".to_string(),
        TheoremId::ChenGuo => "chen-guo".to_string(),
        other => format!("thm-{}", other.id()),
    }
}

impl From<&DivisibilityReport> for Record {
    fn from(r: &DivisibilityReport) -> Self {
        let s = &r.spec;
        let mut params = BTreeMap::new();
        params.insert("family".to_string(), Param::Text(s.family.tag().to_string()));
        params.insert("eps".to_string(), Param::Int(s.sign.value()));
        for (k, v) in [("n", s.n), ("h", s.h), ("m", s.m), ("a", s.a)] {
            params.insert(k.to_string(), Param::Int(v.into()));
        }
        let witness = r.witness.as_ref().map(|w| {
            BTreeMap::from([("index".to_string(), Integer::from(w.index)), ("value".to_string(), w.value.clone())])
        });
        Record { check: check_id(r.theorem), params, modulus: Some(r.modulus.clone()), pass: r.pass, witness }
    }
}

impl From<&CheckResult> for Record {
    fn from(r: &CheckResult) -> Self {
        Record {
            check: r.id.clone(),
            params: r.params.iter().map(|(k, v)| (k.clone(), Param::Int(*v))).collect(),
            modulus: None,
            pass: r.pass,
            witness: r.witness.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::{verify_lemma_3_5, Sign};
    use crate::sequences::{Family, PolyCache};
    use crate::theorems::{sharpness_probe, SumSpec};

    #[test]
    fn divisibility_record_serializes_big_values_as_strings() {
        let cache = PolyCache::new();
        let spec = SumSpec::new(Family::Delannoy, 2, 1, 1, 1, Sign::Plus).unwrap();
        let failing = sharpness_probe(TheoremId::Delannoy, &[spec], &cache).unwrap();
        let rec = Record::from(&failing[0]);
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(
            json,
            r#"{"check":"thm-2.1","params":{"a":1,"eps":1,"family":"D","h":1,"m":1,"n":2},"modulus":"24","pass":false,"witness":{"index":"0","value":"36"}}"#
        );
        assert_eq!(rec.params_string(";"), "a=1;eps=1;family=D;h=1;m=1;n=2");
        assert_eq!(rec.witness_string(";"), "index=0;value=36");
    }

    #[test]
    fn check_record_has_null_modulus_and_witness() {
        let rec = Record::from(&verify_lemma_3_5(3).unwrap());
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(json, r#"{"check":"lemma-3.5","params":{"J":3},"modulus":null,"pass":true,"witness":null}"#);
    }
}
