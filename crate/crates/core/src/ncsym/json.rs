//! JSON interchange form of an element:
//! `{"basis": "p", "degree": 3, "terms": [{"partition": "1,3/2", "num": -1, "den": 2}]}`.
//! Terms appear in canonical partition order.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Basis, NcSymElement, Rational};
use crate::error::{Error, Result};
use crate::partitions::SetPartition;

/// An integer written as a JSON number when it fits in `i64`, otherwise as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntRepr {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for IntRepr {
    fn from(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(x) => IntRepr::Small(x),
            None => IntRepr::Big(v.to_string()),
        }
    }
}

impl IntRepr {
    pub fn to_bigint(&self) -> Result<BigInt> {
        match self {
            IntRepr::Small(x) => Ok(BigInt::from(*x)),
            IntRepr::Big(s) => s
                .parse()
                .map_err(|_| Error::parse(0, format!("bad integer `{s}`"))),
        }
    }
}

pub fn rational_parts(c: &Rational) -> (IntRepr, IntRepr) {
    (IntRepr::from(c.numer()), IntRepr::from(c.denom()))
}

pub fn rational_from_parts(num: &IntRepr, den: &IntRepr) -> Result<Rational> {
    let den = den.to_bigint()?;
    if den.is_zero() {
        return Err(Error::parse(0, "zero denominator"));
    }
    Ok(Rational::new(num.to_bigint()?, den))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub partition: String,
    pub num: IntRepr,
    pub den: IntRepr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub basis: Basis,
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

impl From<&NcSymElement> for ElementJson {
    fn from(f: &NcSymElement) -> Self {
        ElementJson {
            basis: f.basis(),
            degree: f.degree(),
            terms: f
                .terms()
                .iter()
                .map(|(p, c)| {
                    let (num, den) = rational_parts(c);
                    TermJson {
                        partition: p.to_string(),
                        num,
                        den,
                    }
                })
                .collect(),
        }
    }
}

impl TryFrom<&ElementJson> for NcSymElement {
    type Error = Error;

    fn try_from(j: &ElementJson) -> Result<Self> {
        let terms = j
            .terms
            .iter()
            .map(|t| {
                let p: SetPartition = t.partition.parse()?;
                Ok((p, rational_from_parts(&t.num, &t.den)?))
            })
            .collect::<Result<Vec<_>>>()?;
        NcSymElement::from_terms(j.basis, j.degree, terms)
    }
}

impl NcSymElement {
    pub fn to_json(&self) -> ElementJson {
        ElementJson::from(self)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("element serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: ElementJson = serde_json::from_str(s).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        NcSymElement::try_from(&j)
    }
}
