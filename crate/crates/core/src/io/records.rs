//! Canonical text records for elements, coefficients and errors.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::coeff::{CoeffRing, Laurent, LaurentPoly, QSqrt, SqrtQ};
use crate::complex::ComplexClass;
use crate::error::{Error, Result};
use crate::hall::{DHElement, HallElement};
use crate::quiver::RepIsoClass;

fn parse_rat(s: &str) -> Result<BigRational> {
    s.trim().parse::<BigRational>().map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
}

/// A coefficient ring whose elements have a record form.
pub trait RecordRing: CoeffRing {
    type Record: Serialize + for<'de> Deserialize<'de> + Clone + std::fmt::Debug + PartialEq;
    fn to_record(&self, x: &Self::Elem) -> Self::Record;
    fn from_record(&self, r: &Self::Record) -> Result<Self::Elem>;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SqrtRecord {
    pub rat: String,
    pub sqrt_part: String,
}

impl RecordRing for SqrtQ {
    type Record = SqrtRecord;
    fn to_record(&self, x: &QSqrt) -> SqrtRecord {
        SqrtRecord { rat: x.rat.to_string(), sqrt_part: x.sqrt_part.to_string() }
    }
    fn from_record(&self, r: &SqrtRecord) -> Result<QSqrt> {
        Ok(self.elem(parse_rat(&r.rat)?, parse_rat(&r.sqrt_part)?))
    }
}

/// c·v^exp.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaurentTerm {
    pub exp: i64,
    pub coeff: String,
}

pub fn laurent_record(p: &LaurentPoly) -> Vec<LaurentTerm> {
    p.terms().map(|(e, c)| LaurentTerm { exp: *e, coeff: c.to_string() }).collect()
}

pub fn laurent_from_record(r: &[LaurentTerm]) -> Result<LaurentPoly> {
    let mut p = LaurentPoly::zero();
    for t in r {
        p.add_term(t.exp, parse_rat(&t.coeff)?);
    }
    Ok(p)
}

impl RecordRing for Laurent {
    type Record = Vec<LaurentTerm>;
    fn to_record(&self, x: &LaurentPoly) -> Vec<LaurentTerm> {
        laurent_record(x)
    }
    fn from_record(&self, r: &Vec<LaurentTerm>) -> Result<LaurentPoly> {
        laurent_from_record(r)
    }
}

/// A basis class with a text form on a fixed number of vertices.
pub trait ClassText: Ord + Clone + std::fmt::Display {
    fn parse_class(n: usize, s: &str) -> Result<Self>;
}

impl ClassText for RepIsoClass {
    fn parse_class(n: usize, s: &str) -> Result<Self> {
        RepIsoClass::parse(n, s)
    }
}

impl ClassText for ComplexClass {
    fn parse_class(n: usize, s: &str) -> Result<Self> {
        ComplexClass::parse(n, s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord<C> {
    pub class: String,
    pub coeff: C,
}

/// Terms in canonical class order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementRecord<C> {
    pub terms: Vec<TermRecord<C>>,
}

pub fn serialize_element<K: ClassText, R: RecordRing>(x: &HallElement<K, R>) -> ElementRecord<R::Record> {
    let r = x.ring();
    ElementRecord { terms: x.terms().map(|(k, c)| TermRecord { class: k.to_string(), coeff: r.to_record(c) }).collect() }
}

pub fn parse_element<K: ClassText, R: RecordRing>(ring: &R, n: usize, rec: &ElementRecord<R::Record>) -> Result<HallElement<K, R>> {
    let mut x = HallElement::zero(ring);
    for t in &rec.terms {
        x.add_term(K::parse_class(n, &t.class)?, ring.from_record(&t.coeff)?);
    }
    Ok(x)
}

/// b_α * (a_r u_r) with coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DHTermRecord {
    pub alpha: Vec<i64>,
    pub radical_class: String,
    pub coeff: SqrtRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DHElementRecord {
    pub terms: Vec<DHTermRecord>,
}

pub fn serialize_dh(x: &DHElement) -> DHElementRecord {
    let r = x.ring();
    DHElementRecord {
        terms: x
            .terms()
            .map(|((alpha, rad), c)| DHTermRecord { alpha: alpha.clone(), radical_class: rad.to_string(), coeff: r.to_record(c) })
            .collect(),
    }
}

pub fn parse_dh(ring: &SqrtQ, n: usize, rec: &DHElementRecord) -> Result<DHElement> {
    let mut x = HallElement::zero(ring);
    for t in &rec.terms {
        if t.alpha.len() != n {
            return Err(Error::Parse(format!("alpha {:?} does not have {n} entries", t.alpha)));
        }
        let r = ComplexClass::parse(n, &t.radical_class)?;
        if !r.is_radical() {
            return Err(Error::Parse(format!("{} has a contractible summand", t.radical_class)));
        }
        x.add_term((t.alpha.clone(), r), ring.from_record(&t.coeff)?);
    }
    Ok(x)
}

/// Machine-readable form of an error, with the offending triple or class when there is one.
pub fn error_record(e: &Error) -> Value {
    let mut rec = json!({
        "kind": e.kind(),
        "message": e.to_string(),
        "exit_code": e.exit_code(),
    });
    let ctx = match e {
        Error::HoldoutMismatch { triple, prime, predicted, counted } => {
            json!({ "triple": triple, "prime": prime, "predicted": predicted, "counted": counted })
        }
        Error::CapExceeded { what, needed, cap } => json!({ "what": what, "needed": needed, "cap": cap }),
        Error::NotARoot(r) => json!({ "root": r }),
        Error::WindowMiss(s) | Error::InvalidClass(s) | Error::NonIntegral(s) | Error::VerificationFailed(s) => {
            json!({ "subject": s })
        }
        _ => Value::Null,
    };
    if !ctx.is_null() {
        rec["context"] = ctx;
    }
    json!({ "error": rec })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    #[test]
    fn empty_and_unit_records() {
        let r = SqrtQ::new(3);
        let z: HallElement<RepIsoClass, SqrtQ> = HallElement::zero(&r);
        assert!(serialize_element(&z).terms.is_empty());
        let unit: DHElement = HallElement::basis(&r, (vec![0, 0], ComplexClass::zero(2)));
        let rec = serialize_dh(&unit);
        assert_eq!(rec.terms.len(), 1);
        assert_eq!(rec.terms[0].radical_class, "0");
        assert_eq!(rec.terms[0].coeff, SqrtRecord { rat: "1".into(), sqrt_part: "0".into() });
        assert_eq!(parse_dh(&r, 2, &rec).unwrap(), unit);
    }

    #[test]
    fn laurent_round_trip() {
        let x: HallElement<ComplexClass, Laurent> = HallElement::from_terms(
            &Laurent,
            [(ComplexClass::k(&[1, 0]), LaurentPoly::from_terms([(-1, rat(2)), (3, rat(-1))]))],
        );
        let rec = serialize_element(&x);
        let text = serde_json::to_string(&rec).unwrap();
        let back: ElementRecord<Vec<LaurentTerm>> = serde_json::from_str(&text).unwrap();
        assert_eq!(parse_element::<ComplexClass, _>(&Laurent, 2, &back).unwrap(), x);
    }

    #[test]
    fn malformed_records_are_rejected() {
        let r = SqrtQ::new(2);
        let bad = DHElementRecord {
            terms: vec![DHTermRecord { alpha: vec![0, 0], radical_class: "K[1,0]".into(), coeff: r.to_record(&r.one()) }],
        };
        assert!(matches!(parse_dh(&r, 2, &bad), Err(Error::Parse(_))));
        let rec: ElementRecord<SqrtRecord> =
            ElementRecord { terms: vec![TermRecord { class: "(1,x)".into(), coeff: r.to_record(&r.one()) }] };
        assert!(parse_element::<RepIsoClass, _>(&r, 2, &rec).is_err());
        let e = error_record(&Error::HoldoutMismatch { triple: "t".into(), prime: 11, predicted: "1".into(), counted: "2".into() });
        assert_eq!(e["error"]["exit_code"], 4);
        assert_eq!(e["error"]["context"]["prime"], 11);
    }
}
