//! JSON interchange formats for polynomials, forms and boundary data.
//!
//! A monomial is `{"alpha":[a_0,..],"num":p,"den":q}` with exponents over
//! all vertices of the carrying simplex. A form is
//! `{"n":n,"vertices":[..],"k":k,"terms":[{"dlambda":[..],"poly":[..]}]}`
//! and boundary data is `{"n":n,"k":k,"facets":[{"omit":i,"form":..}]}`.
//! Integers that do not fit in 64 bits are written as decimal strings.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bary::BaryPoly;
use crate::boundary::{facet_labels, BoundaryForm};
use crate::error::{Error, Result};
use crate::forms::PolyForm;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntJson {
    Small(i64),
    Big(String),
}

impl IntJson {
    pub fn from_bigint(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(x) => IntJson::Small(x),
            None => IntJson::Big(v.to_string()),
        }
    }

    pub fn to_bigint(&self) -> Result<BigInt> {
        match self {
            IntJson::Small(x) => Ok(BigInt::from(*x)),
            IntJson::Big(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    pub alpha: Vec<u32>,
    pub num: IntJson,
    pub den: IntJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub dlambda: Vec<usize>,
    pub poly: Vec<MonomialJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyFormJson {
    pub n: usize,
    pub vertices: Vec<usize>,
    pub k: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetJson {
    pub omit: usize,
    pub form: PolyFormJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryFormJson {
    pub n: usize,
    pub k: usize,
    pub facets: Vec<FacetJson>,
}

pub fn rational_to_json(q: &Rational) -> (IntJson, IntJson) {
    (IntJson::from_bigint(q.numer()), IntJson::from_bigint(q.denom()))
}

pub fn rational_from_json(num: &IntJson, den: &IntJson) -> Result<Rational> {
    let d = den.to_bigint()?;
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::new(num.to_bigint()?, d))
}

pub fn poly_to_json(p: &BaryPoly) -> Vec<MonomialJson> {
    p.symmetric_terms()
        .into_iter()
        .map(|(alpha, c)| {
            let (num, den) = rational_to_json(&c);
            MonomialJson { alpha, num, den }
        })
        .collect()
}

pub fn poly_from_json(labels: &[usize], monos: &[MonomialJson]) -> Result<BaryPoly> {
    let terms = monos
        .iter()
        .map(|m| Ok((m.alpha.clone(), rational_from_json(&m.num, &m.den)?)))
        .collect::<Result<Vec<_>>>()?;
    BaryPoly::from_symmetric(labels, &terms)
}

/// `n` is the ambient dimension; it differs from `u.dim()` for facet forms.
pub fn form_to_json(u: &PolyForm, n: usize) -> PolyFormJson {
    PolyFormJson {
        n,
        vertices: u.labels().to_vec(),
        k: u.k(),
        terms: u
            .components()
            .into_iter()
            .map(|(dlambda, p)| TermJson {
                dlambda,
                poly: poly_to_json(&p),
            })
            .collect(),
    }
}

pub fn form_value(u: &PolyForm) -> serde_json::Value {
    serde_json::to_value(form_to_json(u, u.dim())).expect("form JSON is always representable")
}

pub fn boundary_value(b: &BoundaryForm) -> serde_json::Value {
    serde_json::to_value(boundary_to_json(b)).expect("boundary JSON is always representable")
}

pub fn form_from_json(j: &PolyFormJson) -> Result<PolyForm> {
    if j.vertices.iter().any(|&v| v > j.n) {
        return Err(Error::Parse(format!("vertices {:?} outside 0..={}", j.vertices, j.n)));
    }
    if j.vertices.is_empty() || j.k + 1 > j.vertices.len() {
        return Err(Error::Parse(format!(
            "a {}-form cannot live on {} vertices",
            j.k,
            j.vertices.len()
        )));
    }
    let mut terms = Vec::with_capacity(j.terms.len());
    for t in &j.terms {
        if t.dlambda.len() != j.k {
            return Err(Error::Parse(format!(
                "term with {} differentials in a {}-form",
                t.dlambda.len(),
                j.k
            )));
        }
        if let Some(v) = t.dlambda.iter().find(|v| !j.vertices.contains(v)) {
            return Err(Error::Parse(format!("dλ_{v} is not a differential of {:?}", j.vertices)));
        }
        terms.push((t.dlambda.clone(), poly_from_json(&j.vertices, &t.poly)?));
    }
    PolyForm::from_terms(&j.vertices, j.k, &terms).map_err(|e| match e {
        Error::Parse(_) => e,
        other => Error::Parse(other.to_string()),
    })
}

pub fn boundary_to_json(b: &BoundaryForm) -> BoundaryFormJson {
    BoundaryFormJson {
        n: b.n(),
        k: b.k(),
        facets: b
            .facets()
            .iter()
            .enumerate()
            .map(|(omit, f)| FacetJson {
                omit,
                form: form_to_json(f, b.n()),
            })
            .collect(),
    }
}

/// Parses and validates boundary data; mismatched interface traces give
/// [`Error::IncompatibleTraces`], everything else [`Error::Parse`].
pub fn boundary_from_json(j: &BoundaryFormJson) -> Result<BoundaryForm> {
    let n = j.n;
    if n == 0 {
        return Err(Error::Parse("boundary data needs n >= 1".into()));
    }
    let mut slots: Vec<Option<PolyForm>> = vec![None; n + 1];
    for f in &j.facets {
        if f.omit > n {
            return Err(Error::Parse(format!("facet omits vertex {} outside 0..={n}", f.omit)));
        }
        if slots[f.omit].is_some() {
            return Err(Error::Parse(format!("facet {} given twice", f.omit)));
        }
        if f.form.vertices != facet_labels(n, f.omit) || f.form.n != n {
            return Err(Error::Parse(format!(
                "facet {} must live on vertices {:?} of S_{n}",
                f.omit,
                facet_labels(n, f.omit)
            )));
        }
        if f.form.k != j.k {
            return Err(Error::Parse(format!("facet {} has degree {}, expected {}", f.omit, f.form.k, j.k)));
        }
        slots[f.omit] = Some(form_from_json(&f.form)?);
    }
    let facets = slots
        .into_iter()
        .enumerate()
        .map(|(i, f)| f.ok_or_else(|| Error::Parse(format!("facet {i} missing"))))
        .collect::<Result<Vec<_>>>()?;
    if j.k + 1 > n {
        return Err(Error::Parse(format!("boundary {}-forms need k <= n - 1", j.k)));
    }
    BoundaryForm::new(n, j.k, facets).map_err(|e| match e {
        Error::IncompatibleTraces(_) => e,
        other => Error::Parse(other.to_string()),
    })
}

pub fn parse_form(text: &str) -> Result<PolyForm> {
    let j: PolyFormJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    form_from_json(&j)
}

pub fn parse_boundary(text: &str) -> Result<BoundaryForm> {
    let j: BoundaryFormJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    boundary_from_json(&j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::whitney;

    #[test]
    fn form_round_trip() {
        let tri = [0, 1, 2];
        let u = whitney(&tri, &[0, 1]).unwrap().mul_poly(&BaryPoly::lambda(&tri, 2).unwrap().scale(&Rational::new(3.into(), 7.into()))).unwrap();
        let j = form_to_json(&u, 2);
        assert!(j.terms.iter().all(|t| !t.dlambda.contains(&0)));
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(parse_form(&text).unwrap(), u);
    }

    #[test]
    fn symmetric_input_is_canonicalised() {
        let text = r#"{"n":2,"vertices":[0,1,2],"k":1,"terms":[
            {"dlambda":[0],"poly":[{"alpha":[0,0,0],"num":1,"den":1}]}]}"#;
        let u = parse_form(text).unwrap();
        let expected = PolyForm::dlambda(&[0, 1, 2], 1)
            .unwrap()
            .add(&PolyForm::dlambda(&[0, 1, 2], 2).unwrap())
            .unwrap()
            .scale(&Rational::from_integer((-1).into()));
        assert_eq!(u, expected);
    }

    #[test]
    fn big_coefficients_use_strings() {
        let big: BigInt = BigInt::from(10).pow(30);
        let (num, _) = rational_to_json(&Rational::from_integer(big.clone()));
        assert_eq!(num, IntJson::Big(big.to_string()));
        assert_eq!(num.to_bigint().unwrap(), big);
    }

    #[test]
    fn boundary_round_trip_and_rejections() {
        let tri = [0, 1, 2];
        let b = BoundaryForm::trace_of(&whitney(&tri, &[1, 2]).unwrap()).unwrap();
        let text = serde_json::to_string(&boundary_to_json(&b)).unwrap();
        assert_eq!(parse_boundary(&text).unwrap(), b);
        let bad = r#"{"n":2,"k":0,"facets":[
            {"omit":0,"form":{"n":2,"vertices":[1,2],"k":0,"terms":[{"dlambda":[],"poly":[{"alpha":[0,0],"num":1,"den":1}]}]}},
            {"omit":1,"form":{"n":2,"vertices":[0,2],"k":0,"terms":[{"dlambda":[],"poly":[{"alpha":[0,0],"num":2,"den":1}]}]}},
            {"omit":2,"form":{"n":2,"vertices":[0,1],"k":0,"terms":[{"dlambda":[],"poly":[{"alpha":[0,0],"num":1,"den":1}]}]}}]}"#;
        assert!(matches!(parse_boundary(bad), Err(Error::IncompatibleTraces(_))));
        assert!(matches!(parse_boundary("{"), Err(Error::Parse(_))));
    }
}
