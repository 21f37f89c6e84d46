//! Versioned JSON documents exchanged with the command line: map documents in table or
//! basis form, homomorphism lists, and the envelopes wrapped around results and errors.
//!
//! Field elements are written as coefficient arrays (constant term first); a bare integer
//! is read as an element index. Elements of table rings are indices.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::basis::QuadMapBasis;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::homprod::{HomJson, HomSpec};
use crate::qmap::QuadMapTable;
use crate::ring::FiniteRing;

pub const SCHEMA_VERSION: u32 = 1;

fn version() -> u32 {
    SCHEMA_VERSION
}

fn check_version(v: u32) -> Result<()> {
    if v != SCHEMA_VERSION {
        return Err(Error::InvalidInput(format!(
            "unsupported schema_version {v}, expected {SCHEMA_VERSION}"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemJson {
    Index(u32),
    Coeffs(Vec<u32>),
}

impl ElemJson {
    pub fn of(r: &FiniteRing, x: u32) -> ElemJson {
        match &r.field {
            Some(f) => ElemJson::Coeffs(f.coeffs(Elem(x))),
            None => ElemJson::Index(x),
        }
    }

    pub fn of_field(f: &Field, x: Elem) -> ElemJson {
        ElemJson::Coeffs(f.coeffs(x))
    }

    pub fn decode(&self, r: &FiniteRing) -> Result<u32> {
        match (self, &r.field) {
            (ElemJson::Coeffs(c), Some(f)) => Ok(f.from_coeffs(c)?.0),
            (ElemJson::Coeffs(_), None) => Err(Error::InvalidInput(
                "coefficient arrays need a field; use element indices for table rings".into(),
            )),
            (ElemJson::Index(i), _) if *i < r.size() => Ok(*i),
            (ElemJson::Index(i), _) => Err(Error::InvalidInput(format!("element index {i} out of range"))),
        }
    }

    pub fn decode_field(&self, f: &Field) -> Result<Elem> {
        match self {
            ElemJson::Coeffs(c) => f.from_coeffs(c),
            ElemJson::Index(i) if *i < f.order() => Ok(Elem(*i)),
            ElemJson::Index(i) => Err(Error::InvalidInput(format!("element index {i} out of range"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapForm {
    Table,
    Basis,
}

/// `{"domain", "codomain", "form", "values"}`; table values list `q(x)` for every domain
/// element in index order, basis values are `{"basis_vals", "gram"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapDoc {
    #[serde(default = "version")]
    pub schema_version: u32,
    pub domain: FiniteRing,
    pub codomain: FiniteRing,
    pub form: MapForm,
    pub values: Value,
}

#[derive(Serialize, Deserialize)]
struct BasisValues {
    basis_vals: Vec<ElemJson>,
    gram: Vec<Vec<ElemJson>>,
}

/// A decoded map: the table always, the basis form when both sides are fields and the
/// map is quadratic over the prime field.
#[derive(Clone, Debug)]
pub struct ParsedMap {
    pub table: QuadMapTable,
    pub basis: Option<Result<QuadMapBasis>>,
}

impl ParsedMap {
    pub fn basis(&self) -> Result<&QuadMapBasis> {
        match &self.basis {
            Some(Ok(b)) => Ok(b),
            Some(Err(e)) => Err(e.clone()),
            None => Err(Error::InvalidInput(
                "classification needs finite fields as domain and codomain".into(),
            )),
        }
    }
}

fn invalid(e: serde_json::Error) -> Error {
    Error::InvalidInput(e.to_string())
}

impl MapDoc {
    pub fn from_table(q: &QuadMapTable) -> MapDoc {
        let values = q.values().iter().map(|&v| ElemJson::of(&q.codomain, v)).collect::<Vec<_>>();
        MapDoc {
            schema_version: SCHEMA_VERSION,
            domain: q.domain.clone(),
            codomain: q.codomain.clone(),
            form: MapForm::Table,
            values: serde_json::to_value(values).expect("serializable"),
        }
    }

    pub fn from_basis(b: &QuadMapBasis) -> Result<MapDoc> {
        let enc = |x: &Elem| ElemJson::of_field(&b.l, *x);
        let values = BasisValues {
            basis_vals: b.basis_vals.iter().map(enc).collect(),
            gram: b.gram.iter().map(|r| r.iter().map(enc).collect()).collect(),
        };
        Ok(MapDoc {
            schema_version: SCHEMA_VERSION,
            domain: FiniteRing::from_field(&b.k)?,
            codomain: FiniteRing::from_field(&b.l)?,
            form: MapForm::Basis,
            values: serde_json::to_value(values).expect("serializable"),
        })
    }

    pub fn parse(&self) -> Result<ParsedMap> {
        check_version(self.schema_version)?;
        match self.form {
            MapForm::Table => {
                let vals: Vec<ElemJson> = serde_json::from_value(self.values.clone()).map_err(invalid)?;
                let values = vals
                    .iter()
                    .map(|v| v.decode(&self.codomain))
                    .collect::<Result<Vec<_>>>()?;
                let table = QuadMapTable::new(self.domain.clone(), self.codomain.clone(), values)?;
                let basis = match (&self.domain.field, &self.codomain.field) {
                    (Some(_), Some(_)) => Some(table.to_basis()),
                    _ => None,
                };
                Ok(ParsedMap { table, basis })
            }
            MapForm::Basis => {
                let (Some(k), Some(l)) = (&self.domain.field, &self.codomain.field) else {
                    return Err(Error::InvalidInput("basis form needs field domain and codomain".into()));
                };
                let bv: BasisValues = serde_json::from_value(self.values.clone()).map_err(invalid)?;
                let dec = |x: &ElemJson| x.decode_field(l);
                let vals = bv.basis_vals.iter().map(dec).collect::<Result<Vec<_>>>()?;
                let gram = bv
                    .gram
                    .iter()
                    .map(|r| r.iter().map(dec).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let b = QuadMapBasis::new(k, l, vals, gram)?;
                Ok(ParsedMap {
                    table: b.to_table()?,
                    basis: Some(Ok(b)),
                })
            }
        }
    }
}

/// Fields plus a list of homomorphisms: input to the independence and symmetrized-sum
/// commands. `xs` optionally gives arguments at which to evaluate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomsDoc {
    #[serde(default = "version")]
    pub schema_version: u32,
    #[serde(rename = "K")]
    pub k: Field,
    #[serde(rename = "L")]
    pub l: Field,
    pub homs: Vec<HomJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xs: Option<Vec<ElemJson>>,
}

impl HomsDoc {
    pub fn homs(&self) -> Result<Vec<HomSpec>> {
        check_version(self.schema_version)?;
        self.homs.iter().map(|&h| HomSpec::from_json(&self.k, &self.l, h)).collect()
    }

    pub fn xs(&self) -> Result<Option<Vec<Elem>>> {
        self.xs
            .as_ref()
            .map(|xs| xs.iter().map(|x| x.decode_field(&self.k)).collect())
            .transpose()
    }
}

/// Two products of homomorphisms to compare.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductsDoc {
    #[serde(default = "version")]
    pub schema_version: u32,
    #[serde(rename = "K")]
    pub k: Field,
    #[serde(rename = "L")]
    pub l: Field,
    pub sigma: Vec<HomJson>,
    pub tau: Vec<HomJson>,
}

impl ProductsDoc {
    pub fn products(&self) -> Result<(Vec<HomSpec>, Vec<HomSpec>)> {
        check_version(self.schema_version)?;
        let conv = |v: &[HomJson]| -> Result<Vec<HomSpec>> {
            v.iter().map(|&h| HomSpec::from_json(&self.k, &self.l, h)).collect()
        };
        Ok((conv(&self.sigma)?, conv(&self.tau)?))
    }
}

/// `{"schema_version": 1, "command": ..., "ok": ..., <body>}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub command: String,
    pub ok: bool,
    #[serde(flatten)]
    pub body: T,
}

impl<T> Envelope<T> {
    pub fn new(command: &str, ok: bool, body: T) -> Envelope<T> {
        Envelope {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            ok,
            body,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub schema_version: u32,
    pub command: String,
    pub ok: bool,
    pub error: ErrorBody,
}

impl ErrorDoc {
    pub fn new(command: &str, kind: &str, message: String) -> ErrorDoc {
        ErrorDoc {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            ok: false,
            error: ErrorBody {
                kind: kind.to_string(),
                message,
            },
        }
    }

    pub fn from_error(command: &str, e: &Error) -> ErrorDoc {
        ErrorDoc::new(command, e.kind(), e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn z2_to_z4_document() {
        let doc: MapDoc = serde_json::from_str(
            r#"{"schema_version":1,"domain":{"zmod":2},"codomain":{"zmod":4},"form":"table","values":[0,1]}"#,
        )
        .unwrap();
        let m = doc.parse().unwrap();
        assert_eq!(m.table.values(), &[0, 1]);
        assert!(m.basis.is_none());
        let again: MapDoc = serde_json::from_str(&serde_json::to_string(&MapDoc::from_table(&m.table)).unwrap()).unwrap();
        assert_eq!(again.parse().unwrap().table, m.table);
    }

    #[test]
    fn field_documents_roundtrip() {
        let f9 = make_field(3, 2, None).unwrap();
        let q = QuadMapTable::power(&f9, 4).unwrap();
        let doc = MapDoc::from_table(&q);
        let s = serde_json::to_string(&doc).unwrap();
        let back: MapDoc = serde_json::from_str(&s).unwrap();
        let m = back.parse().unwrap();
        assert_eq!(m.table, q);
        let b = m.basis().unwrap().clone();
        let bdoc = MapDoc::from_basis(&b).unwrap();
        assert_eq!(bdoc.parse().unwrap().table, q);
    }

    #[test]
    fn shorthand_and_version() {
        let doc: MapDoc =
            serde_json::from_str(r#"{"domain":"F4","codomain":"F4","form":"table","values":[0,1,3,2]}"#).unwrap();
        assert_eq!(doc.schema_version, 1);
        assert!(doc.parse().unwrap().basis().is_ok());
        let mut bad = doc.clone();
        bad.schema_version = 2;
        assert!(matches!(bad.parse(), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn error_document() {
        let e = ErrorDoc::from_error("verify", &Error::TooManyFactors(7));
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(v["error"]["kind"], "too_many_factors");
        assert_eq!(v["ok"], false);
    }

    #[test]
    fn products_document() {
        let doc: ProductsDoc = serde_json::from_str(
            r#"{"K":"F4","L":"F4","sigma":[{"embedding_index":0,"frobenius_exp":1},{"embedding_index":0,"frobenius_exp":1},{"embedding_index":0,"frobenius_exp":1}],
                "tau":[{"embedding_index":0,"frobenius_exp":2},{"embedding_index":0,"frobenius_exp":0},{"embedding_index":0,"frobenius_exp":0}]}"#,
        )
        .unwrap();
        let (s, t) = doc.products().unwrap();
        assert_eq!((s.len(), t.len()), (3, 3));
        assert_eq!(t[0].canonical_exp(), 0);
    }
}
