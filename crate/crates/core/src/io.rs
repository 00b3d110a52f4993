//! Versioned JSON files for nets, octuples, framed points and Σ-points.
//! Scalars are exact strings ("p/q"); integers are also accepted on input.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::frame::GammaPoint;
use crate::linalg::{int, parse_rat, rat_to_string, Matrix, Rat, Rationals, SymMatrix};
use crate::net::{pairs, QuadricNet};
use crate::plane::SigmaPoint;
use crate::slice::BarthOctuple;

pub const NET_SCHEMA: &str = "net/v1";
pub const OCTUPLE_SCHEMA: &str = "octuple/v1";
pub const GAMMA_SCHEMA: &str = "gamma/v1";
pub const SIGMA_SCHEMA: &str = "sigma/v1";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("missing or non-string \"schema\" field")]
    NoSchema,
    #[error("expected schema {expected}, found {found}")]
    Schema { expected: String, found: String },
    #[error("at {path}: {message}")]
    Field { path: String, message: String },
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

fn field(path: impl Into<String>, message: impl ToString) -> IoError {
    IoError::Field { path: path.into(), message: message.to_string() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Text(String),
    Int(i64),
}

impl Scalar {
    fn of(q: &Rat) -> Self {
        Scalar::Text(rat_to_string(q))
    }

    fn parse(&self, path: &str) -> Result<Rat, IoError> {
        match self {
            Scalar::Text(s) => parse_rat(s).map_err(|e| field(path, e)),
            Scalar::Int(v) => Ok(int(*v)),
        }
    }
}

pub type RawMatrix = Vec<Vec<Scalar>>;

fn raw_matrix(m: &Matrix<Rat>) -> RawMatrix {
    m.to_rows().iter().map(|r| r.iter().map(Scalar::of).collect()).collect()
}

fn raw_vector(v: &[Rat]) -> Vec<Scalar> {
    v.iter().map(Scalar::of).collect()
}

fn parse_matrix(raw: &RawMatrix, rows: usize, cols: usize, path: &str) -> Result<Matrix<Rat>, IoError> {
    if raw.len() != rows {
        return Err(field(path, format!("expected {rows} rows, found {}", raw.len())));
    }
    let mut out = Vec::with_capacity(rows);
    for (i, r) in raw.iter().enumerate() {
        if r.len() != cols {
            return Err(field(format!("{path}[{i}]"), format!("expected {cols} entries, found {}", r.len())));
        }
        out.push(r.iter().enumerate().map(|(j, x)| x.parse(&format!("{path}[{i}][{j}]"))).collect::<Result<Vec<_>, _>>()?);
    }
    Matrix::from_rows(&Rationals, out).map_err(|e| field(path, e))
}

fn parse_sym(raw: &RawMatrix, n: usize, path: &str) -> Result<SymMatrix<Rat>, IoError> {
    SymMatrix::new(parse_matrix(raw, n, n, path)?).map_err(|_| field(path, "matrix is not symmetric"))
}

fn parse_vector(raw: &[Scalar], n: usize, path: &str) -> Result<Vec<Rat>, IoError> {
    if raw.len() != n {
        return Err(field(path, format!("expected {n} entries, found {}", raw.len())));
    }
    raw.iter().enumerate().map(|(i, x)| x.parse(&format!("{path}[{i}]"))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetFile {
    pub schema: String,
    pub n: usize,
    pub ambient: usize,
    /// Keyed "12", "13", … with 1-based indices.
    pub blocks: BTreeMap<String, RawMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OctupleFile {
    pub schema: String,
    pub n: usize,
    #[serde(rename = "A1")]
    pub big_a1: RawMatrix,
    #[serde(rename = "A2")]
    pub big_a2: RawMatrix,
    #[serde(rename = "B1")]
    pub big_b1: RawMatrix,
    #[serde(rename = "B2")]
    pub big_b2: RawMatrix,
    pub a1: Vec<Scalar>,
    pub a2: Vec<Scalar>,
    pub b1: Vec<Scalar>,
    pub b2: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaFile {
    pub schema: String,
    pub n: usize,
    pub ambient: usize,
    pub matrix: RawMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaFile {
    pub schema: String,
    pub n: usize,
    #[serde(rename = "B1")]
    pub big_b1: RawMatrix,
    #[serde(rename = "B2")]
    pub big_b2: RawMatrix,
    #[serde(rename = "C")]
    pub big_c: RawMatrix,
    pub a1: Vec<Scalar>,
    pub a2: Vec<Scalar>,
    pub b1: Vec<Scalar>,
    pub b2: Vec<Scalar>,
}

fn pair_key(i: usize, j: usize) -> String {
    format!("{}{}", i + 1, j + 1)
}

impl NetFile {
    pub fn from_net(net: &QuadricNet<Rat>) -> Self {
        let blocks = pairs(net.ambient()).into_iter().map(|(i, j)| (pair_key(i, j), raw_matrix(net.block(i, j).as_matrix()))).collect();
        NetFile { schema: NET_SCHEMA.into(), n: net.n(), ambient: net.ambient(), blocks }
    }

    pub fn to_net(&self) -> Result<QuadricNet<Rat>, IoError> {
        check_schema(&self.schema, NET_SCHEMA)?;
        if self.ambient != 3 && self.ambient != 4 {
            return Err(field("ambient", "must be 3 or 4"));
        }
        let keys: Vec<(usize, usize)> = pairs(self.ambient);
        for k in self.blocks.keys() {
            if !keys.iter().any(|&(i, j)| pair_key(i, j) == *k) {
                return Err(field(format!("blocks.{k}"), "unknown block key"));
            }
        }
        let mut blocks = Vec::with_capacity(keys.len());
        for (i, j) in keys {
            let key = pair_key(i, j);
            let raw = self.blocks.get(&key).ok_or_else(|| field(format!("blocks.{key}"), "missing block"))?;
            blocks.push(parse_sym(raw, self.n, &format!("blocks.{key}"))?);
        }
        QuadricNet::new(self.n, self.ambient, blocks).map_err(|e| field("blocks", e))
    }
}

impl OctupleFile {
    pub fn from_octuple(o: &BarthOctuple<Rat>) -> Self {
        OctupleFile {
            schema: OCTUPLE_SCHEMA.into(),
            n: o.n(),
            big_a1: raw_matrix(o.a(0)),
            big_a2: raw_matrix(o.a(1)),
            big_b1: raw_matrix(o.b(0)),
            big_b2: raw_matrix(o.b(1)),
            a1: raw_vector(&o.vec_a[0]),
            a2: raw_vector(&o.vec_a[1]),
            b1: raw_vector(&o.vec_b[0]),
            b2: raw_vector(&o.vec_b[1]),
        }
    }

    pub fn to_octuple(&self) -> Result<BarthOctuple<Rat>, IoError> {
        check_schema(&self.schema, OCTUPLE_SCHEMA)?;
        let n = self.n;
        let mats = [parse_sym(&self.big_a1, n, "A1")?, parse_sym(&self.big_a2, n, "A2")?];
        let mbs = [parse_sym(&self.big_b1, n, "B1")?, parse_sym(&self.big_b2, n, "B2")?];
        let va = [parse_vector(&self.a1, n, "a1")?, parse_vector(&self.a2, n, "a2")?];
        let vb = [parse_vector(&self.b1, n, "b1")?, parse_vector(&self.b2, n, "b2")?];
        BarthOctuple::new(mats, mbs, va, vb).map_err(|e| field("octuple", e))
    }
}

impl GammaFile {
    pub fn from_gamma(g: &GammaPoint<Rat>) -> Self {
        GammaFile { schema: GAMMA_SCHEMA.into(), n: g.n(), ambient: g.ambient(), matrix: raw_matrix(g.matrix()) }
    }

    pub fn to_gamma(&self) -> Result<GammaPoint<Rat>, IoError> {
        check_schema(&self.schema, GAMMA_SCHEMA)?;
        let m = parse_matrix(&self.matrix, 2 * self.n + 2, self.ambient * self.n, "matrix")?;
        GammaPoint::new(self.n, self.ambient, m).map_err(|e| field("matrix", e))
    }
}

impl SigmaFile {
    pub fn from_sigma(s: &SigmaPoint<Rat>) -> Self {
        SigmaFile {
            schema: SIGMA_SCHEMA.into(),
            n: s.n(),
            big_b1: raw_matrix(s.b(0)),
            big_b2: raw_matrix(s.b(1)),
            big_c: raw_matrix(s.c.as_matrix()),
            a1: raw_vector(&s.vec_a[0]),
            a2: raw_vector(&s.vec_a[1]),
            b1: raw_vector(&s.vec_b[0]),
            b2: raw_vector(&s.vec_b[1]),
        }
    }

    pub fn to_sigma(&self) -> Result<SigmaPoint<Rat>, IoError> {
        check_schema(&self.schema, SIGMA_SCHEMA)?;
        let n = self.n;
        let mbs = [parse_sym(&self.big_b1, n, "B1")?, parse_sym(&self.big_b2, n, "B2")?];
        let c = parse_sym(&self.big_c, n, "C")?;
        let va = [parse_vector(&self.a1, n, "a1")?, parse_vector(&self.a2, n, "a2")?];
        let vb = [parse_vector(&self.b1, n, "b1")?, parse_vector(&self.b2, n, "b2")?];
        SigmaPoint::new(mbs, c, va, vb).map_err(|e| field("sigma", e))
    }
}

fn check_schema(found: &str, expected: &str) -> Result<(), IoError> {
    if found != expected {
        return Err(IoError::Schema { expected: expected.into(), found: found.into() });
    }
    Ok(())
}

/// Any of the four file kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Net(QuadricNet<Rat>),
    Octuple(BarthOctuple<Rat>),
    Gamma(GammaPoint<Rat>),
    Sigma(SigmaPoint<Rat>),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Net(_) => "net",
            Document::Octuple(_) => "octuple",
            Document::Gamma(_) => "gamma",
            Document::Sigma(_) => "sigma",
        }
    }
}

/// Parses a document, dispatching on its "schema" tag.
pub fn parse_document(text: &str) -> Result<Document, IoError> {
    let value: Value = serde_json::from_str(text)?;
    let schema = value.get("schema").and_then(Value::as_str).ok_or(IoError::NoSchema)?.to_string();
    match schema.as_str() {
        NET_SCHEMA => Ok(Document::Net(serde_json::from_str::<NetFile>(text)?.to_net()?)),
        OCTUPLE_SCHEMA => Ok(Document::Octuple(serde_json::from_str::<OctupleFile>(text)?.to_octuple()?)),
        GAMMA_SCHEMA => Ok(Document::Gamma(serde_json::from_str::<GammaFile>(text)?.to_gamma()?)),
        SIGMA_SCHEMA => Ok(Document::Sigma(serde_json::from_str::<SigmaFile>(text)?.to_sigma()?)),
        other => Err(IoError::Schema { expected: "net/v1, octuple/v1, gamma/v1 or sigma/v1".into(), found: other.into() }),
    }
}

/// Pretty JSON for a document.
pub fn render_document(doc: &Document) -> String {
    let value = match doc {
        Document::Net(x) => serde_json::to_value(NetFile::from_net(x)),
        Document::Octuple(x) => serde_json::to_value(OctupleFile::from_octuple(x)),
        Document::Gamma(x) => serde_json::to_value(GammaFile::from_gamma(x)),
        Document::Sigma(x) => serde_json::to_value(SigmaFile::from_sigma(x)),
    };
    serde_json::to_string_pretty(&value.expect("file types serialize")).expect("values serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn net_round_trip() {
        let mut net = QuadricNet::zero(&Rationals, 2, 4).unwrap();
        net.set_block(0, 1, SymMatrix::new(Matrix::from_rows(&Rationals, vec![vec![rat(1, 2), int(3)], vec![int(3), rat(-7, 3)]]).unwrap()).unwrap());
        let doc = Document::Net(net);
        let text = render_document(&doc);
        assert!(text.contains("\"1/2\""));
        assert_eq!(parse_document(&text).unwrap(), doc);
    }

    #[test]
    fn diagnostics_name_the_location() {
        let bad = r#"{"schema":"net/v1","n":1,"ambient":4,"blocks":{"12":[["1"]],"13":[["0"]],"14":[["0"]],"23":[["x"]],"24":[["0"]],"34":[["1"]]}}"#;
        let err = parse_document(bad).unwrap_err().to_string();
        assert!(err.contains("blocks.23[0][0]"), "{err}");
        let err = parse_document("{\"schema\": ").unwrap_err();
        assert!(matches!(err, IoError::Json { line: 1, .. }));
        let asym = r#"{"schema":"octuple/v1","n":2,"A1":[[1,2],[3,4]],"A2":[[0,0],[0,0]],"B1":[[0,0],[0,0]],"B2":[[0,0],[0,0]],"a1":[0,0],"a2":[0,0],"b1":[0,0],"b2":[0,0]}"#;
        assert!(parse_document(asym).unwrap_err().to_string().contains("A1"));
    }
}
