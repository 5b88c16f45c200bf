//! The JSON algebra document format.
//!
//! Keys, in canonical order: `name`, `size`, `labels`, `order` (`"chain"` or a
//! 0/1 matrix), `unit`, `product`, optional `ldiv`/`rdiv` (derived when
//! absent), optional `zero`, optional `masks` (marks a partial algebra).
//! Unknown keys are rejected. Canonical output is compact JSON.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraParts, FiniteRL, Order};
use crate::error::{Error, Result};
use crate::partial::{Masks, PartialIRL, PartialParts};
use crate::table::Table;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum OrderDoc {
    Marker(String),
    Matrix(Vec<Vec<u8>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MasksDoc {
    product: Vec<Vec<u8>>,
    ldiv: Vec<Vec<u8>>,
    rdiv: Vec<Vec<u8>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    name: String,
    size: usize,
    labels: Vec<String>,
    order: OrderDoc,
    unit: usize,
    product: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ldiv: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rdiv: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    zero: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    masks: Option<MasksDoc>,
}

/// A parsed algebra document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Total(FiniteRL),
    Partial(PartialIRL),
}

fn bits(rows: &[Vec<u8>], n: usize, what: &str) -> Result<Vec<Vec<bool>>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Format(format!("{what} must be {n}x{n}")));
    }
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|&b| match b {
                    0 => Ok(false),
                    1 => Ok(true),
                    _ => Err(Error::Format(format!("{what} entries must be 0 or 1"))),
                })
                .collect()
        })
        .collect()
}

fn unbits(rows: &[Vec<bool>]) -> Vec<Vec<u8>> {
    rows.iter().map(|r| r.iter().map(|&b| b as u8).collect()).collect()
}

fn order_doc(order: &Order) -> OrderDoc {
    match order {
        Order::Chain => OrderDoc::Marker("chain".into()),
        Order::Matrix(m) => OrderDoc::Matrix(unbits(m)),
    }
}

fn order_from_doc(o: &OrderDoc, n: usize) -> Result<Order> {
    match o {
        OrderDoc::Marker(s) if s == "chain" => Ok(Order::Chain),
        OrderDoc::Marker(s) => Err(Error::Format(format!("unknown order marker `{s}`"))),
        OrderDoc::Matrix(m) => Ok(Order::Matrix(bits(m, n, "order")?)),
    }
}

fn table(rows: &[Vec<usize>], n: usize, what: &str) -> Result<Table> {
    if rows.len() != n {
        return Err(Error::Format(format!("{what} has {} rows, expected {n}", rows.len())));
    }
    Table::from_rows(rows, what)
}

/// Parses an algebra document.
pub fn parse_document(text: &str) -> Result<Document> {
    let d: AlgebraDoc = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    from_value_doc(d)
}

/// Parses an algebra document from an already decoded JSON value.
pub fn document_from_value(v: serde_json::Value) -> Result<Document> {
    let d: AlgebraDoc = serde_json::from_value(v).map_err(|e| Error::Format(e.to_string()))?;
    from_value_doc(d)
}

fn from_value_doc(d: AlgebraDoc) -> Result<Document> {
    let n = d.size;
    if n == 0 {
        return Err(Error::Format("size must be positive".into()));
    }
    let order = order_from_doc(&d.order, n)?;
    let product = table(&d.product, n, "product")?;
    let ldiv = d.ldiv.as_deref().map(|t| table(t, n, "ldiv")).transpose()?;
    let rdiv = d.rdiv.as_deref().map(|t| table(t, n, "rdiv")).transpose()?;
    match d.masks {
        None => Ok(Document::Total(FiniteRL::from_parts(AlgebraParts {
            name: d.name,
            labels: d.labels,
            order,
            unit: d.unit,
            product,
            ldiv,
            rdiv,
            zero: d.zero,
        })?)),
        Some(m) => {
            if d.zero.is_some() {
                return Err(Error::Format("partial algebras carry no zero".into()));
            }
            let (Some(ldiv), Some(rdiv)) = (ldiv, rdiv) else {
                return Err(Error::Format("partial algebras need explicit ldiv and rdiv".into()));
            };
            let masks = Masks {
                product: bits(&m.product, n, "masks.product")?,
                ldiv: bits(&m.ldiv, n, "masks.ldiv")?,
                rdiv: bits(&m.rdiv, n, "masks.rdiv")?,
            };
            Ok(Document::Partial(PartialIRL::from_parts(PartialParts {
                name: d.name,
                labels: d.labels,
                order,
                unit: d.unit,
                product,
                ldiv,
                rdiv,
                masks,
            })?))
        }
    }
}

/// Parses a document that must describe a total algebra.
pub fn parse_algebra(text: &str) -> Result<FiniteRL> {
    match parse_document(text)? {
        Document::Total(a) => Ok(a),
        Document::Partial(_) => Err(Error::Format("expected a total algebra, found masks".into())),
    }
}

fn total_doc(a: &FiniteRL) -> AlgebraDoc {
    AlgebraDoc {
        name: a.name().to_string(),
        size: a.size(),
        labels: a.labels().to_vec(),
        order: order_doc(&a.order()),
        unit: a.unit(),
        product: a.product_table().rows(),
        ldiv: Some(a.ldiv_table().rows()),
        rdiv: Some(a.rdiv_table().rows()),
        zero: a.zero(),
        masks: None,
    }
}

fn partial_doc(p: &PartialIRL) -> AlgebraDoc {
    let m = p.masks();
    AlgebraDoc {
        name: p.name().to_string(),
        size: p.size(),
        labels: p.labels().to_vec(),
        order: order_doc(&p.poset().to_order()),
        unit: p.unit(),
        product: p.product_table().rows(),
        ldiv: Some(p.ldiv_table().rows()),
        rdiv: Some(p.rdiv_table().rows()),
        zero: None,
        masks: Some(MasksDoc { product: unbits(&m.product), ldiv: unbits(&m.ldiv), rdiv: unbits(&m.rdiv) }),
    }
}

/// Canonical compact serialization.
pub fn to_json(a: &FiniteRL) -> String {
    serde_json::to_string(&total_doc(a)).expect("serializable")
}

pub fn to_value(a: &FiniteRL) -> serde_json::Value {
    serde_json::to_value(total_doc(a)).expect("serializable")
}

pub fn partial_to_json(p: &PartialIRL) -> String {
    serde_json::to_string(&partial_doc(p)).expect("serializable")
}

pub fn partial_to_value(p: &PartialIRL) -> serde_json::Value {
    serde_json::to_value(partial_doc(p)).expect("serializable")
}

/// Canonical serialization of order, unit, zero and operation tables only
/// (no name or labels); equal strings mean equal algebras up to naming.
pub fn tables_json(a: &FiniteRL) -> String {
    let mut d = total_doc(a);
    d.name = String::new();
    d.labels = vec![];
    serde_json::to_string(&d).expect("serializable")
}
