//! V-formations of finite algebras: validation, bounded amalgam and
//! one-amalgam search over chains, and obstruction certificates.

mod obstruction;
mod search;

pub use obstruction::{check_obstruction, find_obstruction, injectivity_reduction, ObstructionOutcome, ObstructionWitness, Side};
pub use search::{
    bounded_amalgam_search, bounded_one_amalgam_search, ClassFlags, SearchMode, SearchOptions, SearchReport, SizeStats,
    Verdict,
};

use serde::Deserialize;
use serde_json::Value;

use crate::algebra::{Check, FiniteRL, ValidationReport};
use crate::constructions::{builtin_algebra, generalized_rotation, rotate_morphism, vs_a, vs_b, vs_c, Nucleus};
use crate::doc::{document_from_value, Document};
use crate::error::{Error, Result};
use crate::morphism::{MorphKind, Morphism};

/// Two embeddings `i: A -> B` and `j: A -> C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VFormation {
    pub a: FiniteRL,
    pub b: FiniteRL,
    pub c: FiniteRL,
    pub i: Morphism,
    pub j: Morphism,
}

impl VFormation {
    pub fn new(a: FiniteRL, b: FiniteRL, c: FiniteRL, i: Vec<usize>, j: Vec<usize>) -> Self {
        VFormation {
            a,
            b,
            c,
            i: Morphism::new(i, MorphKind::Embedding),
            j: Morphism::new(j, MorphKind::Embedding),
        }
    }

    /// `(A, B, B, i, i)`
    pub fn doubled(a: FiniteRL, b: FiniteRL, i: Vec<usize>) -> Self {
        VFormation::new(a, b.clone(), b, i.clone(), i)
    }
}

/// Validates the three algebras and both embeddings.
pub fn check_vformation(vf: &VFormation) -> ValidationReport {
    let mut r = ValidationReport::default();
    r.extend("A.", vf.a.validate_rl());
    r.extend("B.", vf.b.validate_rl());
    r.extend("C.", vf.c.validate_rl());
    for (name, m, cod) in [("i", &vf.i, &vf.b), ("j", &vf.j, &vf.c)] {
        let mut m = m.clone();
        m.kind = MorphKind::Embedding;
        r.push(match m.violation(&vf.a, cod) {
            None => Check::pass(name),
            Some(msg) => Check::fail(name, vec![], &msg),
        });
    }
    r
}

pub const FORMATION_NAMES: &[&str] = &["VS", "VS.pointed", "VS^<delta>:<n>"];

/// The three-chain formation `VS` with identity-like embeddings.
pub fn vs() -> VFormation {
    VFormation::new(vs_a(), vs_b(), vs_c(), vec![0, 2, 3], vec![0, 3, 4])
}

/// `VS` with the common bottom `u` designated as 0.
pub fn vs_pointed() -> VFormation {
    let z = |a: FiniteRL| a.with_zero(Some(0)).expect("u is the bottom");
    let v = vs();
    VFormation { a: z(v.a), b: z(v.b), c: z(v.c), ..v }
}

/// The rotation of a formation: every algebra rotated with the nucleus named
/// `delta` (`identity` or `const-1`) and an `n`-element Łukasiewicz block.
pub fn rotated_formation(vf: &VFormation, delta: &str, n: usize) -> Result<VFormation> {
    let nuc = |x: &FiniteRL| Nucleus::parse(x, delta);
    let (da, db, dc) = (nuc(&vf.a)?, nuc(&vf.b)?, nuc(&vf.c)?);
    let a = generalized_rotation(&vf.a, &da, n)?;
    let b = generalized_rotation(&vf.b, &db, n)?;
    let c = generalized_rotation(&vf.c, &dc, n)?;
    let i = rotate_morphism(&vf.i, &vf.a, &da, &vf.b, &db, n)?;
    let j = rotate_morphism(&vf.j, &vf.a, &da, &vf.c, &dc, n)?;
    Ok(VFormation { a, b, c, i, j })
}

/// Looks up `VS`, `VS.pointed`, or a rotation such as `VS^identity:2`.
pub fn builtin_formation(name: &str) -> Result<VFormation> {
    let name = name.trim();
    match name {
        "VS" => return Ok(vs()),
        "VS.pointed" => return Ok(vs_pointed()),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("VS^") {
        let (delta, n) = rest.split_once(':').unwrap_or((rest, "2"));
        let n: usize = n.parse().map_err(|_| Error::UnknownBuiltin(name.to_string()))?;
        if !matches!(delta, "identity" | "id" | "const-1") {
            return Err(Error::UnknownBuiltin(name.to_string()));
        }
        return rotated_formation(&vs(), delta, n);
    }
    Err(Error::UnknownBuiltin(name.to_string()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FormationDoc {
    #[serde(rename = "A")]
    a: Value,
    #[serde(rename = "B")]
    b: Value,
    #[serde(rename = "C")]
    c: Value,
    i: Vec<usize>,
    j: Vec<usize>,
}

fn algebra_from(v: Value, slot: &str) -> Result<FiniteRL> {
    match v {
        Value::String(name) => builtin_algebra(&name),
        v @ Value::Object(_) => match document_from_value(v)? {
            Document::Total(a) => Ok(a),
            Document::Partial(_) => Err(Error::Format(format!("{slot} must be a total algebra"))),
        },
        _ => Err(Error::Format(format!("{slot} must be a builtin name or an algebra document"))),
    }
}

/// Parses a V-formation document `{"A", "B", "C", "i", "j"}`; each algebra is
/// a builtin name or an algebra document.
pub fn parse_vformation(text: &str) -> Result<VFormation> {
    let d: FormationDoc = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let vf = VFormation::new(algebra_from(d.a, "A")?, algebra_from(d.b, "B")?, algebra_from(d.c, "C")?, d.i, d.j);
    if vf.i.map.len() != vf.a.size() || vf.j.map.len() != vf.a.size() {
        return Err(Error::Format("i and j need one entry per element of A".into()));
    }
    Ok(vf)
}

#[cfg(test)]
mod tests;
