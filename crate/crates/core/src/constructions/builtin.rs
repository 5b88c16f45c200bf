use crate::algebra::{FiniteRL, Property};
use crate::error::{Error, Result};
use crate::partial::{Masks, PartialIRL};

use super::gluing::LowerCompatibleTriple;

/// A named builtin: either an algebra or a lower-compatible triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Algebra(FiniteRL),
    Triple(LowerCompatibleTriple),
}

pub const BUILTIN_NAMES: &[&str] = &[
    "trivial",
    "two",
    "lukasiewicz(n)",
    "godel(n)",
    "VS.A",
    "VS.B",
    "VS.C",
    "VS.K_triple",
    "pointed(<algebra>)",
];

/// Looks up a builtin by name. `pointed(X)` designates the bottom of `X` as 0.
pub fn builtin(name: &str) -> Result<Builtin> {
    let name = name.trim();
    if let Some(inner) = strip_call(name, "pointed") {
        let a = builtin_algebra(inner)?;
        let bottom = a.bottom();
        let label = format!("pointed({})", a.name());
        return Ok(Builtin::Algebra(a.with_zero(Some(bottom))?.with_name(label)));
    }
    if let Some(arg) = strip_call(name, "lukasiewicz") {
        return Ok(Builtin::Algebra(lukasiewicz(parse_size(name, arg)?)));
    }
    if let Some(arg) = strip_call(name, "godel") {
        return Ok(Builtin::Algebra(godel(parse_size(name, arg)?)));
    }
    Ok(match name {
        "trivial" => Builtin::Algebra(trivial()),
        "two" => Builtin::Algebra(two()),
        "VS.A" => Builtin::Algebra(vs_a()),
        "VS.B" => Builtin::Algebra(vs_b()),
        "VS.C" => Builtin::Algebra(vs_c()),
        "VS.K_triple" => Builtin::Triple(vs_k_triple()),
        _ => return Err(Error::UnknownBuiltin(name.to_string())),
    })
}

pub fn builtin_algebra(name: &str) -> Result<FiniteRL> {
    match builtin(name)? {
        Builtin::Algebra(a) => Ok(a),
        Builtin::Triple(_) => Err(Error::Format(format!("`{name}` is a triple, not an algebra"))),
    }
}

fn strip_call<'a>(s: &'a str, f: &str) -> Option<&'a str> {
    s.strip_prefix(f)?.strip_prefix('(')?.strip_suffix(')')
}

fn parse_size(name: &str, arg: &str) -> Result<usize> {
    match arg.trim().parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(Error::UnknownBuiltin(name.to_string())),
    }
}

fn fraction_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|k| match k {
            0 if n > 1 => "0".to_string(),
            k if k == n - 1 => "1".to_string(),
            k => format!("{k}/{}", n - 1),
        })
        .collect()
}

fn chain(name: &str, labels: Vec<String>, f: impl Fn(usize, usize) -> usize) -> FiniteRL {
    let n = labels.len();
    let rows: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect();
    let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
    FiniteRL::chain_from_product(name, &labels, n - 1, &rows).expect("builtin tables are residuated")
}

pub fn trivial() -> FiniteRL {
    chain("trivial", vec!["1".into()], |_, _| 0)
}

/// The two-element Boolean chain `0 < 1`.
pub fn two() -> FiniteRL {
    chain("2", vec!["0".into(), "1".into()], |x, y| x.min(y))
}

/// The `n`-element MV-chain, `x*y = max(0, x+y-(n-1))` on indices.
pub fn lukasiewicz(n: usize) -> FiniteRL {
    chain(&format!("Ł{n}"), fraction_labels(n), |x, y| (x + y).saturating_sub(n - 1))
}

/// The `n`-element Gödel chain, `x*y = min(x, y)`.
pub fn godel(n: usize) -> FiniteRL {
    chain(&format!("G{n}"), fraction_labels(n), |x, y| x.min(y))
}

fn table_chain(name: &str, labels: &[&str], rows: &[Vec<usize>]) -> FiniteRL {
    FiniteRL::chain_from_product(name, labels, labels.len() - 1, rows).expect("builtin tables are residuated")
}

/// `u < v < 1`, both idempotent.
pub fn vs_a() -> FiniteRL {
    table_chain("VS.A", &["u", "v", "1"], &[vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]])
}

/// `u < b < v < 1` with `b² = u`, `vb = b`.
pub fn vs_b() -> FiniteRL {
    table_chain(
        "VS.B",
        &["u", "b", "v", "1"],
        &[vec![0, 0, 0, 0], vec![0, 0, 1, 1], vec![0, 1, 2, 2], vec![0, 1, 2, 3]],
    )
}

/// `u < d < c < v < 1` with all products inside `{u, d, c}` equal to `u`,
/// `vc = vd = d` and `v² = v`.
pub fn vs_c() -> FiniteRL {
    table_chain(
        "VS.C",
        &["u", "d", "c", "v", "1"],
        &[
            vec![0, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 1],
            vec![0, 0, 0, 1, 2],
            vec![0, 1, 1, 3, 3],
            vec![0, 1, 2, 3, 4],
        ],
    )
}

/// `K = {u < d < c < 1}` with all non-unit products `u` and the division
/// `c\d` (and `d/c`) left undefined; `σ` sends `c` to `d`, `γ` sends `d` to `c`.
pub fn vs_k_triple() -> LowerCompatibleTriple {
    let total = table_chain(
        "VS.K",
        &["u", "d", "c", "1"],
        &[vec![0, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 0, 2], vec![0, 1, 2, 3]],
    );
    debug_assert!(total.validate(&[Property::Residuation]).passed());
    let mut parts = PartialIRL::from_total(&total).to_parts();
    parts.masks = Masks::all_defined(4);
    // c\d and d/c: both stored at (divisor c, numerator d)
    parts.masks.ldiv[2][1] = false;
    parts.masks.rdiv[2][1] = false;
    LowerCompatibleTriple {
        k: PartialIRL::from_parts(parts).expect("well formed"),
        sigma: vec![0, 1, 1, 3],
        gamma: vec![0, 2, 2, 3],
    }
}
