//! Enumeration of finite residuated chains and the table-completion engine.

mod engine;

pub use engine::{
    complete_table, count_completions, for_each_completion, Completion, CompletionProblem, DEFAULT_BUDGET, MAX_SIZE,
};

use crate::algebra::FiniteRL;
use crate::error::Result;
use crate::table::Table;

/// Properties required of enumerated chains.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ChainFlags {
    pub integral: bool,
    pub commutative: bool,
    /// `x^k = x^(k+1)`
    pub potent: Option<usize>,
    pub divisible: bool,
    /// Designate the bottom as 0.
    pub pointed: bool,
}

fn unit_positions(n: usize, flags: &ChainFlags) -> std::ops::Range<usize> {
    if flags.integral {
        n - 1..n
    } else {
        0..n
    }
}

fn problem(n: usize, unit: usize, flags: &ChainFlags) -> CompletionProblem {
    CompletionProblem {
        size: n,
        unit,
        commutative: flags.commutative,
        integral: flags.integral,
        zero: flags.pointed.then_some(0),
        ..Default::default()
    }
}

fn power(t: &Table, x: usize, k: usize) -> usize {
    (1..k).fold(x, |acc, _| t.get(acc, x))
}

/// Divisions of a chain product table: `(x\z, z/x)` as the largest index `y`
/// with `x*y <= z` (resp. `y*x <= z`).
fn chain_divisions(t: &Table) -> (Table, Table) {
    let n = t.size();
    let l = Table::from_fn(n, |x, z| (0..n).rev().find(|&y| t.get(x, y) <= z).unwrap_or(0));
    let r = Table::from_fn(n, |x, z| (0..n).rev().find(|&y| t.get(y, x) <= z).unwrap_or(0));
    (l, r)
}

fn accepts(t: &Table, flags: &ChainFlags) -> bool {
    let n = t.size();
    if let Some(k) = flags.potent {
        if (0..n).any(|x| power(t, x, k) != power(t, x, k + 1)) {
            return false;
        }
    }
    if flags.divisible {
        let (l, r) = chain_divisions(t);
        // x ∧ y = x(x\y) = (y/x)x, with rdiv[x][y] = y/x
        let ok = (0..n).all(|x| (0..n).all(|y| t.get(x, l.get(x, y)) == x.min(y) && t.get(r.get(x, y), x) == x.min(y)));
        if !ok {
            return false;
        }
    }
    true
}

/// All residuated chains of size `n` with the given properties, in canonical
/// order: by unit position, then in the completion engine's search order.
/// Distinct chains are pairwise non-isomorphic.
pub fn enumerate_chains(n: usize, flags: ChainFlags) -> Result<Vec<FiniteRL>> {
    let mut tables: Vec<(usize, Table)> = vec![];
    for unit in unit_positions(n, &flags) {
        let p = problem(n, unit, &flags);
        for_each_completion(&p, DEFAULT_BUDGET, |t| {
            if accepts(t, &flags) {
                tables.push((unit, t.clone()));
            }
            true
        })?;
    }
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    Ok(tables
        .into_iter()
        .enumerate()
        .map(|(k, (unit, t))| problem(n, unit, &flags).algebra(t, &format!("chain{n}#{k}"), labels.clone()))
        .collect())
}

/// Number of chains [`enumerate_chains`] would return, without building algebras.
pub fn count_chains(n: usize, flags: ChainFlags) -> Result<u64> {
    let mut count = 0;
    for unit in unit_positions(n, &flags) {
        for_each_completion(&problem(n, unit, &flags), DEFAULT_BUDGET, |t| {
            count += accepts(t, &flags) as u64;
            true
        })?;
    }
    Ok(count)
}
