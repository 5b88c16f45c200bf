use crate::algebra::{dedupe_labels, AlgebraParts, FiniteRL, Order};
use crate::error::{Error, Result};
use crate::table::Table;

/// Ordinal sum `lower ⊕ upper`: the non-unit elements of `lower` stacked
/// below `upper`, sharing the unit.
///
/// For `b` in `lower∖{1}` and `c` in `upper`: `bc = cb = b`, `c\b = b/c = b`
/// and `b\c = c/b = 1`. The result's zero is the zero of `lower`, if any.
pub fn ordinal_sum(lower: &FiniteRL, upper: &FiniteRL) -> Result<FiniteRL> {
    for (alg, which) in [(lower, "lower"), (upper, "upper")] {
        if !alg.is_integral() {
            return Err(Error::Unsupported(format!("ordinal sum needs integral summands ({which} is not)")));
        }
    }
    if upper.zero().is_some() {
        return Err(Error::Unsupported("the upper summand of an ordinal sum cannot be pointed".into()));
    }
    let lo: Vec<usize> = lower.elements().filter(|&x| x != lower.unit()).collect();
    let k = lo.len();
    let n = k + upper.size();
    let unit = k + upper.unit();
    // position in the sum of an element of `lower`
    let emb = |x: usize| if x == lower.unit() { unit } else { lo.iter().position(|&y| y == x).unwrap() };
    let side = |p: usize| if p < k { Side::Lower(lo[p]) } else { Side::Upper(p - k) };

    let order = if lower.is_index_chain() && upper.is_index_chain() {
        Order::Chain
    } else {
        Order::Matrix(
            (0..n)
                .map(|p| {
                    (0..n)
                        .map(|q| match (side(p), side(q)) {
                            (Side::Lower(x), Side::Lower(y)) => lower.leq(x, y),
                            (Side::Lower(_), Side::Upper(_)) => true,
                            (Side::Upper(_), Side::Lower(_)) => false,
                            (Side::Upper(x), Side::Upper(y)) => upper.leq(x, y),
                        })
                        .collect()
                })
                .collect(),
        )
    };

    let product = Table::from_fn(n, |p, q| match (side(p), side(q)) {
        (Side::Lower(x), Side::Lower(y)) => emb(lower.mul(x, y)),
        (Side::Lower(_), Side::Upper(_)) => p,
        (Side::Upper(_), Side::Lower(_)) => q,
        (Side::Upper(x), Side::Upper(y)) => k + upper.mul(x, y),
    });
    // ldiv[p][q] = p\q, rdiv[p][q] = q/p; both behave alike across the blocks
    let div = |own: &dyn Fn(usize, usize) -> usize, up: &dyn Fn(usize, usize) -> usize| {
        Table::from_fn(n, |p, q| match (side(p), side(q)) {
            (Side::Lower(x), Side::Lower(y)) => emb(own(x, y)),
            (Side::Lower(_), Side::Upper(_)) => unit,
            (Side::Upper(_), Side::Lower(_)) => q,
            (Side::Upper(x), Side::Upper(y)) => k + up(x, y),
        })
    };
    let ldiv = div(&|x, y| lower.under(x, y), &|x, y| upper.under(x, y));
    let rdiv = div(&|x, y| lower.over(y, x), &|x, y| upper.over(y, x));

    let labels = lo
        .iter()
        .map(|&x| lower.label(x).to_string())
        .chain(upper.labels().iter().cloned())
        .collect();
    FiniteRL::from_parts(AlgebraParts {
        name: format!("{} ⊕ {}", lower.name(), upper.name()),
        labels: dedupe_labels(labels),
        order,
        unit,
        product,
        ldiv: Some(ldiv),
        rdiv: Some(rdiv),
        zero: lower.zero().map(emb),
    })
}

#[derive(Clone, Copy)]
enum Side {
    Lower(usize),
    Upper(usize),
}
