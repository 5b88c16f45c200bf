use crate::algebra::{dedupe_labels, AlgebraParts, Check, FiniteRL, Order, ValidationReport};
use crate::error::{Error, Result};
use crate::partial::PartialIRL;
use crate::table::Table;

/// A partial integral algebra `k` with maps `sigma` (products against the
/// upper component) and `gamma` (divisions from the upper component).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerCompatibleTriple {
    pub k: PartialIRL,
    pub sigma: Vec<usize>,
    pub gamma: Vec<usize>,
}

fn first_pair(n: usize, bad: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    crate::algebra::first_pair(n, bad)
}

/// Checks every clause of a lower-compatible triple, in this order:
/// the partial-algebra axioms of `k` (prefixed `K.`), totality of products,
/// the undefinedness pattern of the divisions, the residuated pair, `sigma`
/// as a strong conucleus, `gamma` as a closure operator, and the bound
/// `xy, yx <= sigma(x)` for `y != 1`.
pub fn validate_triple(t: &LowerCompatibleTriple) -> Result<ValidationReport> {
    let k = &t.k;
    let n = k.size();
    for (m, name) in [(&t.sigma, "sigma"), (&t.gamma, "gamma")] {
        if m.len() != n || m.iter().any(|&v| v >= n) {
            return Err(Error::Format(format!("{name} must map the {n} elements of K into K")));
        }
    }
    let (s, g, one) = (&t.sigma, &t.gamma, k.unit());
    let leq = |x, y| k.leq(x, y);
    let mul = |x, y| k.mul(x, y);
    let mut report = ValidationReport::default();
    report.extend("K.", k.validate_partial());
    let mut add = |name: &str, w: Option<Vec<usize>>, detail: &str| {
        report.push(match w {
            None => Check::pass(name),
            Some(w) => Check::fail(name, w, detail),
        })
    };

    add(
        "products-total",
        first_pair(n, |x, y| mul(x, y).is_none()),
        "a product of K is undefined",
    );
    add(
        "undefinedness-pattern",
        first_pair(n, |x, y| {
            let expect_undefined = leq(s[x], y) && !leq(x, y);
            k.under(x, y).is_none() != expect_undefined || k.over(y, x).is_none() != expect_undefined
        }),
        "x\\y (or y/x) must be undefined exactly when sigma(x) <= y and x </= y",
    );
    add(
        "residuated-pair",
        first_pair(n, |x, y| leq(s[x], y) != leq(x, g[y])),
        "sigma(x) <= y iff x <= gamma(y) fails",
    );
    add(
        "sigma-interior",
        first_pair(n, |x, y| !leq(s[x], x) || s[s[x]] != s[x] || (leq(x, y) && !leq(s[x], s[y]))),
        "sigma is not decreasing, idempotent and monotone",
    );
    add("sigma-unit", (s[one] != one).then(|| vec![one]), "sigma(1) != 1");
    add(
        "sigma-strong",
        first_pair(n, |x, y| {
            if x == one || y == one {
                return false;
            }
            let xy = mul(x, y);
            let a = mul(x, s[y]);
            let b = xy.map(|p| s[p]);
            let c = mul(s[x], y);
            !(a == b && b == c)
        }),
        "x*sigma(y) = sigma(xy) = sigma(x)*y fails for x, y != 1",
    );
    add(
        "gamma-closure",
        first_pair(n, |x, y| !leq(x, g[x]) || g[g[x]] != g[x] || (leq(x, y) && !leq(g[x], g[y]))),
        "gamma is not increasing, idempotent and monotone",
    );
    add(
        "sigma-bound",
        first_pair(n, |x, y| {
            y != one
                && (mul(x, y).is_some_and(|p| !leq(p, s[x])) || mul(y, x).is_some_and(|p| !leq(p, s[x])))
        }),
        "xy or yx exceeds sigma(x) for some y != 1",
    );
    Ok(report)
}

/// The partial gluing `K ⊕_π L` of a lower-compatible triple with an
/// integral algebra `l` that has a splitting coatom.
///
/// Carrier: `K∖{1}` below `L`. Cross products go through `sigma`, divisions
/// from `L` into `K` through `gamma`, and undefined divisions of `K` become
/// the coatom of `L`. Joins equal to 1 in `K` become the bottom of `L`.
pub fn partial_gluing(t: &LowerCompatibleTriple, l: &FiniteRL) -> Result<FiniteRL> {
    let report = validate_triple(t)?;
    if let Some(c) = report.first_failure() {
        return Err(Error::Precondition(format!(
            "not a lower compatible triple: {} fails at {:?}",
            c.name, c.witness
        )));
    }
    if !l.is_integral() {
        return Err(Error::Precondition("the upper component must be integral".into()));
    }
    if l.zero().is_some() {
        return Err(Error::Unsupported("the upper component of a gluing cannot be pointed".into()));
    }
    let k = &t.k;
    let ku = k.unit();
    let lo: Vec<usize> = (0..k.size()).filter(|&x| x != ku).collect();
    let needs_bottom = lo.iter().any(|&x| lo.iter().any(|&y| k.join(x, y) == Some(ku)));
    if needs_bottom && l.bottom() == l.unit() {
        return Err(Error::Precondition(
            "K has two elements joining to 1, so L needs a bottom element below its unit".into(),
        ));
    }
    let coatom = l
        .poset()
        .max_of(l.elements().filter(|&x| x != l.unit()))
        .ok_or_else(|| Error::Precondition("L has no splitting coatom".into()))?;

    let m = lo.len();
    let n = m + l.size();
    let unit = m + l.unit();
    let c_l = m + coatom;
    let emb = |x: usize| if x == ku { unit } else { lo.iter().position(|&y| y == x).unwrap() };
    let side = |p: usize| if p < m { Side::K(lo[p]) } else { Side::L(p - m) };
    let (s, g) = (&t.sigma, &t.gamma);

    let k_chain = k.poset().is_index_chain() && ku == k.size() - 1;
    let order = if k_chain && l.is_index_chain() {
        Order::Chain
    } else {
        Order::Matrix(
            (0..n)
                .map(|p| {
                    (0..n)
                        .map(|q| match (side(p), side(q)) {
                            (Side::K(x), Side::K(y)) => k.leq(x, y),
                            (Side::K(_), Side::L(_)) => true,
                            (Side::L(_), Side::K(_)) => false,
                            (Side::L(x), Side::L(y)) => l.leq(x, y),
                        })
                        .collect()
                })
                .collect(),
        )
    };

    let lu = l.unit();
    let product = Table::from_fn(n, |p, q| match (side(p), side(q)) {
        (Side::K(x), Side::K(y)) => emb(k.mul(x, y).expect("products of K are total")),
        (Side::K(x), Side::L(y)) => if y == lu { p } else { emb(s[x]) },
        (Side::L(x), Side::K(y)) => if x == lu { q } else { emb(s[y]) },
        (Side::L(x), Side::L(y)) => m + l.mul(x, y),
    });
    // ldiv[p][q] = p\q and rdiv[p][q] = q/p follow the same case split
    let div = |kdiv: &dyn Fn(usize, usize) -> Option<usize>, ldiv: &dyn Fn(usize, usize) -> usize| {
        Table::from_fn(n, |p, q| match (side(p), side(q)) {
            (Side::K(x), Side::K(y)) => kdiv(x, y).map_or(c_l, emb),
            (Side::K(_), Side::L(_)) => unit,
            (Side::L(x), Side::K(y)) => if x == lu { q } else { emb(g[y]) },
            (Side::L(x), Side::L(y)) => m + ldiv(x, y),
        })
    };
    let ldiv = div(&|x, y| k.under(x, y), &|x, y| l.under(x, y));
    let rdiv = div(&|x, y| k.over(y, x), &|x, y| l.over(y, x));

    let labels = lo.iter().map(|&x| k.label(x).to_string()).chain(l.labels().iter().cloned()).collect();
    FiniteRL::from_parts(AlgebraParts {
        name: format!("{} ⊕π {}", k.name(), l.name()),
        labels: dedupe_labels(labels),
        order,
        unit,
        product,
        ldiv: Some(ldiv),
        rdiv: Some(rdiv),
        zero: None,
    })
}

#[derive(Clone, Copy)]
enum Side {
    K(usize),
    L(usize),
}
