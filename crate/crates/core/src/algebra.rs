//! Finite residuated lattices stored as order and operation tables.

use std::fmt;

use crate::error::{Error, Result};
use crate::table::Table;

/// The lattice order of a finite algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Order {
    /// Index order `0 < 1 < ... < n-1`.
    Chain,
    /// Explicit `leq[x][y]` matrix.
    Matrix(Vec<Vec<bool>>),
}

/// A finite partial order with cached `leq` lookups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    leq: Vec<bool>,
    index_chain: bool,
}

impl Poset {
    pub fn chain(n: usize) -> Self {
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in x..n {
                leq[x * n + y] = true;
            }
        }
        Poset { n, leq, index_chain: true }
    }

    /// Builds a poset from an order descriptor. Fails on ragged matrices or
    /// relations that are not partial orders.
    pub fn from_order(n: usize, order: &Order) -> Result<Self> {
        let rows = match order {
            Order::Chain => return Ok(Poset::chain(n)),
            Order::Matrix(rows) => rows,
        };
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Format(format!("order matrix must be {n}x{n}")));
        }
        let leq: Vec<bool> = rows.iter().flatten().copied().collect();
        let poset = Poset { n, leq, index_chain: false };
        if let Some(w) = poset.partial_order_violation() {
            return Err(Error::Format(format!("order is not a partial order: {w}")));
        }
        Ok(poset)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let rows: Vec<Vec<bool>> = (0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect();
        Poset::from_order(n, &Order::Matrix(rows))
    }

    fn partial_order_violation(&self) -> Option<String> {
        let n = self.n;
        for x in 0..n {
            if !self.leq(x, x) {
                return Some(format!("not reflexive at {x}"));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && self.leq(x, y) && self.leq(y, x) {
                    return Some(format!("not antisymmetric at ({x}, {y})"));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.leq(x, y) && self.leq(y, z) && !self.leq(x, z) {
                        return Some(format!("not transitive at ({x}, {y}, {z})"));
                    }
                }
            }
        }
        None
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// True when the order was given as the index-order marker.
    pub fn is_index_chain(&self) -> bool {
        self.index_chain
    }

    pub fn is_total(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.leq(x, y) || self.leq(y, x)))
    }

    /// Greatest lower bound, if any.
    pub fn glb(&self, x: usize, y: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.n).filter(|&z| self.leq(z, x) && self.leq(z, y)).collect();
        lower.iter().copied().find(|&m| lower.iter().all(|&z| self.leq(z, m)))
    }

    /// Least upper bound, if any.
    pub fn lub(&self, x: usize, y: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.n).filter(|&z| self.leq(x, z) && self.leq(y, z)).collect();
        upper.iter().copied().find(|&m| upper.iter().all(|&z| self.leq(m, z)))
    }

    pub fn max_of(&self, set: impl IntoIterator<Item = usize>) -> Option<usize> {
        let set: Vec<usize> = set.into_iter().collect();
        set.iter().copied().find(|&m| set.iter().all(|&z| self.leq(z, m)))
    }

    pub fn top(&self) -> Option<usize> {
        self.max_of(0..self.n)
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.n).find(|&m| (0..self.n).all(|z| self.leq(m, z)))
    }

    pub fn to_order(&self) -> Order {
        if self.index_chain {
            Order::Chain
        } else {
            Order::Matrix(
                (0..self.n)
                    .map(|x| (0..self.n).map(|y| self.leq(x, y)).collect())
                    .collect(),
            )
        }
    }

    /// Restriction to `elems` (listed in the new index order).
    pub fn restrict(&self, elems: &[usize]) -> Poset {
        let k = elems.len();
        let mut leq = vec![false; k * k];
        for (a, &x) in elems.iter().enumerate() {
            for (b, &y) in elems.iter().enumerate() {
                leq[a * k + b] = self.leq(x, y);
            }
        }
        let index_chain = self.index_chain && elems.windows(2).all(|w| w[0] < w[1]);
        Poset { n: k, leq, index_chain }
    }
}

/// Raw material for a [`FiniteRL`]; divisions are derived when absent.
#[derive(Clone, Debug)]
pub struct AlgebraParts {
    pub name: String,
    pub labels: Vec<String>,
    pub order: Order,
    pub unit: usize,
    pub product: Table,
    pub ldiv: Option<Table>,
    pub rdiv: Option<Table>,
    pub zero: Option<usize>,
}

/// A finite residuated lattice.
///
/// `ldiv[x][z]` stores `x\z` and `rdiv[x][z]` stores `z/x`, so both division
/// tables are indexed (divisor, numerator) and a commutative algebra has
/// identical tables. Divisions are stored as given; [`FiniteRL::validate`]
/// cross-checks them against the product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRL {
    name: String,
    labels: Vec<String>,
    poset: Poset,
    unit: usize,
    product: Table,
    ldiv: Table,
    rdiv: Table,
    zero: Option<usize>,
    meet: Table,
    join: Table,
}

impl FiniteRL {
    pub fn from_parts(parts: AlgebraParts) -> Result<Self> {
        let AlgebraParts { name, labels, order, unit, product, ldiv, rdiv, zero } = parts;
        let n = product.size();
        if n == 0 {
            return Err(Error::Format("an algebra needs at least one element".into()));
        }
        if labels.len() != n {
            return Err(Error::Format(format!("{} labels for {n} elements", labels.len())));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Format(format!("duplicate label `{l}`")));
            }
        }
        if unit >= n {
            return Err(Error::Format(format!("unit {unit} out of range")));
        }
        if let Some(z) = zero {
            if z >= n {
                return Err(Error::Format(format!("zero {z} out of range")));
            }
        }
        if product.cells().iter().any(|&v| v >= n) {
            return Err(Error::Format("product entry out of range".into()));
        }
        let poset = Poset::from_order(n, &order)?;
        let (ldiv, rdiv) = match (ldiv, rdiv) {
            (Some(l), Some(r)) => (l, r),
            (l, r) => {
                let (dl, dr) = residuals_with_poset(&poset, &product)?;
                (l.unwrap_or(dl), r.unwrap_or(dr))
            }
        };
        for (t, what) in [(&ldiv, "ldiv"), (&rdiv, "rdiv")] {
            if t.size() != n {
                return Err(Error::Format(format!("{what} table must be {n}x{n}")));
            }
            if t.cells().iter().any(|&v| v >= n) {
                return Err(Error::Format(format!("{what} entry out of range")));
            }
        }
        let mut meet = Table::from_fn(n, |_, _| 0);
        let mut join = Table::from_fn(n, |_, _| 0);
        for x in 0..n {
            for y in 0..n {
                let m = poset.glb(x, y).ok_or_else(|| {
                    Error::Format(format!("order is not a lattice: no meet of {x} and {y}"))
                })?;
                let j = poset.lub(x, y).ok_or_else(|| {
                    Error::Format(format!("order is not a lattice: no join of {x} and {y}"))
                })?;
                meet.set(x, y, m);
                join.set(x, y, j);
            }
        }
        Ok(FiniteRL { name, labels, poset, unit, product, ldiv, rdiv, zero, meet, join })
    }

    /// Convenience constructor for index-ordered chains with derived divisions.
    pub fn chain_from_product(
        name: &str,
        labels: &[&str],
        unit: usize,
        product: &[Vec<usize>],
    ) -> Result<Self> {
        FiniteRL::from_parts(AlgebraParts {
            name: name.to_string(),
            labels: labels.iter().map(|s| s.to_string()).collect(),
            order: Order::Chain,
            unit,
            product: Table::from_rows(product, "product")?,
            ldiv: None,
            rdiv: None,
            zero: None,
        })
    }

    pub fn into_parts(self) -> AlgebraParts {
        AlgebraParts {
            name: self.name,
            labels: self.labels,
            order: self.poset.to_order(),
            unit: self.unit,
            product: self.product,
            ldiv: Some(self.ldiv),
            rdiv: Some(self.rdiv),
            zero: self.zero,
        }
    }

    pub fn to_parts(&self) -> AlgebraParts {
        self.clone().into_parts()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_labels(self, labels: Vec<String>) -> Result<Self> {
        let mut p = self.into_parts();
        p.labels = labels;
        FiniteRL::from_parts(p)
    }

    /// Designates (or clears) the constant `0`.
    pub fn with_zero(mut self, zero: Option<usize>) -> Result<Self> {
        if let Some(z) = zero {
            if z >= self.size() {
                return Err(Error::Format(format!("zero {z} out of range")));
            }
        }
        self.zero = zero;
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.product.size()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn order(&self) -> Order {
        self.poset.to_order()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.product.get(x, y)
    }

    /// `x\z`
    pub fn under(&self, x: usize, z: usize) -> usize {
        self.ldiv.get(x, z)
    }

    /// `z/y`
    pub fn over(&self, z: usize, y: usize) -> usize {
        self.rdiv.get(y, z)
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet.get(x, y)
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join.get(x, y)
    }

    pub fn product_table(&self) -> &Table {
        &self.product
    }

    pub fn ldiv_table(&self) -> &Table {
        &self.ldiv
    }

    pub fn rdiv_table(&self) -> &Table {
        &self.rdiv
    }

    pub fn top(&self) -> usize {
        self.join_all(self.elements())
    }

    pub fn bottom(&self) -> usize {
        self.elements().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    fn join_all(&self, it: impl Iterator<Item = usize>) -> usize {
        it.fold(self.elements().next().unwrap_or(0), |acc, x| self.join(acc, x))
    }

    /// Totally ordered (in any index order).
    pub fn is_chain(&self) -> bool {
        self.poset.is_total()
    }

    /// Totally ordered with the lattice order equal to index order.
    pub fn is_index_chain(&self) -> bool {
        self.poset.is_index_chain()
            || (0..self.size()).all(|x| (0..self.size()).all(|y| self.leq(x, y) == (x <= y)))
    }

    pub fn is_commutative(&self) -> bool {
        self.elements().all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn is_integral(&self) -> bool {
        self.elements().all(|x| self.leq(x, self.unit))
    }

    /// `x^k` for `k >= 1`.
    pub fn power(&self, x: usize, k: usize) -> usize {
        (1..k).fold(x, |acc, _| self.mul(acc, x))
    }

    /// Equality of all operation tables, order, unit and zero; names and labels are ignored.
    pub fn tables_eq(&self, other: &FiniteRL) -> bool {
        self.size() == other.size()
            && self.poset.leq == other.poset.leq
            && self.unit == other.unit
            && self.zero == other.zero
            && self.product == other.product
            && self.ldiv == other.ldiv
            && self.rdiv == other.rdiv
    }

    /// Like [`FiniteRL::tables_eq`] but ignoring the designated zero.
    pub fn reduct_tables_eq(&self, other: &FiniteRL) -> bool {
        self.size() == other.size()
            && self.poset.leq == other.poset.leq
            && self.unit == other.unit
            && self.product == other.product
            && self.ldiv == other.ldiv
            && self.rdiv == other.rdiv
    }

    /// Checks the requested properties; each failing check carries the
    /// lexicographically least violating tuple.
    pub fn validate(&self, props: &[Property]) -> ValidationReport {
        let mut report = ValidationReport::default();
        for &p in props {
            let witness = match p {
                Property::Lattice => self.lattice_violation(),
                Property::Monoid => self.monoid_violation(),
                Property::Residuation => self.residuation_violation(),
                Property::Integral => self.elements().find(|&x| !self.leq(x, self.unit)).map(|x| vec![x]),
                Property::Commutative => first_pair(self.size(), |x, y| self.mul(x, y) != self.mul(y, x)),
                Property::Chain => first_pair(self.size(), |x, y| !self.leq(x, y) && !self.leq(y, x)),
                Property::ZeroBounded => match self.zero {
                    None => {
                        report.push(Check::fail(p.name(), vec![], "no zero constant"));
                        continue;
                    }
                    Some(z) => self.elements().find(|&x| !self.leq(z, x)).map(|x| vec![x]),
                },
            };
            report.push(match witness {
                None => Check::pass(p.name()),
                Some(w) => {
                    let detail = self.describe_violation(p, &w);
                    Check::fail(p.name(), w, &detail)
                }
            });
        }
        report
    }

    /// Validates the residuated lattice axioms (lattice, monoid, residuation).
    pub fn validate_rl(&self) -> ValidationReport {
        self.validate(&[Property::Lattice, Property::Monoid, Property::Residuation])
    }

    fn lattice_violation(&self) -> Option<Vec<usize>> {
        let n = self.size();
        first_pair(n, |x, y| {
            Some(self.meet(x, y)) != self.poset.glb(x, y) || Some(self.join(x, y)) != self.poset.lub(x, y)
        })
    }

    fn monoid_violation(&self) -> Option<Vec<usize>> {
        let u = self.unit;
        if let Some(x) = self.elements().find(|&x| self.mul(u, x) != x || self.mul(x, u) != x) {
            return Some(vec![x]);
        }
        first_triple(self.size(), |x, y, z| {
            self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z))
        })
    }

    fn residuation_violation(&self) -> Option<Vec<usize>> {
        first_triple(self.size(), |x, y, z| {
            let a = self.leq(self.mul(x, y), z);
            let b = self.leq(y, self.under(x, z));
            let c = self.leq(x, self.over(z, y));
            !(a == b && b == c)
        })
    }

    fn describe_violation(&self, p: Property, w: &[usize]) -> String {
        let l = |i: usize| self.label(w[i]).to_string();
        match p {
            Property::Lattice => format!("meet/join of {} and {} disagree with the order", l(0), l(1)),
            Property::Monoid if w.len() == 1 => format!("unit law fails at {}", l(0)),
            Property::Monoid => format!("({0}*{1})*{2} != {0}*({1}*{2})", l(0), l(1), l(2)),
            Property::Residuation => format!(
                "{0}*{1} <= {2}, {1} <= {0}\\{2}, {0} <= {2}/{1} disagree",
                l(0),
                l(1),
                l(2)
            ),
            Property::Integral => format!("{} is not below the unit", l(0)),
            Property::Commutative => format!("{0}*{1} != {1}*{0}", l(0), l(1)),
            Property::Chain => format!("{} and {} are incomparable", l(0), l(1)),
            Property::ZeroBounded => format!("zero is not below {}", l(0)),
        }
    }

    /// Plain-text rendering of order and tables.
    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let n = self.size();
        let w = self.labels.iter().map(|l| l.chars().count()).max().unwrap_or(1).max(1);
        let mut out = String::new();
        let _ = writeln!(out, "{} ({} elements)", self.name, n);
        if self.is_index_chain() {
            let chain: Vec<&str> = self.labels.iter().map(String::as_str).collect();
            let _ = writeln!(out, "order: {}", chain.join(" < "));
        } else {
            let _ = writeln!(out, "order: lattice (matrix)");
        }
        let _ = writeln!(out, "unit: {}", self.label(self.unit));
        if let Some(z) = self.zero {
            let _ = writeln!(out, "zero: {}", self.label(z));
        }
        for (title, t) in [("x*y", &self.product), ("x\\y", &self.ldiv), ("y/x", &self.rdiv)] {
            let _ = writeln!(out, "{title}");
            let _ = write!(out, "{:>w$} |", "");
            for y in 0..n {
                let _ = write!(out, " {:>w$}", self.label(y));
            }
            let _ = writeln!(out);
            for x in 0..n {
                let _ = write!(out, "{:>w$} |", self.label(x));
                for y in 0..n {
                    let _ = write!(out, " {:>w$}", self.label(t.get(x, y)));
                }
                let _ = writeln!(out);
            }
        }
        out
    }
}

impl fmt::Display for FiniteRL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

/// Properties checked by [`FiniteRL::validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    Lattice,
    Monoid,
    Residuation,
    Integral,
    Commutative,
    Chain,
    ZeroBounded,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::Lattice,
        Property::Monoid,
        Property::Residuation,
        Property::Integral,
        Property::Commutative,
        Property::Chain,
        Property::ZeroBounded,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Lattice => "lattice",
            Property::Monoid => "monoid",
            Property::Residuation => "residuation",
            Property::Integral => "integral",
            Property::Commutative => "commutative",
            Property::Chain => "chain",
            Property::ZeroBounded => "zero-bounded",
        }
    }

    pub fn parse(s: &str) -> Result<Property> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Format(format!("unknown property flag `{s}`")))
    }

    /// Parses a comma-separated flag list such as `chain,commutative`.
    pub fn parse_list(s: &str) -> Result<Vec<Property>> {
        s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(Property::parse).collect()
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Violating tuple of element indices (empty when passed).
    pub witness: Vec<usize>,
    pub detail: String,
}

impl Check {
    pub fn pass(name: &str) -> Self {
        Check { name: name.to_string(), passed: true, witness: vec![], detail: String::new() }
    }

    pub fn fail(name: &str, witness: Vec<usize>, detail: &str) -> Self {
        Check { name: name.to_string(), passed: false, witness, detail: detail.to_string() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn extend(&mut self, prefix: &str, other: ValidationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }
}

pub(crate) fn first_pair(n: usize, bad: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    for x in 0..n {
        for y in 0..n {
            if bad(x, y) {
                return Some(vec![x, y]);
            }
        }
    }
    None
}

pub(crate) fn first_triple(n: usize, bad: impl Fn(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if bad(x, y, z) {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}

/// Computes `(ldiv, rdiv)` from an order-preserving product: `x\z` is the
/// largest `y` with `x*y <= z` and `z/x` the largest `y` with `y*x <= z`.
pub fn residuals_from_product(order: &Order, product: &Table) -> Result<(Table, Table)> {
    let poset = Poset::from_order(product.size(), order)?;
    residuals_with_poset(&poset, product)
}

pub(crate) fn residuals_with_poset(poset: &Poset, product: &Table) -> Result<(Table, Table)> {
    let n = product.size();
    if poset.size() != n {
        return Err(Error::Format("order and product sizes differ".into()));
    }
    let mut ldiv = Table::from_fn(n, |_, _| 0);
    let mut rdiv = Table::from_fn(n, |_, _| 0);
    for x in 0..n {
        for z in 0..n {
            let set = (0..n).filter(|&y| poset.leq(product.get(x, y), z));
            let m = poset
                .max_of(set)
                .ok_or(Error::NotResiduated { division: "left", x, z })?;
            ldiv.set(x, z, m);
        }
    }
    for x in 0..n {
        for z in 0..n {
            let set = (0..n).filter(|&y| poset.leq(product.get(y, x), z));
            let m = poset
                .max_of(set)
                .ok_or(Error::NotResiduated { division: "right", x, z })?;
            rdiv.set(x, z, m);
        }
    }
    Ok((ldiv, rdiv))
}

/// Makes labels unique by suffixing repeats with `_2`, `_3`, ...
pub(crate) fn dedupe_labels(labels: Vec<String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(labels.len());
    for l in labels {
        let mut cand = l.clone();
        let mut k = 2;
        while out.contains(&cand) {
            cand = format!("{l}_{k}");
            k += 1;
        }
        out.push(cand);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_chain() -> FiniteRL {
        // Goedel chain u < v < 1
        FiniteRL::chain_from_product("G3", &["u", "v", "1"], 2, &[vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]])
            .unwrap()
    }

    #[test]
    fn derived_divisions_of_goedel_chain() {
        let a = three_chain();
        assert_eq!(a.under(1, 0), 0);
        assert_eq!(a.under(0, 1), 2);
        assert_eq!(a.over(0, 1), 0);
        assert!(a.validate(&Property::ALL[..6]).passed());
    }

    #[test]
    fn trivial_algebra_passes_everything() {
        let t = FiniteRL::chain_from_product("1", &["1"], 0, &[vec![0]]).unwrap().with_zero(Some(0)).unwrap();
        assert!(t.validate(&Property::ALL).passed());
    }

    #[test]
    fn ragged_product_is_a_format_error() {
        let err = FiniteRL::chain_from_product("bad", &["a", "b"], 1, &[vec![0, 0], vec![0]]).unwrap_err();
        assert!(matches!(err, Error::Format(_)));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let err = FiniteRL::chain_from_product("bad", &["a", "a"], 1, &[vec![0, 0], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::Format(_)));
    }

    #[test]
    fn non_residuated_product_reports_pair() {
        // 0 is not absorbing: 1*0 = 1 > 0, so {y : 1*y <= 0} is empty
        let p = Table::from_rows(&[vec![0, 1], vec![1, 1]], "product").unwrap();
        let err = residuals_from_product(&Order::Chain, &p).unwrap_err();
        assert_eq!(err, Error::NotResiduated { division: "left", x: 1, z: 0 });
    }

    #[test]
    fn non_lattice_order_rejected() {
        // two incomparable maximal elements
        let order = Order::Matrix(vec![vec![true, true, true], vec![false, true, false], vec![false, false, true]]);
        assert!(Poset::from_order(3, &order).is_ok());
        let err = FiniteRL::from_parts(AlgebraParts {
            name: "v".into(),
            labels: vec!["0".into(), "a".into(), "b".into()],
            order,
            unit: 1,
            product: Table::from_fn(3, |_, _| 0),
            ldiv: Some(Table::from_fn(3, |_, _| 0)),
            rdiv: Some(Table::from_fn(3, |_, _| 0)),
            zero: None,
        })
        .unwrap_err();
        assert!(matches!(err, Error::Format(_)));
    }

    #[test]
    fn dedupe_suffixes_repeats() {
        let v = dedupe_labels(vec!["a".into(), "a".into(), "b".into(), "a".into()]);
        assert_eq!(v, vec!["a", "a_2", "b", "a_3"]);
    }
}
