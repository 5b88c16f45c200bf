//! Partial integral residuated lattices: operation tables with definedness masks.

use crate::algebra::{first_triple, Check, FiniteRL, Order, Poset, ValidationReport};
use crate::error::{Error, Result};
use crate::table::Table;

/// Definedness masks, each `n x n`, indexed like the corresponding table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Masks {
    pub product: Vec<Vec<bool>>,
    pub ldiv: Vec<Vec<bool>>,
    pub rdiv: Vec<Vec<bool>>,
}

impl Masks {
    pub fn all_defined(n: usize) -> Self {
        let full = vec![vec![true; n]; n];
        Masks { product: full.clone(), ldiv: full.clone(), rdiv: full }
    }
}

#[derive(Clone, Debug)]
pub struct PartialParts {
    pub name: String,
    pub labels: Vec<String>,
    pub order: Order,
    pub unit: usize,
    pub product: Table,
    pub ldiv: Table,
    pub rdiv: Table,
    pub masks: Masks,
}

/// A partially ordered partial algebra in the language of residuated lattices.
/// Table entries whose mask bit is clear are ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialIRL {
    name: String,
    labels: Vec<String>,
    poset: Poset,
    unit: usize,
    product: Table,
    ldiv: Table,
    rdiv: Table,
    masks: Masks,
}

impl PartialIRL {
    pub fn from_parts(p: PartialParts) -> Result<Self> {
        let n = p.product.size();
        if n == 0 {
            return Err(Error::Format("an algebra needs at least one element".into()));
        }
        if p.labels.len() != n {
            return Err(Error::Format(format!("{} labels for {n} elements", p.labels.len())));
        }
        for (i, l) in p.labels.iter().enumerate() {
            if p.labels[..i].contains(l) {
                return Err(Error::Format(format!("duplicate label `{l}`")));
            }
        }
        if p.unit >= n {
            return Err(Error::Format(format!("unit {} out of range", p.unit)));
        }
        for (t, what) in [(&p.product, "product"), (&p.ldiv, "ldiv"), (&p.rdiv, "rdiv")] {
            if t.size() != n || t.cells().iter().any(|&v| v >= n) {
                return Err(Error::Format(format!("{what} table malformed for size {n}")));
            }
        }
        for (m, what) in [(&p.masks.product, "product"), (&p.masks.ldiv, "ldiv"), (&p.masks.rdiv, "rdiv")] {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(Error::Format(format!("{what} mask must be {n}x{n}")));
            }
        }
        let poset = Poset::from_order(n, &p.order)?;
        Ok(PartialIRL {
            name: p.name,
            labels: p.labels,
            poset,
            unit: p.unit,
            product: p.product,
            ldiv: p.ldiv,
            rdiv: p.rdiv,
            masks: p.masks,
        })
    }

    /// A total algebra seen as a partial one with every operation defined.
    pub fn from_total(alg: &FiniteRL) -> Self {
        PartialIRL {
            name: alg.name().to_string(),
            labels: alg.labels().to_vec(),
            poset: alg.poset().clone(),
            unit: alg.unit(),
            product: alg.product_table().clone(),
            ldiv: alg.ldiv_table().clone(),
            rdiv: alg.rdiv_table().clone(),
            masks: Masks::all_defined(alg.size()),
        }
    }

    pub fn to_parts(&self) -> PartialParts {
        PartialParts {
            name: self.name.clone(),
            labels: self.labels.clone(),
            order: self.poset.to_order(),
            unit: self.unit,
            product: self.product.clone(),
            ldiv: self.ldiv.clone(),
            rdiv: self.rdiv.clone(),
            masks: self.masks.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.product.size()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn masks(&self) -> &Masks {
        &self.masks
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

    pub fn mul(&self, x: usize, y: usize) -> Option<usize> {
        self.masks.product[x][y].then(|| self.product.get(x, y))
    }

    /// `x\z`, when defined.
    pub fn under(&self, x: usize, z: usize) -> Option<usize> {
        self.masks.ldiv[x][z].then(|| self.ldiv.get(x, z))
    }

    /// `z/y`, when defined.
    pub fn over(&self, z: usize, y: usize) -> Option<usize> {
        self.masks.rdiv[y][z].then(|| self.rdiv.get(y, z))
    }

    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        self.poset.glb(x, y)
    }

    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        self.poset.lub(x, y)
    }

    /// Checks integrality, the conditional residuated-lattice axioms,
    /// monotonicity of defined operations and the partial-monoid condition.
    pub fn validate_partial(&self) -> ValidationReport {
        let n = self.size();
        let u = self.unit;
        let leq = |x, y| self.leq(x, y);
        let mut report = ValidationReport::default();
        let mut add = |name: &str, w: Option<Vec<usize>>, detail: &str| {
            report.push(match w {
                None => Check::pass(name),
                Some(w) => Check::fail(name, w, detail),
            });
        };

        add(
            "integral",
            (0..n).find(|&x| !leq(x, u)).map(|x| vec![x]),
            "element not below the unit",
        );

        // meets and joins are read off the order, so they are least/greatest
        // bounds wherever they exist; only a missing top could break this
        add("lattice", self.poset.top().is_none().then(Vec::new), "no top element");

        add(
            "unit",
            (0..n).find(|&x| self.mul(x, u) != Some(x) || self.mul(u, x) != Some(x)).map(|x| vec![x]),
            "x*1 = 1*x = x fails",
        );

        add(
            "associativity",
            first_triple(n, |x, y, z| {
                match (self.mul(x, y), self.mul(y, z)) {
                    (Some(xy), Some(yz)) => match (self.mul(xy, z), self.mul(x, yz)) {
                        (Some(l), Some(r)) => l != r,
                        _ => false,
                    },
                    _ => false,
                }
            }),
            "(xy)z != x(yz) where both are defined",
        );

        add(
            "residuation",
            first_triple(n, |x, y, z| {
                match (self.mul(x, y), self.over(z, y), self.under(x, z)) {
                    (Some(xy), Some(zy), Some(xz)) => {
                        let a = leq(xy, z);
                        let b = leq(x, zy);
                        let c = leq(y, xz);
                        !(a == b && b == c)
                    }
                    _ => false,
                }
            }),
            "xy <= z, x <= z/y, y <= x\\z disagree where defined",
        );

        add(
            "product-monotone",
            first_triple(n, |a, b, c| {
                if !leq(a, b) {
                    return false;
                }
                let right = matches!((self.mul(a, c), self.mul(b, c)), (Some(p), Some(q)) if !leq(p, q));
                let left = matches!((self.mul(c, a), self.mul(c, b)), (Some(p), Some(q)) if !leq(p, q));
                right || left
            }),
            "defined products not order-preserving",
        );

        add(
            "division-monotone",
            first_triple(n, |x, y, z| {
                if !leq(x, y) {
                    return false;
                }
                let num_l = matches!((self.under(z, x), self.under(z, y)), (Some(p), Some(q)) if !leq(p, q));
                let den_l = matches!((self.under(y, z), self.under(x, z)), (Some(p), Some(q)) if !leq(p, q));
                let num_r = matches!((self.over(x, z), self.over(y, z)), (Some(p), Some(q)) if !leq(p, q));
                let den_r = matches!((self.over(z, y), self.over(z, x)), (Some(p), Some(q)) if !leq(p, q));
                num_l || den_l || num_r || den_r
            }),
            "defined divisions not isotone in the numerator / antitone in the denominator",
        );

        add(
            "partial-monoid",
            first_triple(n, |x, y, z| {
                let l = self.mul(x, y).and_then(|xy| self.mul(xy, z));
                let r = self.mul(y, z).and_then(|yz| self.mul(x, yz));
                l != r
            }),
            "xy,(xy)z defined iff yz,x(yz) defined, with equal values",
        );
        report
    }
}
