use crate::algebra::{dedupe_labels, first_pair, AlgebraParts, Check, FiniteRL, Order, ValidationReport};
use crate::error::{Error, Result};
use crate::morphism::{MorphKind, Morphism};
use crate::table::Table;

/// A closure operator `δ` with `δ(x)δ(y) <= δ(xy)`, given as an element map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nucleus {
    pub name: String,
    pub map: Vec<usize>,
}

impl Nucleus {
    pub fn identity(alg: &FiniteRL) -> Self {
        Nucleus { name: "identity".into(), map: alg.elements().collect() }
    }

    /// `δ ≡ 1`
    pub fn constant_one(alg: &FiniteRL) -> Self {
        Nucleus { name: "const-1".into(), map: vec![alg.unit(); alg.size()] }
    }

    /// `identity`, `const-1`, or an explicit comma-separated map such as `0,2,2`.
    pub fn parse(alg: &FiniteRL, s: &str) -> Result<Self> {
        match s.trim() {
            "identity" | "id" => Ok(Nucleus::identity(alg)),
            "const-1" => Ok(Nucleus::constant_one(alg)),
            other => {
                let map = other
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Format(format!("bad nucleus map `{other}`"))))
                    .collect::<Result<Vec<_>>>()?;
                if map.len() != alg.size() || map.iter().any(|&v| v >= alg.size()) {
                    return Err(Error::Format(format!("nucleus map must list {} in-range images", alg.size())));
                }
                Ok(Nucleus { name: other.to_string(), map })
            }
        }
    }

    pub fn is_closed(&self, x: usize) -> bool {
        self.map[x] == x
    }
}

/// Closure-operator and nucleus clauses, each with its least witness.
pub fn validate_nucleus(alg: &FiniteRL, d: &Nucleus) -> ValidationReport {
    let n = alg.size();
    let f = &d.map;
    let mut r = ValidationReport::default();
    if f.len() != n || f.iter().any(|&v| v >= n) {
        r.push(Check::fail("map", vec![], "map must send every element into the algebra"));
        return r;
    }
    let mut add = |name: &str, w: Option<Vec<usize>>, detail: &str| {
        r.push(match w {
            None => Check::pass(name),
            Some(w) => Check::fail(name, w, detail),
        })
    };
    add("extensive", (0..n).find(|&x| !alg.leq(x, f[x])).map(|x| vec![x]), "x </= δ(x)");
    add("idempotent", (0..n).find(|&x| f[f[x]] != f[x]).map(|x| vec![x]), "δ(δ(x)) != δ(x)");
    add(
        "monotone",
        first_pair(n, |x, y| alg.leq(x, y) && !alg.leq(f[x], f[y])),
        "x <= y but δ(x) </= δ(y)",
    );
    add(
        "nucleus",
        first_pair(n, |x, y| !alg.leq(alg.mul(f[x], f[y]), f[alg.mul(x, y)])),
        "δ(x)δ(y) </= δ(xy)",
    );
    r
}

fn require_nucleus(alg: &FiniteRL, d: &Nucleus) -> Result<()> {
    match validate_nucleus(alg, d).first_failure() {
        None => Ok(()),
        Some(c) => Err(Error::Precondition(format!("not a nucleus: {} fails at {:?}", c.name, c.witness))),
    }
}

/// The image algebra `A_δ` on the closed elements, with `x ∨_δ y = δ(x ∨ y)`,
/// `x ·_δ y = δ(xy)` and the divisions of `A`; also returns the surjection
/// `x ↦ δ(x)` as indices into the image.
pub fn nucleus_image(alg: &FiniteRL, d: &Nucleus) -> Result<(FiniteRL, Vec<usize>)> {
    require_nucleus(alg, d)?;
    let f = &d.map;
    let elems: Vec<usize> = alg.elements().filter(|&x| d.is_closed(x)).collect();
    let k = elems.len();
    let pos = |x: usize| elems.binary_search(&f[x]).expect("image of δ is closed");
    let lift = |op: &dyn Fn(usize, usize) -> usize| Table::from_fn(k, |a, b| pos(op(elems[a], elems[b])));
    let image = FiniteRL::from_parts(AlgebraParts {
        name: format!("{}_δ", alg.name()),
        labels: elems.iter().map(|&x| alg.label(x).to_string()).collect(),
        order: alg.poset().restrict(&elems).to_order(),
        unit: pos(alg.unit()),
        product: lift(&|x, y| alg.mul(x, y)),
        ldiv: Some(lift(&|x, y| alg.under(x, y))),
        rdiv: Some(lift(&|x, z| alg.over(z, x))),
        zero: None,
    })?;
    Ok((image, alg.elements().map(pos).collect()))
}

/// Elements of a rotation, in index order: primes (reversed), the `ℓ` block, then `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Prime(usize),
    Ell(usize),
    Orig(usize),
}

struct Layout {
    kinds: Vec<Kind>,
    primes: usize,
    n: usize,
    unit_a: usize,
}

impl Layout {
    fn new(alg: &FiniteRL, d: &Nucleus, n: usize) -> Self {
        let closed: Vec<usize> = alg.elements().rev().filter(|&x| d.is_closed(x)).collect();
        let mut kinds: Vec<Kind> = closed.iter().map(|&b| Kind::Prime(b)).collect();
        kinds.extend((1..n - 1).map(Kind::Ell));
        kinds.extend(alg.elements().map(Kind::Orig));
        Layout { primes: closed.len(), kinds, n, unit_a: alg.unit() }
    }

    fn index(&self, k: Kind) -> usize {
        match k {
            Kind::Prime(b) => self.kinds[..self.primes].iter().position(|&x| x == Kind::Prime(b)).expect("closed"),
            Kind::Ell(i) => self.primes + i - 1,
            Kind::Orig(a) => self.primes + self.n - 2 + a,
        }
    }

    /// `ℓ_i` of the Łukasiewicz block, with `ℓ_0 = 1'` and `ℓ_{n-1} = 1`.
    fn ell(&self, i: usize) -> Kind {
        if i == 0 {
            Kind::Prime(self.unit_a)
        } else if i == self.n - 1 {
            Kind::Orig(self.unit_a)
        } else {
            Kind::Ell(i)
        }
    }
}

/// The generalized `n`-rotation of an integral algebra `a` by a nucleus `d`:
/// carrier `A ∪ δ[A]' ∪ {ℓ_1, …, ℓ_{n-2}}` with `b' < ℓ_i < a`, pointed by `0 = 1'`.
pub fn generalized_rotation(a: &FiniteRL, d: &Nucleus, n: usize) -> Result<FiniteRL> {
    if n < 2 {
        return Err(Error::Precondition(format!("rotation order must be at least 2, got {n}")));
    }
    if !a.is_integral() {
        return Err(Error::Precondition("rotation needs an integral algebra".into()));
    }
    require_nucleus(a, d)?;
    let lay = Layout::new(a, d, n);
    let size = lay.kinds.len();
    let kinds = &lay.kinds;
    let top = Kind::Orig(a.unit());
    let zero = Kind::Prime(a.unit());
    let f = &d.map;
    let last = n - 1;

    let leq = |p: Kind, q: Kind| match (p, q) {
        (Kind::Prime(b), Kind::Prime(c)) => a.leq(c, b),
        (Kind::Prime(_), _) => true,
        (_, Kind::Prime(_)) => false,
        (Kind::Ell(i), Kind::Ell(j)) => i <= j,
        (Kind::Ell(_), Kind::Orig(_)) => true,
        (Kind::Orig(_), Kind::Ell(_)) => false,
        (Kind::Orig(x), Kind::Orig(y)) => a.leq(x, y),
    };
    let mul = |p: Kind, q: Kind| match (p, q) {
        (Kind::Orig(x), Kind::Orig(y)) => Kind::Orig(a.mul(x, y)),
        (Kind::Orig(x), Kind::Prime(b)) => Kind::Prime(f[a.over(b, x)]),
        (Kind::Prime(b), Kind::Orig(x)) => Kind::Prime(f[a.under(x, b)]),
        (Kind::Orig(_), Kind::Ell(i)) | (Kind::Ell(i), Kind::Orig(_)) => Kind::Ell(i),
        (Kind::Ell(i), Kind::Ell(j)) => lay.ell((i + j).saturating_sub(last)),
        _ => zero,
    };
    // p\q
    let under = |p: Kind, q: Kind| match (p, q) {
        (Kind::Orig(x), Kind::Orig(y)) => Kind::Orig(a.under(x, y)),
        (Kind::Orig(x), Kind::Prime(b)) => Kind::Prime(f[a.mul(b, x)]),
        (Kind::Orig(_), Kind::Ell(i)) => Kind::Ell(i),
        (Kind::Prime(b), Kind::Prime(c)) => Kind::Orig(a.over(b, c)),
        (Kind::Prime(_), _) => top,
        (Kind::Ell(_), Kind::Orig(_)) => top,
        (Kind::Ell(i), Kind::Prime(_)) => lay.ell(last - i),
        (Kind::Ell(i), Kind::Ell(j)) => lay.ell((last + j - i).min(last)),
    };
    // q/p
    let over = |q: Kind, p: Kind| match (q, p) {
        (Kind::Orig(y), Kind::Orig(x)) => Kind::Orig(a.over(y, x)),
        (Kind::Prime(b), Kind::Orig(x)) => Kind::Prime(f[a.mul(x, b)]),
        (Kind::Ell(i), Kind::Orig(_)) => Kind::Ell(i),
        (Kind::Prime(c), Kind::Prime(b)) => Kind::Orig(a.under(c, b)),
        (_, Kind::Prime(_)) => top,
        (Kind::Orig(_), Kind::Ell(_)) => top,
        (Kind::Prime(_), Kind::Ell(i)) => lay.ell(last - i),
        (Kind::Ell(j), Kind::Ell(i)) => lay.ell((last + j - i).min(last)),
    };

    let idx = |k: Kind| lay.index(k);
    let order = if a.is_index_chain() {
        Order::Chain
    } else {
        Order::Matrix(kinds.iter().map(|&p| kinds.iter().map(|&q| leq(p, q)).collect()).collect())
    };
    let labels = kinds
        .iter()
        .map(|&k| match k {
            Kind::Prime(b) => format!("{}'", a.label(b)),
            Kind::Ell(i) => format!("l{i}"),
            Kind::Orig(x) => a.label(x).to_string(),
        })
        .collect();
    FiniteRL::from_parts(AlgebraParts {
        name: format!("{}^{}_{n}", a.name(), d.name),
        labels: dedupe_labels(labels),
        order,
        unit: idx(top),
        product: Table::from_fn(size, |p, q| idx(mul(kinds[p], kinds[q]))),
        ldiv: Some(Table::from_fn(size, |p, q| idx(under(kinds[p], kinds[q])))),
        rdiv: Some(Table::from_fn(size, |p, q| idx(over(kinds[q], kinds[p])))),
        zero: Some(idx(zero)),
    })
}

/// Rotation with the identity nucleus and `n = 2`.
pub fn disconnected_rotation(a: &FiniteRL) -> Result<FiniteRL> {
    generalized_rotation(a, &Nucleus::identity(a), 2)
}

/// Lifts `f: A -> B` to the rotations `A^δ_n -> B^ε_n`. Requires `f` to send
/// `δ`-closed elements to `ε`-closed ones.
pub fn rotate_morphism(
    f: &Morphism,
    dom: &FiniteRL,
    d: &Nucleus,
    cod: &FiniteRL,
    e: &Nucleus,
    n: usize,
) -> Result<Morphism> {
    let ld = Layout::new(dom, d, n);
    let lc = Layout::new(cod, e, n);
    let map = ld
        .kinds
        .iter()
        .map(|&k| {
            let img = match k {
                Kind::Prime(b) if e.is_closed(f.map[b]) => Kind::Prime(f.map[b]),
                Kind::Prime(b) => {
                    return Err(Error::Precondition(format!(
                        "{} is closed but its image {} is not",
                        dom.label(b),
                        cod.label(f.map[b])
                    )))
                }
                Kind::Ell(i) => Kind::Ell(i),
                Kind::Orig(x) => Kind::Orig(f.map[x]),
            };
            Ok(lc.index(img))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Morphism::new(map, if f.kind == MorphKind::Embedding { MorphKind::Embedding } else { MorphKind::Hom }))
}
