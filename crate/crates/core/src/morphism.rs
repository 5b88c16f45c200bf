//! Homomorphisms and embeddings between finite algebras, and generated subalgebras.

use crate::algebra::{AlgebraParts, FiniteRL};
use crate::table::Table;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MorphKind {
    Hom,
    Embedding,
}

/// A map between carriers, `map[x]` being the image of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub map: Vec<usize>,
    pub kind: MorphKind,
}

impl Morphism {
    pub fn new(map: Vec<usize>, kind: MorphKind) -> Self {
        Morphism { map, kind }
    }

    pub fn identity(n: usize) -> Self {
        Morphism { map: (0..n).collect(), kind: MorphKind::Embedding }
    }

    /// `self ∘ first`
    pub fn after(&self, first: &Morphism) -> Morphism {
        let kind = if self.kind == MorphKind::Embedding && first.kind == MorphKind::Embedding {
            MorphKind::Embedding
        } else {
            MorphKind::Hom
        };
        Morphism { map: first.map.iter().map(|&x| self.map[x]).collect(), kind }
    }

    /// First violated preservation condition, or `None` if `map` is a
    /// morphism of the declared kind from `dom` to `cod`.
    pub fn violation(&self, dom: &FiniteRL, cod: &FiniteRL) -> Option<String> {
        let f = &self.map;
        if f.len() != dom.size() {
            return Some(format!("map has {} entries for {} elements", f.len(), dom.size()));
        }
        if let Some(x) = f.iter().position(|&y| y >= cod.size()) {
            return Some(format!("image of {} out of range", dom.label(x)));
        }
        if f[dom.unit()] != cod.unit() {
            return Some("unit not preserved".into());
        }
        if let (Some(z), Some(w)) = (dom.zero(), cod.zero()) {
            if f[z] != w {
                return Some("zero not preserved".into());
            }
        }
        if self.kind == MorphKind::Embedding {
            for x in dom.elements() {
                for y in 0..x {
                    if f[x] == f[y] {
                        return Some(format!("not injective: {} and {} collide", dom.label(y), dom.label(x)));
                    }
                }
            }
        }
        for x in dom.elements() {
            for y in dom.elements() {
                if let Some(op) = op_violation(dom, cod, f, x, y) {
                    let (sym, d, c) = op;
                    return Some(format!(
                        "{} {sym} {} = {} but images give {} instead of {}",
                        dom.label(x),
                        dom.label(y),
                        dom.label(d),
                        cod.label(c),
                        cod.label(f[d])
                    ));
                }
            }
        }
        None
    }

    pub fn is_valid(&self, dom: &FiniteRL, cod: &FiniteRL) -> bool {
        self.violation(dom, cod).is_none()
    }
}

/// Returns `(symbol, value in dom, value computed in cod)` for the first
/// operation that `f` fails to preserve at `(x, y)`.
fn op_violation(dom: &FiniteRL, cod: &FiniteRL, f: &[usize], x: usize, y: usize) -> Option<(&'static str, usize, usize)> {
    let (fx, fy) = (f[x], f[y]);
    let checks = [
        ("*", dom.mul(x, y), cod.mul(fx, fy)),
        ("∧", dom.meet(x, y), cod.meet(fx, fy)),
        ("∨", dom.join(x, y), cod.join(fx, fy)),
        ("\\", dom.under(x, y), cod.under(fx, fy)),
        ("/", dom.over(x, y), cod.over(fx, fy)),
    ];
    checks.into_iter().find(|&(_, d, c)| f[d] != c)
}

/// All homomorphisms `x -> y` extending `pin`, in lexicographic order of maps.
pub fn find_homomorphisms(x: &FiniteRL, y: &FiniteRL, pin: &[(usize, usize)]) -> Vec<Morphism> {
    search(x, y, pin, false)
}

/// All embeddings `x -> y` extending `pin`, in lexicographic order of maps.
pub fn find_embeddings(x: &FiniteRL, y: &FiniteRL, pin: &[(usize, usize)]) -> Vec<Morphism> {
    search(x, y, pin, true)
}

fn search(x: &FiniteRL, y: &FiniteRL, pin: &[(usize, usize)], injective: bool) -> Vec<Morphism> {
    let n = x.size();
    let mut fixed: Vec<Option<usize>> = vec![None; n];
    for &(a, b) in pin {
        if a >= n || b >= y.size() || fixed[a].is_some_and(|c| c != b) {
            return vec![];
        }
        fixed[a] = Some(b);
    }
    for (a, b) in [(Some(x.unit()), y.unit()), (x.zero(), y.zero().unwrap_or(usize::MAX))] {
        if let Some(a) = a {
            if b == usize::MAX {
                continue;
            }
            if fixed[a].is_some_and(|c| c != b) {
                return vec![];
            }
            fixed[a] = Some(b);
        }
    }
    let kind = if injective { MorphKind::Embedding } else { MorphKind::Hom };
    let mut out = vec![];
    let mut map = vec![0; n];
    extend(x, y, &fixed, injective, 0, &mut map, &mut |m| out.push(Morphism::new(m.to_vec(), kind)));
    out
}

fn extend(
    x: &FiniteRL,
    y: &FiniteRL,
    fixed: &[Option<usize>],
    injective: bool,
    k: usize,
    map: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    let n = x.size();
    if k == n {
        emit(map);
        return;
    }
    let cands: Vec<usize> = match fixed[k] {
        Some(b) => vec![b],
        None => y.elements().collect(),
    };
    'cand: for b in cands {
        if injective && map[..k].contains(&b) {
            continue;
        }
        map[k] = b;
        // every operation on already-assigned arguments whose value is assigned must agree
        for p in 0..=k {
            for (s, t) in [(p, k), (k, p)] {
                let (fs, ft) = (map[s], map[t]);
                let pairs = [
                    (x.mul(s, t), y.mul(fs, ft)),
                    (x.meet(s, t), y.meet(fs, ft)),
                    (x.join(s, t), y.join(fs, ft)),
                    (x.under(s, t), y.under(fs, ft)),
                    (x.over(s, t), y.over(fs, ft)),
                ];
                for (d, c) in pairs {
                    if d <= k && map[d] != c {
                        continue 'cand;
                    }
                    if d > k && fixed[d].is_some_and(|v| v != c) {
                        continue 'cand;
                    }
                }
            }
        }
        extend(x, y, fixed, injective, k + 1, map, emit);
    }
}

pub fn is_isomorphic(x: &FiniteRL, y: &FiniteRL) -> bool {
    x.size() == y.size() && x.zero().is_some() == y.zero().is_some() && !find_embeddings(x, y, &[]).is_empty()
}

/// The least subalgebra containing `seed`, the unit and (if present) the zero,
/// with its inclusion map. Elements keep their relative index order.
pub fn subalgebra_generated(alg: &FiniteRL, seed: &[usize]) -> (FiniteRL, Morphism) {
    let n = alg.size();
    let mut inn = vec![false; n];
    inn[alg.unit()] = true;
    if let Some(z) = alg.zero() {
        inn[z] = true;
    }
    for &s in seed {
        inn[s] = true;
    }
    loop {
        let cur: Vec<usize> = (0..n).filter(|&x| inn[x]).collect();
        let mut grew = false;
        for &x in &cur {
            for &y in &cur {
                for v in [alg.mul(x, y), alg.meet(x, y), alg.join(x, y), alg.under(x, y), alg.over(x, y)] {
                    if !inn[v] {
                        inn[v] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    let elems: Vec<usize> = (0..n).filter(|&x| inn[x]).collect();
    let k = elems.len();
    let pos = |v: usize| elems.binary_search(&v).expect("closed");
    let restrict = |op: &dyn Fn(usize, usize) -> usize| Table::from_fn(k, |a, b| pos(op(elems[a], elems[b])));
    let order = alg.poset().restrict(&elems).to_order();
    let parts = AlgebraParts {
        name: format!("Sg({})", alg.name()),
        labels: elems.iter().map(|&x| alg.label(x).to_string()).collect(),
        order,
        unit: pos(alg.unit()),
        product: restrict(&|x, y| alg.mul(x, y)),
        ldiv: Some(restrict(&|x, y| alg.under(x, y))),
        rdiv: Some(restrict(&|x, z| alg.over(z, x))),
        zero: alg.zero().map(pos),
    };
    let sub = FiniteRL::from_parts(parts).expect("subalgebra of a lattice is a lattice");
    (sub, Morphism::new(elems, MorphKind::Embedding))
}
