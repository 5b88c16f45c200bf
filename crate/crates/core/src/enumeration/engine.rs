//! Depth-first completion of chain product tables with domain propagation.
//!
//! Each unfixed cell carries a bitset of candidate values. Propagation rules:
//! monotonicity bounds along rows and columns, the unit row and column,
//! absorption by the bottom, commutativity (when required), division pins
//! turned into cell bounds, and associativity instances whose two inner
//! products are fixed. On a finite chain an order-preserving product with an
//! absorbing bottom is residuated, so every completion is a residuated chain.

use crate::algebra::{AlgebraParts, FiniteRL, Order};
use crate::error::{Error, Result};
use crate::table::Table;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Largest carrier the bitset domains support.
pub const MAX_SIZE: usize = 64;

/// A chain product table to complete: size, unit position, pinned cells and
/// pinned division values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompletionProblem {
    pub size: usize,
    pub unit: usize,
    /// `(x, y, v)`: `x*y = v`.
    pub products: Vec<(usize, usize, usize)>,
    /// `(x, z, d)`: `x\z = d`.
    pub ldivs: Vec<(usize, usize, usize)>,
    /// `(x, z, d)`: `z/x = d`.
    pub rdivs: Vec<(usize, usize, usize)>,
    pub commutative: bool,
    /// Requires `unit == size - 1`.
    pub integral: bool,
    /// Designated zero; must be the bottom.
    pub zero: Option<usize>,
}

impl CompletionProblem {
    pub fn new(size: usize, unit: usize) -> Self {
        CompletionProblem { size, unit, ..Default::default() }
    }

    fn check(&self) -> Result<()> {
        let m = self.size;
        if m == 0 || m > MAX_SIZE {
            return Err(Error::Format(format!("completion size must be in 1..={MAX_SIZE}")));
        }
        if self.unit >= m {
            return Err(Error::Format("unit out of range".into()));
        }
        if self.integral && self.unit != m - 1 {
            return Err(Error::Format("integral problems need the unit on top".into()));
        }
        if self.zero.is_some_and(|z| z != 0) {
            return Err(Error::Format("the zero of a bounded chain is its bottom".into()));
        }
        let all = self.products.iter().chain(&self.ldivs).chain(&self.rdivs);
        if all.into_iter().any(|&(a, b, c)| a >= m || b >= m || c >= m) {
            return Err(Error::Format("pin out of range".into()));
        }
        Ok(())
    }

    /// Builds the algebra for a completed table (divisions derived).
    pub fn algebra(&self, product: Table, name: &str, labels: Vec<String>) -> FiniteRL {
        FiniteRL::from_parts(AlgebraParts {
            name: name.to_string(),
            labels,
            order: Order::Chain,
            unit: self.unit,
            product,
            ldiv: None,
            rdiv: None,
            zero: self.zero,
        })
        .expect("completions are residuated chains")
    }
}

/// Outcome of a completion run together with the number of search nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub solution: Option<Table>,
    pub nodes: u64,
}

/// First completion in canonical order (fewest candidates first, ties by
/// cell index; values ascending), or `None` when unsatisfiable.
pub fn complete_table(p: &CompletionProblem, budget: u64) -> Result<Completion> {
    let mut found = None;
    let nodes = for_each_completion(p, budget, |t| {
        found = Some(t.clone());
        false
    })?;
    Ok(Completion { solution: found, nodes })
}

/// Number of completions.
pub fn count_completions(p: &CompletionProblem, budget: u64) -> Result<u64> {
    let mut count = 0;
    for_each_completion(p, budget, |_| {
        count += 1;
        true
    })?;
    Ok(count)
}

/// Calls `visit` on every completion in canonical order until it returns
/// `false`. Returns the node count.
pub fn for_each_completion(p: &CompletionProblem, budget: u64, mut visit: impl FnMut(&Table) -> bool) -> Result<u64> {
    p.check()?;
    let mut s = Solver::new(p, budget);
    if s.init() {
        s.dfs(&mut visit)?;
    }
    Ok(s.nodes)
}

struct Solver<'a> {
    p: &'a CompletionProblem,
    m: usize,
    dom: Vec<u64>,
    trail: Vec<(usize, u64)>,
    queue: Vec<usize>,
    queued: Vec<bool>,
    nodes: u64,
    budget: u64,
}

#[inline]
fn single(d: u64) -> Option<usize> {
    (d != 0 && d & (d - 1) == 0).then(|| d.trailing_zeros() as usize)
}

#[inline]
fn at_most(v: usize) -> u64 {
    if v >= 63 {
        u64::MAX
    } else {
        (1u64 << (v + 1)) - 1
    }
}

#[inline]
fn above(v: usize) -> u64 {
    !at_most(v)
}

impl<'a> Solver<'a> {
    fn new(p: &'a CompletionProblem, budget: u64) -> Self {
        let m = p.size;
        let full = at_most(m - 1);
        Solver {
            p,
            m,
            dom: vec![full; m * m],
            trail: vec![],
            queue: vec![],
            queued: vec![false; m * m],
            nodes: 0,
            budget,
        }
    }

    fn restrict(&mut self, cell: usize, mask: u64) -> bool {
        let old = self.dom[cell];
        let new = old & mask;
        if new != old {
            self.trail.push((cell, old));
            self.dom[cell] = new;
            if !self.queued[cell] {
                self.queued[cell] = true;
                self.queue.push(cell);
            }
        }
        new != 0
    }

    fn init(&mut self) -> bool {
        let (m, u) = (self.m, self.p.unit);
        let mut ok = true;
        for y in 0..m {
            ok &= self.restrict(u * m + y, 1 << y);
            ok &= self.restrict(y * m + u, 1 << y);
            ok &= self.restrict(y, 1);
            ok &= self.restrict(y * m, 1);
        }
        for &(x, y, v) in &self.p.products {
            ok &= self.restrict(x * m + y, 1 << v);
        }
        for &(x, z, d) in &self.p.ldivs {
            ok &= self.restrict(x * m + d, at_most(z));
            if d + 1 < m {
                ok &= self.restrict(x * m + d + 1, above(z));
            }
        }
        for &(x, z, d) in &self.p.rdivs {
            ok &= self.restrict(d * m + x, at_most(z));
            if d + 1 < m {
                ok &= self.restrict((d + 1) * m + x, above(z));
            }
        }
        if !ok {
            return false;
        }
        for c in 0..m * m {
            if !self.queued[c] {
                self.queued[c] = true;
                self.queue.push(c);
            }
        }
        self.propagate()
    }

    fn propagate(&mut self) -> bool {
        let m = self.m;
        while let Some(c) = self.queue.pop() {
            self.queued[c] = false;
            let d = self.dom[c];
            if d == 0 {
                return self.fail();
            }
            let (x, y) = (c / m, c % m);
            let lo = d.trailing_zeros() as usize;
            let hi = 63 - d.leading_zeros() as usize;
            let mut ok = true;
            // monotonicity in both arguments
            if x + 1 < m {
                ok &= self.restrict(c + m, !at_most(lo) | (1 << lo));
            }
            if x > 0 {
                ok &= self.restrict(c - m, at_most(hi));
            }
            if y + 1 < m {
                ok &= self.restrict(c + 1, !at_most(lo) | (1 << lo));
            }
            if y > 0 {
                ok &= self.restrict(c - 1, at_most(hi));
            }
            if self.p.commutative {
                ok &= self.restrict(y * m + x, d);
            }
            if !ok {
                return self.fail();
            }
            if let Some(a) = single(d) {
                // (x*y)*z = x*(y*z) with y*z fixed
                for z in 0..m {
                    if let Some(b) = single(self.dom[y * m + z]) {
                        if !self.link(a * m + z, x * m + b) {
                            return self.fail();
                        }
                    }
                }
                // (w*x)*y = w*(x*y) with w*x fixed
                for w in 0..m {
                    if let Some(e) = single(self.dom[w * m + x]) {
                        if !self.link(e * m + y, w * m + a) {
                            return self.fail();
                        }
                    }
                }
            }
        }
        true
    }

    fn link(&mut self, c1: usize, c2: usize) -> bool {
        let both = self.dom[c1] & self.dom[c2];
        self.restrict(c1, both) && self.restrict(c2, both)
    }

    fn fail(&mut self) -> bool {
        for c in self.queue.drain(..) {
            self.queued[c] = false;
        }
        false
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (c, old) = self.trail.pop().unwrap();
            self.dom[c] = old;
        }
    }

    /// Returns `Ok(false)` once the visitor asks to stop.
    fn dfs(&mut self, visit: &mut dyn FnMut(&Table) -> bool) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget { nodes: self.nodes - 1 });
        }
        let mut best: Option<(u32, usize)> = None;
        for (c, &d) in self.dom.iter().enumerate() {
            let k = d.count_ones();
            if k > 1 && best.is_none_or(|(bk, _)| k < bk) {
                best = Some((k, c));
            }
        }
        let Some((_, cell)) = best else {
            let t = Table::from_cells(self.m, self.dom.iter().map(|&d| d.trailing_zeros() as usize).collect());
            if !self.is_solution(&t) {
                return Ok(true);
            }
            return Ok(visit(&t));
        };
        let mut rest = self.dom[cell];
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            let mark = self.trail.len();
            if self.restrict(cell, 1 << v) && self.propagate() && !self.dfs(visit)? {
                self.undo(mark);
                return Ok(false);
            }
            self.undo(mark);
        }
        Ok(true)
    }

    fn is_solution(&self, t: &Table) -> bool {
        let m = self.m;
        (0..m).all(|x| {
            (0..m).all(|y| (0..m).all(|z| t.get(t.get(x, y), z) == t.get(x, t.get(y, z))))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Property;

    #[test]
    fn size_one_is_trivial() {
        let c = complete_table(&CompletionProblem::new(1, 0), DEFAULT_BUDGET).unwrap();
        assert_eq!(c.solution.unwrap().cells(), &[0]);
    }

    #[test]
    fn blanked_cell_of_b_is_restored_by_division_pin() {
        // B = u < b < v < 1 with every product pinned except b*b, and b\u = b
        let rows = [[0, 0, 0, 0], [0, 0, 1, 1], [0, 1, 2, 2], [0, 1, 2, 3]];
        let mut p = CompletionProblem::new(4, 3);
        p.integral = true;
        for x in 0..4 {
            for y in 0..4 {
                if (x, y) != (1, 1) {
                    p.products.push((x, y, rows[x][y]));
                }
            }
        }
        let mut all = vec![];
        for_each_completion(&p, DEFAULT_BUDGET, |t| {
            all.push(t.get(1, 1));
            true
        })
        .unwrap();
        // without the pin, b*b in {u, b} both work
        assert_eq!(all, vec![0, 1]);
        p.ldivs.push((1, 0, 1));
        let c = complete_table(&p, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.solution.unwrap().get(1, 1), 0);
        assert_eq!(count_completions(&p, DEFAULT_BUDGET).unwrap(), 1);
    }

    #[test]
    fn integral_product_cannot_reach_unit() {
        let mut p = CompletionProblem::new(3, 2);
        p.integral = true;
        p.products.push((1, 1, 2));
        assert_eq!(complete_table(&p, DEFAULT_BUDGET).unwrap().solution, None);
    }

    #[test]
    fn budget_is_reported() {
        let mut p = CompletionProblem::new(6, 5);
        p.integral = true;
        assert!(matches!(count_completions(&p, 3), Err(Error::Budget { .. })));
    }

    #[test]
    fn solutions_validate() {
        let p = CompletionProblem::new(4, 2);
        for_each_completion(&p, DEFAULT_BUDGET, |t| {
            let a = p.algebra(t.clone(), "x", (0..4).map(|i| i.to_string()).collect());
            assert!(a.validate(&[Property::Lattice, Property::Monoid, Property::Residuation]).passed());
            true
        })
        .unwrap();
    }
}
