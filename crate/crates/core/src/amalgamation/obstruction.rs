//! Finite certificates that a V-formation of chains has no chain amalgam.
//!
//! Given `b ∈ B ∖ i(A)` and `c ∈ C ∖ j(A)`:
//! - W1: `i(a)·b = b` and `j(a)·c = c` disagree (for the chosen product side),
//!   so `h(b) ≠ k(c)` in any amalgam;
//! - W2: `c·c ≤ j(u1)` and `b\i(u1) ≤ b`, which refutes `h(b) < k(c)`;
//! - W3: `b·b ≤ i(u2)` and `c\j(u2) ≤ c`, which refutes `k(c) < h(b)`.
//!
//! Only order preservation and residuation in the amalgam are used.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::filters::congruence_filters;

use super::VFormation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Side {
    /// `i(a)·b` against `j(a)·c`
    Left,
    /// `b·i(a)` against `c·j(a)`
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ObstructionWitness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub u1: usize,
    pub u2: usize,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObstructionOutcome {
    /// Human-readable refutation, one step per line.
    Trace(Vec<String>),
    Reject { clause: String, detail: String },
}

impl ObstructionOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, ObstructionOutcome::Trace(_))
    }
}

fn acts_trivially(vf: &VFormation, w: &ObstructionWitness) -> (bool, bool) {
    let (ia, ja) = (vf.i.map[w.a], vf.j.map[w.a]);
    match w.side {
        Side::Left => (vf.b.mul(ia, w.b) == w.b, vf.c.mul(ja, w.c) == w.c),
        Side::Right => (vf.b.mul(w.b, ia) == w.b, vf.c.mul(w.c, ja) == w.c),
    }
}

fn w2(vf: &VFormation, b: usize, c: usize, u1: usize) -> bool {
    let (b_, c_) = (&vf.b, &vf.c);
    c_.leq(c_.mul(c, c), vf.j.map[u1]) && b_.leq(b_.under(b, vf.i.map[u1]), b)
}

fn w3(vf: &VFormation, b: usize, c: usize, u2: usize) -> bool {
    let (b_, c_) = (&vf.b, &vf.c);
    b_.leq(b_.mul(b, b), vf.i.map[u2]) && c_.leq(c_.under(c, vf.j.map[u2]), c)
}

/// Lexicographically least witness over `(a, b, c, u1, u2, side)`, if any.
pub fn find_obstruction(vf: &VFormation) -> Result<Option<ObstructionWitness>> {
    if !vf.b.is_chain() || !vf.c.is_chain() {
        return Err(Error::Unsupported("obstruction search needs B and C to be chains".into()));
    }
    let na = vf.a.size();
    for a in 0..na {
        for b in vf.b.elements().filter(|x| !vf.i.map.contains(x)) {
            for c in vf.c.elements().filter(|x| !vf.j.map.contains(x)) {
                let sides: Vec<Side> = [Side::Left, Side::Right]
                    .into_iter()
                    .filter(|&side| {
                        let (p, q) = acts_trivially(vf, &ObstructionWitness { a, b, c, u1: 0, u2: 0, side });
                        p != q
                    })
                    .collect();
                if sides.is_empty() {
                    continue;
                }
                for u1 in (0..na).filter(|&u| w2(vf, b, c, u)) {
                    if let Some(u2) = (0..na).find(|&u| w3(vf, b, c, u)) {
                        return Ok(Some(ObstructionWitness { a, b, c, u1, u2, side: sides[0] }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Re-evaluates W1–W3 and renders the refutation, or names the first
/// failing clause.
pub fn check_obstruction(vf: &VFormation, w: &ObstructionWitness) -> Result<ObstructionOutcome> {
    let (a_, b_, c_) = (&vf.a, &vf.b, &vf.c);
    if w.a >= a_.size() || w.u1 >= a_.size() || w.u2 >= a_.size() || w.b >= b_.size() || w.c >= c_.size() {
        return Err(Error::Format("witness index out of range".into()));
    }
    if vf.i.map.len() != a_.size() || vf.j.map.len() != a_.size() {
        return Err(Error::Format("embedding maps have the wrong length".into()));
    }
    let reject = |clause: &str, detail: String| Ok(ObstructionOutcome::Reject { clause: clause.into(), detail });
    let (lb, lc) = (|x: usize| b_.label(x).to_string(), |x: usize| c_.label(x).to_string());
    if let Some(x) = a_.elements().find(|&x| vf.i.map[x] == w.b) {
        return reject("W1 domain", format!("{} = i({}) lies in i(A)", lb(w.b), a_.label(x)));
    }
    if let Some(x) = a_.elements().find(|&x| vf.j.map[x] == w.c) {
        return reject("W1 domain", format!("{} = j({}) lies in j(A)", lc(w.c), a_.label(x)));
    }

    let (ia, ja) = (vf.i.map[w.a], vf.j.map[w.a]);
    let (pb, pc, sb, sc) = match w.side {
        Side::Left => (b_.mul(ia, w.b), c_.mul(ja, w.c), format!("{}·{}", lb(ia), lb(w.b)), format!("{}·{}", lc(ja), lc(w.c))),
        Side::Right => (b_.mul(w.b, ia), c_.mul(w.c, ja), format!("{}·{}", lb(w.b), lb(ia)), format!("{}·{}", lc(w.c), lc(ja))),
    };
    let fact = |lhs: &str, val: String, x: String| if val == x { format!("{lhs} = {x}") } else { format!("{lhs} = {val} ≠ {x}") };
    let w1 = format!("{} in B, {} in C", fact(&sb, lb(pb), lb(w.b)), fact(&sc, lc(pc), lc(w.c)));
    if (pb == w.b) == (pc == w.c) {
        return reject("W1", w1);
    }

    let (iu1, ju1, iu2, ju2) = (vf.i.map[w.u1], vf.j.map[w.u1], vf.i.map[w.u2], vf.j.map[w.u2]);
    let cc = c_.mul(w.c, w.c);
    let b_u1 = b_.under(w.b, iu1);
    if !c_.leq(cc, ju1) {
        return reject("W2", format!("{0}·{0} = {1} ≰ {2}", lc(w.c), lc(cc), lc(ju1)));
    }
    if !b_.leq(b_u1, w.b) {
        return reject("W2", format!("{0}\\{1} = {2} ≰ {0}", lb(w.b), lb(iu1), lb(b_u1)));
    }
    let bb = b_.mul(w.b, w.b);
    let c_u2 = c_.under(w.c, ju2);
    if !b_.leq(bb, iu2) {
        return reject("W3", format!("{0}·{0} = {1} ≰ {2}", lb(w.b), lb(bb), lb(iu2)));
    }
    if !c_.leq(c_u2, w.c) {
        return reject("W3", format!("{0}\\{1} = {2} ≰ {0}", lc(w.c), lc(ju2), lc(c_u2)));
    }

    let (b, c, u1, u2) = (lb(w.b), lc(w.c), a_.label(w.u1), a_.label(w.u2));
    let a = a_.label(w.a);
    Ok(ObstructionOutcome::Trace(vec![
        format!("Let (D, h, k) be an amalgam in chains; write u1 = {u1}, u2 = {u2}, a = {a}."),
        format!(
            "(i) {w1}. Since h(i(a)) = k(j(a)) and h, k are injective, h({b}) ≠ k({c}); D is a chain, so h({b}) < k({c}) or k({c}) < h({b})."
        ),
        format!(
            "(ii) Suppose h({b}) < k({c}). Then h({b})·k({c}) ≤ k({c})·k({c}) = k({c}·{c}) ≤ k(j(u1)) = h(i(u1)); by residuation k({c}) ≤ h({b})\\h(i(u1)) = h({b}\\{}) ≤ h({b}), contradicting h({b}) < k({c}).",
            lb(iu1)
        ),
        format!(
            "(iii) Suppose k({c}) < h({b}). Then k({c})·h({b}) ≤ h({b})·h({b}) = h({b}·{b}) ≤ h(i(u2)) = k(j(u2)); by residuation h({b}) ≤ k({c})\\k(j(u2)) = k({c}\\{}) ≤ k({c}), contradicting k({c}) < h({b}).",
            lc(ju2)
        ),
        "Both orderings are impossible, so no amalgam of the formation exists in the class of chains, of any size.".into(),
    ]))
}

/// Elements `a ≠ 1` of `A` such that every nontrivial congruence filter of `B`
/// contains `i(a)`. Any homomorphism out of `B` that is injective on `i(A)`
/// then has trivial kernel filter.
pub fn injectivity_reduction(vf: &VFormation) -> Vec<usize> {
    let filters = congruence_filters(&vf.b);
    let nontrivial: Vec<_> = filters.iter().filter(|f| !f.is_trivial(&vf.b)).collect();
    vf.a
        .elements()
        .filter(|&a| a != vf.a.unit())
        .filter(|&a| nontrivial.iter().all(|f| f.contains(vf.i.map[a])))
        .collect()
}
