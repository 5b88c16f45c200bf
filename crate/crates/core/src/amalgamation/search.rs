//! Bounded search for chain amalgams and one-amalgams.
//!
//! A placement fixes the chain `D` up to its operations: the images of `B`
//! and `C` interleaved (agreeing on `A`), plus fresh elements dropped into
//! the gaps. Each placement becomes a table-completion problem whose pins
//! make `h` and `k` preserve products and both divisions; lattice operations
//! are preserved automatically by strictly monotone maps between chains.
//!
//! Placements come in two phases. The first keeps the images of `B ∖ i(A)`
//! and `C ∖ j(A)` disjoint, so carriers start at `|B| + |C| - |A|`. The second
//! (on by default) lets an element of `B ∖ i(A)` and one of `C ∖ j(A)` share an
//! image, which is needed for amalgams smaller than that.

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{dedupe_labels, FiniteRL};
use crate::doc::to_value;
use crate::enumeration::{complete_table, CompletionProblem, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::filters::{congruence_filters, quotient};
use crate::morphism::{MorphKind, Morphism};

use super::VFormation;

/// Class of the amalgam `D` beyond being a chain.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    pub commutative: bool,
    pub integral: bool,
    /// `D` is 0-bounded and `h`, `k` preserve 0. Switched on automatically
    /// when both `B` and `C` carry a zero.
    pub pointed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_size: usize,
    pub flags: ClassFlags,
    /// Allow the second placement phase.
    pub identify: bool,
    pub budget: u64,
}

impl SearchOptions {
    pub fn new(max_size: usize) -> Self {
        SearchOptions { max_size, flags: ClassFlags::default(), identify: true, budget: DEFAULT_BUDGET }
    }

    pub fn with_flags(mut self, flags: ClassFlags) -> Self {
        self.flags = flags;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Amalgam,
    OneAmalgam,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Found {
        d: FiniteRL,
        h: Morphism,
        k: Morphism,
        /// Kernel filter of `h` (one-amalgam mode).
        filter: Option<Vec<usize>>,
    },
    Unsat {
        bound: usize,
    },
}

/// Work done at one carrier size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SizeStats {
    pub size: usize,
    /// Second-phase placements (some images shared).
    pub identified: bool,
    pub placements: u64,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub mode: SearchMode,
    pub flags: ClassFlags,
    pub verdict: Verdict,
    pub sizes: Vec<SizeStats>,
    pub wall_ms: u128,
}

impl SearchReport {
    pub fn found(&self) -> bool {
        matches!(self.verdict, Verdict::Found { .. })
    }

    pub fn nodes(&self) -> u64 {
        self.sizes.iter().map(|s| s.nodes).sum()
    }

    /// Sizes at which at least one placement was tried.
    pub fn sizes_tried(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.sizes.iter().filter(|s| s.placements > 0).map(|s| s.size).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn to_json(&self) -> Value {
        let morph = |m: &Morphism| {
            json!({
                "map": m.map,
                "kind": match m.kind { MorphKind::Hom => "hom", MorphKind::Embedding => "embedding" },
            })
        };
        let verdict = match &self.verdict {
            Verdict::Found { d, h, k, filter } => json!({
                "result": "FOUND",
                "D": to_value(d),
                "h": morph(h),
                "k": morph(k),
                "filter": filter,
            }),
            Verdict::Unsat { bound } => json!({ "result": "UNSAT", "bound": bound }),
        };
        json!({
            "mode": self.mode,
            "flags": self.flags,
            "verdict": verdict,
            "sizes": self.sizes,
            "nodes": self.nodes(),
            "wall_ms": self.wall_ms as u64,
        })
    }
}

/// One position of the merged core chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Entry {
    b: Option<usize>,
    c: Option<usize>,
}

fn chain_order(alg: &FiniteRL) -> Vec<usize> {
    let mut v: Vec<usize> = alg.elements().collect();
    v.sort_by(|&x, &y| {
        if x == y {
            std::cmp::Ordering::Equal
        } else if alg.leq(x, y) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    v
}

/// All interleavings of the chains `B` and `C` agreeing on the anchors. At
/// each step the options are tried in the order: next element of `B` alone,
/// next element of `C` alone, both identified, shared anchor.
fn cores(vf: &VFormation, identify: bool) -> Vec<Vec<Entry>> {
    let ob = chain_order(&vf.b);
    let oc = chain_order(&vf.c);
    let mut anchor_b = vec![None; vf.b.size()];
    let mut anchor_c = vec![None; vf.c.size()];
    for a in vf.a.elements() {
        anchor_b[vf.i.map[a]] = Some(a);
        anchor_c[vf.j.map[a]] = Some(a);
    }
    let mut out = vec![];
    let mut cur = vec![];
    fn go(
        p: usize,
        q: usize,
        ob: &[usize],
        oc: &[usize],
        ab: &[Option<usize>],
        ac: &[Option<usize>],
        identify: bool,
        cur: &mut Vec<Entry>,
        out: &mut Vec<Vec<Entry>>,
    ) {
        if p == ob.len() && q == oc.len() {
            out.push(cur.clone());
            return;
        }
        let nb = ob.get(p).copied();
        let nc = oc.get(q).copied();
        let free_b = nb.filter(|&x| ab[x].is_none());
        let free_c = nc.filter(|&y| ac[y].is_none());
        let mut step = |e: Entry, dp: usize, dq: usize, cur: &mut Vec<Entry>| {
            cur.push(e);
            go(p + dp, q + dq, ob, oc, ab, ac, identify, cur, out);
            cur.pop();
        };
        if let Some(x) = free_b {
            step(Entry { b: Some(x), c: None }, 1, 0, cur);
        }
        if let Some(y) = free_c {
            step(Entry { b: None, c: Some(y) }, 0, 1, cur);
        }
        if let (Some(x), Some(y), true) = (free_b, free_c, identify) {
            step(Entry { b: Some(x), c: Some(y) }, 1, 1, cur);
        }
        if let (Some(x), Some(y)) = (nb, nc) {
            if ab[x].is_some() && ab[x] == ac[y] {
                step(Entry { b: Some(x), c: Some(y) }, 1, 1, cur);
            }
        }
    }
    go(0, 0, &ob, &oc, &anchor_b, &anchor_c, identify, &mut cur, &mut out);
    out
}

fn is_identified(core: &[Entry], vf: &VFormation) -> bool {
    core.iter().any(|e| matches!((e.b, e.c), (Some(x), Some(_)) if !vf.i.map.contains(&x)))
}

/// Nondecreasing sequences of length `k` over `0..=top`, lexicographically.
fn gap_multisets(k: usize, top: usize, allowed: &dyn Fn(usize) -> bool) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn go(k: usize, from: usize, top: usize, allowed: &dyn Fn(usize) -> bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for g in from..=top {
            if allowed(g) {
                cur.push(g);
                go(k, g, top, allowed, cur, out);
                cur.pop();
            }
        }
    }
    go(k, 0, top, allowed, &mut cur, &mut out);
    out
}

struct Placement {
    size: usize,
    hb: Vec<usize>,
    kc: Vec<usize>,
    labels: Vec<String>,
}

fn place(vf: &VFormation, core: &[Entry], gaps: &[usize]) -> Placement {
    let mut hb = vec![0; vf.b.size()];
    let mut kc = vec![0; vf.c.size()];
    let mut labels = vec![];
    let mut fresh = 0;
    let mut slot = 0;
    for g in 0..=core.len() {
        for _ in gaps.iter().filter(|&&x| x == g) {
            fresh += 1;
            labels.push(format!("e{fresh}"));
            slot += 1;
        }
        if let Some(e) = core.get(g) {
            if let Some(x) = e.b {
                hb[x] = slot;
            }
            if let Some(y) = e.c {
                kc[y] = slot;
            }
            labels.push(match (e.b, e.c) {
                (Some(x), _) => vf.b.label(x).to_string(),
                (None, Some(y)) => vf.c.label(y).to_string(),
                (None, None) => unreachable!(),
            });
            slot += 1;
        }
    }
    Placement { size: slot, hb, kc, labels: dedupe_labels(labels) }
}

fn pins(p: &mut CompletionProblem, alg: &FiniteRL, f: &[usize]) {
    for x in alg.elements() {
        for y in alg.elements() {
            p.products.push((f[x], f[y], f[alg.mul(x, y)]));
            p.ldivs.push((f[x], f[y], f[alg.under(x, y)]));
            // y/x
            p.rdivs.push((f[x], f[y], f[alg.over(y, x)]));
        }
    }
}

fn problem(vf: &VFormation, pl: &Placement, flags: &ClassFlags) -> Option<CompletionProblem> {
    let m = pl.size;
    let unit = pl.hb[vf.b.unit()];
    if pl.kc[vf.c.unit()] != unit || (flags.integral && unit != m - 1) {
        return None;
    }
    if flags.pointed {
        let zb = vf.b.zero().map(|z| pl.hb[z]);
        let zc = vf.c.zero().map(|z| pl.kc[z]);
        if zb.is_some_and(|z| z != 0) || zc.is_some_and(|z| z != 0) {
            return None;
        }
    }
    let mut p = CompletionProblem::new(m, unit);
    p.commutative = flags.commutative;
    p.integral = flags.integral;
    p.zero = flags.pointed.then_some(0);
    pins(&mut p, &vf.b, &pl.hb);
    pins(&mut p, &vf.c, &pl.kc);
    Some(p)
}

fn effective_flags(vf: &VFormation, flags: ClassFlags) -> ClassFlags {
    ClassFlags { pointed: flags.pointed || (vf.b.zero().is_some() && vf.c.zero().is_some()), ..flags }
}

fn require_chains(vf: &VFormation) -> Result<()> {
    if [&vf.a, &vf.b, &vf.c].iter().any(|x| !x.is_chain()) {
        return Err(Error::Unsupported("amalgam search needs A, B, C to be chains".into()));
    }
    for (name, m, cod) in [("i", &vf.i, &vf.b), ("j", &vf.j, &vf.c)] {
        let mut m = m.clone();
        m.kind = MorphKind::Embedding;
        if let Some(msg) = m.violation(&vf.a, cod) {
            return Err(Error::Precondition(format!("{name} is not an embedding: {msg}")));
        }
    }
    Ok(())
}

/// Runs both placement phases. Budget errors report the nodes spent so far.
fn search(vf: &VFormation, opts: &SearchOptions, flags: &ClassFlags, spent: &mut u64, sizes: &mut Vec<SizeStats>) -> Result<Option<(FiniteRL, Morphism, Morphism)>> {
    let all = cores(vf, opts.identify);
    let phases: Vec<(bool, Vec<&Vec<Entry>>)> = [false, true]
        .into_iter()
        .filter(|&id| !id || opts.identify)
        .map(|id| (id, all.iter().filter(|c| is_identified(c, vf) == id).collect()))
        .collect();
    for (identified, cores) in phases {
        let Some(min) = cores.iter().map(|c| c.len()).min() else {
            continue;
        };
        for m in min..=opts.max_size {
            let mut stats = SizeStats { size: m, identified, placements: 0, nodes: 0 };
            for core in &cores {
                if core.len() > m {
                    continue;
                }
                let unit_pos = core.iter().position(|e| e.b == Some(vf.b.unit())).expect("unit is an anchor");
                let allowed = |g: usize| !(flags.integral && g > unit_pos) && !(flags.pointed && g == 0);
                for gaps in gap_multisets(m - core.len(), core.len(), &allowed) {
                    let pl = place(vf, core, &gaps);
                    let Some(p) = problem(vf, &pl, flags) else {
                        continue;
                    };
                    stats.placements += 1;
                    let remaining = opts.budget.saturating_sub(*spent);
                    let res = complete_table(&p, remaining);
                    let done = match res {
                        Ok(c) => c,
                        Err(Error::Budget { nodes }) => {
                            stats.nodes += nodes;
                            sizes.push(stats);
                            return Err(Error::Budget { nodes: *spent + nodes });
                        }
                        Err(e) => return Err(e),
                    };
                    *spent += done.nodes;
                    stats.nodes += done.nodes;
                    if let Some(t) = done.solution {
                        sizes.push(stats);
                        let d = p.algebra(t, "D", pl.labels);
                        return Ok(Some((d, Morphism::new(pl.hb, MorphKind::Embedding), Morphism::new(pl.kc, MorphKind::Embedding))));
                    }
                }
            }
            sizes.push(stats);
        }
    }
    Ok(None)
}

/// Searches chains `D` of size at most `opts.max_size` with embeddings
/// `h: B -> D`, `k: C -> D` such that `h∘i = k∘j`. `FOUND` is the first
/// completion in canonical order (phase, size, core, gaps, table).
pub fn bounded_amalgam_search(vf: &VFormation, opts: &SearchOptions) -> Result<SearchReport> {
    let start = Instant::now();
    require_chains(vf)?;
    let flags = effective_flags(vf, opts.flags);
    let mut sizes = vec![];
    let mut spent = 0;
    let found = search(vf, opts, &flags, &mut spent, &mut sizes)?;
    let verdict = match found {
        Some((d, h, k)) => Verdict::Found { d, h, k, filter: None },
        None => Verdict::Unsat { bound: opts.max_size },
    };
    Ok(SearchReport { mode: SearchMode::Amalgam, flags, verdict, sizes, wall_ms: start.elapsed().as_millis() })
}

/// Like [`bounded_amalgam_search`] but `h` need only be a homomorphism: for
/// each congruence filter `F` of `B` (smallest first) on whose quotient `i`
/// stays injective, searches amalgams of `(A, B/F, C)` and returns
/// `h = e∘q` for the quotient map `q`.
pub fn bounded_one_amalgam_search(vf: &VFormation, opts: &SearchOptions) -> Result<SearchReport> {
    let start = Instant::now();
    require_chains(vf)?;
    let flags = effective_flags(vf, opts.flags);
    let mut sizes = vec![];
    let mut spent = 0;
    let mut verdict = Verdict::Unsat { bound: opts.max_size };
    for f in congruence_filters(&vf.b) {
        let (bq, q) = quotient(&vf.b, &f);
        let iq: Vec<usize> = vf.i.map.iter().map(|&x| q[x]).collect();
        let injective = (0..iq.len()).all(|x| (0..x).all(|y| iq[x] != iq[y]));
        if !injective {
            continue;
        }
        let sub = VFormation {
            a: vf.a.clone(),
            b: bq,
            c: vf.c.clone(),
            i: Morphism::new(iq, MorphKind::Embedding),
            j: vf.j.clone(),
        };
        if let Some((d, e, k)) = search(&sub, opts, &flags, &mut spent, &mut sizes)? {
            let h = Morphism::new(q.iter().map(|&x| e.map[x]).collect(), MorphKind::Hom);
            verdict = Verdict::Found { d, h, k, filter: Some(f.members.clone()) };
            break;
        }
    }
    Ok(SearchReport { mode: SearchMode::OneAmalgam, flags, verdict, sizes, wall_ms: start.elapsed().as_millis() })
}

#[cfg(test)]
pub(super) fn placement_count(vf: &VFormation, identify: bool) -> usize {
    cores(vf, identify).len()
}
