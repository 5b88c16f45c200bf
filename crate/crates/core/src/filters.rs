//! Congruence filters, the congruences they induce, and quotients.
//!
//! A congruence filter contains 1, is upward closed and closed under `·`, `∧`
//! and the conjugates `y\xy`, `yx/y`. For integral algebras the meet clause is
//! implied by the others. The filter of a congruence θ is the upset of the
//! θ-block of 1.

use std::collections::{BTreeSet, VecDeque};

use crate::algebra::{AlgebraParts, FiniteRL, Order};
use crate::error::{Error, Result};
use crate::table::Table;

/// A congruence filter, stored as a sorted member list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CongruenceFilter {
    pub members: Vec<usize>,
}

impl CongruenceFilter {
    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// True for the filter `{1}`.
    pub fn is_trivial(&self, alg: &FiniteRL) -> bool {
        self.members == [alg.unit()]
    }
}

/// Blocks of an equivalence relation, each sorted, blocks ordered by least member.
pub type Partition = Vec<Vec<usize>>;

/// Smallest congruence filter containing `seed`.
pub fn generated_filter(alg: &FiniteRL, seed: impl IntoIterator<Item = usize>) -> CongruenceFilter {
    let n = alg.size();
    let mut inn = vec![false; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    let add = |x: usize, inn: &mut Vec<bool>, queue: &mut VecDeque<usize>| {
        if !inn[x] {
            inn[x] = true;
            queue.push_back(x);
        }
    };
    add(alg.unit(), &mut inn, &mut queue);
    for x in seed {
        add(x, &mut inn, &mut queue);
    }
    while let Some(x) = queue.pop_front() {
        for y in 0..n {
            if alg.leq(x, y) {
                add(y, &mut inn, &mut queue);
            }
            // conjugates of x by every y
            add(alg.under(y, alg.mul(x, y)), &mut inn, &mut queue);
            add(alg.over(alg.mul(y, x), y), &mut inn, &mut queue);
            if inn[y] {
                add(alg.mul(x, y), &mut inn, &mut queue);
                add(alg.mul(y, x), &mut inn, &mut queue);
                add(alg.meet(x, y), &mut inn, &mut queue);
            }
        }
    }
    CongruenceFilter { members: (0..n).filter(|&x| inn[x]).collect() }
}

/// All congruence filters, sorted by size and then lexicographically.
///
/// Generated breadth-first: every filter is reached from `{1}` by repeatedly
/// adjoining one element and closing.
pub fn congruence_filters(alg: &FiniteRL) -> Vec<CongruenceFilter> {
    let start = generated_filter(alg, []);
    let mut seen: BTreeSet<CongruenceFilter> = BTreeSet::new();
    let mut queue = VecDeque::from([start.clone()]);
    seen.insert(start);
    while let Some(f) = queue.pop_front() {
        for x in alg.elements().filter(|&x| !f.contains(x)) {
            let g = generated_filter(alg, f.members.iter().copied().chain([x]));
            if seen.insert(g.clone()) {
                queue.push_back(g);
            }
        }
    }
    let mut out: Vec<CongruenceFilter> = seen.into_iter().collect();
    out.sort_by(|a, b| (a.len(), &a.members).cmp(&(b.len(), &b.members)));
    out
}

/// Checks the filter conditions directly; used to validate user input.
pub fn is_congruence_filter(alg: &FiniteRL, members: &[usize]) -> bool {
    let n = alg.size();
    let mut inn = vec![false; n];
    for &x in members {
        if x >= n {
            return false;
        }
        inn[x] = true;
    }
    if !inn[alg.unit()] {
        return false;
    }
    for x in (0..n).filter(|&x| inn[x]) {
        for y in 0..n {
            let bad = (alg.leq(x, y) && !inn[y])
                || !inn[alg.under(y, alg.mul(x, y))]
                || !inn[alg.over(alg.mul(y, x), y)]
                || (inn[y] && (!inn[alg.mul(x, y)] || !inn[alg.meet(x, y)]));
            if bad {
                return false;
            }
        }
    }
    true
}

/// θ_F: `x θ y` iff `x\y ∧ y\x ∈ F`.
pub fn filter_to_congruence(alg: &FiniteRL, f: &CongruenceFilter) -> Partition {
    let n = alg.size();
    let related = |x: usize, y: usize| f.contains(alg.meet(alg.under(x, y), alg.under(y, x)));
    let mut block_of = vec![usize::MAX; n];
    let mut blocks: Partition = vec![];
    for x in 0..n {
        if block_of[x] != usize::MAX {
            continue;
        }
        let b: Vec<usize> = (x..n).filter(|&y| block_of[y] == usize::MAX && related(x, y)).collect();
        for &y in &b {
            block_of[y] = blocks.len();
        }
        blocks.push(b);
    }
    blocks
}

/// F_θ: the upset of the block of 1. Fails unless `partition` is a partition
/// of the carrier compatible with every operation.
pub fn congruence_to_filter(alg: &FiniteRL, partition: &[Vec<usize>]) -> Result<CongruenceFilter> {
    let block_of = block_index(alg, partition)?;
    let n = alg.size();
    let ops: [(&str, &dyn Fn(usize, usize) -> usize); 5] = [
        ("product", &|x, y| alg.mul(x, y)),
        ("meet", &|x, y| alg.meet(x, y)),
        ("join", &|x, y| alg.join(x, y)),
        ("left division", &|x, y| alg.under(x, y)),
        ("right division", &|x, y| alg.over(x, y)),
    ];
    for (name, op) in ops {
        for x in 0..n {
            for x2 in (0..n).filter(|&x2| block_of[x2] == block_of[x]) {
                for y in 0..n {
                    for y2 in (0..n).filter(|&y2| block_of[y2] == block_of[y]) {
                        if block_of[op(x, y)] != block_of[op(x2, y2)] {
                            return Err(Error::NotCongruence(format!(
                                "{name} not compatible: ({x}, {y}) vs ({x2}, {y2})"
                            )));
                        }
                    }
                }
            }
        }
    }
    let one = block_of[alg.unit()];
    let members = (0..n)
        .filter(|&y| (0..n).any(|x| block_of[x] == one && alg.leq(x, y)))
        .collect();
    Ok(CongruenceFilter { members })
}

fn block_index(alg: &FiniteRL, partition: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = alg.size();
    let mut block_of = vec![usize::MAX; n];
    for (i, b) in partition.iter().enumerate() {
        for &x in b {
            if x >= n {
                return Err(Error::NotCongruence(format!("element {x} out of range")));
            }
            if block_of[x] != usize::MAX {
                return Err(Error::NotCongruence(format!("element {x} lies in two blocks")));
            }
            block_of[x] = i;
        }
    }
    if let Some(x) = block_of.iter().position(|&b| b == usize::MAX) {
        return Err(Error::NotCongruence(format!("element {x} lies in no block")));
    }
    Ok(block_of)
}

/// The quotient `alg/θ_F` together with the canonical surjection.
///
/// Each block is represented by its largest element; blocks are ordered by
/// representative index and carry the representative's label.
pub fn quotient(alg: &FiniteRL, f: &CongruenceFilter) -> (FiniteRL, Vec<usize>) {
    let blocks = filter_to_congruence(alg, f);
    let mut reps: Vec<(usize, &Vec<usize>)> = blocks
        .iter()
        .map(|b| (b.iter().fold(b[0], |acc, &x| alg.join(acc, x)), b))
        .collect();
    reps.sort();
    let n = alg.size();
    let mut q = vec![0; n];
    for (i, (_, b)) in reps.iter().enumerate() {
        for &x in b.iter() {
            q[x] = i;
        }
    }
    let k = reps.len();
    let r: Vec<usize> = reps.iter().map(|(r, _)| *r).collect();
    let order = if alg.is_index_chain() {
        Order::Chain
    } else {
        Order::Matrix((0..k).map(|a| (0..k).map(|b| alg.leq(r[a], r[b])).collect()).collect())
    };
    let lift = |op: &dyn Fn(usize, usize) -> usize| Table::from_fn(k, |a, b| q[op(r[a], r[b])]);
    let parts = AlgebraParts {
        name: format!("{}/F", alg.name()),
        labels: r.iter().map(|&x| alg.label(x).to_string()).collect(),
        order,
        unit: q[alg.unit()],
        product: lift(&|x, y| alg.mul(x, y)),
        ldiv: Some(lift(&|x, y| alg.under(x, y))),
        // rdiv is indexed (divisor, numerator)
        rdiv: Some(lift(&|x, z| alg.over(z, x))),
        zero: alg.zero().map(|z| q[z]),
    };
    let d = FiniteRL::from_parts(parts).expect("quotient of a residuated lattice is well formed");
    (d, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Property;

    // B = Ł3 ⊕ 2 with carrier u < b < v < 1
    fn b() -> FiniteRL {
        FiniteRL::chain_from_product(
            "B",
            &["u", "b", "v", "1"],
            3,
            &[vec![0, 0, 0, 0], vec![0, 0, 1, 1], vec![0, 1, 2, 2], vec![0, 1, 2, 3]],
        )
        .unwrap()
    }

    fn l3() -> FiniteRL {
        FiniteRL::chain_from_product("L3", &["0", "a", "1"], 2, &[vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 2]])
            .unwrap()
    }

    /// Exhaustive oracle: every subset that satisfies the conditions.
    fn naive_filters(alg: &FiniteRL) -> Vec<CongruenceFilter> {
        let n = alg.size();
        let mut out: Vec<CongruenceFilter> = (0u32..1 << n)
            .map(|mask| (0..n).filter(|&x| mask >> x & 1 == 1).collect::<Vec<_>>())
            .filter(|m| is_congruence_filter(alg, m))
            .map(|members| CongruenceFilter { members })
            .collect();
        out.sort_by(|a, b| (a.len(), &a.members).cmp(&(b.len(), &b.members)));
        out
    }

    #[test]
    fn filters_of_b() {
        let fs = congruence_filters(&b());
        let m: Vec<Vec<usize>> = fs.iter().map(|f| f.members.clone()).collect();
        assert_eq!(m, vec![vec![3], vec![2, 3], vec![0, 1, 2, 3]]);
        assert_eq!(fs, naive_filters(&b()));
    }

    #[test]
    fn l3_is_simple() {
        let m: Vec<Vec<usize>> = congruence_filters(&l3()).into_iter().map(|f| f.members).collect();
        assert_eq!(m, vec![vec![2], vec![0, 1, 2]]);
    }

    #[test]
    fn congruence_of_v_filter() {
        let alg = b();
        let f = CongruenceFilter { members: vec![2, 3] };
        assert_eq!(filter_to_congruence(&alg, &f), vec![vec![0], vec![1], vec![2, 3]]);
        assert_eq!(congruence_to_filter(&alg, &filter_to_congruence(&alg, &f)).unwrap(), f);
        let all = CongruenceFilter { members: vec![0, 1, 2, 3] };
        assert_eq!(filter_to_congruence(&alg, &all), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn non_congruence_rejected() {
        // collapsing b with v breaks the product: b*b = u but v*v = v
        let err = congruence_to_filter(&b(), &[vec![0], vec![1, 2], vec![3]]).unwrap_err();
        assert!(matches!(err, Error::NotCongruence(_)));
        assert!(congruence_to_filter(&b(), &[vec![0], vec![1]]).is_err());
    }

    #[test]
    fn quotient_by_v_filter_is_l3() {
        let (q, map) = quotient(&b(), &CongruenceFilter { members: vec![2, 3] });
        assert!(q.tables_eq(&l3()));
        assert_eq!(map, vec![0, 1, 2, 2]);
        assert!(q.validate(&Property::ALL[..6]).passed());
        let (q, _) = quotient(&b(), &CongruenceFilter { members: vec![0, 1, 2, 3] });
        assert_eq!(q.size(), 1);
        let (q, _) = quotient(&b(), &CongruenceFilter { members: vec![3] });
        assert!(q.tables_eq(&b()));
    }

    #[test]
    fn trivial_algebra_has_one_filter() {
        let t = FiniteRL::chain_from_product("1", &["1"], 0, &[vec![0]]).unwrap();
        assert_eq!(congruence_filters(&t), vec![CongruenceFilter { members: vec![0] }]);
    }
}
