//! Commutation equivalence `≡`: adjacent points with disjoint slot intervals
//! may be swapped. This is a trace monoid with independence = disjointness,
//! so each class has a unique lexicographically least word, which serves as
//! its canonical representative.

use std::collections::{BTreeSet, VecDeque};
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, LefschetzPair};
use crate::error::{Error, Result};

/// True iff the slot intervals of `p` and `q` do not meet.
#[inline]
pub fn disjoint(p: LefschetzPair, q: LefschetzPair) -> bool {
    p.is_disjoint(q)
}

/// A diagram that is the lexicographically least member of its `≡`-class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalDiagram(Diagram);

impl CanonicalDiagram {
    pub fn new(d: &Diagram) -> Self {
        canonical_form(d)
    }

    /// Wraps a diagram already known to be canonical.
    pub(crate) fn from_canonical_unchecked(d: Diagram) -> Self {
        debug_assert!(is_lex_normal(d.pairs()));
        CanonicalDiagram(d)
    }

    pub fn as_diagram(&self) -> &Diagram {
        &self.0
    }

    pub fn into_diagram(self) -> Diagram {
        self.0
    }
}

impl Deref for CanonicalDiagram {
    type Target = Diagram;

    fn deref(&self) -> &Diagram {
        &self.0
    }
}

impl std::fmt::Display for CanonicalDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Edges `i < j` between positions whose pairs are not disjoint.
#[derive(Clone, Debug)]
pub struct DependenceGraph {
    /// `preds[j]` lists the `i < j` that `j` depends on.
    preds: Vec<Vec<usize>>,
}

impl DependenceGraph {
    pub fn new(pairs: &[LefschetzPair]) -> Self {
        let preds = (0..pairs.len())
            .map(|j| (0..j).filter(|&i| !disjoint(pairs[i], pairs[j])).collect())
            .collect();
        DependenceGraph { preds }
    }

    pub fn len(&self) -> usize {
        self.preds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.preds.is_empty()
    }

    pub fn predecessors(&self, j: usize) -> &[usize] {
        &self.preds[j]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        self.preds[j].contains(&i)
    }

    /// All `(i, j)` edges with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.preds
            .iter()
            .enumerate()
            .flat_map(|(j, ps)| ps.iter().map(move |&i| (i, j)))
    }
}

/// Reusable scratch space for canonicalisation in hot loops.
#[derive(Debug, Default)]
pub struct Canonicalizer {
    indeg: Vec<u32>,
    done: Vec<bool>,
}

impl Canonicalizer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Writes the lexicographically least word `≡ pairs` into `out`: at each
    /// step emit the smallest pair that no remaining earlier pair blocks.
    pub fn canonicalize_into(&mut self, pairs: &[LefschetzPair], out: &mut Vec<LefschetzPair>) {
        let n = pairs.len();
        out.clear();
        self.indeg.clear();
        self.done.clear();
        self.done.resize(n, false);
        for j in 0..n {
            let blocked = (0..j).filter(|&i| !disjoint(pairs[i], pairs[j])).count();
            self.indeg.push(blocked as u32);
        }
        for _ in 0..n {
            let mut best: Option<usize> = None;
            for j in 0..n {
                if !self.done[j] && self.indeg[j] == 0 && best.is_none_or(|b| pairs[j] < pairs[b]) {
                    best = Some(j);
                }
            }
            let b = best.expect("a dependence order always has a minimal element");
            self.done[b] = true;
            out.push(pairs[b]);
            for j in b + 1..n {
                if !self.done[j] && !disjoint(pairs[b], pairs[j]) {
                    self.indeg[j] -= 1;
                }
            }
        }
    }

    pub fn canonicalize(&mut self, pairs: &[LefschetzPair]) -> Vec<LefschetzPair> {
        let mut out = Vec::with_capacity(pairs.len());
        self.canonicalize_into(pairs, &mut out);
        out
    }
}

/// The lexicographically least member of the `≡`-class of `d`.
pub fn canonical_form(d: &Diagram) -> CanonicalDiagram {
    let pairs = Canonicalizer::new().canonicalize(d.pairs());
    CanonicalDiagram(Diagram::from_parts_unchecked(d.ell(), pairs))
}

/// True iff `a ≡ b`.
pub fn equivalent(a: &Diagram, b: &Diagram) -> bool {
    a.ell() == b.ell() && a.len() == b.len() && canonical_form(a) == canonical_form(b)
}

/// A word is lexicographically least in its class iff it has no factor
/// `q·u·p` with `p < q` and `p` disjoint from `q` and from every letter of
/// `u`. Checked for each letter by scanning back across the letters it
/// commutes with.
pub fn is_lex_normal(pairs: &[LefschetzPair]) -> bool {
    (0..pairs.len()).all(|k| extends_lex_normal(&pairs[..k], pairs[k]))
}

/// Assuming `prefix` is lex-normal, whether `prefix·next` is.
#[inline]
pub fn extends_lex_normal(prefix: &[LefschetzPair], next: LefschetzPair) -> bool {
    for &q in prefix.iter().rev() {
        if !disjoint(q, next) {
            return true;
        }
        if next < q {
            return false;
        }
    }
    true
}

/// Positions (0-based) whose pair can be commuted to the front: those
/// disjoint from every earlier pair.
pub fn minimal_front_positions(d: &Diagram) -> Vec<usize> {
    front_positions(d.pairs())
}

pub(crate) fn front_positions(pairs: &[LefschetzPair]) -> Vec<usize> {
    (0..pairs.len())
        .filter(|&i| pairs[..i].iter().all(|&q| disjoint(q, pairs[i])))
        .collect()
}

/// Moves the pair at `pos` to the front. The caller guarantees `pos` is a
/// minimal front position, so the result is `≡` to the input.
pub(crate) fn bring_to_front(pairs: &[LefschetzPair], pos: usize) -> Vec<LefschetzPair> {
    let mut out = Vec::with_capacity(pairs.len());
    out.push(pairs[pos]);
    out.extend(pairs[..pos].iter().copied());
    out.extend(pairs[pos + 1..].iter().copied());
    out
}

/// Whether some `d′ ≡ d` has the pieces at `positions` (0-based, strictly
/// increasing) adjacent and in the given order. This holds iff no piece
/// outside the selection lies between two selected pieces in the
/// dependence order.
pub fn can_extract_contiguous(d: &Diagram, positions: &[usize]) -> bool {
    extraction_order(d.pairs(), positions).is_some()
}

/// If the selection is extractable, returns a reordering of all positions
/// that is a linear extension of the dependence order and has the selected
/// positions contiguous: first the outside pieces not after any selected
/// piece, then the selection, then the rest, each in original order.
pub(crate) fn extraction_order(pairs: &[LefschetzPair], positions: &[usize]) -> Option<Vec<usize>> {
    if positions.windows(2).any(|w| w[0] >= w[1]) {
        return None;
    }
    let (first, last) = match (positions.first(), positions.last()) {
        (Some(&f), Some(&l)) => (f, l),
        _ => return Some((0..pairs.len()).collect()),
    };
    if last >= pairs.len() {
        return None;
    }
    let n = pairs.len();
    let mut selected = vec![false; n];
    for &p in positions {
        selected[p] = true;
    }
    // after[q]: q lies strictly after some selected piece in dependence order
    let mut after = vec![false; n];
    for q in first + 1..n {
        if selected[q] {
            continue;
        }
        after[q] = (first..q).any(|r| (selected[r] || after[r]) && !disjoint(pairs[r], pairs[q]));
    }
    for &s in positions {
        if (first..s).any(|q| after[q] && !disjoint(pairs[q], pairs[s])) {
            return None;
        }
    }
    let mut order: Vec<usize> = (0..n).filter(|&q| !selected[q] && !after[q]).collect();
    order.extend_from_slice(positions);
    order.extend((0..n).filter(|&q| after[q]));
    debug_assert!(order.len() == n);
    Some(order)
}

/// Test oracle: every word reachable from `pairs` by swapping adjacent
/// disjoint pairs. Fails once more than `node_cap` words have been seen.
pub fn class_members(pairs: &[LefschetzPair], node_cap: usize) -> Result<BTreeSet<Vec<LefschetzPair>>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(pairs.to_vec());
    queue.push_back(pairs.to_vec());
    while let Some(w) = queue.pop_front() {
        for k in 0..w.len().saturating_sub(1) {
            if disjoint(w[k], w[k + 1]) {
                let mut v = w.clone();
                v.swap(k, k + 1);
                if seen.insert(v.clone()) {
                    if seen.len() > node_cap {
                        return Err(Error::BudgetExceeded(format!(
                            "class enumeration exceeded {node_cap} words"
                        )));
                    }
                    queue.push_back(v);
                }
            }
        }
    }
    Ok(seen)
}

/// Default node cap for [`class_members`].
pub const DEFAULT_CLASS_CAP: usize = 1_000_000;

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    fn pair(a: u8, b: u8) -> LefschetzPair {
        LefschetzPair::new(a, b).unwrap()
    }

    const FIVE_LINE_LIST: &str = "l=5: (4,5)(2,4)(1,2)(4,5)(2,3)(3,4)(4,5)(2,3)";
    const FIVE_LINE_REORDERED: &str = "l=5: (4,5)(2,4)(4,5)(1,2)(2,3)(3,4)(4,5)(2,3)";

    #[test]
    fn disjointness() {
        assert!(disjoint(pair(1, 2), pair(4, 5)));
        assert!(disjoint(pair(1, 2), pair(3, 4)));
        assert!(!disjoint(pair(2, 4), pair(4, 5)));
        assert!(!disjoint(pair(1, 3), pair(3, 4)));
    }

    #[test]
    fn five_line_reordering_is_equivalent() {
        let a = d(FIVE_LINE_LIST);
        let b = d(FIVE_LINE_REORDERED);
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert!(equivalent(&a, &b));
        assert!(equivalent(&a, &a));
        let members = class_members(a.pairs(), DEFAULT_CLASS_CAP).unwrap();
        assert!(members.contains(b.pairs()));
        assert_eq!(members.iter().next().unwrap(), canonical_form(&a).pairs());
    }

    #[test]
    fn rigid_diagram_is_its_own_form() {
        let rigid = d("l=3: (1,2)(2,3)(1,2)");
        assert_eq!(canonical_form(&rigid).as_diagram(), &rigid);
        assert_eq!(minimal_front_positions(&rigid), vec![0]);
    }

    #[test]
    fn front_positions() {
        // (1,2) meets (2,4) in slot 2, so only the first pair is free
        assert_eq!(minimal_front_positions(&d(FIVE_LINE_LIST)), vec![0]);
        assert_eq!(minimal_front_positions(&d("l=4: (1,2)(3,4)(2,3)(1,2)(3,4)(2,3)")), vec![0, 1]);
        let all_disjoint = Diagram::from_tuples(6, &[(5, 6), (3, 4), (1, 2)]).unwrap();
        assert_eq!(minimal_front_positions(&all_disjoint), vec![0, 1, 2]);
    }

    #[test]
    fn lex_normal_agrees_with_canonical_form() {
        let a = d(FIVE_LINE_LIST);
        for w in class_members(a.pairs(), DEFAULT_CLASS_CAP).unwrap() {
            let canon = Canonicalizer::new().canonicalize(&w);
            assert_eq!(is_lex_normal(&w), canon == w);
        }
    }

    #[test]
    fn contiguous_runs_extract() {
        let a = d(FIVE_LINE_LIST);
        for start in 0..a.len() {
            for end in start..a.len() {
                let run: Vec<usize> = (start..=end).collect();
                assert!(can_extract_contiguous(&a, &run));
            }
        }
    }

    #[test]
    fn blocked_extraction() {
        // (3,4) sits between (2,3) and (4,5) in the dependence order
        let a = Diagram::from_tuples(5, &[(2, 3), (3, 4), (4, 5)]).unwrap();
        assert!(!can_extract_contiguous(&a, &[0, 2]));
        // (1,2) commutes with (4,5) but not with (2,3): still extractable
        let b = Diagram::from_tuples(5, &[(2, 3), (1, 2), (4, 5)]).unwrap();
        assert!(can_extract_contiguous(&b, &[0, 2]));
        assert_eq!(extraction_order(b.pairs(), &[0, 2]).unwrap(), vec![0, 2, 1]);
    }

    #[test]
    fn bfs_cap_is_enforced() {
        let a = Diagram::from_tuples(8, &[(1, 2), (3, 4), (5, 6), (7, 8)]).unwrap();
        assert_eq!(class_members(a.pairs(), 100).unwrap().len(), 24);
        assert!(matches!(class_members(a.pairs(), 10), Err(Error::BudgetExceeded(_))));
    }
}
