//! A normal form for families of point relations, used to compare relation
//! sets that differ by conjugation and by commutations they imply.
//!
//! A point relation is a tuple `(w₁, …, w_m)` standing for
//! `w_m ⋯ w₁ = w_{m-1} ⋯ w₁ w_m = ⋯`. The rewriting rules used here are all
//! equivalences given the commutations already collected:
//!
//! * conjugating the whole tuple, or one entry by a letter that commutes
//!   with every other entry, does not change the relation;
//! * an entry commuting with all others can be dropped (a two-entry tuple
//!   then becomes trivial);
//! * rotating a tuple does not change the relation;
//! * a two-entry tuple of generators is a commutation and joins the
//!   commuting set.
//!
//! This is not a decision procedure. Two families with equal shapes define
//! the same group; unequal shapes prove nothing.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::word::{Letter, Word};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationShape {
    commuting: BTreeSet<(u8, u8)>,
    cycles: BTreeSet<Vec<u8>>,
    residual: BTreeSet<Vec<Word>>,
}

struct Commuting<'a>(&'a BTreeSet<(u8, u8)>);

impl Commuting<'_> {
    fn letters(&self, x: Letter, y: Letter) -> bool {
        let (g, h) = (x.unsigned_abs() as u8, y.unsigned_abs() as u8);
        g == h || self.0.contains(&(g.min(h), g.max(h)))
    }

    /// Cancels `x … x⁻¹` whenever everything between commutes with `x`.
    fn reduce(&self, w: &[Letter]) -> Vec<Letter> {
        let mut w = w.to_vec();
        'again: loop {
            for i in 0..w.len() {
                for j in i + 1..w.len() {
                    if w[j] == -w[i] {
                        w.remove(j);
                        w.remove(i);
                        continue 'again;
                    }
                    if !self.letters(w[i], w[j]) {
                        break;
                    }
                }
            }
            return w;
        }
    }

    fn front(&self, w: &[Letter]) -> Vec<usize> {
        (0..w.len())
            .filter(|&q| w[..q].iter().all(|&y| self.letters(w[q], y)))
            .collect()
    }

    fn back(&self, w: &[Letter]) -> Vec<usize> {
        (0..w.len())
            .filter(|&q| w[q + 1..].iter().all(|&y| self.letters(w[q], y)))
            .collect()
    }

    /// Positions `(q, r)` with `w ≃ x · … · x⁻¹`, `x = w[q]`.
    fn peel(&self, w: &[Letter], x: Letter) -> Option<(usize, usize)> {
        let q = self.front(w).into_iter().find(|&q| w[q] == x)?;
        let r = self.back(w).into_iter().find(|&r| r > q && w[r] == -x)?;
        Some((q, r))
    }

    /// Lexicographically least word equal to `w` modulo the commutations.
    fn normal(&self, w: &[Letter]) -> Vec<Letter> {
        let mut rest = w.to_vec();
        let mut out = Vec::with_capacity(w.len());
        let key = |x: Letter| (x.unsigned_abs(), x < 0);
        while !rest.is_empty() {
            let q = self
                .front(&rest)
                .into_iter()
                .min_by_key(|&q| key(rest[q]))
                .expect("first letter is always free");
            out.push(rest.remove(q));
        }
        out
    }
}

fn strip(w: &mut Vec<Letter>, (q, r): (usize, usize)) {
    w.remove(r);
    w.remove(q);
}

/// Simplifies one tuple; `None` means the relation became trivial.
fn simplify_tuple(tuple: &[Word], c: &Commuting<'_>) -> Option<Vec<Vec<Letter>>> {
    let mut t: Vec<Vec<Letter>> = tuple.iter().map(|w| c.reduce(w.letters())).collect();
    loop {
        let mut changed = false;
        // common conjugator
        if let Some(w0) = t.first() {
            let cands: Vec<Letter> = c.front(w0).into_iter().map(|q| w0[q]).collect();
            for x in cands {
                let hits: Option<Vec<(usize, usize)>> = t.iter().map(|w| c.peel(w, x)).collect();
                if let Some(hits) = hits {
                    for (w, h) in t.iter_mut().zip(hits) {
                        strip(w, h);
                    }
                    changed = true;
                    break;
                }
            }
        }
        // single-entry conjugators
        for k in 0..t.len() {
            let others: Vec<Letter> = t
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .flat_map(|(_, w)| w.iter().copied())
                .collect();
            let cands: Vec<Letter> = c.front(&t[k]).into_iter().map(|q| t[k][q]).collect();
            for x in cands {
                if !others.iter().all(|&y| c.letters(x, y)) {
                    continue;
                }
                if let Some(h) = c.peel(&t[k], x) {
                    strip(&mut t[k], h);
                    changed = true;
                    break;
                }
            }
        }
        // central entries
        let mut k = 0;
        while k < t.len() {
            let central = t[k].len() <= 1
                && t.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .all(|(_, w)| w.iter().all(|&y| t[k].iter().all(|&x| c.letters(x, y))));
            if central {
                t.remove(k);
                changed = true;
                if t.len() <= 1 {
                    return None;
                }
            } else {
                k += 1;
            }
        }
        if !changed {
            return Some(t);
        }
    }
}

fn as_commutation(t: &[Vec<Letter>]) -> Option<(u8, u8)> {
    match t {
        [x, y] => match (&x[..], &y[..]) {
            (&[g], &[h]) if g > 0 && h > 0 => {
                let (g, h) = (g as u8, h as u8);
                Some((g.min(h), g.max(h)))
            }
            _ => None,
        },
        _ => None,
    }
}

fn least_rotation<T: Ord + Clone>(items: &[T]) -> Vec<T> {
    (0..items.len())
        .map(|k| {
            let mut v = items[k..].to_vec();
            v.extend_from_slice(&items[..k]);
            v
        })
        .min()
        .unwrap_or_default()
}

impl RelationShape {
    /// Shape of a family of point tuples.
    pub fn from_tuples(tuples: &[Vec<Word>]) -> Self {
        let mut commuting = BTreeSet::new();
        let mut pending: Vec<Vec<Word>> = tuples.to_vec();
        loop {
            let c = Commuting(&commuting);
            let mut next = Vec::with_capacity(pending.len());
            let mut found = Vec::new();
            for tuple in &pending {
                let Some(t) = simplify_tuple(tuple, &c) else {
                    continue;
                };
                match as_commutation(&t) {
                    Some(pair) => found.push(pair),
                    None => next.push(t.into_iter().map(Word::from_letters).collect::<Vec<_>>()),
                }
            }
            let before = commuting.len();
            commuting.extend(found);
            let stable = commuting.len() == before && next == pending;
            pending = next;
            if stable {
                break;
            }
        }
        let c = Commuting(&commuting);
        let mut cycles = BTreeSet::new();
        let mut residual = BTreeSet::new();
        for tuple in pending {
            let t: Vec<Vec<Letter>> = tuple.iter().map(|w| c.normal(w.letters())).collect();
            let gens: Option<Vec<u8>> = t
                .iter()
                .map(|w| match w[..] {
                    [g] if g > 0 => Some(g as u8),
                    _ => None,
                })
                .collect();
            match gens {
                Some(g) => {
                    cycles.insert(least_rotation(&g));
                }
                None => {
                    let words: Vec<Word> = t.into_iter().map(Word::from_letters).collect();
                    residual.insert(least_rotation(&words));
                }
            }
        }
        RelationShape {
            commuting,
            cycles,
            residual,
        }
    }

    /// Commuting generator pairs `(g, h)`, `g < h`.
    pub fn commuting_pairs(&self) -> &BTreeSet<(u8, u8)> {
        &self.commuting
    }

    /// Cyclic relations among three or more plain generators, as the least
    /// rotation of `(w₁, …, w_m)`.
    pub fn cycles(&self) -> &BTreeSet<Vec<u8>> {
        &self.cycles
    }

    /// Tuples the rules could not bring to plain generators.
    pub fn residual(&self) -> &BTreeSet<Vec<Word>> {
        &self.residual
    }

    pub fn is_fully_resolved(&self) -> bool {
        self.residual.is_empty()
    }
}
