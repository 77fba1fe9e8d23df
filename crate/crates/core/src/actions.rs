//! The reflection `τ`, the first-line inversion `μ`, the rotation through
//! infinity `σ`, and the above/below relation `Δ`.
//!
//! `τ` and `σ` act on raw diagrams. `μ` is defined through the
//! `L₊/L₀/L₋` decomposition, which depends only on the `≡`-class, so it acts
//! on canonical diagrams. `σ` does not descend to classes; on classes it is
//! realised as a neighbour relation.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, LefschetzPair};
use crate::error::{Error, Result};
use crate::trace::{self, canonical_form, CanonicalDiagram, Canonicalizer};

/// Reverses the order of the points.
pub fn tau(d: &Diagram) -> Diagram {
    let mut pairs = d.pairs().to_vec();
    pairs.reverse();
    Diagram::from_parts_unchecked(d.ell(), pairs)
}

/// `τ` on classes.
pub fn tau_class(c: &CanonicalDiagram) -> CanonicalDiagram {
    canonical_form(&tau(c))
}

/// Drops the first point and appends its `J`-conjugate `⟨J(b₁),J(a₁)⟩`.
pub fn sigma(d: &Diagram) -> Result<Diagram> {
    let (&first, rest) = d.pairs().split_first().ok_or(Error::EmptyDiagram)?;
    let mut pairs = Vec::with_capacity(d.len());
    pairs.extend_from_slice(rest);
    pairs.push(first.reflected(d.ell()));
    Ok(Diagram::from_parts_unchecked(d.ell(), pairs))
}

/// Inverse of [`sigma`]: moves the last point to the front, conjugated by `J`.
pub fn sigma_inverse(d: &Diagram) -> Result<Diagram> {
    let (&last, rest) = d.pairs().split_last().ok_or(Error::EmptyDiagram)?;
    let mut pairs = Vec::with_capacity(d.len());
    pairs.push(last.reflected(d.ell()));
    pairs.extend_from_slice(rest);
    Ok(Diagram::from_parts_unchecked(d.ell(), pairs))
}

/// `σ^k` for any integer `k`; `σ^{2p}` is the identity.
pub fn sigma_power(d: &Diagram, k: i64) -> Result<Diagram> {
    if d.is_empty() {
        return if k == 0 { Ok(d.clone()) } else { Err(Error::EmptyDiagram) };
    }
    let p = d.len() as i64;
    let k = k.rem_euclid(2 * p) as usize;
    let ell = d.ell();
    let pairs = (0..d.len())
        .map(|j| {
            // position j of σ^k holds original point (j + k) mod p, reflected
            // once for every wrap past the end
            let src = j + k;
            let pair = d.pairs()[src % d.len()];
            if (src / d.len()) % 2 == 1 {
                pair.reflected(ell)
            } else {
                pair
            }
        })
        .collect();
    Ok(Diagram::from_parts_unchecked(ell, pairs))
}

/// The classes reachable by one `σ` step from some member of the class of
/// `c`: one candidate per pair that can be commuted to the front.
pub fn sigma_class_neighbors(c: &CanonicalDiagram) -> Result<Vec<CanonicalDiagram>> {
    if c.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    let mut out: Vec<CanonicalDiagram> = trace::front_positions(c.pairs())
        .into_iter()
        .map(|pos| {
            let front = trace::bring_to_front(c.pairs(), pos);
            let moved = sigma(&Diagram::from_parts_unchecked(c.ell(), front))
                .expect("class is non-empty");
            canonical_form(&moved)
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Position-tagged sublists of the first-line sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuDecomposition {
    /// Points strictly above line 1 (its local index is below `a`).
    pub l_plus: Vec<(usize, LefschetzPair)>,
    /// Points on line 1, in sweep order.
    pub l_zero: Vec<(usize, LefschetzPair)>,
    /// Points strictly below line 1.
    pub l_minus: Vec<(usize, LefschetzPair)>,
}

impl MuDecomposition {
    fn lists(list: &[(usize, LefschetzPair)]) -> Vec<LefschetzPair> {
        list.iter().map(|&(_, p)| p).collect()
    }

    pub fn plus_pairs(&self) -> Vec<LefschetzPair> {
        Self::lists(&self.l_plus)
    }

    pub fn zero_pairs(&self) -> Vec<LefschetzPair> {
        Self::lists(&self.l_zero)
    }

    pub fn minus_pairs(&self) -> Vec<LefschetzPair> {
        Self::lists(&self.l_minus)
    }
}

/// Sweeps the local index `x` of line 1: a point containing `x` joins `L₀`
/// and sends `x` to `a+b-x`; points entirely past `x` join `L₊`, points
/// entirely before it join `L₋`. On a valid diagram `x = a` for every `L₀`
/// point.
pub fn mu_decompose(d: &Diagram) -> MuDecomposition {
    let mut dec = MuDecomposition::default();
    let mut x = 1u8;
    for (i, &p) in d.pairs().iter().enumerate() {
        if p.contains(x) {
            debug_assert!(p.a() == x || !d.is_valid());
            dec.l_zero.push((i, p));
            x = p.a() + p.b() - x;
        } else if x > p.b() {
            dec.l_minus.push((i, p));
        } else {
            dec.l_plus.push((i, p));
        }
    }
    dec
}

/// `(L₊ - 1) · reverse(L₀) · (L₋ + 1)` as a raw word.
pub fn mu_image(d: &Diagram) -> Diagram {
    let mut pairs = Vec::with_capacity(d.len());
    mu_image_into(d.pairs(), &mut pairs);
    Diagram::from_parts_unchecked(d.ell(), pairs)
}

pub(crate) fn mu_image_into(pairs: &[LefschetzPair], out: &mut Vec<LefschetzPair>) {
    out.clear();
    let mut x = 1u8;
    let mut zero = Vec::new();
    let mut minus = Vec::new();
    for &p in pairs {
        if p.contains(x) {
            zero.push(p);
            x = p.a() + p.b() - x;
        } else if x > p.b() {
            minus.push(LefschetzPair::new_unchecked(p.a() + 1, p.b() + 1));
        } else {
            out.push(LefschetzPair::new_unchecked(p.a() - 1, p.b() - 1));
        }
    }
    out.extend(zero.into_iter().rev());
    out.extend(minus);
}

/// `μ` on classes.
pub fn mu(c: &CanonicalDiagram) -> CanonicalDiagram {
    canonical_form(&mu_image(c))
}

/// `μ^k` on classes; `μ^{2ℓ}` is the identity.
pub fn mu_power(c: &CanonicalDiagram, k: u32) -> CanonicalDiagram {
    let period = 2 * u32::from(c.ell());
    let mut cur = c.clone();
    for _ in 0..k % period {
        cur = mu(&cur);
    }
    cur
}

/// Parameters of a `Δ` pattern: offset `c ≥ 1`, local index `i` of the
/// crossing line, and central multiplicity `t ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DeltaPattern {
    pub c: u8,
    pub i: u8,
    pub t: u8,
}

impl DeltaPattern {
    pub fn new(c: u8, i: u8, t: u8, ell: u8) -> Result<Self> {
        if c < 1 || t < 2 || i > t || u16::from(c) + u16::from(t) > u16::from(ell) {
            return Err(Error::Parameter(format!(
                "Δ pattern needs 1 <= c, 0 <= i <= t, t >= 2, c+t <= l; got c={c} i={i} t={t} l={ell}"
            )));
        }
        Ok(DeltaPattern { c, i, t })
    }

    pub fn is_degenerate(self) -> bool {
        self.i == 0 || self.i == self.t
    }

    fn pair(self, a: u8, b: u8) -> LefschetzPair {
        LefschetzPair::new_unchecked(self.c + a, self.c + b)
    }

    /// The crossing line passes above the central point:
    /// `c + (⟨i,i+1⟩…⟨t-1,t⟩, ⟨0,t-1⟩, ⟨t-1,t⟩…⟨t-i,t-i+1⟩)`.
    pub fn above(self) -> Vec<LefschetzPair> {
        let (i, t) = (self.i, self.t);
        let mut out = Vec::with_capacity(usize::from(t) + 1);
        out.extend((i..t).map(|k| self.pair(k, k + 1)));
        out.push(self.pair(0, t - 1));
        out.extend((t - i..t).rev().map(|k| self.pair(k, k + 1)));
        out
    }

    /// The crossing line passes below the central point:
    /// `c + (⟨i-1,i⟩…⟨0,1⟩, ⟨1,t⟩, ⟨0,1⟩…⟨t-1-i,t-i⟩)`.
    pub fn below(self) -> Vec<LefschetzPair> {
        let (i, t) = (self.i, self.t);
        let mut out = Vec::with_capacity(usize::from(t) + 1);
        out.extend((0..i).rev().map(|k| self.pair(k, k + 1)));
        out.push(self.pair(1, t));
        out.extend((0..t - i).map(|k| self.pair(k, k + 1)));
        out
    }
}

/// Shorthand for [`DeltaPattern::above`].
pub fn tru_pattern(c: u8, i: u8, t: u8, ell: u8) -> Result<Vec<LefschetzPair>> {
    Ok(DeltaPattern::new(c, i, t, ell)?.above())
}

/// Shorthand for [`DeltaPattern::below`].
pub fn trd_pattern(c: u8, i: u8, t: u8, ell: u8) -> Result<Vec<LefschetzPair>> {
    Ok(DeltaPattern::new(c, i, t, ell)?.below())
}

/// Which side is being replaced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DeltaDirection {
    /// Replace `tru` by `trd`.
    AboveToBelow,
    /// Replace `trd` by `tru`.
    BelowToAbove,
}

/// Where `Δ` occurrences are sought.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaPolicy {
    /// Any selection of points that some `≡`-equivalent word has adjacent.
    Equiv,
    /// Only contiguous runs of the canonical word itself.
    Literal,
}

impl std::str::FromStr for DeltaPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "equiv" => Ok(DeltaPolicy::Equiv),
            "literal" => Ok(DeltaPolicy::Literal),
            _ => Err(Error::Parameter(format!("unknown Δ policy `{s}`"))),
        }
    }
}

impl std::fmt::Display for DeltaPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DeltaPolicy::Equiv => "equiv",
            DeltaPolicy::Literal => "literal",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeltaConfig {
    pub policy: DeltaPolicy,
    /// Admit `i = 0` and `i = t`, where one of the two runs is empty.
    pub degenerate_ends: bool,
}

impl Default for DeltaConfig {
    fn default() -> Self {
        DeltaConfig {
            policy: DeltaPolicy::Equiv,
            degenerate_ends: true,
        }
    }
}

/// One rewrite opportunity: the positions (0-based, increasing) of the
/// class representative that hold the source pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeltaMove {
    pub pattern: DeltaPattern,
    pub direction: DeltaDirection,
    pub positions: Vec<usize>,
}

/// Properties of one `Δ` occurrence that decide which configurations admit
/// it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DeltaTag {
    pub contiguous: bool,
    pub degenerate: bool,
}

impl DeltaTag {
    pub fn admitted_by(self, config: DeltaConfig) -> bool {
        (config.policy == DeltaPolicy::Equiv || self.contiguous) && (config.degenerate_ends || !self.degenerate)
    }
}

#[derive(Clone, Debug)]
struct CatalogEntry {
    pattern: DeltaPattern,
    direction: DeltaDirection,
    source: Vec<LefschetzPair>,
    target: Vec<LefschetzPair>,
}

/// Every admissible `Δ` rewrite on `ℓ` wires, indexed by first pair.
#[derive(Clone, Debug)]
pub struct DeltaCatalog {
    ell: u8,
    config: DeltaConfig,
    entries: Vec<CatalogEntry>,
    by_first: HashMap<LefschetzPair, Vec<usize>>,
}

impl DeltaCatalog {
    pub fn new(ell: u8, config: DeltaConfig) -> Self {
        let mut entries = Vec::new();
        for t in 2..ell {
            for c in 1..=ell - t {
                for i in 0..=t {
                    let pattern = DeltaPattern { c, i, t };
                    if pattern.is_degenerate() && !config.degenerate_ends {
                        continue;
                    }
                    let (above, below) = (pattern.above(), pattern.below());
                    entries.push(CatalogEntry {
                        pattern,
                        direction: DeltaDirection::AboveToBelow,
                        source: above.clone(),
                        target: below.clone(),
                    });
                    entries.push(CatalogEntry {
                        pattern,
                        direction: DeltaDirection::BelowToAbove,
                        source: below,
                        target: above,
                    });
                }
            }
        }
        let mut by_first: HashMap<LefschetzPair, Vec<usize>> = HashMap::new();
        for (k, e) in entries.iter().enumerate() {
            debug_assert!(e.source.windows(2).all(|w| !w[0].is_disjoint(w[1])));
            by_first.entry(e.source[0]).or_default().push(k);
        }
        DeltaCatalog {
            ell,
            config,
            entries,
            by_first,
        }
    }

    pub fn ell(&self) -> u8 {
        self.ell
    }

    pub fn config(&self) -> DeltaConfig {
        self.config
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn entry(&self, pattern: DeltaPattern, direction: DeltaDirection) -> Option<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.pattern == pattern && e.direction == direction)
    }

    /// All moves available on the class of `pairs` (which must be the
    /// canonical word under the `Literal` policy).
    pub fn moves(&self, pairs: &[LefschetzPair]) -> Vec<DeltaMove> {
        let mut out = Vec::new();
        self.for_each_match(pairs, |entry, positions, _| {
            out.push(DeltaMove {
                pattern: entry.pattern,
                direction: entry.direction,
                positions: positions.to_vec(),
            });
        });
        out
    }

    /// Calls `f(entry, positions, extraction order)` for every match.
    fn for_each_match<F>(&self, pairs: &[LefschetzPair], mut f: F)
    where
        F: FnMut(&CatalogEntry, &[usize], &[usize]),
    {
        let mut positions = Vec::new();
        for (s0, first) in pairs.iter().enumerate() {
            let Some(candidates) = self.by_first.get(first) else {
                continue;
            };
            'entry: for &k in candidates {
                let entry = &self.entries[k];
                positions.clear();
                positions.push(s0);
                let mut prev = s0;
                for &want in &entry.source[1..] {
                    // consecutive pattern pairs overlap, so any earlier copy of
                    // `want` would sit between the two selected pieces
                    let next = match self.config.policy {
                        DeltaPolicy::Literal => {
                            if pairs.get(prev + 1) == Some(&want) {
                                prev + 1
                            } else {
                                continue 'entry;
                            }
                        }
                        DeltaPolicy::Equiv => {
                            match pairs[prev + 1..].iter().position(|&q| q == want) {
                                Some(off) => prev + 1 + off,
                                None => continue 'entry,
                            }
                        }
                    };
                    positions.push(next);
                    prev = next;
                }
                if let Some(order) = trace::extraction_order(pairs, &positions) {
                    f(entry, &positions, &order);
                }
            }
        }
    }

    /// Like [`DeltaCatalog::neighbors`], also reporting for each rewrite
    /// whether the occurrence is a contiguous run of `pairs` and whether its
    /// pattern is degenerate.
    pub fn tagged_neighbors(
        &self,
        pairs: &[LefschetzPair],
        canon: &mut Canonicalizer,
    ) -> Vec<(DeltaTag, Vec<LefschetzPair>)> {
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(pairs.len());
        self.for_each_match(pairs, |entry, positions, order| {
            rewrite(pairs, positions, order, &entry.target, &mut word);
            let tag = DeltaTag {
                contiguous: positions.windows(2).all(|w| w[1] == w[0] + 1),
                degenerate: entry.pattern.is_degenerate(),
            };
            out.push((tag, canon.canonicalize(&word)));
        });
        out
    }

    /// Canonical words of every class one `Δ` step away from `pairs`.
    pub fn neighbors(&self, pairs: &[LefschetzPair], canon: &mut Canonicalizer) -> Vec<Vec<LefschetzPair>> {
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(pairs.len());
        self.for_each_match(pairs, |entry, positions, order| {
            rewrite(pairs, positions, order, &entry.target, &mut word);
            out.push(canon.canonicalize(&word));
        });
        out
    }
}

fn rewrite(
    pairs: &[LefschetzPair],
    positions: &[usize],
    order: &[usize],
    target: &[LefschetzPair],
    out: &mut Vec<LefschetzPair>,
) {
    out.clear();
    let start = order
        .iter()
        .position(|&q| q == positions[0])
        .expect("selection is part of the order");
    out.extend(order[..start].iter().map(|&q| pairs[q]));
    out.extend_from_slice(target);
    out.extend(order[start + positions.len()..].iter().map(|&q| pairs[q]));
}

/// All `Δ` moves on the class of `c`.
pub fn delta_moves(c: &CanonicalDiagram, config: DeltaConfig) -> Vec<DeltaMove> {
    DeltaCatalog::new(c.ell(), config).moves(c.pairs())
}

/// Replaces the selected occurrence by the opposite pattern and returns the
/// canonical form of the result. The move is re-checked against `c` first.
pub fn apply_delta(c: &CanonicalDiagram, mv: &DeltaMove) -> Result<CanonicalDiagram> {
    let pattern = DeltaPattern::new(mv.pattern.c, mv.pattern.i, mv.pattern.t, c.ell())
        .map_err(|e| Error::StaleMove(e.to_string()))?;
    let (source, target) = match mv.direction {
        DeltaDirection::AboveToBelow => (pattern.above(), pattern.below()),
        DeltaDirection::BelowToAbove => (pattern.below(), pattern.above()),
    };
    let pairs = c.pairs();
    if mv.positions.len() != source.len()
        || mv.positions.iter().zip(&source).any(|(&q, &want)| pairs.get(q) != Some(&want))
    {
        return Err(Error::StaleMove(format!(
            "positions {:?} do not hold the source pattern",
            mv.positions
        )));
    }
    let order = trace::extraction_order(pairs, &mv.positions).ok_or_else(|| {
        Error::StaleMove(format!("positions {:?} cannot be made adjacent", mv.positions))
    })?;
    let mut word = Vec::with_capacity(pairs.len());
    rewrite(pairs, &mv.positions, &order, &target, &mut word);
    Ok(canonical_form(&Diagram::from_parts_unchecked(c.ell(), word)))
}

/// Looks up the catalogue entry for a move, mainly for diagnostics.
pub fn delta_target(mv: &DeltaMove, ell: u8) -> Option<Vec<LefschetzPair>> {
    let catalog = DeltaCatalog::new(
        ell,
        DeltaConfig {
            policy: DeltaPolicy::Equiv,
            degenerate_ends: true,
        },
    );
    catalog.entry(mv.pattern, mv.direction).map(|e| e.target.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::{class_members, DEFAULT_CLASS_CAP};

    fn d(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    fn pairs(list: &[(u8, u8)]) -> Vec<LefschetzPair> {
        list.iter().map(|&(a, b)| LefschetzPair::new(a, b).unwrap()).collect()
    }

    const FIVE_LINE_LIST: &str = "l=5: (4,5)(2,4)(1,2)(4,5)(2,3)(3,4)(4,5)(2,3)";
    const KELLY_MOSER: &str = "l=7: (3,5)(1,3)(5,6)(3,5)(5,7)(2,3)(3,5)(1,3)(5,6)";

    #[test]
    fn tau_reverses() {
        let a = d("l=3: (1,2)(2,3)(1,2)");
        assert_eq!(tau(&a), a);
        let b = d(FIVE_LINE_LIST);
        assert_eq!(tau(&b).to_string(), "l=5: (2,3)(4,5)(3,4)(2,3)(4,5)(1,2)(2,4)(4,5)");
        assert_eq!(tau(&tau(&b)), b);
    }

    #[test]
    fn mu_decomposition_of_five_line_list() {
        let dec = mu_decompose(&d(FIVE_LINE_LIST));
        assert_eq!(dec.plus_pairs(), pairs(&[(4, 5), (2, 4), (4, 5)]));
        assert_eq!(dec.zero_pairs(), pairs(&[(1, 2), (2, 3), (3, 4), (4, 5)]));
        assert_eq!(dec.minus_pairs(), pairs(&[(2, 3)]));
        let single = mu_decompose(&d("l=3: (1,3)"));
        assert!(single.l_plus.is_empty() && single.l_minus.is_empty());
        assert_eq!(single.zero_pairs(), pairs(&[(1, 3)]));
    }

    #[test]
    fn mu_of_five_line_list() {
        let c = canonical_form(&d(FIVE_LINE_LIST));
        let expected = canonical_form(&d("l=5: (3,4)(1,3)(3,4)(4,5)(3,4)(2,3)(1,2)(3,4)"));
        assert_eq!(mu(&c), expected);
        let pencil = canonical_form(&d("l=3: (1,3)"));
        assert_eq!(mu(&pencil), pencil);
    }

    #[test]
    fn mu_period() {
        for s in [FIVE_LINE_LIST, KELLY_MOSER] {
            let c = canonical_form(&d(s));
            let ell = u32::from(c.ell());
            let mut cur = c.clone();
            for _ in 0..2 * ell {
                cur = mu(&cur);
                assert!(cur.is_valid());
                assert_eq!(cur.signature(), c.signature());
            }
            assert_eq!(cur, c);
        }
    }

    #[test]
    fn sigma_examples() {
        let a = d("l=3: (1,2)(2,3)(1,2)");
        let s = sigma(&a).unwrap();
        assert_eq!(s, d("l=3: (2,3)(1,2)(2,3)"));
        assert_eq!(sigma(&s).unwrap(), a);
        let km = d(KELLY_MOSER);
        assert_eq!(sigma_power(&km, 6).unwrap(), km);
        for k in 1..6 {
            assert_ne!(sigma_power(&km, k).unwrap(), km);
        }
        assert!(matches!(sigma(&d("l=1:")), Err(Error::EmptyDiagram)));
    }

    #[test]
    fn sigma_power_matches_iteration() {
        let a = d(FIVE_LINE_LIST);
        let mut cur = a.clone();
        for k in 0..=20 {
            assert_eq!(sigma_power(&a, k).unwrap(), cur);
            assert_eq!(sigma_power(&a, k - 16).unwrap(), cur);
            cur = sigma(&cur).unwrap();
        }
        assert_eq!(sigma_inverse(&sigma(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn sigma_neighbors_on_classes() {
        let rigid = canonical_form(&d("l=3: (1,2)(2,3)(1,2)"));
        assert_eq!(
            sigma_class_neighbors(&rigid).unwrap(),
            vec![canonical_form(&sigma(&rigid).unwrap())]
        );
        // oracle: σ-images of every member of the class, canonicalised
        for (s, n) in [(FIVE_LINE_LIST, 1), ("l=4: (1,2)(3,4)(2,3)(1,2)(3,4)(2,3)", 2)] {
            let c = canonical_form(&d(s));
            assert!(c.is_valid());
            let mut oracle: Vec<_> = class_members(c.pairs(), DEFAULT_CLASS_CAP)
                .unwrap()
                .into_iter()
                .map(|w| canonical_form(&sigma(&Diagram::new(c.ell(), w).unwrap()).unwrap()))
                .collect();
            oracle.sort();
            oracle.dedup();
            assert_eq!(sigma_class_neighbors(&c).unwrap(), oracle);
            assert_eq!(oracle.len(), n);
        }
    }

    #[test]
    fn pattern_expansion() {
        assert_eq!(tru_pattern(1, 1, 2, 3).unwrap(), pairs(&[(2, 3), (1, 2), (2, 3)]));
        assert_eq!(trd_pattern(1, 1, 2, 3).unwrap(), pairs(&[(1, 2), (2, 3), (1, 2)]));
        assert_eq!(tru_pattern(1, 0, 2, 3).unwrap(), pairs(&[(1, 2), (2, 3), (1, 2)]));
        assert_eq!(trd_pattern(1, 0, 2, 3).unwrap(), pairs(&[(2, 3), (1, 2), (2, 3)]));
        assert_eq!(
            tru_pattern(2, 1, 3, 5).unwrap(),
            pairs(&[(3, 4), (4, 5), (2, 4), (4, 5)])
        );
        assert_eq!(
            trd_pattern(2, 1, 3, 5).unwrap(),
            pairs(&[(2, 3), (3, 5), (2, 3), (3, 4)])
        );
        assert!(tru_pattern(0, 1, 2, 3).is_err());
        assert!(tru_pattern(1, 3, 2, 3).is_err());
        assert!(tru_pattern(2, 1, 2, 3).is_err());
        for t in 2..=5u8 {
            for i in 0..=t {
                for pat in [tru_pattern(1, i, t, 6).unwrap(), trd_pattern(1, i, t, 6).unwrap()] {
                    assert_eq!(pat.len(), usize::from(t) + 1);
                    let mut mult: Vec<usize> = pat.iter().map(|p| p.multiplicity()).collect();
                    mult.sort();
                    let mut want = vec![2; usize::from(t)];
                    want.push(usize::from(t));
                    want.sort();
                    assert_eq!(mult, want);
                    // a full reversal of lines c..c+t
                    let perm = Diagram::new(6, pat).unwrap().wire_order_after(usize::from(t) + 1);
                    for s in 1..=t + 1 {
                        assert_eq!(perm.apply(s), t + 2 - s);
                    }
                }
            }
        }
    }

    #[test]
    fn delta_on_three_lines() {
        let c = canonical_form(&d("l=3: (2,3)(1,2)(2,3)"));
        let strict = DeltaConfig {
            policy: DeltaPolicy::Equiv,
            degenerate_ends: false,
        };
        let moves = delta_moves(&c, strict);
        assert_eq!(moves.len(), 1);
        assert_eq!(moves[0].pattern, DeltaPattern { c: 1, i: 1, t: 2 });
        assert_eq!(moves[0].direction, DeltaDirection::AboveToBelow);
        let other = apply_delta(&c, &moves[0]).unwrap();
        assert_eq!(other.as_diagram(), &d("l=3: (1,2)(2,3)(1,2)"));
        let back = delta_moves(&other, strict);
        assert_eq!(back.len(), 1);
        assert_eq!(apply_delta(&other, &back[0]).unwrap(), c);
    }

    #[test]
    fn no_delta_without_structure() {
        let pencil = canonical_form(&d("l=3: (1,3)"));
        assert!(delta_moves(&pencil, DeltaConfig::default()).is_empty());
    }

    #[test]
    fn stale_moves_are_rejected() {
        let c = canonical_form(&d("l=3: (2,3)(1,2)(2,3)"));
        let mv = DeltaMove {
            pattern: DeltaPattern { c: 1, i: 1, t: 2 },
            direction: DeltaDirection::BelowToAbove,
            positions: vec![0, 1, 2],
        };
        assert!(matches!(apply_delta(&c, &mv), Err(Error::StaleMove(_))));
    }

    #[test]
    fn delta_preserves_lattice_on_five_line_list() {
        let c = canonical_form(&d(FIVE_LINE_LIST));
        let lat = crate::lattice::canonical_lattice(&crate::lattice::lattice_of(&c).unwrap());
        for mv in delta_moves(&c, DeltaConfig::default()) {
            let e = apply_delta(&c, &mv).unwrap();
            assert!(e.is_valid());
            assert_eq!(e.signature(), c.signature());
            let l2 = crate::lattice::canonical_lattice(&crate::lattice::lattice_of(&e).unwrap());
            assert_eq!(lat, l2);
        }
    }
}
