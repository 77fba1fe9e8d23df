//! Lefschetz pairs, wiring diagrams and their elementary combinatorics.
//!
//! Lines and slots are 1-indexed. A [`Diagram`] is the ordered list of
//! Lefschetz pairs read along the guiding line; pair `⟨a,b⟩` says that the
//! wires occupying local slots `a..=b` meet in one point, after which their
//! order is reversed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported wire count. Crossing sets are kept in `u64` masks.
pub const MAX_WIRES: u8 = 64;

/// Largest wire count for the one-byte-per-pair packed encoding.
pub const MAX_PACKED_WIRES: u8 = 15;

/// The smallest and largest local wire index meeting at an intersection point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LefschetzPair {
    a: u8,
    b: u8,
}

impl LefschetzPair {
    pub fn new(a: u8, b: u8) -> Result<Self> {
        if a == 0 || a >= b {
            return Err(Error::PairOrder {
                a: a.into(),
                b: b.into(),
            });
        }
        Ok(LefschetzPair { a, b })
    }

    /// Caller guarantees `1 <= a < b`.
    #[inline]
    pub(crate) const fn new_unchecked(a: u8, b: u8) -> Self {
        LefschetzPair { a, b }
    }

    #[inline]
    pub fn a(self) -> u8 {
        self.a
    }

    #[inline]
    pub fn b(self) -> u8 {
        self.b
    }

    /// Number of wires through the point, `b - a + 1`.
    #[inline]
    pub fn multiplicity(self) -> usize {
        usize::from(self.b - self.a) + 1
    }

    #[inline]
    pub fn contains(self, slot: u8) -> bool {
        self.a <= slot && slot <= self.b
    }

    /// True iff the integer intervals `[a,b]` and `[c,d]` do not meet.
    #[inline]
    pub fn is_disjoint(self, other: LefschetzPair) -> bool {
        self.b < other.a || other.b < self.a
    }

    /// Adds `delta` to both indices; `None` if the result leaves `1..=255`.
    pub fn shifted(self, delta: i32) -> Option<Self> {
        let a = i32::from(self.a) + delta;
        let b = i32::from(self.b) + delta;
        if a < 1 || b > 255 {
            return None;
        }
        Some(LefschetzPair::new_unchecked(a as u8, b as u8))
    }

    /// The pair conjugated by the reversal `J(i) = ℓ+1-i`: `⟨J(b), J(a)⟩`.
    #[inline]
    pub fn reflected(self, ell: u8) -> Self {
        LefschetzPair::new_unchecked(ell + 1 - self.b, ell + 1 - self.a)
    }

    /// The involution reversing slots `a..=b`, identity elsewhere.
    pub fn permutation(self, ell: u8) -> Permutation {
        let images = (1..=ell)
            .map(|t| if self.contains(t) { self.a + self.b - t } else { t })
            .collect();
        Permutation { images }
    }

    /// Two 4-bit fields, `a` high; byte order agrees with pair order.
    #[inline]
    pub fn pack(self) -> u8 {
        debug_assert!(self.b <= MAX_PACKED_WIRES);
        (self.a << 4) | self.b
    }

    #[inline]
    pub fn unpack(byte: u8) -> Self {
        LefschetzPair::new_unchecked(byte >> 4, byte & 0x0f)
    }
}

impl fmt::Display for LefschetzPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A bijection on `{1..n}`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: u8) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// `J(i) = n+1-i`.
    pub fn reversal(n: u8) -> Self {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            let x = usize::from(x);
            if x == 0 || x > n || seen[x] {
                return Err(Error::Parameter(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: u8) -> u8 {
        self.images[usize::from(i) - 1]
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&x| other.apply(x)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[usize::from(x) - 1] = (i + 1) as u8;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| usize::from(x) == i + 1)
    }

    pub fn is_reversal(&self) -> bool {
        let n = self.images.len();
        self.images.iter().enumerate().all(|(i, &x)| usize::from(x) == n - i)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

/// Multiset of point multiplicities: `k ↦ n_k`, zero counts omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Signature {
    counts: BTreeMap<u8, u32>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts(counts: impl IntoIterator<Item = (u8, u32)>) -> Result<Self> {
        let mut sig = Signature::new();
        for (k, n) in counts {
            if k < 2 {
                return Err(Error::Signature(format!("multiplicity {k} < 2")));
            }
            if n > 0 {
                *sig.counts.entry(k).or_insert(0) += n;
            }
        }
        Ok(sig)
    }

    pub fn count(&self, k: u8) -> u32 {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u8, u32)> + '_ {
        self.counts.iter().map(|(&k, &n)| (k, n))
    }

    /// Number of points `p = Σ n_k`.
    pub fn points(&self) -> usize {
        self.counts.values().map(|&n| n as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn max_multiplicity(&self) -> Option<u8> {
        self.counts.keys().next_back().copied()
    }

    /// `Σ n_k · C(k,2)`: the number of line pairs the points account for.
    pub fn crossing_pairs(&self) -> u64 {
        self.iter()
            .map(|(k, n)| u64::from(n) * choose2(u64::from(k)))
            .sum()
    }

    /// The counting identity `Σ n_k · C(k,2) = C(ℓ,2)`.
    pub fn satisfies_suip(&self, ell: u8) -> bool {
        self.crossing_pairs() == choose2(u64::from(ell))
            && self.max_multiplicity().is_none_or(|k| k <= ell)
    }

    /// The wire count determined by the counting identity, if any.
    pub fn implied_ell(&self) -> Option<u8> {
        let target = self.crossing_pairs();
        (1..=MAX_WIRES).find(|&ell| choose2(u64::from(ell)) == target && self.satisfies_suip(ell))
    }

    fn add(&mut self, k: u8) {
        *self.counts.entry(k).or_insert(0) += 1;
    }
}

pub(crate) fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// `2^13 3^3 4^1`; an empty signature prints as the empty string.
impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, n)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}^{n}")?;
        }
        Ok(())
    }
}

impl FromStr for Signature {
    type Err = Error;

    /// Accepts space-separated `k^n` tokens, optionally wrapped in brackets.
    /// A bare `k` token means `k^1`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .unwrap_or(trimmed);
        let mut counts = Vec::new();
        for token in inner.split_whitespace() {
            let (k, n) = match token.split_once('^') {
                Some((k, n)) => (k, n),
                None => (token, "1"),
            };
            let k: u8 = k
                .parse()
                .map_err(|_| Error::Signature(format!("bad multiplicity in `{token}`")))?;
            let n: u32 = n
                .parse()
                .map_err(|_| Error::Signature(format!("bad count in `{token}`")))?;
            if n == 0 {
                return Err(Error::Signature(format!("zero count in `{token}`")));
            }
            counts.push((k, n));
        }
        Signature::from_counts(counts)
    }
}

/// An ordered list of Lefschetz pairs on `ℓ` wires.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Diagram {
    ell: u8,
    pairs: Vec<LefschetzPair>,
}

impl Diagram {
    pub fn new(ell: u8, pairs: Vec<LefschetzPair>) -> Result<Self> {
        if ell == 0 || ell > MAX_WIRES {
            return Err(Error::WireCount(ell.into()));
        }
        if let Some(p) = pairs.iter().find(|p| p.b > ell) {
            return Err(Error::PairOutOfRange { a: p.a, b: p.b, ell });
        }
        Ok(Diagram { ell, pairs })
    }

    /// Builds a diagram from `(a,b)` tuples.
    pub fn from_tuples(ell: u8, pairs: &[(u8, u8)]) -> Result<Self> {
        let pairs = pairs
            .iter()
            .map(|&(a, b)| LefschetzPair::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Diagram::new(ell, pairs)
    }

    #[inline]
    pub(crate) fn from_parts_unchecked(ell: u8, pairs: Vec<LefschetzPair>) -> Self {
        Diagram { ell, pairs }
    }

    #[inline]
    pub fn ell(&self) -> u8 {
        self.ell
    }

    #[inline]
    pub fn pairs(&self) -> &[LefschetzPair] {
        &self.pairs
    }

    pub fn into_pairs(self) -> Vec<LefschetzPair> {
        self.pairs
    }

    /// Number of points `p`.
    #[inline]
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        for p in &self.pairs {
            sig.add(p.multiplicity() as u8);
        }
        sig
    }

    /// Checks the unique intersection property by sweeping the diagram and
    /// tracking which global line occupies each slot. Reports the first line
    /// pair that crosses twice, or a pair that never crosses. On success the
    /// composed pair permutation is also checked against `J`.
    pub fn validate(&self) -> Result<()> {
        let mut sweep = Sweep::new(self.ell);
        for (i, &p) in self.pairs.iter().enumerate() {
            sweep.cross(p).map_err(|lines| Error::CrossTwice {
                lines,
                point: i + 1,
            })?;
        }
        if let Some(lines) = sweep.first_uncrossed() {
            return Err(Error::NeverCross { lines });
        }
        let product = self.wire_order_after(self.len());
        if !product.is_reversal() {
            return Err(Error::NotReversal(product.to_string()));
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Maps each initial line label to its local slot after the first `k`
    /// points. Panics if `k > p`.
    pub fn wire_order_after(&self, k: usize) -> Permutation {
        let mut slot_of: Vec<u8> = (1..=self.ell).collect();
        for p in &self.pairs[..k] {
            for s in slot_of.iter_mut() {
                if p.contains(*s) {
                    *s = p.a + p.b - *s;
                }
            }
        }
        Permutation { images: slot_of }
    }

    /// For every point, the sorted global line labels passing through it.
    pub fn crossing_points(&self) -> Result<Vec<Vec<u8>>> {
        self.validate()?;
        let mut line_at: Vec<u8> = (0..=self.ell).collect();
        let mut points = Vec::with_capacity(self.len());
        for p in &self.pairs {
            let (a, b) = (usize::from(p.a), usize::from(p.b));
            let mut lines = line_at[a..=b].to_vec();
            lines.sort_unstable();
            points.push(lines);
            line_at[a..=b].reverse();
        }
        Ok(points)
    }

    /// Deterministic ASCII picture: one row per slot (slot 1 on top), one
    /// three-column block per point, `o` on every wire through the point and
    /// `|` joining them. Labels give the line in each slot before and after.
    pub fn render_ascii(&self) -> Result<String> {
        self.validate()?;
        let ell = usize::from(self.ell);
        let width = ell.to_string().len();
        let final_order = self.wire_order_after(self.len()).inverse();
        let mut out = String::new();
        for slot in 1..=ell {
            let s = slot as u8;
            out.push_str(&format!("{slot:>width$} -"));
            for p in &self.pairs {
                out.push_str(if p.contains(s) { "-o-" } else { "---" });
            }
            out.push_str(&format!("- {}\n", final_order.apply(s)));
            if slot < ell {
                out.push_str(&" ".repeat(width + 2));
                for p in &self.pairs {
                    out.push_str(if p.a <= s && s < p.b { " | " } else { "   " });
                }
                let trimmed = out.trim_end_matches(' ').len();
                out.truncate(trimmed);
                out.push('\n');
            }
        }
        Ok(out)
    }

    /// One byte per pair; requires `ℓ <= 15`.
    pub fn pack(&self) -> Result<Vec<u8>> {
        if self.ell > MAX_PACKED_WIRES {
            return Err(Error::WireCount(self.ell.into()));
        }
        Ok(self.pairs.iter().map(|p| p.pack()).collect())
    }

    pub fn from_packed(ell: u8, bytes: &[u8]) -> Result<Self> {
        let pairs = bytes
            .iter()
            .map(|&byte| LefschetzPair::new(byte >> 4, byte & 0x0f))
            .collect::<Result<Vec<_>>>()?;
        Diagram::new(ell, pairs)
    }
}

/// Crossing-matrix sweep: which global line sits in each slot, and which
/// line pairs have met so far.
#[derive(Clone, Debug)]
pub(crate) struct Sweep {
    ell: u8,
    line_at: Vec<u8>,
    crossed: Vec<u64>,
}

impl Sweep {
    pub(crate) fn new(ell: u8) -> Self {
        Sweep {
            ell,
            line_at: (0..=ell).collect(),
            crossed: vec![0; usize::from(ell) + 1],
        }
    }

    /// Applies a point, or returns the first line pair through it that has
    /// already crossed.
    pub(crate) fn cross(&mut self, p: LefschetzPair) -> std::result::Result<(), (u8, u8)> {
        let (a, b) = (usize::from(p.a), usize::from(p.b));
        if b > usize::from(self.ell) {
            return Err((self.line_at[a], 0));
        }
        for s in a..=b {
            let x = self.line_at[s];
            for t in s + 1..=b {
                let y = self.line_at[t];
                if self.crossed[usize::from(x)] & (1u64 << (y - 1)) != 0 {
                    return Err((x.min(y), x.max(y)));
                }
            }
        }
        for s in a..=b {
            let x = self.line_at[s];
            for t in s + 1..=b {
                let y = self.line_at[t];
                self.crossed[usize::from(x)] |= 1u64 << (y - 1);
                self.crossed[usize::from(y)] |= 1u64 << (x - 1);
            }
        }
        self.line_at[a..=b].reverse();
        Ok(())
    }

    pub(crate) fn first_uncrossed(&self) -> Option<(u8, u8)> {
        for x in 1..=self.ell {
            for y in x + 1..=self.ell {
                if self.crossed[usize::from(x)] & (1u64 << (y - 1)) == 0 {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l={}:", self.ell)?;
        if !self.pairs.is_empty() {
            f.write_str(" ")?;
        }
        for p in &self.pairs {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parser::new(s).diagram()
    }
}

/// Parses `l=<ℓ>: (a1,b1)(a2,b2)...`. Whitespace between tokens is ignored.
pub fn parse_diagram(text: &str) -> Result<Diagram> {
    text.parse()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, msg: impl fmt::Display) -> Error {
        Error::syntax(self.pos + 1, msg)
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format_args!("expected `{}`", c as char)))
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::syntax(start + 1, "number too large"))
    }

    fn diagram(&mut self) -> Result<Diagram> {
        self.skip_ws();
        if self.src.get(self.pos).map(u8::to_ascii_lowercase) != Some(b'l') {
            return Err(self.err("expected `l=`"));
        }
        self.pos += 1;
        self.expect(b'=')?;
        let ell = self.number()?;
        if ell == 0 || ell > u32::from(MAX_WIRES) {
            return Err(Error::WireCount(ell));
        }
        let ell = ell as u8;
        self.expect(b':')?;
        let mut pairs = Vec::new();
        loop {
            self.skip_ws();
            if self.pos == self.src.len() {
                break;
            }
            self.expect(b'(')?;
            let a = self.number()?;
            self.expect(b',')?;
            let b = self.number()?;
            self.expect(b')')?;
            if a == 0 || a >= b {
                return Err(Error::PairOrder { a, b });
            }
            if b > u32::from(ell) {
                return Err(Error::PairOutOfRange {
                    a: a.min(255) as u8,
                    b: b.min(255) as u8,
                    ell,
                });
            }
            pairs.push(LefschetzPair::new_unchecked(a as u8, b as u8));
        }
        Ok(Diagram::from_parts_unchecked(ell, pairs))
    }
}
