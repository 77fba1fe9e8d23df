//! Independent oracles shared by the integration suites. Nothing here calls
//! the library's enumeration, canonical form or move code; diagrams are
//! plain `(a, b)` tuple lists.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wirediag::pi1::Word;
use wirediag::{Diagram, LefschetzPair, Signature};

pub type Raw = Vec<(u8, u8)>;

pub fn pair(a: u8, b: u8) -> LefschetzPair {
    LefschetzPair::new(a, b).unwrap()
}

pub fn to_diagram(ell: u8, raw: &[(u8, u8)]) -> Diagram {
    Diagram::from_tuples(ell, raw).unwrap()
}

pub fn to_raw(d: &Diagram) -> Raw {
    d.pairs().iter().map(|p| (p.a(), p.b())).collect()
}

pub fn signature_of(raw: &[(u8, u8)]) -> Signature {
    let mut counts: BTreeMap<u8, u32> = BTreeMap::new();
    for &(a, b) in raw {
        *counts.entry(b - a + 1).or_default() += 1;
    }
    Signature::from_counts(counts).unwrap()
}

/// Extends `prefix` to a valid diagram by bubble-sorting the slot contents
/// into descending order with adjacent swaps of lines that have not met.
pub fn complete(ell: u8, prefix: &[LefschetzPair]) -> Diagram {
    let mut line_at: Vec<u8> = (0..=ell).collect();
    for p in prefix {
        line_at[usize::from(p.a())..=usize::from(p.b())].reverse();
    }
    let mut pairs = prefix.to_vec();
    while let Some(s) = (1..usize::from(ell)).find(|&s| line_at[s] < line_at[s + 1]) {
        line_at.swap(s, s + 1);
        pairs.push(pair(s as u8, s as u8 + 1));
    }
    Diagram::new(ell, pairs).unwrap()
}

/// The tuples of the commutation family and the cyclic relation for a
/// pattern at `(c, i, t)`.
pub fn pattern_relations(c: u8, i: u8, t: u8) -> Vec<Vec<Word>> {
    let g = Word::generator;
    let mut out: Vec<Vec<Word>> = (0..=t).filter(|&k| k != i).map(|k| vec![g(c + i), g(c + k)]).collect();
    out.push((c..=c + t).map(g).collect());
    out
}

/// Every valid pair list on `ell` lines, of any signature: each point
/// reverses a block of slots whose lines have pairwise not met yet, until
/// the order is reversed.
pub fn all_raw_diagrams(ell: u8) -> Vec<Raw> {
    fn go(ell: usize, line_at: &mut Vec<usize>, cur: &mut Raw, out: &mut Vec<Raw>) {
        if (1..ell).all(|s| line_at[s] > line_at[s + 1]) {
            out.push(cur.clone());
            return;
        }
        for a in 1..ell {
            let mut b = a;
            while b < ell && line_at[b] < line_at[b + 1] {
                b += 1;
                line_at[a..=b].reverse();
                cur.push((a as u8, b as u8));
                go(ell, line_at, cur, out);
                cur.pop();
                line_at[a..=b].reverse();
            }
        }
    }
    let mut out = Vec::new();
    if ell == 1 {
        out.push(Vec::new());
        return out;
    }
    let mut line_at: Vec<usize> = (0..=usize::from(ell)).collect();
    go(usize::from(ell), &mut line_at, &mut Vec::new(), &mut out);
    out
}

/// Raw diagrams grouped by signature.
pub fn raw_by_signature(ell: u8) -> BTreeMap<Signature, Vec<Raw>> {
    let mut out: BTreeMap<Signature, Vec<Raw>> = BTreeMap::new();
    for r in all_raw_diagrams(ell) {
        out.entry(signature_of(&r)).or_default().push(r);
    }
    out
}

fn disjoint(p: (u8, u8), q: (u8, u8)) -> bool {
    p.1 < q.0 || q.1 < p.0
}

fn reflect(ell: u8, (a, b): (u8, u8)) -> (u8, u8) {
    (ell + 1 - b, ell + 1 - a)
}

pub fn raw_tau(r: &[(u8, u8)]) -> Raw {
    r.iter().rev().copied().collect()
}

pub fn raw_sigma(ell: u8, r: &[(u8, u8)]) -> Raw {
    let mut out = r[1..].to_vec();
    out.push(reflect(ell, r[0]));
    out
}

/// Tracks the first line through the list and sorts points into those
/// above it, on it and below it.
pub fn raw_mu(r: &[(u8, u8)]) -> Raw {
    let (mut plus, mut zero, mut minus) = (Vec::new(), Vec::new(), Vec::new());
    let mut x = 1u8;
    for &(a, b) in r {
        if a <= x && x <= b {
            zero.push((a, b));
            x = a + b - x;
        } else if x > b {
            minus.push((a, b));
        } else {
            plus.push((a, b));
        }
    }
    let mut out: Raw = plus.into_iter().map(|(a, b)| (a - 1, b - 1)).collect();
    out.extend(zero.into_iter().rev());
    out.extend(minus.into_iter().map(|(a, b)| (a + 1, b + 1)));
    out
}

/// `(above, below)` runs for every `(c, i, t)` on `ell` lines, written out
/// from the definition with offset `c`.
pub fn delta_pairs(ell: u8, degenerate_ends: bool) -> Vec<(Raw, Raw)> {
    let mut out = Vec::new();
    for t in 2..ell {
        for c in 1..=ell - t {
            for i in 0..=t {
                if !degenerate_ends && (i == 0 || i == t) {
                    continue;
                }
                let mut above: Raw = (i..t).map(|k| (c + k, c + k + 1)).collect();
                above.push((c, c + t - 1));
                above.extend((t - i..t).rev().map(|k| (c + k, c + k + 1)));
                let mut below: Raw = (0..i).rev().map(|k| (c + k, c + k + 1)).collect();
                below.push((c + 1, c + t));
                below.extend((0..t - i).map(|k| (c + k, c + k + 1)));
                out.push((above, below));
            }
        }
    }
    out
}

fn replace_runs(r: &[(u8, u8)], from: &[(u8, u8)], to: &[(u8, u8)], out: &mut Vec<Raw>) {
    if from.len() > r.len() {
        return;
    }
    for s in 0..=r.len() - from.len() {
        if &r[s..s + from.len()] == from {
            let mut n = r[..s].to_vec();
            n.extend_from_slice(to);
            n.extend_from_slice(&r[s + from.len()..]);
            out.push(n);
        }
    }
}

fn delta_images(r: &[(u8, u8)], patterns: &[(Raw, Raw)]) -> Vec<Raw> {
    let mut out = Vec::new();
    for (above, below) in patterns {
        replace_runs(r, above, below, &mut out);
        replace_runs(r, below, above, &mut out);
    }
    out
}

fn swaps(r: &[(u8, u8)]) -> Vec<Raw> {
    (0..r.len().saturating_sub(1))
        .filter(|&k| disjoint(r[k], r[k + 1]))
        .map(|k| {
            let mut n = r.to_vec();
            n.swap(k, k + 1);
            n
        })
        .collect()
}

/// Component label of every node, treating each move as an undirected
/// edge.
fn components(nodes: &[Raw], neighbors: impl Fn(&Raw) -> Vec<Raw>) -> Vec<usize> {
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let index: HashMap<&Raw, usize> = nodes.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    for (i, r) in nodes.iter().enumerate() {
        for n in neighbors(r) {
            let j = *index.get(&n).expect("move left the signature");
            let (a, b) = (root(&mut parent, i), root(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut label = HashMap::new();
    (0..nodes.len())
        .map(|i| {
            let r = root(&mut parent, i);
            let next = label.len();
            *label.entry(r).or_insert(next)
        })
        .collect()
}

/// Moves enabled in an oracle run: `[σ, τ, μ, Δ]`.
pub type Flags = [bool; 4];

pub fn flags_of_row(r: usize) -> Flags {
    [r & 8 != 0, r & 4 != 0, r & 2 != 0, r & 1 != 0]
}

/// Components of the raw diagrams of one signature under adjacent disjoint
/// swaps plus the enabled moves, with `Δ` applied to contiguous runs of any
/// raw word.
pub fn raw_component_count(ell: u8, raws: &[Raw], flags: Flags, degenerate_ends: bool) -> usize {
    let patterns = delta_pairs(ell, degenerate_ends);
    let comp = components(raws, |r| {
        let mut out = swaps(r);
        if r.is_empty() {
            return out;
        }
        let [s, t, m, d] = flags;
        if s {
            out.push(raw_sigma(ell, r));
        }
        if t {
            out.push(raw_tau(r));
        }
        if m {
            out.push(raw_mu(r));
        }
        if d {
            out.extend(delta_images(r, &patterns));
        }
        out
    });
    comp.iter().max().map_or(0, |m| m + 1)
}

/// Commutation classes as sorted lists of raw members, each class led by
/// its least word.
pub fn raw_classes(raws: &[Raw]) -> Vec<Vec<Raw>> {
    let comp = components(raws, |r| swaps(r));
    let mut by: BTreeMap<usize, Vec<Raw>> = BTreeMap::new();
    for (r, c) in raws.iter().zip(comp) {
        by.entry(c).or_default().push(r.clone());
    }
    let mut out: Vec<Vec<Raw>> = by
        .into_values()
        .map(|mut v| {
            v.sort();
            v
        })
        .collect();
    out.sort();
    out
}

/// Like [`raw_component_count`], but `Δ` only rewrites contiguous runs of
/// the least word of each commutation class.
pub fn literal_component_count(ell: u8, raws: &[Raw], flags: Flags, degenerate_ends: bool) -> usize {
    let classes = raw_classes(raws);
    let least: HashMap<&Raw, &Raw> = classes
        .iter()
        .flat_map(|c| c.iter().map(move |r| (r, &c[0])))
        .collect();
    let patterns = delta_pairs(ell, degenerate_ends);
    let comp = components(raws, |r| {
        let mut out = swaps(r);
        if r.is_empty() {
            return out;
        }
        let [s, t, m, d] = flags;
        if s {
            out.push(raw_sigma(ell, r));
        }
        if t {
            out.push(raw_tau(r));
        }
        if m {
            out.push(raw_mu(r));
        }
        if d && least[r] == r {
            out.extend(delta_images(r, &patterns));
        }
        out
    });
    comp.iter().max().map_or(0, |m| m + 1)
}

/// Incidence sets of a raw diagram, by simulation.
pub fn raw_points(ell: u8, r: &[(u8, u8)]) -> Vec<Vec<u8>> {
    let mut line_at: Vec<u8> = (0..=ell).collect();
    let mut pts = Vec::new();
    for &(a, b) in r {
        let mut lines: Vec<u8> = line_at[usize::from(a)..=usize::from(b)].to_vec();
        lines.sort();
        pts.push(lines);
        line_at[usize::from(a)..=usize::from(b)].reverse();
    }
    pts
}

/// Least sorted point list over all relabelings, by trying every
/// permutation (`ell ≤ 8`).
pub fn brute_lattice(ell: u8, points: &[Vec<u8>]) -> Vec<Vec<u8>> {
    fn perms(n: usize) -> Vec<Vec<u8>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for k in 0..=p.len() {
                let mut q = p.clone();
                q.insert(k, n as u8);
                out.push(q);
            }
        }
        out
    }
    perms(usize::from(ell))
        .into_iter()
        .map(|map| {
            let mut pts: Vec<Vec<u8>> = points
                .iter()
                .map(|p| {
                    let mut q: Vec<u8> = p.iter().map(|&x| map[usize::from(x) - 1]).collect();
                    q.sort();
                    q
                })
                .collect();
            pts.sort();
            pts
        })
        .min()
        .unwrap_or_default()
}

/// Fixed seed for every sampled suite.
pub const SEED: u64 = 0x5eed_2718;

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

/// Deterministic proptest configuration with `cases` cases.
pub fn proptest_config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

/// A random valid diagram: repeatedly reverses a random block of slots
/// holding an increasing run of lines, until the order is reversed.
pub fn random_raw(ell: u8, rng: &mut impl Rng) -> Raw {
    let ell = usize::from(ell);
    let mut line_at: Vec<usize> = (0..=ell).collect();
    let mut out = Vec::new();
    loop {
        let starts: Vec<usize> = (1..ell).filter(|&s| line_at[s] < line_at[s + 1]).collect();
        if starts.is_empty() {
            return out;
        }
        let a = starts[rng.gen_range(0..starts.len())];
        let mut b = a + 1;
        while b < ell && line_at[b] < line_at[b + 1] && rng.gen_bool(0.4) {
            b += 1;
        }
        line_at[a..=b].reverse();
        out.push((a as u8, b as u8));
    }
}

pub fn random_diagram(ell: u8, rng: &mut impl Rng) -> Diagram {
    to_diagram(ell, &random_raw(ell, rng))
}

/// Diagrams on a line count drawn from `ells`.
pub fn arb_diagram(ells: RangeInclusive<u8>) -> impl Strategy<Value = Diagram> {
    (ells, any::<u64>()).prop_map(|(ell, seed)| random_diagram(ell, &mut ChaCha8Rng::seed_from_u64(seed)))
}
