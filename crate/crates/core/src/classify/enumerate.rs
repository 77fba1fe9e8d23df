use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::store::ClassStore;
use super::Budget;
use crate::diagram::{LefschetzPair, Signature, MAX_PACKED_WIRES};
use crate::error::{Error, Result};
use crate::trace::extends_lex_normal;

const SHARD_MAGIC: &[u8; 8] = b"WDSHARD\0";
const SHARD_DEPTH: usize = 2;

/// Where to keep per-shard results so an interrupted run can resume.
#[derive(Clone, Debug, Default)]
pub struct EnumerateOptions {
    pub budget: Budget,
    pub checkpoint_dir: Option<PathBuf>,
}

/// Counters from one enumeration.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumerateStats {
    pub shards: usize,
    pub resumed_shards: usize,
    pub nodes: u64,
}

pub fn enumerate_classes(signature: &Signature, ell: u8) -> Result<ClassStore> {
    enumerate_classes_with(signature, ell, &EnumerateOptions::default()).map(|(s, _)| s)
}

/// Every `≡`-class of valid diagrams with the given signature, as its
/// lexicographically least word.
///
/// The search extends words one pair at a time. A pair is admissible when
/// the lines in its slots have not met yet (they are still in increasing
/// order), a point of its multiplicity is left, and the word stays in lex
/// normal form. The last test is exact, so every leaf is a distinct class
/// representative and no filtering is needed afterwards.
///
/// Work is split by the first two pairs and the shards run on the current
/// rayon pool. Shards are emitted in lexicographic order, so the
/// concatenation is already sorted.
pub fn enumerate_classes_with(
    signature: &Signature,
    ell: u8,
    opts: &EnumerateOptions,
) -> Result<(ClassStore, EnumerateStats)> {
    if ell == 0 || ell > MAX_PACKED_WIRES {
        return Err(Error::WireCount(u32::from(ell)));
    }
    if !signature.satisfies_suip(ell) {
        return Err(Error::Signature(format!(
            "{signature} does not account for all C({ell},2) crossings"
        )));
    }
    if signature.max_multiplicity().is_some_and(|k| k > ell) {
        return Err(Error::Signature(format!("{signature} has a point larger than {ell} lines")));
    }
    let candidates: Vec<LefschetzPair> = (1..ell)
        .flat_map(|a| (a + 1..=ell).map(move |b| LefschetzPair::new_unchecked(a, b)))
        .filter(|p| signature.count(p.multiplicity() as u8) > 0)
        .collect();
    let root = Search::root(ell, signature, &candidates);
    let mut prefixes = Vec::new();
    root.clone().collect_prefixes(SHARD_DEPTH.min(root.target), &mut prefixes);

    let dir = match &opts.checkpoint_dir {
        Some(base) => {
            let d = base.join(format!("shards-l{ell}-{}", signature_key(signature)));
            fs::create_dir_all(&d)?;
            Some(d)
        }
        None => None,
    };
    let stop = AtomicBool::new(false);
    let nodes = AtomicU64::new(0);
    let bytes = AtomicU64::new(0);
    let started = Instant::now();
    let results: Vec<Result<(Vec<u8>, bool)>> = prefixes
        .par_iter()
        .enumerate()
        .map(|(k, prefix)| {
            if let Some(d) = &dir {
                if let Some(codes) = read_shard(&shard_path(d, k), prefix)? {
                    bytes.fetch_add(codes.len() as u64, Ordering::Relaxed);
                    return Ok((codes, true));
                }
            }
            if stop.load(Ordering::Relaxed) {
                return Err(Error::BudgetExceeded("enumeration stopped".into()));
            }
            let mut search = root.clone();
            for &p in prefix {
                search.push(p);
            }
            search.stop = Some(&stop);
            search.deadline = opts.budget.deadline(started);
            search.run();
            nodes.fetch_add(search.nodes, Ordering::Relaxed);
            if search.stopped {
                stop.store(true, Ordering::Relaxed);
                return Err(Error::BudgetExceeded(format!(
                    "time budget reached after {:.1}s",
                    started.elapsed().as_secs_f64()
                )));
            }
            let total = bytes.fetch_add(search.out.len() as u64, Ordering::Relaxed) + search.out.len() as u64;
            if opts.budget.max_bytes.is_some_and(|m| total > m) {
                stop.store(true, Ordering::Relaxed);
                return Err(Error::BudgetExceeded(format!("store would exceed {total} bytes")));
            }
            if let Some(d) = &dir {
                write_shard(&shard_path(d, k), prefix, &search.out)?;
            }
            Ok((search.out, false))
        })
        .collect();
    let mut codes = Vec::new();
    let mut stats = EnumerateStats {
        shards: prefixes.len(),
        resumed_shards: 0,
        nodes: nodes.load(Ordering::Relaxed),
    };
    let mut first_err = None;
    for r in results {
        match r {
            Ok((c, resumed)) => {
                codes.extend(c);
                stats.resumed_shards += usize::from(resumed);
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    if let Some(e) = first_err {
        return Err(e);
    }
    if root.target == 0 {
        return Ok((ClassStore::from_codes(ell, signature.clone(), Vec::new())?, stats));
    }
    Ok((ClassStore::from_codes(ell, signature.clone(), codes)?, stats))
}

/// File-name-safe form of a signature, `2^13 3^3` ↦ `2x13-3x3`.
pub fn signature_key(signature: &Signature) -> String {
    signature
        .iter()
        .map(|(k, n)| format!("{k}x{n}"))
        .collect::<Vec<_>>()
        .join("-")
}

fn shard_path(dir: &Path, k: usize) -> PathBuf {
    dir.join(format!("shard-{k:05}.bin"))
}

/// Shard file: magic, prefix length and bytes, record bytes length, records.
fn write_shard(path: &Path, prefix: &[LefschetzPair], codes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(SHARD_MAGIC)?;
        f.write_all(&[prefix.len() as u8])?;
        f.write_all(&prefix.iter().map(|p| p.pack()).collect::<Vec<_>>())?;
        f.write_all(&(codes.len() as u64).to_le_bytes())?;
        f.write_all(codes)?;
        f.sync_all()?;
    }
    fs::rename(tmp, path)?;
    Ok(())
}

fn read_shard(path: &Path, prefix: &[LefschetzPair]) -> Result<Option<Vec<u8>>> {
    let Ok(data) = fs::read(path) else {
        return Ok(None);
    };
    let bad = || Error::Cache(format!("{}: corrupt shard", path.display()));
    let header = 8 + 1 + prefix.len() + 8;
    if data.len() < header || &data[..8] != SHARD_MAGIC || usize::from(data[8]) != prefix.len() {
        return Err(bad());
    }
    if data[9..9 + prefix.len()].iter().zip(prefix).any(|(&b, p)| b != p.pack()) {
        return Err(bad());
    }
    let len_at = 9 + prefix.len();
    let len = u64::from_le_bytes(data[len_at..len_at + 8].try_into().expect("8 bytes")) as usize;
    if data.len() != header + len {
        return Err(bad());
    }
    Ok(Some(data[header..].to_vec()))
}

#[derive(Clone)]
struct Search<'a> {
    ell: usize,
    target: usize,
    candidates: &'a [LefschetzPair],
    /// line in each slot, 1-based
    line_at: [u8; 16],
    /// points left per multiplicity
    remaining: [u32; 17],
    word: Vec<LefschetzPair>,
    out: Vec<u8>,
    nodes: u64,
    stop: Option<&'a AtomicBool>,
    deadline: Option<Instant>,
    stopped: bool,
}

impl<'a> Search<'a> {
    fn root(ell: u8, signature: &Signature, candidates: &'a [LefschetzPair]) -> Self {
        let mut line_at = [0u8; 16];
        for (s, slot) in line_at.iter_mut().enumerate() {
            *slot = s as u8;
        }
        let mut remaining = [0u32; 17];
        for (k, n) in signature.iter() {
            remaining[usize::from(k)] = n;
        }
        Search {
            ell: usize::from(ell),
            target: signature.points(),
            candidates,
            line_at,
            remaining,
            word: Vec::with_capacity(signature.points()),
            out: Vec::new(),
            nodes: 0,
            stop: None,
            deadline: None,
            stopped: false,
        }
    }

    #[inline]
    fn admissible(&self, p: LefschetzPair) -> bool {
        let (a, b) = (usize::from(p.a()), usize::from(p.b()));
        self.remaining[b - a + 1] > 0
            && self.line_at[a..=b].windows(2).all(|w| w[0] < w[1])
            && extends_lex_normal(&self.word, p)
    }

    fn push(&mut self, p: LefschetzPair) {
        let (a, b) = (usize::from(p.a()), usize::from(p.b()));
        self.line_at[a..=b].reverse();
        self.remaining[b - a + 1] -= 1;
        self.word.push(p);
    }

    fn pop(&mut self) {
        let p = self.word.pop().expect("non-empty");
        let (a, b) = (usize::from(p.a()), usize::from(p.b()));
        self.line_at[a..=b].reverse();
        self.remaining[b - a + 1] += 1;
    }

    /// Largest set of lines that are pairwise still uncrossed: a longest
    /// increasing run of `line_at`, as a subsequence.
    fn widest_pencil(&self) -> usize {
        let mut tails: [u8; 16] = [0; 16];
        let mut len = 0;
        for &x in &self.line_at[1..=self.ell] {
            let k = tails[..len].partition_point(|&t| t < x);
            tails[k] = x;
            if k == len {
                len += 1;
            }
        }
        len
    }

    fn largest_remaining(&self) -> usize {
        (2..=self.ell).rev().find(|&k| self.remaining[k] > 0).unwrap_or(0)
    }

    fn collect_prefixes(mut self, depth: usize, out: &mut Vec<Vec<LefschetzPair>>) {
        if self.word.len() == depth {
            out.push(self.word.clone());
            return;
        }
        for &p in self.candidates {
            if self.admissible(p) {
                self.push(p);
                self.clone().collect_prefixes(depth, out);
                self.pop();
            }
        }
    }

    fn run(&mut self) {
        self.nodes += 1;
        if self.nodes & 0xffff == 0 {
            let late = self.deadline.is_some_and(|d| Instant::now() >= d);
            let told = self.stop.is_some_and(|s| s.load(Ordering::Relaxed));
            if late || told {
                self.stopped = true;
            }
        }
        if self.stopped {
            return;
        }
        if self.word.len() == self.target {
            self.out.extend(self.word.iter().map(|p| p.pack()));
            return;
        }
        if self.widest_pencil() < self.largest_remaining() {
            return;
        }
        for &p in self.candidates {
            if self.admissible(p) {
                self.push(p);
                self.run();
                self.pop();
                if self.stopped {
                    return;
                }
            }
        }
    }
}
