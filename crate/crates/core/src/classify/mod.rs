//! Exhaustive enumeration of commutation classes for a signature and their
//! partition under chosen sets of moves.

pub mod enumerate;
pub mod orbit;
pub mod report;
pub mod store;
pub mod union_find;

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use enumerate::{enumerate_classes, enumerate_classes_with, EnumerateOptions, EnumerateStats};
pub use orbit::{orbit, OrbitGenerator};
pub use report::{lattice_report, table, LatticeBucket, TableReport, PUBLISHED_EIGHT_LINE_TABLE};
pub use store::ClassStore;
pub use union_find::UnionFind;

use crate::actions::{mu_image_into, DeltaCatalog, DeltaConfig, DeltaPolicy, DeltaTag};
use crate::diagram::{LefschetzPair, MAX_PACKED_WIRES};
use crate::error::{Error, Result};
use crate::trace::{self, Canonicalizer};

/// Resource limits for long searches. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_bytes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub(crate) fn deadline(&self, started: Instant) -> Option<Instant> {
        self.max_time.map(|t| started + t)
    }
}

/// Which moves join classes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MoveSet {
    pub sigma: bool,
    pub tau: bool,
    pub mu: bool,
    pub delta: bool,
}

impl MoveSet {
    pub const NONE: MoveSet = MoveSet {
        sigma: false,
        tau: false,
        mu: false,
        delta: false,
    };
    pub const ALL: MoveSet = MoveSet {
        sigma: true,
        tau: true,
        mu: true,
        delta: true,
    };

    /// Row `r` of the table: bits `σ τ μ Δ` from high to low.
    pub fn from_row(r: usize) -> Self {
        MoveSet {
            sigma: r & 8 != 0,
            tau: r & 4 != 0,
            mu: r & 2 != 0,
            delta: r & 1 != 0,
        }
    }

    pub fn row(self) -> usize {
        usize::from(self.sigma) << 3 | usize::from(self.tau) << 2 | usize::from(self.mu) << 1 | usize::from(self.delta)
    }

    pub fn all_subsets() -> impl Iterator<Item = MoveSet> {
        (0..16).map(MoveSet::from_row)
    }

    /// Whether every move of `self` is also in `other`.
    pub fn is_subset_of(self, other: MoveSet) -> bool {
        self.row() & !other.row() == 0
    }
}

impl std::str::FromStr for MoveSet {
    type Err = Error;

    /// Comma-separated names from `sigma, tau, mu, delta`; `none` or the
    /// empty string for no moves, `all` for every move.
    fn from_str(s: &str) -> Result<Self> {
        let mut m = MoveSet::NONE;
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok {
                "sigma" => m.sigma = true,
                "tau" => m.tau = true,
                "mu" => m.mu = true,
                "delta" => m.delta = true,
                "all" => m = MoveSet::ALL,
                "none" => {}
                _ => return Err(Error::Parameter(format!("unknown move `{tok}`"))),
            }
        }
        Ok(m)
    }
}

impl fmt::Display for MoveSet {
    /// Table-style `+`/`-` flags for `σ τ μ Δ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |b: bool| if b { '+' } else { '-' };
        write!(f, "{} {} {} {}", c(self.sigma), c(self.tau), c(self.mu), c(self.delta))
    }
}

/// All move edges between the classes of a store, computed once.
#[derive(Clone, Debug, Default)]
pub struct MoveGraph {
    classes: usize,
    tau: Vec<u32>,
    mu: Vec<u32>,
    sigma: Vec<(u32, u32)>,
    delta: Vec<(u32, u32, DeltaTag)>,
}

struct ClassEdges {
    tau: u32,
    mu: u32,
    sigma: Vec<u32>,
    delta: Vec<(u32, DeltaTag)>,
}

impl MoveGraph {
    /// Images of every class under `τ`, `μ`, the `σ` neighbour relation and
    /// every `Δ` occurrence found up to `≡` (tagged, so the literal policy
    /// and the strict pattern range can be selected afterwards).
    pub fn build(store: &ClassStore) -> Result<Self> {
        if store.ell() > MAX_PACKED_WIRES {
            return Err(Error::WireCount(u32::from(store.ell())));
        }
        let catalog = DeltaCatalog::new(
            store.ell(),
            DeltaConfig {
                policy: DeltaPolicy::Equiv,
                degenerate_ends: true,
            },
        );
        let lookup = |pairs: &[LefschetzPair]| -> Result<u32> {
            store
                .index_of(pairs)
                .map(|i| i as u32)
                .ok_or_else(|| Error::Cache("a move left the store; the store is incomplete".into()))
        };
        let per_class: Vec<Result<ClassEdges>> = (0..store.len())
            .into_par_iter()
            .map_init(
                || (Canonicalizer::new(), Vec::new(), Vec::new(), Vec::new()),
                |(canon, pairs, scratch, image), i| {
                    store.pairs_into(i, pairs);
                    if pairs.is_empty() {
                        return Ok(ClassEdges {
                            tau: i as u32,
                            mu: i as u32,
                            sigma: Vec::new(),
                            delta: Vec::new(),
                        });
                    }
                    scratch.clear();
                    scratch.extend(pairs.iter().rev().copied());
                    canon.canonicalize_into(scratch, image);
                    let tau = lookup(image)?;
                    mu_image_into(pairs, scratch);
                    canon.canonicalize_into(scratch, image);
                    let mu = lookup(image)?;
                    let mut sigma = Vec::new();
                    for pos in trace::front_positions(pairs) {
                        scratch.clear();
                        scratch.extend(pairs[..pos].iter().copied());
                        scratch.extend(pairs[pos + 1..].iter().copied());
                        scratch.push(pairs[pos].reflected(store.ell()));
                        canon.canonicalize_into(scratch, image);
                        sigma.push(lookup(image)?);
                    }
                    sigma.sort_unstable();
                    sigma.dedup();
                    let mut delta = Vec::new();
                    for (tag, word) in catalog.tagged_neighbors(pairs, canon) {
                        delta.push((lookup(&word)?, tag));
                    }
                    Ok(ClassEdges { tau, mu, sigma, delta })
                },
            )
            .collect();
        let mut graph = MoveGraph {
            classes: store.len(),
            ..MoveGraph::default()
        };
        for (i, edges) in per_class.into_iter().enumerate() {
            let edges = edges?;
            let i = i as u32;
            graph.tau.push(edges.tau);
            graph.mu.push(edges.mu);
            graph.sigma.extend(edges.sigma.into_iter().map(|j| (i, j)));
            graph.delta.extend(edges.delta.into_iter().map(|(j, tag)| (i, j, tag)));
        }
        Ok(graph)
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn tau_image(&self, i: usize) -> usize {
        self.tau[i] as usize
    }

    pub fn mu_image(&self, i: usize) -> usize {
        self.mu[i] as usize
    }

    pub fn sigma_neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.sigma.partition_point(|&(a, _)| (a as usize) < i);
        self.sigma[start..]
            .iter()
            .take_while(move |&&(a, _)| a as usize == i)
            .map(|&(_, b)| b as usize)
    }

    pub fn delta_neighbors(&self, i: usize, config: DeltaConfig) -> impl Iterator<Item = usize> + '_ {
        let start = self.delta.partition_point(|&(a, _, _)| (a as usize) < i);
        self.delta[start..]
            .iter()
            .take_while(move |&&(a, _, _)| a as usize == i)
            .filter(move |&&(_, _, tag)| tag.admitted_by(config))
            .map(|&(_, b, _)| b as usize)
    }

    pub fn edge_counts(&self) -> (usize, usize) {
        (self.sigma.len(), self.delta.len())
    }

    /// Connected components under the enabled moves.
    pub fn partition(&self, moves: MoveSet, config: DeltaConfig) -> Partition {
        let mut uf = UnionFind::new(self.classes);
        if moves.tau {
            for (i, &j) in self.tau.iter().enumerate() {
                uf.union(i as u32, j);
            }
        }
        if moves.mu {
            for (i, &j) in self.mu.iter().enumerate() {
                uf.union(i as u32, j);
            }
        }
        if moves.sigma {
            for &(i, j) in &self.sigma {
                uf.union(i, j);
            }
        }
        if moves.delta {
            for &(i, j, tag) in &self.delta {
                if tag.admitted_by(config) {
                    uf.union(i, j);
                }
            }
        }
        Partition {
            count: uf.components(),
            representative: uf.least_members(),
        }
    }
}

/// Components of the class graph; each class maps to the least index of
/// its component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub count: usize,
    pub representative: Vec<u32>,
}

impl Partition {
    /// Least member of every component, ascending.
    pub fn representatives(&self) -> Vec<usize> {
        self.representative
            .iter()
            .enumerate()
            .filter(|&(i, &r)| i as u32 == r)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn members(&self, rep: usize) -> Vec<usize> {
        self.representative
            .iter()
            .enumerate()
            .filter(|&(_, &r)| r as usize == rep)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Builds the move graph and partitions it in one go.
pub fn classify(store: &ClassStore, moves: MoveSet, config: DeltaConfig) -> Result<Partition> {
    Ok(MoveGraph::build(store)?.partition(moves, config))
}
