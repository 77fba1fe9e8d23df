use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{enumerate_classes_with, ClassStore, EnumerateOptions, MoveGraph, MoveSet, Partition};
use crate::actions::{DeltaConfig, DeltaPolicy};
use crate::diagram::Signature;
use crate::error::Result;
use crate::lattice::{canonical_lattice, lattice_of, LatticeCanonicalForm};
use crate::pi1::{diagram_fingerprint, Conventions, FiniteGroup, GroupFingerprint, Space};

/// Published counts for `[2¹³ 3³ 4¹]` on eight lines, indexed by
/// [`MoveSet::row`].
pub const PUBLISHED_EIGHT_LINE_TABLE: [usize; 16] = [
    354880, 114379, 22180, 6104, 177440, 54539, 11090, 3076, 5060, 772, 116, 22, 2558, 398, 116, 22,
];

/// Every `Δ` configuration the table is computed under.
pub fn delta_configs() -> [DeltaConfig; 4] {
    let mk = |policy, degenerate_ends| DeltaConfig {
        policy,
        degenerate_ends,
    };
    [
        mk(DeltaPolicy::Equiv, true),
        mk(DeltaPolicy::Literal, true),
        mk(DeltaPolicy::Equiv, false),
        mk(DeltaPolicy::Literal, false),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigCounts {
    pub delta: DeltaConfig,
    /// Component counts indexed by [`MoveSet::row`].
    pub counts: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableReport {
    pub signature: String,
    pub ell: u8,
    pub classes: usize,
    pub store_bytes: usize,
    pub sigma_edges: usize,
    pub delta_edges: usize,
    pub by_config: Vec<ConfigCounts>,
    pub enumerate_seconds: f64,
    pub graph_seconds: f64,
    pub partition_seconds: f64,
}

impl TableReport {
    /// Counts for each configuration from a prebuilt graph. Timings for
    /// enumeration and graph building are left at zero.
    pub fn from_graph(store: &ClassStore, graph: &MoveGraph) -> Self {
        let started = Instant::now();
        let by_config = delta_configs()
            .into_iter()
            .map(|delta| ConfigCounts {
                delta,
                counts: MoveSet::all_subsets()
                    .map(|m| graph.partition(m, delta).count)
                    .collect(),
            })
            .collect();
        let (sigma_edges, delta_edges) = graph.edge_counts();
        TableReport {
            signature: store.signature().to_string(),
            ell: store.ell(),
            classes: store.len(),
            store_bytes: store.byte_size(),
            sigma_edges,
            delta_edges,
            by_config,
            enumerate_seconds: 0.0,
            graph_seconds: 0.0,
            partition_seconds: started.elapsed().as_secs_f64(),
        }
    }

    pub fn counts(&self, delta: DeltaConfig) -> Option<&[usize]> {
        self.by_config
            .iter()
            .find(|c| c.delta == delta)
            .map(|c| &c.counts[..])
    }

    /// Configurations whose sixteen counts equal `expected`.
    pub fn matching(&self, expected: &[usize]) -> Vec<DeltaConfig> {
        self.by_config
            .iter()
            .filter(|c| c.counts == expected)
            .map(|c| c.delta)
            .collect()
    }

    /// The published row set, if this is the published signature.
    pub fn published(&self) -> Option<&'static [usize; 16]> {
        let flagship: Signature = "2^13 3^3 4^1".parse().expect("literal signature");
        (self.ell == 8 && self.signature == flagship.to_string()).then_some(&PUBLISHED_EIGHT_LINE_TABLE)
    }
}

/// Enumerates the classes of `signature` and counts components for all
/// sixteen move subsets under every `Δ` configuration.
pub fn table(signature: &Signature, ell: u8, opts: &EnumerateOptions) -> Result<(TableReport, ClassStore, MoveGraph)> {
    let t0 = Instant::now();
    let (store, _) = enumerate_classes_with(signature, ell, opts)?;
    let t1 = Instant::now();
    let graph = MoveGraph::build(&store)?;
    let t2 = Instant::now();
    let mut report = TableReport::from_graph(&store, &graph);
    report.enumerate_seconds = (t1 - t0).as_secs_f64();
    report.graph_seconds = (t2 - t1).as_secs_f64();
    Ok((report, store, graph))
}

/// Final classes sharing one canonical lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeBucket {
    pub lattice: LatticeCanonicalForm,
    /// Store indices of the component representatives.
    pub classes: Vec<usize>,
    pub affine: Vec<GroupFingerprint>,
    pub projective: Vec<GroupFingerprint>,
}

impl LatticeBucket {
    pub fn fingerprints_agree(&self) -> bool {
        self.affine.windows(2).all(|w| w[0] == w[1]) && self.projective.windows(2).all(|w| w[0] == w[1])
    }
}

/// Groups the components of `partition` by the canonical lattice of their
/// representatives and fingerprints every representative.
pub fn lattice_report(
    store: &ClassStore,
    partition: &Partition,
    conv: Conventions,
    targets: &[FiniteGroup],
    node_cap: u64,
) -> Result<Vec<LatticeBucket>> {
    let reps = partition.representatives();
    let rows: Vec<Result<(LatticeCanonicalForm, GroupFingerprint, GroupFingerprint)>> = reps
        .par_iter()
        .map(|&i| {
            let d = store.get(i);
            let lattice = canonical_lattice(&lattice_of(&d)?);
            let affine = diagram_fingerprint(&d, Space::Affine, conv, targets, node_cap)?;
            let projective = diagram_fingerprint(&d, Space::Projective, conv, targets, node_cap)?;
            Ok((lattice, affine, projective))
        })
        .collect();
    let mut buckets: BTreeMap<LatticeCanonicalForm, LatticeBucket> = BTreeMap::new();
    for (&i, row) in reps.iter().zip(rows) {
        let (lattice, affine, projective) = row?;
        let b = buckets.entry(lattice.clone()).or_insert_with(|| LatticeBucket {
            lattice,
            classes: Vec::new(),
            affine: Vec::new(),
            projective: Vec::new(),
        });
        b.classes.push(i);
        b.affine.push(affine);
        b.projective.push(projective);
    }
    Ok(buckets.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi1::{default_targets, DEFAULT_HOM_NODE_CAP};

    #[test]
    fn three_line_table() {
        let (report, store, graph) = table(&"2^3".parse().unwrap(), 3, &EnumerateOptions::default()).unwrap();
        assert_eq!(report.classes, 2);
        assert!(report.published().is_none());
        for c in &report.by_config {
            assert_eq!(c.counts[0], 2);
            assert_eq!(c.counts[15], 1);
            for a in MoveSet::all_subsets() {
                for b in MoveSet::all_subsets().filter(|&b| a.is_subset_of(b)) {
                    assert!(c.counts[b.row()] <= c.counts[a.row()]);
                }
            }
        }
        assert_eq!(report.matching(&report.by_config[0].counts.clone()).len(), 4);
        let all = graph.partition(MoveSet::ALL, DeltaConfig::default());
        let buckets = lattice_report(&store, &all, Conventions::default(), &default_targets(), DEFAULT_HOM_NODE_CAP)
            .unwrap();
        assert_eq!(buckets.len(), 1);
        assert!(buckets[0].fingerprints_agree());
        assert_eq!(buckets[0].lattice.to_string(), "{1,2}{1,3}{2,3}");
    }
}
