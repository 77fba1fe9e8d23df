use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::seq::index::sample;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use wirediag::actions::{mu_power, sigma_power, tau};
use wirediag::classify::enumerate::signature_key;
use wirediag::classify::report::delta_configs;
use wirediag::classify::{
    enumerate_classes_with, lattice_report, orbit, EnumerateOptions, MoveGraph, OrbitGenerator, TableReport,
};
use wirediag::lattice::{canonical_lattice, lattice_of};
use wirediag::pi1::{fingerprint, presentation, Abelianization, Space};
use wirediag::trace::canonical_form;
use wirediag::{ClassStore, DeltaConfig, Diagram, MoveSet, Signature};

use crate::config::Config;
use crate::error::CliError;
use crate::input::Entry;
use crate::report::Report;

/// Comma-separated move names, `none` for the empty set.
pub fn move_names(m: MoveSet) -> String {
    let names: Vec<&str> = [(m.sigma, "sigma"), (m.tau, "tau"), (m.mu, "mu"), (m.delta, "delta")]
        .into_iter()
        .filter_map(|(on, n)| on.then_some(n))
        .collect();
    if names.is_empty() {
        "none".into()
    } else {
        names.join(",")
    }
}

/// `equiv`, `literal`, `equiv-strict`, `literal-strict`.
pub fn config_name(c: DeltaConfig) -> String {
    format!("{}{}", c.policy, if c.degenerate_ends { "" } else { "-strict" })
}

#[derive(Serialize)]
pub struct DeltaSettings {
    pub policy: String,
    pub degenerate_ends: bool,
}

impl From<DeltaConfig> for DeltaSettings {
    fn from(c: DeltaConfig) -> Self {
        DeltaSettings {
            policy: c.policy.to_string(),
            degenerate_ends: c.degenerate_ends,
        }
    }
}

// validate

#[derive(Serialize)]
pub struct ValidateEntry {
    pub line: usize,
    pub input: String,
    pub valid: bool,
    pub error: Option<String>,
}

#[derive(Serialize)]
pub struct ValidateReport {
    pub valid: usize,
    pub invalid: usize,
    pub diagrams: Vec<ValidateEntry>,
}

impl Report for ValidateReport {
    fn text(&self) -> String {
        let mut s = String::new();
        for e in &self.diagrams {
            match &e.error {
                None => writeln!(s, "line {}: valid", e.line),
                Some(err) => writeln!(s, "line {}: invalid: {err}", e.line),
            }
            .unwrap();
        }
        writeln!(s, "valid {}\ninvalid {}", self.valid, self.invalid).unwrap();
        s
    }
}

pub fn validate(entries: &[Entry]) -> ValidateReport {
    let diagrams: Vec<ValidateEntry> = entries
        .iter()
        .map(|e| {
            let err = e.parse().err().map(|x| x.to_string());
            ValidateEntry {
                line: e.line,
                input: e.text.clone(),
                valid: err.is_none(),
                error: err,
            }
        })
        .collect();
    let valid = diagrams.iter().filter(|d| d.valid).count();
    ValidateReport {
        valid,
        invalid: diagrams.len() - valid,
        diagrams,
    }
}

// signature

#[derive(Serialize)]
pub struct SignatureEntry {
    pub diagram: String,
    pub ell: u8,
    pub signature: String,
    pub points: usize,
}

#[derive(Serialize)]
pub struct SignatureReport {
    pub diagrams: Vec<SignatureEntry>,
}

impl Report for SignatureReport {
    fn text(&self) -> String {
        let mut s = String::new();
        for e in &self.diagrams {
            writeln!(s, "{}\n  signature {}\n  points {}", e.diagram, e.signature, e.points).unwrap();
        }
        s
    }
}

pub fn signature(entries: &[Entry]) -> Result<SignatureReport, CliError> {
    let diagrams = entries
        .iter()
        .map(|e| {
            let d = e.diagram()?;
            Ok(SignatureEntry {
                diagram: d.to_string(),
                ell: d.ell(),
                signature: d.signature().to_string(),
                points: d.len(),
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(SignatureReport { diagrams })
}

// canon / act

#[derive(Serialize)]
pub struct Transformed {
    pub input: String,
    pub output: String,
}

#[derive(Serialize)]
pub struct TransformReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub op: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power: Option<i64>,
    pub diagrams: Vec<Transformed>,
}

impl Report for TransformReport {
    fn text(&self) -> String {
        self.diagrams.iter().map(|t| format!("{}\n", t.output)).collect()
    }
}

pub fn canon(entries: &[Entry]) -> Result<TransformReport, CliError> {
    let diagrams = entries
        .iter()
        .map(|e| {
            let d = e.diagram()?;
            Ok(Transformed {
                input: d.to_string(),
                output: canonical_form(&d).to_string(),
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(TransformReport {
        op: None,
        power: None,
        diagrams,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Op {
    Sigma,
    Tau,
    Mu,
}

/// `σ^k` and `τ^k` act on the list itself; `μ^k` on its class, so its
/// output is a canonical form.
pub fn act(entries: &[Entry], op: Op, power: i64) -> Result<TransformReport, CliError> {
    let diagrams = entries
        .iter()
        .map(|e| {
            let d = e.diagram()?;
            let out: Diagram = match op {
                Op::Sigma => sigma_power(&d, power)?,
                Op::Tau if power.rem_euclid(2) == 1 => tau(&d),
                Op::Tau => d.clone(),
                Op::Mu => {
                    let k = power.rem_euclid(2 * i64::from(d.ell())) as u32;
                    mu_power(&canonical_form(&d), k).into_diagram()
                }
            };
            Ok(Transformed {
                input: d.to_string(),
                output: out.to_string(),
            })
        })
        .collect::<Result<_, CliError>>()?;
    let name = match op {
        Op::Sigma => "sigma",
        Op::Tau => "tau",
        Op::Mu => "mu",
    };
    Ok(TransformReport {
        op: Some(name.into()),
        power: Some(power),
        diagrams,
    })
}

// lattice

#[derive(Serialize)]
pub struct LatticeEntry {
    pub diagram: String,
    pub points: String,
    pub canonical: String,
}

#[derive(Serialize)]
pub struct LatticeReport {
    pub diagrams: Vec<LatticeEntry>,
}

impl Report for LatticeReport {
    fn text(&self) -> String {
        let mut s = String::new();
        for e in &self.diagrams {
            writeln!(s, "{}\n  points {}\n  canonical {}", e.diagram, e.points, e.canonical).unwrap();
        }
        s
    }
}

pub fn lattice(entries: &[Entry]) -> Result<LatticeReport, CliError> {
    let diagrams = entries
        .iter()
        .map(|e| {
            let d = e.diagram()?;
            let lat = lattice_of(&d)?;
            Ok(LatticeEntry {
                diagram: d.to_string(),
                points: lat.to_string(),
                canonical: canonical_lattice(&lat).to_string(),
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(LatticeReport { diagrams })
}

// pi1

#[derive(Serialize)]
pub struct FingerprintOut {
    pub abelianization: Abelianization,
    pub abelianization_text: String,
    pub hom_counts: Vec<HomCount>,
}

#[derive(Serialize)]
pub struct HomCount {
    pub group: String,
    pub count: u128,
}

#[derive(Serialize)]
pub struct Pi1Entry {
    pub diagram: String,
    pub generators: u8,
    pub relators: Vec<Vec<i32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fingerprint: Option<FingerprintOut>,
}

#[derive(Serialize)]
pub struct Pi1Report {
    pub space: Space,
    pub diagrams: Vec<Pi1Entry>,
}

impl Report for Pi1Report {
    /// The export format (`gens <n>`, then one relator per line), preceded
    /// by a `#` line naming the diagram when there are several.
    fn text(&self) -> String {
        let mut s = String::new();
        for e in &self.diagrams {
            if self.diagrams.len() > 1 {
                writeln!(s, "# {}", e.diagram).unwrap();
            }
            writeln!(s, "gens {}", e.generators).unwrap();
            for r in &e.relators {
                let line: Vec<String> = r.iter().map(i32::to_string).collect();
                writeln!(s, "{}", if line.is_empty() { "1".into() } else { line.join(" ") }).unwrap();
            }
            if let Some(f) = &e.fingerprint {
                writeln!(s, "abelianization {}", f.abelianization_text).unwrap();
                for h in &f.hom_counts {
                    writeln!(s, "hom {} {}", h.group, h.count).unwrap();
                }
            }
        }
        s
    }
}

pub fn pi1(entries: &[Entry], space: Space, with_fingerprint: bool, cfg: &Config) -> Result<Pi1Report, CliError> {
    let diagrams = entries
        .iter()
        .map(|e| {
            let d = e.diagram()?;
            let p = presentation(&d, space, cfg.conventions)?;
            let fp = if with_fingerprint {
                let f = fingerprint(&p, &cfg.targets, cfg.node_cap)?;
                Some(FingerprintOut {
                    abelianization_text: f.abelianization.to_string(),
                    // target order, not alphabetical
                    hom_counts: cfg
                        .targets
                        .iter()
                        .map(|g| HomCount {
                            group: g.name().to_string(),
                            count: f.hom_counts[g.name()],
                        })
                        .collect(),
                    abelianization: f.abelianization,
                })
            } else {
                None
            };
            Ok(Pi1Entry {
                diagram: d.to_string(),
                generators: p.ngens(),
                relators: p.relators().iter().map(|r| r.letters().to_vec()).collect(),
                fingerprint: fp,
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(Pi1Report { space, diagrams })
}

// orbit

#[derive(Serialize)]
pub struct OrbitEntry {
    pub diagram: String,
    pub size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct OrbitReport {
    pub group: Vec<String>,
    pub diagrams: Vec<OrbitEntry>,
}

impl Report for OrbitReport {
    fn text(&self) -> String {
        let mut s = String::new();
        for e in &self.diagrams {
            writeln!(s, "{}\n  size {}", e.diagram, e.size).unwrap();
            for m in e.members.iter().flatten() {
                writeln!(s, "  {m}").unwrap();
            }
        }
        s
    }
}

pub fn orbits(entries: &[Entry], group: &str, list: bool) -> Result<OrbitReport, CliError> {
    let gens = OrbitGenerator::parse_list(group)?;
    let diagrams = entries
        .iter()
        .map(|e| {
            let d = e.diagram()?;
            let members = orbit(&d, &gens)?;
            Ok(OrbitEntry {
                diagram: d.to_string(),
                size: members.len(),
                members: list.then(|| members.iter().map(Diagram::to_string).collect()),
            })
        })
        .collect::<Result<_, CliError>>()?;
    let group = gens
        .iter()
        .map(|g| match g {
            OrbitGenerator::Sigma => "sigma".to_string(),
            OrbitGenerator::Tau => "tau".to_string(),
        })
        .collect();
    Ok(OrbitReport { group, diagrams })
}

// enumeration shared by enumerate, classify and table

pub struct Loaded {
    pub store: ClassStore,
    pub from_cache: bool,
    pub shards: usize,
    pub resumed_shards: usize,
    pub seconds: f64,
}

pub fn resolve_ell(sig: &Signature, ell: Option<u8>) -> Result<u8, CliError> {
    match ell {
        Some(l) => Ok(l),
        None => sig
            .implied_ell()
            .ok_or_else(|| CliError::Usage(format!("no line count fits {sig}; pass --ell"))),
    }
}

pub fn store_path(dir: &Path, sig: &Signature, ell: u8) -> PathBuf {
    dir.join(format!("classes-l{ell}-{}.wdc", signature_key(sig)))
}

/// Loads the class store from the cache directory, or enumerates it
/// (checkpointing shards there) and saves it.
pub fn load_classes(sig: &Signature, ell: u8, cfg: &Config) -> Result<Loaded, CliError> {
    let started = Instant::now();
    if let Some(dir) = &cfg.cache_dir {
        let path = store_path(dir, sig, ell);
        if path.exists() {
            let store = ClassStore::load(&path)?;
            if store.ell() != ell || store.signature() != sig {
                return Err(wirediag::Error::Cache(format!("{} holds another signature", path.display())).into());
            }
            return Ok(Loaded {
                store,
                from_cache: true,
                shards: 0,
                resumed_shards: 0,
                seconds: started.elapsed().as_secs_f64(),
            });
        }
    }
    let opts = EnumerateOptions {
        budget: cfg.budget,
        checkpoint_dir: cfg.cache_dir.clone(),
    };
    let (store, stats) = enumerate_classes_with(sig, ell, &opts)?;
    if let Some(dir) = &cfg.cache_dir {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.clone(),
            source,
        })?;
        store.save(&store_path(dir, sig, ell))?;
    }
    Ok(Loaded {
        store,
        from_cache: false,
        shards: stats.shards,
        resumed_shards: stats.resumed_shards,
        seconds: started.elapsed().as_secs_f64(),
    })
}

// enumerate

#[derive(Serialize)]
pub struct EnumerateReport {
    pub signature: String,
    pub ell: u8,
    pub classes: usize,
    pub store_bytes: usize,
    pub from_cache: bool,
    pub shards: usize,
    pub resumed_shards: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sample: Vec<String>,
}

impl Report for EnumerateReport {
    fn text(&self) -> String {
        let mut s = format!(
            "signature {}\nell {}\nclasses {}\nstore_bytes {}\nfrom_cache {}\nshards {}\nresumed_shards {}\n",
            self.signature,
            self.ell,
            self.classes,
            self.store_bytes,
            self.from_cache,
            self.shards,
            self.resumed_shards
        );
        if let Some(o) = &self.output {
            writeln!(s, "output {o}").unwrap();
        }
        for d in &self.sample {
            writeln!(s, "sample {d}").unwrap();
        }
        s
    }
}

pub fn enumerate(
    sig: &Signature,
    ell: u8,
    output: Option<&Path>,
    sample_size: usize,
    cfg: &Config,
) -> Result<EnumerateReport, CliError> {
    let loaded = load_classes(sig, ell, cfg)?;
    let store = &loaded.store;
    if let Some(path) = output {
        store.save(path)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut picks = sample(&mut rng, store.len(), sample_size.min(store.len())).into_vec();
    picks.sort_unstable();
    Ok(EnumerateReport {
        signature: sig.to_string(),
        ell,
        classes: store.len(),
        store_bytes: store.byte_size(),
        from_cache: loaded.from_cache,
        shards: loaded.shards,
        resumed_shards: loaded.resumed_shards,
        output: output.map(|p| p.display().to_string()),
        sample: picks.into_iter().map(|i| store.get(i).to_string()).collect(),
    })
}

// classify

#[derive(Serialize)]
pub struct BucketOut {
    pub lattice: String,
    pub classes: Vec<String>,
    pub fingerprints_agree: bool,
    pub affine: Vec<String>,
    pub projective: Vec<String>,
}

#[derive(Serialize)]
pub struct ClassifyReport {
    pub signature: String,
    pub ell: u8,
    pub moves: String,
    pub delta: DeltaSettings,
    pub classes: usize,
    pub components: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattices: Option<Vec<BucketOut>>,
}

impl Report for ClassifyReport {
    fn text(&self) -> String {
        let mut s = format!(
            "signature {}\nell {}\nmoves {}\ndelta_policy {}\ndegenerate_ends {}\nclasses {}\ncomponents {}\n",
            self.signature,
            self.ell,
            self.moves,
            self.delta.policy,
            self.delta.degenerate_ends,
            self.classes,
            self.components
        );
        for r in self.representatives.iter().flatten() {
            writeln!(s, "representative {r}").unwrap();
        }
        if let Some(buckets) = &self.lattices {
            writeln!(s, "lattices {}", buckets.len()).unwrap();
            for b in buckets {
                writeln!(
                    s,
                    "lattice {} classes {} fingerprints {}",
                    b.lattice,
                    b.classes.len(),
                    if b.fingerprints_agree { "agree" } else { "differ" }
                )
                .unwrap();
                for (k, c) in b.classes.iter().enumerate() {
                    writeln!(s, "  {c}\n    affine {}\n    projective {}", b.affine[k], b.projective[k]).unwrap();
                }
            }
        }
        s
    }
}

pub fn classify(
    sig: &Signature,
    ell: u8,
    moves: MoveSet,
    list: bool,
    lattices: bool,
    cfg: &Config,
) -> Result<ClassifyReport, CliError> {
    let loaded = load_classes(sig, ell, cfg)?;
    let store = &loaded.store;
    let partition = MoveGraph::build(store)?.partition(moves, cfg.delta);
    let representatives =
        list.then(|| partition.representatives().into_iter().map(|i| store.get(i).to_string()).collect());
    let lattices = if lattices {
        let buckets = lattice_report(store, &partition, cfg.conventions, &cfg.targets, cfg.node_cap)?;
        Some(
            buckets
                .into_iter()
                .map(|b| BucketOut {
                    lattice: b.lattice.to_string(),
                    fingerprints_agree: b.fingerprints_agree(),
                    classes: b.classes.iter().map(|&i| store.get(i).to_string()).collect(),
                    affine: b.affine.iter().map(ToString::to_string).collect(),
                    projective: b.projective.iter().map(ToString::to_string).collect(),
                })
                .collect(),
        )
    } else {
        None
    };
    Ok(ClassifyReport {
        signature: sig.to_string(),
        ell,
        moves: move_names(moves),
        delta: cfg.delta.into(),
        classes: store.len(),
        components: partition.count,
        representatives,
        lattices,
    })
}

// table

#[derive(Serialize)]
pub struct TableRow {
    pub moves: String,
    /// Component counts keyed by Δ configuration name.
    pub counts: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub published: Option<usize>,
}

#[derive(Serialize)]
pub struct TableOut {
    pub signature: String,
    pub ell: u8,
    pub classes: usize,
    pub store_bytes: usize,
    pub sigma_edges: usize,
    pub delta_edges: usize,
    pub from_cache: bool,
    pub enumerate_seconds: f64,
    pub graph_seconds: f64,
    pub partition_seconds: f64,
    pub rows: Vec<TableRow>,
    /// Configurations reproducing the published counts; `None` when no
    /// published counts exist for this signature.
    pub matching: Option<Vec<String>>,
}

impl Report for TableOut {
    fn text(&self) -> String {
        let mut s = format!(
            "signature {}\nell {}\nclasses {}\nstore_bytes {}\nsigma_edges {}\ndelta_edges {}\n",
            self.signature, self.ell, self.classes, self.store_bytes, self.sigma_edges, self.delta_edges
        );
        writeln!(
            s,
            "enumerate_seconds {:.2}\ngraph_seconds {:.2}\npartition_seconds {:.2}",
            self.enumerate_seconds, self.graph_seconds, self.partition_seconds
        )
        .unwrap();
        let mut header = format!("{:<20}", "moves");
        for name in self.rows[0].counts.keys() {
            write!(header, " {name:>14}").unwrap();
        }
        if self.matching.is_some() {
            write!(header, " {:>14}", "published").unwrap();
        }
        writeln!(s, "{}", header.trim_end()).unwrap();
        for r in &self.rows {
            let mut line = format!("{:<20}", r.moves);
            for n in r.counts.values() {
                write!(line, " {n:>14}").unwrap();
            }
            if let Some(p) = r.published {
                write!(line, " {p:>14}").unwrap();
            }
            writeln!(s, "{line}").unwrap();
        }
        match &self.matching {
            Some(m) if m.is_empty() => writeln!(s, "matching none").unwrap(),
            Some(m) => writeln!(s, "matching {}", m.join(",")).unwrap(),
            None => {}
        }
        s
    }
}

pub fn table(sig: &Signature, ell: u8, cfg: &Config) -> Result<TableOut, CliError> {
    let loaded = load_classes(sig, ell, cfg)?;
    let t = Instant::now();
    let graph = MoveGraph::build(&loaded.store)?;
    let graph_seconds = t.elapsed().as_secs_f64();
    let report = TableReport::from_graph(&loaded.store, &graph);
    let published = report.published();
    let rows = MoveSet::all_subsets()
        .map(|m| TableRow {
            moves: move_names(m),
            counts: report
                .by_config
                .iter()
                .map(|c| (config_name(c.delta), c.counts[m.row()]))
                .collect(),
            published: published.map(|p| p[m.row()]),
        })
        .collect();
    let matching = published.map(|p| report.matching(p).into_iter().map(config_name).collect());
    debug_assert_eq!(report.by_config.len(), delta_configs().len());
    Ok(TableOut {
        signature: report.signature.clone(),
        ell,
        classes: report.classes,
        store_bytes: report.store_bytes,
        sigma_edges: report.sigma_edges,
        delta_edges: report.delta_edges,
        from_cache: loaded.from_cache,
        enumerate_seconds: loaded.seconds,
        graph_seconds,
        partition_seconds: report.partition_seconds,
        rows,
        matching,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use wirediag::actions::mu;

    #[test]
    fn names() {
        assert_eq!(move_names(MoveSet::NONE), "none");
        assert_eq!(move_names(MoveSet::from_row(12)), "sigma,tau");
        let names: Vec<String> = delta_configs().into_iter().map(config_name).collect();
        assert_eq!(names, ["equiv", "literal", "equiv-strict", "literal-strict"]);
    }

    #[test]
    fn mu_on_a_class_is_canonical() {
        let entries = crate::input::entries("l=3: (1,2)(2,3)(1,2)");
        let r = act(&entries, Op::Mu, 1).unwrap();
        let d: Diagram = entries[0].text.parse().unwrap();
        assert_eq!(r.diagrams[0].output, mu(&canonical_form(&d)).to_string());
        let back = act(&entries, Op::Mu, -1).unwrap();
        assert_eq!(
            back.diagrams[0].output,
            mu_power(&canonical_form(&d), 5).to_string()
        );
    }
}
