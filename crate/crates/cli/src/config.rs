//! Settings merged from flags, two environment variables, an optional TOML
//! file and defaults, in that order of precedence.

use std::path::{Path, PathBuf};
use std::time::Duration;

use bytesize::ByteSize;
use serde::Deserialize;
use wirediag::classify::Budget;
use wirediag::pi1::{default_targets, target_by_name, Conventions, FiniteGroup, Orientation, DEFAULT_HOM_NODE_CAP};
use wirediag::{DeltaConfig, DeltaPolicy};

use crate::error::CliError;

pub const CACHE_DIR_ENV: &str = "WIREDIAG_CACHE_DIR";
pub const THREADS_ENV: &str = "WIREDIAG_THREADS";
pub const DEFAULT_SEED: u64 = 0x5eed_2718;

/// Keys accepted in the config file. All optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub threads: Option<usize>,
    pub budget_mem: Option<String>,
    pub budget_time: Option<String>,
    pub node_cap: Option<u64>,
    pub cache_dir: Option<PathBuf>,
    pub delta_policy: Option<String>,
    pub degenerate_ends: Option<bool>,
    pub targets: Option<Vec<String>>,
    pub orientation: Option<String>,
    pub seed: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config {
            path: path.to_owned(),
            message: e.to_string(),
        })?;
        toml::from_str(&text).map_err(|e| CliError::Config {
            path: path.to_owned(),
            message: e.message().to_string(),
        })
    }
}

/// Values given on the command line; `None` defers to the next source.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub threads: Option<usize>,
    pub budget_mem: Option<String>,
    pub budget_time: Option<String>,
    pub node_cap: Option<u64>,
    pub cache_dir: Option<PathBuf>,
    pub delta_policy: Option<String>,
    pub strict_delta: bool,
    pub targets: Option<String>,
    pub orientation: Option<String>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct Config {
    pub threads: usize,
    pub budget: Budget,
    pub node_cap: u64,
    pub cache_dir: Option<PathBuf>,
    pub delta: DeltaConfig,
    pub targets: Vec<FiniteGroup>,
    pub conventions: Conventions,
    pub seed: u64,
}

impl Config {
    pub fn resolve(
        flags: &Overrides,
        file: &FileConfig,
        env: impl Fn(&str) -> Option<String>,
    ) -> Result<Self, CliError> {
        let env_threads = match env(THREADS_ENV) {
            Some(v) => Some(
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("{THREADS_ENV}={v} is not a thread count")))?,
            ),
            None => None,
        };
        let threads = flags
            .threads
            .or(env_threads)
            .or(file.threads)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        if threads == 0 {
            return Err(CliError::Usage("thread count must be at least 1".into()));
        }
        let cache_dir = flags
            .cache_dir
            .clone()
            .or_else(|| env(CACHE_DIR_ENV).filter(|s| !s.is_empty()).map(PathBuf::from))
            .or_else(|| file.cache_dir.clone());

        let budget = Budget {
            max_bytes: flags
                .budget_mem
                .as_deref()
                .or(file.budget_mem.as_deref())
                .map(parse_bytes)
                .transpose()?,
            max_time: flags
                .budget_time
                .as_deref()
                .or(file.budget_time.as_deref())
                .map(parse_duration)
                .transpose()?,
        };
        let node_cap = flags.node_cap.or(file.node_cap).unwrap_or(DEFAULT_HOM_NODE_CAP);
        if node_cap == 0 {
            return Err(CliError::Usage("node cap must be positive".into()));
        }

        let policy = match flags.delta_policy.as_deref().or(file.delta_policy.as_deref()) {
            Some(s) => s.parse::<DeltaPolicy>()?,
            None => DeltaPolicy::Equiv,
        };
        let degenerate_ends = !flags.strict_delta && file.degenerate_ends.unwrap_or(true);

        let targets = match (&flags.targets, &file.targets) {
            (Some(list), _) => parse_targets(list.split(',').map(str::trim).filter(|s| !s.is_empty()))?,
            (None, Some(list)) => parse_targets(list.iter().map(String::as_str))?,
            (None, None) => default_targets(),
        };

        let orientation = match flags.orientation.as_deref().or(file.orientation.as_deref()) {
            None | Some("standard") => Orientation::Standard,
            Some("mirrored") => Orientation::Mirrored,
            Some(other) => return Err(CliError::Usage(format!("unknown orientation `{other}`"))),
        };

        Ok(Config {
            threads,
            budget,
            node_cap,
            cache_dir,
            delta: DeltaConfig {
                policy,
                degenerate_ends,
            },
            targets,
            conventions: Conventions {
                orientation,
                ..Conventions::default()
            },
            seed: flags.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
        })
    }
}

fn parse_targets<'a>(names: impl Iterator<Item = &'a str>) -> Result<Vec<FiniteGroup>, CliError> {
    let out: Vec<FiniteGroup> = names
        .map(|n| target_by_name(n).ok_or_else(|| CliError::Usage(format!("unknown target group `{n}`"))))
        .collect::<Result<_, _>>()?;
    if out.is_empty() {
        return Err(CliError::Usage("the target list is empty".into()));
    }
    Ok(out)
}

/// `8GiB`, `512 MB`, or a plain byte count.
pub fn parse_bytes(s: &str) -> Result<u64, CliError> {
    let n = s
        .trim()
        .parse::<ByteSize>()
        .map_err(|e| CliError::Usage(format!("memory budget `{s}`: {e}")))?
        .as_u64();
    if n == 0 {
        return Err(CliError::Usage("memory budget must be positive".into()));
    }
    Ok(n)
}

/// `90s`, `12h`, `1h 30m`, or a plain number of seconds.
pub fn parse_duration(s: &str) -> Result<Duration, CliError> {
    let s = s.trim();
    let d = match s.parse::<u64>() {
        Ok(secs) => Duration::from_secs(secs),
        Err(_) => humantime::parse_duration(s).map_err(|e| CliError::Usage(format!("time budget `{s}`: {e}")))?,
    };
    if d.is_zero() {
        return Err(CliError::Usage("time budget must be positive".into()));
    }
    Ok(d)
}
