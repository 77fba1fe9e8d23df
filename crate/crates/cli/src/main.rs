mod commands;
mod config;
mod error;
mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wirediag::pi1::Space;
use wirediag::{MoveSet, Signature};

use crate::commands::Op;
use crate::config::{Config, FileConfig, Overrides};
use crate::error::CliError;
use crate::report::{render, Format};

/// Wiring diagrams of line arrangements: validation, the σ/τ/μ/Δ
/// actions, incidence lattices, fundamental groups, and exhaustive
/// classification of a signature.
#[derive(Parser, Debug)]
#[command(name = "wirediag", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// TOML config file; flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Worker threads for enumerate, classify and table [env: WIREDIAG_THREADS].
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Memory budget for enumeration, e.g. `8GiB`.
    #[arg(long, global = true, value_name = "SIZE")]
    budget_mem: Option<String>,
    /// Wall-clock budget for enumeration, e.g. `12h` or seconds.
    #[arg(long, global = true, value_name = "DURATION")]
    budget_time: Option<String>,
    /// Directory for class stores and enumeration checkpoints [env: WIREDIAG_CACHE_DIR].
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    /// Where Δ occurrences are sought: any member of the class, or the
    /// canonical word only.
    #[arg(long, global = true, value_parser = ["equiv", "literal"])]
    delta_policy: Option<String>,
    /// Exclude the degenerate Δ patterns where one run is empty.
    #[arg(long, global = true)]
    strict_delta: bool,
    /// Seed for sampling.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Comma-separated finite target groups for fingerprints.
    #[arg(long, global = true, value_name = "NAMES")]
    targets: Option<String>,
    /// Search-node cap per homomorphism count.
    #[arg(long, global = true)]
    node_cap: Option<u64>,
    /// Half-twist orientation, for comparison runs.
    #[arg(long, global = true, value_parser = ["standard", "mirrored"])]
    orientation: Option<String>,
}

#[derive(Args, Debug)]
struct DiagramInput {
    /// File with one diagram per line; `-` or omitted reads standard input.
    file: Option<PathBuf>,
    /// Diagram given inline, e.g. `l=3: (1,2)(2,3)(1,2)`. Repeatable.
    #[arg(long, short = 'd')]
    diagram: Vec<String>,
}

#[derive(Args, Debug)]
struct SignatureArgs {
    /// Signature such as `2^13 3^3 4^1`.
    #[arg(long)]
    signature: Signature,
    /// Number of lines; inferred from the signature when omitted.
    #[arg(long)]
    ell: Option<u8>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check each diagram for the unique intersection property.
    Validate(DiagramInput),
    /// Print the signature of each diagram.
    Signature(DiagramInput),
    /// Print the canonical representative of each commutation class.
    Canon(DiagramInput),
    /// Apply σ, τ or μ a number of times.
    Act {
        #[command(flatten)]
        input: DiagramInput,
        #[arg(long, value_enum)]
        op: Op,
        /// Negative powers invert.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        power: i64,
    },
    /// Incidence lattice and its canonical form.
    Lattice(DiagramInput),
    /// Presentation of the fundamental group of the complement.
    Pi1 {
        #[command(flatten)]
        input: DiagramInput,
        #[arg(long, default_value = "affine", value_parser = ["affine", "projective"])]
        space: String,
        /// Also print the abelianization and homomorphism counts.
        #[arg(long)]
        fingerprint: bool,
    },
    /// Orbit of each diagram under a group of actions.
    Orbit {
        #[command(flatten)]
        input: DiagramInput,
        /// Comma-separated generators from `sigma`, `tau`.
        #[arg(long, default_value = "sigma,tau")]
        group: String,
        /// Print every member.
        #[arg(long)]
        list: bool,
    },
    /// Enumerate the commutation classes of a signature.
    Enumerate {
        #[command(flatten)]
        sig: SignatureArgs,
        /// Write the class store to this file.
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
        /// Print this many classes chosen with `--seed`.
        #[arg(long, default_value_t = 0)]
        sample: usize,
    },
    /// Count classes up to the chosen moves.
    Classify {
        #[command(flatten)]
        sig: SignatureArgs,
        /// Comma-separated from `sigma,tau,mu,delta`, or `all`, `none`.
        #[arg(long, default_value = "all")]
        moves: MoveSet,
        /// Print a representative of every component.
        #[arg(long)]
        list: bool,
        /// Group components by incidence lattice and fingerprint them.
        #[arg(long)]
        lattices: bool,
    },
    /// Counts for all sixteen move subsets under every Δ configuration.
    Table {
        #[command(flatten)]
        sig: SignatureArgs,
    },
}

impl Global {
    fn overrides(&self) -> Overrides {
        Overrides {
            threads: self.threads,
            budget_mem: self.budget_mem.clone(),
            budget_time: self.budget_time.clone(),
            node_cap: self.node_cap,
            cache_dir: self.cache_dir.clone(),
            delta_policy: self.delta_policy.clone(),
            strict_delta: self.strict_delta,
            targets: self.targets.clone(),
            orientation: self.orientation.clone(),
            seed: self.seed,
        }
    }
}

/// Output text and exit status of a command that ran.
struct Outcome {
    output: String,
    status: u8,
}

fn ok(output: String) -> Result<Outcome, CliError> {
    Ok(Outcome { output, status: 0 })
}

fn read(input: &DiagramInput) -> Result<Vec<input::Entry>, CliError> {
    input::read(input.file.as_deref(), &input.diagram)
}

/// Runs `f` on a pool of the configured size; only the classify commands
/// use one.
fn pooled<T: Send>(cfg: &Config, f: impl FnOnce() -> Result<T, CliError> + Send) -> Result<T, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    pool.install(f)
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let file = match &cli.global.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let cfg = Config::resolve(&cli.global.overrides(), &file, |k| std::env::var(k).ok())?;
    let fmt = cli.global.format;
    match &cli.command {
        Command::Validate(i) => {
            let r = commands::validate(&read(i)?);
            Ok(Outcome {
                output: render("validate", &r, fmt),
                status: u8::from(r.invalid > 0),
            })
        }
        Command::Signature(i) => ok(render("signature", &commands::signature(&read(i)?)?, fmt)),
        Command::Canon(i) => ok(render("canon", &commands::canon(&read(i)?)?, fmt)),
        Command::Act { input, op, power } => ok(render("act", &commands::act(&read(input)?, *op, *power)?, fmt)),
        Command::Lattice(i) => ok(render("lattice", &commands::lattice(&read(i)?)?, fmt)),
        Command::Pi1 {
            input,
            space,
            fingerprint,
        } => {
            let space: Space = space.parse()?;
            ok(render("pi1", &commands::pi1(&read(input)?, space, *fingerprint, &cfg)?, fmt))
        }
        Command::Orbit { input, group, list } => ok(render("orbit", &commands::orbits(&read(input)?, group, *list)?, fmt)),
        Command::Enumerate { sig, output, sample } => {
            let ell = commands::resolve_ell(&sig.signature, sig.ell)?;
            let r = pooled(&cfg, || commands::enumerate(&sig.signature, ell, output.as_deref(), *sample, &cfg))?;
            ok(render("enumerate", &r, fmt))
        }
        Command::Classify {
            sig,
            moves,
            list,
            lattices,
        } => {
            let ell = commands::resolve_ell(&sig.signature, sig.ell)?;
            let r = pooled(&cfg, || commands::classify(&sig.signature, ell, *moves, *list, *lattices, &cfg))?;
            ok(render("classify", &r, fmt))
        }
        Command::Table { sig } => {
            let ell = commands::resolve_ell(&sig.signature, sig.ell)?;
            let r = pooled(&cfg, || commands::table(&sig.signature, ell, &cfg))?;
            ok(render("table", &r, fmt))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // usage errors count as invalid input, so 2 stays reserved for budgets
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.output.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("wirediag: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
