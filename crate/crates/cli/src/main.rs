//! `qmodl` — reproducible experiments on q-expansions mod l.
//!
//! Every run is a pure function of its flags and the seed: randomized
//! experiments default to a fixed seed, output ordering ignores thread
//! count, and JSON omits timing unless asked, so reruns are byte-identical.

mod commands;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fmt;
use std::time::Instant;

/// Fixed default seed: reruns without an explicit `--seed` reproduce.
pub const DEFAULT_SEED: u64 = 1729;

/// Default window-length cap for mod-2 series (bit-packed).
pub const CAP_SERIES_LEN_MOD2: u64 = 100_000_000;
/// Default window-length cap for series over odd moduli (one word each).
pub const CAP_SERIES_LEN: u64 = 10_000_000;
/// Default cap on X for prime sweeps and sieve experiments.
pub const CAP_SWEEP_X: u64 = 1_000_000_000;

/// A bad flag value or an exceeded resource cap: exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Parser)]
#[command(
    name = "qmodl",
    version,
    about = "q-expansions of modular forms mod l, Hecke operators, character sums,\n\
             and counts of primes of the form a + m^2",
    after_help = "All numeric output is deterministic given flags and seed. Series window \
                  lengths are capped at 10^8 (modulus 2) / 10^7 (odd modulus) and sweeps at \
                  X <= 10^9 unless --unsafe-caps is given."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output mode
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Csv)]
    output: OutputMode,

    /// Seed for randomized experiments
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Worker threads for parallel inner loops (0 = library default);
    /// results are identical for every thread count
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Lift the default precision/memory caps
    #[arg(long, global = true)]
    unsafe_caps: bool,

    /// Print the resolved run configuration as JSON and exit
    #[arg(long, global = true)]
    emit_config: bool,

    /// Include wall-clock seconds in the JSON envelope (off by default so
    /// identical runs stay byte-identical)
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum OutputMode {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the nonzero coefficients of a named q-expansion
    Expand(ExpandArgs),
    /// Growth table of nonzero-coefficient counts against sqrt(X)/log log X
    CountNonzero(CountNonzeroArgs),
    /// Apply the Hecke operator T_p to a named form
    Hecke(HeckeArgs),
    /// Multiply a form into a holomorphic cusp form by a power of eta1 and
    /// optionally scan coefficients a_{up}
    Pipeline(PipelineArgs),
    /// Exhaustively solve 2^m + n0 = u y^2 for squarefree divisors u of 2N
    Pow2Square(Pow2SquareArgs),
    /// Fundamental decomposition, class number, L(1) value, and the
    /// good/bad proxy for the discriminant -4a
    Discriminant(DiscriminantArgs),
    /// Compare the truncated Euler product against its two asymptotic
    /// stand-ins
    Agood(AgoodArgs),
    /// List or count primes up to a bound
    Primes(PrimesArgs),
    /// Count primes p with up <= X and up = a + m^2, next to the sieve bound
    SieveReps(SieveRepsArgs),
    /// Aggregate represented-prime experiment over a whole subset A
    SieveAgg(SieveAggArgs),
    /// Run the extremal construction A = {d k^2} and its moment statistics
    Optimality(OptimalityArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Expand(_) => "expand",
            Command::CountNonzero(_) => "count-nonzero",
            Command::Hecke(_) => "hecke",
            Command::Pipeline(_) => "pipeline",
            Command::Pow2Square(_) => "pow2-square",
            Command::Discriminant(_) => "discriminant",
            Command::Agood(_) => "agood",
            Command::Primes(_) => "primes",
            Command::SieveReps(_) => "sieve-reps",
            Command::SieveAgg(_) => "sieve-agg",
            Command::Optimality(_) => "optimality",
        }
    }

    fn flags_json(&self) -> serde_json::Value {
        match self {
            Command::Expand(a) => serde_json::to_value(a),
            Command::CountNonzero(a) => serde_json::to_value(a),
            Command::Hecke(a) => serde_json::to_value(a),
            Command::Pipeline(a) => serde_json::to_value(a),
            Command::Pow2Square(a) => serde_json::to_value(a),
            Command::Discriminant(a) => serde_json::to_value(a),
            Command::Agood(a) => serde_json::to_value(a),
            Command::Primes(a) => serde_json::to_value(a),
            Command::SieveReps(a) => serde_json::to_value(a),
            Command::SieveAgg(a) => serde_json::to_value(a),
            Command::Optimality(a) => serde_json::to_value(a),
        }
        .expect("plain flags serialize")
    }
}

#[derive(Args, Serialize)]
struct ExpandArgs {
    /// Form name: eta1 | partition | theta0 | delta | j2
    #[arg(long)]
    form: String,
    /// Prime modulus l
    #[arg(long)]
    modulus: u32,
    /// Precision window end (exclusive)
    #[arg(long)]
    prec: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum IndexBy {
    /// The natural index of the coefficient family (n for p(n))
    N,
    /// The q-exponent
    Exponent,
}

#[derive(Args, Serialize)]
struct CountNonzeroArgs {
    /// Form name: eta1 | partition | theta0 | delta | j2
    #[arg(long)]
    form: String,
    /// Prime modulus l
    #[arg(long)]
    modulus: u32,
    /// Count up to this bound, with checkpoints at powers of ten
    #[arg(long)]
    x: u64,
    /// Count over the natural index or over q-exponents (they differ only
    /// for `partition`)
    #[arg(long, value_enum, default_value_t = IndexBy::Exponent)]
    index_by: IndexBy,
}

#[derive(Args, Serialize)]
struct HeckeArgs {
    /// Form name: eta1 | partition | theta0 | delta | j2
    #[arg(long)]
    form: String,
    /// Prime modulus l
    #[arg(long)]
    modulus: u32,
    /// The prime p of T_p
    #[arg(long)]
    p: u64,
    /// Precision window end for the input form
    #[arg(long)]
    prec: u64,
}

#[derive(Args, Serialize)]
struct PipelineArgs {
    /// Form name: eta1 | partition | theta0 | delta | j2
    #[arg(long)]
    form: String,
    /// Prime modulus l
    #[arg(long)]
    modulus: u32,
    /// Precision window end for the input form
    #[arg(long)]
    prec: u64,
    /// Exponent m of eta1^{l^m}; default: the smallest even m clearing the
    /// pole order
    #[arg(long)]
    m: Option<u32>,
    /// Scan coefficients a_{up} for u <= umax (requires --pmax)
    #[arg(long, requires = "pmax")]
    umax: Option<u64>,
    /// ... and primes p <= pmax (requires --umax)
    #[arg(long, requires = "umax")]
    pmax: Option<u64>,
}

#[derive(Args, Serialize)]
struct Pow2SquareArgs {
    /// The additive constant n0 (nonzero)
    #[arg(long)]
    n0: i64,
    /// The level N; u ranges over squarefree divisors of 2N
    #[arg(long)]
    level: u64,
    /// Search 1 <= m <= mmax
    #[arg(long)]
    mmax: u32,
}

#[derive(Args, Serialize)]
struct DiscriminantArgs {
    /// The positive integer a defining the discriminant -4a
    #[arg(long)]
    a: u64,
    /// Bad-proxy threshold: bad iff L(1) < c0 / log |fund|
    #[arg(long, default_value_t = 0.1)]
    c0: f64,
}

#[derive(Args, Serialize)]
struct AgoodArgs {
    /// The positive integer a defining chi_{-4a}
    #[arg(long)]
    a: u64,
    /// The scale X; products run over p <= X^{1/4}
    #[arg(long)]
    x: f64,
    /// Cutoff replacing (log |fund|)^100 in the split product
    #[arg(long, default_value_t = 100.0)]
    small_cutoff: f64,
    /// Dirichlet series truncation for L(1 + 1/log X)
    #[arg(long, default_value_t = 1_000_000)]
    terms: u64,
}

#[derive(Args, Serialize)]
struct PrimesArgs {
    /// Upper bound (inclusive)
    #[arg(long)]
    y: u64,
    /// Print only the count pi(y)
    #[arg(long)]
    count_only: bool,
}

#[derive(Args, Serialize)]
struct SieveRepsArgs {
    /// The shift a in a + m^2
    #[arg(long)]
    a: u64,
    /// The divisor u in up = a + m^2
    #[arg(long, default_value_t = 1)]
    u: u64,
    /// Count primes with up <= X
    #[arg(long)]
    x: u64,
}

#[derive(Args, Serialize)]
struct SieveAggArgs {
    /// Read A from a file (whitespace-separated integers; '#' comments)
    #[arg(long, group = "subset")]
    a_file: Option<std::path::PathBuf>,
    /// Draw A as a seeded random subset of [1, X] of this size
    #[arg(long, group = "subset")]
    random: Option<usize>,
    /// Build A from the extremal construction, as "Z,DCOUNT"
    #[arg(long, group = "subset")]
    construction: Option<String>,
    /// The divisor u in up = a + m^2
    #[arg(long, default_value_t = 1)]
    u: u64,
    /// Count primes with up <= X
    #[arg(long)]
    x: u64,
    /// Shorthand for --output json
    #[arg(long)]
    json: bool,
}

#[derive(Args, Serialize)]
struct OptimalityArgs {
    /// The scale X
    #[arg(long)]
    x: u64,
    /// The discriminant window [Z, 2Z]; default exp((log X)^{1/10})
    #[arg(long)]
    z: Option<u64>,
    /// How many discriminants to select
    #[arg(long)]
    dcount: usize,
    /// Shorthand for --output json
    #[arg(long)]
    json: bool,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            let code = if e.downcast_ref::<UsageError>().is_some() { 2 } else { 1 };
            std::process::exit(code);
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()?;
    }
    let mut output_mode = cli.output;
    if matches!(&cli.command, Command::SieveAgg(a) if a.json)
        || matches!(&cli.command, Command::Optimality(a) if a.json)
    {
        output_mode = OutputMode::Json;
    }

    let config = serde_json::json!({
        "command": cli.command.name(),
        "flags": cli.command.flags_json(),
        "output": output_mode,
        "seed": cli.seed,
        "threads": cli.threads,
        "unsafe_caps": cli.unsafe_caps,
    });
    if cli.emit_config {
        println!("{}", serde_json::to_string_pretty(&config)?);
        return Ok(());
    }

    let started = Instant::now();
    let caps = commands::Caps { unsafe_caps: cli.unsafe_caps };
    let out = match &cli.command {
        Command::Expand(a) => commands::expand(a, &caps)?,
        Command::CountNonzero(a) => commands::count_nonzero(a, &caps)?,
        Command::Hecke(a) => commands::hecke(a, &caps)?,
        Command::Pipeline(a) => commands::pipeline(a, &caps)?,
        Command::Pow2Square(a) => commands::pow2_square(a)?,
        Command::Discriminant(a) => commands::discriminant(a)?,
        Command::Agood(a) => commands::agood(a, &caps)?,
        Command::Primes(a) => commands::primes(a, &caps)?,
        Command::SieveReps(a) => commands::sieve_reps(a, &caps)?,
        Command::SieveAgg(a) => commands::sieve_agg(a, cli.seed, &caps)?,
        Command::Optimality(a) => commands::optimality(a, &caps)?,
    };

    match output_mode {
        OutputMode::Csv => print!("{}", out.csv),
        OutputMode::Json => {
            let timing = if cli.timing {
                output::real_value(started.elapsed().as_secs_f64())
            } else {
                serde_json::Value::Null
            };
            let envelope = serde_json::json!({
                "command": cli.command.name(),
                "config": config,
                "results": out.results,
                "timing": timing,
            });
            println!("{}", serde_json::to_string_pretty(&envelope)?);
        }
    }
    Ok(())
}
