//! Command-line front end for `avoidlab`: parses ring, family and ideal
//! specs, runs one scenario, and reports its certificates.

mod commands;
pub mod report;

use std::ffi::OsString;
use std::fmt;
use std::time::Instant;

use avoidlab::finring::DEFAULT_CAP;
use clap::{Args, Parser, Subcommand};

pub use report::{Certificate, Format, Report};

#[derive(Debug, Parser)]
#[command(name = "avoidlab", version, about = "Prime avoidance decisions with checked certificates")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest finite ring built from a spec.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Record wall-clock time in the report. Off by default so that
    /// identical arguments give identical output.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Finite ring structure.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Coverage, P.A. and Davis elements over a prime family.
    #[command(subcommand)]
    Avoid(AvoidCmd),
    /// The polynomial chain that covers I_omega without containing it.
    #[command(subcommand)]
    Counterexample(CounterexampleCmd),
    /// Discrete valuations of Q and F_p(t).
    #[command(subcommand)]
    Valuation(ValuationCmd),
    /// Imaginary quadratic orders.
    #[command(subcommand)]
    Quad(QuadCmd),
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Debug, Args)]
struct RingArg {
    /// Ring expression, e.g. `Z/12` or `F2[x]/(x^2+x+1) x Z/3`.
    #[arg(long)]
    ring: String,
}

#[derive(Debug, Subcommand)]
enum RingCmd {
    Info(RingArg),
    Ideals(RingArg),
    Primes(RingArg),
}

#[derive(Debug, Args)]
struct FamilyArg {
    /// Prime family, e.g. `finite:Z/6:(2),(3)`, `Max(Z)`, `chain:Q:all`.
    #[arg(long)]
    family: String,
}

#[derive(Debug, Args)]
struct FamilyIdealArgs {
    #[command(flatten)]
    family: FamilyArg,
    #[arg(long)]
    ideal: String,
}

#[derive(Debug, Args)]
struct DavisArgs {
    #[command(flatten)]
    target: FamilyIdealArgs,
    #[arg(long)]
    a: String,
    /// Extra primes the result must also avoid, e.g. `(3),(7)`.
    #[arg(long = "q-list", default_value = "")]
    q_list: String,
}

#[derive(Debug, Subcommand)]
enum AvoidCmd {
    Check(FamilyIdealArgs),
    Pa(FamilyArg),
    Davis(DavisArgs),
    Mincert(RingArg),
    Dichotomy(FamilyIdealArgs),
}

#[derive(Debug, Subcommand)]
enum CounterexampleCmd {
    Chain {
        /// Index of the chain prime to escape.
        #[arg(long, default_value_t = 4)]
        n: u32,
        /// Coefficient field: `Q` or `F<p>`.
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

#[derive(Debug, Args)]
struct PlaceArgs {
    /// Place: `p=5`, `pi=t^2+t+1` or `inf`.
    #[arg(long = "V")]
    v: String,
    /// `Q` or `F<p>(t)`; inferred as `Q` for `p=` places.
    #[arg(long)]
    field: Option<String>,
}

#[derive(Debug, Subcommand)]
enum ValuationCmd {
    Value {
        #[command(flatten)]
        place: PlaceArgs,
        #[arg(long)]
        x: String,
    },
    Avoid {
        #[command(flatten)]
        place: PlaceArgs,
        #[arg(long)]
        others: String,
    },
    Davis {
        #[command(flatten)]
        place: PlaceArgs,
        #[arg(long)]
        others: String,
        #[arg(long)]
        x: String,
    },
}

#[derive(Debug, Args)]
struct OrderArg {
    /// Squarefree negative integer.
    #[arg(long, allow_hyphen_values = true)]
    d: i64,
}

#[derive(Debug, Subcommand)]
enum QuadCmd {
    Factor {
        #[command(flatten)]
        order: OrderArg,
        #[arg(long)]
        p: u64,
    },
    Class(OrderArg),
    /// Smith elements for a prime ideal, or for every prime above `--p`.
    Smith {
        #[command(flatten)]
        order: OrderArg,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long)]
        p: Option<u64>,
    },
    Qr {
        #[command(flatten)]
        order: OrderArg,
        #[arg(long)]
        ideal: String,
    },
    /// P.A. for every maximal ideal, or all but those above `--p`.
    Pa {
        #[command(flatten)]
        order: OrderArg,
        #[arg(long)]
        p: Option<u64>,
    },
}

/// A failed run: 1 for bad input or an unmet precondition, 2 when a
/// certificate failed its own check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> CliError {
        CliError { code: 1, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> CliError {
        CliError { code: 2, message: message.into() }
    }
}

impl From<avoidlab::Error> for CliError {
    fn from(e: avoidlab::Error) -> CliError {
        match e {
            avoidlab::Error::Validation(_) => CliError::internal(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// The result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Shared settings handed to every command.
pub(crate) struct Settings {
    pub seed: u64,
    pub cap: usize,
}

/// Parse `args` (including the program name) and run the scenario.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let settings = Settings { seed: cli.seed, cap: cli.cap };
    let start = Instant::now();
    let result = dispatch(&cli.command, &settings);
    let elapsed = start.elapsed().as_millis();
    match result {
        Ok((mut report, code)) => {
            if cli.timing {
                report.timing_ms = Some(elapsed);
            }
            Outcome { code, stdout: report.render(cli.format), stderr: String::new() }
        }
        Err(e) => Outcome { code: e.code, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// Run a parsed command. Most commands exit 0 on success; `selftest`
/// reports failing criteria through its exit code.
fn dispatch(command: &Command, s: &Settings) -> Result<(Report, i32), CliError> {
    use commands::{avoid, quad, ring, selftest, valuation};
    let ok = |r: Result<Report, CliError>| r.map(|r| (r, 0));
    match command {
        Command::Ring(RingCmd::Info(a)) => ok(ring::info(&a.ring, s)),
        Command::Ring(RingCmd::Ideals(a)) => ok(ring::ideals(&a.ring, s)),
        Command::Ring(RingCmd::Primes(a)) => ok(ring::primes(&a.ring, s)),
        Command::Avoid(AvoidCmd::Check(a)) => ok(avoid::check(&a.family.family, &a.ideal, s)),
        Command::Avoid(AvoidCmd::Pa(a)) => ok(avoid::pa(&a.family, s)),
        Command::Avoid(AvoidCmd::Davis(a)) => {
            ok(avoid::davis(&a.target.family.family, &a.target.ideal, &a.a, &a.q_list, s))
        }
        Command::Avoid(AvoidCmd::Mincert(a)) => ok(avoid::mincert(&a.ring, s)),
        Command::Avoid(AvoidCmd::Dichotomy(a)) => ok(avoid::dichotomy(&a.family.family, &a.ideal, s)),
        Command::Counterexample(CounterexampleCmd::Chain { n, field }) => ok(avoid::chain(*n, field)),
        Command::Valuation(ValuationCmd::Value { place, x }) => {
            ok(valuation::value(&place.v, place.field.as_deref(), x))
        }
        Command::Valuation(ValuationCmd::Avoid { place, others }) => {
            ok(valuation::avoid(&place.v, place.field.as_deref(), others))
        }
        Command::Valuation(ValuationCmd::Davis { place, others, x }) => {
            ok(valuation::davis(&place.v, place.field.as_deref(), others, x))
        }
        Command::Quad(QuadCmd::Factor { order, p }) => ok(quad::factor(order.d, *p)),
        Command::Quad(QuadCmd::Class(order)) => ok(quad::class(order.d)),
        Command::Quad(QuadCmd::Smith { order, ideal, p }) => ok(quad::smith(order.d, ideal.as_deref(), *p)),
        Command::Quad(QuadCmd::Qr { order, ideal }) => ok(quad::qr(order.d, ideal)),
        Command::Quad(QuadCmd::Pa { order, p }) => ok(quad::pa(order.d, *p, s)),
        Command::Selftest => selftest::run(s),
    }
}
