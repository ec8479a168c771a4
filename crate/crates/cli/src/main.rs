//! `horokit`: command-line driver for metric functional computations.
//!
//! Exit codes: 0 all audits pass, 1 an audit failed, 2 invalid input,
//! 3 resource or budget exhausted. Errors go to stderr as JSON.

mod cmd;
mod common;

use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser, Subcommand};

use cmd::{boundary, dynamics, extend, gallery, reduced, spectral, validate};
use common::{emit, CliError, CliResult, Common, Outcome};

#[derive(Debug, Parser)]
#[command(
    name = "horokit",
    version,
    about = "Metric functionals, horofunction boundaries and semi-contraction dynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Limit restrictions of horofunctions to a ball of a Cayley graph.
    Boundary(boundary::BoundaryArgs),
    /// 1-Lipschitz extensions of partial functionals.
    #[command(subcommand)]
    Extend(extend::ExtendCmd),
    /// Translation numbers and Busemann witnesses of isometries.
    #[command(subcommand)]
    Spectral(spectral::SpectralCmd),
    /// Invariant and orbit functionals of isometries.
    #[command(subcommand)]
    Dynamics(dynamics::DynamicsCmd),
    /// Worked examples of metric functionals.
    #[command(subcommand)]
    Gallery(gallery::GalleryCmd),
    /// Reduced compactification of Z.
    #[command(subcommand)]
    Reduced(reduced::ReducedCmd),
    /// Check descriptors against the metric and distortion axioms.
    #[command(subcommand)]
    Validate(validate::ValidateCmd),
}

/// `boundary`, `spectral tau`, ...
fn name(m: &ArgMatches) -> String {
    let mut parts = Vec::new();
    let mut cur = m;
    while let Some((n, sub)) = cur.subcommand() {
        parts.push(n.to_string());
        cur = sub;
    }
    parts.join(" ")
}

fn common(c: &Command) -> &Common {
    match c {
        Command::Boundary(a) => &a.common,
        Command::Extend(s) => extend::common(s),
        Command::Spectral(s) => spectral::common(s),
        Command::Dynamics(s) => dynamics::common(s),
        Command::Gallery(s) => gallery::common(s),
        Command::Reduced(s) => reduced::common(s),
        Command::Validate(s) => validate::common(s),
    }
}

fn dispatch(c: &Command) -> CliResult<Outcome> {
    match c {
        Command::Boundary(a) => boundary::run(a),
        Command::Extend(s) => extend::run(s),
        Command::Spectral(s) => spectral::run(s),
        Command::Dynamics(s) => dynamics::run(s),
        Command::Gallery(s) => gallery::run(s),
        Command::Reduced(s) => reduced::run(s),
        Command::Validate(s) => validate::run(s),
    }
}

fn run(cli: &Cli, matches: &ArgMatches) -> CliResult<i32> {
    let outcome = dispatch(&cli.command)?;
    let command = name(matches);
    let command = if common(&cli.command).selftest {
        format!("{command} --selftest")
    } else {
        command
    };
    emit(&command, common(&cli.command), &outcome)?;
    Ok(if outcome.pass { 0 } else { 1 })
}

fn main() {
    let parsed = Cli::command()
        .try_get_matches()
        .and_then(|m| Cli::from_arg_matches(&m).map(|c| (c, m)));
    let (cli, matches) = match parsed {
        Ok(v) => v,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            CliError::Usage(e.to_string().trim_end().to_string()).emit();
            std::process::exit(2);
        }
    };
    let code = run(&cli, &matches).unwrap_or_else(|e| {
        e.emit();
        e.exit_code()
    });
    std::process::exit(code);
}
