//! Command-line front end. Relations exit 0 when they hold and 1 when they
//! do not (printing a witness when one is available); computed values are
//! printed in the canonical re-parseable syntax; syntax, usage and role
//! errors exit 2. Arguments are inline expressions, or `@path` to read the
//! expression from a UTF-8 file.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use situ::normalize::{join, meet, normalize};
use situ::orthogonality::{orthogonal, refines_bounded};
use situ::project::project;
use situ::semantics::{dual, member_type};
use situ::subtype::{equivalent, subtype};
use situ::syntax::{
    parse_global, parse_process, parse_type, render_process, render_type, GlobalTypeTerm,
    ProcessTerm, RoleName, SessionTypeTerm,
};
use situ::typecheck::check;

#[derive(Parser)]
#[command(name = "situ", version, about = "Session types with intersections and unions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether type T is a subtype of type S.
    Subtype { t: String, s: String },
    /// Decide whether two types are equivalent.
    Equiv { t: String, s: String },
    /// Print the normal form of a type.
    Normalize { t: String },
    /// Print the dual of a type.
    Dual { t: String },
    /// Print the greatest lower bound of two types.
    Meet { t: String, s: String },
    /// Print the least upper bound of two types.
    Join { t: String, s: String },
    /// Decide whether process P inhabits type T.
    Member { p: String, t: String },
    /// Check process P against type T.
    Check { t: String, p: String },
    /// Decide whether two processes are orthogonal.
    Orthogonal { p: String, q: String },
    /// Search for a test separating P from Q up to a depth bound.
    Refines {
        p: String,
        q: String,
        /// Enumeration depth for candidate tests.
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Project a two-party global type onto a role.
    Project {
        g: String,
        #[arg(long)]
        role: String,
    },
    /// Print the one-step transitions of a process.
    Step { p: String },
}

fn resolve(arg: &str) -> Result<String, String> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map(|s| s.trim().to_owned())
            .map_err(|e| format!("cannot read `{path}`: {e}")),
        None => Ok(arg.to_owned()),
    }
}

fn typ(arg: &str) -> Result<SessionTypeTerm, String> {
    let text = resolve(arg)?;
    parse_type(&text).map_err(|e| e.to_string())
}

fn proc(arg: &str) -> Result<ProcessTerm, String> {
    let text = resolve(arg)?;
    parse_process(&text).map_err(|e| e.to_string())
}

fn global(arg: &str) -> Result<GlobalTypeTerm, String> {
    let text = resolve(arg)?;
    parse_global(&text).map_err(|e| e.to_string())
}

fn relation(holds: bool) -> ExitCode {
    println!("{holds}");
    if holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Subtype { t, s } => Ok(relation(subtype(&typ(&t)?, &typ(&s)?))),
        Command::Equiv { t, s } => Ok(relation(equivalent(&typ(&t)?, &typ(&s)?))),
        Command::Normalize { t } => {
            println!("{}", render_type(&normalize(&typ(&t)?).embed()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Dual { t } => {
            println!("{}", render_type(&dual(&typ(&t)?)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Meet { t, s } => {
            println!("{}", render_type(&meet(&typ(&t)?, &typ(&s)?).embed()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Join { t, s } => {
            println!("{}", render_type(&join(&typ(&t)?, &typ(&s)?).embed()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Member { p, t } => Ok(relation(member_type(&proc(&p)?, &typ(&t)?))),
        Command::Check { t, p } => Ok(relation(check(&typ(&t)?, &proc(&p)?))),
        Command::Orthogonal { p, q } => {
            let holds = orthogonal(&proc(&p)?, &proc(&q)?).map_err(|e| e.to_string())?;
            Ok(relation(holds))
        }
        Command::Refines { p, q, depth } => {
            let verdict =
                refines_bounded(&proc(&p)?, &proc(&q)?, depth).map_err(|e| e.to_string())?;
            match verdict.counterexample {
                None => {
                    println!("HOLDS-UP-TO-BOUND depth={depth}");
                    Ok(ExitCode::SUCCESS)
                }
                Some(witness) => {
                    println!("FAILS witness={}", render_process(&witness));
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Project { g, role } => {
            if !RoleName::is_valid(&role) {
                return Err(format!("invalid role name `{role}`"));
            }
            let projected =
                project(&global(&g)?, &RoleName::new(&role)).map_err(|e| e.to_string())?;
            println!("{}", render_type(&projected));
            Ok(ExitCode::SUCCESS)
        }
        Command::Step { p } => {
            let transitions = situ::lts::step(&proc(&p)?);
            for succ in &transitions.internal {
                println!("tau --> {}", render_process(succ));
            }
            for (label, succ) in &transitions.labeled {
                println!("{label} --> {}", render_process(succ));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
