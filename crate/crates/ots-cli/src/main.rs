//! `ots`: normalize, compare, and bound ordinal terms, and embed finite
//! well-founded relations, from the command line.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ots_core::{
    f_bound, fund_seq_gprime, parse_expr, parse_relation_text, render, run_checks, takeuti_embed,
    verify_embedding, BoundContext, Error, LinearOrder, StructureDescriptor, DEFAULT_MAX_NODES,
};

#[derive(Parser)]
#[command(name = "ots", about = "ordinal term structures as executable notation systems")]
struct Cli {
    /// Derivative level K of the structure
    #[arg(long, default_value_t = 1, global = true)]
    levels: u32,

    /// Input order: "omega" or a largest index n
    #[arg(long, default_value = "omega", global = true)]
    order: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a term and print its normal form
    Normalize { term: String },
    /// Compare two terms; prints Less, Equal, or Greater
    Compare { left: String, right: String },
    /// Evaluate the bound function at (beta, alpha)
    Fbound { beta: String, alpha: String },
    /// Print the n-th fundamental sequence element of the generator at c
    Fundseq { c: u32, n: u32 },
    /// Extract an order embedding from a relation file
    Embed {
        file: String,
        /// Largest accepted node count
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: u32,
    },
    /// Run the randomized law suites and print a report
    Check {
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_order(text: &str) -> Result<LinearOrder, String> {
    if text.eq_ignore_ascii_case("omega") {
        return Ok(LinearOrder::Omega);
    }
    text.parse::<u32>()
        .map(LinearOrder::Finite)
        .map_err(|_| format!("order must be \"omega\" or a number, got {text:?}"))
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } | Error::MalformedTerm(_) => 2,
        Error::NotWellFounded(_) => 3,
        Error::InstanceTooLarge(_, _) => 4,
        _ => 1,
    }
}

fn fail(err: Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(exit_code_for(&err))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let order = match parse_order(&cli.order) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let sd = StructureDescriptor::new(cli.levels, order);

    match cli.command {
        Command::Normalize { term } => match parse_expr(&term, &sd) {
            Ok(t) => {
                println!("{}", render(&t));
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Command::Compare { left, right } => {
            let l = match parse_expr(&left, &sd) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            let r = match parse_expr(&right, &sd) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            match ots_core::compare(&l, &r, &sd) {
                Ok(ordering) => {
                    println!(
                        "{}",
                        match ordering {
                            std::cmp::Ordering::Less => "Less",
                            std::cmp::Ordering::Equal => "Equal",
                            std::cmp::Ordering::Greater => "Greater",
                        }
                    );
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Fbound { beta, alpha } => {
            let ctx = match BoundContext::new(sd) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let b = match parse_expr(&beta, &sd) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            let a = match parse_expr(&alpha, &sd) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            match f_bound(&b, &a, &ctx) {
                Ok(t) => {
                    println!("{}", render(&t));
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Fundseq { c, n } => {
            let ctx = match BoundContext::new(sd) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match fund_seq_gprime(c, n, &ctx) {
                Ok(t) => {
                    println!("{}", render(&t));
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Embed { file, max_nodes } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {file}: {e}");
                    return ExitCode::from(1);
                }
            };
            let rel = match parse_relation_text(&text) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            match takeuti_embed(&rel, max_nodes) {
                Ok(report) => {
                    let verified = verify_embedding(&rel, &report);
                    print!("{}", verified.render());
                    if verified.all_passed() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(5)
                    }
                }
                Err(e) => fail(e),
            }
        }
        Command::Check { samples, seed } => {
            let report = run_checks(&sd, samples, seed);
            print!("{}", report.render());
            if report.total_violations() == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(5)
            }
        }
    }
}
