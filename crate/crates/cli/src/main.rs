//! `hyperjac`: command-line front end. Exit codes: 0 all checks hold, 1 a mathematical
//! check failed, 2 usage or parse error, 3 size budget refusal.

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hyperjac_core::PrimeField;

use args::Cli;
use commands::{run, Ctx, Failure};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

fn execute(cli: &Cli) -> Result<u8, Failure> {
    let c = &cli.common;
    let ctx = Ctx {
        field: PrimeField::new(c.prime)?,
        budget: c.budget,
        seed: c.seed,
        format: c.output,
    };
    let first = run(&cli.command, &ctx)?;
    let mut ok = first.ok;
    if c.cross_check {
        if c.second_prime == c.prime {
            return Err(Failure::Usage("--second-prime must differ from --prime".into()));
        }
        let other = Ctx {
            field: PrimeField::new(c.second_prime)?,
            ..ctx
        };
        let second = run(&cli.command, &other)?;
        if second.fingerprint == first.fingerprint && second.ok == first.ok {
            eprintln!("cross-check: p = {} and p = {} agree", c.prime, c.second_prime);
        } else {
            eprintln!(
                "cross-check: p = {} and p = {} disagree\n  {}\n  {}",
                c.prime, c.second_prime, first.fingerprint, second.fingerprint
            );
            ok = false;
        }
    }
    let mut stdout = std::io::stdout().lock();
    stdout
        .write_all(first.text.as_bytes())
        .and_then(|_| stdout.flush())
        .map_err(|e| Failure::Usage(format!("writing output: {e}")))?;
    Ok(if ok { 0 } else { 1 })
}
