use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod cmd;
mod report;

/// Structural analysis of CNF clause-sets.
#[derive(Parser, Debug)]
#[command(name = "cnfstruct", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct LimitArgs {
    /// Override desk-scale limits, e.g. `n=4,sat=40` (keys: sat, lean, witness, n).
    /// Applied on top of CNFSTRUCT_LIMITS.
    #[arg(long, value_name = "K=V,...")]
    pub limits: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Measures and class memberships of a DIMACS file.
    Analyze {
        /// Input file; `-` or absent reads standard input.
        path: Option<String>,
        #[arg(long)]
        json: bool,
        /// Require a matching `p cnf` header.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Autarky reduction; writes the reduced clause-set.
    Reduce {
        path: Option<String>,
        /// Extract a witness autarky for every surplus step.
        #[arg(long)]
        witnesses: bool,
        /// Largest n at which witnesses are extracted (default: the `witness` limit).
        #[arg(long, value_name = "N")]
        witness_limit: Option<usize>,
        #[arg(long, value_name = "PATH")]
        out: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Tables of the degree-bound sequences.
    Bounds {
        /// `K` or `A..B` (inclusive).
        range: String,
        /// Columns: nm, nm1, i, iprime, h, na, s2, jumps.
        #[arg(long, value_delimiter = ',', default_value = "nm")]
        seq: Vec<String>,
        /// Adds a `potprec` column for this bounds-function prefix.
        #[arg(long, value_name = "A1,A2,...")]
        prefix: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Writes a member of a generator family as DIMACS.
    Generate {
        /// A, Dt, M, F3, F4, def6, uclash, vmu-sharp, mlean-highdeg, fsue-chain.
        family: String,
        /// Positional parameters (family-specific).
        params: Vec<u64>,
        /// Deficiency (uclash, vmu-sharp, mlean-highdeg).
        #[arg(long)]
        delta: Option<u64>,
        /// Number of variables (A, Dt, M, uclash).
        #[arg(long)]
        vars: Option<u64>,
        /// Minimum positive literal degree (mlean-highdeg).
        #[arg(long)]
        degree: Option<u64>,
        #[arg(long, value_name = "PATH")]
        out: Option<String>,
    },
    /// Enumerates unsatisfiable hitting clause-sets over n variables.
    Enumerate {
        n: u32,
        /// Stop after this many isomorphism classes.
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_name = "DIR", default_value = ".")]
        out_dir: String,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Runs a verification suite: tables, potprec, sequences, generators,
    /// catalogs, reduction, dimacs, all.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of fuzz instances for the reduction suite.
        #[arg(long, default_value_t = 10_000)]
        fuzz_count: usize,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { cmd::EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Analyze { path, json, strict, limits } => cmd::analyze(path.as_deref(), json, strict, &limits),
        Command::Reduce { path, witnesses, witness_limit, out, json, strict, limits } => cmd::reduce(
            path.as_deref(),
            cmd::ReduceOpts { witnesses, witness_limit, out, json, strict },
            &limits,
        ),
        Command::Bounds { range, seq, prefix, json } => cmd::bounds(&range, &seq, prefix.as_deref(), json),
        Command::Generate { family, params, delta, vars, degree, out } => {
            cmd::generate(&family, &params, cmd::GenOpts { delta, vars, degree }, out.as_deref())
        }
        Command::Enumerate { n, cap, out_dir, json, limits } => cmd::enumerate(n, cap, &out_dir, json, &limits),
        Command::Verify { suite, seed, fuzz_count, json, limits } => cmd::verify(&suite, seed, fuzz_count, json, &limits),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {:#}", e.error);
            ExitCode::from(e.code)
        }
    }
}
