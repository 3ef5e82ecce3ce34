//! `lexshell`: builds quotient complexes, runs verifications and scans, and
//! emits tables or JSON certificates.
//!
//! Exit status: 0 when the claim is verified or data is emitted, 1 when the
//! claim is falsified (the counterexample is in the output), 2 on usage or
//! resource errors.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use lexshell::certificate;
use lexshell::complex::DEFAULT_BUDGET;
use lexshell::partition::{set_facet_cap, DEFAULT_MAX_N};

use output::{render, Format, Report, Status};

#[derive(Parser, Debug)]
#[command(name = "lexshell", version, about = "Quotient complexes of Boolean and partition lattices")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Record wall time in certificates and the summary line.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Δ(B_kn)/S_k≀S_n.
    Wreath {
        #[command(subcommand)]
        cmd: WreathCmd,
    },
    /// Δ(Π_n)/S_n.
    Partition {
        #[command(subcommand)]
        cmd: PartitionCmd,
    },
    /// Invariant rings of permutation groups.
    Invariants {
        #[command(subcommand)]
        cmd: InvariantsCmd,
    },
    /// Recompute the verdict of a JSON certificate.
    Verify { file: PathBuf },
}

#[derive(Args, Debug, Clone, Copy)]
struct WreathArgs {
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug, Clone, Copy)]
struct BudgetArgs {
    /// Node budget for exhaustive searches.
    #[arg(long, env = "LEXSHELL_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args, Debug, Clone, Copy)]
struct DegreeArgs {
    #[arg(long, default_value_t = 40)]
    max_degree: usize,
}

#[derive(Subcommand, Debug)]
enum WreathCmd {
    /// Orbit representatives in lexicographic order with their descents.
    Facets(WreathArgs),
    /// Check lexicographic order as a shelling.
    Shell(WreathArgs),
    /// Search all orders for a shelling.
    Search {
        #[command(flatten)]
        w: WreathArgs,
        #[command(flatten)]
        b: BudgetArgs,
    },
    /// Hilbert series of the invariant ring and its numerator identity.
    Hilbert {
        #[command(flatten)]
        w: WreathArgs,
        #[command(flatten)]
        d: DegreeArgs,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct PartitionArgs {
    #[arg(long)]
    n: usize,
    /// Accept n above the default cap.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Subcommand, Debug)]
enum PartitionCmd {
    /// Facets in lexicographic label order with their descents.
    Facets(PartitionArgs),
    /// Label sequences of the facets.
    Labels(PartitionArgs),
    /// Build and verify a partitioning.
    Partitioning(PartitionArgs),
    /// Table of b_S(n).
    Bs(PartitionArgs),
    /// Increasing chain condition on rooted edge-intervals.
    Icc {
        #[command(flatten)]
        p: PartitionArgs,
        /// Check at most this many root cells per interval type.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// The projective-plane link in Δ(Π_8)/S_8.
    Rp2,
    /// b_S(n) next to the homology of each rank selection.
    ConjectureScan(PartitionArgs),
}

#[derive(Subcommand, Debug)]
enum InvariantsCmd {
    /// Molien series of S_k≀S_n against monomial orbit counts.
    Molien {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 12)]
        max_degree: usize,
    },
}

fn partition_n(p: PartitionArgs) -> Result<usize> {
    if p.n > DEFAULT_MAX_N {
        if !p.allow_large {
            bail!("n={} exceeds the default cap {DEFAULT_MAX_N}; pass --allow-large to proceed", p.n);
        }
        set_facet_cap(p.n);
    }
    Ok(p.n)
}

fn run(cli: &Cli) -> Result<Report> {
    let start = Instant::now();
    let timed = |mut c: certificate::Certificate| {
        if cli.timing {
            c.wall_time_ms = Some(start.elapsed().as_millis() as u64);
        }
        commands::certified(c)
    };
    match &cli.command {
        Command::Wreath { cmd } => match *cmd {
            WreathCmd::Facets(w) => commands::wreath_facets(w.k, w.n),
            WreathCmd::Shell(w) => timed(certificate::wreath_shelling(w.k, w.n)?),
            WreathCmd::Search { w, b } => timed(certificate::wreath_search(w.k, w.n, b.budget)?),
            WreathCmd::Hilbert { w, d } => timed(certificate::wreath_series(w.k, w.n, d.max_degree)?),
        },
        Command::Partition { cmd } => match *cmd {
            PartitionCmd::Facets(p) => commands::partition_facets(partition_n(p)?),
            PartitionCmd::Labels(p) => commands::partition_labels(partition_n(p)?),
            PartitionCmd::Partitioning(p) => timed(certificate::partition_partitioning(partition_n(p)?)?),
            PartitionCmd::Bs(p) => commands::partition_bs(partition_n(p)?),
            PartitionCmd::Icc { p, sample } => commands::partition_icc(partition_n(p)?, sample),
            PartitionCmd::Rp2 => timed(certificate::rp2()?),
            PartitionCmd::ConjectureScan(p) => timed(certificate::scan(partition_n(p)?)?),
        },
        Command::Invariants { cmd } => match *cmd {
            InvariantsCmd::Molien { k, n, max_degree } => timed(certificate::molien_identity(k, n, max_degree)?),
        },
        Command::Verify { file } => commands::verify(file),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let bytes = match render(&report, cli.format) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &bytes).map_err(anyhow::Error::from),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes).map_err(anyhow::Error::from)
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if cli.timing {
        eprintln!("{} ({} ms)", report.summary, start.elapsed().as_millis());
    } else {
        eprintln!("{}", report.summary);
    }
    match report.status {
        Status::Ok => ExitCode::SUCCESS,
        Status::Falsified => ExitCode::from(1),
    }
}
