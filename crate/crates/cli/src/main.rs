mod commands;
mod config;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use nilcoh_core::{CartanType, RootSystem};

use commands::{MultiplicityArgs, SpecseqSource, UnipotentArgs, Verify};
use config::{Caps, Command, Format, RunConfig};
use report::Status;

/// Cohomology of unipotent radicals, Kostant checks and finite unipotent groups.
#[derive(Debug, Parser)]
#[command(name = "nilcoh", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    #[command(subcommand)]
    command: Cmd,
}

fn parse_type(s: &str) -> Result<CartanType, String> {
    let ty: CartanType = s.parse().map_err(|e: nilcoh_core::Error| e.to_string())?;
    RootSystem::from_type(ty).map_err(|e| e.to_string())?;
    Ok(ty)
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|_| format!("{s:?} is not an integer"))?;
    if p < 5 || !nilcoh_core::arith::is_prime(p) {
        return Err(format!("{p} is not a prime >= 5"));
    }
    Ok(p)
}

#[derive(Debug, Clone)]
struct VerifyList(Vec<Verify>);

fn parse_verify(s: &str) -> Result<VerifyList, String> {
    Verify::parse_list(s).map(VerifyList)
}

#[derive(Debug, Args)]
struct TypeArg {
    /// Root system type, e.g. A2, B3, G2.
    #[arg(long = "type", value_parser = parse_type)]
    ty: CartanType,
}

#[derive(Debug, Args)]
struct AlgebraArgs {
    #[command(flatten)]
    ty: TypeArg,
    /// Number of Galois slots.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    d: u16,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Positive roots, Cartan matrix, rho and Coxeter number.
    Roots(TypeArg),
    /// Weyl group elements, dot action on 0, inversion sets and Poincare polynomial.
    Weyl(TypeArg),
    /// Chevalley structure constants of the positive nilpotent algebra.
    Nilpotent(AlgebraArgs),
    /// Integral Chevalley-Eilenberg cohomology with weight blocks.
    Cohomology(AlgebraArgs),
    /// Compare the cohomology with the Weyl group prediction.
    Kostant(TypeArg),
    /// Multiset arrangements, Galois orbits and character multiplicities.
    Multiplicity {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Cohomological degree; all degrees when omitted.
        #[arg(long)]
        degree: Option<usize>,
        /// `cyclic` or `perm:` followed by `;`-separated generators.
        #[arg(long, default_value = "cyclic")]
        galois: String,
        /// Cyclotomic order for the Galois-invariants oracle.
        #[arg(long)]
        oracle: Option<u64>,
    },
    /// Spectral sequence of a filtered cochain complex over F_p.
    Specseq {
        /// Filter the cochain complex of this type by total root height.
        #[arg(long, value_parser = parse_type, conflicts_with = "input", required_unless_present = "input")]
        from_weight_filtration: Option<CartanType>,
        /// JSON file with `p`, `dims`, `matrices` and `filtration`.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Number of Galois slots for the weight filtration.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        d: u16,
        /// Field characteristic; defaults to 5, or the file's `p`.
        #[arg(long)]
        p: Option<u32>,
        /// Compute pages E_1 through E_pages.
        #[arg(long)]
        pages: Option<usize>,
        /// Target dimensions for the collapse certificate, comma separated.
        #[arg(long, value_delimiter = ',')]
        target: Option<Vec<usize>>,
    },
    /// The finite group U(Z/p^k) and its lower central series checks.
    Unipotent {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value_t = 5, value_parser = parse_prime)]
        p: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        /// Comma-separated checks: lcs, gr, pbw, augmentation, matrix.
        #[arg(long, default_value = "lcs,gr", value_parser = parse_verify)]
        verify: VerifyList,
        /// Highest augmentation power examined.
        #[arg(long, default_value_t = 2)]
        nmax: usize,
    },
}

fn run(cli: Cli, caps: Caps) -> Result<report::Report> {
    let jobs = cli.jobs.map(usize::from);
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("starting the worker pool")?;
    }
    let cfg = |c: Command| RunConfig::new(c, cli.format, jobs, caps);
    match cli.command {
        Cmd::Roots(t) => commands::roots(cfg(Command::Roots), t.ty),
        Cmd::Weyl(t) => commands::weyl(cfg(Command::Weyl), t.ty),
        Cmd::Nilpotent(a) => commands::nilpotent(cfg(Command::Nilpotent), a.ty.ty, a.d.into()),
        Cmd::Cohomology(a) => commands::cohomology_cmd(cfg(Command::Cohomology), a.ty.ty, a.d.into()),
        Cmd::Kostant(t) => commands::kostant(cfg(Command::Kostant), t.ty),
        Cmd::Multiplicity { alg, degree, galois, oracle } => commands::multiplicity(
            cfg(Command::Multiplicity),
            MultiplicityArgs { ty: alg.ty.ty, d: alg.d.into(), degree, galois, oracle },
        ),
        Cmd::Specseq { from_weight_filtration, input, d, p, pages, target } => {
            let source = match (from_weight_filtration, input) {
                (Some(ty), _) => SpecseqSource::WeightFiltration { ty, d: d.into() },
                (None, Some(path)) => SpecseqSource::Input(path),
                (None, None) => unreachable!("clap requires one source"),
            };
            commands::specseq(cfg(Command::Specseq), source, p, pages, target)
        }
        Cmd::Unipotent { alg, p, k, verify, nmax } => commands::unipotent(
            cfg(Command::Unipotent),
            UnipotentArgs { ty: alg.ty.ty, p, k, d: alg.d.into(), verify: verify.0, nmax },
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let caps = match Caps::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let format = cli.format;
    let out = cli.out.clone();
    let report = match run(cli, caps) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let text = match format {
        Format::Json => report.to_json(),
        Format::Tsv => report.to_tsv(),
    };
    let written = match &out {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout().lock().write_all(text.as_bytes()).context("writing to standard output"),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match report.status {
        Status::Fail => ExitCode::from(1),
        Status::Pass | Status::Ok => ExitCode::SUCCESS,
    }
}
