//! `ydbraid`: generators, axiom checks, braided systems and homology from
//! JSON structure-constant files.
//!
//! Exit status: 0 when every check passes, 1 on a mathematical failure (a
//! witness is printed), 2 on malformed input or usage errors.

mod commands;
mod io;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ydbraid_core::linalg::Field;

#[derive(Parser)]
#[command(name = "ydbraid", version, about = "Exact checks for Hopf algebras, YD modules and braided systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate example structures.
    #[command(subcommand)]
    Gen(Gen),
    /// Check axioms of one or more files.
    Check(CheckArgs),
    /// Dualize a bialgebra or YD module.
    #[command(subcommand)]
    Dual(Dual),
    /// R-matrix constructions.
    #[command(subcommand)]
    Rmatrix(Rmatrix),
    /// Assemble braided systems.
    #[command(subcommand)]
    Build(Build),
    /// Verify braided systems and their morphisms.
    #[command(subcommand)]
    Verify(Verify),
    /// Replace a block of consecutive components by their tensor product.
    Glue {
        #[arg(long)]
        system: PathBuf,
        /// First component, 1-based.
        #[arg(long)]
        lo: usize,
        /// Last component, 1-based and inclusive.
        #[arg(long)]
        hi: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Randomized harnesses.
    #[command(subcommand)]
    Harness(Harness),
    /// Homology of one of the four two-sided complexes.
    Homology(HomologyArgs),
    /// Re-read a homology report and print its table.
    Report { file: PathBuf },
}

#[derive(Subcommand)]
enum Gen {
    /// Group (or monoid) algebra of a built-in group or a table file.
    GroupAlgebra {
        /// `Z<n>`, `S3`, `D4` or `table` (with `--table`).
        #[arg(long)]
        group: String,
        #[arg(long, required_if_eq("group", "table"))]
        table: Option<PathBuf>,
        /// Accept a monoid table; no antipode is attached.
        #[arg(long)]
        monoid: bool,
        #[arg(long, default_value = "Q", value_parser = parse_field)]
        field: Field,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// `H` with the adjoint action and coaction `Δ`.
    RegularYd {
        #[arg(long)]
        hopf: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// `k^dim` with action through the counit and coaction through the unit.
    TrivialYd {
        #[arg(long)]
        hopf: PathBuf,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Identity maps of a braided system, as a morphism file.
    IdentityMaps {
        #[arg(long)]
        system: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Adjoin a formal unit to a YD module, giving a YD module algebra.
    FormalUnit {
        #[arg(long = "mod")]
        module: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum CheckKind {
    Bialgebra,
    Hopf,
    Yd,
    YdAlgebra,
    Rmatrix,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum RLevelArg {
    Weak,
    Strong,
    Quantum,
}

#[derive(Args)]
struct CheckArgs {
    kind: CheckKind,
    /// Axiom level for R-matrices.
    #[arg(long, value_enum, default_value = "weak")]
    level: RLevelArg,
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Dual {
    Bialgebra {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Yd {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Rmatrix {
    /// YD module `(M, λ, δ^R)` from an `H`-module and an R-matrix.
    Coaction {
        #[arg(long = "module")]
        module: PathBuf,
        #[arg(long)]
        r: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Attach `R⁻¹ = (s⊗Id)R`.
    Inverse {
        #[arg(long)]
        r: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Variant {
    Yd,
    Ydalg,
}

#[derive(Subcommand)]
enum Build {
    /// The system `(H, M_1, …, M_r, H*)`.
    YdSystem {
        #[arg(long)]
        hopf: PathBuf,
        #[arg(long = "mod", num_args = 0..)]
        modules: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "yd")]
        variant: Variant,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Every colored Yang-Baxter instance of a system.
    Cybe { file: PathBuf },
    /// Componentwise maps between two systems of the same rank.
    Morphism {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long)]
        maps: PathBuf,
    },
}

#[derive(Subcommand)]
enum Harness {
    /// Seeded random trials comparing cYBE instances with the axioms they encode.
    Precision {
        #[arg(long)]
        hopf: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum DifferentialArg {
    D,
    DPrime,
    Total,
}

#[derive(Args)]
pub struct HomologyArgs {
    #[arg(long)]
    hopf: PathBuf,
    #[arg(long = "mod")]
    module: PathBuf,
    #[arg(long)]
    coeff: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    line: u8,
    #[arg(long)]
    max_degree: usize,
    #[arg(long)]
    cohomology: bool,
    #[arg(long, value_enum, default_value = "total")]
    differential: DifferentialArg,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: ydbraid_core::Error| e.to_string())
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("YDBRAID_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("YDBRAID_THREADS must be a positive integer, got '{v}'"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn run(cli: Cli) -> io::CliResult<bool> {
    use commands as c;
    match cli.command {
        Command::Gen(Gen::GroupAlgebra { group, table, monoid, field, output }) => {
            c::gen_group_algebra(&group, table.as_deref(), monoid, field, output.as_deref())
        }
        Command::Gen(Gen::RegularYd { hopf, output }) => c::gen_regular_yd(&hopf, output.as_deref()),
        Command::Gen(Gen::TrivialYd { hopf, dim, output }) => c::gen_trivial_yd(&hopf, dim, output.as_deref()),
        Command::Gen(Gen::IdentityMaps { system, output }) => c::gen_identity_maps(&system, output.as_deref()),
        Command::Gen(Gen::FormalUnit { module, output }) => c::gen_formal_unit(&module, output.as_deref()),
        Command::Check(a) => c::check(a.kind, a.level, &a.files),
        Command::Dual(Dual::Bialgebra { file, output }) => c::dual_bialgebra(&file, output.as_deref()),
        Command::Dual(Dual::Yd { file, output }) => c::dual_yd(&file, output.as_deref()),
        Command::Rmatrix(Rmatrix::Coaction { module, r, output }) => c::r_coaction(&module, &r, output.as_deref()),
        Command::Rmatrix(Rmatrix::Inverse { r, output }) => c::r_inverse(&r, output.as_deref()),
        Command::Build(Build::YdSystem { hopf, modules, variant, output }) => {
            c::build_system(&hopf, &modules, variant, output.as_deref())
        }
        Command::Verify(Verify::Cybe { file }) => c::verify_cybe(&file),
        Command::Verify(Verify::Morphism { from, to, maps }) => c::verify_morphism(&from, &to, &maps),
        Command::Glue { system, lo, hi, output } => c::glue(&system, lo, hi, output.as_deref()),
        Command::Harness(Harness::Precision { hopf, dim, trials, seed }) => c::precision(&hopf, dim, trials, seed),
        Command::Homology(a) => c::homology(&a),
        Command::Report { file } => c::report(&file),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format(|buf, rec| {
            let level = match rec.level() {
                log::Level::Warn => "warning".to_string(),
                l => l.as_str().to_lowercase(),
            };
            writeln!(buf, "{level}: {}", rec.args())
        })
        .init();
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
