mod commands;
mod selftest;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (certificate format 1)");

#[derive(Parser)]
#[command(name = "linkset", version = VERSION, about = "Linking systems of difference sets")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Worker threads for searches (0 = all cores).
    #[arg(long, global = true, env = "LINKSET_JOBS", default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a group.
    Group {
        #[arg(long)]
        group: String,
    },
    /// Difference sets.
    #[command(subcommand)]
    Ds(DsCommand),
    /// Reduced linking systems.
    #[command(subcommand)]
    Link(LinkCommand),
    /// Difference matrices.
    #[command(subcommand)]
    Dm(DmCommand),
    /// Bent functions and bent sets.
    #[command(subcommand)]
    Bent(BentCommand),
    /// Build a linking system certificate.
    #[command(subcommand)]
    Build(BuildCommand),
    /// Exhaustive census of linking systems.
    #[command(subcommand)]
    Census(CensusCommand),
    /// Nonexistence searches.
    Nonexist(NonexistArgs),
    /// Run the worked examples end to end.
    Selftest,
}

#[derive(Subcommand)]
enum DsCommand {
    /// Verify a difference-set file (`-` for stdin).
    Verify { file: String },
    /// List every difference set of size `k`.
    Enumerate {
        #[arg(long)]
        group: String,
        #[arg(short)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum LinkCommand {
    /// Verify a reduced linking system certificate.
    VerifyReduced { file: String },
    /// Verify a certificate, then expand it and check the full system.
    Verify { file: String },
}

#[derive(Subcommand)]
enum DmCommand {
    /// Construct a difference matrix over a group.
    Construct {
        #[arg(long)]
        group: String,
        /// Number of rows (default: the largest the constructions reach).
        #[arg(long)]
        rows: Option<usize>,
    },
    /// Verify a difference-matrix file.
    Verify { file: String },
}

#[derive(Subcommand)]
enum BentCommand {
    /// Kerdock bent set on 2d+2 variables.
    Kerdock {
        #[arg(short)]
        d: u32,
        /// Emit the derived linking system instead of the bent set.
        #[arg(long)]
        linking: bool,
    },
    /// Verify a bent-set file.
    Verify { file: String },
}

#[derive(Args)]
pub struct GroupArg {
    #[arg(long)]
    pub group: String,
}

#[derive(Subcommand)]
enum BuildCommand {
    /// Three sets from the identity-free difference matrix.
    General(GroupArg),
    /// Difference matrices over the quotient by the leading elementary subgroup.
    Improved(GroupArg),
    /// Nonabelian family D4 x K; `--group` describes K.
    Tyken {
        #[arg(long)]
        group: String,
        #[arg(short)]
        d: u32,
    },
    /// Family in which the first set is not reversible.
    Nonrev {
        #[arg(short)]
        d: u32,
    },
}

#[derive(Subcommand)]
enum CensusCommand {
    /// All (16,6,2,4) linking systems in Z4 x Z4.
    Z42 {
        /// Size of the systems to list.
        #[arg(long, default_value_t = 3)]
        size: usize,
        /// Include every system in the report.
        #[arg(long)]
        systems: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Search {
    Z8z2,
    McfarlandQ3,
    SpenceD1,
}

#[derive(Args)]
pub struct NonexistArgs {
    #[arg(value_enum)]
    pub search: Search,
    /// Group to search (defaults to every group the search covers).
    #[arg(long)]
    pub group: Option<String>,
    /// Test every pair.
    #[arg(long, conflicts_with = "pruned")]
    pub full: bool,
    /// Test translation-class representatives only (default).
    #[arg(long)]
    pub pruned: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let searches = matches!(cli.command, Command::Census(_) | Command::Nonexist(_));
    let threads = if searches { cli.jobs } else { 1 };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
        eprintln!("error: cannot start worker pool: {e}");
        return ExitCode::from(2);
    }
    let out = cli.output;
    let result = match cli.command {
        Command::Group { group } => commands::group(out, &group),
        Command::Ds(DsCommand::Verify { file }) => commands::ds_verify(out, &file),
        Command::Ds(DsCommand::Enumerate { group, k }) => commands::ds_enumerate(out, &group, k),
        Command::Link(LinkCommand::VerifyReduced { file }) => commands::link_verify(out, &file, false),
        Command::Link(LinkCommand::Verify { file }) => commands::link_verify(out, &file, true),
        Command::Dm(DmCommand::Construct { group, rows }) => commands::dm_construct(out, &group, rows),
        Command::Dm(DmCommand::Verify { file }) => commands::dm_verify(out, &file),
        Command::Bent(BentCommand::Kerdock { d, linking }) => commands::bent_kerdock(out, d, linking),
        Command::Bent(BentCommand::Verify { file }) => commands::bent_verify(out, &file),
        Command::Build(BuildCommand::General(g)) => commands::build(out, "general", Some(&g.group), None),
        Command::Build(BuildCommand::Improved(g)) => commands::build(out, "improved", Some(&g.group), None),
        Command::Build(BuildCommand::Tyken { group, d }) => commands::build(out, "tyken", Some(&group), Some(d)),
        Command::Build(BuildCommand::Nonrev { d }) => commands::build(out, "nonrev", None, Some(d)),
        Command::Census(CensusCommand::Z42 { size, systems }) => commands::census_z42(out, size, systems),
        Command::Nonexist(args) => commands::nonexist(out, &args),
        Command::Selftest => selftest::run(out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
