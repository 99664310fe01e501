use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ncpoisson_cli::{output, preset, run, Options, Scenario, Stage};

#[derive(Parser)]
#[command(name = "ncpoisson", version, about = "Double Poisson brackets, BRST complexes and their representation homology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    args: Args,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Double bracket axioms and the Hamiltonian identity
    VerifyBracket,
    /// Build the BRST presentation and check its charge
    BuildBrst,
    /// Representation laws at the scenario's dimension vector
    Rep,
    /// Betti tables of the Koszul and BRST representation complexes
    Homology,
    /// BRST homology against invariant Koszul homology times gl cohomology
    Decomposition,
    /// Relations of φ and ψ and the splitting of invariant Koszul homology
    PhiPsi,
    /// Diagonal restriction to multisymmetric invariants
    Diagonal,
    /// The scenario's `checks`, or every stage if it lists none
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(clap::Args)]
struct Args {
    /// Scenario file (JSON)
    #[arg(long, global = true, conflicts_with = "preset")]
    scenario: Option<PathBuf>,
    /// Shipped scenario: jordan, genus-g, gauge, laurent, group-group, star
    #[arg(long, global = true)]
    preset: Option<String>,
    /// Genus for the genus-g preset
    #[arg(long, global = true, default_value_t = 2)]
    genus: usize,
    /// Dimension vector: one number for every vertex, or a comma separated list
    #[arg(long, global = true)]
    dim: Option<String>,
    #[arg(long, global = true)]
    max_weight: Option<i32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for slice computations
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for sampled words
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Write the slice bases of the homology command into this directory
    #[arg(long, global = true)]
    dump_bases: Option<PathBuf>,
}

fn load(args: &Args) -> Result<Scenario, String> {
    let mut s = match (&args.scenario, &args.preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            Scenario::from_json(&text)?
        }
        (None, Some(name)) => preset(name, args.genus)?,
        (None, None) => return Err("one of --scenario or --preset is required".into()),
    };
    if let Some(d) = &args.dim {
        let parts: Result<Vec<usize>, _> = d.split(',').map(|p| p.trim().parse::<usize>()).collect();
        let parts = parts.map_err(|e| format!("--dim: {e}"))?;
        s.dimension = if parts.len() == 1 { vec![parts[0]; s.quiver.vertices.len()] } else { parts };
    }
    if let Some(w) = args.max_weight {
        if w < 0 {
            return Err("--max-weight: must be nonnegative".into());
        }
        s.max_weight = w;
    }
    Ok(s)
}

fn stages(cmd: Command, s: &Scenario) -> Result<Vec<Stage>, String> {
    Ok(match cmd {
        Command::VerifyBracket => vec![Stage::Hamiltonian],
        Command::BuildBrst => vec![Stage::Brst],
        Command::Rep => vec![Stage::Rep],
        Command::Homology => vec![Stage::Homology],
        Command::Decomposition => vec![Stage::Decomposition],
        Command::PhiPsi => vec![Stage::PhiPsi],
        Command::Diagonal => vec![Stage::Diagonal],
        Command::All if s.checks.iter().any(|c| c != "all") => {
            s.checks.iter().filter(|c| *c != "all").map(|c| Stage::parse(c)).collect::<Result<_, _>>()?
        }
        Command::All => Stage::ALL.to_vec(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.args.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(2);
        }
    }
    let result = load(&cli.args).and_then(|s| {
        let st = stages(cli.command, &s)?;
        run(&s, &st, &Options { seed: cli.args.seed, dump_bases: cli.args.dump_bases.clone() })
    });
    match result {
        Ok(report) => {
            let out = match cli.args.format {
                Format::Text => output::text(&report),
                Format::Json => output::json(&report),
                Format::Csv => output::csv(&report),
            };
            print!("{out}");
            if report.failed() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
