use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use vanishing_bounds::report::{
    cmd_best, cmd_bound, cmd_plotdata, cmd_reproduce, cmd_table, exit_code, CommandOutput, ConfigOverrides, IntRange,
    OutputFormat, ReproTarget, RunConfig, EXIT_USAGE,
};
use vanishing_bounds::{Error, SymmetryGroup, TfChoice};

#[derive(Parser)]
#[command(name = "vanishing", version, about = "Bounds on the order of vanishing at the central point")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Absolute error target for each centered moment.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    format: Option<OutputFormat>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// key = value settings; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Highest level tried by the level search.
    #[arg(long, global = true)]
    max_level: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// A single bound at one level.
    Bound {
        #[arg(long)]
        group: SymmetryGroup,
        #[arg(long)]
        rank: u32,
        #[arg(long, default_value_t = 1)]
        level: u32,
        #[arg(long, default_value = "naive")]
        tf: TfChoice,
    },
    /// Rank × level grid.
    Table {
        #[arg(long)]
        group: SymmetryGroup,
        #[arg(long, alias = "rank")]
        ranks: IntRange,
        #[arg(long, alias = "level")]
        levels: IntRange,
        #[arg(long, default_value = "naive")]
        tf: TfChoice,
    },
    /// Lowest bound per rank over all levels.
    Best {
        #[arg(long)]
        group: SymmetryGroup,
        #[arg(long, alias = "rank")]
        ranks: IntRange,
        #[arg(long, default_value = "naive")]
        tf: TfChoice,
    },
    /// Compare against the published tables.
    Reproduce {
        #[arg(long)]
        which: ReproTarget,
    },
    /// CSV data behind one of figures 5 to 12.
    Plotdata {
        #[arg(long)]
        figure: u32,
    },
}

fn load_config(common: &Common, default_format: OutputFormat) -> Result<RunConfig, Error> {
    let mut config = RunConfig { output_format: default_format, ..RunConfig::default() };
    if let Some(path) = &common.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        config.apply(&ConfigOverrides::parse(&text)?);
    }
    config.apply(&ConfigOverrides {
        tolerance: common.tol,
        output_format: common.format,
        parallelism: common.jobs,
        max_level: common.max_level,
        ..ConfigOverrides::default()
    });
    Ok(config)
}

fn run(cli: Cli) -> Result<CommandOutput, Error> {
    let default_format = match cli.command {
        Command::Reproduce { .. } => OutputFormat::Text,
        _ => OutputFormat::Csv,
    };
    let config = load_config(&cli.common, default_format)?;
    match cli.command {
        Command::Bound { group, rank, level, tf } => cmd_bound(group, rank, level, tf, &config),
        Command::Table { group, ranks, levels, tf } => cmd_table(group, ranks, levels, tf, &config),
        Command::Best { group, ranks, tf } => cmd_best(group, ranks, tf, &config),
        Command::Reproduce { which } => cmd_reproduce(which, &config).map(|(_, out)| out),
        Command::Plotdata { figure } => cmd_plotdata(figure, &config),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_path = cli.common.out.clone();
    let output = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let written = match out_path {
        Some(path) => std::fs::write(&path, &output.text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(output.text.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    ExitCode::from(output.exit_code as u8)
}
