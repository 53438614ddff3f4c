use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fault_atlas::cache::CACHE_ENV;
use fault_atlas::chart::MAX_CHART_SIDE;
use fault_atlas::par;
use fault_atlas::render;
use fault_atlas::{
    classify, counting_feasible, decode, encode, expand, verify, witness, BoardSpec, Chart, ExpandAxis, SearchBudget,
    Tiling, Topology, WitnessStore,
};

#[derive(Parser)]
#[command(
    name = "fault-atlas",
    version,
    about = "Fault-free domino tilings on rectangles, cylinders, tori and Möbius strips"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a board has a fault-free tiling.
    Classify {
        #[command(flatten)]
        board: BoardArgs,
        /// Also print the counting bound.
        #[arg(long)]
        explain: bool,
    },
    /// Produce a fault-free tiling of a board.
    Solve {
        #[command(flatten)]
        board: BoardArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, value_name = "DIR")]
        witnesses: Option<PathBuf>,
    },
    /// Check a tiling file.
    Verify { file: PathBuf },
    /// Grow a fault-free tiling by two rows or two columns.
    Expand {
        file: PathBuf,
        #[arg(long)]
        axis: ExpandAxis,
        /// Number of successive expansions.
        #[arg(long, default_value_t = 1)]
        times: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the counting bound for a board.
    Bound {
        #[command(flatten)]
        board: BoardArgs,
    },
    /// Write the X/O chart of a surface.
    Census {
        #[arg(long, value_parser = parse_topology)]
        topology: Topology,
        #[arg(long, default_value_t = 20)]
        max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Build, store and re-verify a witness for every X cell.
        #[arg(long, value_name = "DIR")]
        witnesses: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Draw a tiling file.
    Render {
        file: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct BoardArgs {
    #[arg(long, value_parser = parse_topology)]
    topology: Topology,
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
    #[arg(long, allow_hyphen_values = true)]
    b: i64,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long)]
    budget_nodes: Option<u64>,
    #[arg(long)]
    budget_ms: Option<u64>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ascii,
    Svg,
    Json,
}

fn parse_topology(s: &str) -> Result<Topology, String> {
    s.parse().map_err(|_| format!("unknown topology '{s}' (expected rectangle, cylinder, torus or mobius)"))
}

enum Failure {
    Input(String),
    Verification(String),
}

type Outcome = Result<(), Failure>;

impl BoardArgs {
    fn spec(&self) -> Result<BoardSpec, Failure> {
        BoardSpec::from_signed(self.topology, self.a, self.b).map_err(|e| Failure::Input(e.to_string()))
    }
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        let default = SearchBudget::default();
        SearchBudget {
            max_nodes: self.budget_nodes.unwrap_or(default.max_nodes),
            max_millis: self.budget_ms.unwrap_or(default.max_millis),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(report)) => {
            eprint!("{report}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Classify { board, explain } => {
            let board = board.spec()?;
            let verdict = classify(&board);
            println!("{}", verdict.describe());
            if explain {
                print!("{}", counting_feasible(&board).render());
            }
            Ok(())
        }
        Command::Solve { board, budget, output, witnesses } => {
            let board = board.spec()?;
            let verdict = classify(&board);
            if !verdict.tileable {
                println!("{}", verdict.describe());
                return Ok(());
            }
            let built = match witness_dir(witnesses) {
                Some(dir) => open_store(&dir)?.get_or_build(&board, budget.budget()).map_err(|e| e.to_string()),
                None => witness(&board, budget.budget()).map_err(|e| e.to_string()),
            }
            .map_err(Failure::Input)?;
            eprintln!("{board}: witness from {}", built.source);
            emit(&built.tiling, &output)
        }
        Command::Verify { file } => {
            let tiling = read_tiling(&file)?;
            let report = verify(&tiling.board, &tiling).map_err(|e| Failure::Input(e.to_string()))?;
            if report.fault_free {
                print!("{}: {}", tiling.board, report.summary());
                Ok(())
            } else {
                Err(Failure::Verification(format!("{}: {}", tiling.board, report.summary())))
            }
        }
        Command::Expand { file, axis, times, output } => {
            let mut tiling = read_tiling(&file)?;
            require_fault_free(&tiling)?;
            for _ in 0..times {
                tiling = expand(&tiling, axis).map_err(|e| Failure::Input(e.to_string()))?;
            }
            emit(&tiling, &output)
        }
        Command::Bound { board } => {
            print!("{}", counting_feasible(&board.spec()?).render());
            Ok(())
        }
        Command::Census { topology, max, out, witnesses, budget } => {
            if max == 0 || max > MAX_CHART_SIDE {
                return Err(Failure::Input(format!("--max must be between 1 and {MAX_CHART_SIDE}")));
            }
            let chart = Chart::census(topology, max, max).map_err(|e| Failure::Input(e.to_string()))?;
            write_output(out.as_deref(), &chart.to_text())?;
            if let Some(dir) = witness_dir(witnesses) {
                populate(&chart, &dir, budget.budget())?;
            }
            Ok(())
        }
        Command::Render { file, output } => {
            let tiling = read_tiling(&file)?;
            require_fault_free(&tiling)?;
            emit(&tiling, &output)
        }
    }
}

/// `--witnesses` wins over the environment.
fn witness_dir(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
}

fn open_store(dir: &Path) -> Result<WitnessStore, Failure> {
    WitnessStore::open(dir).map_err(|e| Failure::Input(e.to_string()))
}

fn populate(chart: &Chart, dir: &Path, budget: SearchBudget) -> Outcome {
    let store = open_store(dir)?;
    let boards = chart.tileable_boards();
    let start = Instant::now();
    let results = par::map(&boards, |board| {
        let built = store.get_or_build(board, budget).map_err(|e| e.to_string())?;
        // Read back what was written so the stored file itself is checked.
        match store.load(board) {
            Ok(Some(t)) if t == built.tiling => Ok(()),
            Ok(_) => Err(format!("{board}: stored witness differs from the built one")),
            Err(e) => Err(e.to_string()),
        }
    });
    let failures: Vec<String> = results.into_iter().filter_map(Result::err).collect();
    eprintln!(
        "{} witnesses in {} verified in {:.1?}",
        boards.len() - failures.len(),
        store.dir().display(),
        start.elapsed()
    );
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(failures.join("\n") + "\n"))
    }
}

fn read_tiling(path: &Path) -> Result<Tiling, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    decode(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn require_fault_free(tiling: &Tiling) -> Outcome {
    let report = verify(&tiling.board, tiling).map_err(|e| Failure::Input(e.to_string()))?;
    if report.fault_free {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{}: {}", tiling.board, report.summary())))
    }
}

fn emit(tiling: &Tiling, output: &OutputArgs) -> Outcome {
    let text = match output.format {
        Format::Ascii => render::ascii(tiling),
        Format::Svg => render::svg(tiling),
        Format::Json => encode(tiling),
    };
    write_output(output.out.as_deref(), &text)
}

fn write_output(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
