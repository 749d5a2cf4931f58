//! `subtile`: tiling, subtiling and threshold queries from the command line.
//!
//! Results go to stdout as JSON (or SVG/ASCII where a tiling is drawn), a
//! one-line summary goes to stderr. Exit codes: 0 positive, 1 negative,
//! 2 error. An exhausted search budget also exits 2 but carries the error
//! kind `budget-exceeded`, so it is never mistaken for a negative answer.

mod commands;
mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use subtile_core::subtile::RearrangeMode;
use subtile_core::{Budget, Error};

#[derive(Parser)]
#[command(name = "subtile", version, about = "Rectangle tilings, subtilings and their thresholds")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Library file: `{"pieces": [...], "mode": ...}` or a bare piece list.
    #[arg(long, global = true)]
    pub library: Option<PathBuf>,
    /// Instance file with a library, board, tiling, multiset or row assignment.
    #[arg(long, global = true)]
    pub instance: Option<PathBuf>,
    /// Board height (rows).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Board width (columns).
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Widest board searched.
    #[arg(long, global = true)]
    pub mmax: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Trans)]
    pub mode: ModeArg,
    /// With `--mode gen`, also allow reflections.
    #[arg(long, global = true)]
    pub reflections: bool,
    /// Search node limit.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_LIMIT)]
    pub budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Palette seed for SVG output.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Read `(h, w)` / `(x, y)` pair lists instead of JSON objects.
    #[arg(long, global = true)]
    pub paper_encoding: bool,
}

impl Common {
    pub fn rearrange(&self) -> RearrangeMode {
        match (self.mode, self.reflections) {
            (ModeArg::Trans, _) => RearrangeMode::Translations,
            (ModeArg::Gen, false) => RearrangeMode::Rotations,
            (ModeArg::Gen, true) => RearrangeMode::RotationsAndReflections,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    /// Translations only.
    Trans,
    /// Quarter turns allowed.
    Gen,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Svg,
    Ascii,
}

#[derive(Subcommand)]
enum Command {
    /// Find a tiling of the board, optionally with prescribed piece counts.
    Tile,
    /// Count the tilings of the board.
    Count,
    /// Decide whether a tiling or multiset admits a subtiling.
    Decide {
        /// Use the fault-free staircase of this odd width as the instance.
        #[arg(long)]
        staircase: Option<usize>,
    },
    /// Largest width up to `--mmax` with a tiling that admits no subtiling.
    Beta,
    /// Row-assigned tiling of an instance, or a library-level report.
    Represent {
        /// Search for a counterexample up to `--mmax`.
        #[arg(long)]
        search: bool,
        /// Largest count per piece and row interval in the counterexample search.
        #[arg(long = "cmax", visible_alias = "count-max", default_value_t = 2)]
        count_max: u32,
    },
    /// Whether `a x b` rectangles (turns allowed) tile the board.
    Rectpack {
        /// Sides and board as positionals: `a b [n] [m]`.
        #[arg(num_args = 0..=4, value_name = "A B N M")]
        dims: Vec<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        /// Report the single-rectangle threshold for height `--n` instead.
        #[arg(long)]
        beta: bool,
    },
    /// Tall-rectangle hypotheses, threshold and rearrangement.
    Tall,
    /// Build the tiling instance for a number partitioning problem.
    Reduce {
        /// Comma-separated positive integers.
        #[arg(long)]
        partition: String,
        /// Write the instance to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Decide the instance through the subtiling search.
        #[arg(long)]
        solve: bool,
        /// Check that no tiling of the instance turns a piece.
        #[arg(long)]
        rigidity: bool,
    },
    /// Closed-form threshold bounds, optionally checked against a search.
    Bounds {
        #[arg(long)]
        check: bool,
    },
    /// Draw the instance's tiling.
    Render {
        #[arg(long)]
        staircase: Option<usize>,
    },
}

/// Everything that can stop a command.
#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Input(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Core(e) if e.is_budget() => "budget-exceeded",
            Failure::Core(_) => "error",
            Failure::Input(_) => "input",
            Failure::Usage(_) => "usage",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Input(s) | Failure::Usage(s) => s.clone(),
        }
    }
}

/// A finished command: what to print and whether the answer was positive.
pub struct Outcome {
    pub stdout: String,
    pub summary: String,
    pub positive: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = &cli.common;
    let result = match &cli.command {
        Command::Tile => commands::tile(c),
        Command::Count => commands::count(c),
        Command::Decide { staircase } => commands::decide(c, *staircase),
        Command::Beta => commands::beta(c),
        Command::Represent { search, count_max } => commands::represent(c, *search, *count_max),
        Command::Rectpack { dims, a, b, beta } => {
            let pos = |i: usize| dims.get(i).copied();
            let mut c = c.clone();
            c.n = c.n.or(pos(2));
            c.m = c.m.or(pos(3));
            match (a.or(pos(0)), b.or(pos(1))) {
                (Some(a), Some(b)) => commands::rectpack(&c, a, b, *beta),
                _ => Err(Failure::Usage("rectpack needs both sides, as `a b` or --a/--b".into())),
            }
        }
        Command::Tall => commands::tall(c),
        Command::Reduce {
            partition,
            emit,
            solve,
            rigidity,
        } => commands::reduce(c, partition, emit.as_deref(), *solve, *rigidity),
        Command::Bounds { check } => commands::bounds(c, *check),
        Command::Render { staircase } => commands::render(c, *staircase),
    };
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            eprintln!("{}", out.summary);
            ExitCode::from(if out.positive { 0 } else { 1 })
        }
        Err(f) => {
            let body = serde_json::json!({ "error": f.kind(), "message": f.message() });
            println!("{body}");
            eprintln!("subtile: {}", f.message());
            ExitCode::from(2)
        }
    }
}
