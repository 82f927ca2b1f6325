use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cotangent::cli::problem::ProblemFile;
use cotangent::cli::{exit_status, run, Command, RunOptions};
use cotangent::corpus::{run_bundled, run_criteria};
use cotangent::{Error, Field};

#[derive(Parser)]
#[command(name = "cotangent", version, about = "Derivations, square-zero extensions and obstruction classes of presented algebras")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimensions of T0, T1, T2
    Tmods(FileArgs),
    /// Classify square-zero extensions
    Exal(FileArgs),
    /// Lift homomorphisms along square-zero extensions
    Lift(FileArgs),
    /// Deform along a square-zero extension of the base
    Deform(FileArgs),
    /// Run every problem in the file with the brute-force cross-checks
    Oracle(FileArgs),
    /// Run the built-in acceptance corpus
    Corpus(Flags),
}

#[derive(Args)]
struct FileArgs {
    file: PathBuf,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args, Clone)]
struct Flags {
    /// Machine-readable output
    #[arg(long)]
    json: bool,
    /// Cross-check every claim by exhaustive enumeration
    #[arg(long)]
    oracle: bool,
    /// Truncation degree for infinite-dimensional algebras
    #[arg(long, value_name = "D")]
    truncate: Option<u32>,
    /// Candidate budget for the enumerations
    #[arg(long, value_name = "N")]
    budget: Option<u64>,
    /// Ground field, overriding the file
    #[arg(long, value_name = "F2|F3|F5|Q", value_parser = parse_field)]
    field: Option<Field>,
    /// Seed for the randomized self-checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Record wall-clock time per problem
    #[arg(long)]
    timing: bool,
}

fn parse_field(s: &str) -> Result<Field, String> {
    Field::parse(s).map_err(|e| e.to_string())
}

impl Flags {
    fn options(&self) -> RunOptions {
        RunOptions {
            oracle: self.oracle,
            truncate: self.truncate,
            budget: self.budget,
            field: self.field,
            seed: self.seed,
            timing: self.timing,
        }
    }
}

fn execute(cli: Cli) -> Result<(), Error> {
    let (command, args) = match cli.command {
        Cmd::Tmods(a) => (Command::Tmods, a),
        Cmd::Exal(a) => (Command::Exal, a),
        Cmd::Lift(a) => (Command::Lift, a),
        Cmd::Deform(a) => (Command::Deform, a),
        Cmd::Oracle(a) => (Command::Oracle, a),
        Cmd::Corpus(flags) => return corpus(&flags),
    };
    let text = std::fs::read_to_string(&args.file).map_err(|e| Error::invalid(format!("{}: {e}", args.file.display())))?;
    let file = ProblemFile::from_json(&text).map_err(|e| Error::invalid(format!("{}: {e}", args.file.display())))?;
    let report = run(command, &file, &args.flags.options())?;
    if args.flags.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    exit_status(&report)
}

fn corpus(flags: &Flags) -> Result<(), Error> {
    let reports = run_bundled(&flags.options())?;
    let outcomes = run_criteria(flags.seed);
    if flags.json {
        let value = serde_json::json!({ "files": reports.iter().map(|(name, r)| serde_json::json!({ "file": name, "report": r })).collect::<Vec<_>>(), "criteria": outcomes });
        println!("{}", serde_json::to_string_pretty(&value).expect("report serializes"));
    } else {
        for (name, r) in &reports {
            let claims: usize = r.problems.iter().map(|p| p.oracle.len()).sum();
            let bad = r.mismatches().len();
            println!("{name}: {} problems, {claims} oracle claims, {bad} mismatches", r.problems.len());
        }
        for o in &outcomes {
            println!("{}", o.line());
        }
    }
    for (_, r) in &reports {
        exit_status(r)?;
    }
    let failed: Vec<String> = outcomes.iter().filter(|o| !o.passed).map(|o| o.title.clone()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::OracleMismatch(format!("failed criteria: {}", failed.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
