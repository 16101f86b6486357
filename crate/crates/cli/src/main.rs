//! `dimlaw`: derive, render, check and fit dimensional laws from problem files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use dimlaw_core::cases::{self, CASE_STUDIES};
use dimlaw_core::rational::{parse_rational, to_strings};
use dimlaw_core::{
    base_monomial, check_invariance, fit_constant, fit_power_law, generate_power_law_data, parse_problem, solve_pi,
    specialize_power, Dataset, Error, Monomial, PiSolution, Problem, Render, Style,
};

const EXIT_INPUT: u8 = 1;
const EXIT_UNATTAINABLE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "dimlaw", version, about = "Dimensional analysis with exact arithmetic")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,
    /// RNG seed for randomized checks and data generation.
    #[arg(long, default_value_t = 42, global = true)]
    seed: u64,
    /// Tolerance on absolute log error.
    #[arg(long, default_value_t = 1e-10, global = true)]
    tol: f64,
    /// Number of random rescaling trials.
    #[arg(long, default_value_t = 1000, global = true)]
    trials: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Latex,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem and print its general form.
    Solve { path: PathBuf },
    /// Render the general form, or the monomial for a fixed Pi exponent.
    Render {
        path: PathBuf,
        /// Pi exponent (e.g. `-1/6`); needs exactly one Pi group.
        #[arg(long, allow_hyphen_values = true)]
        power: Option<String>,
    },
    /// Randomized unit-rescaling check of the derived form.
    Check {
        path: PathBuf,
        /// Add 1 to this coordinate of the particular solution first.
        #[arg(long)]
        perturb_y: Option<usize>,
    },
    /// Fit the form to data in a CSV file.
    Fit {
        path: PathBuf,
        csv: PathBuf,
        #[arg(long, value_enum, default_value_t = FitMode::Power)]
        mode: FitMode,
        /// Pi exponent to hold fixed in `const` mode.
        #[arg(long, allow_hyphen_values = true)]
        power: Option<String>,
    },
    /// Write synthetic power-law data as CSV to stdout.
    Generate {
        path: PathBuf,
        #[arg(long, default_value_t = 200)]
        rows: usize,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        power: f64,
        #[arg(long, default_value_t = 1.0)]
        constant: f64,
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
    },
    /// Bundled case studies.
    Examples(ExamplesArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FitMode {
    Power,
    Const,
}

#[derive(Args)]
#[group(skip)]
#[command(group(ArgGroup::new("action").required(true).args(["list", "emit", "verify_all"])))]
struct ExamplesArgs {
    /// List study names.
    #[arg(long)]
    list: bool,
    /// Write a study's problem file into `--dir`.
    #[arg(long, value_name = "NAME", requires = "dir")]
    emit: Option<String>,
    #[arg(long)]
    dir: Option<PathBuf>,
    /// Verify every study and print the reports.
    #[arg(long)]
    verify_all: bool,
}

/// Command failure with its exit code already decided.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

fn from_core(context: &Path, err: Error) -> Failure {
    let message = format!("{}: {err}", context.display());
    match err {
        Error::DimensionallyUnattainable { witness } => Failure {
            code: EXIT_UNATTAINABLE,
            message: format!("{message}\nwitness: [{}]", to_strings(&witness).join(", ")),
        },
        _ => Failure::input(message),
    }
}

fn load_problem(path: &Path) -> Result<Problem, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse_problem(&text).map_err(|e| from_core(path, e))
}

fn load_solution(path: &Path) -> Result<PiSolution, Failure> {
    let problem = load_problem(path)?;
    solve_pi(&problem).map_err(|e| from_core(path, e))
}

fn style(format: Format) -> Style {
    match format {
        Format::Latex => Style::Latex,
        _ => Style::Plain,
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn parse_power(text: &str) -> Result<dimlaw_core::Rational, Failure> {
    parse_rational(text).map_err(|e| Failure::input(format!("--power: {e}")))
}

fn monomial_json(mono: &Monomial) -> serde_json::Value {
    serde_json::json!({
        "label": mono.label,
        "quantities": mono.quantities,
        "exponents": to_strings(&mono.exponents),
        "rendered": mono.render(Style::Plain),
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if cli.trials == 0 {
        return Err(Failure::input("--trials must be at least 1"));
    }
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(Failure::input("--tol must be positive"));
    }
    match cli.command {
        Command::Solve { path } => {
            let sol = load_solution(&path)?;
            match cli.format {
                Format::Json => println!("{}", to_json(&sol.to_json())),
                f => println!("{}", sol.render(style(f))),
            }
        }
        Command::Render { path, power } => {
            let sol = load_solution(&path)?;
            match power {
                None => match cli.format {
                    Format::Json => println!("{}", to_json(&sol.to_json())),
                    f => println!("{}", sol.render(style(f))),
                },
                Some(p) => {
                    let mono = specialize_power(&sol, &parse_power(&p)?).map_err(|e| from_core(&path, e))?;
                    match cli.format {
                        Format::Json => println!("{}", to_json(&monomial_json(&mono))),
                        f => println!("{}", mono.render(style(f))),
                    }
                }
            }
        }
        Command::Check { path, perturb_y } => {
            let mut sol = load_solution(&path)?;
            if let Some(index) = perturb_y {
                sol = sol
                    .perturb_particular(index, &dimlaw_core::rational::int(1))
                    .map_err(|e| from_core(&path, e))?;
            }
            let report = check_invariance(&sol, cli.trials, cli.seed, cli.tol).map_err(|e| from_core(&path, e))?;
            println!("{}", to_json(&report));
            if !report.passed {
                return Ok(EXIT_VERIFY);
            }
        }
        Command::Fit { path, csv, mode, power } => {
            let sol = load_solution(&path)?;
            let text = fs::read_to_string(&csv).map_err(|e| Failure::input(format!("{}: {e}", csv.display())))?;
            let data = Dataset::from_csv(sol.problem(), &text).map_err(|e| from_core(&csv, e))?;
            let fit = match mode {
                FitMode::Power => fit_power_law(&data, &sol),
                FitMode::Const => {
                    let mono = match (sol.k(), power) {
                        (0, None) => base_monomial(&sol),
                        (_, Some(p)) => specialize_power(&sol, &parse_power(&p)?).map_err(|e| from_core(&path, e))?,
                        (k, None) => {
                            return Err(Failure::input(format!(
                                "const mode needs --power when the form has {k} Pi group(s)"
                            )))
                        }
                    };
                    fit_constant(&data, &mono)
                }
            }
            .map_err(|e| from_core(&csv, e))?;
            println!("{}", to_json(&fit));
        }
        Command::Generate {
            path,
            rows,
            power,
            constant,
            noise,
        } => {
            let sol = load_solution(&path)?;
            let data =
                generate_power_law_data(&sol, power, constant, rows, noise, cli.seed).map_err(|e| from_core(&path, e))?;
            print!("{}", data.to_csv().map_err(|e| from_core(&path, e))?);
        }
        Command::Examples(args) => return examples(args),
    }
    Ok(0)
}

fn examples(args: ExamplesArgs) -> Result<u8, Failure> {
    if args.list {
        for study in CASE_STUDIES {
            println!("{}", study.name);
        }
        return Ok(0);
    }
    if let Some(name) = args.emit {
        let study = cases::find(&name).ok_or_else(|| Failure::input(format!("unknown example `{name}`")))?;
        let dir = args.dir.expect("clap enforces --dir");
        fs::create_dir_all(&dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
        let target = dir.join(study.file_name());
        fs::write(&target, study.problem_text).map_err(|e| Failure::input(format!("{}: {e}", target.display())))?;
        println!("{}", target.display());
        return Ok(0);
    }
    let reports: Vec<_> = CASE_STUDIES.iter().map(cases::verify_case).collect();
    println!("{}", to_json(&reports));
    Ok(if reports.iter().all(|r| r.passed) { 0 } else { EXIT_VERIFY })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
