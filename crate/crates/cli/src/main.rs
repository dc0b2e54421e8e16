use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aldlf::afw::compile_formula;
use aldlf::frontend::{ltlf_to_aldlf, parse_formula, parse_ltlf, parse_trace, print_formula, Definitions};
use aldlf::nfw::{equivalence, is_satisfiable, nfw_run, verify_certificate, Certificate, Equivalence, SearchError, SearchLimits};
use aldlf::semantics::{eval, Trace};
use aldlf::syntax::{fischer_ladner_closure, formula_size, to_nnf, Formula};
use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

mod dump;

/// Automata linear dynamic logic on finite traces.
#[derive(Parser, Debug)]
#[command(name = "aldlf", version)]
struct Cli {
    /// Print statistics to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a formula on a trace (exit 0 true, 1 false).
    Eval {
        #[command(flatten)]
        formula: FormulaArgs,
        /// Trace file: one instant per line, `-` for the empty instant.
        #[arg(long)]
        trace: PathBuf,
        /// Position to evaluate at.
        #[arg(long, default_value_t = 0)]
        pos: usize,
        /// Write the automaton certificate (JSON) of an accepted trace here.
        #[arg(long)]
        certificate_out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compile to a two-way alternating automaton and dump it.
    Compile {
        #[command(flatten)]
        formula: FormulaArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide satisfiability (exit 0 sat, 1 unsat, 3 search limit).
    Sat {
        #[command(flatten)]
        formula: FormulaArgs,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide equivalence of two formulas (exit 0 equivalent, 1 not, 3 search limit).
    Equiv {
        #[command(flatten)]
        formula: FormulaArgs,
        /// The second formula.
        #[arg(long, conflicts_with = "other_file")]
        other: Option<String>,
        #[arg(long)]
        other_file: Option<PathBuf>,
        /// Read the second formula as LTLf.
        #[arg(long)]
        other_ltlf: bool,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the closure of a formula in negation normal form.
    Closure {
        #[command(flatten)]
        formula: FormulaArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the negation normal form of a formula.
    Nnf {
        #[command(flatten)]
        formula: FormulaArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check a certificate against a formula and trace (exit 0 valid, 1 not).
    Verify {
        #[command(flatten)]
        formula: FormulaArgs,
        #[arg(long)]
        trace: PathBuf,
        /// Certificate file as written by `eval --certificate-out`.
        #[arg(long)]
        certificate: PathBuf,
    },
}

#[derive(Args, Debug)]
struct FormulaArgs {
    /// Formula text.
    #[arg(short = 'f', long, required_unless_present = "formula_file", conflicts_with = "formula_file")]
    formula: Option<String>,
    /// File holding the formula text.
    #[arg(long)]
    formula_file: Option<PathBuf>,
    /// TOML file of named path automata, referenced as `@name`.
    #[arg(long)]
    defs: Option<PathBuf>,
    /// Read the formula as LTLf with `X` and `U`.
    #[arg(long)]
    ltlf: bool,
}

#[derive(Args, Debug)]
struct LimitArgs {
    /// Maximum number of automaton states explored.
    #[arg(long, default_value_t = 500_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_states: u64,
    /// Maximum witness length.
    #[arg(long, default_value_t = 1_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_len: u64,
}

impl LimitArgs {
    fn limits(&self) -> SearchLimits {
        SearchLimits {
            max_states: self.max_states as usize,
            max_len: self.max_len as usize,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

/// Exit status for usage and input errors.
const USAGE: u8 = 2;
const LIMIT: u8 = 3;

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn definitions(args: &FormulaArgs) -> anyhow::Result<Definitions> {
    match &args.defs {
        Some(path) => Definitions::from_toml(&read(path)?).with_context(|| format!("in {}", path.display())),
        None => Ok(Definitions::new()),
    }
}

fn parse(text: &str, ltlf: bool, defs: &Definitions) -> anyhow::Result<Formula> {
    if ltlf {
        Ok(ltlf_to_aldlf(&parse_ltlf(text)?))
    } else {
        Ok(parse_formula(text, defs)?)
    }
}

fn load_formula(args: &FormulaArgs) -> anyhow::Result<(Formula, Definitions)> {
    let defs = definitions(args)?;
    let text = match (&args.formula, &args.formula_file) {
        (Some(text), _) => text.clone(),
        (None, Some(path)) => read(path)?,
        (None, None) => bail!("no formula given"),
    };
    Ok((parse(&text, args.ltlf, &defs)?, defs))
}

fn load_trace(path: &Path) -> anyhow::Result<Trace> {
    parse_trace(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn trace_json(t: &Trace) -> serde_json::Value {
    json!(t.instants())
}

fn print_search_error(e: &SearchError) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        SearchError::ReplayFailed => ExitCode::from(USAGE),
        _ => ExitCode::from(LIMIT),
    }
}

fn verdict(b: bool) -> ExitCode {
    if b {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Eval {
            formula,
            trace,
            pos,
            certificate_out,
            format,
        } => {
            let (f, _) = load_formula(&formula)?;
            let t = load_trace(&trace)?;
            if pos >= t.len() {
                bail!("position {pos} is outside a trace of length {}", t.len());
            }
            let holds = eval(&f, &t, pos)?;
            if let Some(out) = certificate_out {
                if pos != 0 {
                    bail!("certificates describe acceptance from position 0");
                }
                let a = compile_formula(&to_nnf(&f))?;
                if let Some(cert) = nfw_run(&a, &t) {
                    fs::write(&out, serde_json::to_string_pretty(&cert)?)
                        .with_context(|| format!("cannot write {}", out.display()))?;
                }
            }
            match format {
                Format::Json => println!("{}", json!({ "position": pos, "holds": holds })),
                _ => println!("{holds}"),
            }
            Ok(verdict(holds))
        }
        Command::Compile { formula, format } => {
            let (f, _) = load_formula(&formula)?;
            let a = compile_formula(&to_nnf(&f))?;
            if cli.verbose {
                eprintln!("size {}, states {}", formula_size(&f), a.state_count());
            }
            if a.atoms().len() > dump::MAX_ATOMS {
                bail!(
                    "refusing to tabulate 2^{} letters; at most {} atoms are supported",
                    a.atoms().len(),
                    dump::MAX_ATOMS
                );
            }
            let out = match format {
                Format::Text => dump::text(&a),
                Format::Json => serde_json::to_string_pretty(&dump::json(&a))?,
                Format::Dot => dump::dot(&a),
            };
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Sat { formula, limits, format } => {
            let (f, _) = load_formula(&formula)?;
            match is_satisfiable(&f, limits.limits()) {
                Ok(Some(w)) => {
                    match format {
                        Format::Json => println!("{}", json!({ "satisfiable": true, "witness": trace_json(&w) })),
                        _ => print!("{w}"),
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Ok(None) => {
                    match format {
                        Format::Json => println!("{}", json!({ "satisfiable": false })),
                        _ => println!("UNSAT"),
                    }
                    Ok(ExitCode::from(1))
                }
                Err(e) => Ok(print_search_error(&e)),
            }
        }
        Command::Equiv {
            formula,
            other,
            other_file,
            other_ltlf,
            limits,
            format,
        } => {
            let (f, defs) = load_formula(&formula)?;
            let other_text = match (other, other_file) {
                (Some(text), _) => text,
                (None, Some(path)) => read(&path)?,
                (None, None) => bail!("the second formula is missing (--other or --other-file)"),
            };
            let g = parse(&other_text, other_ltlf, &defs)?;
            match equivalence(&f, &g, limits.limits()) {
                Ok(Equivalence::Equivalent) => {
                    match format {
                        Format::Json => println!("{}", json!({ "equivalent": true })),
                        _ => println!("equivalent"),
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Ok(Equivalence::Counterexample { trace, first_holds }) => {
                    let holds = if first_holds { "first" } else { "second" };
                    match format {
                        Format::Json => println!(
                            "{}",
                            json!({ "equivalent": false, "holds": holds, "counterexample": trace_json(&trace) })
                        ),
                        _ => print!("not equivalent; only the {holds} formula holds on\n{trace}"),
                    }
                    Ok(ExitCode::from(1))
                }
                Err(e) => Ok(print_search_error(&e)),
            }
        }
        Command::Closure { formula, format } => {
            let (f, _) = load_formula(&formula)?;
            let cl = fischer_ladner_closure(&to_nnf(&f));
            if cli.verbose {
                eprintln!("size {}, closure {}", formula_size(&f), cl.len());
            }
            match format {
                Format::Json => {
                    let items: Vec<String> = cl.iter().map(|g| g.to_string()).collect();
                    println!("{}", serde_json::to_string_pretty(&items)?);
                }
                _ => cl.iter().for_each(|g| println!("{g}")),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Nnf { formula, format } => {
            let (f, _) = load_formula(&formula)?;
            let printed = print_formula(&to_nnf(&f));
            match format {
                Format::Json => println!(
                    "{}",
                    json!({ "formula": printed.text, "definitions": printed.definitions_toml })
                ),
                _ => {
                    println!("{}", printed.text);
                    if !printed.definitions.is_empty() {
                        print!("\n{}", printed.definitions_toml);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            formula,
            trace,
            certificate,
        } => {
            let (f, _) = load_formula(&formula)?;
            let t = load_trace(&trace)?;
            let cert: Certificate = serde_json::from_str(&read(&certificate)?)
                .with_context(|| format!("in {}", certificate.display()))?;
            let a = compile_formula(&to_nnf(&f))?;
            match verify_certificate(&a, &t, &cert) {
                Ok(()) => {
                    println!("valid");
                    Ok(ExitCode::SUCCESS)
                }
                Err(v) => {
                    println!("invalid (condition {}): {v}", v.condition());
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}
