use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use dgex::harness::{parse_cutoff, run, usage, HarnessConfig, EXIT_INPUT, EXIT_USAGE};
use dgex::presentation::{builtin, parse, serialize, BUILTINS};
use dgex::dgcat::FiniteDgCategory;
use dgex::Field;

/// Law checks for finite dg categories.
#[derive(Parser, Debug)]
#[command(name = "dgex", version, disable_help_subcommand = true)]
struct Args {
    /// One of the harness verbs, or `export` to print a document canonically.
    verb: String,
    /// A JSON document, or `builtin:<name>`.
    document: String,
    #[arg(long, default_value = "Q")]
    field: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 2)]
    budget: usize,
    /// Largest absolute coefficient when enumerating rational morphisms.
    #[arg(long, default_value_t = 1)]
    bound: u32,
    #[arg(long, default_value = "countable")]
    cutoff: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load(document: &str, field: Field) -> Result<FiniteDgCategory, String> {
    if let Some(name) = document.strip_prefix("builtin:") {
        return builtin(name, field).ok_or_else(|| format!("unknown builtin {name:?}; expected one of {}", BUILTINS.join(", ")));
    }
    let text = std::fs::read_to_string(document).map_err(|e| format!("{document}: {e}"))?;
    parse(&text).map_err(|e| format!("{document}: {e}"))
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if e.use_stderr() => {
            eprint!("{e}{}", usage());
            return ExitCode::from(EXIT_USAGE as u8);
        }
        Err(e) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let fail = |msg: String| {
        eprintln!("error: {msg}");
        ExitCode::from(EXIT_INPUT as u8)
    };
    let field = match Field::parse_tag(&args.field) {
        Ok(f) => f,
        Err(e) => return fail(e.to_string()),
    };
    let cutoff = match parse_cutoff(&args.cutoff) {
        Ok(c) => c,
        Err(e) => return fail(e.to_string()),
    };
    if args.verb != "export" && !dgex::harness::VERBS.contains(&args.verb.as_str()) {
        eprint!("unknown verb {:?}\n{}", args.verb, usage());
        return ExitCode::from(EXIT_USAGE as u8);
    }
    let cat = match load(&args.document, field) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let (text, code) = if args.verb == "export" {
        (serialize(&cat), 0)
    } else {
        let mut config = HarnessConfig {
            seed: args.seed,
            samples: args.samples,
            budget: args.budget,
            cutoff,
            ..HarnessConfig::default()
        };
        config.lattice.bound = args.bound;
        run(&args.verb, &cat, &config)
    };
    if let Err(e) = emit(&text, &args.out) {
        return fail(e);
    }
    ExitCode::from(code as u8)
}
