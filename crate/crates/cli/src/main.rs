//! `e6tori`: verification harness for fixed sets, duality and K-theory of W(E6) on its two
//! maximal tori.
//!
//! Exit status: 0 when every check passes, 2 on a verification mismatch, 1 on any other error.

mod cache;
mod context;
mod suites;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context as _;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use weyl_tori::torus_fixed::LatticeSide;

use context::{Context, LoadError, Settings};
use suites::Outcome;

#[derive(Parser)]
#[command(
    name = "e6tori",
    version,
    about = "Fixed sets, duality and K-theory for W(E6) acting on its maximal tori"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Which torus: t/Γ (root), t/Γ^∨ (weight) or both
    #[arg(long, value_enum, default_value = "both", global = true)]
    side: SideArg,
    #[arg(long, value_enum, default_value = "md", global = true)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Random group elements checked by the gcd-of-minors sweep
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    sample: u64,
    /// Seed for the sweep sample
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Group cache file; created or refreshed as needed
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// JSON Cartan matrix of another simply-laced system (default: E6)
    #[arg(long, global = true)]
    cartan: Option<PathBuf>,
    #[arg(long, hide = true, global = true)]
    expectations: Option<PathBuf>,
}

#[derive(Subcommand, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Conjugacy classes, centralisers and elementary parts
    Classes,
    /// Fixed sets on each torus and the ramification type of each class
    FixedSets,
    /// Component-group duality, twisted pairing and the gcd-of-minors sweep
    Duality,
    /// Betti numbers of the sectors T^w / Z(w)
    Sectors,
    /// K-theory ranks of both extended affine Weyl groups
    Ktheory,
    /// Classes of powers of each representative
    PowerMap,
    /// Every suite in order
    VerifyAll,
    /// Root system, generators and class representatives
    Dump,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum SideArg {
    Root,
    Weight,
    Both,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Md,
    Csv,
}

fn run_suite(ctx: &Context, command: Command) -> anyhow::Result<Outcome> {
    Ok(match command {
        Command::Classes => suites::classes(ctx),
        Command::FixedSets => suites::fixed_sets(ctx),
        Command::Duality => suites::duality(ctx),
        Command::Sectors => suites::sectors(ctx)?,
        Command::Ktheory => suites::ktheory_suite(ctx)?,
        Command::PowerMap => suites::power_map(ctx),
        Command::Dump => suites::dump(ctx),
        Command::VerifyAll => unreachable!("expanded by the caller"),
    })
}

const ALL: [Command; 6] = [
    Command::Classes,
    Command::FixedSets,
    Command::Duality,
    Command::Sectors,
    Command::Ktheory,
    Command::PowerMap,
];

fn outcome_json(o: &Outcome) -> Value {
    json!({ "suite": o.suite, "passed": o.passed(), "mismatches": o.mismatches, "report": o.report })
}

fn outcome_md(o: &Outcome) -> String {
    let mut s = format!("## {}\n\n{}", o.suite, o.markdown);
    if o.passed() {
        s.push_str("\nAll checks pass.\n");
    } else {
        s.push_str("\nMismatches:\n\n");
        for m in &o.mismatches {
            s.push_str(&format!("- {m}\n"));
        }
    }
    s
}

fn render(outcomes: &[Outcome], format: Format) -> anyhow::Result<String> {
    Ok(match format {
        Format::Json => {
            let v = if outcomes.len() == 1 {
                outcome_json(&outcomes[0])
            } else {
                json!({
                    "passed": outcomes.iter().all(Outcome::passed),
                    "suites": outcomes.iter().map(outcome_json).collect::<Vec<_>>(),
                })
            };
            let mut s = serde_json::to_string_pretty(&v)?;
            s.push('\n');
            s
        }
        Format::Md => outcomes
            .iter()
            .map(outcome_md)
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .flexible(true)
                .from_writer(Vec::new());
            for o in outcomes {
                if outcomes.len() > 1 {
                    w.write_record([format!("# {}", o.suite)])?;
                }
                for row in &o.csv {
                    w.write_record(row)?;
                }
            }
            String::from_utf8(w.into_inner()?)?
        }
    })
}

fn emit(text: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()?;
    }
    let sides = match cli.side {
        SideArg::Root => vec![LatticeSide::Root],
        SideArg::Weight => vec![LatticeSide::Weight],
        SideArg::Both => LatticeSide::BOTH.to_vec(),
    };
    let start = Instant::now();
    let ctx = match Context::load(Settings {
        sides,
        sample: cli.sample as usize,
        seed: cli.seed,
        cache: cli.cache.clone(),
        cartan: cli.cartan.clone(),
        expectations: cli.expectations.clone(),
    }) {
        Ok(ctx) => ctx,
        Err(LoadError::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            return Ok(false);
        }
        Err(LoadError::Internal(e)) => return Err(e),
    };
    eprintln!(
        "setup: {} elements, {} classes, {} ({:.2?})",
        ctx.group.order(),
        ctx.table.len(),
        ctx.cache_status,
        start.elapsed()
    );

    let commands: Vec<Command> = if cli.command == Command::VerifyAll {
        ALL.to_vec()
    } else {
        vec![cli.command]
    };
    let mut outcomes = Vec::new();
    let mut first_failure: Option<&'static str> = None;
    for c in commands {
        let t = Instant::now();
        let o = run_suite(&ctx, c)?;
        eprintln!(
            "{:<11} {} ({:.2?})",
            o.suite,
            if o.passed() { "pass" } else { "FAIL" },
            t.elapsed()
        );
        if !o.passed() && first_failure.is_none() {
            first_failure = Some(o.suite);
        }
        outcomes.push(o);
    }
    if let Some(s) = first_failure {
        eprintln!("first failure: {s}");
    }
    eprintln!("total {:.2?}", start.elapsed());
    emit(&render(&outcomes, cli.format)?, cli.out.as_ref())?;
    Ok(first_failure.is_none())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
