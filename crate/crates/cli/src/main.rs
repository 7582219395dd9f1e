use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use verbal_topology::invariants::oracle::{oracle_lattice, oracle_verbal, ORACLE_LIMIT};
use verbal_topology::invariants::{Analyzer, LatticeKind, VerbalKind};
use verbal_topology::space::{enumerate_all_spaces, named, random_space, FiniteSpace};
use verbal_topology::verify::{
    random_subjects, sweep_subjects, AggregateReport, Harness, Status, TheoremReport,
    EXHAUSTIVE_LIMIT,
};
use verbal_topology::BinaryWord;

/// Cardinal invariants of finite topological spaces, verbal powers of the
/// minimal entourage, and a claim harness over enumerated and random spaces.
#[derive(Parser, Debug)]
#[command(name = "vtop", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print every standard invariant of one space, with witnesses.
    Analyze {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Run claims over a sweep of spaces, or over one given space.
    Verify(VerifyArgs),
    /// Emit every topology on n points, one JSON space per line.
    Enumerate {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare reduced boundedness numbers with the brute-force oracle on
    /// every space with at most n points.
    Oracle {
        n: usize,
        #[arg(long, default_value_t = 3)]
        max_word_len: usize,
    },
    /// List the registered claims.
    Claims {
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Space JSON with "n" and one of "min_open", "preorder_edges", "open_sets".
    #[arg(long)]
    file: Option<PathBuf>,
    /// Generator spec such as one_nonisolated:5, zigzag:3, partition:2,1.
    #[arg(long)]
    named: Option<String>,
    /// Random space as n:p:seed.
    #[arg(long)]
    random: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = false, multiple = false)]
struct OptionalSource {
    /// Check the claims on this space file instead of sweeping.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Check the claims on this generated space instead of sweeping.
    #[arg(long)]
    named: Option<String>,
    /// Check the claims on the random space n:p:seed instead of sweeping.
    #[arg(long)]
    random: Option<String>,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Run every registered claim (the default when --claims is absent).
    #[arg(long, conflicts_with = "claims")]
    all: bool,
    /// Comma-separated claim ids; a trailing * selects by prefix.
    #[arg(long, value_delimiter = ',')]
    claims: Vec<String>,
    /// Enumerate every space with 1..=N points.
    #[arg(long, default_value_t = 4)]
    exhaustive: usize,
    /// Comma-separated sizes of random spaces [default: the enumerated sizes].
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Random spaces drawn per size in --sizes.
    #[arg(long, default_value_t = 0)]
    random_count: usize,
    /// Seed for the random spaces.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    space: OptionalSource,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

fn load(
    file: &Option<PathBuf>,
    name: &Option<String>,
    random: &Option<String>,
) -> Result<Option<FiniteSpace>> {
    if let Some(path) = file {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let space =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        return Ok(Some(space));
    }
    if let Some(spec) = name {
        return Ok(Some(named(spec)?));
    }
    if let Some(spec) = random {
        let parts: Vec<&str> = spec.split(':').collect();
        let [n, p, seed] = parts[..] else {
            bail!("--random expects n:p:seed, got {spec:?}");
        };
        let n = n
            .parse()
            .with_context(|| format!("point count in {spec:?}"))?;
        let p = p
            .parse()
            .with_context(|| format!("probability in {spec:?}"))?;
        let seed = seed.parse().with_context(|| format!("seed in {spec:?}"))?;
        return Ok(Some(random_space(n, p, seed)?));
    }
    Ok(None)
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => match io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn analyze(source: &Source, output: &Output) -> Result<ExitCode> {
    let space = load(&source.file, &source.named, &source.random)?.expect("clap requires a source");
    let report = Analyzer::new(&space).report()?;
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Table => {
            let mut t = String::new();
            writeln!(t, "space: {} points", space.n())?;
            let width = report.order.iter().map(String::len).max().unwrap_or(0);
            for name in &report.order {
                let value = report.values[name];
                let bound = if report.lower_bounds.contains(name) {
                    " (lower bound)"
                } else {
                    ""
                };
                match report.witnesses.get(name) {
                    Some(w) => writeln!(
                        t,
                        "{name:<width$}  {value:>3}{bound}  {}",
                        serde_json::to_string(w)?
                    )?,
                    None => writeln!(t, "{name:<width$}  {value:>3}{bound}")?,
                }
            }
            t
        }
    };
    emit(&text, &output.out)?;
    Ok(ExitCode::SUCCESS)
}

fn verify(args: &VerifyArgs) -> Result<ExitCode> {
    let harness = Harness::standard();
    let claims = harness.select(&args.claims)?;
    let single = load(&args.space.file, &args.space.named, &args.space.random)?;
    if let Some(space) = single {
        let reports: Vec<TheoremReport> = claims
            .iter()
            .map(|c| harness.check(&c.id, &space))
            .collect::<Result<_, _>>()?;
        let unexpected = claims
            .iter()
            .zip(&reports)
            .filter(|(c, r)| r.status == Status::Fail && !c.expected_divergence)
            .count();
        let text = match args.output.format {
            Format::Json => serde_json::to_string_pretty(&reports)? + "\n",
            Format::Table => {
                let mut t = String::new();
                for r in &reports {
                    let sides = match (r.lhs, r.rhs) {
                        (Some(a), Some(b)) => format!("  {a} vs {b}"),
                        _ => String::new(),
                    };
                    writeln!(t, "{:<8} {}{sides}", r.status.to_string(), r.claim)?;
                }
                t
            }
        };
        emit(&text, &args.output.out)?;
        return Ok(if unexpected == 0 {
            ExitCode::SUCCESS
        } else {
            ExitCode::FAILURE
        });
    }
    if args.exhaustive > EXHAUSTIVE_LIMIT {
        bail!(
            "--exhaustive {} exceeds the enumeration bound of {EXHAUSTIVE_LIMIT} points",
            args.exhaustive
        );
    }
    let enumerated: Vec<usize> = (1..=args.exhaustive).collect();
    let random_sizes = if args.sizes.is_empty() {
        &enumerated
    } else {
        &args.sizes
    };
    let mut subjects = sweep_subjects(&enumerated, 0, args.seed);
    subjects.extend(random_subjects(random_sizes, args.random_count, args.seed));
    let mut report = harness.sweep_subjects(&claims, &subjects);
    report.seed = Some(args.seed);
    let text = match args.output.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Table => table(&report)?,
    };
    emit(&text, &args.output.out)?;
    Ok(if report.is_clean() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn table(report: &AggregateReport) -> Result<String> {
    let mut t = String::new();
    let width = report.claims.iter().map(|c| c.id.len()).max().unwrap_or(0);
    writeln!(
        t,
        "{:<width$}  {:>6} {:>7} {:>5} {:>8}",
        "claim", "pass", "vacuous", "fail", "vacuity"
    )?;
    for c in &report.claims {
        let flag = if c.expected_divergence && c.fail > 0 {
            "  expected divergence"
        } else {
            ""
        };
        writeln!(
            t,
            "{:<width$}  {:>6} {:>7} {:>5} {:>7.1}%{flag}",
            c.id,
            c.pass,
            c.vacuous,
            c.fail,
            100.0 * c.vacuity_rate
        )?;
    }
    writeln!(
        t,
        "spaces: {}  failures: {} ({} unexpected)",
        report.spaces,
        report.total_failures(),
        report.unexpected_failures()
    )?;
    Ok(t)
}

fn enumerate(n: usize, out: &Option<PathBuf>) -> Result<ExitCode> {
    let mut text = String::new();
    for x in enumerate_all_spaces(n)? {
        text.push_str(&serde_json::to_string(&x)?);
        text.push('\n');
    }
    emit(&text, out)?;
    Ok(ExitCode::SUCCESS)
}

fn oracle(n: usize, max_word_len: usize) -> Result<ExitCode> {
    if n > ORACLE_LIMIT {
        bail!("oracle sweeps stop at {ORACLE_LIMIT} points, got {n}");
    }
    let kinds = [
        VerbalKind::Ell,
        VerbalKind::EllBar,
        VerbalKind::Sharp,
        VerbalKind::SharpBar,
    ];
    let mut checked = 0usize;
    let mut mismatches = Vec::new();
    for size in 0..=n {
        for x in enumerate_all_spaces(size)? {
            let a = Analyzer::new(&x);
            for w in BinaryWord::all_up_to(max_word_len) {
                for kind in kinds {
                    checked += 1;
                    let fast = a.verbal(kind, &w)?.value;
                    let slow = oracle_verbal(&x, kind, &w)?;
                    if fast != slow {
                        mismatches.push(format!(
                            "{kind:?}[{w}] on {}: {fast} vs {slow}",
                            serde_json::to_string(&x)?
                        ));
                    }
                }
            }
            for k in 1..=2 {
                for kind in [LatticeKind::Wedge, LatticeKind::Vee] {
                    checked += 1;
                    let fast = a.verbal_lattice(kind, k)?.value;
                    let slow = oracle_lattice(&x, kind, k)?;
                    if fast != slow {
                        mismatches.push(format!(
                            "{kind:?}[{k}] on {}: {fast} vs {slow}",
                            serde_json::to_string(&x)?
                        ));
                    }
                }
            }
        }
    }
    let mut text: String = mismatches
        .iter()
        .map(|m| format!("mismatch: {m}\n"))
        .collect();
    text += &format!("comparisons: {checked}\n");
    if mismatches.is_empty() {
        text += "parity: OK\n";
    } else {
        text += &format!("parity: FAILED ({} mismatches)\n", mismatches.len());
    }
    emit(&text, &None)?;
    Ok(if mismatches.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn claims(format: Format) -> Result<ExitCode> {
    let harness = Harness::standard();
    let mut text = String::new();
    match format {
        Format::Json => {
            let list: Vec<serde_json::Value> = harness
                .claims()
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "id": c.id,
                        "statement": c.statement,
                        "hypothesis": c.hypothesis_names(),
                        "expected_divergence": c.expected_divergence,
                        "note": c.note,
                    })
                })
                .collect();
            text = serde_json::to_string_pretty(&list)? + "\n";
        }
        Format::Table => {
            for c in harness.claims() {
                let hyp = c.hypothesis_names();
                let hyp = if hyp.is_empty() {
                    String::new()
                } else {
                    format!("  [{}]", hyp.join(", "))
                };
                text += &format!("{}: {}{hyp}\n", c.id, c.statement);
                if let Some(note) = &c.note {
                    text += &format!("    {note}\n");
                }
            }
        }
    }
    emit(&text, &None)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { source, output } => analyze(source, output),
        Command::Verify(args) => verify(args),
        Command::Enumerate { n, out } => enumerate(*n, out),
        Command::Oracle { n, max_word_len } => oracle(*n, *max_word_len),
        Command::Claims { format } => claims(*format),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
