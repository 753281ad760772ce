use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use lg_periods::expr::parse_polynomial;
use lg_periods::io::{
    compute_period, db_add, db_search, load_db, parse_sequence_list, GradingFile, PeriodRecord,
    StoredSequence,
};
use lg_periods::mutation::{check_period_invariance, mutate, MutationData, MutationOutcome};
use lg_periods::oracles::{reference_potential, reference_quantum_period, ReferenceSpace};
use lg_periods::period::{classical_period, period_match, MatchOutcome, PeriodSequence};
use lg_periods::Rational;

const MAX_DEGREE: usize = 64;

/// Classical periods of Laurent potentials.
#[derive(Parser)]
#[command(name = "lgperiods", version)]
struct Cli {
    /// Print machine-readable JSON reports.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the period sequence of a potential as JSON.
    Period {
        /// e.g. "x + y + x^-1*y^-1", or "D1: x; D2: y; ..." with --grading
        #[arg(allow_hyphen_values = true)]
        potential: String,
        #[arg(short, long)]
        degree: usize,
        /// Grading file tagging each labelled component with a curve class.
        #[arg(long)]
        grading: Option<PathBuf>,
    },
    /// Compare a reference space's quantum period with its potential's period.
    Verify {
        /// P1, P2, P1xP1 or P3
        space: String,
        #[arg(short, long)]
        degree: usize,
    },
    /// Compare two stored period sequences.
    Match {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        degree: usize,
    },
    /// Mutate a potential and compare periods before and after.
    Mutate {
        #[arg(allow_hyphen_values = true)]
        potential: String,
        /// Comma-separated primitive integer vector, e.g. 0,-1
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        /// Factor supported on the kernel of w, e.g. "1+x"
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(short, long)]
        degree: usize,
    },
    /// Period database stored as JSON lines.
    Db {
        #[command(subcommand)]
        action: DbAction,
    },
}

#[derive(Subcommand)]
enum DbAction {
    /// Check a record against its potential and append it.
    Add {
        db: PathBuf,
        /// Record JSON file, or - for stdin. Omit to build one from --name and --potential.
        record: Option<String>,
        #[arg(long, requires = "potential")]
        name: Option<String>,
        #[arg(long, requires = "name", allow_hyphen_values = true)]
        potential: Option<String>,
        #[arg(short, long)]
        degree: Option<usize>,
        #[arg(long)]
        grading: Option<PathBuf>,
    },
    /// List records agreeing with a query on c_0..c_D.
    Search {
        db: PathBuf,
        /// Comma-separated coefficients, e.g. 1,0,2,0,6
        #[arg(long, conflicts_with = "query_file")]
        query: Option<String>,
        /// Period sequence JSON file.
        #[arg(long)]
        query_file: Option<PathBuf>,
        #[arg(short, long)]
        degree: usize,
    },
}

fn guard(degree: usize) -> Result<usize> {
    if degree > MAX_DEGREE {
        bail!("degree {degree} exceeds the limit of {MAX_DEGREE}");
    }
    Ok(degree)
}

fn read_text(source: &Path) -> Result<String> {
    fs::read_to_string(source).with_context(|| format!("reading {}", source.display()))
}

fn read_grading(path: Option<&PathBuf>) -> Result<Option<GradingFile>> {
    path.map(|p| Ok(GradingFile::from_json(&read_text(p)?)?))
        .transpose()
}

fn list(seq: &PeriodSequence<Rational>) -> String {
    seq.entries()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn strings(seq: &PeriodSequence<Rational>) -> Value {
    Value::from(
        seq.entries()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>(),
    )
}

fn outcome_json(outcome: MatchOutcome) -> Value {
    match outcome {
        MatchOutcome::Equal => json!({"equal": true}),
        MatchOutcome::Mismatch { index } => json!({"equal": false, "index": index}),
    }
}

fn outcome_text(outcome: MatchOutcome, degree: usize) -> String {
    match outcome {
        MatchOutcome::Equal => format!("equal to degree {degree}"),
        MatchOutcome::Mismatch { index } => format!("mismatch at index {index}"),
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Period {
            potential,
            degree,
            grading,
        } => {
            let grading = read_grading(grading.as_ref())?;
            let seq = compute_period(&potential, guard(degree)?, grading.as_ref())?;
            println!("{}", seq.to_json());
            Ok(true)
        }
        Command::Verify { space, degree } => {
            let space: ReferenceSpace = space.parse()?;
            let degree = guard(degree)?;
            let quantum = reference_quantum_period(space, degree)?;
            let classical = classical_period(&reference_potential(space), degree);
            let pass = quantum == classical;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "space": space.name(),
                        "degree": degree,
                        "quantum": strings(&quantum),
                        "classical": strings(&classical),
                        "pass": pass,
                    })
                );
            } else {
                println!("{space} to degree {degree}");
                println!("quantum:   {}", list(&quantum));
                println!("classical: {}", list(&classical));
                println!("{}", if pass { "PASS" } else { "FAIL" });
            }
            Ok(pass)
        }
        Command::Match { a, b, degree } => {
            let degree = guard(degree)?;
            let a = StoredSequence::from_json(&read_text(&a)?)?;
            let b = StoredSequence::from_json(&read_text(&b)?)?;
            let outcome = match (&a, &b) {
                (
                    StoredSequence::Graded {
                        monoid: ma,
                        sequence: sa,
                    },
                    StoredSequence::Graded {
                        monoid: mb,
                        sequence: sb,
                    },
                ) if ma == mb => period_match(sa, sb, degree)?,
                _ => period_match(&a.t_series(degree)?, &b.t_series(degree)?, degree)?,
            };
            if cli.json {
                println!("{}", outcome_json(outcome));
            } else {
                println!("{}", outcome_text(outcome, degree));
            }
            Ok(true)
        }
        Command::Mutate {
            potential,
            w,
            h,
            degree,
        } => {
            let degree = guard(degree)?;
            let w = w
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .with_context(|| format!("`{w}` is not a comma-separated integer vector"))?;
            let f = parse_polynomial(&potential, Some(w.len()))?;
            let data = MutationData::new(w, parse_polynomial(&h, Some(f.rank()))?)?;
            match mutate(&f, &data)? {
                MutationOutcome::Mutated(g) => {
                    let outcome = check_period_invariance(&f, &g, degree)?;
                    if cli.json {
                        println!(
                            "{}",
                            json!({
                                "mutated": g.to_string(),
                                "period": strings(&classical_period(&g, degree)),
                                "invariance": outcome_json(outcome),
                            })
                        );
                    } else {
                        println!("f' = {g}");
                        println!("period: {}", list(&classical_period(&g, degree)));
                        println!("periods {}", outcome_text(outcome, degree));
                    }
                }
                MutationOutcome::NotMutable { level } => {
                    if cli.json {
                        println!("{}", json!({"mutated": null, "not_mutable_level": level}));
                    } else {
                        println!("not mutable: h does not divide the piece at level {level}");
                    }
                }
            }
            Ok(true)
        }
        Command::Db { action } => run_db(action, cli.json),
    }
}

fn run_db(action: DbAction, as_json: bool) -> Result<bool> {
    match action {
        DbAction::Add {
            db,
            record,
            name,
            potential,
            degree,
            grading,
        } => {
            let record = match (record, name, potential) {
                (Some(source), None, None) => {
                    let text = if source == "-" {
                        let mut buf = String::new();
                        std::io::stdin().read_to_string(&mut buf)?;
                        buf
                    } else {
                        read_text(Path::new(&source))?
                    };
                    PeriodRecord::from_json(text.trim())?
                }
                (None, Some(name), Some(potential)) => {
                    let Some(degree) = degree else {
                        bail!("--degree is required with --potential");
                    };
                    PeriodRecord::compute(
                        &name,
                        &potential,
                        guard(degree)?,
                        read_grading(grading.as_ref())?,
                    )?
                }
                _ => bail!("give either a record file or --name with --potential"),
            };
            db_add(&db, &record)?;
            println!("added {}", record.name);
            Ok(true)
        }
        DbAction::Search {
            db,
            query,
            query_file,
            degree,
        } => {
            let degree = guard(degree)?;
            let query = match (query, query_file) {
                (Some(q), None) => parse_sequence_list(&q)?,
                (None, Some(path)) => {
                    StoredSequence::from_json(&read_text(&path)?)?.t_series(degree)?
                }
                _ => bail!("give one of --query or --query-file"),
            };
            let records = load_db(&db)?;
            for hit in db_search(&records, &query, degree)? {
                if as_json {
                    println!("{}", hit.to_json_line());
                } else {
                    println!("{}", hit.name);
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
