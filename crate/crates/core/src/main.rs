use std::fs;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use qg::{
    count_latin_squares, counterexample, enumerate_latin_squares_unbounded, parse_identity,
    read_table_auto, registry, run_query, trimedial_witness, verify_statement, write_table_text,
    Corpus, DedupPolicy, Element, Error, IdentityKey, IdentitySpec, ParastropheKind, Provenance,
    Quasigroup, SampleSpec, SearchQuery, StatementId, VerificationStatus, Witness,
};

#[derive(Parser)]
#[command(name = "qg", version, about = "Finite quasigroup workbench")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check named identities (and optionally trimediality) on one table
    Check {
        /// Cayley table file, text or JSON
        table: PathBuf,
        /// Comma-separated identity keys; default is all eight
        #[arg(long, value_delimiter = ',')]
        identities: Option<Vec<IdentityKey>>,
        /// Also decide trimediality
        #[arg(long)]
        trimedial: bool,
        /// Machine-readable output
        #[arg(long)]
        json: bool,
    },
    /// Evaluate an identity, given as text, on one table
    Eval {
        table: PathBuf,
        /// Identity text, e.g. "x*(y*z) = (x*y)*z"
        #[arg(long)]
        identity: String,
        #[arg(long)]
        json: bool,
    },
    /// Print a parastrophe of a table
    Parastrophe {
        table: PathBuf,
        /// Which one: l, r, or opp
        #[arg(long)]
        which: ParastropheKind,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find models satisfying and violating identities over an order range
    Search {
        #[arg(long)]
        min_order: usize,
        #[arg(long)]
        max_order: usize,
        /// Identity keys or identity text; repeatable, comma lists allowed
        #[arg(long, value_delimiter = ',')]
        satisfy: Vec<IdentitySpec>,
        #[arg(long, value_delimiter = ',')]
        violate: Vec<IdentitySpec>,
        /// raw keeps every table, iso keeps one per isomorphism class
        #[arg(long, default_value = "raw")]
        dedup: DedupPolicy,
        /// Stop after this many models
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Worker threads; output is identical for any value
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Count or dump every Latin square of one order
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Print the count only
        #[arg(long)]
        count: bool,
        /// Write a corpus file instead of printing it
        #[arg(long)]
        out: Option<PathBuf>,
        /// Lift the order cap; sweeps beyond order 6 may never finish
        #[arg(long)]
        force: bool,
    },
    /// Check a registry statement against every model up to an order
    Verify {
        /// prop1, thm1, thm2, lem1..lem7, or kepka_axioms
        #[arg(long)]
        statement: StatementId,
        #[arg(long)]
        max_order: usize,
        /// Also check this many seeded random order-6 tables
        #[arg(long)]
        sample_order_6: Option<usize>,
        /// Seed for the sampled tables
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Result<ExitCode, Error> {
    match cmd {
        Cmd::Check { table, identities, trimedial, json } => {
            cmd_check(&table, identities, trimedial, json)
        }
        Cmd::Eval { table, identity, json } => cmd_eval(&table, &identity, json),
        Cmd::Parastrophe { table, which, out } => cmd_parastrophe(&table, which, out.as_deref()),
        Cmd::Search { min_order, max_order, satisfy, violate, dedup, limit, json, workers } => {
            let query = SearchQuery { min_order, max_order, satisfy, violate, dedup, limit };
            cmd_search(&query, json, workers)
        }
        Cmd::Enumerate { order, count, out, force } => {
            cmd_enumerate(order, count, out.as_deref(), force)
        }
        Cmd::Verify { statement, max_order, sample_order_6, seed, json, workers } => {
            let sample = sample_order_6.map(|count| SampleSpec { order: 6, count, seed });
            cmd_verify(statement, max_order, sample, json, workers)
        }
    }
}

fn load_table(path: &Path) -> Result<Quasigroup, Error> {
    let text = fs::read_to_string(path).map_err(|e| with_path(path, e))?;
    let (q, _) = read_table_auto(&text)?;
    Ok(q)
}

// bare io errors don't say which file; prefix the path
fn with_path(path: &Path, e: std::io::Error) -> Error {
    Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

fn assignment_str(pairs: &[(String, Element)]) -> String {
    let parts: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    parts.join(",")
}

fn assignment_json(pairs: &[(String, Element)]) -> Value {
    let map: serde_json::Map<String, Value> =
        pairs.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    Value::Object(map)
}

fn witness_json(w: &Witness) -> Value {
    json!({
        "assignment": assignment_json(&w.assignment),
        "lhs": w.lhs_value,
        "rhs": w.rhs_value,
    })
}

fn cmd_check(
    table: &Path,
    identities: Option<Vec<IdentityKey>>,
    trimedial: bool,
    json: bool,
) -> Result<ExitCode, Error> {
    let q = load_table(table)?;
    let keys = identities.unwrap_or_else(|| IdentityKey::ALL.to_vec());
    let mut all_ok = true;
    let mut lines = Vec::new();
    let mut results = serde_json::Map::new();
    for &key in &keys {
        match counterexample(&q, registry::named(key)) {
            None => {
                lines.push(format!("{key}: holds"));
                results.insert(key.to_string(), json!({ "holds": true }));
            }
            Some(w) => {
                all_ok = false;
                lines.push(format!("{key}: fails at {w}"));
                results.insert(
                    key.to_string(),
                    json!({ "holds": false, "witness": witness_json(&w) }),
                );
            }
        }
    }
    let mut tri_value = None;
    if trimedial {
        match trimedial_witness(&q) {
            None => {
                lines.push("trimedial: yes".to_string());
                tri_value = Some(json!({ "holds": true }));
            }
            Some(tw) => {
                all_ok = false;
                let [a, b, c] = tw.generators;
                lines.push(format!("trimedial: no (generators {a},{b},{c}; {})", tw.witness));
                tri_value = Some(json!({
                    "holds": false,
                    "generators": [a, b, c],
                    "witness": witness_json(&tw.witness),
                }));
            }
        }
    }
    if json {
        let mut doc = json!({
            "order": q.order(),
            "identities": Value::Object(results),
            "all": all_ok,
        });
        if let Some(tri) = tri_value {
            doc["trimedial"] = tri;
        }
        println!("{doc}");
    } else {
        for line in lines {
            println!("{line}");
        }
        println!("all: {all_ok}");
    }
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_eval(table: &Path, identity: &str, json: bool) -> Result<ExitCode, Error> {
    let q = load_table(table)?;
    let id = parse_identity(identity)?;
    match counterexample(&q, &id) {
        None => {
            if json {
                println!("{}", json!({ "holds": true }));
            } else {
                println!("holds");
            }
            Ok(ExitCode::SUCCESS)
        }
        Some(w) => {
            if json {
                println!("{}", json!({ "holds": false, "witness": witness_json(&w) }));
            } else {
                println!("fails at {w}");
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_parastrophe(
    table: &Path,
    which: ParastropheKind,
    out: Option<&Path>,
) -> Result<ExitCode, Error> {
    let q = load_table(table)?;
    let text = write_table_text(&q.parastrophe(which));
    match out {
        Some(path) => fs::write(path, text).map_err(|e| with_path(path, e))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_search(query: &SearchQuery, json: bool, workers: usize) -> Result<ExitCode, Error> {
    let result = run_query(query, workers)?;
    if json {
        let per_order: Vec<Value> = result
            .per_order
            .iter()
            .map(|s| json!({ "order": s.order, "enumerated": s.enumerated, "matched": s.matched }))
            .collect();
        let models: Vec<Value> = result
            .models
            .iter()
            .map(|q| json!({ "order": q.order(), "mul": q.rows() }))
            .collect();
        println!(
            "{}",
            json!({
                "per_order": per_order,
                "total_matched": result.total_matched,
                "models": models,
            })
        );
    } else {
        for s in &result.per_order {
            println!("# order {}: enumerated {}, matched {}", s.order, s.enumerated, s.matched);
        }
        println!("# total matched: {}", result.total_matched);
        for q in &result.models {
            println!();
            print!("{}", write_table_text(q));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(
    order: usize,
    count: bool,
    out: Option<&Path>,
    force: bool,
) -> Result<ExitCode, Error> {
    if count {
        let total = if force {
            enumerate_latin_squares_unbounded(order, |_| ControlFlow::Continue(()))?
        } else {
            count_latin_squares(order)?
        };
        println!("{total}");
        return Ok(ExitCode::SUCCESS);
    }
    let corpus = if force {
        let mut entries = Vec::new();
        enumerate_latin_squares_unbounded(order, |q| {
            entries.push(q.clone());
            ControlFlow::Continue(())
        })?;
        Corpus { order, dedup: DedupPolicy::Raw, provenance: Provenance::Exhaustive, entries }
    } else {
        Corpus::exhaustive(order, DedupPolicy::Raw)?
    };
    let text = corpus.to_text();
    match out {
        Some(path) => fs::write(path, text).map_err(|e| with_path(path, e))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    id: StatementId,
    max_order: usize,
    sample: Option<SampleSpec>,
    json: bool,
    workers: usize,
) -> Result<ExitCode, Error> {
    let report = verify_statement(id, max_order, sample, workers)?;
    let stmt = qg::statement(id);
    if json {
        let per_order: Vec<Value> = report
            .per_order
            .iter()
            .map(|c| json!({ "order": c.order, "models": c.models, "sampled": c.sampled }))
            .collect();
        let witnesses: Vec<Value> = report
            .witnesses
            .iter()
            .map(|w| {
                let table = qg::read_table_text(&w.table)?;
                Ok(json!({
                    "order": w.order,
                    "claim": w.claim,
                    "detail": w.detail,
                    "assignment": assignment_json(&w.assignment),
                    "mul": table.rows(),
                }))
            })
            .collect::<Result<_, Error>>()?;
        let status = match report.status {
            VerificationStatus::Verified => "verified",
            VerificationStatus::CounterexampleFound => "counterexample_found",
        };
        let sample_value = match report.sample {
            Some(s) => json!({ "order": s.order, "count": s.count, "seed": s.seed }),
            None => Value::Null,
        };
        println!(
            "{}",
            json!({
                "statement": id.name(),
                "summary": stmt.summary,
                "max_order": report.max_order,
                "sample": sample_value,
                "per_order": per_order,
                "models_checked": report.models_checked,
                "status": status,
                "witnesses": witnesses,
            })
        );
    } else {
        println!("statement {id}: {}", stmt.summary);
        for c in &report.per_order {
            let tag = if c.sampled { " (sampled)" } else { "" };
            println!("order {}: {} models{tag}", c.order, c.models);
        }
        match report.status {
            VerificationStatus::Verified => {
                println!("Verified: {} models", report.models_checked);
            }
            VerificationStatus::CounterexampleFound => {
                println!("Counterexample found: showing {} witnesses", report.witnesses.len());
                for w in &report.witnesses {
                    println!();
                    println!("order {} violates: {}", w.order, w.claim);
                    if w.assignment.is_empty() {
                        println!("{}", w.detail);
                    } else {
                        println!("{} at {}", w.detail, assignment_str(&w.assignment));
                    }
                    print!("{}", w.table);
                }
            }
        }
    }
    Ok(match report.status {
        VerificationStatus::Verified => ExitCode::SUCCESS,
        VerificationStatus::CounterexampleFound => ExitCode::from(1),
    })
}
