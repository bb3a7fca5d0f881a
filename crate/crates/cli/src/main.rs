use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use schemata::frontend::{
    print_lk, print_schema, print_script, Document, LkFile, Report, SchemaFile, ScriptFile, StatsRow, Workspace,
};
use schemata::kernel::{check_proof, total_inferences, CheckReport, Failure, LinkEnv, Mode};
use schemata::schema::{check_schema, evaluate_and_check, ProofSchema};
use schemata::silk::{check_script, Verdict};
use schemata::translate::{interpret, silk_to_schema, to_ppsnf, TranslateError};

#[derive(Parser)]
#[command(name = "schemata", version, about = "Check LK proofs, proof schemata and SiLK scripts")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Rewrite-step budget per normalization.
    #[arg(long, global = true, env = "SILK_FUEL")]
    fuel: Option<u64>,
    /// Accept ℰ inferences without a redex position by comparing normal forms.
    #[arg(long, global = true)]
    lenient: bool,
    /// Theory file, overriding the `theory` directive of the input.
    #[arg(long, global = true)]
    theory: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a proof file (.lkp).
    CheckLk {
        file: PathBuf,
        /// Calculus; defaults to the file's `mode` or LKS.
        #[arg(long)]
        mode: Option<Mode>,
    },
    /// Check a proof schema (.sch).
    CheckSchema { file: PathBuf },
    /// Replay a SiLK script (.slk).
    CheckSilk { file: PathBuf },
    /// Print the LK proof of a schema (or translated script) at parameter α.
    Unroll {
        file: PathBuf,
        #[arg(long)]
        alpha: u64,
        /// Print the proof before normalization, with its ℰ inferences.
        #[arg(long)]
        lke: bool,
    },
    /// Reorder a SiLK script into closure order.
    Ppsnf { file: PathBuf },
    /// Translate a SiLK script into a proof schema.
    Translate { file: PathBuf },
    /// Print the induction formula of a SiLK proof.
    Interpret { file: PathBuf },
    /// Inference counts of the unrolled proofs for a range of α.
    Stats {
        file: PathBuf,
        /// Inclusive range `A..B`.
        #[arg(long, value_parser = parse_range)]
        alpha_range: (u64, u64),
    },
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let a: u64 = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|e| format!("{b}: {e}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

/// Exit status 2: the input could not be used at all.
struct Usage(String);

type Run = Result<Report, Usage>;

fn usage(e: impl ToString) -> Usage {
    Usage(e.to_string())
}

fn load(g: &Global, file: &Path) -> Result<Workspace, Usage> {
    Workspace::load(file, g.theory.as_deref(), g.fuel, g.lenient).map_err(usage)
}

fn new_report(cmd: &str, ws: &Workspace, check: CheckReport) -> Report {
    Report::new(cmd, &ws.path.display().to_string(), check, ws.options)
}

fn failed(path: &str, rule: &str, message: impl ToString) -> CheckReport {
    CheckReport::new(
        vec![Failure { path: path.into(), rule: rule.into(), message: message.to_string() }],
        Default::default(),
    )
}

fn script<'a>(ws: &'a Workspace, cmd: &str) -> Result<&'a ScriptFile, Usage> {
    match &ws.document {
        Document::Script(s) => Ok(s),
        _ => Err(Usage(format!("{cmd} expects a .slk script"))),
    }
}

/// A schema file, or the translation of a script. `Err(report)` when a
/// script is not a proof.
fn schema_of(ws: &Workspace, cmd: &str) -> Result<Result<ProofSchema, Report>, Usage> {
    match &ws.document {
        Document::Schema(s) => Ok(Ok(s.schema.clone())),
        Document::Script(s) => {
            Ok(silk_to_schema(&s.steps, &ws.theory, ws.options).map_err(|e| translate_failure(cmd, ws, e)))
        }
        _ => Err(Usage(format!("{cmd} expects a .sch schema or .slk script"))),
    }
}

fn translate_failure(cmd: &str, ws: &Workspace, e: TranslateError) -> Report {
    match e {
        TranslateError::NotAProof { verdict, report } => {
            let mut r = new_report(cmd, ws, report);
            r.verdict = Some(verdict.to_string());
            if r.failures.is_empty() {
                r.failures.push(Failure {
                    path: ".".into(),
                    rule: "verdict".into(),
                    message: format!("script is a {verdict}, not a proof"),
                });
                r.status = schemata::kernel::Status::Rejected;
            }
            r
        }
        other => new_report(cmd, ws, failed(".", "translate", other)),
    }
}

fn run(cli: &Cli) -> Run {
    let g = &cli.global;
    match &cli.command {
        Command::CheckLk { file, mode } => {
            let ws = load(g, file)?;
            let Document::Lk(f) = &ws.document else { return Err(usage("check-lk expects a .lkp proof")) };
            let mode = mode.or(f.mode).unwrap_or(Mode::LKS);
            let allowed = BTreeSet::from([ws.theory.sig.param.clone()]);
            let check = check_proof(&f.proof, mode, &ws.theory, &f.env, &allowed, ws.options);
            let mut r = new_report("check-lk", &ws, check);
            r.mode = Some(mode.to_string());
            Ok(r)
        }
        Command::CheckSchema { file } => {
            let ws = load(g, file)?;
            let Document::Schema(f) = &ws.document else { return Err(usage("check-schema expects a .sch schema")) };
            Ok(new_report("check-schema", &ws, check_schema(&f.schema, &ws.theory, ws.options)))
        }
        Command::CheckSilk { file } => {
            let ws = load(g, file)?;
            let s = script(&ws, "check-silk")?;
            let out = check_script(&s.steps, &ws.theory, ws.options);
            let mut check = out.report;
            // Point failures at source lines.
            for f in &mut check.failures {
                if let Some(i) = f.path.strip_prefix("step ").and_then(|k| k.parse::<usize>().ok()) {
                    if let Some(line) = s.lines.get(i - 1) {
                        f.path = format!("step {i} (line {line})");
                    }
                }
            }
            let mut r = new_report("check-silk", &ws, check);
            if out.verdict != Verdict::Proof {
                r.status = schemata::kernel::Status::Rejected;
            }
            r.verdict = Some(out.verdict.to_string());
            Ok(r)
        }
        Command::Unroll { file, alpha, lke } => {
            let ws = load(g, file)?;
            let schema = match schema_of(&ws, "unroll")? {
                Ok(s) => s,
                Err(r) => return Ok(r),
            };
            let (check, trace) = evaluate_and_check(&schema, *alpha, &ws.theory, ws.options);
            let mut r = new_report("unroll", &ws, check);
            r.alpha = Some(*alpha);
            if let Some(t) = trace {
                let proof = if *lke { t.unrolled } else { t.proof };
                let mode = if *lke { Mode::LKE } else { Mode::LK };
                r.counts.insert("inferences".into(), total_inferences(&proof));
                let lk = LkFile { theory: None, mode: Some(mode), env: LinkEnv::default(), proof };
                r.output = Some(print_lk(&lk, &ws.theory));
            }
            Ok(r)
        }
        Command::Ppsnf { file } => {
            let ws = load(g, file)?;
            let s = script(&ws, "ppsnf")?;
            match to_ppsnf(&s.steps, &ws.theory, ws.options) {
                Ok(steps) => {
                    let mut r = new_report("ppsnf", &ws, CheckReport::new(vec![], Default::default()));
                    r.counts.insert("steps".into(), steps.len() as u64);
                    let f = ScriptFile { theory: s.theory.clone(), steps, lines: vec![] };
                    r.output = Some(print_script(&f, &ws.theory));
                    Ok(r)
                }
                Err(e) => Ok(translate_failure("ppsnf", &ws, e)),
            }
        }
        Command::Translate { file } => {
            let ws = load(g, file)?;
            let s = script(&ws, "translate")?;
            match silk_to_schema(&s.steps, &ws.theory, ws.options) {
                Ok(schema) => {
                    let check = check_schema(&schema, &ws.theory, ws.options);
                    let mut r = new_report("translate", &ws, check);
                    r.counts.insert("components".into(), schema.components.len() as u64);
                    let f = SchemaFile { theory: s.theory.clone(), schema };
                    r.output = Some(print_schema(&f, &ws.theory));
                    Ok(r)
                }
                Err(e) => Ok(translate_failure("translate", &ws, e)),
            }
        }
        Command::Interpret { file } => {
            let ws = load(g, file)?;
            let s = script(&ws, "interpret")?;
            let out = check_script(&s.steps, &ws.theory, ws.options);
            if out.verdict != Verdict::Proof {
                let e = TranslateError::NotAProof { verdict: out.verdict.to_string(), report: out.report };
                return Ok(translate_failure("interpret", &ws, e));
            }
            let mut r = new_report("interpret", &ws, out.report);
            match interpret(&out.collection, &ws.theory.sig.param) {
                Ok(f) => r.output = Some(format!("{f}\n")),
                Err(e) => {
                    r = new_report("interpret", &ws, failed(".", "interpret", e));
                }
            }
            Ok(r)
        }
        Command::Stats { file, alpha_range: (a, b) } => {
            let ws = load(g, file)?;
            let schema = match schema_of(&ws, "stats")? {
                Ok(s) => s,
                Err(r) => return Ok(r),
            };
            let mut failures = Vec::new();
            let mut rows = Vec::new();
            for alpha in *a..=*b {
                let (check, trace) = evaluate_and_check(&schema, alpha, &ws.theory, ws.options);
                failures.extend(
                    check.failures.into_iter().map(|f| Failure { path: format!("alpha={alpha}:{}", f.path), ..f }),
                );
                if let Some(t) = trace {
                    rows.push(StatsRow {
                        alpha,
                        inferences: total_inferences(&t.proof),
                        unrolled_inferences: total_inferences(&t.unrolled),
                        expansions: t.expansions.len() as u64,
                        rewrite_steps: t.rewrite_steps,
                    });
                }
            }
            let mut r = new_report("stats", &ws, CheckReport::new(failures, Default::default()));
            let mut table = String::from("alpha  inferences  with-E  links  rewrites\n");
            for row in &rows {
                table.push_str(&format!(
                    "{:>5}  {:>10}  {:>6}  {:>5}  {:>8}\n",
                    row.alpha, row.inferences, row.unrolled_inferences, row.expansions, row.rewrite_steps
                ));
            }
            r.rows = rows;
            r.output = Some(table);
            Ok(r)
        }
    }
}

fn human(r: &Report) -> String {
    let mut out = String::new();
    if let Some(o) = &r.output {
        out.push_str(o);
    }
    let mut head = format!("{}: {}", r.file, r.status_word());
    if let Some(v) = &r.verdict {
        head.push_str(&format!(" (verdict {v})"));
    }
    if let Some(m) = &r.mode {
        head.push_str(&format!(" in {m}"));
    }
    out.push_str(&head);
    out.push('\n');
    for f in &r.failures {
        out.push_str(&format!("  {f}\n"));
    }
    if !r.counts.is_empty() {
        let c: Vec<String> = r.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("  counts: {}\n", c.join(" ")));
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // Deep proofs recurse deeply; run on a large stack.
    let handle = std::thread::Builder::new()
        .stack_size(512 << 20)
        .spawn(move || {
            let json = cli.global.json;
            match run(&cli) {
                Ok(r) => {
                    if json {
                        println!("{}", r.to_json());
                    } else {
                        print!("{}", human(&r));
                    }
                    if r.accepted() {
                        0
                    } else {
                        1
                    }
                }
                Err(Usage(msg)) => {
                    eprintln!("error: {msg}");
                    2
                }
            }
        })
        .expect("spawn worker thread");
    ExitCode::from(handle.join().unwrap_or(101) as u8)
}
