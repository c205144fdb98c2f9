use std::fmt;
use std::io::Write;
use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use knotperi::acceptance;
use knotperi::json as out;
use knotperi::render;
use knotperi::suite::verify_all;
use knotperi::table::{self, KnotTableEntry};
use knotperi::Analysis;
use knotperi_core::arcs::verify_theorem2;
use knotperi_core::diagram::{compute_regions, parse_pd, PdCode};
use knotperi_core::geodesic::{reduce_with_trace, RewriteKind};
use knotperi_core::peripheral::{is_conjugate_peripheral, is_peripheral, recover_gauss_code};
use knotperi_core::presentation::{check_small_cancellation, SymmetrizedPresentation};
use knotperi_core::Word;

#[derive(Parser)]
#[command(name = "knotperi", version, about = "Peripheral structure of alternating knot groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Augmented Dehn presentation and its small-cancellation report.
    Presentation(InputArgs),
    /// Check that the diagram is prime, reduced and alternating.
    Validate(InputArgs),
    /// Reduce a word to a geodesic.
    Reduce(WordArgs),
    /// Decide whether a word lies in the peripheral subgroup.
    Peripheral(WordArgs),
    /// Decide whether a word is conjugate into the peripheral subgroup.
    ConjPeripheral(WordArgs),
    /// Enumerate the four arc families and check each instance.
    Arcs(InputArgs),
    /// Render a window of the peripheral complex.
    Complex(ComplexArgs),
    /// Gauss code from the diagram and recovered from the complex.
    Gauss(InputArgs),
    /// Compare the chain solver against the brute-force oracle.
    OracleCheck(OracleArgs),
    /// Run the arc families over the knot table.
    VerifyAll(VerifyArgs),
    /// Run the acceptance criteria over the knot table.
    Acceptance(AcceptanceArgs),
}

#[derive(Args)]
#[group(id = "source", required = true, multiple = false, args = ["pd", "file", "knot"])]
struct InputArgs {
    /// PD code, either `X(1,4,2,5) ...` or a JSON array of 4-tuples.
    #[arg(long)]
    pd: Option<String>,
    /// File holding a PD code in either form.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Name of a knot in the table, e.g. `5_2`.
    #[arg(long)]
    knot: Option<String>,
    /// Outer region, by its label under the default choice.
    #[arg(long)]
    outer: Option<usize>,
}

#[derive(Args)]
struct WordArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Word such as `X1 X2^-1 X3`.
    #[arg(long, allow_hyphen_values = true)]
    word: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
    Svg,
}

#[derive(Args)]
struct ComplexArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 4)]
    rows: i64,
    #[arg(long, default_value_t = 10)]
    cols: i64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Overlay the path this word labels from the origin.
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 8)]
    max_len: usize,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = acceptance::ORACLE_SEED)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 7)]
    max_crossings: usize,
    /// Also run torus knots, whose failures are expected.
    #[arg(long)]
    include_torus: bool,
    #[arg(long)]
    threads: Option<NonZeroUsize>,
}

#[derive(Args)]
struct AcceptanceArgs {
    /// Run a single criterion (1..=10).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
    criterion: Option<u8>,
}

/// Input problems exit with 2, failed checks with 1.
enum Failure {
    Input(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => f.write_str(m),
        }
    }
}

fn input_err(e: impl fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

/// What a command produced: a payload and whether its checks held.
struct Report {
    body: Body,
    ok: bool,
}

enum Body {
    Json(Value),
    Text(String),
}

impl Report {
    fn json(command: &str, body: Value, ok: bool) -> Report {
        Report { body: Body::Json(out::envelope(command, body)), ok }
    }
}

fn load_table() -> Result<Vec<KnotTableEntry>, Failure> {
    table::load().map_err(input_err)
}

fn parse_pd_text(text: &str) -> Result<PdCode, Failure> {
    let t = text.trim();
    if t.starts_with('[') {
        let tuples: Vec<[u32; 4]> =
            serde_json::from_str(t).map_err(|e| Failure::Input(format!("PD JSON: {e}")))?;
        PdCode::new(tuples).map_err(input_err)
    } else {
        parse_pd(t).map_err(input_err)
    }
}

/// The PD code and the name to report it under.
fn resolve(input: &InputArgs) -> Result<(PdCode, Option<String>), Failure> {
    if let Some(text) = &input.pd {
        return Ok((parse_pd_text(text)?, None));
    }
    if let Some(path) = &input.file {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        return Ok((parse_pd_text(&text)?, None));
    }
    let name = input.knot.as_deref().unwrap_or_default();
    let table = load_table()?;
    let entry = table::find(&table, name).ok_or_else(|| Failure::Input(format!("unknown knot {name:?}")))?;
    Ok((entry.pd.clone(), Some(entry.name.clone())))
}

fn analyse(input: &InputArgs) -> Result<(Analysis, Option<String>), Failure> {
    let (pd, name) = resolve(input)?;
    let a = Analysis::new(&pd, input.outer).map_err(input_err)?;
    Ok((a, name))
}

fn parse_word(p: &SymmetrizedPresentation, text: &str) -> Result<Word, Failure> {
    let w = Word::parse(text).map_err(input_err)?;
    p.check_word(&w).map_err(input_err)?;
    Ok(w)
}

fn with_knot(mut body: Value, name: &Option<String>) -> Value {
    body["knot"] = json!(name);
    body
}

fn presentation(args: &InputArgs) -> Result<Report, Failure> {
    let (pd, name) = resolve(args)?;
    let d = compute_regions(&pd, args.outer).map_err(input_err)?;
    let validation = d.validate();
    let p = SymmetrizedPresentation::from_diagram_unchecked(&d);
    let sc = check_small_cancellation(&p);
    let ok = validation.is_valid() && sc.is_grid();
    let body = json!({
        "diagram": out::diagram(&d),
        "validation": out::validation(&validation),
        "presentation": out::presentation(&p),
        "small_cancellation": out::small_cancellation(&sc),
    });
    Ok(Report::json("presentation", with_knot(body, &name), ok))
}

fn validate(args: &InputArgs) -> Result<Report, Failure> {
    let (pd, name) = resolve(args)?;
    let d = compute_regions(&pd, args.outer).map_err(input_err)?;
    let r = d.validate();
    let body = json!({ "diagram": out::diagram(&d), "validation": out::validation(&r) });
    Ok(Report::json("validate", with_knot(body, &name), r.is_valid()))
}

fn reduce(args: &WordArgs) -> Result<Report, Failure> {
    let (a, name) = analyse(&args.input)?;
    let w = parse_word(&a.presentation, &args.word)?;
    let (g, trace) = reduce_with_trace(&a.presentation, &w);
    let body = json!({
        "word": out::word(&w),
        "geodesic": out::word(&g),
        "is_identity": g.is_empty(),
        "chain_steps": trace.iter().filter(|s| s.kind == RewriteKind::Chain).count(),
        "steps": trace.iter().map(out::rewrite).collect::<Vec<_>>(),
    });
    Ok(Report::json("reduce", with_knot(body, &name), true))
}

fn peripheral(args: &WordArgs, conjugate: bool) -> Result<Report, Failure> {
    let (a, name) = analyse(&args.input)?;
    let w = parse_word(&a.presentation, &args.word)?;
    let verdict = if conjugate {
        out::conjugacy(&is_conjugate_peripheral(&a.complex, &a.presentation, &w))
    } else {
        out::verdict(&is_peripheral(&a.complex, &a.presentation, &w))
    };
    let body = json!({ "word": out::word(&w), "verdict": verdict });
    let command = if conjugate { "conj-peripheral" } else { "peripheral" };
    Ok(Report::json(command, with_knot(body, &name), true))
}

fn arcs(args: &InputArgs) -> Result<Report, Failure> {
    let (a, name) = analyse(args)?;
    let r = verify_theorem2(&a.diagram, &a.presentation, &a.complex);
    Ok(Report::json("arcs", with_knot(out::theorem2(&r), &name), r.passed()))
}

fn complex(args: &ComplexArgs) -> Result<Report, Failure> {
    if args.rows < 1 || args.cols < 1 || args.rows > 200 || args.cols > 200 {
        return Err(Failure::Input("--rows and --cols must be between 1 and 200".into()));
    }
    let (a, name) = analyse(&args.input)?;
    let path = match &args.word {
        Some(text) => {
            let w = parse_word(&a.presentation, text)?;
            Some(
                a.complex
                    .trace_path(&w, (0, 0))
                    .ok_or_else(|| Failure::Input(format!("`{w}` does not label a path from the origin")))?,
            )
        }
        None => None,
    };
    let (c, rows, cols) = (&a.complex, args.rows, args.cols);
    let body = match args.format {
        Format::Text => Body::Text(render::text(c, rows, cols)),
        Format::Svg => Body::Text(render::svg(c, rows, cols, path.as_deref())),
        Format::Json => {
            let mut v = render::json(c, rows, cols, path.as_deref());
            v["block"] = out::block(c.block());
            Body::Json(out::envelope("complex", with_knot(v, &name)))
        }
    };
    Ok(Report { body, ok: true })
}

fn gauss(args: &InputArgs) -> Result<Report, Failure> {
    let (a, name) = analyse(args)?;
    let expected = a.diagram.gauss_code();
    let recovered = recover_gauss_code(&a.complex);
    let ok = recovered.as_ref().is_ok_and(|g| *g == expected);
    let body = json!({
        "gauss_code": expected.as_slice(),
        "recovered": recovered.as_ref().ok().map(|g| g.as_slice().to_vec()),
        "error": recovered.as_ref().err().map(|e| e.to_string()),
        "matches": ok,
    });
    Ok(Report::json("gauss", with_knot(body, &name), ok))
}

fn oracle_check(args: &OracleArgs) -> Result<Report, Failure> {
    let (a, name) = analyse(&args.input)?;
    let (agree, inconclusive, disagree) =
        acceptance::oracle_sample(&a.presentation, args.max_len, args.samples, args.seed);
    let body = json!({
        "samples": args.samples,
        "max_len": args.max_len,
        "seed": args.seed,
        "agree": agree,
        "inconclusive": inconclusive,
        "inconclusive_rate": if args.samples == 0 { 0.0 } else { inconclusive as f64 / args.samples as f64 },
        "disagree": disagree.iter().map(out::word).collect::<Vec<_>>(),
    });
    Ok(Report::json("oracle-check", with_knot(body, &name), disagree.is_empty()))
}

fn verify(args: &VerifyArgs) -> Result<Report, Failure> {
    let table = load_table()?;
    let entries: Vec<&KnotTableEntry> = table
        .iter()
        .filter(|e| e.crossings() <= args.max_crossings && (args.include_torus || !e.is_torus))
        .collect();
    let reports = verify_all(&entries, args.threads);
    let mut failures = 0;
    let knots: Vec<Value> = reports
        .iter()
        .map(|r| match &r.report {
            Ok(rep) => {
                failures += rep.failures.len();
                let mut v = out::theorem2(rep);
                v.as_object_mut().map(|m| m.remove("informational"));
                v["name"] = json!(r.name);
                v["crossings"] = json!(r.crossings);
                v
            }
            Err(e) => {
                failures += 1;
                json!({ "name": r.name, "crossings": r.crossings, "passed": false, "error": e })
            }
        })
        .collect();
    let ok = reports.iter().all(|r| r.passed());
    let body = json!({ "knots": knots, "total_failures": failures, "passed": ok });
    Ok(Report::json("verify-all", body, ok))
}

fn acceptance_cmd(args: &AcceptanceArgs) -> Result<Report, Failure> {
    let table = load_table()?;
    let ids: Vec<usize> = match args.criterion {
        Some(c) => vec![c as usize],
        None => (1..=10).collect(),
    };
    let outcomes: Vec<_> = ids.into_iter().map(|id| acceptance::run(id, &table)).collect();
    let text: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
    Ok(Report { body: Body::Text(text), ok: outcomes.iter().all(|o| o.passed) })
}

fn dispatch(cmd: &Command) -> Result<Report, Failure> {
    match cmd {
        Command::Presentation(a) => presentation(a),
        Command::Validate(a) => validate(a),
        Command::Reduce(a) => reduce(a),
        Command::Peripheral(a) => peripheral(a, false),
        Command::ConjPeripheral(a) => peripheral(a, true),
        Command::Arcs(a) => arcs(a),
        Command::Complex(a) => complex(a),
        Command::Gauss(a) => gauss(a),
        Command::OracleCheck(a) => oracle_check(a),
        Command::VerifyAll(a) => verify(a),
        Command::Acceptance(a) => acceptance_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(report) => {
            let text = match report.body {
                Body::Json(v) => serde_json::to_string_pretty(&v).expect("serializable") + "\n",
                Body::Text(t) => t,
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
