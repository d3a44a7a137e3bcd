use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand};
use skewbrace::brace::{default_regime, verify_brace, ybe_map, DEFAULT_SAMPLES};
use skewbrace::group::Group;
use skewbrace::io::{self, GroupContext, GroupSpec, IoError};
use skewbrace::oracle::{self, OracleError, DEFAULT_BOUND};
use skewbrace::psl25::{self, ExampleReport, VerifyOptions, BRACE_SAMPLES, YBE_SAMPLES};
use skewbrace::theorem_a::{construct_brace, extract_with_inner, TheoremError};

#[derive(Parser)]
#[command(name = "skewbrace", version, about = "Skew braces from subdirect data in Aut(K)")]
struct Cli {
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample budget for sampled checks.
    #[arg(long, global = true)]
    samples: Option<u64>,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every claim about the order-7800 example and build its brace.
    VerifyExample {
        /// Replacement matrices, as an example document.
        #[arg(long)]
        data: Option<PathBuf>,
        /// Also rerun the claims for each primitive root of GF(25).
        #[arg(long)]
        zeta_scan: bool,
        /// Skip building the brace.
        #[arg(long)]
        no_construct: bool,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Write the example's datum document.
    ExampleDatum {
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Build the brace of a datum document.
    Construct {
        datum: PathBuf,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Recover the datum of a brace document.
    Extract {
        brace: PathBuf,
        /// Write the recovered datum here.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// All braces with additive group a small roster group, cross-validated.
    Census {
        group: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Braid relation and bijectivity of the solution of a brace.
    YbeCheck { brace: PathBuf },
}

enum Failure {
    Condition(String),
    Input(anyhow::Error),
    Bound(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Condition(_) => 1,
            Failure::Input(_) => 2,
            Failure::Bound(_) => 3,
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Input(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Input)
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(Failure::Input)
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

fn theorem_failure(e: TheoremError) -> Failure {
    match e {
        TheoremError::Conditions(r) => Failure::Condition(r.summary()),
        e => Failure::Condition(e.to_string()),
    }
}

fn verify_example(cli: &Cli, data: Option<&Path>, zeta_scan: bool, no_construct: bool, as_json: bool) -> Outcome {
    let matrices = match data {
        Some(p) => io::decode_example(&read(p)?)?,
        None => psl25::printed_matrices(),
    };
    let start = Instant::now();
    let example = psl25::build_example_from(psl25::conway_field(), &matrices)
        .map_err(|e| Failure::Input(anyhow::anyhow!("example data: {e}")))?;
    let opts = VerifyOptions {
        construct: !no_construct,
        brace_samples: cli.samples.unwrap_or(BRACE_SAMPLES),
        ybe_samples: cli.samples.map_or(YBE_SAMPLES, |s| s.min(YBE_SAMPLES)),
        seed: cli.seed,
    };
    let report = psl25::verify_example(&example, opts);
    for (stage, secs) in &report.timings {
        eprintln!("{stage}: {secs:.2}s");
    }
    let scan = (zeta_scan || !report.passed()).then(psl25::zeta_scan);
    if as_json {
        #[derive(serde::Serialize)]
        struct Out<'a> {
            report: &'a ExampleReport,
            zeta_scan: &'a Option<Vec<psl25::RootOutcome>>,
        }
        print!(
            "{}",
            json(&Out {
                report: &report,
                zeta_scan: &scan
            })
        );
    } else {
        print!("{}", report.render());
        if let Some(scan) = &scan {
            for root in scan {
                let status = if root.passed { "pass" } else { "fail" };
                let detail = match &root.error {
                    Some(e) => e.clone(),
                    None => root.failed.join("; "),
                };
                println!("zeta-scan {} {status} {detail}", root.zeta);
            }
        }
    }
    eprintln!("total: {:.2}s", start.elapsed().as_secs_f64());
    let first = report
        .failures()
        .next()
        .map(|c| format!("{}: expected {}, got {}", c.name, c.expected, c.actual));
    first.map_or(Ok(()), |msg| Err(Failure::Condition(msg)))
}

fn example_context() -> Result<(GroupContext, psl25::ExampleData), Failure> {
    let example = psl25::build_example().map_err(|e| Failure::Input(e.into()))?;
    let ctx = GroupContext {
        spec: GroupSpec::Psl2 { q: 25 },
        aut: example.aut.clone(),
        pgaml: Some(example.pgaml.clone()),
    };
    Ok((ctx, example))
}

fn construct(datum: &Path, out: &Path) -> Outcome {
    let (ctx, d) = io::decode_datum(&read(datum)?)?;
    let start = Instant::now();
    let cons = construct_brace(&d).map_err(theorem_failure)?;
    eprintln!("construction: {:.2}s", start.elapsed().as_secs_f64());
    write(out, &json(&io::encode_brace(&ctx, &cons.brace)?))?;
    println!("{}", cons.report.summary());
    println!("|H| = {}", cons.h.order());
    println!("|W| = {}", cons.w.order());
    println!("multiplicative order = {}", cons.brace.multiplicative().order());
    Ok(())
}

fn extract(brace: &Path, out: Option<&Path>) -> Outcome {
    let (ctx, b) = io::decode_brace(&read(brace)?)?;
    let inner = std::sync::Arc::new(skewbrace::group::inner_automorphism_group(ctx.aut.as_ref()));
    let ex = extract_with_inner(&b, ctx.aut.clone(), inner).map_err(theorem_failure)?;
    let d = &ex.datum;
    println!("|K| = {}", b.order());
    println!("|X| = {}", d.x.order());
    println!("|Y| = {}", d.y.order());
    println!("|N| = {}", d.n.order());
    println!("|M| = {}", d.m.order());
    println!("|Ker α| = {}", ex.t.order());
    println!("|Ker π| = {}", ex.v.order());
    println!("X = Inn(K): {}", d.x == d.inner.inn);
    println!("Y trivial: {}", d.y.is_trivial());
    println!("{}", ex.report.summary());
    if let Some(out) = out {
        write(out, &json(&io::encode_datum(&ctx, d)))?;
    }
    if ex.report.passed() {
        Ok(())
    } else {
        Err(Failure::Condition(ex.report.summary()))
    }
}

fn census(group: &str, bound: usize, out: Option<&Path>) -> Outcome {
    let oracle_failure = |e: OracleError| match e {
        OracleError::BoundExceeded { .. } => Failure::Bound(e.to_string()),
        OracleError::UnknownGroup(_) => Failure::Input(e.into()),
        e => Failure::Condition(e.to_string()),
    };
    let ctx = oracle::roster_context(group).map_err(oracle_failure)?;
    let start = Instant::now();
    let c = oracle::enumerate_regular_subgroups(group, ctx.aut.clone(), bound).map_err(oracle_failure)?;
    eprintln!("enumeration: {:.2}s", start.elapsed().as_secs_f64());
    let report = oracle::cross_validate(&c, ctx.aut.clone());
    eprintln!("cross-validation: {:.2}s", start.elapsed().as_secs_f64());
    let text = json(&io::encode_census(&ctx, &c, &report));
    match out {
        Some(p) => {
            write(p, &text)?;
            println!(
                "{}: {} braces, {} corollary pairs, {} failures",
                group,
                c.entries.len(),
                report.corollary.len(),
                report.failures.len()
            );
        }
        None => print!("{text}"),
    }
    match report.failures.first() {
        None => Ok(()),
        Some(f) => Err(Failure::Condition(format!(
            "entry {} fails at {}: {}",
            f.entry, f.stage, f.detail
        ))),
    }
}

fn ybe_check(cli: &Cli, brace: &Path) -> Outcome {
    let (_, b) = io::decode_brace(&read(brace)?)?;
    let n = b.order();
    let regime = default_regime(n, cli.samples.unwrap_or(DEFAULT_SAMPLES), cli.seed);
    let axioms = verify_brace(&b, regime);
    println!(
        "brace axioms: {} ({} triples)",
        if axioms.passed() { "pass" } else { "fail" },
        axioms.triples_checked
    );
    match ybe_map(&b, regime) {
        Ok(r) => {
            println!("braid relation: pass ({} triples)", r.triples_checked);
            match r.bijective {
                Some(true) => println!("bijective: yes"),
                Some(false) => println!("bijective: no"),
                None => println!("bijective: not checked"),
            }
            if r.bijective == Some(false) || !axioms.passed() {
                return Err(Failure::Condition("solution is not a bijective brace solution".into()));
            }
            Ok(())
        }
        Err(e) => {
            println!("braid relation: fail");
            Err(Failure::Condition(e.to_string()))
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .context("starting the thread pool")?;
    }
    match &cli.command {
        Command::VerifyExample {
            data,
            zeta_scan,
            no_construct,
            json,
        } => verify_example(cli, data.as_deref(), *zeta_scan, *no_construct, *json),
        Command::ExampleDatum { out } => {
            let (ctx, example) = example_context()?;
            write(out, &json(&io::encode_datum(&ctx, &example.datum())))
        }
        Command::Construct { datum, out } => construct(datum, out),
        Command::Extract { brace, out } => extract(brace, out.as_deref()),
        Command::Census { group, bound, out } => census(group, *bound, out.as_deref()),
        Command::YbeCheck { brace } => ybe_check(cli, brace),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                Failure::Condition(msg) => eprintln!("condition failure: {msg}"),
                Failure::Input(err) => eprintln!("error: {err:#}"),
                Failure::Bound(msg) => eprintln!("resource bound: {msg}"),
            }
            ExitCode::from(e.code())
        }
    }
}
