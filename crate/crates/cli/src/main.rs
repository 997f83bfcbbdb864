use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use extweyl::extended::{ExtRootSystem, ExtRootSystemJson};
use extweyl::lattice::{coinvariants, parse_pair};
use extweyl::roots::{Family, FiniteRootSystem, RootSystemType};
use extweyl::verify::{self, expected_tensor_type, roots_on_grid, table_applies, Suite, VerifyConfig};
use extweyl::weyl::{ab_k, decide_word, orbit_of, orbit_table, naive_conditions, OrbitClass, Word, WordLetter};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "extweyl", version, about = "Extended root systems, their Weyl groups and the word problem")]
struct Cli {
    /// output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// seed for randomized suites
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// largest rank in type sweeps
    #[arg(long, default_value_t = 6, global = true, value_parser = clap::value_parser!(u16).range(1..=8))]
    cap_rank: u16,
    /// write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Summary of a finite root system, e.g. `info G 2`
    Info { family: Family, rank: usize },
    /// Invariant factors of a tensor product of lattices over the Weyl group
    TensorType {
        family: Family,
        rank: usize,
        /// `root,root`, `root,coroot` or `coroot,coroot`
        pair: String,
    },
    /// Orbit classes of extended roots under the affine Weyl action
    Orbits {
        /// extended root system JSON file
        #[arg(long, conflicts_with_all = ["family", "rank"])]
        system: Option<PathBuf>,
        #[arg(required_unless_present = "system")]
        family: Option<Family>,
        #[arg(required_unless_present = "system")]
        rank: Option<usize>,
        /// rank of G
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// rank of the G1 summand for a twisted system
        #[arg(long)]
        twist: Option<usize>,
    },
    /// Decide whether a word in the reflections is trivial
    Word {
        /// extended root system JSON file
        #[arg(long)]
        system: PathBuf,
        /// a JSON file, inline JSON, or shorthand like `0:1,0 0:-1,0`
        word: String,
    },
    /// Run a verification suite
    Verify {
        suite: Suite,
        /// random cases per randomized check
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

/// What a command produced: a JSON body, its text rendering, and whether a
/// check failed (with the command that replays it).
struct Report {
    command: &'static str,
    body: Value,
    text: String,
    mismatch: Option<String>,
}

impl Report {
    fn ok(command: &'static str, body: Value, text: String) -> Self {
        Report {
            command,
            body,
            text,
            mismatch: None,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if let Err(e) = emit(&cli, &report) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            match &report.mismatch {
                None => ExitCode::SUCCESS,
                Some(replay) => {
                    eprintln!("verification mismatch; replay with:\n  {replay}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<()> {
    let rendered = match cli.format {
        Format::Text => report.text.clone(),
        Format::Json => {
            let mut body = report.body.clone();
            if let Value::Object(m) = &mut body {
                m.insert("schema".into(), json!(SCHEMA));
                m.insert("command".into(), json!(report.command));
            }
            serde_json::to_string_pretty(&body)? + "\n"
        }
    };
    match &cli.out {
        Some(path) => fs::write(path, rendered).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Info { family, rank } => info(RootSystemType::new(*family, *rank)?),
        Command::TensorType { family, rank, pair } => tensor_type(RootSystemType::new(*family, *rank)?, pair),
        Command::Orbits {
            system,
            family,
            rank,
            n,
            twist,
        } => {
            let ers = match (system, family, rank) {
                (Some(path), _, _) => load_system(path)?,
                (None, Some(f), Some(r)) => {
                    let t = RootSystemType::new(*f, *r)?;
                    match twist {
                        Some(k) => ExtRootSystem::twisted(t, *n, *k)?,
                        None => ExtRootSystem::full(t, *n),
                    }
                }
                _ => unreachable!("clap requires a system or a type"),
            };
            orbits(&ers)
        }
        Command::Word { system, word } => decide(&load_system(system)?, word),
        Command::Verify { suite, samples } => {
            let cfg = VerifyConfig {
                seed: cli.seed,
                cap_rank: cli.cap_rank as usize,
                samples: *samples,
            };
            let mut report = verify_suite(*suite, &cfg);
            if report.mismatch.is_some() {
                report.mismatch = Some(format!(
                    "extweyl verify {suite} --seed {} --cap-rank {} --samples {samples}",
                    cfg.seed, cfg.cap_rank
                ));
            }
            Ok(report)
        }
    }
}

fn load_system(path: &Path) -> Result<ExtRootSystem> {
    let raw = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let json: ExtRootSystemJson =
        serde_json::from_str(&raw).with_context(|| format!("parsing {}", path.display()))?;
    Ok(ExtRootSystem::from_json(&json)?)
}

fn matrix_rows(m: &extweyl::roots::IMat) -> Vec<Vec<i64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

fn info(t: RootSystemType) -> Result<Report> {
    let rs = FiniteRootSystem::build(t);
    let cartan = matrix_rows(rs.cartan());
    let mut classes = BTreeMap::new();
    for c in rs.lengths() {
        *classes.entry(c.as_str()).or_insert(0usize) += 1;
    }
    // pairs (α, 2α) of a non-reduced system
    let divisible: Vec<[usize; 2]> = (0..rs.len())
        .filter_map(|i| {
            let double: Vec<i64> = rs.root(i).iter().map(|x| 2 * x).collect();
            rs.index_of(&double).map(|j| [i, j])
        })
        .collect();
    let k_delta = t.k_delta().ok();

    let mut body = serde_json::to_value(rs.to_json())?;
    let m = body.as_object_mut().expect("object");
    m.remove("schema");
    m.insert("name".into(), json!(t.to_string()));
    m.insert("n_roots".into(), json!(rs.len()));
    m.insert("n_positive".into(), json!(rs.n_positive()));
    m.insert("cartan".into(), json!(cartan));
    m.insert("k_delta".into(), json!(k_delta));
    m.insert("length_classes".into(), json!(classes));
    m.insert("divisible_pairs".into(), json!(divisible));

    let mut text = format!("{t}: {} roots, {} positive\n", rs.len(), rs.n_positive());
    text.push_str("Cartan matrix:\n");
    for row in &cartan {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        writeln!(text, "  {}", cells.join(""))?;
    }
    if let Some(k) = k_delta {
        writeln!(text, "k_delta = {k}")?;
    }
    let counts: Vec<String> = classes.iter().map(|(c, n)| format!("{c} {n}")).collect();
    writeln!(text, "length classes: {}", counts.join(", "))?;
    for [i, j] in &divisible {
        writeln!(text, "divisible pair: {:?} and 2x = {:?}", rs.root(*i), rs.root(*j))?;
    }
    Ok(Report::ok("info", body, text))
}

fn tensor_type(t: RootSystemType, pair: &str) -> Result<Report> {
    let (left, right) = parse_pair(pair)?;
    let rs = FiniteRootSystem::build(t);
    let group = coinvariants(&rs, left, right);
    let l = rs.rank();
    let factors: Vec<String> = group.invariant_factors().iter().map(ToString::to_string).collect();
    // first basis tensor e_i (x) e_j whose class generates each summand
    let images: Vec<Vec<i64>> = (0..l * l)
        .map(|idx| {
            let mut e = vec![0; l * l];
            e[idx] = 1;
            group.project(&e)
        })
        .collect();
    let witness: Vec<Option<[usize; 2]>> = group
        .invariant_factors()
        .iter()
        .enumerate()
        .map(|(c, d)| {
            let d = d.to_i64().expect("small invariant factor");
            images
                .iter()
                .position(|img| if d == 0 { img[c].abs() == 1 } else { img[c].gcd(&d) == 1 })
                .map(|idx| [idx / l, idx % l])
        })
        .collect();
    let got = group.describe();
    let expected = expected_tensor_type(t, left, right);
    let body = json!({
        "type": t.family(),
        "rank": t.rank(),
        "pair": format!("{left},{right}"),
        "invariant_factors": factors,
        "structure": got,
        "expected": expected,
        "generator_witness": witness,
    });
    let mut text = format!("{t} {left}(x){right}: {got}\n");
    let mismatch = (got != expected).then(|| {
        writeln!(text, "expected {expected}").ok();
        format!("extweyl tensor-type {} {} {left},{right}", t.family(), t.rank())
    });
    Ok(Report {
        command: "tensor-type",
        body,
        text,
        mismatch,
    })
}

#[derive(Serialize)]
struct ClassRow {
    #[serde(flatten)]
    class: OrbitClass,
    representative: WordLetter,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<Vec<i64>>,
}

fn orbits(ers: &ExtRootSystem) -> Result<Report> {
    let tabulated = table_applies(ers);
    let mut rows: BTreeMap<OrbitClass, ClassRow> = BTreeMap::new();
    for (h, b) in roots_on_grid(ers) {
        let class = orbit_of(ers, &h, b)?;
        if rows.contains_key(&class) {
            continue;
        }
        let table = if tabulated { Some(orbit_table(ers, b)?) } else { None };
        rows.insert(
            class.clone(),
            ClassRow {
                class,
                representative: WordLetter { g: h, alpha: b },
                table,
            },
        );
    }
    let abk = ab_k(ers).describe();
    let rows: Vec<ClassRow> = rows.into_values().collect();
    let mut text = format!(
        "{} over Z^{}: {} orbit classes, abelianized K = {abk}\n",
        ers.delta().rs_type(),
        ers.n(),
        rows.len()
    );
    for r in &rows {
        writeln!(
            text,
            "  {:<3} coset {:?} mod {:?}  e.g. {}",
            r.class.class.as_str(),
            r.class.coset,
            r.class.modulus,
            r.representative
        )?;
    }
    let body = json!({
        "system": ers.to_json(),
        "ab_k": abk,
        "classes": rows,
    });
    Ok(Report::ok("orbits", body, text))
}

fn parse_word(arg: &str) -> Result<Word> {
    let path = Path::new(arg);
    let raw = if path.is_file() {
        fs::read_to_string(path).with_context(|| format!("reading {arg}"))?
    } else {
        arg.to_string()
    };
    if raw.trim_start().starts_with('[') {
        return serde_json::from_str(&raw).context("parsing word JSON");
    }
    Ok(Word::parse_shorthand(&raw)?)
}

fn decide(ers: &ExtRootSystem, arg: &str) -> Result<Report> {
    let word = parse_word(arg)?;
    let labels = word.labels(ers)?;
    let decision = decide_word(ers, &labels)?;
    let naive = naive_conditions(ers, &labels)?;
    let mut body = serde_json::to_value(&decision)?;
    body.as_object_mut()
        .expect("object")
        .insert("naive_conditions".into(), serde_json::to_value(naive)?);
    let text = match decision.failing_layer {
        None => format!("trivial ({} letters)\n", labels.len()),
        Some(layer) => format!("nontrivial: fails at layer {layer:?} ({} letters)\n", labels.len()),
    };
    Ok(Report::ok("word", body, text))
}

fn verify_suite(suite: Suite, cfg: &VerifyConfig) -> Report {
    let reports = verify::run(suite, cfg);
    let passed = reports.iter().all(|r| r.passed());
    let mut text = String::new();
    for r in &reports {
        for c in &r.cases {
            let tag = match (c.passed, &c.detail) {
                (false, _) => "FAIL",
                (true, Some(_)) => "note",
                (true, None) => "ok",
            };
            let _ = write!(text, "{tag:<4} {} {}", r.suite, c.name);
            if let Some(d) = &c.detail {
                let _ = write!(text, ": {d}");
            }
            text.push('\n');
        }
    }
    if let Some((suite, case)) = reports.iter().find_map(|r| r.first_failure().map(|c| (r.suite, c))) {
        eprintln!("first failure in {suite}: {} {}", case.name, case.detail.as_deref().unwrap_or(""));
    }
    let _ = writeln!(text, "{}", if passed { "all checks passed" } else { "some checks failed" });
    Report {
        command: "verify",
        body: json!({ "seed": cfg.seed, "cap_rank": cfg.cap_rank, "passed": passed, "suites": reports }),
        text,
        mismatch: (!passed).then(String::new),
    }
}
