use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use knotgroup::fox::{alexander_matrix, alexander_polynomial_of};
use knotgroup::hom::{count_homs, Constraint, SearchMode, SearchOptions, SearchStats};
use knotgroup::verify::{self, VerifyConfig};
use knotgroup::{
    FiniteGroup, FoxError, GroupError, GroupSpec, LaurentError, Permutation, Presentation,
    PresentationError, SearchError,
};

#[derive(Parser, Debug)]
#[command(
    name = "knotgroup",
    version,
    about = "Presentations, Alexander polynomials and homomorphism counts"
)]
struct Cli {
    /// Print a JSON run report instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for homomorphism search (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a presentation file and print it in canonical form.
    Parse { file: PathBuf },
    /// Alexander polynomial of a presentation with H1 = Z.
    Alex {
        file: PathBuf,
        /// Also print the Alexander matrix.
        #[arg(long)]
        matrix: bool,
    },
    /// Count homomorphisms into a finite permutation group.
    Count {
        file: PathBuf,
        /// Target group: S<n>, A<n> or gen:<degree>:[perm,...].
        #[arg(long)]
        group: String,
        /// Pin a generator image, e.g. x=(1,5,4,3,2). Repeatable.
        #[arg(long = "pin", value_name = "GEN=PERM")]
        pins: Vec<String>,
        /// Pin the image of a marker word, e.g. meridian_B=(1,5,4,3,2).
        #[arg(long, value_name = "NAME=PERM")]
        marker: Option<String>,
        #[arg(long, default_value = "backtrack")]
        mode: SearchMode,
        /// List every counted homomorphism.
        #[arg(long)]
        list: bool,
        /// Maximum number of search nodes.
        #[arg(long, default_value_t = knotgroup::hom::DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Write the presentation F_m.
    Family {
        #[arg(long)]
        m: i64,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the reproducibility suite for the F_m family.
    VerifyPaper {
        /// Also check m = 121 and 181.
        #[arg(long)]
        deep: bool,
        /// Presentation file used in place of F_1.
        #[arg(long = "override", value_name = "FILE")]
        override_file: Option<PathBuf>,
    },
}

enum Failure {
    Check(String),
    Input(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Input(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Input(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::TooLarge { .. } | SearchError::BudgetExceeded { .. } => {
                Failure::Budget(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<FoxError> for Failure {
    fn from(e: FoxError) -> Self {
        match e {
            FoxError::Overflow(_) => Failure::Budget(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<LaurentError> for Failure {
    fn from(e: LaurentError) -> Self {
        match e {
            LaurentError::Overflow(_) => Failure::Budget(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::TooLarge { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<PresentationError> for Failure {
    fn from(e: PresentationError) -> Self {
        Failure::Input(e.to_string())
    }
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    inputs: Value,
    results: Value,
    wall_time_ms: u128,
    stats: Option<StatsReport>,
}

#[derive(Serialize)]
struct StatsReport {
    nodes: u64,
    relator_checks: u64,
}

impl From<SearchStats> for StatsReport {
    fn from(s: SearchStats) -> Self {
        StatsReport {
            nodes: s.nodes,
            relator_checks: s.relator_checks,
        }
    }
}

struct Outcome {
    text: String,
    inputs: Value,
    results: Value,
    stats: Option<SearchStats>,
    failure: Option<Failure>,
}

impl Outcome {
    fn ok(text: String, inputs: Value, results: Value) -> Self {
        Outcome {
            text,
            inputs,
            results,
            stats: None,
            failure: None,
        }
    }
}

fn read_presentation(path: &Path) -> Result<Presentation, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Presentation::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn split_assignment<'a>(arg: &'a str, flag: &str) -> Result<(&'a str, &'a str), Failure> {
    arg.split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| Failure::Input(format!("--{flag} expects NAME=PERM, got `{arg}`")))
}

fn cmd_parse(file: &Path) -> Result<Outcome, Failure> {
    let p = read_presentation(file)?;
    let canonical = p.render();
    Ok(Outcome::ok(
        canonical.trim_end().to_string(),
        json!({ "file": file.display().to_string() }),
        json!({
            "canonical": canonical,
            "generators": p.generator_names(),
            "relators": p.relators().len(),
        }),
    ))
}

fn cmd_alex(file: &Path, show_matrix: bool) -> Result<Outcome, Failure> {
    let p = read_presentation(file)?;
    let matrix = alexander_matrix(&p)?;
    let delta = alexander_polynomial_of(&matrix)?.normalize_up_to_units();
    let breadth = delta.breadth()?;
    let rows: Vec<Vec<String>> = matrix
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|e| e.to_string()).collect())
        .collect();
    let mut text = delta.to_string();
    if show_matrix {
        for r in &rows {
            text.push_str(&format!("\n[{}]", r.join(", ")));
        }
    }
    let mut results = json!({ "alexander_polynomial": delta.to_string(), "breadth": breadth });
    if show_matrix {
        results["matrix"] = json!(rows);
    }
    Ok(Outcome::ok(
        text,
        json!({ "file": file.display().to_string(), "matrix": show_matrix }),
        results,
    ))
}

#[allow(clippy::too_many_arguments)]
fn cmd_count(
    file: &Path,
    group_spec: &str,
    pins: &[String],
    marker: Option<&str>,
    mode: SearchMode,
    list: bool,
    budget: u64,
    jobs: usize,
) -> Result<Outcome, Failure> {
    let p = read_presentation(file)?;
    let spec: GroupSpec = group_spec.parse()?;
    let group = FiniteGroup::build(&spec)?;
    let perm = |text: &str| -> Result<Permutation, Failure> { Ok(group.parse_element(text)?) };

    let mut constraint = Constraint::none();
    let mut pin_echo = serde_json::Map::new();
    for arg in pins {
        let (name, image) = split_assignment(arg, "pin")?;
        let g = p
            .generator(name)
            .ok_or_else(|| Failure::Input(format!("UnknownGenerator `{name}` in --pin")))?;
        let image = perm(image)?;
        pin_echo.insert(name.to_string(), json!(image.to_string()));
        constraint = constraint.pin(g, image);
    }
    let mut marker_echo = Value::Null;
    if let Some(arg) = marker {
        let (name, image) = split_assignment(arg, "marker")?;
        let word = p
            .marker_or_generator(name)
            .ok_or_else(|| Failure::from(SearchError::UnknownMarker(name.to_string())))?;
        let image = perm(image)?;
        marker_echo = json!({ name: image.to_string() });
        constraint = match word.syllables() {
            [s] if s.exponent == 1 => constraint.pin(s.generator, image),
            _ => constraint.word_equals(word, image),
        };
    }

    let options = SearchOptions::default()
        .mode(mode)
        .materialize(list)
        .jobs(jobs)
        .node_budget(budget);
    let result = count_homs(&p, &group, &constraint, &options)?;

    let mut text = result.count.to_string();
    let mut results = json!({ "count": result.count });
    if let Some(found) = &result.assignments {
        let names = p.generator_names();
        let rendered: Vec<serde_json::Map<String, Value>> = found
            .iter()
            .map(|a| {
                names
                    .iter()
                    .zip(a)
                    .map(|(n, img)| (n.clone(), json!(img.to_string())))
                    .collect()
            })
            .collect();
        for a in found {
            let line: Vec<String> = names
                .iter()
                .zip(a)
                .map(|(n, img)| format!("{n}={img}"))
                .collect();
            text.push('\n');
            text.push_str(&line.join(" "));
        }
        results["homomorphisms"] = json!(rendered);
    }
    Ok(Outcome {
        text,
        inputs: json!({
            "file": file.display().to_string(),
            "group": spec.to_string(),
            "group_order": group.order(),
            "pins": pin_echo,
            "marker": marker_echo,
            "mode": mode.to_string(),
            "list": list,
            "budget": budget,
        }),
        results,
        stats: Some(result.stats),
        failure: None,
    })
}

fn cmd_family(m: i64, out: Option<&Path>) -> Result<Outcome, Failure> {
    let p = Presentation::family(m)?;
    let text = p.render();
    let inputs = json!({ "m": m, "out": out.map(|o| o.display().to_string()) });
    let results = json!({
        "relator_syllables": p.relators().iter().map(|r| r.len()).collect::<Vec<_>>(),
        "canonical": text,
    });
    match out {
        Some(path) => {
            fs::write(path, &text)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Ok(Outcome::ok(
                format!("wrote {}", path.display()),
                inputs,
                results,
            ))
        }
        None => Ok(Outcome::ok(text.trim_end().to_string(), inputs, results)),
    }
}

fn cmd_verify(deep: bool, override_file: Option<&Path>, jobs: usize) -> Result<Outcome, Failure> {
    let family_override = override_file.map(read_presentation).transpose()?;
    let config = VerifyConfig {
        deep,
        family_override,
        jobs,
        ..VerifyConfig::default()
    };
    let outcomes = verify::run(&config);
    let text = outcomes
        .iter()
        .map(|o| o.to_string())
        .collect::<Vec<_>>()
        .join("\n");
    let failed: Vec<&str> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id)
        .collect();
    let checks: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            let e = verify::expectation(o.id).expect("outcomes come from the table");
            json!({
                "id": o.id,
                "criterion": o.criterion,
                "claim": e.claim,
                "source": e.source.to_string(),
                "passed": o.passed,
                "detail": o.detail,
            })
        })
        .collect();
    let failure = (!failed.is_empty())
        .then(|| Failure::Check(format!("failed checks: {}", failed.join(", "))));
    Ok(Outcome {
        text,
        inputs: json!({
            "deep": deep,
            "override": override_file.map(|o| o.display().to_string()),
            "expectations_version": verify::EXPECTATIONS_VERSION,
        }),
        results: json!({ "passed": failed.is_empty(), "checks": checks }),
        stats: None,
        failure,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let start = Instant::now();
    let (name, outcome) = match &cli.command {
        Command::Parse { file } => ("parse", cmd_parse(file)),
        Command::Alex { file, matrix } => ("alex", cmd_alex(file, *matrix)),
        Command::Count {
            file,
            group,
            pins,
            marker,
            mode,
            list,
            budget,
        } => (
            "count",
            cmd_count(
                file,
                group,
                pins,
                marker.as_deref(),
                *mode,
                *list,
                *budget,
                jobs,
            ),
        ),
        Command::Family { m, out } => ("family", cmd_family(*m, out.as_deref())),
        Command::VerifyPaper {
            deep,
            override_file,
        } => (
            "verify-paper",
            cmd_verify(*deep, override_file.as_deref(), jobs),
        ),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(f) => {
            eprintln!("error: {}", f.message());
            return ExitCode::from(f.code());
        }
    };
    if cli.json {
        let report = RunReport {
            command: name.to_string(),
            inputs: outcome.inputs,
            results: outcome.results,
            wall_time_ms: start.elapsed().as_millis(),
            stats: outcome.stats.map(StatsReport::from),
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
    } else {
        println!("{}", outcome.text);
    }
    match outcome.failure {
        Some(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
        None => ExitCode::SUCCESS,
    }
}
