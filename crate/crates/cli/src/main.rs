//! Command-line solver for soft games: games whose payoffs are subsets of a
//! finite universe of alternatives.
//!
//! Exit codes: 0 success with a non-empty solution / true property, 1 success
//! with an empty solution / false property, 2 usage error, 3 input validation
//! error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use sha2::{Digest, Sha256};

use softgame_core::game::{GameError, Player, SoftGame, TwoPersonSoftGame};
use softgame_core::generator::{random_game, Constraint, GenError, GenSpec};
use softgame_core::io::{parse_game, serialize_game, ParseError};
use softgame_core::softset::Subset;
use softgame_core::solvers::{
    eliminate, game_value, nash_equilibria, nps_nash_equilibria, saddle_points, solve_pipeline,
    EliminationTrace, NashEquilibrium, SaddlePoint, Side, ValueReport,
};

#[derive(Parser)]
#[command(name = "softgame", version, about = "Solve set-valued (soft) games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a game file with one of the solution methods.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        /// Player perspective for saddle/values/pipeline (1 or 2).
        #[arg(long, default_value_t = 1)]
        player: usize,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Evaluate a classification predicate on a game file.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        property: Property,
        /// Player the property refers to, for rational/empty/full.
        #[arg(long, default_value_t = 1)]
        player: usize,
    },
    /// Generate a reproducible random game.
    Gen {
        #[arg(long)]
        seed: u64,
        /// Universe size (element names are u1..uN).
        #[arg(long)]
        universe: usize,
        /// Strategy counts per player, e.g. 3x3 or 2x2x2.
        #[arg(long, value_parser = parse_dims)]
        dims: Dims,
        #[arg(long, value_enum, default_value_t = ConstraintArg::None)]
        constraint: ConstraintArg,
        /// Write to a file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Show dimensions, mode, and universe of a game file.
    Info { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Saddle,
    Values,
    Eliminate,
    Nash,
    Pipeline,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Saddle => "saddle",
            Method::Values => "values",
            Method::Eliminate => "eliminate",
            Method::Nash => "nash",
            Method::Pipeline => "pipeline",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Disjoint,
    Universal,
    Rational,
    Empty,
    Full,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstraintArg {
    None,
    Disjoint,
    Universal,
    DisjointUniversal,
}

impl From<ConstraintArg> for Constraint {
    fn from(value: ConstraintArg) -> Self {
        match value {
            ConstraintArg::None => Constraint::None,
            ConstraintArg::Disjoint => Constraint::Disjoint,
            ConstraintArg::Universal => Constraint::Universal,
            ConstraintArg::DisjointUniversal => Constraint::DisjointUniversal,
        }
    }
}

#[derive(Clone)]
struct Dims(Vec<usize>);

fn parse_dims(text: &str) -> Result<Dims, String> {
    let dims: Result<Vec<usize>, _> = text.split('x').map(str::parse).collect();
    match dims {
        Ok(dims) if dims.len() >= 2 && dims.iter().all(|&d| d > 0) => Ok(Dims(dims)),
        _ => Err(format!(
            "expected strategy counts like 3x3 or 2x2x2, got {text:?}"
        )),
    }
}

/// A failure carrying its exit code: 2 for usage problems, 3 for input
/// validation problems.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(err: ParseError) -> Self {
        Failure::input(err.to_string())
    }
}

impl From<GameError> for Failure {
    fn from(err: GameError) -> Self {
        Failure::input(err.to_string())
    }
}

impl From<GenError> for Failure {
    fn from(err: GenError) -> Self {
        Failure::usage(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse(); // clap exits 2 on usage errors, 0 on --help
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Solve {
            file,
            method,
            player,
            format,
        } => solve(&file, method, player, format),
        Command::Check {
            file,
            property,
            player,
        } => check(&file, property, player),
        Command::Gen {
            seed,
            universe,
            dims,
            constraint,
            output,
        } => generate(seed, universe, dims, constraint, output),
        Command::Info { file } => info(&file),
    }
}

fn load(file: &PathBuf) -> Result<(SoftGame, String), Failure> {
    let text =
        fs::read_to_string(file).map_err(|e| Failure::input(format!("{}: {e}", file.display())))?;
    let game = parse_game(&text)?;
    let digest = format!("sha256:{:x}", Sha256::digest(text.as_bytes()));
    Ok((game, digest))
}

fn player_arg(player: usize) -> Result<Player, Failure> {
    Player::from_index(player.wrapping_sub(1))
        .ok_or_else(|| Failure::usage(format!("--player must be 1 or 2, got {player}")))
}

/// Styles a header when SOFTGAME_COLOR=1; plain text otherwise.
fn header(text: &str) -> String {
    if std::env::var("SOFTGAME_COLOR").as_deref() == Ok("1") {
        format!("\x1b[1m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}

fn set_json(subset: &Subset) -> serde_json::Value {
    json!(subset.names())
}

fn pair_labels(game: &TwoPersonSoftGame, row: usize, col: usize) -> String {
    format!("({}, {})", game.x_labels()[row], game.y_labels()[col])
}

fn saddle_json(game: &TwoPersonSoftGame, points: &[SaddlePoint]) -> serde_json::Value {
    json!(points
        .iter()
        .map(|p| {
            json!({
                "row": game.x_labels()[p.row],
                "column": game.y_labels()[p.col],
                "row_index": p.row,
                "column_index": p.col,
                "value": set_json(&p.value),
            })
        })
        .collect::<Vec<_>>())
}

fn values_json(report: &ValueReport) -> serde_json::Value {
    json!({
        "lower": set_json(&report.lower),
        "upper": set_json(&report.upper),
        "value": report.value.as_ref().map(set_json),
    })
}

fn trace_json(trace: &EliminationTrace) -> serde_json::Value {
    let steps: Vec<_> = trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "side": match s.side { Side::Rows => "row", Side::Columns => "column" },
                "removed": s.removed_label,
                "removed_index": s.removed,
                "dominated_by": s.dominating_label,
                "dominated_by_index": s.dominating,
            })
        })
        .collect();
    let reduced: serde_json::Value =
        serde_json::from_str(&serialize_game(&SoftGame::TwoPerson(trace.reduced.clone())))
            .expect("canonical output is valid JSON");
    json!({ "steps": steps, "reduced_game": reduced })
}

fn print_trace(trace: &EliminationTrace) {
    if trace.steps.is_empty() {
        println!("no dominated strategies; game already reduced");
    }
    for (n, step) in trace.steps.iter().enumerate() {
        println!(
            "step {}: delete {} {} (dominated by {})",
            n + 1,
            step.side,
            step.removed_label,
            step.dominating_label
        );
    }
    let reduced = &trace.reduced;
    println!(
        "reduced game: {}x{}, rows [{}], columns [{}]",
        reduced.rows(),
        reduced.cols(),
        reduced.x_labels().join(", "),
        reduced.y_labels().join(", ")
    );
}

fn print_values(report: &ValueReport) {
    println!("lower value: {}", report.lower);
    println!("upper value: {}", report.upper);
    match &report.value {
        Some(v) => println!("value: {v}"),
        None => println!("value: none (lower and upper differ)"),
    }
}

fn nash_lines(equilibria: &[NashEquilibrium], labels: &[Vec<String>]) -> Vec<String> {
    equilibria
        .iter()
        .map(|e| {
            let action: Vec<&str> = e
                .action
                .indices()
                .iter()
                .zip(labels)
                .map(|(&i, ls)| ls[i].as_str())
                .collect();
            let payoffs: Vec<String> = e
                .payoffs
                .iter()
                .enumerate()
                .map(|(k, p)| format!("player {} {}", k + 1, p))
                .collect();
            format!("({}): {}", action.join(", "), payoffs.join(", "))
        })
        .collect()
}

fn nash_json(equilibria: &[NashEquilibrium], labels: &[Vec<String>]) -> serde_json::Value {
    json!(equilibria
        .iter()
        .map(|e| {
            let action: Vec<&str> = e
                .action
                .indices()
                .iter()
                .zip(labels)
                .map(|(&i, ls)| ls[i].as_str())
                .collect();
            json!({
                "action": action,
                "action_indices": e.action.indices(),
                "payoffs": e.payoffs.iter().map(set_json).collect::<Vec<_>>(),
            })
        })
        .collect::<Vec<_>>())
}

fn emit(
    format: Format,
    method: Method,
    digest: &str,
    player: Option<usize>,
    result: serde_json::Value,
    human: impl FnOnce(),
) {
    match format {
        Format::Human => human(),
        Format::Json => {
            let mut doc = serde_json::Map::new();
            doc.insert("method".into(), json!(method.name()));
            doc.insert("input_digest".into(), json!(digest));
            if let Some(p) = player {
                doc.insert("player".into(), json!(p));
            }
            doc.insert("result".into(), result);
            let doc = serde_json::Value::Object(doc);
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
        }
    }
}

fn solve(file: &PathBuf, method: Method, player: usize, format: Format) -> Result<u8, Failure> {
    let (game, digest) = load(file)?;

    // n-person files support the Nash method only.
    if let SoftGame::NPerson(g) = &game {
        return match method {
            Method::Nash => {
                let found = nps_nash_equilibria(g);
                let labels = g.all_strategies().to_vec();
                emit(
                    format,
                    method,
                    &digest,
                    None,
                    nash_json(&found, &labels),
                    || {
                        println!("{}", header("soft Nash equilibria:"));
                        if found.is_empty() {
                            println!("none");
                        }
                        for line in nash_lines(&found, &labels) {
                            println!("  {line}");
                        }
                    },
                );
                Ok(if found.is_empty() { 1 } else { 0 })
            }
            _ => Err(Failure::input(format!(
                "method {} needs a two-person game; this file has {} players",
                method.name(),
                g.players()
            ))),
        };
    }
    let g = game.as_two_person().expect("two-person checked above");

    match method {
        Method::Saddle => {
            let k = player_arg(player)?;
            let points = saddle_points(g, k)?;
            emit(
                format,
                method,
                &digest,
                Some(player),
                saddle_json(g, &points),
                || {
                    println!("{}", header(&format!("saddle points for player {player}:")));
                    if points.is_empty() {
                        println!("none");
                    }
                    for p in &points {
                        println!("  {} = {}", pair_labels(g, p.row, p.col), p.value);
                    }
                },
            );
            Ok(if points.is_empty() { 1 } else { 0 })
        }
        Method::Values => {
            let k = player_arg(player)?;
            let report = game_value(g, k)?;
            let has_value = report.value.is_some();
            emit(
                format,
                method,
                &digest,
                Some(player),
                values_json(&report),
                || {
                    println!("{}", header(&format!("values for player {player}:")));
                    print_values(&report);
                },
            );
            Ok(if has_value { 0 } else { 1 })
        }
        Method::Eliminate => {
            let trace = eliminate(g);
            let reduced_something = !trace.steps.is_empty();
            emit(format, method, &digest, None, trace_json(&trace), || {
                println!("{}", header("soft elimination:"));
                print_trace(&trace);
            });
            Ok(if reduced_something { 0 } else { 1 })
        }
        Method::Nash => {
            let found = nash_equilibria(g)?;
            let labels = vec![g.x_labels().to_vec(), g.y_labels().to_vec()];
            emit(
                format,
                method,
                &digest,
                None,
                nash_json(&found, &labels),
                || {
                    println!("{}", header("soft Nash equilibria:"));
                    if found.is_empty() {
                        println!("none");
                    }
                    for line in nash_lines(&found, &labels) {
                        println!("  {line}");
                    }
                },
            );
            Ok(if found.is_empty() { 1 } else { 0 })
        }
        Method::Pipeline => {
            let k = player_arg(player)?;
            let report = solve_pipeline(g, k)?;
            let result = json!({
                "elimination": trace_json(&report.trace),
                "saddle_points": saddle_json(&report.trace.reduced, &report.saddle_points),
                "values": values_json(&report.values),
            });
            let solved = !report.saddle_points.is_empty();
            emit(format, method, &digest, Some(player), result, || {
                println!("{}", header("soft elimination:"));
                print_trace(&report.trace);
                println!("{}", header(&format!("saddle points for player {player}:")));
                if report.saddle_points.is_empty() {
                    println!("none");
                }
                for p in &report.saddle_points {
                    println!(
                        "  {} = {}",
                        pair_labels(&report.trace.reduced, p.row, p.col),
                        p.value
                    );
                }
                println!("{}", header(&format!("values for player {player}:")));
                print_values(&report.values);
            });
            Ok(if solved { 0 } else { 1 })
        }
    }
}

fn check(file: &PathBuf, property: Property, player: usize) -> Result<u8, Failure> {
    let (game, _) = load(file)?;
    let holds = match (&game, property) {
        (SoftGame::TwoPerson(g), Property::Disjoint) => g.is_disjoint_game()?,
        (SoftGame::TwoPerson(g), Property::Universal) => g.is_universal_game()?,
        (SoftGame::NPerson(_), Property::Disjoint | Property::Universal) => {
            return Err(Failure::input(
                "disjoint/universal are two-person properties; this file has more players",
            ));
        }
        (_, Property::Rational | Property::Empty | Property::Full) => {
            let table = match &game {
                SoftGame::TwoPerson(g) => {
                    let k = player_arg(player)?;
                    g.table(k)?
                }
                SoftGame::NPerson(g) => {
                    if player == 0 || player > g.players() {
                        return Err(Failure::usage(format!(
                            "--player must be in 1..={}, got {player}",
                            g.players()
                        )));
                    }
                    g.table(player - 1)?
                }
            };
            match property {
                Property::Rational => table.is_chain(),
                Property::Empty => table.is_all_empty(),
                Property::Full => table.is_all_full(),
                _ => unreachable!(),
            }
        }
    };
    println!("{holds}");
    Ok(if holds { 0 } else { 1 })
}

fn generate(
    seed: u64,
    universe: usize,
    dims: Dims,
    constraint: ConstraintArg,
    output: Option<PathBuf>,
) -> Result<u8, Failure> {
    let spec = GenSpec::new(seed, universe, dims.0, constraint.into());
    let game = random_game(&spec)?;
    let text = serialize_game(&game);
    match output {
        Some(path) => fs::write(&path, text)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn info(file: &PathBuf) -> Result<u8, Failure> {
    let (game, digest) = load(file)?;
    println!("digest: {digest}");
    let universe = game.universe();
    println!(
        "universe ({}): {}",
        universe.len(),
        universe.names().join(", ")
    );
    match &game {
        SoftGame::TwoPerson(g) => {
            let mode = if g.is_bimatrix() {
                "bimatrix"
            } else {
                "single-matrix"
            };
            println!("mode: two-person {mode}, {}x{}", g.rows(), g.cols());
            println!("Player 1 ({}): {}", g.rows(), g.x_labels().join(", "));
            println!("Player 2 ({}): {}", g.cols(), g.y_labels().join(", "));
        }
        SoftGame::NPerson(g) => {
            println!("mode: {}-person", g.players());
            for k in 0..g.players() {
                let labels = g.strategies(k).expect("in range");
                println!("Player {} ({}): {}", k + 1, labels.len(), labels.join(", "));
            }
        }
    }
    Ok(0)
}
