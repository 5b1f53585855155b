//! Canonical JSON documents for soft games and soft sets.
//!
//! # Game documents
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "universe": ["u1", "u2"],
//!   "players": [
//!     {"name": "Player 1", "strategies": ["x1", "x2"]},
//!     {"name": "Player 2", "strategies": ["y1"]}
//!   ],
//!   "payoffs": [
//!     {
//!       "x1|y1": ["u1"],
//!       "x2|y1": []
//!     }
//!   ]
//! }
//! ```
//!
//! Joint-action keys are the strategy labels joined by `|` in player order;
//! they are positional, so the same label may appear in several players'
//! strategy lists. Every joint action must appear exactly once per payoff
//! table, and every element name must come from `universe` (whose list order,
//! never lexicographic order, is the ordering authority). A two-person
//! document may carry a single payoff table (single-matrix mode) or one per
//! player; an n-person document carries exactly n tables.
//!
//! # Canonical form
//!
//! [`serialize_game`] emits one fixed layout so committed fixtures are
//! byte-stable: two-space indentation as shown above, keys in row-major
//! joint-action order, element lists in ascending universe order on a single
//! line, player names `Player 1..n`, and a trailing newline. Parsing accepts
//! any JSON layout; `parse` then `serialize` is the normalization pass.
//!
//! Soft-set documents follow the same conventions with a `parameters` list
//! and an `approx` map; parameters with empty values are omitted from
//! `approx` on write and restored as empty on read.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer};
use thiserror::Error;

use crate::game::{GameError, NPersonSoftGame, PayoffTable, SoftGame, TwoPersonSoftGame};
use crate::softset::{SoftSet, SoftSetError, Subset, Universe};

/// Errors from reading a document, each naming the offending key where one
/// exists.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format_version {0} (expected 1)")]
    UnsupportedVersion(u64),
    #[error("invalid universe: {0}")]
    InvalidUniverse(SoftSetError),
    #[error("a game document needs at least two players")]
    TooFewPlayers,
    #[error("player {player}: invalid or duplicate strategy label {label:?}")]
    InvalidStrategy { player: usize, label: String },
    #[error("player {player}: empty strategy list")]
    NoStrategies { player: usize },
    #[error(
        "expected {expected} payoff tables (or 1 for a two-person single-matrix game), got {found}"
    )]
    WrongTableCount { expected: usize, found: usize },
    #[error("payoff table {table}: unknown joint action key {key:?}")]
    UnknownAction { table: usize, key: String },
    #[error("payoff table {table}: duplicate joint action key {key:?}")]
    DuplicateAction { table: usize, key: String },
    #[error("payoff table {table}: missing joint action {key:?}")]
    MissingAction { table: usize, key: String },
    #[error("payoff table {table}, action {key:?}: unknown element {name:?}")]
    UnknownElement {
        table: usize,
        key: String,
        name: String,
    },
    #[error("invalid parameter list: {0}")]
    InvalidParameters(SoftSetError),
    #[error("approx: unknown parameter {key:?}")]
    UnknownParameter { key: String },
    #[error("approx: duplicate parameter {key:?}")]
    DuplicateParameter { key: String },
    #[error("parameter {key:?}: unknown element {name:?}")]
    UnknownParameterElement { key: String, name: String },
    #[error("invalid game: {0}")]
    Game(#[from] GameError),
}

/// Key/value pairs of a JSON object, kept in document order with duplicates
/// preserved so they can be reported instead of silently collapsed.
struct RawEntries(Vec<(String, Vec<String>)>);

impl<'de> Deserialize<'de> for RawEntries {
    fn deserialize<D>(deserializer: D) -> Result<Self, D::Error>
    where
        D: Deserializer<'de>,
    {
        struct EntriesVisitor;
        impl<'de> Visitor<'de> for EntriesVisitor {
            type Value = RawEntries;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a map from keys to element-name lists")
            }

            fn visit_map<A>(self, mut map: A) -> Result<Self::Value, A::Error>
            where
                A: MapAccess<'de>,
            {
                let mut entries = Vec::new();
                while let Some(entry) = map.next_entry::<String, Vec<String>>()? {
                    entries.push(entry);
                }
                Ok(RawEntries(entries))
            }
        }
        deserializer.deserialize_map(EntriesVisitor)
    }
}

#[derive(Deserialize)]
struct RawGameDocument {
    format_version: u64,
    universe: Vec<String>,
    players: Vec<RawPlayer>,
    payoffs: Vec<RawEntries>,
}

#[derive(Deserialize)]
struct RawPlayer {
    #[allow(dead_code)] // names are cosmetic; canonical form regenerates them
    name: String,
    strategies: Vec<String>,
}

#[derive(Deserialize)]
struct RawSoftSetDocument {
    format_version: u64,
    universe: Vec<String>,
    parameters: Vec<String>,
    approx: RawEntries,
}

fn check_strategies(player: usize, labels: &[String]) -> Result<(), ParseError> {
    if labels.is_empty() {
        return Err(ParseError::NoStrategies { player });
    }
    for (i, label) in labels.iter().enumerate() {
        if label.is_empty() || label.contains('|') || labels[..i].contains(label) {
            return Err(ParseError::InvalidStrategy {
                player,
                label: label.clone(),
            });
        }
    }
    Ok(())
}

/// Joint-action keys in row-major order over the players' label lists.
fn action_keys(strategies: &[Vec<String>]) -> Vec<String> {
    let mut keys = vec![String::new()];
    for labels in strategies {
        let mut next = Vec::with_capacity(keys.len() * labels.len());
        for key in &keys {
            for label in labels {
                if key.is_empty() {
                    next.push(label.clone());
                } else {
                    next.push(format!("{key}|{label}"));
                }
            }
        }
        keys = next;
    }
    keys
}

fn parse_table(
    table_number: usize,
    universe: &Universe,
    keys: &[String],
    entries: RawEntries,
) -> Result<Vec<Subset>, ParseError> {
    let positions: HashMap<&str, usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| (k.as_str(), i))
        .collect();
    let mut cells: Vec<Option<Subset>> = vec![None; keys.len()];
    for (key, names) in entries.0 {
        let index = *positions
            .get(key.as_str())
            .ok_or_else(|| ParseError::UnknownAction {
                table: table_number,
                key: key.clone(),
            })?;
        if cells[index].is_some() {
            return Err(ParseError::DuplicateAction {
                table: table_number,
                key,
            });
        }
        let subset = Subset::from_names(universe, names.iter().map(String::as_str)).map_err(
            |err| match err {
                SoftSetError::UnknownElement(name) => ParseError::UnknownElement {
                    table: table_number,
                    key: key.clone(),
                    name,
                },
                other => ParseError::InvalidUniverse(other),
            },
        )?;
        cells[index] = Some(subset);
    }
    cells
        .into_iter()
        .enumerate()
        .map(|(i, cell)| {
            cell.ok_or_else(|| ParseError::MissingAction {
                table: table_number,
                key: keys[i].clone(),
            })
        })
        .collect()
}

/// Parses a game document, inferring single-matrix/bimatrix/n-person mode
/// from the player count and the number of payoff tables.
pub fn parse_game(text: &str) -> Result<SoftGame, ParseError> {
    let raw: RawGameDocument = serde_json::from_str(text)?;
    if raw.format_version != 1 {
        return Err(ParseError::UnsupportedVersion(raw.format_version));
    }
    let universe = Universe::new(raw.universe).map_err(ParseError::InvalidUniverse)?;
    if raw.players.len() < 2 {
        return Err(ParseError::TooFewPlayers);
    }
    let strategies: Vec<Vec<String>> = raw.players.into_iter().map(|p| p.strategies).collect();
    for (i, labels) in strategies.iter().enumerate() {
        check_strategies(i + 1, labels)?;
    }

    let players = strategies.len();
    let tables_expected_ok =
        raw.payoffs.len() == players || (players == 2 && raw.payoffs.len() == 1);
    if !tables_expected_ok {
        return Err(ParseError::WrongTableCount {
            expected: players,
            found: raw.payoffs.len(),
        });
    }

    let keys = action_keys(&strategies);
    let dims: Vec<usize> = strategies.iter().map(Vec::len).collect();
    let mut tables = Vec::with_capacity(raw.payoffs.len());
    for (i, entries) in raw.payoffs.into_iter().enumerate() {
        let cells = parse_table(i + 1, &universe, &keys, entries)?;
        tables.push(PayoffTable::new(&universe, dims.clone(), cells)?);
    }

    if players == 2 {
        let mut tables = tables.into_iter();
        let table1 = tables.next().expect("at least one table");
        let mut strategies = strategies.into_iter();
        let x_labels = strategies.next().expect("two players");
        let y_labels = strategies.next().expect("two players");
        let game = match tables.next() {
            Some(table2) => TwoPersonSoftGame::bimatrix(x_labels, y_labels, table1, table2)?,
            None => TwoPersonSoftGame::single_matrix(x_labels, y_labels, table1)?,
        };
        Ok(SoftGame::TwoPerson(game))
    } else {
        Ok(SoftGame::NPerson(NPersonSoftGame::new(strategies, tables)?))
    }
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn inline_list<'a>(items: impl Iterator<Item = &'a str>) -> String {
    let quoted: Vec<String> = items.map(json_str).collect();
    format!("[{}]", quoted.join(", "))
}

/// Serializes a game in the canonical layout. The output is a fixpoint of
/// `parse` followed by `serialize` and ends with a newline.
pub fn serialize_game(game: &SoftGame) -> String {
    let (universe, strategies, tables): (&Universe, Vec<&[String]>, Vec<&PayoffTable>) = match game
    {
        SoftGame::TwoPerson(g) => {
            let mut tables = vec![g.table1()];
            tables.extend(g.table2());
            (g.universe(), vec![g.x_labels(), g.y_labels()], tables)
        }
        SoftGame::NPerson(g) => (
            g.universe(),
            g.all_strategies().iter().map(Vec::as_slice).collect(),
            (0..g.players())
                .map(|k| g.table(k).expect("in range"))
                .collect(),
        ),
    };

    let owned: Vec<Vec<String>> = strategies.iter().map(|s| s.to_vec()).collect();
    let keys = action_keys(&owned);

    let mut out = String::new();
    out.push_str("{\n");
    out.push_str("  \"format_version\": 1,\n");
    let _ = writeln!(
        out,
        "  \"universe\": {},",
        inline_list(universe.names().iter().map(String::as_str))
    );
    out.push_str("  \"players\": [\n");
    for (i, labels) in strategies.iter().enumerate() {
        let sep = if i + 1 < strategies.len() { "," } else { "" };
        let _ = writeln!(
            out,
            "    {{\"name\": {}, \"strategies\": {}}}{}",
            json_str(&format!("Player {}", i + 1)),
            inline_list(labels.iter().map(String::as_str)),
            sep
        );
    }
    out.push_str("  ],\n");
    out.push_str("  \"payoffs\": [\n");
    for (t, table) in tables.iter().enumerate() {
        out.push_str("    {\n");
        for (i, (key, cell)) in keys.iter().zip(table.cells()).enumerate() {
            let sep = if i + 1 < keys.len() { "," } else { "" };
            let _ = writeln!(
                out,
                "      {}: {}{}",
                json_str(key),
                inline_list(cell.names().into_iter()),
                sep
            );
        }
        let sep = if t + 1 < tables.len() { "," } else { "" };
        let _ = writeln!(out, "    }}{sep}");
    }
    out.push_str("  ]\n");
    out.push_str("}\n");
    out
}

/// Parses a soft-set document. Parameters absent from `approx` come back
/// empty-valued, keeping the approximate function total.
pub fn parse_soft_set(text: &str) -> Result<SoftSet, ParseError> {
    let raw: RawSoftSetDocument = serde_json::from_str(text)?;
    if raw.format_version != 1 {
        return Err(ParseError::UnsupportedVersion(raw.format_version));
    }
    let universe = Universe::new(raw.universe).map_err(ParseError::InvalidUniverse)?;
    let mut assignments = Vec::new();
    let mut seen: Vec<&str> = Vec::new();
    for (key, names) in &raw.approx.0 {
        if !raw.parameters.contains(key) {
            return Err(ParseError::UnknownParameter { key: key.clone() });
        }
        if seen.contains(&key.as_str()) {
            return Err(ParseError::DuplicateParameter { key: key.clone() });
        }
        seen.push(key);
        let subset = Subset::from_names(&universe, names.iter().map(String::as_str)).map_err(
            |err| match err {
                SoftSetError::UnknownElement(name) => ParseError::UnknownParameterElement {
                    key: key.clone(),
                    name,
                },
                other => ParseError::InvalidUniverse(other),
            },
        )?;
        assignments.push((key.clone(), subset));
    }
    SoftSet::new(&universe, raw.parameters, assignments).map_err(ParseError::InvalidParameters)
}

/// Serializes a soft set in the canonical layout, dropping empty-valued
/// parameters from `approx`.
pub fn serialize_soft_set(soft_set: &SoftSet) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str("  \"format_version\": 1,\n");
    let _ = writeln!(
        out,
        "  \"universe\": {},",
        inline_list(soft_set.universe().names().iter().map(String::as_str))
    );
    let _ = writeln!(
        out,
        "  \"parameters\": {},",
        inline_list(soft_set.parameters().iter().map(String::as_str))
    );
    let nonempty: Vec<(&str, &Subset)> = soft_set.pairs().filter(|(_, v)| !v.is_empty()).collect();
    if nonempty.is_empty() {
        out.push_str("  \"approx\": {}\n");
    } else {
        out.push_str("  \"approx\": {\n");
        for (i, (param, value)) in nonempty.iter().enumerate() {
            let sep = if i + 1 < nonempty.len() { "," } else { "" };
            let _ = writeln!(
                out,
                "    {}: {}{}",
                json_str(param),
                inline_list(value.names().into_iter()),
                sep
            );
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}
