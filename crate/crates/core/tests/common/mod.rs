//! Shared fixtures and independent oracles for the integration suites.
//!
//! The oracles here re-derive results straight from the definitions using
//! only public accessors and set primitives, so they stay independent of the
//! solver implementations they check.

#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use softgame_core::game::{
    JointAction, NPersonSoftGame, PayoffTable, Player, SoftGame, TwoPersonSoftGame,
};
use softgame_core::io::parse_game;
use softgame_core::softset::{Subset, Universe};
use softgame_core::solvers::{EliminationTrace, Side};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn fixture_text(name: &str) -> String {
    fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("reading fixture {name}: {e}"))
}

pub fn fixture_game(name: &str) -> SoftGame {
    parse_game(&fixture_text(name)).unwrap_or_else(|e| panic!("parsing fixture {name}: {e}"))
}

pub fn fixture_two_person(name: &str) -> TwoPersonSoftGame {
    match fixture_game(name) {
        SoftGame::TwoPerson(g) => g,
        SoftGame::NPerson(_) => panic!("fixture {name} is not a two-person game"),
    }
}

pub fn sub(universe: &Universe, names: &[&str]) -> Subset {
    Subset::from_names(universe, names.iter().copied()).unwrap()
}

pub fn ja(row: usize, col: usize) -> JointAction {
    JointAction::pair(row, col)
}

/// Rebuilds a two-person game with one cell of one table replaced.
pub fn with_cell(
    game: &TwoPersonSoftGame,
    k: Player,
    row: usize,
    col: usize,
    value: Subset,
) -> TwoPersonSoftGame {
    let replace = |table: &PayoffTable| {
        let cols = game.cols();
        let cells: Vec<Subset> = table
            .cells()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == row * cols + col {
                    value.clone()
                } else {
                    c.clone()
                }
            })
            .collect();
        PayoffTable::new(game.universe(), vec![game.rows(), cols], cells).unwrap()
    };
    let table1 = match k {
        Player::One => replace(game.table1()),
        Player::Two => game.table1().clone(),
    };
    let table2 = match (k, game.table2()) {
        (Player::Two, Some(t2)) => Some(replace(t2)),
        (_, t2) => t2.cloned(),
    };
    match table2 {
        Some(t2) => TwoPersonSoftGame::bimatrix(
            game.x_labels().to_vec(),
            game.y_labels().to_vec(),
            table1,
            t2,
        )
        .unwrap(),
        None => TwoPersonSoftGame::single_matrix(
            game.x_labels().to_vec(),
            game.y_labels().to_vec(),
            table1,
        )
        .unwrap(),
    }
}

/// Per-action soft Nash check, straight from the definition: at `(i, j)`,
/// player 1's payoff must contain every payoff in column `j` of table 1 and
/// player 2's payoff must contain every payoff in row `i` of table 2.
pub fn naive_nash(game: &TwoPersonSoftGame) -> Vec<(usize, usize)> {
    let t1 = game.table1();
    let t2 = game.table2().expect("nash oracle needs a bimatrix game");
    let mut found = Vec::new();
    for i in 0..game.rows() {
        for j in 0..game.cols() {
            let own1 = t1.at(i, j);
            let cond1 = (0..game.rows()).all(|r| t1.at(r, j).is_subset(own1).unwrap());
            let own2 = t2.at(i, j);
            let cond2 = (0..game.cols()).all(|s| t2.at(i, s).is_subset(own2).unwrap());
            if cond1 && cond2 {
                found.push((i, j));
            }
        }
    }
    found
}

/// Per-action n-person soft Nash check, straight from the definition.
pub fn naive_nps_nash(game: &NPersonSoftGame) -> Vec<Vec<usize>> {
    let dims = game.dims();
    let mut found = Vec::new();
    let mut action = vec![0usize; dims.len()];
    'outer: loop {
        let joint = JointAction::new(action.clone());
        let is_equilibrium = (0..game.players()).all(|k| {
            let own = game.payoff(k, &joint).unwrap();
            (0..dims[k]).all(|alt| {
                let mut deviated = action.clone();
                deviated[k] = alt;
                game.payoff(k, &JointAction::new(deviated))
                    .unwrap()
                    .is_subset(own)
                    .unwrap()
            })
        });
        if is_equilibrium {
            found.push(action.clone());
        }
        let mut axis = dims.len();
        loop {
            if axis == 0 {
                break 'outer;
            }
            axis -= 1;
            action[axis] += 1;
            if action[axis] < dims[axis] {
                break;
            }
            action[axis] = 0;
        }
    }
    found
}

fn delete_row(game: &TwoPersonSoftGame, row: usize) -> TwoPersonSoftGame {
    let rebuild = |table: &PayoffTable| {
        let rows: Vec<Vec<Subset>> = (0..game.rows())
            .filter(|&i| i != row)
            .map(|i| (0..game.cols()).map(|j| table.at(i, j).clone()).collect())
            .collect();
        PayoffTable::from_rows(game.universe(), rows).unwrap()
    };
    let x_labels: Vec<String> = game
        .x_labels()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, l)| l.clone())
        .collect();
    match game.table2() {
        Some(t2) => TwoPersonSoftGame::bimatrix(
            x_labels,
            game.y_labels().to_vec(),
            rebuild(game.table1()),
            rebuild(t2),
        )
        .unwrap(),
        None => TwoPersonSoftGame::single_matrix(
            x_labels,
            game.y_labels().to_vec(),
            rebuild(game.table1()),
        )
        .unwrap(),
    }
}

fn delete_col(game: &TwoPersonSoftGame, col: usize) -> TwoPersonSoftGame {
    let rebuild = |table: &PayoffTable| {
        let rows: Vec<Vec<Subset>> = (0..game.rows())
            .map(|i| {
                (0..game.cols())
                    .filter(|&j| j != col)
                    .map(|j| table.at(i, j).clone())
                    .collect()
            })
            .collect();
        PayoffTable::from_rows(game.universe(), rows).unwrap()
    };
    let y_labels: Vec<String> = game
        .y_labels()
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != col)
        .map(|(_, l)| l.clone())
        .collect();
    match game.table2() {
        Some(t2) => TwoPersonSoftGame::bimatrix(
            game.x_labels().to_vec(),
            y_labels,
            rebuild(game.table1()),
            rebuild(t2),
        )
        .unwrap(),
        None => TwoPersonSoftGame::single_matrix(
            game.x_labels().to_vec(),
            y_labels,
            rebuild(game.table1()),
        )
        .unwrap(),
    }
}

/// Replays an elimination trace against the original game, checking that
/// every recorded deletion was a genuine domination on the game state at that
/// step, and that the replay lands exactly on the recorded reduced game.
pub fn verify_elimination(original: &TwoPersonSoftGame, trace: &EliminationTrace) {
    let mut game = original.clone();
    for (n, step) in trace.steps.iter().enumerate() {
        match step.side {
            Side::Rows => {
                assert_eq!(
                    game.x_labels()[step.removed],
                    step.removed_label,
                    "step {n}"
                );
                assert_eq!(
                    game.x_labels()[step.dominating],
                    step.dominating_label,
                    "step {n}"
                );
                let t1 = game.table1();
                let contains = (0..game.cols()).all(|j| {
                    t1.at(step.removed, j)
                        .is_subset(t1.at(step.dominating, j))
                        .unwrap()
                });
                let identical =
                    (0..game.cols()).all(|j| t1.at(step.removed, j) == t1.at(step.dominating, j));
                assert!(contains, "step {n}: removed row not dominated");
                assert!(
                    !identical || step.dominating < step.removed,
                    "step {n}: tie rule"
                );
                game = delete_row(&game, step.removed);
            }
            Side::Columns => {
                assert_eq!(
                    game.y_labels()[step.removed],
                    step.removed_label,
                    "step {n}"
                );
                assert_eq!(
                    game.y_labels()[step.dominating],
                    step.dominating_label,
                    "step {n}"
                );
                let (all_contained, identical) = match game.table2() {
                    // Bimatrix: the column player keeps the column growing
                    // its own payoffs.
                    Some(t2) => (
                        (0..game.rows()).all(|i| {
                            t2.at(i, step.removed)
                                .is_subset(t2.at(i, step.dominating))
                                .unwrap()
                        }),
                        (0..game.rows())
                            .all(|i| t2.at(i, step.removed) == t2.at(i, step.dominating)),
                    ),
                    // Single-matrix: the adversary deletes the column handing
                    // player 1 the larger sets.
                    None => {
                        let t1 = game.table1();
                        (
                            (0..game.rows()).all(|i| {
                                t1.at(i, step.dominating)
                                    .is_subset(t1.at(i, step.removed))
                                    .unwrap()
                            }),
                            (0..game.rows())
                                .all(|i| t1.at(i, step.removed) == t1.at(i, step.dominating)),
                        )
                    }
                };
                assert!(all_contained, "step {n}: removed column not dominated");
                assert!(
                    !identical || step.dominating < step.removed,
                    "step {n}: tie rule"
                );
                game = delete_col(&game, step.removed);
            }
        }
    }
    assert_eq!(
        game, trace.reduced,
        "replay must land on the recorded reduced game"
    );
}

/// Lower and upper values re-derived by direct folds over the cells.
pub fn fold_values(game: &TwoPersonSoftGame, k: Player) -> (Subset, Subset) {
    let table = game.table(k).unwrap();
    let mut lower = Subset::empty(game.universe());
    for i in 0..game.rows() {
        let mut row = table.at(i, 0).clone();
        for j in 1..game.cols() {
            row = row.intersect(table.at(i, j)).unwrap();
        }
        lower = lower.union(&row).unwrap();
    }
    let mut upper = Subset::full(game.universe());
    for j in 0..game.cols() {
        let mut col = table.at(0, j).clone();
        for i in 1..game.rows() {
            col = col.union(table.at(i, j)).unwrap();
        }
        upper = upper.intersect(&col).unwrap();
    }
    (lower, upper)
}
