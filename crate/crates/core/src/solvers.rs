//! The four solution methods for soft games: soft saddle points, soft
//! lower/upper values, iterated elimination of soft-dominated strategies, and
//! soft Nash equilibria, plus the n-person extensions and the
//! dominance-then-saddle pipeline.
//!
//! Every enumeration returns its results in row-major (lexicographic) joint
//! action order, so identical inputs give identical outputs across runs.

use std::fmt;

use crate::game::{
    GameError, JointAction, NPersonSoftGame, PayoffTable, Player, TwoPersonSoftGame,
};
use crate::softset::Subset;

/// Which side of a two-person game a strategy belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Rows,
    Columns,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Rows => write!(f, "row"),
            Side::Columns => write!(f, "column"),
        }
    }
}

/// A saddle cell: its payoff equals both its column union and its row
/// intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaddlePoint {
    pub row: usize,
    pub col: usize,
    pub value: Subset,
}

/// Soft lower and upper values, with the game value when the two coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueReport {
    pub lower: Subset,
    pub upper: Subset,
    pub value: Option<Subset>,
}

/// One deletion performed by the elimination method, recorded with the
/// indices valid at the time of the step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationStep {
    pub side: Side,
    pub removed: usize,
    pub removed_label: String,
    pub dominating: usize,
    pub dominating_label: String,
}

/// The full run of the elimination method: the ordered deletion steps and the
/// reduced game they produce. Replaying the steps against the original game
/// reproduces `reduced`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationTrace {
    pub steps: Vec<EliminationStep>,
    pub reduced: TwoPersonSoftGame,
}

/// A soft Nash equilibrium: a joint action no player improves on by a
/// unilateral deviation, with each player's payoff at that action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NashEquilibrium {
    pub action: JointAction,
    pub payoffs: Vec<Subset>,
}

/// Output of [`solve_pipeline`]: elimination first, then saddle points and
/// values of the reduced game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineReport {
    pub trace: EliminationTrace,
    pub saddle_points: Vec<SaddlePoint>,
    pub values: ValueReport,
}

/// Union of column `j` of player `k`'s table.
pub fn column_union(g: &TwoPersonSoftGame, k: Player, j: usize) -> Result<Subset, GameError> {
    let table = g.table(k)?;
    if j >= g.cols() {
        return Err(GameError::StrategyOutOfRange {
            player: 2,
            index: j,
            count: g.cols(),
        });
    }
    Ok(fold_line(
        table,
        (0..g.rows()).map(|i| (i, j)),
        Subset::union_unchecked,
    ))
}

/// Intersection of row `i` of player `k`'s table.
pub fn row_intersection(g: &TwoPersonSoftGame, k: Player, i: usize) -> Result<Subset, GameError> {
    let table = g.table(k)?;
    if i >= g.rows() {
        return Err(GameError::StrategyOutOfRange {
            player: 1,
            index: i,
            count: g.rows(),
        });
    }
    Ok(fold_line(
        table,
        (0..g.cols()).map(|j| (i, j)),
        Subset::intersect_unchecked,
    ))
}

fn fold_line(
    table: &PayoffTable,
    cells: impl Iterator<Item = (usize, usize)>,
    op: impl Fn(&Subset, &Subset) -> Subset,
) -> Subset {
    let mut cells = cells.map(|(i, j)| table.at(i, j));
    let first = cells.next().expect("dims are at least 1x1").clone();
    cells.fold(first, |acc, cell| op(&acc, cell))
}

/// All saddle cells of player `k`'s table, row-major. A cell `(i, j)` is a
/// saddle point when the union of column `j`, the intersection of row `i`,
/// and the cell's payoff all coincide.
pub fn saddle_points(g: &TwoPersonSoftGame, k: Player) -> Result<Vec<SaddlePoint>, GameError> {
    let table = g.table(k)?;
    let col_unions: Vec<Subset> = (0..g.cols())
        .map(|j| column_union(g, k, j))
        .collect::<Result<_, _>>()?;
    let row_intersections: Vec<Subset> = (0..g.rows())
        .map(|i| row_intersection(g, k, i))
        .collect::<Result<_, _>>()?;
    let mut points = Vec::new();
    for (i, row_value) in row_intersections.iter().enumerate() {
        for (j, col_value) in col_unions.iter().enumerate() {
            let cell = table.at(i, j);
            if cell == col_value && cell == row_value {
                points.push(SaddlePoint {
                    row: i,
                    col: j,
                    value: cell.clone(),
                });
            }
        }
    }
    Ok(points)
}

/// Soft upper value: the intersection over columns of the column unions.
pub fn upper_value(g: &TwoPersonSoftGame, k: Player) -> Result<Subset, GameError> {
    let mut columns = (0..g.cols()).map(|j| column_union(g, k, j));
    let first = columns.next().expect("at least one column")?;
    columns.try_fold(first, |acc, col| Ok(acc.intersect_unchecked(&col?)))
}

/// Soft lower value: the union over rows of the row intersections.
pub fn lower_value(g: &TwoPersonSoftGame, k: Player) -> Result<Subset, GameError> {
    let mut rows = (0..g.rows()).map(|i| row_intersection(g, k, i));
    let first = rows.next().expect("at least one row")?;
    rows.try_fold(first, |acc, row| Ok(acc.union_unchecked(&row?)))
}

/// Both values, and the game value when they coincide.
pub fn game_value(g: &TwoPersonSoftGame, k: Player) -> Result<ValueReport, GameError> {
    let lower = lower_value(g, k)?;
    let upper = upper_value(g, k)?;
    let value = (lower == upper).then(|| lower.clone());
    Ok(ValueReport {
        lower,
        upper,
        value,
    })
}

/// All `(dominated, dominating)` strategy pairs on one side, ordered by
/// dominated index then dominating index.
///
/// A row is dominated when another row's payoffs contain it cellwise; a
/// column is dominated when another column's payoffs are contained in it
/// cellwise on Player 1's table (single-matrix mode: the adversary deletes
/// the column handing Player 1 the larger sets), or contain it cellwise on
/// Player 2's own table (bimatrix mode). Two identical strategies dominate
/// each other; the tie is broken by keeping the lower index.
pub fn dominated_strategies(g: &TwoPersonSoftGame, side: Side) -> Vec<(usize, usize)> {
    let (table, count) = match side {
        Side::Rows => (g.table1(), g.rows()),
        Side::Columns => match g.table2() {
            Some(t2) => (t2, g.cols()),
            None => (g.table1(), g.cols()),
        },
    };
    // In single-matrix mode the column player prefers handing over smaller
    // sets, so containment runs the other way on Player 1's table.
    let deleted_holds_superset = side == Side::Columns && !g.is_bimatrix();
    let mut pairs = Vec::new();
    for dominated in 0..count {
        for dominating in 0..count {
            if dominating == dominated {
                continue;
            }
            let (small, large) = if deleted_holds_superset {
                (dominating, dominated)
            } else {
                (dominated, dominating)
            };
            let contained = line_cells(table, side, small)
                .zip(line_cells(table, side, large))
                .all(|(s, l)| s.is_subset_unchecked(l));
            if !contained {
                continue;
            }
            let identical = line_cells(table, side, dominated)
                .zip(line_cells(table, side, dominating))
                .all(|(a, b)| a == b);
            if !identical || dominating < dominated {
                pairs.push((dominated, dominating));
            }
        }
    }
    pairs
}

fn line_cells<'a>(
    table: &'a PayoffTable,
    side: Side,
    index: usize,
) -> Box<dyn Iterator<Item = &'a Subset> + 'a> {
    match side {
        Side::Rows => Box::new((0..table.dims()[1]).map(move |j| table.at(index, j))),
        Side::Columns => Box::new((0..table.dims()[0]).map(move |i| table.at(i, index))),
    }
}

/// Iterated elimination of soft-dominated strategies.
///
/// Each pass deletes exactly one strategy: the lowest-index dominated column
/// if any exists, otherwise the lowest-index dominated row, recording the
/// lowest-index dominating witness. The loop stops when neither side has a
/// dominated strategy.
pub fn eliminate(g: &TwoPersonSoftGame) -> EliminationTrace {
    let mut current = g.clone();
    let mut steps = Vec::new();
    loop {
        let (side, pair) = {
            let columns = dominated_strategies(&current, Side::Columns);
            if let Some(&pair) = columns.first() {
                (Side::Columns, pair)
            } else {
                let rows = dominated_strategies(&current, Side::Rows);
                match rows.first() {
                    Some(&pair) => (Side::Rows, pair),
                    None => break,
                }
            }
        };
        let (removed, dominating) = pair;
        let (removed_label, dominating_label, next) = match side {
            Side::Rows => (
                current.x_labels()[removed].clone(),
                current.x_labels()[dominating].clone(),
                current.without_row(removed),
            ),
            Side::Columns => (
                current.y_labels()[removed].clone(),
                current.y_labels()[dominating].clone(),
                current.without_col(removed),
            ),
        };
        steps.push(EliminationStep {
            side,
            removed,
            removed_label,
            dominating,
            dominating_label,
        });
        current = next;
    }
    EliminationTrace {
        steps,
        reduced: current,
    }
}

/// All soft Nash equilibria of a bimatrix game, row-major.
///
/// Scans each column for Player 1's best-response rows and each row for
/// Player 2's best-response columns, then intersects the two relations.
pub fn nash_equilibria(g: &TwoPersonSoftGame) -> Result<Vec<NashEquilibrium>, GameError> {
    let t1 = g.table1();
    let t2 = g.table(Player::Two)?;
    let (m, n) = (g.rows(), g.cols());

    let mut row_best = vec![false; m * n]; // (i, j): i is a best response to column j
    for j in 0..n {
        for i in 0..m {
            row_best[i * n + j] = (0..m).all(|r| t1.at(r, j).is_subset_unchecked(t1.at(i, j)));
        }
    }
    let mut col_best = vec![false; m * n]; // (i, j): j is a best response to row i
    for i in 0..m {
        for j in 0..n {
            col_best[i * n + j] = (0..n).all(|s| t2.at(i, s).is_subset_unchecked(t2.at(i, j)));
        }
    }

    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..n {
            if row_best[i * n + j] && col_best[i * n + j] {
                out.push(NashEquilibrium {
                    action: JointAction::pair(i, j),
                    payoffs: vec![t1.at(i, j).clone(), t2.at(i, j).clone()],
                });
            }
        }
    }
    Ok(out)
}

/// Runs the elimination method, then reports the saddle points and the
/// values of the reduced game for player `k`.
pub fn solve_pipeline(g: &TwoPersonSoftGame, k: Player) -> Result<PipelineReport, GameError> {
    g.table(k)?; // fail before eliminating if k's table is absent
    let trace = eliminate(g);
    let saddle_points = saddle_points(&trace.reduced, k)?;
    let values = game_value(&trace.reduced, k)?;
    Ok(PipelineReport {
        trace,
        saddle_points,
        values,
    })
}

/// True when strategy `strat` of player `k` soft-dominates `other`: player
/// `k`'s payoff under `strat` contains the payoff under `other` for every
/// combination of the remaining players' strategies. Reflexive by
/// construction.
pub fn nps_dominated(
    g: &NPersonSoftGame,
    k: usize,
    strat: usize,
    other: usize,
) -> Result<bool, GameError> {
    let table = g.table(k)?;
    let dims = g.dims();
    let count = dims[k];
    for index in [strat, other] {
        if index >= count {
            return Err(GameError::StrategyOutOfRange {
                player: k + 1,
                index,
                count,
            });
        }
    }
    let mut dominated = true;
    for_each_context(&dims, k, |action| {
        let mut a = action.to_vec();
        a[k] = strat;
        let mut b = action.to_vec();
        b[k] = other;
        let pa = table.cell(&a).expect("context in range");
        let pb = table.cell(&b).expect("context in range");
        if !pb.is_subset_unchecked(pa) {
            dominated = false;
        }
    });
    Ok(dominated)
}

/// All soft Nash equilibria of an n-person game, in lexicographic joint
/// action order.
pub fn nps_nash_equilibria(g: &NPersonSoftGame) -> Vec<NashEquilibrium> {
    let dims = g.dims();
    // best[k][flat(action)] = is action[k] a best response to the rest?
    let best: Vec<Vec<bool>> = (0..g.players())
        .map(|k| {
            let table = g.table(k).expect("player in range");
            let mut flags = vec![false; table.cells().len()];
            for_each_context(&dims, k, |action| {
                let mut probe = action.to_vec();
                let best_choices: Vec<usize> = (0..dims[k])
                    .filter(|&candidate| {
                        probe[k] = candidate;
                        let payoff = table.cell(&probe).expect("in range").clone();
                        (0..dims[k]).all(|alternative| {
                            probe[k] = alternative;
                            table
                                .cell(&probe)
                                .expect("in range")
                                .is_subset_unchecked(&payoff)
                        })
                    })
                    .collect();
                for choice in best_choices {
                    probe[k] = choice;
                    flags[flat(&dims, &probe)] = true;
                }
            });
            flags
        })
        .collect();

    let template = g.table(0).expect("at least two players");
    template
        .actions()
        .into_iter()
        .filter(|action| {
            let index = flat(&dims, action.indices());
            best.iter().all(|flags| flags[index])
        })
        .map(|action| {
            let payoffs = (0..g.players())
                .map(|k| g.payoff(k, &action).expect("in range").clone())
                .collect();
            NashEquilibrium { action, payoffs }
        })
        .collect()
}

fn flat(dims: &[usize], action: &[usize]) -> usize {
    action.iter().zip(dims).fold(0, |acc, (&a, &d)| acc * d + a)
}

/// Calls `f` once per joint action with component `k` pinned to 0; `f` is
/// free to vary component `k` of the slice it receives.
fn for_each_context(dims: &[usize], k: usize, mut f: impl FnMut(&[usize])) {
    let mut action = vec![0usize; dims.len()];
    loop {
        f(&action);
        let mut axis = dims.len();
        loop {
            if axis == 0 {
                return;
            }
            axis -= 1;
            if axis == k {
                continue; // pinned axis
            }
            action[axis] += 1;
            if action[axis] < dims[axis] {
                break;
            }
            action[axis] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::softset::Universe;

    fn u(n: usize) -> Universe {
        Universe::numbered(n).unwrap()
    }

    fn sub(universe: &Universe, names: &[&str]) -> Subset {
        Subset::from_names(universe, names.iter().copied()).unwrap()
    }

    fn labels(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    fn single(universe: &Universe, rows: Vec<Vec<Subset>>) -> TwoPersonSoftGame {
        let n = rows[0].len();
        let table = PayoffTable::from_rows(universe, rows).unwrap();
        TwoPersonSoftGame::single_matrix(labels("x", table.dims()[0]), labels("y", n), table)
            .unwrap()
    }

    #[test]
    fn single_cell_game_is_its_own_saddle_and_value() {
        let universe = u(3);
        let cell = sub(&universe, &["u1", "u3"]);
        let game = single(&universe, vec![vec![cell.clone()]]);
        assert_eq!(column_union(&game, Player::One, 0).unwrap(), cell);
        assert_eq!(row_intersection(&game, Player::One, 0).unwrap(), cell);
        assert_eq!(
            saddle_points(&game, Player::One).unwrap(),
            vec![SaddlePoint {
                row: 0,
                col: 0,
                value: cell.clone()
            }]
        );
        let report = game_value(&game, Player::One).unwrap();
        assert_eq!(report.value, Some(cell));
    }

    #[test]
    fn constant_table_pins_both_values() {
        let universe = u(4);
        let cell = sub(&universe, &["u2", "u3"]);
        let game = single(&universe, vec![vec![cell.clone(); 3]; 2]);
        let report = game_value(&game, Player::One).unwrap();
        assert_eq!(report.lower, cell);
        assert_eq!(report.upper, cell);
        assert_eq!(report.value, Some(cell));
    }

    #[test]
    fn line_fold_bounds_are_checked() {
        let universe = u(2);
        let game = single(&universe, vec![vec![Subset::full(&universe)]]);
        assert!(matches!(
            column_union(&game, Player::One, 1),
            Err(GameError::StrategyOutOfRange { .. })
        ));
        assert!(matches!(
            row_intersection(&game, Player::One, 5),
            Err(GameError::StrategyOutOfRange { .. })
        ));
    }

    #[test]
    fn equal_strategies_dominate_by_lowest_index() {
        let universe = u(2);
        let cell = sub(&universe, &["u1"]);
        let game = single(&universe, vec![vec![cell.clone(), cell.clone()]; 2]);
        assert_eq!(dominated_strategies(&game, Side::Rows), vec![(1, 0)]);
        assert_eq!(dominated_strategies(&game, Side::Columns), vec![(1, 0)]);
    }

    #[test]
    fn incomparable_cells_admit_no_elimination() {
        // Pairwise incomparable singleton cells: nothing dominates anything.
        let universe = u(4);
        let game = single(
            &universe,
            vec![
                vec![sub(&universe, &["u1"]), sub(&universe, &["u2"])],
                vec![sub(&universe, &["u3"]), sub(&universe, &["u4"])],
            ],
        );
        assert!(dominated_strategies(&game, Side::Rows).is_empty());
        assert!(dominated_strategies(&game, Side::Columns).is_empty());
        let trace = eliminate(&game);
        assert!(trace.steps.is_empty());
        assert_eq!(trace.reduced, game);
    }

    #[test]
    fn bimatrix_columns_dominate_on_the_second_table() {
        let universe = u(3);
        let t1 = PayoffTable::filled(vec![2, 2], sub(&universe, &["u1"])).unwrap();
        // Player 2 prefers column 1: its own payoffs contain column 0's.
        let t2 = PayoffTable::from_rows(
            &universe,
            vec![
                vec![sub(&universe, &["u2"]), sub(&universe, &["u2", "u3"])],
                vec![sub(&universe, &["u3"]), sub(&universe, &["u1", "u3"])],
            ],
        )
        .unwrap();
        let game = TwoPersonSoftGame::bimatrix(labels("x", 2), labels("y", 2), t1, t2).unwrap();
        assert_eq!(dominated_strategies(&game, Side::Columns), vec![(0, 1)]);
    }

    #[test]
    fn nash_on_constant_bimatrix_lists_every_action() {
        let universe = u(2);
        let t = PayoffTable::filled(vec![2, 2], sub(&universe, &["u1"])).unwrap();
        let game =
            TwoPersonSoftGame::bimatrix(labels("x", 2), labels("y", 2), t.clone(), t).unwrap();
        let found = nash_equilibria(&game).unwrap();
        assert_eq!(found.len(), 4);
        assert_eq!(found[0].action, JointAction::pair(0, 0));
        assert_eq!(found[3].action, JointAction::pair(1, 1));
    }

    #[test]
    fn nash_requires_a_second_table() {
        let universe = u(2);
        let game = single(&universe, vec![vec![Subset::full(&universe)]]);
        assert!(matches!(
            nash_equilibria(&game),
            Err(GameError::SingleMatrixMode)
        ));
        assert!(matches!(
            solve_pipeline(&game, Player::Two),
            Err(GameError::SingleMatrixMode)
        ));
    }

    #[test]
    fn pipeline_on_single_cell_game() {
        let universe = u(2);
        let cell = sub(&universe, &["u1"]);
        let game = single(&universe, vec![vec![cell.clone()]]);
        let report = solve_pipeline(&game, Player::One).unwrap();
        assert!(report.trace.steps.is_empty());
        assert_eq!(report.saddle_points.len(), 1);
        assert_eq!(report.saddle_points[0].value, cell);
        assert_eq!(report.values.value, Some(cell));
    }

    #[test]
    fn nps_domination_is_reflexive_and_witness_sensitive() {
        let universe = u(2);
        let dims = vec![2, 2, 2];
        // Player 0's payoff grows with its own strategy index except at one
        // joint action, so 1-dominates-0 fails on exactly that cell.
        let cells: Vec<Subset> = (0..8)
            .map(|i| {
                let own = (i >> 2) & 1; // player 0's component
                if i == 0b011 {
                    Subset::full(&universe) // (0,1,1) better than (1,1,1)
                } else if own == 1 {
                    sub(&universe, &["u1"])
                } else {
                    Subset::empty(&universe)
                }
            })
            .collect();
        let table = PayoffTable::new(&universe, dims, cells).unwrap();
        let strategies = vec![labels("x", 2), labels("x", 2), labels("x", 2)];
        let game =
            NPersonSoftGame::new(strategies, vec![table.clone(), table.clone(), table]).unwrap();
        assert!(nps_dominated(&game, 0, 1, 1).unwrap());
        assert!(!nps_dominated(&game, 0, 1, 0).unwrap());
        assert!(matches!(
            nps_dominated(&game, 0, 2, 0),
            Err(GameError::StrategyOutOfRange { .. })
        ));
    }

    #[test]
    fn parity_payoffs_have_no_nps_equilibrium() {
        // Every unilateral deviation flips which of two incomparable
        // singletons a player receives, so no action can be a best response.
        let universe = u(2);
        let dims = vec![2, 2, 2];
        let cells: Vec<Subset> = (0..8u32)
            .map(|i| {
                if i.count_ones() % 2 == 0 {
                    sub(&universe, &["u1"])
                } else {
                    sub(&universe, &["u2"])
                }
            })
            .collect();
        let table = PayoffTable::new(&universe, dims, cells).unwrap();
        let strategies = vec![labels("x", 2), labels("x", 2), labels("x", 2)];
        let game =
            NPersonSoftGame::new(strategies, vec![table.clone(), table.clone(), table]).unwrap();
        assert!(nps_nash_equilibria(&game).is_empty());
    }

    #[test]
    fn constant_nps_game_lists_every_action() {
        let universe = u(2);
        let cell = sub(&universe, &["u1"]);
        let table = PayoffTable::filled(vec![2, 2], cell).unwrap();
        let game = NPersonSoftGame::new(
            vec![labels("x", 2), labels("y", 2)],
            vec![table.clone(), table],
        )
        .unwrap();
        let found = nps_nash_equilibria(&game);
        assert_eq!(found.len(), 4);
        assert_eq!(found[0].action, JointAction::new(vec![0, 0]));
        assert_eq!(found[1].action, JointAction::new(vec![0, 1]));
    }
}
