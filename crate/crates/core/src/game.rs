//! Game containers for two-person and n-person soft games, payoff access,
//! and the classification predicates and preference relations.
//!
//! A two-person soft game carries one payoff table per player (*bimatrix*
//! mode) or a single shared table (*single-matrix* mode). In single-matrix
//! mode Player 2 is the adversary who prefers smaller Player-1 payoffs;
//! asking for Player 2's own payoff is an error rather than an implicit
//! complement, because the two coincide only for games that are both disjoint
//! and universal.

use std::fmt;

use thiserror::Error;

use crate::softset::{Subset, Universe};

/// Errors from game construction and payoff access.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    /// Strategy labels must be non-empty, unique per player, and free of the
    /// `|` separator used by joint-action keys.
    #[error("invalid or duplicate strategy label {0:?}")]
    InvalidLabel(String),
    /// A table's dimensions do not match the players' strategy counts.
    #[error("payoff table dimensions {actual:?} do not match strategy counts {expected:?}")]
    DimensionMismatch {
        expected: Vec<usize>,
        actual: Vec<usize>,
    },
    /// A table was built with the wrong number of cells.
    #[error("expected {expected} payoff cells, got {actual}")]
    CellCountMismatch { expected: usize, actual: usize },
    /// All cells of a table must share one universe.
    #[error("payoff cell drawn from a different universe")]
    UniverseMismatch,
    /// The operation needs Player 2's payoff table, absent in single-matrix
    /// mode.
    #[error("operation requires a bimatrix game (no payoff table for player 2)")]
    SingleMatrixMode,
    /// Player index outside the game.
    #[error("player {player} out of range for a {players}-player game")]
    PlayerOutOfRange { player: usize, players: usize },
    /// A joint action with the wrong number of components.
    #[error("joint action has {actual} components, expected {expected}")]
    ActionArity { expected: usize, actual: usize },
    /// A strategy index outside a player's strategy list.
    #[error("strategy index {index} out of range for player {player} with {count} strategies")]
    StrategyOutOfRange {
        player: usize,
        index: usize,
        count: usize,
    },
    /// Games need at least two players and one strategy per player.
    #[error("a game needs at least two players, each with at least one strategy")]
    TooFewPlayers,
    /// An n-person game must carry one table per player.
    #[error("expected {expected} payoff tables, got {actual}")]
    TableCountMismatch { expected: usize, actual: usize },
}

/// One of the two sides of a two-person game.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub fn index(self) -> usize {
        match self {
            Player::One => 0,
            Player::Two => 1,
        }
    }

    pub fn from_index(index: usize) -> Option<Player> {
        match index {
            0 => Some(Player::One),
            1 => Some(Player::Two),
            _ => None,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index() + 1)
    }
}

/// A joint action: one strategy index per player.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct JointAction(Vec<usize>);

impl JointAction {
    pub fn new(indices: Vec<usize>) -> Self {
        JointAction(indices)
    }

    /// The two-person action `(row, column)`.
    pub fn pair(row: usize, col: usize) -> Self {
        JointAction(vec![row, col])
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Row index of a two-person action.
    pub fn row(&self) -> usize {
        self.0[0]
    }

    /// Column index of a two-person action.
    pub fn col(&self) -> usize {
        self.0[1]
    }
}

impl fmt::Debug for JointAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// How one action compares with another for a player, via set containment of
/// the payoffs.
///
/// `prefers` never reports `WeaklyPrefers`: a weak preference is always
/// refined into `StrictlyPrefers` (proper superset) or `Indifferent` (equal
/// payoffs). The variant exists because the weak relation `⊇` is what
/// dominance and optimality quantify over; use
/// [`TwoPersonSoftGame::weakly_prefers`] to test it directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreferenceOutcome {
    StrictlyPrefers,
    Indifferent,
    WeaklyPrefers,
    Incomparable,
}

impl PreferenceOutcome {
    /// True for every outcome implying `payoff(a) ⊇ payoff(b)`.
    pub fn is_weak_preference(self) -> bool {
        !matches!(self, PreferenceOutcome::Incomparable)
    }
}

/// A total payoff table: one subset of the universe per joint action, stored
/// row-major over the per-player strategy counts.
#[derive(Clone, PartialEq, Eq)]
pub struct PayoffTable {
    universe: Universe,
    dims: Vec<usize>,
    cells: Vec<Subset>,
}

impl PayoffTable {
    /// Builds a table from row-major cells. Every joint action must have
    /// exactly one cell and all cells must share `universe`.
    pub fn new(
        universe: &Universe,
        dims: Vec<usize>,
        cells: Vec<Subset>,
    ) -> Result<Self, GameError> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(GameError::TooFewPlayers);
        }
        let expected: usize = dims.iter().product();
        if cells.len() != expected {
            return Err(GameError::CellCountMismatch {
                expected,
                actual: cells.len(),
            });
        }
        if cells.iter().any(|c| c.universe() != universe) {
            return Err(GameError::UniverseMismatch);
        }
        Ok(PayoffTable {
            universe: universe.clone(),
            dims,
            cells,
        })
    }

    /// Two-person convenience: builds an `m x n` table from rows.
    pub fn from_rows(universe: &Universe, rows: Vec<Vec<Subset>>) -> Result<Self, GameError> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(GameError::DimensionMismatch {
                expected: vec![m, n],
                actual: vec![m, rows.iter().map(Vec::len).max().unwrap_or(0)],
            });
        }
        PayoffTable::new(universe, vec![m, n], rows.into_iter().flatten().collect())
    }

    /// A table with every cell equal to `cell`.
    pub fn filled(dims: Vec<usize>, cell: Subset) -> Result<Self, GameError> {
        let universe = cell.universe().clone();
        let count: usize = dims.iter().product();
        PayoffTable::new(&universe, dims, vec![cell; count])
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Row-major cells.
    pub fn cells(&self) -> &[Subset] {
        &self.cells
    }

    /// The cell of one joint action, `None` when out of bounds.
    pub fn cell(&self, action: &[usize]) -> Option<&Subset> {
        self.flat_index(action).map(|i| &self.cells[i])
    }

    /// Two-person cell accessor; panics out of bounds.
    pub fn at(&self, row: usize, col: usize) -> &Subset {
        assert_eq!(self.dims.len(), 2, "at() is for two-person tables");
        &self.cells[row * self.dims[1] + col]
    }

    fn flat_index(&self, action: &[usize]) -> Option<usize> {
        if action.len() != self.dims.len() {
            return None;
        }
        let mut flat = 0;
        for (&a, &d) in action.iter().zip(&self.dims) {
            if a >= d {
                return None;
            }
            flat = flat * d + a;
        }
        Some(flat)
    }

    /// All joint actions in row-major (lexicographic) order.
    pub fn actions(&self) -> Vec<JointAction> {
        let mut out = Vec::with_capacity(self.cells.len());
        let mut current = vec![0usize; self.dims.len()];
        loop {
            out.push(JointAction::new(current.clone()));
            // odometer increment
            let mut axis = self.dims.len();
            loop {
                if axis == 0 {
                    return out;
                }
                axis -= 1;
                current[axis] += 1;
                if current[axis] < self.dims[axis] {
                    break;
                }
                current[axis] = 0;
            }
        }
    }

    pub fn is_all_empty(&self) -> bool {
        self.cells.iter().all(Subset::is_empty)
    }

    pub fn is_all_full(&self) -> bool {
        self.cells.iter().all(Subset::is_full)
    }

    /// True when the multiset of cells is totally ordered by inclusion: any
    /// two cells are comparable. Mutual inclusion already implies equality
    /// for sets, so only comparability needs checking.
    pub fn is_chain(&self) -> bool {
        self.cells.iter().enumerate().all(|(i, a)| {
            self.cells[..i]
                .iter()
                .all(|b| a.is_subset_unchecked(b) || b.is_subset_unchecked(a))
        })
    }

    pub fn cellwise_complement(&self) -> PayoffTable {
        PayoffTable {
            universe: self.universe.clone(),
            dims: self.dims.clone(),
            cells: self.cells.iter().map(Subset::complement).collect(),
        }
    }

    pub fn cellwise_union(&self, other: &PayoffTable) -> Result<PayoffTable, GameError> {
        self.zip_cells(other, Subset::union_unchecked)
    }

    pub fn cellwise_intersect(&self, other: &PayoffTable) -> Result<PayoffTable, GameError> {
        self.zip_cells(other, Subset::intersect_unchecked)
    }

    /// Cellwise set difference `self \ other`.
    pub fn cellwise_difference(&self, other: &PayoffTable) -> Result<PayoffTable, GameError> {
        self.zip_cells(other, Subset::difference_unchecked)
    }

    fn zip_cells(
        &self,
        other: &PayoffTable,
        op: impl Fn(&Subset, &Subset) -> Subset,
    ) -> Result<PayoffTable, GameError> {
        if self.dims != other.dims {
            return Err(GameError::DimensionMismatch {
                expected: self.dims.clone(),
                actual: other.dims.clone(),
            });
        }
        if self.universe != other.universe {
            return Err(GameError::UniverseMismatch);
        }
        Ok(PayoffTable {
            universe: self.universe.clone(),
            dims: self.dims.clone(),
            cells: self
                .cells
                .iter()
                .zip(&other.cells)
                .map(|(a, b)| op(a, b))
                .collect(),
        })
    }

    /// Two-person: the table without row `row`.
    pub(crate) fn without_row(&self, row: usize) -> PayoffTable {
        let n = self.dims[1];
        let cells = self
            .cells
            .iter()
            .enumerate()
            .filter(|(i, _)| i / n != row)
            .map(|(_, c)| c.clone())
            .collect();
        PayoffTable {
            universe: self.universe.clone(),
            dims: vec![self.dims[0] - 1, n],
            cells,
        }
    }

    /// Two-person: the table without column `col`.
    pub(crate) fn without_col(&self, col: usize) -> PayoffTable {
        let n = self.dims[1];
        let cells = self
            .cells
            .iter()
            .enumerate()
            .filter(|(i, _)| i % n != col)
            .map(|(_, c)| c.clone())
            .collect();
        PayoffTable {
            universe: self.universe.clone(),
            dims: vec![self.dims[0], n - 1],
            cells,
        }
    }
}

impl fmt::Debug for PayoffTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PayoffTable dims {:?}", self.dims)?;
        for (action, cell) in self.actions().iter().zip(&self.cells) {
            writeln!(f, "  {action:?} -> {cell}")?;
        }
        Ok(())
    }
}

fn check_labels(labels: &[String]) -> Result<(), GameError> {
    for (i, label) in labels.iter().enumerate() {
        if label.is_empty() || label.contains('|') || labels[..i].contains(label) {
            return Err(GameError::InvalidLabel(label.clone()));
        }
    }
    Ok(())
}

/// Whether a two-person game carries one payoff table or two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameMode {
    SingleMatrix,
    Bimatrix,
}

/// A two-person soft game over strategy sets `X` (rows, Player 1) and `Y`
/// (columns, Player 2).
#[derive(Clone, PartialEq, Eq)]
pub struct TwoPersonSoftGame {
    universe: Universe,
    x_labels: Vec<String>,
    y_labels: Vec<String>,
    table1: PayoffTable,
    table2: Option<PayoffTable>,
}

impl TwoPersonSoftGame {
    /// A game described only by Player 1's table. Player 2 acts as the
    /// adversary preferring smaller Player-1 payoffs.
    pub fn single_matrix(
        x_labels: Vec<String>,
        y_labels: Vec<String>,
        table1: PayoffTable,
    ) -> Result<Self, GameError> {
        TwoPersonSoftGame::build(x_labels, y_labels, table1, None)
    }

    /// A game with one payoff table per player.
    pub fn bimatrix(
        x_labels: Vec<String>,
        y_labels: Vec<String>,
        table1: PayoffTable,
        table2: PayoffTable,
    ) -> Result<Self, GameError> {
        TwoPersonSoftGame::build(x_labels, y_labels, table1, Some(table2))
    }

    fn build(
        x_labels: Vec<String>,
        y_labels: Vec<String>,
        table1: PayoffTable,
        table2: Option<PayoffTable>,
    ) -> Result<Self, GameError> {
        if x_labels.is_empty() || y_labels.is_empty() {
            return Err(GameError::TooFewPlayers);
        }
        check_labels(&x_labels)?;
        check_labels(&y_labels)?;
        let expected = vec![x_labels.len(), y_labels.len()];
        for table in std::iter::once(&table1).chain(table2.as_ref()) {
            if table.dims() != expected {
                return Err(GameError::DimensionMismatch {
                    expected,
                    actual: table.dims().to_vec(),
                });
            }
        }
        if let Some(t2) = &table2 {
            if t2.universe() != table1.universe() {
                return Err(GameError::UniverseMismatch);
            }
        }
        Ok(TwoPersonSoftGame {
            universe: table1.universe().clone(),
            x_labels,
            y_labels,
            table1,
            table2,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn x_labels(&self) -> &[String] {
        &self.x_labels
    }

    pub fn y_labels(&self) -> &[String] {
        &self.y_labels
    }

    pub fn rows(&self) -> usize {
        self.x_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.y_labels.len()
    }

    pub fn mode(&self) -> GameMode {
        if self.table2.is_some() {
            GameMode::Bimatrix
        } else {
            GameMode::SingleMatrix
        }
    }

    pub fn is_bimatrix(&self) -> bool {
        self.table2.is_some()
    }

    pub fn table1(&self) -> &PayoffTable {
        &self.table1
    }

    pub fn table2(&self) -> Option<&PayoffTable> {
        self.table2.as_ref()
    }

    /// Player `k`'s own payoff table. In single-matrix mode Player 2 has
    /// none, which is an error.
    pub fn table(&self, k: Player) -> Result<&PayoffTable, GameError> {
        match k {
            Player::One => Ok(&self.table1),
            Player::Two => self.table2.as_ref().ok_or(GameError::SingleMatrixMode),
        }
    }

    fn check_action(&self, action: &JointAction) -> Result<(usize, usize), GameError> {
        if action.arity() != 2 {
            return Err(GameError::ActionArity {
                expected: 2,
                actual: action.arity(),
            });
        }
        let (i, j) = (action.row(), action.col());
        if i >= self.rows() {
            return Err(GameError::StrategyOutOfRange {
                player: 1,
                index: i,
                count: self.rows(),
            });
        }
        if j >= self.cols() {
            return Err(GameError::StrategyOutOfRange {
                player: 2,
                index: j,
                count: self.cols(),
            });
        }
        Ok((i, j))
    }

    /// The soft payoff player `k` receives at a joint action.
    pub fn payoff(&self, k: Player, action: &JointAction) -> Result<&Subset, GameError> {
        let (i, j) = self.check_action(action)?;
        Ok(self.table(k)?.at(i, j))
    }

    /// True when the two players' payoffs intersect emptily at every action
    /// pair. Bimatrix only.
    pub fn is_disjoint_game(&self) -> Result<bool, GameError> {
        let t2 = self.table(Player::Two)?;
        Ok(self
            .table1
            .cells()
            .iter()
            .zip(t2.cells())
            .all(|(a, b)| a.intersect_unchecked(b).is_empty()))
    }

    /// True when the two players' payoffs union to the whole universe at
    /// every action pair. Bimatrix only.
    pub fn is_universal_game(&self) -> Result<bool, GameError> {
        let t2 = self.table(Player::Two)?;
        Ok(self
            .table1
            .cells()
            .iter()
            .zip(t2.cells())
            .all(|(a, b)| a.union_unchecked(b).is_full()))
    }

    /// True when every cell of player `k`'s table is the empty set.
    pub fn is_empty_game(&self, k: Player) -> Result<bool, GameError> {
        Ok(self.table(k)?.is_all_empty())
    }

    /// True when every cell of player `k`'s table is the whole universe.
    pub fn is_full_game(&self, k: Player) -> Result<bool, GameError> {
        Ok(self.table(k)?.is_all_full())
    }

    /// True when player `k`'s payoff cells are pairwise comparable by
    /// inclusion.
    pub fn is_rational(&self, k: Player) -> Result<bool, GameError> {
        Ok(self.table(k)?.is_chain())
    }

    /// Compares two actions for player `k` by containment of the payoffs.
    pub fn prefers(
        &self,
        k: Player,
        a: &JointAction,
        b: &JointAction,
    ) -> Result<PreferenceOutcome, GameError> {
        let pa = self.payoff(k, a)?;
        let pb = self.payoff(k, b)?;
        Ok(if pa == pb {
            PreferenceOutcome::Indifferent
        } else if pb.is_subset_unchecked(pa) {
            PreferenceOutcome::StrictlyPrefers
        } else {
            // The relation is directional: a payoff strictly below b's is
            // just as incomparable *from a's side* as a crossing pair.
            PreferenceOutcome::Incomparable
        })
    }

    /// True when `payoff(a) ⊇ payoff(b)` for player `k`.
    pub fn weakly_prefers(
        &self,
        k: Player,
        a: &JointAction,
        b: &JointAction,
    ) -> Result<bool, GameError> {
        let pa = self.payoff(k, a)?;
        let pb = self.payoff(k, b)?;
        Ok(pb.is_subset_unchecked(pa))
    }

    /// All actions whose payoff contains every other payoff of player `k`, in
    /// row-major order. Containment is a partial order, so the list may be
    /// empty.
    pub fn optimal_actions(&self, k: Player) -> Result<Vec<JointAction>, GameError> {
        let table = self.table(k)?;
        let mut out = Vec::new();
        for (index, cell) in table.cells().iter().enumerate() {
            if table
                .cells()
                .iter()
                .all(|other| other.is_subset_unchecked(cell))
            {
                let n = self.cols();
                out.push(JointAction::pair(index / n, index % n));
            }
        }
        Ok(out)
    }

    /// Player `k`'s table with every cell complemented.
    pub fn complement_game(&self, k: Player) -> Result<PayoffTable, GameError> {
        Ok(self.table(k)?.cellwise_complement())
    }

    /// Cellwise set difference of player `k`'s table minus the other
    /// player's. Bimatrix only.
    pub fn difference_game(&self, k: Player) -> Result<PayoffTable, GameError> {
        let t2 = self.table(Player::Two)?;
        match k {
            Player::One => self.table1.cellwise_difference(t2),
            Player::Two => t2.cellwise_difference(&self.table1),
        }
    }

    pub(crate) fn without_row(&self, row: usize) -> TwoPersonSoftGame {
        let mut x_labels = self.x_labels.clone();
        x_labels.remove(row);
        TwoPersonSoftGame {
            universe: self.universe.clone(),
            x_labels,
            y_labels: self.y_labels.clone(),
            table1: self.table1.without_row(row),
            table2: self.table2.as_ref().map(|t| t.without_row(row)),
        }
    }

    pub(crate) fn without_col(&self, col: usize) -> TwoPersonSoftGame {
        let mut y_labels = self.y_labels.clone();
        y_labels.remove(col);
        TwoPersonSoftGame {
            universe: self.universe.clone(),
            x_labels: self.x_labels.clone(),
            y_labels,
            table1: self.table1.without_col(col),
            table2: self.table2.as_ref().map(|t| t.without_col(col)),
        }
    }
}

impl fmt::Debug for TwoPersonSoftGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TwoPersonSoftGame {{ {}x{} {:?}, X: [{}], Y: [{}] }}",
            self.rows(),
            self.cols(),
            self.mode(),
            self.x_labels.join(", "),
            self.y_labels.join(", ")
        )
    }
}

/// An n-person soft game: `n >= 2` strategy sets and one total payoff table
/// per player over the joint-action space.
#[derive(Clone, PartialEq, Eq)]
pub struct NPersonSoftGame {
    universe: Universe,
    strategies: Vec<Vec<String>>,
    tables: Vec<PayoffTable>,
}

impl NPersonSoftGame {
    pub fn new(strategies: Vec<Vec<String>>, tables: Vec<PayoffTable>) -> Result<Self, GameError> {
        if strategies.len() < 2 || strategies.iter().any(Vec::is_empty) {
            return Err(GameError::TooFewPlayers);
        }
        for labels in &strategies {
            check_labels(labels)?;
        }
        if tables.len() != strategies.len() {
            return Err(GameError::TableCountMismatch {
                expected: strategies.len(),
                actual: tables.len(),
            });
        }
        let dims: Vec<usize> = strategies.iter().map(Vec::len).collect();
        let universe = tables[0].universe().clone();
        for table in &tables {
            if table.dims() != dims {
                return Err(GameError::DimensionMismatch {
                    expected: dims,
                    actual: table.dims().to_vec(),
                });
            }
            if *table.universe() != universe {
                return Err(GameError::UniverseMismatch);
            }
        }
        Ok(NPersonSoftGame {
            universe,
            strategies,
            tables,
        })
    }

    /// Embeds a bimatrix two-person game as a 2-person instance of the
    /// n-person representation.
    pub fn from_two_person(game: &TwoPersonSoftGame) -> Result<Self, GameError> {
        let table2 = game.table(Player::Two)?.clone();
        NPersonSoftGame::new(
            vec![game.x_labels().to_vec(), game.y_labels().to_vec()],
            vec![game.table1().clone(), table2],
        )
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn players(&self) -> usize {
        self.strategies.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.strategies.iter().map(Vec::len).collect()
    }

    pub fn strategies(&self, player: usize) -> Option<&[String]> {
        self.strategies.get(player).map(Vec::as_slice)
    }

    pub fn all_strategies(&self) -> &[Vec<String>] {
        &self.strategies
    }

    /// Player `k`'s payoff table (`k` is 0-based).
    pub fn table(&self, k: usize) -> Result<&PayoffTable, GameError> {
        self.tables.get(k).ok_or(GameError::PlayerOutOfRange {
            player: k,
            players: self.players(),
        })
    }

    /// The soft payoff player `k` receives at a joint action.
    pub fn payoff(&self, k: usize, action: &JointAction) -> Result<&Subset, GameError> {
        let table = self.table(k)?;
        if action.arity() != self.players() {
            return Err(GameError::ActionArity {
                expected: self.players(),
                actual: action.arity(),
            });
        }
        table.cell(action.indices()).ok_or_else(|| {
            let (player, (&index, &count)) = action
                .indices()
                .iter()
                .zip(&self.dims())
                .enumerate()
                .find(|(_, (&a, &d))| a >= d)
                .expect("some component out of range");
            GameError::StrategyOutOfRange {
                player: player + 1,
                index,
                count,
            }
        })
    }
}

impl fmt::Debug for NPersonSoftGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "NPersonSoftGame {{ {} players, dims {:?} }}",
            self.players(),
            self.dims()
        )
    }
}

/// Either kind of soft game, as produced by the parser and the generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SoftGame {
    TwoPerson(TwoPersonSoftGame),
    NPerson(NPersonSoftGame),
}

impl SoftGame {
    pub fn universe(&self) -> &Universe {
        match self {
            SoftGame::TwoPerson(g) => g.universe(),
            SoftGame::NPerson(g) => g.universe(),
        }
    }

    pub fn players(&self) -> usize {
        match self {
            SoftGame::TwoPerson(_) => 2,
            SoftGame::NPerson(g) => g.players(),
        }
    }

    pub fn as_two_person(&self) -> Option<&TwoPersonSoftGame> {
        match self {
            SoftGame::TwoPerson(g) => Some(g),
            SoftGame::NPerson(_) => None,
        }
    }

    pub fn as_n_person(&self) -> Option<&NPersonSoftGame> {
        match self {
            SoftGame::NPerson(g) => Some(g),
            SoftGame::TwoPerson(_) => None,
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

    fn one_by_one(cell: Subset) -> TwoPersonSoftGame {
        let table = PayoffTable::filled(vec![1, 1], cell).unwrap();
        TwoPersonSoftGame::single_matrix(labels("x", 1), labels("y", 1), table).unwrap()
    }

    #[test]
    fn payoff_lookup_and_bounds() {
        let universe = u(3);
        let cell = sub(&universe, &["u1", "u3"]);
        let game = one_by_one(cell.clone());
        assert_eq!(
            game.payoff(Player::One, &JointAction::pair(0, 0)).unwrap(),
            &cell
        );
        assert!(matches!(
            game.payoff(Player::One, &JointAction::pair(1, 0)),
            Err(GameError::StrategyOutOfRange { player: 1, .. })
        ));
        assert!(matches!(
            game.payoff(Player::One, &JointAction::new(vec![0, 0, 0])),
            Err(GameError::ActionArity { .. })
        ));
        assert_eq!(
            game.payoff(Player::Two, &JointAction::pair(0, 0)),
            Err(GameError::SingleMatrixMode)
        );
    }

    #[test]
    fn construction_rejects_bad_shapes() {
        let universe = u(2);
        let table = PayoffTable::filled(vec![2, 2], Subset::empty(&universe)).unwrap();
        assert!(matches!(
            TwoPersonSoftGame::single_matrix(labels("x", 3), labels("y", 2), table.clone()),
            Err(GameError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            TwoPersonSoftGame::single_matrix(
                vec!["a".into(), "a".into()],
                labels("y", 2),
                table.clone()
            ),
            Err(GameError::InvalidLabel(_))
        ));
        assert!(matches!(
            TwoPersonSoftGame::single_matrix(vec!["a|b".into(), "c".into()], labels("y", 2), table),
            Err(GameError::InvalidLabel(_))
        ));
        assert!(matches!(
            PayoffTable::new(&universe, vec![2, 2], vec![Subset::empty(&universe); 3]),
            Err(GameError::CellCountMismatch {
                expected: 4,
                actual: 3
            })
        ));
    }

    #[test]
    fn disjoint_and_universal_need_two_tables() {
        let universe = u(2);
        let game = one_by_one(Subset::full(&universe));
        assert_eq!(game.is_disjoint_game(), Err(GameError::SingleMatrixMode));
        assert_eq!(game.is_universal_game(), Err(GameError::SingleMatrixMode));
    }

    #[test]
    fn complement_table_pairing_is_disjoint_and_universal() {
        let universe = u(3);
        let t1 = PayoffTable::from_rows(
            &universe,
            vec![
                vec![sub(&universe, &["u1"]), sub(&universe, &["u2", "u3"])],
                vec![Subset::empty(&universe), Subset::full(&universe)],
            ],
        )
        .unwrap();
        let t2 = t1.cellwise_complement();
        let game =
            TwoPersonSoftGame::bimatrix(labels("x", 2), labels("y", 2), t1.clone(), t2).unwrap();
        assert!(game.is_disjoint_game().unwrap());
        assert!(game.is_universal_game().unwrap());

        let both_full = TwoPersonSoftGame::bimatrix(
            labels("x", 2),
            labels("y", 2),
            PayoffTable::filled(vec![2, 2], Subset::full(&universe)).unwrap(),
            PayoffTable::filled(vec![2, 2], Subset::full(&universe)).unwrap(),
        )
        .unwrap();
        assert!(!both_full.is_disjoint_game().unwrap());

        let both_empty = TwoPersonSoftGame::bimatrix(
            labels("x", 2),
            labels("y", 2),
            PayoffTable::filled(vec![2, 2], Subset::empty(&universe)).unwrap(),
            PayoffTable::filled(vec![2, 2], Subset::empty(&universe)).unwrap(),
        )
        .unwrap();
        assert!(!both_empty.is_universal_game().unwrap());
    }

    #[test]
    fn empty_and_full_predicates() {
        let universe = u(2);
        let empty = one_by_one(Subset::empty(&universe));
        assert!(empty.is_empty_game(Player::One).unwrap());
        assert!(!empty.is_full_game(Player::One).unwrap());

        let full = one_by_one(Subset::full(&universe));
        assert!(full.is_full_game(Player::One).unwrap());

        let table = PayoffTable::from_rows(
            &universe,
            vec![vec![Subset::empty(&universe), sub(&universe, &["u1"])]],
        )
        .unwrap();
        let mixed =
            TwoPersonSoftGame::single_matrix(labels("x", 1), labels("y", 2), table).unwrap();
        assert!(!mixed.is_empty_game(Player::One).unwrap());
    }

    #[test]
    fn rationality_is_chain_comparability() {
        let universe = u(3);
        assert!(one_by_one(sub(&universe, &["u2"]))
            .is_rational(Player::One)
            .unwrap());

        let chain = PayoffTable::from_rows(
            &universe,
            vec![
                vec![Subset::empty(&universe), sub(&universe, &["u1"])],
                vec![sub(&universe, &["u1", "u2"]), sub(&universe, &["u1"])],
            ],
        )
        .unwrap();
        let chain_game =
            TwoPersonSoftGame::single_matrix(labels("x", 2), labels("y", 2), chain).unwrap();
        assert!(chain_game.is_rational(Player::One).unwrap());

        let antichain = PayoffTable::from_rows(
            &universe,
            vec![vec![sub(&universe, &["u1"]), sub(&universe, &["u2"])]],
        )
        .unwrap();
        let antichain_game =
            TwoPersonSoftGame::single_matrix(labels("x", 1), labels("y", 2), antichain).unwrap();
        assert!(!antichain_game.is_rational(Player::One).unwrap());
    }

    #[test]
    fn preference_classification() {
        let universe = u(3);
        let table = PayoffTable::from_rows(
            &universe,
            vec![
                vec![sub(&universe, &["u1", "u2"]), sub(&universe, &["u1"])],
                vec![sub(&universe, &["u3"]), sub(&universe, &["u1"])],
            ],
        )
        .unwrap();
        let game = TwoPersonSoftGame::single_matrix(labels("x", 2), labels("y", 2), table).unwrap();
        let a = JointAction::pair(0, 0);
        let b = JointAction::pair(0, 1);
        let c = JointAction::pair(1, 0);
        let d = JointAction::pair(1, 1);
        assert_eq!(
            game.prefers(Player::One, &a, &b).unwrap(),
            PreferenceOutcome::StrictlyPrefers
        );
        assert_eq!(
            game.prefers(Player::One, &b, &a).unwrap(),
            PreferenceOutcome::Incomparable
        );
        assert_eq!(
            game.prefers(Player::One, &a, &a).unwrap(),
            PreferenceOutcome::Indifferent
        );
        assert_eq!(
            game.prefers(Player::One, &b, &d).unwrap(),
            PreferenceOutcome::Indifferent
        );
        assert_eq!(
            game.prefers(Player::One, &a, &c).unwrap(),
            PreferenceOutcome::Incomparable
        );
        assert!(game.weakly_prefers(Player::One, &a, &b).unwrap());
        assert!(!game.weakly_prefers(Player::One, &b, &a).unwrap());
        assert!(game.weakly_prefers(Player::One, &b, &d).unwrap());
    }

    #[test]
    fn optimal_actions_cases() {
        let universe = u(2);
        // One cell is the whole universe, the others are proper subsets.
        let table = PayoffTable::from_rows(
            &universe,
            vec![vec![Subset::full(&universe), sub(&universe, &["u1"])]],
        )
        .unwrap();
        let game = TwoPersonSoftGame::single_matrix(labels("x", 1), labels("y", 2), table).unwrap();
        assert_eq!(
            game.optimal_actions(Player::One).unwrap(),
            vec![JointAction::pair(0, 0)]
        );

        // Constant game: every action is optimal, row-major order.
        let constant = TwoPersonSoftGame::single_matrix(
            labels("x", 2),
            labels("y", 2),
            PayoffTable::filled(vec![2, 2], sub(&universe, &["u2"])).unwrap(),
        )
        .unwrap();
        assert_eq!(
            constant.optimal_actions(Player::One).unwrap(),
            vec![
                JointAction::pair(0, 0),
                JointAction::pair(0, 1),
                JointAction::pair(1, 0),
                JointAction::pair(1, 1),
            ]
        );

        // Incomparable cells: no optimum.
        let antichain = PayoffTable::from_rows(
            &universe,
            vec![vec![sub(&universe, &["u1"]), sub(&universe, &["u2"])]],
        )
        .unwrap();
        let none =
            TwoPersonSoftGame::single_matrix(labels("x", 1), labels("y", 2), antichain).unwrap();
        assert!(none.optimal_actions(Player::One).unwrap().is_empty());
    }

    #[test]
    fn complement_and_difference_tables() {
        let universe = u(3);
        let t1 = PayoffTable::from_rows(
            &universe,
            vec![vec![
                sub(&universe, &["u1", "u2"]),
                Subset::empty(&universe),
            ]],
        )
        .unwrap();
        assert_eq!(t1.cellwise_complement().cellwise_complement(), t1);

        let game =
            TwoPersonSoftGame::bimatrix(labels("x", 1), labels("y", 2), t1.clone(), t1.clone())
                .unwrap();
        // T \ T is the all-empty table.
        assert!(game.difference_game(Player::One).unwrap().is_all_empty());

        let full = PayoffTable::filled(vec![1, 2], Subset::full(&universe)).unwrap();
        let with_full =
            TwoPersonSoftGame::bimatrix(labels("x", 1), labels("y", 2), full, t1.clone()).unwrap();
        assert_eq!(
            with_full.difference_game(Player::One).unwrap(),
            t1.cellwise_complement()
        );
    }

    #[test]
    fn n_person_payoff_access() {
        let universe = u(2);
        let dims = vec![2, 2, 2];
        let cells: Vec<Subset> = (0..8)
            .map(|i| {
                if i % 2 == 0 {
                    Subset::full(&universe)
                } else {
                    Subset::empty(&universe)
                }
            })
            .collect();
        let table = PayoffTable::new(&universe, dims.clone(), cells).unwrap();
        let strategies = vec![labels("x", 2), labels("x", 2), labels("x", 2)];
        let game =
            NPersonSoftGame::new(strategies, vec![table.clone(), table.clone(), table]).unwrap();
        assert_eq!(game.players(), 3);
        assert!(game
            .payoff(0, &JointAction::new(vec![0, 0, 0]))
            .unwrap()
            .is_full());
        assert!(game
            .payoff(2, &JointAction::new(vec![1, 1, 1]))
            .unwrap()
            .is_empty());
        assert!(matches!(
            game.payoff(3, &JointAction::new(vec![0, 0, 0])),
            Err(GameError::PlayerOutOfRange {
                player: 3,
                players: 3
            })
        ));
        assert!(matches!(
            game.payoff(0, &JointAction::new(vec![0, 2, 0])),
            Err(GameError::StrategyOutOfRange {
                player: 2,
                index: 2,
                count: 2
            })
        ));
    }

    #[test]
    fn two_person_embedding_requires_bimatrix() {
        let universe = u(2);
        let single = one_by_one(Subset::full(&universe));
        assert!(matches!(
            NPersonSoftGame::from_two_person(&single),
            Err(GameError::SingleMatrixMode)
        ));
    }
}
