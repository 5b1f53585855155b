//! Seeded, cross-implementation-reproducible random soft games.
//!
//! The stream is SplitMix64 with the published constants, so any language can
//! reproduce it exactly; golden fixtures under `tests/fixtures/golden/` pin
//! the agreement. Inclusion decisions compare raw 64-bit draws against the
//! integer threshold `floor(p * 2^64)`, never against floats, and the number
//! of draws consumed is a pure function of the generation spec, so streams
//! cannot desynchronize across implementations.

use thiserror::Error;

use crate::game::{NPersonSoftGame, PayoffTable, SoftGame, TwoPersonSoftGame};
use crate::softset::{Subset, Universe};

/// Errors from invalid generation specs.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    /// Disjoint/universal constraints are defined for two players only.
    #[error("constraint {constraint:?} is unsupported for {players} players")]
    UnsupportedConstraint {
        constraint: Constraint,
        players: usize,
    },
    /// Dims must list at least two players, each with at least one strategy.
    #[error("invalid dims {0:?}: need at least two players with nonzero strategy counts")]
    BadDims(Vec<usize>),
    /// The universe must contain at least one element.
    #[error("universe size must be at least 1")]
    BadUniverseSize,
    /// An inclusion probability outside `[0, 1]`.
    #[error("invalid probability {num}/{den}")]
    BadProbability { num: u64, den: u64 },
}

/// The SplitMix64 stream. Identical seeds yield identical draw sequences in
/// every implementation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
    draws: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 {
            state: seed,
            draws: 0,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        self.draws += 1;
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Number of draws taken since construction.
    pub fn draws(&self) -> u64 {
        self.draws
    }
}

/// An exact inclusion probability `num/den` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InclusionProb {
    num: u64,
    den: u64,
}

impl InclusionProb {
    pub const ONE_HALF: InclusionProb = InclusionProb { num: 1, den: 2 };

    pub fn new(num: u64, den: u64) -> Result<Self, GenError> {
        if den == 0 || num > den {
            return Err(GenError::BadProbability { num, den });
        }
        Ok(InclusionProb { num, den })
    }
}

/// Structural constraint imposed on a generated two-person game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Constraint {
    /// Independent random subsets per player.
    #[default]
    None,
    /// The two players' cells never share an element.
    Disjoint,
    /// The two players' cells cover the universe at every action.
    Universal,
    /// Each element lands in exactly one player's cell.
    DisjointUniversal,
}

/// Everything needed to generate one game reproducibly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub seed: u64,
    pub universe_size: usize,
    pub dims: Vec<usize>,
    pub constraint: Constraint,
    pub inclusion_prob: InclusionProb,
}

impl GenSpec {
    /// A spec with the default inclusion probability of 1/2.
    pub fn new(seed: u64, universe_size: usize, dims: Vec<usize>, constraint: Constraint) -> Self {
        GenSpec {
            seed,
            universe_size,
            dims,
            constraint,
            inclusion_prob: InclusionProb::ONE_HALF,
        }
    }

    pub fn with_inclusion_prob(mut self, prob: InclusionProb) -> Self {
        self.inclusion_prob = prob;
        self
    }

    fn validate(&self) -> Result<(), GenError> {
        if self.universe_size == 0 {
            return Err(GenError::BadUniverseSize);
        }
        if self.dims.len() < 2 || self.dims.contains(&0) {
            return Err(GenError::BadDims(self.dims.clone()));
        }
        if self.dims.len() > 2 && self.constraint != Constraint::None {
            return Err(GenError::UnsupportedConstraint {
                constraint: self.constraint,
                players: self.dims.len(),
            });
        }
        Ok(())
    }
}

/// One random subset: each element is included independently when the next
/// draw, read as a fraction of 2^64, falls below `p`. Consumes exactly `|U|`
/// draws regardless of `p`.
pub fn random_subset(rng: &mut SplitMix64, universe: &Universe, p: InclusionProb) -> Subset {
    let t = threshold(p);
    let indices: Vec<usize> = (0..universe.len())
        .filter(|_| (rng.next_u64() as u128) < t)
        .collect();
    Subset::from_indices(universe, indices).expect("indices in range")
}

fn threshold(p: InclusionProb) -> u128 {
    ((p.num as u128) << 64) / p.den as u128
}

/// Generates the game described by `spec`, seeding a fresh stream from
/// `spec.seed`.
pub fn random_game(spec: &GenSpec) -> Result<SoftGame, GenError> {
    let mut rng = SplitMix64::new(spec.seed);
    random_game_with(spec, &mut rng)
}

/// Generates the game described by `spec` from a caller-supplied stream
/// (`spec.seed` is ignored). The cells are filled in row-major joint-action
/// order, players in index order within each cell.
pub fn random_game_with(spec: &GenSpec, rng: &mut SplitMix64) -> Result<SoftGame, GenError> {
    spec.validate()?;
    let universe = Universe::numbered(spec.universe_size).expect("size checked");
    let t = threshold(spec.inclusion_prob);
    let cell_count: usize = spec.dims.iter().product();

    if spec.dims.len() > 2 {
        // Constraint is None here; every player's cell is an independent
        // random subset.
        let mut tables: Vec<Vec<Subset>> = vec![Vec::with_capacity(cell_count); spec.dims.len()];
        for _ in 0..cell_count {
            for cells in tables.iter_mut() {
                cells.push(random_subset(rng, &universe, spec.inclusion_prob));
            }
        }
        let strategies: Vec<Vec<String>> = spec
            .dims
            .iter()
            .map(|&d| (1..=d).map(|i| format!("x{i}")).collect())
            .collect();
        let tables = tables
            .into_iter()
            .map(|cells| PayoffTable::new(&universe, spec.dims.clone(), cells))
            .collect::<Result<Vec<_>, _>>()
            .expect("cell counts match by construction");
        let game = NPersonSoftGame::new(strategies, tables).expect("shape checked");
        return Ok(SoftGame::NPerson(game));
    }

    let mut cells1 = Vec::with_capacity(cell_count);
    let mut cells2 = Vec::with_capacity(cell_count);
    for _ in 0..cell_count {
        match spec.constraint {
            Constraint::None => {
                cells1.push(random_subset(rng, &universe, spec.inclusion_prob));
                cells2.push(random_subset(rng, &universe, spec.inclusion_prob));
            }
            Constraint::DisjointUniversal => {
                // One draw per element: below the threshold goes to player 1,
                // otherwise to player 2.
                let mut one = Vec::new();
                let mut two = Vec::new();
                for e in 0..spec.universe_size {
                    if (rng.next_u64() as u128) < t {
                        one.push(e);
                    } else {
                        two.push(e);
                    }
                }
                cells1.push(Subset::from_indices(&universe, one).expect("in range"));
                cells2.push(Subset::from_indices(&universe, two).expect("in range"));
            }
            Constraint::Disjoint => {
                // Two draws per element: player 1 gets first refusal, player 2
                // a chance at what remains, else nobody takes it.
                let mut one = Vec::new();
                let mut two = Vec::new();
                for e in 0..spec.universe_size {
                    let d1 = (rng.next_u64() as u128) < t;
                    let d2 = (rng.next_u64() as u128) < t;
                    if d1 {
                        one.push(e);
                    } else if d2 {
                        two.push(e);
                    }
                }
                cells1.push(Subset::from_indices(&universe, one).expect("in range"));
                cells2.push(Subset::from_indices(&universe, two).expect("in range"));
            }
            Constraint::Universal => {
                // Two draws per element: player 2 covers whatever player 1
                // declines, plus its own random extras.
                let mut one = Vec::new();
                let mut two = Vec::new();
                for e in 0..spec.universe_size {
                    let d1 = (rng.next_u64() as u128) < t;
                    let d2 = (rng.next_u64() as u128) < t;
                    if d1 {
                        one.push(e);
                    }
                    if d2 || !d1 {
                        two.push(e);
                    }
                }
                cells1.push(Subset::from_indices(&universe, one).expect("in range"));
                cells2.push(Subset::from_indices(&universe, two).expect("in range"));
            }
        }
    }

    let x_labels: Vec<String> = (1..=spec.dims[0]).map(|i| format!("x{i}")).collect();
    let y_labels: Vec<String> = (1..=spec.dims[1]).map(|i| format!("y{i}")).collect();
    let table1 = PayoffTable::new(&universe, spec.dims.clone(), cells1).expect("shape checked");
    let table2 = PayoffTable::new(&universe, spec.dims.clone(), cells2).expect("shape checked");
    let game = TwoPersonSoftGame::bimatrix(x_labels, y_labels, table1, table2)
        .expect("labels and dims are consistent");
    Ok(SoftGame::TwoPerson(game))
}
