//! Finite universe, canonical subsets, and the soft-set algebra.
//!
//! A [`Universe`] is an ordered list of named alternatives `u_1 .. u_|U|`.
//! A [`Subset`] is a set of universe indices stored as a bitmask, so equality,
//! iteration order, and serialization are deterministic. A [`SoftSet`] maps an
//! ordered parameter list `E` to subsets of the universe (the approximate
//! function `f_S: E -> P(U)`); the mapping is total in memory, while the
//! serialized form drops empty-valued parameters.
//!
//! All types are immutable after construction and every operation is a pure
//! function, so values can be shared freely across threads.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Errors from universe, subset, and soft-set construction or combination.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SoftSetError {
    /// Two operands are drawn from different universes.
    #[error("operands belong to different universes")]
    UniverseMismatch,
    /// Two soft sets do not share the same parameter list.
    #[error("operands have different parameter lists")]
    ParameterMismatch,
    /// An element name that is not in the universe.
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    /// An element index outside `0..|U|`.
    #[error("element index {index} out of range for universe of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    /// A universe must contain at least one element.
    #[error("universe must contain at least one element")]
    EmptyUniverse,
    /// Universe element names and parameter names must be unique and non-empty.
    #[error("invalid or duplicate name {0:?}")]
    InvalidName(String),
    /// An unknown parameter name was supplied to a soft set.
    #[error("unknown parameter {0:?}")]
    UnknownParameter(String),
    /// A parameter was assigned a value twice.
    #[error("duplicate assignment for parameter {0:?}")]
    DuplicateParameter(String),
}

fn check_names(names: &[String]) -> Result<(), SoftSetError> {
    for (i, name) in names.iter().enumerate() {
        if name.is_empty() || names[..i].contains(name) {
            return Err(SoftSetError::InvalidName(name.clone()));
        }
    }
    Ok(())
}

/// An ordered, finite universe of named alternatives.
///
/// Cloning is cheap: the element list is shared behind an `Arc`. Two universes
/// compare equal when their element lists are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Universe {
    names: Arc<Vec<String>>,
}

impl Universe {
    /// Builds a universe from element names. Names must be non-empty and
    /// pairwise distinct, and at least one element is required.
    pub fn new<I, S>(names: I) -> Result<Self, SoftSetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(SoftSetError::EmptyUniverse);
        }
        check_names(&names)?;
        Ok(Universe {
            names: Arc::new(names),
        })
    }

    /// Convenience constructor for the universe `{u1, ..., uN}`.
    pub fn numbered(size: usize) -> Result<Self, SoftSetError> {
        Universe::new((1..=size).map(|i| format!("u{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty universes
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> Option<&str> {
        self.names.get(index).map(String::as_str)
    }

    /// Index of an element name, if present. Ordering authority is always the
    /// universe list, never lexicographic order of the names.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn same_as(&self, other: &Universe) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Universe({})", self.names.join(", "))
    }
}

const WORD_BITS: usize = 64;

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A subset of a universe, stored as an index bitmask.
///
/// Enumeration order is ascending index order, so equality and the serialized
/// form are deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct Subset {
    universe: Universe,
    words: Vec<u64>,
}

impl Subset {
    pub fn empty(universe: &Universe) -> Self {
        Subset {
            universe: universe.clone(),
            words: vec![0; word_count(universe.len())],
        }
    }

    pub fn full(universe: &Universe) -> Self {
        Subset::empty(universe).complement()
    }

    /// Builds a subset from element indices. Duplicates are allowed and
    /// collapse; out-of-range indices are rejected.
    pub fn from_indices<I>(universe: &Universe, indices: I) -> Result<Self, SoftSetError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut subset = Subset::empty(universe);
        for index in indices {
            if index >= universe.len() {
                return Err(SoftSetError::IndexOutOfRange {
                    index,
                    size: universe.len(),
                });
            }
            subset.words[index / WORD_BITS] |= 1 << (index % WORD_BITS);
        }
        Ok(subset)
    }

    /// Builds a subset from element names, rejecting names outside the
    /// universe.
    pub fn from_names<'a, I>(universe: &Universe, names: I) -> Result<Self, SoftSetError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut indices = Vec::new();
        for name in names {
            match universe.index_of(name) {
                Some(i) => indices.push(i),
                None => return Err(SoftSetError::UnknownElement(name.to_string())),
            }
        }
        Subset::from_indices(universe, indices)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.universe.len()
            && self.words[index / WORD_BITS] & (1 << (index % WORD_BITS)) != 0
    }

    /// Number of elements in the subset.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe.len()
    }

    /// Member indices in ascending order.
    pub fn indices(&self) -> Vec<usize> {
        (0..self.universe.len())
            .filter(|&i| self.contains(i))
            .collect()
    }

    /// Member names in ascending universe-index order.
    pub fn names(&self) -> Vec<&str> {
        self.indices()
            .into_iter()
            .map(|i| self.universe.name(i).expect("index in range"))
            .collect()
    }

    fn check_same_universe(&self, other: &Subset) -> Result<(), SoftSetError> {
        if self.universe.same_as(&other.universe) {
            Ok(())
        } else {
            Err(SoftSetError::UniverseMismatch)
        }
    }

    pub fn union(&self, other: &Subset) -> Result<Subset, SoftSetError> {
        self.check_same_universe(other)?;
        Ok(self.zip_words(other, |a, b| a | b))
    }

    pub fn intersect(&self, other: &Subset) -> Result<Subset, SoftSetError> {
        self.check_same_universe(other)?;
        Ok(self.zip_words(other, |a, b| a & b))
    }

    /// Set difference `self \ other`.
    pub fn difference(&self, other: &Subset) -> Result<Subset, SoftSetError> {
        self.check_same_universe(other)?;
        Ok(self.zip_words(other, |a, b| a & !b))
    }

    pub fn complement(&self) -> Subset {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        mask_tail(&mut words, self.universe.len());
        Subset {
            universe: self.universe.clone(),
            words,
        }
    }

    /// True when every member of `self` is a member of `other`.
    pub fn is_subset(&self, other: &Subset) -> Result<bool, SoftSetError> {
        self.check_same_universe(other)?;
        Ok(self.is_subset_unchecked(other))
    }

    fn zip_words(&self, other: &Subset, op: impl Fn(u64, u64) -> u64) -> Subset {
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| op(a, b))
            .collect();
        Subset {
            universe: self.universe.clone(),
            words,
        }
    }

    // Cells of one payoff table are guaranteed to share a universe, so the
    // solver paths skip the runtime check.
    pub(crate) fn union_unchecked(&self, other: &Subset) -> Subset {
        debug_assert!(self.universe.same_as(&other.universe));
        self.zip_words(other, |a, b| a | b)
    }

    pub(crate) fn intersect_unchecked(&self, other: &Subset) -> Subset {
        debug_assert!(self.universe.same_as(&other.universe));
        self.zip_words(other, |a, b| a & b)
    }

    pub(crate) fn difference_unchecked(&self, other: &Subset) -> Subset {
        debug_assert!(self.universe.same_as(&other.universe));
        self.zip_words(other, |a, b| a & !b)
    }

    pub(crate) fn is_subset_unchecked(&self, other: &Subset) -> bool {
        debug_assert!(self.universe.same_as(&other.universe));
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == 0)
    }
}

fn mask_tail(words: &mut [u64], len: usize) {
    let used = len % WORD_BITS;
    if used != 0 {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << used) - 1;
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(", "))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset{self}")
    }
}

/// A soft set over a universe: an ordered parameter list `E` together with a
/// total approximate function `E -> P(U)`.
#[derive(Clone, PartialEq, Eq)]
pub struct SoftSet {
    universe: Universe,
    parameters: Vec<String>,
    values: Vec<Subset>,
}

impl SoftSet {
    /// Builds a soft set from parameter names and `(parameter, value)`
    /// assignments. Parameters missing from `assignments` are empty-valued;
    /// unknown or repeated parameters are rejected.
    pub fn new<I>(
        universe: &Universe,
        parameters: Vec<String>,
        assignments: I,
    ) -> Result<Self, SoftSetError>
    where
        I: IntoIterator<Item = (String, Subset)>,
    {
        check_names(&parameters)?;
        let mut values = vec![Subset::empty(universe); parameters.len()];
        let mut assigned = vec![false; parameters.len()];
        for (name, value) in assignments {
            let index = parameters
                .iter()
                .position(|p| *p == name)
                .ok_or_else(|| SoftSetError::UnknownParameter(name.clone()))?;
            if assigned[index] {
                return Err(SoftSetError::DuplicateParameter(name));
            }
            if !value.universe().same_as(universe) {
                return Err(SoftSetError::UniverseMismatch);
            }
            values[index] = value;
            assigned[index] = true;
        }
        Ok(SoftSet {
            universe: universe.clone(),
            parameters,
            values,
        })
    }

    /// The empty soft set over the given parameters (every value is the empty
    /// subset).
    pub fn empty(universe: &Universe, parameters: Vec<String>) -> Result<Self, SoftSetError> {
        SoftSet::new(universe, parameters, std::iter::empty())
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    /// The value assigned to a parameter name, if the parameter exists.
    pub fn value(&self, parameter: &str) -> Option<&Subset> {
        self.parameters
            .iter()
            .position(|p| p == parameter)
            .map(|i| &self.values[i])
    }

    pub fn value_at(&self, index: usize) -> Option<&Subset> {
        self.values.get(index)
    }

    /// All `(parameter, value)` pairs, including empty-valued ones.
    pub fn pairs(&self) -> impl Iterator<Item = (&str, &Subset)> {
        self.parameters
            .iter()
            .map(String::as_str)
            .zip(self.values.iter())
    }

    /// True when every parameter maps to the empty subset.
    pub fn is_empty_soft_set(&self) -> bool {
        self.values.iter().all(Subset::is_empty)
    }

    fn check_compatible(&self, other: &SoftSet) -> Result<(), SoftSetError> {
        if !self.universe.same_as(&other.universe) {
            return Err(SoftSetError::UniverseMismatch);
        }
        if self.parameters != other.parameters {
            return Err(SoftSetError::ParameterMismatch);
        }
        Ok(())
    }

    /// Parameter-wise union `f(x) = f_S(x) ∪ f_T(x)`.
    pub fn union(&self, other: &SoftSet) -> Result<SoftSet, SoftSetError> {
        self.check_compatible(other)?;
        Ok(self.zip_values(other, Subset::union_unchecked))
    }

    /// Parameter-wise intersection `f(x) = f_S(x) ∩ f_T(x)`.
    pub fn intersect(&self, other: &SoftSet) -> Result<SoftSet, SoftSetError> {
        self.check_compatible(other)?;
        Ok(self.zip_values(other, Subset::intersect_unchecked))
    }

    /// Parameter-wise complement `f(x) = U \ f_S(x)`.
    pub fn complement(&self) -> SoftSet {
        SoftSet {
            universe: self.universe.clone(),
            parameters: self.parameters.clone(),
            values: self.values.iter().map(Subset::complement).collect(),
        }
    }

    /// True when `f_S(x) ⊆ f_T(x)` for every parameter `x`.
    pub fn is_soft_subset(&self, other: &SoftSet) -> Result<bool, SoftSetError> {
        self.check_compatible(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .all(|(a, b)| a.is_subset_unchecked(b)))
    }

    fn zip_values(&self, other: &SoftSet, op: impl Fn(&Subset, &Subset) -> Subset) -> SoftSet {
        SoftSet {
            universe: self.universe.clone(),
            parameters: self.parameters.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| op(a, b))
                .collect(),
        }
    }
}

// Soft sets print as the usual pair list, dropping empty-valued parameters.
impl fmt::Debug for SoftSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .pairs()
            .filter(|(_, v)| !v.is_empty())
            .map(|(p, v)| format!("({p}, {v})"))
            .collect();
        write!(f, "{{{}}}", pairs.join(", "))
    }
}
