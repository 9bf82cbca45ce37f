//! Finite binary relations stored as dense bit matrices.
//!
//! A [`Relation`] over a [`GroundSet`] of `n` elements keeps one `u64` row per
//! element: bit `j` of row `i` is set iff `(x_i, x_j)` belongs to the relation.
//! Weak relations (`P`, "at least as good as") and strict relations (`Q`) share
//! this carrier and are exchanged with [`Relation::polar`], `P = (Q*)^c`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported ground set; one matrix row must fit in a `u64`.
pub const MAX_ELEMENTS: usize = 64;

/// Labelled, indexed set of elements `x_0 .. x_{n-1}`.
///
/// Relations refer to their ground set through an `Arc`, and two relations may
/// only be combined when they point at the same instance.
#[derive(Debug)]
pub struct GroundSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Arc<GroundSet>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        if labels.len() > MAX_ELEMENTS {
            return Err(Error::TooManyElements(labels.len()));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Arc::new(GroundSet { labels, index }))
    }

    /// Ground set labelled `x0, x1, ...`.
    pub fn indexed(n: usize) -> Result<Arc<GroundSet>> {
        GroundSet::new((0..n).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Bit mask with one bit per element.
    pub fn full_mask(&self) -> u64 {
        full_mask(self.len())
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Order-theoretic flags of a relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub reflexive: bool,
    pub asymmetric: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
    pub negatively_transitive: bool,
    pub complete: bool,
    pub partial_order: bool,
    pub linear_order: bool,
}

#[derive(Clone)]
pub struct Relation {
    ground: Arc<GroundSet>,
    rows: Vec<u64>,
}

impl Relation {
    pub fn empty(ground: &Arc<GroundSet>) -> Relation {
        Relation {
            ground: Arc::clone(ground),
            rows: vec![0; ground.len()],
        }
    }

    pub fn full(ground: &Arc<GroundSet>) -> Relation {
        Relation {
            ground: Arc::clone(ground),
            rows: vec![ground.full_mask(); ground.len()],
        }
    }

    /// The diagonal `Δ_X`.
    pub fn identity(ground: &Arc<GroundSet>) -> Relation {
        Relation {
            ground: Arc::clone(ground),
            rows: (0..ground.len()).map(|i| 1u64 << i).collect(),
        }
    }

    pub fn from_pairs<I>(ground: &Arc<GroundSet>, pairs: I) -> Relation
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut r = Relation::empty(ground);
        for (i, j) in pairs {
            r.insert(i, j);
        }
        r
    }

    pub fn from_fn(ground: &Arc<GroundSet>, mut f: impl FnMut(usize, usize) -> bool) -> Relation {
        let n = ground.len();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| f(i, j))
                    .fold(0u64, |row, j| row | (1 << j))
            })
            .collect();
        Relation {
            ground: Arc::clone(ground),
            rows,
        }
    }

    /// Builds a relation from raw rows; bits beyond the ground set are dropped.
    pub fn from_rows(ground: &Arc<GroundSet>, rows: Vec<u64>) -> Relation {
        assert_eq!(rows.len(), ground.len(), "one row per element");
        let mask = ground.full_mask();
        Relation {
            ground: Arc::clone(ground),
            rows: rows.into_iter().map(|r| r & mask).collect(),
        }
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        assert!(j < self.len(), "element index {j} out of range");
        self.rows[i] |= 1 << j;
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        self.rows[i] &= !(1 << j);
    }

    /// Successors of `i` as a bit mask.
    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Number of pairs in the relation.
    pub fn count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &row)| bits(row).map(move |j| (i, j)))
    }

    /// `x ∼ y`: neither `(x, y)` nor `(y, x)` is in the relation.
    pub fn incomparable(&self, i: usize, j: usize) -> bool {
        !self.contains(i, j) && !self.contains(j, i)
    }

    /// Reflection across the diagonal, `R*`.
    pub fn dual(&self) -> Relation {
        Relation::from_fn(&self.ground, |i, j| self.contains(j, i))
    }

    pub fn complement(&self) -> Relation {
        let mask = self.ground.full_mask();
        Relation {
            ground: Arc::clone(&self.ground),
            rows: self.rows.iter().map(|r| !r & mask).collect(),
        }
    }

    /// `(R*)^c`; maps a strict relation to its weak counterpart and back.
    pub fn polar(&self) -> Relation {
        self.dual().complement()
    }

    pub fn transitive_closure(&self) -> Relation {
        let mut rows = self.rows.clone();
        for k in 0..rows.len() {
            let through = rows[k];
            for row in rows.iter_mut() {
                if *row >> k & 1 == 1 {
                    *row |= through;
                }
            }
        }
        Relation {
            ground: Arc::clone(&self.ground),
            rows,
        }
    }

    /// Removes the diagonal.
    pub fn strict_part(&self) -> Relation {
        Relation {
            ground: Arc::clone(&self.ground),
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(i, r)| r & !(1u64 << i))
                .collect(),
        }
    }

    /// Adds the diagonal.
    pub fn reflexive_closure(&self) -> Relation {
        Relation {
            ground: Arc::clone(&self.ground),
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(i, r)| r | (1u64 << i))
                .collect(),
        }
    }

    fn zip_with(&self, other: &Relation, op: impl Fn(u64, u64) -> u64) -> Result<Relation> {
        self.check_ground(other)?;
        Ok(Relation {
            ground: Arc::clone(&self.ground),
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &Relation) -> Result<Relation> {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &Relation) -> Result<bool> {
        self.check_ground(other)?;
        Ok(self
            .rows
            .iter()
            .zip(&other.rows)
            .all(|(&a, &b)| a & !b == 0))
    }

    pub fn check_ground(&self, other: &Relation) -> Result<()> {
        if Arc::ptr_eq(&self.ground, &other.ground) {
            Ok(())
        } else {
            Err(Error::GroundMismatch)
        }
    }

    pub fn is_reflexive(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r >> i & 1 == 1)
    }

    /// No pair appears in both directions; in particular irreflexive.
    pub fn is_asymmetric(&self) -> bool {
        self.pairs().all(|(i, j)| !self.contains(j, i))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.pairs().all(|(i, j)| i == j || !self.contains(j, i))
    }

    pub fn is_transitive(&self) -> bool {
        self.rows
            .iter()
            .all(|&row| bits(row).all(|j| self.rows[j] & !row == 0))
    }

    /// The complement of the relation is transitive.
    pub fn is_negatively_transitive(&self) -> bool {
        self.complement().is_transitive()
    }

    /// `R ∪ R* = X × X`.
    pub fn is_complete(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (i..n).all(|j| self.contains(i, j) || self.contains(j, i)))
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_reflexive() && self.is_antisymmetric() && self.is_transitive()
    }

    pub fn properties(&self) -> PropertyReport {
        let reflexive = self.is_reflexive();
        let antisymmetric = self.is_antisymmetric();
        let transitive = self.is_transitive();
        let complete = self.is_complete();
        let partial_order = reflexive && antisymmetric && transitive;
        PropertyReport {
            reflexive,
            asymmetric: self.is_asymmetric(),
            antisymmetric,
            transitive,
            negatively_transitive: self.is_negatively_transitive(),
            complete,
            partial_order,
            linear_order: partial_order && complete,
        }
    }

    /// Returns the name of the first partial-order axiom that fails.
    pub(crate) fn partial_order_violation(&self) -> Option<&'static str> {
        if !self.is_reflexive() {
            Some("reflexive")
        } else if !self.is_antisymmetric() {
            Some("antisymmetric")
        } else if !self.is_transitive() {
            Some("transitive")
        } else {
            None
        }
    }

    pub(crate) fn strict_order_violation(&self) -> Option<&'static str> {
        if !self.is_asymmetric() {
            Some("asymmetric")
        } else if !self.is_transitive() {
            Some("transitive")
        } else {
            None
        }
    }

    /// Pairs `(x, y)` of the strict part with no `z` strictly between them.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let strict = self.strict_part();
        strict
            .pairs()
            .filter(|&(x, y)| !bits(strict.row(x)).any(|z| z != y && strict.contains(z, y)))
            .collect()
    }

    /// Same pairs under a relabelling `perm`: `(i, j)` becomes `(perm[i], perm[j])`.
    pub fn permuted(&self, perm: &[usize]) -> Relation {
        let mut out = Relation::empty(&self.ground);
        for (i, j) in self.pairs() {
            out.insert(perm[i], perm[j]);
        }
        out
    }

    pub fn labelled_pairs(&self) -> Vec<(String, String)> {
        self.pairs()
            .map(|(i, j)| {
                (
                    self.ground.label(i).to_owned(),
                    self.ground.label(j).to_owned(),
                )
            })
            .collect()
    }
}

impl PartialEq for Relation {
    fn eq(&self, other: &Relation) -> bool {
        Arc::ptr_eq(&self.ground, &other.ground) && self.rows == other.rows
    }
}

impl Eq for Relation {}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(
                self.pairs()
                    .map(|(i, j)| (self.ground.label(i), self.ground.label(j))),
            )
            .finish()
    }
}
