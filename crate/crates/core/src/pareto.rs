//! Pareto representations: `x ≻ y` iff every utility weakly prefers `x` and at
//! least one strictly does.

use serde::{Deserialize, Serialize};

use crate::embedding::{MultiUtility, Semantics};
use crate::error::{Error, Result};
use crate::realizer::{build_realizer, Realizer};
use crate::relation::Relation;
use crate::semiorder::{check_epsilon, f_eval, Grid};

pub fn pareto_dominates(u: &[f64], w: &[f64]) -> Result<bool> {
    if u.len() != w.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: w.len(),
        });
    }
    let weakly = u.iter().zip(w).all(|(a, b)| a >= b);
    let strictly = u.iter().zip(w).any(|(a, b)| a > b);
    Ok(weakly && strictly)
}

/// Rank utilities of the realizer of `Q ∪ Δ`, read with Pareto semantics.
pub fn build_pareto_representation(q: &Relation) -> Result<MultiUtility> {
    if let Some(property) = q.strict_order_violation() {
        return Err(Error::NotStrictPartialOrder { property });
    }
    let realizer = build_realizer(&q.reflexive_closure())?;
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(realizer.len());
    for order in &realizer.orders {
        let column = order.rank_utility();
        if !columns.contains(&column) {
            columns.push(column);
        }
    }
    let v = MultiUtility::new(q.ground(), columns, Semantics::Pareto)?;
    if !verify_pareto_embedding(q, &v) {
        return Err(Error::InternalContractViolation(
            "rank utilities do not Pareto-represent the order".into(),
        ));
    }
    Ok(v)
}

/// `q` equals the Pareto dominance relation of the columns of `v`; the
/// semantics tag of `v` is not consulted.
pub fn verify_pareto_embedding(q: &Relation, v: &MultiUtility) -> bool {
    std::sync::Arc::ptr_eq(q.ground(), v.ground()) && v.pareto_strict() == *q
}

/// Why a pair breaks `Q = (⋃ Q_α) ∩ (⋂ P_α)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionCase {
    /// `(x, y) ∈ Q` but missing from the right-hand side.
    InQ,
    /// `(y, x) ∈ Q` and `(x, y)` still appears on the right-hand side.
    ReverseInQ,
    /// `x`, `y` incomparable and `(x, y)` still appears on the right-hand side.
    Incomparable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionFailure {
    pub x: usize,
    pub y: usize,
    pub case: DecompositionCase,
}

/// Compares `q` with the union of the members' strict parts intersected with
/// the intersection of their weak parts, pair by pair.
pub fn decomposition_failures(
    q: &Relation,
    realizer: &Realizer,
) -> Result<Vec<DecompositionFailure>> {
    let ground = q.ground();
    let mut union_strict = Relation::empty(ground);
    let mut meet_weak = Relation::full(ground);
    for order in &realizer.orders {
        union_strict = union_strict.union(&order.strict())?;
        meet_weak = meet_weak.intersection(&order.relation())?;
    }
    let rhs = union_strict.intersection(&meet_weak)?;
    let n = q.len();
    let mut failures = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let case = match (q.contains(x, y), rhs.contains(x, y)) {
                (true, false) => DecompositionCase::InQ,
                (false, true) if q.contains(y, x) => DecompositionCase::ReverseInQ,
                (false, true) => DecompositionCase::Incomparable,
                _ => continue,
            };
            failures.push(DecompositionFailure { x, y, case });
        }
    }
    Ok(failures)
}

pub fn decomposition_check(q: &Relation, realizer: &Realizer) -> bool {
    decomposition_failures(q, realizer).is_ok_and(|f| f.is_empty())
}

/// One sampled function of the real line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SampledColumn {
    /// Member `α` of the semiorder bump family.
    Alpha { alpha: f64 },
    /// Values at each point of the probe grid, in grid order.
    Table { table: TableValues },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableValues {
    pub values: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailedSide {
    StrictUnion,
    WeakIntersection,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub x: f64,
    pub y: f64,
    pub failed_side: FailedSide,
    /// Whether `(x, y)` lies in `Q = {x > y + ε}`.
    pub in_q: bool,
}

/// Searches the grid for a pair breaking
/// `Q = (⋃ {v(x) > v(y)}) ∩ (⋂ {v(x) ≥ v(y)})` for `Q = {x > y + ε}`.
///
/// Pairs are visited by increasing distance from `(ε, 0)`, ties by grid index,
/// and the first violation is returned. For a pair of `Q` the reported side is
/// the one that excludes it; for a pair outside `Q` that both sides admit it
/// is the weak intersection, which should have excluded it.
pub fn continuous_pareto_probe(
    family: &[SampledColumn],
    eps: f64,
    grid: &Grid,
) -> Result<Option<Violation>> {
    check_epsilon(eps)?;
    grid.validate()?;
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let points = grid.points();
    let tables: Vec<Vec<f64>> = family
        .iter()
        .enumerate()
        .map(|(k, column)| match column {
            SampledColumn::Alpha { alpha } => {
                Ok(points.iter().map(|&x| f_eval((x - alpha) / eps)).collect())
            }
            SampledColumn::Table { table } if table.values.len() == points.len() => {
                Ok(table.values.clone())
            }
            SampledColumn::Table { table } => Err(Error::Invalid {
                field: format!("family[{k}].table.values"),
                message: format!(
                    "expected {} values (one per grid point), got {}",
                    points.len(),
                    table.values.len()
                ),
            }),
        })
        .collect::<Result<_>>()?;

    let m = points.len();
    let mut order: Vec<(f64, usize, usize)> = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| {
            let dx = points[i] - eps;
            let dy = points[j];
            (dx * dx + dy * dy, i, j)
        })
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    for (_, i, j) in order {
        let (x, y) = (points[i], points[j]);
        let in_q = x > y + eps;
        let strict_union = tables.iter().any(|t| t[i] > t[j]);
        let weak_meet = tables.iter().all(|t| t[i] >= t[j]);
        let failed_side = match (in_q, strict_union, weak_meet) {
            (true, false, _) => FailedSide::StrictUnion,
            (true, true, false) => FailedSide::WeakIntersection,
            (false, true, true) => FailedSide::WeakIntersection,
            _ => continue,
        };
        return Ok(Some(Violation {
            x,
            y,
            failed_side,
            in_q,
        }));
    }
    Ok(None)
}
