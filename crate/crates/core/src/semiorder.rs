//! The threshold semiorder on the real line, `(x, y) ∈ P ⟺ x + ε ≥ y`, and
//! its continuous embedding by the bump family
//!
//! ```text
//! v_α(x) = f((x − α) / ε),   f(t) = t + (1 − t²)·χ(t),   χ = 1 on (−1, 1)
//! ```
//!
//! Membership is certified on sample grids: pairs in `P` by the explicit
//! witness `α = y − ε`, pairs outside `P` by a Lipschitz branch-and-bound over
//! all `α`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for floating-point comparisons on grids.
pub const TOLERANCE: f64 = 1e-12;

/// Lipschitz constant of `f`; its slope is `1 − 2t ∈ (−1, 3)` on the bump and 1 elsewhere.
pub const F_LIPSCHITZ: f64 = 3.0;

const MAX_BISECTIONS: u32 = 64;

pub fn f_eval(t: f64) -> f64 {
    if t > -1.0 && t < 1.0 {
        t + (1.0 - t * t)
    } else {
        t
    }
}

pub fn check_epsilon(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::NonpositiveEpsilon(eps))
    }
}

#[inline]
fn v(x: f64, alpha: f64, eps: f64) -> f64 {
    f_eval((x - alpha) / eps)
}

/// Member `α` of the family evaluated at `x`.
pub fn v_alpha(x: f64, alpha: f64, eps: f64) -> Result<f64> {
    check_epsilon(eps)?;
    Ok(v(x, alpha, eps))
}

pub fn semiorder_pair(x: f64, y: f64, eps: f64) -> bool {
    x + eps >= y
}

/// `α = y − ε` when `(x, y) ∈ P`; then `v_α(x) ≥ v_α(y) = 1`.
pub fn witness_alpha(x: f64, y: f64, eps: f64) -> Option<f64> {
    semiorder_pair(x, y, eps).then_some(y - eps)
}

/// Evenly spaced samples `min, min + step, ..., ≤ max`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(min: f64, max: f64, step: f64) -> Result<Grid> {
        let grid = Grid { min, max, step };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |message: &str| Error::Invalid {
            field: "grid".into(),
            message: message.into(),
        };
        if !(self.min.is_finite() && self.max.is_finite() && self.step.is_finite()) {
            return Err(invalid("bounds and step must be finite"));
        }
        if self.step <= 0.0 {
            return Err(invalid("step must be positive"));
        }
        if self.max < self.min {
            return Err(invalid("max must not be below min"));
        }
        if (self.max - self.min) / self.step > 1e7 {
            return Err(invalid("more than 10^7 points"));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        ((self.max - self.min) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, i: usize) -> f64 {
        self.min + i as f64 * self.step
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }
}

/// The members `{v_α : α ∈ alpha_grid}` of the bump family.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiorderFamily {
    epsilon: f64,
    alpha_grid: Vec<f64>,
}

impl SemiorderFamily {
    pub fn new(epsilon: f64, alpha_grid: Vec<f64>) -> Result<SemiorderFamily> {
        check_epsilon(epsilon)?;
        if alpha_grid.iter().any(|a| !a.is_finite()) {
            return Err(Error::Invalid {
                field: "alpha_grid".into(),
                message: "values must be finite".into(),
            });
        }
        if alpha_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid {
                field: "alpha_grid".into(),
                message: "values must be sorted and distinct".into(),
            });
        }
        Ok(SemiorderFamily {
            epsilon,
            alpha_grid,
        })
    }

    /// `count` evenly spaced parameters covering `[min, max]`.
    pub fn evenly_spaced(
        epsilon: f64,
        min: f64,
        max: f64,
        count: usize,
    ) -> Result<SemiorderFamily> {
        let alphas = match count {
            0 => Vec::new(),
            1 => vec![(min + max) / 2.0],
            _ => {
                let step = (max - min) / (count - 1) as f64;
                (0..count).map(|i| min + i as f64 * step).collect()
            }
        };
        SemiorderFamily::new(epsilon, alphas)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn alpha_grid(&self) -> &[f64] {
        &self.alpha_grid
    }

    /// Largest spacing between consecutive parameters (0 for fewer than two).
    pub fn max_gap(&self) -> f64 {
        self.alpha_grid
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }
}

/// Parameters `α` of the family whose member weakly prefers `x` to `x + ε`.
///
/// Analytically the only such `α` on the whole line is `α = x`.
pub fn boundary_witnesses(x: f64, eps: f64, alphas: &[f64]) -> Vec<f64> {
    let y = x + eps;
    alphas
        .iter()
        .copied()
        .filter(|&a| v(x, a, eps) >= v(y, a, eps) - TOLERANCE)
        .collect()
}

/// Outcome of certifying `min_α [v_α(y) − v_α(x)] > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Separation {
    /// Smallest sampled value of the difference.
    pub min_sampled: f64,
    /// Certified lower bound of the difference over all `α`.
    pub lower_bound: f64,
    pub certified: bool,
}

/// Branch-and-bound over `α` using the Lipschitz bound `2·3/ε` of
/// `α ↦ v_α(y) − v_α(x)`.
///
/// Outside `[x − ε, y + ε]` both points sit on the identity branch and the
/// difference is the constant `(y − x)/ε`, so only that window is searched.
pub fn certify_separation(x: f64, y: f64, eps: f64) -> Separation {
    let lipschitz = 2.0 * F_LIPSCHITZ / eps;
    let g = |a: f64| v(y, a, eps) - v(x, a, eps);
    let lo = x.min(y) - eps;
    let hi = x.max(y) + eps;
    let outside = (y - x) / eps;
    let mut min_sampled = outside;
    let mut lower_bound = outside;
    let mut certified = outside > 0.0;

    let pieces = (((hi - lo) / (eps / 8.0)).ceil() as usize).max(1);
    let width = (hi - lo) / pieces as f64;
    let mut stack: Vec<(f64, f64, f64, f64, u32)> = Vec::with_capacity(64);
    let mut left = lo;
    let mut g_left = g(lo);
    for i in 1..=pieces {
        let right = if i == pieces {
            hi
        } else {
            lo + i as f64 * width
        };
        let g_right = g(right);
        stack.push((left, right, g_left, g_right, 0));
        left = right;
        g_left = g_right;
    }
    while let Some((a, b, ga, gb, depth)) = stack.pop() {
        min_sampled = min_sampled.min(ga).min(gb);
        if ga <= 0.0 || gb <= 0.0 {
            certified = false;
            lower_bound = lower_bound.min(ga.min(gb));
            continue;
        }
        // lower envelope of the two Lipschitz cones
        let bound = (ga + gb - lipschitz * (b - a)) / 2.0;
        if bound > 0.0 {
            lower_bound = lower_bound.min(bound);
            continue;
        }
        if depth >= MAX_BISECTIONS {
            certified = false;
            lower_bound = lower_bound.min(bound);
            continue;
        }
        let m = 0.5 * (a + b);
        let gm = g(m);
        stack.push((a, m, ga, gm, depth + 1));
        stack.push((m, b, gm, gb, depth + 1));
    }
    Separation {
        min_sampled,
        lower_bound,
        certified: certified && lower_bound > 0.0,
    }
}

/// One sampled pair of a grid verification.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairRow {
    pub x: f64,
    pub y: f64,
    pub in_p: bool,
    pub witness_alpha: Option<f64>,
    /// In `P`: `v_w(x) − v_w(y)` at the witness. Outside `P`: certified lower
    /// bound of `min_α v_α(y) − v_α(x)`.
    pub margin: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub epsilon: f64,
    pub pairs_checked: usize,
    pub in_p: usize,
    pub not_in_p: usize,
    pub passed: usize,
    pub failed: usize,
    pub min_witness_margin: Option<f64>,
    pub min_separation: Option<f64>,
    pub boundary_points_checked: usize,
    pub boundary_failures: usize,
    #[serde(skip)]
    pub rows: Vec<PairRow>,
}

impl FamilyReport {
    pub fn first_failure(&self) -> Option<&PairRow> {
        self.rows.iter().find(|r| !r.passed)
    }
}

/// Checks every pair of `pair_grid × pair_grid` and, for each `x` on the pair
/// grid, that the family's boundary witnesses for `(x, x + ε)` lie within one
/// parameter step of `x`.
///
/// Pairs within [`TOLERANCE`] of the boundary line `y = x + ε` count as
/// members of `P`.
pub fn grid_report(family: &SemiorderFamily, pair_grid: &Grid) -> Result<FamilyReport> {
    pair_grid.validate()?;
    let eps = family.epsilon();
    let points = pair_grid.points();
    let mut report = FamilyReport {
        epsilon: eps,
        pairs_checked: 0,
        in_p: 0,
        not_in_p: 0,
        passed: 0,
        failed: 0,
        min_witness_margin: None,
        min_separation: None,
        boundary_points_checked: 0,
        boundary_failures: 0,
        rows: Vec::with_capacity(points.len() * points.len()),
    };
    for &x in &points {
        for &y in &points {
            let in_p = semiorder_pair(x, y, eps) || (x + eps - y).abs() <= TOLERANCE;
            let row = if in_p {
                let alpha = y - eps;
                let margin = v(x, alpha, eps) - v(y, alpha, eps);
                report.in_p += 1;
                report.min_witness_margin = Some(
                    report
                        .min_witness_margin
                        .map_or(margin, |m: f64| m.min(margin)),
                );
                PairRow {
                    x,
                    y,
                    in_p,
                    witness_alpha: Some(alpha),
                    margin,
                    passed: margin >= -TOLERANCE,
                }
            } else {
                let sep = certify_separation(x, y, eps);
                report.not_in_p += 1;
                report.min_separation = Some(
                    report
                        .min_separation
                        .map_or(sep.lower_bound, |m: f64| m.min(sep.lower_bound)),
                );
                PairRow {
                    x,
                    y,
                    in_p,
                    witness_alpha: None,
                    margin: sep.lower_bound,
                    passed: sep.certified,
                }
            };
            if row.passed {
                report.passed += 1;
            } else {
                report.failed += 1;
            }
            report.pairs_checked += 1;
            report.rows.push(row);
        }
    }

    let reach = family.max_gap();
    for &x in &points {
        let witnesses = boundary_witnesses(x, eps, family.alpha_grid());
        let contains_x = family.alpha_grid().contains(&x);
        let near = witnesses.iter().all(|&a| (a - x).abs() <= reach);
        let unique = witnesses.len() <= 1;
        if !(near && unique && (!contains_x || witnesses.contains(&x))) {
            report.boundary_failures += 1;
        }
        report.boundary_points_checked += 1;
    }
    Ok(report)
}

/// [`grid_report`], turning the first failed pair into an error.
pub fn verify_family_on_grid(family: &SemiorderFamily, pair_grid: &Grid) -> Result<FamilyReport> {
    let report = grid_report(family, pair_grid)?;
    if let Some(row) = report.first_failure() {
        return Err(Error::ToleranceViolation {
            x: row.x,
            y: row.y,
            margin: row.margin,
        });
    }
    if report.boundary_failures > 0 {
        return Err(Error::InternalContractViolation(format!(
            "{} boundary points have a non-unique witness",
            report.boundary_failures
        )));
    }
    Ok(report)
}

/// A boundary pair `(x, x + ε)` of `P` that no member of a finite subfamily
/// represents.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FailureWitness {
    pub x: f64,
    pub y: f64,
}

/// Every listed member strictly prefers `x + ε` to `x`.
pub fn defeats_subfamily(alphas: &[f64], x: f64, eps: f64) -> bool {
    let y = x + eps;
    alphas.iter().all(|&a| v(x, a, eps) < v(y, a, eps))
}

/// Picks `x` at the midpoint of the widest gap between the given parameters
/// (one unit above the largest when there is no gap, 0 when there are none)
/// and confirms that the pair `(x, x + ε)` defeats the whole subfamily.
pub fn countable_failure_witness(alphas: &[f64], eps: f64) -> Result<FailureWitness> {
    check_epsilon(eps)?;
    if alphas.iter().any(|a| !a.is_finite()) {
        return Err(Error::Invalid {
            field: "alphas".into(),
            message: "values must be finite".into(),
        });
    }
    let mut sorted = alphas.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();

    let widest = sorted
        .windows(2)
        .map(|w| (w[1] - w[0], 0.5 * (w[0] + w[1])))
        .fold(None, |best: Option<(f64, f64)>, cand| match best {
            Some(b) if b.0 >= cand.0 => Some(b),
            _ => Some(cand),
        });
    let mut candidates = Vec::with_capacity(2);
    match (widest, sorted.last()) {
        (Some((gap, mid)), _) if gap > 0.0 => candidates.push(mid),
        (_, Some(&max)) => candidates.push(max + 1.0),
        (_, None) => candidates.push(0.0),
    }
    // every member is on its identity branch at both points
    if let Some(&max) = sorted.last() {
        candidates.push(max + 2.0 * eps);
    }
    for x in candidates {
        if !sorted.contains(&x) && defeats_subfamily(&sorted, x, eps) {
            return Ok(FailureWitness { x, y: x + eps });
        }
    }
    Err(Error::InternalContractViolation(
        "no boundary pair defeats the subfamily".into(),
    ))
}
