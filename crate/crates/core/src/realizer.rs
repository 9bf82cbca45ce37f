//! Linear extensions, realizers and order dimension.
//!
//! A realizer of a partial order `P` is a family of linear orders whose
//! intersection is `P`. [`build_realizer`] produces one extension per
//! incomparable ordered pair, which also guarantees that every incomparable
//! pair `(x, y)` appears in some member. [`order_dimension`] finds a smallest
//! realizer by exhaustive search.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::relation::{bits, GroundSet, Relation};
use crate::topology::FiniteTopology;

/// A total ranking of the ground set, highest-ranked element first.
#[derive(Clone, Debug)]
pub struct LinearOrder {
    ground: Arc<GroundSet>,
    ranking: Vec<usize>,
}

impl PartialEq for LinearOrder {
    fn eq(&self, other: &LinearOrder) -> bool {
        Arc::ptr_eq(&self.ground, &other.ground) && self.ranking == other.ranking
    }
}

impl Eq for LinearOrder {}

impl LinearOrder {
    pub fn new(ground: &Arc<GroundSet>, ranking: Vec<usize>) -> Result<LinearOrder> {
        let n = ground.len();
        let mut seen = 0u64;
        for &x in &ranking {
            if x >= n || seen >> x & 1 == 1 {
                return Err(Error::Invalid {
                    field: "orders".into(),
                    message: "ranking is not a permutation of the elements".into(),
                });
            }
            seen |= 1 << x;
        }
        if ranking.len() != n {
            return Err(Error::Invalid {
                field: "orders".into(),
                message: format!("ranking lists {} of {n} elements", ranking.len()),
            });
        }
        Ok(LinearOrder {
            ground: Arc::clone(ground),
            ranking,
        })
    }

    pub fn from_labels<S: AsRef<str>>(
        ground: &Arc<GroundSet>,
        labels: &[S],
    ) -> Result<LinearOrder> {
        let ranking = labels
            .iter()
            .map(|l| {
                ground
                    .index_of(l.as_ref())
                    .ok_or_else(|| Error::UnknownElement {
                        field: "orders".into(),
                        label: l.as_ref().to_owned(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        LinearOrder::new(ground, ranking)
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    /// `position[x]` is the place of `x` in the ranking, 0 for the top.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.ranking.len()];
        for (p, &x) in self.ranking.iter().enumerate() {
            pos[x] = p;
        }
        pos
    }

    /// Weak relation: `(x, y)` iff `x` is ranked at or above `y`.
    pub fn relation(&self) -> Relation {
        let pos = self.positions();
        Relation::from_fn(&self.ground, |x, y| pos[x] <= pos[y])
    }

    /// Strict relation: `(x, y)` iff `x` is ranked above `y`.
    pub fn strict(&self) -> Relation {
        let pos = self.positions();
        Relation::from_fn(&self.ground, |x, y| pos[x] < pos[y])
    }

    /// Number of elements ranked below each element.
    pub fn rank_utility(&self) -> Vec<f64> {
        let n = self.ranking.len();
        self.positions()
            .into_iter()
            .map(|p| (n - 1 - p) as f64)
            .collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.ranking
            .iter()
            .map(|&x| self.ground.label(x).to_owned())
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Realizer {
    pub target: Relation,
    pub orders: Vec<LinearOrder>,
}

impl Realizer {
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    /// Intersection of the members' weak relations (`X × X` for no members).
    pub fn intersection(&self) -> Relation {
        let mut acc = Relation::full(self.target.ground());
        for order in &self.orders {
            acc = acc
                .intersection(&order.relation())
                .expect("realizer members share the target's ground set");
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_k: usize,
    pub max_n: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_k: 4, max_n: 8 }
    }
}

fn require_partial_order(p: &Relation) -> Result<()> {
    match p.partial_order_violation() {
        Some(property) => Err(Error::NotPartialOrder { property }),
        None => Ok(()),
    }
}

/// Linear extension of `p` that also ranks `forced.0` above `forced.1`.
///
/// Takes the transitive closure of `p ∪ {forced}` and repeatedly emits the
/// smallest-index element with nothing above it among the remaining ones.
pub fn linear_extension(p: &Relation, forced: Option<(usize, usize)>) -> Result<LinearOrder> {
    require_partial_order(p)?;
    let ground = p.ground();
    let mut r = p.clone();
    if let Some((x, y)) = forced {
        r.insert(x, y);
    }
    let r = r.transitive_closure();
    if !r.is_antisymmetric() {
        let (x, y) = forced.expect("a partial order is antisymmetric");
        return Err(Error::AcyclicityViolation {
            x: ground.label(x).to_owned(),
            y: ground.label(y).to_owned(),
        });
    }
    let above = r.strict_part().dual();
    let mut remaining = ground.full_mask();
    let mut ranking = Vec::with_capacity(ground.len());
    while remaining != 0 {
        let top = bits(remaining)
            .find(|&x| above.row(x) & remaining == 0)
            .expect("an acyclic relation has a maximal element");
        ranking.push(top);
        remaining &= !(1 << top);
    }
    LinearOrder::new(ground, ranking)
}

/// One extension per incomparable ordered pair, deduplicated, in row-major
/// pair order. A chain yields its single extension.
pub fn build_realizer(p: &Relation) -> Result<Realizer> {
    require_partial_order(p)?;
    let n = p.len();
    let mut orders: Vec<LinearOrder> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y && p.incomparable(x, y) {
                let ext = linear_extension(p, Some((x, y)))?;
                if !orders.contains(&ext) {
                    orders.push(ext);
                }
            }
        }
    }
    if orders.is_empty() {
        orders.push(linear_extension(p, None)?);
    }
    Ok(Realizer {
        target: p.clone(),
        orders,
    })
}

/// The members intersect to `p` and each incomparable ordered pair `(x, y)`
/// of `p` is ranked `x` over `y` by some member.
pub fn verify_realizer(p: &Relation, realizer: &Realizer) -> bool {
    if realizer
        .orders
        .iter()
        .any(|o| !Arc::ptr_eq(o.ground(), p.ground()))
    {
        return false;
    }
    if realizer.orders.is_empty() || realizer.intersection() != *p {
        return false;
    }
    let strict: Vec<Relation> = realizer.orders.iter().map(LinearOrder::strict).collect();
    let n = p.len();
    (0..n).all(|x| {
        (0..n).all(|y| x == y || !p.incomparable(x, y) || strict.iter().any(|s| s.contains(x, y)))
    })
}

/// All linear extensions of `p`, rankings in lexicographic order.
pub fn linear_extensions(p: &Relation) -> Result<Vec<LinearOrder>> {
    require_partial_order(p)?;
    let above = p.strict_part().dual();
    let n = p.len();
    let mut out = Vec::new();
    let mut ranking = Vec::with_capacity(n);
    extend(&above, p.ground().full_mask(), &mut ranking, &mut |r| {
        out.push(r.to_vec())
    });
    Ok(out
        .into_iter()
        .map(|r| LinearOrder {
            ground: Arc::clone(p.ground()),
            ranking: r,
        })
        .collect())
}

fn extend(
    above: &Relation,
    remaining: u64,
    ranking: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if remaining == 0 {
        emit(ranking);
        return;
    }
    for x in bits(remaining) {
        if above.row(x) & remaining == 0 {
            ranking.push(x);
            extend(above, remaining & !(1 << x), ranking, emit);
            ranking.pop();
        }
    }
}

/// Bit `k` of an extension's mask is set iff it ranks the `k`-th
/// incomparable ordered pair in its stated direction. A family of extensions
/// realizes `p` exactly when its masks cover every incomparable ordered pair.
struct CoverProblem {
    masks: Vec<u128>,
    full: u128,
    prefix_or: Vec<u128>,
}

impl CoverProblem {
    fn new(p: &Relation, extensions: &[LinearOrder]) -> Result<CoverProblem> {
        let n = p.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| x != y && p.incomparable(x, y))
            .collect();
        if pairs.len() > 128 {
            return Err(Error::SearchBudgetExceeded(format!(
                "{} incomparable pairs exceed the 128 supported by the search",
                pairs.len()
            )));
        }
        let masks: Vec<u128> = extensions
            .iter()
            .map(|e| {
                let pos = e.positions();
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(_, &(x, y))| pos[x] < pos[y])
                    .fold(0u128, |m, (k, _)| m | 1 << k)
            })
            .collect();
        let mut prefix_or = Vec::with_capacity(masks.len() + 1);
        prefix_or.push(0u128);
        for &m in &masks {
            let last = *prefix_or.last().unwrap();
            prefix_or.push(last | m);
        }
        let full = if pairs.len() == 128 {
            u128::MAX
        } else {
            (1u128 << pairs.len()) - 1
        };
        Ok(CoverProblem {
            masks,
            full,
            prefix_or,
        })
    }

    fn coverable(&self) -> bool {
        !self.masks.is_empty() && *self.prefix_or.last().unwrap() == self.full
    }

    /// First `k`-subset of extension indices in colex order whose masks cover
    /// `full`.
    fn first_cover(&self, k: usize) -> Option<Vec<usize>> {
        let mut chosen = Vec::with_capacity(k);
        if self.search(k, self.masks.len(), self.full, &mut chosen) {
            chosen.reverse();
            Some(chosen)
        } else {
            None
        }
    }

    // Picks the largest index first, ascending, so hits come in colex order.
    fn search(&self, k: usize, limit: usize, needed: u128, chosen: &mut Vec<usize>) -> bool {
        if k == 0 {
            return needed == 0;
        }
        if limit < k || needed & !self.prefix_or[limit] != 0 {
            return false;
        }
        for top in (k - 1)..limit {
            chosen.push(top);
            if self.search(k - 1, top, needed & !self.masks[top], chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

fn check_size(p: &Relation, budget: SearchBudget) -> Result<()> {
    if p.len() > budget.max_n {
        return Err(Error::SearchBudgetExceeded(format!(
            "{} elements exceed max_n = {}",
            p.len(),
            budget.max_n
        )));
    }
    Ok(())
}

fn smallest_cover(
    p: &Relation,
    candidates: Vec<LinearOrder>,
    budget: SearchBudget,
) -> Result<Option<Realizer>> {
    let problem = CoverProblem::new(p, &candidates)?;
    if !problem.coverable() {
        return Ok(None);
    }
    for k in 1..=budget.max_k.min(candidates.len()) {
        if let Some(indices) = problem.first_cover(k) {
            return Ok(Some(Realizer {
                target: p.clone(),
                orders: indices.into_iter().map(|i| candidates[i].clone()).collect(),
            }));
        }
    }
    Err(Error::SearchBudgetExceeded(format!(
        "no realizer with at most max_k = {} orders",
        budget.max_k
    )))
}

/// A realizer of minimum size; the first witness in colex order over the
/// lexicographically sorted extensions.
pub fn minimal_realizer(p: &Relation, budget: SearchBudget) -> Result<Realizer> {
    require_partial_order(p)?;
    check_size(p, budget)?;
    let extensions = linear_extensions(p)?;
    Ok(smallest_cover(p, extensions, budget)?.expect("the set of all extensions realizes p"))
}

/// Dushnik–Miller dimension `d(P)`.
pub fn order_dimension(p: &Relation, budget: SearchBudget) -> Result<usize> {
    minimal_realizer(p, budget).map(|r| r.len())
}

/// Smallest realizer whose members have strict parts open in the product
/// topology of `topology`; `None` when no family of open extensions realizes `p`.
pub fn minimal_open_realizer(
    p: &Relation,
    topology: &FiniteTopology,
    budget: SearchBudget,
) -> Result<Option<Realizer>> {
    require_partial_order(p)?;
    p.check_ground(&topology.specialization())?;
    check_size(p, budget)?;
    let mut open = Vec::new();
    for ext in linear_extensions(p)? {
        if topology.is_open(&ext.strict())? {
            open.push(ext);
        }
    }
    smallest_cover(p, open, budget)
}

/// `d_τ(P)`; `None` stands for "undefined".
pub fn open_order_dimension(
    p: &Relation,
    topology: &FiniteTopology,
    budget: SearchBudget,
) -> Result<Option<usize>> {
    minimal_open_realizer(p, topology, budget).map(|r| r.map(|r| r.len()))
}
