//! Continuous multi-utility embeddings of complete, negatively transitive
//! relations on finite spaces.
//!
//! The construction: realize `Q ∪ Δ` by linear orders, shrink each strict
//! member to its interior in `X × X`, and give each shrunk order a rank
//! utility. The resulting family `V` satisfies
//!
//! ```text
//! (x, y) ∈ P  ⟺  ∃ v ∈ V: v(x) ≥ v(y)
//! (x, y) ∈ Q  ⟺  ∀ v ∈ V: v(x) > v(y)
//! ```
//!
//! and every `v` is continuous for the given finite topology.
//!
//! On a space that is not T1 an interior can lose negative transitivity and
//! the construction breaks down. Continuous real maps on a finite space are
//! the maps constant on each component of the specialisation graph, so in that
//! case the relation is embedded through the quotient by those components, or
//! refused when `Q` does not respect them.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::realizer::build_realizer;
use crate::relation::{GroundSet, Relation};
use crate::topology::FiniteTopology;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    /// `x ≥ y` iff some coordinate weakly prefers `x`.
    Existential,
    /// `x ≻ y` iff every coordinate weakly prefers `x` and one strictly does.
    Pareto,
}

/// An `n × k` table of utilities; column `j` is the map `v_j`.
#[derive(Clone, Debug)]
pub struct MultiUtility {
    ground: Arc<GroundSet>,
    columns: Vec<Vec<f64>>,
    semantics: Semantics,
    continuity_checked: bool,
}

impl MultiUtility {
    pub fn new(
        ground: &Arc<GroundSet>,
        columns: Vec<Vec<f64>>,
        semantics: Semantics,
    ) -> Result<MultiUtility> {
        if columns.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if let Some(bad) = columns.iter().find(|c| c.len() != ground.len()) {
            return Err(Error::LengthMismatch {
                left: bad.len(),
                right: ground.len(),
            });
        }
        Ok(MultiUtility {
            ground: Arc::clone(ground),
            columns,
            semantics,
            continuity_checked: false,
        })
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    /// Number of utility functions.
    pub fn k(&self) -> usize {
        self.columns.len()
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    pub fn continuity_checked(&self) -> bool {
        self.continuity_checked
    }

    /// Same columns, reinterpreted.
    pub fn with_semantics(mut self, semantics: Semantics) -> MultiUtility {
        self.semantics = semantics;
        self
    }

    /// Checks every column against `topology` and records the outcome.
    pub fn check_continuity(&mut self, topology: &FiniteTopology) -> bool {
        let ok = Arc::ptr_eq(topology.ground(), &self.ground)
            && self.columns.iter().all(|c| topology.is_continuous_map(c));
        self.continuity_checked = ok;
        ok
    }

    /// The point `(v_1(x), ..., v_k(x))`.
    pub fn point(&self, x: usize) -> Vec<f64> {
        self.columns.iter().map(|c| c[x]).collect()
    }

    /// `{(x, y) : ∃ v, v(x) ≥ v(y)}`.
    pub fn existential_weak(&self) -> Relation {
        Relation::from_fn(&self.ground, |x, y| {
            self.columns.iter().any(|c| c[x] >= c[y])
        })
    }

    /// `{(x, y) : ∀ v, v(x) > v(y)}`.
    pub fn existential_strict(&self) -> Relation {
        Relation::from_fn(&self.ground, |x, y| {
            self.columns.iter().all(|c| c[x] > c[y])
        })
    }

    /// `{(x, y) : ∀ v, v(x) ≥ v(y) and ∃ v, v(x) > v(y)}`.
    pub fn pareto_strict(&self) -> Relation {
        Relation::from_fn(&self.ground, |x, y| {
            self.columns.iter().all(|c| c[x] >= c[y]) && self.columns.iter().any(|c| c[x] > c[y])
        })
    }
}

/// Rank utility of a complete, transitive, closed relation: the number of
/// indifference classes strictly below each element.
pub fn debreu_utility(p: &Relation, topology: &FiniteTopology) -> Result<Vec<f64>> {
    p.check_ground(&topology.specialization())?;
    if !p.is_complete() {
        return Err(Error::NotCompleteTransitive {
            property: "complete",
        });
    }
    if !p.is_transitive() {
        return Err(Error::NotCompleteTransitive {
            property: "transitive",
        });
    }
    if !topology.is_closed(p)? {
        return Err(Error::NotContinuous);
    }
    let n = p.len();
    // smallest index in each indifference class
    let representative: Vec<usize> = (0..n)
        .map(|x| {
            (0..n)
                .find(|&z| p.contains(x, z) && p.contains(z, x))
                .unwrap()
        })
        .collect();
    let v: Vec<f64> = (0..n)
        .map(|x| {
            let below = (0..n)
                .filter(|&y| p.contains(x, y) && !p.contains(y, x))
                .fold(0u64, |acc, y| acc | 1 << representative[y]);
            below.count_ones() as f64
        })
        .collect();

    let represents = (0..n).all(|x| (0..n).all(|y| p.contains(x, y) == (v[x] >= v[y])));
    if !represents {
        return Err(Error::InternalContractViolation(
            "rank utility does not represent the order".into(),
        ));
    }
    if !topology.is_continuous_map(&v) {
        return Err(Error::InternalContractViolation(
            "rank utility of a closed order is not continuous".into(),
        ));
    }
    Ok(v)
}

fn require_embeddable(p: &Relation, topology: &FiniteTopology) -> Result<()> {
    p.check_ground(&topology.specialization())?;
    if !p.is_complete() {
        return Err(Error::NotCompleteNegativelyTransitive {
            property: "complete",
        });
    }
    if !p.is_negatively_transitive() {
        return Err(Error::NotCompleteNegativelyTransitive {
            property: "negatively_transitive",
        });
    }
    if !topology.is_closed(p)? {
        return Err(Error::NotContinuous);
    }
    Ok(())
}

fn contract(what: &str) -> impl FnOnce(Error) -> Error + '_ {
    move |e| Error::InternalContractViolation(format!("{what}: {e}"))
}

fn strict_of(columns: &[&Vec<f64>], ground: &Arc<GroundSet>) -> Relation {
    Relation::from_fn(ground, |x, y| columns.iter().all(|c| c[x] > c[y]))
}

/// Continuous existential multi-utility of a continuous, complete, negatively
/// transitive `p`.
///
/// A `p` that is already transitive gets its single rank utility. Otherwise
/// the columns come from the interiors of the realizer members of `Q ∪ Δ`;
/// identical columns are merged and columns not needed to cut out `Q` are
/// dropped, earliest first.
pub fn build_multi_embedding(p: &Relation, topology: &FiniteTopology) -> Result<MultiUtility> {
    require_embeddable(p, topology)?;
    let ground = p.ground();

    let columns = if p.is_transitive() {
        vec![debreu_utility(p, topology).map_err(contract("single utility"))?]
    } else {
        let q = p.polar();
        let realizer = build_realizer(&q.reflexive_closure()).map_err(contract("realizer"))?;

        let mut interiors = Vec::with_capacity(realizer.len());
        for order in &realizer.orders {
            let interior = topology.interior_in_product(&order.strict())?;
            if !(interior.is_asymmetric() && interior.is_negatively_transitive()) {
                // Only possible when the space is not T1.
                return quotient_embedding(&q, topology);
            }
            interiors.push(interior);
        }
        let mut meet = Relation::full(ground);
        for interior in &interiors {
            meet = meet.intersection(interior)?;
        }
        if meet != q {
            return Err(Error::InternalContractViolation(
                "strict part differs from the intersection of interiors".into(),
            ));
        }

        let mut columns: Vec<Vec<f64>> = Vec::new();
        for interior in &interiors {
            let v = debreu_utility(&interior.polar(), topology)
                .map_err(contract("interior utility"))?;
            if !columns.contains(&v) {
                columns.push(v);
            }
        }
        prune_redundant(columns, &q)
    };

    let mut embedding = MultiUtility::new(ground, columns, Semantics::Existential)?;
    if !embedding.check_continuity(topology) {
        return Err(Error::InternalContractViolation(
            "discontinuous column".into(),
        ));
    }
    Ok(embedding)
}

/// Continuous maps are exactly the maps constant on the components of the
/// specialisation graph, so an embedding exists iff `q` respects those
/// components. When it does, embed the quotient discretely and pull back.
fn quotient_embedding(q: &Relation, topology: &FiniteTopology) -> Result<MultiUtility> {
    let ground = q.ground();
    let comp = topology.components();
    for (x, y) in Relation::full(ground).pairs() {
        if q.contains(x, y) != q.contains(comp[x], comp[y]) {
            return Err(Error::NotContinuouslyEmbeddable(format!(
                "every continuous map identifies `{}` with `{}`, `{}` with `{}`",
                ground.label(x),
                ground.label(comp[x]),
                ground.label(y),
                ground.label(comp[y]),
            )));
        }
    }
    let mut reps: Vec<usize> = comp.clone();
    reps.sort_unstable();
    reps.dedup();
    let quotient = GroundSet::new(reps.iter().map(|&r| ground.label(r).to_owned()))?;
    let q_bar = Relation::from_fn(&quotient, |i, j| q.contains(reps[i], reps[j]));
    let inner = build_multi_embedding(&q_bar.polar(), &FiniteTopology::discrete(&quotient))?;
    let slot = |x: usize| reps.binary_search(&comp[x]).expect("representative");
    let columns = inner
        .columns()
        .iter()
        .map(|c| (0..ground.len()).map(|x| c[slot(x)]).collect())
        .collect();
    let mut embedding = MultiUtility::new(ground, columns, Semantics::Existential)?;
    if !embedding.check_continuity(topology) {
        return Err(Error::InternalContractViolation(
            "discontinuous column".into(),
        ));
    }
    Ok(embedding)
}

/// Drops columns, in order, whenever the rest still cut out exactly `q`.
fn prune_redundant(mut columns: Vec<Vec<f64>>, q: &Relation) -> Vec<Vec<f64>> {
    let mut j = 0;
    while j < columns.len() && columns.len() > 1 {
        let rest: Vec<&Vec<f64>> = columns
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, c)| c)
            .collect();
        if strict_of(&rest, q.ground()) == *q {
            columns.remove(j);
        } else {
            j += 1;
        }
    }
    columns
}

/// Both existential identities hold for every ordered pair. The semantics
/// tag of `v` is not consulted.
pub fn verify_existential_embedding(p: &Relation, v: &MultiUtility) -> bool {
    Arc::ptr_eq(p.ground(), v.ground())
        && v.existential_weak() == *p
        && v.existential_strict() == p.polar()
}

/// Two-dimensional picture of an embedding.
#[derive(Clone, Debug)]
pub struct HasseDiagram {
    pub ground: Arc<GroundSet>,
    /// Per element: (component along the identity line, offset orthogonal to it).
    pub points: Vec<(f64, f64)>,
    /// Covering pairs `(upper, lower)` of the strict relation.
    pub edges: Vec<(usize, usize)>,
}

/// Projects each point onto the plane spanned by the identity line and the
/// direction `e_1 - (1/k)·1`, and pairs it with the covering graph of `q`.
///
/// Any plane through the identity line would do; this one is fixed so the
/// output is reproducible.
pub fn hasse_projection(v: &MultiUtility, q: &Relation) -> Result<HasseDiagram> {
    if !Arc::ptr_eq(v.ground(), q.ground()) {
        return Err(Error::GroundMismatch);
    }
    let k = v.k() as f64;
    let points = (0..q.len())
        .map(|x| {
            let coords = v.point(x);
            let sum: f64 = coords.iter().sum();
            (sum / k.sqrt(), coords[0] - sum / k)
        })
        .collect();
    Ok(HasseDiagram {
        ground: Arc::clone(q.ground()),
        points,
        edges: q.covering_pairs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::all_strict_partial_orders;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn abc() -> Arc<GroundSet> {
        GroundSet::new(["a", "b", "c"]).unwrap()
    }

    fn one_pair(g: &Arc<GroundSet>) -> Relation {
        // Q = {(a, c)}, weak counterpart P
        Relation::from_pairs(g, [(0, 2)]).polar()
    }

    #[test]
    fn rank_utility_examples() {
        let g = abc();
        let t = FiniteTopology::discrete(&g);
        // a ≻ b ∼ c
        let p = Relation::from_fn(&g, |x, y| x == 0 || y != 0);
        assert_eq!(debreu_utility(&p, &t).unwrap(), vec![1.0, 0.0, 0.0]);
        assert_eq!(
            debreu_utility(&Relation::full(&g), &t).unwrap(),
            vec![0.0; 3]
        );
    }

    #[test]
    fn rank_utility_preconditions() {
        let g = abc();
        let t = FiniteTopology::discrete(&g);
        assert!(matches!(
            debreu_utility(&Relation::identity(&g), &t),
            Err(Error::NotCompleteTransitive {
                property: "complete"
            })
        ));
        assert!(matches!(
            debreu_utility(&one_pair(&g), &t),
            Err(Error::NotCompleteTransitive {
                property: "transitive"
            })
        ));
    }

    #[test]
    fn sierpinski_admits_only_indifference() {
        let g = GroundSet::new(["a", "b"]).unwrap();
        let t = FiniteTopology::generated(&g, &[0b01]);
        let v = debreu_utility(&Relation::full(&g), &t).unwrap();
        assert_eq!(v, vec![0.0, 0.0]);
        assert!(t.is_continuous_map(&v));
        for strict in [(0, 1), (1, 0)] {
            let p = Relation::from_pairs(&g, [strict]).reflexive_closure();
            assert!(matches!(debreu_utility(&p, &t), Err(Error::NotContinuous)));
        }
    }

    #[test]
    fn single_pair_embedding() {
        let g = abc();
        let t = FiniteTopology::discrete(&g);
        let p = one_pair(&g);
        let v = build_multi_embedding(&p, &t).unwrap();
        assert_eq!(v.columns(), &[vec![1.0, 2.0, 0.0], vec![2.0, 0.0, 1.0]]);
        assert_eq!(v.semantics(), Semantics::Existential);
        assert!(v.continuity_checked());
        assert!(verify_existential_embedding(&p, &v));
        assert_eq!(v.existential_strict(), Relation::from_pairs(&g, [(0, 2)]));
    }

    #[test]
    fn chain_and_indifference_need_one_column() {
        let g = abc();
        let t = FiniteTopology::discrete(&g);
        let chain = Relation::from_fn(&g, |x, y| x <= y);
        let v = build_multi_embedding(&chain, &t).unwrap();
        assert_eq!(v.columns(), &[vec![2.0, 1.0, 0.0]]);
        let all = build_multi_embedding(&Relation::full(&g), &t).unwrap();
        assert_eq!(all.columns(), &[vec![0.0, 0.0, 0.0]]);
        assert!(verify_existential_embedding(&Relation::full(&g), &all));
    }

    #[test]
    fn embedding_preconditions_name_the_property() {
        let g = abc();
        let t = FiniteTopology::discrete(&g);
        assert!(matches!(
            build_multi_embedding(&Relation::identity(&g), &t),
            Err(Error::NotCompleteNegativelyTransitive {
                property: "complete"
            })
        ));
        // complete but not negatively transitive: a ≥ b, b ≥ c, c ≥ a only
        let cyc = Relation::from_pairs(&g, [(0, 1), (1, 2), (2, 0)]).reflexive_closure();
        assert!(matches!(
            build_multi_embedding(&cyc, &t),
            Err(Error::NotCompleteNegativelyTransitive {
                property: "negatively_transitive"
            })
        ));
        let two = GroundSet::new(["a", "b"]).unwrap();
        let sierpinski = FiniteTopology::generated(&two, &[0b01]);
        let p = Relation::from_pairs(&two, [(0, 1)]).reflexive_closure();
        assert!(matches!(
            build_multi_embedding(&p, &sierpinski),
            Err(Error::NotContinuous)
        ));
    }

    #[test]
    fn verification_examples() {
        let g = abc();
        let p = one_pair(&g);
        let constant = MultiUtility::new(&g, vec![vec![0.0; 3]], Semantics::Existential).unwrap();
        assert!(!verify_existential_embedding(&p, &constant));
        let hand = MultiUtility::new(
            &g,
            vec![vec![1.0, 2.0, 0.0], vec![2.0, 0.0, 1.0]],
            Semantics::Existential,
        )
        .unwrap();
        assert!(verify_existential_embedding(&p, &hand));
    }

    #[test]
    fn round_trip_discrete_n4() {
        for n in 1..=4 {
            let g = GroundSet::indexed(n).unwrap();
            let t = FiniteTopology::discrete(&g);
            for q in all_strict_partial_orders(&g) {
                let incomparable = (0..n)
                    .flat_map(|x| (0..n).map(move |y| (x, y)))
                    .filter(|&(x, y)| x != y && q.incomparable(x, y))
                    .count();
                let p = q.polar();
                let v = build_multi_embedding(&p, &t).unwrap();
                assert!(verify_existential_embedding(&p, &v), "{q:?}");
                assert!(v.k() <= incomparable + 1);
            }
        }
    }

    #[test]
    fn round_trip_random_topologies() {
        let mut rng = StdRng::seed_from_u64(3);
        let (mut embedded, mut refused) = (0, 0);
        for _ in 0..300 {
            let n = rng.random_range(1..=4usize);
            let g = GroundSet::indexed(n).unwrap();
            let gens: Vec<u64> = (0..rng.random_range(0..4))
                .map(|_| rng.random_range(0..(1u64 << n)))
                .collect();
            let t = FiniteTopology::generated(&g, &gens);
            for q in all_strict_partial_orders(&g) {
                let p = q.polar();
                match build_multi_embedding(&p, &t) {
                    Ok(v) => {
                        assert!(verify_existential_embedding(&p, &v), "{q:?}");
                        assert!(v.columns().iter().all(|c| t.is_continuous_map(c)));
                        embedded += 1;
                    }
                    Err(Error::NotContinuous) => assert!(!t.is_closed(&p).unwrap()),
                    Err(Error::NotContinuouslyEmbeddable(_)) => {
                        assert!(t.is_closed(&p).unwrap());
                        refused += 1;
                    }
                    Err(e) => panic!("{q:?}: {e}"),
                }
            }
        }
        assert!(embedded > 0 && refused > 0);
    }

    #[test]
    fn closed_relation_without_continuous_embedding() {
        // U_0 = {0}, U_1 = {1}, U_2 = X: every continuous real map is constant,
        // yet Q = {(0, 1)} is open and P = polar(Q) closed, complete and
        // negatively transitive.
        let g = GroundSet::indexed(3).unwrap();
        let t = FiniteTopology::generated(&g, &[0b001, 0b010]);
        let q = Relation::from_pairs(&g, [(0, 1)]);
        let p = q.polar();
        assert!(t.is_closed(&p).unwrap() && p.is_complete() && p.is_negatively_transitive());
        assert!(matches!(
            build_multi_embedding(&p, &t),
            Err(Error::NotContinuouslyEmbeddable(_))
        ));
    }

    #[test]
    fn quotient_embedding_for_a_respecting_order() {
        // Components {0, 1} and {2}; Q ranks the first block above the second.
        let g = GroundSet::indexed(3).unwrap();
        let t = FiniteTopology::generated(&g, &[0b001, 0b011, 0b100]);
        let q = Relation::from_pairs(&g, [(0, 2), (1, 2)]);
        let v = build_multi_embedding(&q.polar(), &t).unwrap();
        assert!(verify_existential_embedding(&q.polar(), &v));
        assert!(v.columns().iter().all(|c| t.is_continuous_map(c)));
    }

    #[test]
    fn hasse_examples() {
        let g = abc();
        let t = FiniteTopology::discrete(&g);
        let chain = Relation::from_fn(&g, |x, y| x <= y);
        let v = build_multi_embedding(&chain, &t).unwrap();
        let h = hasse_projection(&v, &chain.polar()).unwrap();
        assert!(h.points.iter().all(|&(_, d)| d == 0.0));
        assert_eq!(h.edges, vec![(0, 1), (1, 2)]);

        let p = one_pair(&g);
        let v = build_multi_embedding(&p, &t).unwrap();
        let q = p.polar();
        let h = hasse_projection(&v, &q).unwrap();
        assert_eq!(h.points.len(), 3);
        assert_eq!(h.edges, vec![(0, 2)]);
        for (x, y) in q.pairs() {
            assert!(h.points[x].0 > h.points[y].0);
        }
    }
}
