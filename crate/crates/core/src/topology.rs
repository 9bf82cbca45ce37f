//! Finite topological spaces and the product topology on `X × X`.
//!
//! A finite topology is determined by the minimal open neighbourhood `U_x` of
//! each point (the intersection of all opens containing `x`). The basic opens of
//! `X × X` are then the rectangles `U_x × U_y`, so closure and interior of a
//! relation are computed pair by pair from those rectangles.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::relation::{bits, GroundSet, Relation};

#[derive(Clone, Debug)]
pub struct FiniteTopology {
    ground: Arc<GroundSet>,
    min_nbhd: Vec<u64>,
}

/// Topological status of a relation in the product topology.
#[derive(Clone, Debug)]
pub struct TopologyReport {
    pub is_closed: bool,
    pub is_open: bool,
    pub closure: Relation,
    pub interior: Relation,
}

impl FiniteTopology {
    /// Smallest topology in which every generator (a bit mask of elements) is open.
    pub fn generated(ground: &Arc<GroundSet>, generators: &[u64]) -> FiniteTopology {
        let full = ground.full_mask();
        let min_nbhd = (0..ground.len())
            .map(|x| {
                generators
                    .iter()
                    .filter(|&&g| g >> x & 1 == 1)
                    .fold(full, |acc, &g| acc & g)
            })
            .collect();
        FiniteTopology {
            ground: Arc::clone(ground),
            min_nbhd,
        }
    }

    /// Generators given as lists of element labels.
    pub fn from_labelled_generators<S: AsRef<str>>(
        ground: &Arc<GroundSet>,
        generators: &[Vec<S>],
    ) -> Result<FiniteTopology> {
        let mut masks = Vec::with_capacity(generators.len());
        for (k, generator) in generators.iter().enumerate() {
            let mut mask = 0u64;
            for label in generator {
                let i = ground
                    .index_of(label.as_ref())
                    .ok_or_else(|| Error::UnknownElement {
                        field: format!("opens_generators[{k}]"),
                        label: label.as_ref().to_owned(),
                    })?;
                mask |= 1 << i;
            }
            masks.push(mask);
        }
        Ok(FiniteTopology::generated(ground, &masks))
    }

    pub fn discrete(ground: &Arc<GroundSet>) -> FiniteTopology {
        FiniteTopology {
            ground: Arc::clone(ground),
            min_nbhd: (0..ground.len()).map(|x| 1u64 << x).collect(),
        }
    }

    pub fn indiscrete(ground: &Arc<GroundSet>) -> FiniteTopology {
        FiniteTopology::generated(ground, &[])
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    /// `U_x` as a bit mask.
    pub fn min_nbhd(&self, x: usize) -> u64 {
        self.min_nbhd[x]
    }

    pub fn is_discrete(&self) -> bool {
        self.min_nbhd
            .iter()
            .enumerate()
            .all(|(x, &u)| u == 1u64 << x)
    }

    pub fn is_open_set(&self, set: u64) -> bool {
        bits(set).fold(0u64, |acc, x| acc | self.min_nbhd[x]) == set
    }

    /// Every open set, sorted by size and then lexicographically by members.
    ///
    /// The family can have up to `2^n` members; intended for small spaces.
    pub fn opens(&self) -> Vec<u64> {
        let mut seen: HashSet<u64> = HashSet::from([0u64]);
        let mut frontier = vec![0u64];
        while let Some(set) = frontier.pop() {
            for &u in &self.min_nbhd {
                let next = set | u;
                if seen.insert(next) {
                    frontier.push(next);
                }
            }
        }
        let mut opens: Vec<u64> = seen.into_iter().collect();
        opens.sort_by(|&a, &b| compare_sets(a, b));
        opens
    }

    /// Specialisation preorder: `(x, y)` iff `y ∈ U_x` (equivalently `x ∈ cl{y}`).
    pub fn specialization(&self) -> Relation {
        Relation::from_rows(&self.ground, self.min_nbhd.clone())
    }

    /// Connected components of the specialisation graph, each element mapped
    /// to the smallest index in its component. Continuous real maps are
    /// exactly the maps constant on these components.
    pub fn components(&self) -> Vec<usize> {
        let n = self.ground.len();
        let mut comp: Vec<usize> = (0..n).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..n {
                for y in bits(self.min_nbhd[x]) {
                    let m = comp[x].min(comp[y]);
                    if comp[x] != m || comp[y] != m {
                        comp[x] = m;
                        comp[y] = m;
                        changed = true;
                    }
                }
            }
        }
        comp
    }

    fn check(&self, s: &Relation) -> Result<()> {
        if Arc::ptr_eq(s.ground(), &self.ground) {
            Ok(())
        } else {
            Err(Error::GroundMismatch)
        }
    }

    /// `(x, y) ∈ cl S` iff `U_x × U_y` meets `S`.
    pub fn closure_in_product(&self, s: &Relation) -> Result<Relation> {
        self.check(s)?;
        Ok(Relation::from_fn(&self.ground, |x, y| {
            let uy = self.min_nbhd[y];
            bits(self.min_nbhd[x]).any(|u| s.row(u) & uy != 0)
        }))
    }

    /// `(x, y) ∈ int S` iff `U_x × U_y ⊆ S`.
    pub fn interior_in_product(&self, s: &Relation) -> Result<Relation> {
        self.check(s)?;
        Ok(Relation::from_fn(&self.ground, |x, y| {
            let uy = self.min_nbhd[y];
            bits(self.min_nbhd[x]).all(|u| uy & !s.row(u) == 0)
        }))
    }

    pub fn relation_report(&self, s: &Relation) -> Result<TopologyReport> {
        let closure = self.closure_in_product(s)?;
        let interior = self.interior_in_product(s)?;
        Ok(TopologyReport {
            is_closed: &closure == s,
            is_open: &interior == s,
            closure,
            interior,
        })
    }

    pub fn is_closed(&self, s: &Relation) -> Result<bool> {
        Ok(&self.closure_in_product(s)? == s)
    }

    pub fn is_open(&self, s: &Relation) -> Result<bool> {
        Ok(&self.interior_in_product(s)? == s)
    }

    /// A real-valued map on a finite space is continuous iff it is constant on
    /// every minimal neighbourhood.
    pub fn is_continuous_map(&self, values: &[f64]) -> bool {
        assert_eq!(values.len(), self.ground.len(), "one value per element");
        self.min_nbhd
            .iter()
            .enumerate()
            .all(|(x, &u)| bits(u).all(|y| values[y] == values[x]))
    }
}

fn compare_sets(a: u64, b: u64) -> Ordering {
    a.count_ones()
        .cmp(&b.count_ones())
        .then_with(|| bits(a).cmp(bits(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sierpinski() -> (Arc<GroundSet>, FiniteTopology) {
        let g = GroundSet::new(["a", "b"]).unwrap();
        let t = FiniteTopology::generated(&g, &[0b01]);
        (g, t)
    }

    /// Naive topology generation: close generators ∪ {∅, X} under pairwise
    /// union and intersection until nothing changes.
    fn pairwise_closure(n: usize, generators: &[u64]) -> Vec<u64> {
        let full = crate::relation::full_mask(n);
        let mut family: HashSet<u64> = generators.iter().copied().collect();
        family.insert(0);
        family.insert(full);
        loop {
            let current: Vec<u64> = family.iter().copied().collect();
            let before = family.len();
            for &a in &current {
                for &b in &current {
                    family.insert(a | b);
                    family.insert(a & b);
                }
            }
            if family.len() == before {
                break;
            }
        }
        let mut v: Vec<u64> = family.into_iter().collect();
        v.sort_by(|&a, &b| compare_sets(a, b));
        v
    }

    fn arb_space(max_n: usize) -> impl Strategy<Value = (usize, Vec<u64>, Vec<u64>)> {
        (1..=max_n).prop_flat_map(|n| {
            let m = crate::relation::full_mask(n);
            (
                Just(n),
                proptest::collection::vec(0..=m, 0..5),
                proptest::collection::vec(0..=m, n),
            )
        })
    }

    #[test]
    fn discrete_from_singletons() {
        let g = GroundSet::new(["a", "b", "c"]).unwrap();
        let t = FiniteTopology::generated(&g, &[0b001, 0b010, 0b100]);
        assert!(t.is_discrete());
        assert_eq!(t.opens().len(), 8);
        for x in 0..3 {
            assert_eq!(t.min_nbhd(x), 1 << x);
        }
    }

    #[test]
    fn sierpinski_space() {
        let (_, t) = sierpinski();
        assert_eq!(t.opens(), vec![0b00, 0b01, 0b11]);
        assert_eq!(t.min_nbhd(0), 0b01);
        assert_eq!(t.min_nbhd(1), 0b11);
    }

    #[test]
    fn no_generators_is_indiscrete() {
        let g = GroundSet::new(["a", "b", "c"]).unwrap();
        let t = FiniteTopology::generated(&g, &[]);
        assert_eq!(t.opens(), vec![0, 0b111]);
    }

    #[test]
    fn opens_are_sorted_by_size_then_members() {
        let g = GroundSet::new(["a", "b", "c"]).unwrap();
        let t = FiniteTopology::discrete(&g);
        assert_eq!(
            t.opens(),
            vec![0, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111]
        );
    }

    #[test]
    fn sierpinski_closure_and_interior() {
        let (g, t) = sierpinski();
        let aa = Relation::from_pairs(&g, [(0, 0)]);
        assert_eq!(t.closure_in_product(&aa).unwrap(), Relation::full(&g));
        let ab = Relation::from_pairs(&g, [(0, 1)]);
        assert!(t.interior_in_product(&ab).unwrap().is_empty());
    }

    #[test]
    fn sierpinski_weak_order_is_not_closed() {
        let (g, t) = sierpinski();
        let p = Relation::from_pairs(&g, [(0, 0), (1, 1), (0, 1)]);
        let rep = t.relation_report(&p).unwrap();
        assert!(!rep.is_closed);
        assert!(rep.closure.contains(1, 0));
        assert!(!t.is_open(&p.complement()).unwrap());

        let all = t.relation_report(&Relation::full(&g)).unwrap();
        assert!(all.is_closed && all.is_open);
    }

    #[test]
    fn discrete_operators_are_identity() {
        let g = GroundSet::indexed(4).unwrap();
        let t = FiniteTopology::discrete(&g);
        let s = Relation::from_pairs(&g, [(0, 1), (2, 3), (3, 3)]);
        let rep = t.relation_report(&s).unwrap();
        assert!(rep.is_closed && rep.is_open);
        assert_eq!(rep.closure, s);
        assert_eq!(rep.interior, s);
    }

    #[test]
    fn continuity_of_maps() {
        let (_, t) = sierpinski();
        assert!(!t.is_continuous_map(&[0.0, 1.0]));
        assert!(t.is_continuous_map(&[2.5, 2.5]));

        let g = GroundSet::indexed(3).unwrap();
        assert!(FiniteTopology::discrete(&g).is_continuous_map(&[0.0, 1.0, 2.0]));
        let ind = FiniteTopology::indiscrete(&g);
        assert!(ind.is_continuous_map(&[1.0, 1.0, 1.0]));
        assert!(!ind.is_continuous_map(&[1.0, 1.0, 0.0]));
    }

    #[test]
    fn components_of_a_non_discrete_space() {
        let g = GroundSet::indexed(4).unwrap();
        // U_0 = {0}, U_1 = {0, 1}, U_2 = {2}, U_3 = {2, 3}
        let t = FiniteTopology::generated(&g, &[0b0001, 0b0011, 0b0100, 0b1100]);
        assert_eq!(t.components(), vec![0, 0, 2, 2]);
        assert_eq!(FiniteTopology::discrete(&g).components(), vec![0, 1, 2, 3]);
        assert_eq!(
            FiniteTopology::indiscrete(&g).components(),
            vec![0, 0, 0, 0]
        );
    }

    #[test]
    fn interior_can_lose_negative_transitivity() {
        // U_0 = {0}, U_1 = {1}, U_2 = X
        let g = GroundSet::indexed(3).unwrap();
        let t = FiniteTopology::generated(&g, &[0b001, 0b010]);
        assert_eq!(t.min_nbhd(2), 0b111);
        let q = Relation::from_pairs(&g, [(0, 1), (0, 2)]);
        assert!(q.is_asymmetric() && q.is_negatively_transitive());
        let int = t.interior_in_product(&q).unwrap();
        assert_eq!(int, Relation::from_pairs(&g, [(0, 1)]));
        assert!(!int.is_negatively_transitive());
    }

    #[test]
    fn interior_preserves_negative_transitivity_when_discrete() {
        for n in 1..=4 {
            let g = GroundSet::indexed(n).unwrap();
            let t = FiniteTopology::discrete(&g);
            for q in crate::enumerate::all_strict_partial_orders(&g) {
                if q.is_negatively_transitive() {
                    let int = t.interior_in_product(&q).unwrap();
                    assert!(int.is_asymmetric() && int.is_negatively_transitive());
                }
            }
        }
    }

    #[test]
    fn unknown_generator_label() {
        let g = GroundSet::new(["a", "b"]).unwrap();
        let err =
            FiniteTopology::from_labelled_generators(&g, &[vec!["a"], vec!["z"]]).unwrap_err();
        assert!(
            matches!(err, Error::UnknownElement { field, .. } if field == "opens_generators[1]")
        );
    }

    #[test]
    fn interior_closure_duality_exhaustive_n3() {
        let g = GroundSet::indexed(3).unwrap();
        // every generator family of size ≤ 2 over 3 points
        let subsets: Vec<u64> = (0..8).collect();
        for &g1 in &subsets {
            for &g2 in &subsets {
                let t = FiniteTopology::generated(&g, &[g1, g2]);
                for code in 0u32..(1 << 9) {
                    let s = Relation::from_fn(&g, |i, j| code >> (i * 3 + j) & 1 == 1);
                    let int = t.interior_in_product(&s).unwrap();
                    let via_closure = t.closure_in_product(&s.complement()).unwrap().complement();
                    assert_eq!(int, via_closure);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn generation_matches_pairwise_fixed_point((n, gens, _) in arb_space(5)) {
            let g = GroundSet::indexed(n).unwrap();
            let t = FiniteTopology::generated(&g, &gens);
            prop_assert_eq!(t.opens(), pairwise_closure(n, &gens));
            for x in 0..n {
                let u = t.min_nbhd(x);
                prop_assert!(u >> x & 1 == 1);
                prop_assert!(t.is_open_set(u));
            }
        }

        #[test]
        fn closure_is_extensive_monotone_idempotent((n, gens, rows) in arb_space(5), extra in any::<u64>()) {
            let g = GroundSet::indexed(n).unwrap();
            let t = FiniteTopology::generated(&g, &gens);
            let s = Relation::from_rows(&g, rows);
            let mut bigger = s.clone();
            bigger.insert((extra % n as u64) as usize, ((extra >> 8) % n as u64) as usize);
            let cl = t.closure_in_product(&s).unwrap();
            prop_assert!(s.is_subset(&cl).unwrap());
            prop_assert!(cl.is_subset(&t.closure_in_product(&bigger).unwrap()).unwrap());
            prop_assert_eq!(t.closure_in_product(&cl).unwrap(), cl);

            let int = t.interior_in_product(&s).unwrap();
            prop_assert!(int.is_subset(&s).unwrap());
            prop_assert_eq!(
                int,
                t.closure_in_product(&s.complement()).unwrap().complement()
            );
        }
    }
}
