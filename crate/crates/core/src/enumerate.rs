//! Exhaustive generators for small labelled orders.

use std::sync::Arc;

use crate::error::Result;
use crate::relation::{GroundSet, Relation};

/// Every strict partial order (asymmetric, transitive) on `ground`.
///
/// Walks all `3^(n(n-1)/2)` asymmetric relations and keeps the transitive ones,
/// so it is only meant for `n ≤ 6` or so.
pub fn all_strict_partial_orders(ground: &Arc<GroundSet>) -> Vec<Relation> {
    let n = ground.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let total = 3u64.pow(pairs.len() as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut q = Relation::empty(ground);
        for &(i, j) in &pairs {
            match code % 3 {
                1 => q.insert(i, j),
                2 => q.insert(j, i),
                _ => {}
            }
            code /= 3;
        }
        if q.is_transitive() {
            out.push(q);
        }
    }
    out
}

/// Every partial order on `ground` (strict orders plus the diagonal).
pub fn all_partial_orders(ground: &Arc<GroundSet>) -> Vec<Relation> {
    all_strict_partial_orders(ground)
        .into_iter()
        .map(|q| q.reflexive_closure())
        .collect()
}

/// Standard example `S_n` as a weak order: elements `a1..an, b1..bn` with
/// `b_j` above `a_i` whenever `i ≠ j`.
pub fn standard_example(n: usize) -> Result<Relation> {
    let labels = (1..=n)
        .map(|i| format!("a{i}"))
        .chain((1..=n).map(|j| format!("b{j}")));
    let ground = GroundSet::new(labels)?;
    let mut p = Relation::identity(&ground);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                p.insert(n + j, i);
            }
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labelled_poset_counts() {
        // counted by brute force over all 2^(n^2) relations for n ≤ 3
        for n in 1..=3usize {
            let g = GroundSet::indexed(n).unwrap();
            let brute = (0u32..(1 << (n * n)))
                .map(|code| Relation::from_fn(&g, |i, j| code >> (i * n + j) & 1 == 1))
                .filter(|r| r.is_asymmetric() && r.is_transitive())
                .count();
            assert_eq!(all_strict_partial_orders(&g).len(), brute);
        }
        let g4 = GroundSet::indexed(4).unwrap();
        assert_eq!(all_strict_partial_orders(&g4).len(), 219);
    }

    #[test]
    fn standard_example_is_a_partial_order() {
        let s3 = standard_example(3).unwrap();
        assert_eq!(s3.len(), 6);
        assert!(s3.is_partial_order());
        assert_eq!(s3.strict_part().count(), 6);
    }
}
