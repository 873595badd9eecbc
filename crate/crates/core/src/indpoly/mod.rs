//! Independence polynomials, enumeration of k-independent sets, and mode
//! analysis of unimodal coefficient sequences.

mod poly;

use std::collections::HashMap;

pub use poly::{check_unimodal_sum, mode_analysis, IntPolynomial, ModeAnalysis};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// `I(G; t) = sum_k s_k(G) t^k`, where `s_k` counts independent sets of size `k`.
///
/// Uses the vertex deletion recursion `I(G) = I(G - v) + t I(G - N[v])`,
/// pivoting on a maximum-degree vertex (smallest index on ties), splitting
/// into connected components first and memoizing on the surviving-vertex
/// mask. The memo is local to one call, so each computation is single
/// threaded; distinct graphs can be processed in parallel.
pub fn independence_polynomial(g: &Graph) -> IntPolynomial {
    let mut counter = Counter {
        adjacency: g.adjacency(),
        memo: HashMap::new(),
    };
    counter.count(&VertexSet::full(g.vertex_count()))
}

struct Counter<'g> {
    adjacency: &'g [VertexSet],
    memo: HashMap<VertexSet, IntPolynomial>,
}

impl Counter<'_> {
    fn count(&mut self, alive: &VertexSet) -> IntPolynomial {
        if alive.is_empty() {
            return IntPolynomial::one();
        }
        if let Some(p) = self.memo.get(alive) {
            return p.clone();
        }
        let components = self.components(alive);
        let result = if components.len() > 1 {
            components
                .iter()
                .fold(IntPolynomial::one(), |acc, c| &acc * &self.count(c))
        } else if alive.len() == 1 {
            IntPolynomial::from_i64s(&[1, 1])
        } else {
            let pivot = alive
                .iter()
                .max_by_key(|&v| (self.adjacency[v].intersection(alive).len(), std::cmp::Reverse(v)))
                .expect("alive is nonempty");
            let mut without = alive.clone();
            without.remove(pivot);
            let mut closed = self.adjacency[pivot].clone();
            closed.insert(pivot);
            let outside = alive.difference(&closed);
            let a = self.count(&without);
            let b = self.count(&outside);
            &a + &b.shift(1)
        };
        self.memo.insert(alive.clone(), result.clone());
        result
    }

    fn components(&self, alive: &VertexSet) -> Vec<VertexSet> {
        let mut rest = alive.clone();
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp.clone();
            while !frontier.is_empty() {
                let mut next = VertexSet::new();
                for v in frontier.iter() {
                    next = next.union(&self.adjacency[v]);
                }
                next = next.intersection(alive).difference(&comp);
                comp = comp.union(&next);
                frontier = next;
            }
            rest = rest.difference(&comp);
            out.push(comp);
        }
        out
    }
}

/// All independent sets of exactly `k` vertices, ordered lexicographically by
/// their sorted member lists.
pub fn independent_sets_of_size(g: &Graph, k: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    extend_independent(g, 0, k, &VertexSet::new(), &mut current, &mut out);
    out
}

fn extend_independent(
    g: &Graph,
    start: usize,
    k: usize,
    blocked: &VertexSet,
    current: &mut Vec<usize>,
    out: &mut Vec<VertexSet>,
) {
    if current.len() == k {
        out.push(current.iter().copied().collect());
        return;
    }
    let n = g.vertex_count();
    let needed = k - current.len();
    for v in start..n {
        if n - v < needed {
            break;
        }
        if blocked.contains(v) {
            continue;
        }
        current.push(v);
        let mut next_blocked = blocked.union(&g.adjacency()[v]);
        next_blocked.insert(v);
        extend_independent(g, v + 1, k, &next_blocked, current, out);
        current.pop();
    }
}

/// Published modes `λ_1, …, λ_20` of `I(P_n; t)`.
pub const PATH_MODE_TABLE: [usize; 20] = [0, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5, 6];

/// `λ_n`, the mode of `I(P_n; t)`.
pub fn mode_of_path(n: usize) -> Result<usize> {
    let g = Graph::path(n)?;
    let analysis = mode_analysis(&independence_polynomial(&g))?;
    analysis
        .mode
        .ok_or_else(|| Error::Domain(format!("I(P_{n}; t) is not unimodal")))
}

/// Mode of `I(L_{m,n}; t)`, or `None` if the polynomial is not unimodal.
pub fn mode_of_lollipop(m: usize, n: usize) -> Result<Option<usize>> {
    let g = Graph::lollipop(m, n)?;
    Ok(mode_analysis(&independence_polynomial(&g))?.mode)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive count over all subsets; the oracle for small graphs.
    fn brute_force(g: &Graph) -> IntPolynomial {
        let n = g.vertex_count();
        let mut counts = vec![0u64; n + 1];
        for mask in 0u64..(1 << n) {
            let s: VertexSet = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            if g.is_independent(&s) {
                counts[s.len()] += 1;
            }
        }
        IntPolynomial::from_u64s(&counts)
    }

    #[test]
    fn small_polynomials() {
        let empty = Graph::custom(0, &[]).unwrap();
        assert_eq!(independence_polynomial(&empty), IntPolynomial::one());
        let p4 = Graph::path(4).unwrap();
        assert_eq!(brute_force(&p4), IntPolynomial::from_i64s(&[1, 4, 3]));
        assert_eq!(independence_polynomial(&p4), IntPolynomial::from_i64s(&[1, 4, 3]));
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(independence_polynomial(&k5), IntPolynomial::from_i64s(&[1, 5]));
    }

    #[test]
    fn lollipop_4_9() {
        let g = Graph::lollipop(4, 9).unwrap();
        let expected = IntPolynomial::from_i64s(&[1, 13, 63, 140, 140, 51, 3]);
        assert_eq!(independence_polynomial(&g), expected);
        assert_eq!(brute_force(&g), expected);
        assert_eq!(independent_sets_of_size(&g, 3).len(), 140);
    }

    #[test]
    fn enumeration_order() {
        let p3 = Graph::path(3).unwrap();
        assert_eq!(independent_sets_of_size(&p3, 0), vec![VertexSet::new()]);
        assert_eq!(
            independent_sets_of_size(&p3, 2),
            vec![[0, 2].into_iter().collect::<VertexSet>()]
        );
        assert!(independent_sets_of_size(&p3, 3).is_empty());
        let p5 = Graph::path(5).unwrap();
        let sets: Vec<Vec<usize>> = independent_sets_of_size(&p5, 2)
            .iter()
            .map(VertexSet::to_vec)
            .collect();
        let mut sorted = sets.clone();
        sorted.sort();
        assert_eq!(sets, sorted);
        assert_eq!(sets.len(), 6);
    }

    #[test]
    fn table_one_spot_checks() {
        assert_eq!(mode_of_path(1).unwrap(), 0);
        assert_eq!(mode_of_path(12).unwrap(), 4);
        assert_eq!(mode_of_path(20).unwrap(), 6);
        assert!(mode_of_path(0).is_err());
    }

    #[test]
    fn path_mode_steps_by_at_most_one() {
        let modes: Vec<usize> = (1..=31).map(|n| mode_of_path(n).unwrap()).collect();
        for w in modes.windows(2) {
            assert!(w[0] <= w[1] && w[1] <= w[0] + 1, "{modes:?}");
        }
    }

    #[test]
    fn lollipop_growth_identity() {
        // Deleting a clique vertex not on the bridge leaves L_{m,n}; its closed
        // neighborhood removal leaves P_n.
        for n in 1..=8 {
            let pn = independence_polynomial(&Graph::path(n).unwrap());
            for m in 1..=6 {
                let lhs = independence_polynomial(&Graph::lollipop(m + 1, n).unwrap());
                let rhs = &independence_polynomial(&Graph::lollipop(m, n).unwrap()) + &pn.shift(1);
                assert_eq!(lhs, rhs);
            }
        }
    }
}
