//! Small directed-graph routines over ordered vertex ids.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

fn successors<V: Ord + Copy>(edges: &BTreeSet<(V, V)>) -> BTreeMap<V, Vec<V>> {
    let mut out: BTreeMap<V, Vec<V>> = BTreeMap::new();
    for &(a, b) in edges {
        out.entry(a).or_default().push(b);
    }
    out
}

/// Kahn's algorithm, always taking the smallest available vertex.
/// Returns `None` if the graph has a cycle.
pub fn topological_order<V: Ord + Copy>(vertices: &BTreeSet<V>, edges: &BTreeSet<(V, V)>) -> Option<Vec<V>> {
    let mut indegree: BTreeMap<V, usize> = vertices.iter().map(|&v| (v, 0)).collect();
    for &(a, b) in edges {
        indegree.entry(a).or_insert(0);
        *indegree.entry(b).or_insert(0) += 1;
    }
    let succ = successors(edges);
    let mut ready: BTreeSet<V> = indegree.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
    let mut order = Vec::with_capacity(indegree.len());
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &w in succ.get(&v).into_iter().flatten() {
            let d = indegree.get_mut(&w).expect("every endpoint has an indegree");
            *d -= 1;
            if *d == 0 {
                ready.insert(w);
            }
        }
    }
    (order.len() == indegree.len()).then_some(order)
}

pub fn is_acyclic<V: Ord + Copy>(vertices: &BTreeSet<V>, edges: &BTreeSet<(V, V)>) -> bool {
    topological_order(vertices, edges).is_some()
}

/// Every two-step path `a -> b -> c` with `a != c` has the shortcut `a -> c`.
pub fn is_transitively_closed<V: Ord + Copy>(edges: &BTreeSet<(V, V)>) -> bool {
    let succ = successors(edges);
    edges.iter().all(|&(a, b)| {
        succ.get(&b)
            .into_iter()
            .flatten()
            .all(|&c| c == a || edges.contains(&(a, c)))
    })
}

/// All pairs `(a, c)` joined by a non-empty path.
pub fn transitive_closure<V: Ord + Copy>(edges: &BTreeSet<(V, V)>) -> BTreeSet<(V, V)> {
    let succ = successors(edges);
    let mut closure = BTreeSet::new();
    for &start in succ.keys() {
        let mut stack: Vec<V> = succ[&start].clone();
        let mut seen = BTreeSet::new();
        while let Some(v) = stack.pop() {
            if seen.insert(v) {
                closure.insert((start, v));
                stack.extend(succ.get(&v).into_iter().flatten().copied());
            }
        }
    }
    closure
}

/// Edges of an acyclic graph not implied by a longer path.
pub fn transitive_reduction<V: Ord + Copy>(edges: &BTreeSet<(V, V)>) -> BTreeSet<(V, V)> {
    let closure = transitive_closure(edges);
    let succ = successors(edges);
    edges
        .iter()
        .copied()
        .filter(|&(a, c)| {
            !succ[&a]
                .iter()
                .any(|&b| b != c && closure.contains(&(b, c)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(edges: &[(u8, u8)]) -> BTreeSet<(u8, u8)> {
        edges.iter().copied().collect()
    }

    #[test]
    fn two_cycle_is_not_acyclic() {
        let v: BTreeSet<u8> = [1, 2].into();
        assert!(!is_acyclic(&v, &set(&[(1, 2), (2, 1)])));
        assert!(topological_order(&v, &set(&[(1, 2), (2, 1)])).is_none());
    }

    #[test]
    fn topological_order_prefers_small_vertices() {
        let v: BTreeSet<u8> = [1, 2, 3, 4].into();
        assert_eq!(topological_order(&v, &set(&[(3, 1), (4, 2)])), Some(alloc::vec![3, 1, 4, 2]));
    }

    #[test]
    fn closure_and_reduction_of_a_chain() {
        let chain = set(&[(4, 3), (3, 2)]);
        let closed = set(&[(4, 3), (3, 2), (4, 2)]);
        assert!(!is_transitively_closed(&chain));
        assert!(is_transitively_closed(&closed));
        assert_eq!(transitive_closure(&chain), closed);
        assert_eq!(transitive_reduction(&closed), chain);
    }

    #[test]
    fn empty_graph() {
        let none = BTreeSet::<(u8, u8)>::new();
        assert!(is_transitively_closed(&none));
        assert!(transitive_reduction(&none).is_empty());
    }
}
