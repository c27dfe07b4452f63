use std::collections::BTreeSet;

use super::{Instance, VarId};
use crate::weight::Weight;

/// Result of a chordality test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chordality {
    pub chordal: bool,
    /// Perfect elimination ordering when `chordal` holds.
    pub elimination_order: Option<Vec<usize>>,
}

/// Adjacency sets of the interference graph: two variables interfere when
/// they are live at a common sample.
pub fn interference_graph<W: Weight>(instance: &Instance<W>) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); instance.num_vars()];
    for s in 0..instance.num_samples() {
        let live = instance.live_at(s);
        for (i, &VarId(a)) in live.iter().enumerate() {
            for &VarId(b) in &live[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    adj
}

pub fn is_chordal<W: Weight>(instance: &Instance<W>) -> Chordality {
    check(&interference_graph(instance))
}

/// Chordality of an explicit graph on vertices `0..n`.
pub fn is_chordal_graph(n: usize, edges: &[(usize, usize)]) -> Chordality {
    let mut adj = vec![BTreeSet::new(); n];
    for &(a, b) in edges {
        if a != b {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    check(&adj)
}

fn check(adj: &[BTreeSet<usize>]) -> Chordality {
    let order = maximum_cardinality_search(adj);
    let chordal = is_perfect_elimination_order(adj, &order);
    Chordality { chordal, elimination_order: chordal.then_some(order) }
}

/// Reverse of a maximum cardinality search visit order; a perfect
/// elimination ordering whenever the graph is chordal.
fn maximum_cardinality_search(adj: &[BTreeSet<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !numbered[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("an unnumbered vertex remains");
        numbered[v] = true;
        visit.push(v);
        for &u in &adj[v] {
            if !numbered[u] {
                weight[u] += 1;
            }
        }
    }
    visit.reverse();
    visit
}

fn is_perfect_elimination_order(adj: &[BTreeSet<usize>], order: &[usize]) -> bool {
    let mut pos = vec![0; adj.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order.iter().all(|&v| {
        let later: Vec<usize> = adj[v].iter().copied().filter(|&u| pos[u] > pos[v]).collect();
        let Some(&parent) = later.iter().min_by_key(|&&u| pos[u]) else {
            return true;
        };
        later.iter().all(|&u| u == parent || adj[parent].contains(&u))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_cycle_is_not_chordal() {
        let c = is_chordal_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(!c.chordal);
        assert!(c.elimination_order.is_none());
    }

    #[test]
    fn triangulated_cycle_is_chordal() {
        let c = is_chordal_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
        assert!(c.chordal);
        assert_eq!(c.elimination_order.unwrap().len(), 4);
    }

    #[test]
    fn empty_graph() {
        assert!(is_chordal_graph(0, &[]).chordal);
    }
}
