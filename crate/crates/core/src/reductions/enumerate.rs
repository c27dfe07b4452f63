//! Isomorphism classes of small source instances.
//!
//! Families grow one item per level and each candidate is reduced to a
//! canonical form, kept if new. Canonical forms minimize over the labelings
//! that respect an invariant ordering (item degrees), which is exact: two
//! instances share a form iff they are isomorphic.

use std::collections::BTreeSet;

use itertools::Itertools;

use super::{CoverInstance, GraphInstance, X3cInstance};

/// All orderings that keep each class together, classes in the given order.
fn class_orderings(classes: &[Vec<usize>]) -> Vec<Vec<usize>> {
    if classes.is_empty() {
        return vec![Vec::new()];
    }
    classes
        .iter()
        .map(|c| c.iter().copied().permutations(c.len()))
        .multi_cartesian_product()
        .map(|parts| parts.concat())
        .collect()
}

/// Groups `0..n` by `key`, classes sorted by key.
fn classes_by<K: Ord + Clone>(n: usize, key: impl Fn(usize) -> K) -> Vec<Vec<usize>> {
    let mut idx: Vec<(K, usize)> = (0..n).map(|i| (key(i), i)).collect();
    idx.sort();
    idx.into_iter()
        .chunk_by(|(k, _)| k.clone())
        .into_iter()
        .map(|(_, g)| g.map(|(_, i)| i).collect())
        .collect()
}

/// Canonical form of a hypergraph on `n` items with ordered-up-to-iso
/// `edges`: for every invariant-respecting edge order, each item gets the
/// bitmask of edges containing it; the form is the smallest sorted list of
/// these masks.
fn hypergraph_form(n: usize, edges: &[Vec<usize>]) -> Vec<u32> {
    let degree: Vec<usize> = (0..n).map(|e| edges.iter().filter(|t| t.contains(&e)).count()).collect();
    let inv = |j: usize| {
        let mut d: Vec<usize> = edges[j].iter().map(|&e| degree[e]).collect();
        d.sort_unstable();
        (edges[j].len(), d)
    };
    let classes = classes_by(edges.len(), inv);
    class_orderings(&classes)
        .into_iter()
        .map(|order| {
            let mut masks: Vec<u32> = (0..n)
                .map(|e| {
                    order
                        .iter()
                        .enumerate()
                        .filter(|(_, &j)| edges[j].contains(&e))
                        .fold(0, |m, (pos, _)| m | 1 << pos)
                })
                .collect();
            masks.sort_unstable();
            masks
        })
        .min()
        .unwrap_or_default()
}

fn edges_of_form(form: &[u32], count: usize) -> Vec<Vec<usize>> {
    (0..count)
        .map(|j| (0..form.len()).filter(|&e| form[e] >> j & 1 == 1).collect())
        .collect()
}

/// X3C instances up to isomorphism with `3n ≤ max_elements` elements and
/// `1..=max_triples` triples (repeats allowed).
pub fn x3c_classes(max_elements: usize, max_triples: usize) -> Vec<X3cInstance> {
    let mut out = Vec::new();
    for elements in (3..=max_elements).step_by(3) {
        let all: Vec<Vec<usize>> = (0..elements).combinations(3).collect();
        let mut level: BTreeSet<Vec<u32>> = BTreeSet::new();
        level.insert(vec![0; elements]);
        for m in 1..=max_triples {
            let mut next = BTreeSet::new();
            for form in &level {
                let edges = edges_of_form(form, m - 1);
                for t in &all {
                    let mut grown = edges.clone();
                    grown.push(t.clone());
                    next.insert(hypergraph_form(elements, &grown));
                }
            }
            for form in &next {
                let triples = edges_of_form(form, m)
                    .into_iter()
                    .map(|t| [t[0], t[1], t[2]])
                    .collect();
                out.push(X3cInstance { elements, triples });
            }
            level = next;
        }
    }
    out
}

/// Cover instances up to isomorphism: ground `1..=max_ground`, families of
/// `1..=max_family` distinct nonempty members. `bound` is left at 0.
pub fn cover_classes(max_ground: usize, max_family: usize) -> Vec<CoverInstance> {
    let mut out = Vec::new();
    for ground in 1..=max_ground {
        let all: Vec<Vec<usize>> = (1u32..1 << ground)
            .map(|m| (0..ground).filter(|&e| m >> e & 1 == 1).collect())
            .collect();
        let mut level: BTreeSet<Vec<u32>> = BTreeSet::new();
        level.insert(vec![0; ground]);
        for f in 1..=max_family {
            let mut next = BTreeSet::new();
            for form in &level {
                let members = edges_of_form(form, f - 1);
                for s in &all {
                    if members.contains(s) {
                        continue;
                    }
                    let mut grown = members.clone();
                    grown.push(s.clone());
                    next.insert(hypergraph_form(ground, &grown));
                }
            }
            for form in &next {
                out.push(CoverInstance { ground, family: edges_of_form(form, f), bound: 0 });
            }
            level = next;
        }
    }
    out
}

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

fn graph_form(n: usize, edges: &[(usize, usize)]) -> u32 {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let inv = |v: usize| {
        let mut nd: Vec<usize> = adj[v].iter().map(|&u| adj[u].len()).collect();
        nd.sort_unstable();
        (adj[v].len(), nd)
    };
    let pairs = pair_index(n);
    class_orderings(&classes_by(n, inv))
        .into_iter()
        .map(|order| {
            let mut pos = vec![0; n];
            for (i, &v) in order.iter().enumerate() {
                pos[v] = i;
            }
            edges.iter().fold(0u32, |m, &(a, b)| {
                let (x, y) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
                m | 1 << pairs.iter().position(|&p| p == (x, y)).expect("pair exists")
            })
        })
        .min()
        .unwrap_or(0)
}

fn graph_of_form(n: usize, form: u32) -> Vec<(usize, usize)> {
    pair_index(n)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| form >> i & 1 == 1)
        .map(|(_, p)| p)
        .collect()
}

/// Graphs up to isomorphism on `1..=max_vertices` vertices; `bound` is 0.
pub fn graph_classes(max_vertices: usize) -> Vec<GraphInstance> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let pairs = pair_index(n);
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        let mut level: BTreeSet<u32> = BTreeSet::from([0]);
        while !level.is_empty() {
            seen.extend(level.iter().copied());
            let mut next = BTreeSet::new();
            for &form in &level {
                let edges = graph_of_form(n, form);
                for (i, p) in pairs.iter().enumerate() {
                    if form >> i & 1 == 0 {
                        let mut grown = edges.clone();
                        grown.push(*p);
                        next.insert(graph_form(n, &grown));
                    }
                }
            }
            level = next;
        }
        out.extend(seen.into_iter().map(|f| GraphInstance { vertices: n, edges: graph_of_form(n, f), bound: 0 }));
    }
    out
}

/// Every labelled graph on `n` vertices; `bound` is 0.
pub fn labelled_graphs(n: usize) -> impl Iterator<Item = GraphInstance> {
    let pairs = pair_index(n);
    (0u64..1 << pairs.len()).map(move |m| GraphInstance {
        vertices: n,
        edges: pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &p)| p).collect(),
        bound: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graph_counts() {
        // 1, 2, 4, 11 graphs on 1..=4 vertices
        let g = graph_classes(4);
        let count = |n| g.iter().filter(|x| x.vertices == n).count();
        assert_eq!([count(1), count(2), count(3), count(4)], [1, 2, 4, 11]);
        assert_eq!(labelled_graphs(3).count(), 8);
    }

    #[test]
    fn x3c_three_elements() {
        // On 3 elements only one triple exists; m copies give one class each.
        let x = x3c_classes(3, 5);
        assert_eq!(x.len(), 5);
        assert!(x.iter().all(|i| i.check().is_ok()));
    }

    #[test]
    fn cover_small_counts() {
        // Ground 1: {{0}}. Ground 2: 3 families of size 1 up to swap ({0},{0,1}),
        // size 2: {0},{1} | {0},{01} , size 3: all.
        let c = cover_classes(2, 3);
        let count = |g, f| c.iter().filter(|x| x.ground == g && x.family.len() == f).count();
        assert_eq!(count(1, 1), 1);
        assert_eq!(count(2, 1), 2);
        assert_eq!(count(2, 2), 2);
        assert_eq!(count(2, 3), 1);
    }

    #[test]
    fn forms_are_invariant() {
        let a = graph_form(4, &[(0, 1), (1, 2)]);
        let b = graph_form(4, &[(2, 3), (3, 0)]);
        assert_eq!(a, b);
        let c = graph_form(4, &[(0, 1), (2, 3)]);
        assert_ne!(a, c);
    }
}
