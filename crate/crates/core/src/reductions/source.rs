//! Source problems of the reductions and their text formats.
//!
//! ```text
//! format x3c-v1        format cover-v1      format graph-v1
//! elements 6           ground 3             vertices 3
//! triple 1 2 3         subset 1 2           edge 1 2
//! triple 4 5 6         subset 3             edge 2 3
//!                      bound 2              bound 1
//! ```
//! Items are numbered from 1 in files and from 0 in memory.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::ReductionError;

/// Exact Cover by 3-Sets. Triples may repeat.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct X3cInstance {
    pub elements: usize,
    pub triples: Vec<[usize; 3]>,
}

impl X3cInstance {
    pub fn new(elements: usize, triples: Vec<[usize; 3]>) -> Result<Self, ReductionError> {
        let x = X3cInstance { elements, triples };
        x.check()?;
        Ok(x)
    }

    pub fn check(&self) -> Result<(), ReductionError> {
        let bad = |m: String| Err(ReductionError::InvalidSource(m));
        if self.elements == 0 || self.elements % 3 != 0 {
            return bad(format!("element count {} is not a positive multiple of 3", self.elements));
        }
        if self.triples.is_empty() {
            return bad("at least one triple is required".into());
        }
        for t in &self.triples {
            if t.iter().any(|&e| e >= self.elements) || t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return bad(format!("triple {t:?} is not three distinct elements"));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.elements / 3
    }

    pub fn is_exact_cover(&self, chosen: &[usize]) -> bool {
        let mut hit = vec![false; self.elements];
        for &i in chosen {
            let Some(t) = self.triples.get(i) else {
                return false;
            };
            for &e in t {
                if std::mem::replace(&mut hit[e], true) {
                    return false;
                }
            }
        }
        hit.iter().all(|&h| h)
    }

    /// An exact cover, by backtracking on the lowest uncovered element.
    pub fn solve(&self) -> Option<Vec<usize>> {
        fn go(x: &X3cInstance, hit: &mut Vec<bool>, chosen: &mut Vec<usize>) -> bool {
            let Some(e) = hit.iter().position(|&h| !h) else {
                return true;
            };
            for (i, t) in x.triples.iter().enumerate() {
                if t.contains(&e) && t.iter().all(|&f| !hit[f]) {
                    t.iter().for_each(|&f| hit[f] = true);
                    chosen.push(i);
                    if go(x, hit, chosen) {
                        return true;
                    }
                    chosen.pop();
                    t.iter().for_each(|&f| hit[f] = false);
                }
            }
            false
        }
        let mut chosen = Vec::new();
        go(self, &mut vec![false; self.elements], &mut chosen).then_some(chosen)
    }
}

/// Minimum Cover: can at most `bound` members cover the ground set?
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoverInstance {
    pub ground: usize,
    /// Members as sorted element lists.
    pub family: Vec<Vec<usize>>,
    pub bound: usize,
}

impl CoverInstance {
    pub fn new(ground: usize, family: Vec<Vec<usize>>, bound: usize) -> Result<Self, ReductionError> {
        let mut c = CoverInstance { ground, family, bound };
        for m in &mut c.family {
            m.sort_unstable();
            m.dedup();
        }
        c.check()?;
        Ok(c)
    }

    pub fn check(&self) -> Result<(), ReductionError> {
        let bad = |m: String| Err(ReductionError::InvalidSource(m));
        if self.ground == 0 {
            return bad("ground set is empty".into());
        }
        if self.family.is_empty() {
            return bad("family is empty".into());
        }
        for m in &self.family {
            if m.is_empty() || m.iter().any(|&e| e >= self.ground) {
                return bad(format!("member {m:?} is empty or leaves the ground set"));
            }
        }
        Ok(())
    }

    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        let mut hit = vec![false; self.ground];
        for &i in chosen {
            match self.family.get(i) {
                Some(m) => m.iter().for_each(|&e| hit[e] = true),
                None => return false,
            }
        }
        hit.iter().all(|&h| h)
    }

    /// Size of a smallest cover, if any.
    pub fn min_cover(&self) -> Option<usize> {
        let f = self.family.len();
        let masks: Vec<u64> = self.family.iter().map(|m| m.iter().fold(0, |a, &e| a | 1 << e)).collect();
        let full = (1u64 << self.ground) - 1;
        (0u64..1 << f)
            .filter(|s| (0..f).filter(|i| s >> i & 1 == 1).fold(0, |a, i| a | masks[i]) == full)
            .map(|s| s.count_ones() as usize)
            .min()
    }
}

/// Independent Set: does the graph have `bound` pairwise non-adjacent vertices?
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphInstance {
    pub vertices: usize,
    /// Edges with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub bound: usize,
}

impl GraphInstance {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>, bound: usize) -> Result<Self, ReductionError> {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort_unstable();
        let g = GraphInstance { vertices, edges, bound };
        g.check()?;
        Ok(g)
    }

    pub fn check(&self) -> Result<(), ReductionError> {
        let bad = |m: String| Err(ReductionError::InvalidSource(m));
        if self.bound > self.vertices {
            return bad(format!("bound {} exceeds the vertex count {}", self.bound, self.vertices));
        }
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if a >= b || b >= self.vertices {
                return bad(format!("edge ({a}, {b}) is a loop or leaves the vertex set"));
            }
            if i > 0 && self.edges[i - 1] == (a, b) {
                return bad(format!("edge ({a}, {b}) is repeated"));
            }
        }
        Ok(())
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        self.edges.iter().all(|&(a, b)| !(set.contains(&a) && set.contains(&b)))
    }

    pub fn max_independent_set(&self) -> usize {
        let n = self.vertices;
        let adj: Vec<u64> = (0..n)
            .map(|v| {
                self.edges
                    .iter()
                    .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
                    .fold(0, |m, u| m | 1 << u)
            })
            .collect();
        (0u64..1 << n)
            .filter(|s| (0..n).all(|v| s >> v & 1 == 0 || adj[v] & s == 0))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Edges with both ends in `set`.
    pub fn inner_edges(&self, set: &[usize]) -> usize {
        self.edges.iter().filter(|&&(a, b)| set.contains(&a) && set.contains(&b)).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    X3c(X3cInstance),
    Cover(CoverInstance),
    Graph(GraphInstance),
}

impl Source {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Source::X3c(_) => "x3c",
            Source::Cover(_) => "cover",
            Source::Graph(_) => "graph",
        }
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> ReductionError {
    ReductionError::InvalidSource(format!("line {line}: {}", msg.into()))
}

/// Parses an `x3c-v1`, `cover-v1` or `graph-v1` file.
pub fn parse_source(text: &str) -> Result<Source, ReductionError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (n, header) = lines.next().ok_or_else(|| syntax(0, "empty file"))?;
    let tag = header
        .strip_prefix("format ")
        .ok_or_else(|| syntax(n, "expected `format x3c-v1|cover-v1|graph-v1`"))?
        .trim();
    let mut size: Option<usize> = None;
    let mut bound: Option<usize> = None;
    let mut items: Vec<Vec<usize>> = Vec::new();
    let (size_kw, item_kw, has_bound) = match tag {
        "x3c-v1" => ("elements", "triple", false),
        "cover-v1" => ("ground", "subset", true),
        "graph-v1" => ("vertices", "edge", true),
        other => return Err(syntax(n, format!("unknown format `{other}`"))),
    };
    for (n, line) in lines {
        let mut words = line.split_whitespace();
        let kw = words.next().unwrap_or("");
        let nums: Vec<usize> = words
            .map(|w| w.parse::<usize>().map_err(|_| syntax(n, format!("bad number `{w}`"))))
            .collect::<Result<_, _>>()?;
        match kw {
            k if k == size_kw && nums.len() == 1 => size = Some(nums[0]),
            "bound" if has_bound && nums.len() == 1 => bound = Some(nums[0]),
            k if k == item_kw => {
                if nums.contains(&0) {
                    return Err(syntax(n, "items are numbered from 1"));
                }
                items.push(nums.iter().map(|x| x - 1).collect());
            }
            other => return Err(syntax(n, format!("unexpected record `{other}`"))),
        }
    }
    let size = size.ok_or_else(|| syntax(0, format!("missing `{size_kw}` record")))?;
    match tag {
        "x3c-v1" => {
            let triples = items
                .into_iter()
                .map(|t| <[usize; 3]>::try_from(t).map_err(|t| syntax(0, format!("triple {t:?} needs 3 elements"))))
                .collect::<Result<_, _>>()?;
            Ok(Source::X3c(X3cInstance::new(size, triples)?))
        }
        "cover-v1" => {
            let bound = bound.ok_or_else(|| syntax(0, "missing `bound` record"))?;
            Ok(Source::Cover(CoverInstance::new(size, items, bound)?))
        }
        _ => {
            let bound = bound.ok_or_else(|| syntax(0, "missing `bound` record"))?;
            let edges = items
                .into_iter()
                .map(|e| match e.as_slice() {
                    &[a, b] => Ok((a, b)),
                    _ => Err(syntax(0, format!("edge {e:?} needs 2 vertices"))),
                })
                .collect::<Result<_, _>>()?;
            Ok(Source::Graph(GraphInstance::new(size, edges, bound)?))
        }
    }
}

pub fn serialize_source(source: &Source) -> String {
    let mut out = String::new();
    let join = |xs: &[usize]| xs.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ");
    match source {
        Source::X3c(x) => {
            let _ = writeln!(out, "format x3c-v1\nelements {}", x.elements);
            for t in &x.triples {
                let _ = writeln!(out, "triple {}", join(t));
            }
        }
        Source::Cover(c) => {
            let _ = writeln!(out, "format cover-v1\nground {}", c.ground);
            for m in &c.family {
                let _ = writeln!(out, "subset {}", join(m));
            }
            let _ = writeln!(out, "bound {}", c.bound);
        }
        Source::Graph(g) => {
            let _ = writeln!(out, "format graph-v1\nvertices {}", g.vertices);
            for &(a, b) in &g.edges {
                let _ = writeln!(out, "edge {} {}", a + 1, b + 1);
            }
            let _ = writeln!(out, "bound {}", g.bound);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x3c_solver() {
        let x = X3cInstance::new(6, vec![[0, 1, 2], [0, 3, 4], [3, 4, 5]]).unwrap();
        assert_eq!(x.solve(), Some(vec![0, 2]));
        let y = X3cInstance::new(6, vec![[0, 1, 2], [0, 3, 4], [0, 4, 5]]).unwrap();
        assert_eq!(y.solve(), None);
        assert!(X3cInstance::new(4, vec![[0, 1, 2]]).is_err());
    }

    #[test]
    fn cover_and_graph_deciders() {
        let c = CoverInstance::new(2, vec![vec![0], vec![1], vec![0, 1]], 1).unwrap();
        assert_eq!(c.min_cover(), Some(1));
        let triangle = GraphInstance::new(3, vec![(0, 1), (1, 2), (0, 2)], 2).unwrap();
        assert_eq!(triangle.max_independent_set(), 1);
        assert_eq!(triangle.inner_edges(&[0, 1, 2]), 3);
    }

    #[test]
    fn text_round_trip() {
        for text in [
            "format x3c-v1\nelements 3\ntriple 1 2 3\ntriple 1 2 3\n",
            "format cover-v1\nground 2\nsubset 1\nsubset 2\nsubset 1 2\nbound 1\n",
            "format graph-v1\nvertices 3\nedge 1 2\nedge 2 3\nbound 2\n",
        ] {
            let s = parse_source(text).unwrap();
            assert_eq!(serialize_source(&s), text);
        }
        assert!(parse_source("format graph-v1\nvertices 2\nedge 1 1\nbound 1\n").is_err());
        assert!(parse_source("format graph-v1\nvertices 2\nbound 3\n").is_err());
    }
}
