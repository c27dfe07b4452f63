//! Hardness reductions: generators from X3C, Minimum Cover and Independent
//! Set to spill instances, with back-mapping and an exhaustive checker.

mod check;
mod cover;
mod enumerate;
mod graph;
mod source;
mod x3c;

pub use check::{check_reduction, decide_source, CheckReport};
pub use cover::gen_mincover;
pub use enumerate::{cover_classes, graph_classes, labelled_graphs, x3c_classes};
pub use graph::{gen_indepset_h1, gen_indepset_h2};
pub use source::{parse_source, serialize_source, CoverInstance, GraphInstance, Source, X3cInstance};
pub use x3c::gen_x3c;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exact::verify;
use crate::model::{HoleMode, Instance, VarId};
use crate::solution::{SolveError, SpillSolution};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionKind {
    X3c,
    Mincover,
    Indepset2,
    Indepset1,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 4] =
        [ReductionKind::X3c, ReductionKind::Mincover, ReductionKind::Indepset2, ReductionKind::Indepset1];

    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::X3c => "x3c",
            ReductionKind::Mincover => "mincover",
            ReductionKind::Indepset2 => "indepset2",
            ReductionKind::Indepset1 => "indepset1",
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReductionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown reduction `{s}`"))
    }
}

/// What a generated variable stands for in the source problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "role")]
pub enum Role {
    /// Triple `index` of an X3C instance.
    Labeled { index: usize },
    /// Padding at an X3C leaf.
    Filler { element: usize },
    /// Family member `index` of a cover instance.
    Member { index: usize },
    Vertex { index: usize },
    /// Local variable of edge `edge` next to the use of `vertex`.
    Delta { edge: usize, vertex: usize },
    /// Never-spilled layer of the h = 1 construction.
    FFiller,
    /// Never-spilled variable forcing enough vertex spills (h = 1).
    Anchor,
}

/// Correspondence between a source instance and its spill instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    pub kind: ReductionKind,
    pub source: Source,
    /// Bound of the source question (cover size, stable set size, ...).
    pub k: usize,
    /// Register count of the spill question.
    pub registers: usize,
    pub mode: HoleMode,
    /// Spill-cost budget: the source answer is yes iff some spill set of at
    /// most this cost reaches `registers`.
    pub budget: i64,
    pub alpha: Option<i64>,
    pub beta: Option<i64>,
    /// Role of every variable, by name.
    pub roles: BTreeMap<String, Role>,
}

/// A generated instance with its certificate.
#[derive(Debug, Clone)]
pub struct Reduction<W> {
    pub instance: Instance<W>,
    pub certificate: ReductionCertificate,
}

impl<W: Weight> Reduction<W> {
    pub fn role(&self, v: VarId) -> Role {
        self.certificate.roles[&self.instance.var(v).name]
    }

    pub fn budget(&self) -> W {
        signed::<W>(self.certificate.budget)
    }

    /// Whether `sol` is a yes-certificate: it fits `registers` and costs at
    /// most the budget.
    pub fn accepts(&self, sol: &SpillSolution<W>) -> bool {
        let fits = verify(&self.instance, &sol.spilled, self.certificate.registers, self.certificate.mode)
            .map(|v| v.is_valid())
            .unwrap_or(false);
        fits && sol.cost.weight_cmp(&self.budget()).is_le()
    }
}

pub(crate) fn signed<W: Weight>(n: i64) -> W {
    let w = W::from_count(n.unsigned_abs() as usize);
    if n < 0 {
        -w
    } else {
        w
    }
}

/// A source-problem solution recovered from a spill set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "items")]
pub enum SourceSolution {
    /// Indices of triples forming an exact cover.
    ExactCover(Vec<usize>),
    /// Indices of family members covering the ground set.
    Cover(Vec<usize>),
    /// Vertices of an independent set of the requested size.
    IndependentSet(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReductionError {
    #[error("invalid source instance: {0}")]
    InvalidSource(String),
    #[error("no source solution: {0}")]
    NoMapping(String),
    #[error("source instance too large for exhaustive checking: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Restricts a feasible, within-budget spill set to its role-tagged
/// variables and normalizes it into a source solution.
pub fn map_back<W: Weight>(
    reduction: &Reduction<W>,
    sol: &SpillSolution<W>,
) -> Result<SourceSolution, ReductionError> {
    if !reduction.accepts(sol) {
        return Err(ReductionError::NoMapping(format!(
            "spill set of cost {} does not reach {} registers within budget {}",
            sol.cost, reduction.certificate.registers, reduction.certificate.budget
        )));
    }
    let roles: Vec<Role> = sol.spilled.iter().map(|&v| reduction.role(v)).collect();
    let cert = &reduction.certificate;
    match &cert.source {
        Source::X3c(x) => {
            if roles.iter().any(|r| matches!(r, Role::Filler { .. })) {
                return Err(ReductionError::NoMapping("a filler variable is spilled".into()));
            }
            let triples: Vec<usize> = roles
                .iter()
                .filter_map(|r| match r {
                    Role::Labeled { index } => Some(*index),
                    _ => None,
                })
                .collect();
            if !x.is_exact_cover(&triples) {
                return Err(ReductionError::NoMapping("spilled triples are not an exact cover".into()));
            }
            Ok(SourceSolution::ExactCover(triples))
        }
        Source::Cover(c) => {
            let members: Vec<usize> = roles
                .iter()
                .filter_map(|r| match r {
                    Role::Member { index } => Some(*index),
                    _ => None,
                })
                .collect();
            if !c.is_cover(&members) || members.len() > c.bound {
                return Err(ReductionError::NoMapping("spilled members do not cover the ground set".into()));
            }
            Ok(SourceSolution::Cover(members))
        }
        Source::Graph(g) => {
            let mut set: Vec<usize> = roles
                .iter()
                .filter_map(|r| match r {
                    Role::Vertex { index } => Some(*index),
                    _ => None,
                })
                .collect();
            if !g.is_independent(&set) {
                return Err(ReductionError::NoMapping("spilled vertices are adjacent".into()));
            }
            // A spill of K-1 isolated vertices is padded with any other vertex.
            for v in 0..g.vertices {
                if set.len() >= g.bound {
                    break;
                }
                if !set.contains(&v) && g.is_independent(&[set.clone(), vec![v]].concat()) {
                    set.push(v);
                }
            }
            set.sort_unstable();
            if set.len() < g.bound {
                return Err(ReductionError::NoMapping("too few vertices spilled".into()));
            }
            set.truncate(g.bound);
            Ok(SourceSolution::IndependentSet(set))
        }
    }
}

/// Generates the spill instance of `kind` for `source`.
pub fn generate<W: Weight>(source: &Source, kind: ReductionKind) -> Result<Reduction<W>, ReductionError> {
    match (kind, source) {
        (ReductionKind::X3c, Source::X3c(x)) => gen_x3c(x),
        (ReductionKind::Mincover, Source::Cover(c)) => gen_mincover(c),
        (ReductionKind::Indepset2, Source::Graph(g)) => gen_indepset_h2(g),
        (ReductionKind::Indepset1, Source::Graph(g)) => gen_indepset_h1(g),
        (kind, source) => Err(ReductionError::InvalidSource(format!(
            "reduction {kind} does not take a {} instance",
            source.kind_name()
        ))),
    }
}
