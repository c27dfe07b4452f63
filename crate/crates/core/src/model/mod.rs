//! Programs, live ranges, chads and register pressure.
//!
//! A program is either a basic block (a chain of points) or a dominance tree.
//! Each point carries at most one instruction which first uses some variables
//! and then defines others, so pressure is sampled twice per point: once at
//! the use moment and once at the def moment. A variable that dies at an
//! instruction is therefore never counted together with the variables that
//! instruction defines.
//!
//! Samples are numbered `2 * point + moment`, with points in preorder, so a
//! sample's ancestors always have smaller indices and the live samples of a
//! variable form a connected subtree of the sample tree (a contiguous run for
//! basic blocks).

mod chordal;
mod pressure;
mod program;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::weight::Weight;

pub use chordal::{is_chordal, is_chordal_graph, interference_graph, Chordality};
pub use pressure::{pressure, HoleMode, PressureProfile};
pub use program::{
    live_ranges, validate, InstrDecl, PointDecl, Program, ProgramKind, RangeDecl, VarDecl,
    Subject, Violation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Linear,
    Tree,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::Linear => "linear",
            Shape::Tree => "tree",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Moment {
    Use,
    Def,
}

impl fmt::Display for Moment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Moment::Use => "use",
            Moment::Def => "def",
        })
    }
}

/// Index of a variable inside an [`Instance`]. Variables are stored sorted by
/// name, so comparing ids compares names lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

/// A pressure sampling moment at a program point (point given by its preorder
/// index, not its label).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SamplePoint {
    pub point: usize,
    pub moment: Moment,
}

impl SamplePoint {
    pub fn from_index(sample: usize) -> Self {
        SamplePoint {
            point: sample / 2,
            moment: if sample % 2 == 0 { Moment::Use } else { Moment::Def },
        }
    }

    pub fn index(self) -> usize {
        2 * self.point + matches!(self.moment, Moment::Def) as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub label: u32,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RangeKind {
    Interval,
    Subtree,
}

/// Points (preorder indices, ascending) covered by a variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiveRange {
    pub kind: RangeKind,
    pub points: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Variable<W> {
    pub name: String,
    pub weight: W,
    pub range: LiveRange,
    /// Live samples, ascending.
    pub samples: Vec<usize>,
    /// Samples where the variable still needs a register once spilled.
    pub chads: Vec<usize>,
    pub def_point: Option<usize>,
    pub use_points: Vec<usize>,
    pub live_in: bool,
    pub live_out: bool,
}

impl<W> Variable<W> {
    /// First live sample, the root of the live subtree.
    pub fn top(&self) -> usize {
        self.samples[0]
    }

    pub fn last(&self) -> usize {
        *self.samples.last().expect("live range is never empty")
    }

    pub fn has_chad(&self, sample: usize) -> bool {
        self.chads.binary_search(&sample).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instruction {
    pub at: usize,
    pub uses: Vec<VarId>,
    pub defs: Vec<VarId>,
}

/// A validated program with derived liveness data. Immutable once built.
#[derive(Debug, Clone)]
pub struct Instance<W = crate::Rational> {
    shape: Shape,
    points: Vec<Point>,
    vars: Vec<Variable<W>>,
    instructions: Option<Vec<Instruction>>,
    live: Vec<Vec<VarId>>,
    chads: Vec<Vec<VarId>>,
    by_name: HashMap<String, VarId>,
    omega: usize,
    h: usize,
    registers: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("invalid program: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("malformed code: variable `{0}` is used but never defined and not live-in")]
    MalformedCode(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable id {0} out of range")]
    VarOutOfRange(usize),
    #[error("hole semantics need a code-backed instance (chads are unknown for pure ranges)")]
    HolesNeedCode,
}

fn format_violations(vs: &[Violation]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

impl<W: Weight> Instance<W> {
    /// Validates and builds an instance.
    pub fn new(program: Program<W>) -> Result<Self, ModelError> {
        program::build(program)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_linear(&self) -> bool {
        self.shape == Shape::Linear
    }

    /// True when chads are known (the instance was built from instructions).
    pub fn is_code_backed(&self) -> bool {
        self.instructions.is_some()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Number of program points.
    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn num_samples(&self) -> usize {
        2 * self.points.len()
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[Variable<W>] {
        &self.vars
    }

    pub fn var(&self, id: VarId) -> &Variable<W> {
        &self.vars[id.0]
    }

    pub fn var_ids(&self) -> impl Iterator<Item = VarId> {
        (0..self.vars.len()).map(VarId)
    }

    pub fn var_by_name(&self, name: &str) -> Option<VarId> {
        self.by_name.get(name).copied()
    }

    pub fn weight(&self, id: VarId) -> &W {
        &self.vars[id.0].weight
    }

    pub fn instructions(&self) -> Option<&[Instruction]> {
        self.instructions.as_deref()
    }

    /// Variables live at a sample, ascending.
    pub fn live_at(&self, sample: usize) -> &[VarId] {
        &self.live[sample]
    }

    /// Variables with a chad at a sample, ascending.
    pub fn chads_at(&self, sample: usize) -> &[VarId] {
        &self.chads[sample]
    }

    /// Maxlive: largest number of simultaneously live variables.
    pub fn omega(&self) -> usize {
        self.omega
    }

    /// Maximum number of variables used, or defined, by one instruction.
    pub fn h(&self) -> usize {
        self.h
    }

    /// Register count declared in the instance header, if any.
    pub fn registers(&self) -> Option<usize> {
        self.registers
    }

    pub fn point_label(&self, point: usize) -> u32 {
        self.points[point].label
    }

    pub fn sample_parent(&self, sample: usize) -> Option<usize> {
        if sample % 2 == 1 {
            Some(sample - 1)
        } else {
            self.points[sample / 2].parent.map(|p| 2 * p + 1)
        }
    }

    /// Sample-tree children of a sample.
    pub fn sample_children(&self, sample: usize) -> Vec<usize> {
        if sample % 2 == 0 {
            vec![sample + 1]
        } else {
            self.points[sample / 2].children.iter().map(|&c| 2 * c).collect()
        }
    }

    /// Human-readable sample name such as `p3.use`.
    pub fn sample_name(&self, sample: usize) -> String {
        let sp = SamplePoint::from_index(sample);
        format!("p{}.{}", self.points[sp.point].label, sp.moment)
    }

    /// True when every variable has the same weight.
    pub fn is_unweighted(&self) -> bool {
        self.vars
            .windows(2)
            .all(|w| w[0].weight == w[1].weight)
    }

    /// Resolves variable names to ids.
    pub fn resolve<'a>(
        &self,
        names: impl IntoIterator<Item = &'a str>,
    ) -> Result<Vec<VarId>, ModelError> {
        let mut ids = names
            .into_iter()
            .map(|n| {
                self.var_by_name(n)
                    .ok_or_else(|| ModelError::UnknownVariable(n.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        ids.sort();
        ids.dedup();
        Ok(ids)
    }

    pub fn names(&self, ids: &[VarId]) -> Vec<&str> {
        ids.iter().map(|&v| self.vars[v.0].name.as_str()).collect()
    }

    /// Total weight of a set of variables.
    pub fn cost_of(&self, ids: &[VarId]) -> W {
        crate::weight::total(ids.iter().map(|&v| &self.vars[v.0].weight))
    }

    /// Largest chad count at any sample: the pressure left after spilling
    /// everything under hole semantics.
    pub fn chad_floor(&self) -> (usize, usize) {
        self.chads
            .iter()
            .enumerate()
            .map(|(s, c)| (c.len(), s))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
            .map(|(c, s)| (s, c))
            .unwrap_or((0, 0))
    }

    /// Lowers the instance back to a program description (canonical order).
    pub fn to_program(&self) -> Program<W> {
        program::lower(self)
    }
}
