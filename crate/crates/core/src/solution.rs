use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::model::{pressure, HoleMode, Instance, ModelError, Shape, VarId};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "greedy")]
    Greedy,
    #[serde(rename = "flow")]
    Flow,
    #[serde(rename = "dp-cover")]
    DpCover,
    #[serde(rename = "dp-cover-iterated")]
    IteratedCover,
    #[serde(rename = "dp-fit")]
    DpFit,
    #[serde(rename = "dp-fit-holes")]
    DpFitHoles,
    #[serde(rename = "dp-extra")]
    DpExtra,
    #[serde(rename = "bnb")]
    BranchAndBound,
    #[serde(rename = "brute")]
    BruteForce,
}

impl Algorithm {
    pub const ALL: [Algorithm; 9] = [
        Algorithm::Greedy,
        Algorithm::Flow,
        Algorithm::DpCover,
        Algorithm::IteratedCover,
        Algorithm::DpFit,
        Algorithm::DpFitHoles,
        Algorithm::DpExtra,
        Algorithm::BranchAndBound,
        Algorithm::BruteForce,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::Flow => "flow",
            Algorithm::DpCover => "dp-cover",
            Algorithm::IteratedCover => "dp-cover-iterated",
            Algorithm::DpFit => "dp-fit",
            Algorithm::DpFitHoles => "dp-fit-holes",
            Algorithm::DpExtra => "dp-extra",
            Algorithm::BranchAndBound => "bnb",
            Algorithm::BruteForce => "brute",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

/// Register goal after spilling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    /// Ω' ≤ r for an arbitrary r.
    Registers(usize),
    /// Ω' ≤ Ω − k.
    OmegaMinus(usize),
    /// Ω' ≤ k for a small fixed k.
    Few(usize),
}

impl Target {
    /// Register count for an instance with the given Maxlive; `None` when the
    /// target is below zero.
    pub fn registers(self, omega: usize) -> Option<usize> {
        match self {
            Target::Registers(r) | Target::Few(r) => Some(r),
            Target::OmegaMinus(k) => omega.checked_sub(k),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Registers(r) => write!(f, "r={r}"),
            Target::OmegaMinus(k) => write!(f, "omega-{k}"),
            Target::Few(k) => write!(f, "few={k}"),
        }
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| format!("bad target `{s}`: expected a non-negative integer"))
        };
        if let Some(r) = s.strip_prefix("r=") {
            Ok(Target::Registers(num(r)?))
        } else if let Some(k) = s.strip_prefix("omega-") {
            Ok(Target::OmegaMinus(num(k)?))
        } else if let Some(k) = s.strip_prefix("few=") {
            Ok(Target::Few(num(k)?))
        } else {
            Err(format!("bad target `{s}`: expected r=<N>, omega-<k> or few=<k>"))
        }
    }
}

/// A spill set together with its cost and how it was found.
#[derive(Debug, Clone, PartialEq)]
pub struct SpillSolution<W> {
    /// Spilled variables, ascending.
    pub spilled: Vec<VarId>,
    pub cost: W,
    /// Maxlive after spilling, under `mode`.
    pub achieved_omega: usize,
    pub mode: HoleMode,
    pub algorithm: Algorithm,
    pub steps: u64,
    pub proven_optimal: bool,
}

impl<W: Weight> SpillSolution<W> {
    /// Weighted solution: cost is the total weight of `spilled`.
    pub(crate) fn weighted(
        instance: &Instance<W>,
        mut spilled: Vec<VarId>,
        mode: HoleMode,
        algorithm: Algorithm,
        steps: u64,
    ) -> Self {
        spilled.sort_unstable();
        spilled.dedup();
        let cost = instance.cost_of(&spilled);
        Self::with_cost(instance, spilled, cost, mode, algorithm, steps)
    }

    pub(crate) fn with_cost(
        instance: &Instance<W>,
        spilled: Vec<VarId>,
        cost: W,
        mode: HoleMode,
        algorithm: Algorithm,
        steps: u64,
    ) -> Self {
        let achieved_omega = pressure(instance, &spilled, mode)
            .expect("solver output is a valid spill set")
            .max();
        SpillSolution {
            spilled,
            cost,
            achieved_omega,
            mode,
            algorithm,
            steps,
            proven_optimal: true,
        }
    }
}

/// Why no spill set can reach the target: the chads at `sample` alone exceed
/// the register count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfeasibleWitness {
    pub sample: usize,
    pub sample_name: String,
    pub chads: usize,
    pub registers: usize,
}

impl fmt::Display for InfeasibleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} has {} chads but only {} registers",
            self.sample_name, self.chads, self.registers
        )
    }
}

impl InfeasibleWitness {
    /// Chad-floor check: `None` when spilling everything meets `registers`.
    pub fn check<W: Weight>(instance: &Instance<W>, registers: usize) -> Option<Self> {
        let (sample, chads) = instance.chad_floor();
        (chads > registers).then(|| InfeasibleWitness {
            sample,
            sample_name: instance.sample_name(sample),
            chads,
            registers,
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolveError {
    #[error("this algorithm needs a {0} instance")]
    WrongShape(Shape),
    #[error("this algorithm does not support the {0} mode")]
    UnsupportedMode(HoleMode),
    #[error("infeasible: {0}")]
    Infeasible(InfeasibleWitness),
    #[error("state budget exceeded: {needed} cells needed, budget is {budget}; use the flow solver (linear) or branch and bound instead")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("instance has {vars} variables, above the cap of {cap}")]
    TooLarge { vars: usize, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Shared guard for solvers that only handle basic blocks.
pub(crate) fn require_linear<W: Weight>(instance: &Instance<W>) -> Result<(), SolveError> {
    if instance.is_linear() {
        Ok(())
    } else {
        Err(SolveError::WrongShape(Shape::Linear))
    }
}
