//! Exact solvers for every regime: exhaustive enumeration and branch and
//! bound. Both are exponential in the worst case and meant as ground truth at
//! desk scale.

mod bnb;
mod brute;

pub use bnb::{branch_and_bound, branch_and_bound_with, BnbConfig};
pub use brute::{
    brute_force, brute_force_all_optima, brute_force_ordered, brute_force_with, AllOptima,
    BruteConfig,
};

use crate::model::{pressure, HoleMode, Instance, ModelError, VarId};
use crate::solution::{InfeasibleWitness, SolveError, SpillSolution};
use crate::weight::Weight;

/// Result of an exact solve. Infeasibility is an answer, not an error.
#[derive(Debug, Clone, PartialEq)]
pub enum ExactOutcome<W> {
    Solved(SpillSolution<W>),
    Infeasible(InfeasibleWitness),
    /// Cost-limited enumeration found nothing at or below the limit.
    NoneWithinLimit,
}

impl<W> ExactOutcome<W> {
    pub fn solution(&self) -> Option<&SpillSolution<W>> {
        match self {
            ExactOutcome::Solved(s) => Some(s),
            _ => None,
        }
    }

    pub fn into_solution(self) -> Option<SpillSolution<W>> {
        match self {
            ExactOutcome::Solved(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, ExactOutcome::Infeasible(_))
    }

    pub fn cost(&self) -> Option<&W> {
        self.solution().map(|s| &s.cost)
    }
}

impl<W> From<ExactOutcome<W>> for Result<SpillSolution<W>, SolveError> {
    fn from(outcome: ExactOutcome<W>) -> Self {
        match outcome {
            ExactOutcome::Solved(s) => Ok(s),
            ExactOutcome::Infeasible(w) => Err(SolveError::Infeasible(w)),
            ExactOutcome::NoneWithinLimit => {
                Err(SolveError::InvalidArgument("no solution within the cost limit".into()))
            }
        }
    }
}

/// Sample points where a spill set leaves too much pressure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub registers: usize,
    /// `(sample, pressure)` for every sample above `registers`.
    pub violations: Vec<(usize, usize)>,
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify<W: Weight>(
    instance: &Instance<W>,
    spilled: &[VarId],
    registers: usize,
    mode: HoleMode,
) -> Result<Verification, ModelError> {
    let profile = pressure(instance, spilled, mode)?;
    Ok(Verification { registers, violations: profile.over(registers).collect() })
}

/// Mode check shared by the exact solvers; with holes the chad floor decides
/// feasibility outright.
fn precheck<W: Weight>(
    instance: &Instance<W>,
    registers: usize,
    mode: HoleMode,
) -> Result<Option<InfeasibleWitness>, SolveError> {
    match mode {
        HoleMode::WithoutHoles => Ok(None),
        HoleMode::WithHoles if !instance.is_code_backed() => {
            Err(SolveError::UnsupportedMode(mode))
        }
        HoleMode::WithHoles => Ok(InfeasibleWitness::check(instance, registers)),
    }
}
