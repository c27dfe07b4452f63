//! Algorithm selection by regime: shape, hole mode, weights, target and h.
//! A polynomial solver is chosen when the regime has one; everything else
//! goes to branch and bound.

use crate::exact::{branch_and_bound_with, brute_force_with, BnbConfig, BruteConfig, ExactOutcome};
use crate::interval::{greedy_furthest, incremental_cover_dp, iterated_incremental, weighted_optimal};
use crate::model::{HoleMode, Instance};
use crate::punched::extra_set_dp_with;
use crate::solution::{Algorithm, SolveError, SpillSolution, Target};
use crate::tree::{fitting_set_dp_holes_with, fitting_set_dp_with, DpConfig};
use crate::weight::Weight;

/// Largest register count handed to the fitting-set DPs by `auto`.
pub const FEW_REGISTERS: usize = 3;
/// Largest h for which `auto` uses the extra-set DP.
pub const EXTRA_MAX_H: usize = 2;
/// Largest Ω − r for which `auto` uses the extra-set DP.
pub const EXTRA_MAX_K: usize = 3;

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveConfig {
    pub dp: DpConfig,
    pub bnb: BnbConfig,
    pub brute: BruteConfig,
}

/// Algorithm picked for a request, with the register count it resolves to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Plan {
    pub algorithm: Algorithm,
    pub registers: usize,
}

fn resolve(instance: &Instance<impl Weight>, target: Target) -> Result<usize, SolveError> {
    let omega = instance.omega();
    target
        .registers(omega)
        .ok_or_else(|| SolveError::InvalidArgument(format!("target {target} is below zero (omega is {omega})")))
}

/// The algorithm `auto` runs for this request.
pub fn plan<W: Weight>(instance: &Instance<W>, target: Target, mode: HoleMode) -> Result<Plan, SolveError> {
    let registers = resolve(instance, target)?;
    let few = matches!(target, Target::Few(_)) || registers <= FEW_REGISTERS;
    let algorithm = match mode {
        HoleMode::WithoutHoles if instance.is_linear() => {
            if instance.is_unweighted() {
                Algorithm::Greedy
            } else {
                Algorithm::Flow
            }
        }
        HoleMode::WithoutHoles if few => Algorithm::DpFit,
        HoleMode::WithoutHoles => Algorithm::BranchAndBound,
        HoleMode::WithHoles => {
            if !instance.is_code_backed() {
                return Err(SolveError::UnsupportedMode(mode));
            }
            let k = instance.omega().saturating_sub(registers);
            if few {
                Algorithm::DpFitHoles
            } else if instance.is_linear() && instance.h() <= EXTRA_MAX_H && (1..=EXTRA_MAX_K).contains(&k) {
                Algorithm::DpExtra
            } else {
                Algorithm::BranchAndBound
            }
        }
    };
    Ok(Plan { algorithm, registers })
}

fn exact<W>(out: ExactOutcome<W>) -> Result<SpillSolution<W>, SolveError> {
    match out {
        ExactOutcome::Solved(s) => Ok(s),
        ExactOutcome::Infeasible(w) => Err(SolveError::Infeasible(w)),
        ExactOutcome::NoneWithinLimit => unreachable!("no cost limit was given"),
    }
}

/// Runs `algorithm` on the request.
pub fn run<W: Weight>(
    instance: &Instance<W>,
    target: Target,
    mode: HoleMode,
    algorithm: Algorithm,
    config: &SolveConfig,
) -> Result<SpillSolution<W>, SolveError> {
    let r = resolve(instance, target)?;
    match algorithm {
        Algorithm::Greedy => {
            if !instance.is_unweighted() {
                return Err(SolveError::InvalidArgument("greedy needs unit weights; use flow".into()));
            }
            greedy_furthest(instance, r, mode)
        }
        Algorithm::Flow => weighted_optimal(instance, r, mode),
        Algorithm::DpCover | Algorithm::IteratedCover => {
            if instance.omega() > 0 && r + 1 == instance.omega() {
                incremental_cover_dp(instance, mode)
            } else {
                iterated_incremental(instance, r, mode)
            }
        }
        Algorithm::DpFit => {
            if mode == HoleMode::WithHoles {
                return Err(SolveError::UnsupportedMode(mode));
            }
            fitting_set_dp_with(instance, r, &config.dp)
        }
        Algorithm::DpFitHoles => {
            if mode == HoleMode::WithoutHoles {
                return Err(SolveError::UnsupportedMode(mode));
            }
            fitting_set_dp_holes_with(instance, r, &config.dp)
        }
        Algorithm::DpExtra => {
            if mode == HoleMode::WithoutHoles {
                return Err(SolveError::UnsupportedMode(mode));
            }
            let k = instance.omega().checked_sub(r).filter(|&k| k > 0).ok_or_else(|| {
                SolveError::InvalidArgument(format!("dp-extra needs a target below omega ({})", instance.omega()))
            })?;
            extra_set_dp_with(instance, k, &config.dp)
        }
        Algorithm::BranchAndBound => exact(branch_and_bound_with(instance, r, mode, &config.bnb)?),
        Algorithm::BruteForce => exact(brute_force_with(instance, r, mode, &config.brute)?),
    }
}

/// Plans and runs; a DP that exceeds its state budget falls back to branch
/// and bound. Returns the algorithm that produced the answer.
pub fn solve_auto<W: Weight>(
    instance: &Instance<W>,
    target: Target,
    mode: HoleMode,
    config: &SolveConfig,
) -> Result<SpillSolution<W>, SolveError> {
    let plan = plan(instance, target, mode)?;
    match run(instance, target, mode, plan.algorithm, config) {
        Err(SolveError::BudgetExceeded { .. }) if plan.algorithm != Algorithm::BranchAndBound => {
            run(instance, target, mode, Algorithm::BranchAndBound, config)
        }
        other => other,
    }
}
