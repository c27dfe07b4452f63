use std::fmt;

use serde::{Deserialize, Serialize};
use spill_core::{Instance, Shape, SpillSolution, Weight};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub shape: String,
    pub m: usize,
    pub n: usize,
    pub omega: usize,
    pub h: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSummary {
    pub spilled: Vec<String>,
    /// Exact cost as `num/den` or an integer; absent when infeasible.
    pub cost: Option<String>,
    pub omega_prime: Option<usize>,
    pub feasible: bool,
    pub proven_optimal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverSummary {
    pub algo: String,
    pub steps: u64,
    pub budget_hit: bool,
}

/// What `solve` prints and writes with `--json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub instance: InstanceSummary,
    pub solution: SolutionSummary,
    pub solver: SolverSummary,
}

impl InstanceSummary {
    pub fn of<W: Weight>(inst: &Instance<W>) -> Self {
        InstanceSummary {
            shape: match inst.shape() {
                Shape::Linear => "linear".into(),
                Shape::Tree => "tree".into(),
            },
            m: inst.num_points(),
            n: inst.num_vars(),
            omega: inst.omega(),
            h: inst.h(),
        }
    }
}

impl Report {
    pub fn solved<W: Weight>(inst: &Instance<W>, sol: &SpillSolution<W>) -> Self {
        Report {
            instance: InstanceSummary::of(inst),
            solution: SolutionSummary {
                spilled: inst.names(&sol.spilled).into_iter().map(String::from).collect(),
                cost: Some(sol.cost.to_string()),
                omega_prime: Some(sol.achieved_omega),
                feasible: true,
                proven_optimal: sol.proven_optimal,
            },
            solver: SolverSummary { algo: sol.algorithm.name().into(), steps: sol.steps, budget_hit: false },
        }
    }

    /// No solution: infeasible (`budget_hit` false) or out of budget.
    pub fn unsolved<W: Weight>(inst: &Instance<W>, algo: &str, budget_hit: bool) -> Self {
        Report {
            instance: InstanceSummary::of(inst),
            solution: SolutionSummary {
                spilled: Vec::new(),
                cost: None,
                omega_prime: None,
                feasible: false,
                proven_optimal: false,
            },
            solver: SolverSummary { algo: algo.into(), steps: 0, budget_hit },
        }
    }
}

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

/// One `key: value` line per field, in schema order.
impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, s, v) = (&self.instance, &self.solution, &self.solver);
        writeln!(f, "shape: {}", i.shape)?;
        writeln!(f, "m: {}", i.m)?;
        writeln!(f, "n: {}", i.n)?;
        writeln!(f, "omega: {}", i.omega)?;
        writeln!(f, "h: {}", i.h)?;
        writeln!(f, "spilled: {}", if s.spilled.is_empty() { "-".into() } else { s.spilled.join(" ") })?;
        writeln!(f, "cost: {}", opt(&s.cost))?;
        writeln!(f, "omega_prime: {}", opt(&s.omega_prime))?;
        writeln!(f, "feasible: {}", s.feasible)?;
        writeln!(f, "proven_optimal: {}", s.proven_optimal)?;
        writeln!(f, "algo: {}", v.algo)?;
        writeln!(f, "steps: {}", v.steps)?;
        writeln!(f, "budget_hit: {}", v.budget_hit)
    }
}
