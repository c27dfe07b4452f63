use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;
use spill_core::dispatch::{run, SolveConfig};
use spill_core::synth::{random_intervals, random_linear_code, random_subtrees, random_tree_code, Weights};
use spill_core::{Algorithm, HoleMode, Instance, Rational, SolveError, Target};

/// One benchmark solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Task {
    pub algo: Algorithm,
    pub points: u32,
    pub vars: usize,
    pub h: usize,
    pub k: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub algo: String,
    pub m: usize,
    pub n: usize,
    pub omega: usize,
    pub h: usize,
    pub k: usize,
    pub seed: u64,
    /// `None` when the solver refused (state budget, infeasible target).
    pub steps: Option<u64>,
}

fn instance(t: &Task) -> Instance<Rational> {
    let mut rng = StdRng::seed_from_u64(t.seed);
    let w = Weights::Uniform(20);
    match t.algo {
        Algorithm::DpFit => random_subtrees(&mut rng, t.points as usize, t.vars, w),
        Algorithm::DpFitHoles => random_tree_code(&mut rng, t.points as usize, t.vars, t.h, w),
        Algorithm::DpExtra => random_linear_code(&mut rng, t.points, t.vars, t.h, w),
        _ => random_intervals(&mut rng, t.points, t.vars, w),
    }
}

pub fn run_task(t: &Task) -> Row {
    let inst = instance(t);
    let (target, mode) = match t.algo {
        Algorithm::DpFit => (Target::Few(t.k), HoleMode::WithoutHoles),
        Algorithm::DpFitHoles => (Target::Few(t.k), HoleMode::WithHoles),
        Algorithm::DpExtra => (Target::OmegaMinus(t.k), HoleMode::WithHoles),
        _ => (Target::OmegaMinus(1), HoleMode::WithoutHoles),
    };
    let steps = match run(&inst, target, mode, t.algo, &SolveConfig::default()) {
        Ok(sol) => Some(sol.steps),
        Err(SolveError::Infeasible(_) | SolveError::BudgetExceeded { .. } | SolveError::InvalidArgument(_)) => None,
        Err(e) => panic!("bench instance rejected: {e}"),
    };
    Row {
        algo: t.algo.name().into(),
        m: inst.num_points(),
        n: inst.num_vars(),
        omega: inst.omega(),
        h: inst.h(),
        k: t.k,
        seed: t.seed,
        steps,
    }
}

/// Runs every task, on scoped threads when `parallel`; rows keep task order.
pub fn run_all(tasks: &[Task], parallel: bool) -> Vec<Row> {
    if !parallel {
        return tasks.iter().map(run_task).collect();
    }
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(tasks.len().max(1));
    let chunk = tasks.len().div_ceil(threads).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = tasks
            .chunks(chunk)
            .map(|c| s.spawn(move || c.iter().map(run_task).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("bench worker panicked")).collect()
    })
}

pub fn header() -> &'static str {
    "algo\tm\tn\tomega\th\tk\tseed\tsteps"
}

impl std::fmt::Display for Row {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let steps = self.steps.map_or_else(|| "-".to_string(), |s| s.to_string());
        write!(f, "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}", self.algo, self.m, self.n, self.omega, self.h, self.k, self.seed, steps)
    }
}
