//! Fitting-set dynamic programs over the dominance tree for a small register
//! count `k`.
//!
//! The DP runs on the sample tree. At each sample it enumerates the kept
//! subsets of the live set that fit in `k` registers; a child state matches
//! a parent state when both agree on the variables live at both samples.
//! Kept weight is credited at a variable's top sample, so the root holds the
//! best kept weight of the whole program.

use std::collections::HashMap;

use itertools::Itertools;

use crate::model::{HoleMode, Instance, VarId};
use crate::solution::{Algorithm, InfeasibleWitness, SolveError, SpillSolution};
use crate::weight::Weight;

/// Default number of DP cells allowed before refusing.
pub const DEFAULT_STATE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpConfig {
    pub state_budget: u64,
}

impl Default for DpConfig {
    fn default() -> Self {
        DpConfig { state_budget: DEFAULT_STATE_BUDGET }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Number of subsets of an `n`-set with size in `lo..=hi`.
pub(crate) fn subsets_between(n: usize, lo: usize, hi: usize) -> u128 {
    (lo..=hi.min(n)).fold(0u128, |acc, i| acc.saturating_add(binomial(n, i)))
}

pub(crate) fn check_budget(needed: u128, budget: u64) -> Result<(), SolveError> {
    if needed > budget as u128 {
        Err(SolveError::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// Kept sets at `sample` that fit in `k` registers under `mode`, by
/// cardinality then lexicographically.
pub fn fitting_family<W: Weight>(
    instance: &Instance<W>,
    sample: usize,
    k: usize,
    mode: HoleMode,
) -> Vec<Vec<VarId>> {
    let live = instance.live_at(sample);
    let chads = instance.chads_at(sample);
    (0..=k.min(live.len()))
        .flat_map(|size| live.iter().copied().combinations(size))
        .filter(|kept| match mode {
            HoleMode::WithoutHoles => true,
            HoleMode::WithHoles => {
                kept.len() + chads.iter().filter(|v| !kept.contains(v)).count() <= k
            }
        })
        .collect()
}

struct Cell<W> {
    kept: Vec<VarId>,
    value: W,
    /// Chosen state index per child, in `sample_children` order.
    picks: Vec<usize>,
}

fn solve<W: Weight>(
    instance: &Instance<W>,
    k: usize,
    mode: HoleMode,
    config: &DpConfig,
    algorithm: Algorithm,
) -> Result<SpillSolution<W>, SolveError> {
    if instance.omega() <= k {
        return Ok(SpillSolution::weighted(instance, Vec::new(), mode, algorithm, 0));
    }
    let needed = (0..instance.num_samples())
        .fold(0u128, |acc, s| acc.saturating_add(subsets_between(instance.live_at(s).len(), 0, k)));
    check_budget(needed, config.state_budget)?;

    let n = instance.num_samples();
    let mut table: Vec<Vec<Cell<W>>> = (0..n).map(|_| Vec::new()).collect();
    let mut steps = 0u64;
    for x in (0..n).rev() {
        let children = instance.sample_children(x);
        let live_here = instance.live_at(x);
        // Best child state per key (kept ∩ live at x), for every child.
        let mut lookups: Vec<HashMap<Vec<VarId>, usize>> = Vec::with_capacity(children.len());
        for &c in &children {
            let mut best: HashMap<Vec<VarId>, usize> = HashMap::new();
            for (i, cell) in table[c].iter().enumerate() {
                steps += 1;
                let key: Vec<VarId> =
                    cell.kept.iter().copied().filter(|v| live_here.contains(v)).collect();
                match best.get(&key) {
                    Some(&j) if table[c][j].value.weight_cmp(&cell.value).is_ge() => {}
                    _ => {
                        best.insert(key, i);
                    }
                }
            }
            lookups.push(best);
        }
        let mut cells = Vec::new();
        'state: for kept in fitting_family(instance, x, k, mode) {
            steps += 1;
            let mut value = kept
                .iter()
                .filter(|v| instance.var(**v).top() == x)
                .fold(W::zero(), |acc, v| acc + instance.weight(*v).clone());
            let mut picks = Vec::with_capacity(children.len());
            for (ci, &c) in children.iter().enumerate() {
                steps += 1;
                let live_child = instance.live_at(c);
                let key: Vec<VarId> =
                    kept.iter().copied().filter(|v| live_child.contains(v)).collect();
                let Some(&j) = lookups[ci].get(&key) else {
                    continue 'state;
                };
                value = value + table[c][j].value.clone();
                picks.push(j);
            }
            cells.push(Cell { kept, value, picks });
        }
        table[x] = cells;
    }

    let root_best = table[0]
        .iter()
        .enumerate()
        .fold(None::<usize>, |best, (i, cell)| match best {
            Some(b) if table[0][b].value.weight_cmp(&cell.value).is_ge() => Some(b),
            _ => Some(i),
        });
    let Some(root_best) = root_best else {
        // Unreachable after the chad-floor precheck; kept for safety.
        let (sample, chads) = instance.chad_floor();
        return Err(SolveError::Infeasible(InfeasibleWitness {
            sample,
            sample_name: instance.sample_name(sample),
            chads,
            registers: k,
        }));
    };

    let mut keep = vec![false; instance.num_vars()];
    let mut stack = vec![(0usize, root_best)];
    while let Some((x, i)) = stack.pop() {
        let cell = &table[x][i];
        for v in &cell.kept {
            keep[v.0] = true;
        }
        for (c, &j) in instance.sample_children(x).into_iter().zip(&cell.picks) {
            stack.push((c, j));
        }
    }
    let spilled = instance.var_ids().filter(|v| !keep[v.0]).collect();
    Ok(SpillSolution::weighted(instance, spilled, mode, algorithm, steps))
}

/// Minimum-weight spill set with Ω' ≤ `k`, without holes, on a tree or a
/// basic block.
pub fn fitting_set_dp<W: Weight>(instance: &Instance<W>, k: usize) -> Result<SpillSolution<W>, SolveError> {
    fitting_set_dp_with(instance, k, &DpConfig::default())
}

pub fn fitting_set_dp_with<W: Weight>(
    instance: &Instance<W>,
    k: usize,
    config: &DpConfig,
) -> Result<SpillSolution<W>, SolveError> {
    solve(instance, k, HoleMode::WithoutHoles, config, Algorithm::DpFit)
}

/// As [`fitting_set_dp`] with holes: a spilled variable still takes a
/// register at its chads. Needs a code-backed instance.
pub fn fitting_set_dp_holes<W: Weight>(
    instance: &Instance<W>,
    k: usize,
) -> Result<SpillSolution<W>, SolveError> {
    fitting_set_dp_holes_with(instance, k, &DpConfig::default())
}

pub fn fitting_set_dp_holes_with<W: Weight>(
    instance: &Instance<W>,
    k: usize,
    config: &DpConfig,
) -> Result<SpillSolution<W>, SolveError> {
    if !instance.is_code_backed() {
        return Err(SolveError::UnsupportedMode(HoleMode::WithHoles));
    }
    if let Some(w) = InfeasibleWitness::check(instance, k) {
        return Err(SolveError::Infeasible(w));
    }
    solve(instance, k, HoleMode::WithHoles, config, Algorithm::DpFitHoles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::brute_force;
    use crate::model::Program;
    use crate::Rational;

    fn w(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn star() -> Instance<Rational> {
        // root 1, leaves 2, 3, 4
        Program::tree_ranges(&[None, Some(1), Some(1), Some(1)])
            .subtree("g", w(10), &[1, 2, 3, 4])
            .subtree("x", w(1), &[2])
            .subtree("y", w(1), &[3])
            .subtree("z", w(1), &[4])
            .build()
            .unwrap()
    }

    #[test]
    fn star_spills_the_leaves() {
        let inst = star();
        let sol = fitting_set_dp(&inst, 1).unwrap();
        assert_eq!(inst.names(&sol.spilled), vec!["x", "y", "z"]);
        assert_eq!(sol.cost, w(3));
        assert_eq!(sol.algorithm, Algorithm::DpFit);
    }

    #[test]
    fn two_spanning_variables() {
        let inst = Program::tree_ranges(&[None, Some(1), Some(1)])
            .subtree("a", w(3), &[1, 2, 3])
            .subtree("b", w(5), &[1, 2, 3])
            .build()
            .unwrap();
        let sol = fitting_set_dp(&inst, 1).unwrap();
        assert_eq!(inst.names(&sol.spilled), vec!["a"]);
    }

    #[test]
    fn fits_already() {
        let sol = fitting_set_dp(&star(), 2).unwrap();
        assert!(sol.spilled.is_empty());
    }

    #[test]
    fn budget_refusal() {
        let err = fitting_set_dp_with(&star(), 1, &DpConfig { state_budget: 3 }).unwrap_err();
        assert!(matches!(err, SolveError::BudgetExceeded { budget: 3, .. }));
    }

    #[test]
    fn holes_same_instruction() {
        let inst = Program::<Rational>::linear_code(1).instr(1, &[], &["a"]).build().unwrap();
        let sol = fitting_set_dp_holes(&inst, 1).unwrap();
        assert!(sol.spilled.is_empty());
        assert_eq!(sol.cost, w(0));
    }

    #[test]
    fn holes_infeasible_witness() {
        let inst = Program::<Rational>::tree_code(&[None, Some(1)])
            .instr(1, &[], &["a", "b"])
            .instr(2, &["a", "b"], &[])
            .build()
            .unwrap();
        match fitting_set_dp_holes(&inst, 1) {
            Err(SolveError::Infeasible(w)) => assert_eq!(w.chads, 2),
            other => panic!("expected infeasible, got {other:?}"),
        }
        assert!(brute_force(&inst, 1, HoleMode::WithHoles).unwrap().is_infeasible());
    }

    #[test]
    fn holes_need_code() {
        assert_eq!(
            fitting_set_dp_holes(&star(), 1).unwrap_err(),
            SolveError::UnsupportedMode(HoleMode::WithHoles)
        );
    }

    #[test]
    fn holes_agree_with_brute_force() {
        // a and b span the tree; chads only at entry and exit instructions.
        let inst = Program::tree_code(&[None, Some(1), Some(1)])
            .instr(1, &[], &["a", "b"])
            .instr(2, &["a"], &[])
            .instr(3, &["b"], &[])
            .var("a", w(3))
            .var("b", w(5))
            .build()
            .unwrap();
        let dp = fitting_set_dp_holes(&inst, 2).unwrap();
        let bf = brute_force(&inst, 2, HoleMode::WithHoles).unwrap();
        assert_eq!(Some(&dp.cost), bf.cost());
        assert!(fitting_set_dp_holes(&inst, 1).is_err());
    }

    #[test]
    fn family_sizes() {
        let inst = star();
        assert_eq!(fitting_family(&inst, 2, 1, HoleMode::WithoutHoles).len(), 3);
        assert_eq!(subsets_between(4, 0, 2), 11);
        assert_eq!(binomial(5, 2), 10);
    }
}
