use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{precheck, ExactOutcome};
use crate::model::{HoleMode, Instance, VarId};
use crate::solution::{Algorithm, SolveError, SpillSolution};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteConfig {
    /// Largest variable count enumerated exhaustively.
    pub cap: usize,
    /// Bound on the number of optima collected by [`brute_force_all_optima`].
    pub optima_limit: usize,
}

impl Default for BruteConfig {
    fn default() -> Self {
        BruteConfig { cap: 20, optima_limit: 100_000 }
    }
}

/// Per-sample live and chad bitmasks, deduplicated.
struct Masks {
    rows: Vec<(u128, u128)>,
    registers: u32,
}

impl Masks {
    fn new<W: Weight>(instance: &Instance<W>, order: &[VarId], registers: usize, mode: HoleMode) -> Self {
        let mut bit = vec![0u128; instance.num_vars()];
        for (i, v) in order.iter().enumerate() {
            bit[v.0] = 1u128 << i;
        }
        let mut rows: Vec<(u128, u128)> = (0..instance.num_samples())
            .map(|s| {
                let live = instance.live_at(s).iter().fold(0, |m, v| m | bit[v.0]);
                let chads = match mode {
                    HoleMode::WithoutHoles => 0,
                    HoleMode::WithHoles => instance.chads_at(s).iter().fold(0, |m, v| m | bit[v.0]),
                };
                (live, chads)
            })
            .filter(|&(live, _)| live.count_ones() as usize > registers)
            .collect();
        rows.sort_unstable();
        rows.dedup();
        Masks { rows, registers: registers as u32 }
    }

    fn fits(&self, spilled: u128) -> bool {
        self.rows.iter().all(|&(live, chads)| {
            (live & !spilled).count_ones() + (chads & spilled).count_ones() <= self.registers
        })
    }
}

fn members(mask: u128, order: &[VarId]) -> Vec<VarId> {
    (0..order.len()).filter(|i| mask >> i & 1 == 1).map(|i| order[i]).collect()
}

/// Costs of every subset of `order[from..to]`, indexed by the shifted mask.
fn subset_costs<W: Weight>(instance: &Instance<W>, order: &[VarId], from: usize, to: usize) -> Vec<W> {
    let mut costs = vec![W::zero(); 1 << (to - from)];
    for m in 1..costs.len() {
        let low = m.trailing_zeros() as usize;
        costs[m] = costs[m & (m - 1)].clone() + instance.weight(order[from + low]).clone();
    }
    costs
}

fn too_large<W: Weight>(instance: &Instance<W>, cap: usize) -> Result<(), SolveError> {
    if instance.num_vars() > cap.min(127) {
        Err(SolveError::TooLarge { vars: instance.num_vars(), cap: cap.min(127) })
    } else {
        Ok(())
    }
}

/// Exhaustive search over all spill subsets.
pub fn brute_force<W: Weight>(
    instance: &Instance<W>,
    registers: usize,
    mode: HoleMode,
) -> Result<ExactOutcome<W>, SolveError> {
    brute_force_with(instance, registers, mode, &BruteConfig::default())
}

pub fn brute_force_with<W: Weight>(
    instance: &Instance<W>,
    registers: usize,
    mode: HoleMode,
    config: &BruteConfig,
) -> Result<ExactOutcome<W>, SolveError> {
    let all = brute_force_all_optima(instance, registers, mode, &BruteConfig { optima_limit: 1, ..*config })?;
    Ok(match all {
        AllOptima::Infeasible(w) => ExactOutcome::Infeasible(w),
        AllOptima::Optima { mut solutions, .. } => ExactOutcome::Solved(solutions.swap_remove(0)),
    })
}

/// Every optimal spill set, up to `config.optima_limit` of them.
#[derive(Debug, Clone, PartialEq)]
pub enum AllOptima<W> {
    Optima {
        solutions: Vec<SpillSolution<W>>,
        /// Set when more optima exist than were collected.
        truncated: bool,
    },
    Infeasible(crate::solution::InfeasibleWitness),
}

pub fn brute_force_all_optima<W: Weight>(
    instance: &Instance<W>,
    registers: usize,
    mode: HoleMode,
    config: &BruteConfig,
) -> Result<AllOptima<W>, SolveError> {
    too_large(instance, config.cap)?;
    if let Some(w) = precheck(instance, registers, mode)? {
        return Ok(AllOptima::Infeasible(w));
    }
    let order: Vec<VarId> = instance.var_ids().collect();
    let masks = Masks::new(instance, &order, registers, mode);
    let n = order.len();
    let mut best: Option<W> = None;
    let mut found: Vec<u128> = Vec::new();
    let mut truncated = false;
    let mut steps = 0u64;
    // Split costs: one addition per fitting subset.
    let half = n / 2;
    let lo_costs = subset_costs(instance, &order, 0, half);
    let hi_costs = subset_costs(instance, &order, half, n);
    for mask in 0..(1u128 << n) {
        steps += 1;
        if !masks.fits(mask) {
            continue;
        }
        let lo = (mask & ((1 << half) - 1)) as usize;
        let cost = lo_costs[lo].clone() + hi_costs[(mask >> half) as usize].clone();
        match best.as_ref().map(|b| cost.weight_cmp(b)) {
            None | Some(Ordering::Less) => {
                best = Some(cost);
                found.clear();
                found.push(mask);
                truncated = false;
            }
            Some(Ordering::Equal) => {
                if found.len() < config.optima_limit {
                    found.push(mask);
                } else {
                    truncated = true;
                }
            }
            Some(Ordering::Greater) => {}
        }
    }
    let solutions = found
        .into_iter()
        .map(|m| SpillSolution::weighted(instance, members(m, &order), mode, Algorithm::BruteForce, steps))
        .collect();
    Ok(AllOptima::Optima { solutions, truncated })
}

struct Candidate<W> {
    cost: W,
    mask: u128,
    top: usize,
}

impl<W: Weight> PartialEq for Candidate<W> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<W: Weight> Eq for Candidate<W> {}

impl<W: Weight> PartialOrd for Candidate<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: Weight> Ord for Candidate<W> {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .cost
            .weight_cmp(&self.cost)
            .then(other.mask.count_ones().cmp(&self.mask.count_ones()))
            .then(other.mask.cmp(&self.mask))
    }
}

/// Enumerates spill subsets in nondecreasing weight order and returns the
/// first that fits, which is optimal. Works beyond the exhaustive cap (up to
/// 127 variables) when the optimum is cheap; `cost_limit` stops the search
/// once subsets get more expensive, and `max_subsets` bounds the work.
pub fn brute_force_ordered<W: Weight>(
    instance: &Instance<W>,
    registers: usize,
    mode: HoleMode,
    cost_limit: Option<&W>,
    max_subsets: u64,
) -> Result<ExactOutcome<W>, SolveError> {
    too_large(instance, 127)?;
    if let Some(w) = precheck(instance, registers, mode)? {
        return Ok(ExactOutcome::Infeasible(w));
    }
    let mut order: Vec<VarId> = instance.var_ids().collect();
    order.sort_by(|a, b| instance.weight(*a).weight_cmp(instance.weight(*b)).then(a.cmp(b)));
    let masks = Masks::new(instance, &order, registers, mode);
    let weight = |i: usize| instance.weight(order[i]).clone();

    // Each subset is reached once: from its prefix by either bumping its top
    // element to the next index or adding the next index.
    if masks.fits(0) {
        return Ok(ExactOutcome::Solved(SpillSolution::weighted(
            instance,
            Vec::new(),
            mode,
            Algorithm::BruteForce,
            1,
        )));
    }
    let mut heap = BinaryHeap::new();
    if !order.is_empty() {
        heap.push(Candidate { cost: weight(0), mask: 1, top: 0 });
    }
    let mut steps = 1u64;
    while let Some(c) = heap.pop() {
        if let Some(limit) = cost_limit {
            if c.cost.weight_cmp(limit) == Ordering::Greater {
                return Ok(ExactOutcome::NoneWithinLimit);
            }
        }
        steps += 1;
        if steps > max_subsets {
            return Err(SolveError::BudgetExceeded { needed: steps as u128, budget: max_subsets });
        }
        if masks.fits(c.mask) {
            return Ok(ExactOutcome::Solved(SpillSolution::weighted(
                instance,
                members(c.mask, &order),
                mode,
                Algorithm::BruteForce,
                steps,
            )));
        }
        let next = c.top + 1;
        if next < order.len() {
            heap.push(Candidate {
                cost: c.cost.clone() + weight(next),
                mask: c.mask | 1 << next,
                top: next,
            });
            heap.push(Candidate {
                cost: c.cost - weight(c.top) + weight(next),
                mask: (c.mask & !(1 << c.top)) | 1 << next,
                top: next,
            });
        }
    }
    // Unreachable without holes (spilling everything fits) and ruled out with
    // holes by the chad-floor precheck.
    unreachable!("the full spill set always fits after the precheck")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Program;
    use crate::Rational;

    fn w(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn belady() -> Instance<Rational> {
        Program::linear_ranges(10)
            .span("a", w(10), 1, 10)
            .span("b", w(1), 1, 5)
            .span("c", w(1), 6, 10)
            .build()
            .unwrap()
    }

    #[test]
    fn finds_the_cheap_pair() {
        let inst = belady();
        let out = brute_force(&inst, 1, HoleMode::WithoutHoles).unwrap();
        let sol = out.solution().unwrap();
        assert_eq!(inst.names(&sol.spilled), vec!["b", "c"]);
        assert_eq!(sol.cost, w(2));
        let ordered = brute_force_ordered(&inst, 1, HoleMode::WithoutHoles, None, 1000).unwrap();
        assert_eq!(ordered.cost(), Some(&w(2)));
    }

    #[test]
    fn nothing_when_it_fits() {
        let out = brute_force(&belady(), 2, HoleMode::WithoutHoles).unwrap();
        assert!(out.solution().unwrap().spilled.is_empty());
    }

    #[test]
    fn chad_floor_is_infeasible() {
        let inst = Program::<Rational>::linear_code(2)
            .instr(1, &[], &["a", "b"])
            .instr(2, &["a", "b"], &[])
            .build()
            .unwrap();
        assert!(brute_force(&inst, 1, HoleMode::WithHoles).unwrap().is_infeasible());
        assert!(brute_force_ordered(&inst, 1, HoleMode::WithHoles, None, 100)
            .unwrap()
            .is_infeasible());
    }

    #[test]
    fn all_optima_of_a_symmetric_instance() {
        let inst = Program::linear_ranges(2)
            .span("a", w(1), 1, 2)
            .span("b", w(1), 1, 2)
            .span("c", w(1), 1, 2)
            .build()
            .unwrap();
        let AllOptima::Optima { solutions, truncated } =
            brute_force_all_optima(&inst, 2, HoleMode::WithoutHoles, &BruteConfig::default()).unwrap()
        else {
            panic!("feasible");
        };
        assert_eq!(solutions.len(), 3);
        assert!(!truncated);
    }

    #[test]
    fn cap_is_enforced() {
        let mut p = Program::<Rational>::linear_ranges(1);
        for i in 0..21 {
            p = p.span(&format!("v{i}"), w(1), 1, 1);
        }
        let inst = p.build().unwrap();
        assert_eq!(
            brute_force(&inst, 1, HoleMode::WithoutHoles),
            Err(SolveError::TooLarge { vars: 21, cap: 20 })
        );
    }

    #[test]
    fn ordered_respects_cost_limit() {
        let inst = belady();
        let out = brute_force_ordered(&inst, 1, HoleMode::WithoutHoles, Some(&w(1)), 1000).unwrap();
        assert_eq!(out, ExactOutcome::NoneWithinLimit);
    }
}
