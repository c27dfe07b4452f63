use std::cmp::Ordering;

use super::{precheck, ExactOutcome};
use crate::model::{HoleMode, Instance, VarId};
use crate::solution::{Algorithm, SolveError, SpillSolution};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BnbConfig {
    /// Search nodes before giving up; the best solution so far is returned
    /// with `proven_optimal = false`.
    pub node_budget: u64,
}

impl Default for BnbConfig {
    fn default() -> Self {
        BnbConfig { node_budget: 5_000_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Undecided,
    Spill,
    Keep,
}

/// A sample where spilling can lower pressure, with the variables that would.
struct Row {
    /// Live variables without a chad here, cheapest first.
    candidates: Vec<usize>,
    /// Pressure when nothing is spilled.
    base: usize,
}

struct Search<'a, W> {
    instance: &'a Instance<W>,
    registers: usize,
    rows: Vec<Row>,
    /// Rows where each variable is a candidate.
    rows_of: Vec<Vec<usize>>,
    status: Vec<Status>,
    pressure: Vec<usize>,
    open: Vec<usize>,
    cost: W,
    best: Option<(W, Vec<usize>)>,
    nodes: u64,
    budget: u64,
    stamp: Vec<u64>,
    epoch: u64,
}

impl<W: Weight> Search<'_, W> {
    fn weight(&self, v: usize) -> &W {
        self.instance.weight(VarId(v))
    }

    fn excess(&self, row: usize) -> usize {
        self.pressure[row].saturating_sub(self.registers)
    }

    fn dead(&self, row: usize) -> bool {
        self.excess(row) > self.open[row]
    }

    fn spill(&mut self, v: usize) {
        self.status[v] = Status::Spill;
        self.cost = self.cost.clone() + self.weight(v).clone();
        for &r in &self.rows_of[v] {
            self.pressure[r] -= 1;
            self.open[r] -= 1;
        }
    }

    fn unspill(&mut self, v: usize) {
        self.status[v] = Status::Undecided;
        self.cost = self.cost.clone() - self.weight(v).clone();
        for &r in &self.rows_of[v] {
            self.pressure[r] += 1;
            self.open[r] += 1;
        }
    }

    fn keep(&mut self, v: usize) -> bool {
        self.status[v] = Status::Keep;
        let mut ok = true;
        for &r in &self.rows_of[v] {
            self.open[r] -= 1;
            ok &= !self.dead(r);
        }
        ok
    }

    fn unkeep(&mut self, v: usize) {
        self.status[v] = Status::Undecided;
        for &r in &self.rows_of[v] {
            self.open[r] += 1;
        }
    }

    /// Cost forced on rows with pairwise disjoint open candidates: each needs
    /// its `excess` cheapest open candidates spilled.
    fn lower_bound(&mut self) -> W {
        let mut bounds: Vec<(W, usize)> = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            let need = self.excess(i);
            if need == 0 {
                continue;
            }
            let forced = row
                .candidates
                .iter()
                .filter(|&&v| self.status[v] == Status::Undecided)
                .take(need)
                .fold(W::zero(), |acc, &v| acc + self.weight(v).clone());
            bounds.push((forced, i));
        }
        bounds.sort_by(|a, b| b.0.weight_cmp(&a.0));
        self.epoch += 1;
        let mut total = W::zero();
        for (b, i) in bounds {
            let open = || {
                self.rows[i]
                    .candidates
                    .iter()
                    .copied()
                    .filter(|&v| self.status[v] == Status::Undecided)
            };
            if open().any(|v| self.stamp[v] == self.epoch) {
                continue;
            }
            let marks: Vec<usize> = open().collect();
            for v in marks {
                self.stamp[v] = self.epoch;
            }
            total = total + b;
        }
        total
    }

    /// Open candidate to branch on, from the row with the least slack.
    fn branch_var(&self) -> Option<usize> {
        let row = (0..self.rows.len())
            .filter(|&i| self.excess(i) > 0)
            .min_by_key(|&i| (self.open[i] - self.excess(i), std::cmp::Reverse(self.excess(i))))?;
        let coverage =
            |v: usize| self.rows_of[v].iter().filter(|&&r| self.excess(r) > 0).count().max(1);
        self.rows[row]
            .candidates
            .iter()
            .copied()
            .filter(|&v| self.status[v] == Status::Undecided)
            .min_by(|&a, &b| {
                // w(a)/cov(a) < w(b)/cov(b)
                let lhs = self.weight(a).clone() * W::from_count(coverage(b));
                let rhs = self.weight(b).clone() * W::from_count(coverage(a));
                lhs.weight_cmp(&rhs).then(a.cmp(&b))
            })
    }

    fn improves(&self, bound: &W) -> bool {
        match &self.best {
            None => true,
            Some((b, _)) => bound.weight_cmp(b) == Ordering::Less,
        }
    }

    fn record(&mut self) {
        if self.improves(&self.cost.clone()) {
            let spilled = (0..self.status.len()).filter(|&v| self.status[v] == Status::Spill).collect();
            self.best = Some((self.cost.clone(), spilled));
        }
    }

    fn run(&mut self) {
        if self.nodes >= self.budget {
            return;
        }
        self.nodes += 1;
        let Some(v) = self.branch_var() else {
            self.record();
            return;
        };
        let bound = self.cost.clone() + self.lower_bound();
        if !self.improves(&bound) {
            return;
        }
        self.spill(v);
        self.run();
        self.unspill(v);
        if self.keep(v) {
            self.run();
        }
        self.unkeep(v);
    }

    /// Feasible starting point: spill the best ratio candidate of the
    /// tightest row until nothing is over.
    fn greedy_incumbent(&mut self) {
        let mut taken = Vec::new();
        while let Some(v) = self.branch_var() {
            self.spill(v);
            taken.push(v);
        }
        self.record();
        for v in taken.into_iter().rev() {
            self.unspill(v);
        }
    }
}

/// Exact search over spill/keep decisions with a disjoint-rows lower bound.
pub fn branch_and_bound<W: Weight>(
    instance: &Instance<W>,
    registers: usize,
    mode: HoleMode,
) -> Result<ExactOutcome<W>, SolveError> {
    branch_and_bound_with(instance, registers, mode, &BnbConfig::default())
}

pub fn branch_and_bound_with<W: Weight>(
    instance: &Instance<W>,
    registers: usize,
    mode: HoleMode,
    config: &BnbConfig,
) -> Result<ExactOutcome<W>, SolveError> {
    if let Some(w) = precheck(instance, registers, mode)? {
        return Ok(ExactOutcome::Infeasible(w));
    }
    let n = instance.num_vars();
    let mut rows: Vec<Row> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for s in 0..instance.num_samples() {
        let live = instance.live_at(s);
        if live.len() <= registers {
            continue;
        }
        let chads = match mode {
            HoleMode::WithHoles => instance.chads_at(s),
            HoleMode::WithoutHoles => &[],
        };
        let mut candidates: Vec<usize> =
            live.iter().filter(|v| !chads.contains(v)).map(|v| v.0).collect();
        candidates.sort_by(|&a, &b| {
            instance.weight(VarId(a)).weight_cmp(instance.weight(VarId(b))).then(a.cmp(&b))
        });
        let mut key: Vec<usize> = live.iter().map(|v| v.0).collect();
        key.extend(chads.iter().map(|v| n + v.0));
        if seen.insert(key) {
            rows.push(Row { candidates, base: live.len() });
        }
    }
    let mut rows_of = vec![Vec::new(); n];
    for (i, row) in rows.iter().enumerate() {
        for &v in &row.candidates {
            rows_of[v].push(i);
        }
    }
    let pressure: Vec<usize> = rows.iter().map(|r| r.base).collect();
    let open: Vec<usize> = rows.iter().map(|r| r.candidates.len()).collect();
    let mut search = Search {
        instance,
        registers,
        rows,
        rows_of,
        status: vec![Status::Undecided; n],
        pressure,
        open,
        cost: W::zero(),
        best: None,
        nodes: 0,
        budget: config.node_budget,
        stamp: vec![0; n],
        epoch: 0,
    };
    search.greedy_incumbent();
    search.run();
    let complete = search.nodes < search.budget;
    let (_, spilled) = search.best.take().expect("greedy incumbent exists");
    let spilled = spilled.into_iter().map(VarId).collect();
    let mut sol = SpillSolution::weighted(instance, spilled, mode, Algorithm::BranchAndBound, search.nodes);
    sol.proven_optimal = complete;
    Ok(ExactOutcome::Solved(sol))
}
