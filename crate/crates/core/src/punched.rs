//! Extra-set dynamic program: basic block with holes, target Ω' ≤ Ω − k.
//!
//! States are the spilled subsets of each sample's live set. In an optimal
//! solution no sample has more than `2(h+k)` spilled live variables, so larger
//! subsets are never enumerated.

use std::collections::HashMap;

use itertools::Itertools;

use crate::model::{HoleMode, Instance, VarId};
use crate::solution::{require_linear, Algorithm, InfeasibleWitness, SolveError, SpillSolution};
use crate::tree::{check_budget, subsets_between, DpConfig};
use crate::weight::Weight;

/// Cap on spilled live variables per sample.
pub fn extra_cap(h: usize, k: usize) -> usize {
    2 * (h + k)
}

struct Cell<W> {
    spilled: Vec<VarId>,
    value: W,
    prev: usize,
}

pub fn extra_set_dp<W: Weight>(instance: &Instance<W>, k: usize) -> Result<SpillSolution<W>, SolveError> {
    extra_set_dp_with(instance, k, &DpConfig::default())
}

pub fn extra_set_dp_with<W: Weight>(
    instance: &Instance<W>,
    k: usize,
    config: &DpConfig,
) -> Result<SpillSolution<W>, SolveError> {
    require_linear(instance)?;
    if !instance.is_code_backed() {
        return Err(SolveError::UnsupportedMode(HoleMode::WithHoles));
    }
    if k == 0 {
        return Err(SolveError::InvalidArgument("k must be at least 1".into()));
    }
    let omega = instance.omega();
    let Some(registers) = omega.checked_sub(k) else {
        return Err(SolveError::InvalidArgument(format!(
            "target Ω − k = {omega} − {k} is negative"
        )));
    };
    if let Some(w) = InfeasibleWitness::check(instance, registers) {
        return Err(SolveError::Infeasible(w));
    }
    let cap = extra_cap(instance.h(), k);
    let n = instance.num_samples();
    let needed = (0..n).fold(0u128, |acc, s| {
        let live = instance.live_at(s).len();
        acc.saturating_add(subsets_between(live, live.saturating_sub(registers), cap))
    });
    check_budget(needed, config.state_budget)?;

    let mut table: Vec<Vec<Cell<W>>> = Vec::with_capacity(n);
    let mut steps = 0u64;
    for j in 0..n {
        let live = instance.live_at(j);
        let chads = instance.chads_at(j);
        let need = live.len().saturating_sub(registers);
        // Best previous state per key (spilled ∩ live at j).
        let mut lookup: HashMap<Vec<VarId>, usize> = HashMap::new();
        if j > 0 {
            for (i, cell) in table[j - 1].iter().enumerate() {
                steps += 1;
                let key: Vec<VarId> = cell.spilled.iter().copied().filter(|v| live.contains(v)).collect();
                match lookup.get(&key) {
                    Some(&b) if table[j - 1][b].value.weight_cmp(&cell.value).is_le() => {}
                    _ => {
                        lookup.insert(key, i);
                    }
                }
            }
        }
        let prev_live = if j > 0 { instance.live_at(j - 1) } else { &[][..] };
        let mut cells = Vec::new();
        for spilled in (need..=cap.min(live.len())).flat_map(|size| live.iter().copied().combinations(size)) {
            let relieved = spilled.iter().filter(|v| !chads.contains(v)).count();
            if relieved < need {
                continue;
            }
            steps += 1;
            let mut value = spilled
                .iter()
                .filter(|v| instance.var(**v).top() == j)
                .fold(W::zero(), |acc, v| acc + instance.weight(*v).clone());
            let mut prev = usize::MAX;
            if j > 0 {
                let key: Vec<VarId> = spilled.iter().copied().filter(|v| prev_live.contains(v)).collect();
                let Some(&p) = lookup.get(&key) else {
                    continue;
                };
                value = value + table[j - 1][p].value.clone();
                prev = p;
            }
            cells.push(Cell { spilled, value, prev });
        }
        table.push(cells);
    }

    let last = table.len() - 1;
    let best = table[last]
        .iter()
        .enumerate()
        .fold(None::<usize>, |best, (i, cell)| match best {
            Some(b) if table[last][b].value.weight_cmp(&cell.value).is_le() => Some(b),
            _ => Some(i),
        })
        .expect("spilling every variable is feasible after the chad-floor check");
    let mut out = Vec::new();
    let mut i = best;
    for j in (0..n).rev() {
        let cell = &table[j][i];
        out.extend(cell.spilled.iter().copied());
        i = cell.prev;
    }
    Ok(SpillSolution::weighted(instance, out, HoleMode::WithHoles, Algorithm::DpExtra, steps))
}
