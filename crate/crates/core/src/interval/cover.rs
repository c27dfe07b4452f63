use std::cmp::Ordering;

use super::{require_noholes, IntervalView};
use crate::model::{HoleMode, Instance, VarId};
use crate::solution::{Algorithm, SolveError, SpillSolution};
use crate::weight::Weight;

/// Minimum-weight spill set lowering Maxlive by one on a basic block.
///
/// Only positions at pressure Ω matter; the result is a cheapest family of
/// intervals hitting all of them, found left to right with
/// `W(q_i) = min over v live at q_i of w(v) + W(pred(s(v)))` where `pred(s)`
/// is the last Ω-position strictly before `s`.
pub fn incremental_cover_dp<W: Weight>(
    instance: &Instance<W>,
    mode: HoleMode,
) -> Result<SpillSolution<W>, SolveError> {
    require_noholes(instance, mode)?;
    let view = IntervalView::new(instance);
    let excluded = vec![false; instance.num_vars()];
    let (spilled, steps) = cover_step(instance, &view, &excluded);
    Ok(SpillSolution::weighted(instance, spilled, mode, Algorithm::DpCover, steps))
}

/// Repeats the cover step until Ω' ≤ `registers`. A heuristic: optimal steps
/// do not compose into an optimal overall spill, so the result is never
/// marked proven optimal.
pub fn iterated_incremental<W: Weight>(
    instance: &Instance<W>,
    registers: usize,
    mode: HoleMode,
) -> Result<SpillSolution<W>, SolveError> {
    require_noholes(instance, mode)?;
    let view = IntervalView::new(instance);
    let mut excluded = vec![false; instance.num_vars()];
    let mut steps = 0;
    let mut rounds = 0;
    loop {
        let current = (0..view.len())
            .map(|p| kept_at(instance, &view, &excluded, p).count())
            .max()
            .unwrap_or(0);
        if current <= registers {
            break;
        }
        let (more, s) = cover_step(instance, &view, &excluded);
        steps += s;
        rounds += 1;
        for v in more {
            excluded[v.0] = true;
        }
    }
    let spilled = instance.var_ids().filter(|v| excluded[v.0]).collect();
    let mut sol = SpillSolution::weighted(instance, spilled, mode, Algorithm::IteratedCover, steps);
    sol.proven_optimal = rounds <= 1;
    Ok(sol)
}

fn kept_at<'a, W: Weight>(
    instance: &'a Instance<W>,
    view: &IntervalView,
    excluded: &'a [bool],
    pos: usize,
) -> impl Iterator<Item = VarId> + 'a {
    view.live(instance, pos).iter().copied().filter(move |v| !excluded[v.0])
}

/// One Ω → Ω−1 step ignoring `excluded` variables. Returns the new spills and
/// the number of relaxations.
fn cover_step<W: Weight>(
    instance: &Instance<W>,
    view: &IntervalView,
    excluded: &[bool],
) -> (Vec<VarId>, u64) {
    let counts: Vec<usize> = (0..view.len())
        .map(|p| kept_at(instance, view, excluded, p).count())
        .collect();
    let omega = counts.iter().copied().max().unwrap_or(0);
    if omega == 0 {
        return (Vec::new(), 0);
    }
    // before[p] = number of Ω-positions strictly before p.
    let mut before = Vec::with_capacity(view.len() + 1);
    let mut tight = Vec::new();
    for (p, &c) in counts.iter().enumerate() {
        before.push(tight.len());
        if c == omega {
            tight.push(p);
        }
    }
    let mut best: Vec<W> = vec![W::zero()];
    let mut choice: Vec<VarId> = Vec::with_capacity(tight.len());
    let mut steps = 0u64;
    for &q in &tight {
        let mut pick: Option<(W, VarId)> = None;
        for v in kept_at(instance, view, excluded, q) {
            steps += 1;
            let cand = instance.weight(v).clone() + best[before[view.spans[v.0].0]].clone();
            let better = match &pick {
                None => true,
                Some((b, _)) => cand.weight_cmp(b) == Ordering::Less,
            };
            if better {
                pick = Some((cand, v));
            }
        }
        let (cost, v) = pick.expect("an Ω-position has Ω > 0 live variables");
        best.push(cost);
        choice.push(v);
    }
    let mut spilled = Vec::new();
    let mut i = tight.len();
    while i > 0 {
        let v = choice[i - 1];
        spilled.push(v);
        i = before[view.spans[v.0].0];
    }
    (spilled, steps)
}
