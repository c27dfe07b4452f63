//! Basic-block solvers without holes.
//!
//! Live ranges of a basic block are intervals of the sample sequence. Runs of
//! consecutive samples with identical live sets are merged into one position
//! before solving.

mod cover;
mod flow;
mod greedy;

pub use cover::{incremental_cover_dp, iterated_incremental};
pub use flow::{weighted_optimal, weighted_optimal_with_network, FlowArc, FlowNetwork};
pub use greedy::greedy_furthest;

use crate::model::{HoleMode, Instance, VarId};
use crate::solution::{require_linear, SolveError};
use crate::weight::Weight;

/// Compressed interval representation of a basic block.
#[derive(Debug, Clone)]
pub(crate) struct IntervalView {
    /// First sample of each merged run.
    pub positions: Vec<usize>,
    /// Inclusive span of every variable over positions.
    pub spans: Vec<(usize, usize)>,
}

impl IntervalView {
    pub fn new<W: Weight>(instance: &Instance<W>) -> Self {
        let mut positions = Vec::new();
        let mut position_of = vec![0usize; instance.num_samples()];
        for s in 0..instance.num_samples() {
            if s == 0 || instance.live_at(s) != instance.live_at(s - 1) {
                positions.push(s);
            }
            position_of[s] = positions.len() - 1;
        }
        let spans = instance
            .variables()
            .iter()
            .map(|v| (position_of[v.top()], position_of[v.last()]))
            .collect();
        IntervalView { positions, spans }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    /// Variables live at a position.
    pub fn live<'a, W: Weight>(&self, instance: &'a Instance<W>, pos: usize) -> &'a [VarId] {
        instance.live_at(self.positions[pos])
    }
}

fn require_noholes<W: Weight>(instance: &Instance<W>, mode: HoleMode) -> Result<(), SolveError> {
    require_linear(instance)?;
    match mode {
        HoleMode::WithoutHoles => Ok(()),
        HoleMode::WithHoles => Err(SolveError::UnsupportedMode(mode)),
    }
}
