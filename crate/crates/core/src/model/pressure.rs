use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Instance, ModelError, VarId};
use crate::weight::Weight;

/// Whether a spilled variable still occupies a register at its chads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HoleMode {
    #[serde(rename = "holes")]
    WithHoles,
    #[serde(rename = "noholes")]
    WithoutHoles,
}

impl fmt::Display for HoleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HoleMode::WithHoles => "holes",
            HoleMode::WithoutHoles => "noholes",
        })
    }
}

/// Register pressure at every sample point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PressureProfile {
    pub mode: HoleMode,
    pub values: Vec<usize>,
}

impl PressureProfile {
    pub fn max(&self) -> usize {
        self.values.iter().copied().max().unwrap_or(0)
    }

    /// Samples whose pressure exceeds `limit`.
    pub fn over(&self, limit: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.values
            .iter()
            .copied()
            .enumerate()
            .filter(move |&(_, p)| p > limit)
    }
}

/// Pressure after spilling `spilled`.
///
/// Without holes a sample counts the unspilled variables live there; with
/// holes it also counts spilled variables that have a chad there.
pub fn pressure<W: Weight>(
    instance: &Instance<W>,
    spilled: &[VarId],
    mode: HoleMode,
) -> Result<PressureProfile, ModelError> {
    if mode == HoleMode::WithHoles && !instance.is_code_backed() {
        return Err(ModelError::HolesNeedCode);
    }
    let mut is_spilled = vec![false; instance.num_vars()];
    for &v in spilled {
        *is_spilled
            .get_mut(v.0)
            .ok_or(ModelError::VarOutOfRange(v.0))? = true;
    }
    let values = (0..instance.num_samples())
        .map(|s| {
            let kept = instance.live_at(s).iter().filter(|v| !is_spilled[v.0]).count();
            let chads = match mode {
                HoleMode::WithoutHoles => 0,
                HoleMode::WithHoles => {
                    instance.chads_at(s).iter().filter(|v| is_spilled[v.0]).count()
                }
            };
            kept + chads
        })
        .collect();
    Ok(PressureProfile { mode, values })
}
