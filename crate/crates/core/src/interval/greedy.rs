use super::{require_noholes, IntervalView};
use crate::model::{HoleMode, Instance, VarId};
use crate::solution::{Algorithm, SolveError, SpillSolution};
use crate::weight::Weight;

/// Furthest-first eviction on a basic block, ignoring weights.
///
/// Scans positions left to right; at the first position holding more than
/// `registers` kept variables it evicts the live variable that ends furthest
/// (live-out variables count as ending past the block; ties go to the smallest
/// id) and repeats. The cost is the number of spilled variables.
pub fn greedy_furthest<W: Weight>(
    instance: &Instance<W>,
    registers: usize,
    mode: HoleMode,
) -> Result<SpillSolution<W>, SolveError> {
    require_noholes(instance, mode)?;
    let view = IntervalView::new(instance);
    let mut spilled = vec![false; instance.num_vars()];
    let mut out = Vec::new();
    let mut steps = 0u64;
    for pos in 0..view.len() {
        let mut kept: Vec<VarId> = view
            .live(instance, pos)
            .iter()
            .copied()
            .filter(|v| !spilled[v.0])
            .collect();
        steps += 1;
        while kept.len() > registers {
            let (idx, &victim) = kept
                .iter()
                .enumerate()
                .max_by(|(_, a), (_, b)| {
                    let ka = (view.spans[a.0].1, instance.var(**a).live_out);
                    let kb = (view.spans[b.0].1, instance.var(**b).live_out);
                    ka.cmp(&kb).then(b.cmp(a))
                })
                .expect("more than `registers` variables are live");
            spilled[victim.0] = true;
            out.push(victim);
            kept.swap_remove(idx);
            steps += 1;
        }
    }
    out.sort_unstable();
    let cost = W::from_count(out.len());
    Ok(SpillSolution::with_cost(
        instance,
        out,
        cost,
        mode,
        Algorithm::Greedy,
        steps,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Program;
    use crate::Rational;

    fn w(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn evicts_the_furthest_interval() {
        let inst = Program::linear_ranges(10)
            .span("a", w(1), 1, 10)
            .span("b", w(1), 1, 3)
            .span("c", w(1), 2, 6)
            .build()
            .unwrap();
        let sol = greedy_furthest(&inst, 2, HoleMode::WithoutHoles).unwrap();
        assert_eq!(inst.names(&sol.spilled), vec!["a"]);
        assert_eq!(sol.cost, w(1));
        assert_eq!(sol.achieved_omega, 2);
    }

    #[test]
    fn ties_go_to_the_smallest_id() {
        let inst = Program::linear_ranges(4)
            .span("a", w(1), 1, 4)
            .span("b", w(1), 1, 4)
            .span("c", w(1), 1, 4)
            .build()
            .unwrap();
        let sol = greedy_furthest(&inst, 1, HoleMode::WithoutHoles).unwrap();
        assert_eq!(inst.names(&sol.spilled), vec!["a", "b"]);
    }

    #[test]
    fn nothing_to_do_when_pressure_fits() {
        let inst = Program::linear_ranges(3)
            .span("a", w(1), 1, 2)
            .span("b", w(1), 2, 3)
            .build()
            .unwrap();
        let sol = greedy_furthest(&inst, 2, HoleMode::WithoutHoles).unwrap();
        assert!(sol.spilled.is_empty());
    }

    #[test]
    fn live_out_is_evicted_first() {
        let inst = Program::<Rational>::linear_code(2)
            .instr(1, &[], &["x"])
            .instr(2, &["y"], &[])
            .live_in(&["y"])
            .live_out(&["x"])
            .build()
            .unwrap();
        // p2.use holds x and y; y ends there, x is live-out.
        let sol = greedy_furthest(&inst, 1, HoleMode::WithoutHoles).unwrap();
        assert_eq!(inst.names(&sol.spilled), vec!["x"]);
    }

    #[test]
    fn rejects_trees_and_holes() {
        let tree = Program::<Rational>::tree_ranges(&[None])
            .subtree("a", w(1), &[1])
            .build()
            .unwrap();
        assert!(matches!(
            greedy_furthest(&tree, 1, HoleMode::WithoutHoles),
            Err(SolveError::WrongShape(_))
        ));
        let line = Program::<Rational>::linear_code(1).instr(1, &[], &["a"]).build().unwrap();
        assert!(matches!(
            greedy_furthest(&line, 1, HoleMode::WithHoles),
            Err(SolveError::UnsupportedMode(_))
        ));
    }
}
