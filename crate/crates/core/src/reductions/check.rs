use super::{generate, map_back, Reduction, ReductionCertificate, ReductionError, ReductionKind, Source, SourceSolution};
use crate::exact::{branch_and_bound, brute_force, brute_force_ordered, ExactOutcome};
use crate::punched::extra_set_dp;
use crate::solution::{SolveError, SpillSolution};
use crate::weight::Weight;

/// Subset cap for the cost-ordered search on X3C instances.
const ORDERED_LIMIT: u64 = 10_000_000;

/// The yes/no answer of the source question, by exhaustive search.
pub fn decide_source(source: &Source) -> bool {
    match source {
        Source::X3c(x) => x.solve().is_some(),
        Source::Cover(c) => c.min_cover().is_some_and(|k| k <= c.bound),
        Source::Graph(g) => g.max_independent_set() >= g.bound,
    }
}

/// Outcome of solving both sides of a reduction.
#[derive(Debug, Clone)]
pub struct CheckReport<W> {
    pub kind: ReductionKind,
    pub source_yes: bool,
    pub spill_yes: bool,
    /// Optimal spill cost, when one was computed (the X3C check stops at
    /// the budget and leaves this empty on a no).
    pub optimum: Option<W>,
    /// Set when two exact solvers were run and disagreed on the optimum.
    pub oracle_mismatch: bool,
    /// Source solution recovered from the optimal spill set, on a yes.
    pub mapped: Option<SourceSolution>,
    pub certificate: ReductionCertificate,
}

impl<W> CheckReport<W> {
    /// Both answers match, the solvers agree, and a yes maps back.
    pub fn agrees(&self) -> bool {
        self.source_yes == self.spill_yes && !self.oracle_mismatch && self.mapped.is_some() == self.spill_yes
    }
}

fn solved<W>(out: ExactOutcome<W>) -> Option<SpillSolution<W>> {
    out.into_solution()
}

/// Generates the spill instance of `source`, solves both questions exactly
/// and maps a spill yes back to a source solution.
pub fn check_reduction<W: Weight>(source: &Source, kind: ReductionKind) -> Result<CheckReport<W>, ReductionError> {
    let red: Reduction<W> = generate(source, kind)?;
    let inst = &red.instance;
    let r = red.certificate.registers;
    let mode = red.certificate.mode;
    let budget = red.budget();
    let mut oracle_mismatch = false;

    let best = match kind {
        ReductionKind::X3c => {
            match brute_force_ordered(inst, r, mode, Some(&budget), ORDERED_LIMIT) {
                Ok(out) => solved(out),
                Err(SolveError::BudgetExceeded { .. }) => {
                    return Err(ReductionError::TooLarge(format!("more than {ORDERED_LIMIT} subsets below the budget")))
                }
                Err(e) => return Err(e.into()),
            }
        }
        ReductionKind::Mincover | ReductionKind::Indepset2 => match brute_force(inst, r, mode) {
            Ok(out) => solved(out),
            Err(SolveError::TooLarge { vars, cap }) => {
                return Err(ReductionError::TooLarge(format!("{vars} variables, cap {cap}")))
            }
            Err(e) => return Err(e.into()),
        },
        ReductionKind::Indepset1 => {
            let bnb = solved(branch_and_bound(inst, r, mode)?);
            let omega = inst.omega();
            let dp = if r >= omega {
                None
            } else {
                Some(extra_set_dp(inst, omega - r)?)
            };
            match (&bnb, &dp) {
                (Some(b), Some(d)) => {
                    if b.proven_optimal {
                        oracle_mismatch = b.cost.weight_cmp(&d.cost).is_ne();
                    }
                    // The dynamic program is exact; prefer it.
                    dp
                }
                (Some(_), None) => bnb,
                (None, d) => {
                    oracle_mismatch = d.is_some();
                    dp
                }
            }
        }
    };

    let spill_yes = best.as_ref().is_some_and(|s| red.accepts(s));
    let mapped = match (&best, spill_yes) {
        (Some(s), true) => map_back(&red, s).ok(),
        _ => None,
    };
    let optimum = best.map(|s| s.cost);
    Ok(CheckReport {
        kind,
        source_yes: decide_source(source),
        spill_yes,
        optimum,
        oracle_mismatch,
        mapped,
        certificate: red.certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::{CoverInstance, GraphInstance, X3cInstance};
    use crate::Rational;

    #[test]
    fn x3c_yes_and_no() {
        let yes = X3cInstance::new(6, vec![[0, 1, 2], [3, 4, 5], [0, 3, 4]]).unwrap();
        let rep = check_reduction::<Rational>(&Source::X3c(yes), ReductionKind::X3c).unwrap();
        assert!(rep.source_yes && rep.agrees(), "{rep:?}");
        let no = X3cInstance::new(6, vec![[0, 1, 2], [0, 3, 4], [1, 4, 5]]).unwrap();
        let rep = check_reduction::<Rational>(&Source::X3c(no), ReductionKind::X3c).unwrap();
        assert!(!rep.source_yes && rep.agrees(), "{rep:?}");
    }

    #[test]
    fn cover_bounds() {
        let c = |bound| CoverInstance::new(3, vec![vec![0, 1], vec![1, 2], vec![2]], bound).unwrap();
        for bound in 0..=3 {
            let rep = check_reduction::<Rational>(&Source::Cover(c(bound)), ReductionKind::Mincover).unwrap();
            assert_eq!(rep.source_yes, bound >= 2);
            assert!(rep.agrees(), "bound {bound}: {rep:?}");
        }
    }

    #[test]
    fn graph_both_heights() {
        let path = GraphInstance::new(3, vec![(0, 1), (1, 2)], 2).unwrap();
        for kind in [ReductionKind::Indepset2, ReductionKind::Indepset1] {
            let rep = check_reduction::<Rational>(&Source::Graph(path.clone()), kind).unwrap();
            assert!(rep.source_yes && rep.agrees(), "{kind}: {rep:?}");
            assert_eq!(rep.mapped, Some(SourceSolution::IndependentSet(vec![0, 2])));
        }
    }

    #[test]
    fn wrong_source_is_rejected() {
        let g = GraphInstance::new(1, vec![], 0).unwrap();
        assert!(check_reduction::<Rational>(&Source::Graph(g), ReductionKind::X3c).is_err());
    }
}
