//! Spill-everywhere register allocation under SSA.
//!
//! Programs are basic blocks or dominance trees. [`model`] turns them into
//! live ranges and computes register pressure with or without holes; the
//! solver modules pick variables to spill so that pressure fits a register
//! count.

pub mod dispatch;
pub mod exact;
pub mod format;
pub mod interval;
pub mod model;
pub mod punched;
pub mod reductions;
pub mod solution;
pub mod synth;
pub mod tree;
pub mod weight;

pub use model::{pressure, HoleMode, Instance, ModelError, Program, Shape, VarId};
pub use solution::{Algorithm, InfeasibleWitness, SolveError, SpillSolution, Target};
pub use weight::Weight;

/// Exact default scalar.
pub type Rational = num_rational::Ratio<i64>;

pub type InstanceRational = Instance<Rational>;
pub type InstanceF64 = Instance<f64>;
pub type InstanceI64 = Instance<i64>;
pub type SolutionRational = SpillSolution<Rational>;
