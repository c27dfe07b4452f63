//! Random instance generators for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::{InstrDecl, Instance, Program, Shape, VarDecl, VarId};
use crate::weight::Weight;

/// Weight distribution of generated variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weights {
    Unit,
    /// Uniform integers in `1..=max`.
    Uniform(usize),
}

impl Weights {
    fn draw<W: Weight, R: Rng>(self, rng: &mut R) -> W {
        match self {
            Weights::Unit => W::one(),
            Weights::Uniform(max) => W::from_count(rng.gen_range(1..=max.max(1))),
        }
    }
}

/// Random parent array: point `i + 1` hangs below a uniformly chosen earlier
/// point. Labels are `1..=points`.
pub fn random_parents<R: Rng>(rng: &mut R, points: usize) -> Vec<Option<u32>> {
    (0..points)
        .map(|i| (i > 0).then(|| rng.gen_range(1..=i as u32)))
        .collect()
}

/// Basic block of `points` points with `vars` random intervals.
pub fn random_intervals<W: Weight, R: Rng>(
    rng: &mut R,
    points: u32,
    vars: usize,
    weights: Weights,
) -> Instance<W> {
    let mut p = Program::linear_ranges(points);
    for i in 0..vars {
        let a = rng.gen_range(1..=points);
        let b = rng.gen_range(1..=points);
        p = p.span(&format!("v{i}"), weights.draw(rng), a.min(b), a.max(b));
    }
    p.build().expect("random intervals are well formed")
}

/// Tree of `points` points with `vars` random connected subtrees.
pub fn random_subtrees<W: Weight, R: Rng>(
    rng: &mut R,
    points: usize,
    vars: usize,
    weights: Weights,
) -> Instance<W> {
    let parents = random_parents(rng, points);
    let mut children = vec![Vec::new(); points];
    for (i, p) in parents.iter().enumerate() {
        if let Some(p) = p {
            children[*p as usize - 1].push(i);
        }
    }
    let mut prog = Program::tree_ranges(&parents);
    for i in 0..vars {
        let top = rng.gen_range(0..points);
        let keep = rng.gen_range(0.3..0.9);
        let mut members = vec![top as u32 + 1];
        let mut stack = vec![top];
        while let Some(x) = stack.pop() {
            for &c in &children[x] {
                if rng.gen_bool(keep) {
                    members.push(c as u32 + 1);
                    stack.push(c);
                }
            }
        }
        members.sort_unstable();
        prog = prog.subtree(&format!("v{i}"), weights.draw(rng), &members);
    }
    prog.build().expect("random subtrees are connected")
}

/// Code-backed basic block: `points` instructions, about `vars` variables, at
/// most `h` uses and `h` defs per instruction.
pub fn random_linear_code<W: Weight, R: Rng>(
    rng: &mut R,
    points: u32,
    vars: usize,
    h: usize,
    weights: Weights,
) -> Instance<W> {
    let parents: Vec<Option<u32>> = (0..points).map(|i| (i > 0).then_some(i)).collect();
    random_code(rng, &parents, Shape::Linear, vars, h, weights)
}

/// Code-backed dominance tree with the same per-instruction limits.
pub fn random_tree_code<W: Weight, R: Rng>(
    rng: &mut R,
    points: usize,
    vars: usize,
    h: usize,
    weights: Weights,
) -> Instance<W> {
    let parents = random_parents(rng, points);
    random_code(rng, &parents, Shape::Tree, vars, h, weights)
}

fn random_code<W: Weight, R: Rng>(
    rng: &mut R,
    parents: &[Option<u32>],
    shape: Shape,
    vars: usize,
    h: usize,
    weights: Weights,
) -> Instance<W> {
    let h = h.max(1);
    let m = parents.len();
    let mut prog = match shape {
        Shape::Linear => Program::linear_code(m as u32),
        Shape::Tree => Program::tree_code(parents),
    };
    let depth_first_ancestors = |p: usize| {
        let mut out = Vec::new();
        let mut x = parents[p];
        while let Some(a) = x {
            out.push(a as usize - 1);
            x = parents[a as usize - 1];
        }
        out
    };
    // Definition point of every variable; `None` marks live-in.
    let mut def_at: Vec<Option<usize>> = Vec::with_capacity(vars);
    let mut defs = vec![Vec::new(); m];
    for v in 0..vars {
        let live_in = rng.gen_bool(0.2);
        if live_in {
            def_at.push(None);
            continue;
        }
        let free: Vec<usize> = (0..m).filter(|&p| defs[p].len() < h).collect();
        match free.choose(rng) {
            Some(&p) => {
                defs[p].push(v);
                def_at.push(Some(p));
            }
            None => def_at.push(None),
        }
    }
    let mut uses = vec![Vec::new(); m];
    for p in 0..m {
        let above = depth_first_ancestors(p);
        let mut available: Vec<usize> = (0..vars)
            .filter(|&v| match def_at[v] {
                None => true,
                Some(d) => above.contains(&d),
            })
            .collect();
        available.shuffle(rng);
        let count = rng.gen_range(0..=h.min(available.len()));
        uses[p] = available[..count].to_vec();
        uses[p].sort_unstable();
    }
    let name = |v: usize| format!("v{v}");
    for p in 0..m {
        if uses[p].is_empty() && defs[p].is_empty() {
            continue;
        }
        prog.instructions.push(InstrDecl {
            at: p as u32 + 1,
            uses: uses[p].iter().map(|&v| name(v)).collect(),
            defs: defs[p].iter().map(|&v| name(v)).collect(),
        });
    }
    let used: Vec<bool> = (0..vars).map(|v| uses.iter().any(|u| u.contains(&v))).collect();
    for v in 0..vars {
        if def_at[v].is_none() {
            prog.live_in.push(name(v));
        }
        let out = shape == Shape::Linear && rng.gen_bool(0.15);
        if out || (def_at[v].is_none() && !used[v]) {
            prog.live_out.push(name(v));
        }
        prog.vars.push(VarDecl { name: name(v), weight: weights.draw(rng), range: None });
    }
    prog.build().expect("generated code respects SSA and dominance")
}

/// Random subset of the variables, each included with probability `p`.
pub fn random_spill_set<W: Weight, R: Rng>(
    rng: &mut R,
    instance: &Instance<W>,
    p: f64,
) -> Vec<VarId> {
    instance.var_ids().filter(|_| rng.gen_bool(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{is_chordal, validate};
    use crate::Rational;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generators_produce_valid_instances() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let a: Instance<Rational> = random_intervals(&mut rng, 12, 8, Weights::Uniform(20));
            assert!(is_chordal(&a).chordal);
            let b: Instance<Rational> = random_subtrees(&mut rng, 10, 8, Weights::Unit);
            assert!(is_chordal(&b).chordal);
            let c: Instance<Rational> = random_linear_code(&mut rng, 10, 8, 2, Weights::Uniform(5));
            assert!(c.h() <= 2);
            assert!(validate(&c.to_program()).is_empty());
            let d: Instance<Rational> = random_tree_code(&mut rng, 10, 8, 1, Weights::Unit);
            assert!(d.h() <= 1);
            assert!(is_chordal(&d).chordal);
        }
    }
}
