use std::collections::BTreeMap;

use super::{GraphInstance, Reduction, ReductionCertificate, ReductionError, ReductionKind, Role, Source};
use crate::model::{HoleMode, Program};
use crate::weight::Weight;

fn vertex_names(g: &GraphInstance) -> Vec<String> {
    (0..g.vertices).map(|i| format!("v{i}")).collect()
}

/// Two chads per instruction: every vertex is a variable spanning the block
/// and edge `(u, v)` is an instruction using `u` and `v`. With `K` spills and
/// `|V| − K + 1` registers an edge instruction fits iff at most one of its
/// ends is spilled.
pub fn gen_indepset_h2<W: Weight>(g: &GraphInstance) -> Result<Reduction<W>, ReductionError> {
    g.check()?;
    let names = vertex_names(g);
    let mut prog = Program::linear_code(g.edges.len().max(1) as u32);
    for (e, &(a, b)) in g.edges.iter().enumerate() {
        prog = prog.instr(e as u32 + 1, &[&names[a], &names[b]], &[]);
    }
    let all: Vec<&str> = names.iter().map(String::as_str).collect();
    prog = prog.live_in(&all).live_out(&all);
    let mut roles = BTreeMap::new();
    for (i, name) in names.iter().enumerate() {
        prog = prog.var(name, W::one());
        roles.insert(name.clone(), Role::Vertex { index: i });
    }
    let registers = g.vertices - g.bound + 1;
    prog.registers = Some(registers);
    let instance = prog.build().expect("indepset construction is well formed");
    Ok(Reduction {
        instance,
        certificate: ReductionCertificate {
            kind: ReductionKind::Indepset2,
            source: Source::Graph(g.clone()),
            k: g.bound,
            registers,
            mode: HoleMode::WithHoles,
            budget: g.bound as i64,
            alpha: None,
            beta: None,
            roles,
        },
    })
}

/// One chad per instruction. Vertices span the block with weight
/// `α = 2|E| + 1`. Each edge `(u, v)` gets a region where two weight-1 locals
/// `du`, `dv` overlap, `du` covering the use of `u` and `dv` the use of `v`;
/// a chain of heavy `f` variables fills the gaps so that every region needs
/// one local spilled, and both when `u` and `v` are spilled. A heavy anchor
/// `g` in the prologue forces at least `K` vertex spills. The optimum is then
/// `Kα + |E| + min over K-sets S of |E(S)|`, which meets the budget
/// `Kα + |E|` iff a stable set of size `K` exists.
///
/// Per region: `use f, def du | def f1 | use u | use f1, def dv | def f2 |
/// use f2 | use du, def f3 | use v | use f3 | use dv, def f4`.
pub fn gen_indepset_h1<W: Weight>(g: &GraphInstance) -> Result<Reduction<W>, ReductionError> {
    g.check()?;
    let e_count = g.edges.len() as i64;
    let k = g.bound as i64;
    let alpha = 2 * e_count + 1;
    let beta = k * alpha + 2 * e_count + 1;
    let names = vertex_names(g);
    let points = 3 + 10 * g.edges.len();
    let mut prog = Program::linear_code(points as u32);
    let mut roles = BTreeMap::new();
    let w = |n: i64| W::from_count(n as usize);

    let mut fresh = 0usize;
    let mut next_f = |prog: &mut Program<W>, roles: &mut BTreeMap<String, Role>| {
        let name = format!("f{fresh}");
        fresh += 1;
        prog.vars.push(crate::model::VarDecl { name: name.clone(), weight: w(beta), range: None });
        roles.insert(name.clone(), Role::FFiller);
        name
    };
    let mut cur = next_f(&mut prog, &mut roles);
    prog = prog.instr(1, &[], &[&cur]).instr(2, &[], &["g"]).instr(3, &["g"], &[]).var("g", w(beta));
    roles.insert("g".into(), Role::Anchor);

    for (e, &(u, v)) in g.edges.iter().enumerate() {
        let base = 3 + 10 * e as u32;
        let du = format!("du{e}");
        let dv = format!("dv{e}");
        let f1 = next_f(&mut prog, &mut roles);
        let f2 = next_f(&mut prog, &mut roles);
        let f3 = next_f(&mut prog, &mut roles);
        let f4 = next_f(&mut prog, &mut roles);
        prog = prog
            .instr(base + 1, &[&cur], &[&du])
            .instr(base + 2, &[], &[&f1])
            .instr(base + 3, &[&names[u]], &[])
            .instr(base + 4, &[&f1], &[&dv])
            .instr(base + 5, &[], &[&f2])
            .instr(base + 6, &[&f2], &[])
            .instr(base + 7, &[&du], &[&f3])
            .instr(base + 8, &[&names[v]], &[])
            .instr(base + 9, &[&f3], &[])
            .instr(base + 10, &[&dv], &[&f4])
            .var(&du, w(1))
            .var(&dv, w(1));
        roles.insert(du, Role::Delta { edge: e, vertex: u });
        roles.insert(dv, Role::Delta { edge: e, vertex: v });
        cur = f4;
    }
    let all: Vec<&str> = names.iter().map(String::as_str).collect();
    prog = prog.live_in(&all).live_out(&all).live_out(&[&cur]);
    for (i, name) in names.iter().enumerate() {
        prog = prog.var(name, w(alpha));
        roles.insert(name.clone(), Role::Vertex { index: i });
    }
    let registers = g.vertices - g.bound + 2;
    prog.registers = Some(registers);
    let instance = prog.build().expect("h = 1 construction is well formed");
    Ok(Reduction {
        instance,
        certificate: ReductionCertificate {
            kind: ReductionKind::Indepset1,
            source: Source::Graph(g.clone()),
            k: g.bound,
            registers,
            mode: HoleMode::WithHoles,
            budget: k * alpha + e_count,
            alpha: Some(alpha),
            beta: Some(beta),
            roles,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{brute_force, verify};
    use crate::model::VarId;
    use crate::punched::extra_set_dp;
    use crate::reductions::{map_back, SourceSolution};
    use crate::Rational;

    fn triangle(k: usize) -> GraphInstance {
        GraphInstance::new(3, vec![(0, 1), (1, 2), (0, 2)], k).unwrap()
    }

    #[test]
    fn h2_triangle() {
        let red = gen_indepset_h2::<Rational>(&triangle(1)).unwrap();
        assert_eq!(red.instance.h(), 2);
        assert_eq!(red.certificate.registers, 3);
        let sol = brute_force(&red.instance, 3, HoleMode::WithHoles).unwrap().into_solution().unwrap();
        assert!(red.accepts(&sol));
        let set = map_back(&red, &sol).unwrap();
        assert!(matches!(set, SourceSolution::IndependentSet(s) if s.len() == 1));

        let red = gen_indepset_h2::<Rational>(&triangle(2)).unwrap();
        let out = brute_force(&red.instance, 2, HoleMode::WithHoles).unwrap();
        assert!(out.solution().is_none_or(|s| !red.accepts(s)));
    }

    #[test]
    fn h1_parameters() {
        let red = gen_indepset_h1::<Rational>(&triangle(2)).unwrap();
        assert_eq!(red.certificate.alpha, Some(7));
        assert_eq!(red.instance.h(), 1);
    }

    #[test]
    fn h1_path() {
        let g = GraphInstance::new(2, vec![(0, 1)], 1).unwrap();
        let red = gen_indepset_h1::<Rational>(&g).unwrap();
        let alpha = Rational::from_integer(3);
        let r = red.certificate.registers;
        let k = red.instance.omega() - r;
        let sol = extra_set_dp(&red.instance, k).unwrap();
        assert_eq!(sol.cost, alpha + Rational::from_integer(1));
        assert!(red.accepts(&sol));
        assert_eq!(map_back(&red, &sol).unwrap(), SourceSolution::IndependentSet(vec![0]));
    }

    #[test]
    fn h1_triangle_misses_the_budget() {
        let red = gen_indepset_h1::<Rational>(&triangle(2)).unwrap();
        let k = red.instance.omega() - red.certificate.registers;
        let sol = extra_set_dp(&red.instance, k).unwrap();
        // 2α + |E| + 1: one edge inside any 2-set.
        assert_eq!(sol.cost, Rational::from_integer(2 * 7 + 3 + 1));
        assert!(!red.accepts(&sol));
        // Every K-set plus both locals of every edge fits, below β.
        let mut spill: Vec<VarId> = ["v0", "v1"].iter().map(|n| red.instance.var_by_name(n).unwrap()).collect();
        spill.extend(red.instance.var_ids().filter(|&v| matches!(red.role(v), Role::Delta { .. })));
        assert!(verify(&red.instance, &spill, red.certificate.registers, HoleMode::WithHoles).unwrap().is_valid());
    }
}
