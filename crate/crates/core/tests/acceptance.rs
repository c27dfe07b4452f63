//! Acceptance suite: one pass/fail line per criterion, nonzero exit on any
//! failure. Instances come from seeded generators so every failure line
//! names a reproducible seed.

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use spill_core::exact::{branch_and_bound, brute_force, brute_force_all_optima, verify, AllOptima, BruteConfig, ExactOutcome};
use spill_core::format::{parse, serialize};
use spill_core::interval::{greedy_furthest, incremental_cover_dp, weighted_optimal, weighted_optimal_with_network};
use spill_core::model::is_chordal;
use spill_core::punched::{extra_cap, extra_set_dp};
use spill_core::reductions::{
    check_reduction, cover_classes, generate, graph_classes, labelled_graphs, x3c_classes, GraphInstance, Reduction,
    ReductionKind, Role, Source,
};
use spill_core::synth::{random_intervals, random_linear_code, random_spill_set, random_subtrees, random_tree_code, Weights};
use spill_core::tree::{fitting_set_dp, fitting_set_dp_holes};
use spill_core::{pressure, HoleMode, Instance, Rational, SolveError, VarId};

type Q = Rational;

/// Step-bound constant of the fitting-set DP, one value for the whole suite.
const FIT_C: u128 = 8;
/// Step-bound constant of the incremental cover DP.
const COVER_C: u64 = 4;
/// Largest instance handed to the exhaustive oracle.
const BRUTE_VARS: usize = 20;
/// Failure examples kept per criterion.
const SHOWN: usize = 5;

const NO: HoleMode = HoleMode::WithoutHoles;
const HOLES: HoleMode = HoleMode::WithHoles;

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

#[derive(Debug, Default)]
struct Tally {
    count: usize,
    failed: usize,
    examples: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failed += 1;
            if self.examples.len() < SHOWN {
                self.examples.push(what());
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        self.count += other.count;
        self.failed += other.failed;
        for e in other.examples {
            if self.examples.len() < SHOWN {
                self.examples.push(e);
            }
        }
    }
}

/// What one criterion found, plus the side tallies fed to criteria 10, 11.
#[derive(Debug, Default)]
struct Verdict {
    main: Tally,
    notes: Vec<String>,
    /// Branch and bound against brute force.
    oracle: Tally,
    /// Parse/serialize round trips of generated instances.
    roundtrip: Tally,
    /// Chordality of code-backed instances.
    chordal: Tally,
}

impl Verdict {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.main.record(ok, what);
    }

    /// Round trip and chordality of a generated instance.
    fn structure(&mut self, inst: &Instance<Q>, what: &str) {
        let text = serialize(inst);
        let ok = match parse::<Q>(&text) {
            Ok(back) => serialize(&back) == text && serialize(inst) == text,
            Err(_) => false,
        };
        self.roundtrip.record(ok, || format!("{what}: round trip differs"));
        if inst.is_code_backed() {
            self.chordal.record(is_chordal(inst).chordal, || format!("{what}: not chordal"));
        }
    }

    /// Brute force, cross-checked by branch and bound.
    fn brute(&mut self, inst: &Instance<Q>, r: usize, mode: HoleMode, what: &str) -> ExactOutcome<Q> {
        let expected = brute_force(inst, r, mode).expect("instance within the brute-force cap");
        let got = branch_and_bound(inst, r, mode);
        let ok = match (&got, &expected) {
            (Ok(ExactOutcome::Infeasible(_)), ExactOutcome::Infeasible(_)) => true,
            (Ok(ExactOutcome::Solved(b)), ExactOutcome::Solved(e)) => {
                b.proven_optimal && b.cost == e.cost && fits(inst, &b.spilled, r, mode)
            }
            _ => false,
        };
        self.oracle
            .record(ok, || format!("{what} r={r} {mode}: bnb {:?} vs brute {:?}", got.map(|o| o.cost().cloned()), expected.cost()));
        expected
    }

    fn absorb(&mut self, other: Verdict) {
        self.main.merge(other.main);
        self.notes.extend(other.notes);
        self.oracle.merge(other.oracle);
        self.roundtrip.merge(other.roundtrip);
        self.chordal.merge(other.chordal);
    }
}

fn fits(inst: &Instance<Q>, spilled: &[VarId], r: usize, mode: HoleMode) -> bool {
    verify(inst, spilled, r, mode).map(|v| v.is_valid()).unwrap_or(false)
}

fn cost_of(out: &ExactOutcome<Q>) -> Option<Q> {
    out.cost().cloned()
}

fn rng(criterion: u64, i: u64) -> StdRng {
    StdRng::seed_from_u64(criterion * 1_000_003 + i)
}

// 1. Greedy furthest-end eviction is optimal for unit weights.
fn c1() -> Verdict {
    let mut v = Verdict::default();
    let mut pairs = 0;
    for i in 0..300 {
        let mut g = rng(1, i);
        let m = g.gen_range(1..=20);
        let n = g.gen_range(1..=12);
        let inst: Instance<Q> = random_intervals(&mut g, m, n, Weights::Unit);
        v.structure(&inst, &format!("c1 seed {i}"));
        for r in 1..=inst.omega() {
            pairs += 1;
            let what = format!("c1 seed {i}");
            let best = v.brute(&inst, r, NO, &what);
            let sol = greedy_furthest(&inst, r, NO).unwrap();
            let ok = fits(&inst, &sol.spilled, r, NO) && Some(q(sol.spilled.len() as i64)) == cost_of(&best);
            v.check(ok, || format!("{what} r={r}: greedy spills {} vs optimum {:?}", sol.spilled.len(), best.cost()));
        }
    }
    v.notes.push(format!("300 instances, {pairs} (instance, r) pairs"));
    v
}

// 2. The flow solver is optimal for weights, and its flow is integral.
fn c2() -> Verdict {
    let mut v = Verdict::default();
    let mut pairs = 0;
    for i in 0..300 {
        let mut g = rng(2, i);
        let m = g.gen_range(1..=20);
        let n = g.gen_range(1..=12);
        let inst: Instance<Q> = random_intervals(&mut g, m, n, Weights::Uniform(20));
        v.structure(&inst, &format!("c2 seed {i}"));
        for r in 1..=inst.omega() {
            pairs += 1;
            let what = format!("c2 seed {i}");
            let best = v.brute(&inst, r, NO, &what);
            let (sol, net) = weighted_optimal_with_network(&inst, r, NO).unwrap();
            let integral = net.as_ref().is_none_or(|n| n.is_integral());
            let ok = integral && fits(&inst, &sol.spilled, r, NO) && Some(sol.cost) == cost_of(&best);
            v.check(ok, || format!("{what} r={r}: flow {} (integral {integral}) vs optimum {:?}", sol.cost, best.cost()));
        }
    }
    v.notes.push(format!("300 instances, {pairs} (instance, r) pairs"));
    v
}

// 3. Pinned regression where greedy and the weighted optimum differ.
fn c3() -> Verdict {
    let mut v = Verdict::default();
    let inst = spill_core::Program::linear_ranges(10)
        .span("a", q(10), 1, 10)
        .span("b", q(1), 1, 5)
        .span("c", q(1), 6, 10)
        .build()
        .unwrap();
    v.structure(&inst, "c3 fixture");
    let greedy = greedy_furthest(&inst, 1, NO).unwrap();
    let greedy_cost = inst.cost_of(&greedy.spilled);
    v.check(greedy_cost == q(10), || format!("greedy weighted cost {greedy_cost}, expected 10"));
    let opt = weighted_optimal(&inst, 1, NO).unwrap();
    v.check(opt.cost == q(2), || format!("optimal cost {}, expected 2", opt.cost));
    let best = v.brute(&inst, 1, NO, "c3 fixture");
    v.check(best.cost() == Some(&q(2)), || format!("brute force {:?}, expected 2", best.cost()));
    v.notes.push(format!("greedy {greedy_cost}, optimal {}", opt.cost));
    v
}

// 4. Incremental cover DP reaches Ω − 1 optimally within 4·Ω·m steps.
fn c4() -> Verdict {
    let mut v = Verdict::default();
    let mut worst = 0.0f64;
    for i in 0..300 {
        let mut g = rng(4, i);
        let m = g.gen_range(1..=20);
        let n = g.gen_range(1..=12);
        let inst: Instance<Q> = random_intervals(&mut g, m, n, Weights::Uniform(20));
        let what = format!("c4 seed {i}");
        v.structure(&inst, &what);
        let omega = inst.omega();
        let best = v.brute(&inst, omega - 1, NO, &what);
        let sol = incremental_cover_dp(&inst, NO).unwrap();
        let bound = COVER_C * (omega * inst.num_points()) as u64;
        worst = worst.max(sol.steps as f64 / bound as f64);
        let ok = fits(&inst, &sol.spilled, omega - 1, NO) && Some(sol.cost) == cost_of(&best) && sol.steps <= bound;
        v.check(ok, || format!("{what}: dp {} in {} steps (bound {bound}) vs optimum {:?}", sol.cost, sol.steps, best.cost()));
    }
    v.notes.push(format!("300 instances, max steps/(4·Ω·m) = {worst:.3}"));
    v
}

// 5. Fitting-set DP without holes, k = 1, 2, 3.
fn c5() -> Verdict {
    let mut v = Verdict::default();
    let mut worst = 0.0f64;
    for k in 1..=3usize {
        for i in 0..200 {
            let mut g = rng(50 + k as u64, i);
            let points = g.gen_range(1..=15);
            let n = g.gen_range(1..=12);
            let inst: Instance<Q> = random_subtrees(&mut g, points, n, Weights::Uniform(20));
            let what = format!("c5 k={k} seed {i}");
            v.structure(&inst, &what);
            let best = v.brute(&inst, k, NO, &what);
            let sol = fitting_set_dp(&inst, k).unwrap();
            let bound = FIT_C * inst.num_points() as u128 * (inst.omega() as u128 + 1).pow(k as u32);
            worst = worst.max(sol.steps as f64 / bound as f64 * FIT_C as f64);
            let ok = fits(&inst, &sol.spilled, k, NO) && Some(sol.cost) == cost_of(&best) && (sol.steps as u128) <= bound;
            v.check(ok, || format!("{what}: dp {} in {} steps (bound {bound}) vs {:?}", sol.cost, sol.steps, best.cost()));
        }
        for i in 0..100 {
            let mut g = rng(55 + k as u64, i);
            let m = g.gen_range(1..=15);
            let n = g.gen_range(1..=12);
            let inst: Instance<Q> = random_intervals(&mut g, m, n, Weights::Uniform(20));
            let what = format!("c5 linear k={k} seed {i}");
            let dp = fitting_set_dp(&inst, k).unwrap();
            let flow = weighted_optimal(&inst, k, NO).unwrap();
            v.check(dp.cost == flow.cost, || format!("{what}: dp {} vs flow {}", dp.cost, flow.cost));
        }
    }
    v.notes.push(format!("600 trees + 300 blocks, c = {FIT_C}, max steps/(m·(Ω+1)^k) = {worst:.3}"));
    v
}

// 6. Fitting-set DP with holes, k = 1, 2, infeasibility included.
fn c6() -> Verdict {
    let mut v = Verdict::default();
    let mut infeasible = 0;
    for k in 1..=2usize {
        for i in 0..200 {
            let mut g = rng(60 + k as u64, i);
            let points = g.gen_range(1..=15);
            let n = g.gen_range(1..=12);
            let h = g.gen_range(1..=2);
            let inst: Instance<Q> = random_tree_code(&mut g, points, n, h, Weights::Uniform(20));
            let what = format!("c6 k={k} seed {i}");
            v.structure(&inst, &what);
            let best = v.brute(&inst, k, HOLES, &what);
            let dp = fitting_set_dp_holes(&inst, k);
            let ok = match (&dp, &best) {
                (Err(SolveError::Infeasible(_)), ExactOutcome::Infeasible(_)) => {
                    infeasible += 1;
                    true
                }
                (Ok(s), ExactOutcome::Solved(b)) => s.cost == b.cost && fits(&inst, &s.spilled, k, HOLES),
                _ => false,
            };
            v.check(ok, || format!("{what}: dp {:?} vs brute {:?}", dp.as_ref().map(|s| &s.cost), best.cost()));
        }
    }
    v.notes.push(format!("400 code trees, {infeasible} infeasible on both sides"));
    v
}

// 7. Extra-set DP, and the bound on spilled variables live at a point.
fn c7() -> Verdict {
    let mut v = Verdict::default();
    let mut optima = 0usize;
    let mut lemma = Tally::default();
    let mut infeasible = 0;
    for h in 1..=2usize {
        for k in 1..=2usize {
            let mut i = 0u64;
            let mut done = 0;
            while done < 200 {
                let mut g = rng(70 + 10 * h as u64 + k as u64, i);
                i += 1;
                let points = g.gen_range(1..=15);
                let n = g.gen_range(2..=12);
                let inst: Instance<Q> = random_linear_code(&mut g, points, n, h, Weights::Uniform(20));
                if inst.omega() < k {
                    continue;
                }
                done += 1;
                let what = format!("c7 h={h} k={k} seed {}", i - 1);
                v.structure(&inst, &what);
                let r = inst.omega() - k;
                let best = v.brute(&inst, r, HOLES, &what);
                let dp = extra_set_dp(&inst, k);
                let ok = match (&dp, &best) {
                    (Err(SolveError::Infeasible(_)), ExactOutcome::Infeasible(_)) => {
                        infeasible += 1;
                        true
                    }
                    (Ok(s), ExactOutcome::Solved(b)) => s.cost == b.cost && fits(&inst, &s.spilled, r, HOLES),
                    _ => false,
                };
                v.check(ok, || format!("{what}: dp {:?} vs brute {:?}", dp.as_ref().map(|s| &s.cost), best.cost()));
                let cap = extra_cap(inst.h(), k);
                if let AllOptima::Optima { solutions, truncated } =
                    brute_force_all_optima(&inst, r, HOLES, &BruteConfig::default()).unwrap()
                {
                    v.check(!truncated, || format!("{what}: optima enumeration truncated"));
                    for s in &solutions {
                        optima += 1;
                        let worst = (0..inst.num_samples())
                            .map(|p| inst.live_at(p).iter().filter(|x| s.spilled.contains(x)).count())
                            .max()
                            .unwrap_or(0);
                        lemma.record(worst <= cap, || format!("{what}: optimum {:?} has {worst} spilled live > {cap}", s.spilled));
                    }
                }
            }
        }
    }
    v.notes.push(format!(
        "800 code blocks ({infeasible} infeasible), {optima} optimal sets, {} points above 2(h+k)",
        lemma.failed
    ));
    v.main.merge(lemma);
    v
}

fn graphs_with_bounds(graphs: impl IntoIterator<Item = GraphInstance>) -> Vec<GraphInstance> {
    graphs
        .into_iter()
        .flat_map(|g| (0..=g.vertices).map(move |k| GraphInstance { bound: k, ..g.clone() }))
        .collect()
}

/// Checks one source through `check_reduction`, plus structure and oracles.
fn sweep_one(v: &mut Verdict, source: &Source, kind: ReductionKind, what: &str) -> Option<Q> {
    let red: Reduction<Q> = generate(source, kind).expect("sweep sources are valid");
    v.structure(&red.instance, what);
    if red.instance.num_vars() <= BRUTE_VARS {
        v.brute(&red.instance, red.certificate.registers, red.certificate.mode, what);
    }
    match check_reduction::<Q>(source, kind) {
        Ok(rep) => {
            v.check(rep.agrees(), || format!("{what}: {rep:?}"));
            rep.optimum
        }
        Err(e) => {
            v.check(false, || format!("{what}: {e}"));
            None
        }
    }
}

fn c8_x3c() -> Verdict {
    let mut v = Verdict::default();
    let classes = x3c_classes(9, 5);
    for (i, x) in classes.iter().enumerate() {
        sweep_one(&mut v, &Source::X3c(x.clone()), ReductionKind::X3c, &format!("x3c class {i} {x:?}"));
    }
    v.notes.push(format!("{} X3C classes", classes.len()));
    v
}

fn c8_cover() -> Verdict {
    let mut v = Verdict::default();
    let classes = cover_classes(6, 5);
    let mut n = 0;
    for c in &classes {
        for bound in 0..=c.family.len() {
            n += 1;
            let mut c = c.clone();
            c.bound = bound;
            let what = format!("cover {c:?}");
            sweep_one(&mut v, &Source::Cover(c), ReductionKind::Mincover, &what);
        }
    }
    v.notes.push(format!("{} cover classes, {n} with bounds", classes.len()));
    v
}

fn c8_h2() -> Verdict {
    let mut v = Verdict::default();
    let graphs = graphs_with_bounds((1..=6).flat_map(labelled_graphs));
    for g in &graphs {
        sweep_one(&mut v, &Source::Graph(g.clone()), ReductionKind::Indepset2, &format!("h2 {g:?}"));
    }
    v.notes.push(format!("{} labelled (graph, K) pairs for h=2", graphs.len()));
    v
}

/// Criterion 8 on the h = 1 generator, with the criterion 9 checks.
fn c8_h1() -> (Verdict, Verdict) {
    let mut v8 = Verdict::default();
    let mut v9 = Verdict::default();
    let classes = graph_classes(6);
    let graphs = graphs_with_bounds(classes.iter().cloned());
    let mut exhaustive = 0;
    for g in &graphs {
        let what = format!("h1 {g:?}");
        let source = Source::Graph(g.clone());
        let optimum = sweep_one(&mut v8, &source, ReductionKind::Indepset1, &what);
        let red: Reduction<Q> = generate(&source, ReductionKind::Indepset1).unwrap();
        let cert = &red.certificate;
        let (alpha, beta) = (cert.alpha.unwrap(), cert.beta.unwrap());
        let heavy = |x: VarId| matches!(red.role(x), Role::FFiller | Role::Anchor);

        // An explicit solution: the first K vertices and every local.
        let explicit: Vec<VarId> = red
            .instance
            .var_ids()
            .filter(|&x| match red.role(x) {
                Role::Vertex { index } => index < g.bound,
                Role::Delta { .. } => true,
                _ => false,
            })
            .collect();
        let explicit_cost = red.instance.cost_of(&explicit);
        let explicit_ok = fits(&red.instance, &explicit, cert.registers, HOLES) && explicit_cost < q(beta);
        v9.check(explicit_ok, || format!("{what}: explicit solution {explicit_cost} does not fit below beta {beta}"));

        let target = q(g.bound as i64 * alpha + g.edges.len() as i64);
        let yes = g.max_independent_set() >= g.bound;
        match &optimum {
            Some(opt) => {
                v9.check(*opt >= target && ((*opt == target) == yes), || {
                    format!("{what}: optimum {opt}, K·α+|E| = {target}, independent set {yes}")
                });
                v9.check(*opt < q(beta), || format!("{what}: optimum {opt} reaches beta {beta}"));
            }
            None => v9.check(false, || format!("{what}: no optimum")),
        }
        if red.instance.num_vars() <= BRUTE_VARS {
            exhaustive += 1;
            match brute_force_all_optima(&red.instance, cert.registers, HOLES, &BruteConfig::default()).unwrap() {
                AllOptima::Optima { solutions, truncated } => {
                    let bad = solutions.iter().find(|s| s.spilled.iter().any(|&x| heavy(x)));
                    v9.check(!truncated && bad.is_none(), || format!("{what}: optimum spills a heavy variable: {bad:?}"));
                }
                AllOptima::Infeasible(w) => v9.check(false, || format!("{what}: infeasible {w}")),
            }
        }
    }
    v8.notes.push(format!("{} graph classes, {} (graph, K) pairs for h=1", classes.len(), graphs.len()));
    v9.notes.push(format!(
        "{} instances; heavy spills excluded by beta > explicit cost on all, by all-optima enumeration on {exhaustive}",
        graphs.len()
    ));
    (v8, v9)
}

// 10. Pressure sandwich on random spill sets, plus fixture round trips.
fn c10() -> Verdict {
    let mut v = Verdict::default();
    for i in 0..1000u64 {
        let mut g = rng(10, i);
        let points = g.gen_range(1..=15);
        let n = g.gen_range(1..=12);
        let h = g.gen_range(1..=3);
        let inst: Instance<Q> = if i % 2 == 0 {
            random_linear_code(&mut g, points as u32, n, h, Weights::Uniform(20))
        } else {
            random_tree_code(&mut g, points, n, h, Weights::Uniform(20))
        };
        let what = format!("c10 seed {i}");
        v.structure(&inst, &what);
        let spilled = random_spill_set(&mut g, &inst, 0.4);
        let kept = pressure(&inst, &spilled, NO).unwrap();
        let holes = pressure(&inst, &spilled, HOLES).unwrap();
        let hh = inst.h();
        let bad = (0..inst.num_samples()).find(|&p| !(kept.values[p] <= holes.values[p] && holes.values[p] <= kept.values[p] + hh));
        v.check(bad.is_none(), || format!("{what}: sample {bad:?} breaks |L'| <= l' <= |L'| + h"));
    }
    let dirs = [
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures"),
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../cli/tests/fixtures"),
    ];
    let mut fixtures = 0;
    for dir in dirs {
        let Ok(entries) = std::fs::read_dir(&dir) else { continue };
        for e in entries.flatten() {
            let path = e.path();
            if path.extension().is_none_or(|x| x != "spill") {
                continue;
            }
            let text = std::fs::read_to_string(&path).unwrap();
            // Broken fixtures are expected to fail parsing.
            if let Ok(inst) = parse::<Q>(&text) {
                fixtures += 1;
                v.structure(&inst, &path.display().to_string());
            }
        }
    }
    v.notes.push(format!("1000 (instance, spill set) pairs, {fixtures} fixtures"));
    v
}

fn line(n: usize, name: &str, t: &Tally, notes: &[String], secs: f64) -> bool {
    let ok = t.failed == 0 && t.count > 0;
    println!(
        "criterion {n:>2} {:<5} {name}: {} checks, {} failed; {} [{secs:.1}s]",
        if ok { "PASS" } else { "FAIL" },
        t.count,
        t.failed,
        notes.join("; ")
    );
    for e in &t.examples {
        println!("      {e}");
    }
    ok
}

fn main() -> ExitCode {
    let start = Instant::now();
    type Job = fn() -> Verdict;
    let jobs: [(usize, &str, Job); 10] = [
        (1, "greedy optimality", c1),
        (2, "weighted optimality and integral flow", c2),
        (3, "greedy vs weighted regression", c3),
        (4, "incremental cover DP", c4),
        (5, "fitting-set DP without holes", c5),
        (6, "fitting-set DP with holes", c6),
        (7, "extra-set DP and spilled-live bound", c7),
        (8, "reduction sweep: x3c", c8_x3c),
        (8, "reduction sweep: mincover", c8_cover),
        (8, "reduction sweep: indepset h=2", c8_h2),
    ];
    let (mut results, (h1, gadget)) = std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|&(_, _, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let v = f();
                    (v, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        let t = Instant::now();
        let (a, b) = c8_h1();
        let h1_secs = t.elapsed().as_secs_f64();
        let results: Vec<(Verdict, f64)> = handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect();
        (results, ((a, h1_secs), b))
    });
    let t = Instant::now();
    let v10 = c10();
    let c10_secs = t.elapsed().as_secs_f64();

    let mut all_ok = true;
    let mut oracle = Tally::default();
    let mut roundtrip = Tally::default();
    let mut chordal = Tally::default();
    let mut sweep = Verdict::default();
    let mut sweep_secs = h1.1;
    let mut side = |v: &mut Verdict| {
        oracle.merge(std::mem::take(&mut v.oracle));
        roundtrip.merge(std::mem::take(&mut v.roundtrip));
        chordal.merge(std::mem::take(&mut v.chordal));
    };
    for ((n, name, _), (v, secs)) in jobs.iter().zip(results.iter_mut()) {
        side(v);
        if *n == 8 {
            sweep_secs = sweep_secs.max(*secs);
            let mut v = std::mem::take(v);
            if let Some(last) = v.notes.last_mut() {
                last.push_str(&format!(" ({secs:.1}s)"));
            }
            sweep.absorb(v);
        } else {
            all_ok &= line(*n, name, &v.main, &v.notes, *secs);
        }
    }
    let (mut h1v, h1_secs) = h1;
    if let Some(last) = h1v.notes.last_mut() {
        last.push_str(&format!(" ({h1_secs:.1}s)"));
    }
    let mut gadget = gadget;
    side(&mut h1v);
    side(&mut gadget);
    sweep.absorb(h1v);
    all_ok &= line(8, "reduction iff sweeps", &sweep.main, &sweep.notes, sweep_secs);
    all_ok &= line(9, "h=1 gadget parameters", &gadget.main, &gadget.notes, 0.0);

    let mut v10 = v10;
    side(&mut v10);
    let mut c10_main = std::mem::take(&mut v10.main);
    let notes = vec![
        v10.notes.join(""),
        format!("{} round trips ({} failed), {} chordality checks ({} failed)", roundtrip.count, roundtrip.failed, chordal.count, chordal.failed),
    ];
    c10_main.merge(roundtrip);
    c10_main.merge(chordal);
    all_ok &= line(10, "model invariants", &c10_main, &notes, c10_secs);
    all_ok &= line(11, "branch and bound vs brute force", &oracle, &["criteria 1-9, n <= 20".to_string()], 0.0);
    println!("acceptance: {} in {:.1}s", if all_ok { "all criteria pass" } else { "FAILURES" }, start.elapsed().as_secs_f64());
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
