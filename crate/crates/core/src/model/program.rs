use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use super::{
    Instance, Instruction, LiveRange, ModelError, Point, RangeKind, Shape, VarId, Variable,
};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProgramKind {
    /// Instructions define liveness and chads.
    Code,
    /// Live ranges are given directly; chads are unknown.
    Ranges,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointDecl {
    pub label: u32,
    pub parent: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstrDecl {
    pub at: u32,
    pub uses: Vec<String>,
    pub defs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RangeDecl {
    /// Inclusive run of a chain, by point labels.
    Span(u32, u32),
    Points(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct VarDecl<W> {
    pub name: String,
    pub weight: W,
    pub range: Option<RangeDecl>,
}

/// Unvalidated description of an instance, as read from a file or produced
/// by a generator.
#[derive(Debug, Clone, PartialEq)]
pub struct Program<W> {
    pub kind: ProgramKind,
    pub shape: Shape,
    pub points: Vec<PointDecl>,
    pub instructions: Vec<InstrDecl>,
    pub live_in: Vec<String>,
    pub live_out: Vec<String>,
    pub vars: Vec<VarDecl<W>>,
    pub registers: Option<usize>,
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

impl<W: Weight> Program<W> {
    pub fn new(kind: ProgramKind, shape: Shape) -> Self {
        Program {
            kind,
            shape,
            points: Vec::new(),
            instructions: Vec::new(),
            live_in: Vec::new(),
            live_out: Vec::new(),
            vars: Vec::new(),
            registers: None,
        }
    }

    /// Basic block with points labelled `1..=m`.
    pub fn linear_code(m: u32) -> Self {
        let mut p = Self::new(ProgramKind::Code, Shape::Linear);
        p.points = (1..=m).map(|label| PointDecl { label, parent: None }).collect();
        p
    }

    /// Pure interval instance over points `1..=m`.
    pub fn linear_ranges(m: u32) -> Self {
        let mut p = Self::linear_code(m);
        p.kind = ProgramKind::Ranges;
        p
    }

    /// Tree code; `parents[i]` is the parent label of point `i + 1`.
    pub fn tree_code(parents: &[Option<u32>]) -> Self {
        let mut p = Self::new(ProgramKind::Code, Shape::Tree);
        p.points = parents
            .iter()
            .enumerate()
            .map(|(i, &parent)| PointDecl { label: i as u32 + 1, parent })
            .collect();
        p
    }

    pub fn tree_ranges(parents: &[Option<u32>]) -> Self {
        let mut p = Self::tree_code(parents);
        p.kind = ProgramKind::Ranges;
        p
    }

    pub fn instr(mut self, at: u32, uses: &[&str], defs: &[&str]) -> Self {
        self.instructions.push(InstrDecl { at, uses: names(uses), defs: names(defs) });
        self
    }

    pub fn live_in(mut self, vars: &[&str]) -> Self {
        self.live_in.extend(names(vars));
        self
    }

    pub fn live_out(mut self, vars: &[&str]) -> Self {
        self.live_out.extend(names(vars));
        self
    }

    pub fn var(mut self, name: &str, weight: W) -> Self {
        self.vars.push(VarDecl { name: name.to_string(), weight, range: None });
        self
    }

    pub fn span(mut self, name: &str, weight: W, start: u32, end: u32) -> Self {
        self.vars.push(VarDecl {
            name: name.to_string(),
            weight,
            range: Some(RangeDecl::Span(start, end)),
        });
        self
    }

    pub fn subtree(mut self, name: &str, weight: W, points: &[u32]) -> Self {
        self.vars.push(VarDecl {
            name: name.to_string(),
            weight,
            range: Some(RangeDecl::Points(points.to_vec())),
        });
        self
    }

    pub fn build(self) -> Result<Instance<W>, ModelError> {
        Instance::new(self)
    }
}

/// A broken invariant, naming the offending point or variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoPoints,
    DuplicatePoint(u32),
    UnknownPoint(u32),
    NotAChain(u32),
    RootCount(usize),
    Cycle(u32),
    DuplicateInstruction(u32),
    UseDefOverlap { point: u32, var: String },
    MultipleDefinitions(String),
    LiveInDefined(String),
    Dominance { var: String, point: u32 },
    UndefinedVariable(String),
    NonPositiveWeight(String),
    DuplicateVariable(String),
    InvalidName(String),
    RangeInCode(String),
    CodeInRanges,
    MissingRange(String),
    SpanInTree(String),
    BadSpan(String),
    DisconnectedRange(String),
}

/// What a violation is about, for locating it in a source file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject<'a> {
    Point(u32),
    Var(&'a str),
    None,
}

impl Violation {
    pub fn subject(&self) -> Subject<'_> {
        use Violation::*;
        match self {
            DuplicatePoint(p) | UnknownPoint(p) | NotAChain(p) | Cycle(p)
            | DuplicateInstruction(p) => Subject::Point(*p),
            UseDefOverlap { var, .. } | Dominance { var, .. } => Subject::Var(var),
            MultipleDefinitions(v) | LiveInDefined(v) | UndefinedVariable(v)
            | NonPositiveWeight(v) | DuplicateVariable(v) | InvalidName(v) | RangeInCode(v)
            | MissingRange(v) | SpanInTree(v) | BadSpan(v) | DisconnectedRange(v) => {
                Subject::Var(v)
            }
            NoPoints | RootCount(_) | CodeInRanges => Subject::None,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            NoPoints => write!(f, "program has no points"),
            DuplicatePoint(p) => write!(f, "point {p} declared twice"),
            UnknownPoint(p) => write!(f, "point {p} is referenced but not declared"),
            NotAChain(p) => write!(f, "point {p}: parent is not the preceding point of the chain"),
            RootCount(n) => write!(f, "tree must have exactly one root, found {n}"),
            Cycle(p) => write!(f, "point {p} is not reachable from the root (cycle)"),
            DuplicateInstruction(p) => write!(f, "point {p} carries more than one instruction"),
            UseDefOverlap { point, var } => {
                write!(f, "point {point}: `{var}` is both used and defined (uses and defs must be disjoint)")
            }
            MultipleDefinitions(v) => write!(f, "`{v}` is defined more than once (SSA single definition)"),
            LiveInDefined(v) => write!(f, "`{v}` is live-in and also defined (SSA single definition)"),
            Dominance { var, point } => {
                write!(f, "use of `{var}` at point {point} is not dominated by its definition (dominance)")
            }
            UndefinedVariable(v) => write!(f, "`{v}` is never defined and not live-in"),
            NonPositiveWeight(v) => write!(f, "`{v}` must have a weight > 0"),
            DuplicateVariable(v) => write!(f, "variable `{v}` declared twice"),
            InvalidName(v) => write!(f, "invalid variable name `{v}`"),
            RangeInCode(v) => write!(f, "`{v}`: explicit ranges are only allowed in range instances"),
            CodeInRanges => write!(f, "range instances cannot carry instructions or live-in/live-out sets"),
            MissingRange(v) => write!(f, "`{v}` has no live range"),
            SpanInTree(v) => write!(f, "`{v}`: spans are only defined on linear instances"),
            BadSpan(v) => write!(f, "`{v}`: span start is after its end"),
            DisconnectedRange(v) => write!(f, "`{v}`: live range is not connected"),
        }
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "-"
        && !name.chars().any(|c| c.is_whitespace() || c == ',' || c == '#')
}

/// Point structure in preorder.
struct Topology {
    points: Vec<Point>,
    index: HashMap<u32, usize>,
    /// Preorder index one past the end of each point's subtree.
    subtree_end: Vec<usize>,
}

impl Topology {
    fn is_descendant(&self, p: usize, ancestor: usize) -> bool {
        ancestor <= p && p < self.subtree_end[ancestor]
    }
}

fn topology<W>(program: &Program<W>, out: &mut Vec<Violation>) -> Option<Topology> {
    if program.points.is_empty() {
        out.push(Violation::NoPoints);
        return None;
    }
    let mut decl: BTreeMap<u32, Option<u32>> = BTreeMap::new();
    for p in &program.points {
        if decl.insert(p.label, p.parent).is_some() {
            out.push(Violation::DuplicatePoint(p.label));
        }
    }
    let before = out.len();
    for (&label, &parent) in &decl {
        if let Some(par) = parent {
            if !decl.contains_key(&par) {
                out.push(Violation::UnknownPoint(par));
            }
        }
        let _ = label;
    }
    match program.shape {
        Shape::Linear => {
            let labels: Vec<u32> = decl.keys().copied().collect();
            for (i, &label) in labels.iter().enumerate() {
                let expected = if i == 0 { None } else { Some(labels[i - 1]) };
                if let Some(parent) = decl[&label] {
                    if Some(parent) != expected {
                        out.push(Violation::NotAChain(label));
                    }
                }
            }
            if out.len() > before {
                return None;
            }
            let n = labels.len();
            let points = labels
                .iter()
                .enumerate()
                .map(|(i, &label)| Point {
                    label,
                    parent: i.checked_sub(1),
                    children: if i + 1 < n { vec![i + 1] } else { vec![] },
                })
                .collect();
            let index = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
            Some(Topology { points, index, subtree_end: vec![n; n] })
        }
        Shape::Tree => {
            let roots: Vec<u32> = decl
                .iter()
                .filter(|(_, p)| p.is_none())
                .map(|(&l, _)| l)
                .collect();
            if roots.len() != 1 {
                out.push(Violation::RootCount(roots.len()));
            }
            if out.len() > before {
                return None;
            }
            let mut kids: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
            for (&label, &parent) in &decl {
                if let Some(par) = parent {
                    kids.entry(par).or_default().push(label);
                }
            }
            // Iterative preorder, children by ascending label.
            let mut order: Vec<u32> = Vec::with_capacity(decl.len());
            let mut stack = vec![roots[0]];
            while let Some(l) = stack.pop() {
                order.push(l);
                if let Some(ch) = kids.get(&l) {
                    stack.extend(ch.iter().rev());
                }
            }
            if order.len() != decl.len() {
                let seen: BTreeSet<u32> = order.iter().copied().collect();
                for &l in decl.keys() {
                    if !seen.contains(&l) {
                        out.push(Violation::Cycle(l));
                    }
                }
                return None;
            }
            let index: HashMap<u32, usize> =
                order.iter().enumerate().map(|(i, &l)| (l, i)).collect();
            let mut points: Vec<Point> = order
                .iter()
                .map(|&l| Point {
                    label: l,
                    parent: decl[&l].map(|p| index[&p]),
                    children: Vec::new(),
                })
                .collect();
            for i in 0..points.len() {
                if let Some(p) = points[i].parent {
                    points[p].children.push(i);
                }
            }
            let mut subtree_end = vec![0; points.len()];
            for i in (0..points.len()).rev() {
                subtree_end[i] = points[i]
                    .children
                    .iter()
                    .map(|&c| subtree_end[c])
                    .max()
                    .unwrap_or(i + 1);
            }
            Some(Topology { points, index, subtree_end })
        }
    }
}

/// Per-variable facts gathered from a code program.
#[derive(Default)]
struct CodeVar {
    defs: Vec<usize>,
    uses: BTreeSet<usize>,
    live_in: bool,
    live_out: bool,
}

struct Analysis<W> {
    topo: Topology,
    /// Sorted by name.
    vars: Vec<(String, W, VarShape)>,
    instructions: Option<Vec<(usize, Vec<String>, Vec<String>)>>,
}

enum VarShape {
    Code { def: Option<usize>, uses: Vec<usize>, live_in: bool, live_out: bool },
    Range(Vec<usize>),
}

fn analyse<W: Weight>(program: &Program<W>, out: &mut Vec<Violation>) -> Option<Analysis<W>> {
    let topo = topology(program, out);

    let mut weights: BTreeMap<String, (W, Option<RangeDecl>)> = BTreeMap::new();
    for v in &program.vars {
        if !valid_name(&v.name) {
            out.push(Violation::InvalidName(v.name.clone()));
        }
        if v.weight <= W::zero() {
            out.push(Violation::NonPositiveWeight(v.name.clone()));
        }
        if weights
            .insert(v.name.clone(), (v.weight.clone(), v.range.clone()))
            .is_some()
        {
            out.push(Violation::DuplicateVariable(v.name.clone()));
        }
    }
    let topo = topo?;

    match program.kind {
        ProgramKind::Code => {
            let mut facts: BTreeMap<String, CodeVar> = BTreeMap::new();
            for name in weights.keys() {
                facts.entry(name.clone()).or_default();
            }
            for (name, (_, range)) in &weights {
                if range.is_some() {
                    out.push(Violation::RangeInCode(name.clone()));
                }
            }
            let mut seen_at: BTreeSet<usize> = BTreeSet::new();
            let mut instrs = Vec::new();
            for ins in &program.instructions {
                let Some(&at) = topo.index.get(&ins.at) else {
                    out.push(Violation::UnknownPoint(ins.at));
                    continue;
                };
                if !seen_at.insert(at) {
                    out.push(Violation::DuplicateInstruction(ins.at));
                }
                let uses: BTreeSet<&String> = ins.uses.iter().collect();
                let defs: BTreeSet<&String> = ins.defs.iter().collect();
                for &u in &uses {
                    if defs.contains(u) {
                        out.push(Violation::UseDefOverlap { point: ins.at, var: u.clone() });
                    }
                }
                for &name in uses.iter().chain(defs.iter()) {
                    if !valid_name(name) {
                        out.push(Violation::InvalidName(name.clone()));
                    }
                }
                for &u in &uses {
                    facts.entry(u.clone()).or_default().uses.insert(at);
                }
                for &d in &defs {
                    facts.entry(d.clone()).or_default().defs.push(at);
                }
                instrs.push((
                    at,
                    uses.into_iter().cloned().collect::<Vec<_>>(),
                    defs.into_iter().cloned().collect::<Vec<_>>(),
                ));
            }
            for name in &program.live_in {
                if !valid_name(name) {
                    out.push(Violation::InvalidName(name.clone()));
                }
                facts.entry(name.clone()).or_default().live_in = true;
            }
            for name in &program.live_out {
                if !valid_name(name) {
                    out.push(Violation::InvalidName(name.clone()));
                }
                facts.entry(name.clone()).or_default().live_out = true;
            }
            let mut vars = Vec::with_capacity(facts.len());
            for (name, f) in facts {
                if f.defs.len() > 1 {
                    out.push(Violation::MultipleDefinitions(name.clone()));
                }
                if f.live_in && !f.defs.is_empty() {
                    out.push(Violation::LiveInDefined(name.clone()));
                }
                let def = if f.live_in { Some(0) } else { f.defs.first().copied() };
                let Some(d) = def else {
                    out.push(Violation::UndefinedVariable(name.clone()));
                    continue;
                };
                for &u in &f.uses {
                    let ok = if f.live_in {
                        true
                    } else {
                        u != d && topo.is_descendant(u, d)
                    };
                    if !ok {
                        out.push(Violation::Dominance {
                            var: name.clone(),
                            point: topo.points[u].label,
                        });
                    }
                }
                let weight = weights
                    .get(&name)
                    .map(|(w, _)| w.clone())
                    .unwrap_or_else(W::one);
                vars.push((
                    name,
                    weight,
                    VarShape::Code {
                        def: if f.live_in { None } else { Some(d) },
                        uses: f.uses.into_iter().collect(),
                        live_in: f.live_in,
                        live_out: f.live_out,
                    },
                ));
            }
            instrs.sort_by_key(|i| i.0);
            Some(Analysis { topo, vars, instructions: Some(instrs) })
        }
        ProgramKind::Ranges => {
            if !program.instructions.is_empty()
                || !program.live_in.is_empty()
                || !program.live_out.is_empty()
            {
                out.push(Violation::CodeInRanges);
            }
            let mut vars = Vec::with_capacity(weights.len());
            for (name, (weight, range)) in weights {
                let points = match range {
                    None => {
                        out.push(Violation::MissingRange(name));
                        continue;
                    }
                    Some(RangeDecl::Span(a, b)) => {
                        if program.shape != Shape::Linear {
                            out.push(Violation::SpanInTree(name));
                            continue;
                        }
                        let (Some(&ia), Some(&ib)) = (topo.index.get(&a), topo.index.get(&b))
                        else {
                            for l in [a, b] {
                                if !topo.index.contains_key(&l) {
                                    out.push(Violation::UnknownPoint(l));
                                }
                            }
                            continue;
                        };
                        if ia > ib {
                            out.push(Violation::BadSpan(name));
                            continue;
                        }
                        (ia..=ib).collect::<Vec<_>>()
                    }
                    Some(RangeDecl::Points(labels)) => {
                        let mut pts = Vec::with_capacity(labels.len());
                        let mut bad = false;
                        for l in labels {
                            match topo.index.get(&l) {
                                Some(&i) => pts.push(i),
                                None => {
                                    out.push(Violation::UnknownPoint(l));
                                    bad = true;
                                }
                            }
                        }
                        pts.sort_unstable();
                        pts.dedup();
                        if bad {
                            continue;
                        }
                        // Connected iff exactly one point has its parent outside the set.
                        let set: BTreeSet<usize> = pts.iter().copied().collect();
                        let tops = pts
                            .iter()
                            .filter(|&&p| topo.points[p].parent.is_none_or(|q| !set.contains(&q)))
                            .count();
                        if tops != 1 {
                            out.push(Violation::DisconnectedRange(name));
                            continue;
                        }
                        pts
                    }
                };
                vars.push((name, weight, VarShape::Range(points)));
            }
            Some(Analysis { topo, vars, instructions: None })
        }
    }
}

/// Checks every structural invariant of a program.
pub fn validate<W: Weight>(program: &Program<W>) -> Vec<Violation> {
    let mut out = Vec::new();
    analyse(program, &mut out);
    out
}

/// Live range of every variable of a program.
pub fn live_ranges<W: Weight>(
    program: &Program<W>,
) -> Result<BTreeMap<String, LiveRange>, ModelError> {
    let inst = build(program.clone())?;
    Ok(inst
        .vars
        .into_iter()
        .map(|v| (v.name, v.range))
        .collect())
}

pub(super) fn build<W: Weight>(program: Program<W>) -> Result<Instance<W>, ModelError> {
    let mut violations = Vec::new();
    let analysis = analyse(&program, &mut violations);
    if !violations.is_empty() {
        if let [Violation::UndefinedVariable(v)] = violations.as_slice() {
            return Err(ModelError::MalformedCode(v.clone()));
        }
        return Err(ModelError::Invalid(violations));
    }
    let Analysis { topo, vars: raw, instructions } =
        analysis.expect("no violations implies a complete analysis");
    let m = topo.points.len();
    let kind = match program.shape {
        Shape::Linear => RangeKind::Interval,
        Shape::Tree => RangeKind::Subtree,
    };

    let mut vars = Vec::with_capacity(raw.len());
    for (name, weight, shape) in raw {
        let var = match shape {
            VarShape::Range(points) => {
                let samples = points.iter().flat_map(|&p| [2 * p, 2 * p + 1]).collect();
                Variable {
                    name,
                    weight,
                    range: LiveRange { kind, points },
                    samples,
                    chads: Vec::new(),
                    def_point: None,
                    use_points: Vec::new(),
                    live_in: false,
                    live_out: false,
                }
            }
            VarShape::Code { def, uses, live_in, live_out } => {
                let d = def.unwrap_or(0);
                let mut in_range = vec![false; m];
                in_range[d] = true;
                if live_out {
                    for flag in &mut in_range[d..topo.subtree_end[d]] {
                        *flag = true;
                    }
                }
                for &u in &uses {
                    let mut p = u;
                    while !in_range[p] {
                        in_range[p] = true;
                        p = topo.points[p].parent.expect("use is below its definition");
                    }
                }
                let points: Vec<usize> = (0..m).filter(|&p| in_range[p]).collect();
                let mut samples = Vec::with_capacity(2 * points.len());
                for &q in &points {
                    if q != d || live_in {
                        samples.push(2 * q);
                    }
                    let node = &topo.points[q];
                    let continues = node.children.iter().any(|&c| in_range[c]);
                    if (q == d && !live_in) || continues || (live_out && node.children.is_empty())
                    {
                        samples.push(2 * q + 1);
                    }
                }
                let mut chads: Vec<usize> = uses.iter().map(|&u| 2 * u).collect();
                if let Some(d) = def {
                    chads.push(2 * d + 1);
                }
                chads.sort_unstable();
                Variable {
                    name,
                    weight,
                    range: LiveRange { kind, points },
                    samples,
                    chads,
                    def_point: def,
                    use_points: uses,
                    live_in,
                    live_out,
                }
            }
        };
        vars.push(var);
    }

    let by_name: HashMap<String, VarId> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| (v.name.clone(), VarId(i)))
        .collect();
    let mut live = vec![Vec::new(); 2 * m];
    let mut chads = vec![Vec::new(); 2 * m];
    for (i, v) in vars.iter().enumerate() {
        for &s in &v.samples {
            live[s].push(VarId(i));
        }
        for &s in &v.chads {
            chads[s].push(VarId(i));
        }
    }
    let omega = live.iter().map(Vec::len).max().unwrap_or(0);

    let instructions = instructions.map(|list| {
        list.into_iter()
            .map(|(at, uses, defs)| Instruction {
                at,
                uses: uses.iter().map(|n| by_name[n]).collect(),
                defs: defs.iter().map(|n| by_name[n]).collect(),
            })
            .collect::<Vec<_>>()
    });
    let h = instructions
        .as_ref()
        .map(|list| {
            list.iter()
                .map(|i| i.uses.len().max(i.defs.len()))
                .max()
                .unwrap_or(0)
        })
        .unwrap_or(0);

    Ok(Instance {
        shape: program.shape,
        points: topo.points,
        vars,
        instructions,
        live,
        chads,
        by_name,
        omega,
        h,
        registers: program.registers,
    })
}

pub(super) fn lower<W: Weight>(inst: &Instance<W>) -> Program<W> {
    let label = |p: usize| inst.points[p].label;
    let mut points: Vec<PointDecl> = inst
        .points
        .iter()
        .map(|p| PointDecl {
            label: p.label,
            parent: match inst.shape {
                Shape::Linear => None,
                Shape::Tree => p.parent.map(label),
            },
        })
        .collect();
    points.sort_by_key(|p| p.label);
    let name = |v: &VarId| inst.vars[v.0].name.clone();
    let (kind, instructions) = match &inst.instructions {
        Some(list) => {
            let mut decls: Vec<InstrDecl> = list
                .iter()
                .map(|i| InstrDecl {
                    at: label(i.at),
                    uses: i.uses.iter().map(name).collect(),
                    defs: i.defs.iter().map(name).collect(),
                })
                .collect();
            decls.sort_by_key(|d| d.at);
            (ProgramKind::Code, decls)
        }
        None => (ProgramKind::Ranges, Vec::new()),
    };
    let vars = inst
        .vars
        .iter()
        .map(|v| VarDecl {
            name: v.name.clone(),
            weight: v.weight.clone(),
            range: match kind {
                ProgramKind::Code => None,
                ProgramKind::Ranges => Some(match inst.shape {
                    Shape::Linear => RangeDecl::Span(
                        label(v.range.points[0]),
                        label(*v.range.points.last().expect("nonempty range")),
                    ),
                    Shape::Tree => {
                        let mut ls: Vec<u32> = v.range.points.iter().map(|&p| label(p)).collect();
                        ls.sort_unstable();
                        RangeDecl::Points(ls)
                    }
                }),
            },
        })
        .collect();
    let live_in = inst.vars.iter().filter(|v| v.live_in).map(|v| v.name.clone()).collect();
    let live_out = inst.vars.iter().filter(|v| v.live_out).map(|v| v.name.clone()).collect();
    Program {
        kind,
        shape: inst.shape,
        points,
        instructions,
        live_in,
        live_out,
        vars,
        registers: inst.registers,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type P = Program<Rational>;

    fn one() -> Rational {
        Rational::from_integer(1)
    }

    #[test]
    fn single_point_is_valid() {
        let p = P::linear_code(1).instr(1, &[], &["a"]);
        assert!(validate(&p).is_empty());
        let inst = p.build().unwrap();
        assert_eq!(inst.omega(), 1);
        assert_eq!(inst.var(VarId(0)).samples, vec![1]);
    }

    #[test]
    fn double_definition_is_reported() {
        let p = P::linear_code(3)
            .instr(1, &[], &["a"])
            .instr(2, &[], &["a"])
            .instr(3, &["a"], &[]);
        let v = validate(&p);
        assert!(v.contains(&Violation::MultipleDefinitions("a".into())), "{v:?}");
    }

    #[test]
    fn use_outside_definition_subtree_is_reported() {
        // 1 -> {2, 3}; a defined at 2, used at 3.
        let p = P::tree_code(&[None, Some(1), Some(1)])
            .instr(2, &[], &["a"])
            .instr(3, &["a"], &[]);
        let v = validate(&p);
        assert_eq!(v, vec![Violation::Dominance { var: "a".into(), point: 3 }]);
    }

    #[test]
    fn uses_and_defs_must_be_disjoint() {
        let p = P::linear_code(2).live_in(&["a"]).instr(1, &["a"], &["a"]);
        assert!(validate(&p)
            .iter()
            .any(|v| matches!(v, Violation::UseDefOverlap { .. })));
    }

    #[test]
    fn linear_range_from_def_to_last_use() {
        let p = P::linear_code(4).instr(1, &[], &["a"]).instr(3, &["a"], &[]);
        let ranges = live_ranges(&p).unwrap();
        assert_eq!(ranges["a"].points, vec![0, 1, 2]);
        let inst = p.build().unwrap();
        // def moment of p1, both moments of p2, use moment of p3.
        assert_eq!(inst.var(VarId(0)).samples, vec![1, 2, 3, 4]);
        assert_eq!(inst.var(VarId(0)).chads, vec![1, 4]);
    }

    #[test]
    fn live_in_starts_at_entry() {
        let p = P::linear_code(3).live_in(&["b"]).instr(2, &["b"], &[]);
        let ranges = live_ranges(&p).unwrap();
        assert_eq!(ranges["b"].points, vec![0, 1]);
        let inst = p.build().unwrap();
        assert_eq!(inst.var(VarId(0)).samples, vec![0, 1, 2]);
        assert_eq!(inst.var(VarId(0)).chads, vec![2]);
    }

    #[test]
    fn live_out_runs_to_exit_without_chad() {
        let p = P::linear_code(3).instr(1, &[], &["c"]).live_out(&["c"]);
        let inst = p.build().unwrap();
        assert_eq!(inst.var(VarId(0)).samples, vec![1, 2, 3, 4, 5]);
        assert_eq!(inst.var(VarId(0)).chads, vec![1]);
    }

    #[test]
    fn tree_range_is_union_of_paths() {
        // 1 -> 2 -> 3, 1 -> 4 -> 5 ; def a at 1, uses at leaves 3 and 5.
        let p = P::tree_code(&[None, Some(1), Some(2), Some(1), Some(4)])
            .instr(1, &[], &["a"])
            .instr(3, &["a"], &[])
            .instr(5, &["a"], &[]);
        let ranges = live_ranges(&p).unwrap();
        assert_eq!(ranges["a"].points.len(), 5);
        let inst = p.build().unwrap();
        assert!(inst.is_code_backed());
        assert_eq!(inst.omega(), 1);
    }

    #[test]
    fn undefined_use_is_malformed() {
        let p = P::linear_code(2).instr(2, &["x"], &[]);
        assert_eq!(
            live_ranges(&p).unwrap_err(),
            ModelError::MalformedCode("x".into())
        );
    }

    #[test]
    fn ranges_need_contiguous_subtrees() {
        let p = P::tree_ranges(&[None, Some(1), Some(1)]).subtree("a", one(), &[2, 3]);
        assert_eq!(validate(&p), vec![Violation::DisconnectedRange("a".into())]);
        let p = P::linear_ranges(3).span("a", one(), 3, 1);
        assert_eq!(validate(&p), vec![Violation::BadSpan("a".into())]);
    }

    #[test]
    fn zero_weight_rejected() {
        let p = P::linear_ranges(1).span("a", Rational::from_integer(0), 1, 1);
        assert_eq!(validate(&p), vec![Violation::NonPositiveWeight("a".into())]);
    }

    #[test]
    fn lowering_round_trips() {
        let p = P::tree_code(&[None, Some(1), Some(1)])
            .live_in(&["x"])
            .instr(1, &["x"], &["a"])
            .instr(2, &["a"], &[])
            .instr(3, &["a"], &["b"])
            .live_out(&["b"]);
        let inst = p.build().unwrap();
        let again = inst.to_program().build().unwrap();
        assert_eq!(inst.to_program(), again.to_program());
    }
}
