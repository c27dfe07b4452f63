//! The `spill-v1` text format.
//!
//! ```text
//! format spill-v1
//! kind linear            # or: tree, ranges, ranges tree
//! registers 2            # optional
//! point 1
//! point 2 parent 1
//! instr 1 uses - defs a
//! instr 2 uses a defs -
//! livein x,y
//! liveout a
//! var a weight 3/2       # ranges: var a weight 1 span 1..2 | points 1,2
//! ```
//!
//! Weights are integers or `num/den`. Variables of a code instance that are
//! never declared with `var` get weight 1.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::model::{
    Instance, InstrDecl, ModelError, PointDecl, Program, ProgramKind, RangeDecl, Shape, VarDecl,
    Violation,
};
use crate::weight::Weight;

/// One located problem in an instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    /// 1-based; 0 when the problem concerns the file as a whole.
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            f.write_str(&self.message)
        } else {
            write!(f, "{}:{}: {}", self.line, self.column, self.message)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {0}")]
    Syntax(Diagnostic),
    #[error("invalid instance:\n{}", list(.0))]
    Semantic(Vec<Diagnostic>),
}

fn list(ds: &[Diagnostic]) -> String {
    ds.iter().map(|d| format!("  {d}")).collect::<Vec<_>>().join("\n")
}

impl ParseError {
    pub fn diagnostics(&self) -> Vec<&Diagnostic> {
        match self {
            ParseError::Syntax(d) => vec![d],
            ParseError::Semantic(ds) => ds.iter().collect(),
        }
    }
}

/// Where each point and variable first appears, for locating violations.
#[derive(Default)]
struct Origins {
    points: HashMap<u32, (usize, usize)>,
    vars: HashMap<String, (usize, usize)>,
}

struct Line<'a> {
    number: usize,
    text: &'a str,
    tokens: Vec<(usize, &'a str)>,
    next: usize,
}

impl<'a> Line<'a> {
    fn new(number: usize, raw: &'a str) -> Self {
        let text = raw.split('#').next().unwrap_or("");
        let tokens = text
            .split_whitespace()
            .map(|t| (t.as_ptr() as usize - raw.as_ptr() as usize + 1, t))
            .collect();
        Line { number, text, tokens, next: 0 }
    }

    fn error(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax(Diagnostic { line: self.number, column, message: message.into() })
    }

    fn end_column(&self) -> usize {
        self.text.trim_end().len() + 1
    }

    fn take(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        let t = self
            .tokens
            .get(self.next)
            .copied()
            .ok_or_else(|| self.error(self.end_column(), format!("expected {what}")))?;
        self.next += 1;
        Ok(t)
    }

    fn peek(&self) -> Option<&'a str> {
        self.tokens.get(self.next).map(|t| t.1)
    }

    fn keyword(&mut self, word: &str) -> Result<usize, ParseError> {
        let (col, t) = self.take(&format!("`{word}`"))?;
        if t == word {
            Ok(col)
        } else {
            Err(self.error(col, format!("expected `{word}`, found `{t}`")))
        }
    }

    fn number(&mut self, what: &str) -> Result<(usize, u32), ParseError> {
        let (col, t) = self.take(what)?;
        t.parse()
            .map(|n| (col, n))
            .map_err(|_| self.error(col, format!("expected {what}, found `{t}`")))
    }

    fn names(&mut self, what: &str) -> Result<(usize, Vec<String>), ParseError> {
        let (col, t) = self.take(what)?;
        if t == "-" {
            return Ok((col, Vec::new()));
        }
        let names: Vec<String> = t.split(',').map(str::to_string).collect();
        if names.iter().any(|n| n.is_empty()) {
            return Err(self.error(col, format!("empty name in list `{t}`")));
        }
        Ok((col, names))
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.tokens.get(self.next) {
            None => Ok(()),
            Some(&(col, t)) => Err(self.error(col, format!("unexpected `{t}`"))),
        }
    }
}

/// Parses and validates an instance.
pub fn parse<W>(text: &str) -> Result<Instance<W>, ParseError>
where
    W: Weight + FromStr,
{
    let (program, origins) = parse_program_located(text)?;
    program.build().map_err(|e| locate(e, &origins))
}

/// Parses without validating.
pub fn parse_program<W>(text: &str) -> Result<Program<W>, ParseError>
where
    W: Weight + FromStr,
{
    parse_program_located(text).map(|(p, _)| p)
}

fn parse_program_located<W>(text: &str) -> Result<(Program<W>, Origins), ParseError>
where
    W: Weight + FromStr,
{
    let mut origins = Origins::default();
    let mut program: Option<Program<W>> = None;
    let mut seen_format = false;
    let mut declared: Vec<String> = Vec::new();
    let mut mentioned: Vec<String> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let mut line = Line::new(i + 1, raw);
        let Some((col, head)) = line.tokens.first().copied() else {
            continue;
        };
        line.next = 1;
        if !seen_format {
            if head != "format" {
                return Err(line.error(col, "the first record must be `format spill-v1`"));
            }
            let (c, tag) = line.take("format tag")?;
            if tag != "spill-v1" {
                return Err(line.error(c, format!("unsupported format `{tag}`")));
            }
            line.finish()?;
            seen_format = true;
            continue;
        }
        if head == "kind" {
            if program.is_some() {
                return Err(line.error(col, "duplicate `kind` record"));
            }
            let (c, k) = line.take("kind")?;
            let (kind, shape) = match k {
                "linear" => (ProgramKind::Code, Shape::Linear),
                "tree" => (ProgramKind::Code, Shape::Tree),
                "ranges" => match line.peek() {
                    Some("tree") => {
                        line.next += 1;
                        (ProgramKind::Ranges, Shape::Tree)
                    }
                    _ => (ProgramKind::Ranges, Shape::Linear),
                },
                _ => return Err(line.error(c, format!("unknown kind `{k}`"))),
            };
            line.finish()?;
            program = Some(Program::new(kind, shape));
            continue;
        }
        let Some(prog) = program.as_mut() else {
            return Err(line.error(col, "expected `kind` after the format header"));
        };
        match head {
            "registers" => {
                let (_, r) = line.number("register count")?;
                prog.registers = Some(r as usize);
            }
            "point" => {
                let (c, label) = line.number("point id")?;
                let parent = if line.peek().is_some() {
                    line.keyword("parent")?;
                    Some(line.number("parent id")?.1)
                } else {
                    None
                };
                origins.points.entry(label).or_insert((line.number, c));
                prog.points.push(PointDecl { label, parent });
            }
            "instr" => {
                let (c, at) = line.number("point id")?;
                line.keyword("uses")?;
                let (uc, uses) = line.names("use list")?;
                line.keyword("defs")?;
                let (dc, defs) = line.names("def list")?;
                origins.points.entry(at).or_insert((line.number, c));
                for n in &uses {
                    origins.vars.entry(n.clone()).or_insert((line.number, uc));
                }
                for n in &defs {
                    origins.vars.entry(n.clone()).or_insert((line.number, dc));
                }
                mentioned.extend(uses.iter().chain(&defs).cloned());
                prog.instructions.push(InstrDecl { at, uses, defs });
            }
            "livein" | "liveout" => {
                let (c, names) = line.names("variable list")?;
                for n in &names {
                    origins.vars.entry(n.clone()).or_insert((line.number, c));
                }
                mentioned.extend(names.iter().cloned());
                if head == "livein" {
                    prog.live_in.extend(names);
                } else {
                    prog.live_out.extend(names);
                }
            }
            "var" => {
                let (c, name) = line.take("variable name")?;
                line.keyword("weight")?;
                let (wc, w) = line.take("weight")?;
                let weight: W = w
                    .parse()
                    .map_err(|_| line.error(wc, format!("bad weight `{w}`: expected an integer or num/den")))?;
                let range = match line.peek() {
                    None => None,
                    Some("span") => {
                        line.next += 1;
                        let (sc, s) = line.take("span a..b")?;
                        let bad = || line.error(sc, format!("bad span `{s}`: expected a..b"));
                        let (a, b) = s.split_once("..").ok_or_else(bad)?;
                        let a = a.parse().map_err(|_| bad())?;
                        let b = b.parse().map_err(|_| bad())?;
                        Some(RangeDecl::Span(a, b))
                    }
                    Some("points") => {
                        line.next += 1;
                        let (pc, list) = line.take("point list")?;
                        let pts = list
                            .split(',')
                            .map(|p| p.parse())
                            .collect::<Result<Vec<u32>, _>>()
                            .map_err(|_| line.error(pc, format!("bad point list `{list}`")))?;
                        Some(RangeDecl::Points(pts))
                    }
                    Some(other) => {
                        let (oc, _) = line.tokens[line.next];
                        return Err(line.error(oc, format!("expected `span` or `points`, found `{other}`")));
                    }
                };
                origins.vars.insert(name.to_string(), (line.number, c));
                declared.push(name.to_string());
                prog.vars.push(VarDecl { name: name.to_string(), weight, range });
            }
            "format" => return Err(line.error(col, "duplicate `format` record")),
            other => return Err(line.error(col, format!("unknown record `{other}`"))),
        }
        line.finish()?;
    }
    let mut program = match program {
        Some(p) => p,
        None if seen_format => {
            return Err(ParseError::Syntax(Diagnostic {
                line: 0,
                column: 0,
                message: "missing `kind` record".into(),
            }))
        }
        None => {
            return Err(ParseError::Syntax(Diagnostic {
                line: 0,
                column: 0,
                message: "empty file: expected `format spill-v1`".into(),
            }))
        }
    };
    if program.kind == ProgramKind::Code {
        mentioned.sort();
        mentioned.dedup();
        for name in mentioned {
            if !declared.contains(&name) {
                program.vars.push(VarDecl { name, weight: W::one(), range: None });
            }
        }
    }
    if program.shape == Shape::Linear {
        // The chain runs in ascending id order.
        program.points.sort_by_key(|p| p.label);
        let labels: Vec<u32> = program.points.iter().map(|p| p.label).collect();
        for (i, p) in program.points.iter_mut().enumerate() {
            let expected = i.checked_sub(1).map(|j| labels[j]);
            if p.parent.is_none() {
                p.parent = expected;
            }
        }
    }
    Ok((program, origins))
}

fn locate(err: ModelError, origins: &Origins) -> ParseError {
    let violations = match err {
        ModelError::Invalid(vs) => vs,
        ModelError::MalformedCode(v) => vec![Violation::UndefinedVariable(v)],
        other => {
            return ParseError::Semantic(vec![Diagnostic { line: 0, column: 0, message: other.to_string() }])
        }
    };
    let diagnostics = violations
        .iter()
        .map(|v| {
            let (line, column) = match v.subject() {
                crate::model::Subject::Point(p) => origins.points.get(&p).copied(),
                crate::model::Subject::Var(name) => origins.vars.get(name).copied(),
                crate::model::Subject::None => None,
            }
            .unwrap_or((0, 0));
            Diagnostic { line, column, message: v.to_string() }
        })
        .collect();
    ParseError::Semantic(diagnostics)
}

/// Canonical text of an instance: points, instructions, live sets and
/// variables in id order. Byte-stable.
pub fn serialize<W: Weight>(instance: &Instance<W>) -> String {
    serialize_program(&instance.to_program())
}

pub fn serialize_program<W: Weight>(program: &Program<W>) -> String {
    let mut out = String::from("format spill-v1\n");
    let kind = match (program.kind, program.shape) {
        (ProgramKind::Code, Shape::Linear) => "linear",
        (ProgramKind::Code, Shape::Tree) => "tree",
        (ProgramKind::Ranges, Shape::Linear) => "ranges",
        (ProgramKind::Ranges, Shape::Tree) => "ranges tree",
    };
    let _ = writeln!(out, "kind {kind}");
    if let Some(r) = program.registers {
        let _ = writeln!(out, "registers {r}");
    }
    for p in &program.points {
        match (program.shape, p.parent) {
            (Shape::Tree, Some(parent)) => {
                let _ = writeln!(out, "point {} parent {parent}", p.label);
            }
            _ => {
                let _ = writeln!(out, "point {}", p.label);
            }
        }
    }
    let csv = |names: &[String]| if names.is_empty() { "-".to_string() } else { names.join(",") };
    for ins in &program.instructions {
        let _ = writeln!(out, "instr {} uses {} defs {}", ins.at, csv(&ins.uses), csv(&ins.defs));
    }
    if !program.live_in.is_empty() {
        let _ = writeln!(out, "livein {}", program.live_in.join(","));
    }
    if !program.live_out.is_empty() {
        let _ = writeln!(out, "liveout {}", program.live_out.join(","));
    }
    for v in &program.vars {
        let _ = write!(out, "var {} weight {}", v.name, v.weight);
        match &v.range {
            None => {}
            Some(RangeDecl::Span(a, b)) => {
                let _ = write!(out, " span {a}..{b}");
            }
            Some(RangeDecl::Points(ps)) => {
                let list: Vec<String> = ps.iter().map(u32::to_string).collect();
                let _ = write!(out, " points {}", list.join(","));
            }
        }
        out.push('\n');
    }
    out
}
