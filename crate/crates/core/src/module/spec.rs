//! Text format for modules and maps.
//!
//! ```text
//! # comments start with '#'
//! module M
//!   gen x 0
//!   gen y 2
//!   rel Sq3 x + Sq1 y
//! end
//! module S = suspend M 3
//! module T = sum M S
//! module B = builtin A/ASq1      # also: A, F
//! map f : S -> B
//!   x -> Sq3 1
//!   y -> Sq5 1
//! end
//! ```
//!
//! An expression is a sum of terms; a term is a word of squares followed by a
//! generator name, or `0`. Generators of a sum are named `summand.gen`; the
//! builtins have a single generator `1` in degree 0.

use std::collections::HashSet;
use std::sync::Arc;

use super::{build_a, build_a_mod_sq1, trivial_module, FreeModule, GradedModule, Module, ModuleHom};
use crate::algebra::SteenrodAlgebra;
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec, RowSolver};

/// A module together with a free module mapping onto it.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    pub module: Arc<GradedModule>,
    pub free: FreeModule,
    pub names: Vec<String>,
    /// Degreewise matrices of `free → module`.
    pub projection: Vec<BitMatrix>,
}

impl PresentedModule {
    fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SpecDocument {
    pub modules: Vec<(String, PresentedModule)>,
    pub maps: Vec<(String, ModuleHom)>,
}

impl SpecDocument {
    pub fn module(&self, name: &str) -> Option<&PresentedModule> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn map(&self, name: &str) -> Option<&ModuleHom> {
        self.maps.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &content[s..i],
                    column: content[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &content[s..],
            column: content[..s].chars().count() + 1,
        });
    }
    out
}

struct Parser<'a> {
    algebra: Arc<SteenrodAlgebra>,
    t_max: usize,
    lines: Vec<(usize, Vec<Token<'a>>)>,
    pos: usize,
    doc: SpecDocument,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses a document, building every module through degree `t_max`.
pub fn parse(text: &str, algebra: &Arc<SteenrodAlgebra>, t_max: usize) -> Result<SpecDocument> {
    if t_max > algebra.max_degree() {
        return Err(Error::DegreeOverflow {
            degree: t_max,
            bound: algebra.max_degree(),
        });
    }
    let lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, tokens(l)))
        .filter(|(_, t)| !t.is_empty())
        .collect();
    let mut p = Parser {
        algebra: algebra.clone(),
        t_max,
        lines,
        pos: 0,
        doc: SpecDocument::default(),
    };
    while p.pos < p.lines.len() {
        p.statement()?;
    }
    Ok(p.doc)
}

/// The named builtin module with its single generator `1`.
pub fn builtin(name: &str, algebra: &Arc<SteenrodAlgebra>, t_max: usize) -> Result<PresentedModule> {
    let module = match name {
        "A" => build_a(algebra, t_max)?,
        "A/ASq1" => build_a_mod_sq1(algebra, t_max)?,
        "F" => trivial_module(algebra, t_max)?,
        other => return Err(Error::InvalidModule(format!("unknown builtin {other:?}"))),
    };
    let module = Arc::new(module);
    let free = FreeModule::with_generators(algebra.clone(), t_max, &[0])?;
    let unit = BitVec::unit(module.dim(0), 0);
    let projection = (0..=t_max).map(|t| free.map_matrix(t, std::slice::from_ref(&unit), module.as_ref())).collect();
    Ok(PresentedModule {
        module,
        free,
        names: vec!["1".into()],
        projection,
    })
}

impl<'a> Parser<'a> {
    fn next_line(&mut self) -> (usize, Vec<Token<'a>>) {
        let l = self.lines[self.pos].clone();
        self.pos += 1;
        l
    }

    fn expect_name(&self, line: usize, tok: Option<&Token<'a>>, what: &str) -> Result<String> {
        let tok = tok.ok_or_else(|| err(line, 1, format!("expected {what}")))?;
        if !tok.text.chars().all(|c| c.is_alphanumeric() || "_./".contains(c)) {
            return Err(err(line, tok.column, format!("invalid {what} {:?}", tok.text)));
        }
        Ok(tok.text.to_string())
    }

    fn number(&self, line: usize, tok: Option<&Token<'a>>) -> Result<usize> {
        let tok = tok.ok_or_else(|| err(line, 1, "expected a number"))?;
        tok.text
            .parse()
            .map_err(|_| err(line, tok.column, format!("expected a number, found {:?}", tok.text)))
    }

    fn statement(&mut self) -> Result<()> {
        let (line, toks) = self.next_line();
        match toks[0].text {
            "module" => self.module_statement(line, &toks),
            "map" => self.map_statement(line, &toks),
            other => Err(err(line, toks[0].column, format!("expected `module` or `map`, found {other:?}"))),
        }
    }

    fn lookup(&self, line: usize, tok: Option<&Token<'a>>) -> Result<PresentedModule> {
        let name = self.expect_name(line, tok, "module name")?;
        self.doc
            .module(&name)
            .cloned()
            .ok_or_else(|| err(line, tok.unwrap().column, format!("unknown module {name:?}")))
    }

    fn define(&mut self, line: usize, column: usize, name: String, m: PresentedModule) -> Result<()> {
        if self.doc.module(&name).is_some() {
            return Err(err(line, column, format!("module {name:?} defined twice")));
        }
        self.doc.modules.push((name, m));
        Ok(())
    }

    fn module_statement(&mut self, line: usize, toks: &[Token<'a>]) -> Result<()> {
        let name = self.expect_name(line, toks.get(1), "module name")?;
        let name_col = toks[1].column;
        if toks.len() == 2 {
            let m = self.presentation_block(line)?;
            return self.define(line, name_col, name, m);
        }
        if toks[2].text != "=" {
            return Err(err(line, toks[2].column, "expected `=` or end of line"));
        }
        let kind = toks.get(3).ok_or_else(|| err(line, toks[2].column + 1, "expected a constructor"))?;
        let m = match kind.text {
            "builtin" => {
                let b = toks.get(4).ok_or_else(|| err(line, kind.column, "expected a builtin name"))?;
                builtin(b.text, &self.algebra, self.t_max).map_err(|e| err(line, b.column, e.to_string()))?
            }
            "suspend" => {
                let inner = self.lookup(line, toks.get(4))?;
                let n = self.number(line, toks.get(5))?;
                suspend_presented(&inner, n, self.t_max).map_err(|e| err(line, kind.column, e.to_string()))?
            }
            "sum" => {
                if toks.len() < 6 {
                    return Err(err(line, kind.column, "a sum needs at least two summands"));
                }
                let mut parts = Vec::new();
                for t in &toks[4..] {
                    parts.push((t.text.to_string(), self.lookup(line, Some(t))?));
                }
                sum_presented(&parts).map_err(|e| err(line, kind.column, e.to_string()))?
            }
            other => return Err(err(line, kind.column, format!("unknown constructor {other:?}"))),
        };
        let trailing = match kind.text {
            "builtin" => 5,
            "suspend" => 6,
            _ => toks.len(),
        };
        if let Some(t) = toks.get(trailing) {
            return Err(err(line, t.column, "unexpected trailing input"));
        }
        self.define(line, name_col, name, m)
    }

    fn presentation_block(&mut self, start: usize) -> Result<PresentedModule> {
        let mut names: Vec<String> = Vec::new();
        let mut degrees = Vec::new();
        let mut relations = Vec::new();
        loop {
            if self.pos >= self.lines.len() {
                return Err(err(start, 1, "module block is missing `end`"));
            }
            let (line, toks) = self.next_line();
            match toks[0].text {
                "end" => break,
                "gen" => {
                    let n = self.expect_name(line, toks.get(1), "generator name")?;
                    if names.contains(&n) {
                        return Err(err(line, toks[1].column, format!("generator {n:?} declared twice")));
                    }
                    let d = self.number(line, toks.get(2))?;
                    if d > self.t_max {
                        return Err(err(line, toks[2].column, format!("degree {d} exceeds the bound {}", self.t_max)));
                    }
                    if let Some(&last) = degrees.last() {
                        if d < last {
                            return Err(err(line, toks[2].column, "generators must be listed in nondecreasing degree"));
                        }
                    }
                    if !relations.is_empty() {
                        return Err(err(line, toks[0].column, "generators must precede relations"));
                    }
                    names.push(n);
                    degrees.push(d);
                }
                "rel" => relations.push((line, toks[1..].to_vec())),
                other => return Err(err(line, toks[0].column, format!("expected `gen`, `rel` or `end`, found {other:?}"))),
            }
        }
        let free = FreeModule::with_generators(self.algebra.clone(), self.t_max, &degrees)?;
        let free_module = Arc::new(free.to_module());
        let mut elements = Vec::new();
        for (line, toks) in relations {
            if let Some((d, x)) = self.expression(line, &toks, &free, &names)? {
                elements.push((d, x));
            }
        }
        let spans = free_module.generated_submodule(&elements)?;
        let (module, proj) = free_module.quotient(&spans)?;
        Ok(PresentedModule {
            module,
            free,
            names,
            projection: proj.matrices().to_vec(),
        })
    }

    /// Parses a sum of terms into an element of `free`; `None` for the zero
    /// expression, whose degree is undetermined.
    fn expression(&self, line: usize, toks: &[Token<'a>], free: &FreeModule, names: &[String]) -> Result<Option<(usize, BitVec)>> {
        if toks.is_empty() {
            return Err(err(line, 1, "expected an expression"));
        }
        let mut acc: Option<(usize, BitVec)> = None;
        for term in toks.split(|t| t.text == "+") {
            let Some(last) = term.last() else {
                return Err(err(line, 1, "empty term in expression"));
            };
            if term.len() == 1 && last.text == "0" {
                continue;
            }
            let mut word = Vec::new();
            for t in &term[..term.len() - 1] {
                let n = t
                    .text
                    .strip_prefix("Sq")
                    .and_then(|s| s.parse::<u32>().ok())
                    .ok_or_else(|| err(line, t.column, format!("expected a square such as Sq2, found {:?}", t.text)))?;
                if n == 0 {
                    return Err(err(line, t.column, "Sq0 is not a valid letter"));
                }
                word.push(n);
            }
            let g = names
                .iter()
                .position(|n| n == last.text)
                .ok_or_else(|| err(line, last.column, format!("unknown generator {:?}", last.text)))?;
            let op_degree: usize = word.iter().map(|&i| i as usize).sum();
            let degree = free.gen_degrees()[g] + op_degree;
            if degree > self.t_max {
                return Err(err(line, term[0].column, format!("term degree {degree} exceeds the bound {}", self.t_max)));
            }
            let e = self
                .algebra
                .adem_reduce(&word)
                .map_err(|e| err(line, term[0].column, e.to_string()))?;
            let mut x = BitVec::zeros(free.dim(degree));
            for op in e.coords().iter_ones() {
                x.flip(free.basis_index(g, op, degree));
            }
            match &mut acc {
                None => acc = Some((degree, x)),
                Some((d, v)) => {
                    if *d != degree {
                        return Err(err(line, term[0].column, format!("term has degree {degree}, expected {d}")));
                    }
                    v.add_assign(&x);
                }
            }
        }
        Ok(acc)
    }

    fn map_statement(&mut self, line: usize, toks: &[Token<'a>]) -> Result<()> {
        let name = self.expect_name(line, toks.get(1), "map name")?;
        if toks.get(2).map(|t| t.text) != Some(":") || toks.get(4).map(|t| t.text) != Some("->") {
            return Err(err(line, toks[1].column, "expected `map NAME : SOURCE -> TARGET`"));
        }
        let source = self.lookup(line, toks.get(3))?;
        let target = self.lookup(line, toks.get(5))?;
        let mut images: Vec<Option<BitVec>> = vec![None; source.names.len()];
        loop {
            if self.pos >= self.lines.len() {
                return Err(err(line, 1, "map block is missing `end`"));
            }
            let (l, body) = self.next_line();
            if body[0].text == "end" {
                break;
            }
            let g = source
                .generator_index(body[0].text)
                .ok_or_else(|| err(l, body[0].column, format!("unknown source generator {:?}", body[0].text)))?;
            if body.get(1).map(|t| t.text) != Some("->") {
                return Err(err(l, body[0].column, "expected `GEN -> EXPRESSION`"));
            }
            let degree = source.free.gen_degrees()[g];
            let value = match self.expression(l, &body[2..], &target.free, &target.names)? {
                None => BitVec::zeros(target.module.dim(degree)),
                Some((d, x)) => {
                    if d != degree {
                        return Err(err(l, body[2].column, format!("image has degree {d}, generator has degree {degree}")));
                    }
                    x.mul_matrix(&target.projection[d])
                }
            };
            if images[g].replace(value).is_some() {
                return Err(err(l, body[0].column, "generator image given twice"));
            }
        }
        if let Some(g) = images.iter().position(Option::is_none) {
            return Err(err(line, toks[1].column, format!("no image given for generator {:?}", source.names[g])));
        }
        let images: Vec<BitVec> = images.into_iter().map(Option::unwrap).collect();
        let hom = descend(&source, target.module.clone(), &images).map_err(|e| err(line, toks[1].column, e.to_string()))?;
        if self.doc.map(&name).is_some() {
            return Err(err(line, toks[1].column, format!("map {name:?} defined twice")));
        }
        self.doc.maps.push((name, hom));
        Ok(())
    }
}

/// The map out of a presented module determined by generator images, checking
/// that the relations go to zero.
pub fn descend(source: &PresentedModule, target: Arc<GradedModule>, images: &[BitVec]) -> Result<ModuleHom> {
    let t_max = source.module.t_max();
    let mut matrices = Vec::with_capacity(t_max + 1);
    for t in 0..=t_max {
        let on_free = source.free.map_matrix(t, images, target.as_ref());
        let proj = &source.projection[t];
        let relations = proj.left_kernel();
        if !relations.mul(&on_free).is_zero() {
            return Err(Error::InvalidMap(format!("relations of the source are not sent to zero in degree {t}")));
        }
        let solver = RowSolver::new(proj);
        let rows: Vec<BitVec> = (0..source.module.dim(t))
            .map(|i| {
                let pre = solver.solve(&BitVec::unit(source.module.dim(t), i)).expect("projection is onto");
                pre.mul_matrix(&on_free)
            })
            .collect();
        matrices.push(BitMatrix::from_rows(&rows, target.dim(t)));
    }
    let hom = ModuleHom::new(source.module.clone(), target, matrices)?;
    hom.check_commutes()?;
    Ok(hom)
}

fn suspend_presented(m: &PresentedModule, n: usize, t_max: usize) -> Result<PresentedModule> {
    let module = Arc::new(m.module.suspend(n, t_max)?);
    let degrees: Vec<usize> = m.free.gen_degrees().iter().map(|d| d + n).filter(|&d| d <= t_max).collect();
    let free = FreeModule::with_generators(m.free.algebra().clone(), t_max, &degrees)?;
    let projection = (0..=t_max)
        .map(|t| {
            if t < n {
                BitMatrix::zeros(free.dim(t), 0)
            } else {
                // Generators above the bound have no basis elements here, so the
                // truncated free module agrees with a prefix of the original.
                let full = &m.projection[t - n];
                let mut out = BitMatrix::zeros(free.dim(t), module.dim(t));
                for r in 0..free.dim(t) {
                    out.set_row(r, &full.row(r));
                }
                out
            }
        })
        .collect();
    Ok(PresentedModule {
        module,
        free,
        names: m.names.clone(),
        projection,
    })
}

fn sum_presented(parts: &[(String, PresentedModule)]) -> Result<PresentedModule> {
    let modules: Vec<&GradedModule> = parts.iter().map(|(_, p)| p.module.as_ref()).collect();
    let module = Arc::new(GradedModule::direct_sum(&modules)?);
    let t_max = module.t_max();
    let algebra = module.algebra().clone();
    // Merge generators in nondecreasing degree, remembering where each came from.
    let mut order: Vec<(usize, usize, usize)> = Vec::new();
    for (s, (_, p)) in parts.iter().enumerate() {
        for (g, &d) in p.free.gen_degrees().iter().enumerate() {
            order.push((d, s, g));
        }
    }
    order.sort();
    let mut names = Vec::new();
    let mut free = FreeModule::new(algebra, t_max);
    for &(d, s, g) in &order {
        free.add_generator(d)?;
        names.push(format!("{}.{}", parts[s].0, parts[s].1.names[g]));
    }
    let mut seen = HashSet::new();
    for n in &names {
        if !seen.insert(n.as_str()) {
            return Err(Error::InvalidModule(format!("generator {n:?} appears twice in a sum")));
        }
    }
    let projection = (0..=t_max)
        .map(|t| {
            let mut out = BitMatrix::zeros(free.dim(t), module.dim(t));
            let block_offsets: Vec<usize> = modules
                .iter()
                .scan(0, |acc, m| {
                    let o = *acc;
                    *acc += m.dim(t);
                    Some(o)
                })
                .collect();
            for (new_g, &(d, s, g)) in order.iter().enumerate() {
                if d > t {
                    continue;
                }
                let part = &parts[s].1;
                for op in 0..free.algebra().dim(t - d) {
                    let row = part.projection[t].row(part.free.basis_index(g, op, t));
                    let r = free.basis_index(new_g, op, t);
                    for c in row.iter_ones() {
                        out.set(r, block_offsets[s] + c, true);
                    }
                }
            }
            out
        })
        .collect();
    Ok(PresentedModule {
        module,
        free,
        names,
        projection,
    })
}
