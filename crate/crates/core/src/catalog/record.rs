//! Line-oriented record format.
//!
//! ```text
//! id sol-45
//! include shared/sol-44-45.tower
//! var s
//! root v^2 = (9*s - 1)*(s - 1)
//! let w = v*w1
//! theta 0 1/10 0 9/10
//! theta-source stated
//! genus 1
//! degree 20
//! sibling sol-44
//! y = 1/2 - (16*s*(5*s - 1) + v*w)/(2*(s - 1)*(3*s + 1)*v)
//! t = ...
//! note free text
//! model hyperelliptic elliptic
//!   param j
//!   root z^2 = (9*j^2 - 2*j + 9)*(j^2 - 2*j + 17)
//!   map s = (j^2 - 1)/(2*j - 18)
//! end
//! ```
//!
//! A statement continues onto the next line while its parentheses are open
//! or while it ends with a binary operator. `#` starts a comment line.

use super::expr::{evaluate, parse_expr_at, Expr, SyntaxError};
use super::interp::{FieldInterp, RatInterp};
use crate::arith::{parse_rational, squarefree_part, Rational};
use crate::field::{FieldElement, TowerPresentation};
use crate::pvi::{PviError, PviSolution, ThetaParams};
use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatalogError {
    #[error("syntax error at {0}")]
    Syntax(#[from] SyntaxError),
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
    #[error("{0}")]
    Io(String),
    #[error("invalid solution: {0}")]
    Pvi(#[from] PviError),
}

fn semantic<T>(line: usize, message: impl Into<String>) -> Result<T, CatalogError> {
    Err(CatalogError::Semantic {
        line,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum TowerStmt {
    Var(String),
    Root { name: String, radicand: Expr },
    Let { name: String, expr: Expr },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Located<T> {
    pub line: usize,
    pub value: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// A double cover of the line in a parameter, with maps from the model to the tower.
    Hyperelliptic,
    /// A plane curve with maps from the curve to the tower coordinates.
    Plane,
    /// A plane curve with maps from the tower to the curve.
    Image,
}

impl ModelKind {
    pub fn keyword(self) -> &'static str {
        match self {
            ModelKind::Hyperelliptic => "hyperelliptic",
            ModelKind::Plane => "plane",
            ModelKind::Image => "image",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelBlock {
    pub kind: ModelKind,
    pub name: String,
    pub line: usize,
    pub param: Option<String>,
    pub plane: Option<(String, String)>,
    pub roots: Vec<(String, Expr)>,
    pub curve: Option<Expr>,
    pub maps: Vec<(String, Expr)>,
    pub images: Vec<(String, Expr)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ThetaSource {
    Stated,
    Derived,
}

/// Tower statements shared between records.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Fragment {
    pub defs: Vec<Located<TowerStmt>>,
    pub notes: Vec<String>,
}

/// Syntax of one record file.
#[derive(Clone, Debug, PartialEq)]
pub struct RecordSource {
    pub id: String,
    pub includes: Vec<String>,
    pub defs: Vec<Located<TowerStmt>>,
    pub theta: ThetaParams,
    pub theta_source: ThetaSource,
    pub genus: Option<u32>,
    pub degree: Option<u32>,
    pub sibling: Option<String>,
    pub y: Located<Expr>,
    pub t: Located<Expr>,
    pub notes: Vec<String>,
    pub models: Vec<ModelBlock>,
}

/// A parsed and validated catalog entry.
#[derive(Clone, Debug)]
pub struct SolutionRecord {
    pub source: RecordSource,
    pub fragments: Vec<(String, Fragment)>,
    /// Radicand expressions in tower order, as written.
    pub radicand_sources: Vec<Expr>,
    pub env: HashMap<String, FieldElement>,
    pub solution: PviSolution,
}

impl SolutionRecord {
    pub fn id(&self) -> &str {
        &self.source.id
    }

    pub fn tower(&self) -> &Arc<TowerPresentation> {
        &self.solution.tower
    }

    pub fn expected_genus(&self) -> Option<u32> {
        self.source.genus
    }

    pub fn expected_degree(&self) -> Option<u32> {
        self.source.degree
    }

    pub fn model(&self, name: &str) -> Option<&ModelBlock> {
        self.source.models.iter().find(|m| m.name == name)
    }

    /// All tower statements, shared ones first.
    pub fn all_defs(&self) -> Vec<&Located<TowerStmt>> {
        self.fragments
            .iter()
            .flat_map(|(_, f)| f.defs.iter())
            .chain(self.source.defs.iter())
            .collect()
    }
}

// ---- lexical layer ----

struct Stmt {
    line: usize,
    text: String,
}

fn paren_depth(s: &str) -> i64 {
    s.chars().fold(0, |d, c| match c {
        '(' => d + 1,
        ')' => d - 1,
        _ => d,
    })
}

fn statements(text: &str) -> Vec<Stmt> {
    let mut out: Vec<Stmt> = Vec::new();
    let mut open = false;
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if !open && (trimmed.is_empty() || trimmed.starts_with('#')) {
            continue;
        }
        if open {
            let last = out.last_mut().expect("open statement");
            last.text.push('\n');
            last.text.push_str(raw);
        } else {
            out.push(Stmt {
                line: i + 1,
                text: raw.to_string(),
            });
        }
        let cur = &out.last().expect("statement").text;
        let is_note = cur.trim_start().starts_with("note ");
        let tail = cur.trim_end();
        open = !is_note
            && (paren_depth(cur) > 0 || tail.ends_with(['+', '-', '*', '/', '^', '(', '=']));
    }
    out
}

/// Splits off the first word; returns it with the byte offset of the rest.
fn head(text: &str) -> (&str, usize) {
    let start = text.len() - text.trim_start().len();
    let rest = &text[start..];
    let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
    (&rest[..end], start + end)
}

fn column_of(text: &str, offset: usize) -> usize {
    text[..offset].chars().count() + 1
}

fn expr_after(stmt: &Stmt, offset: usize) -> Result<Expr, CatalogError> {
    let src = &stmt.text[offset..];
    Ok(parse_expr_at(
        src,
        stmt.line,
        column_of(&stmt.text, offset),
    )?)
}

/// Parses `NAME = EXPR` or `NAME^2 = EXPR` starting at `offset`.
fn binding(stmt: &Stmt, offset: usize, squared: bool) -> Result<(String, Expr), CatalogError> {
    let rest = &stmt.text[offset..];
    let eq = match rest.find('=') {
        Some(eq) => eq,
        None => return semantic(stmt.line, "expected '='"),
    };
    let lhs = rest[..eq].trim();
    let name = if squared {
        match lhs.strip_suffix("^2") {
            Some(n) => n.trim(),
            None => return semantic(stmt.line, "expected 'NAME^2 = ...'"),
        }
    } else {
        lhs
    };
    if !is_ident(name) {
        return semantic(stmt.line, format!("invalid name '{name}'"));
    }
    Ok((name.to_string(), expr_after(stmt, offset + eq + 1)?))
}

fn is_ident(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_alphanumeric() || ch == '_')
}

fn one_word(stmt: &Stmt, offset: usize) -> Result<String, CatalogError> {
    let words: Vec<&str> = stmt.text[offset..].split_whitespace().collect();
    match words.as_slice() {
        [w] => Ok(w.to_string()),
        _ => semantic(stmt.line, "expected exactly one word"),
    }
}

fn tower_stmt(kw: &str, stmt: &Stmt, off: usize) -> Result<Option<TowerStmt>, CatalogError> {
    Ok(Some(match kw {
        "var" => {
            let v = one_word(stmt, off)?;
            if !is_ident(&v) {
                return semantic(stmt.line, format!("invalid variable '{v}'"));
            }
            TowerStmt::Var(v)
        }
        "root" => {
            let (name, radicand) = binding(stmt, off, true)?;
            TowerStmt::Root { name, radicand }
        }
        "let" => {
            let (name, expr) = binding(stmt, off, false)?;
            TowerStmt::Let { name, expr }
        }
        _ => return Ok(None),
    }))
}

// ---- parsing ----

/// Parses a shared tower file.
pub fn parse_fragment(text: &str) -> Result<Fragment, CatalogError> {
    let mut frag = Fragment::default();
    for stmt in statements(text) {
        let (kw, off) = head(&stmt.text);
        if kw == "note" {
            frag.notes.push(stmt.text[off..].trim().to_string());
        } else if let Some(ts) = tower_stmt(kw, &stmt, off)? {
            frag.defs.push(Located {
                line: stmt.line,
                value: ts,
            });
        } else {
            return semantic(
                stmt.line,
                format!("'{kw}' is not allowed in a shared tower file"),
            );
        }
    }
    Ok(frag)
}

fn parse_model(
    stmt: &Stmt,
    off: usize,
    it: &mut std::vec::IntoIter<Stmt>,
) -> Result<ModelBlock, CatalogError> {
    let words: Vec<&str> = stmt.text[off..].split_whitespace().collect();
    let (kind, name) = match words.as_slice() {
        [k, n] => {
            let kind = match *k {
                "hyperelliptic" => ModelKind::Hyperelliptic,
                "plane" => ModelKind::Plane,
                "image" => ModelKind::Image,
                other => return semantic(stmt.line, format!("unknown model kind '{other}'")),
            };
            (kind, n.to_string())
        }
        _ => return semantic(stmt.line, "expected 'model KIND NAME'"),
    };
    let mut m = ModelBlock {
        kind,
        name,
        line: stmt.line,
        param: None,
        plane: None,
        roots: vec![],
        curve: None,
        maps: vec![],
        images: vec![],
    };
    for s in it.by_ref() {
        let (kw, o) = head(&s.text);
        match kw {
            "end" => {
                match m.kind {
                    ModelKind::Hyperelliptic if m.param.is_none() => {
                        return semantic(m.line, "hyperelliptic model needs 'param'")
                    }
                    ModelKind::Plane | ModelKind::Image
                        if m.plane.is_none() || m.curve.is_none() =>
                    {
                        return semantic(m.line, "plane model needs 'plane' and 'curve'")
                    }
                    _ => {}
                }
                return Ok(m);
            }
            "param" => m.param = Some(one_word(&s, o)?),
            "plane" => {
                let w: Vec<&str> = s.text[o..].split_whitespace().collect();
                match w.as_slice() {
                    [a, b] if is_ident(a) && is_ident(b) => {
                        m.plane = Some((a.to_string(), b.to_string()))
                    }
                    _ => return semantic(s.line, "expected 'plane X Y'"),
                }
            }
            "root" => m.roots.push(binding(&s, o, true)?),
            "curve" => m.curve = Some(expr_after(&s, o)?),
            "map" => m.maps.push(binding(&s, o, false)?),
            "image" => m.images.push(binding(&s, o, false)?),
            other => return semantic(s.line, format!("unexpected '{other}' in model block")),
        }
    }
    semantic(stmt.line, "model block is missing 'end'")
}

/// Parses the syntax of a record without building it.
pub fn parse_source(text: &str) -> Result<RecordSource, CatalogError> {
    let mut id = None;
    let mut includes = vec![];
    let mut defs = vec![];
    let mut theta = None;
    let mut theta_source = ThetaSource::Stated;
    let mut genus = None;
    let mut degree = None;
    let mut sibling = None;
    let mut y = None;
    let mut t = None;
    let mut notes = vec![];
    let mut models = vec![];
    let mut it = statements(text).into_iter();
    while let Some(stmt) = it.next() {
        let (kw, off) = head(&stmt.text);
        let line = stmt.line;
        if let Some(ts) = tower_stmt(kw, &stmt, off)? {
            defs.push(Located { line, value: ts });
            continue;
        }
        match kw {
            "id" => id = Some(one_word(&stmt, off)?),
            "include" => includes.push(one_word(&stmt, off)?),
            "theta" => {
                let parts: Vec<&str> = stmt.text[off..].split_whitespace().collect();
                let vals: Option<Vec<Rational>> = parts.iter().map(|p| parse_rational(p)).collect();
                match vals {
                    Some(v) if v.len() == 4 => {
                        let [a, b, c, d]: [Rational; 4] = v.try_into().expect("four values");
                        theta = Some(ThetaParams::new(a, b, c, d));
                    }
                    _ => return semantic(line, "expected four rational numbers after 'theta'"),
                }
            }
            "theta-source" => {
                theta_source = match one_word(&stmt, off)?.as_str() {
                    "stated" => ThetaSource::Stated,
                    "derived" => ThetaSource::Derived,
                    other => return semantic(line, format!("unknown theta source '{other}'")),
                }
            }
            "genus" | "degree" => {
                let n: u32 = match one_word(&stmt, off)?.parse() {
                    Ok(n) => n,
                    Err(_) => {
                        return semantic(
                            line,
                            format!("expected a nonnegative integer after '{kw}'"),
                        )
                    }
                };
                if kw == "genus" {
                    genus = Some(n);
                } else {
                    degree = Some(n);
                }
            }
            "sibling" => sibling = Some(one_word(&stmt, off)?),
            "note" => notes.push(stmt.text[off..].trim().to_string()),
            "y" | "t" => {
                let rest = &stmt.text[off..];
                let eq = match rest.find('=') {
                    Some(eq) if rest[..eq].trim().is_empty() => eq,
                    _ => return semantic(line, format!("expected '{kw} = ...'")),
                };
                let e = Located {
                    line,
                    value: expr_after(&stmt, off + eq + 1)?,
                };
                if kw == "y" {
                    y = Some(e);
                } else {
                    t = Some(e);
                }
            }
            "model" => models.push(parse_model(&stmt, off, &mut it)?),
            other => return semantic(line, format!("unknown statement '{other}'")),
        }
    }
    let missing = |what: &str| CatalogError::Semantic {
        line: 0,
        message: format!("record has no '{what}'"),
    };
    Ok(RecordSource {
        id: id.ok_or_else(|| missing("id"))?,
        includes,
        defs,
        theta: theta.ok_or_else(|| missing("theta"))?,
        theta_source,
        genus,
        degree,
        sibling,
        y: y.ok_or_else(|| missing("y"))?,
        t: t.ok_or_else(|| missing("t"))?,
        notes,
        models,
    })
}

/// Parses and validates a record that has no `include` statements.
pub fn parse_record(text: &str) -> Result<SolutionRecord, CatalogError> {
    parse_record_with(text, &|name: &str| {
        Err(format!("cannot resolve include '{name}'"))
    })
}

/// Parses and validates a record, resolving includes through `resolve`.
pub fn parse_record_with(
    text: &str,
    resolve: &dyn Fn(&str) -> Result<String, String>,
) -> Result<SolutionRecord, CatalogError> {
    let source = parse_source(text)?;
    let mut fragments = vec![];
    for inc in &source.includes {
        let body = resolve(inc).map_err(CatalogError::Io)?;
        fragments.push((inc.clone(), parse_fragment(&body)?));
    }
    build(source, fragments)
}

/// Evaluates the tower statements: returns the tower, the radicand sources and the bound names.
pub fn build_tower(
    defs: &[&Located<TowerStmt>],
) -> Result<
    (
        Arc<TowerPresentation>,
        Vec<Expr>,
        HashMap<String, FieldElement>,
    ),
    CatalogError,
> {
    let mut var = None;
    let mut roots: Vec<(usize, String, Expr)> = vec![];
    for d in defs {
        match &d.value {
            TowerStmt::Var(v) => {
                if var.as_ref().is_some_and(|x| x != v) {
                    return semantic(d.line, format!("conflicting variable '{v}'"));
                }
                var = Some(v.clone());
            }
            TowerStmt::Root { name, radicand } => {
                roots.push((d.line, name.clone(), radicand.clone()))
            }
            TowerStmt::Let { .. } => {}
        }
    }
    let var = match var {
        Some(v) => v,
        None => return semantic(defs.first().map_or(0, |d| d.line), "no 'var' statement"),
    };
    let empty = HashMap::new();
    let rat_it = RatInterp {
        var: &var,
        env: &empty,
    };
    let mut cores = vec![];
    let mut scales = vec![];
    for (line, name, rad) in &roots {
        let f = evaluate(rad, &rat_it).map_err(|m| CatalogError::Semantic {
            line: *line,
            message: m,
        })?;
        if !f.is_polynomial() {
            return semantic(*line, format!("radicand of {name} is not a polynomial"));
        }
        let (core, cof) = squarefree_part(f.num()).map_err(|e| CatalogError::Semantic {
            line: *line,
            message: e.to_string(),
        })?;
        if !cof.is_constant() {
            return semantic(
                *line,
                format!("radicand of {name} is not squarefree after normalization"),
            );
        }
        cores.push(core);
        scales.push(cof.constant_value().expect("constant"));
    }
    let names: Vec<String> = roots.iter().map(|r| r.1.clone()).collect();
    let tower =
        TowerPresentation::new(&var, cores, names.clone()).map_err(|e| CatalogError::Semantic {
            line: roots.first().map_or(0, |r| r.0),
            message: e.to_string(),
        })?;
    let mut env = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        env.insert(
            n.clone(),
            FieldElement::generator(&tower, i).scale_rational(&scales[i]),
        );
    }
    for d in defs {
        if let TowerStmt::Let { name, expr } = &d.value {
            let v = evaluate(
                expr,
                &FieldInterp {
                    tower: &tower,
                    env: &env,
                },
            )
            .map_err(|m| CatalogError::Semantic {
                line: d.line,
                message: m,
            })?;
            env.insert(name.clone(), v);
        }
    }
    Ok((tower, roots.into_iter().map(|r| r.2).collect(), env))
}

fn build(
    source: RecordSource,
    fragments: Vec<(String, Fragment)>,
) -> Result<SolutionRecord, CatalogError> {
    let defs: Vec<&Located<TowerStmt>> = fragments
        .iter()
        .flat_map(|(_, f)| f.defs.iter())
        .chain(source.defs.iter())
        .collect();
    let (tower, radicand_sources, env) = build_tower(&defs)?;
    let it = FieldInterp {
        tower: &tower,
        env: &env,
    };
    let y = evaluate(&source.y.value, &it).map_err(|m| CatalogError::Semantic {
        line: source.y.line,
        message: m,
    })?;
    let t = evaluate(&source.t.value, &it).map_err(|m| CatalogError::Semantic {
        line: source.t.line,
        message: m,
    })?;
    let solution = PviSolution::new(y, t, source.theta.clone())?;
    Ok(SolutionRecord {
        source,
        fragments,
        radicand_sources,
        env,
        solution,
    })
}

// ---- serialization ----

fn write_defs(out: &mut String, defs: &[Located<TowerStmt>]) {
    for d in defs {
        match &d.value {
            TowerStmt::Var(v) => writeln!(out, "var {v}"),
            TowerStmt::Root { name, radicand } => writeln!(out, "root {name}^2 = {radicand}"),
            TowerStmt::Let { name, expr } => writeln!(out, "let {name} = {expr}"),
        }
        .expect("write to string");
    }
}

pub fn serialize_fragment(f: &Fragment) -> String {
    let mut out = String::new();
    write_defs(&mut out, &f.defs);
    for n in &f.notes {
        writeln!(out, "note {n}").expect("write to string");
    }
    out
}

/// Canonical text of a record. Shared files are referenced, not inlined.
pub fn serialize_source(r: &RecordSource) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "id {}", r.id).ok();
    for inc in &r.includes {
        writeln!(w, "include {inc}").ok();
    }
    write_defs(w, &r.defs);
    writeln!(w, "theta {}", r.theta.to_text()).ok();
    writeln!(
        w,
        "theta-source {}",
        if r.theta_source == ThetaSource::Stated {
            "stated"
        } else {
            "derived"
        }
    )
    .ok();
    if let Some(g) = r.genus {
        writeln!(w, "genus {g}").ok();
    }
    if let Some(d) = r.degree {
        writeln!(w, "degree {d}").ok();
    }
    if let Some(s) = &r.sibling {
        writeln!(w, "sibling {s}").ok();
    }
    writeln!(w, "y = {}", r.y.value).ok();
    writeln!(w, "t = {}", r.t.value).ok();
    for n in &r.notes {
        writeln!(w, "note {n}").ok();
    }
    for m in &r.models {
        writeln!(w, "model {} {}", m.kind.keyword(), m.name).ok();
        if let Some(p) = &m.param {
            writeln!(w, "  param {p}").ok();
        }
        if let Some((a, b)) = &m.plane {
            writeln!(w, "  plane {a} {b}").ok();
        }
        if let Some(c) = &m.curve {
            writeln!(w, "  curve {c}").ok();
        }
        for (n, e) in &m.roots {
            writeln!(w, "  root {n}^2 = {e}").ok();
        }
        for (n, e) in &m.maps {
            writeln!(w, "  map {n} = {e}").ok();
        }
        for (n, e) in &m.images {
            writeln!(w, "  image {n} = {e}").ok();
        }
        writeln!(w, "end").ok();
    }
    out
}

pub fn serialize_record(r: &SolutionRecord) -> String {
    serialize_source(&r.source)
}

/// Structural equality of sources, ignoring line numbers.
pub fn same_source(a: &RecordSource, b: &RecordSource) -> bool {
    serialize_source(a) == serialize_source(b)
}
