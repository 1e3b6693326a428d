//! The `.mm` model-file format.
//!
//! ```text
//! # Example: dz = xy, dw = xz
//! generator x 3
//! generator y 3
//! generator z 5
//! generator w 7
//! d z = x*y
//! d w = x*z
//! ```
//!
//! `extend NAME INT` declares the base generator of a KS-extension and
//! `d NAME += expr` adds a perturbation term, each of which must contain the
//! base. Declarations are collected before any differential is read, so
//! lines may appear in any order.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;
use sullivan_core::{GenId, GeneratorSet, KsExtension, MinimalModel, Normalized, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelFile {
    pub model: MinimalModel,
    pub extension: Option<KsExtension>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(u64),
    Eq,
    PlusEq,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::PlusEq => f.write_str("`+=`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
        }
    }
}

fn lex(line: usize, text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((col, Tok::Name(chars[start..i].iter().collect())));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let n = digits.parse().map_err(|_| ParseError {
                line,
                col,
                message: format!("integer `{digits}` is too large"),
            })?;
            out.push((col, Tok::Int(n)));
            continue;
        }
        let tok = match c {
            '=' => Tok::Eq,
            '+' if chars.get(i + 1) == Some(&'=') => {
                i += 1;
                Tok::PlusEq
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            other => {
                return Err(ParseError {
                    line,
                    col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((col, tok));
        i += 1;
    }
    Ok(out)
}

struct Cursor {
    line: usize,
    end_col: usize,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Cursor {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(c, _)| *c)
    }

    fn error(&self, expected: &str) -> ParseError {
        let found = match self.peek() {
            Some(t) => t.to_string(),
            None => "end of line".to_string(),
        };
        ParseError {
            line: self.line,
            col: self.col(),
            message: format!("expected {expected}, found {found}"),
        }
    }

    fn name(&mut self, what: &str) -> Result<(usize, String), ParseError> {
        match self.peek() {
            Some(Tok::Name(s)) => {
                let out = (self.col(), s.clone());
                self.pos += 1;
                Ok(out)
            }
            _ => Err(self.error(what)),
        }
    }

    fn int(&mut self, what: &str) -> Result<(usize, u64), ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let out = (self.col(), *n);
                self.pos += 1;
                Ok(out)
            }
            _ => Err(self.error(what)),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error("end of line")),
        }
    }
}

struct Factor {
    col: usize,
    name: String,
    exp: Option<u32>,
}

struct Term {
    col: usize,
    coeff: Rational,
    factors: Vec<Factor>,
}

enum Stmt {
    Generator { col: usize, name: String, degree: u32 },
    Extend { col: usize, name: String, degree: u32 },
    Diff { col: usize, name: String, plus: bool, terms: Vec<Term> },
}

fn degree(c: &mut Cursor) -> Result<u32, ParseError> {
    let (col, n) = c.int("a degree")?;
    u32::try_from(n).ok().filter(|d| *d >= 1).ok_or(ParseError {
        line: c.line,
        col,
        message: format!("degree must be an integer ≥ 1, found `{n}`"),
    })
}

fn rational(c: &mut Cursor) -> Result<Rational, ParseError> {
    let (col, num) = c.int("a coefficient")?;
    if !c.eat(&Tok::Slash) {
        return Ok(Rational::from_integer(num.into()));
    }
    match c.peek() {
        Some(Tok::Int(0)) => Err(ParseError {
            line: c.line,
            col,
            message: "malformed rational: zero denominator".into(),
        }),
        Some(Tok::Int(den)) => {
            let den = *den;
            c.pos += 1;
            Ok(Rational::new(num.into(), den.into()))
        }
        _ => Err(ParseError {
            line: c.line,
            col,
            message: format!("malformed rational: expected a denominator, found {}", match c.peek() {
                Some(t) => t.to_string(),
                None => "end of line".into(),
            }),
        }),
    }
}

fn factor(c: &mut Cursor) -> Result<Factor, ParseError> {
    let (col, name) = c.name("a generator name")?;
    let exp = if c.eat(&Tok::Caret) {
        let (ecol, n) = c.int("an exponent")?;
        Some(u32::try_from(n).ok().filter(|e| *e >= 1).ok_or(ParseError {
            line: c.line,
            col: ecol,
            message: format!("exponent must be an integer ≥ 1, found `{n}`"),
        })?)
    } else {
        None
    };
    Ok(Factor { col, name, exp })
}

fn term(c: &mut Cursor, negative: bool) -> Result<Term, ParseError> {
    let col = c.col();
    let mut coeff = Rational::from_integer(1.into());
    if matches!(c.peek(), Some(Tok::Int(_))) {
        coeff = rational(c)?;
        if !c.eat(&Tok::Star) {
            return Err(c.error("`*` after the coefficient"));
        }
    }
    if negative {
        coeff = -coeff;
    }
    let mut factors = vec![factor(c)?];
    while c.eat(&Tok::Star) {
        factors.push(factor(c)?);
    }
    Ok(Term { col, coeff, factors })
}

fn expr(c: &mut Cursor) -> Result<Vec<Term>, ParseError> {
    let negative = c.eat(&Tok::Minus);
    let mut terms = vec![term(c, negative)?];
    loop {
        if c.eat(&Tok::Plus) {
            terms.push(term(c, false)?);
        } else if c.eat(&Tok::Minus) {
            terms.push(term(c, true)?);
        } else {
            return Ok(terms);
        }
    }
}

fn statement(line: usize, text: &str) -> Result<Option<Stmt>, ParseError> {
    let trimmed = text.trim_start();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let toks = lex(line, text)?;
    let mut c = Cursor {
        line,
        end_col: text.chars().count() + 1,
        toks,
        pos: 0,
    };
    let (kw_col, keyword) = c.name("`generator`, `extend` or `d`")?;
    let stmt = match keyword.as_str() {
        "generator" | "extend" => {
            let (col, name) = c.name("a generator name")?;
            let degree = degree(&mut c)?;
            if keyword == "generator" {
                Stmt::Generator { col, name, degree }
            } else {
                Stmt::Extend { col, name, degree }
            }
        }
        "d" => {
            let (col, name) = c.name("a generator name")?;
            let plus = if c.eat(&Tok::PlusEq) {
                true
            } else if c.eat(&Tok::Eq) {
                false
            } else {
                return Err(c.error("`=` or `+=`"));
            };
            let terms = if !plus && c.peek() == Some(&Tok::Int(0)) && c.toks.len() == c.pos + 1 {
                c.pos += 1;
                Vec::new()
            } else {
                expr(&mut c)?
            };
            Stmt::Diff { col, name, plus, terms }
        }
        other => {
            return Err(ParseError {
                line,
                col: kw_col,
                message: format!("expected `generator`, `extend` or `d`, found `{other}`"),
            })
        }
    };
    c.finish()?;
    Ok(Some(stmt))
}

fn resolve(
    gens: &GeneratorSet,
    line: usize,
    terms: &[Term],
    require: Option<GenId>,
) -> Result<Polynomial, ParseError> {
    let mut p = Polynomial::zero();
    for t in terms {
        let mut seq = Vec::new();
        for f in &t.factors {
            let g = gens.by_name(&f.name).ok_or(ParseError {
                line,
                col: f.col,
                message: format!("unknown generator `{}`", f.name),
            })?;
            if f.exp.is_some() && g.is_odd() {
                return Err(ParseError {
                    line,
                    col: f.col,
                    message: format!("`^` is not allowed on odd generator `{}` (degree {})", g.name, g.degree),
                });
            }
            seq.extend(std::iter::repeat(g.id).take(f.exp.unwrap_or(1) as usize));
        }
        if let Some(base) = require {
            if !seq.contains(&base) {
                return Err(ParseError {
                    line,
                    col: t.col,
                    message: format!(
                        "perturbation term must contain the extension generator `{}`",
                        gens.generator(base).name
                    ),
                });
            }
        }
        if let Normalized::Term { sign, monomial } = gens.normalize_monomial(&seq).expect("names resolved") {
            p.add_term(monomial, &t.coeff * Rational::from_integer(i64::from(sign).into()));
        }
    }
    Ok(p)
}

pub fn parse_model(text: &str) -> Result<ModelFile, ParseError> {
    let mut stmts = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        if let Some(s) = statement(i + 1, raw)? {
            stmts.push((i + 1, s));
        }
    }

    let mut gens = GeneratorSet::default();
    let mut base: Option<(usize, usize, String, u32)> = None;
    for (line, s) in &stmts {
        match s {
            Stmt::Generator { col, name, degree } => {
                if base.as_ref().is_some_and(|b| b.2 == *name) || gens.by_name(name).is_some() {
                    return Err(ParseError {
                        line: *line,
                        col: *col,
                        message: format!("duplicate generator `{name}`"),
                    });
                }
                gens.push(name, *degree).expect("checked");
            }
            Stmt::Extend { col, name, degree } => {
                if let Some(b) = &base {
                    return Err(ParseError {
                        line: *line,
                        col: *col,
                        message: format!("extension generator already declared on line {}", b.0),
                    });
                }
                if gens.by_name(name).is_some() {
                    return Err(ParseError {
                        line: *line,
                        col: *col,
                        message: format!("duplicate generator `{name}`"),
                    });
                }
                base = Some((*line, *col, name.clone(), *degree));
            }
            Stmt::Diff { .. } => {}
        }
    }
    if let Some((line, col, name, _)) = &base {
        if gens.by_name(name).is_some() {
            return Err(ParseError {
                line: *line,
                col: *col,
                message: format!("duplicate generator `{name}`"),
            });
        }
    }

    let mut diff: BTreeMap<GenId, Polynomial> = BTreeMap::new();
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let mut perturbations = Vec::new();
    for (line, s) in &stmts {
        let Stmt::Diff { col, name, plus, terms } = s else { continue };
        if base.as_ref().is_some_and(|b| b.2 == *name) {
            return Err(ParseError {
                line: *line,
                col: *col,
                message: format!("the extension generator `{name}` is closed and takes no differential"),
            });
        }
        let id = gens.by_name(name).map(|g| g.id).ok_or(ParseError {
            line: *line,
            col: *col,
            message: format!("unknown generator `{name}`"),
        })?;
        if *plus {
            perturbations.push((*line, *col, id, terms));
            continue;
        }
        if let Some(prev) = seen.insert(name.clone(), *line) {
            return Err(ParseError {
                line: *line,
                col: *col,
                message: format!("differential of `{name}` already given on line {prev}"),
            });
        }
        if let Some((_, _, bname, _)) = &base {
            if let Some(f) = terms.iter().flat_map(|t| &t.factors).find(|f| f.name == *bname) {
                return Err(ParseError {
                    line: *line,
                    col: f.col,
                    message: format!("the extension generator `{bname}` may only appear in `+=` lines"),
                });
            }
        }
        diff.insert(id, resolve(&gens, *line, terms, None)?);
    }
    let model = MinimalModel::new(gens, diff).expect("resolved polynomials belong to the generator set");

    let extension = match base {
        None => {
            if let Some((line, col, _, _)) = perturbations.first() {
                return Err(ParseError {
                    line: *line,
                    col: *col,
                    message: "`+=` requires an `extend` declaration".into(),
                });
            }
            None
        }
        Some((line, col, name, degree)) => {
            let mut ext = KsExtension::new(&model, &name, degree).map_err(|e| ParseError {
                line,
                col,
                message: e.to_string(),
            })?;
            let total = ext.total_generators().clone();
            for (pline, _, id, terms) in perturbations {
                let p = resolve(&total, pline, terms, Some(ext.base_id()))?;
                ext.perturb_poly(id, p).expect("resolved in the total generator set");
            }
            Some(ext)
        }
    };
    Ok(ModelFile { model, extension })
}

/// Canonical text: generators in declaration order, then the extension
/// generator, then nonzero differentials and perturbations.
pub fn print_model(file: &ModelFile) -> String {
    let gens = file.model.generators();
    let mut out = String::new();
    for g in gens.iter() {
        out.push_str(&format!("generator {} {}\n", g.name, g.degree));
    }
    if let Some(ext) = &file.extension {
        out.push_str(&format!("extend {} {}\n", ext.base().name, ext.base().degree));
    }
    for g in gens.iter() {
        let p = file.model.d(g.id);
        if !p.is_zero() {
            out.push_str(&format!("d {} = {}\n", g.name, gens.polynomial_string(p)));
        }
    }
    if let Some(ext) = &file.extension {
        let total = ext.total_generators();
        for (v, p) in ext.perturbations() {
            out.push_str(&format!(
                "d {} += {}\n",
                total.generator(*v).name,
                total.polynomial_string(p)
            ));
        }
    }
    out
}

/// Exact rational as text: `3`, `-2/3`.
pub fn rational_string(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}{}/{}", if x.is_negative() { "-" } else { "" }, x.numer().abs(), x.denom())
    }
}
