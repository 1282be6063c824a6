use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exact_field::Rational;
use crate::lie_algebra::{LieAlgebra3, LieError};
use crate::path_structure::{normalize_frame, validate_adapted_frame, AdaptedFrame, FrameError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader(&'static str),
    UnexpectedKeyword(String),
    Syntax(String),
    BadIdentifier(String),
    UnknownIdentifier(String),
    RepeatedIdentifier(String),
    DuplicatePair(String, String),
    DuplicateFrame,
    MissingFrame,
    MalformedRational(String),
    Jacobi(String),
    Frame(FrameError),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ParseErrorKind::*;
        match self {
            MissingHeader(kw) => write!(f, "expected a `{kw}` line"),
            UnexpectedKeyword(kw) => write!(f, "unexpected keyword {kw:?}"),
            Syntax(msg) => write!(f, "{msg}"),
            BadIdentifier(s) => write!(f, "invalid identifier {s:?}"),
            UnknownIdentifier(s) => write!(f, "unknown identifier {s:?}"),
            RepeatedIdentifier(s) => write!(f, "identifier {s:?} repeated"),
            DuplicatePair(a, b) => write!(f, "bracket of ({a}, {b}) given twice"),
            DuplicateFrame => write!(f, "more than one frame line"),
            MissingFrame => write!(f, "no frame line"),
            MalformedRational(s) => write!(f, "malformed rational {s:?}"),
            Jacobi(res) => write!(f, "Jacobi identity fails: {res}"),
            Frame(e) => write!(f, "invalid frame: {e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// A parsed specification: the algebra, its frame assignment and the
/// normalized adapted frame.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParsedSpec {
    pub algebra: LieAlgebra3,
    pub assignment: [usize; 3],
    pub frame: AdaptedFrame,
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

struct Basis<'a> {
    names: [&'a str; 3],
}

impl Basis<'_> {
    fn index(&self, line: usize, s: &str) -> Result<usize, ParseError> {
        self.names
            .iter()
            .position(|n| *n == s)
            .ok_or_else(|| err(line, ParseErrorKind::UnknownIdentifier(s.to_string())))
    }
}

fn parse_bracket_rhs(line: usize, basis: &Basis, toks: &[&str]) -> Result<[Rational; 3], ParseError> {
    let mut out = [Rational::zero(), Rational::zero(), Rational::zero()];
    let mut rest = toks;
    loop {
        match rest {
            [coef, ident, tail @ ..] => {
                let c: Rational = coef
                    .parse()
                    .map_err(|_| err(line, ParseErrorKind::MalformedRational(coef.to_string())))?;
                out[basis.index(line, ident)?] += &c;
                match tail {
                    [] => return Ok(out),
                    ["+", more @ ..] if !more.is_empty() => rest = more,
                    _ => return Err(err(line, ParseErrorKind::Syntax("expected `+ <rational> <ident>`".into()))),
                }
            }
            _ => return Err(err(line, ParseErrorKind::Syntax("expected `<rational> <ident>`".into()))),
        }
    }
}

pub fn parse_algebra_spec(text: &str) -> Result<ParsedSpec, ParseError> {
    let mut lines = significant_lines(text);
    let last_line = text.lines().count().max(1);

    let (l1, toks) = lines.next().ok_or_else(|| err(last_line, ParseErrorKind::MissingHeader("algebra")))?;
    let name = match toks.as_slice() {
        ["algebra", name] if is_ident(name) => name.to_string(),
        ["algebra", name] => return Err(err(l1, ParseErrorKind::BadIdentifier(name.to_string()))),
        _ => return Err(err(l1, ParseErrorKind::MissingHeader("algebra"))),
    };

    let (l2, toks) = lines.next().ok_or_else(|| err(last_line, ParseErrorKind::MissingHeader("basis")))?;
    let names: [&str; 3] = match toks.as_slice() {
        ["basis", a, b, c] => [*a, *b, *c],
        _ => return Err(err(l2, ParseErrorKind::MissingHeader("basis"))),
    };
    for (k, n) in names.iter().enumerate() {
        if !is_ident(n) {
            return Err(err(l2, ParseErrorKind::BadIdentifier(n.to_string())));
        }
        if names[..k].contains(n) {
            return Err(err(l2, ParseErrorKind::RepeatedIdentifier(n.to_string())));
        }
    }
    let basis = Basis { names };

    let mut brackets: BTreeMap<(usize, usize), (usize, [Rational; 3])> = BTreeMap::new();
    let mut frame: Option<(usize, [usize; 3])> = None;
    let mut last_bracket_line = l2;
    for (ln, toks) in lines {
        match toks.as_slice() {
            ["bracket", a, b, "=", rhs @ ..] => {
                let (i, j) = (basis.index(ln, a)?, basis.index(ln, b)?);
                if i == j {
                    return Err(err(ln, ParseErrorKind::RepeatedIdentifier(a.to_string())));
                }
                let key = (i.min(j), i.max(j));
                if brackets.contains_key(&key) {
                    return Err(err(ln, ParseErrorKind::DuplicatePair(a.to_string(), b.to_string())));
                }
                let mut value = parse_bracket_rhs(ln, &basis, rhs)?;
                if i > j {
                    value = value.map(|c| -c);
                }
                brackets.insert(key, (ln, value));
                last_bracket_line = ln;
            }
            ["bracket", ..] => {
                return Err(err(ln, ParseErrorKind::Syntax("expected `bracket <ident> <ident> = <terms>`".into())))
            }
            ["frame", a, b, c] => {
                if frame.is_some() {
                    return Err(err(ln, ParseErrorKind::DuplicateFrame));
                }
                let roles = [basis.index(ln, a)?, basis.index(ln, b)?, basis.index(ln, c)?];
                for k in 0..3 {
                    if roles[..k].contains(&roles[k]) {
                        return Err(err(ln, ParseErrorKind::RepeatedIdentifier(names[roles[k]].to_string())));
                    }
                }
                frame = Some((ln, roles));
            }
            ["frame", ..] => return Err(err(ln, ParseErrorKind::Syntax("expected `frame <ident> <ident> <ident>`".into()))),
            [kw, ..] => return Err(err(ln, ParseErrorKind::UnexpectedKeyword(kw.to_string()))),
            [] => unreachable!("blank lines are skipped"),
        }
    }

    let entries: Vec<(usize, usize, [Rational; 3])> =
        brackets.into_iter().map(|((i, j), (_, v))| (i, j, v)).collect();
    let algebra = LieAlgebra3::new(&name, names, &entries).map_err(|e| match e {
        LieError::Jacobi { residual } => err(last_bracket_line, ParseErrorKind::Jacobi(format!("{residual:?}"))),
        other => err(last_bracket_line, ParseErrorKind::Syntax(other.to_string())),
    })?;
    let (fl, assignment) = frame.ok_or_else(|| err(last_line, ParseErrorKind::MissingFrame))?;
    let adapted = validate_adapted_frame(&algebra, assignment).map_err(|e| err(fl, ParseErrorKind::Frame(e)))?;
    Ok(ParsedSpec { algebra, assignment, frame: normalize_frame(&adapted) })
}

/// Canonical text of a spec: brackets for pairs `i < j` in basis order, terms in basis order.
pub fn render_spec(algebra: &LieAlgebra3, assignment: [usize; 3]) -> String {
    let names = algebra.basis_names();
    let mut out = format!("algebra {}\nbasis {} {} {}\n", algebra.name(), names[0], names[1], names[2]);
    for (i, j, v) in algebra.nonzero_brackets() {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{c} {}", names[k]))
            .collect();
        out.push_str(&format!("bracket {} {} = {}\n", names[i], names[j], terms.join(" + ")));
    }
    out.push_str(&format!(
        "frame {} {} {}\n",
        names[assignment[0]], names[assignment[1]], names[assignment[2]]
    ));
    out
}

impl ParsedSpec {
    pub fn canonical(&self) -> String {
        render_spec(&self.algebra, self.assignment)
    }
}
