//! Problem file loading.
//!
//! A problem file has up to four sections, in this order:
//!
//! ```text
//! # comments run to the end of the line
//! vars
//!   x in [0, 16]
//!   prop y1 in [0, 20]
//!   prop y2 in [-10, 10]
//!
//! minimize
//!   y1^3
//!
//! subject_to
//!   2*y1 = x - y2^2
//!
//! catalog
//!   parts parts.csv (y1, y2)
//! ```
//!
//! `vars` and `minimize` are required. Constraints take three shapes:
//! `lo <= f <= hi` with numeric bounds (`inf` and `-inf` allowed), `f = g`,
//! and `f <= g`. Catalog lines name the catalog, give a CSV path resolved
//! relative to the problem file, and list the bound variables.

use crate::boxes::IntervalBox;
use crate::catalog::{Catalog, CatalogError};
use crate::expr::Expr;
use crate::interval::Interval;
use crate::parse::parse_expr;
use crate::problem::{CatalogBinding, Constraint, Problem, ProblemError};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProbError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path} line {line}: {message}")]
    Format { path: String, line: usize, message: String },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("{path}: {source}")]
    Invalid {
        path: String,
        #[source]
        source: ProblemError,
    },
}

/// Reads and checks a problem file; catalog paths resolve against its parent
/// directory.
pub fn load(path: &Path) -> Result<Problem, ProbError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|source| ProbError::Io { path: shown.clone(), source })?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    parse(&text, &shown, base)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    None,
    Vars,
    Minimize,
    SubjectTo,
    Catalog,
}

impl Section {
    fn keyword(s: &str) -> Option<Section> {
        match s {
            "vars" => Some(Section::Vars),
            "minimize" => Some(Section::Minimize),
            "subject_to" => Some(Section::SubjectTo),
            "catalog" => Some(Section::Catalog),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Section::None => "",
            Section::Vars => "vars",
            Section::Minimize => "minimize",
            Section::SubjectTo => "subject_to",
            Section::Catalog => "catalog",
        }
    }
}

struct CatalogLine {
    name: String,
    path: String,
    vars: Vec<usize>,
    line: usize,
}

/// Parses problem text. `path` labels errors; `base` anchors catalog paths.
pub fn parse(text: &str, path: &str, base: &Path) -> Result<Problem, ProbError> {
    let fail = |line: usize, message: String| ProbError::Format {
        path: path.to_string(),
        line,
        message,
    };

    let mut section = Section::None;
    let mut var_names: Vec<String> = Vec::new();
    let mut prop_vars: Vec<bool> = Vec::new();
    let mut domains: Vec<Interval> = Vec::new();
    let mut objective: Option<Expr> = None;
    let mut constraints: Vec<Constraint> = Vec::new();
    let mut catalog_lines: Vec<CatalogLine> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let no = idx + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(next) = Section::keyword(trimmed) {
            if next == section {
                return Err(fail(no, format!("section `{}` appears twice", next.name())));
            }
            if next < section {
                return Err(fail(
                    no,
                    format!(
                        "section `{}` must come before `{}`",
                        next.name(),
                        section.name()
                    ),
                ));
            }
            section = next;
            continue;
        }
        match section {
            Section::None => {
                return Err(fail(no, format!("expected a section keyword, found `{trimmed}`")));
            }
            Section::Vars => {
                let (name, prop, domain) = var_line(line, no, path)?;
                if var_names.iter().any(|n| n == &name) {
                    return Err(fail(no, format!("duplicate variable `{name}`")));
                }
                var_names.push(name);
                prop_vars.push(prop);
                domains.push(domain);
            }
            Section::Minimize => {
                if objective.is_some() {
                    return Err(fail(no, "minimize takes a single expression".to_string()));
                }
                objective = Some(expr_at(line, 0, &var_names, no, path)?);
            }
            Section::SubjectTo => {
                constraints.push(constraint_line(line, &var_names, no, path)?);
            }
            Section::Catalog => {
                catalog_lines.push(catalog_line(line, &var_names, no, path)?);
            }
        }
    }

    if var_names.is_empty() {
        return Err(fail(text.lines().count(), "missing `vars` section".to_string()));
    }
    let objective = objective.ok_or_else(|| {
        fail(text.lines().count(), "missing `minimize` section".to_string())
    })?;

    let mut catalogs = Vec::with_capacity(catalog_lines.len());
    for cl in catalog_lines {
        let mut catalog = Catalog::load_csv(&base.join(&cl.path))?;
        catalog.name = cl.name;
        if catalog.num_props() != cl.vars.len() {
            return Err(fail(
                cl.line,
                format!(
                    "catalog `{}` has {} properties but binds {} variables",
                    catalog.name,
                    catalog.num_props(),
                    cl.vars.len()
                ),
            ));
        }
        catalogs.push(CatalogBinding { catalog, vars: cl.vars });
    }

    let problem = Problem {
        var_names,
        prop_vars,
        domains: IntervalBox::new(domains),
        objective,
        constraints,
        catalogs,
    };
    problem
        .validate()
        .map_err(|source| ProbError::Invalid { path: path.to_string(), source })?;
    Ok(problem)
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses `[prop] name in [lo, hi]`.
fn var_line(line: &str, no: usize, path: &str) -> Result<(String, bool, Interval), ProbError> {
    let fail = |message: String| ProbError::Format { path: path.to_string(), line: no, message };
    let mut rest = line.trim();
    let mut prop = false;
    if let Some(r) = rest.strip_prefix("prop") {
        if r.starts_with(char::is_whitespace) {
            prop = true;
            rest = r.trim_start();
        }
    }
    let name_end = rest
        .find(char::is_whitespace)
        .ok_or_else(|| fail(format!("expected `name in [lo, hi]`, found `{rest}`")))?;
    let name = &rest[..name_end];
    if !is_ident(name) {
        return Err(fail(format!("invalid variable name `{name}`")));
    }
    if name == "sqrt" {
        return Err(fail("`sqrt` is reserved".to_string()));
    }
    let rest = rest[name_end..].trim_start();
    let rest = rest
        .strip_prefix("in")
        .filter(|r| r.starts_with(char::is_whitespace) || r.starts_with('['))
        .ok_or_else(|| fail(format!("expected `in` after `{name}`")))?
        .trim_start();
    let inner = rest
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| fail(format!("expected `[lo, hi]` for `{name}`")))?;
    let (lo, hi) = inner
        .split_once(',')
        .ok_or_else(|| fail(format!("expected `[lo, hi]` for `{name}`")))?;
    let lo = bound(lo).map_err(fail)?;
    let hi = bound(hi).map_err(fail)?;
    if lo > hi {
        return Err(fail(format!("empty domain for `{name}`: [{lo}, {hi}]")));
    }
    Ok((name.to_string(), prop, Interval::new(lo, hi)))
}

/// Parses a numeric bound; `inf` and `-inf` are accepted.
fn bound(s: &str) -> Result<f64, String> {
    let t = s.trim();
    match t {
        "inf" | "+inf" => return Ok(f64::INFINITY),
        "-inf" => return Ok(f64::NEG_INFINITY),
        _ => {}
    }
    let v: f64 = t
        .parse()
        .map_err(|_| format!("malformed bound `{t}`"))?;
    if v.is_nan() {
        return Err(format!("malformed bound `{t}`"));
    }
    Ok(v)
}

/// Parses an expression that starts at byte `start` of the line, pointing
/// errors at the right column.
fn expr_at(
    line: &str,
    start: usize,
    vars: &[String],
    no: usize,
    path: &str,
) -> Result<Expr, ProbError> {
    let slice = &line[start..];
    let lead = slice.len() - slice.trim_start().len();
    parse_expr(slice.trim(), vars).map_err(|e| ProbError::Format {
        path: path.to_string(),
        line: no,
        message: format!("column {}: {}", start + lead + e.offset + 1, e.message),
    })
}

/// Parses one constraint: `lo <= f <= hi`, `f = g`, or `f <= g`.
fn constraint_line(
    line: &str,
    vars: &[String],
    no: usize,
    path: &str,
) -> Result<Constraint, ProbError> {
    let fail = |message: String| ProbError::Format { path: path.to_string(), line: no, message };
    if line.contains(">=") {
        return Err(fail("`>=` is not supported; rewrite with `<=`".to_string()));
    }
    if let Some(i) = line.find("<=") {
        if let Some(j) = line[i + 2..].find("<=").map(|j| i + 2 + j) {
            let lo = bound(&line[..i]).map_err(fail)?;
            let hi = bound(&line[j + 2..]).map_err(fail)?;
            if lo > hi {
                return Err(fail(format!("empty constraint range [{lo}, {hi}]")));
            }
            let body = expr_at(&line[..j], i + 2, vars, no, path)?;
            return Ok(Constraint { body, bounds: Interval::new(lo, hi) });
        }
        let lhs = expr_at(&line[..i], 0, vars, no, path)?;
        let rhs = expr_at(line, i + 2, vars, no, path)?;
        let body = Expr::Sub(Box::new(lhs), Box::new(rhs));
        return Ok(Constraint { body, bounds: Interval::new(f64::NEG_INFINITY, 0.0) });
    }
    if let Some(k) = line.find('=') {
        let lhs = expr_at(&line[..k], 0, vars, no, path)?;
        let rhs = expr_at(line, k + 1, vars, no, path)?;
        let body = Expr::Sub(Box::new(lhs), Box::new(rhs));
        return Ok(Constraint { body, bounds: Interval::new(0.0, 0.0) });
    }
    Err(fail("expected `=` or `<=` in constraint".to_string()))
}

/// Parses `name path.csv (v1, v2)`.
fn catalog_line(
    line: &str,
    vars: &[String],
    no: usize,
    path: &str,
) -> Result<CatalogLine, ProbError> {
    let fail = |message: String| ProbError::Format { path: path.to_string(), line: no, message };
    let trimmed = line.trim();
    let open = trimmed
        .rfind('(')
        .ok_or_else(|| fail("expected `name path (v1, v2)`".to_string()))?;
    let list = trimmed[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| fail("expected `)` at end of catalog line".to_string()))?;
    let head = trimmed[..open].trim();
    let name_end = head
        .find(char::is_whitespace)
        .ok_or_else(|| fail("expected a path after the catalog name".to_string()))?;
    let name = &head[..name_end];
    if !is_ident(name) {
        return Err(fail(format!("invalid catalog name `{name}`")));
    }
    let csv = head[name_end..].trim();
    if csv.is_empty() {
        return Err(fail("expected a path after the catalog name".to_string()));
    }
    let mut indices = Vec::new();
    for part in list.split(',') {
        let v = part.trim();
        let i = vars
            .iter()
            .position(|n| n == v)
            .ok_or_else(|| fail(format!("unknown variable `{v}`")))?;
        indices.push(i);
    }
    Ok(CatalogLine {
        name: name.to_string(),
        path: csv.to_string(),
        vars: indices,
        line: no,
    })
}
