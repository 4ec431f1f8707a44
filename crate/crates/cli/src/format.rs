//! The `textile-system v1` file format and solution files.
//!
//! ```text
//! textile-system v1
//! field: Q
//! x-vars: 1
//! unknowns: 1
//! outputs: 1
//! mode: composition
//! F1 = y1^2 - (1 + x1)
//! ```
//!
//! Explicit bodies use `max-degree = N`, `depend N = D` and
//! `coef j (b1, .., bn) = <poly in y<i>_<a1.a2..>>`; counterexample bodies
//! use `alphas = a0, a1, ...`. Blank lines and lines starting with `#` are
//! ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use textile_core::exactfield::{Field, FieldElem};
use textile_core::multipoly::parse::{parse_field, parse_poly, parse_scalar, ParseError};
use textile_core::multipoly::{MPoly, Monomial, Ring};
use textile_core::textile::{CoeffIndexing, Mode, TextileError, TextileSystem, TruncatedSeries};
use thiserror::Error;

pub const FORMAT_TAG: &str = "textile-system v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("invalid system: {0}")]
    Validation(String),
    #[error("component mismatch: {0}")]
    ComponentMismatch(String),
}

fn perr(line: usize, column: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse(ParseError::new(line, column, msg))
}

fn validation(e: TextileError) -> FormatError {
    match e {
        TextileError::Invalid(msg) => FormatError::Validation(msg),
        other => FormatError::Validation(other.to_string()),
    }
}

/// Character column (1-based) of byte offset `at` in `line`.
fn column(line: &str, at: usize) -> usize {
    line[..at].chars().count() + 1
}

/// A body line split at its first `=`.
struct Body<'a> {
    line_no: usize,
    line: &'a str,
    lhs: &'a str,
    rhs: &'a str,
    rhs_at: usize,
}

impl Body<'_> {
    fn rhs_col(&self) -> usize {
        column(self.line, self.rhs_at)
    }

    /// Re-anchors an error from parsing `rhs`.
    fn anchor(&self, e: ParseError) -> FormatError {
        FormatError::Parse(e.at(self.line_no, self.rhs_col() - 1))
    }
}

#[derive(Default)]
struct Header {
    field: Option<Field>,
    n: Option<usize>,
    m: Option<usize>,
    q: Option<usize>,
    mode: Option<String>,
}

fn parse_count(value: &str, line_no: usize, col: usize) -> Result<usize, FormatError> {
    match value.trim().parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(perr(line_no, col, format!("expected a positive integer, found `{}`", value.trim()))),
    }
}

pub fn parse_system(text: &str) -> Result<TextileSystem, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    match lines.next() {
        Some((_, l)) if l.trim() == FORMAT_TAG => {}
        Some((no, _)) => return Err(perr(no, 1, format!("expected `{FORMAT_TAG}`"))),
        None => return Err(perr(1, 1, "empty input")),
    }

    let mut header = Header::default();
    let mut bodies: Vec<Body<'_>> = Vec::new();
    for (no, line) in lines {
        if let Some(eq) = line.find('=') {
            let colon = line.find(':');
            if colon.is_none_or(|c| c > eq) {
                bodies.push(Body { line_no: no, line, lhs: line[..eq].trim(), rhs: &line[eq + 1..], rhs_at: eq + 1 });
                continue;
            }
        }
        let Some(colon) = line.find(':') else {
            return Err(perr(no, 1, "expected `key: value` or `lhs = rhs`"));
        };
        if !bodies.is_empty() {
            return Err(perr(no, 1, "header keys must precede the body"));
        }
        let key = line[..colon].trim();
        let value = &line[colon + 1..];
        let vcol = column(line, colon + 1);
        let dup = || perr(no, 1, format!("duplicate key `{key}`"));
        match key {
            "field" => {
                if header.field.is_some() {
                    return Err(dup());
                }
                header.field = Some(parse_field(value).map_err(|e| FormatError::Parse(e.at(no, vcol - 1)))?);
            }
            "x-vars" | "unknowns" | "outputs" => {
                let v = parse_count(value, no, vcol)?;
                let slot = match key {
                    "x-vars" => &mut header.n,
                    "unknowns" => &mut header.m,
                    _ => &mut header.q,
                };
                if slot.replace(v).is_some() {
                    return Err(dup());
                }
            }
            "mode" => {
                if header.mode.replace(value.trim().to_string()).is_some() {
                    return Err(dup());
                }
            }
            _ => return Err(perr(no, 1, format!("unknown key `{key}`"))),
        }
    }

    let missing = |k: &str| perr(1, 1, format!("missing header key `{k}`"));
    let field = header.field.ok_or_else(|| missing("field"))?;
    let n = header.n.ok_or_else(|| missing("x-vars"))?;
    let m = header.m.ok_or_else(|| missing("unknowns"))?;
    let q = header.q.ok_or_else(|| missing("outputs"))?;
    let mode = header.mode.ok_or_else(|| missing("mode"))?;
    match mode.as_str() {
        "composition" => parse_composition(field, n, m, q, &bodies),
        "explicit" => parse_explicit(field, n, m, q, &bodies),
        "counterexample" => parse_counterexample(field, n, m, q, &bodies),
        other => Err(perr(1, 1, format!("unknown mode `{other}`"))),
    }
}

fn parse_composition(field: Field, n: usize, m: usize, q: usize, bodies: &[Body<'_>]) -> Result<TextileSystem, FormatError> {
    let ring = TextileSystem::composition_ring(n, m);
    let mut fs: Vec<Option<MPoly>> = vec![None; q];
    for b in bodies {
        let j = b
            .lhs
            .strip_prefix('F')
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&j| (1..=q).contains(&j))
            .ok_or_else(|| perr(b.line_no, 1, format!("expected `F1`..`F{q}`, found `{}`", b.lhs)))?;
        if fs[j - 1].is_some() {
            return Err(perr(b.line_no, 1, format!("F{j} defined twice")));
        }
        fs[j - 1] = Some(parse_poly(b.rhs, &ring, &field).map_err(|e| b.anchor(e))?);
    }
    let fs = fs
        .into_iter()
        .enumerate()
        .map(|(j, f)| f.ok_or_else(|| FormatError::Validation(format!("F{} is missing", j + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    TextileSystem::composition(field, n, m, fs).map_err(validation)
}

fn parse_explicit(field: Field, n: usize, m: usize, q: usize, bodies: &[Body<'_>]) -> Result<TextileSystem, FormatError> {
    let mut max_n: Option<usize> = None;
    let mut depend: BTreeMap<usize, usize> = BTreeMap::new();
    let mut coefs: Vec<&Body<'_>> = Vec::new();
    for b in bodies {
        let mut words = b.lhs.split_whitespace();
        match words.next() {
            Some("max-degree") if words.next().is_none() => {
                if max_n.replace(parse_count(b.rhs, b.line_no, b.rhs_col())?).is_some() {
                    return Err(perr(b.line_no, 1, "duplicate `max-degree`"));
                }
            }
            Some("depend") => {
                let order = words
                    .next()
                    .and_then(|w| w.parse::<usize>().ok())
                    .filter(|&v| v >= 1 && words.next().is_none())
                    .ok_or_else(|| perr(b.line_no, 1, "expected `depend <N> = <D>`"))?;
                let d = parse_count(b.rhs, b.line_no, b.rhs_col())?;
                if depend.insert(order, d).is_some() {
                    return Err(perr(b.line_no, 1, format!("duplicate `depend {order}`")));
                }
            }
            Some("coef") => coefs.push(b),
            _ => return Err(perr(b.line_no, 1, format!("unknown body line `{}`", b.lhs))),
        }
    }
    let max_n = max_n.ok_or_else(|| FormatError::Validation("`max-degree` is missing".into()))?;
    let mut ds = Vec::with_capacity(max_n);
    for order in 1..=max_n {
        ds.push(*depend.get(&order).ok_or_else(|| FormatError::Validation(format!("`depend {order}` is missing")))?);
    }
    if let Some((&extra, _)) = depend.range(max_n + 1..).next() {
        return Err(FormatError::Validation(format!("`depend {extra}` exceeds max-degree {max_n}")));
    }
    let top = CoeffIndexing::new(n, m, *ds.iter().max().unwrap() as u32);

    let mut table = BTreeMap::new();
    for b in coefs {
        let (j, beta) = parse_coef_lhs(b, n, q)?;
        let p = parse_poly(b.rhs, top.ring(), &field).map_err(|e| b.anchor(e))?;
        if table.insert((j, beta), p).is_some() {
            return Err(perr(b.line_no, 1, "coefficient defined twice"));
        }
    }
    TextileSystem::explicit(field, n, m, q, ds, table).map_err(validation)
}

/// `coef <j> (<b1>, .., <bn>)` with a 1-based `j`.
fn parse_coef_lhs(b: &Body<'_>, n: usize, q: usize) -> Result<(usize, Monomial), FormatError> {
    let bad = || perr(b.line_no, 1, format!("expected `coef <j> (<{n} comma-separated degrees>)`"));
    let rest = b.lhs.strip_prefix("coef").ok_or_else(bad)?.trim_start();
    let open = rest.find('(').ok_or_else(bad)?;
    let j: usize = rest[..open].trim().parse().map_err(|_| bad())?;
    if !(1..=q).contains(&j) {
        return Err(perr(b.line_no, 1, format!("output index {j} is outside 1..={q}")));
    }
    let inner = rest[open + 1..].strip_suffix(')').ok_or_else(bad)?;
    let exps = inner.split(',').map(|s| s.trim().parse::<u32>()).collect::<Result<Vec<_>, _>>().map_err(|_| bad())?;
    if exps.len() != n {
        return Err(bad());
    }
    Ok((j - 1, Monomial::new(exps)))
}

fn parse_counterexample(field: Field, n: usize, m: usize, q: usize, bodies: &[Body<'_>]) -> Result<TextileSystem, FormatError> {
    if (n, m, q) != (1, 1, 1) {
        return Err(FormatError::Validation("counterexample systems have x-vars = unknowns = outputs = 1".into()));
    }
    let mut alphas = None;
    for b in bodies {
        if b.lhs != "alphas" {
            return Err(perr(b.line_no, 1, format!("unknown body line `{}`", b.lhs)));
        }
        if alphas.is_some() {
            return Err(perr(b.line_no, 1, "duplicate `alphas`"));
        }
        alphas = Some(parse_scalar_list(b.rhs, &field).map_err(|e| b.anchor(e))?);
    }
    let alphas = alphas.ok_or_else(|| FormatError::Validation("`alphas` is missing".into()))?;
    TextileSystem::counterexample(field, alphas).map_err(validation)
}

/// Comma-separated scalars; errors carry the column within `src`.
pub fn parse_scalar_list(src: &str, field: &Field) -> Result<Vec<FieldElem>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in src.split(',') {
        let v = parse_scalar(part, field).map_err(|e| e.at(1, offset))?;
        out.push(v);
        offset += part.chars().count() + 1;
    }
    Ok(out)
}

/// Renders a system so that `parse_system(render_system(s)) == s`.
pub fn render_system(sys: &TextileSystem) -> String {
    let mut out = String::new();
    let mode = match sys.mode() {
        Mode::Composition { .. } => "composition",
        Mode::Explicit { .. } => "explicit",
        Mode::Counterexample { .. } => "counterexample",
    };
    writeln!(out, "{FORMAT_TAG}").unwrap();
    writeln!(out, "field: {}", sys.field()).unwrap();
    writeln!(out, "x-vars: {}", sys.n()).unwrap();
    writeln!(out, "unknowns: {}", sys.m()).unwrap();
    writeln!(out, "outputs: {}", sys.q()).unwrap();
    writeln!(out, "mode: {mode}").unwrap();
    match sys.mode() {
        Mode::Composition { f } => {
            for (j, p) in f.iter().enumerate() {
                writeln!(out, "F{} = {p}", j + 1).unwrap();
            }
        }
        Mode::Explicit { max_n, depend, table } => {
            writeln!(out, "max-degree = {max_n}").unwrap();
            for (i, d) in depend.iter().enumerate() {
                writeln!(out, "depend {} = {d}", i + 1).unwrap();
            }
            for ((j, beta), p) in table {
                writeln!(out, "coef {} ({}) = {p}", j + 1, beta_list(beta)).unwrap();
            }
        }
        Mode::Counterexample { alphas } => {
            let list: Vec<String> = alphas.iter().map(|a| a.to_string()).collect();
            writeln!(out, "alphas = {}", list.join(", ")).unwrap();
        }
    }
    out
}

/// `β` as a comma list, e.g. `1, 0`.
pub fn beta_list(beta: &Monomial) -> String {
    let parts: Vec<String> = beta.exps().iter().map(|e| e.to_string()).collect();
    parts.join(", ")
}

/// Lines `y<i> = <polynomial in x1..xn>`. Unlisted components are zero and
/// the cap is one more than the largest total degree present.
pub fn parse_solution(text: &str, n: usize, m: usize, field: &Field) -> Result<TruncatedSeries, FormatError> {
    let ring = Ring::new((1..=n).map(|j| format!("x{j}")));
    let mut comps: Vec<Option<MPoly>> = vec![None; m];
    for (idx, line) in text.lines().enumerate() {
        let no = idx + 1;
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let eq = line.find('=').ok_or_else(|| perr(no, 1, "expected `y<i> = <series>`"))?;
        let lhs = line[..eq].trim();
        let i = lhs
            .strip_prefix('y')
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&i| i >= 1)
            .ok_or_else(|| perr(no, 1, format!("expected `y<i>`, found `{lhs}`")))?;
        if i > m {
            return Err(FormatError::ComponentMismatch(format!("y{i} given but the system has {m} unknowns")));
        }
        if comps[i - 1].is_some() {
            return Err(perr(no, 1, format!("y{i} given twice")));
        }
        let p = parse_poly(&line[eq + 1..], &ring, field).map_err(|e| FormatError::Parse(e.at(no, column(line, eq + 1) - 1)))?;
        comps[i - 1] = Some(p);
    }
    let polys: Vec<MPoly> = comps.into_iter().map(|p| p.unwrap_or_else(|| MPoly::zero(&ring))).collect();
    let cap = 1 + polys.iter().filter_map(|p| p.total_degree()).max().unwrap_or(0);
    TruncatedSeries::from_polys(n, cap, &polys).map_err(|e| FormatError::ComponentMismatch(e.to_string()))
}
