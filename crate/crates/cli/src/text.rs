//! Plain-text input formats.
//!
//! Presentation:
//!
//! ```text
//! p = 3
//! generators = x1, x2
//! relations:
//! x1*x2 + x2*x1
//! 2 x1*x1
//! ```
//!
//! System: `close_under_sums = true|false`, then `item: <vec>, <vec>, ...`.
//! Map: one `source_label -> <vec over target labels>` line per generator.
//! Split: `w: <vec>, ...` and `u: <vec>, ...`.
//!
//! `#` starts a comment. Coefficients are integers, reduced mod p.

use std::fmt::Write as _;

use auk_core::{Fp, Matrix, QuadraticPresentation, Subspace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

type Parsed<T> = Result<T, ParseError>;

/// Non-blank lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn valid_label(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// `(coefficient, factors)` for each signed term of `text`.
fn terms(text: &str, line: usize) -> Parsed<Vec<(i64, Vec<String>)>> {
    let mut out = Vec::new();
    let mut sign = 1i64;
    let mut current = String::new();
    let flush = |sign: i64, chunk: &str, out: &mut Vec<(i64, Vec<String>)>| -> Parsed<()> {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            return Err(ParseError::new(line, "empty term"));
        }
        let digits: String = chunk.chars().take_while(char::is_ascii_digit).collect();
        let (coef, rest) = if digits.is_empty() {
            (1i64, chunk)
        } else {
            let c: i64 = digits
                .parse()
                .map_err(|_| ParseError::new(line, format!("coefficient `{digits}` is too large")))?;
            (c, chunk[digits.len()..].trim_start().trim_start_matches('*').trim_start())
        };
        let factors: Vec<String> = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split('*').map(|f| f.trim().to_string()).collect()
        };
        if let Some(bad) = factors.iter().find(|f| !valid_label(f)) {
            return Err(ParseError::new(line, format!("`{bad}` is not a generator label")));
        }
        out.push((sign * coef, factors));
        Ok(())
    };
    let trimmed = text.trim();
    let mut chars = trimmed.chars().peekable();
    if let Some(&c) = chars.peek() {
        if c == '-' || c == '+' {
            sign = if c == '-' { -1 } else { 1 };
            chars.next();
        }
    }
    for c in chars {
        if c == '+' || c == '-' {
            flush(sign, &current, &mut out)?;
            current.clear();
            sign = if c == '-' { -1 } else { 1 };
        } else {
            current.push(c);
        }
    }
    flush(sign, &current, &mut out)?;
    Ok(out)
}

fn label_index(labels: &[String], name: &str, line: usize) -> Parsed<usize> {
    labels
        .iter()
        .position(|l| l == name)
        .ok_or_else(|| ParseError::new(line, format!("unknown generator `{name}`")))
}

/// A degree-1 vector such as `x1 + 2 x3`, or `0`.
pub fn parse_vector(text: &str, labels: &[String], field: Fp, line: usize) -> Parsed<Vec<u16>> {
    let mut v = vec![0u16; labels.len()];
    for (c, factors) in terms(text, line)? {
        match factors.as_slice() {
            [] if c == 0 => {}
            [g] => {
                let i = label_index(labels, g, line)?;
                v[i] = field.add(v[i], field.reduce(c));
            }
            _ => return Err(ParseError::new(line, "expected a linear combination of generators")),
        }
    }
    Ok(v)
}

/// A tensor such as `x1*x2 + x2*x1`, in coordinates `i·n + j`.
pub fn parse_tensor(text: &str, labels: &[String], field: Fp, line: usize) -> Parsed<Vec<u16>> {
    let n = labels.len();
    let mut v = vec![0u16; n * n];
    for (c, factors) in terms(text, line)? {
        match factors.as_slice() {
            [] if c == 0 => {}
            [a, b] => {
                let k = label_index(labels, a, line)? * n + label_index(labels, b, line)?;
                v[k] = field.add(v[k], field.reduce(c));
            }
            _ => return Err(ParseError::new(line, "each relation term must be a product g*h of two generators")),
        }
    }
    Ok(v)
}

fn key_value(l: &str) -> Option<(&str, &str)> {
    let (k, v) = l.split_once('=')?;
    Some((k.trim(), v.trim()))
}

pub fn parse_presentation(text: &str) -> Parsed<QuadraticPresentation> {
    let mut field = None;
    let mut labels: Option<Vec<String>> = None;
    let mut relation_lines = Vec::new();
    let mut in_relations = false;
    for (line, l) in content_lines(text) {
        if in_relations {
            relation_lines.push((line, l));
            continue;
        }
        if l.trim_end_matches(':').trim() == "relations" && l.ends_with(':') {
            in_relations = true;
            continue;
        }
        match key_value(l) {
            Some(("p", v)) => {
                let p: u32 = v.parse().map_err(|_| ParseError::new(line, format!("`{v}` is not an integer")))?;
                field = Some(Fp::new(p).map_err(|e| ParseError::new(line, e.to_string()))?);
            }
            Some(("generators", v)) => {
                let ls: Vec<String> = if v.is_empty() {
                    Vec::new()
                } else {
                    v.split(',').map(|s| s.trim().to_string()).collect()
                };
                if let Some(bad) = ls.iter().find(|s| !valid_label(s)) {
                    return Err(ParseError::new(line, format!("`{bad}` is not a valid label")));
                }
                labels = Some(ls);
            }
            _ => return Err(ParseError::new(line, format!("unexpected line `{l}`"))),
        }
    }
    let field = field.ok_or_else(|| ParseError::new(0, "missing `p = <prime>`"))?;
    let labels = labels.ok_or_else(|| ParseError::new(0, "missing `generators = ...`"))?;
    let n = labels.len();
    let rows = relation_lines
        .into_iter()
        .map(|(line, l)| parse_tensor(l, &labels, field, line))
        .collect::<Parsed<Vec<_>>>()?;
    let relations = Subspace::from_rows(field, n * n, rows).map_err(|e| ParseError::new(0, e.to_string()))?;
    QuadraticPresentation::new(field, labels, relations).map_err(|e| ParseError::new(0, e.to_string()))
}

fn coefficient_prefix(c: u16) -> String {
    if c == 1 {
        String::new()
    } else {
        format!("{c} ")
    }
}

/// Canonical text form; relations are the echelon basis, one per line.
pub fn print_presentation(p: &QuadraticPresentation) -> String {
    let labels = p.labels();
    let n = labels.len();
    let mut out = String::new();
    let _ = writeln!(out, "p = {}", p.field().p());
    let _ = writeln!(out, "generators = {}", labels.join(", "));
    let _ = writeln!(out, "relations:");
    for r in p.relations().basis() {
        let terms: Vec<String> = r
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| format!("{}{}*{}", coefficient_prefix(c), labels[k / n], labels[k % n]))
            .collect();
        let _ = writeln!(out, "{}", terms.join(" + "));
    }
    out
}

pub fn format_vector(v: &[u16], labels: &[String]) -> String {
    let terms: Vec<String> = v
        .iter()
        .zip(labels)
        .filter(|(&c, _)| c != 0)
        .map(|(&c, l)| format!("{}{l}", coefficient_prefix(c)))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn format_tensor(v: &[u16], labels: &[String]) -> String {
    let n = labels.len();
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| format!("{}{}*{}", coefficient_prefix(c), labels[k / n], labels[k % n]))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn parse_span(text: &str, labels: &[String], field: Fp, line: usize) -> Parsed<Subspace> {
    let rows = if text.trim().is_empty() {
        Vec::new()
    } else {
        text.split(',')
            .map(|v| parse_vector(v, labels, field, line))
            .collect::<Parsed<Vec<_>>>()?
    };
    Subspace::from_rows(field, labels.len(), rows).map_err(|e| ParseError::new(line, e.to_string()))
}

#[derive(Debug, Clone)]
pub struct SystemFile {
    pub close_under_sums: bool,
    pub items: Vec<Subspace>,
}

pub fn parse_system(text: &str, labels: &[String], field: Fp) -> Parsed<SystemFile> {
    let mut close_under_sums = false;
    let mut items = Vec::new();
    for (line, l) in content_lines(text) {
        if let Some(rest) = l.strip_prefix("item:") {
            items.push(parse_span(rest, labels, field, line)?);
        } else if let Some(("close_under_sums", v)) = key_value(l) {
            close_under_sums = match v {
                "true" => true,
                "false" => false,
                _ => return Err(ParseError::new(line, format!("expected true or false, got `{v}`"))),
            };
        } else {
            return Err(ParseError::new(line, format!("unexpected line `{l}`")));
        }
    }
    Ok(SystemFile { close_under_sums, items })
}

/// Degree-1 matrix (`n_target x n_source`) of a map file.
pub fn parse_map(text: &str, source: &[String], target: &[String], field: Fp) -> Parsed<Matrix> {
    let mut columns: Vec<Option<Vec<u16>>> = vec![None; source.len()];
    for (line, l) in content_lines(text) {
        let (lhs, rhs) = l
            .split_once("->")
            .ok_or_else(|| ParseError::new(line, "expected `generator -> combination`"))?;
        let i = label_index(source, lhs.trim(), line)?;
        if columns[i].is_some() {
            return Err(ParseError::new(line, format!("`{}` is mapped twice", lhs.trim())));
        }
        columns[i] = Some(parse_vector(rhs, target, field, line)?);
    }
    let columns = columns
        .into_iter()
        .zip(source)
        .map(|(c, l)| c.ok_or_else(|| ParseError::new(0, format!("no image given for `{l}`"))))
        .collect::<Parsed<Vec<_>>>()?;
    Matrix::from_columns(field, target.len(), &columns).map_err(|e| ParseError::new(0, e.to_string()))
}

pub fn print_map(m: &Matrix, source: &[String], target: &[String]) -> String {
    let mut out = String::new();
    for (j, l) in source.iter().enumerate() {
        let _ = writeln!(out, "{l} -> {}", format_vector(&m.column(j), target));
    }
    out
}

pub fn parse_split(text: &str, labels: &[String], field: Fp) -> Parsed<(Subspace, Subspace)> {
    let (mut w, mut u) = (None, None);
    for (line, l) in content_lines(text) {
        if let Some(rest) = l.strip_prefix("w:") {
            w = Some(parse_span(rest, labels, field, line)?);
        } else if let Some(rest) = l.strip_prefix("u:") {
            u = Some(parse_span(rest, labels, field, line)?);
        } else {
            return Err(ParseError::new(line, format!("unexpected line `{l}`")));
        }
    }
    let zero = || Subspace::zero(field, labels.len());
    Ok((w.unwrap_or_else(zero), u.unwrap_or_else(zero)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use auk_core::cohomology::exterior_presentation;

    #[test]
    fn round_trip_exterior() {
        let p = exterior_presentation(3, Fp::new(3).unwrap());
        let text = print_presentation(&p);
        assert_eq!(parse_presentation(&text).unwrap(), p);
    }

    #[test]
    fn coefficients_and_signs() {
        let text = "p = 5\ngenerators = a, b\nrelations:\na*b - b*a\n7 a*a  # reduces to 2\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.relations().dim(), 2);
        assert!(p.relations().contains_slice(&[2, 0, 0, 0]));
        assert!(p.relations().contains_slice(&[0, 1, 4, 0]));
    }

    #[test]
    fn unknown_label_reports_line() {
        let text = "p = 2\ngenerators = x1, x2\nrelations:\nx1*x1\nx1*x3\n";
        let err = parse_presentation(text).unwrap_err();
        assert_eq!(err.line, 5);
        assert!(err.message.contains("x3"));
    }

    #[test]
    fn rejects_non_prime_and_bad_terms() {
        assert!(parse_presentation("p = 4\ngenerators = x\nrelations:\n").is_err());
        assert!(parse_presentation("p = 2\ngenerators = x\nrelations:\nx\n").is_err());
        assert!(parse_presentation("p = 2\ngenerators = x\nrelations:\nx*x*x\n").is_err());
        assert!(parse_presentation("p = 2\ngenerators = x, x\nrelations:\n").is_err());
    }

    #[test]
    fn systems_and_maps() {
        let labels: Vec<String> = ["x1", "x2", "x3"].iter().map(|s| s.to_string()).collect();
        let sys = parse_system("close_under_sums = true\nitem: x1\nitem: x1 + x2, x3\nitem:\n", &labels, Fp::F2).unwrap();
        assert!(sys.close_under_sums);
        assert_eq!(sys.items.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![1, 2, 0]);

        let src: Vec<String> = vec!["y".into()];
        let m = parse_map("y -> x1 + x3\n", &src, &labels, Fp::F2).unwrap();
        assert_eq!(m.column(0), vec![1, 0, 1]);
        assert_eq!(print_map(&m, &src, &labels), "y -> x1 + x3\n");
        assert!(parse_map("", &src, &labels, Fp::F2).is_err());
    }
}
