//! Line-oriented algebra description files.
//!
//! ```text
//! # k[x]/x^2
//! field Q
//! basis 1 0
//! basis x 0
//! unit 1
//! mul x x = 0
//! module k
//!   mbasis v 0
//!   act x v = 0
//! end
//! ```
//!
//! Products, differentials and actions that are not listed are zero, except
//! that a unit which is a basis vector acts as the identity on modules.

use std::collections::BTreeMap;

use kmdual_core::algebra::{validate_algebra, AlgebraRef, TableAlgebra};
use kmdual_core::module::{validate_module, TableModule};
use kmdual_core::{Error, Field, Result, Vector};

/// Parsed contents of a description file.
pub struct AlgebraFile {
    pub algebra: AlgebraRef,
    pub modules: BTreeMap<String, TableModule>,
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn error(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    /// Whitespace-separated words with their 1-based columns.
    fn words(&self) -> Vec<(usize, &str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, ch) in self.text.char_indices() {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    out.push((s + 1, &self.text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s + 1, &self.text[s..]));
        }
        out
    }

    /// The text after `=`, with its column.
    fn rhs(&self) -> Result<(usize, &str)> {
        let eq = self
            .text
            .find('=')
            .ok_or_else(|| self.error(self.text.len() + 1, "expected `=`"))?;
        Ok((eq + 2, &self.text[eq + 1..]))
    }
}

fn strip_comment(s: &str) -> &str {
    s.split_once('#').map_or(s, |(a, _)| a)
}

/// Resolves a label or a 0-based index.
fn resolve(labels: &[String], token: &str, line: &Line, column: usize, what: &str) -> Result<usize> {
    if let Some(i) = labels.iter().position(|l| l == token) {
        return Ok(i);
    }
    match token.parse::<usize>() {
        Ok(i) if i < labels.len() => Ok(i),
        _ => Err(line.error(column, format!("unknown {what} `{token}`"))),
    }
}

/// `c1*l1 + c2*l2 - l3`, or `0`.
fn parse_expr(field: Field, labels: &[String], text: &str, column: usize, line: &Line) -> Result<Vector> {
    let mut out = Vector::zero();
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut first = true;
    loop {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i >= bytes.len() {
            if first {
                return Err(line.error(column + i, "expected an expression"));
            }
            return Ok(out);
        }
        let mut sign = field.one();
        if !first {
            match bytes[i] {
                b'+' => {}
                b'-' => sign = -&sign,
                _ => return Err(line.error(column + i, "expected `+` or `-`")),
            }
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
        } else if bytes[i] == b'-' {
            sign = -&sign;
            i += 1;
        }
        let start = i;
        while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b'+' {
            // a '-' ends the term unless it directly follows '*' or '/'
            if bytes[i] == b'-' && i > start && bytes[i - 1] != b'*' && bytes[i - 1] != b'/' {
                break;
            }
            i += 1;
        }
        let term = &text[start..i];
        if term.is_empty() {
            return Err(line.error(column + start, "empty term"));
        }
        let (coeff, label) = match term.split_once('*') {
            Some((c, l)) => (Some(c), Some(l)),
            None if term == "0" => (Some("0"), None),
            None if term.chars().next().is_some_and(|c| c.is_ascii_digit()) && term.parse::<usize>().is_err() => {
                (Some(term), None)
            }
            None => (None, Some(term)),
        };
        let c = match coeff {
            Some(c) => field
                .parse(c)
                .map_err(|_| line.error(column + start, format!("invalid coefficient `{c}`")))?,
            None => field.one(),
        };
        let c = &c * &sign;
        match label {
            Some(l) => {
                let k = resolve(labels, l, line, column + start, "basis element")?;
                out.add_term(k, &c);
            }
            None if c.is_zero() => {}
            None => return Err(line.error(column + start, "a nonzero coefficient needs a basis element")),
        }
        first = false;
    }
}

fn parse_field(line: &Line, words: &[(usize, &str)]) -> Result<Field> {
    match words {
        [_, (_, "Q")] => Ok(Field::Rational),
        [_, (_, "F"), (c, p)] => {
            let p: u64 = p.parse().map_err(|_| line.error(*c, format!("invalid prime `{p}`")))?;
            Field::prime(p).map_err(|e| line.error(*c, e.to_string()))
        }
        [_, (c, w)] if w.starts_with('F') => {
            let p: u64 = w[1..]
                .parse()
                .map_err(|_| line.error(*c, format!("invalid field `{w}`")))?;
            Field::prime(p).map_err(|e| line.error(*c, e.to_string()))
        }
        _ => Err(line.error(1, "expected `field Q` or `field F <p>`")),
    }
}

fn parse_basis(line: &Line, words: &[(usize, &str)]) -> Result<(String, i32)> {
    match words {
        [_, (_, label), (c, deg)] => {
            let d: i32 = deg
                .parse()
                .map_err(|_| line.error(*c, format!("invalid degree `{deg}`")))?;
            Ok((label.to_string(), d))
        }
        _ => Err(line.error(1, "expected `<keyword> <label> <degree>`")),
    }
}

/// Parses a description file. `default_field` is used when the file has no
/// `field` line; a `field` line that disagrees with `required_field` is an
/// error.
pub fn parse_algebra_file(text: &str, default_field: Field, required_field: Option<Field>) -> Result<AlgebraFile> {
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .map(|(i, t)| Line {
            number: i + 1,
            text: strip_comment(t),
        })
        .filter(|l| !l.text.trim().is_empty())
        .collect();

    // first pass: field and algebra basis
    let mut field = None;
    let mut basis = Vec::new();
    let mut in_module = false;
    for line in &lines {
        let words = line.words();
        match words[0].1 {
            "module" => in_module = true,
            "end" => in_module = false,
            "field" if !in_module => {
                if field.is_some() {
                    return Err(line.error(1, "duplicate `field` line"));
                }
                let f = parse_field(line, &words)?;
                if let Some(r) = required_field {
                    if r != f {
                        return Err(line.error(1, format!("file declares {f} but {r} was requested")));
                    }
                }
                field = Some(f);
            }
            "basis" if !in_module => {
                let (label, deg) = parse_basis(line, &words)?;
                if basis.iter().any(|(l, _)| l == &label) {
                    return Err(line.error(words[1].0, format!("duplicate basis label `{label}`")));
                }
                basis.push((label, deg));
            }
            _ => {}
        }
    }
    let field = field.or(required_field).unwrap_or(default_field);
    if basis.is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "no `basis` lines".into(),
        });
    }
    let labels: Vec<String> = basis.iter().map(|(l, _)| l.clone()).collect();

    // second pass: structure
    let mut unit = None;
    let mut muls = Vec::new();
    let mut diffs = Vec::new();
    let mut curvature = None;
    let mut blocks: Vec<(&Line, Vec<&Line>)> = Vec::new();
    let mut current: Option<(&Line, Vec<&Line>)> = None;
    for line in &lines {
        let words = line.words();
        if let Some((_, body)) = current.as_mut() {
            if words[0].1 == "end" {
                blocks.push(current.take().unwrap());
            } else if words[0].1 == "module" {
                return Err(line.error(1, "nested `module` block"));
            } else {
                body.push(line);
            }
            continue;
        }
        match words[0].1 {
            "field" | "basis" => {}
            "unit" => {
                let (c, _) = words
                    .get(1)
                    .copied()
                    .ok_or_else(|| line.error(5, "expected the unit"))?;
                let rest = &line.text[c - 1..];
                unit = Some(parse_expr(field, &labels, rest, c, line)?);
            }
            "mul" => {
                let (&(ci, i), &(cj, j)) = match (words.get(1), words.get(2)) {
                    (Some(a), Some(b)) => (a, b),
                    _ => return Err(line.error(1, "expected `mul <i> <j> = ...`")),
                };
                let i = resolve(&labels, i, line, ci, "basis element")?;
                let j = resolve(&labels, j, line, cj, "basis element")?;
                let (c, rhs) = line.rhs()?;
                muls.push((i, j, parse_expr(field, &labels, rhs, c, line)?, line));
            }
            "diff" => {
                let &(ci, i) = words.get(1).ok_or_else(|| line.error(1, "expected `diff <i> = ...`"))?;
                let i = resolve(&labels, i, line, ci, "basis element")?;
                let (c, rhs) = line.rhs()?;
                diffs.push((i, parse_expr(field, &labels, rhs, c, line)?, line));
            }
            "curvature" => {
                let (c, rhs) = line.rhs()?;
                curvature = Some((parse_expr(field, &labels, rhs, c, line)?, line));
            }
            "module" => {
                if words.len() != 2 {
                    return Err(line.error(1, "expected `module <name>`"));
                }
                current = Some((line, Vec::new()));
            }
            "end" => return Err(line.error(1, "`end` without `module`")),
            other => return Err(line.error(1, format!("unknown directive `{other}`"))),
        }
    }
    if let Some((line, _)) = current {
        return Err(line.error(1, "`module` block is not closed"));
    }
    let unit = unit.ok_or_else(|| Error::Parse {
        line: lines.last().map_or(1, |l| l.number),
        column: 1,
        message: "missing `unit` line".into(),
    })?;
    let mut a = TableAlgebra::new(field, basis, unit)?;
    for (i, j, v, line) in muls {
        a.set_mul(i, j, v).map_err(|e| line.error(1, e.to_string()))?;
    }
    for (i, v, line) in diffs {
        a.set_diff(i, v).map_err(|e| line.error(1, e.to_string()))?;
    }
    if let Some((h, line)) = curvature {
        a.set_curvature(h).map_err(|e| line.error(1, e.to_string()))?;
    }
    validate_algebra(&a).into_result()?;
    let algebra = a.into_ref();

    let mut modules = BTreeMap::new();
    for (head, body) in blocks {
        let name = head.words()[1].1.to_string();
        if modules.contains_key(&name) {
            return Err(head.error(8, format!("duplicate module `{name}`")));
        }
        let m = parse_module(algebra.clone(), &labels, &body)?;
        validate_module(&m).into_result()?;
        modules.insert(name, m);
    }
    Ok(AlgebraFile { algebra, modules })
}

fn parse_module(algebra: AlgebraRef, alabels: &[String], body: &[&Line]) -> Result<TableModule> {
    let field = algebra.field();
    let mut basis = Vec::new();
    for line in body {
        let words = line.words();
        if words[0].1 == "mbasis" {
            basis.push(parse_basis(line, &words)?);
        }
    }
    let mlabels: Vec<String> = basis.iter().map(|(l, _)| l.clone()).collect();
    let mut m = TableModule::new(algebra, basis);
    for line in body {
        let words = line.words();
        match words[0].1 {
            "mbasis" => {}
            "act" => {
                let (&(ca, a), &(cx, x)) = match (words.get(1), words.get(2)) {
                    (Some(a), Some(b)) => (a, b),
                    _ => return Err(line.error(1, "expected `act <a> <x> = ...`")),
                };
                let a = resolve(alabels, a, line, ca, "algebra basis element")?;
                let x = resolve(&mlabels, x, line, cx, "module basis element")?;
                let (c, rhs) = line.rhs()?;
                m.set_action(a, x, parse_expr(field, &mlabels, rhs, c, line)?)?;
            }
            "mdiff" => {
                let &(cx, x) = words
                    .get(1)
                    .ok_or_else(|| line.error(1, "expected `mdiff <x> = ...`"))?;
                let x = resolve(&mlabels, x, line, cx, "module basis element")?;
                let (c, rhs) = line.rhs()?;
                m.set_diff(x, parse_expr(field, &mlabels, rhs, c, line)?)?;
            }
            other => return Err(line.error(1, format!("unknown module directive `{other}`"))),
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use kmdual_core::module::Module;

    const Q: Field = Field::Rational;

    #[test]
    fn dual_numbers_file() {
        let text = "# k[x]/x^2\nfield Q\nbasis 1 0\nbasis x 0\nunit 1\nmul 1 1 = 1\nmul 1 x = x\nmul x 1 = x\n\nmodule k\n  mbasis v 0\nend\n";
        let f = parse_algebra_file(text, Q, None).unwrap();
        assert_eq!(f.algebra.dim(), 2);
        assert_eq!(f.modules["k"].dim(), 1);
    }

    #[test]
    fn expressions() {
        let labels: Vec<String> = ["1", "x", "y_z"].iter().map(|s| s.to_string()).collect();
        let line = Line { number: 3, text: "" };
        let v = parse_expr(Q, &labels, " 2*x - 1/2*1 + y_z", 1, &line).unwrap();
        assert_eq!(v.get(1), Some(&Q.from_i64(2)));
        assert_eq!(v.get(0), Some(&Q.ratio(-1, 2)));
        assert_eq!(v.get(2), Some(&Q.one()));
        assert!(parse_expr(Q, &labels, "0", 1, &line).unwrap().is_zero());
        assert!(parse_expr(Q, &labels, "-3*x", 1, &line).unwrap().get(1) == Some(&Q.from_i64(-3)));
    }

    #[test]
    fn errors_carry_positions() {
        let text = "field Q\nbasis 1 0\nunit 1\nmul 1 q = 1\n";
        match parse_algebra_file(text, Q, None) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (4, 7)),
            other => panic!("{:?}", other.err()),
        }
        let text = "field Q\nbasis 1 0\nunit 1\nmul 1 1 = 2*\n";
        assert!(matches!(
            parse_algebra_file(text, Q, None),
            Err(Error::Parse { line: 4, .. })
        ));
        let text = "field Q\nbasis 1 0\nunit 1\nfrobnicate\n";
        assert!(matches!(
            parse_algebra_file(text, Q, None),
            Err(Error::Parse { line: 4, column: 1, .. })
        ));
    }

    #[test]
    fn field_conflict() {
        let text = "field F 5\nbasis 1 0\nunit 1\nmul 1 1 = 1\n";
        assert!(parse_algebra_file(text, Q, Some(Q)).is_err());
        let f = parse_algebra_file(text, Q, None).unwrap();
        assert_eq!(f.algebra.field(), Field::prime(5).unwrap());
    }
}
