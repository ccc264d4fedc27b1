//! Plain-text algebra files.
//!
//! ```text
//! # flat extension of Z_2
//! semiring 3
//! 0 2 2
//! 2 1 2
//! 2 2 2
//! mul
//! 0 1 2
//! 1 0 2
//! 2 2 2
//! names e a 0
//! ```
//!
//! Groups use a `group <m> <identity>` header followed by the `m` table rows, and
//! may also carry a `names` line.

use std::fmt::Write as _;

use crate::algebra::{Elem, FiniteGroup, FiniteSemiring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraFile {
    Semiring(FiniteSemiring),
    Group(FiniteGroup),
}

struct Lines<'a> {
    inner: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let inner = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines { inner, pos: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.inner.get(self.pos).copied();
        self.pos += 1;
        item
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.inner.get(self.pos).copied()
    }

    fn last_line(&self) -> usize {
        self.inner.last().map_or(1, |l| l.0)
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let line = self.last_line();
        self.next().ok_or_else(|| Error::Parse {
            line,
            message: format!("unexpected end of input, expected {what}"),
        })
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_number(line: usize, token: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("expected a number, found `{token}`")))
}

fn parse_table(lines: &mut Lines<'_>, k: usize) -> Result<Vec<Vec<Elem>>> {
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let (line, text) = lines.expect("a table row")?;
        let row = text
            .split_whitespace()
            .map(|t| parse_number(line, t))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != k {
            return Err(parse_err(
                line,
                format!("table row has {} entries, expected {k}", row.len()),
            ));
        }
        rows.push(row);
    }
    Ok(rows)
}

fn parse_names(lines: &mut Lines<'_>) -> Option<(usize, Vec<String>)> {
    let (line, text) = lines.peek()?;
    let mut tokens = text.split_whitespace();
    if tokens.next() != Some("names") {
        return None;
    }
    lines.next();
    Some((line, tokens.map(str::to_string).collect()))
}

fn with_line(line: usize, err: Error) -> Error {
    match err {
        Error::Parse { .. } => err,
        other => parse_err(line, other.to_string()),
    }
}

/// Parses a semiring or group file.
pub fn parse_algebra(text: &str) -> Result<AlgebraFile> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.expect("a `semiring` or `group` header")?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let parsed = match tokens.as_slice() {
        ["semiring", k] => {
            let k = parse_number(line, k)?;
            if k == 0 {
                return Err(parse_err(line, "order must be positive"));
            }
            let add = parse_table(&mut lines, k)?;
            let (mline, marker) = lines.expect("`mul`")?;
            if marker != "mul" {
                return Err(parse_err(
                    mline,
                    format!("expected `mul`, found `{marker}`"),
                ));
            }
            let mul = parse_table(&mut lines, k)?;
            let mut s = FiniteSemiring::new(&add, &mul).map_err(|e| with_line(line, e))?;
            if let Some((nline, names)) = parse_names(&mut lines) {
                s = s.with_names(names).map_err(|e| with_line(nline, e))?;
            }
            AlgebraFile::Semiring(s)
        }
        ["group", m, e] => {
            let m = parse_number(line, m)?;
            let e = parse_number(line, e)?;
            if m == 0 {
                return Err(parse_err(line, "order must be positive"));
            }
            let table = parse_table(&mut lines, m)?;
            let mut g = FiniteGroup::new(&table, e).map_err(|err| with_line(line, err))?;
            if let Some((nline, names)) = parse_names(&mut lines) {
                g = g.with_names(names).map_err(|e| with_line(nline, e))?;
            }
            AlgebraFile::Group(g)
        }
        _ => {
            return Err(parse_err(
                line,
                format!("expected `semiring <k>` or `group <m> <identity>`, found `{header}`"),
            ))
        }
    };
    if let Some((line, extra)) = lines.next() {
        return Err(parse_err(
            line,
            format!("unexpected trailing line `{extra}`"),
        ));
    }
    Ok(parsed)
}

pub fn parse_semiring(text: &str) -> Result<FiniteSemiring> {
    match parse_algebra(text)? {
        AlgebraFile::Semiring(s) => Ok(s),
        AlgebraFile::Group(_) => Err(parse_err(1, "expected a semiring, found a group")),
    }
}

pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    match parse_algebra(text)? {
        AlgebraFile::Group(g) => Ok(g),
        AlgebraFile::Semiring(_) => Err(parse_err(1, "expected a group, found a semiring")),
    }
}

fn write_table(out: &mut String, k: usize, table: &[Elem]) {
    for row in table.chunks(k) {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
}

fn write_names(out: &mut String, names: Option<&[String]>) {
    if let Some(names) = names {
        let _ = writeln!(out, "names {}", names.join(" "));
    }
}

pub fn format_semiring(s: &FiniteSemiring) -> String {
    let mut out = format!("semiring {}\n", s.order());
    write_table(&mut out, s.order(), s.add_table());
    out.push_str("mul\n");
    write_table(&mut out, s.order(), s.mul_table());
    write_names(&mut out, s.names());
    out
}

pub fn format_group(g: &FiniteGroup) -> String {
    let mut out = format!("group {} {}\n", g.order(), g.identity());
    write_table(&mut out, g.order(), g.mul_table());
    write_names(&mut out, g.names());
    out
}

pub fn format_algebra(a: &AlgebraFile) -> String {
    match a {
        AlgebraFile::Semiring(s) => format_semiring(s),
        AlgebraFile::Group(g) => format_group(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FLAT_Z2: &str = "# flat extension of Z_2
semiring 3
0 2 2
2 1 2
2 2 2   # zero row
mul
0 1 2
1 0 2
2 2 2
names e a 0
";

    #[test]
    fn parses_commented_semiring() {
        let s = parse_semiring(FLAT_Z2).unwrap();
        assert_eq!(s.order(), 3);
        assert_eq!(s.add(0, 1), 2);
        assert_eq!(s.mul(1, 1), 0);
        assert_eq!(s.name(1), "a");
        let again = parse_semiring(&format_semiring(&s)).unwrap();
        assert_eq!(again, s);
        assert_eq!(again.names(), s.names());
    }

    #[test]
    fn parses_group() {
        let g = parse_group("group 2 0\n0 1\n1 0\n").unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(parse_group(&format_group(&g)).unwrap(), g);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_semiring("semiring 2\n0 1\n1 1\nmul\n0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        let err = parse_semiring("semiring 2\n0 1\n1 x\nmul\n0 0\n0 1\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                message: "expected a number, found `x`".into()
            }
        );
        let err = parse_semiring("semiring 2\n0 1\n1 5\nmul\n0 0\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert!(parse_algebra("monoid 3").is_err());
        assert!(parse_algebra("group 2 0\n0 1\n1 1\n").is_err());
    }
}
