//! Plain-text formats for racks, groups and quandle presentations.
//!
//! Every format is line based, `#` starts a comment and blank lines are
//! ignored. Errors carry the 1-based line number of the offending line.

use crate::error::{Error, Result};
use crate::group::{FinGroup, Mat2};
use crate::marks::{PresentedQuandle, Relation, RelationKind};
use crate::rack::RackTable;

/// Non-empty lines with comments stripped, paired with their line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_ints<T: std::str::FromStr>(line: usize, s: &str) -> Result<Vec<T>> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<T>()
                .map_err(|_| parse_err(line, format!("expected an integer, found {t:?}")))
        })
        .collect()
}

fn header(line: usize, s: &str, keyword: &str) -> Result<usize> {
    let mut parts = s.split_whitespace();
    if parts.next() != Some(keyword) {
        return Err(parse_err(line, format!("expected `{keyword} <n>`")));
    }
    let n = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(line, format!("expected `{keyword} <n>`")))?;
    if parts.next().is_some() {
        return Err(parse_err(line, "trailing tokens after header"));
    }
    Ok(n)
}

/// Reads `n` rows of `n` integers following a header.
fn read_square<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    n: usize,
    header_line: usize,
) -> Result<(Vec<Vec<usize>>, usize)> {
    let mut rows = Vec::with_capacity(n);
    let mut last = header_line;
    for _ in 0..n {
        let (ln, s) = lines
            .next()
            .ok_or_else(|| parse_err(last + 1, format!("expected {n} rows")))?;
        let row: Vec<usize> = parse_ints(ln, s)?;
        if row.len() != n {
            return Err(parse_err(
                ln,
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        rows.push(row);
        last = ln;
    }
    Ok((rows, last))
}

/// Parses exactly one rack.
pub fn parse_rack(text: &str) -> Result<RackTable> {
    let mut racks = parse_racks(text)?;
    match racks.len() {
        1 => Ok(racks.pop().unwrap()),
        0 => Err(parse_err(1, "no rack found")),
        _ => Err(parse_err(1, "more than one rack in file")),
    }
}

/// Parses a concatenation of rack blocks.
pub fn parse_racks(text: &str) -> Result<Vec<RackTable>> {
    let mut lines = content_lines(text);
    let mut out = Vec::new();
    while let Some((ln, s)) = lines.next() {
        let n = header(ln, s, "rack")?;
        let (rows, last) = read_square(&mut lines, n, ln)?;
        let rack = RackTable::from_rows(&rows).map_err(|e| match e {
            Error::InvalidRack(v) => parse_err(last, format!("invalid rack ending here: {v}")),
            other => other,
        })?;
        out.push(rack);
    }
    Ok(out)
}

pub fn format_rack(rack: &RackTable) -> String {
    let mut s = format!("rack {}\n", rack.order());
    for a in 0..rack.order() {
        let row: Vec<String> = rack.row(a).iter().map(|x| x.to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Parses a group file: either `group <n>` with a Cayley table, or
/// `sl2 <p>` with one generator matrix (4 integers) per line.
pub fn parse_group(text: &str) -> Result<FinGroup> {
    let mut lines = content_lines(text);
    let (ln, s) = lines.next().ok_or_else(|| parse_err(1, "empty group file"))?;
    if s.starts_with("sl2") {
        let p = header(ln, s, "sl2")? as u64;
        let mut gens: Vec<Mat2> = Vec::new();
        for (ln, s) in lines {
            let v: Vec<i64> = parse_ints(ln, s)?;
            if v.len() != 4 {
                return Err(parse_err(ln, "expected 4 matrix entries"));
            }
            let reduce = |x: i64| x.rem_euclid(p.max(1) as i64) as u64;
            gens.push([reduce(v[0]), reduce(v[1]), reduce(v[2]), reduce(v[3])]);
        }
        return FinGroup::from_matrices(p, &gens);
    }
    let n = header(ln, s, "group")?;
    let (rows, last) = read_square(&mut lines, n, ln)?;
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "unexpected content after Cayley table"));
    }
    FinGroup::from_cayley(rows).map_err(|e| parse_err(last, e.to_string()))
}

pub fn format_group(group: &FinGroup) -> String {
    let mut s = format!("group {}\n", group.order());
    for row in group.cayley() {
        let row: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Parses `qpres <k>` followed by relations `i rd j = m` or `i rdinv j = m`.
pub fn parse_presentation(text: &str) -> Result<PresentedQuandle> {
    let mut lines = content_lines(text);
    let (ln, s) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty presentation file"))?;
    let k = header(ln, s, "qpres")?;
    let mut relations = Vec::new();
    for (ln, s) in lines {
        let t: Vec<&str> = s.split_whitespace().collect();
        if t.len() != 5 || t[3] != "=" {
            return Err(parse_err(ln, "expected `i rd j = m` or `i rdinv j = m`"));
        }
        let kind = match t[1] {
            "rd" => RelationKind::Apply,
            "rdinv" => RelationKind::Unapply,
            other => return Err(parse_err(ln, format!("unknown operation {other:?}"))),
        };
        let idx = |tok: &str| -> Result<usize> {
            let v: usize = tok
                .parse()
                .map_err(|_| parse_err(ln, format!("expected an index, found {tok:?}")))?;
            if v >= k {
                return Err(parse_err(ln, format!("generator {v} out of range for {k}")));
            }
            Ok(v)
        };
        relations.push(Relation {
            kind,
            i: idx(t[0])?,
            j: idx(t[2])?,
            m: idx(t[4])?,
        });
    }
    PresentedQuandle::new(k, relations)
}

pub fn format_presentation(p: &PresentedQuandle) -> String {
    let mut s = format!("qpres {}\n", p.generators());
    for r in p.relations() {
        let op = match r.kind {
            RelationKind::Apply => "rd",
            RelationKind::Unapply => "rdinv",
        };
        s.push_str(&format!("{} {op} {} = {}\n", r.i, r.j, r.m));
    }
    s
}
