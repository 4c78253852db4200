//! Text formats for point sets and matrices.
//!
//! A point set file starts with the header `q,p,m,ambient_dim,label,count`,
//! followed by one point per line. Coordinates are separated by `;` and each
//! coordinate is written as its comma-separated GF(p) coefficients in
//! ascending degree. An optional `GROUP,k` line is followed by `k` square
//! matrices, one row per line in the same coordinate syntax.
//!
//! A matrix file has header `q,rows,cols` and one row per line.

use std::fmt::Write as _;
use std::path::Path;

use super::{Matrix, PointSet, ProjectivePoint};
use crate::field::SmallField;
use crate::{Error, Result};

fn format_row(f: &SmallField, row: &[u8]) -> String {
    row.iter().map(|&c| f.format(c)).collect::<Vec<_>>().join(";")
}

fn parse_row(f: &SmallField, line: &str, len: usize, lineno: usize) -> Result<Vec<u8>> {
    let parts: Vec<&str> = line.trim().split(';').collect();
    if parts.len() != len {
        return Err(Error::Parse { line: lineno, msg: format!("expected {len} coordinates, found {}", parts.len()) });
    }
    parts
        .iter()
        .map(|s| {
            f.parse(s.trim()).map_err(|e| Error::Parse { line: lineno, msg: e.to_string() })
        })
        .collect()
}

fn parse_usize(s: &str, what: &str, lineno: usize) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::Parse { line: lineno, msg: format!("bad {what} {s:?}") })
}

fn field_from_header(q: &str, p: &str, m: &str, lineno: usize) -> Result<std::sync::Arc<SmallField>> {
    let q: u64 = parse_usize(q, "q", lineno)? as u64;
    let f = SmallField::new(q).map_err(|e| Error::Parse { line: lineno, msg: e.to_string() })?;
    let p = parse_usize(p, "p", lineno)? as u64;
    let m = parse_usize(m, "m", lineno)? as u32;
    if f.characteristic() != p || f.degree() != m {
        return Err(Error::Parse { line: lineno, msg: format!("q={q} is not {p}^{m}") });
    }
    Ok(f)
}

pub fn write_point_set(set: &PointSet) -> String {
    let f = set.field();
    let mut out = String::new();
    let label = set.label().replace([',', '\n'], "_");
    let _ = writeln!(
        out,
        "{},{},{},{},{},{}",
        f.q(),
        f.characteristic(),
        f.degree(),
        set.ambient_dim(),
        label,
        set.len()
    );
    for p in set.points() {
        let _ = writeln!(out, "{}", format_row(f, p.coords()));
    }
    if !set.generators().is_empty() {
        let _ = writeln!(out, "GROUP,{}", set.generators().len());
        for g in set.generators() {
            for r in 0..g.rows() {
                let _ = writeln!(out, "{}", format_row(f, g.row(r)));
            }
        }
    }
    out
}

pub fn read_point_set(text: &str) -> Result<PointSet> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.trim().is_empty());
    let (ln, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty file".into() })?;
    let h: Vec<&str> = header.split(',').collect();
    if h.len() != 6 {
        return Err(Error::Parse { line: ln, msg: "header must be q,p,m,ambient_dim,label,count".into() });
    }
    let f = field_from_header(h[0], h[1], h[2], ln)?;
    let n = parse_usize(h[3], "ambient_dim", ln)?;
    let label = h[4].trim().to_string();
    let count = parse_usize(h[5], "count", ln)?;
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let (ln, line) = lines.next().ok_or(Error::Parse { line: ln, msg: "missing points".into() })?;
        let v = parse_row(&f, line, n + 1, ln)?;
        points.push(ProjectivePoint::new(&f, v).map_err(|e| Error::Parse { line: ln, msg: e.to_string() })?);
    }
    let mut generators = Vec::new();
    if let Some((ln, line)) = lines.next() {
        let k = match line.trim().split_once(',') {
            Some(("GROUP", k)) => parse_usize(k, "generator count", ln)?,
            _ => return Err(Error::Parse { line: ln, msg: "unexpected content after points".into() }),
        };
        for _ in 0..k {
            let mut rows = Vec::with_capacity(n + 1);
            for _ in 0..=n {
                let (ln, line) = lines.next().ok_or(Error::Parse { line: ln, msg: "truncated GROUP section".into() })?;
                rows.push(parse_row(&f, line, n + 1, ln)?);
            }
            generators.push(Matrix::from_rows(&rows)?);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::Parse { line: ln, msg: "trailing content".into() });
        }
    }
    let set = PointSet::new(f, n, label, points)?;
    if generators.is_empty() {
        Ok(set)
    } else {
        set.with_generators(generators)
    }
}

pub fn write_matrix(f: &SmallField, m: &Matrix) -> String {
    let mut out = format!("{},{},{}\n", f.q(), m.rows(), m.cols());
    for r in 0..m.rows() {
        out.push_str(&format_row(f, m.row(r)));
        out.push('\n');
    }
    out
}

pub fn read_matrix(text: &str) -> Result<(std::sync::Arc<SmallField>, Matrix)> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.trim().is_empty());
    let (ln, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty file".into() })?;
    let h: Vec<&str> = header.split(',').collect();
    if h.len() != 3 {
        return Err(Error::Parse { line: ln, msg: "header must be q,rows,cols".into() });
    }
    let q = parse_usize(h[0], "q", ln)? as u64;
    let f = SmallField::new(q).map_err(|e| Error::Parse { line: ln, msg: e.to_string() })?;
    let rows = parse_usize(h[1], "rows", ln)?;
    let cols = parse_usize(h[2], "cols", ln)?;
    let mut data = Vec::with_capacity(rows);
    for _ in 0..rows {
        let (ln, line) = lines.next().ok_or(Error::Parse { line: ln, msg: "missing rows".into() })?;
        data.push(parse_row(&f, line, cols, ln)?);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::Parse { line: ln, msg: "trailing content".into() });
    }
    let m = if rows == 0 { Matrix::zeros(0, cols) } else { Matrix::from_rows(&data)? };
    Ok((f, m))
}

pub fn save(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}

pub fn load(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}
