//! `gpg 1` text format:
//!
//! ```text
//! gpg 1
//! points <P>
//! lines <L>
//! 0: <p> <p> ...
//! ...
//! ```
//!
//! One record per line, indices 0-based and ascending within a record, `#`
//! starts a comment. Writing then reading gives back the same geometry.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::geometry::{Geometry, GeometryError};

#[derive(Debug, Error)]
pub enum GpgError {
    #[error("io error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line_no}: {message}")]
    Malformed { line_no: usize, message: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn malformed(line_no: usize, message: impl Into<String>) -> GpgError {
    GpgError::Malformed { line_no, message: message.into() }
}

pub fn to_gpg_string(g: &Geometry) -> String {
    let mut out = String::new();
    out.push_str("gpg 1\n");
    let _ = writeln!(out, "points {}", g.num_points());
    let _ = writeln!(out, "lines {}", g.num_lines());
    for (l, pts) in g.lines().iter().enumerate() {
        let mut sorted = pts.clone();
        sorted.sort_unstable();
        let _ = write!(out, "{l}:");
        for p in sorted {
            let _ = write!(out, " {p}");
        }
        out.push('\n');
    }
    out
}

fn header_value(line: Option<(usize, &str)>, key: &str) -> Result<usize, GpgError> {
    let (no, text) = line.ok_or_else(|| malformed(0, format!("missing `{key}` header")))?;
    let mut parts = text.split_whitespace();
    if parts.next() != Some(key) {
        return Err(malformed(no, format!("expected `{key} <count>`")));
    }
    let value = parts
        .next()
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| malformed(no, format!("bad `{key}` count")))?;
    if parts.next().is_some() {
        return Err(malformed(no, "trailing tokens in header"));
    }
    Ok(value)
}

pub fn parse_gpg(text: &str) -> Result<Geometry, GpgError> {
    let mut content = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match content.next() {
        Some((_, "gpg 1")) => {}
        Some((no, other)) => return Err(malformed(no, format!("expected `gpg 1`, found `{other}`"))),
        None => return Err(malformed(0, "empty file")),
    }
    let num_points = header_value(content.next(), "points")?;
    let num_lines = header_value(content.next(), "lines")?;

    let mut lines = Vec::with_capacity(num_lines);
    for (no, text) in content {
        let (idx, rest) = text.split_once(':').ok_or_else(|| malformed(no, "expected `<index>: <points>`"))?;
        let idx: usize = idx.trim().parse().map_err(|_| malformed(no, "bad line index"))?;
        if idx != lines.len() {
            return Err(malformed(no, format!("expected line index {}, found {idx}", lines.len())));
        }
        let mut pts = rest
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| malformed(no, format!("bad point index `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        pts.sort_unstable();
        lines.push(pts);
    }
    if lines.len() != num_lines {
        return Err(malformed(0, format!("header declares {num_lines} lines, found {}", lines.len())));
    }
    Ok(Geometry::from_lines(lines, num_points)?)
}

pub fn write_gpg(g: &Geometry, path: &Path) -> Result<(), GpgError> {
    fs::write(path, to_gpg_string(g)).map_err(|source| GpgError::Io { path: path.display().to_string(), source })
}

pub fn read_gpg(path: &Path) -> Result<Geometry, GpgError> {
    let text =
        fs::read_to_string(path).map_err(|source| GpgError::Io { path: path.display().to_string(), source })?;
    let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(parse_gpg(&text)?.with_label(label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{ordinary_ngon, symplectic_quadrangle};

    #[test]
    fn round_trip_is_exact() {
        let w2 = symplectic_quadrangle(2).unwrap();
        let text = to_gpg_string(&w2);
        let back = parse_gpg(&text).unwrap();
        assert_eq!(back, w2);
        assert_eq!(to_gpg_string(&back), text);
    }

    #[test]
    fn format_layout() {
        let text = to_gpg_string(&ordinary_ngon(4).unwrap());
        assert_eq!(text, "gpg 1\npoints 4\nlines 4\n0: 0 1\n1: 1 2\n2: 2 3\n3: 0 3\n");
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_gpg("# a triangle\ngpg 1\n\npoints 3 # three\nlines 3\n0: 0 1\n1: 1 2\n2: 0 2 # last\n").unwrap();
        assert_eq!(g.num_lines(), 3);
    }

    #[test]
    fn rejects_bad_input() {
        let err = parse_gpg("gpg 1\npoints 3\nlines 1\n0: 0 5\n").unwrap_err();
        assert!(matches!(err, GpgError::Geometry(GeometryError::PointOutOfRange { point: 5, .. })));
        assert!(matches!(parse_gpg("gpg 2\n"), Err(GpgError::Malformed { line_no: 1, .. })));
        assert!(matches!(parse_gpg("gpg 1\npoints x\n"), Err(GpgError::Malformed { line_no: 2, .. })));
        assert!(matches!(
            parse_gpg("gpg 1\npoints 2\nlines 1\n0: 0 1 1\n"),
            Err(GpgError::Geometry(GeometryError::DuplicatePoint { .. }))
        ));
        assert!(matches!(parse_gpg("gpg 1\npoints 2\nlines 2\n0: 0 1\n"), Err(GpgError::Malformed { .. })));
        assert!(matches!(parse_gpg("gpg 1\npoints 2\nlines 1\n1: 0 1\n"), Err(GpgError::Malformed { line_no: 4, .. })));
    }
}
