//! OFF meshes and plain-text field files.
//!
//! OFF is written as `OFF`, `V F 0`, `V` coordinate lines, then `F` lines of
//! the form `3 i j k`. On read, `#` comments and blank lines are skipped.
//! Field files hold one value per line, either an integer or `p/q`.

use std::fmt::Write as _;

use super::surface::TriangleSoup;
use crate::error::ParseError;
use crate::field::ScalarField;
use crate::rational;

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

/// Content lines with their 1-based line numbers, comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub fn parse_off(text: &str) -> Result<TriangleSoup, ParseError> {
    let mut lines = content_lines(text);
    let last_line = text.lines().count().max(1);
    match lines.next() {
        Some((_, "OFF")) => {}
        Some((n, other)) => return Err(syntax(n, format!("expected OFF header, found {other:?}"))),
        None => return Err(syntax(1, "empty file")),
    }
    let (n, counts) = lines.next().ok_or_else(|| syntax(last_line, "missing counts line"))?;
    let counts: Vec<usize> = counts
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| syntax(n, format!("bad count {t:?}"))))
        .collect::<Result<_, _>>()?;
    if counts.len() != 3 {
        return Err(syntax(n, "counts line must be `V F E`"));
    }
    let (vertex_count, face_count) = (counts[0], counts[1]);

    let mut positions = Vec::with_capacity(vertex_count);
    for _ in 0..vertex_count {
        let (n, line) = lines.next().ok_or_else(|| syntax(last_line, "missing vertex line"))?;
        let coords: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| syntax(n, format!("bad coordinate {t:?}"))))
            .collect::<Result<_, _>>()?;
        if coords.len() != 3 {
            return Err(syntax(n, "vertex line must have three coordinates"));
        }
        positions.push([coords[0], coords[1], coords[2]]);
    }

    let mut triangles = Vec::with_capacity(face_count);
    for _ in 0..face_count {
        let (n, line) = lines.next().ok_or_else(|| syntax(last_line, "missing face line"))?;
        let idx: Vec<u32> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| syntax(n, format!("bad index {t:?}"))))
            .collect::<Result<_, _>>()?;
        if idx.len() != 4 || idx[0] != 3 {
            return Err(syntax(n, "face line must be `3 i j k`"));
        }
        triangles.push([idx[1], idx[2], idx[3]]);
    }
    if let Some((n, _)) = lines.next() {
        return Err(syntax(n, "trailing content after faces"));
    }
    Ok(TriangleSoup::new(positions, triangles))
}

pub fn write_off(soup: &TriangleSoup) -> String {
    let mut out = String::new();
    out.push_str("OFF\n");
    let _ = writeln!(out, "{} {} 0", soup.positions.len(), soup.triangles.len());
    for p in &soup.positions {
        let _ = writeln!(out, "{} {} {}", p[0], p[1], p[2]);
    }
    for t in &soup.triangles {
        let _ = writeln!(out, "3 {} {} {}", t[0], t[1], t[2]);
    }
    out
}

/// Parses a field file. Blank lines are ignored; when `expected` is given the
/// value count must match it.
pub fn parse_field(text: &str, expected: Option<usize>) -> Result<ScalarField, ParseError> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let v = rational::parse(line).map_err(|_| syntax(i + 1, format!("bad value {line:?}")))?;
        values.push(v);
    }
    if let Some(expected) = expected {
        if values.len() != expected {
            return Err(ParseError::FieldLength { expected, found: values.len() });
        }
    }
    Ok(ScalarField::new(values))
}

pub fn write_field(field: &ScalarField) -> String {
    let mut out = String::new();
    for v in field.values() {
        out.push_str(&rational::format(v));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::octahedron;
    use proptest::prelude::*;

    #[test]
    fn octahedron_round_trip() {
        let soup = octahedron().to_soup();
        let text = write_off(&soup);
        assert!(text.starts_with("OFF\n6 8 0\n1 0 0\n"));
        assert_eq!(parse_off(&text).unwrap(), soup);
        assert_eq!(write_off(&parse_off(&text).unwrap()), text);
    }

    #[test]
    fn tolerates_comments_and_blank_lines() {
        let text = "# header\nOFF\n\n3 1 0 # counts\n0 0 0\n1 0 0\n\n0 1 0\n3 0 1 2\n";
        let soup = parse_off(text).unwrap();
        assert_eq!(soup.triangles, vec![[0, 1, 2]]);
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(parse_off("OFFX\n"), Err(ParseError::Syntax { line: 1, .. })));
        assert!(parse_off("OFF\n1 0\n").is_err());
        assert!(parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n4 0 1 2 3\n").is_err());
        assert!(parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n").is_err());
        assert!(parse_off("").is_err());
    }

    #[test]
    fn field_files() {
        let f = parse_field("1\n-3/6\n\n7/1\n", Some(3)).unwrap();
        assert_eq!(write_field(&f), "1\n-1/2\n7\n");
        assert!(matches!(
            parse_field("1\n2\n", Some(3)),
            Err(ParseError::FieldLength { expected: 3, found: 2 })
        ));
        assert!(parse_field("1/0\n", None).is_err());
        assert!(parse_field("abc\n", None).is_err());
    }

    proptest! {
        #[test]
        fn field_round_trip(values in prop::collection::vec((-1000i64..1000, 1i64..50), 0..40)) {
            let field = ScalarField::new(
                values.iter().map(|&(p, q)| crate::Rational::new(p.into(), q.into())).collect(),
            );
            let text = write_field(&field);
            prop_assert_eq!(parse_field(&text, Some(field.len())).unwrap(), field);
        }
    }
}
