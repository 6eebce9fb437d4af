//! Node files: a `# field: rational|eisenstein|float` header, then one
//! comma-separated point with five coordinates per line. Further `#` lines
//! are comments.

use super::field::{FieldElement, FieldMode};
use super::NodalError;

pub type Point = [FieldElement; 5];

fn parse_header(text: &str) -> Result<FieldMode, NodalError> {
    let (line_no, line) = text
        .lines()
        .enumerate()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| NodalError::parse(1, 0, "empty node file"))?;
    let value = line
        .trim()
        .strip_prefix('#')
        .map(str::trim)
        .and_then(|rest| rest.strip_prefix("field:"))
        .ok_or_else(|| NodalError::parse(line_no + 1, 0, "missing `# field: ...` header"))?;
    value.parse().map_err(|m: String| NodalError::parse(line_no + 1, 0, m))
}

/// Parses a node file into its field and points.
pub fn parse_nodes(text: &str) -> Result<(FieldMode, Vec<Point>), NodalError> {
    let mode = parse_header(text)?;
    let mut points = Vec::new();
    // Lines are fed to the csv reader one at a time so reported line numbers
    // count comment and blank lines too.
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(trimmed.as_bytes());
        let mut rec = csv::StringRecord::new();
        rdr.read_record(&mut rec).map_err(|e| NodalError::parse(line, 0, e.to_string()))?;
        if rec.len() != 5 {
            return Err(NodalError::parse(line, 0, format!("expected 5 coordinates, found {}", rec.len())));
        }
        let mut coords = Vec::with_capacity(5);
        for (i, field) in rec.iter().enumerate() {
            let v = FieldElement::parse(mode, field).map_err(|m| NodalError::parse(line, i + 1, m))?;
            coords.push(v);
        }
        points.push(coords.try_into().expect("five coordinates"));
    }
    Ok((mode, points))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_points() {
        let (mode, pts) = parse_nodes("# field: eisenstein\n# comment\n1, w, -1-w, 0, 1/2\n\n0,0,0,0,1\n").unwrap();
        assert_eq!(mode, FieldMode::Eisenstein);
        assert_eq!(pts.len(), 2);
        assert!(pts[1][0].is_zero());
    }

    #[test]
    fn header_is_mandatory() {
        assert!(matches!(parse_nodes("1,0,0,0,0\n"), Err(NodalError::Parse { line: 1, .. })));
        assert!(parse_nodes("# field: padic\n1,0,0,0,0\n").is_err());
        assert!(parse_nodes("").is_err());
    }

    #[test]
    fn errors_carry_line_and_field() {
        let e = parse_nodes("# field: rational\n1,0,0,0,0\n1,2,x,0,0\n").unwrap_err();
        assert_eq!(e, NodalError::parse(3, 3, "`x` is not an integer or p/q"));
        let e = parse_nodes("# field: rational\n1,0,0,0\n").unwrap_err();
        assert!(matches!(e, NodalError::Parse { line: 2, field: 0, .. }), "{e:?}");
        let e = parse_nodes("# field: rational\n1,0,0,0,w\n").unwrap_err();
        assert!(matches!(e, NodalError::Parse { line: 2, field: 5, .. }), "{e:?}");
    }
}
