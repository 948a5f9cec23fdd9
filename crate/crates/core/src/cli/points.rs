//! Point sets as CSV with header `u,v`; each cell is a constant expression.

use std::collections::HashMap;
use std::path::Path;

use thiserror::Error;

use crate::geometry::{Point, PointSet};

use super::parser::parse_constant;

#[derive(Debug, Error)]
pub enum PointsError {
    #[error("{path}: cannot read: {message}")]
    Io { path: String, message: String },
    #[error("header must be `u,v`, found `{0}`")]
    Header(String),
    #[error("row {row}, column {col}: {message}")]
    Parse { row: usize, col: usize, message: String },
    #[error("row {row} repeats the point of row {first}")]
    DuplicatePoint { row: usize, first: usize },
}

/// Rows are numbered from 1 at the header, matching the line numbers of
/// files without quoted newlines.
pub fn parse_points_csv(label: &str, text: &str) -> Result<PointSet, PointsError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    let header = match records.next() {
        Some(Ok(h)) => h,
        Some(Err(e)) => return Err(PointsError::Parse { row: 1, col: 1, message: e.to_string() }),
        None => return Err(PointsError::Header(String::new())),
    };
    let names: Vec<String> = header.iter().map(|c| c.replace(' ', "")).collect();
    if names != ["u", "v"] {
        return Err(PointsError::Header(names.join(",")));
    }
    let mut points = Vec::new();
    let mut first_row: HashMap<Point, usize> = HashMap::new();
    for (k, rec) in records.enumerate() {
        let row = k + 2;
        let rec = rec.map_err(|e| PointsError::Parse { row, col: 1, message: e.to_string() })?;
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        if rec.len() != 2 {
            return Err(PointsError::Parse { row, col: rec.len().min(3), message: format!("expected 2 cells, found {}", rec.len()) });
        }
        let cell = |col: usize| {
            parse_constant(&rec[col - 1]).map_err(|e| PointsError::Parse { row, col, message: e.to_string() })
        };
        let p = Point::new(cell(1)?, cell(2)?);
        if let Some(&first) = first_row.get(&p) {
            return Err(PointsError::DuplicatePoint { row, first });
        }
        first_row.insert(p.clone(), row);
        points.push(p);
    }
    Ok(PointSet::new(label, points).expect("duplicates already rejected"))
}

pub fn load_points(label: &str, path: &Path) -> Result<PointSet, PointsError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| PointsError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_points_csv(label, &text)
}

pub fn points_to_csv(points: &PointSet) -> String {
    let mut out = String::from("u,v\n");
    for p in points {
        out.push_str(&format!("{},{}\n", p.u, p.v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussRational;

    #[test]
    fn parses_rows() {
        let ps = parse_points_csv("P", "u,v\n0,1\n0,2\n").unwrap();
        assert_eq!(ps.len(), 2);
        let ps = parse_points_csv("P", "u, v\n1/2, 3\n 1/2 + 3/4*i , -i\n").unwrap();
        assert_eq!(ps.get(0), &Point::new(GaussRational::from_fraction(1, 2), GaussRational::from_integer(3)));
        assert_eq!(ps.get(1).v, -GaussRational::i());
        assert_eq!(parse_points_csv("P", &points_to_csv(&ps)).unwrap(), ps);
    }

    #[test]
    fn reports_rows() {
        assert!(matches!(
            parse_points_csv("P", "u,v\n0,1\n2,3\n0,1\n"),
            Err(PointsError::DuplicatePoint { row: 4, first: 2 })
        ));
        assert!(matches!(parse_points_csv("P", "u,v\n0,1\n2,x\n"), Err(PointsError::Parse { row: 3, col: 2, .. })));
        assert!(matches!(parse_points_csv("P", "a,b\n0,1\n"), Err(PointsError::Header(_))));
        assert!(matches!(parse_points_csv("P", "u,v\n1,2,3\n"), Err(PointsError::Parse { row: 2, .. })));
    }
}
