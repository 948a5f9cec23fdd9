use std::collections::HashSet;
use std::fmt;

use crate::algebra::GaussRational;

use super::GeometryError;

/// A point of `Q(i)^2`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub u: GaussRational,
    pub v: GaussRational,
}

impl Point {
    pub fn new(u: GaussRational, v: GaussRational) -> Self {
        Point { u, v }
    }

    pub fn integer(u: i64, v: i64) -> Self {
        Point::new(GaussRational::from_integer(u), GaussRational::from_integer(v))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A finite ordered set of planar points. Duplicates are rejected.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PointSet {
    points: Vec<Point>,
    label: String,
}

impl PointSet {
    pub fn new(label: impl Into<String>, points: Vec<Point>) -> Result<Self, GeometryError> {
        let mut seen = HashSet::with_capacity(points.len());
        for (idx, p) in points.iter().enumerate() {
            if !seen.insert(p) {
                return Err(GeometryError::DuplicatePoint { index: idx, point: p.to_string() });
            }
        }
        Ok(PointSet { points, label: label.into() })
    }

    pub fn from_integers(label: impl Into<String>, coords: &[(i64, i64)]) -> Result<Self, GeometryError> {
        PointSet::new(label, coords.iter().map(|&(u, v)| Point::integer(u, v)).collect())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, idx: usize) -> &Point {
        &self.points[idx]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    /// The points at `indices`, in that order.
    pub fn subset(&self, label: impl Into<String>, indices: &[usize]) -> PointSet {
        PointSet {
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
            label: label.into(),
        }
    }

    /// Appends a point, rejecting duplicates.
    pub fn push(&mut self, p: Point) -> Result<(), GeometryError> {
        if self.points.contains(&p) {
            return Err(GeometryError::DuplicatePoint { index: self.points.len(), point: p.to_string() });
        }
        self.points.push(p);
        Ok(())
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates() {
        let err = PointSet::from_integers("P", &[(0, 1), (0, 2), (0, 1)]).unwrap_err();
        assert!(matches!(err, GeometryError::DuplicatePoint { index: 2, .. }));
        let mut ok = PointSet::from_integers("P", &[(0, 1)]).unwrap();
        assert!(ok.push(Point::integer(0, 1)).is_err());
        ok.push(Point::integer(1, 1)).unwrap();
        assert_eq!(ok.len(), 2);
    }
}
