//! Lattice points and duplicate-free point sets.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Index};

use num_rational::Ratio;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{ratio, Coord};

/// An integer coordinate vector. Ordering is lexicographic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticePoint<T>(Vec<T>);

impl<T: Coord> LatticePoint<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Self(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| T::from_i64(c).expect("i64 fits")).collect())
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn to_rational(&self) -> Vec<Ratio<T>> {
        self.0.iter().map(ratio).collect()
    }

    pub fn translate(&self, by: &[T]) -> Self {
        Self(self.0.iter().zip(by).map(|(a, b)| a.clone() + b.clone()).collect())
    }

    pub fn into_coords(self) -> Vec<T> {
        self.0
    }
}

impl<T: Coord> Add for &LatticePoint<T> {
    type Output = LatticePoint<T>;

    fn add(self, rhs: &LatticePoint<T>) -> LatticePoint<T> {
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }
}

impl<T: Coord> fmt::Display for LatticePoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An ordered, duplicate-free list of points of a common dimension.
///
/// The empty set is representable (partition cells may be empty), but
/// most operations reject it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PointSet<T> {
    dim: usize,
    points: Vec<LatticePoint<T>>,
}

impl<T: Coord> PointSet<T> {
    pub fn new(dim: usize, points: Vec<LatticePoint<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut seen = HashSet::with_capacity(points.len());
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
            }
            if !seen.insert(p) {
                return Err(Error::DuplicatePoint(p.to_string()));
            }
        }
        Ok(Self { dim, points })
    }

    /// Build from small integer literals. Panics on invalid input; meant for
    /// fixtures and tests.
    pub fn from_i64<R: AsRef<[i64]>>(dim: usize, rows: &[R]) -> Self {
        let pts = rows.iter().map(|r| LatticePoint::from_i64(r.as_ref())).collect();
        Self::new(dim, pts).expect("valid point set literal")
    }

    /// Construct from points known to be distinct with matching dimension.
    pub(crate) fn from_distinct(dim: usize, points: Vec<LatticePoint<T>>) -> Self {
        debug_assert!(points.iter().all(|p| p.dim() == dim));
        Self { dim, points }
    }

    pub fn empty(dim: usize) -> Self {
        Self { dim, points: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[LatticePoint<T>] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LatticePoint<T>> {
        self.points.iter()
    }

    pub fn contains(&self, p: &LatticePoint<T>) -> bool {
        self.points.contains(p)
    }

    pub fn position(&self, p: &LatticePoint<T>) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    /// Copy with points in lexicographic order.
    pub fn sorted(&self) -> Self {
        let mut points = self.points.clone();
        points.sort();
        Self { dim: self.dim, points }
    }

    /// Points at the given indices, in that order.
    pub fn select(&self, indices: &[usize]) -> Self {
        Self { dim: self.dim, points: indices.iter().map(|&i| self.points[i].clone()).collect() }
    }

    pub fn without(&self, index: usize) -> Self {
        let mut points = self.points.clone();
        points.remove(index);
        Self { dim: self.dim, points }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let other: HashSet<_> = other.points.iter().collect();
        Self {
            dim: self.dim,
            points: self.points.iter().filter(|p| other.contains(p)).cloned().collect(),
        }
    }

    pub fn translate(&self, by: &[T]) -> Self {
        Self { dim: self.dim, points: self.points.iter().map(|p| p.translate(by)).collect() }
    }

    pub fn check_dim(&self, other_dim: usize) -> Result<()> {
        if self.dim != other_dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other_dim });
        }
        Ok(())
    }

    pub fn require_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptyPointSet)
        } else {
            Ok(())
        }
    }
}

impl<T> Index<usize> for PointSet<T> {
    type Output = LatticePoint<T>;

    fn index(&self, i: usize) -> &LatticePoint<T> {
        &self.points[i]
    }
}

impl<'a, T> IntoIterator for &'a PointSet<T> {
    type Item = &'a LatticePoint<T>;
    type IntoIter = std::slice::Iter<'a, LatticePoint<T>>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Integer as an exact JSON number.
pub(crate) fn coord_to_number<T: Coord>(x: &T) -> serde_json::Number {
    x.to_string().parse().expect("integers are valid JSON numbers")
}

/// Parse an exact JSON integer; fractions and exponents are rejected.
pub(crate) fn number_to_coord<T: Coord>(n: &serde_json::Number) -> Result<T> {
    let text = n.to_string();
    text.parse::<T>().map_err(|_| Error::Parse(format!("non-integer coordinate {text}")))
}

#[derive(Serialize, Deserialize)]
struct PointSetFile {
    dim: usize,
    points: Vec<Vec<serde_json::Number>>,
}

impl<T: Coord> Serialize for PointSet<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PointSetFile {
            dim: self.dim,
            points: self.points.iter().map(|p| p.coords().iter().map(coord_to_number).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: Coord> Deserialize<'de> for PointSet<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = PointSetFile::deserialize(d)?;
        let mut pts = Vec::with_capacity(file.points.len());
        for row in &file.points {
            let coords = row.iter().map(number_to_coord).collect::<Result<Vec<T>>>().map_err(D::Error::custom)?;
            pts.push(LatticePoint::new(coords));
        }
        PointSet::new(file.dim, pts).map_err(D::Error::custom)
    }
}
