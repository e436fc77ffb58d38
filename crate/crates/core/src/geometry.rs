//! Exact affine geometry on lattice point sets.
//!
//! Every predicate here is decided by exact sign tests over `Ratio<T>`;
//! there is no tolerance anywhere.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dot, kernel_vector, rref, sub};
use crate::lp::find_nonnegative_solution;
use crate::point::{LatticePoint, PointSet};
use crate::scalar::Coord;

type Q<T> = Ratio<T>;

/// An affine bijection from the affine hull of a point set onto `R^r`,
/// given by keeping a set of coordinate axes. The axes are the pivot
/// columns of the reduced difference matrix, so integer points stay integer.
#[derive(Clone, Debug)]
pub struct AffineChart<T: Coord> {
    origin: Vec<Q<T>>,
    basis: Vec<Vec<Q<T>>>,
    pivots: Vec<usize>,
}

impl<T: Coord> AffineChart<T> {
    /// Chart of the affine hull of `points` (must be nonempty).
    pub fn new(points: &[Vec<Q<T>>]) -> Self {
        let origin = points[0].clone();
        let ambient = origin.len();
        let mut basis: Vec<Vec<Q<T>>> = points[1..].iter().map(|p| sub(p, &origin)).collect();
        let pivots = rref(&mut basis, ambient);
        basis.truncate(pivots.len());
        Self { origin, basis, pivots }
    }

    pub fn of_points(points: &PointSet<T>) -> Self {
        Self::new(&rational_points(points))
    }

    /// Intrinsic dimension of the hull.
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.origin.len()
    }

    pub fn project(&self, p: &[Q<T>]) -> Vec<Q<T>> {
        self.pivots.iter().map(|&c| p[c].clone()).collect()
    }

    /// Whether `p` lies in the affine hull.
    pub fn contains(&self, p: &[Q<T>]) -> bool {
        let mut v = sub(p, &self.origin);
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            if v[c].is_zero() {
                continue;
            }
            let f = v[c].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = x.clone() - f.clone() * y.clone();
            }
        }
        v.iter().all(Zero::is_zero)
    }
}

pub(crate) fn rational_points<T: Coord>(p: &PointSet<T>) -> Vec<Vec<Q<T>>> {
    p.iter().map(LatticePoint::to_rational).collect()
}

pub(crate) fn rational_affine_dim<T: Coord>(points: &[Vec<Q<T>>]) -> usize {
    if points.is_empty() {
        return 0;
    }
    AffineChart::new(points).dim()
}

/// Rank of the difference set `{p - p0}`.
pub fn affine_dimension<T: Coord>(p: &PointSet<T>) -> Result<usize> {
    p.require_nonempty()?;
    Ok(rational_affine_dim(&rational_points(p)))
}

/// Whether the set is not contained in any affine hyperplane of its ambient space.
pub fn is_proper<T: Coord>(p: &PointSet<T>) -> bool {
    !p.is_empty() && rational_affine_dim(&rational_points(p)) == p.dim()
}

/// Convex weights `λ ≥ 0, Σλ = 1, Σ λ_i p_i = q`, if any exist.
pub(crate) fn convex_weights<T: Coord>(points: &[Vec<Q<T>>], q: &[Q<T>]) -> Option<Vec<Q<T>>> {
    if points.is_empty() {
        return None;
    }
    let d = q.len();
    let mut a: Vec<Vec<Q<T>>> = (0..d).map(|i| points.iter().map(|p| p[i].clone()).collect()).collect();
    a.push(vec![Q::<T>::one(); points.len()]);
    let mut b = q.to_vec();
    b.push(Q::<T>::one());
    find_nonnegative_solution(&a, &b)
}

pub(crate) fn conv_contains_rational<T: Coord>(points: &[Vec<Q<T>>], q: &[Q<T>]) -> bool {
    convex_weights(points, q).is_some()
}

/// Whether `q` is a convex combination of the points of `p`.
pub fn conv_contains<T: Coord>(p: &PointSet<T>, q: &LatticePoint<T>) -> Result<bool> {
    p.require_nonempty()?;
    p.check_dim(q.dim())?;
    Ok(conv_contains_rational(&rational_points(p), &q.to_rational()))
}

pub(crate) fn vertex_positions_rational<T: Coord>(points: &[Vec<Q<T>>]) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| {
            let rest: Vec<_> = points.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
            !conv_contains_rational(&rest, &points[i])
        })
        .collect()
}

/// Indices of the points of `p` that are not in the hull of the others.
pub fn vertex_indices<T: Coord>(p: &PointSet<T>) -> Result<Vec<usize>> {
    p.require_nonempty()?;
    Ok(vertex_positions_rational(&rational_points(p)))
}

/// The vertices (extremal points) of `p`, in the order of `p`.
pub fn vertex_set<T: Coord>(p: &PointSet<T>) -> Result<PointSet<T>> {
    Ok(p.select(&vertex_indices(p)?))
}

/// Convex coefficients of a point with respect to a simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarycentricCoords<T: Coord> {
    pub coeffs: Vec<Q<T>>,
    /// Indices of the simplex vertices the coefficients refer to.
    pub basis: Vec<usize>,
}

impl<T: Coord> BarycentricCoords<T> {
    /// Positions whose coefficient is nonzero.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| self.basis[i]).collect()
    }
}

/// Affine coordinates of `q` w.r.t. affinely independent `vertices`, if `q`
/// lies in their affine hull. Coefficients sum to one but may be negative.
pub(crate) fn affine_coords<T: Coord>(vertices: &[Vec<Q<T>>], q: &[Q<T>]) -> Option<Vec<Q<T>>> {
    let d = q.len();
    let n = vertices.len();
    // Solve Σ λ_i v_i = q, Σ λ_i = 1 via elimination on the augmented system.
    let mut rows: Vec<Vec<Q<T>>> = (0..d)
        .map(|i| {
            let mut r: Vec<_> = vertices.iter().map(|v| v[i].clone()).collect();
            r.push(q[i].clone());
            r
        })
        .collect();
    let mut ones = vec![Q::<T>::one(); n];
    ones.push(Q::<T>::one());
    rows.push(ones);
    let pivots = rref(&mut rows, n + 1);
    if pivots.contains(&n) {
        return None;
    }
    debug_assert_eq!(pivots.len(), n, "vertices must be affinely independent");
    let mut coeffs = vec![Q::<T>::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        coeffs[c] = rows[r][n].clone();
    }
    Some(coeffs)
}

pub(crate) fn is_affinely_independent<T: Coord>(points: &[Vec<Q<T>>]) -> bool {
    !points.is_empty() && rational_affine_dim(points) + 1 == points.len()
}

/// Barycentric coordinates of `q` in the simplex spanned by `s`, or `None`
/// when `q` is outside it.
pub fn barycentric<T: Coord>(s: &PointSet<T>, q: &LatticePoint<T>) -> Result<Option<BarycentricCoords<T>>> {
    s.require_nonempty()?;
    s.check_dim(q.dim())?;
    let verts = rational_points(s);
    if !is_affinely_independent(&verts) {
        return Err(Error::DegenerateSimplex);
    }
    Ok(affine_coords(&verts, &q.to_rational())
        .filter(|c| c.iter().all(|x| !x.is_negative()))
        .map(|coeffs| BarycentricCoords { coeffs, basis: (0..s.len()).collect() }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Negative,
    Zero,
    Positive,
}

impl Side {
    fn of<T: Coord>(x: &Q<T>) -> Self {
        if x.is_positive() {
            Side::Positive
        } else if x.is_negative() {
            Side::Negative
        } else {
            Side::Zero
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Side::Negative => Side::Positive,
            Side::Zero => Side::Zero,
            Side::Positive => Side::Negative,
        }
    }
}

/// `{x : ⟨normal, x⟩ = offset}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane<T: Coord> {
    normal: Vec<Q<T>>,
    offset: Q<T>,
}

impl<T: Coord> Hyperplane<T> {
    pub fn new(normal: Vec<Q<T>>, offset: Q<T>) -> Result<Self> {
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::InvalidParams("hyperplane normal is the zero vector".into()));
        }
        Ok(Self { normal, offset })
    }

    /// The hyperplane through `d` affinely independent points of `R^d`.
    pub fn through(points: &[Vec<Q<T>>]) -> Option<Self> {
        let d = points.first()?.len();
        if points.len() != d {
            return None;
        }
        let diffs: Vec<_> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
        let normal = kernel_vector(&diffs, d)?;
        let offset = dot(&normal, &points[0]);
        Some(Self { normal, offset })
    }

    pub fn normal(&self) -> &[Q<T>] {
        &self.normal
    }

    pub fn offset(&self) -> &Q<T> {
        &self.offset
    }

    pub fn eval(&self, q: &[Q<T>]) -> Q<T> {
        dot(&self.normal, q) - self.offset.clone()
    }

    pub fn side_rational(&self, q: &[Q<T>]) -> Side {
        Side::of(&self.eval(q))
    }

    /// Sign of `⟨normal, q⟩ − offset`.
    pub fn side_of(&self, q: &LatticePoint<T>) -> Result<Side> {
        if q.dim() != self.normal.len() {
            return Err(Error::DimensionMismatch { expected: self.normal.len(), found: q.dim() });
        }
        Ok(self.side_rational(&q.to_rational()))
    }

    pub fn flipped(&self) -> Self {
        Self { normal: self.normal.iter().map(|x| -x.clone()).collect(), offset: -self.offset.clone() }
    }
}

/// Brute-force facet enumeration relative to the affine hull of `points`.
///
/// Returns, for every facet, the sorted indices of the points lying on it.
/// Requires intrinsic dimension at least 1.
pub(crate) fn facet_index_sets<T: Coord>(points: &[Vec<Q<T>>]) -> Vec<Vec<usize>> {
    let chart = AffineChart::new(points);
    let r = chart.dim();
    assert!(r >= 1, "facets need a set of dimension at least 1");
    let local: Vec<_> = points.iter().map(|p| chart.project(p)).collect();
    let mut out = BTreeSet::new();
    for subset in (0..local.len()).combinations(r) {
        let pts: Vec<_> = subset.iter().map(|&i| local[i].clone()).collect();
        let Some(h) = Hyperplane::through(&pts) else { continue };
        let sides: Vec<Side> = local.iter().map(|p| h.side_rational(p)).collect();
        let pos = sides.contains(&Side::Positive);
        let neg = sides.contains(&Side::Negative);
        if pos && neg {
            continue;
        }
        out.insert(sides.iter().enumerate().filter(|(_, s)| **s == Side::Zero).map(|(i, _)| i).collect::<Vec<_>>());
    }
    out.into_iter().collect()
}

/// H-representation of `conv P` for fast exact membership tests.
#[derive(Clone, Debug)]
pub struct ConvexHull<T: Coord> {
    chart: AffineChart<T>,
    /// Inward-oriented facet hyperplanes in chart coordinates.
    facets: Vec<Hyperplane<T>>,
    single: Option<Vec<Q<T>>>,
}

impl<T: Coord> ConvexHull<T> {
    pub fn new(p: &PointSet<T>) -> Result<Self> {
        p.require_nonempty()?;
        let pts = rational_points(p);
        let chart = AffineChart::new(&pts);
        if chart.dim() == 0 {
            return Ok(Self { chart, facets: Vec::new(), single: Some(pts[0].clone()) });
        }
        let local: Vec<_> = pts.iter().map(|q| chart.project(q)).collect();
        let facets = facet_index_sets(&pts)
            .into_iter()
            .map(|f| {
                let r = chart.dim();
                let on: Vec<_> = f.iter().map(|&i| local[i].clone()).collect();
                let basis = independent_subset(&on, r);
                let h = Hyperplane::through(&basis).expect("facet spans a hyperplane");
                let inside = local.iter().map(|q| h.side_rational(q)).find(|s| *s != Side::Zero).unwrap();
                if inside == Side::Positive {
                    h
                } else {
                    h.flipped()
                }
            })
            .collect();
        Ok(Self { chart, facets, single: None })
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn contains_rational(&self, q: &[Q<T>]) -> bool {
        if let Some(p) = &self.single {
            return p.as_slice() == q;
        }
        if !self.chart.contains(q) {
            return false;
        }
        let local = self.chart.project(q);
        self.facets.iter().all(|h| h.side_rational(&local) != Side::Negative)
    }

    pub fn contains(&self, q: &LatticePoint<T>) -> bool {
        q.dim() == self.chart.ambient_dim() && self.contains_rational(&q.to_rational())
    }
}

/// `count` affinely independent points greedily chosen from `points`.
pub(crate) fn independent_subset<T: Coord>(points: &[Vec<Q<T>>], count: usize) -> Vec<Vec<Q<T>>> {
    let mut chosen: Vec<Vec<Q<T>>> = Vec::with_capacity(count);
    for p in points {
        if chosen.len() == count {
            break;
        }
        chosen.push(p.clone());
        if !is_affinely_independent(&chosen) {
            chosen.pop();
        }
    }
    chosen
}
