//! Simplicial decompositions of `conv B` using only points of `B` as
//! vertices, built by induction on `|B|`.
//!
//! At each step the lexicographically largest vertex `b` of the current set
//! is removed and the rest is decomposed. If the rest keeps the full
//! intrinsic dimension, every boundary facet strictly visible from `b` is
//! coned with `b`; otherwise the rest lies in a hyperplane and every simplex
//! of its decomposition is coned with `b`. The resulting simplices meet in
//! common faces, contain no other points of `B`, and are ordered so that
//! each one shares a facet with an earlier one.

mod verify;
mod volume;

use std::collections::HashMap;

use num_rational::Ratio;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{
    conv_contains_rational, is_affinely_independent, rational_affine_dim, rational_points, vertex_positions_rational,
    AffineChart, Hyperplane, Side,
};
use crate::point::{coord_to_number, number_to_coord, LatticePoint, PointSet};
use crate::scalar::Coord;

pub use verify::{AdjacencyReport, CoverReport, DecompositionCheck, PropertyBReport, RegularPositionReport};
pub use volume::{hull_volume, simplex_volume};

type Q<T> = Ratio<T>;

/// A simplex given by sorted indices into the ground set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    vertices: Vec<usize>,
}

impl Simplex {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of shared vertex indices.
    pub fn shared(&self, other: &Simplex) -> Vec<usize> {
        self.vertices.iter().copied().filter(|v| other.vertices.binary_search(v).is_ok()).collect()
    }
}

/// A codimension-one face of a simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertex_indices: Vec<usize>,
    pub owner: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition<T: Coord> {
    ground: PointSet<T>,
    simplices: Vec<Simplex>,
    /// Pairs `(i, j)`, `i < j`, of simplices sharing a facet.
    adjacency: Vec<(usize, usize)>,
}

impl<T: Coord> Decomposition<T> {
    /// Validate a list of simplices over `ground` and compute adjacency.
    ///
    /// Every simplex must have `r + 1` affinely independent vertices, where
    /// `r` is the intrinsic dimension of `ground`, and simplices must be
    /// pairwise distinct. Covering and regular position are not checked here;
    /// see the `verify_*` methods.
    pub fn new(ground: PointSet<T>, simplices: Vec<Vec<usize>>) -> Result<Self> {
        ground.require_nonempty()?;
        if simplices.is_empty() {
            return Err(Error::InvalidDecomposition("no simplices".into()));
        }
        let pts = rational_points(&ground);
        let r = rational_affine_dim(&pts);
        let mut out: Vec<Simplex> = Vec::with_capacity(simplices.len());
        for (si, mut s) in simplices.into_iter().enumerate() {
            s.sort_unstable();
            s.dedup();
            if let Some(&bad) = s.iter().find(|&&i| i >= ground.len()) {
                return Err(Error::InvalidDecomposition(format!("simplex {si} references missing point {bad}")));
            }
            if s.len() != r + 1 {
                return Err(Error::InvalidDecomposition(format!("simplex {si} has {} vertices, expected {}", s.len(), r + 1)));
            }
            let verts: Vec<_> = s.iter().map(|&i| pts[i].clone()).collect();
            if !is_affinely_independent(&verts) {
                return Err(Error::InvalidDecomposition(format!("simplex {si} is degenerate")));
            }
            let simplex = Simplex { vertices: s };
            if let Some(dup) = out.iter().position(|t| *t == simplex) {
                return Err(Error::InvalidDecomposition(format!("simplices {dup} and {si} coincide")));
            }
            out.push(simplex);
        }
        let mut adjacency = Vec::new();
        for i in 0..out.len() {
            for j in i + 1..out.len() {
                if r > 0 && out[i].shared(&out[j]).len() == r {
                    adjacency.push((i, j));
                }
            }
        }
        Ok(Self { ground, simplices: out, adjacency })
    }

    pub fn ground(&self) -> &PointSet<T> {
        &self.ground
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn adjacency(&self) -> &[(usize, usize)] {
        &self.adjacency
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Intrinsic dimension of every simplex.
    pub fn dim(&self) -> usize {
        self.simplices[0].vertices.len() - 1
    }

    /// Vertex set `B_i` of simplex `i`.
    pub fn vertex_points(&self, i: usize) -> PointSet<T> {
        self.ground.select(&self.simplices[i].vertices)
    }

    pub(crate) fn chart(&self) -> AffineChart<T> {
        AffineChart::of_points(&self.ground)
    }

    /// Ground points in chart coordinates.
    pub(crate) fn local_points(&self) -> (AffineChart<T>, Vec<Vec<Q<T>>>) {
        let chart = self.chart();
        let local = rational_points(&self.ground).iter().map(|p| chart.project(p)).collect();
        (chart, local)
    }

    /// Whether `q` lies in simplex `i`, with its barycentric coefficients
    /// (ordered as the simplex vertices) when it does.
    pub fn locate_in(&self, i: usize, q: &LatticePoint<T>) -> Option<Vec<Q<T>>> {
        let (chart, local) = self.local_points();
        let qr = q.to_rational();
        if q.dim() != self.ground.dim() || !chart.contains(&qr) {
            return None;
        }
        simplex_coords(&local, &self.simplices[i], &chart.project(&qr))
    }

    /// Boundary facets strictly visible from an exterior apex `b`.
    pub fn visible_boundary_faces(&self, b: &LatticePoint<T>) -> Result<Vec<Face>> {
        self.ground.check_dim(b.dim())?;
        let (chart, local) = self.local_points();
        let br = b.to_rational();
        if !chart.contains(&br) {
            return Err(Error::ApexOffHull);
        }
        if conv_contains_rational(&rational_points(&self.ground), &br) {
            return Err(Error::ApexNotExterior);
        }
        let lists: Vec<Vec<usize>> = self.simplices.iter().map(|s| s.vertices.clone()).collect();
        Ok(visible_faces(&local, &lists, &chart.project(&br)))
    }

    /// Serialize as `{"ground": [...], "simplices": [...], "adjacency": [...]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decomposition serializes")
    }
}

/// Barycentric coefficients of `q` (chart coordinates) in `s`, if inside.
pub(crate) fn simplex_coords<T: Coord>(local: &[Vec<Q<T>>], s: &Simplex, q: &[Q<T>]) -> Option<Vec<Q<T>>> {
    let verts: Vec<_> = s.vertices.iter().map(|&i| local[i].clone()).collect();
    crate::geometry::affine_coords(&verts, q).filter(|c| c.iter().all(|x| !num_traits::Signed::is_negative(x)))
}

fn visible_faces<T: Coord>(local: &[Vec<Q<T>>], simplices: &[Vec<usize>], apex: &[Q<T>]) -> Vec<Face> {
    let mut incidence: HashMap<Vec<usize>, usize> = HashMap::new();
    for s in simplices {
        for j in 0..s.len() {
            let mut f = s.clone();
            f.remove(j);
            *incidence.entry(f).or_default() += 1;
        }
    }
    let mut out = Vec::new();
    for (owner, s) in simplices.iter().enumerate() {
        for j in 0..s.len() {
            let mut facet = s.clone();
            let opposite = facet.remove(j);
            if incidence[&facet] != 1 {
                continue;
            }
            let pts: Vec<_> = facet.iter().map(|&i| local[i].clone()).collect();
            let h = Hyperplane::through(&pts).expect("simplex facet spans a hyperplane");
            let apex_side = h.side_rational(apex);
            if apex_side != Side::Zero && apex_side == h.side_rational(&local[opposite]).flip() {
                out.push(Face { vertex_indices: facet, owner });
            }
        }
    }
    out
}

fn triangulate<T: Coord>(ground: &PointSet<T>, pts: &[Vec<Q<T>>], idx: Vec<usize>) -> Vec<Vec<usize>> {
    let sub: Vec<_> = idx.iter().map(|&i| pts[i].clone()).collect();
    let chart = AffineChart::new(&sub);
    let r = chart.dim();
    if idx.len() == r + 1 {
        return vec![idx];
    }
    let apex = vertex_positions_rational(&sub)
        .into_iter()
        .map(|j| idx[j])
        .max_by(|&a, &b| ground[a].cmp(&ground[b]))
        .expect("a nonempty set has a vertex");
    let rest: Vec<usize> = idx.iter().copied().filter(|&i| i != apex).collect();
    let rest_dim = rational_affine_dim(&rest.iter().map(|&i| pts[i].clone()).collect::<Vec<_>>());
    let inner = triangulate(ground, pts, rest);

    let cone = |mut face: Vec<usize>| {
        face.push(apex);
        face.sort_unstable();
        face
    };
    if rest_dim == r {
        let local: Vec<_> = pts.iter().map(|p| chart.project(p)).collect();
        let added: Vec<_> = visible_faces(&local, &inner, &local[apex]).into_iter().map(|f| cone(f.vertex_indices)).collect();
        let mut out = inner;
        out.extend(added);
        out
    } else {
        inner.into_iter().map(cone).collect()
    }
}

/// Decompose `conv B` into simplices spanned by points of `B`.
pub fn decompose<T: Coord>(b: &PointSet<T>) -> Result<Decomposition<T>> {
    if b.len() < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: b.len() });
    }
    let pts = rational_points(b);
    let simplices = triangulate(b, &pts, (0..b.len()).collect());
    Decomposition::new(b.clone(), simplices)
}

#[derive(Serialize, Deserialize)]
struct DecompositionFile {
    ground: Vec<Vec<serde_json::Number>>,
    simplices: Vec<Vec<usize>>,
    adjacency: Vec<[usize; 2]>,
}

impl<T: Coord> Serialize for Decomposition<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DecompositionFile {
            ground: self.ground.iter().map(|p| p.coords().iter().map(coord_to_number).collect()).collect(),
            simplices: self.simplices.iter().map(|s| s.vertices.clone()).collect(),
            adjacency: self.adjacency.iter().map(|&(i, j)| [i, j]).collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: Coord> Deserialize<'de> for Decomposition<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = DecompositionFile::deserialize(d)?;
        let dim = file.ground.first().map_or(0, Vec::len);
        let mut pts = Vec::with_capacity(file.ground.len());
        for row in &file.ground {
            let coords = row.iter().map(number_to_coord).collect::<Result<Vec<T>>>().map_err(D::Error::custom)?;
            pts.push(LatticePoint::new(coords));
        }
        let ground = PointSet::new(dim, pts).map_err(D::Error::custom)?;
        let dec = Decomposition::new(ground, file.simplices).map_err(D::Error::custom)?;
        let adjacency: Vec<(usize, usize)> = file.adjacency.iter().map(|&[i, j]| (i.min(j), i.max(j))).collect();
        let mut sorted = adjacency.clone();
        sorted.sort_unstable();
        if sorted != dec.adjacency {
            return Err(D::Error::custom("adjacency does not match shared facets"));
        }
        Ok(dec)
    }
}
