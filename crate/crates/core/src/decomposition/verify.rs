//! Certificates for the properties a decomposition must satisfy.

use std::collections::VecDeque;

use itertools::Itertools;
use num_rational::Ratio;
use num_traits::Signed;
use serde::Serialize;

use super::volume::{hull_volume, simplex_volume};
use super::{simplex_coords, Decomposition, Simplex};
use crate::geometry::{conv_contains_rational, rational_affine_dim, Hyperplane, Side};
use crate::linalg::solve_square;
use crate::scalar::Coord;

type Q<T> = Ratio<T>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularPositionReport<T: Coord> {
    pub pass: bool,
    pub offending: Option<(usize, usize)>,
    /// A vertex of `S_i ∩ S_j` outside `conv(B_i ∩ B_j)`, in chart coordinates.
    pub witness: Option<Vec<Q<T>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport<T: Coord> {
    pub pass: bool,
    pub simplex_volume_sum: Q<T>,
    pub hull_volume: Q<T>,
    /// A pair of simplices whose intersection has positive volume.
    pub overlap: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjacencyReport {
    pub pass: bool,
    pub connected: bool,
    pub order_ok: bool,
    /// A valid order when the graph is connected but the stored order is not.
    pub reordering: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyBReport {
    pub pass: bool,
    /// `(simplex, point)` with the point inside the simplex but not a vertex.
    pub violation: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionCheck<T: Coord> {
    pub cover: CoverReport<T>,
    pub regular: RegularPositionReport<T>,
    pub adjacency: AdjacencyReport,
    pub property_b: PropertyBReport,
}

impl<T: Coord> DecompositionCheck<T> {
    pub fn pass(&self) -> bool {
        self.cover.pass && self.regular.pass && self.adjacency.pass && self.property_b.pass
    }
}

/// Inward facet halfspaces `h(x) ≥ 0` of a simplex in chart coordinates.
fn halfspaces<T: Coord>(local: &[Vec<Q<T>>], s: &Simplex) -> Vec<Hyperplane<T>> {
    let v = s.vertices();
    (0..v.len())
        .map(|j| {
            let others: Vec<_> = v.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &i)| local[i].clone()).collect();
            let h = Hyperplane::through(&others).expect("simplex facet spans a hyperplane");
            if h.side_rational(&local[v[j]]) == Side::Positive {
                h
            } else {
                h.flipped()
            }
        })
        .collect()
}

/// Vertices of `{x : h(x) ≥ 0 for all h}` in `R^r`, by solving every
/// `r`-subset of the constraints as equalities.
fn polytope_vertices<T: Coord>(constraints: &[Hyperplane<T>], r: usize) -> Vec<Vec<Q<T>>> {
    let mut out: Vec<Vec<Q<T>>> = Vec::new();
    for subset in (0..constraints.len()).combinations(r) {
        let a: Vec<_> = subset.iter().map(|&i| constraints[i].normal().to_vec()).collect();
        let b: Vec<_> = subset.iter().map(|&i| constraints[i].offset().clone()).collect();
        let Some(x) = solve_square(&a, &b) else { continue };
        if constraints.iter().all(|h| !h.eval(&x).is_negative()) && !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

impl<T: Coord> Decomposition<T> {
    fn intersection_vertices(&self, local: &[Vec<Q<T>>], hs: &[Vec<Hyperplane<T>>], i: usize, j: usize) -> Vec<Vec<Q<T>>> {
        let combined: Vec<_> = hs[i].iter().chain(&hs[j]).cloned().collect();
        let r = self.dim();
        if r == 0 {
            let (a, b) = (self.simplices[i].vertices[0], self.simplices[j].vertices[0]);
            return if local[a] == local[b] { vec![local[a].clone()] } else { Vec::new() };
        }
        polytope_vertices(&combined, r)
    }

    /// Check `S_i ∩ S_j = conv(B_i ∩ B_j)` for every pair by exact vertex
    /// enumeration of the intersection polytope.
    pub fn verify_regular_position(&self) -> RegularPositionReport<T> {
        let (_, local) = self.local_points();
        let hs: Vec<_> = self.simplices.iter().map(|s| halfspaces(&local, s)).collect();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let shared: Vec<_> = self.simplices[i].shared(&self.simplices[j]).iter().map(|&v| local[v].clone()).collect();
                for x in self.intersection_vertices(&local, &hs, i, j) {
                    if !conv_contains_rational(&shared, &x) {
                        return RegularPositionReport { pass: false, offending: Some((i, j)), witness: Some(x) };
                    }
                }
            }
        }
        RegularPositionReport { pass: true, offending: None, witness: None }
    }

    /// Check that simplex volumes add up to the hull volume (computed by an
    /// independent facet-enumeration oracle) and that no two simplices
    /// overlap in positive volume.
    pub fn verify_cover(&self) -> CoverReport<T> {
        let (_, local) = self.local_points();
        let simplex_volume_sum = self
            .simplices
            .iter()
            .map(|s| simplex_volume(&s.vertices().iter().map(|&i| local[i].clone()).collect::<Vec<_>>()))
            .fold(Q::<T>::from_integer(T::zero()), |a, b| a + b);
        let hull = hull_volume(&local);
        let hs: Vec<_> = self.simplices.iter().map(|s| halfspaces(&local, s)).collect();
        let r = self.dim();
        let mut overlap = None;
        'outer: for i in 0..self.len() {
            for j in i + 1..self.len() {
                let verts = self.intersection_vertices(&local, &hs, i, j);
                if !verts.is_empty() && rational_affine_dim(&verts) == r {
                    overlap = Some((i, j));
                    break 'outer;
                }
            }
        }
        CoverReport { pass: overlap.is_none() && simplex_volume_sum == hull, simplex_volume_sum, hull_volume: hull, overlap }
    }

    /// Check that the facet-sharing graph is connected and that each simplex
    /// after the first shares a facet with an earlier one.
    pub fn verify_adjacency_chain(&self) -> AdjacencyReport {
        let n = self.len();
        let mut neighbours = vec![Vec::new(); n];
        for &(i, j) in &self.adjacency {
            neighbours[i].push(j);
            neighbours[j].push(i);
        }
        let order_ok = (1..n).all(|i| neighbours[i].iter().any(|&j| j < i));
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &neighbours[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        let connected = order.len() == n;
        AdjacencyReport {
            pass: connected && order_ok,
            connected,
            order_ok,
            reordering: (connected && !order_ok).then_some(order),
        }
    }

    /// Check that no ground point lies in a simplex without being one of its
    /// vertices.
    pub fn verify_property_b(&self) -> PropertyBReport {
        let (_, local) = self.local_points();
        for (si, s) in self.simplices.iter().enumerate() {
            for (p, q) in local.iter().enumerate() {
                if s.vertices().binary_search(&p).is_err() && simplex_coords(&local, s, q).is_some() {
                    return PropertyBReport { pass: false, violation: Some((si, p)) };
                }
            }
        }
        PropertyBReport { pass: true, violation: None }
    }

    pub fn check(&self) -> DecompositionCheck<T> {
        DecompositionCheck {
            cover: self.verify_cover(),
            regular: self.verify_regular_position(),
            adjacency: self.verify_adjacency_chain(),
            property_b: self.verify_property_b(),
        }
    }
}
