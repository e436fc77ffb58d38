//! The partition of `A` induced by a simplicial decomposition of `conv B`:
//! `A_i = A ∩ (S_i \ (S_1 ∪ ... ∪ S_{i−1}))`.

use serde::Serialize;

use crate::decomposition::{simplex_coords, Decomposition};
use crate::error::{Error, Result};
use crate::point::{LatticePoint, PointSet};
use crate::scalar::Coord;
use crate::sumset::{a_plus_kb, SumsetResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedPartition<T: Coord> {
    pub decomposition: Decomposition<T>,
    /// `A_1, ..., A_n`, aligned with the simplex order. Cells may be empty.
    pub cells: Vec<PointSet<T>>,
}

/// Assign every point of `A` to the first simplex containing it.
pub fn induce_partition<T: Coord>(a: &PointSet<T>, d: &Decomposition<T>) -> Result<InducedPartition<T>> {
    d.ground().check_dim(a.dim())?;
    let (chart, local) = d.local_points();
    let mut cells: Vec<Vec<LatticePoint<T>>> = vec![Vec::new(); d.len()];
    for p in a {
        let pr = p.to_rational();
        let home = if chart.contains(&pr) {
            let q = chart.project(&pr);
            d.simplices().iter().position(|s| simplex_coords(&local, s, &q).is_some())
        } else {
            None
        };
        let Some(i) = home else {
            return Err(Error::PointOutsideHull(p.to_string()));
        };
        cells[i].push(p.clone());
    }
    Ok(InducedPartition {
        decomposition: d.clone(),
        cells: cells.into_iter().map(|c| PointSet::from_distinct(a.dim(), c)).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointnessReport {
    pub pass: bool,
    pub k: usize,
    /// `(i, j, |(A_i + kB_i) ∩ (A_j + kB_j)|)` for every overlapping pair.
    pub overlaps: Vec<(usize, usize, usize)>,
    /// `(cell, point)` for points lying outside their cell's simplex.
    pub misplaced: Vec<(usize, String)>,
    /// `|A_i + kB_i|`, zero for empty cells.
    pub cell_sums: Vec<usize>,
    pub cell_sum_total: usize,
    /// `|A + kB|` over the whole ground set.
    pub total: usize,
    /// Cells `i > 1` (1-based) containing more than one vertex of `S_i`.
    pub multi_vertex_cells: Vec<usize>,
}

impl<T: Coord> InducedPartition<T> {
    /// Union of the cells in cell order.
    pub fn union(&self) -> PointSet<T> {
        let dim = self.decomposition.ground().dim();
        PointSet::from_distinct(dim, self.cells.iter().flat_map(|c| c.iter().cloned()).collect())
    }

    /// Number of points of `A_i` that are vertices of `S_i`.
    pub fn cell_vertex_count(&self, i: usize) -> usize {
        self.cells[i].intersection(&self.decomposition.vertex_points(i)).len()
    }

    /// Check that the sums `A_i + kB_i` are pairwise disjoint and that their
    /// total does not exceed `|A + kB|`.
    pub fn check_disjoint_sums(&self, k: usize) -> Result<DisjointnessReport> {
        if k == 0 {
            return Err(Error::KZero);
        }
        let d = &self.decomposition;
        let sums: Vec<Option<SumsetResult<T>>> = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, cell)| if cell.is_empty() { Ok(None) } else { a_plus_kb(cell, &d.vertex_points(i), k).map(Some) })
            .collect::<Result<_>>()?;

        let mut overlaps = Vec::new();
        for i in 0..sums.len() {
            for j in i + 1..sums.len() {
                if let (Some(x), Some(y)) = (&sums[i], &sums[j]) {
                    let common = x.points.intersection(&y.points).len();
                    if common > 0 {
                        overlaps.push((i, j, common));
                    }
                }
            }
        }
        let mut misplaced = Vec::new();
        for (i, cell) in self.cells.iter().enumerate() {
            for p in cell {
                if d.locate_in(i, p).is_none() {
                    misplaced.push((i, p.to_string()));
                }
            }
        }
        let cell_sums: Vec<usize> = sums.iter().map(|s| s.as_ref().map_or(0, |s| s.cardinality)).collect();
        let cell_sum_total = cell_sums.iter().sum();
        let union = self.union();
        let total = if union.is_empty() { 0 } else { a_plus_kb(&union, d.ground(), k)?.cardinality };
        let multi_vertex_cells = (1..self.cells.len()).filter(|&i| self.cell_vertex_count(i) > 1).map(|i| i + 1).collect();
        Ok(DisjointnessReport {
            pass: overlaps.is_empty() && misplaced.is_empty() && cell_sum_total <= total,
            k,
            overlaps,
            misplaced,
            cell_sums,
            cell_sum_total,
            total,
            multi_vertex_cells,
        })
    }
}
