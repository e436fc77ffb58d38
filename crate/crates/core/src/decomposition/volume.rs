//! Exact intrinsic volumes.
//!
//! The hull volume is computed without reference to any decomposition: the
//! hull is split into flag simplices (a barycentric subdivision keyed on
//! face centroids), with faces found by brute-force facet enumeration.
//! Volumes are measured in chart coordinates, so they are comparable only
//! within one chart.

use num_rational::Ratio;
use num_traits::{One, Signed};

use crate::geometry::{facet_index_sets, rational_affine_dim};
use crate::linalg::{determinant, sub};
use crate::scalar::{from_count, Coord};

type Q<T> = Ratio<T>;

fn factorial<T: Coord>(n: usize) -> Q<T> {
    (1..=n).fold(Q::<T>::one(), |acc, i| acc * Q::from_integer(from_count::<T>(i)))
}

/// `|det(v_1 - v_0, ..., v_r - v_0)| / r!` for `r + 1` points of `R^r`.
pub fn simplex_volume<T: Coord>(vertices: &[Vec<Q<T>>]) -> Q<T> {
    let r = vertices.len() - 1;
    let rows: Vec<_> = vertices[1..].iter().map(|v| sub(v, &vertices[0])).collect();
    determinant(&rows).abs() / factorial::<T>(r)
}

fn centroid<T: Coord>(points: &[Vec<Q<T>>]) -> Vec<Q<T>> {
    let n = Q::from_integer(from_count::<T>(points.len()));
    let mut c = points[0].clone();
    for p in &points[1..] {
        for (x, y) in c.iter_mut().zip(p) {
            *x = x.clone() + y.clone();
        }
    }
    c.into_iter().map(|x| x / n.clone()).collect()
}

fn flag_simplices<T: Coord>(points: &[Vec<Q<T>>], face: &[usize], out: &mut Vec<Vec<Vec<Q<T>>>>, tail: &mut Vec<Vec<Q<T>>>) {
    let sub: Vec<_> = face.iter().map(|&i| points[i].clone()).collect();
    if rational_affine_dim(&sub) == 0 {
        let mut s = vec![sub[0].clone()];
        s.extend(tail.iter().rev().cloned());
        out.push(s);
        return;
    }
    tail.push(centroid(&sub));
    for f in facet_index_sets(&sub) {
        let child: Vec<usize> = f.iter().map(|&i| face[i]).collect();
        flag_simplices(points, &child, out, tail);
    }
    tail.pop();
}

/// Volume of `conv(points)` for points spanning `R^r` (chart coordinates).
pub fn hull_volume<T: Coord>(points: &[Vec<Q<T>>]) -> Q<T> {
    let all: Vec<usize> = (0..points.len()).collect();
    let mut simplices = Vec::new();
    flag_simplices(points, &all, &mut simplices, &mut Vec::new());
    simplices.iter().map(|s| simplex_volume(s)).fold(Q::<T>::from_integer(T::zero()), |a, b| a + b)
}
