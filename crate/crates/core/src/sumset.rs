//! Brute-force sumset enumeration.
//!
//! Every sum is encoded as a fixed-width byte key (each coordinate in big-endian
//! two's complement with the sign bit flipped), so deduplication does not
//! depend on insertion order and a bytewise sort of the keys yields
//! lexicographic point order.

use std::collections::HashSet;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::point::{LatticePoint, PointSet};
use crate::scalar::{from_count, Coord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SumKind {
    Pair,
    KFold,
    APlusKb,
    Chain,
}

/// What was summed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub kind: SumKind,
    pub operand_sizes: Vec<usize>,
    pub k: usize,
    /// Number of sums formed before deduplication. For a k-fold sum this is
    /// the number of multisets of size k drawn from the operand.
    pub terms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumsetResult<T: Coord> {
    /// Sorted lexicographically.
    pub points: PointSet<T>,
    pub cardinality: usize,
    pub provenance: Provenance,
}

struct KeySet {
    dim: usize,
    width: usize,
    keys: HashSet<Box<[u8]>>,
}

impl KeySet {
    fn new<T: Coord>(dim: usize, bound: &T) -> Self {
        Self { dim, width: bound.byte_len(), keys: HashSet::new() }
    }

    fn insert<T: Coord>(&mut self, coords: impl Iterator<Item = T>) {
        let mut key = Vec::with_capacity(self.dim * self.width);
        for c in coords {
            let bytes = c.to_fixed_bytes(self.width);
            key.push(bytes[0] ^ 0x80);
            key.extend_from_slice(&bytes[1..]);
        }
        self.keys.insert(key.into_boxed_slice());
    }

    fn into_points<T: Coord>(self) -> PointSet<T> {
        let mut keys: Vec<_> = self.keys.into_iter().collect();
        keys.sort_unstable();
        let w = self.width;
        let points = keys
            .iter()
            .map(|key| {
                LatticePoint::new(
                    key.chunks_exact(w)
                        .map(|chunk| {
                            let mut bytes = chunk.to_vec();
                            bytes[0] ^= 0x80;
                            T::from_fixed_bytes(&bytes)
                        })
                        .collect(),
                )
            })
            .collect();
        PointSet::from_distinct(self.dim, points)
    }
}

fn max_abs<T: Coord>(p: &PointSet<T>) -> T {
    p.iter().flat_map(|q| q.coords().iter()).map(|c| c.abs()).max().unwrap_or_else(T::zero)
}

fn check_operands<T: Coord>(x: &PointSet<T>, y: &PointSet<T>) -> Result<()> {
    x.require_nonempty()?;
    y.require_nonempty()?;
    x.check_dim(y.dim())
}

/// `{x + y : x ∈ X, y ∈ Y}`.
pub fn sumset<T: Coord>(x: &PointSet<T>, y: &PointSet<T>) -> Result<SumsetResult<T>> {
    check_operands(x, y)?;
    let mut keys = KeySet::new(x.dim(), &(max_abs(x) + max_abs(y)));
    for a in x {
        for b in y {
            keys.insert(a.coords().iter().zip(b.coords()).map(|(u, v)| u.clone() + v.clone()));
        }
    }
    let points = keys.into_points();
    Ok(SumsetResult {
        cardinality: points.len(),
        points,
        provenance: Provenance { kind: SumKind::Pair, operand_sizes: vec![x.len(), y.len()], k: 1, terms: x.len() * y.len() },
    })
}

/// `kB = B + ... + B`, enumerated over multisets of size `k`.
pub fn k_fold<T: Coord>(b: &PointSet<T>, k: usize) -> Result<SumsetResult<T>> {
    if k == 0 {
        return Err(Error::KZero);
    }
    b.require_nonempty()?;
    let mut keys = KeySet::new(b.dim(), &(max_abs(b) * from_count::<T>(k)));
    let mut terms = 0;
    let mut acc = vec![T::zero(); b.dim()];
    for multiset in (0..b.len()).combinations_with_replacement(k) {
        acc.iter_mut().for_each(|c| c.set_zero());
        for &i in &multiset {
            for (c, v) in acc.iter_mut().zip(b[i].coords()) {
                *c = c.clone() + v.clone();
            }
        }
        keys.insert(acc.iter().cloned());
        terms += 1;
    }
    let points = keys.into_points();
    Ok(SumsetResult {
        cardinality: points.len(),
        points,
        provenance: Provenance { kind: SumKind::KFold, operand_sizes: vec![b.len()], k, terms },
    })
}

/// `A + kB`.
pub fn a_plus_kb<T: Coord>(a: &PointSet<T>, b: &PointSet<T>, k: usize) -> Result<SumsetResult<T>> {
    check_operands(a, b)?;
    let kb = k_fold(b, k)?;
    let mut out = sumset(a, &kb.points)?;
    out.provenance = Provenance { kind: SumKind::APlusKb, operand_sizes: vec![a.len(), b.len()], k, terms: a.len() * kb.cardinality };
    Ok(out)
}

/// `X_1 + X_2 + ... + X_n` for `n ≥ 1`.
pub fn sum_all<T: Coord>(sets: &[&PointSet<T>]) -> Result<SumsetResult<T>> {
    let (first, rest) = sets.split_first().ok_or(Error::EmptyPointSet)?;
    first.require_nonempty()?;
    let mut acc = first.sorted();
    let mut terms = first.len();
    for s in rest {
        let r = sumset(&acc, s)?;
        terms = r.provenance.terms;
        acc = r.points;
    }
    Ok(SumsetResult {
        cardinality: acc.len(),
        points: acc,
        provenance: Provenance { kind: SumKind::Chain, operand_sizes: sets.iter().map(|s| s.len()).collect(), k: sets.len(), terms },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = PointSet<BigInt>;

    #[test]
    fn sumset_examples() {
        let x = P::from_i64(1, &[[0], [1]]);
        let r = sumset(&x, &x).unwrap();
        assert_eq!(r.points, P::from_i64(1, &[[0], [1], [2]]));
        assert_eq!(r.cardinality, 3);

        let x = P::from_i64(2, &[[3, -1], [0, 5], [-2, 2]]);
        let zero = P::from_i64(2, &[[0, 0]]);
        assert_eq!(sumset(&x, &zero).unwrap().points, x.sorted());

        let tri = P::from_i64(2, &[[0, 0], [1, 0], [0, 1]]);
        assert_eq!(sumset(&tri, &tri).unwrap().cardinality, 6);
    }

    #[test]
    fn sumset_rejects_bad_operands() {
        let x = P::from_i64(1, &[[0]]);
        let y = P::from_i64(2, &[[0, 0]]);
        assert!(matches!(sumset(&x, &y), Err(Error::DimensionMismatch { .. })));
        assert_eq!(sumset(&x, &P::empty(1)), Err(Error::EmptyPointSet));
    }

    #[test]
    fn k_fold_examples() {
        let tri = P::from_i64(2, &[[0, 0], [1, 0], [0, 1]]);
        let r = k_fold(&tri, 2).unwrap();
        assert_eq!(r.cardinality, 6);
        assert_eq!(r.provenance.terms, 6);
        let seg = P::from_i64(1, &[[0], [1]]);
        assert_eq!(k_fold(&seg, 3).unwrap().points, P::from_i64(1, &[[0], [1], [2], [3]]));
        assert_eq!(k_fold(&tri, 1).unwrap().points, tri.sorted());
        assert_eq!(k_fold(&tri, 0), Err(Error::KZero));
    }

    #[test]
    fn a_plus_kb_examples() {
        let a = P::from_i64(2, &[[1, 1]]);
        let b = P::from_i64(2, &[[0, 0], [3, 0], [0, 3]]);
        assert_eq!(a_plus_kb(&a, &b, 1).unwrap().cardinality, 3);
        assert_eq!(a_plus_kb(&a, &b, 2).unwrap().cardinality, 6);
        let tri = P::from_i64(2, &[[0, 0], [1, 0], [0, 1]]);
        assert_eq!(a_plus_kb(&tri, &tri, 1).unwrap().cardinality, 6);
    }

    #[test]
    fn sorted_output_handles_negative_and_large_coordinates() {
        let big = BigInt::from(10).pow(30);
        let x = PointSet::new(1, vec![LatticePoint::new(vec![-big.clone()]), LatticePoint::new(vec![big.clone()])]).unwrap();
        let y = P::from_i64(1, &[[-1], [0], [1]]);
        let r = sumset(&x, &y).unwrap();
        let got: Vec<BigInt> = r.points.iter().map(|p| p.coords()[0].clone()).collect();
        let mut want: Vec<BigInt> = [-1i64, 0, 1].iter().flat_map(|&d| [-big.clone() + d, big.clone() + d]).collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn fixed_width_types_agree_with_bigint() {
        let b64 = PointSet::<i64>::from_i64(2, &[[-3, 2], [4, -1], [0, 0], [1, 5]]);
        let bbig = P::from_i64(2, &[[-3, 2], [4, -1], [0, 0], [1, 5]]);
        let small: Vec<String> = k_fold(&b64, 3).unwrap().points.iter().map(|p| p.to_string()).collect();
        let large: Vec<String> = k_fold(&bbig, 3).unwrap().points.iter().map(|p| p.to_string()).collect();
        assert_eq!(small, large);
    }
}
