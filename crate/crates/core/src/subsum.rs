//! Complete sums against leave-one-out sums.
//!
//! For sets `A_1, ..., A_k`: `S = ΣA_j`, `S_i = Σ_{j≠i} A_j`,
//! `S_i′ = S_i + A_i′` and `S′ = ∪ S_i′`, where `A_i′` keeps the extreme
//! points of `A_i` (its endpoints on the line, its vertices in general).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::vertex_set;
use crate::point::{coord_to_number, number_to_coord, LatticePoint, PointSet};
use crate::scalar::Coord;
use crate::sumset::{sum_all, sumset};

/// `k ≥ 2` nonempty integer sets, each stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubsumInstance<T> {
    sets: Vec<Vec<T>>,
}

impl<T: Coord> SubsumInstance<T> {
    pub fn new(sets: Vec<Vec<T>>) -> Result<Self> {
        if sets.len() < 2 {
            return Err(Error::SubsumArity);
        }
        let mut sorted = Vec::with_capacity(sets.len());
        for (i, mut s) in sets.into_iter().enumerate() {
            if s.is_empty() {
                return Err(Error::EmptySummand(i + 1));
            }
            s.sort();
            if let Some(w) = s.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicatePoint(w[0].to_string()));
            }
            sorted.push(s);
        }
        Ok(Self { sets: sorted })
    }

    pub fn from_i64(sets: &[&[i64]]) -> Result<Self> {
        let conv = |x: &i64| T::from_i64(*x).expect("coordinate fits the scalar type");
        Self::new(sets.iter().map(|s| s.iter().map(conv).collect()).collect())
    }

    pub fn sets(&self) -> &[Vec<T>] {
        &self.sets
    }

    pub fn k(&self) -> usize {
        self.sets.len()
    }

    /// Shift `A_i` by `t`.
    pub fn translate(&self, i: usize, t: &T) -> Self {
        let mut sets = self.sets.clone();
        for x in &mut sets[i] {
            *x = x.clone() + t.clone();
        }
        Self { sets }
    }

    pub fn as_point_sets(&self) -> Vec<PointSet<T>> {
        self.sets.iter().map(|s| line_set(s)).collect()
    }
}

fn line_set<T: Coord>(s: &[T]) -> PointSet<T> {
    PointSet::from_distinct(1, s.iter().map(|x| LatticePoint::new(vec![x.clone()])).collect())
}

#[derive(Serialize, Deserialize)]
struct SubsumFile {
    sets: Vec<Vec<serde_json::Number>>,
}

impl<T: Coord> Serialize for SubsumInstance<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubsumFile { sets: self.sets.iter().map(|a| a.iter().map(coord_to_number).collect()).collect() }.serialize(s)
    }
}

impl<'de, T: Coord> Deserialize<'de> for SubsumInstance<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = SubsumFile::deserialize(d)?;
        let sets = file
            .sets
            .iter()
            .map(|a| a.iter().map(number_to_coord).collect::<Result<Vec<T>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Self::new(sets).map_err(D::Error::custom)
    }
}

/// `{min A, max A}`.
pub fn endpoints<T: Coord>(a: &[T]) -> Result<Vec<T>> {
    let lo = a.iter().min().ok_or(Error::EmptyPointSet)?;
    let hi = a.iter().max().ok_or(Error::EmptyPointSet)?;
    Ok(if lo == hi { vec![lo.clone()] } else { vec![lo.clone(), hi.clone()] })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsumReport {
    pub k: usize,
    pub s: usize,
    pub s_prime: usize,
    pub s_i: Vec<usize>,
    pub s_i_prime: Vec<usize>,
    /// `(Σ|S_i| − 1)/(k − 1)`.
    #[serde(serialize_with = "ratio_string")]
    pub bound: BigRational,
    /// `|S| ≥ |S′| ≥ bound`.
    pub chain_satisfied: bool,
}

pub(crate) fn ratio_string<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(q)
}

impl SubsumReport {
    pub fn s_i_total(&self) -> usize {
        self.s_i.iter().sum()
    }

    /// `|S′| − bound`.
    pub fn slack(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.s_prime)) - &self.bound
    }
}

/// Sums over `sets`, with `reduced[i] ⊆ sets[i]` standing in for `A_i′`.
fn report_for<T: Coord>(sets: &[PointSet<T>], reduced: &[PointSet<T>]) -> Result<SubsumReport> {
    let k = sets.len();
    if k < 2 {
        return Err(Error::SubsumArity);
    }
    if let Some(i) = sets.iter().position(PointSet::is_empty) {
        return Err(Error::EmptySummand(i + 1));
    }
    let mut s_i = Vec::with_capacity(k);
    let mut s_i_prime = Vec::with_capacity(k);
    let mut union = BTreeSet::new();
    let mut s = 0;
    for (i, part) in reduced.iter().enumerate() {
        let others: Vec<&PointSet<T>> = sets.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x).collect();
        let rest = sum_all(&others)?.points;
        if i == 0 {
            s = sumset(&rest, &sets[0])?.cardinality;
        }
        let partial = sumset(&rest, part)?.points;
        s_i.push(rest.len());
        s_i_prime.push(partial.len());
        union.extend(partial.points().iter().cloned());
    }
    let total: usize = s_i.iter().sum();
    let bound = BigRational::new(BigInt::from(total) - 1, BigInt::from(k - 1));
    let s_prime = union.len();
    let chain_satisfied = s >= s_prime && BigRational::from_integer(BigInt::from(s_prime)) >= bound;
    Ok(SubsumReport { k, s, s_prime, s_i, s_i_prime, bound, chain_satisfied })
}

pub fn subsum_report<T: Coord>(inst: &SubsumInstance<T>) -> Result<SubsumReport> {
    let reduced = inst.sets.iter().map(|s| endpoints(s).map(|e| line_set(&e))).collect::<Result<Vec<_>>>()?;
    report_for(&inst.as_point_sets(), &reduced)
}

/// The same sums for lattice sets of any dimension, with `A_i′ = vert A_i`.
/// Only the left inequality `|S| ≥ |S′|` is guaranteed beyond the line.
pub fn lattice_subsum_report<T: Coord>(sets: &[PointSet<T>]) -> Result<SubsumReport> {
    if let Some(i) = sets.iter().position(PointSet::is_empty) {
        return Err(Error::EmptySummand(i + 1));
    }
    let reduced = sets.iter().map(vertex_set).collect::<Result<Vec<_>>>()?;
    report_for(sets, &reduced)
}
