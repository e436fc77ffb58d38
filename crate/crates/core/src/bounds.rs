//! Closed-form cardinality bounds and their brute-force verification.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{is_proper, vertex_set, ConvexHull};
use crate::point::PointSet;
use crate::scalar::Coord;
use crate::sumset::{a_plus_kb, sum_all, sumset};

fn int<I: Coord>(n: u64) -> I {
    I::from_u64(n).expect("parameter fits the integer type")
}

/// Binomial coefficient `C(n, r)`; zero when `r > n`.
pub fn binom<I: Coord>(n: u64, r: u64) -> I {
    if r > n {
        return I::zero();
    }
    let r = r.min(n - r);
    let mut acc = I::one();
    for i in 0..r {
        // acc * (n - i) is divisible by i + 1 at every step
        acc = acc * int::<I>(n - i) / int::<I>(i + 1);
    }
    acc
}

/// `m(d+1) − d(d+1)/2`.
pub fn freiman_bound<I: Coord>(m: u64, d: u64) -> I {
    int::<I>(m) * int::<I>(d + 1) - int::<I>(d) * int::<I>(d + 1) / int::<I>(2)
}

/// `m·C(d+k, k) − k·C(d+k, k+1)`; may be negative for small `m`.
pub fn kfold_bound<I: Coord>(m: u64, d: u64, k: u64) -> I {
    int::<I>(m) * binom::<I>(d + k, k) - int::<I>(k) * binom::<I>(d + k, k + 1)
}

/// The same bound written as `(m − kd/(k+1))·C(d+k, k)`.
pub fn kfold_bound_factored<I: Coord>(m: u64, d: u64, k: u64) -> Ratio<I> {
    let lead = Ratio::new(int::<I>(m) * int::<I>(k + 1) - int::<I>(k) * int::<I>(d), int::<I>(k + 1));
    lead * Ratio::from_integer(binom::<I>(d + k, k))
}

/// Exact `|A + kB|` for a simplex `B` with `d + 1` vertices, `|A| = m`,
/// `A ⊂ conv B` and `|A ∩ B| = m1`:
/// `(m − m1)·C(d+k, k) + C(d+k+1, k+1) − C(d−m1+k+1, k+1)`.
pub fn simplex_exact_count<I: Coord>(m: u64, m1: u64, d: u64, k: u64) -> Result<I> {
    if m1 > d + 1 {
        return Err(Error::InvalidParams(format!("m1 = {m1} exceeds d + 1 = {}", d + 1)));
    }
    if m1 > m {
        return Err(Error::InvalidParams(format!("m1 = {m1} exceeds m = {m}")));
    }
    // d − m1 + k + 1 ≥ k since m1 ≤ d + 1
    let tail = d + k + 1 - m1;
    Ok(int::<I>(m - m1) * binom::<I>(d + k, k) + binom::<I>(d + k + 1, k + 1) - binom::<I>(tail, k + 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremTag {
    /// `|A + A| ≥ m(d+1) − d(d+1)/2` for proper `A`.
    Freiman,
    /// `|A + vert A| ≥ m(d+1) − d(d+1)/2` for proper `A`.
    VertexSum,
    /// `|A + B| ≥ m(d+1) − d(d+1)/2` for proper `B`, `A ⊂ conv B`.
    TwoSets,
    /// `|A + kB| ≥ m·C(d+k,k) − k·C(d+k,k+1)` for proper `B`, `A ⊂ conv B`.
    KFold,
    /// Equality for a simplex `B`.
    SimplexExact,
    /// The k-fold bound applied to `A + B_1 + ... + B_k` for nested hulls.
    NestedChain,
}

impl TheoremTag {
    pub const ALL: [TheoremTag; 6] =
        [Self::Freiman, Self::VertexSum, Self::TwoSets, Self::KFold, Self::SimplexExact, Self::NestedChain];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Freiman => "freiman",
            Self::VertexSum => "vertex_sum",
            Self::TwoSets => "two_sets",
            Self::KFold => "k_fold",
            Self::SimplexExact => "simplex_exact",
            Self::NestedChain => "nested_chain",
        }
    }
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|t| t.as_str() == s).ok_or_else(|| Error::Parse(format!("unknown theorem tag {s}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundParams {
    pub m: usize,
    pub d: usize,
    pub k: usize,
    /// `|A ∩ B|`, reported for the simplex case only.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m1: Option<usize>,
}

/// The sets a record was computed from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Coord", deserialize = "T: Coord"))]
pub struct Instance<T: Coord> {
    pub a: PointSet<T>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<PointSet<T>>,
    /// `B_1, ..., B_k` for nested chains.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub chain: Vec<PointSet<T>>,
}

pub(crate) mod big_number {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        crate::point::coord_to_number(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        crate::point::number_to_coord(&n).map_err(D::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Coord", deserialize = "T: Coord"))]
pub struct VerificationRecord<T: Coord> {
    pub id: String,
    pub theorem: TheoremTag,
    pub params: BoundParams,
    /// Lower bound, or the exact predicted value for the simplex case.
    #[serde(with = "big_number")]
    pub bound: BigInt,
    pub actual: usize,
    pub satisfied: bool,
    pub instance: Instance<T>,
}

impl<T: Coord> VerificationRecord<T> {
    /// `actual − bound`.
    pub fn slack(&self) -> BigInt {
        BigInt::from(self.actual) - &self.bound
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    /// Recompute the record from its embedded instance.
    pub fn replay(&self) -> Result<Self> {
        let inst = &self.instance;
        let fresh = match self.theorem {
            TheoremTag::NestedChain => verify_nested_chain(&inst.a, &inst.chain)?,
            tag => verify_theorem(tag, &inst.a, inst.b.as_ref(), self.params.k)?,
        };
        Ok(fresh.with_id(self.id.clone()))
    }
}

fn hypothesis(msg: impl Into<String>) -> Error {
    Error::Hypothesis(msg.into())
}

fn require_in_hull<T: Coord>(a: &PointSet<T>, b: &PointSet<T>, msg: &str) -> Result<()> {
    let hull = ConvexHull::new(b)?;
    if a.iter().all(|p| hull.contains(p)) {
        Ok(())
    } else {
        Err(hypothesis(msg))
    }
}

/// Check one theorem on one instance against brute-force enumeration.
///
/// Hypotheses are checked first; a violated hypothesis is an error naming
/// it, never an unsatisfied record.
pub fn verify_theorem<T: Coord>(tag: TheoremTag, a: &PointSet<T>, b: Option<&PointSet<T>>, k: usize) -> Result<VerificationRecord<T>> {
    a.require_nonempty()?;
    if k == 0 {
        return Err(Error::KZero);
    }
    let d = a.dim();
    let m = a.len();
    if let Some(b) = b {
        a.check_dim(b.dim())?;
    }
    let need_k1 = |name: &str| {
        if k != 1 {
            Err(Error::InvalidParams(format!("{name} uses k = 1")))
        } else {
            Ok(())
        }
    };
    let need_b = || b.ok_or_else(|| hypothesis(format!("{tag} needs a set B")));
    let params = |m1| BoundParams { m, d, k, m1 };

    let (b_used, actual, bound, m1) = match tag {
        TheoremTag::Freiman | TheoremTag::VertexSum => {
            need_k1(tag.as_str())?;
            if b.is_some() {
                return Err(Error::InvalidParams(format!("{tag} takes no set B")));
            }
            if !is_proper(a) {
                return Err(hypothesis("A not proper d-dimensional"));
            }
            let partner = if tag == TheoremTag::Freiman { a.clone() } else { vertex_set(a)? };
            let actual = sumset(a, &partner)?.cardinality;
            (None, actual, freiman_bound::<BigInt>(m as u64, d as u64), None)
        }
        TheoremTag::TwoSets | TheoremTag::KFold | TheoremTag::SimplexExact => {
            if tag == TheoremTag::TwoSets {
                need_k1(tag.as_str())?;
            }
            let b = need_b()?;
            if !is_proper(b) {
                return Err(hypothesis("B not proper d-dimensional"));
            }
            require_in_hull(a, b, "A ⊄ conv B")?;
            let actual = a_plus_kb(a, b, k)?.cardinality;
            if tag == TheoremTag::SimplexExact {
                if b.len() != d + 1 {
                    return Err(hypothesis("B is not a simplex (|B| ≠ d+1)"));
                }
                let m1 = a.intersection(b).len();
                let exact = simplex_exact_count::<BigInt>(m as u64, m1 as u64, d as u64, k as u64)?;
                (Some(b.clone()), actual, exact, Some(m1))
            } else {
                (Some(b.clone()), actual, kfold_bound::<BigInt>(m as u64, d as u64, k as u64), None)
            }
        }
        TheoremTag::NestedChain => {
            return Err(Error::InvalidParams("nested chains are checked with verify_nested_chain".into()));
        }
    };
    let satisfied = if tag == TheoremTag::SimplexExact { BigInt::from(actual) == bound } else { BigInt::from(actual) >= bound };
    Ok(VerificationRecord {
        id: String::new(),
        theorem: tag,
        params: params(m1),
        bound,
        actual,
        satisfied,
        instance: Instance { a: a.clone(), b: b_used, chain: Vec::new() },
    })
}

/// Check `|A + B_1 + ... + B_k| ≥ m·C(d+k,k) − k·C(d+k,k+1)` for
/// `A ⊂ conv B_1 ⊂ ... ⊂ conv B_k` with every `B_i` proper.
pub fn verify_nested_chain<T: Coord>(a: &PointSet<T>, chain: &[PointSet<T>]) -> Result<VerificationRecord<T>> {
    a.require_nonempty()?;
    if chain.is_empty() {
        return Err(Error::KZero);
    }
    let d = a.dim();
    for (i, b) in chain.iter().enumerate() {
        a.check_dim(b.dim())?;
        if !is_proper(b) {
            return Err(hypothesis(format!("B_{} not proper d-dimensional", i + 1)));
        }
    }
    require_in_hull(a, &chain[0], "A ⊄ conv B_1")?;
    for i in 1..chain.len() {
        require_in_hull(&chain[i - 1], &chain[i], &format!("conv B_{i} ⊄ conv B_{}", i + 1))?;
    }
    let mut operands = vec![a];
    operands.extend(chain.iter());
    let actual = sum_all(&operands)?.cardinality;
    let k = chain.len();
    let bound = kfold_bound::<BigInt>(a.len() as u64, d as u64, k as u64);
    Ok(VerificationRecord {
        id: String::new(),
        theorem: TheoremTag::NestedChain,
        params: BoundParams { m: a.len(), d, k, m1: None },
        satisfied: BigInt::from(actual) >= bound,
        bound,
        actual,
        instance: Instance { a: a.clone(), b: None, chain: chain.to_vec() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = PointSet<BigInt>;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom::<BigInt>(4, 2), b(6));
        assert_eq!(binom::<BigInt>(1, 2), b(0));
        assert_eq!(binom::<BigInt>(5, 0), b(1));
        assert_eq!(binom::<i64>(60, 30), 118264581564861424);
    }

    #[test]
    fn freiman_examples() {
        assert_eq!(freiman_bound::<BigInt>(3, 2), b(6));
        assert_eq!(freiman_bound::<BigInt>(5, 1), b(9));
        assert_eq!(freiman_bound::<BigInt>(1, 3), b(-2));
    }

    #[test]
    fn kfold_examples() {
        assert_eq!(kfold_bound::<BigInt>(5, 2, 1), b(12));
        assert_eq!(kfold_bound::<BigInt>(4, 2, 2), b(16));
        // C(5,3) − 3·C(5,4) = 10 − 15
        assert_eq!(kfold_bound::<BigInt>(1, 2, 3), b(-5));
        assert_eq!(kfold_bound_factored::<BigInt>(1, 2, 3), Ratio::from_integer(b(-5)));
    }

    #[test]
    fn simplex_exact_examples() {
        assert_eq!(simplex_exact_count::<BigInt>(3, 3, 2, 1), Ok(b(6)));
        assert_eq!(simplex_exact_count::<BigInt>(4, 0, 2, 2), Ok(b(24)));
        assert_eq!(simplex_exact_count::<BigInt>(3, 1, 2, 1), Ok(b(9)));
        assert!(simplex_exact_count::<BigInt>(5, 4, 2, 1).is_err());
        assert!(simplex_exact_count::<BigInt>(1, 2, 2, 1).is_err());
    }

    #[test]
    fn verify_simplex_exact_on_triangle() {
        let tri = P::from_i64(2, &[[0, 0], [1, 0], [0, 1]]);
        let r = verify_theorem(TheoremTag::SimplexExact, &tri, Some(&tri), 1).unwrap();
        assert_eq!((r.actual, r.bound.clone(), r.satisfied, r.params.m1), (6, b(6), true, Some(3)));
    }

    #[test]
    fn verify_k_fold_vacuous_bound() {
        let a = P::from_i64(2, &[[1, 1]]);
        let bb = P::from_i64(2, &[[0, 0], [3, 0], [0, 3]]);
        let r = verify_theorem(TheoremTag::KFold, &a, Some(&bb), 2).unwrap();
        assert_eq!((r.actual, r.bound.clone(), r.satisfied), (6, b(-2), true));
        assert_eq!(r.slack(), b(8));
    }

    #[test]
    fn hypotheses_are_named() {
        let flat = P::from_i64(2, &[[0, 0], [1, 0], [2, 0], [3, 0]]);
        assert_eq!(verify_theorem(TheoremTag::Freiman, &flat, None, 1).unwrap_err(), Error::Hypothesis("A not proper d-dimensional".into()));
        let bb = P::from_i64(2, &[[0, 0], [2, 0], [0, 2]]);
        let outside = P::from_i64(2, &[[2, 2]]);
        assert_eq!(verify_theorem(TheoremTag::TwoSets, &outside, Some(&bb), 1).unwrap_err(), Error::Hypothesis("A ⊄ conv B".into()));
        assert_eq!(verify_theorem(TheoremTag::KFold, &outside, Some(&flat), 1).unwrap_err(), Error::Hypothesis("B not proper d-dimensional".into()));
        let square = P::from_i64(2, &[[0, 0], [2, 0], [0, 2], [2, 2]]);
        let inside = P::from_i64(2, &[[1, 1]]);
        assert_eq!(
            verify_theorem(TheoremTag::SimplexExact, &inside, Some(&square), 1).unwrap_err(),
            Error::Hypothesis("B is not a simplex (|B| ≠ d+1)".into())
        );
        assert!(matches!(verify_theorem(TheoremTag::KFold, &inside, None, 1), Err(Error::Hypothesis(_))));
        assert_eq!(verify_theorem(TheoremTag::KFold, &inside, Some(&square), 0).unwrap_err(), Error::KZero);
    }

    #[test]
    fn vertex_sum_uses_vertices_of_a() {
        let a = P::from_i64(2, &[[0, 0], [2, 0], [0, 2], [2, 2], [1, 1]]);
        let r = verify_theorem(TheoremTag::VertexSum, &a, None, 1).unwrap();
        assert_eq!(r.bound, b(15 - 3));
        // A + vert A: corners + corners = 9 points on the doubled grid, plus center + corners
        assert_eq!(r.actual, 13);
        assert!(r.satisfied);
    }

    #[test]
    fn nested_chain_in_one_dimension() {
        let a = P::from_i64(1, &[[0], [1], [2]]);
        let b1 = P::from_i64(1, &[[0], [2]]);
        let b2 = P::from_i64(1, &[[-1], [3], [0]]);
        let r = verify_nested_chain(&a, &[b1.clone(), b2.clone()]).unwrap();
        // A + B1 = {0..4}; + B2 = {-1..7}
        assert_eq!(r.actual, 9);
        assert_eq!(r.bound, kfold_bound::<BigInt>(3, 1, 2));
        assert!(r.satisfied);
        assert!(matches!(verify_nested_chain(&a, &[b2, b1]), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn record_json_roundtrip_and_replay() {
        let a = P::from_i64(2, &[[1, 1], [0, 0]]);
        let bb = P::from_i64(2, &[[0, 0], [3, 0], [0, 3]]);
        let r = verify_theorem(TheoremTag::SimplexExact, &a, Some(&bb), 2).unwrap().with_id("x-1");
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains(r#""theorem":"simplex_exact""#));
        let back: VerificationRecord<BigInt> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.replay().unwrap(), r);
    }
}
