//! Exact sumset cardinalities for lattice point sets.
//!
//! Points have integer coordinates of any [`Coord`] type and every predicate
//! is decided in exact rational arithmetic. The crate enumerates sumsets,
//! builds and certifies simplicial decompositions of `conv B`, evaluates the
//! closed-form lower bounds for `|A + kB|` and checks them against brute
//! force, and runs seeded random campaigns over all of it.
//!
//! ```
//! use sumhull::{k_fold, Points};
//!
//! let triangle = Points::from_i64(2, &[[0, 0], [1, 0], [0, 1]]);
//! assert_eq!(k_fold(&triangle, 2).unwrap().cardinality, 6);
//! ```

pub mod bounds;
pub mod decomposition;
pub mod error;
pub mod explorer;
pub mod geometry;
pub mod linalg;
pub mod lp;
pub mod partition;
pub mod point;
pub mod scalar;
pub mod subsum;
pub mod sumset;

use num_bigint::BigInt;
use num_rational::Ratio;

pub use bounds::{
    binom, freiman_bound, kfold_bound, kfold_bound_factored, simplex_exact_count, verify_nested_chain, verify_theorem,
    BoundParams, Instance, TheoremTag, VerificationRecord,
};
pub use decomposition::{decompose, Decomposition, Face, Simplex};
pub use error::{Error, Result};
pub use explorer::{generate_instance, run_campaign, Campaign, CampaignReport, GeneratedInstance, GeneratorConfig};
pub use geometry::{affine_dimension, barycentric, conv_contains, is_proper, vertex_indices, vertex_set, ConvexHull, Hyperplane};
pub use partition::{induce_partition, DisjointnessReport, InducedPartition};
pub use point::{LatticePoint, PointSet};
pub use scalar::{Coord, Field};
pub use subsum::{endpoints, lattice_subsum_report, subsum_report, SubsumInstance, SubsumReport};
pub use sumset::{a_plus_kb, k_fold, sum_all, sumset, SumsetResult};

/// Arbitrary-precision coordinates; the default everywhere.
pub type Point = LatticePoint<BigInt>;
pub type Points = PointSet<BigInt>;
pub type Rational = Ratio<BigInt>;
pub type Decomp = Decomposition<BigInt>;
pub type Partition = InducedPartition<BigInt>;
pub type Record = VerificationRecord<BigInt>;
pub type Report = CampaignReport<BigInt>;
pub type Subsum = SubsumInstance<BigInt>;

/// Machine-word coordinates for small, known-safe ranges.
pub type Point64 = LatticePoint<i64>;
pub type Points64 = PointSet<i64>;
pub type Decomp64 = Decomposition<i64>;
