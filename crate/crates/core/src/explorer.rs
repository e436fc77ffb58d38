//! Seeded instance generation and campaign runs.
//!
//! Instance `i` of a campaign draws from a ChaCha8 stream keyed by
//! `(seed, i)`, so instances are independent of each other and of the
//! thread schedule. Reports are merged in index order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{verify_nested_chain, verify_theorem, TheoremTag, VerificationRecord};
use crate::error::{Error, Result};
use crate::geometry::{is_proper, ConvexHull};
use crate::point::{LatticePoint, PointSet};
use crate::scalar::Coord;
use crate::subsum::{lattice_subsum_report, ratio_string, subsum_report, SubsumInstance, SubsumReport};

/// Inclusive size range `[min, max]`.
pub type SizeRange = [usize; 2];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub dim: usize,
    /// `|A|`, or `|A_i|` for subsum campaigns.
    pub a_size: SizeRange,
    pub b_size: SizeRange,
    /// Coordinates are drawn from `[−c, c]`.
    pub coord_bound: i64,
    pub k: usize,
    pub seed: u64,
    pub instances: usize,
    /// Force `|A ∩ B|` in simplex campaigns.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m1: Option<usize>,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self { dim: 2, a_size: [1, 6], b_size: [3, 6], coord_bound: 3, k: 1, seed: 0, instances: 100, m1: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Campaign {
    Theorem(TheoremTag),
    /// The 1-D chain `|S| ≥ |S′| ≥ (Σ|S_i| − 1)/(k − 1)`.
    Subsum,
    /// `|S′|` against `Σ|S_i|` in dimension `d`, with `A_i′ = vert A_i`.
    Question1,
    /// The k-fold bound for `A + B_1 + ... + B_k` with nested hulls.
    Question2,
}

impl Campaign {
    pub fn name(self) -> String {
        match self {
            Self::Theorem(t) => t.to_string(),
            Self::Subsum => "subsum".into(),
            Self::Question1 => "question_1".into(),
            Self::Question2 => "question_2".into(),
        }
    }

    /// Exploratory campaigns never fail a run; nested chains are settled on the line.
    pub fn exploratory(self, dim: usize) -> bool {
        match self {
            Self::Question1 => true,
            Self::Question2 => dim != 1,
            _ => false,
        }
    }
}

impl fmt::Display for Campaign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Campaign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subsum" => Ok(Self::Subsum),
            "question_1" | "1" => Ok(Self::Question1),
            "question_2" | "2" | "nested_chain" => Ok(Self::Question2),
            _ => s.parse().map(Self::Theorem),
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self, campaign: Campaign) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        let d = self.dim;
        if d == 0 {
            return bad("dim must be ≥ 1".into());
        }
        if self.coord_bound < 1 {
            return bad("coordinate bound must be ≥ 1".into());
        }
        if self.k == 0 {
            return Err(Error::KZero);
        }
        for (name, [lo, hi]) in [("A", self.a_size), ("B", self.b_size)] {
            if lo > hi {
                return bad(format!("empty size range {lo}..={hi} for {name}"));
            }
        }
        if self.a_size[1] == 0 {
            return bad("A needs at least one point".into());
        }
        let side = 2 * self.coord_bound as u128 + 1;
        let box_points = side.checked_pow(d as u32).unwrap_or(u128::MAX);
        // only sets drawn directly from the box count; A inside conv B is clamped
        let largest = match campaign {
            Campaign::Subsum | Campaign::Question1 | Campaign::Theorem(TheoremTag::Freiman | TheoremTag::VertexSum) => self.a_size[1],
            _ => self.b_size[1],
        };
        if (largest as u128) > box_points {
            return bad(format!("{largest} distinct points do not fit in [−{c}, {c}]^{d}", c = self.coord_bound));
        }
        match campaign {
            Campaign::Theorem(TheoremTag::Freiman | TheoremTag::VertexSum) => {
                if self.a_size[1] < d + 1 {
                    return bad(format!("a proper set in dimension {d} needs at least {} points", d + 1));
                }
            }
            Campaign::Subsum | Campaign::Question1 => {
                if self.k < 2 {
                    return Err(Error::SubsumArity);
                }
            }
            Campaign::Theorem(TheoremTag::NestedChain) => return bad("nested chains run as question 2".into()),
            _ => {
                if self.b_size[1] < d + 1 {
                    return bad(format!("B needs at least {} points in dimension {d}, range allows {}", d + 1, self.b_size[1]));
                }
            }
        }
        if let Campaign::Theorem(TheoremTag::Freiman | TheoremTag::VertexSum | TheoremTag::TwoSets) = campaign {
            if self.k != 1 {
                return bad(format!("{campaign} uses k = 1"));
            }
        }
        if let Some(m1) = self.m1 {
            if campaign != Campaign::Theorem(TheoremTag::SimplexExact) {
                return bad("m1 applies to simplex_exact only".into());
            }
            if m1 > d + 1 || m1 > self.a_size[1] {
                return bad(format!("m1 = {m1} exceeds min(d + 1, max |A|)"));
            }
        }
        Ok(())
    }

    fn rng(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }
}

/// One generated instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratedInstance<T: Coord> {
    Pair { a: PointSet<T>, b: Option<PointSet<T>> },
    Chain { a: PointSet<T>, chain: Vec<PointSet<T>> },
    Line(SubsumInstance<T>),
    Lattice(Vec<PointSet<T>>),
}

fn coord<T: Coord>(x: i64) -> T {
    T::from_i64(x).expect("coordinate fits the scalar type")
}

fn random_points<T: Coord>(rng: &mut ChaCha8Rng, dim: usize, n: usize, c: i64) -> PointSet<T> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p: Vec<i64> = (0..dim).map(|_| rng.random_range(-c..=c)).collect();
        if seen.insert(p.clone()) {
            out.push(LatticePoint::new(p.into_iter().map(coord).collect()));
        }
    }
    PointSet::from_distinct(dim, out).sorted()
}

fn random_proper<T: Coord>(rng: &mut ChaCha8Rng, dim: usize, n: usize, c: i64) -> PointSet<T> {
    loop {
        let p = random_points(rng, dim, n, c);
        if is_proper(&p) {
            return p;
        }
    }
}

fn random_size(rng: &mut ChaCha8Rng, [lo, hi]: SizeRange) -> usize {
    rng.random_range(lo..=hi)
}

/// Every lattice point of `conv p`, sorted.
pub fn lattice_points<T: Coord>(p: &PointSet<T>) -> Result<PointSet<T>> {
    p.require_nonempty()?;
    let hull = ConvexHull::new(p)?;
    let ranges = (0..p.dim()).map(|c| {
        let lo = p.iter().map(|x| x.coords()[c].clone()).min().expect("nonempty");
        let hi = p.iter().map(|x| x.coords()[c].clone()).max().expect("nonempty");
        let mut axis = Vec::new();
        let mut x = lo;
        while x <= hi {
            axis.push(x.clone());
            x = x + T::one();
        }
        axis
    });
    let points = ranges.multi_cartesian_product().map(LatticePoint::new).filter(|q| hull.contains(q)).collect();
    Ok(PointSet::from_distinct(p.dim(), points))
}

/// A random subset of `pool` of the given size, in pool order.
fn subset<T: Coord>(rng: &mut ChaCha8Rng, pool: &PointSet<T>, n: usize) -> PointSet<T> {
    let mut idx = sample(rng, pool.len(), n.min(pool.len())).into_vec();
    idx.sort_unstable();
    pool.select(&idx)
}

fn random_proper_subset<T: Coord>(rng: &mut ChaCha8Rng, pool: &PointSet<T>, size: SizeRange, dim: usize) -> PointSet<T> {
    let hi = size[1].min(pool.len());
    let lo = size[0].max(dim + 1).min(hi);
    loop {
        let n = rng.random_range(lo..=hi);
        let s = subset(rng, pool, n);
        if is_proper(&s) {
            return s;
        }
    }
}

fn line_sets<T: Coord>(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<SubsumInstance<T>> {
    let sets = (0..cfg.k)
        .map(|_| {
            let n = random_size(rng, [cfg.a_size[0].max(1), cfg.a_size[1]]);
            random_points::<T>(rng, 1, n, cfg.coord_bound).iter().map(|p| p.coords()[0].clone()).collect()
        })
        .collect();
    SubsumInstance::new(sets)
}

fn simplex_pair<T: Coord>(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig, m1: usize) -> Result<(PointSet<T>, PointSet<T>)> {
    let d = cfg.dim;
    loop {
        let b = random_proper::<T>(rng, d, d + 1, cfg.coord_bound);
        let lattice = lattice_points(&b)?;
        let interior: Vec<_> = lattice.iter().filter(|p| !b.contains(p)).cloned().collect();
        let interior = PointSet::from_distinct(d, interior);
        // A must be nonempty, so m1 = 0 needs a non-vertex lattice point
        let lo = cfg.a_size[0].saturating_sub(m1).max(usize::from(m1 == 0));
        let hi = cfg.a_size[1].saturating_sub(m1).min(interior.len());
        if lo > hi {
            continue;
        }
        let extra = rng.random_range(lo..=hi);
        let mut points = subset(rng, &b, m1).points().to_vec();
        points.extend(subset(rng, &interior, extra).points().iter().cloned());
        return Ok((PointSet::from_distinct(d, points).sorted(), b));
    }
}

/// Instance `index` for a campaign. Deterministic in `(cfg.seed, index)`.
pub fn generate_instance<T: Coord>(cfg: &GeneratorConfig, campaign: Campaign, index: usize) -> Result<GeneratedInstance<T>> {
    cfg.validate(campaign)?;
    let mut rng = cfg.rng(index);
    let rng = &mut rng;
    let (d, c) = (cfg.dim, cfg.coord_bound);
    Ok(match campaign {
        Campaign::Theorem(TheoremTag::Freiman | TheoremTag::VertexSum) => {
            let n = random_size(rng, [cfg.a_size[0].max(d + 1), cfg.a_size[1]]);
            GeneratedInstance::Pair { a: random_proper(rng, d, n, c), b: None }
        }
        Campaign::Theorem(TheoremTag::SimplexExact) => {
            let m1 = match cfg.m1 {
                Some(m1) => m1,
                None => rng.random_range(0..=(d + 1).min(cfg.a_size[1])),
            };
            let (a, b) = simplex_pair(rng, cfg, m1)?;
            GeneratedInstance::Pair { a, b: Some(b) }
        }
        Campaign::Theorem(_) => {
            let n = random_size(rng, [cfg.b_size[0].max(d + 1), cfg.b_size[1]]);
            let b = random_proper(rng, d, n, c);
            let pool = lattice_points(&b)?;
            let m = random_size(rng, [cfg.a_size[0].max(1), cfg.a_size[1]]);
            GeneratedInstance::Pair { a: subset(rng, &pool, m), b: Some(b) }
        }
        Campaign::Subsum => GeneratedInstance::Line(line_sets(rng, cfg)?),
        Campaign::Question1 if d == 1 => GeneratedInstance::Line(line_sets(rng, cfg)?),
        Campaign::Question1 => GeneratedInstance::Lattice(
            (0..cfg.k)
                .map(|_| {
                    let n = random_size(rng, [cfg.a_size[0].max(1), cfg.a_size[1]]);
                    random_points(rng, d, n, c)
                })
                .collect(),
        ),
        Campaign::Question2 => {
            // B_k first, then each B_i inside the lattice points of conv B_{i+1}
            let n = random_size(rng, [cfg.b_size[0].max(d + 1), cfg.b_size[1]]);
            let mut chain = vec![random_proper::<T>(rng, d, n, c)];
            for _ in 1..cfg.k {
                let pool = lattice_points(chain.last().expect("nonempty"))?;
                chain.push(random_proper_subset(rng, &pool, cfg.b_size, d));
            }
            chain.reverse();
            let pool = lattice_points(&chain[0])?;
            let m = random_size(rng, [cfg.a_size[0].max(1), cfg.a_size[1]]);
            GeneratedInstance::Chain { a: subset(rng, &pool, m), chain }
        }
    })
}

/// A subsum-style record; the instance is kept verbatim for replay.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "T: Coord"))]
pub struct SubsumEntry<T: Coord> {
    pub id: String,
    pub instance: SubsumWitness<T>,
    pub report: SubsumReport,
    /// `|S′| / Σ|S_i|`.
    #[serde(serialize_with = "ratio_string")]
    pub ratio: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged, bound(serialize = "T: Coord"))]
pub enum SubsumWitness<T: Coord> {
    Line(SubsumInstance<T>),
    Lattice { lattice_sets: Vec<PointSet<T>> },
}

impl<T: Coord> SubsumWitness<T> {
    pub fn report(&self) -> Result<SubsumReport> {
        match self {
            Self::Line(inst) => subsum_report(inst),
            Self::Lattice { lattice_sets } => lattice_subsum_report(lattice_sets),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged, bound(serialize = "T: Coord"))]
pub enum CampaignRecord<T: Coord> {
    Bound(VerificationRecord<T>),
    Subsum(SubsumEntry<T>),
}

impl<T: Coord> CampaignRecord<T> {
    pub fn id(&self) -> &str {
        match self {
            Self::Bound(r) => &r.id,
            Self::Subsum(e) => &e.id,
        }
    }

    /// Violation of the inequality the campaign asserts. Beyond the line,
    /// subsum records only assert `|S| ≥ |S′|`.
    pub fn violated(&self) -> bool {
        match self {
            Self::Bound(r) => !r.satisfied,
            Self::Subsum(e) => match e.instance {
                SubsumWitness::Line(_) => !e.report.chain_satisfied,
                SubsumWitness::Lattice { .. } => e.report.s < e.report.s_prime,
            },
        }
    }

    pub fn bound(&self) -> BigRational {
        match self {
            Self::Bound(r) => BigRational::from_integer(r.bound.clone()),
            Self::Subsum(e) => e.report.bound.clone(),
        }
    }

    pub fn actual(&self) -> usize {
        match self {
            Self::Bound(r) => r.actual,
            Self::Subsum(e) => e.report.s_prime,
        }
    }

    pub fn slack(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.actual())) - self.bound()
    }

    /// Recompute the record from its embedded instance.
    pub fn replay(&self) -> Result<Self> {
        Ok(match self {
            Self::Bound(r) => Self::Bound(r.replay()?),
            Self::Subsum(e) => {
                let report = e.instance.report()?;
                Self::Subsum(SubsumEntry { ratio: ratio_of(&report), report, ..e.clone() })
            }
        })
    }
}

fn ratio_of(r: &SubsumReport) -> BigRational {
    BigRational::new(BigInt::from(r.s_prime), BigInt::from(r.s_i_total()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Question1Summary {
    /// Smallest observed `|S′| / Σ|S_i|`.
    #[serde(serialize_with = "ratio_string")]
    pub min_ratio: BigRational,
    pub min_ratio_id: String,
    /// `k^{d−1} / (k−1)^d`.
    #[serde(serialize_with = "ratio_string")]
    pub conjectured: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "T: Coord"))]
pub struct CampaignSummary<T: Coord> {
    pub instances: usize,
    pub violations: usize,
    #[serde(serialize_with = "opt_ratio_string")]
    pub min_slack: Option<BigRational>,
    pub min_slack_id: Option<String>,
    /// Violating records, verbatim.
    pub witnesses: Vec<CampaignRecord<T>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub question_1: Option<Question1Summary>,
}

fn opt_ratio_string<S: serde::Serializer>(q: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.collect_str(q),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "T: Coord"))]
pub struct CampaignReport<T: Coord> {
    pub campaign: String,
    pub exploratory: bool,
    pub config: GeneratorConfig,
    pub records: Vec<CampaignRecord<T>>,
    pub summary: CampaignSummary<T>,
}

impl<T: Coord> CampaignReport<T> {
    /// True unless an assertable campaign found a violation.
    pub fn passed(&self) -> bool {
        self.exploratory || self.summary.violations == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// One row per instance: `seed,index,tag,bound,actual,slack`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Parse(e.to_string());
        w.write_record(["seed", "index", "tag", "bound", "actual", "slack"]).map_err(io)?;
        for (i, r) in self.records.iter().enumerate() {
            w.serialize((self.config.seed, i, &self.campaign, r.bound().to_string(), r.actual(), r.slack().to_string()))
                .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

pub fn summarize<T: Coord>(campaign: Campaign, cfg: &GeneratorConfig, records: &[CampaignRecord<T>]) -> CampaignSummary<T> {
    let witnesses: Vec<_> = records.iter().filter(|r| r.violated()).cloned().collect();
    let min = records.iter().map(|r| (r.slack(), r.id())).min_by(|x, y| x.0.cmp(&y.0));
    let question_1 = (campaign == Campaign::Question1).then(|| {
        let (min_ratio, id) = records
            .iter()
            .filter_map(|r| match r {
                CampaignRecord::Subsum(e) => Some((e.ratio.clone(), e.id.clone())),
                CampaignRecord::Bound(_) => None,
            })
            .min_by(|x, y| x.0.cmp(&y.0))
            .unwrap_or((BigRational::zero(), String::new()));
        let k = BigInt::from(cfg.k);
        let conjectured = BigRational::new(Pow::pow(k.clone(), cfg.dim - 1), Pow::pow(k - 1, cfg.dim));
        Question1Summary { min_ratio, min_ratio_id: id, conjectured }
    });
    CampaignSummary {
        instances: records.len(),
        violations: witnesses.len(),
        min_slack: min.as_ref().map(|m| m.0.clone()),
        min_slack_id: min.map(|m| m.1.to_string()),
        witnesses,
        question_1,
    }
}

fn run_one<T: Coord>(cfg: &GeneratorConfig, campaign: Campaign, index: usize) -> Result<CampaignRecord<T>> {
    let id = format!("{campaign}-{}-{index}", cfg.seed);
    let subsum = |instance: SubsumWitness<T>| -> Result<CampaignRecord<T>> {
        let report = instance.report()?;
        Ok(CampaignRecord::Subsum(SubsumEntry { id: id.clone(), ratio: ratio_of(&report), instance, report }))
    };
    match (campaign, generate_instance::<T>(cfg, campaign, index)?) {
        (Campaign::Theorem(tag), GeneratedInstance::Pair { a, b }) => {
            Ok(CampaignRecord::Bound(verify_theorem(tag, &a, b.as_ref(), cfg.k)?.with_id(id)))
        }
        (_, GeneratedInstance::Chain { a, chain }) => Ok(CampaignRecord::Bound(verify_nested_chain(&a, &chain)?.with_id(id))),
        (_, GeneratedInstance::Line(inst)) => subsum(SubsumWitness::Line(inst)),
        (_, GeneratedInstance::Lattice(lattice_sets)) => subsum(SubsumWitness::Lattice { lattice_sets }),
        (_, GeneratedInstance::Pair { .. }) => unreachable!("pairs are generated for theorem campaigns only"),
    }
}

/// Run `cfg.instances` instances in parallel; records are in index order.
pub fn run_campaign<T: Coord>(cfg: &GeneratorConfig, campaign: Campaign) -> Result<CampaignReport<T>> {
    cfg.validate(campaign)?;
    let records = (0..cfg.instances).into_par_iter().map(|i| run_one(cfg, campaign, i)).collect::<Result<Vec<_>>>()?;
    Ok(CampaignReport {
        campaign: campaign.name(),
        exploratory: campaign.exploratory(cfg.dim),
        config: cfg.clone(),
        summary: summarize(campaign, cfg, &records),
        records,
    })
}
