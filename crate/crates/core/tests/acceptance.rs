//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use sumhull::explorer::{run_campaign, Campaign, CampaignRecord, CampaignReport, GeneratedInstance, GeneratorConfig};
use sumhull::{
    binom, decompose, freiman_bound, generate_instance, induce_partition, k_fold, kfold_bound, kfold_bound_factored,
    subsum_report, Points, Subsum, TheoremTag,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn campaign(cfg: &GeneratorConfig, c: Campaign) -> Result<CampaignReport<BigInt>, String> {
    run_campaign(cfg, c).map_err(|e| format!("{c} d={} k={}: {e}", cfg.dim, cfg.k))
}

/// Split `total` instances over `parts` as evenly as possible.
fn share(total: usize, parts: usize, i: usize) -> usize {
    total / parts + usize::from(i < total % parts)
}

fn violations(r: &CampaignReport<BigInt>) -> Result<(), String> {
    match r.summary.witnesses.first() {
        None => Ok(()),
        Some(w) => Err(format!("{} violations in {}, first {}", r.summary.violations, r.campaign, serde_json::to_string(w).unwrap())),
    }
}

fn simplex_exactness() -> Outcome {
    let mut runs = 0;
    for d in 1..=3 {
        for k in 1..=3 {
            for m1 in 0..=d + 1 {
                let cfg = GeneratorConfig {
                    dim: d,
                    a_size: [1, d + 5],
                    b_size: [d + 1, d + 1],
                    coord_bound: 5,
                    k,
                    seed: 1000 + (100 * d + 10 * k + m1) as u64,
                    instances: 50,
                    m1: Some(m1),
                };
                let r = campaign(&cfg, Campaign::Theorem(TheoremTag::SimplexExact))?;
                violations(&r)?;
                for rec in &r.records {
                    let CampaignRecord::Bound(v) = rec else { return Err("unexpected record kind".into()) };
                    if v.params.m1 != Some(m1) || BigInt::from(v.actual) != v.bound {
                        return Err(format!("{} : actual {} vs formula {}", v.id, v.actual, v.bound));
                    }
                }
                runs += r.records.len();
            }
        }
    }
    Ok(format!("{runs} instances, |A+kB| equals the closed form in every case"))
}

fn kfold_sweep() -> Outcome {
    let mut total = 0;
    let mut min: Option<(BigRational, String)> = None;
    for (i, (d, k)) in (1..=3).flat_map(|d| (1..=3).map(move |k| (d, k))).enumerate() {
        let cfg = GeneratorConfig {
            dim: d,
            a_size: [1, 8],
            b_size: [d + 1, 7],
            coord_bound: 3,
            k,
            seed: 2000 + i as u64,
            instances: share(1000, 9, i),
            m1: None,
        };
        let r = campaign(&cfg, Campaign::Theorem(TheoremTag::KFold))?;
        violations(&r)?;
        total += r.records.len();
        if let (Some(s), Some(id)) = (r.summary.min_slack, r.summary.min_slack_id) {
            if min.as_ref().is_none_or(|m| s < m.0) {
                min = Some((s, id));
            }
        }
    }
    let (s, id) = min.ok_or("no records")?;
    Ok(format!("{total} instances, 0 violations, min slack {s} ({id})"))
}

fn freiman_sweeps() -> Outcome {
    let mut parts = Vec::new();
    for (j, tag) in [TheoremTag::Freiman, TheoremTag::VertexSum].into_iter().enumerate() {
        let mut n = 0;
        let mut min: Option<BigRational> = None;
        for d in 1..=3 {
            let cfg = GeneratorConfig {
                dim: d,
                a_size: [d + 1, 8],
                b_size: [d + 1, d + 1],
                coord_bound: 4,
                k: 1,
                seed: 3000 + 10 * j as u64 + d as u64,
                instances: share(500, 3, d - 1),
                m1: None,
            };
            let r = campaign(&cfg, Campaign::Theorem(tag))?;
            violations(&r)?;
            n += r.records.len();
            min = min.into_iter().chain(r.summary.min_slack).min();
        }
        parts.push(format!("{tag}: {n} instances, min slack {}", min.unwrap()));
    }
    Ok(parts.join("; "))
}

/// `(B, A)` pairs from the k-fold generator.
fn pairs(count: usize, seed: u64, b_size: impl Fn(usize) -> [usize; 2], c: i64) -> Result<Vec<(usize, Points, Points)>, String> {
    (0..count)
        .map(|i| {
            let d = 1 + i % 3;
            let cfg = GeneratorConfig { dim: d, a_size: [1, 8], b_size: b_size(d), coord_bound: c, k: 1, seed, instances: count, m1: None };
            match generate_instance::<BigInt>(&cfg, Campaign::Theorem(TheoremTag::KFold), i).map_err(|e| e.to_string())? {
                GeneratedInstance::Pair { a, b: Some(b) } => Ok((i, b, a)),
                _ => Err("generator returned no B".into()),
            }
        })
        .collect()
}

fn counting_identity() -> Outcome {
    let simplices = pairs(200, 4000, |d| [d + 1, d + 1], 5)?;
    for (i, b, _) in &simplices {
        let (d, k) = (b.dim() as u64, 1 + (i / 3 % 3) as u64);
        let r = k_fold(b, k as usize).map_err(|e| e.to_string())?;
        let expected = binom::<i64>(d + k, k) as usize;
        if r.cardinality != expected || r.provenance.terms != r.cardinality {
            return Err(format!(
                "simplex #{i}, d={d}, k={k}: |kB| = {}, multisets = {}, C(d+k,k) = {expected}",
                r.cardinality, r.provenance.terms
            ));
        }
    }
    Ok(format!("{} simplices, |kB| = C(d+k,k) = number of k-multisets of vertices", simplices.len()))
}

fn decomposition_pairs() -> Result<Vec<(usize, Points, Points)>, String> {
    pairs(200, 5000, |d| [d + 1, 8], 4)
}

fn decomposition_suite() -> Outcome {
    let mut simplices = 0;
    for (i, b, _) in decomposition_pairs()? {
        let d = decompose(&b).map_err(|e| format!("#{i}: {e}"))?;
        let c = d.check();
        if !c.pass() {
            return Err(format!("#{i}: {c:?} for {}", serde_json::to_string(&b).unwrap()));
        }
        if decompose(&b).map_err(|e| e.to_string())?.to_json() != d.to_json() {
            return Err(format!("#{i}: decomposition output differs between runs"));
        }
        simplices += d.len();
    }
    Ok(format!("200 sets, {simplices} simplices; cover, regular position, adjacency chain, vertex property all hold; output byte-stable"))
}

fn partition_disjointness() -> Outcome {
    let mut checks = 0;
    for (i, b, a) in decomposition_pairs()? {
        let d = decompose(&b).map_err(|e| format!("#{i}: {e}"))?;
        let p = induce_partition(&a, &d).map_err(|e| format!("#{i}: {e}"))?;
        for k in 1..=2 {
            let r = p.check_disjoint_sums(k).map_err(|e| e.to_string())?;
            if !r.pass || !r.multi_vertex_cells.is_empty() {
                return Err(format!("#{i}, k={k}: {r:?}"));
            }
            checks += 1;
        }
    }
    Ok(format!("{checks} partitions, cells' sums disjoint and Σ|A_i+kB_i| ≤ |A+kB|"))
}

fn subsum_chain() -> Outcome {
    let mut n = 0;
    for (i, k) in (2..=5).enumerate() {
        let cfg = GeneratorConfig {
            dim: 1,
            a_size: [1, 8],
            b_size: [2, 2],
            coord_bound: 20,
            k,
            seed: 7000 + i as u64,
            instances: share(500, 4, i),
            m1: None,
        };
        let r = campaign(&cfg, Campaign::Subsum)?;
        violations(&r)?;
        n += r.records.len();
    }
    let worked = |sets: &[&[i64]], s: usize, bound: i64| -> Result<(), String> {
        let r = subsum_report(&Subsum::from_i64(sets).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        if r.s != s || r.bound != BigRational::from_integer(bound.into()) || !r.chain_satisfied {
            return Err(format!("worked example {sets:?}: {r:?}"));
        }
        Ok(())
    };
    worked(&[&[0, 1, 2], &[0, 1, 2]], 5, 5)?;
    worked(&[&[0, 1], &[0, 1], &[0, 1]], 4, 4)?;
    Ok(format!("{n} instances hold exactly; worked examples give |S|=5/bound=5 and |S|=4/bound=4"))
}

fn nested_chains() -> Outcome {
    let mut n = 0;
    for (i, k) in (1..=4).enumerate() {
        let cfg = GeneratorConfig {
            dim: 1,
            a_size: [1, 6],
            b_size: [2, 6],
            coord_bound: 6,
            k,
            seed: 8000 + i as u64,
            instances: share(500, 4, i),
            m1: None,
        };
        let r = campaign(&cfg, Campaign::Question2)?;
        if r.exploratory {
            return Err("d = 1 chains must be assertable".into());
        }
        violations(&r)?;
        n += r.records.len();
    }
    let mut notes = Vec::new();
    for d in 2..=3 {
        let cfg = GeneratorConfig { dim: d, a_size: [1, 5], b_size: [d + 1, 6], coord_bound: 2, k: 2, seed: 8100 + d as u64, instances: 40, m1: None };
        let r = campaign(&cfg, Campaign::Question2)?;
        notes.push(format!("d={d}: {} violations in {} (report only)", r.summary.violations, r.records.len()));
    }
    Ok(format!("{n} chains at d=1, 0 violations; {}", notes.join(", ")))
}

fn algebraic_identities() -> Outcome {
    let mut n = 0;
    for m in 0..=50u64 {
        for d in 1..=6u64 {
            if kfold_bound::<BigInt>(m, d, 1) != freiman_bound::<BigInt>(m, d) {
                return Err(format!("k=1 mismatch at m={m}, d={d}"));
            }
            for k in 1..=6u64 {
                if kfold_bound_factored::<BigInt>(m, d, k) != BigRational::from_integer(kfold_bound(m, d, k)) {
                    return Err(format!("forms disagree at m={m}, d={d}, k={k}"));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} (m,d,k) triples"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("simplex exactness", simplex_exactness),
        ("k-fold bound sweep", kfold_sweep),
        ("freiman and vertex-sum sweeps", freiman_sweeps),
        ("counting identity", counting_identity),
        ("decomposition suite", decomposition_suite),
        ("partition disjointness", partition_disjointness),
        ("1-D subsum chain", subsum_chain),
        ("nested chains at d = 1", nested_chains),
        ("algebraic identities", algebraic_identities),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {}. {name} [{secs:.1}s]: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {}. {name} [{secs:.1}s]: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
