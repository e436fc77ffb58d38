use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde::de::DeserializeOwned;
use sumhull::{
    a_plus_kb, decompose, run_campaign, subsum_report, verify_nested_chain, verify_theorem, Campaign, GeneratorConfig, Points,
    Record, Report, Subsum, TheoremTag,
};

/// Exact sumsets, simplicial decompositions and sumset bounds for lattice point sets.
///
/// Exit status: 0 on success, 1 when a checked inequality fails, 2 on usage or input errors.
#[derive(Parser)]
#[command(name = "sumhull", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write A + kB and print its cardinality.
    Sumset {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(short, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose conv B into simplices.
    Decompose {
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run every verifier and fail on any violation.
        #[arg(long)]
        check: bool,
    },
    /// Check one inequality on one instance.
    Verify {
        /// freiman, vertex_sum, two_sets, k_fold, simplex_exact, nested_chain or subsum.
        #[arg(long)]
        theorem: String,
        /// Point set A, or the {"sets": [...]} file for subsum.
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: Option<PathBuf>,
        /// B_1, ..., B_k for nested_chain, innermost first.
        #[arg(long = "chain")]
        chain: Vec<PathBuf>,
        #[arg(short, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run a seeded random campaign.
    #[command(group(ArgGroup::new("target").required(true).args(["question", "theorem"])))]
    Explore {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        question: Option<u8>,
        /// A theorem tag or subsum.
        #[arg(long)]
        theorem: Option<String>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Defaults to 2 for subsum and question campaigns, 1 otherwise.
        #[arg(short)]
        k: Option<usize>,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        coord_bound: i64,
        #[arg(long, default_value_t = 6)]
        a_max: usize,
        #[arg(long, default_value_t = 6)]
        b_max: usize,
        /// Force |A ∩ B| for simplex_exact.
        #[arg(long)]
        m1: Option<usize>,
        /// Report destination; stdout when absent.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

enum Failure {
    Violation,
    Input(String),
}

impl From<sumhull::Error> for Failure {
    fn from(e: sumhull::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read_json<V: DeserializeOwned>(path: &Path) -> Result<V, Failure> {
    let text = fs::read_to_string(path).map_err(|e| match e.kind() {
        io::ErrorKind::NotFound => Failure::Input(format!("file not found: {}", path.display())),
        _ => Failure::Input(format!("{}: {e}", path.display())),
    })?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn to_json<V: serde::Serialize>(v: &V) -> String {
    serde_json::to_string_pretty(v).expect("output serializes") + "\n"
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => write_text(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn print_record(r: &Record, json: bool) {
    if json {
        print!("{}", to_json(r));
        return;
    }
    let m1 = r.params.m1.map(|m1| format!(" m1={m1}")).unwrap_or_default();
    let rel = if r.theorem == TheoremTag::SimplexExact { "==" } else { ">=" };
    println!(
        "{}: m={} d={} k={}{m1} actual={} {rel} bound={} slack={} {}",
        r.theorem,
        r.params.m,
        r.params.d,
        r.params.k,
        r.actual,
        r.bound,
        r.slack(),
        if r.satisfied { "satisfied" } else { "VIOLATED" }
    );
}

fn cmd_sumset(a: &Path, b: &Path, k: usize, out: Option<&Path>) -> Outcome {
    let a: Points = read_json(a)?;
    let b: Points = read_json(b)?;
    let sum = a_plus_kb(&a, &b, k)?;
    if let Some(out) = out {
        write_text(out, &to_json(&sum.points))?;
    }
    println!("{}", sum.cardinality);
    Ok(())
}

fn cmd_decompose(b: &Path, out: Option<&Path>, check: bool) -> Outcome {
    let b: Points = read_json(b)?;
    let d = decompose(&b)?;
    let json = d.to_json();
    if out.is_some() || !check {
        emit(out, &(json + "\n"))?;
    }
    if !check {
        return Ok(());
    }
    let c = d.check();
    let mark = |ok: bool| if ok { "pass" } else { "FAIL" };
    println!("simplices: {}", d.len());
    println!("cover: {} (simplex volumes {} / hull volume {})", mark(c.cover.pass), c.cover.simplex_volume_sum, c.cover.hull_volume);
    println!("regular position: {}", mark(c.regular.pass));
    println!("adjacency chain: {}", mark(c.adjacency.pass));
    println!("vertex property: {}", mark(c.property_b.pass));
    verdict(c.pass())
}

fn cmd_verify(theorem: &str, a: &Path, b: Option<&Path>, chain: &[PathBuf], k: usize, json: bool) -> Outcome {
    if theorem == "subsum" {
        let inst: Subsum = read_json(a)?;
        let r = subsum_report(&inst)?;
        if json {
            print!("{}", to_json(&r));
        } else {
            println!(
                "subsum: k={} |S|={} |S'|={} sum|S_i|={} bound={} {}",
                r.k,
                r.s,
                r.s_prime,
                r.s_i_total(),
                r.bound,
                if r.chain_satisfied { "satisfied" } else { "VIOLATED" }
            );
        }
        return verdict(r.chain_satisfied);
    }
    let tag: TheoremTag = theorem.parse()?;
    let a: Points = read_json(a)?;
    let record = if tag == TheoremTag::NestedChain {
        let chain = chain.iter().map(|p| read_json::<Points>(p)).collect::<Result<Vec<_>, _>>()?;
        verify_nested_chain(&a, &chain)?
    } else {
        let b = b.map(read_json::<Points>).transpose()?;
        verify_theorem(tag, &a, b.as_ref(), k)?
    };
    print_record(&record, json);
    verdict(record.satisfied)
}

fn cmd_explore(campaign: Campaign, cfg: GeneratorConfig, report: Option<&Path>, csv: Option<&Path>) -> Outcome {
    let r: Report = run_campaign(&cfg, campaign)?;
    emit(report, &r.to_json())?;
    if let Some(csv) = csv {
        write_text(csv, &r.to_csv()?)?;
    }
    let min = r.summary.min_slack.as_ref().map_or("-".to_string(), ToString::to_string);
    eprintln!(
        "{}: {} instances, {} violations, min slack {min}{}",
        r.campaign,
        r.summary.instances,
        r.summary.violations,
        if r.exploratory { " (exploratory)" } else { "" }
    );
    if let Some(q1) = &r.summary.question_1 {
        eprintln!("question 1: min |S'|/sum|S_i| = {} (conjectured constant {})", q1.min_ratio, q1.conjectured);
    }
    verdict(r.passed())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Sumset { a, b, k, out } => cmd_sumset(&a, &b, k, out.as_deref()),
        Command::Decompose { b, out, check } => cmd_decompose(&b, out.as_deref(), check),
        Command::Verify { theorem, a, b, chain, k, json } => cmd_verify(&theorem, &a, b.as_deref(), &chain, k, json),
        Command::Explore { question, theorem, dim, k, instances, seed, coord_bound, a_max, b_max, m1, report, csv } => {
            let campaign = match (question, theorem) {
                (Some(1), _) => Campaign::Question1,
                (Some(_), _) => Campaign::Question2,
                (None, Some(t)) => t.parse()?,
                (None, None) => unreachable!("clap requires one target"),
            };
            let k = k.unwrap_or(match campaign {
                Campaign::Subsum | Campaign::Question1 | Campaign::Question2 => 2,
                Campaign::Theorem(_) => 1,
            });
            let cfg = GeneratorConfig {
                dim,
                a_size: [1, a_max],
                b_size: [(dim + 1).min(b_max), b_max],
                coord_bound,
                k,
                seed,
                instances,
                m1,
            };
            cmd_explore(campaign, cfg, report.as_deref(), csv.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
