mod inputs;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use dold_thom::dold_thom::dold_thom_space;
use dold_thom::homology::{homology, normalized_chains, ChainComplex};
use dold_thom::nerve::classifying_space;
use dold_thom::simplicial::{parse_simplicial, write_simplicial, SimplicialSet};
use dold_thom::suites::{run_suite, Check};
use dold_thom::monoid::Coefficients;
use serde_json::json;

use inputs::{load_space, MonoidInput, MonoidSource};
use report::{RunReport, Timing};

const THREADS_ENV: &str = "DTF_THREADS";

#[derive(Parser)]
#[command(name = "dtf", version, about = "Classifying spaces and Dold-Thom spaces of partial abelian monoids, checked by integer homology")]
struct Cli {
    /// Worker threads (default: the DTF_THREADS variable, else all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Leave timing out of the report so runs can be diffed.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a monoid description and check the axioms.
    Validate {
        /// Description file, or `builtin:<tag>`.
        monoid: String,
    },
    /// Build the classifying space BM and compute its homology.
    Nerve {
        monoid: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Build the Dold-Thom space M[X] (or M_n[X]) and compute its homology.
    DoldThom {
        monoid: String,
        /// `sphere:n`, `wedge:<spec>*k`, or a simplicial interchange file.
        space: String,
        /// At most this many labeled points per configuration.
        #[arg(long)]
        bound: Option<usize>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run a named verification suite.
    Verify {
        /// One of nerve-circle, trivial-smash, functoriality, identities, filtration.
        suite: String,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Highest materialized simplicial level (default: homology degree + 1).
    #[arg(long)]
    max_dim: Option<usize>,
    #[arg(long, default_value_t = 3)]
    homology_through: usize,
    /// Expected homology, e.g. "(Z, Z/2, 0)".
    #[arg(long)]
    expect: Option<String>,
    /// Expected reduced homology.
    #[arg(long)]
    expect_reduced: Option<String>,
    /// Write the space in interchange format.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write each boundary matrix as sparse triplets into this directory.
    #[arg(long)]
    export_matrices: Option<PathBuf>,
}

impl RunArgs {
    fn depth(&self) -> Result<usize> {
        let needed = self.homology_through + 1;
        match self.max_dim {
            Some(d) if d < needed => bail!("--max-dim {d} is too small for homology through degree {}; need {needed}", self.homology_through),
            Some(d) => Ok(d),
            None => Ok(needed),
        }
    }
}

fn configure_threads(flag: Option<usize>) -> Result<()> {
    let from_env = match std::env::var(THREADS_ENV) {
        Ok(v) => Some(v.parse::<usize>().with_context(|| format!("{THREADS_ENV}=`{v}` is not a thread count"))?),
        Err(_) => None,
    };
    if let Some(n) = flag.or(from_env) {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("cannot configure the thread pool")?;
    }
    Ok(())
}

fn validate(report: &mut RunReport, arg: &str) -> Result<()> {
    let input = MonoidInput::load(arg)?;
    report.input_hashes.insert(arg.to_string(), input.hash.clone());
    report.push(Check::flag("parse", true));
    let (violations, coeffs) = match input.source {
        MonoidSource::Builtin(c) => (Vec::new(), Some(c)),
        MonoidSource::File(d) => d.validate(),
    };
    let computed = if violations.is_empty() {
        "no violations".to_string()
    } else {
        violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
    };
    report.push(Check::new("axioms", "no violations", computed));
    if let Some(c) = coeffs {
        let carrier = c.carrier();
        report.results = json!({
            "elements": carrier.names(),
            "zero": carrier.name(carrier.zero()),
            "filtration_levels": c.level_count(),
            "total": carrier.is_total(),
            "trivial_multiplication": carrier.has_trivial_multiplication(),
            "fingerprint": c.fingerprint(),
        });
    }
    Ok(())
}

/// Checks and results shared by `nerve` and `dold-thom`.
fn analyze(report: &mut RunReport, x: &SimplicialSet, run: &RunArgs) -> Result<()> {
    let violations = x.validate_identities();
    let computed = match violations.first() {
        None => "0 violations".to_string(),
        Some(v) => format!("{} violations, first: {v}", violations.len()),
    };
    report.push(Check::new("simplicial identities", "0 violations", computed));

    let chains: ChainComplex = normalized_chains(x, run.homology_through)?;
    let defect = chains.boundary_defect();
    report.push(Check::new("boundary squares to zero", "true", defect.is_none().to_string()));
    let h = homology(&chains, false)?;
    let hr = homology(&chains, true)?;
    if let Some(expected) = &run.expect {
        report.push(Check::new("homology", expected.trim(), h.to_string()));
    }
    if let Some(expected) = &run.expect_reduced {
        report.push(Check::new("reduced homology", expected.trim(), hr.to_string()));
    }

    let text = write_simplicial(x);
    let round_trip = parse_simplicial(&text).map(|y| &y == x).unwrap_or(false);
    report.push(Check::flag("interchange round trip", round_trip));
    if let Some(path) = &run.out {
        std::fs::write(path, &text).with_context(|| format!("cannot write `{}`", path.display()))?;
    }
    if let Some(dir) = &run.export_matrices {
        std::fs::create_dir_all(dir).with_context(|| format!("cannot create `{}`", dir.display()))?;
        for k in 1..=run.homology_through + 1 {
            let path = dir.join(format!("boundary_{k}.triplets"));
            std::fs::write(&path, chains.boundary(k).write_triplets()).with_context(|| format!("cannot write `{}`", path.display()))?;
        }
    }
    report.results = json!({
        "depth": x.depth(),
        "level_sizes": x.level_sizes(),
        "nondegenerate": chains.ranks(),
        "homology": h.to_string(),
        "reduced_homology": hr.to_string(),
        "betti": h.betti(),
        "fingerprint": x.fingerprint(),
    });
    Ok(())
}

fn nerve(report: &mut RunReport, arg: &str, run: &RunArgs) -> Result<()> {
    let depth = run.depth()?;
    let input = MonoidInput::load(arg)?;
    report.input_hashes.insert(arg.to_string(), input.hash.clone());
    let m = match input.coefficients()? {
        Coefficients::Plain(m) => m,
        Coefficients::Filtered(_) => bail!("the classifying space needs an unfiltered monoid"),
    };
    let b = classifying_space(&m, depth)?;
    analyze(report, b.space(), run)
}

fn dold_thom(report: &mut RunReport, arg: &str, spec: &str, bound: Option<usize>, run: &RunArgs) -> Result<()> {
    let depth = run.depth()?;
    let input = MonoidInput::load(arg)?;
    report.input_hashes.insert(arg.to_string(), input.hash.clone());
    let coeffs = input.coefficients()?;
    let (base, hash) = load_space(spec, depth)?;
    report.input_hashes.insert(spec.to_string(), hash);
    let space = dold_thom_space(&coeffs, &base, bound, depth)?;
    analyze(report, &Arc::clone(space.space()), run)
}

fn verify(report: &mut RunReport, suite: &str) -> Result<()> {
    for check in run_suite(suite)? {
        report.push(check);
    }
    report.results = json!({ "suite": suite, "checks": report.checks.len() });
    Ok(())
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let mut report = RunReport::new(argv.into_iter().skip(1).collect());
    let start = Instant::now();
    let outcome = configure_threads(cli.threads).and_then(|()| match &cli.command {
        Command::Validate { monoid } => validate(&mut report, monoid),
        Command::Nerve { monoid, run } => nerve(&mut report, monoid, run),
        Command::DoldThom { monoid, space, bound, run } => dold_thom(&mut report, monoid, space, *bound, run),
        Command::Verify { suite } => verify(&mut report, suite),
    });
    if !cli.no_timing {
        report.timing = Some(Timing { total_seconds: start.elapsed().as_secs_f64() });
    }
    let code = match outcome {
        Err(e) => {
            report.error = Some(format!("{e:#}"));
            2
        }
        Ok(()) if report.all_pass() => 0,
        Ok(()) => 1,
    };
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    ExitCode::from(code)
}
