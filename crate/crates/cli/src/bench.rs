//! `bench`: solve and estimate every instance of a corpus directory.

use std::path::{Path, PathBuf};
use std::time::Instant;

use domtsp::dominate::{domination_exact, domination_mc, solve, DominateError, Empirical, SolveOptions};
use domtsp::instance::{parse_instance, rational_to_f64};
use domtsp::classify;
use serde::Serialize;

use crate::{read_text, Failure};

/// Header row of the CSV; the leading `schema` column carries the version.
pub const BENCH_HEADER: &str = "schema,instance_id,n,d_num,d_den,kind,algorithm,tour_weight,dn,\
certified_ratio,certified_source,empirical_method,empirical_estimate,empirical_halfwidth,samples,\
classify_ms,solve_ms,estimate_ms";

#[derive(Serialize)]
struct BenchRecord {
    schema: u32,
    instance_id: String,
    n: usize,
    d_num: i128,
    d_den: i128,
    kind: &'static str,
    algorithm: &'static str,
    tour_weight: usize,
    dn: f64,
    certified_ratio: Option<f64>,
    certified_source: &'static str,
    empirical_method: &'static str,
    empirical_estimate: f64,
    empirical_halfwidth: f64,
    samples: u64,
    classify_ms: Option<f64>,
    solve_ms: Option<f64>,
    estimate_ms: Option<f64>,
}

pub struct BenchArgs {
    pub corpus: PathBuf,
    pub out: PathBuf,
    pub exact_max: usize,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    pub eps: f64,
    pub timing: bool,
}

fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let entries = std::fs::read_dir(dir).map_err(|e| Failure::Missing(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "tsp01"))
        .collect();
    files.sort();
    Ok(files)
}

fn precondition(e: DominateError) -> Failure {
    Failure::Precondition(e.to_string())
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn run(args: &BenchArgs) -> Result<usize, Failure> {
    let files = corpus_files(&args.corpus)?;
    if files.is_empty() {
        return Err(Failure::EmptyCorpus(args.corpus.display().to_string()));
    }
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    out.write_record(BENCH_HEADER.split(',')).map_err(Failure::output)?;
    for path in &files {
        let inst = parse_instance(&read_text(path)?).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
        let n = inst.vertex_count();

        let t0 = Instant::now();
        let c = classify(&inst, args.eps);
        let classify_ms = ms(t0);

        let t1 = Instant::now();
        let base = SolveOptions {
            eps: args.eps,
            seed: args.seed,
            workers: args.workers,
            ..Default::default()
        };
        let rep = solve(&inst, &base).map_err(precondition)?;
        let solve_ms = ms(t1);
        debug_assert_eq!(rep.classification, c);

        let t2 = Instant::now();
        let empirical = if n <= args.exact_max {
            Empirical::exact(domination_exact(&inst, &rep.tour).map_err(precondition)?, n)
        } else {
            Empirical::from_mc(
                &domination_mc(&inst, &rep.tour, args.samples, args.seed, args.workers).map_err(precondition)?,
            )
        };
        let estimate_ms = ms(t2);

        let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let d = &rep.classification.d;
        let record = BenchRecord {
            schema: crate::report::SCHEMA,
            instance_id: id,
            n,
            d_num: *d.numer(),
            d_den: *d.denom(),
            kind: rep.classification.kind.as_str(),
            algorithm: rep.algorithm.as_str(),
            tour_weight: rep.tour_weight,
            dn: rational_to_f64(d) * n as f64,
            certified_ratio: rep.guarantee.ratio,
            certified_source: rep.guarantee.source.as_str(),
            empirical_method: empirical.method.as_str(),
            empirical_estimate: empirical.estimate,
            empirical_halfwidth: empirical.halfwidth,
            samples: empirical.samples,
            classify_ms: args.timing.then_some(classify_ms),
            solve_ms: args.timing.then_some(solve_ms),
            estimate_ms: args.timing.then_some(estimate_ms),
        };
        out.serialize(record).map_err(Failure::output)?;
    }
    let bytes = out.into_inner().map_err(|e| Failure::Output(e.to_string()))?;
    std::fs::write(&args.out, bytes).map_err(|e| Failure::Output(format!("{}: {e}", args.out.display())))?;
    Ok(files.len())
}
