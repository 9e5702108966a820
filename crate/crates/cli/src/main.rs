mod bench;
mod report;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use domtsp::dominate::{cycle_count, domination_exact, domination_mc, solve, DominationReport, SolveOptions};
use domtsp::instance::{
    gen_bernoulli, gen_planted_clique, parse_graph, parse_instance_with_cap, parse_tour, rational_to_f64,
    reduction_instance, reduction_size, serialize_instance, serialize_tour, ParseError, DEFAULT_REDUCTION_CAP,
    DEFAULT_SIZE_CAP,
};
use domtsp::{classify, Instance01};
use serde::Serialize;

use report::{ClassifyJson, ErrorJson, EstimateJson, ReduceJson, SolveJson, SCHEMA};

/// Failures mapped onto the documented exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Missing(String),
    Parse(String),
    Precondition(String),
    EmptyCorpus(String),
    Output(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Missing(_) => 3,
            Failure::Parse(_) => 4,
            Failure::Precondition(_) => 5,
            Failure::EmptyCorpus(_) => 6,
            Failure::Output(_) => 1,
        }
    }

    fn label(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Missing(_) => "file-not-found",
            Failure::Parse(_) => "parse",
            Failure::Precondition(_) => "precondition",
            Failure::EmptyCorpus(_) => "empty-corpus",
            Failure::Output(_) => "output",
        }
    }

    fn reason(&self) -> &str {
        match self {
            Failure::Usage(s)
            | Failure::Missing(s)
            | Failure::Parse(s)
            | Failure::Precondition(s)
            | Failure::EmptyCorpus(s)
            | Failure::Output(s) => s,
        }
    }

    pub fn output<E: fmt::Display>(e: E) -> Failure {
        Failure::Output(e.to_string())
    }
}

pub fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Missing(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Output(format!("{}: {e}", path.display())))
}

fn parse_failure(path: &Path, e: ParseError) -> Failure {
    let msg = format!("{}: {e}", path.display());
    match e {
        ParseError::TooLarge { .. } => Failure::Precondition(msg),
        _ => Failure::Parse(msg),
    }
}

fn load_instance(path: &Path, cap: usize) -> Result<Instance01, Failure> {
    parse_instance_with_cap(&read_text(path)?, cap).map_err(|e| parse_failure(path, e))
}

/// A number given as `a/b` or as a decimal; the text is kept for echoing.
#[derive(Clone, Debug)]
struct Fraction {
    text: String,
    value: f64,
}

impl FromStr for Fraction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let value = match s.split_once('/') {
            Some((a, b)) => {
                let a: i64 = a.trim().parse().map_err(|_| format!("bad numerator in `{s}`"))?;
                let b: i64 = b.trim().parse().map_err(|_| format!("bad denominator in `{s}`"))?;
                if b <= 0 {
                    return Err(format!("denominator must be positive in `{s}`"));
                }
                a as f64 / b as f64
            }
            None => s.trim().parse::<f64>().map_err(|_| format!("`{s}` is not a number"))?,
        };
        if !value.is_finite() {
            return Err(format!("`{s}` is not finite"));
        }
        Ok(Fraction { text: s.trim().to_string(), value })
    }
}

/// An exponent strictly between 0 and 1/2.
fn parse_eps(s: &str) -> Result<Fraction, String> {
    let f: Fraction = s.parse()?;
    if f.value > 0.0 && f.value < 0.5 {
        Ok(f)
    } else {
        Err(format!("eps must lie in (0, 1/2), got {s}"))
    }
}

#[derive(Parser)]
#[command(name = "domtsp", version, about = "Tours with provable domination ratio for {0,1}-weighted TSP")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random or structured instance file.
    Gen(GenArgs),
    /// Classify an instance and compute a tour with its guarantees.
    Solve(SolveArgs),
    /// Report the class of an instance.
    Classify(ClassifyArgs),
    /// Estimate the domination fraction of a given tour.
    Estimate(EstimateArgs),
    /// Build the Hamilton-path reduction instance of a graph.
    Reduce(ReduceArgs),
    /// Solve and estimate every `.tsp01` file of a directory into a CSV.
    Bench(BenchCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Bernoulli,
    Clique,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long)]
    n: usize,
    /// Probability of weight 1 (bernoulli), e.g. 0.5 or 1/2.
    #[arg(long)]
    p: Option<Fraction>,
    /// Size of the weight-1 clique (clique).
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short = 'o', long = "out")]
    out: PathBuf,
}

#[derive(Args)]
#[command(group(ArgGroup::new("empirical").args(["exact", "samples"])))]
struct SolveArgs {
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    #[arg(long, default_value = "1/28", value_parser = parse_eps)]
    eps: Fraction,
    /// Print the JSON report instead of the text summary.
    #[arg(long)]
    json: bool,
    /// Also write the tour to this file.
    #[arg(long)]
    tour_out: Option<PathBuf>,
    /// Attach the exact domination fraction (n <= 12).
    #[arg(long)]
    exact: bool,
    /// Attach a Monte Carlo estimate from this many sampled tours.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Largest accepted vertex count.
    #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
    max_n: usize,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    #[arg(long, default_value = "1/28", value_parser = parse_eps)]
    eps: Fraction,
    #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
    max_n: usize,
}

#[derive(Args)]
#[command(group(ArgGroup::new("method").args(["exact", "samples"]).required(true)))]
struct EstimateArgs {
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    #[arg(short = 't', long = "tour")]
    tour: PathBuf,
    #[arg(long)]
    exact: bool,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(short = 'g', long = "graph")]
    graph: PathBuf,
    #[arg(long, value_parser = parse_eps)]
    eps: Fraction,
    #[arg(short = 'o', long = "out")]
    out: PathBuf,
    /// Use this instance size instead of the smallest valid one.
    #[arg(long)]
    n_prime: Option<usize>,
    /// Upper limit of the instance-size search.
    #[arg(long, default_value_t = DEFAULT_REDUCTION_CAP)]
    cap: usize,
}

#[derive(Args)]
struct BenchCmd {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Largest n estimated by exhaustive enumeration; larger ones are sampled.
    #[arg(long, default_value_t = 11)]
    exact_max: usize,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, default_value = "1/28", value_parser = parse_eps)]
    eps: Fraction,
    /// Fill the wall-time columns (makes the output run-dependent).
    #[arg(long)]
    timing: bool,
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(Failure::output)?;
    println!("{text}");
    Ok(())
}

fn cmd_gen(a: &GenArgs) -> Result<(), Failure> {
    if a.n < 3 {
        return Err(Failure::Usage(format!("--n must be at least 3, got {}", a.n)));
    }
    let inst = match (a.model, &a.p, a.r) {
        (Model::Bernoulli, Some(p), None) => gen_bernoulli(a.n, p.value, a.seed),
        (Model::Clique, None, Some(r)) => gen_planted_clique(a.n, r),
        (Model::Bernoulli, _, _) => return Err(Failure::Usage("bernoulli takes --p and not --r".into())),
        (Model::Clique, _, _) => return Err(Failure::Usage("clique takes --r and not --p".into())),
    }
    .map_err(|e| Failure::Usage(e.to_string()))?;
    write_text(&a.out, &serialize_instance(&inst))
}

fn print_summary(rep: &DominationReport) {
    let c = &rep.classification;
    let n = c.n;
    println!("n = {n}, d = {}, kind = {}, algorithm {}", c.d, c.kind, rep.algorithm.as_str());
    println!("tour weight {} (mean tour weight dn = {:.4})", rep.tour_weight, rational_to_f64(&c.d) * n as f64);
    match rep.guarantee.ratio {
        Some(_) if rep.guarantee.vacuous => println!("certified ratio 0 ({}, vacuous at this n)", rep.guarantee.source.as_str()),
        Some(r) => println!("certified ratio {r:.6} ({})", rep.guarantee.source.as_str()),
        None => println!("no certified ratio"),
    }
    if let Some(e) = &rep.empirical {
        println!("empirical domination {:.6} +/- {:.6} ({}, {} tours)", e.estimate, e.halfwidth, e.method.as_str(), e.samples);
    }
}

fn cmd_solve(a: &SolveArgs) -> Result<(), Failure> {
    let inst = load_instance(&a.input, a.max_n)?;
    let opts = SolveOptions {
        eps: a.eps.value,
        exact: a.exact,
        samples: a.samples,
        seed: a.seed,
        workers: a.workers,
    };
    let rep = solve(&inst, &opts).map_err(|e| Failure::Precondition(e.to_string()))?;
    if let Some(path) = &a.tour_out {
        write_text(path, &serialize_tour(&rep.tour))?;
    }
    if a.json {
        print_json(&SolveJson::new(&rep, &a.eps.text))
    } else {
        print_summary(&rep);
        Ok(())
    }
}

fn cmd_classify(a: &ClassifyArgs) -> Result<(), Failure> {
    let inst = load_instance(&a.input, a.max_n)?;
    print_json(&ClassifyJson::new(&classify(&inst, a.eps.value), &a.eps.text))
}

fn cmd_estimate(a: &EstimateArgs) -> Result<(), Failure> {
    let inst = load_instance(&a.input, DEFAULT_SIZE_CAP)?;
    let tour = parse_tour(&read_text(&a.tour)?).map_err(|e| parse_failure(&a.tour, e))?;
    let n = inst.vertex_count();
    let weight = inst.tour_weight(&tour).map_err(|e| Failure::Precondition(e.to_string()))?;
    let precondition = |e: domtsp::dominate::DominateError| Failure::Precondition(e.to_string());
    let out = if a.exact {
        let p = domination_exact(&inst, &tour).map_err(precondition)?;
        EstimateJson::exact(n, weight, p, cycle_count(n))
    } else {
        let k = a.samples.expect("group requires one of the methods");
        let mc = domination_mc(&inst, &tour, k, a.seed, a.workers).map_err(precondition)?;
        EstimateJson::monte_carlo(n, weight, &mc)
    };
    print_json(&out)
}

fn cmd_reduce(a: &ReduceArgs) -> Result<(), Failure> {
    let g = parse_graph(&read_text(&a.graph)?).map_err(|e| parse_failure(&a.graph, e))?;
    let n = g.vertex_count();
    let n_prime = match a.n_prime {
        Some(m) => m,
        None => reduction_size(n, a.eps.value, a.cap).map_err(|e| Failure::Precondition(e.to_string()))?,
    };
    let red = reduction_instance(&g, n_prime).map_err(|e| Failure::Usage(e.to_string()))?;
    write_text(&a.out, &serialize_instance(&red.instance))?;
    print_json(&ReduceJson {
        schema: SCHEMA,
        n,
        n_prime,
        eps: a.eps.text.clone(),
        output: a.out.display().to_string(),
        s_set: red.s_set.iter().map(|v| v + 1).collect(),
    })
}

fn cmd_bench(a: &BenchCmd) -> Result<(), Failure> {
    let args = bench::BenchArgs {
        corpus: a.corpus.clone(),
        out: a.out.clone(),
        exact_max: a.exact_max,
        samples: a.samples,
        seed: a.seed,
        workers: a.workers,
        eps: a.eps.value,
        timing: a.timing,
    };
    let rows = bench::run(&args)?;
    eprintln!("wrote {rows} rows to {}", a.out.display());
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Estimate(a) => cmd_estimate(a),
        Command::Reduce(a) => cmd_reduce(a),
        Command::Bench(a) => cmd_bench(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let body = ErrorJson {
                schema: SCHEMA,
                error: f.label(),
                reason: f.reason().to_string(),
            };
            eprintln!("{}", serde_json::to_string(&body).unwrap_or_else(|_| f.reason().to_string()));
            ExitCode::from(f.code())
        }
    }
}
