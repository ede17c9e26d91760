//! Command-line front end: argument parsing, file formats and JSON reports.

pub mod format;
mod report;

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use blockdesign::absorb::verify_absorber;
use blockdesign::boost::{boost_weights, boosted_nibble, edge_gadget, gadget_bound};
use blockdesign::divisibility::{admissible_params, check_design_divisible, check_multi_divisible};
use blockdesign::packing::{exact_decompose, nibble_pack, verify_design, Decompose};
use blockdesign::properties::{
    check_random_in, check_supercomplex, check_typicality, measure_density, measure_extendability,
    measure_regularity, Thresholds,
};
use blockdesign::set::combinations;
use blockdesign::vortex::{build_vortex, iterate_pipeline, vortex_randomness, PipelineOptions};
use blockdesign::{Complex, Error, ParamSet, RGraph, Vertex, VertexSet};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::{BigInt, BigRational, Rational64, ToPrimitive};
use serde_json::{json, Value};

use format::{parse_design, parse_hypergraph, write_design, DesignFile, HypergraphFile};
use report::{approx, property, rat, sets};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "blockdesign", version, about = "Construct and verify block designs and clique decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Seed for every randomized step.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads for restart-parallel steps; output does not depend on it.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Search-node budget per exact-cover run.
    #[arg(long)]
    budget: Option<u64>,
    /// Wall-clock limit per exact-cover run in milliseconds.
    #[arg(long)]
    time_ms: Option<u64>,
}

impl Common {
    fn params(&self, q: usize, r: usize, lambda: u64) -> ParamSet {
        let mut p = ParamSet::new(q, r).with_seed(self.seed).with_lambda(lambda);
        p.threads = self.threads.max(1);
        if let Some(b) = self.budget {
            p.budget.nodes = b;
        }
        p.budget.time_ms = self.time_ms;
        p
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Method {
    Exact,
    Pipeline,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Check {
    Regularity,
    Density,
    Extendability,
    Supercomplex,
    Typicality,
    RandomIn,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose the complete r-graph on n vertices into q-cliques.
    Solve {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        lambda: u64,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        /// Write the design file here instead of listing blocks in the report.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Check a design file against a host hypergraph.
    Verify {
        /// Design file, or - for stdin.
        #[arg(long)]
        design: String,
        /// Hypergraph file, - for stdin, or complete:<n>; defaults to the complete graph of the design.
        #[arg(long)]
        host: Option<String>,
        /// Overrides the lambda of the design header.
        #[arg(long)]
        lambda: Option<u64>,
    },
    /// Check the divisibility conditions of a host hypergraph.
    CheckDiv {
        /// Hypergraph file, - for stdin, or complete:<n>.
        #[arg(long)]
        host: String,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = 1)]
        lambda: u64,
    },
    /// Measure a quantitative property of the clique complex of a host.
    Props {
        #[arg(long, value_enum)]
        check: Check,
        /// Hypergraph file, - for stdin, or complete:<n>.
        #[arg(long)]
        host: String,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: Option<usize>,
        /// Regularity tolerance, as a rational such as 1/100.
        #[arg(long, default_value = "1/100")]
        eps: String,
        /// Density and extendability floor.
        #[arg(long, default_value = "1/100")]
        xi: String,
        /// Typicality tolerance.
        #[arg(long, default_value = "1")]
        c: String,
        /// Edge density for typicality.
        #[arg(long, default_value = "1/2")]
        p: String,
        /// Number of link sets intersected for typicality.
        #[arg(long, default_value_t = 2)]
        h: usize,
        /// Comma-separated vertex subset for random-in.
        #[arg(long)]
        u: Option<String>,
        /// Expected fraction of vertices in the subset, for random-in.
        #[arg(long, default_value = "1/2")]
        mu: String,
        /// Limit on enumerated link families.
        #[arg(long, default_value_t = 2_000_000)]
        enumeration: u64,
    },
    /// Solve and print the edge gadget weights.
    Gadget {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: usize,
        /// Print each q-set of the gadget ground set with its weight instead of a report.
        #[arg(long)]
        dump: bool,
    },
    /// Reweight the q-cliques of a complete complex and compare boosted and plain nibbles.
    BoostDemo {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: usize,
        /// Target density; defaults to half the measured density.
        #[arg(long)]
        d_prime: Option<String>,
        /// Print the weights instead of a report.
        #[arg(long)]
        dump: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Leftover statistics of the nibble on complete complexes.
    NibbleBench {
        /// Comma-separated vertex counts.
        #[arg(long, default_value = "30,60,90")]
        n_list: String,
        #[arg(long, default_value_t = 3)]
        q: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Number of seeds per vertex count.
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Build a vortex on the complete complex and optionally run the pipeline along it.
    Vortex {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1/2")]
        mu: String,
        /// Stop once a level has at most this many vertices.
        #[arg(long, default_value_t = 6)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        q: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Measure the randomness of every level.
        #[arg(long)]
        randomness: bool,
        /// Run the decomposition pipeline with these vortex parameters.
        #[arg(long)]
        solve: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Check that a graph absorbs a given leave inside the complete complex on n vertices.
    Absorb {
        /// Absorber file.
        #[arg(long)]
        absorber: String,
        /// Leave file.
        #[arg(long)]
        leave: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
        #[command(flatten)]
        common: Common,
    },
}

/// A finished command: a report for stdout, optional extra text, and an exit code.
struct Outcome {
    code: i32,
    report: Option<Value>,
    text: Option<String>,
    message: Option<String>,
}

impl Outcome {
    fn report(code: i32, report: Value) -> Self {
        Outcome { code, report: Some(report), text: None, message: None }
    }
}

/// A command failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } | Error::Failure(_) => EXIT_BUDGET,
            Error::InvalidInput { .. } => EXIT_NEGATIVE,
            Error::InvalidArgument(_) | Error::Unsupported(_) | Error::Internal(_) => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<format::ParseError> for Failure {
    fn from(e: format::ParseError) -> Self {
        usage(format!("malformed input: {e}"))
    }
}

/// Parses `argv` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    run_with(argv, &mut stdout, &mut stderr)
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(o) => {
            if let Some(t) = &o.text {
                let _ = write!(out, "{t}");
            }
            if let Some(r) = &o.report {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(r).expect("report serializes"));
            }
            if let Some(m) = &o.message {
                let _ = writeln!(err, "{m}");
            }
            o.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("reading {path}: {e}")))
    }
}

/// A host given as `complete:<n>` or as a hypergraph file.
fn read_host(spec: &str, r: Option<usize>) -> Result<HypergraphFile, Failure> {
    if let Some(n) = spec.strip_prefix("complete:") {
        let n: usize = n.parse().map_err(|_| usage(format!("bad vertex count in '{spec}'")))?;
        let r = r.ok_or_else(|| usage("--r is required with a complete host"))?;
        if r == 0 || r > n.max(1) || n > Vertex::MAX as usize {
            return Err(usage(format!("cannot build complete:{n} with r={r}")));
        }
        return Ok(HypergraphFile::from_graph(&RGraph::complete(n, r)));
    }
    let h = parse_hypergraph(&read_source(spec)?)?;
    if let Some(r) = r {
        if r != h.r {
            return Err(usage(format!("host has r={}, but --r {r} was given", h.r)));
        }
    }
    Ok(h)
}

fn parse_big(name: &str, s: &str) -> Result<BigRational, Failure> {
    s.parse::<BigRational>().map_err(|_| usage(format!("--{name}: '{s}' is not a rational such as 3/4")))
}

fn parse_small(name: &str, s: &str) -> Result<Rational64, Failure> {
    s.parse::<Rational64>().map_err(|_| usage(format!("--{name}: '{s}' is not a rational such as 3/4")))
}

fn check_qr(q: usize, r: usize) -> Result<(), Failure> {
    if r == 0 || q <= r {
        return Err(usage(format!("need q > r >= 1, got q={q} r={r}")));
    }
    if q + r > blockdesign::set::MAX_SET {
        return Err(usage(format!("q + r = {} exceeds {}", q + r, blockdesign::set::MAX_SET)));
    }
    Ok(())
}

fn check_n(n: usize) -> Result<(), Failure> {
    if n > Vertex::MAX as usize {
        return Err(usage(format!("n = {n} is too large")));
    }
    Ok(())
}

fn dispatch(cmd: Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::Solve { n, q, r, lambda, method, out, common } => solve(n, q, r, lambda, method, out, &common),
        Command::Verify { design, host, lambda } => verify(&design, host.as_deref(), lambda),
        Command::CheckDiv { host, q, r, lambda } => check_div(&host, q, r, lambda),
        Command::Props { check, host, q, r, eps, xi, c, p, h, u, mu, enumeration } => {
            props(check, &host, q, r, [&eps, &xi, &c, &p, &mu], h, u.as_deref(), enumeration)
        }
        Command::Gadget { q, r, dump } => gadget(q, r, dump),
        Command::BoostDemo { n, q, r, d_prime, dump, common } => boost_demo(n, q, r, d_prime.as_deref(), dump, &common),
        Command::NibbleBench { n_list, q, r, seeds, common } => nibble_bench(&n_list, q, r, seeds, &common),
        Command::Vortex { n, mu, m, q, r, randomness, solve, common } => {
            vortex(n, &mu, m, q, r, randomness, solve, &common)
        }
        Command::Absorb { absorber, leave, n, q, common } => absorb(&absorber, &leave, n, q, &common),
    }
}

fn run_info(common: &Common, p: &ParamSet) -> Value {
    json!({
        "seed": common.seed,
        "budget": { "nodes": p.budget.nodes, "time_ms": p.budget.time_ms, "retries": p.budget.retries },
    })
}

fn solve(
    n: usize,
    q: usize,
    r: usize,
    lambda: u64,
    method: Method,
    out: Option<PathBuf>,
    common: &Common,
) -> Result<Outcome, Failure> {
    check_qr(q, r)?;
    check_n(n)?;
    if lambda == 0 {
        return Err(usage("lambda must be at least 1"));
    }
    let p = common.params(q, r, lambda);
    let adm = admissible_params(n, q, r, lambda);
    let mut report = json!({
        "command": "solve",
        "method": format!("{method:?}").to_lowercase(),
        "n": n, "q": q, "r": r, "lambda": lambda,
        "run": run_info(common, &p),
        "admissible": adm.ok,
        "expected_blocks": adm.block_count,
    });
    let (status, blocks, code) = match method {
        Method::Exact => {
            let g = Complex::complete(n, q);
            match exact_decompose(&g, q, r, lambda, &p)? {
                Decompose::Found(b) => ("found", Some(b), EXIT_OK),
                Decompose::Unsat => ("unsat", None, EXIT_NEGATIVE),
                Decompose::Timeout { nodes } => {
                    report["nodes"] = json!(nodes);
                    ("timeout", None, EXIT_BUDGET)
                }
            }
        }
        Method::Pipeline => {
            if lambda != 1 {
                return Err(usage("the pipeline builds designs with lambda = 1 only"));
            }
            if !adm.ok {
                report["status"] = json!("not-divisible");
                report["failing_level"] = json!(adm.failing_level);
                return Ok(Outcome::report(EXIT_NEGATIVE, report));
            }
            let g = Complex::complete(n, q + r);
            let opts = PipelineOptions { attempts: p.budget.retries, ..PipelineOptions::default() };
            let rep = iterate_pipeline(&g, q, r, &p, &opts)?;
            report["pipeline"] = report::pipeline(&rep);
            if rep.success {
                ("found", Some(rep.blocks), EXIT_OK)
            } else {
                ("failed", None, EXIT_BUDGET)
            }
        }
    };
    report["status"] = json!(status);
    if let Some(blocks) = blocks {
        let host = RGraph::complete(n, r);
        let check = verify_design(&host, &blocks, q, lambda);
        report["verified"] = json!(check.ok);
        report["blocks"] = json!(blocks.len());
        let design = DesignFile::canonical(n, q, r, lambda, blocks);
        match out {
            Some(path) => {
                std::fs::write(&path, write_design(&design))
                    .map_err(|e| usage(format!("writing {}: {e}", path.display())))?;
                report["out"] = json!(path.display().to_string());
            }
            None => report["design"] = sets(&design.blocks),
        }
        let code = if check.ok { EXIT_OK } else { EXIT_NEGATIVE };
        return Ok(Outcome::report(code, report));
    }
    Ok(Outcome::report(code, report))
}

fn verify(design: &str, host: Option<&str>, lambda: Option<u64>) -> Result<Outcome, Failure> {
    if design == "-" && host == Some("-") {
        return Err(usage("only one of --design and --host can read stdin"));
    }
    let d = parse_design(&read_source(design)?)?;
    let host_spec = host.map(str::to_string).unwrap_or_else(|| format!("complete:{}", d.n));
    let h = read_host(&host_spec, Some(d.r))?;
    let hg = h.to_graph().map_err(usage)?;
    let lambda = lambda.unwrap_or(d.lambda);
    let rep = verify_design(&hg, &d.blocks, d.q, lambda);
    let first = rep.first_violation();
    let report = json!({
        "command": "verify",
        "n": d.n, "q": d.q, "r": d.r, "lambda": lambda,
        "host_edges": hg.len(),
        "blocks": rep.blocks,
        "ok": rep.ok,
        "first_violation": first,
        "malformed": sets(&rep.malformed),
        "duplicates": sets(&rep.duplicates),
        "foreign": sets(&rep.foreign),
        "miscovered": rep.miscovered.iter().map(|(e, c)| json!({"edge": e.as_slice(), "count": c})).collect::<Vec<_>>(),
    });
    let mut o = Outcome::report(if rep.ok { EXIT_OK } else { EXIT_NEGATIVE }, report);
    o.message = first.map(|v| format!("verification failed: {v}"));
    Ok(o)
}

fn check_div(host: &str, q: usize, r: Option<usize>, lambda: u64) -> Result<Outcome, Failure> {
    let h = read_host(host, r)?;
    check_qr(q, h.r)?;
    if lambda == 0 {
        return Err(usage("lambda must be at least 1"));
    }
    let mut report = json!({
        "command": "check-div",
        "n": h.n, "q": q, "r": h.r, "lambda": lambda,
        "edges": h.edges.len(),
    });
    let ok = if h.is_simple() {
        let g = h.to_graph().map_err(usage)?;
        let rep = check_design_divisible(&g, q, h.r, lambda);
        report["violations"] = rep
            .violations
            .iter()
            .map(|v| json!({"set": v.set.as_slice(), "weighted_degree": v.weighted_degree, "modulus": v.modulus, "residue": v.residue}))
            .collect();
        rep.ok
    } else {
        let mut m = h.to_multi().map_err(usage)?;
        if lambda > 1 {
            let mut scaled = blockdesign::MultiRGraph::on_vertices(m.vertices().to_vec(), m.r());
            for (e, k) in m.entries() {
                scaled.add(*e, k * lambda).map_err(|e| usage(e.to_string()))?;
            }
            m = scaled;
        }
        check_multi_divisible(&m, q)
    };
    report["ok"] = json!(ok);
    let mut o = Outcome::report(if ok { EXIT_OK } else { EXIT_NEGATIVE }, report);
    if !ok {
        o.message = Some("host is not divisible".into());
    }
    Ok(o)
}

#[allow(clippy::too_many_arguments)]
fn props(
    check: Check,
    host: &str,
    q: usize,
    r: Option<usize>,
    rationals: [&String; 5],
    h: usize,
    u: Option<&str>,
    enumeration: u64,
) -> Result<Outcome, Failure> {
    let [eps, xi, c, p_edge, mu] = rationals;
    let hf = read_host(host, r)?;
    let r = hf.r;
    check_qr(q, r)?;
    let graph = hf.to_graph().map_err(usage)?;
    let th = Thresholds { eps: parse_big("eps", eps)?, xi: parse_big("xi", xi)?, c: parse_big("c", c)? };
    let rep = match check {
        Check::Typicality => check_typicality(&graph, h, &parse_big("p", p_edge)?, enumeration)?,
        _ => {
            let g = Complex::induced(&graph, q + r);
            match check {
                Check::Regularity => measure_regularity(&g, None, q, r, &th)?,
                Check::Density => measure_density(&g, q + r, r, &th)?,
                Check::Extendability => measure_extendability(&g, q, r, &th)?,
                Check::Supercomplex => check_supercomplex(&g, q, r, &th, enumeration)?,
                Check::RandomIn => {
                    let u = u.ok_or_else(|| usage("--u is required for random-in"))?;
                    let set = parse_vertex_list(u, hf.n)?;
                    let mut p = ParamSet::new(q, r);
                    p.mu = parse_small("mu", mu)?;
                    p.eps = parse_small("eps", eps)?;
                    p.xi = parse_small("xi", xi)?;
                    p.budget.enumeration = enumeration;
                    check_random_in(&g, &set, None, &p)?
                }
                Check::Typicality => unreachable!(),
            }
        }
    };
    let report = json!({
        "command": "props",
        "check": check.to_possible_value().map(|v| v.get_name().to_string()),
        "n": hf.n, "q": q, "r": r,
        "thresholds": {"eps": rat(&th.eps), "xi": rat(&th.xi), "c": rat(&th.c)},
        "report": property(&rep),
    });
    Ok(Outcome::report(if rep.pass { EXIT_OK } else { EXIT_NEGATIVE }, report))
}

fn parse_vertex_list(s: &str, n: usize) -> Result<Vec<Vertex>, Failure> {
    let mut v = Vec::new();
    for t in s.split(',').filter(|t| !t.trim().is_empty()) {
        let x: usize = t.trim().parse().map_err(|_| usage(format!("--u: '{t}' is not a vertex")))?;
        if x >= n {
            return Err(usage(format!("--u: vertex {x} out of range for n={n}")));
        }
        v.push(x as Vertex);
    }
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

fn gadget(q: usize, r: usize, dump: bool) -> Result<Outcome, Failure> {
    check_qr(q, r)?;
    let g = edge_gadget(q, r)?;
    if dump {
        let ground: Vec<Vertex> = (0..(q + r) as Vertex).collect();
        let e = VertexSet::new(&ground[..r]).expect("r vertices");
        let mut text = String::new();
        for b in combinations(&ground, q) {
            let w = &g.w[b.intersection_len(&e)];
            let verts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            text.push_str(&format!("{}\t{}/{}\n", verts.join(" "), w.numer(), w.denom()));
        }
        return Ok(Outcome { code: EXIT_OK, report: None, text: Some(text), message: None });
    }
    let report = json!({
        "command": "gadget",
        "q": q, "r": r,
        "edge": (0..r).collect::<Vec<_>>(),
        "weights": g.w.iter().enumerate().map(|(j, w)| json!({
            "intersection": j,
            "weight": rat(w),
            "bound": rat(&gadget_bound(q, r, j)),
        })).collect::<Vec<_>>(),
        "identity_checked": q + r <= 8,
    });
    Ok(Outcome::report(EXIT_OK, report))
}

fn boost_demo(n: usize, q: usize, r: usize, d_prime: Option<&str>, dump: bool, common: &Common) -> Result<Outcome, Failure> {
    check_qr(q, r)?;
    check_n(n)?;
    let p = common.params(q, r, 1);
    let g = Complex::complete(n, q + r);
    let target = d_prime.map(|s| parse_big("d-prime", s)).transpose()?;
    let w = boost_weights(&g, q, r, target)?;
    if dump {
        return Ok(Outcome { code: EXIT_OK, report: None, text: Some(w.dump()), message: None });
    }
    let want = &w.d_prime * BigRational::from_integer(BigInt::from(n).pow((q - r) as u32));
    let exact = w.row_sums().values().all(|s| *s == want);
    let (nib, stats) = boosted_nibble(&g, q, r, &p)?;
    let report = json!({
        "command": "boost-demo",
        "n": n, "q": q, "r": r,
        "run": run_info(common, &p),
        "d_prime": rat(&w.d_prime),
        "row_sum": rat(&want),
        "row_sums_exact": exact,
        "psi_min": rat(&w.min),
        "psi_max": rat(&w.max),
        "in_quarter_range": w.in_quarter_range,
        "in_unit_range": w.in_unit_range,
        "selected": stats.selected,
        "boosted_blocks": nib.packing.len(),
        "boosted_leftover": stats.boosted_leftover,
        "baseline_leftover": stats.baseline_leftover,
    });
    Ok(Outcome::report(if exact { EXIT_OK } else { EXIT_NEGATIVE }, report))
}

fn median(mut xs: Vec<BigRational>) -> BigRational {
    xs.sort();
    let k = xs.len();
    if k % 2 == 1 {
        xs[k / 2].clone()
    } else {
        (&xs[k / 2 - 1] + &xs[k / 2]) / BigRational::from_integer(2.into())
    }
}

fn nibble_bench(n_list: &str, q: usize, r: usize, seeds: u64, common: &Common) -> Result<Outcome, Failure> {
    check_qr(q, r)?;
    if seeds == 0 {
        return Err(usage("--seeds must be at least 1"));
    }
    let ns: Vec<usize> = n_list
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| usage(format!("--n-list: '{t}' is not a vertex count"))))
        .collect::<Result<_, _>>()?;
    let base = common.params(q, r, 1);
    let mut rows = Vec::new();
    let mut medians = Vec::new();
    for &n in &ns {
        check_n(n)?;
        let g = Complex::complete(n, q);
        let total = g.level(r).len();
        let mut fractions = Vec::new();
        let mut leftovers = Vec::new();
        for s in 0..seeds {
            let p = base.clone().with_seed(base.seed.wrapping_add(s));
            let nib = nibble_pack(&g, q, r, &p)?;
            leftovers.push(nib.leftover.len());
            fractions.push(BigRational::new(nib.leftover.len().into(), total.max(1).into()));
        }
        let med = median(fractions);
        rows.push(json!({
            "n": n,
            "edges": total,
            "leftover_edges": leftovers,
            "median_leftover_fraction": rat(&med),
            "median_leftover_fraction_approx": approx(med.to_f64().unwrap_or(f64::NAN)),
        }));
        medians.push(med);
    }
    let decreasing = medians.windows(2).all(|w| w[1] < w[0]);
    let report = json!({
        "command": "nibble-bench",
        "q": q, "r": r, "seeds": seeds,
        "run": run_info(common, &base),
        "rows": rows,
        "strictly_decreasing": decreasing,
    });
    Ok(Outcome::report(EXIT_OK, report))
}

#[allow(clippy::too_many_arguments)]
fn vortex(
    n: usize,
    mu: &str,
    m: usize,
    q: usize,
    r: usize,
    randomness: bool,
    solve: bool,
    common: &Common,
) -> Result<Outcome, Failure> {
    check_qr(q, r)?;
    check_n(n)?;
    let mu = parse_small("mu", mu)?;
    let mut p = common.params(q, r, 1);
    p.mu = mu;
    let level = if solve || randomness { q + r } else { 1 };
    let g = Complex::complete(n, level);
    let v = build_vortex(&g, mu, m, &p)?;
    let mut report = json!({
        "command": "vortex",
        "n": n, "q": q, "r": r,
        "mu": mu.to_string(),
        "m_prime": m,
        "run": run_info(common, &p),
        "sizes": v.sizes(),
        "depth": v.depth(),
        "m": v.m,
        "lower_bound_ok": v.lower_bound_ok,
    });
    if randomness {
        let reps = vortex_randomness(&g, &v, &p)?;
        report["randomness"] = reps.iter().map(property).collect();
    }
    let mut code = EXIT_OK;
    if solve {
        let opts = PipelineOptions { mu, m_prime: m, attempts: p.budget.retries, ..PipelineOptions::default() };
        match iterate_pipeline(&g, q, r, &p, &opts) {
            Ok(rep) => {
                if !rep.success {
                    code = EXIT_BUDGET;
                }
                report["pipeline"] = report::pipeline(&rep);
            }
            Err(Error::InvalidInput { reason, .. }) => {
                report["pipeline"] = json!({"success": false, "failure": reason});
                code = EXIT_NEGATIVE;
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Outcome::report(code, report))
}

fn absorb(absorber: &str, leave: &str, n: usize, q: usize, common: &Common) -> Result<Outcome, Failure> {
    if absorber == "-" && leave == "-" {
        return Err(usage("only one of --absorber and --leave can read stdin"));
    }
    let a = parse_hypergraph(&read_source(absorber)?)?.to_graph().map_err(usage)?;
    let h = parse_hypergraph(&read_source(leave)?)?.to_graph().map_err(usage)?;
    if a.r() != h.r() {
        return Err(usage("absorber and leave have different uniformities"));
    }
    check_qr(q, a.r())?;
    check_n(n)?;
    let p = common.params(q, a.r(), 1);
    let g = Complex::complete(n, q);
    let ok = verify_absorber(&g, &a, &h, &p)?;
    let report = json!({
        "command": "absorb",
        "n": n, "q": q, "r": a.r(),
        "run": run_info(common, &p),
        "absorber_edges": a.len(),
        "leave_edges": h.len(),
        "ok": ok,
    });
    Ok(Outcome::report(if ok { EXIT_OK } else { EXIT_NEGATIVE }, report))
}
