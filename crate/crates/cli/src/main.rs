use std::fs;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use binoculars::agent::{Environment, RunTrace, TraceEvent};
use binoculars::explorer::{explore, ExplorationMap};
use binoculars::families::{generate, GeneratorSpec};
use binoculars::graph::PortNumberedGraph;
use binoculars::harness::{
    check_run, render_summary, run_suite, verify_coverage, verify_covering, verify_phase_invariants,
    verify_rooted_isomorphism, CheckFlags, CheckResult, Expectation, ExperimentConfig,
};

#[derive(Parser)]
#[command(version, about = "Explore anonymous port-numbered graphs with a binoculars agent")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as JSON.
    Gen {
        /// Generator spec, e.g. `chordal:n=50,rate=0.4,seed=1,ports=random:2`.
        #[arg(long)]
        spec: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the explorer on a graph file and check the result.
    Explore {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        root: usize,
        #[arg(long, default_value_t = 50.0)]
        budget_factor: f64,
        /// Where to write the JSONL trace.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Where to write the final map.
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Expect::Halt)]
        expect: Expect,
    },
    /// Verify a recorded trace against the graph it was run on.
    Check {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        /// Final map to compare with the graph; defaults to the last snapshot.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Run an experiment suite described by a JSON config.
    Suite {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Expect {
    Halt,
    NoHalt,
    Any,
}

impl From<Expect> for Expectation {
    fn from(e: Expect) -> Self {
        match e {
            Expect::Halt => Expectation::Halt,
            Expect::NoHalt => Expectation::NoHalt,
            Expect::Any => Expectation::Any,
        }
    }
}

fn read_graph(path: &Path) -> Result<PortNumberedGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    PortNumberedGraph::from_json(&text).with_context(|| format!("loading {}", path.display()))
}

fn print_checks<'a>(checks: impl IntoIterator<Item = (&'a str, &'a CheckResult)>) -> bool {
    let mut all = true;
    for (name, c) in checks {
        all &= c.pass;
        match (&c.detail, c.pass) {
            (Some(d), _) => println!("{} {name}: {d}", if c.pass { "ok  " } else { "FAIL" }),
            (None, true) => println!("ok   {name}"),
            (None, false) => println!("FAIL {name}"),
        }
    }
    all
}

fn gen(spec: &str, out: &Path) -> Result<bool> {
    let spec: GeneratorSpec = spec.parse()?;
    let g = generate(&spec)?;
    fs::write(out, g.to_json() + "\n").with_context(|| format!("writing {}", out.display()))?;
    println!("{spec}: {} vertices, {} edges", g.vertex_count(), g.edge_count());
    Ok(true)
}

fn run_explore(
    graph: &Path,
    root: usize,
    budget_factor: f64,
    trace: Option<&Path>,
    map: Option<&Path>,
    expect: Expect,
) -> Result<bool> {
    let g = read_graph(graph)?;
    let env = Environment::with_budget_factor(&g, root, budget_factor)?;
    let outcome = explore(env)?;
    if let Some(path) = trace {
        let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        outcome.trace.write_jsonl(BufWriter::new(file))?;
    }
    if let (Some(path), Some(m)) = (map, &outcome.final_map) {
        fs::write(path, serde_json::to_string(m)? + "\n")?;
    }
    println!(
        "status {:?}, {} moves, {} vertices",
        outcome.status,
        outcome.moves,
        g.vertex_count()
    );
    let checks = check_run(&g, &outcome, expect.into(), &CheckFlags::default());
    Ok(print_checks(checks.iter().map(|(k, v)| (k.as_str(), v))))
}

fn check(trace_path: &Path, graph: &Path, map: Option<&Path>) -> Result<bool> {
    let g = read_graph(graph)?;
    let file = fs::File::open(trace_path).with_context(|| format!("opening {}", trace_path.display()))?;
    let trace = RunTrace::read_jsonl(BufReader::new(file))?;
    let root = trace.root;
    let mut checks: Vec<(&str, CheckResult)> = Vec::new();

    let phases = verify_phase_invariants(&trace, &g, root)?;
    let bad: Vec<String> = phases
        .iter()
        .filter(|p| !p.ok())
        .map(|p| format!("phase {}: {}", p.phase, p.failures.join("; ")))
        .collect();
    checks.push((
        "phase_invariants",
        CheckResult::from_result(if bad.is_empty() { Ok(()) } else { Err(bad.join(" | ")) }),
    ));

    let halted = matches!(trace.events.last(), Some(TraceEvent::Halt));
    if halted {
        let final_map: ExplorationMap = match map {
            Some(p) => serde_json::from_str(&fs::read_to_string(p)?)?,
            None => trace
                .events
                .iter()
                .rev()
                .find_map(|e| match e {
                    TraceEvent::PhaseEnd { map, .. } => map.clone(),
                    _ => None,
                })
                .context("trace has no map snapshot")?,
        };
        checks.push(("final_isomorphism", CheckResult::from_result(verify_rooted_isomorphism(&final_map, &g, root))));
        checks.push((
            "coverage",
            CheckResult::from_result(verify_coverage(&trace, &g, root).map_err(|u| format!("unvisited: {u:?}"))),
        ));
        checks.push(("covering", CheckResult::from_result(verify_covering(&final_map, &trace, &g))));
    } else if map.is_some() {
        bail!("a map was given but the trace does not end in a halt");
    }
    println!("{} phases checked, run {}", phases.len(), if halted { "halted" } else { "did not halt" });
    Ok(print_checks(checks.iter().map(|(k, v)| (*k, v))))
}

fn suite(config: &Path, out: Option<&Path>) -> Result<bool> {
    let text = fs::read_to_string(config).with_context(|| format!("reading {}", config.display()))?;
    let mut cfg: ExperimentConfig = serde_json::from_str(&text).with_context(|| format!("parsing {}", config.display()))?;
    if let Some(dir) = out {
        cfg.output = Some(dir.to_string_lossy().into_owned());
    }
    let res = run_suite(&cfg)?;
    print!("{}", render_summary(&res.summary));
    let failed: Vec<_> = res.reports.iter().filter(|r| !r.passed()).collect();
    for r in failed.iter().take(10) {
        let why: Vec<String> = r
            .checks
            .iter()
            .filter(|(_, c)| !c.pass)
            .map(|(k, c)| format!("{k}: {}", c.detail.as_deref().unwrap_or("failed")))
            .collect();
        println!("FAIL {} root {}: {}", r.spec, r.root, why.join("; "));
    }
    println!("{} runs, {} failed", res.reports.len(), failed.len());
    Ok(failed.is_empty())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Gen { spec, out } => gen(spec, out),
        Command::Explore {
            graph,
            root,
            budget_factor,
            trace,
            map,
            expect,
        } => run_explore(graph, *root, *budget_factor, trace.as_deref(), map.as_deref(), *expect),
        Command::Check { trace, graph, map } => check(trace, graph, map.as_deref()),
        Command::Suite { config, out } => suite(config, out.as_deref()),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
