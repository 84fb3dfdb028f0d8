//! Command line front end.
//!
//! Exit codes: 0 when an optimum is certified, 1 when the problem is proven
//! infeasible, 2 when the search stopped at a limit, 64 for usage errors,
//! 65 for unreadable problem or catalog files.

use crate::plot::Plotter;
use crate::probfile;
use crate::problem::Problem;
use crate::solver::{solve, Branching, Exploration, Options, Solution, Status, UbStrategy};
use crate::trace::TraceEvent;
use std::io::Write;
use std::path::PathBuf;

pub const USAGE: &str = "\
usage: catopt --problem FILE [options]

options:
  --problem FILE          problem file (required)
  --epsilon X             improvement margin, default 1e-6
  --explore ORDER         best | depth | breadth, default best
  --branch RULE           smear | largest | roundrobin, default smear
  --branch-override VARS  comma-separated variables to split first
  --ub STRATEGY           nearest | enumerate | enumerate:CAP, default nearest
  --trace MODE            off | text | json, default off
  --plot DIR              write one SVG per contraction and branch
  --max-nodes N           stop after processing N nodes
  --seed N                accepted for interface stability; the solver
                          is deterministic and ignores it
  --help                  print this help
";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TraceMode {
    Off,
    Text,
    Json,
}

struct Args {
    problem: PathBuf,
    options: Options,
    branch_override_names: Vec<String>,
    trace: TraceMode,
    plot: Option<PathBuf>,
}

fn parse_args(argv: &[String]) -> Result<Option<Args>, String> {
    let mut problem: Option<PathBuf> = None;
    let mut options = Options::default();
    let mut branch_override_names = Vec::new();
    let mut trace = TraceMode::Off;
    let mut plot = None;
    let mut it = argv.iter();
    while let Some(flag) = it.next() {
        if flag.as_str() == "--help" {
            return Ok(None);
        }
        let mut value = || {
            it.next()
                .cloned()
                .ok_or_else(|| format!("{flag} needs a value"))
        };
        match flag.as_str() {
            "--problem" => problem = Some(PathBuf::from(value()?)),
            "--epsilon" => {
                let v: f64 = value()?
                    .parse()
                    .map_err(|_| "--epsilon needs a number".to_string())?;
                if !(v > 0.0 && v.is_finite()) {
                    return Err("--epsilon must be a positive number".to_string());
                }
                options.epsilon = v;
            }
            "--explore" => {
                options.exploration = match value()?.as_str() {
                    "best" => Exploration::Best,
                    "depth" => Exploration::Depth,
                    "breadth" => Exploration::Breadth,
                    other => return Err(format!("unknown exploration order `{other}`")),
                }
            }
            "--branch" => {
                options.branching = match value()?.as_str() {
                    "smear" => Branching::Smear,
                    "largest" => Branching::Largest,
                    "roundrobin" => Branching::RoundRobin,
                    other => return Err(format!("unknown branching rule `{other}`")),
                }
            }
            "--branch-override" => {
                branch_override_names = value()?
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect();
            }
            "--ub" => {
                let v = value()?;
                options.ub = match v.as_str() {
                    "nearest" => UbStrategy::NearestProbe,
                    "enumerate" => UbStrategy::Enumerate { cap: 64 },
                    other => match other.strip_prefix("enumerate:") {
                        Some(cap) => UbStrategy::Enumerate {
                            cap: cap
                                .parse()
                                .map_err(|_| format!("bad enumeration cap `{cap}`"))?,
                        },
                        None => return Err(format!("unknown ub strategy `{other}`")),
                    },
                }
            }
            "--trace" => {
                trace = match value()?.as_str() {
                    "off" => TraceMode::Off,
                    "text" => TraceMode::Text,
                    "json" => TraceMode::Json,
                    other => return Err(format!("unknown trace mode `{other}`")),
                }
            }
            "--plot" => plot = Some(PathBuf::from(value()?)),
            "--max-nodes" => {
                options.max_nodes = Some(
                    value()?
                        .parse()
                        .map_err(|_| "--max-nodes needs a whole number".to_string())?,
                )
            }
            "--seed" => {
                let _: u64 = value()?
                    .parse()
                    .map_err(|_| "--seed needs a whole number".to_string())?;
            }
            other => return Err(format!("unknown flag `{other}`")),
        }
    }
    let problem = problem.ok_or_else(|| "--problem is required".to_string())?;
    Ok(Some(Args {
        problem,
        options,
        branch_override_names,
        trace,
        plot,
    }))
}

fn assignment_text(problem: &Problem, sol: &Solution) -> String {
    let mut s = String::new();
    if let Some(point) = &sol.point {
        s.push_str(" at");
        for (name, v) in problem.var_names.iter().zip(point) {
            s.push_str(&format!(" {name}={v}"));
        }
    }
    if !sol.items.is_empty() {
        let nums: Vec<String> = sol.items.iter().map(|i| (i + 1).to_string()).collect();
        if nums.len() == 1 {
            s.push_str(&format!(" (item {})", nums[0]));
        } else {
            s.push_str(&format!(" (items {})", nums.join(", ")));
        }
    }
    s
}

fn result_json(problem: &Problem, sol: &Solution) -> serde_json::Value {
    let status = match sol.status {
        Status::Optimal => "optimal",
        Status::Infeasible => "infeasible",
        Status::Limit => "limit",
    };
    let num = |v: f64| {
        if v.is_finite() {
            serde_json::json!(v)
        } else if v > 0.0 {
            serde_json::json!("inf")
        } else {
            serde_json::json!("-inf")
        }
    };
    let mut obj = serde_json::json!({
        "result": status,
        "objective": num(sol.objective),
        "lower_bound": num(sol.lower_bound),
        "nodes": sol.nodes,
    });
    if let Some(point) = &sol.point {
        let vars: serde_json::Map<String, serde_json::Value> = problem
            .var_names
            .iter()
            .zip(point)
            .map(|(n, v)| (n.clone(), serde_json::json!(v)))
            .collect();
        obj["point"] = serde_json::Value::Object(vars);
        obj["items"] = sol.items.iter().map(|i| i + 1).collect::<Vec<_>>().into();
    }
    obj
}

/// Runs the command line and returns the process exit code.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let args = match parse_args(argv) {
        Ok(Some(a)) => a,
        Ok(None) => {
            let _ = out.write_all(USAGE.as_bytes());
            return 0;
        }
        Err(message) => {
            let _ = writeln!(err, "catopt: {message}");
            let _ = err.write_all(USAGE.as_bytes());
            return 64;
        }
    };

    let problem = match probfile::load(&args.problem) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "catopt: {e}");
            return 65;
        }
    };

    let mut options = args.options;
    for name in &args.branch_override_names {
        match problem.var_names.iter().position(|n| n == name) {
            Some(i) => options.branch_override.push(i),
            None => {
                let _ = writeln!(err, "catopt: --branch-override: unknown variable `{name}`");
                return 64;
            }
        }
    }

    let mut plotter = match &args.plot {
        Some(dir) => match Plotter::new(&problem, dir) {
            Ok(Some(p)) => Some(p),
            Ok(None) => {
                let _ = writeln!(
                    err,
                    "catopt: --plot: no catalog binds exactly two variables; skipping plots"
                );
                None
            }
            Err(e) => {
                let _ = writeln!(err, "catopt: --plot: {e}");
                return 74;
            }
        },
        None => None,
    };

    let mut io_failure = false;
    let sol = solve(&problem, &options, |event: TraceEvent| {
        match args.trace {
            TraceMode::Off => {}
            TraceMode::Text => {
                let _ = writeln!(out, "{}", event.text_line(&problem.var_names));
            }
            TraceMode::Json => {
                let _ = writeln!(out, "{}", event.json_value(&problem.var_names));
            }
        }
        if let Some(p) = plotter.as_mut() {
            if let Err(e) = p.record(&event, &problem.var_names) {
                let _ = writeln!(err, "catopt: --plot: {e}");
                io_failure = true;
            }
        }
        if io_failure {
            plotter = None;
        }
    });
    if io_failure {
        return 74;
    }

    if args.trace == TraceMode::Json {
        let _ = writeln!(out, "{}", result_json(&problem, &sol));
    } else {
        match sol.status {
            Status::Optimal => {
                let _ = writeln!(
                    out,
                    "optimal f*={}{}",
                    sol.objective,
                    assignment_text(&problem, &sol),
                );
            }
            Status::Infeasible => {
                let _ = writeln!(out, "infeasible");
            }
            Status::Limit => {
                if sol.point.is_some() {
                    let _ = writeln!(
                        out,
                        "limit reached: lower bound {}, best f={}{}",
                        sol.lower_bound,
                        sol.objective,
                        assignment_text(&problem, &sol)
                    );
                } else {
                    let _ = writeln!(out, "limit reached: lower bound {}", sol.lower_bound);
                }
            }
        }
        let _ = writeln!(out, "nodes: {}", sol.nodes);
    }

    match sol.status {
        Status::Optimal => 0,
        Status::Infeasible => 1,
        Status::Limit => 2,
    }
}
