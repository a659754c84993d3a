//! `qwsearch`: command-line front end for quantum-walk spatial search.

mod input;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use input::{Axis, GraphSource, Usage};
use qwsearch_core::graphs::{self, laplacian, paley};
use qwsearch_core::hypercube::table1;
use qwsearch_core::numfmt::sig12;
use qwsearch_core::optimality::{self, certify_spectrum};
use qwsearch_core::search::search_params;
use qwsearch_core::simulator::{self, RunOptions, DEFAULT_STEPS};
use qwsearch_core::{
    Error, Family, HypercubeBasis, JumpRate, OptimalityReport, SearchParameters,
    SpectralDecomposition, SrgParams,
};

#[derive(Parser)]
#[command(
    name = "qwsearch",
    version,
    about = "Continuous-time quantum-walk spatial search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a named family.
    Family {
        /// hypercube, complete, complete-minus, paley or multipartite
        name: String,
        params: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        out: Format,
        /// Write the graph here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search parameters of a graph and marked state.
    Analyze {
        /// `family:params` (e.g. `hypercube:16`) or an edge-list/DOT file
        graph: String,
        /// `single:v`, `pair:u,v`, `uniform:v1,...` or a file of `vertex weight` lines
        state: String,
        #[arg(long)]
        json: bool,
    },
    /// Spectral-ratio optimality certificate.
    Certify {
        /// A graph argument, or a family name followed by its parameters
        /// (`srg n k a c` is accepted here)
        #[arg(required = true)]
        target: Vec<String>,
        /// Sweep parameters instead, e.g. `--grid m=2..6 k=1..4`
        #[arg(long, num_args = 1.., value_name = "NAME=LO..HI")]
        grid: Vec<String>,
    },
    /// Two-vertex envelopes on the hypercube by Hamming distance.
    Table1 {
        #[arg(long, default_value_t = 16)]
        n: u32,
    },
    /// Exact time evolution of the search Hamiltonian.
    Simulate {
        graph: String,
        state: String,
        /// `critical` or a positive jump rate
        #[arg(long, default_value = "critical")]
        gamma: JumpRate,
        /// End of the time grid (default: twice the predicted optimal time)
        #[arg(long)]
        tmax: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
        /// Write the trace as CSV to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Dot,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 1 usage, 2 domain error, 3 numeric failure.
fn exit_code(e: &anyhow::Error) -> u8 {
    if e.chain().any(|c| c.is::<Usage>()) {
        return 1;
    }
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(Error::NumericFailure(_) | Error::Pole(_)) => 3,
        Some(Error::InvalidParameter(_) | Error::Parse { .. }) | None => 1,
        Some(_) => 2,
    }
}

fn dispatch(cmd: Command) -> anyhow::Result<()> {
    match cmd {
        Command::Family {
            name,
            params,
            out,
            output,
        } => cmd_family(&name, &params, out, output),
        Command::Analyze { graph, state, json } => cmd_analyze(&graph, &state, json),
        Command::Certify { target, grid } => cmd_certify(&target, &grid),
        Command::Table1 { n } => cmd_table1(n),
        Command::Simulate {
            graph,
            state,
            gamma,
            tmax,
            steps,
            csv,
        } => cmd_simulate(
            &graph,
            &state,
            RunOptions {
                jump_rate: gamma,
                t_max: tmax,
                steps,
            },
            csv,
        ),
    }
}

fn cmd_family(
    name: &str,
    params: &[usize],
    out: Format,
    output: Option<PathBuf>,
) -> anyhow::Result<()> {
    let g = input::family(name, params)?.build()?;
    let text = match out {
        Format::Edgelist => graphs::to_edge_list(&g),
        Format::Dot => graphs::export_dot(&g),
    };
    let summary = format!(
        "vertices: {}\nedges: {}\nfamily: {}",
        g.n_vertices(),
        g.n_edges(),
        g.family()
    );
    match output {
        Some(path) => {
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            println!("{summary}");
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

/// JSON number carrying exactly the twelve significant digits printed
/// everywhere else.
fn num(x: f64) -> Value {
    sig12(x)
        .parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

fn print_json(v: &Value) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn hypercube_dim(src: &GraphSource) -> Option<u32> {
    match src {
        GraphSource::Family(Family::Hypercube { n }) => Some(*n),
        _ => None,
    }
}

fn decompose(src: &GraphSource) -> anyhow::Result<SpectralDecomposition> {
    Ok(SpectralDecomposition::of_laplacian(&laplacian(
        &src.graph()?,
    ))?)
}

fn cmd_analyze(graph: &str, state: &str, as_json: bool) -> anyhow::Result<()> {
    let src = GraphSource::parse(graph)?;
    let w = input::marked_state(state, src.n_vertices()?)?;
    let p = match hypercube_dim(&src) {
        Some(n) => search_params(&HypercubeBasis::new(n)?, &w)?,
        None => search_params(&decompose(&src)?, &w)?,
    };
    let fields = analysis_fields(&p);
    if as_json {
        print_json(&Value::Object(
            fields
                .iter()
                .map(|(k, v)| (k.to_string(), num(*v)))
                .collect(),
        ))
    } else {
        for (k, v) in fields {
            println!("{k:<9} {}", sig12(v));
        }
        Ok(())
    }
}

fn analysis_fields(p: &SearchParameters) -> [(&'static str, f64); 7] {
    [
        ("gamma_c", p.gamma_c),
        ("beta", p.beta),
        ("p_n", p.p_n),
        ("envelope", p.envelope),
        ("t_opt", p.t_opt),
        ("mu1", p.mu1),
        ("mu2", p.mu2),
    ]
}

fn cmd_certify(target: &[String], grid: &[String]) -> anyhow::Result<()> {
    let (head, rest) = target.split_first().expect("clap requires a target");
    let named = input::family_params(head).is_some() && !head.contains(':');
    if !grid.is_empty() {
        if !named || !rest.is_empty() {
            return input::usage(
                "--grid takes a bare family name, e.g. `certify multipartite --grid m=2..6 k=1..4`",
            );
        }
        return certify_grid(head, grid);
    }
    let report = if named {
        let params = rest
            .iter()
            .map(|t| {
                input::integers(t).and_then(|v| match v.as_slice() {
                    [x] => Ok(*x),
                    _ => input::usage(format!("expected one integer, got '{t}'")),
                })
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        certify_named(head, &params)?
    } else {
        if !rest.is_empty() {
            return input::usage(
                "certify takes one graph argument or a family name with parameters",
            );
        }
        match GraphSource::parse(head)? {
            GraphSource::Family(f) => certify_family(f)?,
            src @ GraphSource::File(_) => optimality::certify(&decompose(&src)?)?,
        }
    };
    print_json(&report_json(&report))
}

fn report_json(r: &OptimalityReport) -> Value {
    json!({
        "lambda_max": num(r.lambda_max),
        "lambda_min_nonzero": num(r.lambda_min_nonzero),
        "theta": num(r.theta),
        "ratio": num(r.ratio),
        "threshold": num(r.threshold),
        "verdict": r.verdict.to_string(),
    })
}

/// Closed-form certificate for a named family (or SRG parameter set).
fn certify_named(name: &str, params: &[usize]) -> anyhow::Result<OptimalityReport> {
    if input::canonical(name) == "srg" {
        let &[n, k, a, c] = params else {
            return input::usage(format!(
                "srg takes 4 parameters (n, k, a, c), got {}",
                params.len()
            ));
        };
        return Ok(optimality::certify_srg(&SrgParams::new(n, k, a, c)?)?);
    }
    certify_family(input::family(name, params)?)
}

fn certify_family(f: Family) -> anyhow::Result<OptimalityReport> {
    Ok(match f {
        Family::Hypercube { n } => {
            HypercubeBasis::new(n)?;
            certify_spectrum(2.0 * n as f64, 2.0)?
        }
        Family::Complete { n } => optimality::certify_induced_complete(n, 0)?,
        Family::CompleteMinus { n, l } => optimality::certify_induced_complete(n, l)?,
        Family::Paley { q } => {
            let srg = SrgParams::of_graph(&paley(q)?).ok_or_else(|| {
                Error::NumericFailure(format!("paley({q}) is not strongly regular"))
            })?;
            optimality::certify_srg(&srg)?
        }
        Family::Multipartite { m, k } => optimality::certify_multipartite(m, k)?,
        Family::Custom => unreachable!("custom graphs are certified from files"),
    })
}

fn certify_grid(name: &str, grid: &[String]) -> anyhow::Result<()> {
    let names = input::family_params(name).expect("checked by caller");
    let axes = grid
        .iter()
        .map(|s| Axis::parse(s))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let points = input::grid_points(names, &axes)?;
    let mut out = std::io::stdout().lock();
    writeln!(out, "{},ratio,verdict", names.join(","))?;
    for p in points {
        let cells: Vec<String> = p.iter().map(ToString::to_string).collect();
        match certify_named(name, &p) {
            Ok(r) => writeln!(out, "{},{},{}", cells.join(","), sig12(r.ratio), r.verdict)?,
            Err(e) if skippable(&e) => eprintln!("skipping {}: {e:#}", cells.join(",")),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

/// Grid points outside a family's domain are reported and skipped.
fn skippable(e: &anyhow::Error) -> bool {
    matches!(
        e.downcast_ref::<Error>(),
        Some(Error::InvalidParameter(_) | Error::Disconnected { .. })
    )
}

fn cmd_table1(n: u32) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "m,envelope_closed_form,envelope_oracle,abs_diff")?;
    for row in table1(n)? {
        writeln!(
            out,
            "{},{},{},{}",
            row.m,
            sig12(row.envelope_closed_form),
            sig12(row.envelope_oracle),
            sig12(row.abs_diff)
        )?;
    }
    Ok(())
}

fn cmd_simulate(
    graph: &str,
    state: &str,
    opts: RunOptions,
    csv: Option<PathBuf>,
) -> anyhow::Result<()> {
    let src = GraphSource::parse(graph)?;
    let w = input::marked_state(state, src.n_vertices()?)?;
    let (trace, params) = match hypercube_dim(&src) {
        Some(n) => simulator::run_reduced(&HypercubeBasis::new(n)?, &w, opts)?,
        None => simulator::run(&src.graph()?, &w, opts)?,
    };
    if let Some(path) = csv {
        fs::write(&path, trace.to_csv()).with_context(|| format!("writing {}", path.display()))?;
    }
    let dev = simulator::compare(&trace, &params)?;
    print_json(&json!({
        "peak_time": num(trace.peak_time),
        "peak_probability": num(trace.peak_probability),
        "t_opt": num(params.t_opt),
        "envelope_sq": num(params.envelope * params.envelope),
        "peak_deviation": num(dev.peak_value_rel),
    }))
}
