use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use confspace::experiments::{
    conjecture_scan_audited, sweep_point, threshold_estimate, Finding, SweepConfig,
    SWEEP_CSV_HEADER,
};
use confspace::form::{betti_f2, is_mature};
use confspace::graph::{emit_document, generate, load_graph, Graph};
use confspace::linking::{add_edge_report, linking_report};
use confspace::oracle::verify;
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

/// Homology of two-point configuration spaces of finite graphs.
///
/// Graphs are given either as a path to a JSON document
/// `{"vertices": [...], "edges": [["a","b"], ...], "marked": {...}?}`
/// or as a generator spec like `gen:complete:5`, `gen:bipartite:3:3`,
/// `gen:fig6`.
#[derive(Parser)]
#[command(name = "confspace", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Subdivide every edge of the input graph this many times first.
    #[arg(long, global = true, default_value_t = 0)]
    subdivide: usize,
    /// Fraction of sweep/scan samples to audit against the oracle.
    #[arg(long, global = true, default_value_t = 0.0)]
    audit_fraction: f64,
}

#[derive(Args)]
struct GraphArg {
    /// Graph document path or `gen:<name>[:<param>...]` spec.
    graph: String,
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// First distinguished vertex (label); defaults to the marked pair.
    #[arg(long)]
    u: Option<String>,
    /// Second distinguished vertex (label); defaults to the marked pair.
    #[arg(long)]
    v: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers of the configuration space of two points.
    Betti(GraphArg),
    /// Maturity verdict with reasons.
    Mature(GraphArg),
    /// Linking classes of the cycles avoiding a vertex pair.
    Linking(PairArgs),
    /// Effect of adding the edge u-v, with the exactness bookkeeping.
    AddEdge(PairArgs),
    /// Compare the formula pipeline against the discrete-configuration
    /// oracle; exits 1 on any mismatch.
    Verify(GraphArg),
    /// Print (or write) a catalog graph as a JSON document.
    Gen {
        name: String,
        params: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maturity sweep over the binomial random-graph model.
    Sweep {
        #[arg(long)]
        n: usize,
        /// Comma-separated probabilities, strictly increasing, in (0, 1].
        #[arg(long)]
        p_grid: String,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV output path.
        #[arg(long)]
        out: PathBuf,
        /// Use all samples, not just connected ones, as the denominator.
        #[arg(long)]
        raw_fraction: bool,
    },
    /// Exhaustive + sampled scan for torsion and for counterexamples to
    /// the wedge/double-wedge characterization of maturity.
    Scan {
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for the findings archive.
        #[arg(long)]
        out: PathBuf,
    },
}

struct Input {
    graph: Graph,
    spec: String,
    fingerprint: String,
}

fn fingerprint(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

fn load_input(spec: &str, subdivide: usize) -> Result<Input> {
    let (graph, fp) = if let Some(rest) = spec.strip_prefix("gen:") {
        let mut parts = rest.split(':');
        let name = parts
            .next()
            .ok_or_else(|| anyhow!("empty generator spec"))?;
        let params: Vec<usize> = parts
            .map(|p| p.parse().with_context(|| format!("bad parameter {p:?}")))
            .collect::<Result<_>>()?;
        (generate(name, &params)?, fingerprint(spec.as_bytes()))
    } else {
        let text = fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
        (load_graph(&text)?, fingerprint(text.as_bytes()))
    };
    let graph = if subdivide > 0 {
        graph.subdivide(subdivide)
    } else {
        graph
    };
    Ok(Input {
        graph,
        spec: spec.to_string(),
        fingerprint: fp,
    })
}

fn resolve_pair(g: &Graph, u: &Option<String>, v: &Option<String>) -> Result<(usize, usize)> {
    match (u, v) {
        (Some(u), Some(v)) => {
            let ui = g
                .vertex_by_label(u)
                .ok_or_else(|| anyhow!("no vertex labelled {u:?}"))?;
            let vi = g
                .vertex_by_label(v)
                .ok_or_else(|| anyhow!("no vertex labelled {v:?}"))?;
            Ok((ui, vi))
        }
        (None, None) => g
            .marked()
            .ok_or_else(|| anyhow!("graph has no marked pair; pass --u and --v")),
        _ => bail!("pass both --u and --v or neither"),
    }
}

fn emit<T: Serialize>(cli: &Cli, input: &Input, command: &str, payload: &T, human: String) {
    if cli.json {
        let envelope = json!({
            "command": command,
            "input": input.spec,
            "fingerprint": input.fingerprint,
            "subdivide": cli.subdivide,
            "payload": payload,
        });
        println!("{}", serde_json::to_string_pretty(&envelope).unwrap());
    } else {
        println!("{human}");
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Betti(arg) => {
            let input = load_input(&arg.graph, cli.subdivide)?;
            let report = betti_f2(&input.graph)?;
            let human = format!(
                "b1(graph) = {}\nb1(config) = {}\nb2(config) = {}\nq rank = {}\nq torsion = {:?}\nsigma = {}\nspecial case = {:?}\nmature = {}",
                report.b1_graph,
                report.b1_config,
                report.b2_config,
                report.q_rank,
                report.q_torsion,
                report.sigma,
                report.special_case,
                report.mature
            );
            emit(cli, &input, "betti", &report, human);
            Ok(ExitCode::SUCCESS)
        }
        Command::Mature(arg) => {
            let input = load_input(&arg.graph, cli.subdivide)?;
            let report = is_mature(&input.graph)?;
            let human = format!(
                "mature = {}\nreasons = {:?}\nq rank = {}, torsion = {:?}",
                report.mature, report.reasons, report.q_rank, report.q_torsion
            );
            emit(cli, &input, "mature", &report, human);
            Ok(ExitCode::SUCCESS)
        }
        Command::Linking(args) => {
            let input = load_input(&args.graph.graph, cli.subdivide)?;
            let (u, v) = resolve_pair(&input.graph, &args.u, &args.v)?;
            let analysis = confspace::form::analyze(&input.graph)?;
            let report = linking_report(&analysis, u, v)?;
            let human = format!(
                "pair = ({}, {})\ncomplement components = {}, cycles = {}\nlinking values = {}\nrank A = {}\nrank A + tau A = {}",
                report.u,
                report.v,
                report.gamma0_b0,
                report.gamma0_b1,
                serde_json::to_string(&report.lk_values).unwrap(),
                report.a_rank,
                report.a_plus_tau_a_rank
            );
            emit(cli, &input, "linking", &report, human);
            Ok(ExitCode::SUCCESS)
        }
        Command::AddEdge(args) => {
            let input = load_input(&args.graph.graph, cli.subdivide)?;
            let (u, v) = resolve_pair(&input.graph, &args.u, &args.v)?;
            let report = add_edge_report(&input.graph, u, v)?;
            let human = format!(
                "before: b1 = {}, b2 = {}, q rank = {}\nafter:  b1 = {}, b2 = {}, q rank = {} (mature = {})\nrank(A + tau A) = {}, G rank = {}, X rank = {}\nidentities hold = {}",
                report.before.b1_config,
                report.before.b2_config,
                report.before.q_rank,
                report.after.b1_config,
                report.after.b2_config,
                report.after.q_rank,
                report.after.mature,
                report.linking.a_plus_tau_a_rank,
                report.g_rank,
                report.x_rank,
                report.consistency
            );
            emit(cli, &input, "add-edge", &report, human);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(arg) => {
            let input = load_input(&arg.graph, cli.subdivide)?;
            let verdict = verify(&input.graph)?;
            let human = if verdict.matched {
                format!(
                    "match: b0 = {}, b1 = {}, b2 = {}, torsion = {:?}",
                    verdict.oracle.b0,
                    verdict.oracle.b1,
                    verdict.oracle.b2,
                    verdict.oracle.torsion1
                )
            } else {
                format!("MISMATCH:\n{}", verdict.mismatches.join("\n"))
            };
            let matched = verdict.matched;
            emit(cli, &input, "verify", &verdict, human);
            Ok(if matched {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Gen { name, params, out } => {
            let g = generate(name, params)?;
            let doc = serde_json::to_string_pretty(&emit_document(&g))?;
            match out {
                Some(path) => fs::write(path, doc).with_context(|| format!("writing {path:?}"))?,
                None => println!("{doc}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            n,
            p_grid,
            samples,
            seed,
            out,
            raw_fraction,
        } => {
            let grid: Vec<f64> = p_grid
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .with_context(|| format!("bad probability {s:?}"))
                })
                .collect::<Result<_>>()?;
            let cfg = SweepConfig {
                n: *n,
                p_grid: grid,
                samples_per_p: *samples,
                seed: *seed,
                condition_on_connected: !raw_fraction,
                audit_fraction: cli.audit_fraction,
            };
            cfg.validate()?;
            // Flush one CSV line per grid point so an interrupted sweep
            // still leaves its completed points behind.
            let mut file = fs::File::create(out).with_context(|| format!("creating {out:?}"))?;
            writeln!(file, "{SWEEP_CSV_HEADER}")?;
            let mut records = Vec::new();
            let mut findings = Vec::new();
            for &p in &cfg.p_grid {
                let (record, fs_point) = sweep_point(&cfg, p);
                writeln!(file, "{}", record.csv_line())?;
                file.flush()?;
                records.push(record);
                findings.extend(fs_point);
            }
            if !findings.is_empty() {
                let sidecar = out.with_extension("findings.json");
                fs::write(&sidecar, serde_json::to_string_pretty(&findings)?)?;
                eprintln!("{} finding(s) written to {sidecar:?}", findings.len());
            }
            let threshold = threshold_estimate(&records);
            if cli.json {
                let envelope = json!({
                    "command": "sweep",
                    "records": records,
                    "threshold": threshold,
                    "findings": findings.len(),
                });
                println!("{}", serde_json::to_string_pretty(&envelope)?);
            } else {
                for r in &records {
                    println!(
                        "n = {}, p = {}: {}/{} connected, {} mature, fraction {:.4} [{:.4}, {:.4}]",
                        r.n, r.p, r.connected, r.samples, r.mature, r.fraction, r.ci_low, r.ci_high
                    );
                }
                match threshold {
                    Some(t) => println!(
                        "maturity fraction crosses 1/2 at p = {} (clearly below: {}, clearly above: {})",
                        t.p_cross,
                        t.clearly_below.map_or("-".into(), |p| p.to_string()),
                        t.clearly_above.map_or("-".into(), |p| p.to_string()),
                    ),
                    None => println!("maturity fraction never reaches 1/2 on this grid"),
                }
            }
            Ok(if findings.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Scan {
            n_max,
            samples,
            seed,
            out,
        } => {
            let outcome = conjecture_scan_audited(*n_max, *samples, *seed, cli.audit_fraction);
            write_findings(out, &outcome.findings)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&outcome)?);
            } else {
                println!(
                    "exhaustive classes checked: {}\nsampled graphs checked: {} (skipped {} planar, {} disconnected)\nfindings: {}",
                    outcome.exhaustive_checked,
                    outcome.sampled_checked,
                    outcome.skipped_planar,
                    outcome.skipped_disconnected,
                    outcome.findings.len()
                );
            }
            Ok(if outcome.findings.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn write_findings(dir: &PathBuf, findings: &[Finding]) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {dir:?}"))?;
    let mut manifest = Vec::new();
    for (i, f) in findings.iter().enumerate() {
        let file = format!("finding-{i:04}.json");
        fs::write(dir.join(&file), serde_json::to_string_pretty(&f.graph)?)?;
        manifest.push(json!({
            "kind": f.kind,
            "details": f.details,
            "file": file,
        }));
    }
    fs::write(
        dir.join("manifest.json"),
        serde_json::to_string_pretty(&manifest)?,
    )?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
