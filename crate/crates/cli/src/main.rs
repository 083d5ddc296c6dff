//! `gkm`: generators, class checks, extension solvers and surjectivity
//! certificates for labeled graphs. JSON goes to stdout, logs to stderr.
//! Exit status is 0 for a positive verdict, 1 for a negative one and 2 for
//! bad input.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use gkm_core::bruhat::{default_order, label_span_sweep};
use gkm_core::cohomology::CohomologySpace;
use gkm_core::crt::SequenceOutcome;
use gkm_core::geometry::{ascending_order, hypercube};
use gkm_core::poly_core::parse_rational;
use gkm_core::{
    cr_pair_upto, extend_sequence, gen_bruhat, gen_polytope, interval_subgraph, is_class,
    span_condition_check, sublevel_subgraph, surjective_upto, sweep_check, two_face_connected,
    BruhatGraph, ExtendOptions, GradedClass, LabeledGraph, LinearFunctional, Permutation,
    Polynomial, PolytopeGraph, PolytopeKind,
};

const DEFAULT_DEGREE_CAP: &str = "3";

#[derive(Parser)]
#[command(name = "gkm", version, about = "Graph cohomology of labeled graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct GraphArg {
    /// Graph JSON file (`-` for stdin).
    #[arg(short = 'g', long = "graph")]
    graph: PathBuf,
}

#[derive(clap::Args)]
struct DegreeArg {
    /// Largest degree to compute.
    #[arg(short = 'd', long = "degree", env = "GKM_DEGREE_CAP", default_value = DEFAULT_DEGREE_CAP)]
    degree: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a generated graph as JSON.
    Gen {
        #[command(subcommand)]
        what: GenTarget,
    },
    /// Check that a vertex assignment is a class.
    CheckClass {
        #[command(flatten)]
        g: GraphArg,
        #[arg(short = 'c', long = "class")]
        class: PathBuf,
    },
    /// Bases of H^d for d = 0..=D.
    Basis {
        #[command(flatten)]
        g: GraphArg,
        #[command(flatten)]
        d: DegreeArg,
    },
    /// Extend a class on an induced subgraph one vertex at a time.
    Extend {
        #[command(flatten)]
        g: GraphArg,
        /// Comma-separated vertex ids of the subgraph.
        #[arg(long)]
        sub: String,
        #[arg(long)]
        class: PathBuf,
        /// Comma-separated order of the missing vertices (default: by id).
        #[arg(long)]
        order: Option<String>,
    },
    /// Whether every class on the graph minus a vertex extends back.
    CheckPair {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        vertex: String,
        #[command(flatten)]
        d: DegreeArg,
    },
    /// Exact rank test for surjectivity of restriction.
    Surjective {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        sub: String,
        #[command(flatten)]
        d: DegreeArg,
    },
    /// Sublevel set of a linear functional, sweep certificate and oracle.
    Sweep {
        #[command(flatten)]
        g: GraphArg,
        /// Comma-separated coefficients, e.g. `1,2,4`.
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        /// Rational cutoff, e.g. `5/2`.
        #[arg(long, allow_hyphen_values = true)]
        cutoff: String,
        #[command(flatten)]
        d: DegreeArg,
    },
    /// Span condition on a Bruhat interval `u:w`.
    SpanCheck {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        interval: String,
        #[arg(long)]
        order: Option<String>,
        /// Also run the rank oracle up to this degree.
        #[arg(short = 'd', long = "degree")]
        degree: Option<u32>,
    },
    /// The non-extendable class on five vertices of the 3-cube.
    CounterexampleCube,
    /// Graphviz export.
    ExportDot {
        #[arg(short = 'g', long = "graph", default_value = "-")]
        graph: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenTarget {
    Cube { n: usize },
    Simplex { n: usize },
    /// Product of two factors written `cubeN` or `simplexN`.
    Product { a: String, b: String },
    Bruhat { n: usize },
}

struct Outcome {
    ok: bool,
    payload: Value,
}

impl Outcome {
    fn new(ok: bool, payload: Value) -> Self {
        Outcome { ok, payload }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Output::Json(out)) => {
            println!("{}", serde_json::to_string_pretty(&out.payload).expect("json"));
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(Output::Text(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

enum Output {
    Json(Outcome),
    Text(String),
}

fn run(command: Command) -> anyhow::Result<Output> {
    let out = match command {
        Command::Gen { what } => return Ok(Output::Text(gen(what)?.to_json() + "\n")),
        Command::ExportDot { graph } => return Ok(Output::Text(load_graph(&graph)?.to_dot())),
        Command::CheckClass { g, class } => {
            let g = load_graph(&g.graph)?;
            let f = load_class(&class, g.nvars())?;
            let check = is_class(&g, &f)?;
            eprintln!("class check: {}", if check.is_valid() { "valid" } else { "invalid" });
            Outcome::new(check.is_valid(), json!({ "is_class": check.is_valid(), "check": check }))
        }
        Command::Basis { g, d } => {
            let g = load_graph(&g.graph)?;
            let mut degrees = Vec::new();
            for k in 0..=d.degree {
                let space = CohomologySpace::compute(&g, k)?;
                eprintln!("dim H^{k} = {}", space.dim());
                degrees.push(json!({
                    "degree": k,
                    "dim": space.dim(),
                    "basis": space.classes().iter().map(GradedClass::values).collect::<Vec<_>>(),
                }));
            }
            Outcome::new(true, json!({ "max_degree": d.degree, "degrees": degrees }))
        }
        Command::Extend { g, sub, class, order } => {
            let g = load_graph(&g.graph)?;
            let sub = g.induced_subgraph(&split_ids(&sub))?;
            let f = load_class(&class, g.nvars())?;
            let order = match order {
                Some(o) => split_ids(&o),
                None => g.ids().iter().filter(|v| !sub.contains(v)).cloned().collect(),
            };
            match extend_sequence(&g, &sub, &f, &order, ExtendOptions::default())? {
                SequenceOutcome::Extended(full) => {
                    eprintln!("extended across {} vertices", order.len());
                    Outcome::new(true, json!({ "extended": true, "order": order, "class": full }))
                }
                SequenceOutcome::Failed { step, extension } => {
                    eprintln!("obstructed at `{}` (step {step})", extension.vertex);
                    Outcome::new(
                        false,
                        json!({ "extended": false, "order": order, "step": step, "extension": extension }),
                    )
                }
            }
        }
        Command::CheckPair { g, vertex, d } => {
            let g = load_graph(&g.graph)?;
            let sub = g.without_vertex(&vertex)?;
            let report = cr_pair_upto(&g, &sub, d.degree, ExtendOptions::default())?;
            eprintln!("pair property through degree {}: {}", d.degree, report.holds);
            Outcome::new(report.holds, serde_json::to_value(&report)?)
        }
        Command::Surjective { g, sub, d } => {
            let g = load_graph(&g.graph)?;
            let sub = g.induced_subgraph(&split_ids(&sub))?;
            let report = surjective_upto(&g, &sub, d.degree)?;
            eprintln!("surjective through degree {}: {}", d.degree, report.surjective());
            Outcome::new(
                report.surjective(),
                json!({ "surjective": report.surjective(), "report": report }),
            )
        }
        Command::Sweep { g, xi, cutoff, d } => sweep(&g.graph, &xi, &cutoff, d.degree)?,
        Command::SpanCheck {
            g,
            interval,
            order,
            degree,
        } => span_check(&g.graph, &interval, order.as_deref(), degree)?,
        Command::CounterexampleCube => counterexample_cube()?,
    };
    Ok(Output::Json(out))
}

fn gen(what: GenTarget) -> anyhow::Result<LabeledGraph> {
    Ok(match what {
        GenTarget::Cube { n } => gen_polytope(&PolytopeKind::Hypercube(n))?.into_graph(),
        GenTarget::Simplex { n } => gen_polytope(&PolytopeKind::Simplex(n))?.into_graph(),
        GenTarget::Product { a, b } => gen_polytope(&PolytopeKind::Product(
            Box::new(parse_kind(&a)?),
            Box::new(parse_kind(&b)?),
        ))?
        .into_graph(),
        GenTarget::Bruhat { n } => gen_bruhat(n)?.into_graph(),
    })
}

fn parse_kind(s: &str) -> anyhow::Result<PolytopeKind> {
    let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
    let (name, num) = s.split_at(split);
    let n: usize = num
        .parse()
        .with_context(|| format!("factor `{s}` needs a dimension, e.g. cube2"))?;
    match name.trim_end_matches(':') {
        "cube" => Ok(PolytopeKind::Hypercube(n)),
        "simplex" => Ok(PolytopeKind::Simplex(n)),
        other => bail!("unknown polytope factor `{other}`"),
    }
}

fn read_input(path: &PathBuf) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_graph(path: &PathBuf) -> anyhow::Result<LabeledGraph> {
    Ok(LabeledGraph::from_json(&read_input(path)?)?)
}

/// Accepts `{"values": {id: terms}}` as emitted by this tool, or
/// `{"values": {id: "x1 + 2*x3"}}` with polynomial text.
fn load_class(path: &PathBuf, nvars: usize) -> anyhow::Result<GradedClass> {
    let text = read_input(path)?;
    if let Ok(f) = GradedClass::from_json(&text, nvars) {
        return Ok(f);
    }
    let doc: Value = serde_json::from_str(&text).context("class JSON")?;
    let entries = doc
        .get("values")
        .and_then(Value::as_object)
        .ok_or_else(|| anyhow!("class JSON needs a `values` object"))?;
    let values = entries
        .iter()
        .map(|(id, p)| {
            let text = p
                .as_str()
                .ok_or_else(|| anyhow!("value at `{id}` is neither terms nor text"))?;
            Ok((id.clone(), Polynomial::parse(text, nvars)?))
        })
        .collect::<anyhow::Result<BTreeMap<_, _>>>()?;
    Ok(GradedClass::new(values)?)
}

fn split_ids(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

fn sweep(path: &PathBuf, xi: &str, cutoff: &str, degree: u32) -> anyhow::Result<Outcome> {
    let g = PolytopeGraph::new(load_graph(path)?)?;
    let xi = LinearFunctional::parse(xi)?;
    let c = parse_rational(cutoff)?;
    let sub = sublevel_subgraph(&g, &xi, &c)?;
    let order = ascending_order(&g, sub.ids(), &xi)?;
    let report = sweep_check(&g, sub.ids(), &order)?;
    let oracle = surjective_upto(g.graph(), &sub, degree)?;
    // a passing sweep must be confirmed by the oracle; a failing one is silent
    let agreement = !report.holds || oracle.surjective();
    eprintln!(
        "sweep certificate: {}; oracle surjective through degree {degree}: {}",
        report.holds,
        oracle.surjective()
    );
    Ok(Outcome::new(
        report.holds && agreement,
        json!({
            "sublevel": sub.ids(),
            "certified": report.holds,
            "sweep": report,
            "oracle": oracle,
            "oracle_agrees": agreement,
        }),
    ))
}

fn span_check(
    path: &PathBuf,
    interval: &str,
    order: Option<&str>,
    degree: Option<u32>,
) -> anyhow::Result<Outcome> {
    let g = BruhatGraph::from_graph(load_graph(path)?)?;
    let (u, w) = interval
        .split_once(':')
        .ok_or_else(|| anyhow!("interval must look like u:w"))?;
    let (u, w) = (Permutation::parse(u)?, Permutation::parse(w)?);
    let sub = interval_subgraph(&g, &u, &w)?;
    let order = match order {
        Some(o) => split_ids(o),
        None => default_order(&g, &sub),
    };
    let report = span_condition_check(&g, &sub, &order)?;
    let paths = label_span_sweep(g.graph(), &sub, &order)?;
    eprintln!(
        "span condition: {}; span-path variant: {}",
        report.holds, paths.holds
    );
    let mut payload = json!({
        "interval": [u.to_string(), w.to_string()],
        "vertices": sub.ids(),
        "span_condition": report,
        "span_path_condition": paths,
    });
    let mut ok = report.holds;
    if let Some(d) = degree {
        let oracle = surjective_upto(g.graph(), &sub, d)?;
        let agrees = !(report.holds || paths.holds) || oracle.surjective();
        eprintln!("oracle surjective through degree {d}: {}", oracle.surjective());
        payload["oracle"] = serde_json::to_value(&oracle)?;
        payload["oracle_agrees"] = agrees.into();
        ok &= agrees;
    }
    Ok(Outcome::new(ok, payload))
}

/// Renames `x1, x2, x3` to `x, y, z`.
fn xyz(p: &Polynomial) -> String {
    p.to_string()
        .replace("x1", "x")
        .replace("x2", "y")
        .replace("x3", "z")
}

fn counterexample_cube() -> anyhow::Result<Outcome> {
    let cube = hypercube(3)?;
    let g = cube.graph();
    let keep = ["000", "001", "011", "111", "110"];
    let sub = g.induced_subgraph(&keep)?;
    let x = Polynomial::var(3, 0);
    let z = Polynomial::var(3, 2);
    let mut values = BTreeMap::new();
    for id in &keep[..4] {
        values.insert(id.to_string(), x.clone());
    }
    values.insert("110".to_string(), &x + &z);
    let f = GradedClass::new(values)?;

    let check = is_class(&sub, &f)?;
    let faces = two_face_connected(&cube, &keep)?;
    let order = ["010", "100", "101"];
    let outcome = extend_sequence(g, &sub, &f, &order, ExtendOptions::default())?;
    let SequenceOutcome::Failed { step, extension } = outcome else {
        bail!("the class unexpectedly extends");
    };
    let witness = extension
        .certificate
        .witness()
        .ok_or_else(|| anyhow!("obstruction carries no pair witness"))?
        .clone();
    let verified = witness.verify()?;
    let oracle = surjective_upto(g, &sub, 1)?;
    eprintln!(
        "class on the 5-vertex subgraph: {}; extension obstructed at `{}`: {} not in <{}, {}>",
        check.is_valid(),
        extension.vertex,
        xyz(&witness.difference),
        xyz(&witness.moduli[0].to_polynomial()),
        xyz(&witness.moduli[1].to_polynomial()),
    );
    Ok(Outcome::new(
        false,
        json!({
            "subgraph": keep,
            "class": f,
            "is_class": check.is_valid(),
            "two_face_connected": faces,
            "order": order,
            "failed_step": step,
            "extension": extension,
            "witness": {
                "difference": xyz(&witness.difference),
                "moduli": witness.moduli.iter().map(|m| xyz(&m.to_polynomial())).collect::<Vec<_>>(),
                "verified": verified,
            },
            "oracle": oracle,
        }),
    ))
}
