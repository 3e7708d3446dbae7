use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use hyperwagner::generators::{
    complete_bipartite_uniform, complete_uniform, procedure_x_build, rp2, simplex_boundary,
    BuildInput,
};
use hyperwagner::graph::{contractible_edge, is_k_connected, one_skeleton, vertex_connectivity};
use hyperwagner::io::{parse_str, parse_witness_str, to_canonical_string, ComplexDocument};
use hyperwagner::minor::{
    has_minor_with_stats, witness_violation, MinorResult, MinorWitness, SearchBudget,
};
use hyperwagner::recognizer::{is_embeddable, EmbeddingStatus, ForbiddenMinor};
use hyperwagner::structure::{
    bridges, classify_pair, ear_decomposition, marked_s_decomposition, reassemble, EarOutcome,
};
use hyperwagner::topo::{general_rd_check, homology};
use hyperwagner::{canonical_form, UniformComplex, VertexId};

const EXIT_OK: u8 = 0;
const EXIT_INVALID: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hyperwagner",
    version,
    about = "Minors, homology and embeddability of uniform hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct BudgetArgs {
    /// Search node limit.
    #[arg(long, default_value_t = 200_000_000)]
    budget_nodes: u64,
    /// Wall-clock limit in seconds.
    #[arg(long, default_value_t = 120)]
    budget_secs: u64,
}

impl BudgetArgs {
    fn budget(self) -> SearchBudget {
        SearchBudget::new(self.budget_nodes, Duration::from_secs(self.budget_secs))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a complex.
    Validate { input: PathBuf },
    /// Reduced integral homology and the general R^d conditions.
    Homology {
        input: PathBuf,
        /// Report dimensions 0..=m only.
        #[arg(long)]
        through: Option<usize>,
    },
    /// Vertex connectivity of the 1-skeleton.
    Connectivity {
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Pendant facets.
    Closed { input: PathBuf },
    /// Link of a vertex, given by index or name.
    Link {
        input: PathBuf,
        #[arg(long)]
        vertex: String,
    },
    /// Minor containment with a checkable witness.
    Minor {
        input: PathBuf,
        /// complete, bipartite, k33 or a path to a complex document.
        #[arg(long)]
        target: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Embeddability verdict from the forbidden minors.
    Embeddable {
        input: PathBuf,
        #[arg(long)]
        assert_triangulated: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Bridges of a sphere subcomplex and their pairwise classification.
    Bridges {
        input: PathBuf,
        #[arg(long)]
        sphere: PathBuf,
    },
    /// Hyper ear decomposition.
    Ears { input: PathBuf },
    /// Marked S-decomposition along a vertex cut.
    Decompose {
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        cut: Vec<usize>,
    },
    /// Generate a complex.
    Generate {
        #[command(subcommand)]
        family: Family,
        /// Also write the complex document to this path.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Re-check a witness against a host complex. Exits 1 when invalid.
    VerifyWitness {
        input: PathBuf,
        /// Witness document or a report containing one.
        #[arg(long)]
        witness: PathBuf,
    },
}

#[derive(Subcommand)]
enum Family {
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
    },
    Bipartite {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        i: usize,
    },
    SimplexBoundary {
        #[arg(long)]
        d: usize,
    },
    ProcedureX {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        seed: u64,
    },
    Rp2,
}

#[derive(Serialize)]
struct ReportDocument {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    input_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    status: String,
    result: Value,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

struct Outcome {
    status: String,
    result: Value,
    code: u8,
    seed: Option<u64>,
}

impl Outcome {
    fn ok(status: &str, result: Value) -> Self {
        Outcome {
            status: status.to_string(),
            result,
            code: EXIT_OK,
            seed: None,
        }
    }
}

struct Input {
    complex: UniformComplex,
    digest: String,
}

fn load(path: &Path) -> Result<Input, Failure> {
    let bytes =
        std::fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let digest = format!("sha256:{}", hex::encode(Sha256::digest(&bytes)));
    let text =
        String::from_utf8(bytes).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let complex =
        parse_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(Input { complex, digest })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn doc(c: &UniformComplex) -> Value {
    to_value(&ComplexDocument::from_complex(c))
}

fn witness_payload(target: &UniformComplex, w: &MinorWitness) -> Value {
    json!({ "target": doc(target), "witness": to_value(w) })
}

fn resolve_vertex(c: &UniformComplex, spec: &str) -> Result<usize, Failure> {
    if let Ok(v) = spec.parse::<usize>() {
        if v < c.vertex_count() {
            return Ok(v);
        }
    }
    (0..c.vertex_count())
        .find(|&v| c.names().is_some_and(|n| n[v] == spec))
        .ok_or_else(|| Failure::input(format!("no vertex {spec}")))
}

fn homology_cmd(c: &UniformComplex, through: Option<usize>) -> Outcome {
    let mut h = homology(c);
    if let Some(m) = through {
        h.betti.truncate(m + 1);
        h.torsion.truncate(m + 1);
    }
    let general = general_rd_check(c);
    Outcome::ok(
        "computed",
        json!({
            "reduced_betti": h.betti,
            "torsion": to_value(&h)["torsion"],
            "euler_characteristic": c.euler_characteristic(),
            "general": to_value(&general),
        }),
    )
}

fn connectivity_cmd(c: &UniformComplex, k: Option<usize>) -> Result<Outcome, Failure> {
    let g = one_skeleton(c);
    let (kappa, cut) = vertex_connectivity(&g).map_err(Failure::input)?;
    let mut result = json!({ "vertex_connectivity": kappa, "cut": to_value(&cut) });
    if let Some(k) = k {
        let connected = is_k_connected(&g, k);
        result["k"] = json!(k);
        result["k_connected"] = json!(connected);
        if connected {
            let edge = contractible_edge(&g, k).map_err(Failure::input)?;
            result["contractible_edge"] = to_value(&edge);
        }
    }
    Ok(Outcome::ok("computed", result))
}

fn minor_cmd(c: &UniformComplex, target: &str, budget: SearchBudget) -> Result<Outcome, Failure> {
    let d = c.d();
    let named = match target {
        "complete" => Some(ForbiddenMinor::Complete),
        "bipartite" => Some(ForbiddenMinor::Bipartite),
        "k33" => Some(ForbiddenMinor::K33),
        _ => None,
    };
    let h = match named {
        Some(t) if d >= 2 => t.target(d),
        Some(_) => return Err(Failure::input("named targets need d >= 2")),
        None => load(Path::new(target))?.complex,
    };
    let started = Instant::now();
    let (result, stats) = has_minor_with_stats(c, &h, budget).map_err(Failure::input)?;
    eprintln!(
        "minor search: {} nodes in {:.3} s",
        stats.nodes,
        started.elapsed().as_secs_f64()
    );
    let label = named.map_or_else(|| json!(target), |t| to_value(&t));
    let mut out = json!({ "target": label, "stats": to_value(&stats) });
    let (status, code) = match result {
        MinorResult::Found(w) => {
            out["witness"] = witness_payload(&h, &w);
            ("found", EXIT_OK)
        }
        MinorResult::NotFound => ("not-found", EXIT_OK),
        MinorResult::BudgetExhausted => ("budget-exhausted", EXIT_UNKNOWN),
    };
    Ok(Outcome {
        status: status.into(),
        result: out,
        code,
        seed: None,
    })
}

fn embeddable_cmd(
    c: &UniformComplex,
    budget: SearchBudget,
    assert: bool,
) -> Result<Outcome, Failure> {
    let started = Instant::now();
    let v = is_embeddable(c, budget, assert).map_err(Failure::input)?;
    eprintln!("embeddability: {:.3} s", started.elapsed().as_secs_f64());
    let mut result = json!({
        "preconditions": to_value(&v.preconditions),
        "searches": to_value(&v.searches),
    });
    let (status, code) = match &v.status {
        EmbeddingStatus::Embeddable => ("embeddable", EXIT_OK),
        EmbeddingStatus::NonEmbeddable { which, witness } => {
            result["which"] = to_value(which);
            result["witness"] = witness_payload(&which.target(c.d()), witness);
            ("non-embeddable", EXIT_OK)
        }
        EmbeddingStatus::MinorFreeUnverified => ("minor-free-unverified", EXIT_OK),
        EmbeddingStatus::Unknown { reason } => {
            result["reason"] = json!(reason);
            ("unknown", EXIT_UNKNOWN)
        }
    };
    Ok(Outcome {
        status: status.into(),
        result,
        code,
        seed: None,
    })
}

fn bridges_cmd(c: &UniformComplex, sphere: &Path) -> Result<Outcome, Failure> {
    let s = load(sphere)?.complex;
    let bs = bridges(c, &s).map_err(Failure::input)?;
    let mut pairs = Vec::new();
    for i in 0..bs.len() {
        for j in i + 1..bs.len() {
            let class = classify_pair(c, &s, &bs[i], &bs[j]).map_err(Failure::input)?;
            pairs.push(json!({ "pair": [i, j], "class": to_value(&class) }));
        }
    }
    Ok(Outcome::ok(
        "computed",
        json!({ "bridges": to_value(&bs), "pairs": pairs }),
    ))
}

fn ears_cmd(c: &UniformComplex) -> Result<Outcome, Failure> {
    match ear_decomposition(c, None).map_err(Failure::input)? {
        EarOutcome::Found(dec) => Ok(Outcome::ok("found", to_value(&dec))),
        EarOutcome::NotFound { diagnostic } => Ok(Outcome {
            status: "not-found".into(),
            result: json!({ "diagnostic": diagnostic }),
            code: EXIT_UNKNOWN,
            seed: None,
        }),
    }
}

fn decompose_cmd(c: &UniformComplex, cut: &[usize]) -> Result<Outcome, Failure> {
    let parts = marked_s_decomposition(c, cut).map_err(Failure::input)?;
    let back = reassemble(&parts, true).map_err(Failure::input)?;
    let components: Vec<Value> = parts
        .iter()
        .map(|p| {
            json!({
                "complex": doc(&p.complex),
                "marker": to_value(&p.marker),
                "marker_was_added": p.marker_was_added,
                "vertex_map": p.vertex_map,
            })
        })
        .collect();
    Ok(Outcome::ok(
        "computed",
        json!({ "components": components, "round_trip": canonical_form(&back) == canonical_form(c) }),
    ))
}

fn generate_cmd(family: &Family, out: Option<&Path>) -> Result<Outcome, Failure> {
    let mut seed = None;
    let mut trace = None;
    let c = match *family {
        Family::Complete { n, i } => complete_uniform(n, i).map_err(Failure::input)?,
        Family::Bipartite { p, q, i } => {
            let c = complete_bipartite_uniform(p, q, i).map_err(Failure::input)?;
            if i == 2 && p == 3 && q == 3 {
                eprintln!("note: K_{{3,3}}^2 includes a triangle on side B; the plain K_{{3,3}} is target k33");
            }
            c
        }
        Family::SimplexBoundary { d } => simplex_boundary(d).map_err(Failure::input)?,
        Family::ProcedureX { d, steps, seed: s } => {
            seed = Some(s);
            let (c, t) = procedure_x_build(d, &BuildInput::Seeded { seed: s, steps })
                .map_err(Failure::input)?;
            trace = Some(t);
            c
        }
        Family::Rp2 => rp2(),
    };
    if let Some(path) = out {
        std::fs::write(path, to_canonical_string(&c))
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    }
    let mut result = json!({ "complex": doc(&c) });
    if let Some(t) = trace {
        result["trace"] = to_value(&t);
    }
    Ok(Outcome {
        status: "generated".into(),
        result,
        code: EXIT_OK,
        seed,
    })
}

fn verify_cmd(c: &UniformComplex, witness: &Path) -> Result<Outcome, Failure> {
    let text = std::fs::read_to_string(witness)
        .map_err(|e| Failure::input(format!("{}: {e}", witness.display())))?;
    let (target, w) = parse_witness_str(&text)
        .map_err(|e| Failure::input(format!("{}: {e}", witness.display())))?;
    Ok(match witness_violation(c, &target, &w) {
        None => Outcome::ok("valid", json!({ "valid": true })),
        Some(reason) => Outcome {
            status: "invalid".into(),
            result: json!({ "valid": false, "reason": reason }),
            code: EXIT_INVALID,
            seed: None,
        },
    })
}

fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Validate { .. } => "validate",
        Command::Homology { .. } => "homology",
        Command::Connectivity { .. } => "connectivity",
        Command::Closed { .. } => "closed",
        Command::Link { .. } => "link",
        Command::Minor { .. } => "minor",
        Command::Embeddable { .. } => "embeddable",
        Command::Bridges { .. } => "bridges",
        Command::Ears { .. } => "ears",
        Command::Decompose { .. } => "decompose",
        Command::Generate { .. } => "generate",
        Command::VerifyWitness { .. } => "verify-witness",
    }
}

fn input_path(cmd: &Command) -> Option<&Path> {
    match cmd {
        Command::Validate { input }
        | Command::Homology { input, .. }
        | Command::Connectivity { input, .. }
        | Command::Closed { input }
        | Command::Link { input, .. }
        | Command::Minor { input, .. }
        | Command::Embeddable { input, .. }
        | Command::Bridges { input, .. }
        | Command::Ears { input }
        | Command::Decompose { input, .. }
        | Command::VerifyWitness { input, .. } => Some(input),
        Command::Generate { .. } => None,
    }
}

fn execute(cmd: &Command, input: Option<&UniformComplex>) -> Result<Outcome, Failure> {
    let c = || input.expect("input loaded");
    match cmd {
        Command::Validate { .. } => {
            let c = c();
            let isolated: Vec<usize> = c
                .isolated_vertices()
                .into_iter()
                .map(VertexId::index)
                .collect();
            Ok(Outcome::ok(
                "valid",
                json!({
                    "d": c.d(),
                    "n": c.vertex_count(),
                    "facets": c.facet_count(),
                    "isolated_vertices": isolated,
                    "closed": c.is_closed(),
                    "connected": c.is_connected(),
                }),
            ))
        }
        Command::Homology { through, .. } => Ok(homology_cmd(c(), *through)),
        Command::Connectivity { k, .. } => connectivity_cmd(c(), *k),
        Command::Closed { .. } => {
            let pendant = c().pendant_simplexoids();
            Ok(Outcome::ok(
                "computed",
                json!({ "closed": c().is_closed(), "pendant": to_value(&pendant) }),
            ))
        }
        Command::Link { vertex, .. } => {
            let v = resolve_vertex(c(), vertex)?;
            let (link, map) = c().link_with_map(VertexId(v)).map_err(Failure::input)?;
            let map: Vec<usize> = map.into_iter().map(VertexId::index).collect();
            Ok(Outcome::ok(
                "computed",
                json!({ "vertex": v, "link": doc(&link), "vertex_map": map }),
            ))
        }
        Command::Minor { target, budget, .. } => minor_cmd(c(), target, budget.budget()),
        Command::Embeddable {
            assert_triangulated,
            budget,
            ..
        } => embeddable_cmd(c(), budget.budget(), *assert_triangulated),
        Command::Bridges { sphere, .. } => bridges_cmd(c(), sphere),
        Command::Ears { .. } => ears_cmd(c()),
        Command::Decompose { cut, .. } => decompose_cmd(c(), cut),
        Command::Generate { family, out } => generate_cmd(family, out.as_deref()),
        Command::VerifyWitness { witness, .. } => verify_cmd(c(), witness),
    }
}

fn configure_threads() {
    if let Ok(raw) = std::env::var("HYPERWAGNER_THREADS") {
        match raw.parse::<usize>() {
            Ok(n) if n > 0 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                {
                    eprintln!("warning: could not size thread pool: {e}");
                }
            }
            _ => eprintln!("warning: ignoring HYPERWAGNER_THREADS={raw}"),
        }
    }
}

fn emit(report: &ReportDocument) {
    let text = serde_json::to_string_pretty(report).expect("report serializes");
    // A closed pipe is not worth a panic.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    let command = name(&cli.command);
    let loaded = match input_path(&cli.command).map(load).transpose() {
        Ok(l) => l,
        Err(f) => return fail(command, None, f),
    };
    let digest = loaded.as_ref().map(|l| l.digest.clone());
    match execute(&cli.command, loaded.as_ref().map(|l| &l.complex)) {
        Ok(out) => {
            emit(&ReportDocument {
                tool: "hyperwagner",
                version: env!("CARGO_PKG_VERSION"),
                command,
                input_digest: digest,
                seed: out.seed,
                status: out.status,
                result: out.result,
            });
            ExitCode::from(out.code)
        }
        Err(f) => fail(command, digest, f),
    }
}

fn fail(command: &'static str, digest: Option<String>, f: Failure) -> ExitCode {
    eprintln!("error: {}", f.message);
    emit(&ReportDocument {
        tool: "hyperwagner",
        version: env!("CARGO_PKG_VERSION"),
        command,
        input_digest: digest,
        seed: None,
        status: "error".into(),
        result: json!({ "error": f.message }),
    });
    ExitCode::from(f.code)
}
