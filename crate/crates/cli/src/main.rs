//! `ufh`: command-line front end for the union-free hypergraph toolkit.
//!
//! Exit codes: 0 success / all checks pass, 1 a property check failed
//! (witness printed), 2 usage or parse error, 3 a search budget was
//! exhausted (result inconclusive). Every run emits a manifest to stderr
//! with parameter echo, input/output digests, and the RNG version, so
//! fixtures invalidate loudly when anything changes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use ufh_core::construct::{
    assemble_shadow, assemble_vertex_sets, build_complement_family, build_pendant_family,
    locally_sparse, verify_main_theorem_instance, AssemblyMode,
};
use ufh_core::extremal::{
    max_bounded_matching, max_cover_free, max_union_free, DEFAULT_NODE_BUDGET,
};
use ufh_core::hypergraph::{
    check_config_free, check_cover_free, check_sidon, check_union_free, shadow,
};
use ufh_core::packing::greedy_pack;
use ufh_core::pipeline::{run as endtoend_run, EndToEndParams};
use ufh_core::{io, Error, UniformHypergraph, Verdict, RNG_VERSION};

#[derive(Parser)]
#[command(name = "ufh", version, about = "union-free hypergraph toolkit")]
struct Cli {
    /// Machine-readable JSON output on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for all randomized stages.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node budget for exhaustive searches.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Write the primary artifact to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check structural properties of a hypergraph file.
    Check(CheckArgs),
    /// Compute one extremal value exhaustively.
    Extremal(ExtremalArgs),
    /// Build one of the explicit constructions.
    Construct(ConstructArgs),
    /// Run the greedy locally sparse induced packing.
    Pack(PackArgs),
    /// Build and verify a full instance for parameters (t, k, a).
    Endtoend(EndToEndArgs),
    /// Tabulate U_t and F_t over ranges, cross-checking the sandwich
    /// inequality F_t <= U_t <= F_{t-1} per row.
    Table(TableArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Edge-list or JSON hypergraph file.
    input: PathBuf,
    /// Check t-union-freeness.
    #[arg(long, value_name = "t")]
    union_free: Option<usize>,
    /// Check t-cover-freeness.
    #[arg(long, value_name = "t")]
    cover_free: Option<usize>,
    /// Check the t-Sidon property.
    #[arg(long, value_name = "t")]
    sidon: Option<usize>,
    /// Check (v,e)-freeness; format v,e.
    #[arg(long, value_name = "v,e")]
    config_free: Option<String>,
}

#[derive(Copy, Clone, ValueEnum)]
enum ExtremalKind {
    /// U_t(n,r): largest t-union-free r-graph on n vertices.
    U,
    /// F_t(n,r): largest t-cover-free r-graph on n vertices.
    F,
    /// m(n,r,lambda): largest r-graph with matching number <= lambda.
    M,
}

#[derive(Args)]
struct ExtremalArgs {
    #[arg(value_enum)]
    kind: ExtremalKind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    lambda: Option<usize>,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Pendant family over a base graph.
    Pendant {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        /// Base (tk-1)-graph file.
        #[arg(long)]
        g: PathBuf,
    },
    /// Complement family on tk-a vertices.
    Complement {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        a: usize,
    },
    /// Locally sparse r-graph by seeded greedy alteration.
    Sparse {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        e: usize,
        #[arg(long, default_value_t = usize::MAX)]
        target_size: usize,
    },
    /// Assemble a host hypergraph from a family and a packing.
    Assemble {
        /// Template family file.
        #[arg(long)]
        family: PathBuf,
        /// Packing JSON from `ufh pack`.
        #[arg(long)]
        packing: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Verify as an instance for these parameters: t,k,a.
        #[arg(long, value_name = "t,k,a")]
        verify: Option<String>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Mode {
    Shadow,
    VertexSets,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(subcommand)]
    cmd: ConstructCmd,
}

#[derive(Args)]
struct PackArgs {
    /// Template file, or builtin:shadow:t,k (k-shadow of one tk-edge),
    /// or builtin:complement:t,k,a.
    #[arg(long)]
    template: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    e: usize,
    /// Red probability; defaults to the density-matching heuristic.
    #[arg(long)]
    gamma: Option<f64>,
}

#[derive(Args)]
struct EndToEndArgs {
    #[arg(long)]
    t: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    a: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    gamma: Option<f64>,
    /// Edge count the locally sparse base aims for (a = 0 branch).
    #[arg(long, default_value_t = 2)]
    target_size: usize,
}

#[derive(Args)]
struct TableArgs {
    /// Largest n; rows run from r to this value.
    #[arg(long)]
    n_max: usize,
    #[arg(long, value_delimiter = ',')]
    r: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    t: Vec<usize>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct RunManifest {
    tool_version: String,
    subcommand: String,
    args: Vec<String>,
    seed: u64,
    budget: u64,
    rng_version: String,
    input_digests: BTreeMap<String, String>,
    output_digests: BTreeMap<String, String>,
    wall_time_ms: u128,
}

fn sha256_hex(data: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(data);
    h.finalize().iter().map(|b| format!("{:02x}", b)).collect()
}

/// Everything a subcommand produces: stdout payload, optional file
/// artifact, and the exit code.
struct Outcome {
    stdout: String,
    artifact: Option<String>,
    exit: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let budget = cli.budget.unwrap_or(DEFAULT_NODE_BUDGET);
    let mut inputs: BTreeMap<String, String> = BTreeMap::new();

    let result = dispatch(&cli, budget, &mut inputs);
    let outcome = match result {
        Ok(o) => o,
        Err(err) => {
            eprintln!("error: {}", err);
            return ExitCode::from(exit_for(&err));
        }
    };

    let mut outputs: BTreeMap<String, String> = BTreeMap::new();
    if !outcome.stdout.is_empty() {
        outputs.insert("stdout".into(), sha256_hex(outcome.stdout.as_bytes()));
        print!("{}", outcome.stdout);
    }
    if let Some(artifact) = &outcome.artifact {
        let path = cli.out.as_deref().unwrap_or(Path::new("-"));
        if path == Path::new("-") {
            outputs.insert("stdout".into(), sha256_hex(artifact.as_bytes()));
            print!("{}", artifact);
        } else {
            if let Err(err) = std::fs::write(path, artifact) {
                eprintln!("error: {}", err);
                return ExitCode::from(2);
            }
            outputs.insert(path.display().to_string(), sha256_hex(artifact.as_bytes()));
        }
    }

    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").into(),
        subcommand: subcommand_name(&cli.cmd).into(),
        args: std::env::args().skip(1).collect(),
        seed: cli.seed,
        budget,
        rng_version: RNG_VERSION.into(),
        input_digests: inputs,
        output_digests: outputs,
        wall_time_ms: started.elapsed().as_millis(),
    };
    match serde_json::to_string(&manifest) {
        Ok(m) => eprintln!("{}", m),
        Err(err) => eprintln!("error: manifest serialization failed: {}", err),
    }
    ExitCode::from(outcome.exit)
}

fn subcommand_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Check(_) => "check",
        Cmd::Extremal(_) => "extremal",
        Cmd::Construct(_) => "construct",
        Cmd::Pack(_) => "pack",
        Cmd::Endtoend(_) => "endtoend",
        Cmd::Table(_) => "table",
    }
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::BudgetExhausted(_) | Error::UnsolvedMatchingValue { .. } => 3,
        _ => 2,
    }
}

fn load_input(
    path: &Path,
    inputs: &mut BTreeMap<String, String>,
) -> Result<UniformHypergraph, Error> {
    let text = std::fs::read_to_string(path)?;
    inputs.insert(path.display().to_string(), sha256_hex(text.as_bytes()));
    if path.extension().is_some_and(|e| e == "json") {
        io::from_json(&text)
    } else {
        io::parse_edge_list(&text)
    }
}

fn parse_tuple(spec: &str, arity: usize, what: &str) -> Result<Vec<usize>, Error> {
    let parts: Result<Vec<usize>, _> = spec.split(',').map(|p| p.trim().parse()).collect();
    match parts {
        Ok(v) if v.len() == arity => Ok(v),
        _ => Err(Error::parameter(format!(
            "expected {} as {} comma-separated integers, got {:?}",
            what, arity, spec
        ))),
    }
}

fn dispatch(cli: &Cli, budget: u64, inputs: &mut BTreeMap<String, String>) -> Result<Outcome, Error> {
    match &cli.cmd {
        Cmd::Check(args) => cmd_check(cli, args, budget, inputs),
        Cmd::Extremal(args) => cmd_extremal(cli, args, budget),
        Cmd::Construct(args) => cmd_construct(cli, args, budget, inputs),
        Cmd::Pack(args) => cmd_pack(cli, args, budget),
        Cmd::Endtoend(args) => cmd_endtoend(cli, args, budget),
        Cmd::Table(args) => cmd_table(cli, args, budget),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CheckEntry {
    property: String,
    #[serde(flatten)]
    verdict: Verdict,
}

fn cmd_check(
    cli: &Cli,
    args: &CheckArgs,
    budget: u64,
    inputs: &mut BTreeMap<String, String>,
) -> Result<Outcome, Error> {
    let h = load_input(&args.input, inputs)?;
    let mut entries: Vec<CheckEntry> = Vec::new();
    if let Some(t) = args.union_free {
        entries.push(CheckEntry {
            property: format!("union-free({})", t),
            verdict: check_union_free(&h, t, budget)?,
        });
    }
    if let Some(t) = args.cover_free {
        entries.push(CheckEntry {
            property: format!("cover-free({})", t),
            verdict: check_cover_free(&h, t, budget)?,
        });
    }
    if let Some(t) = args.sidon {
        entries.push(CheckEntry {
            property: format!("sidon({})", t),
            verdict: check_sidon(&h, t, budget)?,
        });
    }
    if let Some(spec) = &args.config_free {
        let ve = parse_tuple(spec, 2, "--config-free")?;
        entries.push(CheckEntry {
            property: format!("config-free({},{})", ve[0], ve[1]),
            verdict: check_config_free(&h, ve[0], ve[1], budget)?,
        });
    }
    if entries.is_empty() {
        return Err(Error::parameter(
            "no properties requested; pass --union-free, --cover-free, --sidon, or --config-free",
        ));
    }
    let exit = verdicts_exit(entries.iter().map(|e| &e.verdict));
    let stdout = if cli.json {
        format!("{}\n", serde_json::to_string_pretty(&entries)?)
    } else {
        let mut s = String::new();
        for e in &entries {
            s.push_str(&format!("{}: {}\n", e.property, describe(&e.verdict)?));
        }
        s
    };
    Ok(Outcome {
        stdout,
        artifact: None,
        exit,
    })
}

fn describe(v: &Verdict) -> Result<String, Error> {
    Ok(match v {
        Verdict::Pass => "pass".into(),
        Verdict::Fail { witness } => format!("FAIL witness={}", serde_json::to_string(witness)?),
        Verdict::Inconclusive { nodes } => format!("inconclusive (budget after {} nodes)", nodes),
    })
}

fn verdicts_exit<'a>(verdicts: impl Iterator<Item = &'a Verdict>) -> u8 {
    let mut exit = 0u8;
    for v in verdicts {
        match v {
            Verdict::Pass => {}
            Verdict::Fail { .. } => return 1,
            Verdict::Inconclusive { .. } => exit = 3,
        }
    }
    exit
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ExtremalCell {
    kind: String,
    n: usize,
    r: usize,
    order: usize,
    value: usize,
    nodes_explored: u64,
    timed_out: bool,
}

fn cmd_extremal(cli: &Cli, args: &ExtremalArgs, budget: u64) -> Result<Outcome, Error> {
    let (kind, order, res) = match args.kind {
        ExtremalKind::U => {
            let t = args.t.ok_or_else(|| Error::parameter("U requires --t"))?;
            ("U", t, max_union_free(args.n, args.r, t, budget)?)
        }
        ExtremalKind::F => {
            let t = args.t.ok_or_else(|| Error::parameter("F requires --t"))?;
            ("F", t, max_cover_free(args.n, args.r, t, budget)?)
        }
        ExtremalKind::M => {
            let l = args
                .lambda
                .ok_or_else(|| Error::parameter("m requires --lambda"))?;
            ("m", l, max_bounded_matching(args.n, args.r, l, budget)?)
        }
    };
    let cell = ExtremalCell {
        kind: kind.into(),
        n: args.n,
        r: args.r,
        order,
        value: res.value,
        nodes_explored: res.nodes_explored,
        timed_out: res.timed_out,
    };
    let exit = if res.timed_out { 3 } else { 0 };
    let stdout = if cli.json {
        format!("{}\n", serde_json::to_string_pretty(&cell)?)
    } else if res.timed_out {
        format!("{} >= {} (budget exhausted)\n", kind, res.value)
    } else {
        format!("{}\n", res.value)
    };
    let artifact = Some(io::write_edge_list(&res.witness));
    Ok(Outcome {
        stdout,
        artifact: if cli.out.is_some() { artifact } else { None },
        exit,
    })
}

fn cmd_construct(
    cli: &Cli,
    args: &ConstructArgs,
    budget: u64,
    inputs: &mut BTreeMap<String, String>,
) -> Result<Outcome, Error> {
    match &args.cmd {
        ConstructCmd::Pendant { t, k, g } => {
            let base = load_input(g, inputs)?;
            let fam = build_pendant_family(*t, *k, &base)?;
            let stdout = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&fam)?)
            } else {
                format!(
                    "pendant family: {} edges on {} vertices; |F|/|shadow| = {} (reference {})\n",
                    fam.family.len(),
                    fam.family.n(),
                    fam.ratio,
                    fam.ratio_reference
                )
            };
            Ok(Outcome {
                stdout,
                artifact: Some(io::write_edge_list(&fam.family)),
                exit: 0,
            })
        }
        ConstructCmd::Complement { t, k, a } => {
            let fam = build_complement_family(*t, *k, *a, budget)?;
            let stdout = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&fam)?)
            } else {
                format!(
                    "complement family: {} edges on {} vertices (removed {} extremal edges)\n",
                    fam.family.len(),
                    fam.family.n(),
                    fam.m_value
                )
            };
            Ok(Outcome {
                stdout,
                artifact: Some(io::write_edge_list(&fam.family)),
                exit: 0,
            })
        }
        ConstructCmd::Sparse {
            m,
            r,
            k,
            e,
            target_size,
        } => {
            let res = locally_sparse(*m, *r, *k, *e, cli.seed, *target_size)?;
            let stdout = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&res)?)
            } else {
                format!(
                    "locally sparse: {} edges on {} vertices (target {}{})\n",
                    res.graph.len(),
                    res.graph.n(),
                    res.target_size,
                    if res.reached_target { "" } else { ", not reached" }
                )
            };
            Ok(Outcome {
                stdout,
                artifact: Some(io::write_edge_list(&res.graph)),
                exit: 0,
            })
        }
        ConstructCmd::Assemble {
            family,
            packing,
            mode,
            verify,
        } => {
            let fam = load_input(family, inputs)?;
            let text = std::fs::read_to_string(packing)?;
            inputs.insert(packing.display().to_string(), sha256_hex(text.as_bytes()));
            let pack: ufh_core::packing::Packing = serde_json::from_str(&text)?;
            let asm = match mode {
                Mode::Shadow => assemble_shadow(&fam, &pack)?,
                Mode::VertexSets => assemble_vertex_sets(&fam, &pack)?,
            };
            debug_assert!(matches!(
                asm.mode,
                AssemblyMode::Shadow | AssemblyMode::VertexSets
            ));
            let mut exit = 0u8;
            let report = match verify {
                Some(spec) => {
                    let tka = parse_tuple(spec, 3, "--verify")?;
                    let rep =
                        verify_main_theorem_instance(tka[0], tka[1], tka[2], &asm, budget)?;
                    exit = verdicts_exit(
                        std::iter::once(&rep.union_free)
                            .chain(std::iter::once(&rep.cover_free))
                            .chain(rep.sparsity.iter().map(|(_, v)| v)),
                    );
                    Some(rep)
                }
                None => None,
            };
            let stdout = if cli.json {
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "hostSize": asm.host.len(),
                        "uniformity": asm.host.r(),
                        "report": report,
                    }))?
                )
            } else {
                let mut s = format!(
                    "assembled host: {} edges of size {} on {} vertices\n",
                    asm.host.len(),
                    asm.host.r(),
                    asm.host.n()
                );
                if let Some(rep) = &report {
                    s.push_str(&format!(
                        "union-free({}): {}\ncover-free({}): {}\n",
                        rep.t + 1,
                        describe(&rep.union_free)?,
                        rep.t,
                        describe(&rep.cover_free)?
                    ));
                    for (level, v) in &rep.sparsity {
                        s.push_str(&format!("sparsity level {}: {}\n", level, describe(v)?));
                    }
                }
                s
            };
            Ok(Outcome {
                stdout,
                artifact: Some(io::write_edge_list(&asm.host)),
                exit,
            })
        }
    }
}

fn resolve_template(
    spec: &str,
    budget: u64,
    inputs: &mut BTreeMap<String, String>,
) -> Result<UniformHypergraph, Error> {
    if let Some(rest) = spec.strip_prefix("builtin:shadow:") {
        let tk = parse_tuple(rest, 2, "builtin:shadow")?;
        let (t, k) = (tk[0], tk[1]);
        let edge = UniformHypergraph::new(t * k, t * k, vec![(0..(t * k) as u16).collect()])?;
        return shadow(&edge, k);
    }
    if let Some(rest) = spec.strip_prefix("builtin:complement:") {
        let tka = parse_tuple(rest, 3, "builtin:complement")?;
        return Ok(build_complement_family(tka[0], tka[1], tka[2], budget)?.family);
    }
    load_input(Path::new(spec), inputs)
}

fn cmd_pack(cli: &Cli, args: &PackArgs, budget: u64) -> Result<Outcome, Error> {
    let mut inputs = BTreeMap::new();
    let template = resolve_template(&args.template, budget, &mut inputs)?;
    let gamma = args
        .gamma
        .unwrap_or_else(|| ufh_core::pipeline::default_gamma(&template));
    let (packing, report) = greedy_pack(&template, args.n, args.e, gamma, cli.seed)?;
    let stdout = if cli.json {
        format!("{}\n", serde_json::to_string_pretty(&report)?)
    } else {
        format!(
            "packing: {} copies of a {}-edge template, coverage {:.4} ({} candidates, gamma {:.4})\n",
            packing.copies.len(),
            template.len(),
            packing.coverage,
            report.candidate_count,
            gamma
        )
    };
    Ok(Outcome {
        stdout,
        artifact: Some(format!("{}\n", serde_json::to_string_pretty(&packing)?)),
        exit: 0,
    })
}

fn cmd_endtoend(cli: &Cli, args: &EndToEndArgs, budget: u64) -> Result<Outcome, Error> {
    let mut params = EndToEndParams::new(args.t, args.k, args.a, args.n, cli.seed);
    params.gamma = args.gamma;
    params.budget = budget;
    params.target_size = args.target_size;
    let res = endtoend_run(params)?;
    let exit = verdicts_exit(
        std::iter::once(&res.report.union_free)
            .chain(std::iter::once(&res.report.cover_free))
            .chain(res.report.sparsity.iter().map(|(_, v)| v)),
    );
    let stdout = if cli.json {
        format!("{}\n", serde_json::to_string_pretty(&res)?)
    } else {
        let mut s = format!(
            "instance (t={}, k={}, a={}): {} edges of size {} on {} vertices\n",
            args.t,
            args.k,
            args.a,
            res.host_size,
            args.t * args.k - args.a,
            args.n
        );
        match (&res.density, res.reference) {
            (Some(d), Some(reference)) => s.push_str(&format!(
                "density constant {} (leading term {:.2} at n={})\n",
                d.constant, reference, args.n
            )),
            _ => s.push_str("density constant: outside the covered range\n"),
        }
        s.push_str(&format!(
            "verification: union-free({}) {}, cover-free({}) {}, sparsity levels 2..={} {}\n",
            args.t + 1,
            describe(&res.report.union_free)?,
            args.t,
            describe(&res.report.cover_free)?,
            res.e,
            if res
                .report
                .sparsity
                .iter()
                .all(|(_, v)| v.is_pass())
            {
                "pass".to_string()
            } else {
                "FAIL".to_string()
            }
        ));
        s
    };
    Ok(Outcome {
        stdout,
        artifact: Some(io::write_edge_list(&res.assembled.host)),
        exit,
    })
}

fn cmd_table(cli: &Cli, args: &TableArgs, budget: u64) -> Result<Outcome, Error> {
    if args.r.is_empty() || args.t.is_empty() {
        return Err(Error::parameter("table requires --r and --t lists"));
    }
    let mut s = String::from("n\tr\tt\tF_t\tU_t\tF_{t-1}\tsandwichOk\ttimedOut\n");
    let mut exit = 0u8;
    for &r in &args.r {
        for &t in &args.t {
            if t < 2 {
                return Err(Error::parameter("table requires t >= 2"));
            }
            for n in r..=args.n_max {
                let f_t = max_cover_free(n, r, t, budget)?;
                let u_t = max_union_free(n, r, t, budget)?;
                let f_prev = max_cover_free(n, r, t - 1, budget)?;
                let timed_out = f_t.timed_out || u_t.timed_out || f_prev.timed_out;
                let sandwich_ok =
                    !timed_out && f_t.value <= u_t.value && u_t.value <= f_prev.value;
                if timed_out {
                    exit = 3;
                } else if !sandwich_ok {
                    exit = 1;
                }
                s.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                    n, r, t, f_t.value, u_t.value, f_prev.value, sandwich_ok, timed_out
                ));
            }
        }
    }
    let _ = cli;
    Ok(Outcome::ok_with_exit(s, exit))
}

impl Outcome {
    fn ok_with_exit(stdout: String, exit: u8) -> Self {
        Outcome {
            stdout,
            artifact: None,
            exit,
        }
    }
}
