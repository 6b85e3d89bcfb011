//! `thickness-lab`: recognizers, exact solvers, the reduction pipeline and
//! verification campaigns from the command line.
//!
//! Exit codes: 0 yes or success, 1 no or failed check, 2 usage or input
//! error, 3 search budget exceeded, 4 solver and oracle disagree.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use thickness_lab::classes::{builtin_descriptor, ClassDescriptor, BUILTIN_NAMES};
use thickness_lab::graph::{parse_edge_list, serialize_edge_list, Graph};
use thickness_lab::lab::{
    campaign_claims_micro, campaign_conditions, campaign_observation, campaign_reduction_forward,
    emit_dot, emit_instance_dot, CampaignReport, CheckStatus, ForwardConfig, ObservationConfig,
};
use thickness_lab::reduction::{
    extract_coloring, forward_certificate, parse_instance, reduce, render_provenance, Mode,
    ReduceError, ReducedInstance,
};
use thickness_lab::solver::{
    chromatic_index, edge_color_decide, parse_partition, render_partition, render_result,
    thickness_decide, thickness_exact, thickness_oracle, verify_partition, Budget, Certificate,
    EdgePartition, SolveError, SolveResult, SolverConfig,
};

const YES: u8 = 0;
const NO: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;
const DISAGREE: u8 = 4;

#[derive(Parser)]
#[command(name = "thickness-lab", version, about = "Exact F-thickness tools")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Test class membership.
    Recognize(RecognizeArgs),
    /// Decide or compute F-thickness.
    Thickness(ThicknessArgs),
    /// Decide k-edge-colorability or compute the chromatic index.
    Edgecolor(EdgecolorArgs),
    /// Build the F-thickness instance of a k-regular graph.
    Reduce(ReduceArgs),
    /// Check a partition of a reduced instance and read a coloring back.
    Verify(VerifyArgs),
    /// Run a verification campaign.
    Campaign(CampaignArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
    Dot,
}

#[derive(Args, Clone)]
struct BudgetArgs {
    /// Wall-clock limit in seconds.
    #[arg(long)]
    budget_secs: Option<f64>,
    /// Global wall-clock cap; the smaller of this and --budget-secs applies.
    #[arg(long, env = "THICKNESS_LAB_BUDGET_SECS", hide_env_values = true)]
    budget_cap_secs: Option<f64>,
    /// Search-node limit.
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Worker threads for the decision search.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(n) = self.budget_nodes {
            b.max_nodes = Some(n);
        }
        let secs = match (self.budget_secs, self.budget_cap_secs) {
            (Some(a), Some(c)) => Some(a.min(c)),
            (a, c) => a.or(c),
        };
        if let Some(s) = secs {
            b.max_time = Some(Duration::from_secs_f64(s.max(0.0)));
        }
        b
    }

    fn solver(&self) -> SolverConfig {
        SolverConfig {
            budget: self.budget(),
            threads: self.threads.max(1),
        }
    }
}

#[derive(Args)]
struct RecognizeArgs {
    /// Class name.
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    class: Option<String>,
    /// Report every builtin class.
    #[arg(long)]
    all: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Edge-list file, or `-` for stdin.
    graph: PathBuf,
}

#[derive(Args)]
struct ThicknessArgs {
    #[arg(long)]
    class: String,
    /// Number of parts. Without it the exact thickness is computed.
    #[arg(long)]
    k: Option<usize>,
    /// Also run the exhaustive oracle and compare.
    #[arg(long)]
    oracle: bool,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the full result, certificate included, to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the certificate on stdout.
    #[arg(long)]
    stdout: bool,
    /// Include wall time in the report.
    #[arg(long)]
    time: bool,
    graph: PathBuf,
}

#[derive(Args)]
struct EdgecolorArgs {
    /// Number of colors. Without it the chromatic index is computed.
    #[arg(long)]
    k: Option<usize>,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    stdout: bool,
    #[arg(long)]
    time: bool,
    graph: PathBuf,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    class: String,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value = "relaxed")]
    mode: Mode,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Output prefix; writes PREFIX.g and PREFIX.prov. Defaults to the
    /// input path with its extension replaced by `.reduced`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the instance and provenance on stdout instead of writing files.
    #[arg(long)]
    stdout: bool,
    /// Also write PREFIX.part, the partition built from a k-edge-coloring.
    #[arg(long)]
    forward: bool,
    graph: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Edge list of the reduced graph.
    #[arg(long)]
    instance: PathBuf,
    /// Provenance sidecar. Defaults to the instance path with `.prov`.
    #[arg(long)]
    provenance: Option<PathBuf>,
    /// Partition file.
    #[arg(long)]
    partition: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CampaignArgs {
    /// observation, conditions, forward or claims.
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(thickness_lab::lab::CAMPAIGN_NAMES))]
    name: String,
    /// Parts of the gadget (observation).
    #[arg(long, default_value_t = 1)]
    z: usize,
    /// Class (observation).
    #[arg(long, default_value = "outerplanar")]
    class: String,
    /// Gadget size (observation).
    #[arg(long)]
    c: Option<usize>,
    /// Sampling seed (conditions).
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Members sampled per class (conditions).
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Colors (forward).
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Cap on colorings per graph (forward).
    #[arg(long, default_value_t = 10_000)]
    limit: usize,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for the report and any counterexample files.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    time: bool,
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Failure {
        Failure {
            code: USAGE,
            msg: msg.into(),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match e {
            SolveError::BudgetExceeded(_) => BUDGET,
            _ => USAGE,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<ReduceError> for Failure {
    fn from(e: ReduceError) -> Self {
        match e {
            ReduceError::Solve(s) => s.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Recognize(a) => recognize(a),
        Cmd::Thickness(a) => thickness(a),
        Cmd::Edgecolor(a) => edgecolor(a),
        Cmd::Reduce(a) => reduce_cmd(a),
        Cmd::Verify(a) => verify(a),
        Cmd::Campaign(a) => campaign(a),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    parse_edge_list(&read_text(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn class(name: &str) -> Result<ClassDescriptor, Failure> {
    builtin_descriptor(name).map_err(|e| Failure::usage(e.to_string()))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn no_dot(format: Format, cmd: &str) -> Result<(), Failure> {
    if format == Format::Dot {
        return Err(Failure::usage(format!("--format dot is not available for {cmd}")));
    }
    Ok(())
}

fn recognize(a: RecognizeArgs) -> Outcome {
    let g = read_graph(&a.graph)?;
    if a.format == Format::Dot {
        print!("{}", emit_dot(&g));
        return Ok(YES);
    }
    let names: Vec<&str> = match &a.class {
        Some(c) => vec![class(c)?.name],
        None => BUILTIN_NAMES.to_vec(),
    };
    let results: Vec<(&str, bool)> = names
        .iter()
        .map(|n| (*n, builtin_descriptor(n).unwrap().contains(&g)))
        .collect();
    match a.format {
        Format::Structured => {
            let map: serde_json::Map<String, Value> =
                results.iter().map(|(n, b)| (n.to_string(), json!(b))).collect();
            print_json(&json!({ "n": g.n(), "m": g.m(), "membership": map }));
        }
        _ if a.all => {
            for (n, b) in &results {
                println!("{n}: {b}");
            }
        }
        _ => println!("{}", results[0].1),
    }
    Ok(if a.all || results[0].1 { YES } else { NO })
}

fn stats_json(r: &SolveResult, with_time: bool) -> Value {
    let mut v = serde_json::to_value(&r.stats).expect("stats");
    if with_time {
        v["elapsed_ms"] = json!(r.stats.elapsed.as_millis() as u64);
    }
    v
}

fn certificate_json(g: &Graph, r: &SolveResult) -> Value {
    match &r.certificate {
        Some(Certificate::Partition(p)) => json!({
            "k": p.k(),
            "edges": g.edges().iter().enumerate()
                .map(|(e, &(u, v))| json!([u, v, p.part_of(e) + 1])).collect::<Vec<_>>(),
        }),
        Some(Certificate::Coloring(c)) => json!({
            "k": c.k(),
            "edges": g.edges().iter().enumerate()
                .map(|(e, &(u, v))| json!([u, v, c.color(e) + 1])).collect::<Vec<_>>(),
        }),
        None => Value::Null,
    }
}

fn partition_dot(g: &Graph, p: &EdgePartition) -> String {
    const PALETTE: [&str; 8] = [
        "red", "blue", "darkgreen", "orange", "purple", "brown", "cyan", "magenta",
    ];
    let mut s = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        s.push_str(&format!("  {v};\n"));
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let part = p.part_of(e);
        s.push_str(&format!(
            "  {u} -- {v} [color={}, label=\"{}\"];\n",
            PALETTE[part % PALETTE.len()],
            part + 1
        ));
    }
    s.push_str("}\n");
    s
}

/// Prints a decision report and writes or prints the certificate.
fn emit_decision(
    g: &Graph,
    r: &SolveResult,
    format: Format,
    out: Option<&Path>,
    stdout: bool,
    with_time: bool,
    extra: &[(&str, String)],
) -> Result<(), Failure> {
    let full = render_result(g, r, with_time);
    if let Some(path) = out {
        write_file(path, &full)?;
    }
    match format {
        Format::Structured => {
            let mut v = json!({
                "decision": r.decision,
                "stats": stats_json(r, with_time),
            });
            for (k, val) in extra {
                v[*k] = json!(val);
            }
            if stdout {
                v["certificate"] = certificate_json(g, r);
            }
            print_json(&v);
        }
        Format::Dot => match r.partition() {
            Some(p) => print!("{}", partition_dot(g, p)),
            None => print!("{}", emit_dot(g)),
        },
        Format::Text => {
            if stdout {
                print!("{full}");
            } else {
                // report without the certificate body
                for line in full.lines().take_while(|l| !l.starts_with("certificate:")) {
                    println!("{line}");
                }
            }
            for (k, val) in extra {
                println!("{k}: {val}");
            }
        }
    }
    Ok(())
}

fn thickness(a: ThicknessArgs) -> Outcome {
    let g = read_graph(&a.graph)?;
    let f = class(&a.class)?;
    let cfg = a.budget.solver();
    let Some(k) = a.k else {
        if a.oracle {
            return Err(Failure::usage("--oracle needs --k"));
        }
        let (theta, p) = thickness_exact(&g, &f, &cfg)?;
        let r = SolveResult {
            decision: thickness_lab::solver::Decision::Yes,
            certificate: Some(Certificate::Partition(p)),
            stats: Default::default(),
        };
        match a.format {
            Format::Text => {
                println!("thickness: {theta}");
                if let Some(path) = &a.out {
                    write_file(path, &render_result(&g, &r, false))?;
                }
                if a.stdout {
                    print!("{}", render_partition(&g, r.partition().unwrap()));
                }
            }
            _ => {
                emit_decision(&g, &r, a.format, a.out.as_deref(), a.stdout, false, &[(
                    "thickness",
                    theta.to_string(),
                )])?;
            }
        }
        return Ok(YES);
    };
    let r = thickness_decide(&g, &f, k, &cfg)?;
    let mut extra = Vec::new();
    let mut code = if r.is_yes() { YES } else { NO };
    if a.oracle {
        match thickness_oracle(&g, &f, k) {
            Ok(o) if o.decision == r.decision => extra.push(("oracle", "agrees".to_string())),
            Ok(o) => {
                extra.push(("oracle", format!("DISAGREES (oracle says {})", o.decision)));
                code = DISAGREE;
            }
            Err(e) => extra.push(("oracle", format!("skipped: {e}"))),
        }
    }
    emit_decision(&g, &r, a.format, a.out.as_deref(), a.stdout, a.time, &extra)?;
    Ok(code)
}

fn edgecolor(a: EdgecolorArgs) -> Outcome {
    no_dot(a.format, "edgecolor")?;
    let g = read_graph(&a.graph)?;
    let cfg = a.budget.solver();
    let Some(k) = a.k else {
        let (ci, c) = chromatic_index(&g, &cfg)?;
        let r = SolveResult {
            decision: thickness_lab::solver::Decision::Yes,
            certificate: Some(Certificate::Coloring(c)),
            stats: Default::default(),
        };
        emit_decision(&g, &r, a.format, a.out.as_deref(), a.stdout, false, &[(
            "chromatic_index",
            ci.to_string(),
        )])?;
        return Ok(YES);
    };
    let r = edge_color_decide(&g, k, &cfg)?;
    emit_decision(&g, &r, a.format, a.out.as_deref(), a.stdout, a.time, &[])?;
    Ok(if r.is_yes() { YES } else { NO })
}

fn instance_summary(inst: &ReducedInstance) -> Vec<(String, String)> {
    let (g, h) = (&inst.source, &inst.gadget.h);
    vec![
        ("class".into(), inst.class().to_string()),
        ("k".into(), inst.k().to_string()),
        ("mode".into(), inst.mode.to_string()),
        ("labels".into(), inst.labeling.count().to_string()),
        ("gadget_maximality".into(), inst.gadget.maximality.to_string()),
        ("n'".into(), format!("{}+{} = {}", g.n(), h.n(), inst.gprime.n())),
        (
            "m'".into(),
            format!("{}+{}+{} = {}", g.m(), h.m(), 2 * g.m(), inst.gprime.m()),
        ),
    ]
}

fn reduce_cmd(a: ReduceArgs) -> Outcome {
    let g = read_graph(&a.graph)?;
    let f = class(&a.class)?;
    let cfg = a.budget.solver();
    let inst = reduce(&g, &f, a.k, a.mode, &cfg.budget, cfg.threads)?;
    let edges = serialize_edge_list(&inst.gprime);
    let prov = render_provenance(&inst);
    let forward = if a.forward {
        let r = edge_color_decide(&g, a.k, &cfg)?;
        match r.coloring() {
            Some(c) => Some(render_partition(&inst.gprime, &forward_certificate(c, &inst)?)),
            None => return Err(Failure {
                code: NO,
                msg: format!("source graph has no {}-edge-coloring; no forward partition", a.k),
            }),
        }
    } else {
        None
    };

    let prefix = a.out.clone().unwrap_or_else(|| a.graph.with_extension("reduced"));
    let mut written = Vec::new();
    if !a.stdout {
        let with_ext = |ext: &str| {
            let mut p = prefix.clone().into_os_string();
            p.push(ext);
            PathBuf::from(p)
        };
        let (gp, pp) = (with_ext(".g"), with_ext(".prov"));
        write_file(&gp, &edges)?;
        write_file(&pp, &prov)?;
        written.push(gp);
        written.push(pp);
        if let Some(part) = &forward {
            let fp = with_ext(".part");
            write_file(&fp, part)?;
            written.push(fp);
        }
    }
    let summary = instance_summary(&inst);
    match a.format {
        Format::Dot => print!("{}", emit_instance_dot(&inst)),
        Format::Structured => {
            let mut v = json!({});
            for (k, val) in &summary {
                v[k.as_str()] = json!(val);
            }
            v["files"] = json!(written.iter().map(|p| p.display().to_string()).collect::<Vec<_>>());
            if a.stdout {
                v["instance"] = json!(edges);
                v["provenance"] = json!(prov);
                if let Some(part) = &forward {
                    v["partition"] = json!(part);
                }
            }
            print_json(&v);
        }
        Format::Text => {
            for (k, val) in &summary {
                println!("{k}: {val}");
            }
            for p in &written {
                println!("wrote: {}", p.display());
            }
            if a.stdout {
                println!("--- instance");
                print!("{edges}");
                println!("--- provenance");
                print!("{prov}");
                if let Some(part) = &forward {
                    println!("--- partition");
                    print!("{part}");
                }
            }
        }
    }
    Ok(YES)
}

fn verify(a: VerifyArgs) -> Outcome {
    no_dot(a.format, "verify")?;
    let prov_path = a
        .provenance
        .clone()
        .unwrap_or_else(|| a.instance.with_extension("prov"));
    let inst = parse_instance(&read_text(&a.instance)?, &read_text(&prov_path)?)?;
    let f = class(inst.class())?;
    let p = parse_partition(&inst.gprime, &read_text(&a.partition)?)?;
    let valid = verify_partition(&inst.gprime, &f, &p)?;
    let coloring = extract_coloring(&p, &inst);
    let mut lines: Vec<(String, Value)> = vec![
        ("class".into(), json!(inst.class())),
        ("k".into(), json!(inst.k())),
        ("partition".into(), json!(if valid { "valid" } else { "invalid" })),
    ];
    match &coloring {
        Ok(c) => {
            lines.push(("coloring".into(), json!("proper")));
            let colors: Vec<String> = inst
                .source
                .edges()
                .iter()
                .enumerate()
                .map(|(e, &(u, v))| format!("{u}-{v}:{}", c.color(e) + 1))
                .collect();
            lines.push(("colors".into(), json!(colors.join(" "))));
        }
        Err(e) => lines.push(("coloring".into(), json!(format!("failed: {e}")))),
    }
    if inst.mode == Mode::Relaxed {
        lines.push((
            "note".into(),
            json!("relaxed gadget: a valid partition need not yield a coloring"),
        ));
    }
    match a.format {
        Format::Structured => {
            let map: serde_json::Map<String, Value> = lines.into_iter().collect();
            print_json(&Value::Object(map));
        }
        _ => {
            for (k, v) in lines {
                match v {
                    Value::String(s) => println!("{k}: {s}"),
                    other => println!("{k}: {other}"),
                }
            }
        }
    }
    Ok(if valid && coloring.is_ok() { YES } else { NO })
}

fn campaign(a: CampaignArgs) -> Outcome {
    no_dot(a.format, "campaign")?;
    let report: CampaignReport = match a.name.as_str() {
        "observation" => {
            let mut cfg = ObservationConfig::new(a.z, class(&a.class)?);
            cfg.c = a.c;
            cfg.budget = a.budget.budget();
            cfg.threads = a.budget.threads.max(1);
            campaign_observation(&cfg)?
        }
        "conditions" => campaign_conditions(a.seed, a.samples),
        "forward" => campaign_reduction_forward(&ForwardConfig {
            k: a.k,
            limit: a.limit,
            ..ForwardConfig::default()
        }),
        "claims" => campaign_claims_micro(),
        other => return Err(Failure::usage(format!("unknown campaign {other:?}"))),
    };
    let text = match a.format {
        Format::Structured => {
            let mut v = serde_json::to_value(&report).expect("report");
            if a.time {
                v["elapsed_ms"] = json!(report.elapsed.as_millis() as u64);
            }
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        _ => report.render_text(a.time),
    };
    print!("{text}");

    let failures: Vec<_> = report.failures().collect();
    if a.out.is_some() || !failures.is_empty() {
        let dir = a.out.clone().unwrap_or_else(|| PathBuf::from("counterexamples"));
        fs::create_dir_all(&dir).map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
        if a.out.is_some() {
            let ext = if a.format == Format::Structured { "json" } else { "txt" };
            write_file(&dir.join(format!("report.{ext}")), &text)?;
        }
        for (i, c) in failures.iter().enumerate() {
            if let CheckStatus::Fail { counterexample, detail } = &c.status {
                let path = dir.join(format!("counterexample-{i:03}.g"));
                let body = format!("# {}: {detail}\n{counterexample}", c.name);
                write_file(&path, &body)?;
                eprintln!("counterexample for {} written to {}", c.name, path.display());
            }
        }
    }
    Ok(if report.passed() { YES } else { NO })
}
