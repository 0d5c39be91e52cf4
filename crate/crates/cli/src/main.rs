mod args;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pmeasure::experiments::{
    baseline_internal_edges_sweep, baseline_size_sweep, evaluate, ingested_curve, lemma1_check,
    parse_measure_list, resolution_experiment, smooth_curves, structure_sweep, theorem1_check,
    InequalityCheck, IngestedInstance, PerturbationConfig, RandomPartitionKind, ResolutionConfig,
    StructureSweep,
};
use pmeasure::graph::{class_representative, induced_partition};
use pmeasure::io::{
    emit_curve_csv, emit_curve_svg, format_real, parse_edge_list, parse_partition, write_edge_list,
    write_partition, ReadOptions, SvgOptions,
};
use pmeasure::random::{
    connected_erdos_renyi_graph, erdos_renyi_graph, planted_partition_graph, random_coarsening,
    random_partition_process1, random_partition_process2, random_refinement, random_tree,
};
use pmeasure::{
    CurvePoint, EdgeClassification, Error, Executor, Graph, MeasureSelector, Partition,
    PlantedSpec, Seed,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "pmeasure",
    version,
    about = "Graph-aware and graph-agnostic partition similarity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare two partitions of a graph.
    Compare(CompareArgs),
    /// Class representative and induced partition of an edge classification.
    Represent(RepresentArgs),
    /// Generate graphs or random connected partitions.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Similarity between a fixed truth and random partitions of a graph.
    Baseline(BaselineArgs),
    /// Planted graphs swept over the inter-part density.
    StructureSweep(StructureArgs),
    /// Monte Carlo check of the coarsening/refinement inequalities.
    LemmaCheck(PerturbationArgs),
    /// Deterministic and Monte Carlo check of the coarsening/refinement ordering.
    TheoremCheck(PerturbationArgs),
    /// Finer vs coarser candidates ranked by agnostic and aware ARI.
    Resolution(ResolutionArgs),
    /// Similarity curves over ingested graph/truth/candidate files.
    Curve(CurveArgs),
}

#[derive(Args)]
struct Ingest {
    /// Vertex ids in input files start at 1.
    #[arg(long)]
    one_based: bool,
}

impl Ingest {
    fn options(&self) -> ReadOptions {
        ReadOptions {
            one_based: self.one_based,
        }
    }
}

#[derive(Args)]
struct Output {
    /// CSV destination (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also render the curves as SVG.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Moving-average window (odd) applied to each curve before output.
    #[arg(long)]
    smooth: Option<usize>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    part_a: PathBuf,
    #[arg(long)]
    part_b: PathBuf,
    /// Comma-separated measure ids (default: all).
    #[arg(long)]
    measures: Option<String>,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    ingest: Ingest,
}

#[derive(Args)]
struct RepresentArgs {
    #[arg(long)]
    graph: PathBuf,
    /// One 0/1 character per edge, in edge-list order.
    #[arg(long)]
    bits: String,
    #[command(flatten)]
    ingest: Ingest,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random graphs.
    Graph {
        #[command(subcommand)]
        model: GraphModel,
    },
    /// Random connected partitions of an existing graph.
    Partition {
        #[command(subcommand)]
        process: PartitionProcess,
    },
}

#[derive(Subcommand)]
enum GraphModel {
    /// Planted partition with exact intra/inter edge counts.
    Planted {
        /// Part sizes, e.g. `8x25` or `10,20,30`.
        #[arg(long)]
        sizes: String,
        #[arg(long, conflicts_with = "k1")]
        p: Option<f64>,
        #[arg(long, conflicts_with = "k2")]
        q: Option<f64>,
        /// Intra-part edge count.
        #[arg(long, requires = "k2")]
        k1: Option<u64>,
        /// Inter-part edge count.
        #[arg(long, requires = "k1")]
        k2: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the planted partition.
        #[arg(long)]
        truth_out: Option<PathBuf>,
    },
    /// Uniform graph with exactly `m` edges.
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
        /// Redraw until connected.
        #[arg(long)]
        connected: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Uniform labeled tree.
    Tree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PartitionGenArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Parts (process1) or class-one edges (process2).
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    ingest: Ingest,
}

#[derive(Subcommand)]
enum PartitionProcess {
    /// Random DFS spanning tree cut into `k` subtrees.
    Process1(PartitionGenArgs),
    /// Components of `k` random edges.
    Process2(PartitionGenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Process {
    Process1,
    Process2,
}

#[derive(Args)]
struct BaselineArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    truth: PathBuf,
    #[arg(long, value_enum, default_value = "process1")]
    process: Process,
    /// Parts (process1) or class-one edges (process2), e.g. `2..40:2`.
    #[arg(long)]
    ks: String,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "ri_g,ari_g,pc_mn_g,apc_mn_g,ri,ari")]
    measures: String,
    #[command(flatten)]
    output: Output,
    #[command(flatten)]
    ingest: Ingest,
}

#[derive(Clone, Copy, ValueEnum)]
enum Generator {
    Process1,
    Process2,
    /// Process 2 with as many edges as the truth keeps internal.
    Process2Truth,
}

#[derive(Args)]
struct StructureArgs {
    #[arg(long, default_value = "8x25")]
    sizes: String,
    #[arg(long, default_value_t = 0.9)]
    p: f64,
    #[arg(long, default_value = "0.01..0.1:0.01")]
    qs: String,
    #[arg(long, value_enum, default_value = "process2-truth")]
    generator: Generator,
    /// Parameter of process1/process2.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "ari_g,apc_mn_g,ari")]
    measures: String,
    #[command(flatten)]
    output: Output,
}

/// Defaults differ per command: lemma-check uses p = 0.8, q = 0.1 and a
/// 3-part coarsening; theorem-check uses p = 0.9, q = 0.02, 2 parts.
#[derive(Args)]
struct PerturbationArgs {
    #[arg(long, default_value = "6x10")]
    sizes: String,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    /// Part count of the random coarsening.
    #[arg(long)]
    coarsen_to: Option<usize>,
    /// Part count of the random refinement.
    #[arg(long, default_value_t = 12)]
    refine_to: usize,
    #[arg(long, default_value_t = 2000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ResolutionArgs {
    #[arg(long, default_value = "8x25")]
    sizes: String,
    #[arg(long, default_value_t = 0.9)]
    p: f64,
    #[arg(long, default_value = "0.01..0.1:0.01")]
    qs: String,
    #[arg(long, default_value_t = 16)]
    finer: usize,
    #[arg(long, default_value_t = 4)]
    coarser: usize,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "ari,ami,ari_g")]
    measures: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long)]
    graphs: PathBuf,
    #[arg(long)]
    truths: PathBuf,
    #[arg(long)]
    candidates: PathBuf,
    /// One x value per file triple, in file-name order.
    #[arg(long)]
    x_values: String,
    #[arg(long, default_value = "ari,ami,ri_g,ari_g")]
    measures: String,
    #[command(flatten)]
    output: Output,
    #[command(flatten)]
    ingest: Ingest,
}

/// Failure classes, mapped one-to-one onto exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
    Degenerate(String),
    CheckFailed(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Degenerate(_) => 3,
            Failure::CheckFailed(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m)
            | Failure::Input(m)
            | Failure::Degenerate(m)
            | Failure::CheckFailed(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::Degenerate(_) => Failure::Degenerate(message),
            Error::Parse { .. }
            | Error::VertexOutOfRange { .. }
            | Error::SelfLoop(_)
            | Error::DuplicateEdge(..)
            | Error::LengthMismatch { .. } => Failure::Input(message),
            Error::InvalidParameter(_) | Error::Precondition(_) | Error::Disconnected => {
                Failure::Usage(message)
            }
        }
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn usage(e: String) -> Failure {
    Failure::Usage(e)
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |e| match Failure::from(e) {
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
        other => other,
    }
}

fn read_graph(path: &Path, ingest: &Ingest) -> CliResult<Graph> {
    parse_edge_list(&read_text(path)?, ingest.options()).map_err(in_file(path))
}

fn read_partition(path: &Path, g: &Graph, ingest: &Ingest) -> CliResult<Partition> {
    parse_partition(&read_text(path)?, g.vertex_count(), ingest.options()).map_err(in_file(path))
}

fn write_output(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Input(format!("stdout: {e}"))),
    }
}

fn measures(list: &str) -> CliResult<Vec<MeasureSelector>> {
    let parsed = parse_measure_list(list)?;
    if parsed.is_empty() {
        return Err(usage("no measures requested".into()));
    }
    Ok(parsed)
}

fn truth_from_sizes(sizes: &str) -> CliResult<Partition> {
    Ok(Partition::from_sizes(
        &args::parse_sizes(sizes).map_err(usage)?,
    ))
}

fn emit(points: Vec<CurvePoint>, output: &Output, title: &str, x_label: &str) -> CliResult {
    let points = match output.smooth {
        Some(w) => smooth_curves(&points, w)?,
        None => points,
    };
    write_output(output.out.as_deref(), &emit_curve_csv(&points)?)?;
    if let Some(svg) = &output.svg {
        let opts = SvgOptions {
            title: title.into(),
            x_label: x_label.into(),
            ..SvgOptions::default()
        };
        write_output(Some(svg), &emit_curve_svg(&points, &opts)?)?;
    }
    Ok(())
}

fn compare(a: CompareArgs) -> CliResult {
    let g = read_graph(&a.graph, &a.ingest)?;
    let pa = read_partition(&a.part_a, &g, &a.ingest)?;
    let pb = read_partition(&a.part_b, &g, &a.ingest)?;
    let selected = match &a.measures {
        Some(list) => measures(list)?,
        None => MeasureSelector::all(),
    };
    let values = evaluate(&selected, &g, &pa, &pb)?;
    let out = if a.json {
        let rows: Vec<_> = selected
            .iter()
            .zip(&values)
            .map(|(m, v)| json!({ "measure": m.id(), "value": v }))
            .collect();
        serde_json::to_string_pretty(&rows).expect("serializable") + "\n"
    } else {
        selected
            .iter()
            .zip(&values)
            .map(|(m, v)| {
                let shown = v.map_or_else(|| "degenerate".to_string(), format_real);
                format!("{}\t{shown}\n", m.id())
            })
            .collect()
    };
    write_output(None, &out)?;
    let degenerate: Vec<String> = selected
        .iter()
        .zip(&values)
        .filter(|(_, v)| v.is_none())
        .map(|(m, _)| m.id())
        .collect();
    if degenerate.is_empty() {
        Ok(())
    } else {
        Err(Failure::Degenerate(format!(
            "degenerate measures: {}",
            degenerate.join(", ")
        )))
    }
}

fn represent(a: RepresentArgs) -> CliResult {
    let g = read_graph(&a.graph, &a.ingest)?;
    let b = EdgeClassification::parse_bits(&a.bits)?;
    let rep = class_representative(&g, &b)?;
    let p = induced_partition(&g, &b)?;
    write_output(None, &format!("representative\t{rep}\npartition\t{p}\n"))
}

fn generate(what: GenCommand) -> CliResult {
    match what {
        GenCommand::Graph { model } => match model {
            GraphModel::Planted {
                sizes,
                p,
                q,
                k1,
                k2,
                seed,
                out,
                truth_out,
            } => {
                let truth = truth_from_sizes(&sizes)?;
                let spec = match (k1, k2, p, q) {
                    (Some(k1), Some(k2), None, None) => PlantedSpec::new(truth.clone(), k1, k2)?,
                    (None, None, Some(p), Some(q)) => {
                        PlantedSpec::from_densities(truth.clone(), p, q)?
                    }
                    _ => {
                        return Err(usage(
                            "planted needs either --p and --q or --k1 and --k2".into(),
                        ))
                    }
                };
                let g = planted_partition_graph(&spec, Seed::new(seed));
                write_output(out.as_deref(), &write_edge_list(&g))?;
                if let Some(t) = truth_out {
                    write_output(Some(&t), &write_partition(&truth))?;
                }
                Ok(())
            }
            GraphModel::Er {
                n,
                m,
                connected,
                seed,
                out,
            } => {
                let g = if connected {
                    connected_erdos_renyi_graph(n, m, Seed::new(seed), 10_000)?
                } else {
                    erdos_renyi_graph(n, m, Seed::new(seed))?
                };
                write_output(out.as_deref(), &write_edge_list(&g))
            }
            GraphModel::Tree { n, seed, out } => write_output(
                out.as_deref(),
                &write_edge_list(&random_tree(n, Seed::new(seed))),
            ),
        },
        GenCommand::Partition { process } => {
            let (a, generator): (_, PartitionGenerator) = match process {
                PartitionProcess::Process1(a) => (a, random_partition_process1),
                PartitionProcess::Process2(a) => (a, random_partition_process2),
            };
            let g = read_graph(&a.graph, &a.ingest)?;
            let p = generator(&g, a.k, Seed::new(a.seed))?;
            write_output(a.out.as_deref(), &write_partition(&p))
        }
    }
}

type PartitionGenerator = fn(&Graph, usize, Seed) -> pmeasure::Result<Partition>;

fn baseline(a: BaselineArgs) -> CliResult {
    let exec = Executor::from_env()?;
    let g = read_graph(&a.graph, &a.ingest)?;
    let truth = read_partition(&a.truth, &g, &a.ingest)?;
    let ks = args::parse_usize_list(&a.ks).map_err(usage)?;
    let ms = measures(&a.measures)?;
    let seed = Seed::new(a.seed);
    let (points, x_label) = match a.process {
        Process::Process1 => (
            baseline_size_sweep(&exec, &g, &truth, &ks, a.trials, &ms, seed)?,
            "parts",
        ),
        Process::Process2 => (
            baseline_internal_edges_sweep(&exec, &g, &truth, &ks, a.trials, &ms, seed)?,
            "internal edges",
        ),
    };
    emit(points, &a.output, "random partition baseline", x_label)
}

fn structure(a: StructureArgs) -> CliResult {
    let exec = Executor::from_env()?;
    let generator = match (a.generator, a.k) {
        (Generator::Process1, Some(parts)) => RandomPartitionKind::Process1 { parts },
        (Generator::Process2, Some(class_one_edges)) => {
            RandomPartitionKind::Process2 { class_one_edges }
        }
        (Generator::Process2Truth, None) => RandomPartitionKind::Process2MatchingTruth,
        (Generator::Process2Truth, Some(_)) => {
            return Err(usage("--k is not used by process2-truth".into()))
        }
        (_, None) => return Err(usage("--k is required for process1/process2".into())),
    };
    let cfg = StructureSweep {
        truth: truth_from_sizes(&a.sizes)?,
        p: a.p,
        qs: args::parse_f64_list(&a.qs).map_err(usage)?,
        generator,
        trials: a.trials,
        measures: measures(&a.measures)?,
    };
    let points = structure_sweep(&exec, &cfg, Seed::new(a.seed))?;
    emit(points, &a.output, "planted structure sweep", "q / p")
}

fn perturbation(
    a: &PerturbationArgs,
    (p, q, coarsen_to): (f64, f64, usize),
) -> CliResult<(PerturbationConfig, Seed)> {
    let truth = truth_from_sizes(&a.sizes)?;
    let seed = Seed::new(a.seed);
    let cfg = PerturbationConfig {
        coarsening: random_coarsening(&truth, a.coarsen_to.unwrap_or(coarsen_to), seed.stream(0))?,
        refinement: random_refinement(&truth, a.refine_to, seed.stream(1))?,
        truth,
        p: a.p.unwrap_or(p),
        q: a.q.unwrap_or(q),
        trials: a.trials,
    };
    Ok((cfg, seed.stream(2)))
}

fn describe(label: &str, c: &InequalityCheck, relation: &str) -> String {
    format!(
        "{label}: mean PC_mn(G) = {} (se {}), {relation} PC_mn = {} over {} trials ({} degenerate): {}\n",
        format_real(c.mean),
        format_real(c.se),
        format_real(c.agnostic),
        c.trials,
        c.degenerate,
        if c.passed { "pass" } else { "FAIL" }
    )
}

fn lemma(a: PerturbationArgs) -> CliResult {
    let exec = Executor::from_env()?;
    let (cfg, seed) = perturbation(&a, (0.8, 0.1, 3))?;
    let report = lemma1_check(&exec, &cfg, seed)?;
    let mut summary = String::new();
    match &report.coarsening {
        Some(c) => summary += &describe("coarsening", c, ">="),
        None => summary += "coarsening: not claimed for p < q, skipped\n",
    }
    summary += &describe("refinement", &report.refinement, "<=");
    eprint!("{summary}");
    emit(
        report.curve_points(cfg.q),
        &a.output,
        "coarsening / refinement",
        "q",
    )?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::CheckFailed("inequality check failed".into()))
    }
}

fn theorem(a: PerturbationArgs) -> CliResult {
    let exec = Executor::from_env()?;
    let (cfg, seed) = perturbation(&a, (0.9, 0.02, 2))?;
    let report = theorem1_check(&exec, &cfg, seed)?;
    let (i, ii) = (&report.part_i, &report.part_ii);
    eprint!(
        "agnostic: PC_mn(A,B1) = {} < PC_mn(A,B2) = {}: {}\n\
         aware: mean PC_mn(A,B1;G) - PC_mn(A,B2;G) = {} (se {}) over {} trials ({} degenerate): {}\n",
        format_real(i.agnostic_coarsening),
        format_real(i.agnostic_refinement),
        if i.holds { "pass" } else { "FAIL" },
        format_real(ii.mean_difference),
        format_real(ii.se_difference),
        ii.trials,
        ii.degenerate,
        if ii.passed { "pass" } else { "FAIL" }
    );
    emit(
        report.curve_points(cfg.q),
        &a.output,
        "ordering reversal",
        "q",
    )?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::CheckFailed("ordering check failed".into()))
    }
}

fn resolution(a: ResolutionArgs) -> CliResult {
    let exec = Executor::from_env()?;
    let cfg = ResolutionConfig {
        truth: truth_from_sizes(&a.sizes)?,
        p: a.p,
        qs: args::parse_f64_list(&a.qs).map_err(usage)?,
        finer_k: a.finer,
        coarser_k: a.coarser,
        trials: a.trials,
        measures: measures(&a.measures)?,
    };
    let report = resolution_experiment(&exec, &cfg, Seed::new(a.seed))?;
    for v in &report.verdicts {
        eprintln!(
            "q = {}: ARI finer-coarser = {} (se {}), ARI_G coarser-finer = {} (se {}){}",
            format_real(v.q),
            format_real(v.agnostic_margin),
            format_real(v.agnostic_se),
            format_real(v.aware_margin),
            format_real(v.aware_se),
            if v.contradiction() {
                ", contradicting"
            } else {
                ""
            }
        );
    }
    emit(report.points, &a.output, "finer vs coarser", "q")
}

fn sorted_files(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let entries =
        fs::read_dir(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry
            .map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?
            .path();
        if path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn curve(a: CurveArgs) -> CliResult {
    let (graphs, truths, candidates) = (
        sorted_files(&a.graphs)?,
        sorted_files(&a.truths)?,
        sorted_files(&a.candidates)?,
    );
    let xs = args::parse_f64_list(&a.x_values).map_err(usage)?;
    if graphs.len() != xs.len() || truths.len() != xs.len() || candidates.len() != xs.len() {
        return Err(usage(format!(
            "need one file per x value in each directory: {} x values, {} graphs, {} truths, {} candidates",
            xs.len(),
            graphs.len(),
            truths.len(),
            candidates.len()
        )));
    }
    let mut instances = Vec::with_capacity(xs.len());
    for (i, &x) in xs.iter().enumerate() {
        let graph = read_graph(&graphs[i], &a.ingest)?;
        let truth = read_partition(&truths[i], &graph, &a.ingest)?;
        let candidate = read_partition(&candidates[i], &graph, &a.ingest)?;
        instances.push(IngestedInstance {
            x,
            graph,
            truth,
            candidate,
        });
    }
    let points = ingested_curve(&instances, &measures(&a.measures)?)?;
    emit(points, &a.output, "ingested partitions", "x")
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Compare(a) => compare(a),
        Command::Represent(a) => represent(a),
        Command::Gen { what } => generate(what),
        Command::Baseline(a) => baseline(a),
        Command::StructureSweep(a) => structure(a),
        Command::LemmaCheck(a) => lemma(a),
        Command::TheoremCheck(a) => theorem(a),
        Command::Resolution(a) => resolution(a),
        Command::Curve(a) => curve(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
