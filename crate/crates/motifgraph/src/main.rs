//! Command-line surface: one subcommand per experiment, emitting CSV or
//! JSON data tables. All output is deterministic for fixed inputs and seed.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use motifgraph::bounds::{self, ConstraintSet};
use motifgraph::error::Error;
use motifgraph::graph::{descriptor_report, Graph};
use motifgraph::measures::{measure_suite, Measure, DEFAULT_SUBGRAPH_BUDGET};
use motifgraph::motifs::{scan, ScanConfig};
use motifgraph::refine::{
    enumerate_splits, filter_candidates, group_candidates, RefineConstraints, ScenarioGroup,
    DELTA_TOLERANCE,
};
use motifgraph::{io, Partition};

#[derive(Parser)]
#[command(
    name = "motifgraph",
    version,
    about = "Graph complexity, motif information content, and extremal representation search",
    after_help = "Exit codes: 0 success, 2 input error, 3 infeasible constraints, 4 budget exceeded."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Basic topological descriptors of one or more graphs
    #[command(after_help = "CSV columns: graph,n,m,A,avg_degree,conn,conn_prime,C,\
ec0..ec<k>,D,avg_di,avg_d,l; with --normalize, ec<k>_n columns (value / minimum over \
the input set) are appended.")]
    Descriptors(DescriptorsArgs),
    /// Complexity measures of one or more graphs
    #[command(after_help = "CSV columns: graph,n,m, then one column per selected \
measure (default: ivd,eg,ea,en,sc2,sc2n,k,oc,ad,b); with --normalize, <measure>_n \
columns (value / minimum over the input set) follow; with --spectra, k_spectrum and \
oc_spectrum columns (semicolon-joined, indexed by edge count) are appended last.")]
    Complexity(ComplexityArgs),
    /// Normalized information content across motif counts
    #[command(after_help = "CSV columns: n_m,i_ve,normalized,partition,role. One \
\"point\" row per evaluated partition (restricted-growth string), then one \"min\" \
and one \"max\" row per motif count. Deterministic for a fixed seed.")]
    Scan(ScanArgs),
    /// Mathematical and constrained extremes of a measure
    #[command(after_help = "CSV columns: measure,n,math_min,math_max,constrained_min,\
constrained_max,math_min_witness,math_max_witness,constrained_min_witness,\
constrained_max_witness. Witnesses are space-joined i-j edge lists. Exhaustive scan, \
order capped at 7.")]
    Bounds(BoundsArgs),
    /// Single-motif refinements and their information increments
    #[command(after_help = "CSV columns: group,delta_i,split_block,refined,\
group_distinct,group_iso_classes. Candidates are grouped by increment within --tol; \
--delta keeps only increments within --tol of the target; --constraints filters \
candidates by the refined quotient before grouping.")]
    Refine(RefineArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Edgelist,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct InputArgs {
    /// Graph file(s); repeat the flag for a set of graphs
    #[arg(long, required = true)]
    input: Vec<PathBuf>,
    /// Graph file format
    #[arg(long, value_enum, default_value = "edgelist")]
    format: GraphFormat,
}

#[derive(Args)]
struct OutputArgs {
    /// Write here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    output_format: OutputFormat,
}

#[derive(Args)]
struct DescriptorsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Highest extended-connectivity order to report
    #[arg(long, default_value_t = 2)]
    k_max: usize,
    /// Append extended connectivities divided by their minimum over the set
    #[arg(long)]
    normalize: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ComplexityArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Measure(s) to emit; repeat the flag (default: all)
    #[arg(long = "measure")]
    measures: Vec<Measure>,
    /// Append measure values divided by their minimum over the set
    #[arg(long)]
    normalize: bool,
    /// Include the subgraph and overall-connectivity spectra
    #[arg(long)]
    spectra: bool,
    /// Cap on enumerated subgraphs (overrides MOTIFGRAPH_BUDGET)
    #[arg(long)]
    budget: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Partitions sampled per motif count
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Enumerate every partition instead of sampling (n <= 12)
    #[arg(long)]
    exhaustive: bool,
    /// Smallest motif count to scan
    #[arg(long)]
    nm_min: Option<usize>,
    /// Largest motif count to scan
    #[arg(long)]
    nm_max: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct BoundsTarget {
    /// Constraint file: {"n": int, "required": [[i,j]...], "forbidden": [[i,j]...]}
    #[arg(long)]
    constraints: Option<PathBuf>,
    /// Order for an unconstrained scan
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    target: BoundsTarget,
    #[arg(long)]
    measure: Measure,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct RefineArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Partition file: {"blocks": [[...], ...]}
    #[arg(long)]
    partition: PathBuf,
    /// Split only this block (default: every block of size >= 2)
    #[arg(long)]
    block: Option<usize>,
    /// Keep only increments within --tol of this value (bits)
    #[arg(long)]
    delta: Option<f64>,
    /// Absolute tolerance for increment matching and grouping (bits)
    #[arg(long, default_value_t = DELTA_TOLERANCE)]
    tol: f64,
    /// Constraint file:
    /// {"adjacent": [[a,b]...], "nonadjacent": [[a,b]...], "block_min": n, "block_max": n}
    #[arg(long)]
    constraints: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

enum CliError {
    /// Bad file, parse failure, or invalid input values: exit 2.
    Input(String),
    /// Library failure from computation: exit code by variant.
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => f.write_str(msg),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Input(_) => 2,
        CliError::Lib(Error::Infeasible) => 3,
        CliError::Lib(Error::BudgetExceeded(_)) => 4,
        CliError::Lib(_) => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Descriptors(args) => cmd_descriptors(args),
        Cmd::Complexity(args) => cmd_complexity(args),
        Cmd::Scan(args) => cmd_scan(args),
        Cmd::Bounds(args) => cmd_bounds(args),
        Cmd::Refine(args) => cmd_refine(args),
    }
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_graphs(input: &InputArgs) -> Result<Vec<(String, Graph)>, CliError> {
    input
        .input
        .iter()
        .map(|path| {
            let text = read_file(path)?;
            let parsed = match input.format {
                GraphFormat::Edgelist => io::parse_edgelist(&text),
                GraphFormat::Json => io::parse_graph_json(&text),
            };
            let g =
                parsed.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Ok((path.display().to_string(), g))
        })
        .collect()
}

fn emit(output: &OutputArgs, content: String) -> Result<(), CliError> {
    match &output.output {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn budget_from(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("MOTIFGRAPH_BUDGET") {
        Ok(raw) => raw
            .parse()
            .map_err(|_| CliError::Input(format!("invalid MOTIFGRAPH_BUDGET \"{raw}\""))),
        Err(_) => Ok(DEFAULT_SUBGRAPH_BUDGET),
    }
}

/// Format with 12 significant digits, C "%.12g" style.
fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-5..12).contains(&mag) {
        let decimals = (11 - mag).max(0) as usize;
        trim_decimals(format!("{x:.decimals$}"))
    } else {
        let formatted = format!("{x:.11e}");
        let (mantissa, exp) = formatted.split_once('e').expect("scientific format");
        format!("{}e{exp}", trim_decimals(mantissa.to_string()))
    }
}

fn trim_decimals(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

fn json_line(value: serde_json::Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable value"))
}

fn cmd_descriptors(args: DescriptorsArgs) -> Result<(), CliError> {
    let graphs = load_graphs(&args.input)?;
    let reports = graphs
        .iter()
        .map(|(path, g)| {
            descriptor_report(g, args.k_max)
                .map(|r| (path.clone(), g, r))
                .map_err(CliError::from)
        })
        .collect::<Result<Vec<_>, _>>()?;

    // per-order minimum of the extended connectivities across the set
    let ec_min: Vec<u128> = (0..=args.k_max)
        .map(|k| reports.iter().map(|(_, _, r)| r.extended_connectivity[k]).min().unwrap_or(1))
        .collect();

    match args.output.output_format {
        OutputFormat::Csv => {
            let mut header = "graph,n,m,A,avg_degree,conn,conn_prime,C".to_string();
            for k in 0..=args.k_max {
                header.push_str(&format!(",ec{k}"));
            }
            header.push_str(",D,avg_di,avg_d,l");
            if args.normalize {
                for k in 0..=args.k_max {
                    header.push_str(&format!(",ec{k}_n"));
                }
            }
            let mut out = header + "\n";
            for (path, g, r) in &reports {
                let mut row = format!(
                    "{path},{},{},{},{},{},{},{}",
                    g.n(),
                    g.m(),
                    r.total_adjacency,
                    sig12(r.avg_degree),
                    sig12(r.conn),
                    sig12(r.conn_prime),
                    sig12(r.clustering),
                );
                for v in &r.extended_connectivity {
                    row.push_str(&format!(",{v}"));
                }
                row.push_str(&format!(
                    ",{},{},{},{}",
                    r.graph_distance,
                    sig12(r.avg_vertex_distance),
                    sig12(r.avg_graph_distance),
                    sig12(r.mean_geodesic),
                ));
                if args.normalize {
                    for (v, min) in r.extended_connectivity.iter().zip(&ec_min) {
                        row.push_str(&format!(",{}", sig12(*v as f64 / *min as f64)));
                    }
                }
                out.push_str(&row);
                out.push('\n');
            }
            emit(&args.output, out)
        }
        OutputFormat::Json => {
            let entries: Vec<serde_json::Value> = reports
                .iter()
                .map(|(path, _, r)| {
                    let mut entry = serde_json::json!({ "graph": path, "report": r });
                    if args.normalize {
                        let norm: Vec<f64> = r
                            .extended_connectivity
                            .iter()
                            .zip(&ec_min)
                            .map(|(v, min)| *v as f64 / *min as f64)
                            .collect();
                        entry["ec_normalized"] = serde_json::json!(norm);
                    }
                    entry
                })
                .collect();
            emit(&args.output, json_line(serde_json::json!({ "graphs": entries })))
        }
    }
}

fn cmd_complexity(args: ComplexityArgs) -> Result<(), CliError> {
    let graphs = load_graphs(&args.input)?;
    let budget = budget_from(args.budget)?;
    let measures: Vec<Measure> =
        if args.measures.is_empty() { Measure::ALL.to_vec() } else { args.measures.clone() };
    let graph_list: Vec<Graph> = graphs.iter().map(|(_, g)| g.clone()).collect();
    let suite = measure_suite(&graph_list, &measures, budget)?;

    match args.output.output_format {
        OutputFormat::Csv => {
            let mut header = "graph,n,m".to_string();
            for m in &measures {
                header.push_str(&format!(",{}", m.key()));
            }
            if args.normalize {
                for m in &measures {
                    header.push_str(&format!(",{}_n", m.key()));
                }
            }
            if args.spectra {
                header.push_str(",k_spectrum,oc_spectrum");
            }
            let mut out = header + "\n";
            for (i, (path, _)) in graphs.iter().enumerate() {
                let r = &suite.reports[i];
                let mut row = format!("{path},{},{}", r.n, r.m);
                for m in &measures {
                    row.push_str(&format!(",{}", sig12(r.value(*m))));
                }
                if args.normalize {
                    for (_, values) in &suite.normalized {
                        row.push_str(&format!(",{}", sig12(values[i])));
                    }
                }
                if args.spectra {
                    let join =
                        |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(";");
                    row.push_str(&format!(
                        ",{},{}",
                        join(&r.subgraph_spectrum),
                        join(&r.oc_spectrum)
                    ));
                }
                out.push_str(&row);
                out.push('\n');
            }
            emit(&args.output, out)
        }
        OutputFormat::Json => {
            let entries: Vec<serde_json::Value> = graphs
                .iter()
                .enumerate()
                .map(|(i, (path, _))| {
                    let mut report =
                        serde_json::to_value(&suite.reports[i]).expect("serializable report");
                    if !args.spectra {
                        if let Some(o) = report.as_object_mut() {
                            o.remove("subgraph_spectrum");
                            o.remove("oc_spectrum");
                        }
                    }
                    let mut entry = serde_json::json!({ "graph": path, "report": report });
                    if args.normalize {
                        let normalized: serde_json::Map<String, serde_json::Value> = suite
                            .normalized
                            .iter()
                            .map(|(m, values)| (m.key().to_string(), values[i].into()))
                            .collect();
                        entry["normalized"] = normalized.into();
                    }
                    entry
                })
                .collect();
            emit(&args.output, json_line(serde_json::json!({ "graphs": entries })))
        }
    }
}

fn cmd_scan(args: ScanArgs) -> Result<(), CliError> {
    let graphs = load_graphs(&args.input)?;
    if graphs.len() != 1 {
        return Err(CliError::Input("scan takes exactly one --input graph".into()));
    }
    let cfg = ScanConfig {
        samples_per_nm: args.samples,
        seed: args.seed,
        exhaustive: args.exhaustive,
        nm_min: args.nm_min,
        nm_max: args.nm_max,
        ..Default::default()
    };
    let result = scan(&graphs[0].1, &cfg)?;

    match args.output.output_format {
        OutputFormat::Csv => {
            let mut out = "n_m,i_ve,normalized,partition,role\n".to_string();
            for p in &result.points {
                out.push_str(&format!(
                    "{},{},{},{},point\n",
                    p.n_blocks,
                    sig12(p.i_ve),
                    sig12(p.normalized),
                    p.partition.rgs_string()
                ));
            }
            for e in &result.extremes {
                for (point, role) in [(&e.min, "min"), (&e.max, "max")] {
                    out.push_str(&format!(
                        "{},{},{},{},{role}\n",
                        point.n_blocks,
                        sig12(point.i_ve),
                        sig12(point.normalized),
                        point.partition.rgs_string()
                    ));
                }
            }
            emit(&args.output, out)
        }
        OutputFormat::Json => {
            emit(&args.output, json_line(serde_json::to_value(&result).expect("serializable")))
        }
    }
}

fn cmd_bounds(args: BoundsArgs) -> Result<(), CliError> {
    let constraints = match (&args.target.constraints, args.target.n) {
        (Some(path), _) => {
            let text = read_file(path)?;
            let mut c: ConstraintSet = serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            c.validate().map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            c
        }
        (None, Some(n)) => ConstraintSet::unconstrained(n)?,
        (None, None) => unreachable!("clap enforces the group"),
    };
    let result = bounds::constrained_extremes(&constraints, args.measure)?;
    assert!(result.sandwich_holds(), "extremes violate the mathematical limits");

    match args.output.output_format {
        OutputFormat::Csv => {
            let edges = |witness: &[(usize, usize)]| {
                witness.iter().map(|(i, j)| format!("{i}-{j}")).collect::<Vec<_>>().join(" ")
            };
            let mut out = "measure,n,math_min,math_max,constrained_min,constrained_max,\
math_min_witness,math_max_witness,constrained_min_witness,constrained_max_witness\n"
                .to_string();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                result.measure.key(),
                result.n,
                sig12(result.math_min),
                sig12(result.math_max),
                sig12(result.constrained_min),
                sig12(result.constrained_max),
                edges(&result.math_min_witness),
                edges(&result.math_max_witness),
                edges(&result.constrained_min_witness),
                edges(&result.constrained_max_witness),
            ));
            emit(&args.output, out)
        }
        OutputFormat::Json => {
            emit(&args.output, json_line(serde_json::to_value(&result).expect("serializable")))
        }
    }
}

fn cmd_refine(args: RefineArgs) -> Result<(), CliError> {
    let graphs = load_graphs(&args.input)?;
    if graphs.len() != 1 {
        return Err(CliError::Input("refine takes exactly one --input graph".into()));
    }
    let g = &graphs[0].1;
    let partition_text = read_file(&args.partition)?;
    let partition: Partition = io::parse_partition_json(&partition_text)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.partition.display())))?;

    let mut candidates = enumerate_splits(g, &partition, args.block)?;
    if let Some(delta) = args.delta {
        candidates.retain(|c| (c.delta_i - delta).abs() <= args.tol);
    }
    if let Some(path) = &args.constraints {
        let text = read_file(path)?;
        let spec: RefineConstraints = serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        candidates = filter_candidates(&candidates, &spec)?;
    }
    let groups: Vec<ScenarioGroup> = group_candidates(candidates, args.tol);

    match args.output.output_format {
        OutputFormat::Csv => {
            let mut out =
                "group,delta_i,split_block,refined,group_distinct,group_iso_classes\n".to_string();
            for (gi, group) in groups.iter().enumerate() {
                for cand in &group.candidates {
                    out.push_str(&format!(
                        "{gi},{},{},{},{},{}\n",
                        sig12(cand.delta_i),
                        cand.split_block,
                        cand.refined.rgs_string(),
                        group.distinct,
                        group.quotient_iso_classes,
                    ));
                }
            }
            emit(&args.output, out)
        }
        OutputFormat::Json => {
            emit(&args.output, json_line(serde_json::json!({ "groups": groups })))
        }
    }
}
