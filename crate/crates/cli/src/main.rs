//! `balgraph`: balance checks, constructions, the cubic census and the
//! exhaustive verification runs, all with scriptable output.
//!
//! Exit status is 0 on success, 1 when a verification run finds a
//! counterexample (details on stdout as JSON, graph6 witnesses on stderr),
//! and 2 on usage or input errors.

use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use balgraph::balance::is_balanced;
use balgraph::cayley::{
    cayley_graph, lt_cycle, verify_circulant_lemmas, verify_main_theorem, AbelianGroup, ConnectionSet, LtSpec,
};
use balgraph::enumeration::{consequences_report, count_balanced_cubic, run_census, twins_report, CensusTask};
use balgraph::graph::{canonical_form, read_graph6, write_graph6, MAX_VERTICES};
use balgraph::planar::{batagelj_enumerate, verify_planar_theorem};
use balgraph::polytope::{verify_divisibility, verify_divisibility_theorem};
use balgraph::report::VerificationReport;
use balgraph::Graph;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

const MAX_VERTICES_ENV: &str = "BALGRAPH_MAX_VERTICES";

#[derive(Parser)]
#[command(
    name = "balgraph",
    version,
    about = "Balanced bipartite graphs: checks, constructions, census and verification"
)]
struct Cli {
    /// Worker threads for census and verification runs (default: one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide balancedness of graphs.
    #[command(subcommand)]
    Balance(BalanceCmd),
    /// Build graphs and print them as graph6.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Enumerate connected cubic bipartite graphs and count the balanced ones.
    Census(CensusArgs),
    /// Exhaustive verification runs.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Cubic bipartite planar graphs.
    #[command(subcommand)]
    Planar(PlanarCmd),
}

#[derive(Subcommand)]
enum BalanceCmd {
    /// Read graph6 lines (from FILE or stdin) and print one JSON verdict per line.
    Check { file: Option<PathBuf> },
}

#[derive(Args)]
struct OutputArgs {
    /// Print a JSON description instead of bare graph6.
    #[arg(long)]
    json: bool,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCmd {
    /// The lexicographic product of C_l (K_2 for l = 2) with t independent vertices.
    LtCycle {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// A Cayley graph on a finite abelian group.
    Cayley {
        /// Invariant factors, e.g. `2x4` or `12`.
        #[arg(long)]
        group: String,
        /// Connection set, e.g. `1,7` or `(0,1),(0,3),(1,0)`.
        #[arg(long)]
        set: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct CensusArgs {
    /// Number of vertices (even, 6 to 36).
    #[arg(long)]
    vertices: usize,
    /// Prune to balanced graphs during generation; the total is then not computed.
    #[arg(long)]
    balanced: bool,
    /// Split the search tree into this many shares...
    #[arg(long = "mod", requires = "res")]
    modulus: Option<usize>,
    /// ...and run only this one.
    #[arg(long, requires = "modulus")]
    res: Option<usize>,
    /// Write the balanced graphs as graph6 lines to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Cayley graphs on abelian groups: balanced exactly when an (l,t)-cycle.
    MainAbelian {
        #[arg(long, default_value_t = 16)]
        max_order: usize,
    },
    /// Structure of balanced bipartite circulants containing the generator 1.
    Circulant {
        #[arg(long, default_value_t = 32)]
        max_n: usize,
    },
    /// Exact covers of balanced regular graphs. Without FILE, runs the
    /// (l,t)-cycle grid and the balanced census.
    Divisibility {
        file: Option<PathBuf>,
        /// Largest census order included in the default suite.
        #[arg(long, default_value_t = 24)]
        census_max_d: usize,
    },
    /// Generated cubic bipartite planar graphs are all unbalanced, with local witnesses.
    Planar {
        #[arg(long, default_value_t = 20)]
        max_n: usize,
    },
    /// Twins, girth and vertex-transitivity of the balanced census graphs.
    Conjectures {
        #[arg(long, value_delimiter = ',', default_value = "6,12,18,24")]
        vertices: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum PlanarCmd {
    /// Every 3-connected cubic bipartite planar graph up to MAX_N vertices, grown from the cube.
    Batagelj {
        #[arg(long)]
        max_n: usize,
        /// Follow each graph6 line with its rotation system and a blank line.
        #[arg(long)]
        rotation: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure that ends the run with exit status 2.
#[derive(Debug)]
struct UsageError(String);

impl From<balgraph::Error> for UsageError {
    fn from(e: balgraph::Error) -> Self {
        UsageError(e.to_string())
    }
}

impl From<io::Error> for UsageError {
    fn from(e: io::Error) -> Self {
        UsageError(e.to_string())
    }
}

type CliResult = Result<ExitCode, UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.jobs {
        Some(0) => Err(UsageError("--jobs must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(cli.command)),
            Err(e) => Err(UsageError(e.to_string())),
        },
        None => run(cli.command),
    };
    match outcome {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Balance(BalanceCmd::Check { file }) => balance_check(file.as_deref()),
        Command::Gen(GenCmd::LtCycle { l, t, output }) => gen_lt_cycle(l, t, &output),
        Command::Gen(GenCmd::Cayley { group, set, output }) => gen_cayley(&group, &set, &output),
        Command::Census(args) => census(&args),
        Command::Verify(cmd) => verify(cmd),
        Command::Planar(PlanarCmd::Batagelj { max_n, rotation, out }) => {
            planar_batagelj(max_n, rotation, out.as_deref())
        }
    }
}

/// The vertex limit: 64, or lower when the environment asks for it.
fn vertex_cap() -> Result<usize, UsageError> {
    match std::env::var(MAX_VERTICES_ENV) {
        Err(_) => Ok(MAX_VERTICES),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(|cap| cap.min(MAX_VERTICES))
            .map_err(|_| UsageError(format!("{MAX_VERTICES_ENV} must be a number, got {v:?}"))),
    }
}

fn check_cap(n: usize, what: &str) -> Result<(), UsageError> {
    let cap = vertex_cap()?;
    if n > cap {
        Err(UsageError(format!("{what} = {n} exceeds the vertex limit {cap}")))
    } else {
        Ok(())
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, UsageError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            fs::File::create(p).map_err(|e| UsageError(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_input(file: Option<&Path>) -> Result<String, UsageError> {
    match file {
        Some(p) => fs::read_to_string(p).map_err(|e| UsageError(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

/// Non-empty graph6 lines with their 1-based line numbers.
fn read_graphs(text: &str) -> Result<Vec<(String, Graph)>, UsageError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let token = line.trim();
        if token.is_empty() {
            continue;
        }
        let g = read_graph6(token).map_err(|e| UsageError(format!("line {}: {e}", i + 1)))?;
        check_cap(g.n(), &format!("line {}: vertex count", i + 1))?;
        out.push((token.to_string(), g));
    }
    Ok(out)
}

fn balance_check(file: Option<&Path>) -> CliResult {
    let graphs = read_graphs(&read_input(file)?)?;
    let mut out = open_output(None)?;
    for (token, g) in graphs {
        let report = is_balanced(&g).map_err(|e| UsageError(format!("{token}: {e}")))?;
        let line = json!({
            "graph6": token,
            "vertices": g.n(),
            "canonical": canonical_form(&g)?.to_hex(),
            "balanced": report.balanced,
            "reason": report.reason,
        });
        writeln!(out, "{line}")?;
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn emit_graph(output: &OutputArgs, g: &Graph, details: serde_json::Value) -> CliResult {
    let mut out = open_output(output.out.as_deref())?;
    if output.json {
        let mut value = json!({
            "graph6": write_graph6(g),
            "vertices": g.n(),
            "edges": g.edge_count(),
            "degree": g.regular_degree(),
            "canonical": canonical_form(g)?.to_hex(),
        });
        if let (Some(obj), serde_json::Value::Object(extra)) = (value.as_object_mut(), details) {
            obj.extend(extra);
        }
        writeln!(out, "{value}")?;
    } else {
        writeln!(out, "{}", write_graph6(g))?;
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn gen_lt_cycle(l: usize, t: usize, output: &OutputArgs) -> CliResult {
    let spec = LtSpec::new(l, t)?;
    check_cap(spec.vertices(), "l*t")?;
    let g = lt_cycle(spec)?;
    emit_graph(output, &g, json!({ "spec": spec }))
}

fn gen_cayley(group: &str, set: &str, output: &OutputArgs) -> CliResult {
    let group = AbelianGroup::from_str(group)?;
    check_cap(group.order(), "group order")?;
    let set = ConnectionSet::parse(&group, set)?;
    let (g, labels) = cayley_graph(&group, &set)?;
    let labels: Vec<String> = labels.iter().map(ToString::to_string).collect();
    emit_graph(
        output,
        &g,
        json!({
            "group": group.to_string(),
            "set": set.to_string(),
            "connected": g.is_connected(),
            "labels": labels,
        }),
    )
}

#[derive(Serialize)]
struct CensusSummary {
    d: usize,
    total: Option<u64>,
    balanced: u64,
    partition: Option<(usize, usize)>,
    elapsed: f64,
}

fn census(args: &CensusArgs) -> CliResult {
    check_cap(args.vertices, "--vertices")?;
    let mut task = CensusTask::new(args.vertices)?.balanced_only(args.balanced);
    if let (Some(m), Some(r)) = (args.modulus, args.res) {
        task = task.partition(m, r)?;
    }
    let start = Instant::now();
    let report = run_census(task)?;
    let elapsed = start.elapsed().as_secs_f64();
    if let Some(path) = &args.out {
        let mut out = open_output(Some(path))?;
        for g6 in &report.witnesses {
            writeln!(out, "{g6}")?;
        }
        out.flush()?;
    }
    let summary = CensusSummary {
        d: report.d,
        total: report.total_cubic_bipartite,
        balanced: report.balanced_count,
        partition: report.partition,
        elapsed,
    };
    println!("{}", serde_json::to_string(&summary).expect("plain data"));
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct Timed<'a> {
    #[serde(flatten)]
    report: &'a VerificationReport,
    elapsed: f64,
}

fn verify(cmd: VerifyCmd) -> CliResult {
    let start = Instant::now();
    let report = match cmd {
        VerifyCmd::MainAbelian { max_order } => {
            check_cap(max_order, "--max-order")?;
            verify_main_theorem(max_order)?
        }
        VerifyCmd::Circulant { max_n } => {
            check_cap(max_n, "--max-n")?;
            verify_circulant_lemmas(max_n)?
        }
        VerifyCmd::Divisibility { file: Some(file), .. } => divisibility_of_file(&file)?,
        VerifyCmd::Divisibility {
            file: None,
            census_max_d,
        } => {
            check_cap(census_max_d, "--census-max-d")?;
            verify_divisibility_theorem(census_max_d)?
        }
        VerifyCmd::Planar { max_n } => {
            check_cap(max_n, "--max-n")?;
            verify_planar_theorem(max_n)?
        }
        VerifyCmd::Conjectures { vertices } => conjectures(&vertices)?,
    };
    let timed = Timed {
        report: &report,
        elapsed: start.elapsed().as_secs_f64(),
    };
    println!("{}", serde_json::to_string(&timed).expect("plain data"));
    if report.holds() {
        Ok(ExitCode::SUCCESS)
    } else {
        for c in &report.counterexamples {
            eprintln!("COUNTEREXAMPLE [{}] {}: {}", report.check, c.description, c.graph6);
        }
        Ok(ExitCode::from(1))
    }
}

fn divisibility_of_file(file: &Path) -> Result<VerificationReport, UsageError> {
    let mut report = VerificationReport::new("divisibility");
    for (token, g) in read_graphs(&read_input(Some(file))?)? {
        let r = verify_divisibility(&g).map_err(|e| UsageError(format!("{token}: {e}")))?;
        report.instances += 1;
        if r.balanced {
            report.tally("balanced", 1);
        }
        if !r.holds() {
            report.fail("balanced regular graph without an exact cover of size |V|/2k", token);
        }
    }
    Ok(report)
}

fn conjectures(vertices: &[usize]) -> Result<VerificationReport, UsageError> {
    let mut report = VerificationReport::new("conjectures");
    for &d in vertices {
        check_cap(d, "--vertices")?;
        let census = count_balanced_cubic(d)?;
        report.tally(&format!("f({d})"), census.balanced_count);
        report.merge(twins_report(&census));
        let consequences = consequences_report(&census)?;
        // Both sub-reports count the same graphs.
        report.instances -= consequences.instances;
        report.merge(consequences);
    }
    Ok(report)
}

fn planar_batagelj(max_n: usize, rotation: bool, out: Option<&Path>) -> CliResult {
    check_cap(max_n, "--max-n")?;
    let graphs = batagelj_enumerate(max_n)?;
    let mut w = open_output(out)?;
    for g in &graphs {
        writeln!(w, "{}", write_graph6(g.graph()))?;
        if rotation {
            writeln!(w, "{}", g.to_rotation_text().trim_end())?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}
