//! Command-line front end: loads documents, runs one operation and emits a
//! report.

mod commands;
mod corpus;
pub mod report;
pub mod workspace;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

pub use corpus::write_corpus;
pub use report::Report;
pub use workspace::{Artifact, Failure, Workspace};

use crate::error::Budget;
use crate::invariants::Verdict;

#[derive(Debug, Parser)]
#[command(name = "segalkit", version, about = "Exact finite computations with simplicial and bisimplicial sets")]
pub struct Cli {
    #[command(flatten)]
    pub opts: Opts,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// Maximum simplices per constructed object.
    #[arg(long, global = true)]
    pub budget_simplices: Option<usize>,
    /// Maximum simplicial dimension.
    #[arg(long, global = true)]
    pub budget_dim: Option<usize>,
    /// Rows of bisimplicial objects to compute.
    #[arg(long, global = true, default_value_t = 3)]
    pub window: usize,
    /// Largest k for Segal maps and spine checks.
    #[arg(long, global = true, default_value_t = 3)]
    pub kmax: usize,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the resulting object here (a directory for `corpus`).
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
}

impl Opts {
    pub fn budget(&self) -> Budget {
        let d = Budget::default();
        Budget { simplices: self.budget_simplices.unwrap_or(d.simplices), dim: self.budget_dim.unwrap_or(d.dim), nodes: d.nodes }
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Cmd {
    /// Build a standard object: simplex, boundary, horn, spine, point, discrete.
    Build {
        kind: String,
        n: usize,
        k: Option<usize>,
        /// Embed as a bisimplicial set: constant or transpose.
        #[arg(long)]
        embed: Option<String>,
    },
    /// Write the test corpus.
    Corpus { dir: Option<PathBuf> },
    /// Count maps between two sset or two bss documents.
    Hom { source: PathBuf, target: PathBuf },
    Product { factors: Vec<PathBuf> },
    /// Pushout of two maps out of the same object.
    Pushout { f: PathBuf, g: PathBuf },
    Iso { a: PathBuf, b: PathBuf },
    Skeleton { x: PathBuf, n: usize },
    Pi0 { x: PathBuf },
    Homology {
        x: PathBuf,
        #[arg(long)]
        max_deg: Option<usize>,
    },
    /// Horn filling through dimension --kmax.
    Kan { x: PathBuf },
    /// Weak-equivalence verdict for an smap.
    We { f: PathBuf },
    Cosk { x: PathBuf, n: usize },
    Matching { x: PathBuf, n: usize },
    Mapspace {
        x: PathBuf,
        y: PathBuf,
        #[arg(long, default_value_t = 1)]
        deg: usize,
    },
    Reduce { x: PathBuf },
    /// A generator: Ic, If, reedy, P or Q with parameters m, n.
    Gen { family: String, m: usize, n: usize },
    Fiber { x: PathBuf, vertices: Vec<usize> },
    /// G(k)^t, Delta[k]^t or E^t, optionally with a vertex tuple.
    Spine { kind: String, k: usize, objects: Vec<usize> },
    SegalCheck { x: PathBuf },
    Ho { x: PathBuf },
    CompleteCheck { x: PathBuf },
    /// Dwyer-Kan check for a bmap or the nerve of a functor.
    DkSegal { f: PathBuf, name: Option<String> },
    Discretize { w: PathBuf },
    Phi { f: PathBuf, name: Option<String> },
    StrictLocal {
        x: PathBuf,
        #[arg(long, default_value_t = 1)]
        deg: usize,
    },
    Nerve { doc: PathBuf, name: Option<String> },
    Ufunctor { k: PathBuf },
    Pi0cat { doc: PathBuf, name: Option<String> },
    Equiv { doc: PathBuf, name: Option<String> },
    /// Dwyer-Kan check for a simplicial functor, or for U(f) given an smap.
    DkSc { f: PathBuf, name: Option<String> },
    Freecat { doc: PathBuf, name: Option<String> },
    Psi { k: usize, objects: Vec<usize> },
    Tau1 { x: PathBuf },
    /// Lifts in the square top: A -> X, bottom: B -> Y for i: A -> B, f: X -> Y.
    Lift { i: PathBuf, f: PathBuf, top: PathBuf, bottom: PathBuf },
    Rlp {
        f: PathBuf,
        name: Option<String>,
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 2)]
        m_max: usize,
        #[arg(long, default_value_t = 1)]
        n_max: usize,
    },
    Injective {
        f: PathBuf,
        name: Option<String>,
        #[arg(long, default_value = "If")]
        family: String,
        #[arg(long, default_value_t = 1)]
        m_max: usize,
        #[arg(long, default_value_t = 1)]
        n_max: usize,
    },
}

/// What a command produced.
#[derive(Default)]
pub struct Outcome {
    pub payload: serde_json::Value,
    pub verdicts: Vec<(String, Verdict)>,
    /// Whether every verdict is expected to be Yes.
    pub demanded: bool,
    pub artifact: Option<Artifact>,
    pub outputs: Vec<String>,
}

/// Runs a parsed command and returns the exit code with its report.
pub fn execute(cli: &Cli, argv: Vec<String>) -> (i32, Report) {
    let start = Instant::now();
    let budget = cli.opts.budget();
    let mut ws = Workspace::new(budget, cli.opts.window);
    let result = commands::run(&cli.cmd, &cli.opts, &mut ws).and_then(|mut o| {
        if let (Some(a), Some(p)) = (&o.artifact, &cli.opts.output) {
            o.outputs.extend(workspace::write_artifact(p, a, cli.opts.window, budget)?);
        }
        Ok(o)
    });
    let mut report = Report {
        command: argv,
        inputs: std::mem::take(&mut ws.inputs),
        payload: serde_json::Value::Null,
        verdicts: Vec::new(),
        outputs: Vec::new(),
        budget,
        error: None,
        wall_time_ms: 0.0,
    };
    let code = match result {
        Ok(o) => {
            let failed = o.demanded && o.verdicts.iter().any(|(_, v)| !v.is_yes());
            report.payload = o.payload;
            report.verdicts = o.verdicts;
            report.outputs = o.outputs;
            i32::from(failed)
        }
        Err(e) => {
            report.error = Some(e);
            2
        }
    };
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1000.0;
    (code, report)
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code, the rendered report and any usage message.
pub fn run<I, S>(args: I) -> (i32, Option<Report>, String)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, None, e.render().to_string());
        }
    };
    let (code, report) = execute(&cli, argv);
    let text = if cli.opts.json { format!("{}\n", serde_json::to_string_pretty(&report.to_json()).unwrap_or_default()) } else { report.render_text() };
    (code, Some(report), text)
}
