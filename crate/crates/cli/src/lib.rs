//! Command-line front end: solve, verify, generate and benchmark instances.
//!
//! Every subcommand is a function returning an [`Output`] so that tests can
//! drive it without spawning a process. Exit codes: 0 = YES / VALID / ok,
//! 1 = NO / INVALID / disagreement, 2 = usage, parse or search error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use recolor_core::format::{
    parse_graph, parse_instance, parse_sequence, write_instance, write_sequence,
};
use recolor_core::fpt::{recolor, recolor_lists, recurse_call_bound, FptOptions, FptStats};
use recolor_core::gadgets::{
    bk_sequence, build_bk, build_forbidding_path, np_reduce, np_witness, w1_reduce, w1_witness,
};
use recolor_core::oracle::{oracle_distance, OracleOptions, DEFAULT_NODE_CAP};
use recolor_core::xp::{solve_xp, XpOptions};
use recolor_core::{Color, ColorLists, ColorSet, Instance, RecolorSequence, SearchError, Verdict};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// What a subcommand printed and how it exits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            code: EXIT_YES,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(msg: impl std::fmt::Display) -> Self {
        Output {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "recolor", version, about = "Bounded-length graph recoloring")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether alpha reaches beta within the instance budget.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Oracle)]
        algo: Algo,
        /// Print a witness sequence after YES.
        #[arg(long)]
        witness: bool,
        /// State cap for the oracle.
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        node_cap: u64,
        /// Generated-coloring cap for xp.
        #[arg(long)]
        step_budget: Option<u64>,
        #[arg(long)]
        time_limit_ms: Option<u64>,
    },
    /// Check a sequence file against an instance.
    Verify {
        instance: PathBuf,
        sequence: PathBuf,
    },
    /// Generate a gadget instance.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run solvers over every instance file in a directory.
    Bench {
        dir: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "oracle,xp,fpt")]
        algos: Vec<Algo>,
        #[arg(long, default_value_t = 10_000)]
        time_limit_ms: u64,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Oracle,
    Xp,
    Fpt,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Oracle => "oracle",
            Algo::Xp => "xp",
            Algo::Fpt => "fpt",
        }
    }
}

#[derive(Args, Debug)]
pub struct GenOut {
    /// Write the instance here instead of stdout.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// B_k with its row and column colorings.
    Bk {
        #[arg(long)]
        k: usize,
        /// Palette size, default 2k-1.
        #[arg(long)]
        colors: Option<u32>,
        /// Budget, default 2k^2.
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[command(flatten)]
        out: GenOut,
    },
    /// An (a,b)-forbidding path as a list instance with alpha = beta.
    Forbid {
        #[arg(long, value_delimiter = ',', required = true)]
        lu: Vec<Color>,
        #[arg(long, value_delimiter = ',', required = true)]
        lv: Vec<Color>,
        #[arg(long)]
        a: Color,
        #[arg(long)]
        b: Color,
        #[command(flatten)]
        out: GenOut,
    },
    /// The 3-colorability reduction applied to a graph file.
    Np {
        graph: PathBuf,
        /// Proper 3-coloring of the source, needed for --witness.
        #[arg(long, value_delimiter = ',')]
        three_coloring: Option<Vec<Color>>,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[command(flatten)]
        out: GenOut,
    },
    /// The independent-set reduction applied to a graph file.
    W1 {
        graph: PathBuf,
        #[arg(long)]
        t: usize,
        /// t-1 pairwise non-adjacent source vertices (1-based), needed for
        /// --witness.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        independent_set: Option<Vec<usize>>,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[command(flatten)]
        out: GenOut,
    },
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
            let text = e.render().to_string();
            return if code == EXIT_YES {
                Output::ok(text)
            } else {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match cli.command {
        Command::Solve {
            instance,
            algo,
            witness,
            node_cap,
            step_budget,
            time_limit_ms,
        } => match read_instance(&instance) {
            Ok(inst) => {
                let limits = Limits {
                    node_cap,
                    step_budget,
                    deadline: time_limit_ms.map(|ms| Instant::now() + Duration::from_millis(ms)),
                };
                run_solve(&inst, algo, witness, &limits)
            }
            Err(out) => out,
        },
        Command::Verify { instance, sequence } => {
            match (read_text(&instance), read_text(&sequence)) {
                (Ok(i), Ok(s)) => run_verify(&i, &s),
                (Err(e), _) | (_, Err(e)) => e,
            }
        }
        Command::Gen(cmd) => run_gen(cmd),
        Command::Bench {
            dir,
            algos,
            time_limit_ms,
            json,
        } => {
            let report = match run_bench(&dir, &algos, Duration::from_millis(time_limit_ms)) {
                Ok(r) => r,
                Err(e) => return Output::error(e),
            };
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report).expect("report serializes");
                if let Err(e) = fs::write(&path, text + "\n") {
                    return Output::error(format!("{}: {e}", path.display()));
                }
            }
            Output {
                code: if report.failures.is_empty() {
                    EXIT_YES
                } else {
                    EXIT_NO
                },
                stdout: report.to_text(),
                stderr: String::new(),
            }
        }
    }
}

fn read_text(path: &Path) -> Result<String, Output> {
    fs::read_to_string(path).map_err(|e| Output::error(format!("{}: {e}", path.display())))
}

fn read_instance(path: &Path) -> Result<Instance, Output> {
    let text = read_text(path)?;
    parse_instance(&text).map_err(|e| Output::error(format!("{}: {e}", path.display())))
}

/// Search limits shared by the solvers.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub node_cap: u64,
    pub step_budget: Option<u64>,
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            node_cap: DEFAULT_NODE_CAP,
            step_budget: None,
            deadline: None,
        }
    }
}

/// A solver outcome with its internal counters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solved {
    pub witness: Option<RecolorSequence>,
    /// States explored (oracle), colorings generated (xp) or recursive
    /// guessing calls (fpt).
    pub work: u64,
    pub fpt: Option<FptStats>,
}

/// Runs one solver on an instance. A witness is returned iff the answer is
/// YES.
pub fn solve_with(inst: &Instance, algo: Algo, limits: &Limits) -> Result<Solved, SearchError> {
    let lists = inst.lists();
    let (g, a, b, ell) = (
        inst.graph(),
        inst.alpha().as_slice(),
        inst.beta().as_slice(),
        inst.ell(),
    );
    match algo {
        Algo::Oracle => {
            let opts = OracleOptions {
                node_cap: limits.node_cap,
                deadline: limits.deadline,
            };
            let r = oracle_distance(g, &lists, a, b, &opts)?;
            let witness = r.witness.filter(|w| w.len() <= ell);
            Ok(Solved {
                witness,
                work: r.explored,
                fpt: None,
            })
        }
        Algo::Xp => {
            let opts = XpOptions {
                prune_visited: false,
                step_budget: limits.step_budget,
                deadline: limits.deadline,
            };
            let r = solve_xp(g, &lists, a, b, ell, &opts)?;
            Ok(Solved {
                witness: r.witness,
                work: r.generated,
                fpt: None,
            })
        }
        Algo::Fpt => {
            let opts = FptOptions {
                deadline: limits.deadline,
                ..Default::default()
            };
            let r = match inst.explicit_lists() {
                Some(l) => recolor_lists(g, l, ell, a, b, &opts)?,
                None => recolor(g, inst.k(), ell, a, b, &opts)?,
            };
            Ok(Solved {
                witness: r.witness,
                work: r.stats.recurse_calls,
                fpt: Some(r.stats),
            })
        }
    }
}

pub fn run_solve(inst: &Instance, algo: Algo, emit_witness: bool, limits: &Limits) -> Output {
    match solve_with(inst, algo, limits) {
        Ok(Solved {
            witness: Some(w), ..
        }) => {
            let mut out = String::from("YES\n");
            if emit_witness {
                out.push_str(&write_sequence(&w));
            }
            Output::ok(out)
        }
        Ok(Solved { witness: None, .. }) => Output {
            code: EXIT_NO,
            stdout: "NO\n".into(),
            stderr: String::new(),
        },
        Err(e) => Output::error(format!("{}: {e}", algo.name())),
    }
}

/// Verifies sequence text against instance text.
pub fn run_verify(instance_text: &str, sequence_text: &str) -> Output {
    let inst = match parse_instance(instance_text) {
        Ok(i) => i,
        Err(e) => return Output::error(format!("instance: {e}")),
    };
    let seq = match parse_sequence(sequence_text) {
        Ok(s) => s,
        Err(e) => return Output::error(format!("sequence: {e}")),
    };
    match inst.verify(&seq) {
        Verdict::Valid => Output::ok(format!(
            "VALID ({} steps, budget {})\n",
            seq.len(),
            inst.ell()
        )),
        Verdict::Invalid { step, reason } => {
            let at = match step {
                Some(i) => format!("step {}: ", i + 1),
                None => String::new(),
            };
            Output {
                code: EXIT_NO,
                stdout: format!("INVALID\n{at}{reason}\n"),
                stderr: String::new(),
            }
        }
    }
}

fn emit(out: &GenOut, inst: &Instance) -> Output {
    let text = write_instance(inst);
    match &out.out {
        Some(path) => match fs::write(path, &text) {
            Ok(()) => Output::ok(String::new()),
            Err(e) => Output::error(format!("{}: {e}", path.display())),
        },
        None => Output::ok(text),
    }
}

fn write_witness(path: &Path, seq: &RecolorSequence) -> Result<(), Output> {
    fs::write(path, write_sequence(seq))
        .map_err(|e| Output::error(format!("{}: {e}", path.display())))
}

fn colors_to_set(cs: &[Color]) -> ColorSet {
    cs.iter().copied().collect()
}

pub fn run_gen(cmd: GenCommand) -> Output {
    match gen(cmd) {
        Ok(out) => out,
        Err(out) => out,
    }
}

fn gen(cmd: GenCommand) -> Result<Output, Output> {
    match cmd {
        GenCommand::Bk {
            k,
            colors,
            ell,
            witness,
            out,
        } => {
            let bk = build_bk(k).map_err(Output::error)?;
            let q = colors.unwrap_or(2 * k as u32 - 1);
            let inst = bk
                .to_instance(q, ell.unwrap_or(2 * k * k))
                .map_err(Output::error)?;
            if let Some(path) = witness {
                if q < 2 * k as u32 - 1 {
                    return Err(Output::error(format!(
                        "the witness needs {} colors, palette has {q}",
                        2 * k - 1
                    )));
                }
                let base: Vec<Color> = (1..=k as Color).collect();
                let spare: Vec<Color> = (k as Color + 1..2 * k as Color).collect();
                write_witness(
                    &path,
                    &bk_sequence(k, &base, &spare).map_err(Output::error)?,
                )?;
            }
            Ok(emit(&out, &inst))
        }
        GenCommand::Forbid { lu, lv, a, b, out } => {
            let fp = build_forbidding_path(colors_to_set(&lu), colors_to_set(&lv), a, b)
                .map_err(Output::error)?;
            let start = fp
                .list(0)
                .iter()
                .flat_map(|x| fp.list(6).iter().map(move |y| (x, y)))
                .find(|&(x, y)| fp.is_admissible(x, y))
                .and_then(|(x, y)| fp.extend(x, y))
                .ok_or_else(|| Output::error("no admissible endpoint pair"))?;
            let lists = ColorLists::new(4, fp.lists.as_slice().to_vec()).map_err(Output::error)?;
            let roles = [(0, "u".to_string()), (6, "v".to_string())]
                .into_iter()
                .collect();
            let inst = Instance::new(fp.graph.clone(), 4, Some(lists), 6, start.clone(), start)
                .map_err(Output::error)?
                .with_roles(roles);
            Ok(emit(&out, &inst))
        }
        GenCommand::Np {
            graph,
            three_coloring,
            witness,
            out,
        } => {
            let source = read_graph(&graph)?;
            let np = np_reduce(&source).map_err(Output::error)?;
            if let Some(path) = witness {
                let c3 = three_coloring
                    .ok_or_else(|| Output::error("--witness needs --three-coloring"))?;
                if c3.len() != source.n() {
                    return Err(Output::error(format!(
                        "3-coloring has {} entries, graph has {} vertices",
                        c3.len(),
                        source.n()
                    )));
                }
                write_witness(&path, &np_witness(&np, &c3).map_err(Output::error)?)?;
            }
            Ok(emit(&out, &np.instance))
        }
        GenCommand::W1 {
            graph,
            t,
            independent_set,
            witness,
            out,
        } => {
            let source = read_graph(&graph)?;
            let w1 = w1_reduce(&source, t).map_err(Output::error)?;
            if let Some(path) = witness {
                let set = independent_set
                    .ok_or_else(|| Output::error("--witness needs --independent-set"))?;
                if set.contains(&0) {
                    return Err(Output::error("vertices are numbered from 1"));
                }
                let set: Vec<usize> = set.iter().map(|v| v - 1).collect();
                write_witness(&path, &w1_witness(&w1, &set).map_err(Output::error)?)?;
            }
            Ok(emit(&out, &w1.instance))
        }
    }
}

fn read_graph(path: &Path) -> Result<recolor_core::Graph, Output> {
    let text = read_text(path)?;
    parse_graph(&text).map_err(|e| Output::error(format!("{}: {e}", path.display())))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Cell {
    pub algo: Algo,
    /// `YES`, `NO`, `TIMEOUT` or `BUDGET`.
    pub verdict: String,
    pub millis: u128,
    pub work: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fpt_list_calls: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fpt_max_base_slack: Option<usize>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Row {
    pub file: String,
    pub n: usize,
    pub k: u32,
    pub ell: usize,
    pub cells: Vec<Cell>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct BenchReport {
    pub rows: Vec<Row>,
    /// Disagreements, invalid witnesses and broken counter bounds.
    pub failures: Vec<String>,
}

impl BenchReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{:<32} {:>5} {:>3} {:>4}  {:<6} {:<8} {:>10} {:>12}",
            "file", "n", "k", "ell", "algo", "verdict", "ms", "work"
        )
        .unwrap();
        for row in &self.rows {
            for cell in &row.cells {
                writeln!(
                    out,
                    "{:<32} {:>5} {:>3} {:>4}  {:<6} {:<8} {:>10} {:>12}",
                    row.file,
                    row.n,
                    row.k,
                    row.ell,
                    cell.algo.name(),
                    cell.verdict,
                    cell.millis,
                    cell.work
                )
                .unwrap();
            }
        }
        for f in &self.failures {
            writeln!(out, "FAILURE {f}").unwrap();
        }
        writeln!(
            out,
            "{} instances, {} failures",
            self.rows.len(),
            self.failures.len()
        )
        .unwrap();
        out
    }
}

/// Runs every algorithm in `algos` on every `*.txt` file in `dir` (sorted
/// by name), each with its own time limit.
pub fn run_bench(dir: &Path, algos: &[Algo], limit: Duration) -> Result<BenchReport, String> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    files.sort();
    let mut report = BenchReport::default();
    for path in files {
        let name = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let text = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        let inst = match parse_instance(&text) {
            Ok(i) => i,
            Err(e) => {
                report.failures.push(format!("{name}: {e}"));
                continue;
            }
        };
        let mut row = Row {
            file: name.clone(),
            n: inst.graph().n(),
            k: inst.k(),
            ell: inst.ell(),
            cells: Vec::new(),
        };
        let mut verdicts: Vec<(Algo, bool)> = Vec::new();
        for &algo in algos {
            let limits = Limits {
                deadline: Some(Instant::now() + limit),
                ..Default::default()
            };
            let started = Instant::now();
            let result = solve_with(&inst, algo, &limits);
            let millis = started.elapsed().as_millis();
            let cell = match result {
                Ok(s) => {
                    if let Some(w) = &s.witness {
                        if !inst.verify(w).is_valid() {
                            report
                                .failures
                                .push(format!("{name}: {} witness does not verify", algo.name()));
                        }
                    }
                    if let Some(stats) = s.fpt {
                        let bound = recurse_call_bound(inst.k(), inst.ell());
                        if stats.recurse_calls > bound {
                            report.failures.push(format!(
                                "{name}: fpt made {} recursive calls, bound {bound}",
                                stats.recurse_calls
                            ));
                        }
                    }
                    verdicts.push((algo, s.witness.is_some()));
                    Cell {
                        algo,
                        verdict: if s.witness.is_some() { "YES" } else { "NO" }.into(),
                        millis,
                        work: s.work,
                        fpt_list_calls: s.fpt.map(|f| f.list_recolor_calls),
                        fpt_max_base_slack: s.fpt.map(|f| f.max_base_slack),
                    }
                }
                Err(e) => Cell {
                    algo,
                    verdict: match e {
                        SearchError::Deadline { .. } => "TIMEOUT",
                        SearchError::BudgetExhausted { .. } => "BUDGET",
                    }
                    .into(),
                    millis,
                    work: match e {
                        SearchError::Deadline { explored }
                        | SearchError::BudgetExhausted { explored } => explored,
                    },
                    fpt_list_calls: None,
                    fpt_max_base_slack: None,
                },
            };
            row.cells.push(cell);
        }
        if let Some(&(first, yes)) = verdicts.first() {
            if let Some(&(other, _)) = verdicts.iter().find(|&&(_, v)| v != yes) {
                report.failures.push(format!(
                    "{name}: {} says {}, {} disagrees",
                    first.name(),
                    if yes { "YES" } else { "NO" },
                    other.name()
                ));
            }
        }
        report.rows.push(row);
    }
    Ok(report)
}
