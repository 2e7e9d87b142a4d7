//! Command front end. Every command returns its process exit code.
//!
//! `solve` exits 0 on yes, 1 on a proven no and 2 on any error. `verify`
//! exits 0 iff the solution verifies. `bench` exits 3 when two algorithms
//! disagree on an instance and 2 when some run failed.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use crate::cliquegrid::compute_representation;
use crate::geometry::{build_intersection_graph, DiskInstance};
use crate::io::{parse_solution, read_instance, write_instance, write_solution, Solution};
use crate::oracle::verify_tree;
use crate::{fpt, gadgets, instance_gen, oracle, subexp, Answer, Outcome};

#[derive(Debug, Parser)]
#[command(name = "udg-steiner", version, about = "Steiner tree on unit disk graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide an instance and write a witness.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Fpt)]
        algo: Algo,
        /// Solution file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a solution file against an instance.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Run every algorithm of a manifest on every listed instance.
    Bench {
        manifest: PathBuf,
        /// CSV file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a seeded random unit disk instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(short, long, default_value_t = 0)]
        k: usize,
        #[arg(long = "box", default_value_t = 100)]
        box_side: i128,
        #[arg(long, default_value_t = 10)]
        radius: i128,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a reduction instance.
    Gadget {
        #[command(subcommand)]
        which: GadgetCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum GadgetCommand {
    /// Connected vertex cover source given as a rectilinear embedding.
    Cvc {
        #[arg(long)]
        embedding: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grid tiling source.
    Gridtiling {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Algo {
    Oracle,
    Fpt,
    Dw,
    Subexp,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Oracle => "oracle",
            Algo::Fpt => "fpt",
            Algo::Dw => "dw",
            Algo::Subexp => "subexp",
        }
    }

    fn parse(s: &str) -> anyhow::Result<Self> {
        <Algo as ValueEnum>::from_str(s, true).map_err(|e| anyhow::anyhow!("unknown algorithm {s:?}: {e}"))
    }
}

/// Runs one algorithm on an instance and checks any witness it returns.
pub fn run_algo(inst: &DiskInstance, algo: Algo) -> crate::Result<Outcome> {
    let g = build_intersection_graph(inst);
    let out = match algo {
        Algo::Oracle => oracle::brute_force_decide(&g, inst.k)?,
        Algo::Dw => fpt::solve_dw(&g, inst.k)?,
        Algo::Fpt => fpt::solve_fpt(&g, &compute_representation(inst)?, inst.k)?,
        Algo::Subexp => subexp::solve_subexp(&g, &compute_representation(inst)?, inst.k)?,
    };
    if let Answer::Yes(tree) = &out.answer {
        if let Err(defect) = verify_tree(&g, inst.k, tree) {
            return Err(crate::Error::Certificate(format!("{} produced a bad witness: {defect}", algo.name())));
        }
    }
    Ok(out)
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn solve(instance: &Path, algo: Algo, out: Option<&Path>) -> anyhow::Result<i32> {
    let inst = read_instance(instance).with_context(|| format!("reading {}", instance.display()))?;
    let outcome = run_algo(&inst, algo)?;
    let (sol, code) = match &outcome.answer {
        Answer::Yes(tree) => (Solution::from_tree(&inst, tree), 0),
        Answer::No => (Solution::No, 1),
    };
    emit(out, &write_solution(&sol))?;
    Ok(code)
}

fn verify(instance: &Path, solution: &Path) -> anyhow::Result<i32> {
    let inst = read_instance(instance).with_context(|| format!("reading {}", instance.display()))?;
    let text = std::fs::read_to_string(solution).with_context(|| format!("reading {}", solution.display()))?;
    let Some(tree) = parse_solution(&text)?.to_tree(&inst)? else {
        eprintln!("solution claims no tree exists; nothing to verify");
        return Ok(1);
    };
    let g = build_intersection_graph(&inst);
    match verify_tree(&g, inst.k, &tree) {
        Ok(()) => {
            println!("ok");
            Ok(0)
        }
        Err(defect) => {
            println!("rejected: {defect}");
            Ok(1)
        }
    }
}

/// One bench row.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub algo: Algo,
    pub answer: String,
    pub wall_ms: f64,
    pub states: u64,
}

/// Manifest: an optional `algos <name>...` line, then one instance path per
/// line, relative to the manifest's directory.
pub fn parse_manifest(text: &str, base: &Path) -> anyhow::Result<(Vec<Algo>, Vec<PathBuf>)> {
    let mut algos = vec![Algo::Oracle, Algo::Fpt];
    let mut paths = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("algos") {
            algos = rest.split_whitespace().map(Algo::parse).collect::<anyhow::Result<_>>()?;
            if algos.is_empty() {
                bail!("`algos` needs at least one algorithm");
            }
        } else {
            paths.push(base.join(line));
        }
    }
    Ok((algos, paths))
}

pub fn bench_rows(algos: &[Algo], paths: &[PathBuf], labels: &[String]) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for (path, label) in paths.iter().zip(labels) {
        let inst = read_instance(path);
        for &algo in algos {
            let start = Instant::now();
            let result = inst.as_ref().map_err(|e| e.to_string()).and_then(|i| run_algo(i, algo).map_err(|e| e.to_string()));
            let wall_ms = start.elapsed().as_secs_f64() * 1000.0;
            let (answer, states) = match result {
                Ok(o) => (if o.answer.is_yes() { "yes" } else { "no" }.to_string(), o.states),
                Err(_) => ("error".to_string(), 0),
            };
            rows.push(BenchRow {
                instance: label.clone(),
                algo,
                answer,
                wall_ms,
                states,
            });
        }
    }
    rows.sort_by(|a, b| (&a.instance, a.algo).cmp(&(&b.instance, b.algo)));
    rows
}

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut s = String::from("instance,algo,answer,wall_ms,states\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{},{:.3},{}", r.instance, r.algo.name(), r.answer, r.wall_ms, r.states);
    }
    s
}

/// 0 when all runs agree, 3 on a disagreement, otherwise 2 if any run failed.
pub fn bench_status(rows: &[BenchRow]) -> i32 {
    let mut failed = false;
    for group in rows.chunk_by(|a, b| a.instance == b.instance) {
        let answers: Vec<&str> = group
            .iter()
            .map(|r| r.answer.as_str())
            .filter(|a| *a != "error")
            .collect();
        if answers.windows(2).any(|w| w[0] != w[1]) {
            return 3;
        }
        failed |= answers.len() != group.len();
    }
    if failed {
        2
    } else {
        0
    }
}

fn bench(manifest: &Path, out: Option<&Path>) -> anyhow::Result<i32> {
    let text = std::fs::read_to_string(manifest).with_context(|| format!("reading {}", manifest.display()))?;
    let base = manifest.parent().unwrap_or(Path::new("."));
    let (algos, paths) = parse_manifest(&text, base)?;
    let labels: Vec<String> = paths
        .iter()
        .map(|p| p.strip_prefix(base).unwrap_or(p).display().to_string())
        .collect();
    let rows = bench_rows(&algos, &paths, &labels);
    emit(out, &bench_csv(&rows))?;
    let status = bench_status(&rows);
    if status == 3 {
        eprintln!("algorithms disagree");
    }
    Ok(status)
}

fn run_command(cmd: Command) -> anyhow::Result<i32> {
    match cmd {
        Command::Solve { instance, algo, out } => solve(&instance, algo, out.as_deref()),
        Command::Verify { instance, solution } => verify(&instance, &solution),
        Command::Bench { manifest, out } => bench(&manifest, out.as_deref()),
        Command::Gen {
            n,
            t,
            k,
            box_side,
            radius,
            seed,
            out,
        } => {
            let inst = instance_gen::random_instance(n, t, k, box_side, radius, seed)?;
            emit(out.as_deref(), &write_instance(&inst))?;
            Ok(0)
        }
        Command::Gadget { which } => {
            let (inst, out) = match which {
                GadgetCommand::Cvc { embedding, k, out } => {
                    let text = std::fs::read_to_string(&embedding)
                        .with_context(|| format!("reading {}", embedding.display()))?;
                    let emb = gadgets::RectilinearEmbedding::parse(&text)?;
                    (gadgets::cvc_gadget(&emb, k)?.0, out)
                }
                GadgetCommand::Gridtiling { spec, out } => {
                    let text =
                        std::fs::read_to_string(&spec).with_context(|| format!("reading {}", spec.display()))?;
                    let gt = gadgets::GridTilingInstance::parse(&text)?;
                    (gadgets::grid_tiling_gadget(&gt)?.0, out)
                }
            };
            emit(out.as_deref(), &write_instance(&inst))?;
            Ok(0)
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run_command(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}
