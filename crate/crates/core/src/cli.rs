//! Command-line front end. [`run`] does all the work and returns what the
//! process should print and its exit code, so it can be tested in-process.
//!
//! Exit codes: 0 success, 1 domain-level negative (not a matroid, theorem
//! check failed), 2 input error. Stdout carries JSON on 0 and 1; stderr is
//! written only on 2.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::greedy::{pgreedy_with, GreedyOptions};
use crate::io::{self, ComplexDoc, SystemDoc, TraceDoc, WeightDoc};
use crate::poset::DEFAULT_CAP;
use crate::simplicial::max_spanning_acyclic_with;
use crate::system::PoIndependenceSystem;
use crate::verify::{self, brute_force_optimum, run_corpus, Witnesses};
use crate::weight::format_rational;

#[derive(Debug, Parser)]
#[command(name = "poset-greedy", version, about = "Greedy optimization over poset matroids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide the poset-matroid axioms for an independence document.
    CheckMatroid {
        system: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Run PGREEDY on a system and a weight document.
    Pgreedy {
        system: PathBuf,
        weights: PathBuf,
        #[arg(long)]
        trace: bool,
        /// Skip the order-preservation check; the result is then not
        /// guaranteed optimal.
        #[arg(long)]
        unchecked_weights: bool,
    },
    /// Maximum-weight spanning h-acyclic subcomplex.
    SpanComplex {
        complex: PathBuf,
        weights: PathBuf,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        unchecked_weights: bool,
    },
    /// Exact optimum by exhaustive scan of the independent sets.
    Oracle {
        system: PathBuf,
        weights: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Check that PGREEDY is optimal exactly on the poset matroids of a corpus.
    EdmondsRado {
        /// JSON array of independence documents.
        corpus: Option<PathBuf>,
        /// Every system on every poset with at most 3 elements.
        #[arg(long = "exhaustive-3")]
        exhaustive_3: bool,
        /// Number of seeded random systems on 4 to 6 elements.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn json(code: i32, v: &Value) -> Self {
        Self {
            code,
            stdout: format!("{v}\n"),
            stderr: String::new(),
        }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        Self {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

type Outcome = Result<CommandResult, String>;

pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return CommandResult {
                code: 0,
                stdout: e.to_string(),
                stderr: String::new(),
            }
        }
        Err(e) => {
            return CommandResult {
                code: 2,
                stdout: String::new(),
                stderr: e.to_string(),
            }
        }
    };
    let out = match cli.command {
        Command::CheckMatroid { system, cap } => check_matroid(&system, cap),
        Command::Pgreedy {
            system,
            weights,
            trace,
            unchecked_weights,
        } => pgreedy_cmd(&system, &weights, trace, unchecked_weights),
        Command::SpanComplex {
            complex,
            weights,
            h,
            trace,
            unchecked_weights,
        } => span_complex(&complex, &weights, h, trace, unchecked_weights),
        Command::Oracle { system, weights, cap } => oracle(&system, &weights, cap),
        Command::EdmondsRado {
            corpus,
            exhaustive_3,
            random,
            seed,
            trials,
            cap,
        } => edmonds_rado(corpus.as_deref(), exhaustive_3, random, seed, trials, cap),
    };
    out.unwrap_or_else(CommandResult::input_error)
}

fn read<T: for<'de> serde::Deserialize<'de>>(path: &Path) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    io::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_system(path: &Path, cap: usize) -> Result<PoIndependenceSystem, String> {
    let doc: SystemDoc = read(path)?;
    let sys = doc.build().map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(sys.with_cap(cap))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn check_matroid(path: &Path, cap: usize) -> Outcome {
    let sys = load_system(path, cap)?;
    if let Some((x, y)) = sys.check_hereditary().map_err(err)? {
        let p = sys.poset();
        return Err(format!(
            "family is not hereditary: {:?} is independent but {:?} is not",
            p.labels_of(&y),
            p.labels_of(&x)
        ));
    }
    let violation = sys.axiom_ii_witness().map_err(err)?;
    let p = sys.poset();
    let v = violation
        .as_ref()
        .map(|v| json!({"A": p.labels_of(v.a()), "B": p.labels_of(v.b())}));
    let code = if violation.is_some() { 1 } else { 0 };
    Ok(CommandResult::json(code, &json!({"is_poset_matroid": violation.is_none(), "violation": v})))
}

fn pgreedy_cmd(system: &Path, weights: &Path, trace: bool, unchecked: bool) -> Outcome {
    let sys = load_system(system, usize::MAX)?;
    let p = sys.poset();
    let w = read::<WeightDoc>(weights)?.for_poset(p).map_err(err)?;
    let opts = GreedyOptions {
        check_order: !unchecked,
        ..Default::default()
    };
    let t = pgreedy_with(&sys, &w, opts).map_err(err)?;
    let mut out = json!({"result": p.labels_of(&t.result), "total": format_rational(&t.total)});
    if trace {
        out["trace"] = serde_json::to_value(TraceDoc::new(&t, |i| p.label(i).to_string())).map_err(err)?;
    }
    if unchecked {
        out["unchecked_weights"] = json!(true);
    }
    Ok(CommandResult::json(0, &out))
}

fn span_complex(complex: &Path, weights: &Path, h: usize, trace: bool, unchecked: bool) -> Outcome {
    let c = read::<ComplexDoc>(complex)?.build().map_err(err)?;
    let w = read::<WeightDoc>(weights)?.for_complex(&c).map_err(err)?;
    let out = max_spanning_acyclic_with(&c, h, &w, !unchecked).map_err(err)?;
    let mut groups: BTreeMap<String, Vec<Vec<String>>> = BTreeMap::new();
    for f in out.faces.iter() {
        let face = c.face(f);
        groups.entry(face.len().to_string()).or_default().push(c.face_labels(face));
    }
    let mut doc = json!({
        "h": h,
        "faces": groups,
        "total": format_rational(&out.trace.total),
        "spanning": c.is_spanning(&out.faces),
    });
    if trace {
        doc["trace"] =
            serde_json::to_value(TraceDoc::new(&out.trace, |i| c.face_key(c.face(i)))).map_err(err)?;
    }
    if unchecked {
        doc["unchecked_weights"] = json!(true);
    }
    Ok(CommandResult::json(0, &doc))
}

fn oracle(system: &Path, weights: &Path, cap: usize) -> Outcome {
    let sys = load_system(system, cap)?;
    let w = read::<WeightDoc>(weights)?.for_poset(sys.poset()).map_err(err)?;
    let r = brute_force_optimum(&sys, &w, Witnesses::All).map_err(err)?;
    Ok(CommandResult::json(0, &io::optimum_json(sys.poset(), &r)))
}

fn edmonds_rado(
    corpus: Option<&Path>,
    exhaustive_3: bool,
    random: Option<usize>,
    seed: u64,
    trials: usize,
    cap: usize,
) -> Outcome {
    let mut systems = Vec::new();
    if let Some(path) = corpus {
        let docs: Vec<SystemDoc> = read(path)?;
        for (i, d) in docs.iter().enumerate() {
            let sys = d.build().map_err(|e| format!("{} entry {i}: {e}", path.display()))?;
            systems.push((format!("corpus-{i}"), sys));
        }
    }
    if exhaustive_3 {
        systems.extend(verify::exhaustive_systems(3));
    }
    if let Some(n) = random {
        systems.extend(verify::random_corpus(n, seed));
    }
    if systems.is_empty() {
        return Err("no systems: give a corpus file, --exhaustive-3 or --random <n>".into());
    }
    let systems: Vec<_> = systems.into_iter().map(|(id, s)| (id, s.with_cap(cap))).collect();
    let (reports, summary) = run_corpus(&systems, trials, seed).map_err(err)?;
    let mut stdout = String::new();
    for (r, (_, sys)) in reports.iter().zip(&systems) {
        stdout.push_str(&io::report_json(sys.poset(), r).to_string());
        stdout.push('\n');
    }
    stdout.push_str(&io::summary_json(&summary, seed).to_string());
    stdout.push('\n');
    Ok(CommandResult {
        code: if summary.violations > 0 { 1 } else { 0 },
        stdout,
        stderr: String::new(),
    })
}
