//! `sepwsts` command-line front end.
//!
//! Exit codes: 0 ok, 1 verification failed, 2 input error, 3 precondition
//! error, 10 languages not disjoint.

mod report;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use sepwsts_core::ideal::Config;
use sepwsts_core::olts::{format_report, BoundedLangReport, Direction, ExplicitOlts};
use sepwsts_core::rado;
use sepwsts_core::separator::{separate, verify_separator, SeparationOutcome, SeparatorNfa};
use sepwsts_core::vass::{KmTree, LabeledVass};
use sepwsts_core::word::{format_word, parse_word, words_upto};
use sepwsts_core::{Control, Error};

pub use report::RunReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_NOT_DISJOINT: i32 = 10;

#[derive(Debug, Parser)]
#[command(name = "sepwsts", version, about = "Regular separators for well-structured transition systems")]
pub struct Cli {
    /// Length bound for bounded language enumerations.
    #[arg(long, global = true, env = "SEPWSTS_BOUND", default_value_t = 6)]
    pub bound: usize,

    /// Emitter format for automata and trees.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Also write the run report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide disjointness of two nets; write a separator or a joint word.
    Separate {
        net1: PathBuf,
        /// Must be deterministic.
        net2: PathBuf,
        #[arg(short, long, default_value = "sepwsts-out")]
        out: PathBuf,
    },
    /// Exactly check that an automaton separates two nets.
    Verify {
        net1: PathBuf,
        net2: PathBuf,
        nfa: PathBuf,
    },
    /// The Rado witness language.
    Rado {
        #[command(subcommand)]
        command: RadoCommand,
    },
    /// Karp–Miller cover of a net.
    Km { net: PathBuf },
    /// Backward coverability of a target configuration.
    Covers {
        net: PathBuf,
        control: String,
        /// Comma-separated marking; empty for dimension 0.
        #[arg(default_value = "")]
        marking: String,
    },
    /// Membership of a word in a net or explicit model.
    Membership { model: PathBuf, word: String },
    /// Determinize an upward model, or prune a downward one.
    Det { model: PathBuf },
    /// Accepted words up to the bound.
    Members { model: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum RadoCommand {
    /// Membership in the witness language, or in `W#reverse(Wᶜ)` when the
    /// word contains `#`.
    Member { word: String },
    /// Certified suffixes separating `<ⁱ` and `<ʲ`.
    Suffixes { i: usize, j: usize },
    /// Exhaustive agreement of the simulator with the closed formula on
    /// `<ⁿ>ᵏ0ⁱ`, `n + k + i ≤ max-len`.
    FragmentCheck {
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
}

/// A failure mapped to an exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn from_core(context: &str, e: Error) -> Self {
        let code = if e.is_precondition() {
            EXIT_PRECONDITION
        } else {
            EXIT_INPUT
        };
        let message = if context.is_empty() {
            e.to_string()
        } else {
            format!("{context}: {e}")
        };
        Failure { code, message }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

fn read(path: &Path, report: &mut RunReport) -> std::result::Result<String, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    report.input(path, &bytes);
    String::from_utf8(bytes).map_err(|_| Failure::input(format!("{}: not UTF-8", path.display())))
}

fn load_net(path: &Path, report: &mut RunReport) -> std::result::Result<LabeledVass, Failure> {
    let text = read(path, report)?;
    LabeledVass::from_json(&text).map_err(|e| Failure::from_core(&path.display().to_string(), e))
}

enum Model {
    Net(LabeledVass),
    Explicit(ExplicitOlts),
}

/// Nets carry a `dim` field; everything else is read as an explicit model.
fn load_model(path: &Path, report: &mut RunReport) -> std::result::Result<Model, Failure> {
    let text = read(path, report)?;
    let ctx = path.display().to_string();
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::from_core(&ctx, e.into()))?;
    if value.get("dim").is_some() {
        LabeledVass::from_json(&text)
            .map(Model::Net)
            .map_err(|e| Failure::from_core(&ctx, e))
    } else {
        ExplicitOlts::from_json(&text)
            .map(Model::Explicit)
            .map_err(|e| Failure::from_core(&ctx, e))
    }
}

fn write_artifact(path: PathBuf, contents: &str, report: &mut RunReport) -> std::result::Result<(), Failure> {
    fs::write(&path, contents).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    report.artifact(path);
    Ok(())
}

fn core<T>(r: sepwsts_core::Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(|e| Failure::from_core("", e))
}

/// Runs the command, prints diagnostics, and returns the exit code.
pub fn run(cli: Cli) -> i32 {
    let name = match &cli.command {
        Command::Separate { .. } => "separate",
        Command::Verify { .. } => "verify",
        Command::Rado { .. } => "rado",
        Command::Km { .. } => "km",
        Command::Covers { .. } => "covers",
        Command::Membership { .. } => "membership",
        Command::Det { .. } => "det",
        Command::Members { .. } => "members",
    };
    let mut report = RunReport::start(name);
    let code = match dispatch(&cli, &mut report) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            report.verdict("error", &f.message);
            f.code
        }
    };
    report.verdict("exitCode", code);
    if let Some(path) = &cli.report {
        let report = report.finish();
        if let Err(e) = fs::write(path, report.to_json()) {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }
    code
}

fn dispatch(cli: &Cli, report: &mut RunReport) -> CmdResult {
    match &cli.command {
        Command::Separate { net1, net2, out } => cmd_separate(net1, net2, out, cli.bound, report),
        Command::Verify { net1, net2, nfa } => cmd_verify(net1, net2, nfa, report),
        Command::Rado { command } => cmd_rado(command, report),
        Command::Km { net } => cmd_km(net, cli.format, report),
        Command::Covers {
            net,
            control,
            marking,
        } => cmd_covers(net, control, marking, report),
        Command::Membership { model, word } => cmd_membership(model, word, report),
        Command::Det { model } => cmd_det(model, cli.format, report),
        Command::Members { model } => cmd_members(model, cli.bound, report),
    }
}

fn cmd_separate(net1: &Path, net2: &Path, out: &Path, bound: usize, report: &mut RunReport) -> CmdResult {
    let v1 = load_net(net1, report)?;
    let v2 = load_net(net2, report)?;
    let outcome = core(separate(&v1, &v2))?;
    fs::create_dir_all(out).map_err(|e| Failure::input(format!("{}: {e}", out.display())))?;
    let code = match outcome {
        SeparationOutcome::Witness(w) => {
            println!("not disjoint; joint word: {}", format_word(&w));
            report.verdict("disjoint", false);
            report.verdict("witness", format_word(&w));
            report.verdict("witnessLetters", &w);
            EXIT_NOT_DISJOINT
        }
        SeparationOutcome::Separator(sep) => {
            write_artifact(out.join("separator.json"), &sep.to_json(), report)?;
            write_artifact(out.join("separator.dot"), &sep.to_dot(), report)?;
            let exact = core(verify_separator(&v1, &v2, &sep))?;
            let shadow = bounded_shadow(&v1, &v2, &sep, bound)?;
            println!(
                "disjoint; separator with {} states written to {}",
                sep.states.len(),
                out.display()
            );
            report.verdict("disjoint", true);
            report.verdict("states", sep.states.len());
            report.verdict("verify", &exact);
            report.verdict("boundedShadow", json!({"bound": bound, "violation": shadow}));
            if exact.ok() && shadow.is_none() {
                EXIT_OK
            } else {
                eprintln!("separator failed its own verification");
                EXIT_VERIFY_FAILED
            }
        }
    };
    let path = out.join("report.json");
    report.artifact(path.clone());
    let snapshot = std::mem::replace(report, RunReport::start("separate"));
    let mut done = snapshot.finish();
    done.verdict("exitCode", code);
    fs::write(&path, done.to_json()).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    *report = done;
    Ok(code)
}

/// First word up to `k` letters on the wrong side of the separator.
fn bounded_shadow(
    v1: &LabeledVass,
    v2: &LabeledVass,
    sep: &SeparatorNfa,
    k: usize,
) -> std::result::Result<Option<String>, Failure> {
    for w in words_upto(v1.alphabet(), k) {
        let accepted = sep.accepts(&w);
        if core(v1.membership(&w))? && !accepted {
            return Ok(Some(format!("{} in L(net1) rejected", format_word(&w))));
        }
        if core(v2.membership(&w))? && accepted {
            return Ok(Some(format!("{} in L(net2) accepted", format_word(&w))));
        }
    }
    Ok(None)
}

fn cmd_verify(net1: &Path, net2: &Path, nfa: &Path, report: &mut RunReport) -> CmdResult {
    let v1 = load_net(net1, report)?;
    let v2 = load_net(net2, report)?;
    let text = read(nfa, report)?;
    let sep = SeparatorNfa::from_json(&text).map_err(|e| Failure::from_core(&nfa.display().to_string(), e))?;
    let r = verify_separator(&v1, &v2, &sep).map_err(|e| Failure::from_core(&nfa.display().to_string(), e))?;
    println!("inclusion: {}", r.inclusion);
    if let Some(w) = &r.inclusion_counterexample {
        println!("  counterexample (in L(net1), rejected): {}", format_word(w));
    }
    println!("disjointness: {}", r.disjointness);
    if let Some(w) = &r.disjointness_counterexample {
        println!("  counterexample (in L(net2), accepted): {}", format_word(w));
    }
    report.verdict("verify", &r);
    Ok(if r.ok() { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn cmd_rado(cmd: &RadoCommand, report: &mut RunReport) -> CmdResult {
    match cmd {
        RadoCommand::Member { word } => {
            let w = core(parse_word(word, &rado::k_alphabet()))?;
            let member = if w.iter().any(|l| l == rado::HASH) {
                core(rado::k_member(&w))?
            } else {
                core(rado::witness_member(&w))?
            };
            println!("{member}");
            report.verdict("member", member);
            Ok(EXIT_OK)
        }
        RadoCommand::Suffixes { i, j } => {
            let c = core(rado::distinguishing_suffixes(*i, *j))?;
            let (wi, wj) = (rado::column_word(*i), rado::column_word(*j));
            let cat = |p: &[String], s: &[String]| format_word(&[p, s].concat());
            println!("u = {}", format_word(&c.u));
            println!("  {} -> {}", cat(&wj, &c.u), c.j_u);
            println!("  {} -> {}", cat(&wi, &c.u), c.i_u);
            println!("v = {}", format_word(&c.v));
            println!("  {} -> {}", cat(&wi, &c.v), c.i_v);
            println!("  {} -> {}", cat(&wj, &c.v), c.j_v);
            println!("certified: {}", c.is_valid());
            report.verdict("certificate", &c);
            Ok(if c.is_valid() { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        RadoCommand::FragmentCheck { max_len } => {
            let mut checked = 0usize;
            let mut mismatches = Vec::new();
            for n in 0..=*max_len {
                for k in 0..=max_len - n {
                    for i in 0..=max_len - n - k {
                        checked += 1;
                        let w = rado::fragment_word(n, k, i);
                        let sim = core(rado::witness_member(&w))?;
                        if sim != rado::fragment_oracle(n, k, i) {
                            mismatches.push((n, k, i));
                        }
                    }
                }
            }
            println!("checked {checked} words, {} mismatches", mismatches.len());
            for (n, k, i) in &mismatches {
                println!("  mismatch at n={n} k={k} i={i}");
            }
            report.verdict("checked", checked);
            report.verdict("mismatches", &mismatches);
            Ok(if mismatches.is_empty() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
    }
}

fn km_tree_dot(tree: &KmTree) -> String {
    let mut out = String::from("digraph km {\n");
    for (i, n) in tree.nodes.iter().enumerate() {
        let style = if n.expanded { "solid" } else { "dashed" };
        let _ = writeln!(out, "  n{i} [label={:?}, style={style}];", n.label.to_string());
        if let (Some(p), Some(a)) = (n.parent, &n.letter) {
            let _ = writeln!(out, "  n{p} -> n{i} [label={a:?}];");
        }
    }
    out.push_str("}\n");
    out
}

fn cmd_km(net: &Path, format: Format, report: &mut RunReport) -> CmdResult {
    let v = load_net(net, report)?;
    let km = v.karp_miller();
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&km.cover).expect("cover serializes")
        ),
        Format::Dot => print!("{}", km_tree_dot(&km.tree)),
    }
    report.verdict("cover", &km.cover);
    report.verdict("treeNodes", km.tree.nodes.len());
    Ok(EXIT_OK)
}

fn cmd_covers(net: &Path, control: &str, marking: &str, report: &mut RunReport) -> CmdResult {
    let v = load_net(net, report)?;
    let control: Control = control
        .parse()
        .map_err(|e| Failure::from_core("target control", e))?;
    let marking = marking
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Failure::input(format!("target marking: {e}")))?;
    let r = core(v.backward_covers(&[Config::new(control, marking)]))?;
    println!("{}", serde_json::to_string_pretty(&r).expect("result serializes"));
    report.verdict("backward", &r);
    Ok(EXIT_OK)
}

fn cmd_membership(model: &Path, word: &str, report: &mut RunReport) -> CmdResult {
    let member = match load_model(model, report)? {
        Model::Net(v) => core(v.membership(&core(parse_word(word, v.alphabet()))?))?,
        Model::Explicit(u) => core(u.accepts(&core(parse_word(word, u.alphabet()))?))?,
    };
    println!("{member}");
    report.verdict("member", member);
    Ok(EXIT_OK)
}

fn olts_dot(u: &ExplicitOlts) -> String {
    let file = u.to_file();
    let mut out = String::from("digraph olts {\n  rankdir=LR;\n");
    for s in &file.states {
        let shape = if file.finals.contains(s) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(out, "  {s:?} [shape={shape}];");
    }
    for s in &file.initial {
        let _ = writeln!(out, "  {:?} [shape=point];\n  {:?} -> {s:?};", format!("init {s}"), format!("init {s}"));
    }
    for (s, a, ts) in &file.trans {
        for t in ts {
            let _ = writeln!(out, "  {s:?} -> {t:?} [label={a:?}];");
        }
    }
    for (s, t) in &file.leq {
        let _ = writeln!(out, "  {s:?} -> {t:?} [style=dotted, arrowhead=none];");
    }
    out.push_str("}\n");
    out
}

fn cmd_det(model: &Path, format: Format, report: &mut RunReport) -> CmdResult {
    let Model::Explicit(u) = load_model(model, report)? else {
        return Err(Failure {
            code: EXIT_PRECONDITION,
            message: "det works on explicit models; nets are determinized by revision".into(),
        });
    };
    let d = match u.direction() {
        Direction::Upward => core(u.determinize_fb())?,
        Direction::Downward => core(u.prune_nonminimal())?,
    };
    match format {
        Format::Json => println!("{}", d.to_json()),
        Format::Dot => print!("{}", olts_dot(&d)),
    }
    report.verdict("states", d.states().len());
    Ok(EXIT_OK)
}

fn cmd_members(model: &Path, bound: usize, report: &mut RunReport) -> CmdResult {
    let r = match load_model(model, report)? {
        Model::Explicit(u) => u.members_upto(bound),
        Model::Net(v) => {
            let mut words = std::collections::BTreeSet::new();
            for w in words_upto(v.alphabet(), bound) {
                if core(v.membership(&w))? {
                    words.insert(w);
                }
            }
            BoundedLangReport {
                max_len: bound,
                words,
            }
        }
    };
    let listing = format_report(&r);
    if !listing.is_empty() {
        println!("{listing}");
    }
    report.verdict("count", r.words.len());
    report.verdict("bound", bound);
    Ok(EXIT_OK)
}
