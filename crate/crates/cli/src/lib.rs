//! Command-line driver for the famfib checks.
//!
//! Every subcommand reads documents in the format described in
//! `docs/format.md`, makes one library call and prints its result. Exit codes:
//! [`EXIT_OK`] when the command succeeded or the check held, [`EXIT_FALSE`]
//! when a check failed (counterexamples are printed in canonical element
//! order), [`EXIT_INPUT`] for unreadable, malformed or mismatched input and
//! for command-line errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use famfib_core::coinductive::{
    check_coinduction_premise, lift_relation_generic, minimize_with, quotient,
};
use famfib_core::container::IndexedContainer;
use famfib_core::format::{self, FormatError, SpecDocument};
use famfib_core::inductive::{
    check_induction_soundness, enumerate_trees, fold, lift_predicate_generic,
};
use famfib_core::registry::{FunctorRegistry, StrategyRegistry};
use famfib_core::{stdlib, FunctorRef};

pub mod dot;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "famfib",
    version,
    about = "Induction and coinduction checks over indexed containers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a document is well formed; exit 1 if it is not.
    Validate {
        spec: PathBuf,
        /// Container that algebra and tree documents are checked against.
        #[arg(long)]
        container: Option<String>,
    },
    /// Print a document in canonical form.
    Fmt { spec: PathBuf },
    /// Print a standard container as a document.
    Export { name: String },
    /// List the registered functors and refinement strategies.
    List,
    /// List every tree of height at most DEPTH, per index.
    Enum {
        #[arg(long)]
        container: String,
        #[arg(long)]
        depth: usize,
    },
    /// Fold a tree with an algebra.
    Fold {
        #[arg(long)]
        container: String,
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        tree: PathBuf,
    },
    /// Lift a predicate along a functor.
    LiftPred {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        pred: PathBuf,
    },
    /// Lift a relation along a functor.
    LiftRel {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        rel: PathBuf,
    },
    /// Quotient by the equivalence closure of a relation.
    Quotient {
        #[arg(long)]
        rel: PathBuf,
    },
    /// Check the coinduction premise of a relation along a coalgebra.
    CoindCheck {
        #[arg(long)]
        coalgebra: PathBuf,
        #[arg(long)]
        rel: PathBuf,
    },
    /// Quotient a coalgebra by its largest bisimulation.
    Minimize {
        #[arg(long)]
        coalgebra: PathBuf,
        /// Also write the quotient as a Graphviz graph to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Refinement strategy, see `list`.
        #[arg(long, default_value = "naive")]
        strategy: String,
    },
    /// Check the induction rule for a predicate over the trees up to DEPTH.
    InductCheck {
        #[arg(long)]
        container: String,
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        depth: usize,
    },
}

/// An input problem, reported with exit code [`EXIT_INPUT`].
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<bool, InputError>;

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<SpecDocument, InputError> {
    format::parse(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// A container from a document file, or else from the standard library by name.
fn load_container(arg: &str) -> Result<Arc<IndexedContainer>, InputError> {
    let path = Path::new(arg);
    if path.is_file() {
        return Ok(Arc::new(load(path)?.to_container()?));
    }
    Ok(Arc::new(stdlib::container_by_name(arg)?))
}

/// A functor from a container document file, or else from the registry.
fn load_functor(arg: &str, registry: &FunctorRegistry) -> Result<FunctorRef, InputError> {
    let path = Path::new(arg);
    if path.is_file() {
        return Ok(Arc::new(load(path)?.to_container()?).as_functor());
    }
    Ok(registry.resolve(arg)?)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), InputError> {
    out.write_all(text.as_bytes())?;
    Ok(())
}

/// Runs one command line, writing results to `out` and diagnostics to `err`,
/// and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_INPUT
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FALSE,
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Outcome {
    let registry = FunctorRegistry::builtin();
    match command {
        Command::Validate { spec, container } => {
            validate(&spec, container.as_deref(), &registry, out)
        }
        Command::Fmt { spec } => {
            emit(out, &format::serialize(&load(&spec)?))?;
            Ok(true)
        }
        Command::Export { name } => {
            let c = stdlib::container_by_name(&name)?;
            emit(out, &format::serialize(&SpecDocument::from_container(&c)))?;
            Ok(true)
        }
        Command::List => {
            writeln!(out, "functors:")?;
            for usage in registry.usages() {
                writeln!(out, "  {usage}")?;
            }
            let strategies = StrategyRegistry::builtin();
            writeln!(out, "refinement strategies:")?;
            for name in strategies.names() {
                let marker = if name == strategies.default_strategy().name() {
                    " (default)"
                } else {
                    ""
                };
                writeln!(out, "  {name}{marker}")?;
            }
            Ok(true)
        }
        Command::Enum { container, depth } => {
            let c = load_container(&container)?;
            let trees = enumerate_trees(&c, depth)?;
            for (i, ts) in trees.iter().enumerate() {
                writeln!(out, "{}: {} trees", c.index_label(i), ts.len())?;
                for t in ts {
                    writeln!(out, "  {}", t.label())?;
                }
            }
            Ok(true)
        }
        Command::Fold {
            container,
            algebra,
            tree,
        } => {
            let c = load_container(&container)?;
            let h = load(&algebra)?.to_algebra(&c)?;
            let t = load(&tree)?.to_tree(&c)?;
            writeln!(out, "{}", fold(&c, &h, &t)?)?;
            Ok(true)
        }
        Command::LiftPred { functor, pred } => {
            let f = load_functor(&functor, &registry)?;
            let q = load(&pred)?.to_predicate()?;
            let lifted = lift_predicate_generic(f.as_ref(), &q)?;
            emit(
                out,
                &format::serialize(&SpecDocument::from_predicate(&lifted)),
            )?;
            Ok(true)
        }
        Command::LiftRel { functor, rel } => {
            let f = load_functor(&functor, &registry)?;
            let r = load(&rel)?.to_relation()?;
            let lifted = lift_relation_generic(f.as_ref(), &r)?;
            emit(
                out,
                &format::serialize(&SpecDocument::from_relation(&lifted)),
            )?;
            Ok(true)
        }
        Command::Quotient { rel } => {
            let r = load(&rel)?.to_relation()?;
            let (part, rho) = quotient(&r);
            writeln!(out, "classes:")?;
            for line in part.to_string().lines() {
                writeln!(out, "  {line}")?;
            }
            writeln!(out, "map:")?;
            for (i, x) in rho.source().positions() {
                writeln!(
                    out,
                    "  {}: {} -> {}",
                    rho.source().index_label(i),
                    rho.source().elem_label(i, x),
                    rho.apply(i, x)
                )?;
            }
            Ok(true)
        }
        Command::CoindCheck { coalgebra, rel } => {
            let k = load(&coalgebra)?.to_coalgebra(&registry)?;
            let r = load(&rel)?.to_relation()?;
            let report = check_coinduction_premise(&k, &r)?;
            writeln!(out, "pairs checked: {}", report.pairs_checked)?;
            for (index, x, y) in &report.violations {
                writeln!(out, "violation: {index}: {x} ~ {y}")?;
            }
            if report.passed() {
                writeln!(
                    out,
                    "premise holds: related states are behaviourally equivalent"
                )?;
            } else {
                writeln!(
                    out,
                    "premise fails: {} related pairs have unrelated successors",
                    report.violations.len()
                )?;
            }
            Ok(report.passed())
        }
        Command::Minimize {
            coalgebra,
            dot,
            strategy,
        } => {
            let k = load(&coalgebra)?.to_coalgebra(&registry)?;
            let strategies = StrategyRegistry::builtin();
            let strategy = strategies.get(&strategy)?;
            let (minimal, _) = minimize_with(&k, strategy)?;
            if let Some(path) = dot {
                let part = strategy.refine(&k)?;
                fs::write(&path, dot::quotient_dot(&k, &part)?)
                    .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            }
            emit(
                out,
                &format::serialize(&SpecDocument::from_coalgebra(&minimal)),
            )?;
            Ok(true)
        }
        Command::InductCheck {
            container,
            pred,
            depth,
        } => {
            let c = load_container(&container)?;
            let q = load(&pred)?.to_predicate()?;
            let report = check_induction_soundness(&c, &q, depth)?;
            writeln!(out, "rule:")?;
            for line in report.rule.to_string().lines() {
                writeln!(out, "  {line}")?;
            }
            writeln!(out, "trees checked: {}", report.trees_checked)?;
            for (index, t) in &report.premise_counterexamples {
                writeln!(out, "premise counterexample: {index}: {t}")?;
            }
            for (index, t) in &report.conclusion_failures {
                writeln!(out, "conclusion failure: {index}: {t}")?;
            }
            let verdict = if report.passed() {
                "induction holds"
            } else if report.unsound() {
                "unsound: premise holds but the conclusion fails"
            } else {
                "premise fails"
            };
            writeln!(out, "{verdict}")?;
            Ok(report.passed())
        }
    }
}

/// Parses a document and builds its domain value. Anything wrong with the
/// document itself makes the check false; an unreadable file or unusable
/// `--container` is an input error.
fn validate(
    spec: &Path,
    container: Option<&str>,
    registry: &FunctorRegistry,
    out: &mut dyn Write,
) -> Outcome {
    let text = read(spec)?;
    let c = container.map(load_container).transpose()?;
    let checked: Result<String, FormatError> = format::parse(&text).and_then(|doc| {
        let summary = match &doc {
            SpecDocument::Container(_) => format!("container {}", doc.to_container()?.name()),
            SpecDocument::Coalgebra(d) => {
                let k = doc.to_coalgebra(registry)?;
                format!(
                    "coalgebra for {} with {} states",
                    d.functor,
                    k.carrier().total_len()
                )
            }
            SpecDocument::Relation(_) => {
                format!("relation with {} pairs", doc.to_relation()?.pair_count())
            }
            SpecDocument::Predicate(_) => {
                format!(
                    "predicate with {} witnesses",
                    doc.to_predicate()?.total_witnesses()
                )
            }
            SpecDocument::Algebra(d) => match &c {
                Some(c) => {
                    let h = doc.to_algebra(c)?;
                    let total = if h.is_total(c) { "total" } else { "partial" };
                    format!("{total} algebra for {}", c.name())
                }
                None => format!("algebra with {} entries", d.table.len()),
            },
            SpecDocument::Tree(d) => match &c {
                Some(c) => format!(
                    "tree of height {} in {}",
                    doc.to_tree(c)?.height(),
                    c.name()
                ),
                None => format!("tree at index {}", d.index),
            },
        };
        Ok(summary)
    });
    match checked {
        Ok(summary) => {
            writeln!(out, "ok: {summary}")?;
            Ok(true)
        }
        Err(e) => {
            writeln!(out, "invalid: {e}")?;
            Ok(false)
        }
    }
}
