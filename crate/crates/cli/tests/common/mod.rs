//! Shared command table and runner for the golden and acceptance suites.

#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use famfib_cli::{EXIT_FALSE, EXIT_INPUT, EXIT_OK};

/// One command line. Arguments starting with `@` name a fixture file; the
/// argument `%dot` is replaced by a scratch path whose contents are appended
/// to the transcript.
pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

const fn case(name: &'static str, exit: i32, args: &'static [&'static str]) -> Case {
    Case { name, args, exit }
}

pub const CASES: &[Case] = &[
    case(
        "validate-container",
        EXIT_OK,
        &["validate", "@container-nat.json"],
    ),
    case(
        "validate-coalgebra",
        EXIT_OK,
        &["validate", "@lts-branching.json"],
    ),
    case(
        "validate-algebra-partial",
        EXIT_OK,
        &[
            "validate",
            "@algebra-nat-partial.json",
            "--container",
            "nat",
        ],
    ),
    case(
        "validate-tree",
        EXIT_OK,
        &["validate", "@tree-lam-k.json", "--container", "lam:2"],
    ),
    case(
        "validate-tree-bad",
        EXIT_FALSE,
        &["validate", "@tree-lam-bad.json", "--container", "lam:2"],
    ),
    case(
        "validate-syntax",
        EXIT_FALSE,
        &["validate", "@invalid-syntax.json"],
    ),
    case(
        "validate-unknown-field",
        EXIT_FALSE,
        &["validate", "@invalid-unknown-field.json"],
    ),
    case(
        "validate-version",
        EXIT_FALSE,
        &["validate", "@invalid-version.json"],
    ),
    case(
        "validate-undeclared-state",
        EXIT_FALSE,
        &["validate", "@invalid-undeclared-state.json"],
    ),
    case(
        "validate-image",
        EXIT_FALSE,
        &["validate", "@invalid-image.json"],
    ),
    case(
        "validate-relation-label",
        EXIT_FALSE,
        &["validate", "@invalid-relation-label.json"],
    ),
    case(
        "validate-container-bad",
        EXIT_FALSE,
        &["validate", "@invalid-container.json"],
    ),
    case(
        "validate-missing-file",
        EXIT_INPUT,
        &["validate", "@does-not-exist.json"],
    ),
    case("fmt-relation", EXIT_OK, &["fmt", "@rel-witnessed.json"]),
    case("fmt-invalid", EXIT_INPUT, &["fmt", "@invalid-syntax.json"]),
    case("export-lam-1", EXIT_OK, &["export", "lam:1"]),
    case("export-unknown", EXIT_INPUT, &["export", "pfin"]),
    case("list", EXIT_OK, &["list"]),
    case(
        "enum-nat",
        EXIT_OK,
        &["enum", "--container", "nat", "--depth", "3"],
    ),
    case(
        "enum-odds-evens",
        EXIT_OK,
        &["enum", "--container", "odds-evens", "--depth", "6"],
    ),
    case(
        "enum-lam",
        EXIT_OK,
        &[
            "enum",
            "--container",
            "@container-lam-2.json",
            "--depth",
            "3",
        ],
    ),
    case(
        "enum-unknown-container",
        EXIT_INPUT,
        &["enum", "--container", "rose", "--depth", "3"],
    ),
    case(
        "enum-depth-zero",
        EXIT_INPUT,
        &["enum", "--container", "nat", "--depth", "0"],
    ),
    case(
        "fold-parity",
        EXIT_OK,
        &[
            "fold",
            "--container",
            "nat",
            "--algebra",
            "@algebra-nat-parity.json",
            "--tree",
            "@tree-nat-three.json",
        ],
    ),
    case(
        "fold-partial",
        EXIT_INPUT,
        &[
            "fold",
            "--container",
            "nat",
            "--algebra",
            "@algebra-nat-partial.json",
            "--tree",
            "@tree-nat-three.json",
        ],
    ),
    case(
        "lift-pred-pfin",
        EXIT_OK,
        &[
            "lift-pred",
            "--functor",
            "pfin",
            "--pred",
            "@pred-pfin.json",
        ],
    ),
    case(
        "lift-pred-container-file",
        EXIT_OK,
        &[
            "lift-pred",
            "--functor",
            "@container-odds-evens.json",
            "--pred",
            "@pred-odds-evens.json",
        ],
    ),
    case(
        "lift-rel-nat",
        EXIT_OK,
        &[
            "lift-rel",
            "--functor",
            "nat",
            "--rel",
            "@rel-nat-heads.json",
        ],
    ),
    case(
        "lift-rel-pfin",
        EXIT_OK,
        &[
            "lift-rel",
            "--functor",
            "pfin",
            "--rel",
            "@rel-witnessed.json",
        ],
    ),
    case(
        "lift-rel-index-mismatch",
        EXIT_INPUT,
        &[
            "lift-rel",
            "--functor",
            "nat",
            "--rel",
            "@rel-two-indices.json",
        ],
    ),
    case(
        "quotient",
        EXIT_OK,
        &["quotient", "--rel", "@rel-two-indices.json"],
    ),
    case(
        "quotient-wrong-kind",
        EXIT_INPUT,
        &["quotient", "--rel", "@pred-pfin.json"],
    ),
    case(
        "coind-loop",
        EXIT_OK,
        &[
            "coind-check",
            "--coalgebra",
            "@lts-loop.json",
            "--rel",
            "@rel-s0-s1.json",
        ],
    ),
    case(
        "coind-mismatch",
        EXIT_FALSE,
        &[
            "coind-check",
            "--coalgebra",
            "@lts-mismatch.json",
            "--rel",
            "@rel-s0-s1.json",
        ],
    ),
    case(
        "coind-branching",
        EXIT_FALSE,
        &[
            "coind-check",
            "--coalgebra",
            "@lts-branching.json",
            "--rel",
            "@rel-branching.json",
        ],
    ),
    case(
        "coind-nat-tails",
        EXIT_OK,
        &[
            "coind-check",
            "--coalgebra",
            "@coalgebra-nat.json",
            "--rel",
            "@rel-nat-tails.json",
        ],
    ),
    case(
        "coind-nat-heads",
        EXIT_FALSE,
        &[
            "coind-check",
            "--coalgebra",
            "@coalgebra-nat.json",
            "--rel",
            "@rel-nat-heads.json",
        ],
    ),
    case(
        "coind-base-mismatch",
        EXIT_INPUT,
        &[
            "coind-check",
            "--coalgebra",
            "@lts-branching.json",
            "--rel",
            "@rel-s0-s1.json",
        ],
    ),
    case(
        "minimize-branching",
        EXIT_OK,
        &[
            "minimize",
            "--coalgebra",
            "@lts-branching.json",
            "--dot",
            "%dot",
        ],
    ),
    case(
        "minimize-nat-signature",
        EXIT_OK,
        &[
            "minimize",
            "--coalgebra",
            "@coalgebra-nat.json",
            "--strategy",
            "signature",
            "--dot",
            "%dot",
        ],
    ),
    case(
        "minimize-pfin",
        EXIT_OK,
        &[
            "minimize",
            "--coalgebra",
            "@coalgebra-pfin.json",
            "--dot",
            "%dot",
        ],
    ),
    case(
        "minimize-unknown-strategy",
        EXIT_INPUT,
        &[
            "minimize",
            "--coalgebra",
            "@coalgebra-pfin.json",
            "--strategy",
            "fast",
        ],
    ),
    case(
        "induct-parity",
        EXIT_OK,
        &[
            "induct-check",
            "--container",
            "odds-evens",
            "--pred",
            "@pred-parity-depth6.json",
            "--depth",
            "6",
        ],
    ),
    case(
        "induct-parity-broken",
        EXIT_FALSE,
        &[
            "induct-check",
            "--container",
            "odds-evens",
            "--pred",
            "@pred-parity-broken.json",
            "--depth",
            "6",
        ],
    ),
    case(
        "induct-nat-not-two",
        EXIT_FALSE,
        &[
            "induct-check",
            "--container",
            "@container-nat.json",
            "--pred",
            "@pred-nat-not-two.json",
            "--depth",
            "4",
        ],
    ),
    case(
        "induct-wrong-depth",
        EXIT_INPUT,
        &[
            "induct-check",
            "--container",
            "odds-evens",
            "--pred",
            "@pred-parity-depth6.json",
            "--depth",
            "5",
        ],
    ),
    case(
        "unknown-flag",
        EXIT_INPUT,
        &["enum", "--container", "nat", "--depth", "3", "--frob"],
    ),
    case("unknown-subcommand", EXIT_INPUT, &["bisimulate"]),
    case(
        "missing-argument",
        EXIT_INPUT,
        &["coind-check", "--coalgebra", "@lts-loop.json"],
    ),
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture_dir() -> PathBuf {
    crate_dir().join("tests").join("fixtures")
}

pub fn golden_path(case: &Case) -> PathBuf {
    crate_dir()
        .join("tests")
        .join("golden")
        .join(format!("{}.out", case.name))
}

/// Every fixture file, sorted by name.
pub fn fixtures() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = fs::read_dir(fixture_dir())
        .expect("fixture directory")
        .map(|e| e.expect("fixture entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    out.sort();
    out
}

pub struct Run {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
    pub dot: Option<String>,
}

impl Run {
    /// The golden transcript: exit code, standard output and any DOT file.
    /// Diagnostics on standard error mention file paths and are left out.
    pub fn transcript(&self) -> String {
        let mut t = format!("exit: {}\n--- stdout\n{}", self.exit, self.stdout);
        if let Some(dot) = &self.dot {
            t.push_str("--- dot\n");
            t.push_str(dot);
        }
        t
    }
}

pub fn run_case(case: &Case, run_tag: &str) -> Run {
    let dot_path =
        PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("{}-{run_tag}.dot", case.name));
    let _ = fs::remove_file(&dot_path);
    let mut argv = vec!["famfib".to_string()];
    let mut wants_dot = false;
    for a in case.args {
        if let Some(file) = a.strip_prefix('@') {
            argv.push(fixture_dir().join(file).display().to_string());
        } else if *a == "%dot" {
            wants_dot = true;
            argv.push(dot_path.display().to_string());
        } else {
            argv.push(a.to_string());
        }
    }
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let exit = famfib_cli::run(&argv, &mut out, &mut err);
    let dot = wants_dot.then(|| fs::read_to_string(&dot_path).unwrap_or_default());
    Run {
        exit,
        stdout: String::from_utf8(out).expect("utf-8"),
        stderr: String::from_utf8(err).expect("utf-8"),
        dot,
    }
}

/// Runs every case twice and compares against the stored transcripts.
/// Returns one message per problem found.
pub fn check_golden_cases(update: bool) -> Vec<String> {
    let mut problems = Vec::new();
    for case in CASES {
        let first = run_case(case, "a");
        let second = run_case(case, "b");
        if first.transcript() != second.transcript() {
            problems.push(format!("{}: output differs between two runs", case.name));
        }
        if first.exit != case.exit {
            problems.push(format!(
                "{}: exit {} but expected {}",
                case.name, first.exit, case.exit
            ));
        }
        if first.exit == EXIT_INPUT && first.stderr.is_empty() {
            problems.push(format!("{}: input error without a diagnostic", case.name));
        }
        let path = golden_path(case);
        if update {
            fs::write(&path, first.transcript()).expect("write golden file");
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(expected) if expected == first.transcript() => {}
            Ok(_) => problems.push(format!(
                "{}: output differs from {}",
                case.name,
                path.display()
            )),
            Err(_) => problems.push(format!(
                "{}: no golden file at {}",
                case.name,
                path.display()
            )),
        }
    }
    problems
}

/// Checks that every parsable fixture is a canonical fixpoint:
/// `serialize ∘ parse` applied twice gives the same text as applied once.
/// Fixtures named `invalid-*` must fail to parse or to build.
pub fn check_corpus_round_trip() -> Vec<String> {
    use famfib_core::format::{parse, serialize};
    let mut problems = Vec::new();
    for path in fixtures() {
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        let text = fs::read_to_string(&path).expect("read fixture");
        match parse(&text) {
            Ok(doc) => {
                let once = serialize(&doc);
                match parse(&once) {
                    Ok(again) if serialize(&again) == once && again == doc => {}
                    Ok(_) => problems.push(format!("{name}: canonical form is not a fixpoint")),
                    Err(e) => problems.push(format!("{name}: canonical form does not parse: {e}")),
                }
            }
            Err(_) if name.starts_with("invalid-") => {}
            Err(e) => problems.push(format!("{name}: {e}")),
        }
    }
    problems
}
